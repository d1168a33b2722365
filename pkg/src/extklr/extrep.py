"""The polynomial representation EPol and the action of the generators on it.

Odd symbols are stored as subsets ``lam`` of ``[1;n]`` standing for
``omega_lam = omega_{i_k} ^ ... ^ omega_{i_1}`` with ``i_1 < ... < i_k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from .polyalg import Perm, Poly, demazure
from .quivercomb import Quiver, act_on_colours, colour_positions

__all__ = [
    "ExtElt",
    "ColouredExtElt",
    "Gen",
    "GenWord",
    "wedge_sign",
    "sn_act",
    "simple_act",
    "demazure_ext",
    "wedge",
    "contract",
    "act_klr_gen",
    "act_higher_floating",
    "floating_dot_element",
    "xi_act",
    "koszul_P",
    "koszul_diff",
    "act_token",
    "act_word",
    "colour_flow",
    "tau_coefficient",
    "X",
    "T",
    "wp",
    "wm",
    "tau",
    "Omega",
    "fdot",
    "idem",
    "dN",
]

Subset = frozenset


def wedge_sign(lam: Iterable[int], nu: Iterable[int]) -> int:
    """Sign in ``omega_lam ^ omega_nu = sign * omega_{lam u nu}`` (disjoint sets)."""
    s = sum(1 for i in lam for j in nu if i < j)
    return -1 if s % 2 else 1


def _above(lam: Iterable[int], r: int) -> int:
    return sum(1 for i in lam if i > r)


class ExtElt:
    """An element ``sum_lam P_lam omega_lam`` of ``EPol_n``."""

    __slots__ = ("n", "comps")

    def __init__(self, n: int, comps: Mapping[Iterable[int], Poly] | None = None):
        self.n = n
        self.comps: dict[frozenset[int], Poly] = {}
        for lam, p in (comps or {}).items():
            lam = frozenset(lam)
            if any(not 1 <= i <= n for i in lam):
                raise ValueError(f"subset {sorted(lam)} not inside [1;{n}]")
            if p.n != n:
                raise ValueError("component has the wrong variable count")
            if p:
                self.comps[lam] = self.comps[lam] + p if lam in self.comps else p
        self.comps = {k: v for k, v in self.comps.items() if v}

    @classmethod
    def _raw(cls, n: int, comps: dict) -> "ExtElt":
        e = cls.__new__(cls)
        e.n, e.comps = n, comps
        return e

    @classmethod
    def zero(cls, n: int) -> "ExtElt":
        return cls._raw(n, {})

    @classmethod
    def poly(cls, p: Poly) -> "ExtElt":
        return cls._raw(p.n, {frozenset(): p} if p else {})

    @classmethod
    def omega(cls, lam: Iterable[int], n: int, coeff: Poly | None = None) -> "ExtElt":
        coeff = Poly.one(n) if coeff is None else coeff
        return cls(n, {frozenset(lam): coeff})

    def is_zero(self) -> bool:
        return not self.comps

    def __bool__(self) -> bool:
        return bool(self.comps)

    def __add__(self, other: "ExtElt") -> "ExtElt":
        if other.n != self.n:
            raise ValueError("variable count mismatch")
        c = dict(self.comps)
        for k, v in other.comps.items():
            s = c[k] + v if k in c else v
            if s:
                c[k] = s
            else:
                c.pop(k, None)
        return ExtElt._raw(self.n, c)

    def __neg__(self) -> "ExtElt":
        return ExtElt._raw(self.n, {k: -v for k, v in self.comps.items()})

    def __sub__(self, other: "ExtElt") -> "ExtElt":
        return self + (-other)

    def scale(self, p) -> "ExtElt":
        """Multiply every component by a polynomial or scalar."""
        if not isinstance(p, Poly):
            p = Poly.const(p, self.n)
        return ExtElt._raw(self.n, {k: v * p for k, v in self.comps.items() if v * p})

    def __mul__(self, other) -> "ExtElt":
        if isinstance(other, ExtElt):
            return self.wedge(other)
        return self.scale(other)

    __rmul__ = scale

    def wedge(self, other: "ExtElt") -> "ExtElt":
        """The algebra product of ``EPol_n``."""
        out: dict[frozenset[int], Poly] = {}
        for l1, p1 in self.comps.items():
            for l2, p2 in other.comps.items():
                if l1 & l2:
                    continue
                k = l1 | l2
                term = p1 * p2
                if wedge_sign(l1, l2) < 0:
                    term = -term
                out[k] = out[k] + term if k in out else term
        return ExtElt._raw(self.n, {k: v for k, v in out.items() if v})

    def map_polys(self, f) -> "ExtElt":
        out: dict[frozenset[int], Poly] = {}
        for k, v in self.comps.items():
            p = f(v)
            if p:
                out[k] = p
        return ExtElt._raw(self.n, out)

    def exterior_degrees(self) -> set[int]:
        return {len(k) for k in self.comps}

    def __eq__(self, other) -> bool:
        if isinstance(other, ExtElt):
            return self.n == other.n and self.comps == other.comps
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.comps.items())))

    def to_text(self) -> str:
        if not self.comps:
            return "0"
        parts = []
        for lam in sorted(self.comps, key=lambda s: (len(s), sorted(s))):
            set_text = "{" + ",".join(map(str, sorted(lam))) + "}"
            parts.append(f"({self.comps[lam]}) * w{set_text}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"ExtElt({self.to_text()})"


class ColouredExtElt:
    """An element of ``EPol_n = sum over colour sequences i of EPol_n 1_i``."""

    __slots__ = ("n", "blocks")

    def __init__(self, n: int, blocks: Mapping[tuple[str, ...], ExtElt] | None = None):
        self.n = n
        self.blocks: dict[tuple[str, ...], ExtElt] = {}
        for cols, e in (blocks or {}).items():
            cols = tuple(cols)
            if len(cols) != n or e.n != n:
                raise ValueError("block does not match the strand count")
            if e:
                self.blocks[cols] = self.blocks[cols] + e if cols in self.blocks else e
        self.blocks = {k: v for k, v in self.blocks.items() if v}

    @classmethod
    def single(cls, cols: Sequence[str], e: ExtElt) -> "ColouredExtElt":
        return cls(len(cols), {tuple(cols): e})

    def __add__(self, other: "ColouredExtElt") -> "ColouredExtElt":
        out = dict(self.blocks)
        for k, v in other.blocks.items():
            s = out[k] + v if k in out else v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return ColouredExtElt(self.n, out)

    def __neg__(self) -> "ColouredExtElt":
        return ColouredExtElt(self.n, {k: -v for k, v in self.blocks.items()})

    def __sub__(self, other: "ColouredExtElt") -> "ColouredExtElt":
        return self + (-other)

    def scale(self, p) -> "ColouredExtElt":
        return ColouredExtElt(self.n, {k: v.scale(p) for k, v in self.blocks.items()})

    def is_zero(self) -> bool:
        return not self.blocks

    def __bool__(self) -> bool:
        return bool(self.blocks)

    def __eq__(self, other) -> bool:
        if isinstance(other, ColouredExtElt):
            return self.n == other.n and self.blocks == other.blocks
        return NotImplemented

    def to_text(self) -> str:
        if not self.blocks:
            return "0"
        return " + ".join(
            f"[{self.blocks[c].to_text()}] @ {','.join(c)}" for c in sorted(self.blocks)
        )

    def __repr__(self) -> str:
        return f"ColouredExtElt({self.to_text()})"


# ---------------------------------------------------------------------------
# symmetric group action


def _s_omega_same(r: int, lam: frozenset[int], p: Poly) -> list[tuple[frozenset[int], Poly]]:
    """``s_r(omega_lam) * p`` for an equal-colour (or uncoloured) crossing."""
    n = p.n
    out = [(lam, p)]
    if r in lam and r + 1 not in lam:
        out.append(((lam - {r}) | {r + 1}, p * (Poly.var(r, n) - Poly.var(r + 1, n))))
    return out


def _s_omega_swap(r: int, lam: frozenset[int], p: Poly) -> list[tuple[frozenset[int], Poly]]:
    """``s_r(omega_lam) * p`` for a crossing of distinct colours: ``omega_q -> omega_{s_r(q)}``."""
    new = frozenset(r + 1 if i == r else r if i == r + 1 else i for i in lam)
    if r in lam and r + 1 in lam:
        p = -p
    return [(new, p)]


def simple_act(r: int, e: ExtElt, swap: bool = False) -> ExtElt:
    """``s_r(e)``; ``swap`` selects the rule for distinct neighbouring colours."""
    n = e.n
    if not 1 <= r < n:
        raise ValueError(f"s_{r} does not act on {n} strands")
    s = Perm.simple(r, n)
    rule = _s_omega_swap if swap else _s_omega_same
    out: dict[frozenset[int], Poly] = {}
    for lam, p in e.comps.items():
        for k, q in rule(r, lam, p.permute(s)):
            out[k] = out[k] + q if k in out else q
    return ExtElt._raw(n, {k: v for k, v in out.items() if v})


def sn_act(w: Perm, e):
    """The symmetric group action on ``EPol``, along a reduced word of ``w``.

    For coloured elements the block ``i`` is sent to the block ``w(i)``.
    """
    word = w.reduced_word()
    if isinstance(e, ExtElt):
        for r in reversed(word):
            e = simple_act(r, e)
        return e
    if isinstance(e, ColouredExtElt):
        out = ColouredExtElt(e.n)
        for cols, blk in e.blocks.items():
            c = cols
            for r in reversed(word):
                blk = simple_act(r, blk, swap=c[r - 1] != c[r])
                c = act_on_colours(Perm.simple(r, e.n), c)
            out = out + ColouredExtElt.single(c, blk)
        return out
    raise TypeError("sn_act expects an ExtElt or ColouredExtElt")


def demazure_ext(r: int, e: ExtElt) -> ExtElt:
    """``(e - s_r e) / (X_r - X_{r+1})`` on ``EPol_n``."""
    diff = e - simple_act(r, e)
    return diff.map_polys(lambda p: p._div_linear_unchecked(r, r + 1))


def wedge(i: int, e: ExtElt) -> ExtElt:
    """Left multiplication by ``omega_i`` (the creation operator)."""
    if not 1 <= i <= e.n:
        raise ValueError(f"omega_{i} does not exist for n={e.n}")
    out = {}
    for lam, p in e.comps.items():
        if i in lam:
            continue
        out[lam | {i}] = -p if _above(lam, i) % 2 else p
    return ExtElt._raw(e.n, out)


def contract(i: int, e: ExtElt) -> ExtElt:
    """The annihilation operator: ``omega_i^-(omega_i Q) = Q`` and ``omega_i^-(Q) = 0``."""
    if not 1 <= i <= e.n:
        raise ValueError(f"omega_{i} does not exist for n={e.n}")
    out = {}
    for lam, p in e.comps.items():
        if i not in lam:
            continue
        out[lam - {i}] = -p if _above(lam, i) % 2 else p
    return ExtElt._raw(e.n, out)


# ---------------------------------------------------------------------------
# the dg structure


def koszul_P(i: int, N: int, n: int) -> Poly:
    """``P_1 = X_1^N`` and ``P_{r+1} = -d_r(P_r)``, in ``n`` variables."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    p = Poly.var(1, n) ** N
    for r in range(1, i):
        p = -demazure(r, p)
    return p


@lru_cache(maxsize=None)
def _koszul_list(N: int, n: int) -> tuple[Poly, ...]:
    return tuple(koszul_P(i, N, n) for i in range(1, n + 1))


def koszul_diff(N: int, e: ExtElt) -> ExtElt:
    """``d_N``: the odd derivation killing ``Pol`` with ``omega_i -> P_i``."""
    ps = _koszul_list(N, e.n)
    out = ExtElt.zero(e.n)
    for i in range(1, e.n + 1):
        out = out + contract(i, e).scale(ps[i - 1])
    return out


# ---------------------------------------------------------------------------
# generator tokens


@dataclass(frozen=True)
class Gen:
    """One generator token.

    ``kind`` is one of ``X``, ``T``, ``w+``, ``w-``, ``dN`` (uncoloured
    operators), ``1``, ``tau``, ``Omega``, ``fdot`` (coloured).  ``cols`` is
    the bottom colour sequence for coloured tokens; ``None`` means "every
    block" for ``X`` and ``tau``.
    """

    kind: str
    i: int = 0
    cols: tuple[str, ...] | None = None
    colour: str | None = None
    twist: int = 0
    N: int = 0

    def text(self) -> str:
        suffix = "" if self.cols is None else "1[" + ",".join(self.cols) + "]"
        if self.kind == "fdot":
            return f"Omega^{self.twist}_{{{self.i},{self.colour}}}" + suffix
        if self.kind in ("Omega", "1"):
            return ("Omega" if self.kind == "Omega" else "") + suffix
        if self.kind == "dN":
            return f"dd_{self.N}"
        return f"{self.kind}_{self.i}" + suffix


GenWord = tuple[Gen, ...]


def X(i: int, cols=None) -> Gen:
    return Gen("X", i, None if cols is None else tuple(cols))


def T(r: int) -> Gen:
    return Gen("T", r)


def wp(i: int) -> Gen:
    return Gen("w+", i)


def wm(i: int) -> Gen:
    return Gen("w-", i)


def tau(r: int, cols=None) -> Gen:
    return Gen("tau", r, None if cols is None else tuple(cols))


def Omega(cols=None) -> Gen:
    return Gen("Omega", 1, None if cols is None else tuple(cols))


def fdot(r: int, colour: str, twist: int = 0, cols=None) -> Gen:
    return Gen("fdot", r, None if cols is None else tuple(cols), colour, twist)


def idem(cols) -> Gen:
    return Gen("1", 0, tuple(cols))


def dN(N: int) -> Gen:
    return Gen("dN", 0, None, None, 0, N)


def colour_flow(word: Sequence[Gen], bottom: Sequence[str] | None = None) -> Iterator[tuple[Gen, tuple[str, ...]]]:
    """Pair each token (right to left) with the colour sequence below it."""
    cols = tuple(bottom) if bottom is not None else None
    for tok in reversed(word):
        if tok.cols is not None:
            if cols is not None and tok.cols != cols:
                raise ValueError(f"colour mismatch at {tok.text()}")
            cols = tok.cols
        if cols is None:
            raise ValueError(f"cannot infer the colours below {tok.text()}")
        yield tok, cols
        if tok.kind == "tau":
            cols = act_on_colours(Perm.simple(tok.i, len(cols)), cols)


# ---------------------------------------------------------------------------
# the faithful action of the extended KLR algebra


def tau_coefficient(quiver: Quiver, cols: Sequence[str], r: int, n: int) -> Poly:
    """Polynomial in front of ``s_r`` for ``tau_r 1_i`` with distinct colours.

    The coefficient is ``(-1)^{h(i_{r+1}, i_r)} P_{i_r, i_{r+1}}(X_r, X_{r+1})``.
    The sign turns ``tau_r^2 1_i`` into ``Q_{i_r, i_{r+1}}(X_r, X_{r+1})``.
    """
    a, b = cols[r - 1], cols[r]
    p = quiver.P(a, b, Poly.var(r, n), Poly.var(r + 1, n))
    return -p if quiver.h(b, a) % 2 else p


def act_klr_gen(tok: Gen, e: ColouredExtElt, quiver: Quiver) -> ColouredExtElt:
    """Apply ``X_r 1_i``, ``tau_r 1_i``, ``Omega 1_i`` or ``1_i``; other blocks map to zero."""
    n = e.n
    out = ColouredExtElt(n)
    for cols, blk in e.blocks.items():
        if tok.cols is not None and tok.cols != cols:
            continue
        if tok.kind == "1":
            res, tgt = blk, cols
        elif tok.kind == "X":
            res, tgt = blk.scale(Poly.var(tok.i, n)), cols
        elif tok.kind == "Omega":
            res, tgt = wedge(1, blk), cols
        elif tok.kind == "tau":
            r = tok.i
            tgt = act_on_colours(Perm.simple(r, n), cols)
            if cols[r - 1] == cols[r]:
                res = demazure_ext(r, blk)
            else:
                res = simple_act(r, blk, swap=True).scale(tau_coefficient(quiver, cols, r, n))
        elif tok.kind == "fdot":
            res, tgt = act_higher_floating(tok.i, tok.colour, tok.twist,
                                           ColouredExtElt.single(cols, blk), quiver).blocks.get(cols,
                                           ExtElt.zero(n)), cols
        else:
            raise ValueError(f"{tok.kind} is not a KLR generator")
        out = out + ColouredExtElt.single(tgt, res)
    return out


def xi_act(e: ExtElt, cols: Sequence[str], j0: str) -> ExtElt:
    """``xi(P omega_{s,j0}) = X_{s,j0} P omega_{s,j0} - P omega_{s-1,j0}`` with ``omega_{0,j0} = 0``."""
    pos = colour_positions(cols, j0)
    rank = {p: s for s, p in enumerate(pos, start=1)}
    out = ExtElt.zero(e.n)
    for lam, p in e.comps.items():
        if len(lam) != 1 or next(iter(lam)) not in rank:
            raise ValueError("xi only acts on the span of single omegas of colour j0")
        t = next(iter(lam))
        s = rank[t]
        out = out + ExtElt.omega({t}, e.n, p * Poly.var(t, e.n))
        if s > 1:
            out = out - ExtElt.omega({pos[s - 2]}, e.n, p)
    return out


def floating_dot_element(r: int, j0: str, a: int, cols: Sequence[str], quiver: Quiver) -> ExtElt:
    """The element ``(-xi)^a prod_{t<=r} Q_{i_t,j0}(X_t, xi) omega_{r'}`` of ``EPol_n 1_i``.

    ``r'`` is the last position ``<= r`` of colour ``j0``; the element is zero
    when there is none.  Powers of ``xi`` act on the coefficients.
    """
    n = len(cols)
    prior = [t for t in range(1, r + 1) if cols[t - 1] == j0]
    if not prior:
        return ExtElt.zero(n)
    rp = prior[-1]
    # polynomial in xi with Pol_n coefficients: index = power of xi
    coeffs: dict[int, Poly] = {a: Poly.const(-1 if a % 2 else 1, n)}
    u2, v2 = Poly.var(1, 2), Poly.var(2, 2)
    for t in range(1, r + 1):
        q = quiver.Q(cols[t - 1], j0, u2, v2)
        new: dict[int, Poly] = {}
        xt = Poly.var(t, n)
        for (eu, ev), c in q.terms.items():
            mult = xt ** eu * c
            for k, p in coeffs.items():
                kk = k + ev
                new[kk] = new[kk] + p * mult if kk in new else p * mult
        coeffs = {k: v for k, v in new.items() if v}
    out = ExtElt.zero(n)
    for k, p in coeffs.items():
        term = ExtElt.omega({rp}, n, p)
        for _ in range(k):
            term = xi_act(term, cols, j0)
        out = out + term
    return out


def act_higher_floating(r: int, j0: str, a: int, e: ColouredExtElt, quiver: Quiver) -> ColouredExtElt:
    """``Omega^a_{r,j0}``: left multiplication by :func:`floating_dot_element` in each block."""
    if a < 0:
        raise ValueError("twist must be nonnegative")
    out = ColouredExtElt(e.n)
    for cols, blk in e.blocks.items():
        E = floating_dot_element(r, j0, a, cols, quiver)
        out = out + ColouredExtElt.single(cols, E.wedge(blk))
    return out


def act_token(tok: Gen, e, quiver: Quiver | None = None):
    """Apply one token to an ``ExtElt`` (uncoloured kinds) or a ``ColouredExtElt``."""
    if isinstance(e, ExtElt):
        n = e.n
        if tok.kind == "X":
            return e.scale(Poly.var(tok.i, n))
        if tok.kind == "T":
            return demazure_ext(tok.i, e)
        if tok.kind == "w+":
            return wedge(tok.i, e)
        if tok.kind == "w-":
            return contract(tok.i, e)
        if tok.kind == "dN":
            return koszul_diff(tok.N, e)
        raise ValueError(f"{tok.kind} needs a coloured element")
    if quiver is None:
        raise ValueError("coloured tokens need a quiver")
    return act_klr_gen(tok, e, quiver)


def act_word(word: Sequence[Gen], e, quiver: Quiver | None = None):
    """Apply a word read as a product: the rightmost token acts first."""
    for tok in reversed(word):
        e = act_token(tok, e, quiver)
    return e
