"""Torus-fixed-point calculus on flag and Grassmannian type spaces.

Equivariant parameters ``T_1, ..., T_n`` are stored as the variables of
:class:`Poly`; a polynomial ``P(X)`` localizes at the flag ``f_w`` to
``w(P) = P(T_{w(1)}, ..., T_{w(n)})``.

Fixed points of the stratum ``Y_k`` are ``x_{w,mu} = (f_w, g_{w(mu)})``
(the twisted labelling).  A class is stored by its coefficients on the
fixed-point classes ``[x]``; kernels act by convolution
``[(x, y)] * [y'] = delta_{y,y'} eu(y) [x]``.

Coloured data (a quiver and the standard colour sequence ``i0``) is carried
by a :class:`Colouring`; the uncoloured situation is the one-vertex quiver.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

from gmpy2 import mpq

from .extrep import ColouredExtElt, ExtElt
from .polyalg import ExactMatrix, Perm, Poly, RatFunc, all_perms, iter_monomials, subsets
from .quivercomb import Quiver, SweepReport, act_on_colours, colour_sequences

__all__ = [
    "FPoint",
    "Colouring",
    "LocClass",
    "LocKernel",
    "SchubertTable",
    "NotPolynomial",
    "StratumError",
    "SweepReport",
    "euler",
    "euler_flag",
    "euler_grass",
    "euler_point",
    "schubert_build",
    "schubert_tilde",
    "schubert_w",
    "schubert_class",
    "table_text",
    "star",
    "verify_star_identity",
    "iota_lift",
    "flag_convolve",
    "verify_redwine",
    "coloured_iota",
    "coloured_star",
    "coloured_convolve",
    "verify_starintertwines",
    "localize_elt",
    "delocalize",
    "kernel",
    "coloured_kernel",
    "convolve",
    "sn_act_loc",
    "verify_sraction",
    "verify_operator_match",
    "sweep_backends",
    "sweep_lemmas",
    "sweep_wall_crossing",
    "sweep_star",
    "sweep_t_to_s",
    "MatchCase",
    "operator_match_cases",
    "sraction_cases",
    "sweep_redwine",
    "sweep_starintertwines",
]

Subset = frozenset


class NotPolynomial(ArithmeticError):
    """A localized class is not the localization of a polynomial element."""


class StratumError(TypeError):
    """Convolution across incompatible strata."""


def _t(i: int, n: int) -> Poly:
    return Poly.var(i, n)


def _diff(a: int, b: int, n: int) -> Poly:
    """``T_a - T_b``."""
    return Poly.var(a, n) - Poly.var(b, n)


def _inv_diff(a: int, b: int, n: int) -> RatFunc:
    """``(T_a - T_b)^{-1}``."""
    return RatFunc.inv_linear(a, b, n)


def _prod(factors: Iterable[Poly], n: int) -> Poly:
    out = Poly.one(n)
    for f in factors:
        out = out * f
    return out


def _image(w: Perm, mu: Iterable[int]) -> Subset:
    return frozenset(w(i) for i in mu)


def _set_text(s: Iterable[int]) -> str:
    return "{" + ",".join(map(str, sorted(s))) + "}"


# ---------------------------------------------------------------------------
# fixed points and colourings


@dataclass(frozen=True)
class FPoint:
    """A torus fixed point ``(w, mu)``.

    With ``tag="twisted"`` it is ``x_{w,mu} = (f_w, g_{w(mu)})``; with
    ``tag="untwisted"`` it is ``(f_w, g_mu)``.
    """

    w: Perm
    mu: frozenset[int]
    tag: str = "twisted"

    def __post_init__(self):
        if self.tag not in ("twisted", "untwisted"):
            raise ValueError(f"unknown labelling {self.tag!r}")
        if any(not 1 <= i <= self.w.n for i in self.mu):
            raise ValueError(f"{_set_text(self.mu)} is not inside [1;{self.w.n}]")

    @property
    def n(self) -> int:
        return self.w.n

    def subspace(self) -> frozenset[int]:
        """The coordinate subspace ``g`` of the point, as a set of basis indices."""
        return _image(self.w, self.mu) if self.tag == "twisted" else self.mu

    def twisted(self) -> "FPoint":
        if self.tag == "twisted":
            return self
        return FPoint(self.w, _image(self.w.inverse(), self.mu), "twisted")

    def untwisted(self) -> "FPoint":
        if self.tag == "untwisted":
            return self
        return FPoint(self.w, self.subspace(), "untwisted")

    def to_text(self) -> str:
        return f"({self.w.to_text()},{_set_text(self.mu)})"


@dataclass(frozen=True)
class Colouring:
    """A quiver with the standard colour sequence ``i0`` of the basis ``e_1..e_n``.

    The flag ``f_w`` lies in the block ``i_w`` determined by ``w(i_w) = i0``.
    """

    quiver: Quiver
    i0: tuple[str, ...]

    @classmethod
    def plain(cls, n: int) -> "Colouring":
        return cls(Quiver(("i",), (), "one-vertex"), ("i",) * n)

    @classmethod
    def standard(cls, quiver: Quiver, dimvec: Mapping[str, int]) -> "Colouring":
        for v in dimvec:
            if v not in quiver.vertices:
                raise ValueError(f"unknown vertex {v!r}")
        i0 = tuple(v for v in quiver.vertices for _ in range(dimvec.get(v, 0)))
        return cls(quiver, i0)

    @property
    def n(self) -> int:
        return len(self.i0)

    @property
    def is_plain(self) -> bool:
        return len(set(self.i0)) <= 1 and not self.quiver.arrows

    @property
    def dimvec(self) -> dict[str, int]:
        return {v: self.i0.count(v) for v in self.quiver.vertices if v in self.i0}

    def block(self, w: Perm) -> tuple[str, ...]:
        """The colour sequence ``i_w`` with ``w(i_w) = i0``."""
        return act_on_colours(w.inverse(), self.i0)

    def blocks(self) -> list[tuple[str, ...]]:
        return colour_sequences(self.dimvec)

    def perms_for(self, cols: Sequence[str]) -> list[Perm]:
        cols = tuple(cols)
        return [w for w in all_perms(self.n) if act_on_colours(w, cols) == self.i0]

    def counts(self, mu: Iterable[int], cols: Sequence[str]) -> tuple[int, ...]:
        """The Grassmannian dimension vector of ``mu`` in the colouring ``cols``."""
        mu = set(mu)
        return tuple(sum(1 for p in mu if cols[p - 1] == v) for v in self.quiver.vertices)

    def stratum_of(self, fp: FPoint) -> tuple[int, ...]:
        if fp.tag == "twisted":
            return self.counts(fp.mu, self.block(fp.w))
        return self.counts(fp.mu, self.i0)

    def stratum(self, k) -> tuple[int, ...]:
        """Normalize an integer (plain) or a per-vertex mapping to a count tuple."""
        if isinstance(k, int):
            if not self.is_plain:
                raise ValueError("coloured strata need a per-vertex dimension vector")
            return (k,)
        if isinstance(k, Mapping):
            return tuple(k.get(v, 0) for v in self.quiver.vertices)
        return tuple(k)

    def points(self, k) -> list[FPoint]:
        """Twisted fixed points of the stratum ``k``."""
        k = self.stratum(k)
        out = []
        for w in all_perms(self.n):
            cols = self.block(w)
            for mu in subsets(self.n, sum(k)):
                if self.counts(mu, cols) == k:
                    out.append(FPoint(w, mu))
        return out

    def same_colour(self, a: int, b: int) -> bool:
        return self.i0[a - 1] == self.i0[b - 1]


# ---------------------------------------------------------------------------
# Euler classes


def euler_flag(w: Perm) -> Poly:
    """``A_w = prod_{i<j} (T_{w(j)} - T_{w(i)})``."""
    n = w.n
    return _prod((_diff(w(j), w(i), n) for i in range(1, n + 1) for j in range(i + 1, n + 1)), n)


def euler_grass(lam: Iterable[int], n: int) -> Poly:
    """``A_lam = prod_{i in lam, j not in lam} (T_j - T_i)``."""
    lam = frozenset(lam)
    return _prod((_diff(j, i, n) for i in lam for j in range(1, n + 1) if j not in lam), n)


def euler_point(w: Perm, mu: Iterable[int]) -> Poly:
    """``A_{w,mu} = A_w * A_{w(mu)}`` at ``x_{w,mu}``."""
    return euler_flag(w) * euler_grass(_image(w, mu), w.n)


@lru_cache(maxsize=None)
def theta_flag(w: Perm, col: Colouring) -> Poly:
    """Euler class of the coloured flag bundle at ``f_w``.

    Tangent directions ``e_{w(p)} -> e_{w(q)}`` (``p < q`` of equal colour)
    have weight ``T_{w(q)} - T_{w(p)}``; fibre directions of an arrow
    ``s -> t`` preserving the flag, ``e_{w(q)} -> e_{w(p)}`` with ``p < q``,
    colour ``s`` at ``q`` and ``t`` at ``p``, have weight ``T_{w(p)} - T_{w(q)}``.
    """
    n = w.n
    cols = col.block(w)
    out = Poly.one(n)
    for p in range(1, n + 1):
        for q in range(p + 1, n + 1):
            if cols[p - 1] == cols[q - 1]:
                out = out * _diff(w(q), w(p), n)
    for s, t in col.quiver.arrows:
        for p in range(1, n + 1):
            for q in range(p + 1, n + 1):
                if cols[q - 1] == s and cols[p - 1] == t:
                    out = out * _diff(w(p), w(q), n)
    return out


def _col_grass(nu: frozenset[int], col: Colouring) -> Poly:
    """``prod (T_j - T_i)`` over ``i in nu``, ``j`` not in ``nu`` of the same colour."""
    n = col.n
    return _prod(
        (_diff(j, i, n) for i in nu for j in range(1, n + 1) if j not in nu and col.same_colour(i, j)), n)


def _col_Q(a: Iterable[int], b: Iterable[int], col: Colouring) -> Poly:
    """``Q_{a,b} = prod (T_i - T_j)`` over same-coloured ``i in a``, ``j in b``."""
    n = col.n
    return _prod((_diff(i, j, n) for i in a for j in b if col.same_colour(i, j)), n)


def point_euler(fp: FPoint, col: Colouring) -> Poly:
    """``eu(Y, x_{w,mu})`` in the twisted convention; equals ``A_{w,mu}`` when uncoloured."""
    fp = fp.twisted()
    if col.is_plain:
        return euler_point(fp.w, fp.mu)
    return theta_flag(fp.w, col) * _col_grass(fp.subspace(), col)


def euler_coloured_point(w: Perm, mu: Iterable[int], col: Colouring) -> Poly:
    """``Theta_{w,mu} = Theta_w Q_{mu,mu^c}`` at the untwisted point ``(f_w, g_mu)``."""
    mu = frozenset(mu)
    comp = [j for j in range(1, col.n + 1) if j not in mu]
    return theta_flag(w, col) * _col_Q(mu, comp, col)


def euler(kind: str, *args) -> Poly:
    """Dispatch: ``flag(w)``, ``grass(lam, n)``, ``point(w, mu)``, ``coloured_point(w, mu, colouring)``."""
    if kind == "flag":
        return euler_flag(*args)
    if kind == "grass":
        return euler_grass(*args)
    if kind == "point":
        return euler_point(*args)
    if kind == "coloured_point":
        w, mu, col = args
        if isinstance(col, Quiver):
            raise TypeError("pass a Colouring, which fixes the standard colour sequence")
        return euler_coloured_point(w, mu, col)
    raise ValueError(f"unknown Euler class kind {kind!r}")


# ---------------------------------------------------------------------------
# Schubert restrictions


def inversions(lam: Iterable[int], n: int) -> list[tuple[int, int]]:
    lam = frozenset(lam)
    return [(i, j) for i in lam for j in range(i + 1, n + 1) if j not in lam]


def dominates(mu: Iterable[int], lam: Iterable[int]) -> bool:
    """``mu >= lam``: the ``a``-th smallest element of ``mu`` is at most that of ``lam``."""
    a, b = sorted(mu), sorted(lam)
    return len(a) == len(b) and all(x <= y for x, y in zip(a, b))


@dataclass(frozen=True)
class SchubertTable:
    """Restrictions ``S~_lam(mu)`` of the Grassmannian Schubert classes of ``Gr(k, n)``."""

    n: int
    k: int
    entries: Mapping[frozenset[int], Mapping[frozenset[int], Poly]]

    def __call__(self, lam: Iterable[int], mu: Iterable[int]) -> Poly:
        return self.entries[frozenset(lam)][frozenset(mu)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, SchubertTable):
            return NotImplemented
        return (self.n, self.k) == (other.n, other.k) and all(
            dict(self.entries[l]) == dict(other.entries[l]) for l in self.entries
        ) and set(self.entries) == set(other.entries)

    __hash__ = None


def _lift_plus(S_prev: Callable[[frozenset], Poly], r: int, mu: frozenset[int], n: int) -> RatFunc:
    """``sum_{t in mu} prod_{p>r}(T_p - T_t) S(mu - t) / prod_{i in mu - t}(T_t - T_i)``."""
    total = RatFunc(Poly.zero(n))
    for t in mu:
        rest = mu - {t}
        val = S_prev(rest)
        if not val:
            continue
        num = val * _prod((_diff(p, t, n) for p in range(r + 1, n + 1)), n)
        term = RatFunc(num)
        for i in rest:
            term = term * _inv_diff(t, i, n)
        total = total + term
    return total


def _lift_minus(S_prev: Callable[[frozenset], Poly], r: int, mu: frozenset[int], n: int) -> RatFunc:
    """``sum_{t not in mu} prod_{p<r}(T_p - T_t) S(mu + t) / prod_{i not in mu + t}(T_i - T_t)``."""
    total = RatFunc(Poly.zero(n))
    for t in range(1, n + 1):
        if t in mu:
            continue
        big = mu | {t}
        val = S_prev(big)
        if not val:
            continue
        num = val * _prod((_diff(p, t, n) for p in range(1, r)), n)
        term = RatFunc(num)
        for i in range(1, n + 1):
            if i not in big:
                term = term * _inv_diff(i, t, n)
        total = total + term
    return total


@lru_cache(maxsize=None)
def _recursion_tables(n: int) -> dict[frozenset[int], dict[frozenset[int], Poly]]:
    """All ``S~_lam`` for ``[1;n]``, adding the elements of ``lam`` in increasing order."""
    tables: dict[frozenset[int], dict[frozenset[int], Poly]] = {frozenset(): {frozenset(): Poly.one(n)}}
    for k in range(1, n + 1):
        for lam_t in itertools.combinations(range(1, n + 1), k):
            lam = frozenset(lam_t)
            r = lam_t[-1]
            prev = tables[lam - {r}]
            row = {}
            for mu in subsets(n, k):
                row[mu] = _lift_plus(lambda s: prev[s], r, mu, n).to_poly()
            tables[lam] = row
    return tables


def _oracle_table(n: int, k: int) -> dict[frozenset[int], dict[frozenset[int], Poly]]:
    """Solve support, normalization, degree and GKM divisibility as a linear system."""
    pts = subsets(n, k)
    out = {}
    for lam in pts:
        d = len(inversions(lam, n))
        diag = _prod((_diff(j, i, n) for i, j in inversions(lam, n)), n)
        unknown = [mu for mu in pts if mu != lam and dominates(mu, lam)]
        monos = list(iter_monomials(n, d))
        col_of = {(mu, e): c for c, (mu, e) in enumerate((mu, e) for mu in unknown for e in monos)}
        ncols = len(col_of) + 1

        def value_vector(mu):
            """Linear form (as ``{col: coeff}`` per substituted monomial) of ``S(mu)``."""
            if mu == lam:
                return {"const": diag}
            if mu in unknown:
                return {"var": mu}
            return {}

        rows: list[list[mpq]] = []
        for mu in pts:
            for i in mu:
                for j in range(1, n + 1):
                    if j in mu:
                        continue
                    nu = (mu - {i}) | {j}
                    if sorted(mu) > sorted(nu):
                        continue
                    eqs: dict[tuple, dict[int, mpq]] = {}
                    for sign, pt in ((1, mu), (-1, nu)):
                        vv = value_vector(pt)
                        if "const" in vv:
                            for e, c in vv["const"].subs_var(i, j).terms.items():
                                eqs.setdefault(e, {})
                                eqs[e][ncols - 1] = eqs[e].get(ncols - 1, 0) + sign * c
                        elif "var" in vv:
                            for e in monos:
                                ne = list(e)
                                ne[j - 1] += ne[i - 1]
                                ne[i - 1] = 0
                                ne = tuple(ne)
                                c = col_of[(pt, e)]
                                eqs.setdefault(ne, {})
                                eqs[ne][c] = eqs[ne].get(c, 0) + sign
                    for coeffs in eqs.values():
                        row = [mpq(0)] * ncols
                        for c, v in coeffs.items():
                            row[c] = mpq(v)
                        if any(row):
                            rows.append(row)
        if ncols == 1:
            sol = []
        else:
            ker = ExactMatrix(rows, ncols).kernel() if rows else [
                [mpq(int(a == b)) for a in range(ncols)] for b in range(ncols)]
            with_const = [v for v in ker if v[-1] != 0]
            if len(ker) != 1 or not with_const:
                raise ArithmeticError(
                    f"oracle system for lam={_set_text(lam)}, n={n} has {len(ker)}-dimensional "
                    "solution space; uniqueness fails at this degree bound")
            v = with_const[0]
            sol = [x / v[-1] for x in v[:-1]]
        row_out = {}
        for mu in pts:
            if mu == lam:
                row_out[mu] = diag
            elif mu in unknown:
                row_out[mu] = Poly(n, {e: sol[col_of[(mu, e)]] for e in monos})
            else:
                row_out[mu] = Poly.zero(n)
        out[lam] = row_out
    return out


def schubert_build(n: int, k: int, method: str = "recursion") -> SchubertTable:
    """The table ``lam -> mu -> S~_lam(mu)`` for ``|lam| = |mu| = k``."""
    if not 0 <= k <= n:
        raise ValueError(f"k={k} out of range for n={n}")
    if method == "recursion":
        full = _recursion_tables(n)
        entries = {lam: dict(full[lam]) for lam in subsets(n, k)}
    elif method == "oracle":
        entries = _oracle_table(n, k)
    else:
        raise ValueError(f"unknown method {method!r}")
    return SchubertTable(n, k, entries)


def schubert_tilde(lam: Iterable[int], mu: Iterable[int], n: int) -> Poly:
    """``S~_lam(mu)``; zero unless ``|lam| = |mu|``."""
    lam, mu = frozenset(lam), frozenset(mu)
    if len(lam) != len(mu):
        return Poly.zero(n)
    return _recursion_tables(n)[lam][mu]


def schubert_w(w: Perm, lam: Iterable[int], mu: Iterable[int]) -> Poly:
    """``S^w_lam(mu) = w(S~_lam(mu))`` (no flag Euler factor; see the convolution weights)."""
    return schubert_tilde(lam, mu, w.n).permute(w)


def schubert_class(lam: Iterable[int], n: int) -> dict[frozenset[int], RatFunc]:
    """The restriction ``mu -> S~_lam(mu)`` as a Grassmannian class."""
    lam = frozenset(lam)
    return {mu: RatFunc(schubert_tilde(lam, mu, n)) for mu in subsets(n, len(lam))}


def table_text(table: SchubertTable) -> str:
    """One line per ``(lam, mu)`` with the canonical polynomial text in ``T``."""
    lines = []
    for lam in subsets(table.n, table.k):
        for mu in subsets(table.n, table.k):
            lines.append(f"S{_set_text(lam)}({_set_text(mu)}) = {table(lam, mu).to_text('T')}")
    return "\n".join(lines)


@lru_cache(maxsize=None)
def _col_parts(cols: tuple[str, ...], vertices: tuple[str, ...]) -> tuple[tuple[str, tuple[int, ...]], ...]:
    return tuple((v, tuple(p for p, c in enumerate(cols, start=1) if c == v)) for v in vertices)


def coloured_schubert(w: Perm, lam: frozenset[int], mu: frozenset[int], col: Colouring) -> Poly:
    """``S^w_lam(mu) = prod_i S^{w(i)}_{lam(i)}(mu(i))``, positions coloured by ``i_w``."""
    n = col.n
    if col.is_plain:
        return schubert_w(w, lam, mu)
    cols = col.block(w)
    out = Poly.one(n)
    for v, pos in _col_parts(cols, col.quiver.vertices):
        if not pos:
            continue
        idx = {p: a for a, p in enumerate(pos, start=1)}
        lv = frozenset(idx[p] for p in lam if p in idx)
        mv = frozenset(idx[p] for p in mu if p in idx)
        m = len(pos)
        piece = schubert_tilde(lv, mv, m)
        if not piece:
            return Poly.zero(n)
        # colour-v variable a of the piece is T_{w(pos[a])}
        out = out * piece.rename([w(p) for p in pos], n)
    return out


def grouping_sign(lam: Iterable[int], cols: Sequence[str], vertices: Sequence[str]) -> int:
    """Sign of the colour-grouped wedge: ``wedge_i omega_{lam(i)} = sign * omega_lam``."""
    order = {v: a for a, v in enumerate(vertices)}
    lam = sorted(lam)
    inv = sum(1 for a, p in enumerate(lam) for q in lam[a + 1:]
              if order[cols[p - 1]] < order[cols[q - 1]])
    return -1 if inv % 2 else 1


# ---------------------------------------------------------------------------
# Grassmannian star product and its flag lift


def star(X: Mapping[frozenset, RatFunc], Y: Mapping[frozenset, RatFunc], n: int) -> dict[frozenset, RatFunc]:
    """``(X * Y)(mu) = sum_{mu = mu1 u mu2} X(mu1) Y(mu2) / Q_{mu1,mu2}``."""
    a = _class_size(X)
    b = _class_size(Y)
    zero = RatFunc(Poly.zero(n))
    out = {}
    for mu in subsets(n, a + b):
        acc = zero
        for mu1_t in itertools.combinations(sorted(mu), a):
            mu1 = frozenset(mu1_t)
            mu2 = mu - mu1
            x, y = X.get(mu1), Y.get(mu2)
            if not x or not y:
                continue
            q = _prod((_diff(i, j, n) for i in mu1 for j in mu2), n)
            acc = acc + x * y / RatFunc(q)
        out[mu] = acc
    return out


def _class_size(X: Mapping[frozenset, object]) -> int:
    sizes = {len(m) for m in X}
    if len(sizes) != 1:
        raise ValueError("a Grassmannian class must live on a single Gr(k, n)")
    return sizes.pop()


def verify_star_identity(lam: Iterable[int], nu: Iterable[int], n: int) -> bool:
    """``S_lam * S_nu = (-1)^{s(lam,nu)} S_{lam u nu}`` if disjoint, else ``0``."""
    lam, nu = frozenset(lam), frozenset(nu)
    if len(lam) + len(nu) > n:
        raise ValueError("|lam| + |nu| exceeds n")
    got = star(schubert_class(lam, n), schubert_class(nu, n), n)
    if lam & nu:
        return all(not v for v in got.values())
    s = sum(1 for i in lam for j in nu if i < j)
    want = schubert_class(lam | nu, n)
    sign = -1 if s % 2 else 1
    return all(got[mu] == want[mu] * sign for mu in want)


def iota_lift(X: Mapping[frozenset, RatFunc], k1: int, k2: int, n: int) -> dict[tuple, RatFunc]:
    """``iota X = sum_{mu1 > mu2} A^{-1}_{mu1} Q^{-1}_{mu1-mu2,mu2} X(mu1 - mu2) [g_{mu1,mu2}]``."""
    if not 0 <= k2 <= k1 <= n:
        raise ValueError("need 0 <= k2 <= k1 <= n")
    if X and _class_size(X) != k1 - k2:
        raise ValueError("class lives on the wrong Grassmannian")
    out = {}
    for mu1 in subsets(n, k1):
        for mu2_t in itertools.combinations(sorted(mu1), k2):
            mu2 = frozenset(mu2_t)
            x = X.get(mu1 - mu2)
            if not x:
                continue
            den = euler_grass(mu1, n) * _prod((_diff(i, j, n) for i in mu1 - mu2 for j in mu2), n)
            out[(mu1, mu2)] = x / RatFunc(den)
    return out


def flag_convolve(F1: Mapping[tuple, RatFunc], F2: Mapping[tuple, RatFunc], n: int) -> dict[tuple, RatFunc]:
    """``[g_{mu1,mu2}] * [g_{mu2,mu3}] = A_{mu2} [g_{mu1,mu3}]``."""
    by_first: dict[frozenset, list] = {}
    for (a, b), v in F2.items():
        by_first.setdefault(a, []).append((b, v))
    out: dict[tuple, RatFunc] = {}
    for (m1, m2), v1 in F1.items():
        w = RatFunc(euler_grass(m2, n))
        for m3, v2 in by_first.get(m2, ()):
            key = (m1, m3)
            term = v1 * w * v2
            out[key] = out[key] + term if key in out else term
    return {k: v for k, v in out.items() if v}


def verify_redwine(X, Y, k1: int, k2: int, k3: int, n: int) -> bool:
    """``(iota_{k1,k2} X) * (iota_{k2,k3} Y) = iota_{k1,k3}(X * Y)``."""
    lhs = flag_convolve(iota_lift(X, k1, k2, n), iota_lift(Y, k2, k3, n), n)
    rhs = iota_lift(star(X, Y, n), k1, k3, n)
    rhs = {k: v for k, v in rhs.items() if v}
    return lhs == rhs


def coloured_iota(X: Mapping[tuple, RatFunc], k1: Sequence[int], k2: Sequence[int],
                  col: Colouring) -> dict[tuple, RatFunc]:
    """``iota X`` on untwisted points ``(w1, w2, mu1, mu2)``: ``Q^{-1}_{mu2,mu1^c} X(w1, w2, mu1 - mu2)``."""
    n = col.n
    k1, k2 = tuple(k1), tuple(k2)
    out = {}
    for (w1, w2, mu), x in X.items():
        if not x:
            continue
        for mu1 in subsets(n, sum(k1)):
            if not mu <= mu1 or col.counts(mu1, col.i0) != k1:
                continue
            mu2 = mu1 - mu
            if col.counts(mu2, col.i0) != k2:
                continue
            comp = [p for p in range(1, n + 1) if p not in mu1]
            out[(w1, w2, mu1, mu2)] = x / RatFunc(_col_Q(mu2, comp, col))
    return out


def coloured_star(X: Mapping[tuple, RatFunc], Y: Mapping[tuple, RatFunc], col: Colouring) -> dict[tuple, RatFunc]:
    """``(X * Y)(w1, w3, mu) = sum_{w2, mu = mu' u mu''} Theta_{w2} Q_{mu'',mu'} X(w1,w2,mu') Y(w2,w3,mu'')``."""
    by_first: dict[Perm, list] = {}
    for (w2, w3, m2), y in Y.items():
        if y:
            by_first.setdefault(w2, []).append((w3, m2, y))
    out: dict[tuple, RatFunc] = {}
    for (w1, w2, m1), x in X.items():
        if not x:
            continue
        th = theta_flag(w2, col)
        for w3, m2, y in by_first.get(w2, ()):
            if m1 & m2:
                continue
            key = (w1, w3, m1 | m2)
            term = x * y * RatFunc(th * _col_Q(m2, m1, col))
            out[key] = out[key] + term if key in out else term
    return {k: v for k, v in out.items() if v}


def coloured_convolve(F1: Mapping[tuple, RatFunc], F2: Mapping[tuple, RatFunc], col: Colouring) -> dict[tuple, RatFunc]:
    """``[(w1,w2,mu1,mu2)] * [(w2,w3,mu2,mu3)] = Theta_{w2,mu2} [(w1,w3,mu1,mu3)]``."""
    by_first: dict[tuple, list] = {}
    for (w2, w3, m2, m3), v in F2.items():
        by_first.setdefault((w2, m2), []).append((w3, m3, v))
    out: dict[tuple, RatFunc] = {}
    for (w1, w2, m1, m2), v1 in F1.items():
        wt = RatFunc(euler_coloured_point(w2, m2, col))
        for w3, m3, v2 in by_first.get((w2, m2), ()):
            key = (w1, w3, m1, m3)
            term = v1 * wt * v2
            out[key] = out[key] + term if key in out else term
    return {k: v for k, v in out.items() if v}


def verify_starintertwines(X, Y, k1, k2, k3, col: Colouring) -> bool:
    """The coloured analogue of :func:`verify_redwine` on untwisted labels."""
    k1, k2, k3 = tuple(k1), tuple(k2), tuple(k3)
    lhs = coloured_convolve(coloured_iota(X, k1, k2, col), coloured_iota(Y, k2, k3, col), col)
    rhs = coloured_iota(coloured_star(X, Y, col), k1, k3, col)
    rhs = {k: v for k, v in rhs.items() if v}
    return lhs == rhs


# ---------------------------------------------------------------------------
# localized classes and kernels


@dataclass
class LocClass:
    """``sum c_x [x]`` over twisted fixed points of one stratum."""

    col: Colouring
    k: tuple[int, ...]
    coeffs: dict[FPoint, RatFunc] = field(default_factory=dict)

    def __post_init__(self):
        self.k = self.col.stratum(self.k)
        self.coeffs = {fp.twisted(): v for fp, v in self.coeffs.items() if v}

    @property
    def n(self) -> int:
        return self.col.n

    def __add__(self, other: "LocClass") -> "LocClass":
        _check_same(self, other.col, other.k)
        out = dict(self.coeffs)
        for x, v in other.coeffs.items():
            out[x] = out[x] + v if x in out else v
        return LocClass(self.col, self.k, out)

    def __neg__(self) -> "LocClass":
        return LocClass(self.col, self.k, {x: -v for x, v in self.coeffs.items()})

    def __sub__(self, other: "LocClass") -> "LocClass":
        return self + (-other)

    def scale(self, c) -> "LocClass":
        return LocClass(self.col, self.k, {x: v * c for x, v in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, LocClass):
            return NotImplemented
        return self.col == other.col and self.k == other.k and self.coeffs == other.coeffs

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.coeffs


def _check_same(c: LocClass, col: Colouring, k: tuple[int, ...]) -> None:
    if c.col != col or c.k != tuple(k):
        raise StratumError(f"stratum mismatch: {c.k} vs {tuple(k)}")


@dataclass
class LocKernel:
    """``sum K_{x1,x2} [(x1, x2)]`` from the stratum ``source`` to the stratum ``target``."""

    col: Colouring
    target: tuple[int, ...]
    source: tuple[int, ...]
    entries: dict[tuple[FPoint, FPoint], RatFunc] = field(default_factory=dict)

    def __post_init__(self):
        self.target = self.col.stratum(self.target)
        self.source = self.col.stratum(self.source)
        self.entries = {(a.twisted(), b.twisted()): v for (a, b), v in self.entries.items() if v}

    def __getitem__(self, key: tuple[FPoint, FPoint]) -> RatFunc:
        return self.entries.get(key, RatFunc(Poly.zero(self.col.n)))

    def __neg__(self) -> "LocKernel":
        return LocKernel(self.col, self.target, self.source, {k: -v for k, v in self.entries.items()})

    def scale(self, c) -> "LocKernel":
        return LocKernel(self.col, self.target, self.source, {k: v * c for k, v in self.entries.items()})

    def __add__(self, other: "LocKernel") -> "LocKernel":
        if (self.col, self.target, self.source) != (other.col, other.target, other.source):
            raise StratumError("kernels of different strata")
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out[k] + v if k in out else v
        return LocKernel(self.col, self.target, self.source, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LocKernel):
            return NotImplemented
        return (self.col, self.target, self.source, self.entries) == (
            other.col, other.target, other.source, other.entries)

    __hash__ = None

    def by_source(self) -> dict[FPoint, list[tuple[FPoint, RatFunc]]]:
        out: dict[FPoint, list] = {}
        for (a, b), v in self.entries.items():
            out.setdefault(b, []).append((a, v))
        return out


@lru_cache(maxsize=None)
def _euler_factors(fp: FPoint, col: Colouring) -> tuple[tuple[int, int], ...]:
    """``eu(Y, x)`` as a list of linear factors ``(a, b)`` meaning ``T_a - T_b``."""
    w, nu, n = fp.w, fp.subspace(), fp.n
    cols = col.block(w)
    out = [(w(q), w(p)) for p in range(1, n + 1) for q in range(p + 1, n + 1) if cols[p - 1] == cols[q - 1]]
    for s, t in col.quiver.arrows:
        out += [(w(p), w(q)) for p in range(1, n + 1) for q in range(p + 1, n + 1)
                if cols[q - 1] == s and cols[p - 1] == t]
    out += [(j, i) for i in nu for j in range(1, n + 1) if j not in nu and col.same_colour(i, j)]
    return tuple(out)


@lru_cache(maxsize=None)
def _euler_rat(fp: FPoint, col: Colouring) -> RatFunc:
    return RatFunc(_prod((_diff(a, b, fp.n) for a, b in _euler_factors(fp, col)), fp.n))


@lru_cache(maxsize=None)
def _euler_inv(fp: FPoint, col: Colouring) -> RatFunc:
    out = RatFunc(Poly.one(fp.n))
    for a, b in _euler_factors(fp, col):
        out = out * _inv_diff(a, b, fp.n)
    return out


def diagonal_kernel(col: Colouring, k) -> LocKernel:
    """The convolution unit ``sum A^{-1}_x [(x, x)]``."""
    pts = col.points(k)
    return LocKernel(col, k, k, {(x, x): _euler_inv(x, col) for x in pts})


def convolve(K: LocKernel, c):
    """``K * c`` for a class, or ``K * K'`` for a kernel; the middle point carries its Euler class."""
    if isinstance(c, LocClass):
        _check_same(c, K.col, K.source)
        out: dict[FPoint, RatFunc] = {}
        src = K.by_source()
        for x2, v in c.coeffs.items():
            w = _euler_rat(x2, K.col) * v
            for x1, kv in src.get(x2, ()):
                term = kv * w
                out[x1] = out[x1] + term if x1 in out else term
        return LocClass(K.col, K.target, out)
    if isinstance(c, LocKernel):
        if K.col != c.col or K.source != c.target:
            raise StratumError(f"cannot compose kernels: source {K.source} vs target {c.target}")
        src = K.by_source()
        out2: dict[tuple[FPoint, FPoint], RatFunc] = {}
        for (x2, x3), v in c.entries.items():
            w = _euler_rat(x2, K.col) * v
            for x1, kv in src.get(x2, ()):
                key = (x1, x3)
                term = kv * w
                out2[key] = out2[key] + term if key in out2 else term
        return LocKernel(K.col, K.target, c.source, out2)
    raise TypeError("convolve expects a LocClass or a LocKernel")


def _as_coloured(e, col: Colouring) -> ColouredExtElt:
    if isinstance(e, ColouredExtElt):
        return e
    return ColouredExtElt.single(col.i0, e)


def localize_elt(P, lam: Iterable[int] | None = None, n: int | None = None,
                 col: Colouring | None = None, cols: Sequence[str] | None = None) -> LocClass:
    """Localize ``P omega_lam`` (or an element of ``EPol`` of one exterior degree).

    Uncoloured: ``P omega_lam = sum_{w,mu} P_w S^w_lam(mu) A^{-1}_{w,mu} [x_{w,mu}]``.
    Coloured, in the block ``cols``: the same with the coloured restriction and the
    sign of the colour-grouped wedge.
    """
    if isinstance(P, (ExtElt, ColouredExtElt)):
        e = P
        if col is None:
            col = Colouring.plain(e.n)
        blocks = _as_coloured(e, col).blocks if isinstance(e, ColouredExtElt) or not col.is_plain else {col.i0: e}
        if isinstance(e, ExtElt) and not col.is_plain:
            if cols is None:
                raise ValueError("a coloured localization needs the block colours")
            blocks = {tuple(cols): e}
        degs = {(blk, lam_) for blk, el in blocks.items() for lam_ in el.comps}
        ks = {col.counts(l, b) for b, l in degs}
        if len(ks) > 1:
            raise StratumError("element spans several strata; localize each part separately")
        if not ks:
            raise ValueError("the zero element has no stratum; pass P=0 with lam instead")
        acc = None
        for b, el in blocks.items():
            for l, p in el.comps.items():
                part = localize_elt(p, l, col=col, cols=b)
                acc = part if acc is None else acc + part
        return acc
    lam = frozenset(lam or ())
    if col is None:
        n = P.n if n is None else n
        col = Colouring.plain(n)
    n = col.n
    if P.n != n:
        raise ValueError("polynomial has the wrong variable count")
    cols = col.i0 if cols is None else tuple(cols)
    k = col.counts(lam, cols)
    out: dict[FPoint, RatFunc] = {}
    if P:
        sign = grouping_sign(lam, cols, col.quiver.vertices)
        for w in col.perms_for(cols):
            Pw = P.permute(w)
            for mu in subsets(n, len(lam)):
                if col.counts(mu, cols) != k:
                    continue
                S = coloured_schubert(w, lam, mu, col)
                if not S:
                    continue
                fp = FPoint(w, mu)
                val = RatFunc(Pw * S * sign) * _euler_inv(fp, col)
                out[fp] = val
    return LocClass(col, k, out)


def _min_perm(col: Colouring, cols: tuple[str, ...]) -> Perm:
    return min(col.perms_for(cols), key=lambda w: (w.length(), w.images))


def delocalize(c: LocClass):
    """Invert :func:`localize_elt`; returns an ``ExtElt`` (uncoloured) or ``ColouredExtElt``.

    Raises :class:`NotPolynomial` when ``c`` is not a localized polynomial element.
    """
    col, n = c.col, c.n
    k = c.k
    by_block: dict[tuple[str, ...], list[FPoint]] = {}
    for fp in c.coeffs:
        by_block.setdefault(col.block(fp.w), []).append(fp)
    result = ColouredExtElt(n)
    for cols in sorted(by_block):
        w = _min_perm(col, cols)
        mus = [mu for mu in subsets(n, sum(k)) if col.counts(mu, cols) == k]
        parts = _col_parts(cols, col.quiver.vertices)

        def rank_key(mu):
            s = 0
            for _, pos in parts:
                idx = {p: a for a, p in enumerate(pos, start=1)}
                s += sum(idx[p] for p in mu if p in idx)
            return -s

        mus.sort(key=lambda m: (rank_key(m), sorted(m)))
        solved: dict[frozenset, RatFunc] = {}
        for mu in mus:
            fp = FPoint(w, mu)
            v = c.coeffs.get(fp, RatFunc(Poly.zero(n))) * _euler_rat(fp, col)
            for lam, q in solved.items():
                S = coloured_schubert(w, lam, mu, col)
                if S:
                    v = v - q * RatFunc(S)
            if v:
                v = v / RatFunc(coloured_schubert(w, mu, mu, col))
                if not v.is_poly():
                    raise NotPolynomial(f"component at {_set_text(mu)} in block {cols} is not polynomial")
                solved[mu] = v
        winv = w.inverse()
        comps = {lam: q.to_poly().permute(winv) * grouping_sign(lam, cols, col.quiver.vertices)
                 for lam, q in solved.items()}
        result = result + ColouredExtElt.single(cols, ExtElt(n, comps))
    back = localize_elt(result, col=col) if result else LocClass(col, k, {})
    if back != c:
        raise NotPolynomial("class is not in the image of localization")
    if col.is_plain:
        return result.blocks.get(col.i0, ExtElt.zero(n))
    return result


# ---------------------------------------------------------------------------
# kernels


def _stratum_k(col: Colouring, k) -> tuple[int, ...]:
    return col.stratum(k)


def _demazure_entries(col: Colouring, k, r: int) -> LocKernel:
    n = col.n
    if not 1 <= r < n:
        raise ValueError(f"r={r} out of range for n={n}")
    k = _stratum_k(col, k)
    s = Perm.simple(r, n)
    out = {}
    for x2 in col.points(k):
        w2, mu2 = x2.w, x2.mu
        cols = col.block(w2)
        if cols[r - 1] == cols[r]:
            coeff = _inv_diff(w2(r), w2(r + 1), n)
            for w1 in (w2, w2 * s):
                x1 = FPoint(w1, _image(w1.inverse() * w2, mu2))
                out[(x1, x2)] = coeff * _euler_inv(x1, col)
        else:
            w1 = w2 * s
            x1 = FPoint(w1, _image(s, mu2))
            h = col.quiver.h(cols[r - 1], cols[r])
            out[(x1, x2)] = RatFunc(_diff(w1(r), w1(r + 1), n) ** h) * _euler_inv(x1, col)
    return LocKernel(col, k, k, out)


def _shift(k: tuple[int, ...], v: int, d: int) -> tuple[int, ...]:
    return tuple(x + d if a == v else x for a, x in enumerate(k))


def _creation_entries(col: Colouring, k, vertex: str, a: int | None) -> LocKernel:
    """``Y_k -> Y_{k + e_vertex}``; with ``a`` given, the extra factor for ``omega_{a,vertex}``."""
    n = col.n
    k = _stratum_k(col, k)
    vi = col.quiver.vertices.index(vertex)
    if k[vi] >= col.dimvec.get(vertex, 0):
        raise ValueError("creation leaves the admissible strata")
    koszul = -1 if sum(k[:vi]) % 2 else 1
    out = {}
    for x2 in col.points(k):
        w, mu2 = x2.w, x2.mu
        cols = col.block(w)
        same = [p for p in range(1, n + 1) if cols[p - 1] == vertex]
        for t in same:
            if t in mu2:
                continue
            x1 = FPoint(w, mu2 | {t})
            coeff = RatFunc(Poly.const(koszul, n))
            for i in mu2:
                if cols[i - 1] == vertex:
                    coeff = coeff * _inv_diff(w(t), w(i), n)
            if a is not None:
                r = same[a - 1]
                coeff = coeff * RatFunc(_prod((_diff(w(p), w(t), n) for p in same if p > r), n))
            out[(x1, x2)] = coeff * _euler_inv(x1, col)
    return LocKernel(col, _shift(k, vi, 1), k, out)


def _annihilation_entries(col: Colouring, k, vertex: str, a: int | None, xi_power: int | None = None) -> LocKernel:
    """``Y_{k + e_vertex} -> Y_k``; ``k`` is the target stratum."""
    n = col.n
    k = _stratum_k(col, k)
    vi = col.quiver.vertices.index(vertex)
    src = _shift(k, vi, 1)
    if src[vi] > col.dimvec.get(vertex, 0) or k[vi] < 0:
        raise ValueError("annihilation leaves the admissible strata")
    koszul = -1 if sum(k[:vi]) % 2 else 1
    out = {}
    for x2 in col.points(src):
        w, mu2 = x2.w, x2.mu
        cols = col.block(w)
        same = [p for p in range(1, n + 1) if cols[p - 1] == vertex]
        for t in mu2:
            if cols[t - 1] != vertex:
                continue
            x1 = FPoint(w, mu2 - {t})
            coeff = RatFunc(Poly.const(koszul, n))
            for i in same:
                if i not in mu2:
                    coeff = coeff * _inv_diff(w(i), w(t), n)
            if a is not None:
                r = same[a - 1]
                coeff = coeff * RatFunc(_prod((_diff(w(p), w(t), n) for p in same if p < r), n))
            if xi_power is not None:
                sign = -1 if sum(k) % 2 else 1
                coeff = coeff * RatFunc(_t(w(t), n) ** xi_power * sign)
            out[(x1, x2)] = coeff * _euler_inv(x1, col)
    return LocKernel(col, k, src, out)


def kernel(kind: str, n: int, *args) -> LocKernel:
    """Uncoloured kernels on ``[1;n]``.

    ``demazure(k, r)``: on ``Y_k``, coefficient ``A^{-1}_{w1,mu1} (T_{w2(r)} - T_{w2(r+1)})^{-1}``.
    ``creation(k)``, ``creation_r(k, r)``: ``Y_k -> Y_{k+1}``.
    ``annihilation(k)``, ``annihilation_r(k, r)``, ``dN(k, N)``: ``Y_{k+1} -> Y_k``.
    """
    col = Colouring.plain(n)
    if kind == "demazure":
        k, r = args if len(args) == 2 else (None, args[0])
        if k is None:
            raise ValueError("demazure needs (k, r)")
        return _demazure_entries(col, k, r)
    if kind == "creation":
        (k,) = args
        return _creation_entries(col, k, "i", None)
    if kind == "creation_r":
        k, r = args
        return _creation_entries(col, k, "i", r)
    if kind == "annihilation":
        (k,) = args
        return _annihilation_entries(col, k, "i", None)
    if kind == "annihilation_r":
        k, r = args
        return _annihilation_entries(col, k, "i", r)
    if kind == "dN":
        k, N = args
        return _annihilation_entries(col, k, "i", None, xi_power=N)
    raise ValueError(f"unknown kernel kind {kind!r}")


def coloured_kernel(kind: str, col: Colouring, k, *args) -> LocKernel:
    """Coloured kernels.

    ``demazure(r)``: on the stratum ``k``.
    ``creation(j)``: multiplication by ``omega_{n_j,j}``; ``creation_r(j, a)``: by ``omega_{a,j}``.
    ``annihilation(j)``, ``annihilation_r(j, a)``: from ``k + e_j`` to ``k``.
    """
    if kind == "demazure":
        (r,) = args
        return _demazure_entries(col, k, r)
    if kind == "creation":
        (j,) = args
        return _creation_entries(col, k, j, None)
    if kind == "creation_r":
        j, a = args
        return _creation_entries(col, k, j, a)
    if kind == "annihilation":
        (j,) = args
        return _annihilation_entries(col, k, j, None)
    if kind == "annihilation_r":
        j, a = args
        return _annihilation_entries(col, k, j, a)
    raise ValueError(f"unknown coloured kernel kind {kind!r}")


# ---------------------------------------------------------------------------
# symmetric group action


def sn_act_loc(z: Perm, c: LocClass) -> LocClass:
    """``z(A^{-1}_{w,mu} [x_{w,mu}]) = A^{-1}_{wz^{-1},z(mu)} [x_{wz^{-1},z(mu)}]``."""
    col = c.col
    zi = z.inverse()
    out = {}
    for fp, v in c.coeffs.items():
        new = FPoint(fp.w * zi, _image(z, fp.mu))
        out[new] = v * _euler_rat(fp, col) * _euler_inv(new, col)
    k = col.stratum_of(next(iter(out))) if out else c.k
    return LocClass(col, k, out)


def verify_sraction(z: Perm, P: Poly, lam: Iterable[int]) -> bool:
    """``delocalize(z(localize(P omega_lam))) == sn_act(z, P omega_lam)``."""
    from .extrep import sn_act

    n = P.n
    got = delocalize(sn_act_loc(z, localize_elt(P, lam, n)))
    return got == sn_act(z, ExtElt.omega(lam, n, P))


# ---------------------------------------------------------------------------
# operator matching


def verify_operator_match(K: LocKernel, A: Callable, D: int, name: str = "operator-match") -> SweepReport:
    """Check ``delocalize(K * localize(P omega_lam)) == A(P omega_lam)`` for all ``deg P <= D``.

    ``A`` receives an ``ExtElt`` (uncoloured) or a ``ColouredExtElt``.
    """
    if D < 0:
        raise ValueError("D must be nonnegative")
    col, n = K.col, K.col.n
    rep = SweepReport(name)
    blocks = [col.i0] if col.is_plain else col.blocks()
    for cols in blocks:
        for lam in subsets(n, sum(K.source)):
            if col.counts(lam, cols) != K.source:
                continue
            for d in range(D + 1):
                for e in iter_monomials(n, d):
                    P = Poly.monomial(e)
                    elt = ExtElt.omega(lam, n, P)
                    loc = localize_elt(P, lam, col=col, cols=cols)
                    rep.cases += 1
                    try:
                        got = delocalize(convolve(K, loc))
                    except NotPolynomial as exc:
                        rep.fail(f"P={P}, lam={_set_text(lam)}, block={cols}: {exc}")
                        continue
                    if col.is_plain:
                        want = A(elt)
                    else:
                        want = A(ColouredExtElt.single(cols, elt))
                        if isinstance(got, ExtElt):
                            got = ColouredExtElt(n)
                    if got != want:
                        rep.fail(f"P={P}, lam={_set_text(lam)}, block={','.join(cols)}: "
                                 f"got {got.to_text()}, want {want.to_text()}")
    return rep


# ---------------------------------------------------------------------------
# table-level sweeps


def sweep_backends(n: int) -> SweepReport:
    rep = SweepReport(f"schubert backends agree, n={n}")
    for k in range(n + 1):
        a, b = schubert_build(n, k, "recursion"), schubert_build(n, k, "oracle")
        for lam in subsets(n, k):
            for mu in subsets(n, k):
                rep.cases += 1
                if a(lam, mu) != b(lam, mu):
                    rep.fail(f"S{_set_text(lam)}({_set_text(mu)}): {a(lam, mu)} vs {b(lam, mu)}")
    return rep


def sweep_lemmas(n: int) -> SweepReport:
    """The four creation and annihilation identities, including the vanishing branches."""
    rep = SweepReport(f"creation/annihilation identities, n={n}")
    zero = RatFunc(Poly.zero(n))
    for lam in subsets(n):
        S = lambda s, lam=lam: schubert_tilde(lam, s, n)
        for r in range(1, n + 1):
            above = sum(1 for i in lam if i > r)
            below = sum(1 for i in lam if i < r)
            for mu in subsets(n, len(lam) + 1):
                rep.cases += 1
                got = _lift_plus(S, r, mu, n)
                want = zero if r in lam else RatFunc(schubert_tilde(lam | {r}, mu, n) * (-1) ** above)
                if got != want:
                    rep.fail(f"+{r}: lam={_set_text(lam)}, mu={_set_text(mu)}")
            if lam:
                for mu in subsets(n, len(lam) - 1):
                    rep.cases += 1
                    got = _lift_minus(S, r, mu, n)
                    want = zero if r not in lam else RatFunc(schubert_tilde(lam - {r}, mu, n) * (-1) ** below)
                    if got != want:
                        rep.fail(f"-{r}: lam={_set_text(lam)}, mu={_set_text(mu)}")
    return rep


def sweep_wall_crossing(n: int) -> SweepReport:
    """``S^{ws_r}_lam(mu) = S^w_lam(s_r mu) + [r in lam, r+1 not] (T_{w(r)} - T_{w(r+1)}) S^w_{s_r lam}(s_r mu)``."""
    rep = SweepReport(f"wall-crossing, n={n}")
    for r in range(1, n):
        s = Perm.simple(r, n)
        for w in all_perms(n):
            ws = w * s
            for lam in subsets(n):
                for mu in subsets(n, len(lam)):
                    rep.cases += 1
                    smu = _image(s, mu)
                    want = schubert_w(w, lam, smu)
                    if r in lam and r + 1 not in lam:
                        want = want + _diff(w(r), w(r + 1), n) * schubert_w(w, _image(s, lam), smu)
                    if schubert_w(ws, lam, mu) != want:
                        rep.fail(f"w={w.to_text()}, r={r}, lam={_set_text(lam)}, mu={_set_text(mu)}")
    return rep


def sweep_star(n: int) -> SweepReport:
    """The star identity on all pairs, its sign against the wedge sign, and associativity."""
    from .extrep import wedge_sign

    rep = SweepReport(f"star product of Schubert classes, n={n}")
    for lam in subsets(n):
        for nu in subsets(n):
            if len(lam) + len(nu) > n:
                continue
            rep.cases += 1
            if not verify_star_identity(lam, nu, n):
                rep.fail(f"S{_set_text(lam)} * S{_set_text(nu)}")
            if not lam & nu:
                e = ExtElt.omega(lam, n).wedge(ExtElt.omega(nu, n))
                s = sum(1 for i in lam for j in nu if i < j)
                if e.comps[lam | nu] != Poly.const((-1) ** s, n) or wedge_sign(lam, nu) != (-1) ** s:
                    rep.fail(f"exterior sign for {_set_text(lam)}, {_set_text(nu)}")
    for lam in subsets(n):
        for nu in subsets(n):
            for rho in subsets(n):
                if len(lam) + len(nu) + len(rho) > n:
                    continue
                rep.cases += 1
                a, b, c = schubert_class(lam, n), schubert_class(nu, n), schubert_class(rho, n)
                if star(star(a, b, n), c, n) != star(a, star(b, c, n), n):
                    rep.fail(f"associativity at {_set_text(lam)}, {_set_text(nu)}, {_set_text(rho)}")
    return rep


def sweep_t_to_s(col: Colouring) -> SweepReport:
    """The coloured restrictions are GKM classes with the right support and diagonal.

    For every block, a flag ``w`` in it and ``lam``, the function
    ``mu -> S^w_lam(mu)`` satisfies edge divisibility along same-coloured
    transpositions, vanishes unless ``mu >= lam`` in every colour, and equals
    the product of the single-colour diagonal values at ``mu = lam``.
    """
    n = col.n
    rep = SweepReport(f"coloured restriction factorization, n={n}")
    for w in all_perms(n):
        cols = col.block(w)
        parts = _col_parts(cols, col.quiver.vertices)
        for lam in subsets(n):
            k = col.counts(lam, cols)
            mus = [mu for mu in subsets(n, len(lam)) if col.counts(mu, cols) == k]
            vals = {mu: coloured_schubert(w, lam, mu, col) for mu in mus}
            for mu in mus:
                rep.cases += 1
                ok_support = all(
                    dominates([p for p in mu if p in pos], [p for p in lam if p in pos])
                    for _, pos in parts)
                if not ok_support and vals[mu]:
                    rep.fail(f"support: w={w.to_text()}, lam={_set_text(lam)}, mu={_set_text(mu)}")
                for i in mu:
                    for j in range(1, n + 1):
                        if j in mu or cols[i - 1] != cols[j - 1]:
                            continue
                        nu = (mu - {i}) | {j}
                        diff = vals[mu] - vals[nu]
                        if not diff.divides_linear(w(i), w(j)):
                            rep.fail(f"GKM: w={w.to_text()}, lam={_set_text(lam)}, edge {_set_text(mu)}-{_set_text(nu)}")
            diag = Poly.one(n)
            for _, pos in parts:
                for a, p in enumerate(pos):
                    for q in pos[a + 1:]:
                        if p in lam and q not in lam:
                            diag = diag * _diff(w(q), w(p), n)
            if vals[lam] != diag:
                rep.fail(f"diagonal: w={w.to_text()}, lam={_set_text(lam)}")
    return rep


def random_coloured_classes(col: Colouring, size: Sequence[int], rng: random.Random,
                            count: int = 6, perms: Sequence[Perm] | None = None) -> dict[tuple, RatFunc]:
    """Random sparse data ``(w1, w2, mu) -> polynomial`` for the starintertwines check."""
    n = col.n
    perms = list(perms or all_perms(n))
    mus = [mu for mu in subsets(n, sum(size)) if col.counts(mu, col.i0) == tuple(size)]
    out = {}
    for _ in range(count):
        w1, w2 = rng.choice(perms), rng.choice(perms)
        mu = rng.choice(mus)
        e = tuple(rng.randint(0, 1) for _ in range(n))
        out[(w1, w2, mu)] = RatFunc(Poly.monomial(e, rng.randint(1, 5)))
    return out


# ---------------------------------------------------------------------------
# suites shared by the command line and the tests


@dataclass(frozen=True)
class MatchCase:
    """A named kernel/operator pair; ``run()`` performs the match on ``deg P <= D``."""

    id: str
    cite: str
    make_kernel: Callable[[], LocKernel]
    action: Callable
    D: int

    def run(self) -> SweepReport:
        return verify_operator_match(self.make_kernel(), self.action, self.D, self.id)


def _blockwise(f):
    """Lift ``f(cols, e) -> (cols', e')`` to uncoloured and coloured elements."""
    def act(ce):
        if isinstance(ce, ExtElt):
            return f(("i",) * ce.n, ce)[1]
        out = ColouredExtElt(ce.n)
        for cols, b in ce.blocks.items():
            c2, e2 = f(cols, b)
            out = out + ColouredExtElt.single(c2, e2)
        return out
    return act


def operator_match_cases(col: Colouring, D: int, max_N: int = 3) -> list[MatchCase]:
    """Every kernel of the colouring against its algebraic operator.

    Uncoloured: Demazure, both creations, both annihilations and ``d_N``
    (``N <= max_N``) on every stratum.  Coloured: Demazure, ``omega_{n_j,j}``,
    ``omega_{a,j}`` creation and ``omega^-_{a,j}`` annihilation.
    """
    from .extrep import contract, demazure_ext, koszul_diff, simple_act, wedge
    from .quivercomb import colour_positions

    n = col.n
    cases: list[MatchCase] = []
    if col.is_plain:
        tag = f"n={n}"
        for k in range(n + 1):
            for r in range(1, n):
                cases.append(MatchCase(
                    f"demazure {tag} k={k} r={r}", "Demazure kernel acts as the divided difference d_r",
                    lambda k=k, r=r: kernel("demazure", n, k, r), lambda e, r=r: demazure_ext(r, e), D))
            if k == n:
                continue
            sg = (-1) ** k
            cases.append(MatchCase(
                f"creation {tag} k={k}", "creation kernel acts as multiplication by omega_n",
                lambda k=k: kernel("creation", n, k), lambda e: wedge(n, e), D))
            for r in range(1, n + 1):
                cases.append(MatchCase(
                    f"creation_r {tag} k={k} r={r}", "creation kernel acts as multiplication by omega_r",
                    lambda k=k, r=r: kernel("creation_r", n, k, r), lambda e, r=r: wedge(r, e), D))
            cases.append(MatchCase(
                f"annihilation {tag} k={k}", "annihilation kernel acts as (-1)^k omega^-_1",
                lambda k=k: kernel("annihilation", n, k), lambda e, sg=sg: contract(1, e).scale(sg), D))
            for r in range(1, n + 1):
                cases.append(MatchCase(
                    f"annihilation_r {tag} k={k} r={r}", "annihilation kernel acts as (-1)^k omega^-_r",
                    lambda k=k, r=r: kernel("annihilation_r", n, k, r),
                    lambda e, r=r, sg=sg: contract(r, e).scale(sg), D))
            for N in range(max_N + 1):
                cases.append(MatchCase(
                    f"dN {tag} k={k} N={N}", "the localized Koszul kernel acts as the differential d_N",
                    lambda k=k, N=N: kernel("dN", n, k, N), lambda e, N=N: koszul_diff(N, e), D))
        return cases
    q = col.quiver
    dv = col.dimvec
    verts = [v for v in q.vertices if v in dv]
    tag = f"{q.label()} {'+'.join(f'{dv[v]}{v}' for v in verts)}"
    strata = list(itertools.product(*[range(dv.get(v, 0) + 1) for v in q.vertices]))
    for k in strata:
        ktxt = "(" + ",".join(map(str, k)) + ")"
        for r in range(1, n):
            def dem(cols, b, r=r):
                if cols[r - 1] == cols[r]:
                    return cols, demazure_ext(r, b)
                h = q.h(cols[r - 1], cols[r])
                e = simple_act(r, b, swap=True).scale((Poly.var(r, n) - Poly.var(r + 1, n)) ** h)
                return act_on_colours(Perm.simple(r, n), cols), e
            cases.append(MatchCase(
                f"demazure {tag} k={ktxt} r={r}",
                "coloured Demazure kernel: d_r for equal colours, (X_r - X_(r+1))^h s_r otherwise",
                lambda k=k, r=r: coloured_kernel("demazure", col, k, r), _blockwise(dem), D))
        for vi, j in enumerate(q.vertices):
            if k[vi] >= dv.get(j, 0):
                continue

            def cre(cols, b, j=j, a=None):
                pos = colour_positions(cols, j)
                return cols, wedge(pos[-1] if a is None else pos[a - 1], b)

            cases.append(MatchCase(
                f"creation {tag} k={ktxt} j={j}", "coloured creation kernel acts as omega_{n_j,j}",
                lambda k=k, j=j: coloured_kernel("creation", col, k, j), _blockwise(cre), D))
            for a in range(1, dv[j] + 1):
                cases.append(MatchCase(
                    f"creation_r {tag} k={ktxt} j={j} a={a}", "coloured creation kernel acts as omega_{a,j}",
                    lambda k=k, j=j, a=a: coloured_kernel("creation_r", col, k, j, a),
                    _blockwise(lambda c, b, j=j, a=a: cre(c, b, j, a)), D))

                def ann(cols, b, j=j, a=a, sg=(-1) ** k[vi]):
                    pos = colour_positions(cols, j)
                    return cols, contract(pos[a - 1], b).scale(sg)

                cases.append(MatchCase(
                    f"annihilation_r {tag} k={ktxt} j={j} a={a}",
                    "coloured annihilation kernel acts as (-1)^(k_j) omega^-_{a,j}",
                    lambda k=k, j=j, a=a: coloured_kernel("annihilation_r", col, k, j, a), _blockwise(ann), D))
    return cases


def sraction_cases(n: int, D: int) -> list[tuple[str, Callable[[], bool]]]:
    """``(id, check)`` for the localized ``s_r`` action on ``P omega_lam``, every monomial ``P`` of degree ``<= D``."""
    out = []
    for r in range(1, n):
        z = Perm.simple(r, n)
        for lam in subsets(n):
            for d in range(D + 1):
                for e in iter_monomials(n, d):
                    P = Poly.monomial(e)
                    out.append((f"s_{r} on {P.to_text()} omega{_set_text(lam)}",
                                lambda z=z, P=P, lam=lam: verify_sraction(z, P, lam)))
    return out


def sweep_redwine(n: int) -> SweepReport:
    """``verify_redwine`` on every pair of Schubert classes and chain ``k1 >= k2 >= k3``."""
    rep = SweepReport(f"flag lift intertwines the star product, n={n}")
    for k1 in range(n + 1):
        for k2 in range(k1 + 1):
            for k3 in range(k2 + 1):
                for lam in subsets(n, k1 - k2):
                    for nu in subsets(n, k2 - k3):
                        rep.cases += 1
                        if not verify_redwine(schubert_class(lam, n), schubert_class(nu, n), k1, k2, k3, n):
                            rep.fail(f"k=({k1},{k2},{k3}) lam={_set_text(lam)} nu={_set_text(nu)}")
    return rep


def sweep_starintertwines(col: Colouring, seed: int = 0) -> SweepReport:
    """``verify_starintertwines`` on random sparse data for every chain of strata."""
    rng = random.Random(seed)
    dv = [col.dimvec.get(v, 0) for v in col.quiver.vertices]
    ks = list(itertools.product(*[range(d + 1) for d in dv]))
    rep = SweepReport(f"coloured lift intertwines the coloured star product, {col.quiver.label()}, n={col.n}")
    for k1 in ks:
        for k2 in ks:
            for k3 in ks:
                if not all(a >= b >= c for a, b, c in zip(k1, k2, k3)):
                    continue
                X = random_coloured_classes(col, [a - b for a, b in zip(k1, k2)], rng)
                Y = random_coloured_classes(col, [a - b for a, b in zip(k2, k3)], rng)
                rep.cases += 1
                if not verify_starintertwines(X, Y, k1, k2, k3, col):
                    rep.fail(f"k={k1},{k2},{k3}")
    return rep
