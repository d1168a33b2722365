"""Quivers, coloured permutations, crossing counts and degree bookkeeping."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

from .polyalg import Perm, Poly, all_perms, coset_decompose, right_coset_decompose, subsets

__all__ = [
    "Quiver",
    "ColouredPerm",
    "colour_sequences",
    "crossing_counts",
    "degree_of_word",
    "colour_positions",
    "colour_restrict",
    "colour_restrict_subset",
    "test_quivers",
    "act_on_colours",
    "SweepReport",
    "dim_flag",
    "dim_grass",
    "left_coset_reps",
    "right_coset_reps",
    "young_subgroup",
    "GellLabel",
    "gell_enumerate",
    "gell_dimension",
    "gell_dimension_by_colour",
    "FlagModel",
    "rel",
    "subspace_position",
    "subspace_coposition",
    "vW",
    "vPerpW",
    "alpha_entries",
    "dim_alpha",
    "relpos_factor",
    "gell_model",
    "DegreeDim",
    "degree_dim_check",
    "sweep_degree_dim",
    "sweep_diff_dim",
    "sweep_colour_lengths",
    "sweep_crossing_additivity",
    "sweep_sl2_cells",
    "dimension_vectors",
]


@dataclass(frozen=True)
class Quiver:
    """A loop-free quiver; arrows are ``(source, target)`` pairs, repeats allowed."""

    vertices: tuple[str, ...]
    arrows: tuple[tuple[str, str], ...] = ()
    name: str = ""

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex")
        for s, t in self.arrows:
            if s == t:
                raise ValueError("loop arrow")
            if s not in self.vertices or t not in self.vertices:
                raise ValueError(f"arrow ({s}, {t}) uses an unknown vertex")

    @cached_property
    def _h(self) -> Counter:
        return Counter(self.arrows)

    def h(self, i: str, j: str) -> int:
        return self._h[(i, j)]

    def Q(self, i: str, j: str, u: Poly, v: Poly) -> Poly:
        """``Q_{i,j}(u, v) = (u - v)^{h_ij} (v - u)^{h_ji}``, with ``Q_{i,i} = 1``."""
        if i == j:
            return Poly.one(u.n)
        return (u - v) ** self.h(i, j) * (v - u) ** self.h(j, i)

    def P(self, i: str, j: str, u: Poly, v: Poly) -> Poly:
        """``P_{i,j}(u, v) = (u - v)^{h_ij}``."""
        return (u - v) ** self.h(i, j)

    def q_coeffs(self, i: str, j: str) -> dict[tuple[int, int], mpq]:
        """Coefficients ``q^{tp}`` of ``Q_{i,j}(u, v) = sum q^{tp} u^t v^p``."""
        u, v = Poly.var(1, 2), Poly.var(2, 2)
        return {(e[0], e[1]): c for e, c in self.Q(i, j, u, v).terms.items()}

    def plus(self, other: "Quiver") -> "Quiver":
        """Disjoint union of the arrow sets over the same vertices."""
        if set(self.vertices) != set(other.vertices):
            raise ValueError("quiver sum needs a common vertex set")
        return Quiver(self.vertices, self.arrows + other.arrows)

    def is_source(self, i: str) -> bool:
        return not any(t == i for _, t in self.arrows)

    def is_sink(self, i: str) -> bool:
        return not any(s == i for s, _ in self.arrows)

    def label(self) -> str:
        return self.name or ",".join(self.vertices) + ":" + ",".join(f"{s}>{t}" for s, t in self.arrows)


def test_quivers() -> dict[str, Quiver]:
    """The quivers used throughout the verification suites."""
    return {
        "one-vertex": Quiver(("i",), (), "one-vertex"),
        "i->j": Quiver(("i", "j"), (("i", "j"),), "i->j"),
        "j->i": Quiver(("i", "j"), (("j", "i"),), "j->i"),
        "kronecker": Quiver(("i", "j"), (("i", "j"), ("i", "j")), "kronecker"),
        "gamma1": Quiver(("r", "b", "g"), (("r", "b"), ("g", "b")), "gamma1"),
    }


def colour_sequences(dimvec: Mapping[str, int]) -> list[tuple[str, ...]]:
    """All sequences with the given dimension vector, sorted."""
    pool = [v for v, c in sorted(dimvec.items()) for _ in range(c)]
    return sorted(set(itertools.permutations(pool)))


def act_on_colours(w: Perm, cols: Sequence[str]) -> tuple[str, ...]:
    """``w(j)``: the colour at position ``r`` moves to position ``w(r)``."""
    out = [None] * len(cols)
    for r, c in enumerate(cols, start=1):
        out[w(r) - 1] = c
    return tuple(out)


@dataclass(frozen=True)
class ColouredPerm:
    """A permutation with its bottom colour sequence ``j``; the top sequence is ``w(j)``."""

    w: Perm
    bottom: tuple[str, ...]

    @property
    def top(self) -> tuple[str, ...]:
        return act_on_colours(self.w, self.bottom)

    def crossings(self) -> Iterable[tuple[str, str]]:
        """Colour pairs ``(left-bottom, right-bottom)`` of every crossing."""
        w, j = self.w, self.bottom
        n = w.n
        for r in range(1, n + 1):
            for t in range(r + 1, n + 1):
                if w(r) > w(t):
                    yield j[r - 1], j[t - 1]

    def restrict(self, colour: str) -> Perm:
        return colour_restrict(self, colour)


def crossing_counts(w: Perm, bottom: Sequence[str], quiver: Quiver) -> tuple[int, int, int]:
    """``(X=, X->, X<-)`` of the coloured permutation ``(w, bottom)``."""
    eq = right = left = 0
    for a, b in ColouredPerm(w, tuple(bottom)).crossings():
        if a == b:
            eq += 1
        else:
            right += quiver.h(a, b)
            left += quiver.h(b, a)
    return eq, right, left


def colour_positions(cols: Sequence[str], colour: str) -> list[int]:
    return [r for r, c in enumerate(cols, start=1) if c == colour]


def colour_restrict(cp: ColouredPerm, colour: str) -> Perm:
    """The permutation traced out by the strands of one colour."""
    bottom = colour_positions(cp.bottom, colour)
    top = colour_positions(cp.top, colour)
    index = {p: a for a, p in enumerate(top, start=1)}
    return Perm(tuple(index[cp.w(r)] for r in bottom)) if bottom else Perm(())


def colour_restrict_subset(lam: Iterable[int], cols: Sequence[str], colour: str) -> frozenset[int]:
    """Re-index the positions of ``lam`` carrying ``colour`` among that colour's positions."""
    pos = colour_positions(cols, colour)
    index = {p: a for a, p in enumerate(pos, start=1)}
    return frozenset(index[p] for p in lam if p in index)


def degree_of_word(word, quiver: Quiver, dimvec: Mapping[str, int] | None = None) -> int:
    """Internal degree of a well-coloured word of ``X``, ``tau``, ``Omega`` and idempotent tokens.

    The word is read as a product, so the rightmost token acts first and
    carries the bottom colour sequence.
    """
    from .extrep import colour_flow

    total = 0
    for tok, cols in colour_flow(word):
        if tok.kind == "X":
            total += 2
        elif tok.kind == "tau":
            a, b = cols[tok.i - 1], cols[tok.i]
            total += 2 * quiver.h(a, b) - 2 * (a == b)
        elif tok.kind == "Omega":
            counts = Counter(cols)
            total += 2 * (counts[cols[0]] - 1)
        elif tok.kind == "1":
            pass
        else:
            raise ValueError(f"token {tok} has no KLR degree")
    return total


# ---------------------------------------------------------------------------
# sweep reports


@dataclass
class SweepReport:
    """Outcome of a sweep: number of cases and the first failures (as text)."""

    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, msg: str) -> None:
        if len(self.failures) < 20:
            self.failures.append(msg)
        else:
            self.failures[-1] = f"... (more failures; last: {msg})"

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: {self.cases} cases" + (
            "" if self.passed else f"; first failure: {self.failures[0]}")


# ---------------------------------------------------------------------------
# dimensions and cosets


def dimension_vectors(vertices: Sequence[str], max_total: int, min_total: int = 1) -> list[dict[str, int]]:
    """All dimension vectors with ``min_total <= |n| <= max_total`` (zero entries dropped), in a fixed order."""
    out = []
    for counts in itertools.product(range(max_total + 1), repeat=len(vertices)):
        if min_total <= sum(counts) <= max_total:
            out.append({v: c for v, c in zip(vertices, counts) if c})
    out.sort(key=lambda d: (sum(d.values()), sorted(d.items())))
    return out


def dim_flag(dimvec: Mapping[str, int]) -> int:
    """Dimension of the product of full flag varieties of the ``V_i``."""
    return sum(c * (c - 1) // 2 for c in dimvec.values())


def dim_grass(dimvec: Mapping[str, int], kvec: Mapping[str, int]) -> int:
    """Dimension of ``prod_i Gr_{k_i}(V_i)``."""
    return sum(kvec.get(v, 0) * (c - kvec.get(v, 0)) for v, c in dimvec.items())


@lru_cache(maxsize=None)
def left_coset_reps(n: int, k: int) -> tuple[Perm, ...]:
    """Minimal representatives of ``S_n/(S_k x S_{n-k})``, sorted."""
    return tuple(sorted({coset_decompose(w, k)[0] for w in all_perms(n)}, key=lambda p: p.images))


@lru_cache(maxsize=None)
def right_coset_reps(n: int, k: int) -> tuple[Perm, ...]:
    """Minimal representatives of ``(S_k x S_{n-k})\\S_n``, sorted."""
    return tuple(sorted({right_coset_decompose(w, k)[1] for w in all_perms(n)}, key=lambda p: p.images))


@lru_cache(maxsize=None)
def young_subgroup(n: int, k: int) -> tuple[Perm, ...]:
    """``S_k x S_{n-k}`` inside ``S_n``."""
    return tuple(p for p in all_perms(n) if all(p(i) <= k for i in range(1, k + 1)))


# ---------------------------------------------------------------------------
# Gell labels


@dataclass(frozen=True)
class GellLabel:
    """A Gell label ``(x, y, z, j)`` for the total Grassmannian size ``k``.

    The product ``x w_{0,k} y z`` is coloured by ``j`` at the bottom; its top
    is ``i``.  ``kvec`` counts the colours of ``z^{-1}([1;k])`` in ``j``.
    """

    k: int
    x: Perm
    y: Perm
    z: Perm
    j: tuple[str, ...]

    def __post_init__(self):
        n, k = len(self.j), self.k
        if not 0 <= k <= n or {self.x.n, self.y.n, self.z.n} != {n}:
            raise ValueError("inconsistent Gell label sizes")
        if coset_decompose(self.x, k)[0] != self.x:
            raise ValueError(f"x={self.x} is not a minimal left coset representative")
        if right_coset_decompose(self.z, k)[1] != self.z:
            raise ValueError(f"z={self.z} is not a minimal right coset representative")
        if any(self.y(i) > k for i in range(1, k + 1)):
            raise ValueError(f"y={self.y} is not in S_k x S_(n-k)")

    @property
    def n(self) -> int:
        return len(self.j)

    @property
    def w0(self) -> Perm:
        return Perm.longest(self.k, self.n)

    @property
    def full(self) -> Perm:
        return self.x * self.w0 * self.y * self.z

    @property
    def i(self) -> tuple[str, ...]:
        return act_on_colours(self.full, self.j)

    def bottoms(self) -> dict[str, tuple[str, ...]]:
        """Bottom colour sequence of each factor of ``x w_{0,k} y z``."""
        zb = self.j
        yb = act_on_colours(self.z, zb)
        wb = act_on_colours(self.y, yb)
        xb = act_on_colours(self.w0, wb)
        return {"x": xb, "w0": wb, "y": yb, "z": zb}

    @property
    def subset(self) -> frozenset[int]:
        """``z^{-1}([1;k])``: the positions of ``W`` at the bottom."""
        zi = self.z.inverse()
        return frozenset(zi(p) for p in range(1, self.k + 1))

    @property
    def dimvec(self) -> dict[str, int]:
        return dict(Counter(self.j))

    @property
    def kvec(self) -> dict[str, int]:
        counts = Counter(self.j[p - 1] for p in self.subset)
        return {v: counts.get(v, 0) for v in self.dimvec}

    def factors(self) -> dict[str, ColouredPerm]:
        b = self.bottoms()
        return {"x": ColouredPerm(self.x, b["x"]), "w0": ColouredPerm(self.w0, b["w0"]),
                "y": ColouredPerm(self.y, b["y"]), "z": ColouredPerm(self.z, b["z"])}

    def per_colour(self) -> dict[str, tuple[Perm, Perm, Perm]]:
        """The colour-wise triples ``(x^(c), y^(c), z^(c))``."""
        f = self.factors()
        return {c: (f["x"].restrict(c), f["y"].restrict(c), f["z"].restrict(c))
                for c in sorted(self.dimvec)}

    def word(self):
        """``tau_x Omega_{k,n} tau_y tau_z 1_j`` as a generator word."""
        from .extrep import idem, tau

        word = [tau(r) for r in self.x.reduced_word()] + _omega_kn_word(self.k)
        word += [tau(r) for r in self.y.reduced_word()] + [tau(r) for r in self.z.reduced_word()]
        return tuple(word) + (idem(self.j),)

    def to_text(self) -> str:
        return f"x={self.x} y={self.y} z={self.z} j={','.join(self.j)}"


def _omega_kn_word(k: int) -> list:
    """``Omega tau_1 Omega tau_2 tau_1 Omega ... tau_{k-1}...tau_1 Omega``."""
    from .extrep import Omega, tau

    word: list = []
    for m in range(1, k + 1):
        word += [tau(r) for r in range(m - 1, 0, -1)] + [Omega()]
    return word


def gell_enumerate(n: int, k: int, j: Sequence[str]) -> list[GellLabel]:
    """All Gell labels ``(x, y, z, j)`` with ``|k| = k``."""
    j = tuple(j)
    if len(j) != n:
        raise ValueError("colour sequence has the wrong length")
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    return [GellLabel(k, x, y, z, j)
            for x in left_coset_reps(n, k) for y in young_subgroup(n, k) for z in right_coset_reps(n, k)]


def gell_dimension(label: GellLabel, quiver: Quiver | None = None) -> int:
    """Dimension of the coloured Gell from the crossing counts of its factors.

    ``dim(F_i x G_k) + (1/2) sum (k_i^2 - k_i) + X=(x) + X=(y) + X=(z) + X=(w_{0,k}) - sum (n_i - 1) k_i``;
    equal-colour crossings do not depend on the arrows.
    """
    q = quiver or Quiver(tuple(sorted(label.dimvec)))
    nv, kv = label.dimvec, label.kvec
    eq = sum(crossing_counts(cp.w, cp.bottom, q)[0] for cp in label.factors().values())
    half = sum(kv[v] * kv[v] - kv[v] for v in nv) // 2
    dots = sum((nv[v] - 1) * kv[v] for v in nv)
    return dim_flag(nv) + dim_grass(nv, kv) + half + eq - dots


def gell_dimension_by_colour(label: GellLabel) -> int:
    """The product of one-colour Gells: ``sum_c (dim F(V_c) + l(x^(c)) + l(y^(c)) + l(z^(c)))``."""
    return dim_flag(label.dimvec) + sum(
        x.length() + y.length() + z.length() for x, y, z in label.per_colour().values())


# ---------------------------------------------------------------------------
# flag models at torus-fixed points


@dataclass(frozen=True)
class FlagModel:
    """A flag spanned by coloured basis slots: ``V^r`` is the span of ``order[:r]``.

    ``slot_colours[s - 1]`` is the colour of slot ``s``; two models are
    comparable when they share the slot colouring.
    """

    order: tuple[int, ...]
    slot_colours: tuple[str, ...]

    def __post_init__(self):
        if sorted(self.order) != list(range(1, len(self.slot_colours) + 1)):
            raise ValueError("a flag model orders every slot exactly once")

    @classmethod
    def standard(cls, cols: Sequence[str]) -> "FlagModel":
        return cls(tuple(range(1, len(cols) + 1)), tuple(cols))

    @property
    def n(self) -> int:
        return len(self.order)

    @property
    def cols(self) -> tuple[str, ...]:
        """The colour type of the flag."""
        return tuple(self.slot_colours[s - 1] for s in self.order)

    @cached_property
    def _pos(self) -> dict[int, int]:
        return {s: p for p, s in enumerate(self.order, start=1)}

    def position(self, s: int) -> int:
        return self._pos[s]

    def moved(self, w: Perm) -> "FlagModel":
        """The flag ``F'`` with ``rel(self, F') = w``."""
        return FlagModel(tuple(self.order[w(p) - 1] for p in range(1, self.n + 1)), self.slot_colours)


def _same_slots(a: FlagModel, b: FlagModel) -> None:
    if a.slot_colours != b.slot_colours:
        raise ValueError("flag models over different slot colourings")


def rel(f1: FlagModel, f2: FlagModel) -> Perm:
    """Relative position: ``rel(f1, f2)(p)`` is the ``f1``-position of the ``p``-th slot of ``f2``.

    It is coloured by ``f2.cols`` at the bottom and has ``f1.cols`` on top, and
    ``rel(a, b) rel(b, c) = rel(a, c)``.
    """
    _same_slots(f1, f2)
    return Perm(tuple(f1.position(s) for s in f2.order))


def subspace_position(f: FlagModel, W: Iterable[int]) -> Perm:
    """``rel(V, W)`` as the minimal left coset representative ``x`` with ``x([1;k]) = `` positions of ``W``."""
    pos = sorted(f.position(s) for s in W)
    rest = sorted(set(range(1, f.n + 1)) - set(pos))
    return Perm(tuple(pos + rest))


def subspace_coposition(W: Iterable[int], f: FlagModel) -> Perm:
    """``rel(W, V')`` as the minimal right coset representative ``z`` with ``z^{-1}([1;k]) = `` positions of ``W``."""
    return subspace_position(f, W).inverse()


def vW(f: FlagModel, W: Iterable[int]) -> FlagModel:
    """The flag through ``W`` closest to ``f``: ``W`` in ``f``-order, then the rest in ``f``-order."""
    Ws = set(W)
    return FlagModel(tuple(s for s in f.order if s in Ws) + tuple(s for s in f.order if s not in Ws),
                     f.slot_colours)


def vPerpW(f: FlagModel, W: Iterable[int]) -> FlagModel:
    """``vW`` with the part inside ``W`` replaced by its orthogonal (reversed) flag."""
    Ws = set(W)
    inside = [s for s in f.order if s in Ws]
    return FlagModel(tuple(reversed(inside)) + tuple(s for s in f.order if s not in Ws), f.slot_colours)


def alpha_entries(f: FlagModel, quiver: Quiver) -> frozenset[tuple[int, int, int]]:
    """Matrix slots ``(arrow, a, b)`` of representations preserving ``f``.

    An arrow ``h: c -> d`` may send slot ``a`` (colour ``c``) to slot ``b``
    (colour ``d``) iff ``b`` is not later than ``a`` in ``f``.
    """
    out = []
    for h, (src, tgt) in enumerate(quiver.arrows):
        for a in range(1, f.n + 1):
            if f.slot_colours[a - 1] != src:
                continue
            for b in range(1, f.n + 1):
                if f.slot_colours[b - 1] == tgt and f.position(b) <= f.position(a):
                    out.append((h, a, b))
    return frozenset(out)


def dim_alpha(f: FlagModel, quiver: Quiver) -> int:
    """``dim X(V)``: the representations preserving the flag."""
    return len(alpha_entries(f, quiver))


def relpos_factor(f: FlagModel, W: Iterable[int], quiver: Quiver) -> tuple[Perm, Perm]:
    """``(x1, x2)`` with ``x1 = rel(V, V^{W_j})`` and ``x2 = rel(V^{W_j}, V^{perp W})`` for one arrow ``i -> j``."""
    if len(quiver.arrows) != 1:
        raise ValueError("relpos_factor needs a quiver with exactly one arrow")
    tgt = quiver.arrows[0][1]
    W = frozenset(W)
    Wj = [s for s in W if f.slot_colours[s - 1] == tgt]
    mid = vW(f, Wj)
    return rel(f, mid), rel(mid, vPerpW(f, W))


def gell_model(label: GellLabel) -> tuple[FlagModel, frozenset[int], FlagModel]:
    """A point ``(V, W, V')`` of the Gell: ``V`` standard of type ``i``, ``W`` from ``x``, ``V'`` at ``yz`` from ``V^{perp W}``.

    The labels are recomputed from the model; a mismatch raises.
    """
    x, y, z, k = label.x, label.y, label.z, label.k
    V = FlagModel.standard(label.i)
    W = frozenset(V.order[x(p) - 1] for p in range(1, k + 1))
    Vp = vPerpW(V, W).moved(y * z)
    if Vp.cols != label.j:
        raise AssertionError("model has the wrong bottom colours")
    got = (subspace_position(V, W), rel(vPerpW(V, W), vW(Vp, W)), subspace_coposition(W, Vp))
    if got != (x, y, z):
        raise AssertionError(f"model realizes {tuple(map(str, got))}, not {label.to_text()}")
    return V, W, Vp


# ---------------------------------------------------------------------------
# degree against dimension


@dataclass
class DegreeDim:
    """Both sides of the degree/dimension equation for one Gell label."""

    label: GellLabel
    degree: int
    geometric: int
    gell_dim: int
    alpha_drop: int
    crossings: int
    witness: str = ""

    @property
    def passed(self) -> bool:
        return not self.witness and self.degree == self.geometric

    def line(self) -> str:
        return (f"{'PASS' if self.passed else 'FAIL'} {self.label.to_text()}: deg {self.degree}, "
                f"geometric {self.geometric}" + (f"; {self.witness}" if self.witness else ""))


def degree_dim_check(label: GellLabel, quiver: Quiver) -> DegreeDim:
    """Compare ``deg(tau_x Omega_{k,n} tau_y tau_z 1_j)`` with ``2 dim Y + sum (k_i^2 - k_i) - 2 dim p^{-1}(Gell)``.

    The right side is evaluated on the slot model of the Gell: the fibre
    dimensions over ``Y`` and over the Gell are ``dim X(V^{W_j})`` and
    ``dim X(V^{perp W}) cap X(V')`` per arrow ``i -> j``; the second copy of
    the representation space contributes equally to both and cancels.
    """
    notes: list[str] = []
    deg = degree_of_word(label.word(), quiver)
    nv, kv = label.dimvec, label.kvec
    dim_gell = gell_dimension(label, quiver)
    if dim_gell != gell_dimension_by_colour(label):
        notes.append(f"Gell dimension {dim_gell} != colour-wise {gell_dimension_by_colour(label)}")
    V, W, Vp = gell_model(label)
    perp = vPerpW(V, W)
    xw0 = label.x * label.w0
    f = label.factors()
    yz = ColouredPerm(label.y * label.z, label.j)
    drop = 0
    crossings = 0
    for h, arrow in enumerate(quiver.arrows):
        one = Quiver(quiver.vertices, (arrow,))
        Wj = [s for s in W if V.slot_colours[s - 1] == arrow[1]]
        top = len(alpha_entries(vW(V, Wj), one))
        bottom = len(alpha_entries(perp, one) & alpha_entries(Vp, one))
        drop += top - bottom
        right = sum(crossing_counts(cp.w, cp.bottom, one)[1] for cp in f.values())
        crossings += right
        # the chain of the argument, arrow by arrow
        x1, x2 = relpos_factor(V, W, one)
        mid_cols = act_on_colours(x2, f["w0"].bottom)
        if x1 * x2 != xw0 or x1.length() + x2.length() != xw0.length():
            notes.append(f"arrow {arrow}: x1 x2 != x w0 with added lengths")
        if crossing_counts(x1, mid_cols, one)[1] != 0:
            notes.append(f"arrow {arrow}: X->(x1) != 0")
        if top - len(alpha_entries(perp, one)) != crossing_counts(xw0, f["w0"].bottom, one)[1]:
            notes.append(f"arrow {arrow}: dim X(V^Wj) - dim X(V^perpW) != X->(x w0)")
        if len(alpha_entries(perp, one)) - bottom != crossing_counts(yz.w, yz.bottom, one)[1]:
            notes.append(f"arrow {arrow}: difference at (V^perpW, V') != X->(yz)")
    if drop != crossings:
        notes.append(f"alpha drop {drop} != X->(x)+X->(y)+X->(z)+X->(w0) = {crossings}")
    base = dim_flag(nv) + dim_grass(nv, kv) - dim_gell + drop
    geometric = 2 * base + sum(kv[v] * kv[v] - kv[v] for v in nv)
    return DegreeDim(label, deg, geometric, dim_gell, drop, crossings, "; ".join(notes))


def sweep_degree_dim(quiver: Quiver, dimvec: Mapping[str, int], k: int | None = None,
                     supported_on: Iterable[str] | None = None) -> SweepReport:
    """``degree_dim_check`` for every label of every colour sequence (optionally one ``k``, or ``k`` on given vertices)."""
    n = sum(dimvec.values())
    ks = range(n + 1) if k is None else [k]
    allowed = None if supported_on is None else set(supported_on)
    rep = SweepReport(f"degree/dimension of Gells, {quiver.label()}, {_dv_text(dimvec)}")
    for j in colour_sequences(dimvec):
        for kk in ks:
            for label in gell_enumerate(n, kk, j):
                if allowed is not None and any(label.j[p - 1] not in allowed for p in label.subset):
                    continue
                rep.cases += 1
                res = degree_dim_check(label, quiver)
                if not res.passed:
                    rep.fail(res.line())
    return rep


def _dv_text(dimvec: Mapping[str, int]) -> str:
    return "+".join(f"{c}{v}" for v, c in sorted(dimvec.items()) if c)


# ---------------------------------------------------------------------------
# combinatorial sweeps


def sweep_diff_dim(quiver: Quiver, dimvec: Mapping[str, int]) -> SweepReport:
    """``dim X(V) - dim (X(V) cap X(V')) = X->(rel(V, V'), type of V')`` for every pair of slot flags."""
    rep = SweepReport(f"representation drop across relative positions, {quiver.label()}, {_dv_text(dimvec)}")
    n = sum(dimvec.values())
    for cols in colour_sequences(dimvec):
        V = FlagModel.standard(cols)
        XV = alpha_entries(V, quiver)
        for w in all_perms(n):
            Vp = V.moved(w)
            lhs = len(XV) - len(XV & alpha_entries(Vp, quiver))
            rhs = crossing_counts(rel(V, Vp), Vp.cols, quiver)[1]
            rep.cases += 1
            if lhs != rhs or rel(V, Vp) != w:
                rep.fail(f"i={','.join(cols)} w={w}: {lhs} != {rhs}")
    return rep


def sweep_colour_lengths(quiver: Quiver, dimvec: Mapping[str, int]) -> SweepReport:
    """``sum_c l(w^(c)) = X=(w, j)`` for all coloured permutations."""
    rep = SweepReport(f"colour-wise lengths, {_dv_text(dimvec)}")
    n = sum(dimvec.values())
    for j in colour_sequences(dimvec):
        for w in all_perms(n):
            cp = ColouredPerm(w, j)
            rep.cases += 1
            lhs = sum(cp.restrict(c).length() for c in set(j))
            if lhs != crossing_counts(w, j, quiver)[0]:
                rep.fail(f"w={w} j={','.join(j)}")
    return rep


def sweep_crossing_additivity(q1: Quiver, q2: Quiver, dimvec: Mapping[str, int]) -> SweepReport:
    """Crossing counts of a quiver sum are the sums of the counts."""
    total = q1.plus(q2)
    rep = SweepReport(f"crossing counts add under quiver sum, {_dv_text(dimvec)}")
    n = sum(dimvec.values())
    for j in colour_sequences(dimvec):
        for w in all_perms(n):
            a, b, c = crossing_counts(w, j, q1), crossing_counts(w, j, q2), crossing_counts(w, j, total)
            rep.cases += 1
            if c != (a[0], a[1] + b[1], a[2] + b[2]) or a[0] != b[0]:
                rep.fail(f"w={w} j={','.join(j)}")
    return rep


def sweep_sl2_cells(n: int) -> SweepReport:
    """Degrees of ``T_w omega_lam`` and ``T_x omega_1...omega_k T_y T_z`` against the cell dimensions.

    ``deg T_r = -2`` and ``deg omega_t = 2(n - t)``; upper cells have dimension
    ``dim F + l(w) + l(lam)``, G-cells ``dim F + l(x) + l(y) + l(z)``.
    """
    rep = SweepReport(f"one-colour cell dimensions, n={n}")
    dF = n * (n - 1) // 2
    for k in range(n + 1):
        dG = k * (n - k)
        for lam in subsets(n, k):
            x = subspace_position(FlagModel.standard(("i",) * n), lam)
            deg_omega = sum(2 * (n - t) for t in lam)
            for w in all_perms(n):
                deg = -2 * w.length() + deg_omega
                dim = dF + w.length() + x.length()
                rep.cases += 1
                if deg != 2 * (dF + dG) + k * k - k - 2 * dim or \
                        deg != -2 * w.length() + 2 * n * k - k * (k + 1) - 2 * x.length():
                    rep.fail(f"up cell w={w} lam={sorted(lam)}")
        deg_omegas = sum(2 * (n - t) for t in range(1, k + 1))
        for x in left_coset_reps(n, k):
            for y in young_subgroup(n, k):
                for z in right_coset_reps(n, k):
                    deg = -2 * (x.length() + y.length() + z.length()) + deg_omegas
                    dim = dF + x.length() + y.length() + z.length()
                    rep.cases += 1
                    if deg != 2 * (dF + dG) + k * k - k - 2 * dim:
                        rep.fail(f"G-cell x={x} y={y} z={z}")
    return rep
