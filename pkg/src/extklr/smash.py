"""Crossed-product normal form for operators on EPol, with PBW extraction,
relation checks, the dg element and exact graded homology.

An operator is stored as ``f |-> sum_w A_w . w(f)`` where ``f`` is the vector
of polynomial coordinates of an element of ``EPol_n``, ``w(f)`` permutes the
variables of each coordinate, and ``A_w`` is a ``2^n x 2^n`` matrix of
rational functions indexed by subsets (bitmasks).  The twisted form
``Phi_w . W_w`` is recovered through the twist matrices ``M_w``
(``W_w(f) = M_w . w(f)``).  Distinct ``w`` are independent over the fraction
field, so this form is unique and equality is structural.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

from . import extrep as ex
from .extrep import ColouredExtElt, ExtElt, Gen, koszul_P
from .polyalg import (
    Perm,
    Poly,
    RatFunc,
    all_perms,
    iter_monomials,
    demazure,
    rank_at_random_point,
    sparse_rank,
    subsets,
)
from .quivercomb import Quiver, _dv_text, act_on_colours, colour_positions, colour_sequences, dimension_vectors

__all__ = [
    "CrossedOp",
    "OpContext",
    "NotInAlgebra",
    "PBWElt",
    "RelationCheck",
    "embed",
    "word_op",
    "poly_op",
    "compose",
    "twist_matrix",
    "T_w",
    "tau_w",
    "pbw_extract",
    "pbw_embed",
    "random_pbw_monomial",
    "verify_relation",
    "supercommutator",
    "dd_element",
    "verify_dg",
    "graded_homology",
    "epol_oracle_dims",
    "cyclotomic_dims",
    "omega_kn",
    "basis_check_ER",
    "op_degree",
    "omega_degree",
    "RelCase",
    "nil_hecke_cases",
    "extended_nil_hecke_cases",
    "omega1_presentation_cases",
    "doubly_extended_cases",
    "klr_cases",
    "floating_dot_cases",
    "degree_cases",
    "dimension_vectors",
]


class NotInAlgebra(ValueError):
    """PBW extraction met a non-polynomial coefficient."""


# ---------------------------------------------------------------------------
# sparse matrices over RatFunc: {row: {col: entry}}

Matrix = dict[int, dict[int, RatFunc]]


def _mask(lam: Iterable[int]) -> int:
    m = 0
    for i in lam:
        m |= 1 << (i - 1)
    return m


def _unmask(m: int) -> frozenset[int]:
    return frozenset(i + 1 for i in range(m.bit_length()) if m >> i & 1)


def _rf(x, n: int) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, Poly):
        return RatFunc._raw(x, {}, Poly.one(n))
    return RatFunc._raw(Poly.const(x, n), {}, Poly.one(n))


def _mat_add_into(acc: Matrix, m: Matrix, coeff=None) -> None:
    for r, row in m.items():
        arow = acc.setdefault(r, {})
        for c, v in row.items():
            if coeff is not None:
                v = v * coeff
            if c in arow:
                s = arow[c] + v
                if s:
                    arow[c] = s
                else:
                    del arow[c]
            elif v:
                arow[c] = v
        if not arow:
            del acc[r]


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    out: Matrix = {}
    for r, row in a.items():
        orow: dict[int, RatFunc] = {}
        for k, v in row.items():
            brow = b.get(k)
            if not brow:
                continue
            for c, u in brow.items():
                t = v * u
                if c in orow:
                    s = orow[c] + t
                    if s:
                        orow[c] = s
                    else:
                        del orow[c]
                elif t:
                    orow[c] = t
        if orow:
            out[r] = orow
    return out


def _mat_perm(m: Matrix, w: Perm) -> Matrix:
    if w.is_identity():
        return m
    return {r: {c: v.permute(w) for c, v in row.items()} for r, row in m.items()}


def _mat_scale(m: Matrix, s: RatFunc) -> Matrix:
    if not s:
        return {}
    return {r: {c: v * s for c, v in row.items()} for r, row in m.items()}


def _mat_identity(n: int, s=1) -> Matrix:
    one = _rf(s, n)
    return {m: {m: one} for m in range(1 << n)} if one else {}


def _mat_from_ext_rule(n: int, rule) -> Matrix:
    """Matrix whose column ``lam`` is ``rule(lam)`` given as ExtElt."""
    out: Matrix = {}
    for lam in subsets(n):
        img = rule(lam)
        for mu, p in img.comps.items():
            out.setdefault(_mask(mu), {})[_mask(lam)] = _rf(p, n)
    return out


@lru_cache(maxsize=None)
def _wedge_mat(i: int, n: int) -> Matrix:
    return _mat_from_ext_rule(n, lambda lam: ex.wedge(i, ExtElt.omega(lam, n)))


@lru_cache(maxsize=None)
def _contract_mat(i: int, n: int) -> Matrix:
    return _mat_from_ext_rule(n, lambda lam: ex.contract(i, ExtElt.omega(lam, n)))


@lru_cache(maxsize=None)
def _simple_twist(r: int, n: int, swap: bool) -> Matrix:
    """``M_{s_r}``: column ``lam`` is ``s_r(omega_lam)`` (coefficients unpermuted)."""
    rule = ex._s_omega_swap if swap else ex._s_omega_same
    out: Matrix = {}
    for lam in subsets(n):
        for mu, p in rule(r, lam, Poly.one(n)):
            out.setdefault(_mask(mu), {})[_mask(lam)] = _rf(p, n)
    return out


def _left_mult_mat(e: ExtElt) -> Matrix:
    n = e.n
    return _mat_from_ext_rule(n, lambda lam: e.wedge(ExtElt.omega(lam, n)))


def _mat_apply(m: Matrix, vec: Mapping[int, RatFunc]) -> dict[int, RatFunc]:
    out: dict[int, RatFunc] = {}
    for r, row in m.items():
        acc = None
        for c, v in row.items():
            x = vec.get(c)
            if x is None:
                continue
            t = v * x
            acc = t if acc is None else acc + t
        if acc:
            out[r] = acc
    return out


def _mat_text(m: Matrix) -> str:
    parts = []
    for r in sorted(m):
        for c in sorted(m[r]):
            parts.append(f"[{sorted(_unmask(r))},{sorted(_unmask(c))}]={m[r][c]}")
    return "; ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# the operator type

Key = tuple[Perm, tuple[str, ...] | None]


class CrossedOp:
    """``sum_w A_w . w(.)`` on ``EPol_n`` (``src=None``) or on blocks of ``EPol_n`` coloured by ``src``."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Key, Matrix] | None = None):
        self.n = n
        self.terms: dict[Key, Matrix] = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def zero(cls, n: int) -> "CrossedOp":
        return cls(n)

    @classmethod
    def identity(cls, n: int, blocks: Iterable[tuple[str, ...]] | None = None) -> "CrossedOp":
        e = Perm.identity(n)
        if blocks is None:
            return cls(n, {(e, None): _mat_identity(n)})
        return cls(n, {(e, tuple(b)): _mat_identity(n) for b in blocks})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "CrossedOp") -> "CrossedOp":
        if self.n != other.n:
            raise ValueError("strand count mismatch")
        terms = {k: {r: dict(row) for r, row in m.items()} for k, m in self.terms.items()}
        for k, m in other.terms.items():
            acc = terms.setdefault(k, {})
            _mat_add_into(acc, m)
        return CrossedOp(self.n, terms)

    def __neg__(self) -> "CrossedOp":
        return self.scale(-1)

    def __sub__(self, other: "CrossedOp") -> "CrossedOp":
        return self + (-other)

    def scale(self, s) -> "CrossedOp":
        """Left multiplication by a scalar or polynomial (a multiple of the identity)."""
        s = _rf(s, self.n)
        return CrossedOp(self.n, {k: _mat_scale(m, s) for k, m in self.terms.items()})

    def __matmul__(self, other: "CrossedOp") -> "CrossedOp":
        return compose(self, other)

    def __mul__(self, other):
        if isinstance(other, CrossedOp):
            return compose(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CrossedOp):
            return NotImplemented
        return self.n == other.n and (self - other).is_zero()

    def perms(self) -> set[Perm]:
        return {w for w, _ in self.terms}

    def restrict_source(self, src: tuple[str, ...] | None) -> "CrossedOp":
        return CrossedOp(self.n, {k: m for k, m in self.terms.items() if k[1] == src})

    def apply(self, e):
        """Evaluate on an ``ExtElt``/``ColouredExtElt``; coefficients must come out polynomial."""
        n = self.n
        if isinstance(e, ExtElt):
            src_blocks = {None: e}
        else:
            src_blocks = dict(e.blocks)
        out: dict = {}
        for (w, src), m in self.terms.items():
            blk = src_blocks.get(src)
            if blk is None:
                continue
            vec = {_mask(lam): _rf(p.permute(w), n) for lam, p in blk.comps.items()}
            res = _mat_apply(m, vec)
            tgt = None if src is None else act_on_colours(w, src)
            acc = out.setdefault(tgt, {})
            for r, v in res.items():
                s = acc[r] + v if r in acc else v
                if s:
                    acc[r] = s
                else:
                    acc.pop(r, None)

        def to_ext(d):
            comps = {}
            for r, v in d.items():
                if not v.is_poly():
                    raise NotInAlgebra("operator does not preserve polynomials")
                comps[_unmask(r)] = v.to_poly()
            return ExtElt(n, comps)

        if isinstance(e, ExtElt):
            return to_ext(out.get(None, {}))
        return ColouredExtElt(n, {k: to_ext(v) for k, v in out.items()})

    def twisted_summands(self) -> dict[Key, Matrix]:
        """The ``Phi_w`` of the form ``sum Phi_w . W_w`` (``Phi_w = A_w M_w^{-1}``)."""
        out = {}
        for (w, src), m in self.terms.items():
            out[(w, src)] = _mat_mul(m, twist_inverse(w, src, self.n))
        return out

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        lines = []
        for (w, src) in sorted(self.terms, key=lambda k: (k[0].length(), k[0].images, k[1] or ())):
            tag = w.to_text() + ("" if src is None else " @ " + ",".join(src))
            lines.append(f"{tag}: {_mat_text(self.terms[(w, src)])}")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"CrossedOp(n={self.n}, {len(self.terms)} summands)"


def compose(a: CrossedOp, b: CrossedOp) -> CrossedOp:
    """``a o b``; mismatched colour blocks give zero."""
    if a.n != b.n:
        raise ValueError("strand count mismatch")
    out: dict[Key, Matrix] = {}
    by_target: dict = {}
    for (v, sb), mb in b.terms.items():
        tgt = None if sb is None else act_on_colours(v, sb)
        by_target.setdefault(tgt, []).append((v, sb, mb))
    for (w, sa), ma in a.terms.items():
        for v, sb, mb in by_target.get(sa, ()):
            prod = _mat_mul(ma, _mat_perm(mb, w))
            if prod:
                acc = out.setdefault((w * v, sb), {})
                _mat_add_into(acc, prod)
    return CrossedOp(a.n, out)


# ---------------------------------------------------------------------------
# twist matrices


@lru_cache(maxsize=None)
def twist_matrix(w: Perm, src: tuple[str, ...] | None, n: int) -> Matrix:
    """``M_w`` with ``W_w(f 1_src) = M_w . w(f) 1_{w(src)}``; built by the cocycle rule."""
    m = _mat_identity(n)
    cols = src
    v = Perm.identity(n)
    for r in reversed(w.reduced_word()):
        swap = cols is not None and cols[r - 1] != cols[r]
        s = Perm.simple(r, n)
        # M_{s v} = M_{s, v(src)} . s(M_v)
        m = _mat_mul(_simple_twist(r, n, swap), _mat_perm(m, s))
        v = s * v
        if cols is not None:
            cols = act_on_colours(s, cols)
    return m


@lru_cache(maxsize=None)
def twist_inverse(w: Perm, src: tuple[str, ...] | None, n: int) -> Matrix:
    """``M_w^{-1} = w(M_{w^{-1}, w(src)})``."""
    tgt = None if src is None else act_on_colours(w, src)
    return _mat_perm(twist_matrix(w.inverse(), tgt, n), w)


# ---------------------------------------------------------------------------
# embedding generators


@dataclass(frozen=True)
class OpContext:
    """Strand count plus optional colouring data for embedding words."""

    n: int
    quiver: Quiver | None = None
    blocks: tuple[tuple[str, ...], ...] | None = None

    @classmethod
    def plain(cls, n: int) -> "OpContext":
        return cls(n)

    @classmethod
    def coloured(cls, quiver: Quiver, dimvec: Mapping[str, int]) -> "OpContext":
        blocks = tuple(colour_sequences(dimvec))
        return cls(len(blocks[0]), quiver, blocks)

    def block_list(self, cols) -> list:
        if cols is not None:
            return [tuple(cols)]
        return [None] if self.blocks is None else list(self.blocks)


def poly_op(p, ctx: OpContext, cols=None) -> CrossedOp:
    """Multiplication by a polynomial on one block, on all blocks, or on ``EPol_n``."""
    n = ctx.n
    s = _rf(p, n)
    e = Perm.identity(n)
    return CrossedOp(n, {(e, b): _mat_identity(n, s) for b in ctx.block_list(cols)})


def _tau_block(r: int, b, ctx: OpContext) -> dict[Key, Matrix]:
    n = ctx.n
    c = RatFunc.inv_linear(r, r + 1, n)
    s = Perm.simple(r, n)
    if b is None or b[r - 1] == b[r]:
        return {
            (Perm.identity(n), b): _mat_identity(n, c),
            (s, b): _mat_scale(_simple_twist(r, n, False), -c),
        }
    coeff = ex.tau_coefficient(ctx.quiver, b, r, n)
    return {(s, b): _mat_scale(_simple_twist(r, n, True), _rf(coeff, n))}


def embed(tok: Gen, ctx: OpContext) -> CrossedOp:
    """The operator of one generator token."""
    n = ctx.n
    e = Perm.identity(n)
    k = tok.kind
    if k in ("T", "tau") and not 1 <= tok.i < n:
        raise ValueError(f"{tok.text()} needs 1 <= r < {n}")
    if k == "X":
        if not 1 <= tok.i <= n:
            raise ValueError(f"X_{tok.i} does not exist for n={n}")
        return poly_op(Poly.var(tok.i, n), ctx, tok.cols)
    if k in ("T", "tau"):
        if k == "T" and ctx.blocks is not None:
            raise ValueError("T_r is an uncoloured generator; use tau_r")
        terms: dict[Key, Matrix] = {}
        for b in ctx.block_list(tok.cols):
            terms.update(_tau_block(tok.i, b, ctx))
        return CrossedOp(n, terms)
    if k in ("w+", "w-"):
        if not 1 <= tok.i <= n:
            raise ValueError(f"omega_{tok.i} does not exist for n={n}")
        m = _wedge_mat(tok.i, n) if k == "w+" else _contract_mat(tok.i, n)
        return CrossedOp(n, {(e, b): m for b in ctx.block_list(tok.cols)})
    if k == "1":
        return CrossedOp.identity(n, [tok.cols])
    if k == "Omega":
        return CrossedOp(n, {(e, b): _wedge_mat(1, n) for b in ctx.block_list(tok.cols)})
    if k == "fdot":
        if ctx.quiver is None:
            raise ValueError("floating dots need a quiver")
        terms = {}
        for b in ctx.block_list(tok.cols):
            E = ex.floating_dot_element(tok.i, tok.colour, tok.twist, b, ctx.quiver)
            if E:
                terms[(e, b)] = _left_mult_mat(E)
        return CrossedOp(n, terms)
    if k == "dN":
        return dd_element(n, tok.N)
    raise ValueError(f"unknown token kind {k!r}")


def word_op(word: Sequence[Gen], ctx: OpContext) -> CrossedOp:
    """The product of the tokens, leftmost outermost; mismatched colours give zero."""
    if not word:
        return CrossedOp.identity(ctx.n, ctx.blocks)
    op = embed(word[-1], ctx)
    for tok in reversed(word[:-1]):
        op = compose(embed(tok, ctx), op)
    return op


def _to_op(x, ctx: OpContext) -> CrossedOp:
    """Accept a CrossedOp, a word, or a list of ``(coefficient, word)`` pairs."""
    if isinstance(x, CrossedOp):
        return x
    if isinstance(x, (int, Poly, RatFunc)) or type(x).__name__ == "mpq":
        return poly_op(x, ctx)
    x = list(x)
    if x and isinstance(x[0], Gen):
        return word_op(x, ctx)
    total = CrossedOp.zero(ctx.n)
    for coeff, word in x:
        total = total + compose(poly_op(coeff, ctx), word_op(word, ctx))
    return total


@lru_cache(maxsize=None)
def T_w(w: Perm) -> CrossedOp:
    """``T_w = T_{r_1} ... T_{r_l}`` along the canonical reduced word."""
    n = w.n
    ctx = OpContext.plain(n)
    return word_op([ex.T(r) for r in w.reduced_word()], ctx)


def tau_w(w: Perm, ctx: OpContext, cols) -> CrossedOp:
    """``tau_w 1_cols`` along the canonical reduced word."""
    word = [ex.tau(r) for r in w.reduced_word()]
    if not word:
        return CrossedOp.identity(ctx.n, [tuple(cols)])
    word[-1] = ex.tau(word[-1].i, cols)
    return word_op(word, ctx)


# ---------------------------------------------------------------------------
# degrees


def omega_degree(t: int, cols: Sequence[str] | None, n: int) -> int:
    """Internal degree of ``omega_t`` (in block ``cols``): ``2(n_c - s)`` with ``s`` its rank in colour ``c``."""
    if cols is None:
        return 2 * (n - t)
    c = cols[t - 1]
    pos = colour_positions(cols, c)
    return 2 * (len(pos) - pos.index(t) - 1)


def _subset_degree(mask: int, cols, n: int) -> int:
    return sum(omega_degree(t, cols, n) for t in _unmask(mask))


def op_degree(op: CrossedOp) -> int | None:
    """The internal degree if ``op`` is homogeneous (``None`` otherwise, ``0`` for zero)."""
    n = op.n
    degs = set()
    for (w, src), m in op.terms.items():
        tgt = None if src is None else act_on_colours(w, src)
        for r, row in m.items():
            for c, v in row.items():
                if not (v.num.is_homogeneous() and v.den.is_homogeneous()):
                    return None
                d = 2 * v.degree() + _subset_degree(r, tgt, n) - _subset_degree(c, src, n)
                degs.add(d)
    if len(degs) > 1:
        return None
    return degs.pop() if degs else 0


# ---------------------------------------------------------------------------
# PBW bases


@dataclass
class PBWElt:
    """Coefficients on ``T_w X^a omega^+_lam omega^-_mu``; keys ``(w, a, lam, mu)``."""

    n: int
    coeffs: dict[tuple[Perm, tuple[int, ...], frozenset, frozenset], mpq] = field(default_factory=dict)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, PBWElt):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def to_text(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for (w, a, lam, mu), c in sorted(self.coeffs.items(), key=lambda kv: (-kv[0][0].length(), kv[0][0].images, kv[0][1], sorted(kv[0][2]), sorted(kv[0][3]))):
            mono = Poly.monomial(a).to_text()
            parts.append(f"{c}*T{w.to_text()}*{mono}*w+{sorted(lam)}*w-{sorted(mu)}")
        return " + ".join(parts)


def _omega_pm_mat(lam: frozenset, mu: frozenset, n: int) -> Matrix:
    """Matrix of ``omega^+_lam omega^-_mu`` (``omega^+_{i_k}...omega^+_{i_1} omega^-_{j_1}...omega^-_{j_m}``)."""
    m = _mat_identity(n)
    for j in sorted(mu, reverse=True):
        m = _mat_mul(_contract_mat(j, n), m)
    for i in sorted(lam):
        m = _mat_mul(_wedge_mat(i, n), m)
    return m


@lru_cache(maxsize=None)
def _omega_pm_cached(lam: frozenset, mu: frozenset, n: int) -> Matrix:
    return _omega_pm_mat(lam, mu, n)


def _decompose_clifford(F: Matrix, n: int) -> dict[tuple[frozenset, frozenset], Poly]:
    """Write a matrix over ``Pol_n`` as ``sum c_{lam,mu} omega^+_lam omega^-_mu``.

    The entry of ``omega^+_lam omega^-_mu`` at (lam, mu) is 1 and it vanishes
    on columns not containing ``mu``, so elimination by increasing ``|mu|`` works.
    """
    R: Matrix = {r: dict(row) for r, row in F.items()}
    out = {}
    for mu in sorted(subsets(n), key=lambda s: (len(s), sorted(s))):
        cm = _mask(mu)
        for lam in subsets(n):
            row = R.get(_mask(lam))
            if not row or cm not in row:
                continue
            c = row[cm]
            out[(lam, mu)] = c
            _mat_add_into(R, _omega_pm_cached(lam, mu, n), -c)
    if R:
        raise AssertionError("clifford decomposition left a remainder")
    return out


def _leading_scalar(w: Perm) -> RatFunc:
    """``L_w`` with ``A_w(T_w) = L_w M_w``."""
    n = w.n
    top = T_w(w).terms[(w, None)]
    prod = _mat_mul(top, twist_inverse(w, None, n))
    vals = {v for row in prod.values() for v in row.values()}
    if len(vals) != 1 or any(len(row) != 1 or r not in row for r, row in prod.items()) or len(prod) != 1 << n:
        raise AssertionError("leading factor of T_w is not scalar")
    return vals.pop()


_leading_scalar = lru_cache(maxsize=None)(_leading_scalar)


def _pol_clifford_op(F: Mapping[tuple[frozenset, frozenset], Poly], n: int) -> CrossedOp:
    acc: Matrix = {}
    for (lam, mu), c in F.items():
        _mat_add_into(acc, _omega_pm_cached(lam, mu, n), _rf(c, n))
    return CrossedOp(n, {(Perm.identity(n), None): acc})


def pbw_extract(op: CrossedOp, algebra: str = "EENH") -> PBWElt:
    """Coefficients of ``op`` on the PBW basis of ``NH``, ``ENH`` or ``EENH`` (doubly extended)."""
    if algebra not in ("NH", "ENH", "EENH"):
        raise ValueError(f"unknown algebra {algebra!r}")
    n = op.n
    if any(src is not None for _, src in op.terms):
        raise ValueError("PBW extraction is for uncoloured operators")
    rest = op
    out: dict = {}
    guard = 0
    while rest.terms:
        guard += 1
        if guard > 10 * math.factorial(n) + 10:
            raise AssertionError("PBW extraction does not terminate")
        w = max(rest.perms(), key=lambda p: (p.length(), p.images))
        A = rest.terms[(w, None)]
        L = _leading_scalar(w)
        G = _mat_scale(_mat_mul(twist_inverse(w, None, n), A), L.inverse())
        F = _mat_perm(G, w.inverse())
        polyF: Matrix = {}
        for r, row in F.items():
            for c, v in row.items():
                if not v.is_poly():
                    raise NotInAlgebra(f"coefficient of T{w.to_text()} is not polynomial: {v}")
                polyF.setdefault(r, {})[c] = v
        parts = _decompose_clifford(polyF, n)
        parts = {k: v.to_poly() for k, v in parts.items()}
        for (lam, mu), c in parts.items():
            if algebra != "EENH" and mu:
                raise NotInAlgebra("annihilation operators are not in ENH")
            if algebra == "NH" and lam:
                raise NotInAlgebra("creation operators are not in NH")
            for a, coef in c.terms.items():
                out[(w, a, lam, mu)] = coef
        rest = rest - compose(T_w(w), _pol_clifford_op(parts, n))
    return PBWElt(n, out)


def pbw_embed(elt: PBWElt) -> CrossedOp:
    n = elt.n
    total = CrossedOp.zero(n)
    grouped: dict[Perm, dict] = {}
    for (w, a, lam, mu), c in elt.coeffs.items():
        g = grouped.setdefault(w, {})
        g[(lam, mu)] = g.get((lam, mu), Poly.zero(n)) + Poly.monomial(a, c)
    for w, parts in grouped.items():
        total = total + compose(T_w(w), _pol_clifford_op(parts, n))
    return total


def random_pbw_monomial(n: int, algebra: str, rng: random.Random, max_exp: int = 2) -> PBWElt:
    w = rng.choice(all_perms(n))
    a = tuple(rng.randint(0, max_exp) for _ in range(n))
    lam = frozenset() if algebra == "NH" else frozenset(i for i in range(1, n + 1) if rng.random() < 0.5)
    mu = frozenset(i for i in range(1, n + 1) if rng.random() < 0.5) if algebra == "EENH" else frozenset()
    return PBWElt(n, {(w, a, lam, mu): mpq(1)})


# ---------------------------------------------------------------------------
# relations


@dataclass
class RelationCheck:
    passed: bool
    witness: str = ""

    def __bool__(self) -> bool:
        return self.passed


def verify_relation(lhs, rhs, ctx: OpContext, source=None) -> RelationCheck:
    """Exact equality of two operators (optionally restricted to one source block)."""
    a, b = _to_op(lhs, ctx), _to_op(rhs, ctx)
    if source is not None:
        a, b = a.restrict_source(tuple(source)), b.restrict_source(tuple(source))
    diff = a - b
    if diff.is_zero():
        return RelationCheck(True)
    key = min(diff.terms, key=lambda k: (k[0].length(), k[0].images, k[1] or ()))
    tag = key[0].to_text() + ("" if key[1] is None else " @ " + ",".join(key[1]))
    return RelationCheck(False, f"summand {tag}: {_mat_text(diff.terms[key])}")


def _parity(op: CrossedOp) -> int | None:
    """Exterior parity (0 even, 1 odd), ``None`` if mixed."""
    par = set()
    for _, m in op.terms.items():
        for r, row in m.items():
            for c in row:
                par.add((bin(r).count("1") - bin(c).count("1")) % 2)
    if len(par) > 1:
        return None
    return par.pop() if par else 0


def supercommutator(a: CrossedOp, b: CrossedOp) -> CrossedOp:
    pa, pb = _parity(a), _parity(b)
    if pa is None or pb is None:
        raise ValueError("supercommutator needs homogeneous parity")
    ab, ba = compose(a, b), compose(b, a)
    return ab + ba if pa and pb else ab - ba


# ---------------------------------------------------------------------------
# the dg structure


def dd_element(n: int, N: int) -> CrossedOp:
    """``dd_N = sum_i P_i omega^-_i``."""
    acc: Matrix = {}
    for i in range(1, n + 1):
        _mat_add_into(acc, _contract_mat(i, n), _rf(koszul_P(i, N, n), n))
    return CrossedOp(n, {(Perm.identity(n), None): acc})


def verify_dg(n: int, N: int) -> dict[str, RelationCheck]:
    """The supercommutator of ``dd_N`` with the generators, and ``dd_N^2 = 0``."""
    ctx = OpContext.plain(n)
    d = dd_element(n, N)
    res = {}
    for i in range(1, n + 1):
        res[f"[dd,X{i}]=0"] = verify_relation(supercommutator(d, embed(ex.X(i), ctx)), CrossedOp.zero(n), ctx)
    for r in range(1, n):
        res[f"[dd,T{r}]=0"] = verify_relation(supercommutator(d, embed(ex.T(r), ctx)), CrossedOp.zero(n), ctx)
    res["[dd,w1+]=X1^N"] = verify_relation(supercommutator(d, embed(ex.wp(1), ctx)),
                                           poly_op(Poly.var(1, n) ** N, ctx), ctx)
    res["dd^2=0"] = verify_relation(compose(d, d), CrossedOp.zero(n), ctx)
    return res


# ---------------------------------------------------------------------------
# graded homology


def _basis_epol(n: int, deg: int, k: int) -> list[tuple[tuple[int, ...], frozenset]]:
    """Monomials ``X^a omega_lam`` with ``|lam| = k`` of internal degree ``deg``."""
    out = []
    for lam in subsets(n, k):
        rest = deg - sum(2 * (n - i) for i in lam)
        if rest < 0 or rest % 2:
            continue
        for a in iter_monomials(n, rest // 2):
            out.append((a, lam))
    return out


def _d_epol_column(a, lam, n: int, N: int) -> dict:
    e = ExtElt.omega(lam, n, Poly.monomial(a))
    img = ex.koszul_diff(N, e)
    col = {}
    for mu, p in img.comps.items():
        for b, c in p.terms.items():
            col[(b, mu)] = c
    return col


def _enh_basis(n: int, deg: int, k: int):
    """``T_w X^a omega_lam`` with ``|lam| = k`` of internal degree ``deg``."""
    out = []
    for w in all_perms(n):
        for a, lam in _basis_epol(n, deg + 2 * w.length(), k):
            out.append((w, a, lam))
    return out


def _homology_table(basis_fn, column_fn, d_deg: int, n: int, cutoff: int, start: int, stop_rule):
    """Shared engine: ``dims[(deg, k)] = (dim ker, dim im, dim H)`` for ``deg <= cutoff``."""
    table = {}
    for deg in range(start, cutoff + 1, 2):
        for k in range(0, n + 1):
            src = basis_fn(deg, k)
            if not src and not basis_fn(deg + d_deg, k + 1):
                continue
            rank_out = 0
            if k > 0 and src:
                rank_out = sparse_rank(column_fn(b) for b in src)
            above = basis_fn(deg - d_deg, k + 1)
            rank_in = sparse_rank(column_fn(b) for b in above) if above else 0
            ker = len(src) - rank_out
            table[(deg, k)] = (ker, rank_in, ker - rank_in)
        if stop_rule(deg, table):
            break
    return table


def graded_homology(space: str, n: int, N: int, cutoff: int | None = None) -> dict:
    """Homology of ``(ENH_n, d_N)`` or ``(EPol_n, d_N)`` per (internal degree, exterior degree).

    Returns ``{"table": {(deg, k): (ker, im, H)}, "H0_total": int, "higher_zero": bool,
    "stabilized": bool}``.  ``H_0`` is a quotient of ``NH_n`` (resp. ``Pol_n``) by a left
    submodule, hence generated in degrees ``<= 0`` over ``Pol_n``; once a positive degree
    has ``H_0 = 0`` every higher one does too.  This is the stopping rule when no cutoff
    is given.
    """
    if space not in ("ENH", "EPol"):
        raise ValueError(f"unknown space {space!r}")
    if N < 0 or n < 1:
        raise ValueError("need n >= 1 and N >= 0")
    d_deg = 2 * (N - n + 1)

    if space == "EPol":
        def basis_fn(deg, k):
            return _basis_epol(n, deg, k)

        def column_fn(b):
            return _d_epol_column(b[0], b[1], n, N)
        start = 0
    else:
        def basis_fn(deg, k):
            return _enh_basis(n, deg, k)

        def column_fn(b):
            w, a, lam = b
            return {(w,) + key: v for key, v in _d_epol_column(a, lam, n, N).items()}
        start = -2 * (n * (n - 1) // 2)

    hard_cap = cutoff if cutoff is not None else 2 * (n * N + n * n) + 4

    def stop_rule(deg, table):
        if cutoff is not None:
            return False
        return deg > 0 and table.get((deg, 0), (0, 0, 0))[2] == 0

    table = _homology_table(basis_fn, column_fn, d_deg, n, hard_cap, start, stop_rule)
    h0 = sum(v[2] for (deg, k), v in table.items() if k == 0)
    higher = all(v[2] == 0 for (deg, k), v in table.items() if k > 0)
    stabilized = any(deg > 0 and v[2] == 0 for (deg, k), v in table.items() if k == 0)
    return {"table": table, "H0_total": h0, "higher_zero": higher, "stabilized": stabilized}


def epol_oracle_dims(n: int, N: int) -> dict[int, int]:
    """``dim (Pol_n / (P_1..P_n))`` per internal degree, by direct linear algebra on ideal spans."""
    ps = [koszul_P(i, N, n) for i in range(1, n + 1)]
    out = {}
    d = 0
    while True:
        mons = list(iter_monomials(n, d))
        rows = []
        for p in ps:
            pd = p.degree()
            if pd < 0 or pd > d:
                continue
            for m in iter_monomials(n, d - pd):
                rows.append(dict((p * Poly.monomial(m)).terms))
        dim = len(mons) - (sparse_rank(rows) if rows else 0)
        out[2 * d] = dim
        if dim == 0:
            break
        d += 1
    return out


# --- cyclotomic quotient via nil-Hecke rewriting


def _nh_normal_mul(x: dict[Perm, Poly], y: dict[Perm, Poly]) -> dict[Perm, Poly]:
    """Product in ``NH_n`` of elements in the normal form ``sum P_w T_w``."""
    out: dict[Perm, Poly] = {}

    def add(w, p):
        if not p:
            return
        s = out[w] + p if w in out else p
        if s:
            out[w] = s
        else:
            out.pop(w, None)

    for u, pu in x.items():
        for v, pv in y.items():
            # T_u . pv . T_v: push pv left through T_u letter by letter
            cur = {Perm.identity(pv.n): pv}  # sum q_z T_z, meaning T_{suffix} . q . T_z
            for r in reversed(u.reduced_word()):
                nxt: dict[Perm, Poly] = {}
                for z, q in cur.items():
                    s = Perm.simple(r, q.n)
                    # T_r q T_z = s_r(q) T_r T_z + d_r(q) T_z
                    a = q.permute(s)
                    if a and (s * z).length() > z.length():
                        nxt[s * z] = nxt.get(s * z, Poly.zero(q.n)) + a
                    b = demazure(r, q)
                    if b:
                        nxt[z] = nxt.get(z, Poly.zero(q.n)) + b
                cur = {k: v for k, v in nxt.items() if v}
            for z, q in cur.items():
                if (z * v).length() == z.length() + v.length():
                    add(z * v, pu * q)
    return out


def cyclotomic_dims(n: int, N: int, cutoff: int | None = None) -> dict[int, int]:
    """Graded dimensions of ``NH_n / (X_1^N)`` (two-sided ideal), degree by degree.

    Elements are written ``sum P_w T_w``; in degree ``D`` the ideal is spanned by
    ``X^a T_u X_1^N X^c T_v`` of that degree, a finite set.  The quotient is a left
    ``Pol_n``-module generated by the images of the ``T_w`` (degrees ``<= 0``), so once a
    positive degree vanishes every higher degree does too.
    """
    if N < 0 or n < 1:
        raise ValueError("need n >= 1 and N >= 0")
    perms = all_perms(n)
    lmax = n * (n - 1) // 2
    top = cutoff if cutoff is not None else 2 * (n * N) + 2
    out = {}
    xN = Poly.var(1, n) ** N
    for D in range(-2 * lmax, top + 1, 2):
        # basis of degree D: X^a T_w with 2|a| - 2 l(w) = D
        index = {}
        for w in perms:
            d = D // 2 + w.length()
            if d < 0:
                continue
            for a in iter_monomials(n, d):
                index[(w, a)] = len(index)
        if not index:
            out[D] = 0
            continue
        rows = []
        for u in perms:
            for v in perms:
                # degree: 2|a| - 2l(u) + 2N + 2|c| - 2l(v) = D
                budget = D // 2 + u.length() + v.length() - N
                if budget < 0:
                    continue
                for s in range(budget + 1):
                    for c in iter_monomials(n, s):
                        mid = _nh_normal_mul({u: Poly.one(n)}, {v: xN * Poly.monomial(c)})
                        for a in iter_monomials(n, budget - s):
                            row = {}
                            for z, q in mid.items():
                                for e, coef in (Poly.monomial(a) * q).terms.items():
                                    key = (z, e)
                                    row[index[key]] = row.get(index[key], 0) + coef
                            row = {k: v2 for k, v2 in row.items() if v2}
                            if row:
                                rows.append(row)
        dim = len(index) - (sparse_rank(rows) if rows else 0)
        out[D] = dim
        if cutoff is None and D > 0 and dim == 0:
            break
    return out


# ---------------------------------------------------------------------------
# the candidate diagram basis


def omega_kn(k: int, cols, ctx: OpContext) -> CrossedOp:
    """``Omega_{k,n} = Omega tau_1 Omega tau_2 tau_1 Omega ... tau_{k-1}...tau_1 Omega`` on block ``cols``.

    The word is ``Omega (tau_1 Omega) (tau_2 tau_1 Omega) ... (tau_{k-1}...tau_1 Omega)``;
    ``Omega_{0,n}`` is the idempotent.
    """
    word: list[Gen] = []
    for m in range(1, k + 1):
        word += [ex.tau(r) for r in range(m - 1, 0, -1)] + [ex.Omega()]
    if not word:
        return CrossedOp.identity(ctx.n, [tuple(cols)])
    last = word[-1]
    word[-1] = Gen(last.kind, last.i, tuple(cols))
    return word_op(word, ctx)


def _coset_triples(n: int, k: int):
    """``(x, y, z)`` with ``x`` minimal in ``S_n/(S_k x S_{n-k})``, ``y`` in ``S_k x S_{n-k}``,
    ``z`` minimal in ``(S_k x S_{n-k})\\S_n``."""
    from .quivercomb import left_coset_reps, right_coset_reps, young_subgroup
    return [(x, y, z) for x in left_coset_reps(n, k) for y in young_subgroup(n, k) for z in right_coset_reps(n, k)]


def basis_check_ER(quiver: Quiver, dimvec: Mapping[str, int], k: int, seed: int = 0) -> dict:
    """Linear independence over the fraction field of ``tau_x Omega_{k,n} tau_y tau_z 1_j``.

    Returns ``{"passed", "count", "rank", "per_sequence", "dependent"}``.
    """
    ctx = OpContext.coloured(quiver, dimvec)
    n = ctx.n
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    triples = _coset_triples(n, k)
    cands = []
    for j in ctx.blocks:
        for x, y, z in triples:
            yz = y * z
            mid_cols = act_on_colours(yz, j)
            # Omega_{k,n} contains crossings and moves the colours by w_{0,k}
            top_cols = act_on_colours(Perm.longest(k, n) * yz, j)
            op = compose(tau_w(x, ctx, top_cols),
                         compose(omega_kn(k, mid_cols, ctx),
                                 compose(tau_w(y, ctx, act_on_colours(z, j)), tau_w(z, ctx, j))))
            cands.append(((x, y, z, j), op))
    # coefficient vectors over the fraction field: entries of (w, src, row, col)
    keys: dict = {}
    vectors = []
    for _, op in cands:
        vec = {}
        for (w, src), m in op.terms.items():
            for r, row in m.items():
                for c, v in row.items():
                    key = (w.images, src, r, c)
                    if key not in keys:
                        keys[key] = len(keys)
                    vec[keys[key]] = v
        vectors.append(vec)
    # operators with different source blocks are independent; group by source
    by_src: dict = {}
    for idx, ((x, y, z, j), _) in enumerate(cands):
        by_src.setdefault(j, []).append(idx)
    rank = 0
    dependent = None
    for j, idxs in by_src.items():
        rows = [vectors[i] for i in idxs]
        r = _ratfunc_rank(rows, n, seed)
        rank += r
        if r < len(idxs) and dependent is None:
            dependent = [cands[i][0] for i in idxs]
    count = len(cands)
    return {
        "passed": rank == count,
        "count": count,
        "rank": rank,
        "per_sequence": len(triples),
        "dependent": dependent,
    }


def _ratfunc_rank(rows: list[dict[int, RatFunc]], n: int, seed: int) -> int:
    """Rank over the fraction field: evaluate at random rational points (full rank certifies)."""
    cols = sorted({c for r in rows for c in r})
    entries = [[r.get(c, 0) for c in cols] for r in rows]
    return rank_at_random_point(entries, n, seed=seed)


# ---------------------------------------------------------------------------
# relation suites


@dataclass
class RelCase:
    """One relation instance: ``lhs == rhs`` on the block ``source`` (or on all of ``EPol_n``)."""

    id: str
    cite: str
    lhs: object
    rhs: object
    ctx: OpContext
    source: tuple[str, ...] | None = None

    def check(self) -> RelationCheck:
        return verify_relation(self.lhs, self.rhs, self.ctx, self.source)


def _on(word: Sequence[Gen], cols) -> list[Gen]:
    """Pin the bottom colour sequence of a word on its rightmost token."""
    word = list(word)
    last = word[-1]
    word[-1] = Gen(last.kind, last.i, tuple(cols), last.colour, last.twist, last.N)
    return word


def _zero_op(ctx):
    return CrossedOp.zero(ctx.n)


def nil_hecke_cases(n: int) -> list[RelCase]:
    """The seven nil-Hecke relations on ``EPol_n``."""
    ctx = OpContext.plain(n)
    X, T = ex.X, ex.T
    cases = []
    cite = "nil-Hecke relations"
    for r in range(1, n):
        for t in range(1, n):
            if abs(r - t) > 1 and r < t:
                cases.append(RelCase(f"NH{n}.1.T{r}T{t}", cite + " (far commutation)", [T(r), T(t)], [T(t), T(r)], ctx))
    for r in range(1, n - 1):
        cases.append(RelCase(f"NH{n}.2.braid{r}", cite + " (braid)", [T(r), T(r + 1), T(r)], [T(r + 1), T(r), T(r + 1)], ctx))
    for r in range(1, n):
        cases.append(RelCase(f"NH{n}.3.T{r}^2", cite + " (nil square)", [T(r), T(r)], _zero_op(ctx), ctx))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            cases.append(RelCase(f"NH{n}.4.X{i}X{j}", cite + " (commuting dots)", [X(i), X(j)], [X(j), X(i)], ctx))
    one = CrossedOp.identity(n)
    for r in range(1, n):
        cases.append(RelCase(f"NH{n}.5.T{r}X{r}", cite + " (T_r X_r = X_{r+1} T_r + 1)",
                             [T(r), X(r)], word_op([X(r + 1), T(r)], ctx) + one, ctx))
        cases.append(RelCase(f"NH{n}.6.X{r}T{r}", cite + " (X_r T_r = T_r X_{r+1} + 1)",
                             [X(r), T(r)], word_op([T(r), X(r + 1)], ctx) + one, ctx))
        for i in range(1, n + 1):
            if i not in (r, r + 1):
                cases.append(RelCase(f"NH{n}.7.T{r}X{i}", cite + " (distant dot commutes)", [T(r), X(i)], [X(i), T(r)], ctx))
    return cases


def extended_nil_hecke_cases(n: int) -> list[RelCase]:
    """Presentation relations of ``ENH_n`` with all ``omega_i`` and the identity expressing ``omega_{i+1}``."""
    ctx = OpContext.plain(n)
    X, T, w = ex.X, ex.T, ex.wp
    cite = "ENH presentation"
    cases = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            cases.append(RelCase(f"ENH{n}.8.w{i}w{j}", cite + " (omegas anticommute)",
                                 [w(i), w(j)], word_op([w(j), w(i)], ctx).scale(-1), ctx))
            cases.append(RelCase(f"ENH{n}.9.X{i}w{j}", cite + " (dots commute with omegas)", [X(i), w(j)], [w(j), X(i)], ctx))
    for r in range(1, n):
        for i in range(1, n + 1):
            if i != r:
                cases.append(RelCase(f"ENH{n}.10.T{r}w{i}", cite + " (T_r commutes with omega_i, i != r)",
                                     [T(r), w(i)], [w(i), T(r)], ctx))
        inv = embed(w(r), ctx) + word_op([X(r), w(r + 1)], ctx)
        t = embed(T(r), ctx)
        cases.append(RelCase(f"ENH{n}.11.T{r}", cite + " ([T_r, omega_r + X_r omega_{r+1}] = 0)",
                             compose(t, inv) - compose(inv, t), _zero_op(ctx), ctx))
    for i in range(1, n + 1):
        cases.append(RelCase(f"ENH{n}.12.w{i}^2", cite + " (omega_i^2 = 0)", [w(i), w(i)], _zero_op(ctx), ctx))
    for i in range(1, n):
        rhs = word_op([T(i), w(i), T(i), X(i + 1)], ctx) - word_op([X(i), T(i), w(i), T(i)], ctx)
        cases.append(RelCase(f"ENH{n}.omega{i + 1}", "omega_{i+1} = T_i w_i T_i X_{i+1} - X_i T_i w_i T_i",
                             [w(i + 1)], rhs, ctx))
    return cases


def omega1_presentation_cases(n: int) -> list[RelCase]:
    """The presentation of ``ENH_n`` using only ``omega_1``."""
    ctx = OpContext.plain(n)
    X, T, w = ex.X, ex.T, ex.wp
    cite = "ENH presentation by omega_1"
    cases = [RelCase(f"ENH1_{n}.8", cite + " (omega_1^2 = 0)", [w(1), w(1)], _zero_op(ctx), ctx)]
    for i in range(1, n + 1):
        cases.append(RelCase(f"ENH1_{n}.9.X{i}", cite + " (X_i omega_1 = omega_1 X_i)", [X(i), w(1)], [w(1), X(i)], ctx))
    for r in range(2, n):
        cases.append(RelCase(f"ENH1_{n}.10.T{r}", cite + " (T_r omega_1 = omega_1 T_r, r != 1)", [T(r), w(1)], [w(1), T(r)], ctx))
    if n >= 2:
        lhs = word_op([T(1), w(1), T(1), w(1)], ctx) + word_op([w(1), T(1), w(1), T(1)], ctx)
        cases.append(RelCase(f"ENH1_{n}.11", cite + " (T_1 w_1 T_1 w_1 + w_1 T_1 w_1 T_1 = 0)", lhs, _zero_op(ctx), ctx))
    return cases


def doubly_extended_cases(n: int) -> list[RelCase]:
    """Presentation relations of the doubly extended nil-Hecke algebra."""
    ctx = OpContext.plain(n)
    X, T, wp, wm = ex.X, ex.T, ex.wp, ex.wm
    cite = "doubly extended presentation"
    cases = []
    one = CrossedOp.identity(n)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            anti = word_op([wp(i), wm(j)], ctx) + word_op([wm(j), wp(i)], ctx)
            cases.append(RelCase(f"EENH{n}.8.{i}{j}", cite + " (w+_i w-_j + w-_j w+_i = delta_ij)",
                                 anti, one if i == j else _zero_op(ctx), ctx))
            for g, tag in ((wp, "+"), (wm, "-")):
                cases.append(RelCase(f"EENH{n}.9.{tag}{i}{j}", cite + " (same-sign anticommutation)",
                                     [g(i), g(j)], word_op([g(j), g(i)], ctx).scale(-1), ctx))
                cases.append(RelCase(f"EENH{n}.10.X{i}{tag}{j}", cite + " (dots commute with w+-)",
                                     [X(i), g(j)], [g(j), X(i)], ctx))
    for r in range(1, n):
        for i in range(1, n + 1):
            if i != r:
                cases.append(RelCase(f"EENH{n}.11.T{r}+{i}", cite + " (T_r w+_i = w+_i T_r, r != i)",
                                     [T(r), wp(i)], [wp(i), T(r)], ctx))
            if i != r + 1:
                cases.append(RelCase(f"EENH{n}.12.T{r}-{i}", cite + " (T_r w-_i = w-_i T_r, r != i+1)",
                                     [T(r), wm(i)], [wm(i), T(r)], ctx))
        t = embed(T(r), ctx)
        a = embed(wp(r), ctx) + word_op([X(r), wp(r + 1)], ctx)
        b = embed(wm(r + 1), ctx) - word_op([X(r), wm(r)], ctx)
        cases.append(RelCase(f"EENH{n}.13.T{r}", cite + " ([T_r, w+_r + X_r w+_{r+1}] = 0)",
                             compose(t, a) - compose(a, t), _zero_op(ctx), ctx))
        cases.append(RelCase(f"EENH{n}.14.T{r}", cite + " ([T_r, w-_{r+1} - X_r w-_r] = 0)",
                             compose(t, b) - compose(b, t), _zero_op(ctx), ctx))
    return cases


def klr_cases(quiver: Quiver, dimvec: Mapping[str, int]) -> list[RelCase]:
    """The KLR relations (quadratic, dot slides, nil-Hecke, both braid forms, isotopies) on every block."""
    ctx = OpContext.coloured(quiver, dimvec)
    n = ctx.n
    X, tau = ex.X, ex.tau
    tag = f"{quiver.label()}|{_dv_text(dimvec)}"
    cases = []
    for cols in ctx.blocks:
        ct = ",".join(cols)
        xs = [Poly.var(i, n) for i in range(1, n + 1)]
        for r in range(1, n):
            a, b = cols[r - 1], cols[r]
            cid = f"{tag}|{ct}|r{r}"
            if a == b:
                cases.append(RelCase(cid + "|R2", "quadratic KLR relation (equal colours: tau^2 = 0)",
                                     _on([tau(r), tau(r)], cols), _zero_op(ctx), ctx, cols))
                one = CrossedOp.identity(n, [cols])
                cases.append(RelCase(cid + "|nh-a", "nil-Hecke relation X_r tau_r - tau_r X_{r+1} = 1",
                                     word_op(_on([X(r), tau(r)], cols), ctx) - word_op(_on([tau(r), X(r + 1)], cols), ctx),
                                     one, ctx, cols))
                cases.append(RelCase(cid + "|nh-b", "nil-Hecke relation tau_r X_r - X_{r+1} tau_r = 1",
                                     word_op(_on([tau(r), X(r)], cols), ctx) - word_op(_on([X(r + 1), tau(r)], cols), ctx),
                                     one, ctx, cols))
            else:
                q = quiver.Q(a, b, xs[r - 1], xs[r])
                cases.append(RelCase(cid + "|R2", "quadratic KLR relation tau^2 = Q_ij(X_r, X_{r+1})",
                                     _on([tau(r), tau(r)], cols), poly_op(q, ctx, cols), ctx, cols))
                cases.append(RelCase(cid + "|slide-a", "dot slide X_r tau_r = tau_r X_{r+1} (distinct colours)",
                                     _on([X(r), tau(r)], cols), _on([tau(r), X(r + 1)], cols), ctx, cols))
                cases.append(RelCase(cid + "|slide-b", "dot slide X_{r+1} tau_r = tau_r X_r (distinct colours)",
                                     _on([X(r + 1), tau(r)], cols), _on([tau(r), X(r)], cols), ctx, cols))
            for i in range(1, n + 1):
                if i not in (r, r + 1):
                    cases.append(RelCase(cid + f"|X{i}", "distant dots commute with crossings",
                                         _on([X(i), tau(r)], cols), _on([tau(r), X(i)], cols), ctx, cols))
            for t in range(r + 2, n):
                cases.append(RelCase(cid + f"|far{t}", "distant crossings commute",
                                     _on([tau(r), tau(t)], cols), _on([tau(t), tau(r)], cols), ctx, cols))
        for r in range(1, n - 1):
            i, j, k = cols[r - 1:r + 2]
            cid = f"{tag}|{ct}|r{r}"
            lhs = _on([tau(r), tau(r + 1), tau(r)], cols)
            rhs = _on([tau(r + 1), tau(r), tau(r + 1)], cols)
            if i == k and i != j:
                num = quiver.Q(i, j, xs[r + 1], xs[r]) - quiver.Q(i, j, xs[r - 1], xs[r])
                corr = num.exact_div(xs[r + 1] - xs[r - 1])
                cases.append(RelCase(cid + "|R3_2", "braid relation with correction (Q_ij(X_3,X_2) - Q_ij(X_1,X_2))/(X_3 - X_1)",
                                     word_op(lhs, ctx) - word_op(rhs, ctx), poly_op(corr, ctx, cols), ctx, cols))
            else:
                cases.append(RelCase(cid + "|R3_1", "braid relation (unless i = k != j)", lhs, rhs, ctx, cols))
    return cases


def _fdot_sum(terms, ctx, cols):
    total = CrossedOp.zero(ctx.n)
    for coeff, word in terms:
        total = total + word_op(_on(word, cols), ctx).scale(coeff)
    return total


def floating_dot_cases(quiver: Quiver, dimvec: Mapping[str, int], max_twist: int = 2) -> list[RelCase]:
    """Floating-dot relations: the dot-absorption rule, the crossing rule, and the same-colour
    rule expressing ``Omega_{r+1}`` through ``Omega_r``."""
    ctx = OpContext.coloured(quiver, dimvec)
    n = ctx.n
    X, tau, fd = ex.X, ex.tau, ex.fdot
    tag = f"{quiver.label()}|{_dv_text(dimvec)}"
    cases = []
    for cols in ctx.blocks:
        ct = ",".join(cols)
        for j0 in sorted(set(cols)):
            for a in range(max_twist + 1):
                for r in range(1, n + 1):
                    cid = f"{tag}|{ct}|{j0}|a{a}|r{r}"
                    ir = cols[r - 1]
                    lhs = [fd(r, j0, a)]
                    if a > 0 and ir == j0:
                        terms = [(-1, [X(r), fd(r, j0, a - 1)])]
                        if r > 1:
                            terms.append((1, [fd(r - 1, j0, a - 1)]))
                        cases.append(RelCase(cid + "|absorb", "floating dot absorption, equal colour",
                                             _on(lhs, cols), _fdot_sum(terms, ctx, cols), ctx, cols))
                    elif ir != j0:
                        terms = []
                        if r > 1:
                            for (t, p), c in sorted(quiver.q_coeffs(ir, j0).items()):
                                terms.append((c * (-1) ** p, [fd(r - 1, j0, a + p)] + [X(r)] * t))
                        cases.append(RelCase(cid + "|absorb", "floating dot absorption, distinct colour",
                                             _on(lhs, cols), _fdot_sum(terms, ctx, cols), ctx, cols))
                    if r < n and cols[r - 1] != cols[r] and cols[r] == j0:
                        mid = act_on_colours(Perm.simple(r, n), cols)
                        l = compose(embed(tau(r), ctx), compose(embed(fd(r, j0, a, mid), ctx), embed(tau(r, cols), ctx)))
                        terms = [(1, [fd(r + 1, j0, a)])]
                        if r > 1:
                            for (t, p), c in sorted(quiver.q_coeffs(cols[r - 1], cols[r]).items()):
                                for h in range(p):
                                    terms.append((c * (-1) ** h, [fd(r - 1, j0, a + h)] + [X(r)] * t + [X(r + 1)] * (p - 1 - h)))
                        cases.append(RelCase(cid + "|cross", "floating dot crossing rule (tau Omega tau)",
                                             l, _fdot_sum(terms, ctx, cols), ctx, cols))
                    if r < n and cols[r - 1] == cols[r] == j0:
                        rhs = word_op(_on([X(r + 1), tau(r), fd(r, j0, a), tau(r)], cols), ctx) - \
                            word_op(_on([tau(r), fd(r, j0, a), tau(r), X(r)], cols), ctx)
                        cases.append(RelCase(cid + "|slide", "floating dot moved through a same-colour pair",
                                             _on([fd(r + 1, j0, a)], cols), rhs, ctx, cols))
        cases.append(RelCase(f"{tag}|{ct}|tight-square", "two stacked floating dots vanish",
                             _on([ex.Omega(), ex.Omega()], cols), _zero_op(ctx), ctx, cols))
        if n >= 2:
            l = word_op(_on([ex.Omega(), tau(1), ex.Omega(), tau(1)], cols), ctx)
            r_ = word_op(_on([tau(1), ex.Omega(), tau(1), ex.Omega()], cols), ctx)
            cases.append(RelCase(f"{tag}|{ct}|tight-cross", "Omega tau_1 Omega tau_1 = - tau_1 Omega tau_1 Omega",
                                 l, r_.scale(-1), ctx, cols))
            if cols[0] == cols[1]:
                rhs = word_op(_on([X(2), tau(1), ex.Omega(), tau(1)], cols), ctx) - \
                    word_op(_on([tau(1), ex.Omega(), tau(1), X(1)], cols), ctx)
                cases.append(RelCase(f"{tag}|{ct}|tight-slide", "second floating dot via the first",
                                     _on([fd(2, cols[0], 0)], cols), rhs, ctx, cols))
    return cases


def degree_cases(quiver: Quiver, dimvec: Mapping[str, int]) -> list[tuple[str, int | None, int]]:
    """``(case, degree of the embedded generator, expected degree)`` for every generator and block."""
    from .quivercomb import degree_of_word
    ctx = OpContext.coloured(quiver, dimvec)
    n = ctx.n
    out = []
    for cols in ctx.blocks:
        toks = [ex.idem(cols), ex.Omega(cols)] + [ex.X(r, cols) for r in range(1, n + 1)] + \
            [ex.tau(r, cols) for r in range(1, n)]
        for tok in toks:
            out.append((f"{','.join(cols)}|{tok.text()}", op_degree(embed(tok, ctx)), degree_of_word([tok], quiver)))
    return out
