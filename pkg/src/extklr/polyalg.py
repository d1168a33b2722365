"""Exact polynomials, rational functions, permutations and linear algebra.

Coefficients are ``gmpy2.mpq`` rationals.  Polynomials are sparse maps from
exponent tuples to coefficients.  Rational functions keep their denominator
split into a product of linear differences ``X_a - X_b`` (``a < b``) and a
residual monic polynomial; every denominator produced by the operator
calculus is of the first kind, so the general gcd path is rarely taken.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence, Union

from gmpy2 import mpq

__all__ = [
    "Poly",
    "RatFunc",
    "Perm",
    "ExactMatrix",
    "NotExactDivision",
    "perm_apply",
    "demazure",
    "exact_rank",
    "exact_kernel",
    "rank_at_random_point",
    "sparse_rank",
    "coset_decompose",
    "right_coset_decompose",
    "reduced_word",
    "bruhat_leq",
    "all_perms",
    "subsets",
]

Exponent = tuple[int, ...]
Scalar = Union[int, mpq]


class NotExactDivision(ArithmeticError):
    """Raised when a polynomial division leaves a remainder."""


_MPQ = type(mpq(0))


def _q(c) -> mpq:
    return c if type(c) is _MPQ else mpq(c)


def _grevlex_key(e: Exponent):
    return (sum(e), tuple(-x for x in reversed(e)))


class Poly:
    """A polynomial in ``n`` commuting variables with rational coefficients.

    >>> x1, x2 = Poly.var(1, 2), Poly.var(2, 2)
    >>> str(3 * x1**2 * x2 - mpq(1, 2))
    '3*X1^2*X2 - 1/2'
    """

    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Exponent, Scalar] | None = None):
        self.n = n
        clean: dict[Exponent, mpq] = {}
        if terms:
            for e, c in terms.items():
                if len(e) != n:
                    raise ValueError(f"exponent {e} has wrong length for n={n}")
                if c:
                    clean[tuple(e)] = _q(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, n: int, terms: dict[Exponent, mpq]) -> "Poly":
        p = cls.__new__(cls)
        p.n = n
        p.terms = terms
        p._hash = None
        return p

    # constructors
    @classmethod
    def zero(cls, n: int) -> "Poly":
        return cls._raw(n, {})

    @classmethod
    def const(cls, c: Scalar, n: int) -> "Poly":
        c = _q(c)
        return cls._raw(n, {(0,) * n: c} if c else {})

    @classmethod
    def one(cls, n: int) -> "Poly":
        return cls.const(1, n)

    @classmethod
    def var(cls, i: int, n: int) -> "Poly":
        if not 1 <= i <= n:
            raise ValueError(f"variable index {i} out of range for n={n}")
        e = [0] * n
        e[i - 1] = 1
        return cls._raw(n, {tuple(e): mpq(1)})

    @classmethod
    def monomial(cls, e: Sequence[int], c: Scalar = 1) -> "Poly":
        return cls(len(e), {tuple(e): c})

    # basic predicates
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0,) * self.n in self.terms)

    def const_value(self) -> mpq:
        return self.terms.get((0,) * self.n, mpq(0))

    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def leading(self) -> tuple[Exponent, mpq]:
        e = max(self.terms, key=_grevlex_key)
        return e, self.terms[e]

    # arithmetic
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.n != self.n:
                raise ValueError(f"variable count mismatch: {self.n} vs {other.n}")
            return other
        return Poly.const(other, self.n)

    def __add__(self, other):
        if isinstance(other, RatFunc):
            return NotImplemented
        other = self._coerce(other)
        if not other.terms:
            return self
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e)
            if v is None:
                t[e] = c
            else:
                v = v + c
                if v:
                    t[e] = v
                else:
                    del t[e]
        return Poly._raw(self.n, t)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, RatFunc):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, RatFunc):
            return NotImplemented
        if not isinstance(other, Poly):
            c = _q(other)
            if not c:
                return Poly.zero(self.n)
            return Poly._raw(self.n, {e: v * c for e, v in self.terms.items()})
        if other.n != self.n:
            raise ValueError(f"variable count mismatch: {self.n} vs {other.n}")
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        t: dict[Exponent, mpq] = {}
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = t.get(e)
                t[e] = c1 * c2 if v is None else v + c1 * c2
        return Poly._raw(self.n, {e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.one(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, Poly) or isinstance(other, RatFunc):
            return RatFunc(self) / other
        c = _q(other)
        return Poly._raw(self.n, {e: v / c for e, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.n == other.n and self.terms == other.terms
        if isinstance(other, RatFunc):
            return other == self
        try:
            return self.terms == Poly.const(other, self.n).terms
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.terms.items())))
        return self._hash

    # variable manipulation
    def permute(self, w: "Perm") -> "Poly":
        """Replace variable ``i`` by variable ``w(i)``."""
        if w.n != self.n:
            raise ValueError(f"permutation of size {w.n} applied to {self.n} variables")
        img = w.images
        t = {}
        for e, c in self.terms.items():
            ne = [0] * self.n
            for i, x in enumerate(e):
                ne[img[i] - 1] = x
            t[tuple(ne)] = c
        return Poly._raw(self.n, t)

    def rename(self, mapping: Sequence[int], n_new: int) -> "Poly":
        """Send variable ``i`` to variable ``mapping[i-1]`` of an ``n_new``-variable ring."""
        t: dict[Exponent, mpq] = {}
        for e, c in self.terms.items():
            ne = [0] * n_new
            for i, x in enumerate(e):
                if x:
                    ne[mapping[i] - 1] += x
            ne = tuple(ne)
            t[ne] = t.get(ne, 0) + c
        return Poly._raw(n_new, {e: c for e, c in t.items() if c})

    def extend(self, n_new: int) -> "Poly":
        if n_new < self.n:
            raise ValueError("cannot shrink the variable count")
        pad = (0,) * (n_new - self.n)
        return Poly._raw(n_new, {e + pad: c for e, c in self.terms.items()})

    def subs_var(self, a: int, b: int) -> "Poly":
        """Set ``X_a := X_b``."""
        t: dict[Exponent, mpq] = {}
        ia, ib = a - 1, b - 1
        for e, c in self.terms.items():
            if e[ia]:
                ne = list(e)
                ne[ib] += ne[ia]
                ne[ia] = 0
                ne = tuple(ne)
            else:
                ne = e
            v = t.get(ne)
            t[ne] = c if v is None else v + c
        return Poly._raw(self.n, {e: c for e, c in t.items() if c})

    def substitute(self, values: Sequence["Poly"]) -> "Poly":
        """Evaluate with variable ``i`` replaced by the polynomial ``values[i-1]``."""
        m = values[0].n if values else 0
        result = Poly.zero(m)
        powers: dict[tuple[int, int], Poly] = {}
        for e, c in self.terms.items():
            term = Poly.const(c, m)
            for i, x in enumerate(e):
                if x:
                    key = (i, x)
                    if key not in powers:
                        powers[key] = values[i] ** x
                    term = term * powers[key]
            result = result + term
        return result

    def evaluate(self, point: Sequence) -> mpq:
        total = mpq(0)
        for e, c in self.terms.items():
            v = c
            for x, p in zip(e, point):
                if x:
                    v = v * _q(p) ** x
            total += v
        return total

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly._raw(self.n, {e: c for e, c in self.terms.items() if sum(e) == d})

    # division
    def div_linear(self, a: int, b: int) -> "Poly":
        """Exact quotient by ``X_a - X_b``; raises :class:`NotExactDivision`."""
        if a == b:
            raise ZeroDivisionError("division by X_a - X_a")
        if self.subs_var(a, b).terms:
            raise NotExactDivision(f"X{a} - X{b} does not divide the polynomial")
        return self._div_linear_unchecked(a, b)

    def _div_linear_unchecked(self, a: int, b: int) -> "Poly":
        ia, ib = a - 1, b - 1
        t: dict[Exponent, mpq] = {}
        for e, c in self.terms.items():
            k = e[ia]
            if not k:
                continue
            base = list(e)
            for i in range(k):
                base[ia] = i
                save = base[ib]
                base[ib] = e[ib] + (k - 1 - i)
                ne = tuple(base)
                base[ib] = save
                v = t.get(ne)
                t[ne] = c if v is None else v + c
        return Poly._raw(self.n, {e: c for e, c in t.items() if c})

    def divides_linear(self, a: int, b: int) -> bool:
        return not self.subs_var(a, b).terms

    def exact_div(self, other: "Poly") -> "Poly":
        """Exact multivariate quotient ``self / other``."""
        other = self._coerce(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        le, lc = other.leading()
        rem = self
        q = Poly.zero(self.n)
        while rem.terms:
            e, c = rem.leading()
            d = tuple(x - y for x, y in zip(e, le))
            if min(d) < 0:
                raise NotExactDivision("polynomial division is not exact")
            t = Poly._raw(self.n, {d: c / lc})
            q = q + t
            rem = rem - t * other
        return q

    # text
    def sorted_terms(self) -> list[tuple[Exponent, mpq]]:
        return sorted(self.terms.items(), key=lambda kv: _grevlex_key(kv[0]), reverse=True)

    def to_text(self, var: str = "X") -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for idx, (e, c) in enumerate(self.sorted_terms()):
            mono = "*".join(
                f"{var}{i + 1}" + (f"^{x}" if x > 1 else "") for i, x in enumerate(e) if x
            )
            neg = c < 0
            a = -c if neg else c
            if mono:
                body = mono if a == 1 else f"{_fmt_q(a)}*{mono}"
            else:
                body = _fmt_q(a)
            if idx == 0:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Poly({self.n}, {self.to_text()!r})"

    @classmethod
    def parse(cls, text: str, n: int, var: str = "X") -> "Poly":
        """Inverse of :meth:`to_text` (sums of products of rationals and powers)."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial text")
        if s[0] not in "+-":
            s = "+" + s
        result = cls.zero(n)
        for sign, body in re.findall(r"([+-])([^+-]+)", s):
            term = cls.one(n)
            for factor in body.split("*"):
                m = re.fullmatch(rf"{re.escape(var)}(\d+)(?:\^(\d+))?", factor)
                if m:
                    term = term * cls.var(int(m.group(1)), n) ** int(m.group(2) or 1)
                elif re.fullmatch(r"\d+(/\d+)?", factor):
                    term = term * mpq(factor)
                else:
                    raise ValueError(f"cannot parse factor {factor!r}")
            result = result + (term if sign == "+" else -term)
        return result


def _fmt_q(c: mpq) -> str:
    c = _q(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


# ---------------------------------------------------------------------------
# rational functions


def _general_gcd(f: Poly, g: Poly) -> Poly:
    """Multivariate gcd through sympy's sparse polynomial rings."""
    from sympy import QQ
    from sympy.polys.rings import ring

    n = f.n
    R, *_ = ring([f"x{i}" for i in range(1, n + 1)], QQ)

    def to_r(p: Poly):
        return R.from_dict({e: QQ(int(c.numerator), int(c.denominator)) for e, c in p.terms.items()})

    h = to_r(f).gcd(to_r(g))
    return Poly(n, {tuple(e): mpq(int(c.numerator), int(c.denominator)) for e, c in h.items()})


class RatFunc:
    """A reduced quotient of polynomials.

    The denominator is ``prod (X_a - X_b)^e * rest`` with ``a < b`` and
    ``rest`` monic with no such linear factor.  The representation is
    canonical, so equality is structural.
    """

    __slots__ = ("n", "num", "lin", "rest")

    def __init__(self, num: Poly | Scalar, den: Poly | Scalar | None = None, n: int | None = None):
        if not isinstance(num, Poly):
            if n is None:
                n = den.n if isinstance(den, Poly) else 0
            num = Poly.const(num, n)
        n = num.n
        self.n = n
        if den is None:
            self.num, self.lin, self.rest = num, {}, Poly.one(n)
            return
        if not isinstance(den, Poly):
            den = Poly.const(den, n)
        if not den.terms:
            raise ZeroDivisionError("zero denominator")
        lin: dict[tuple[int, int], int] = {}
        rest = den
        if not rest.is_const():
            for a in range(1, n + 1):
                for b in range(a + 1, n + 1):
                    while not rest.is_const() and rest.divides_linear(a, b):
                        rest = rest._div_linear_unchecked(a, b)
                        lin[(a, b)] = lin.get((a, b), 0) + 1
        self.num, self.lin, self.rest = num, lin, rest
        self._normalize()

    @classmethod
    def _raw(cls, num: Poly, lin: dict, rest: Poly) -> "RatFunc":
        r = cls.__new__(cls)
        r.n, r.num, r.lin, r.rest = num.n, num, lin, rest
        return r

    @classmethod
    def inv_linear(cls, a: int, b: int, n: int, power: int = 1) -> "RatFunc":
        """``(X_a - X_b)^(-power)``."""
        if a == b:
            raise ZeroDivisionError("X_a - X_a")
        sign = 1
        if a > b:
            a, b = b, a
            sign = -1 if power % 2 else 1
        return cls._raw(Poly.const(sign, n), {(a, b): power}, Poly.one(n))

    def _normalize(self) -> None:
        num, lin, rest = self.num, self.lin, self.rest
        if not num.terms:
            self.num, self.lin, self.rest = num, {}, Poly.one(self.n)
            return
        if not rest.is_const():
            g = _general_gcd(num, rest)
            if not g.is_const():
                num = num.exact_div(g)
                rest = rest.exact_div(g)
        if rest.is_const():
            c = rest.const_value()
            if c != 1:
                num = num * (1 / c)
            rest = Poly.one(self.n)
        else:
            _, lc = rest.leading()
            if lc != 1:
                num = num * (1 / lc)
                rest = rest * (1 / lc)
        new_lin = {}
        for (a, b), e in lin.items():
            while e and num.divides_linear(a, b):
                num = num._div_linear_unchecked(a, b)
                e -= 1
            if e:
                new_lin[(a, b)] = e
        self.num, self.lin, self.rest = num, new_lin, rest

    @property
    def den(self) -> Poly:
        d = self.rest
        for (a, b), e in sorted(self.lin.items()):
            d = d * (Poly.var(a, self.n) - Poly.var(b, self.n)) ** e
        return d

    def is_zero(self) -> bool:
        return not self.num.terms

    def __bool__(self) -> bool:
        return bool(self.num.terms)

    def is_poly(self) -> bool:
        return not self.lin and self.rest.is_const()

    def to_poly(self) -> Poly:
        if not self.is_poly():
            raise NotExactDivision("rational function is not a polynomial")
        return self.num

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            if other.n != self.n:
                raise ValueError(f"variable count mismatch: {self.n} vs {other.n}")
            return other
        if isinstance(other, Poly):
            if other.n != self.n:
                raise ValueError(f"variable count mismatch: {self.n} vs {other.n}")
            return RatFunc._raw(other, {}, Poly.one(self.n))
        return RatFunc._raw(Poly.const(other, self.n), {}, Poly.one(self.n))

    def _lin_poly(self, items: Iterable[tuple[tuple[int, int], int]]) -> Poly:
        p = Poly.one(self.n)
        for (a, b), e in items:
            if e:
                p = p * (Poly.var(a, self.n) - Poly.var(b, self.n)) ** e
        return p

    def __add__(self, other):
        o = self._coerce(other)
        if not o.num.terms:
            return self
        if not self.num.terms:
            return o
        keys = set(self.lin) | set(o.lin)
        lin = {k: max(self.lin.get(k, 0), o.lin.get(k, 0)) for k in keys}
        f1 = self._lin_poly((k, lin[k] - self.lin.get(k, 0)) for k in keys)
        f2 = self._lin_poly((k, lin[k] - o.lin.get(k, 0)) for k in keys)
        if self.rest == o.rest:
            rest = self.rest
            num = self.num * f1 + o.num * f2
        else:
            rest = self.rest * o.rest
            num = self.num * f1 * o.rest + o.num * f2 * self.rest
        r = RatFunc._raw(num, lin, rest)
        r._normalize()
        return r

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc._raw(-self.num, self.lin, self.rest)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        if not o.num.terms or not self.num.terms:
            return RatFunc._raw(Poly.zero(self.n), {}, Poly.one(self.n))
        lin = dict(self.lin)
        for k, e in o.lin.items():
            lin[k] = lin.get(k, 0) + e
        r = RatFunc._raw(self.num * o.num, lin, self.rest * o.rest)
        if o.lin or self.lin or not r.rest.is_const():
            r._normalize()
        return r

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num.terms:
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int) -> "RatFunc":
        if k < 0:
            return self.inverse() ** (-k)
        result = self._coerce(1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        try:
            o = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.num == o.num and self.lin == o.lin and self.rest == o.rest

    def cross_equal(self, other) -> bool:
        """Equality via ``num1*den2 == num2*den1``."""
        o = self._coerce(other)
        return self.num * o.den == o.num * self.den

    def __hash__(self) -> int:
        return hash((self.num, frozenset(self.lin.items()), self.rest))

    def permute(self, w: "Perm") -> "RatFunc":
        num = self.num.permute(w)
        lin: dict[tuple[int, int], int] = {}
        img = w.images
        for (a, b), e in self.lin.items():
            a2, b2 = img[a - 1], img[b - 1]
            if a2 > b2:
                a2, b2 = b2, a2
                if e % 2:
                    num = -num
            lin[(a2, b2)] = e
        rest = self.rest
        if not rest.is_const():
            rest = rest.permute(w)
            _, lc = rest.leading()
            if lc != 1:
                num = num * (1 / lc)
                rest = rest * (1 / lc)
        return RatFunc._raw(num, lin, rest)

    def rename(self, mapping: Sequence[int], n_new: int) -> "RatFunc":
        return RatFunc(self.num.rename(mapping, n_new), self.den.rename(mapping, n_new))

    def evaluate(self, point: Sequence) -> mpq:
        d = self.den.evaluate(point)
        if not d:
            raise ZeroDivisionError("evaluation at a pole")
        return self.num.evaluate(point) / d

    def degree(self) -> int:
        """Degree of the numerator minus that of the denominator (homogeneous inputs)."""
        return self.num.degree() - self.den.degree()

    def to_text(self, var: str = "X") -> str:
        if self.is_poly():
            return self.num.to_text(var)
        return f"({self.num.to_text(var)})/({self.den.to_text(var)})"

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"RatFunc({self.to_text()!r})"


# ---------------------------------------------------------------------------
# permutations


@dataclass(frozen=True)
class Perm:
    """A permutation of ``[1;n]`` in one-line notation; products compose as functions.

    >>> s1, s2 = Perm.simple(1, 3), Perm.simple(2, 3)
    >>> (s2 * s1).cycle_text()
    '(1,3,2)'
    """

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"{self.images} is not a permutation")

    @property
    def n(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def simple(cls, r: int, n: int) -> "Perm":
        if not 1 <= r < n:
            raise ValueError(f"s_{r} does not exist in S_{n}")
        im = list(range(1, n + 1))
        im[r - 1], im[r] = im[r], im[r - 1]
        return cls(tuple(im))

    @classmethod
    def from_word(cls, word: Sequence[int], n: int) -> "Perm":
        w = cls.identity(n)
        for r in word:
            w = w * cls.simple(r, n)
        return w

    @classmethod
    def longest(cls, k: int, n: int | None = None) -> "Perm":
        """The longest element of ``S_k`` inside ``S_n``."""
        n = k if n is None else n
        return cls(tuple(range(k, 0, -1)) + tuple(range(k + 1, n + 1)))

    @classmethod
    def parse(cls, text: str) -> "Perm":
        s = text.strip()
        if not (s.startswith("[") and s.endswith("]")):
            raise ValueError(f"permutation text must look like [2,1,3], got {text!r}")
        body = s[1:-1].strip()
        return cls(tuple(int(x) for x in body.split(",")) if body else ())

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Perm") -> "Perm":
        if other.n != self.n:
            raise ValueError("permutations of different sizes")
        return Perm(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> "Perm":
        inv = [0] * self.n
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Perm(tuple(inv))

    def length(self) -> int:
        im = self.images
        return sum(1 for a in range(self.n) for b in range(a + 1, self.n) if im[a] > im[b])

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images, start=1))

    def reduced_word(self) -> list[int]:
        return reduced_word(self)

    def to_text(self) -> str:
        return "[" + ",".join(str(i) for i in self.images) + "]"

    def cycle_text(self) -> str:
        seen: set[int] = set()
        cycles = []
        for i in range(1, self.n + 1):
            if i in seen or self(i) == i:
                continue
            c = [i]
            seen.add(i)
            j = self(i)
            while j != i:
                c.append(j)
                seen.add(j)
                j = self(j)
            cycles.append("(" + ",".join(map(str, c)) + ")")
        return "".join(cycles) or "()"

    def __str__(self) -> str:
        return self.to_text()

    def __lt__(self, other: "Perm") -> bool:
        return self.images < other.images


def reduced_word(w: Perm) -> list[int]:
    """A reduced word ``[r_1, ..., r_l]`` with ``w = s_{r_1} ... s_{r_l}``.

    Peels right descents, so the word is lexicographically canonical for the
    chosen algorithm and deterministic.
    """
    word: list[int] = []
    im = list(w.images)
    while True:
        for r in range(len(im) - 1):
            if im[r] > im[r + 1]:
                im[r], im[r + 1] = im[r + 1], im[r]
                word.append(r + 1)
                break
        else:
            break
    return word[::-1]


def bruhat_leq(v: Perm, w: Perm) -> bool:
    """Bruhat order via the tableau criterion."""
    if v.n != w.n:
        raise ValueError("permutations of different sizes")
    for k in range(1, v.n):
        a = sorted(v.images[:k])
        b = sorted(w.images[:k])
        if any(x > y for x, y in zip(a, b)):
            return False
    return True


@lru_cache(maxsize=None)
def all_perms(n: int) -> tuple[Perm, ...]:
    return tuple(Perm(p) for p in itertools.permutations(range(1, n + 1)))


def subsets(n: int, k: int | None = None) -> list[frozenset[int]]:
    """Subsets of ``[1;n]`` (of size ``k`` if given), in a fixed order."""
    sizes = range(n + 1) if k is None else [k]
    return [frozenset(c) for s in sizes for c in itertools.combinations(range(1, n + 1), s)]


def coset_decompose(w: Perm, k: int) -> tuple[Perm, Perm]:
    """``w = x u`` with ``x`` minimal in ``w (S_k x S_{n-k})`` and ``u`` in the Young subgroup."""
    n = w.n
    if not 0 <= k <= n:
        raise ValueError(f"k={k} out of range for n={n}")
    x = Perm(tuple(sorted(w.images[:k])) + tuple(sorted(w.images[k:])))
    return x, x.inverse() * w


def right_coset_decompose(w: Perm, k: int) -> tuple[Perm, Perm]:
    """``w = u x`` with ``x`` minimal in ``(S_k x S_{n-k}) w``; returns ``(u, x)``."""
    x_inv, u_inv = coset_decompose(w.inverse(), k)
    return u_inv.inverse(), x_inv.inverse()


def perm_apply(w: Perm, f):
    """The left action ``w(f)(X_1, ..., X_n) = f(X_{w(1)}, ..., X_{w(n)})``."""
    if f.n != w.n:
        raise ValueError(f"permutation of size {w.n} applied to {f.n} variables")
    return f.permute(w)


def demazure(r: int, f: Poly) -> Poly:
    """Divided difference ``(f - s_r f) / (X_r - X_{r+1})``."""
    if not 1 <= r < f.n:
        raise ValueError(f"demazure index {r} out of range for n={f.n}")
    diff = f - f.permute(Perm.simple(r, f.n))
    return diff._div_linear_unchecked(r, r + 1)


# ---------------------------------------------------------------------------
# exact linear algebra


def _is_zero(x) -> bool:
    return not x


class ExactMatrix:
    """A dense matrix over a field of exact elements (``mpq`` or :class:`RatFunc`)."""

    def __init__(self, rows: Sequence[Sequence], cols: int | None = None):
        self.rows = [[x if isinstance(x, RatFunc) else _q(x) for x in r] for r in rows]
        self.ncols = cols if cols is not None else (len(self.rows[0]) if self.rows else 0)
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError("ragged matrix")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def _echelon(self):
        m = [list(r) for r in self.rows]
        pivots: list[int] = []
        row = 0
        for col in range(self.ncols):
            piv = next((i for i in range(row, len(m)) if not _is_zero(m[i][col])), None)
            if piv is None:
                continue
            m[row], m[piv] = m[piv], m[row]
            p = m[row][col]
            m[row] = [x / p if not _is_zero(x) else x for x in m[row]]
            for i in range(len(m)):
                if i != row and not _is_zero(m[i][col]):
                    f = m[i][col]
                    m[i] = [a - f * b if not _is_zero(b) else a for a, b in zip(m[i], m[row])]
            pivots.append(col)
            row += 1
            if row == len(m):
                break
        return m[:row], pivots

    def rank(self) -> int:
        return len(self._echelon()[1])

    def kernel(self) -> list[list]:
        red, pivots = self._echelon()
        free = [c for c in range(self.ncols) if c not in pivots]
        zero = self._zero()
        one = self._one()
        basis = []
        for fcol in free:
            v = [zero] * self.ncols
            v[fcol] = one
            for r, pc in enumerate(pivots):
                v[pc] = -red[r][fcol]
            basis.append(v)
        return basis

    def _sample(self):
        for r in self.rows:
            for x in r:
                return x
        return mpq(0)

    def _zero(self):
        s = self._sample()
        return s * 0 if isinstance(s, RatFunc) else mpq(0)

    def _one(self):
        s = self._sample()
        return s._coerce(1) if isinstance(s, RatFunc) else mpq(1)

    def apply(self, v: Sequence) -> list:
        out = []
        for r in self.rows:
            acc = self._zero()
            for a, b in zip(r, v):
                if not _is_zero(a) and not _is_zero(b):
                    acc = acc + a * b
            out.append(acc)
        return out


def exact_rank(m: ExactMatrix) -> int:
    return m.rank()


def exact_kernel(m: ExactMatrix) -> list[list]:
    return m.kernel()


def sparse_rank(rows: Iterable[Mapping]) -> int:
    """Rank of a sparse rational matrix given as ``{column: value}`` rows."""
    pivots: dict = {}
    rank = 0
    for r in rows:
        row = {c: _q(v) for c, v in r.items() if v}
        while row:
            col = min(row)
            if col in pivots:
                prow = pivots[col]
                f = row[col]
                for c, v in prow.items():
                    nv = row.get(c, 0) - f * v
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
            else:
                inv = 1 / row[col]
                pivots[col] = {c: v * inv for c, v in row.items()}
                rank += 1
                break
    return rank


def rank_at_random_point(entries: Sequence[Sequence], nvars: int, seed: int = 0,
                         attempts: int = 3) -> int:
    """Lower bound for the rank of a matrix of rational functions.

    The matrix is evaluated at random rational points; the maximum rank over
    the attempts never exceeds the generic rank, and reaching the number of
    rows certifies full row rank.
    """
    rng = random.Random(seed)
    best = 0
    nrows = len(entries)
    for _ in range(attempts):
        point = [mpq(rng.randint(-10**6, 10**6), rng.randint(1, 997)) for _ in range(nvars)]
        rows = []
        for r in entries:
            row = {}
            for c, x in enumerate(r):
                if x:
                    row[c] = x.evaluate(point) if hasattr(x, "evaluate") else _q(x)
            rows.append(row)
        best = max(best, sparse_rank(rows))
        if best == nrows:
            break
    return best


def iter_monomials(n: int, d: int) -> Iterator[Exponent]:
    """Exponent vectors of total degree ``d`` in ``n`` variables."""
    if n == 0:
        if d == 0:
            yield ()
        return
    for first in range(d, -1, -1):
        for rest in iter_monomials(n - 1, d - first):
            yield (first,) + rest
