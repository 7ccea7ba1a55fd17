"""Exact multivariate polynomials over the rationals.

Coefficients are :class:`fractions.Fraction`; there is no floating point
anywhere in the package.  A :class:`Polynomial` is immutable and kept in
canonical form (no zero coefficients), so ``==`` is exact identity testing.

The product kernel is compiled (Cython + GMP) when the extension was built
and falls back to pure Python otherwise.  Set ``TWOPLECTIC_PURE_PYTHON=1``
to force the fallback.
"""

from __future__ import annotations

import os
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from twoplectic import _pykernels
from twoplectic.errors import RejectedInput

if os.environ.get("TWOPLECTIC_PURE_PYTHON"):
    _kernels = _pykernels
else:
    try:
        from twoplectic import _ckernels as _kernels
    except ImportError:
        _kernels = _pykernels

KERNEL = _kernels.IMPLEMENTATION

EXP_BITS = _pykernels.EXP_BITS
_MASK = _pykernels.EXP_MASK
MAX_EXPONENT = _MASK

Rational = Fraction
Monomial = tuple


def as_rational(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise RejectedInput(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ValueError:
            raise RejectedInput(f"not a rational: {value!r}") from None
    raise RejectedInput(f"not a rational: {value!r}")


def pack(exponents: Sequence[int]) -> int:
    key = 0
    for i, e in enumerate(exponents):
        if e < 0 or e > MAX_EXPONENT:
            raise RejectedInput(f"exponent {e} out of range")
        key |= e << (EXP_BITS * i)
    return key


def unpack(key: int, nvars: int) -> tuple:
    return tuple((key >> (EXP_BITS * i)) & _MASK for i in range(nvars))


def _grlex_key(mono: tuple):
    return (sum(mono), mono)


class Polynomial:
    """A polynomial in ``nvars`` variables with rational coefficients."""

    __slots__ = ("nvars", "_terms", "_hash", "_degree")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], object] | None = None):
        if not isinstance(nvars, int) or nvars < 0:
            raise RejectedInput(f"bad variable count {nvars!r}")
        packed: dict[int, Fraction] = {}
        for mono, coef in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != nvars:
                raise RejectedInput(f"monomial {mono} does not have {nvars} exponents")
            c = as_rational(coef)
            if c:
                k = pack(mono)
                packed[k] = packed.get(k, 0) + c
        self.nvars = nvars
        self._terms = {k: v for k, v in packed.items() if v}
        self._hash = None
        self._degree = None

    @classmethod
    def _raw(cls, nvars: int, packed: dict) -> "Polynomial":
        # packed must already be canonical (no zero values)
        p = object.__new__(cls)
        p.nvars = nvars
        p._terms = packed
        p._hash = None
        p._degree = None
        return p

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, value) -> "Polynomial":
        c = as_rational(value)
        return cls._raw(nvars, {0: c} if c else {})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "Polynomial":
        if not 0 <= index < nvars:
            raise RejectedInput(f"variable index {index} out of range for {nvars} variables")
        return cls._raw(nvars, {1 << (EXP_BITS * index): Fraction(1)})

    @classmethod
    def monomial(cls, nvars: int, exponents: Sequence[int], coef=1) -> "Polynomial":
        return cls(nvars, {tuple(exponents): coef})

    @classmethod
    def parse(cls, text: str, names: Sequence[str]) -> "Polynomial":
        from twoplectic.syntax import parse_polynomial

        return parse_polynomial(text, names)

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict:
        """Monomial -> coefficient, in descending graded-lex order."""
        items = [(unpack(k, self.nvars), v) for k, v in self._terms.items()]
        items.sort(key=lambda kv: _grlex_key(kv[0]), reverse=True)
        return dict(items)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if self._degree is None:
            if not self._terms:
                self._degree = -1
            else:
                self._degree = max(sum(unpack(k, self.nvars)) for k in self._terms)
        return self._degree

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get(0, Fraction(0))

    def depends_on(self, index: int) -> bool:
        shift = EXP_BITS * index
        return any((k >> shift) & _MASK for k in self._terms)

    def coefficient(self, exponents: Sequence[int]) -> Fraction:
        return self._terms.get(pack(exponents), Fraction(0))

    def __len__(self):
        return len(self._terms)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.nvars != other.nvars:
            raise RejectedInput(
                f"polynomials live in different rings ({self.nvars} vs {other.nvars} variables)"
            )

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Polynomial.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        out = dict(self._terms)
        for k, v in other._terms.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return Polynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.nvars, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def scale(self, c) -> "Polynomial":
        c = as_rational(c)
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw(self.nvars, {k: v * c for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        if not self._terms or not other._terms:
            return Polynomial.zero(self.nvars)
        if self.degree + other.degree > MAX_EXPONENT:
            raise OverflowError("product degree exceeds the packed exponent range")
        if len(self._terms) == 1 and 0 in self._terms:
            return other.scale(self._terms[0])
        if len(other._terms) == 1 and 0 in other._terms:
            return self.scale(other._terms[0])
        return Polynomial._raw(self.nvars, _kernels.mul(self._terms, other._terms, self.nvars))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise RejectedInput("only non-negative integer powers are supported")
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def diff(self, index: int) -> "Polynomial":
        """Formal partial derivative with respect to variable ``index``."""
        if not isinstance(index, int) or not 0 <= index < self.nvars:
            raise RejectedInput(f"variable index {index!r} out of range for {self.nvars} variables")
        shift = EXP_BITS * index
        unit = 1 << shift
        out = {}
        for k, v in self._terms.items():
            e = (k >> shift) & _MASK
            if e:
                out[k - unit] = v * e
        return Polynomial._raw(self.nvars, out)

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise RejectedInput(
                f"point has {len(point)} coordinates, polynomial has {self.nvars} variables"
            )
        pt = [as_rational(x) for x in point]
        powers: dict = {}
        total = Fraction(0)
        for k, v in self._terms.items():
            term = v
            for i in range(self.nvars):
                e = (k >> (EXP_BITS * i)) & _MASK
                if e:
                    p = powers.get((i, e))
                    if p is None:
                        p = powers[(i, e)] = pt[i] ** e
                    term *= p
            total += term
        return total

    def reindex(self, nvars: int, mapping: Sequence[int]) -> "Polynomial":
        """Rename variable ``i`` to ``mapping[i]`` in a ring of ``nvars`` variables."""
        if len(mapping) != self.nvars:
            raise RejectedInput("reindex map must cover every variable")
        if len(set(mapping)) != len(mapping) or any(not 0 <= j < nvars for j in mapping):
            raise RejectedInput(f"reindex map {tuple(mapping)} is not injective into {nvars} variables")
        out = {}
        for k, v in self._terms.items():
            mono = unpack(k, self.nvars)
            nk = 0
            for i, e in enumerate(mono):
                nk |= e << (EXP_BITS * mapping[i])
            out[nk] = v
        return Polynomial._raw(nvars, out)

    def coefficient_vector(self) -> dict:
        """Packed monomial key -> coefficient (for linear algebra)."""
        return dict(self._terms)

    # -- identity -----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def to_text(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = [f"x{i}" for i in range(self.nvars)]
        if not self._terms:
            return "0"
        parts = []
        for mono, coef in self.terms.items():
            factors = []
            for name, e in zip(names, mono):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            mag = abs(coef)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            parts.append(("-" if coef < 0 else "+", body))
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"Polynomial({self.to_text()!r})"


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    if not isinstance(a, Polynomial) or not isinstance(b, Polynomial):
        raise RejectedInput("poly_arith expects two polynomials")
    a._check(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise RejectedInput(f"unknown operation {op!r}")


def poly_diff(p: Polynomial, var_index: int) -> Polynomial:
    return p.diff(var_index)


def poly_eval(p: Polynomial, point: Sequence) -> Fraction:
    return p.evaluate(point)


def monomials_up_to(nvars: int, max_degree: int) -> list:
    """All exponent tuples of total degree <= max_degree, ascending graded-lex."""
    out = []

    def rec(prefix, remaining, left):
        if left == 0:
            out.append(tuple(prefix))
            return
        for e in range(remaining + 1):
            rec(prefix + [e], remaining - e, left - 1)

    rec([], max_degree, nvars)
    out.sort(key=_grlex_key)
    return out


def random_polynomial(
    rng,
    nvars: int,
    max_degree: int = 3,
    max_terms: int = 4,
    max_coeff: int = 100,
    allow_zero: bool = True,
) -> Polynomial:
    """Random sparse polynomial with coefficients p/q, |p|, q <= max_coeff."""
    n = rng.randint(0 if allow_zero else 1, max_terms)
    terms: dict = {}
    for _ in range(n):
        e = [0] * nvars
        if nvars:
            for _ in range(rng.randint(0, max_degree)):
                e[rng.randrange(nvars)] += 1
        coef = Fraction(rng.randint(-max_coeff, max_coeff), rng.randint(1, max_coeff))
        terms[tuple(e)] = terms.get(tuple(e), 0) + coef
    p = Polynomial(nvars, terms)
    if not allow_zero and p.is_zero():
        return Polynomial.constant(nvars, 1)
    return p


def sum_polys(polys: Iterable[Polynomial], nvars: int) -> Polynomial:
    out: dict = {}
    for p in polys:
        for k, v in p._terms.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return Polynomial._raw(nvars, out)
