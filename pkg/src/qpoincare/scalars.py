"""Exact scalars: the cyclotomic field Q(w), w = exp(2 pi i / 4p), and
polynomials in a fixed set of commuting real parameters over it.

Inside Q(w) we have q = w^4 (a primitive p-th root of unity), i = w^p and
the square root q^(1/2) = w^2.
"""

from __future__ import annotations

import cmath
import math
import threading
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

# Declared real parameters, in canonical order.
PARAMETERS: tuple[str, ...] = ("lambda+", "lambda-", "lambda'+", "lambda'-", "chi+", "chi-")
_PARAM_INDEX = {name: j for j, name in enumerate(PARAMETERS)}
_NPARAMS = len(PARAMETERS)

Rational = Union[int, Fraction]


def _poly_divmod_exact(num: list[int], den: list[int]) -> list[int]:
    # integer polynomials, lowest degree first, den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for j in range(len(out) - 1, -1, -1):
        c = num[j + len(den) - 1]
        out[j] = c
        if c:
            for t, d in enumerate(den):
                num[j + t] -= c * d
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divmod_exact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


class CyclotomicField:
    """The field Q(w) with w a primitive 4p-th root of unity, p odd."""

    def __init__(self, p: int):
        if p < 3 or p % 2 == 0:
            raise ValueError(f"p must be an odd integer >= 3, got {p}")
        self.p = p
        self.order = 4 * p
        modulus = cyclotomic_polynomial(self.order)
        self.degree = d = len(modulus) - 1
        # power_table[j] = w^j reduced, for j in [0, 4p)
        table = []
        vec = [1] + [0] * (d - 1)
        for _ in range(self.order):
            table.append(tuple(vec))
            top = vec[-1]
            vec = [0] + vec[:-1]
            if top:
                vec = [v - top * c for v, c in zip(vec, modulus[:-1])]
        self.power_table = tuple(table)
        self._embed_powers = tuple(cmath.exp(2j * math.pi * j / self.order) for j in range(d))
        self.units = tuple(a for a in range(1, self.order) if math.gcd(a, self.order) == 1)
        self.zero = CycScalar(self, (0,) * d, 1)
        self.one = CycScalar(self, (1,) + (0,) * (d - 1), 1)
        self.w = self.w_power(1)
        self.q = self.w_power(4)
        self.i = self.w_power(p)
        self.sqrt_q = self.w_power(2)

    def __repr__(self) -> str:
        return f"CyclotomicField(p={self.p})"

    def __reduce__(self):
        return (field, (self.p,))

    def w_power(self, j: int) -> CycScalar:
        return CycScalar(self, self.power_table[j % self.order], 1)

    def q_power(self, j: int) -> CycScalar:
        return self.w_power(4 * j)

    def half_q_power(self, j: int) -> CycScalar:
        """q^(j/2), using q^(1/2) = w^2."""
        return self.w_power(2 * j)

    def rational(self, x: Rational) -> CycScalar:
        x = Fraction(x)
        return CycScalar(self, (x.numerator,) + (0,) * (self.degree - 1), x.denominator)


@lru_cache(maxsize=None)
def field(p: int) -> CyclotomicField:
    return CyclotomicField(p)


class CycScalar:
    """Exact element num(w)/den of Q(w); num is reduced modulo the cyclotomic polynomial."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, fld: CyclotomicField, num: tuple[int, ...], den: int = 1):
        g = math.gcd(den, *num)
        if den < 0:
            g = -g
        if g not in (0, 1):
            num = tuple(c // g for c in num)
            den //= g
        if not any(num):
            den = 1
        self.field = fld
        self.num = num
        self.den = den
        self._hash = None

    # -- coercion -------------------------------------------------------
    def _coerce(self, other) -> CycScalar | None:
        if isinstance(other, CycScalar):
            if other.field is not self.field:
                raise ValueError("scalars from different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        return None

    # -- ring operations ------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return CycScalar(self.field, tuple(a + b for a, b in zip(self.num, o.num)), self.den)
        d1, d2 = self.den, o.den
        return CycScalar(self.field, tuple(a * d2 + b * d1 for a, b in zip(self.num, o.num)), d1 * d2)

    __radd__ = __add__

    def __neg__(self) -> CycScalar:
        return CycScalar(self.field, tuple(-a for a in self.num), self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.num, o.num
        d = len(a)
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        res = prod[:d]
        table = self.field.power_table
        for j in range(d, 2 * d - 1):
            c = prod[j]
            if c:
                row = table[j]
                for t in range(d):
                    if row[t]:
                        res[t] += c * row[t]
        return CycScalar(self.field, tuple(res), self.den * o.den)

    __rmul__ = __mul__

    def mul_w_power(self, j: int) -> CycScalar:
        """self * w^j, computed by re-indexing."""
        fld = self.field
        order, table, d = fld.order, fld.power_table, fld.degree
        res = [0] * d
        for i, c in enumerate(self.num):
            if c:
                row = table[(i + j) % order]
                for t in range(d):
                    if row[t]:
                        res[t] += c * row[t]
        return CycScalar(fld, tuple(res), self.den)

    def _galois(self, a: int) -> CycScalar:
        fld = self.field
        order, table, d = fld.order, fld.power_table, fld.degree
        res = [0] * d
        for i, c in enumerate(self.num):
            if c:
                row = table[(a * i) % order]
                for t in range(d):
                    if row[t]:
                        res[t] += c * row[t]
        return CycScalar(fld, tuple(res), self.den)

    def conjugate(self) -> CycScalar:
        """Complex conjugation w -> w^-1."""
        return self._galois(-1)

    def inverse(self) -> CycScalar:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        others = self.field.one
        for a in self.field.units[1:]:
            others = others * self._galois(a)
        norm = self * others
        if any(norm.num[1:]):
            raise ArithmeticError("field norm is not rational")
        return others * Fraction(norm.den, norm.num[0])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self * (Fraction(1) / Fraction(other))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> CycScalar:
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.field.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- predicates ------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self) -> bool:
        return any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def is_real(self) -> bool:
        return self == self.conjugate()

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.field.rational(other)
        if not isinstance(other, CycScalar):
            return NotImplemented
        return self.field is other.field and self.den == other.den and self.num == other.num

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field.p, self.num, self.den))
        return self._hash

    # -- output ----------------------------------------------------------
    def __complex__(self) -> complex:
        powers = self.field._embed_powers
        return sum((c * powers[j] for j, c in enumerate(self.num) if c), 0j) / self.den

    def render(self) -> str:
        """Canonical text: integer polynomial in w, over a positive denominator."""
        terms = []
        for j in range(len(self.num) - 1, -1, -1):
            c = self.num[j]
            if not c:
                continue
            mono = "" if j == 0 else ("w" if j == 1 else f"w^{j}")
            mag = abs(c)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        text = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        if self.den != 1:
            text = f"({text})/{self.den}"
        elif len(terms) > 1:
            text = f"({text})"
        return text

    def __repr__(self) -> str:
        return f"CycScalar(p={self.field.p}, {self.render()})"

    __str__ = render


# ---------------------------------------------------------------------------
# q-combinatorics


_table_lock = threading.Lock()


@lru_cache(maxsize=None)
def _q_int_cached(p: int, n: int) -> CycScalar:
    fld = field(p)
    n %= p
    total = fld.zero
    for j in range(n):
        total = total + fld.q_power(n - 1 - 2 * j)
    return total


def q_int(p: int, n: int) -> CycScalar:
    """The q-number [n] = (q^n - q^-n)/(q - q^-1)."""
    # [n] has period p in n, and the sum formula is exact for 0 <= n < p
    return _q_int_cached(p, n % p)


@lru_cache(maxsize=None)
def _q_fact_table(p: int) -> tuple[tuple[CycScalar, ...], tuple[CycScalar, ...]]:
    with _table_lock:
        facts = [field(p).one]
        for n in range(1, p):
            facts.append(facts[-1] * q_int(p, n))
        inverses = tuple(f.inverse() for f in facts)
        return tuple(facts), inverses


def q_fact(p: int, n: int) -> CycScalar:
    """[n]! for 0 <= n <= p-1."""
    if not 0 <= n <= p - 1:
        raise ValueError(f"q_fact needs 0 <= n <= p-1, got n={n}, p={p}")
    return _q_fact_table(p)[0][n]


def q_fact_inv(p: int, n: int) -> CycScalar:
    """1/[n]! for 0 <= n <= p-1."""
    if not 0 <= n <= p - 1:
        raise ValueError(f"q_fact_inv needs 0 <= n <= p-1, got n={n}, p={p}")
    return _q_fact_table(p)[1][n]


def q_binom(p: int, n: int, m: int, sign: int) -> CycScalar:
    """Signed q-binomial q^(sign m(m-n)) [n]!/([n-m]! [m]!) appearing in the coproduct of powers."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if not 0 <= m <= n <= p - 1:
        raise ValueError(f"q_binom needs 0 <= m <= n <= p-1, got n={n}, m={m}, p={p}")
    return (q_fact(p, n) * q_fact_inv(p, n - m) * q_fact_inv(p, m)).mul_w_power(4 * sign * m * (m - n))


# ---------------------------------------------------------------------------
# parameter polynomials


def _exp_key(exps: Mapping[str, int]) -> tuple[int, ...]:
    key = [0] * _NPARAMS
    for name, e in exps.items():
        if name not in _PARAM_INDEX:
            raise KeyError(f"undeclared parameter {name!r}; declared: {PARAMETERS}")
        key[_PARAM_INDEX[name]] = e
    return tuple(key)


_ZERO_EXP = (0,) * _NPARAMS


class ParamScalar:
    """Polynomial in the declared real parameters with CycScalar coefficients."""

    __slots__ = ("field", "terms", "_hash")

    def __init__(self, fld: CyclotomicField, terms: Mapping[tuple[int, ...], CycScalar] | None = None):
        self.field = fld
        self.terms = {k: v for k, v in (terms or {}).items() if v}
        self._hash = None

    @classmethod
    def const(cls, fld: CyclotomicField, c) -> ParamScalar:
        if isinstance(c, (int, Fraction)):
            c = fld.rational(c)
        return cls(fld, {_ZERO_EXP: c})

    @classmethod
    def param(cls, fld: CyclotomicField, name: str, power: int = 1) -> ParamScalar:
        return cls(fld, {_exp_key({name: power}): fld.one})

    def _coerce(self, other) -> ParamScalar | None:
        if isinstance(other, ParamScalar):
            return other
        if isinstance(other, (CycScalar, int, Fraction)):
            return ParamScalar.const(self.field, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for k, v in o.terms.items():
            terms[k] = terms[k] + v if k in terms else v
        return ParamScalar(self.field, terms)

    __radd__ = __add__

    def __neg__(self) -> ParamScalar:
        return ParamScalar(self.field, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (CycScalar, int, Fraction)):
            return ParamScalar(self.field, {k: v * other for k, v in self.terms.items()})
        if not isinstance(other, ParamScalar):
            return NotImplemented
        if len(other.terms) == 1 and _ZERO_EXP in other.terms:
            return self * other.terms[_ZERO_EXP]
        if len(self.terms) == 1 and _ZERO_EXP in self.terms:
            return other * self.terms[_ZERO_EXP]
        terms: dict[tuple[int, ...], CycScalar] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                v = v1 * v2
                terms[k] = terms[k] + v if k in terms else v
        return ParamScalar(self.field, terms)

    __rmul__ = __mul__

    def mul_w_power(self, j: int) -> ParamScalar:
        if j % self.field.order == 0:
            return self
        return ParamScalar(self.field, {k: v.mul_w_power(j) for k, v in self.terms.items()})

    def __truediv__(self, other):
        if isinstance(other, ParamScalar):
            if not other.is_constant():
                raise ZeroDivisionError("division by a non-constant parameter polynomial")
            other = other.constant()
        if isinstance(other, (int, Fraction)):
            other = self.field.rational(other)
        if not isinstance(other, CycScalar):
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, n: int) -> ParamScalar:
        if n < 0:
            raise ValueError("negative power of a parameter polynomial")
        result = ParamScalar.const(self.field, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> ParamScalar:
        """Conjugate coefficients; parameters are real and stay fixed."""
        return ParamScalar(self.field, {k: v.conjugate() for k, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(k == _ZERO_EXP for k in self.terms)

    def constant(self) -> CycScalar:
        return self.terms.get(_ZERO_EXP, self.field.zero)

    def is_real(self) -> bool:
        return all(v.is_real() for v in self.terms.values())

    def parameters(self) -> set[str]:
        return {PARAMETERS[j] for k in self.terms for j, e in enumerate(k) if e}

    def degree_in(self, name: str) -> int:
        j = _PARAM_INDEX[name]
        return max((k[j] for k in self.terms), default=0)

    def subs(self, name: str, value) -> ParamScalar:
        """Substitute a parameter by a scalar or another ParamScalar."""
        j = _PARAM_INDEX[name]
        value = self._coerce(value)
        out = ParamScalar(self.field)
        powers: dict[int, ParamScalar] = {}
        for k, v in self.terms.items():
            e = k[j]
            if e not in powers:
                powers[e] = value ** e
            rest = k[:j] + (0,) + k[j + 1:]
            out = out + ParamScalar(self.field, {rest: v}) * powers[e]
        return out

    def diff(self, name: str) -> ParamScalar:
        j = _PARAM_INDEX[name]
        terms = {}
        for k, v in self.terms.items():
            if k[j]:
                terms[k[:j] + (k[j] - 1,) + k[j + 1:]] = v * k[j]
        return ParamScalar(self.field, terms)

    def linear_in_single_parameter(self) -> tuple[str, CycScalar, CycScalar] | None:
        """If self = a*x + b for one parameter x and constants a != 0, b, return (x, a, b)."""
        name = None
        a = b = self.field.zero
        for k, v in self.terms.items():
            if k == _ZERO_EXP:
                b = v
                continue
            nz = [j for j, e in enumerate(k) if e]
            if len(nz) != 1 or k[nz[0]] != 1 or (name is not None and PARAMETERS[nz[0]] != name):
                return None
            name, a = PARAMETERS[nz[0]], v
        return None if name is None else (name, a, b)

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.field is o.field and self.terms == o.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def sort_key(self) -> tuple:
        return tuple(sorted((k, v.num, v.den) for k, v in self.terms.items()))

    def evaluate(self, assignment: Mapping[str, complex] | None = None) -> complex:
        return embed_numeric(self, assignment or {})

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, reverse=True):
            coeff = self.terms[k]
            mono = "*".join(
                PARAMETERS[j] if e == 1 else f"{PARAMETERS[j]}^{e}" for j, e in enumerate(k) if e
            )
            c = coeff.render()
            if not mono:
                parts.append(c)
            elif c == "1":
                parts.append(mono)
            elif c == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        text = parts[0]
        for part in parts[1:]:
            text += f" - {part[1:]}" if part.startswith("-") else f" + {part}"
        return text

    def __repr__(self) -> str:
        return f"ParamScalar(p={self.field.p}, {self.render()})"

    __str__ = render


def param(p: int, name: str) -> ParamScalar:
    return ParamScalar.param(field(p), name)


def const(p: int, c) -> ParamScalar:
    return ParamScalar.const(field(p), c)


def as_param_scalar(fld: CyclotomicField, c) -> ParamScalar:
    if isinstance(c, ParamScalar):
        return c
    return ParamScalar.const(fld, c)


def embed_numeric(x, assignment: Mapping[str, complex] | None = None) -> complex:
    """Evaluate a scalar numerically under w -> exp(2 pi i / 4p)."""
    assignment = assignment or {}
    if isinstance(x, CycScalar):
        return complex(x)
    if isinstance(x, (int, Fraction)):
        return complex(x)
    if not isinstance(x, ParamScalar):
        raise TypeError(f"cannot embed {type(x).__name__}")
    total = 0j
    for k, v in x.terms.items():
        term = complex(v)
        for j, e in enumerate(k):
            if e:
                name = PARAMETERS[j]
                if name not in assignment:
                    raise KeyError(f"no numeric value assigned to parameter {name!r}")
                term *= complex(assignment[name]) ** e
        total += term
    return total


def sum_scalars(fld: CyclotomicField, items: Iterable) -> ParamScalar:
    total = ParamScalar(fld)
    for item in items:
        total = total + item
    return total
