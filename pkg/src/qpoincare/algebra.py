"""Sparse linear combinations of monomials and their tensor products.

Every algebra in this package has a monomial basis on which products are
again a single monomial times a power of w (or zero).  Subclasses supply
``key_mul`` and the unit key; everything else is shared.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterator

from .scalars import CycScalar, ParamScalar, as_param_scalar, field


class Element:
    """Finite ParamScalar-linear combination of basis keys."""

    __slots__ = ("p", "terms", "_hash")

    def __init__(self, p: int, terms: dict | None = None):
        self.p = p
        self.terms = {k: v for k, v in (terms or {}).items() if v}
        self._hash = None

    # subclasses --------------------------------------------------------
    @staticmethod
    def key_mul(p: int, k1, k2):
        """Return (w exponent, key) for the product of two keys, or None for zero."""
        raise NotImplementedError

    @staticmethod
    def one_key(p: int):
        raise NotImplementedError

    @staticmethod
    def render_key(p: int, key) -> str:
        return repr(key)

    @staticmethod
    def sort_key(key):
        return key

    # construction ------------------------------------------------------
    def _new(self, terms: dict):
        return type(self)(self.p, terms)

    @classmethod
    def monomial(cls, p: int, key, coeff=1):
        return cls(p, {key: as_param_scalar(field(p), coeff)})

    @classmethod
    def one(cls, p: int):
        return cls.monomial(p, cls.one_key(p))

    @classmethod
    def zero(cls, p: int):
        return cls(p)

    @property
    def field(self):
        return field(self.p)

    def _key_mul(self, k1, k2):
        return type(self).key_mul(self.p, k1, k2)

    def _unit_key(self):
        return type(self).one_key(self.p)

    # linear structure ----------------------------------------------------
    def _check(self, other) -> None:
        if type(other) is not type(self) or other.p != self.p:
            raise TypeError(f"cannot combine {type(self).__name__}(p={self.p}) with "
                            f"{type(other).__name__}(p={getattr(other, 'p', None)})")

    def _as_element(self, other):
        if isinstance(other, Element):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, CycScalar, ParamScalar)):
            return self._new({self._unit_key(): as_param_scalar(self.field, other)})
        return None

    def __add__(self, other):
        o = self._as_element(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for k, v in o.terms.items():
            terms[k] = terms[k] + v if k in terms else v
        return self._new(terms)

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        o = self._as_element(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._as_element(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def scale(self, c):
        c = as_param_scalar(self.field, c)
        if c.is_constant():
            c0 = c.constant()
            return self._new({k: v * c0 for k, v in self.terms.items()})
        return self._new({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycScalar, ParamScalar)):
            return self.scale(other)
        if not isinstance(other, Element):
            return NotImplemented
        self._check(other)
        out: dict = {}
        key_mul = self._key_mul
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                r = key_mul(k1, k2)
                if r is None:
                    continue
                e, k = r
                c = c1 * c2
                if e:
                    c = c.mul_w_power(e)
                if k in out:
                    out[k] = out[k] + c
                else:
                    out[k] = c
        return self._new(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, CycScalar, ParamScalar)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / Fraction(other))
        if isinstance(other, CycScalar):
            return self.scale(other.inverse())
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined")
        result = type(self).one(self.p) if not isinstance(self, Tensor) else self._tensor_one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # queries -------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coefficient(self, key) -> ParamScalar:
        return self.terms.get(key, ParamScalar(self.field))

    def __iter__(self) -> Iterator:
        return iter(sorted(self.terms.items(), key=lambda kv: type(self).sort_key(kv[0])))

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, CycScalar, ParamScalar)):
            other = self._as_element(other)
        if not isinstance(other, Element):
            return NotImplemented
        return type(self) is type(other) and self.p == other.p and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((type(self).__name__, self.p, frozenset(self.terms.items())))
        return self._hash

    def map_coefficients(self, f: Callable[[ParamScalar], ParamScalar]):
        return self._new({k: f(v) for k, v in self.terms.items()})

    def subs(self, name: str, value):
        return self.map_coefficients(lambda c: c.subs(name, value))

    def parameters(self) -> set[str]:
        out: set[str] = set()
        for v in self.terms.values():
            out |= v.parameters()
        return out

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key, coeff in self:
            mono = type(self).render_key(self.p, key)
            c = coeff.render()
            if len(coeff.terms) > 1:
                c = f"({c})"
            if mono == "1":
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
        return f"{type(self).__name__}(p={self.p}, {self.render()})"

    def __str__(self) -> str:
        return self.render()


class Tensor(Element):
    """Tensor product of elements; keys are tuples of leg keys."""

    __slots__ = ("legs",)

    def __init__(self, p: int, legs: tuple[type, ...], terms: dict | None = None):
        super().__init__(p, terms)
        self.legs = legs

    def _new(self, terms: dict):
        return Tensor(self.p, self.legs, terms)

    def _key_mul(self, k1, k2):
        e = 0
        out = []
        for leg, a, b in zip(self.legs, k1, k2):
            r = leg.key_mul(self.p, a, b)
            if r is None:
                return None
            e += r[0]
            out.append(r[1])
        return e, tuple(out)

    def _unit_key(self):
        return tuple(leg.one_key(self.p) for leg in self.legs)

    def _tensor_one(self):
        return Tensor(self.p, self.legs, {self._unit_key(): as_param_scalar(self.field, 1)})

    def _check(self, other) -> None:
        if not isinstance(other, Tensor) or other.legs != self.legs or other.p != self.p:
            raise TypeError("tensor legs do not match")

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, CycScalar, ParamScalar)):
            other = self._as_element(other)
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.legs == other.legs and self.p == other.p and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.legs, self.p, frozenset(self.terms.items())))

    def __iter__(self):
        def order(kv):
            return tuple(leg.sort_key(k) for leg, k in zip(self.legs, kv[0]))
        return iter(sorted(self.terms.items(), key=order))

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key, coeff in self:
            mono = " (x) ".join(leg.render_key(self.p, k) for leg, k in zip(self.legs, key))
            c = coeff.render()
            parts.append(f"({c})*[{mono}]")
        return " + ".join(parts)

    def __repr__(self) -> str:
        names = "(x)".join(leg.__name__ for leg in self.legs)
        return f"Tensor[{names}](p={self.p}, {self.render()})"


def tensor(*factors: Element) -> Tensor:
    """x1 (x) x2 (x) ... as a Tensor."""
    p = factors[0].p
    legs = tuple(type(f) if not isinstance(f, Tensor) else None for f in factors)
    if None in legs:
        raise TypeError("nest tensors with tensor_concat")
    terms: dict = {(): as_param_scalar(field(p), 1)}
    for f in factors:
        new: dict = {}
        for k, c in terms.items():
            for kf, cf in f.terms.items():
                key = k + (kf,)
                v = c * cf
                new[key] = new[key] + v if key in new else v
        terms = new
    return Tensor(p, legs, terms)


def tensor_concat(x: Tensor, y: Tensor) -> Tensor:
    terms: dict = {}
    for k1, c1 in x.terms.items():
        for k2, c2 in y.terms.items():
            key = k1 + k2
            v = c1 * c2
            terms[key] = terms[key] + v if key in terms else v
    return Tensor(x.p, x.legs + y.legs, terms)


def map_leg(t: Tensor, index: int, f: Callable, new_leg: type | None = None) -> Tensor:
    """Apply a linear map on one leg; f takes a monomial key and returns an Element, a Tensor or a scalar.

    A scalar result removes the leg; a Tensor result splices its legs in place.
    """
    p = t.p
    fld = field(p)
    out: dict = {}
    legs_out = None
    for key, c in t.terms.items():
        image = f(key[index])
        if isinstance(image, Tensor):
            parts = image.terms.items()
            legs = t.legs[:index] + image.legs + t.legs[index + 1:]
            wrap = lambda kk: kk  # noqa: E731
        elif isinstance(image, Element):
            parts = image.terms.items()
            legs = t.legs[:index] + (type(image),) + t.legs[index + 1:]
            wrap = lambda kk: (kk,)  # noqa: E731
        else:
            parts = [((), as_param_scalar(fld, image))]
            legs = t.legs[:index] + t.legs[index + 1:]
            wrap = lambda kk: kk  # noqa: E731
        if legs_out is None:
            legs_out = legs
        elif legs_out != legs and parts:
            raise TypeError("inconsistent leg types produced by map_leg")
        for k2, c2 in parts:
            if not c2:
                continue
            nk = key[:index] + wrap(k2) + key[index + 1:]
            v = c * c2
            out[nk] = out[nk] + v if nk in out else v
    if legs_out is None:
        legs_out = t.legs[:index] + ((new_leg,) if new_leg else ()) + t.legs[index + 1:]
    if len(legs_out) == 0:
        return out.get((), ParamScalar(fld))
    return Tensor(p, legs_out, out)


def contract(t: Tensor, cls: type | None = None) -> Element:
    """Multiply the legs of a tensor together (all legs must be the same algebra)."""
    leg = t.legs[0]
    if any(l is not leg for l in t.legs):
        raise TypeError("contract needs equal legs")
    p = t.p
    out: dict = {}
    for key, c in t.terms.items():
        e, acc = 0, key[0]
        dead = False
        for k in key[1:]:
            r = leg.key_mul(p, acc, k)
            if r is None:
                dead = True
                break
            e += r[0]
            acc = r[1]
        if dead:
            continue
        v = c.mul_w_power(e) if e else c
        out[acc] = out[acc] + v if acc in out else v
    return leg(p, out)


def flatten(t: Tensor) -> Element:
    """A single-leg tensor as a plain element."""
    if len(t.legs) != 1:
        raise TypeError("flatten needs one leg")
    return t.legs[0](t.p, {k[0]: v for k, v in t.terms.items()})
