"""The dual quantum algebra U_q(e(1,1)) at q^p = 1.

Generators p+, p-, kappa and the central P+- = p+-^p, with

    p+ p- = p- p+,   p+- kappa = q^(-+1) kappa p+-,   kappa^p = 1.

Monomials are kept in PBW order P+^t P-^s p+^n p-^m kappa^k.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

from .algebra import Element, Tensor, map_leg, tensor
from .scalars import ParamScalar, field

UMonomial = tuple  # (t, s, n, m, k)


@lru_cache(maxsize=None)
def _u_key_mul(p: int, k1: UMonomial, k2: UMonomial):
    t1, s1, n1, m1, c1 = k1
    t2, s2, n2, m2, c2 = k2
    # kappa^c1 p+^n2 p-^m2 = q^(c1 (n2 - m2)) p+^n2 p-^m2 kappa^c1
    qexp = c1 * (n2 - m2)
    n, m = n1 + n2, m1 + m2
    t, s = t1 + t2 + n // p, s1 + s2 + m // p
    return (4 * qexp) % (4 * p), (t, s, n % p, m % p, (c1 + c2) % p)


def render_u_key(key: UMonomial) -> str:
    parts = []
    for name, e in zip(("P+", "P-", "p+", "p-", "kappa"), key):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return " ".join(parts) if parts else "1"


class UElement(Element):
    """Element of U_q(e(1,1)) in PBW normal form."""

    __slots__ = ()

    @staticmethod
    def key_mul(p, k1, k2):
        return _u_key_mul(p, k1, k2)

    @staticmethod
    def one_key(p):
        return (0, 0, 0, 0, 0)

    @staticmethod
    def render_key(p, key):
        return render_u_key(key)

    @classmethod
    def mono(cls, p: int, t=0, s=0, n=0, m=0, k=0, coeff=1) -> UElement:
        t += n // p
        s += m // p
        return cls.monomial(p, (t, s, n % p, m % p, k % p), coeff)

    @classmethod
    def p_plus(cls, p):
        return cls.mono(p, n=1)

    @classmethod
    def p_minus(cls, p):
        return cls.mono(p, m=1)

    @classmethod
    def kappa(cls, p, k: int = 1):
        return cls.mono(p, k=k)

    @classmethod
    def P_plus(cls, p):
        return cls.mono(p, t=1)

    @classmethod
    def P_minus(cls, p):
        return cls.mono(p, s=1)


def u_mul(x: UElement, y: UElement) -> UElement:
    return x * y


def u_reduced_basis(p: int) -> list[UMonomial]:
    """PBW monomials with t = s = 0."""
    return [(0, 0, n, m, k) for n in range(p) for m in range(p) for k in range(p)]


# -- coproduct ---------------------------------------------------------------


def _tensor_of(p, *pairs):
    out = Tensor(p, (UElement, UElement))
    for coeff, left, right in pairs:
        out = out + tensor(left, right).scale(coeff)
    return out


@lru_cache(maxsize=None)
def generator_coproduct(p: int, name: str) -> Tensor:
    one = UElement.one(p)
    kap, kinv = UElement.kappa(p), UElement.kappa(p, -1)
    if name == "p+":
        g = UElement.p_plus(p)
        return _tensor_of(p, (1, g, kap), (1, kinv, g))
    if name == "p-":
        g = UElement.p_minus(p)
        return _tensor_of(p, (1, g, kap), (1, kinv, g))
    if name == "kappa":
        return _tensor_of(p, (1, kap, kap))
    if name in ("P+", "P-"):
        g = UElement.P_plus(p) if name == "P+" else UElement.P_minus(p)
        return _tensor_of(p, (1, g, one), (1, one, g))
    raise KeyError(name)


@lru_cache(maxsize=None)
def _generator_power_coproduct(p: int, name: str, e: int) -> Tensor:
    if e == 0:
        return Tensor(p, (UElement, UElement), {((0,) * 5, (0,) * 5): ParamScalar.const(field(p), 1)})
    if name in ("P+", "P-"):
        # primitive: binomial expansion
        idx = 0 if name == "P+" else 1
        terms = {}
        for j in range(e + 1):
            left = [0] * 5
            right = [0] * 5
            left[idx], right[idx] = j, e - j
            terms[(tuple(left), tuple(right))] = ParamScalar.const(field(p), comb(e, j))
        return Tensor(p, (UElement, UElement), terms)
    return _generator_power_coproduct(p, name, e - 1) * generator_coproduct(p, name)


@lru_cache(maxsize=None)
def _u_key_coproduct(p: int, key: UMonomial) -> Tensor:
    t, s, n, m, k = key
    out = _generator_power_coproduct(p, "P+", t)
    for name, e in (("P-", s), ("p+", n), ("p-", m), ("kappa", k)):
        if e:
            out = out * _generator_power_coproduct(p, name, e)
    return out


def u_coproduct(x: UElement) -> Tensor:
    out = Tensor(x.p, (UElement, UElement))
    for key, c in x.terms.items():
        out = out + _u_key_coproduct(x.p, key).scale(c)
    return out


# -- counit, antipode, star ----------------------------------------------------


def u_counit_key(key: UMonomial) -> int:
    return 1 if key[:4] == (0, 0, 0, 0) else 0


def u_counit(x: UElement) -> ParamScalar:
    total = ParamScalar(x.field)
    for key, c in x.terms.items():
        if u_counit_key(key):
            total = total + c
    return total


@lru_cache(maxsize=None)
def _u_key_antipode(p: int, key: UMonomial) -> UElement:
    t, s, n, m, k = key
    fld = field(p)
    sp = UElement.p_plus(p).scale(-fld.q)
    sm = UElement.p_minus(p).scale(-fld.q_power(-1))
    sP = -UElement.P_plus(p)
    sPm = -UElement.P_minus(p)
    return UElement.kappa(p, -k) * sm ** m * sp ** n * sPm ** s * sP ** t


def u_antipode(x: UElement) -> UElement:
    out = UElement(x.p)
    for key, c in x.terms.items():
        out = out + _u_key_antipode(x.p, key).scale(c)
    return out


@lru_cache(maxsize=None)
def _u_key_star(p: int, key: UMonomial) -> UElement:
    t, s, n, m, k = key
    return (UElement.kappa(p, k) * UElement.mono(p, m=m) * UElement.mono(p, n=n)
            * UElement.mono(p, s=s) * UElement.mono(p, t=t))


def u_star(x: UElement) -> UElement:
    """Antilinear anti-involution fixing p+-, kappa and P+-."""
    out = UElement(x.p)
    for key, c in x.terms.items():
        out = out + _u_key_star(x.p, key).scale(c.conjugate())
    return out


def epsilon_ops(p: int, sign: int) -> UElement:
    """epsilon_sign = -q^(-sign/2) p_sign kappa^-1."""
    fld = field(p)
    g = UElement.p_plus(p) if sign > 0 else UElement.p_minus(p)
    return (g * UElement.kappa(p, -1)).scale(-fld.half_q_power(-sign))


def casimir(p: int) -> UElement:
    """The central element p+ p-."""
    return UElement.p_plus(p) * UElement.p_minus(p)


# -- tensor helpers -------------------------------------------------------------


def apply_u_counit_leg(t: Tensor, index: int):
    return map_leg(t, index, u_counit_key)


def apply_u_coproduct_leg(t: Tensor, index: int) -> Tensor:
    return map_leg(t, index, lambda key: _u_key_coproduct(t.p, key))


def apply_u_antipode_leg(t: Tensor, index: int) -> Tensor:
    return map_leg(t, index, lambda key: _u_key_antipode(t.p, key))


def u_star_tensor(t: Tensor) -> Tensor:
    out = Tensor(t.p, t.legs)
    for key, c in t.terms.items():
        out = out + tensor(*[_u_key_star(t.p, k) for k in key]).scale(c.conjugate())
    return out


__all__ = [
    "UElement", "u_mul", "u_coproduct", "u_counit", "u_antipode", "u_star", "epsilon_ops",
    "casimir", "u_reduced_basis", "generator_coproduct",
]
