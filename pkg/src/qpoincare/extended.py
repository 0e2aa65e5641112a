"""The full group algebra: reduced monomials times exponential-polynomials
in the central real coordinates z+, z-.

A z-part key is (a, b, u, v) standing for z+^a z-^b exp(u z+ + v z-), where
u and v are ParamScalars.  An EElement key is (reduced monomial, z-part key).
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

from .algebra import Element, Tensor, map_leg, tensor
from .reduced import (
    AElement,
    _a_key_antipode,
    _a_key_coproduct,
    _a_key_star,
    a_counit_key,
    b_plus_minus,
    render_a_key,
)
from .scalars import ParamScalar, as_param_scalar, field


def zero_exponent(p: int) -> ParamScalar:
    return ParamScalar(field(p))


def z_key(p: int, a: int = 0, b: int = 0, u=None, v=None) -> tuple:
    fld = field(p)
    u = ParamScalar(fld) if u is None else as_param_scalar(fld, u)
    v = ParamScalar(fld) if v is None else as_param_scalar(fld, v)
    return (a, b, u, v)


@lru_cache(maxsize=None)
def _z_key_mul(k1, k2):
    return (k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2], k1[3] + k2[3])


def _z_sort(key):
    return (key[0], key[1], key[2].sort_key(), key[3].sort_key())


def render_z_key(key) -> str:
    a, b, u, v = key
    parts = []
    for name, e in (("z+", a), ("z-", b)):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    lin = []
    for name, c in (("z+", u), ("z-", v)):
        if c:
            lin.append(f"({c.render()})*{name}")
    if lin:
        parts.append("exp(" + " + ".join(lin) + ")")
    return " ".join(parts) if parts else "1"


class ExpPoly(Element):
    """Exponential-polynomial function of (z+, z-)."""

    __slots__ = ()

    @staticmethod
    def key_mul(p, k1, k2):
        return 0, _z_key_mul(k1, k2)

    @staticmethod
    def one_key(p):
        return z_key(p)

    @staticmethod
    def render_key(p, key):
        return render_z_key(key)

    @staticmethod
    def sort_key(key):
        return _z_sort(key)

    @classmethod
    def z(cls, p: int, which: int, power: int = 1) -> ExpPoly:
        return cls.monomial(p, z_key(p, power if which > 0 else 0, power if which < 0 else 0))

    @classmethod
    def exp(cls, p: int, u=None, v=None) -> ExpPoly:
        return cls.monomial(p, z_key(p, 0, 0, u, v))

    def subs(self, name, value):
        out = ExpPoly(self.p)
        for (a, b, u, v), c in self.terms.items():
            key = (a, b, u.subs(name, value), v.subs(name, value))
            out = out + ExpPoly(self.p, {key: c.subs(name, value)})
        return out


@lru_cache(maxsize=None)
def _e_key_mul(p, k1, k2):
    r = AElement.key_mul(p, k1[0], k2[0])
    if r is None:
        return None
    return r[0], (r[1], _z_key_mul(k1[1], k2[1]))


class EElement(Element):
    """Element of A(E(1,1|p)) x (exponential-polynomials in z)."""

    __slots__ = ()

    @staticmethod
    def key_mul(p, k1, k2):
        return _e_key_mul(p, k1, k2)

    @staticmethod
    def one_key(p):
        return ((0, 0, 0), z_key(p))

    @staticmethod
    def render_key(p, key):
        a = render_a_key(key[0])
        z = render_z_key(key[1])
        if z == "1":
            return a
        if a == "1":
            return z
        return f"{a} {z}"

    @staticmethod
    def sort_key(key):
        return (key[0], _z_sort(key[1]))

    @classmethod
    def from_a(cls, x: AElement) -> EElement:
        zk = z_key(x.p)
        return cls(x.p, {(k, zk): c for k, c in x.terms.items()})

    @classmethod
    def from_exppoly(cls, f: ExpPoly) -> EElement:
        return cls(f.p, {((0, 0, 0), k): c for k, c in f.terms.items()})

    @classmethod
    def lift(cls, x) -> EElement:
        if isinstance(x, EElement):
            return x
        if isinstance(x, AElement):
            return cls.from_a(x)
        if isinstance(x, ExpPoly):
            return cls.from_exppoly(x)
        raise TypeError(f"cannot lift {type(x).__name__}")

    @classmethod
    def z(cls, p, which, power=1):
        return cls.from_exppoly(ExpPoly.z(p, which, power))

    @classmethod
    def exp(cls, p, u=None, v=None):
        return cls.from_exppoly(ExpPoly.exp(p, u, v))

    def a_part(self) -> AElement:
        """The reduced part; raises if any z-dependence is present."""
        zk = z_key(self.p)
        out = {}
        for (ak, k), c in self.terms.items():
            if k != zk:
                raise ValueError("element depends on z")
            out[ak] = c
        return AElement(self.p, out)

    def z_parts(self) -> dict:
        """Group as {z-key: AElement}."""
        groups: dict = {}
        for (ak, zk), c in self.terms.items():
            groups.setdefault(zk, {})[ak] = c
        return {zk: AElement(self.p, t) for zk, t in groups.items()}

    def subs(self, name, value):
        out = EElement(self.p)
        for (ak, (a, b, u, v)), c in self.terms.items():
            key = (ak, (a, b, u.subs(name, value), v.subs(name, value)))
            out = out + EElement(self.p, {key: c.subs(name, value)})
        return out

    def diff_parameter(self, name: str) -> EElement:
        """Derivative with respect to a real parameter, including the exponents."""
        out: dict = {}

        def acc(k, c):
            if c:
                out[k] = out[k] + c if k in out else c

        for (ak, (a, b, u, v)), c in self.terms.items():
            acc((ak, (a, b, u, v)), c.diff(name))
            du, dv = u.diff(name), v.diff(name)
            if du:
                acc((ak, (a + 1, b, u, v)), c * du)
            if dv:
                acc((ak, (a, b + 1, u, v)), c * dv)
        return EElement(self.p, out)


def e_mul(x: EElement, y: EElement) -> EElement:
    return EElement.lift(x) * EElement.lift(y)


# -- derivatives and substitutions --------------------------------------------


def _diff_terms(terms: dict, which: int) -> dict:
    out: dict = {}
    for (ak, (a, b, u, v)), c in terms.items():
        e = a if which > 0 else b
        rate = u if which > 0 else v
        if e:
            k = (ak, (a - 1, b, u, v) if which > 0 else (a, b - 1, u, v))
            val = c * e
            out[k] = out[k] + val if k in out else val
        if rate:
            k = (ak, (a, b, u, v))
            val = c * rate
            out[k] = out[k] + val if k in out else val
    return out


def d_dz(x, which: int):
    """Formal partial derivative in z+ (which=+1) or z- (which=-1)."""
    if isinstance(x, ExpPoly):
        return flatten_z(d_dz(EElement.from_exppoly(x), which))
    x = EElement.lift(x)
    return EElement(x.p, _diff_terms(x.terms, which))


def flatten_z(x: EElement) -> ExpPoly:
    out = {}
    for (ak, zk), c in x.terms.items():
        if ak != (0, 0, 0):
            raise ValueError("element has a reduced part")
        out[zk] = c
    return ExpPoly(x.p, out)


@lru_cache(maxsize=None)
def _z_shift(p: int, zk) -> Tensor:
    """f(Z) with Z = z (x) 1 + 1 (x) z, for a single exponential-monomial f."""
    a, b, u, v = zk
    one = ParamScalar.const(field(p), 1)
    terms = {}
    for i in range(a + 1):
        for j in range(b + 1):
            left = ((0, 0, 0), (i, j, u, v))
            right = ((0, 0, 0), (a - i, b - j, u, v))
            terms[(left, right)] = one * (comb(a, i) * comb(b, j))
    return Tensor(p, (EElement, EElement), terms)


def shift_to_Z(f) -> Tensor:
    f = EElement.lift(f)
    out = Tensor(f.p, (EElement, EElement))
    for (ak, zk), c in f.terms.items():
        if ak != (0, 0, 0):
            raise ValueError("shift_to_Z needs a pure function of z")
        out = out + _z_shift(f.p, zk).scale(c)
    return out


def lift_tensor(t: Tensor) -> Tensor:
    """Lift a tensor of AElements to a tensor of EElements."""
    zk = z_key(t.p)
    return Tensor(t.p, tuple(EElement for _ in t.legs),
                  {tuple((k, zk) for k in key): c for key, c in t.terms.items()})


@lru_cache(maxsize=None)
def _b_lifted(p: int):
    bp = lift_tensor(b_plus_minus(p, 1))
    bm = lift_tensor(b_plus_minus(p, -1))
    return bp, bm, bp * bm


@lru_cache(maxsize=None)
def function_coproduct(p: int, zk) -> Tensor:
    """Graded coproduct of z+^a z-^b exp(u z+ + v z-)."""
    f = EElement(p, {((0, 0, 0), zk): ParamScalar.const(field(p), 1)})
    bp, bm, bpm = _b_lifted(p)
    fp = d_dz(f, 1)
    fm = d_dz(f, -1)
    fpm = d_dz(fp, -1)
    out = shift_to_Z(f)
    if fp:
        out = out + shift_to_Z(fp) * bp
    if fm:
        out = out + shift_to_Z(fm) * bm
    if fpm:
        out = out + shift_to_Z(fpm) * bpm
    return out


@lru_cache(maxsize=None)
def _e_key_coproduct(p: int, key) -> Tensor:
    ak, zk = key
    return lift_tensor(_a_key_coproduct(p, ak)) * function_coproduct(p, zk)


def e_coproduct(x) -> Tensor:
    x = EElement.lift(x)
    out = Tensor(x.p, (EElement, EElement))
    for key, c in x.terms.items():
        out = out + _e_key_coproduct(x.p, key).scale(c)
    return out


def e_key_counit(key) -> int:
    ak, (a, b, _, _) = key
    return 1 if a_counit_key(ak) and a == 0 and b == 0 else 0


def e_counit(x) -> ParamScalar:
    x = EElement.lift(x)
    total = ParamScalar(x.field)
    for key, c in x.terms.items():
        if e_key_counit(key):
            total = total + c
    return total


@lru_cache(maxsize=None)
def _e_key_antipode(p: int, key) -> EElement:
    ak, (a, b, u, v) = key
    sign = -1 if (a + b) % 2 else 1
    f = EElement(p, {((0, 0, 0), (a, b, -u, -v)): ParamScalar.const(field(p), sign)})
    # z is central, so S(a f) = S(f) S(a) = f(-z) S(a)
    return f * EElement.from_a(_a_key_antipode(p, ak))


def e_antipode(x) -> EElement:
    x = EElement.lift(x)
    out = EElement(x.p)
    for key, c in x.terms.items():
        out = out + _e_key_antipode(x.p, key).scale(c)
    return out


@lru_cache(maxsize=None)
def _e_key_star(p: int, key) -> EElement:
    ak, (a, b, u, v) = key
    f = EElement(p, {((0, 0, 0), (a, b, u.conjugate(), v.conjugate())): ParamScalar.const(field(p), 1)})
    return f * EElement.from_a(_a_key_star(p, ak))


def e_star(x) -> EElement:
    """Antilinear anti-involution; z+- are real, parameters are real."""
    x = EElement.lift(x)
    out = EElement(x.p)
    for key, c in x.terms.items():
        out = out + _e_key_star(x.p, key).scale(c.conjugate())
    return out


# -- tensor helpers ----------------------------------------------------------


def apply_e_counit_leg(t: Tensor, index: int):
    return map_leg(t, index, e_key_counit)


def apply_e_coproduct_leg(t: Tensor, index: int) -> Tensor:
    return map_leg(t, index, lambda key: _e_key_coproduct(t.p, key))


def apply_e_antipode_leg(t: Tensor, index: int) -> Tensor:
    return map_leg(t, index, lambda key: _e_key_antipode(t.p, key))


def e_star_tensor(t: Tensor) -> Tensor:
    out = Tensor(t.p, t.legs)
    for key, c in t.terms.items():
        out = out + tensor(*[_e_key_star(t.p, k) for k in key]).scale(c.conjugate())
    return out


__all__ = [
    "ExpPoly", "EElement", "e_mul", "e_coproduct", "e_counit", "e_antipode", "e_star",
    "d_dz", "shift_to_Z", "function_coproduct", "lift_tensor", "b_plus_minus",
]
