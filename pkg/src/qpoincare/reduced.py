"""The reduced quantum Poincare group: the p^3-dimensional Hopf *-algebra
generated by eta+, eta-, delta with

    eta- eta+ = q^2 eta+ eta-,   eta+- delta = q^2 delta eta+-,
    delta^p = 1,   eta+-^p = 0.

Monomials are kept in the normal order eta+^n eta-^m delta^k.
"""

from __future__ import annotations

from functools import lru_cache

from .algebra import Element, Tensor, contract, map_leg, tensor
from .scalars import ParamScalar, field, q_binom, q_fact, q_int

AMonomial = tuple  # (n, m, k)


@lru_cache(maxsize=None)
def _a_key_mul(p: int, k1: AMonomial, k2: AMonomial):
    n1, m1, d1 = k1
    n2, m2, d2 = k2
    n, m = n1 + n2, m1 + m2
    if n >= p or m >= p:
        return None
    qexp = 2 * m1 * n2 - 2 * d1 * (n2 + m2)
    return (4 * qexp) % (4 * p), (n, m, (d1 + d2) % p)


def render_a_key(key: AMonomial) -> str:
    n, m, k = key
    parts = []
    for name, e in (("eta+", n), ("eta-", m), ("delta", k)):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return " ".join(parts) if parts else "1"


class AElement(Element):
    """Element of the reduced algebra A(E(1,1|p))."""

    __slots__ = ()

    @staticmethod
    def key_mul(p, k1, k2):
        return _a_key_mul(p, k1, k2)

    @staticmethod
    def one_key(p):
        return (0, 0, 0)

    @staticmethod
    def render_key(p, key):
        return render_a_key(key)

    @classmethod
    def mono(cls, p: int, n: int = 0, m: int = 0, k: int = 0, coeff=1) -> AElement:
        if n >= p or m >= p:
            return cls(p)
        return cls.monomial(p, (n, m, k % p), coeff)

    @classmethod
    def eta_plus(cls, p):
        return cls.mono(p, 1, 0, 0)

    @classmethod
    def eta_minus(cls, p):
        return cls.mono(p, 0, 1, 0)

    @classmethod
    def delta(cls, p, k: int = 1):
        return cls.mono(p, 0, 0, k)

    def basis(self):
        return sorted(self.terms)


def a_basis(p: int) -> list[AMonomial]:
    """All p^3 normal-ordered monomials, lexicographic in (n, m, k)."""
    return [(n, m, k) for n in range(p) for m in range(p) for k in range(p)]


def a_mul(x: AElement, y: AElement) -> AElement:
    return x * y


# -- coproduct ---------------------------------------------------------------


@lru_cache(maxsize=None)
def _eta_power_coproduct(p: int, n: int, sign: int) -> Tensor:
    # Delta(eta_sign^n) = sum_t [n t]_sign eta^(n-t) delta^(sign t) (x) eta^t
    terms = {}
    for t in range(n + 1):
        c = ParamScalar.const(field(p), q_binom(p, n, t, sign))
        if sign > 0:
            left, right = (n - t, 0, t % p), (t, 0, 0)
        else:
            left, right = (0, n - t, (-t) % p), (0, t, 0)
        terms[(left, right)] = c
    return Tensor(p, (AElement, AElement), terms)


@lru_cache(maxsize=None)
def _a_key_coproduct(p: int, key: AMonomial) -> Tensor:
    n, m, k = key
    d = Tensor(p, (AElement, AElement), {((0, 0, k), (0, 0, k)): ParamScalar.const(field(p), 1)})
    return _eta_power_coproduct(p, n, 1) * _eta_power_coproduct(p, m, -1) * d


def a_coproduct(x: AElement) -> Tensor:
    """Coproduct Delta: A -> A (x) A."""
    out = Tensor(x.p, (AElement, AElement))
    for key, c in x.terms.items():
        out = out + _a_key_coproduct(x.p, key).scale(c)
    return out


def generator_coproduct(p: int, name: str) -> Tensor:
    """Coproduct of a generator straight from its defining formula."""
    one = AElement.one(p)
    if name == "eta+":
        return tensor(AElement.eta_plus(p), one) + tensor(AElement.delta(p), AElement.eta_plus(p))
    if name == "eta-":
        return tensor(AElement.eta_minus(p), one) + tensor(AElement.delta(p, -1), AElement.eta_minus(p))
    if name == "delta":
        return tensor(AElement.delta(p), AElement.delta(p))
    raise KeyError(name)


# -- counit, antipode, star ----------------------------------------------------


def a_counit_key(key: AMonomial) -> int:
    return 1 if key[0] == 0 and key[1] == 0 else 0


def a_counit(x: AElement) -> ParamScalar:
    total = ParamScalar(x.field)
    for key, c in x.terms.items():
        if a_counit_key(key):
            total = total + c
    return total


@lru_cache(maxsize=None)
def _a_key_antipode(p: int, key: AMonomial) -> AElement:
    n, m, k = key
    s_eta_plus = -(AElement.delta(p, -1) * AElement.eta_plus(p))
    s_eta_minus = -(AElement.delta(p, 1) * AElement.eta_minus(p))
    # anti-multiplicative: S(eta+^n eta-^m delta^k) = S(delta)^k S(eta-)^m S(eta+)^n
    return AElement.delta(p, -k) * s_eta_minus ** m * s_eta_plus ** n


def a_antipode(x: AElement) -> AElement:
    out = AElement(x.p)
    for key, c in x.terms.items():
        out = out + _a_key_antipode(x.p, key).scale(c)
    return out


@lru_cache(maxsize=None)
def _a_key_star(p: int, key: AMonomial) -> AElement:
    n, m, k = key
    return AElement.delta(p, k) * AElement.mono(p, 0, m, 0) * AElement.mono(p, n, 0, 0)


def a_star(x: AElement) -> AElement:
    """Antilinear anti-involution with eta+-* = eta+-, delta* = delta."""
    out = AElement(x.p)
    for key, c in x.terms.items():
        out = out + _a_key_star(x.p, key).scale(c.conjugate())
    return out


# -- tensor-level helpers -----------------------------------------------------


def apply_counit_leg(t: Tensor, index: int):
    return map_leg(t, index, lambda key: a_counit_key(key))


def apply_coproduct_leg(t: Tensor, index: int) -> Tensor:
    return map_leg(t, index, lambda key: _a_key_coproduct(t.p, key))


def apply_antipode_leg(t: Tensor, index: int) -> Tensor:
    return map_leg(t, index, lambda key: _a_key_antipode(t.p, key))


def star_tensor(t: Tensor) -> Tensor:
    """(* (x) * (x) ...) applied to a tensor of AElements."""
    out = Tensor(t.p, t.legs)
    for key, c in t.terms.items():
        factors = [_a_key_star(t.p, k) for k in key]
        out = out + tensor(*factors).scale(c.conjugate())
    return out


def multiply_legs(t: Tensor) -> AElement:
    return contract(t)


# -- distinguished elements ---------------------------------------------------


def zeta_idempotent(p: int, m: int) -> AElement:
    """zeta(m) = (1/p) sum_n q^(-nm) delta^n; periodic in m with period p."""
    fld = field(p)
    terms = {(0, 0, n): ParamScalar.const(fld, fld.q_power(-n * m) / p) for n in range(p)}
    return AElement(p, terms)


def independence_range(p: int) -> list[tuple[int, int]]:
    n0 = (p - 1) // 2
    pairs = [(n, m) for n in range(n0) for m in range(2 * n0 + 1)]
    pairs += [(n0, m) for m in range(n0 + 1)]
    return pairs


def basis_e_pm(p: int, n: int, m: int, sign: int):
    """The coset basis vector e^sign_{nm} as (numerator, normalizer squared).

    The vector itself is numerator / sqrt(normalizer squared).
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if (n, m) not in independence_range(p):
        raise ValueError(f"(n, m) = ({n}, {m}) is outside the independence range for p={p}")
    fld = field(p)
    numerator = AElement.mono(p, p - 1 - n, p - 1 - m) + AElement.mono(p, n, m).scale(sign)
    norm_sq = fld.q_power(2 * n + 1) + fld.q_power(-2 * n - 1)
    return numerator, norm_sq


def e_pm_basis(p: int, sign: int) -> list[tuple[tuple[int, int], AElement, object]]:
    """All nonzero e^sign_{nm} over the independence range."""
    out = []
    for n, m in independence_range(p):
        num, nsq = basis_e_pm(p, n, m, sign)
        if num:
            out.append(((n, m), num, nsq))
    return out


def b_plus_minus(p: int, sign: int) -> Tensor:
    """B_sign = (-1)^((p+1)/2) sum_{n=1}^{p-1} q^(sign n^2)/([p-n]! [n]!) eta^(p-n) delta^(sign n) (x) eta^n."""
    fld = field(p)
    pref = -1 if ((p + 1) // 2) % 2 else 1
    terms = {}
    for n in range(1, p):
        c = fld.q_power(sign * n * n) / (q_fact(p, p - n) * q_fact(p, n)) * pref
        if sign > 0:
            key = ((p - n, 0, n % p), (n, 0, 0))
        else:
            key = ((0, p - n, (-n) % p), (0, n, 0))
        terms[key] = ParamScalar.const(fld, c)
    return Tensor(p, (AElement, AElement), terms)


__all__ = [
    "AElement", "a_basis", "a_mul", "a_coproduct", "a_counit", "a_antipode", "a_star",
    "zeta_idempotent", "basis_e_pm", "e_pm_basis", "independence_range", "b_plus_minus",
    "generator_coproduct", "q_int",
]
