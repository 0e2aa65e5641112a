"""The pairing between U_q(e(1,1)) and the group algebra, convolutions and
the right regular representation R.

Ground truth is the generator table extended through the coproduct of the
function side:  <g rest, F> = sum <g, F_(1)> <rest, F_(2)>.
"""

from __future__ import annotations

import threading
from math import comb, factorial

from .algebra import Tensor
from .extended import EElement, _e_key_coproduct, e_key_counit
from .quantum_algebra import UElement
from .reduced import AElement, zeta_idempotent
from .scalars import ParamScalar, field, q_fact

_GENERATORS = ("P+", "P-", "p+", "p-", "kappa")
_SLOT = {name: j for j, name in enumerate(_GENERATORS)}

_memo: dict = {}
_memo_lock = threading.Lock()


def _zero(p):
    return ParamScalar(field(p))


def _f_at_zero(p, zk, d_plus=0, d_minus=0) -> ParamScalar:
    """(d/dz+)^d_plus (d/dz-)^d_minus of z+^a z-^b exp(u z+ + v z-) at z = 0."""
    a, b, u, v = zk
    if a > d_plus or b > d_minus:
        return _zero(p)
    # Leibniz: the surviving terms hit z^a exactly a times
    cp = u ** (d_plus - a) * (comb(d_plus, a) * factorial(a))
    cm = v ** (d_minus - b) * (comb(d_minus, b) * factorial(b))
    return cp * cm


def generator_pairing(p: int, name: str, ekey) -> ParamScalar:
    """<g, F> for a single generator g and an E-monomial F."""
    fld = field(p)
    (n, m, k), zk = ekey
    if name == "kappa" or name == "kappa^-1":
        if n or m:
            return _zero(p)
        sign = 1 if name == "kappa" else -1
        return _f_at_zero(p, zk) * fld.q_power(sign * k)
    if name in ("p+", "p-"):
        want = (1, 0) if name == "p+" else (0, 1)
        if (n, m) != want:
            return _zero(p)
        # twisted primitive: <p+, eta+ delta^k f> = <p+, eta+> <kappa, delta^k f>
        sign = 1 if name == "p+" else -1
        return _f_at_zero(p, zk) * (fld.i * fld.half_q_power(sign) * fld.q_power(k))
    if name in ("P+", "P-"):
        if n or m:
            return _zero(p)
        if name == "P+":
            return _f_at_zero(p, zk, 1, 0) * fld.i
        return _f_at_zero(p, zk, 0, 1) * fld.i
    raise KeyError(name)


def _split(ukey):
    """First generator of a PBW monomial and the remaining monomial."""
    for j, name in enumerate(_GENERATORS):
        if ukey[j]:
            rest = list(ukey)
            rest[j] -= 1
            return name, tuple(rest)
    return None, ukey


def _pair_keys(p: int, ukey, ekey) -> ParamScalar:
    memo_key = (p, ukey, ekey)
    hit = _memo.get(memo_key)
    if hit is not None:
        return hit
    name, rest = _split(ukey)
    if name is None:
        value = ParamScalar.const(field(p), e_key_counit(ekey))
    else:
        value = _zero(p)
        for (k1, k2), c in _e_key_coproduct(p, ekey).terms.items():
            g = generator_pairing(p, name, k1)
            if not g:
                continue
            r = _pair_keys(p, rest, k2)
            if r:
                value = value + c * g * r
    with _memo_lock:
        _memo.setdefault(memo_key, value)
    return value


def pair(phi: UElement, F) -> ParamScalar:
    """<phi, F> for phi in U and F in the (extended) group algebra."""
    F = EElement.lift(F)
    total = _zero(phi.p)
    for uk, uc in phi.terms.items():
        for ek, ec in F.terms.items():
            v = _pair_keys(phi.p, uk, ek)
            if v:
                total = total + uc * ec * v
    return total


def pair_word(p: int, word: list[str], F) -> ParamScalar:
    """<g1 g2 ... gr, F> for a word of generators, without normal ordering."""
    F = EElement.lift(F)
    total = _zero(p)
    for ek, ec in F.terms.items():
        total = total + ec * _pair_word_key(p, tuple(word), ek)
    return total


def _pair_word_key(p, word, ekey):
    if not word:
        return ParamScalar.const(field(p), e_key_counit(ekey))
    out = _zero(p)
    for (k1, k2), c in _e_key_coproduct(p, ekey).terms.items():
        g = generator_pairing(p, word[0], k1)
        if g:
            out = out + c * g * _pair_word_key(p, word[1:], k2)
    return out


def pair_tensor(phi: Tensor, F: Tensor) -> ParamScalar:
    """<phi1 (x) phi2, F1 (x) F2> legwise."""
    p = phi.p
    total = _zero(p)
    for uks, uc in phi.terms.items():
        for eks, ec in F.terms.items():
            v = uc * ec
            for uk, ek in zip(uks, eks):
                v = v * _pair_keys(p, uk, ek)
                if not v:
                    break
            total = total + v
    return total


def lift_e_tensor(t: Tensor) -> Tensor:
    """A tensor whose legs are AElement or EElement, with all legs lifted to EElement."""
    from .extended import z_key

    zk = z_key(t.p)
    terms = {}
    for key, c in t.terms.items():
        terms[tuple(k if leg is EElement else (k, zk) for leg, k in zip(t.legs, key))] = c
    return Tensor(t.p, tuple(EElement for _ in t.legs), terms)


# -- convolutions and the right representation --------------------------------


def conv_right(F, phi: UElement) -> EElement:
    """F <> phi = (phi (x) id) Delta(F)."""
    F = EElement.lift(F)
    p = F.p
    out: dict = {}
    for ek, ec in F.terms.items():
        for (k1, k2), c in _e_key_coproduct(p, ek).terms.items():
            for uk, uc in phi.terms.items():
                v = _pair_keys(p, uk, k1)
                if v:
                    val = ec * c * uc * v
                    out[k2] = out[k2] + val if k2 in out else val
    return EElement(p, out)


def conv_left(phi: UElement, F) -> EElement:
    """phi <> F = (id (x) phi) Delta(F)."""
    F = EElement.lift(F)
    p = F.p
    out: dict = {}
    for ek, ec in F.terms.items():
        for (k1, k2), c in _e_key_coproduct(p, ek).terms.items():
            for uk, uc in phi.terms.items():
                v = _pair_keys(p, uk, k2)
                if v:
                    val = ec * c * uc * v
                    out[k1] = out[k1] + val if k1 in out else val
    return EElement(p, out)


def right_rep(phi: UElement, F) -> EElement:
    """R(phi) F = F <> phi; an antihomomorphism U -> End(A)."""
    return conv_right(F, phi)


# -- basis-level views ---------------------------------------------------------


def dual_basis_element(p: int, n: int, m: int, k: int) -> AElement:
    """eta+^n eta-^m zeta(k)."""
    return AElement.mono(p, n, m) * zeta_idempotent(p, k)


def reduced_pairing_matrix(p: int):
    """Rows: p+^n p-^m kappa^k; columns: eta+^n' eta-^m' zeta(k'); both lexicographic."""
    from .quantum_algebra import u_reduced_basis

    rows = u_reduced_basis(p)
    cols = [(n, m, k) for n in range(p) for m in range(p) for k in range(p)]
    col_elems = [EElement.from_a(dual_basis_element(p, *c)) for c in cols]
    matrix = []
    for uk in rows:
        u = UElement(p, {uk: ParamScalar.const(field(p), 1)})
        matrix.append([pair(u, f) for f in col_elems])
    return rows, cols, matrix


def closed_form_pairing(p: int, ukey, fkey, reading: str) -> ParamScalar:
    """Candidate readings of the closed-form pairing

        <P+^t P-^s p+^n p-^m kappa^k, z+^t' z-^s' eta+^n' eta-^m' zeta(k')>
          = i^(n+m+t+l) q^((n-m)/2 - nm) t! s! [n]! [m]! d_nn' d_mm' d_tt' d_ll' d_(k+t+l, k')

    with the undeclared index l.  Readings:
      "l=s"        l = s, l' = s' everywhere;
      "l=s,k-free" l = s in the phase and Kronecker deltas, the k-delta is d_(k, k');
      "l=s,k+n+m"  l = s in phase and deltas, k-delta is d_(k+n+m, k') (matches the recursion).
    """
    fld = field(p)
    t, s, n, m, k = ukey
    t2, s2, n2, m2, k2 = fkey
    if (n, m, t, s) != (n2, m2, t2, s2):
        return ParamScalar(fld)
    l = s
    if reading == "l=s":
        shift = t + l
    elif reading == "l=s,k-free":
        shift = 0
    elif reading == "l=s,k+n+m":
        shift = n + m
    else:
        raise ValueError(f"unknown reading {reading!r}")
    if (k + shift - k2) % p:
        return ParamScalar(fld)
    value = fld.i ** ((n + m + t + l) % 4) * fld.half_q_power(n - m - 2 * n * m)
    value = value * q_fact(p, n) * q_fact(p, m) * (factorial(t) * factorial(s))
    return ParamScalar.const(fld, value)


CLOSED_FORM_READINGS = ("l=s", "l=s,k-free", "l=s,k+n+m")
CLOSED_FORM_READING = "l=s,k+n+m"


def e_basis_element(p: int, fkey) -> EElement:
    """z+^t z-^s eta+^n eta-^m zeta(k) for fkey = (t, s, n, m, k)."""
    t, s, n, m, k = fkey
    return EElement.z(p, 1, t) * EElement.z(p, -1, s) * EElement.from_a(dual_basis_element(p, n, m, k))


__all__ = [
    "pair", "pair_word", "pair_tensor", "generator_pairing", "conv_right", "conv_left",
    "right_rep", "reduced_pairing_matrix", "closed_form_pairing", "CLOSED_FORM_READINGS",
    "dual_basis_element", "e_basis_element", "lift_e_tensor",
]
