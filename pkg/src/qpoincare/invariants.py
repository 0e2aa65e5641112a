"""Invariant integrals, Hermitian forms, Gram matrices and signatures.

Integrals over the coordinates z+- are formal: an exponential-polynomial
integrates to a DistValue, a combination of products of Dirac-delta
derivatives in parameter-valued arguments.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from math import comb

from .extended import EElement, ExpPoly, _e_key_coproduct, e_star
from .linalg import nullspace
from .reduced import AElement, _a_key_coproduct, a_basis, a_star
from .scalars import CycScalar, ParamScalar, field

# -- reduced integrals -----------------------------------------------------------


def integral_reduced(x: AElement) -> ParamScalar:
    """I(eta+^n eta-^m delta^k) = q^-1 if n = m = p-1 and k = 0, else 0."""
    p = x.p
    c = x.coefficient((p - 1, p - 1, 0))
    return c * field(p).q_power(-1)


def integral_S(x: AElement) -> ParamScalar:
    """I_S(delta^m) = [m = 0 mod p] on the delta-subalgebra."""
    for (n, m, _k) in x.terms:
        if n or m:
            raise ValueError("integral_S is defined on polynomials in delta only")
    return x.coefficient((0, 0, 0))


def _reduced_functional_on_key(p, key) -> CycScalar:
    fld = field(p)
    return fld.q_power(-1) if key == (p - 1, p - 1, 0) else fld.zero


def left_invariance_defect(p: int, key) -> AElement:
    """(id (x) I) Delta(a) - I(a) 1 for a basis monomial a."""
    out: dict = {}
    for (k1, k2), c in _a_key_coproduct(p, key).terms.items():
        v = _reduced_functional_on_key(p, k2)
        if v:
            out[k1] = out[k1] + c * v if k1 in out else c * v
    res = AElement(p, out)
    return res - AElement.one(p).scale(_reduced_functional_on_key(p, key))


def right_invariance_defect(p: int, key) -> AElement:
    """(I (x) id) Delta(a) - I(a) 1."""
    out: dict = {}
    for (k1, k2), c in _a_key_coproduct(p, key).terms.items():
        v = _reduced_functional_on_key(p, k1)
        if v:
            out[k2] = out[k2] + c * v if k2 in out else c * v
    res = AElement(p, out)
    return res - AElement.one(p).scale(_reduced_functional_on_key(p, key))


def invariant_functional_space(p: int):
    """All functionals I' with (id (x) I')Delta = I' 1 = (I' (x) id)Delta.

    Returns (basis monomials, list of solution vectors).
    """
    basis = a_basis(p)
    index = {b: j for j, b in enumerate(basis)}
    unit = (0, 0, 0)
    rows = []
    for b in basis:
        cop = _a_key_coproduct(p, b)
        for leg in (0, 1):
            eqs: dict = {}
            for key, c in cop.terms.items():
                out_key, in_key = key[leg], key[1 - leg]
                row = eqs.setdefault(out_key, {})
                j = index[in_key]
                row[j] = row[j] + c.constant() if j in row else c.constant()
            row = eqs.setdefault(unit, {})
            j = index[b]
            row[j] = row[j] - field(p).one if j in row else -field(p).one
            rows.extend(eqs.values())
    sols = nullspace(rows, len(basis), field(p))
    return basis, sols


# -- distributions ---------------------------------------------------------------


def _canonical_arg(arg: ParamScalar) -> tuple[ParamScalar, int]:
    """Choose the sign of a delta argument; returns (arg, sign flip)."""
    if not arg.terms:
        return arg, 1
    lead = arg.terms[max(arg.terms)]
    first = next(c for c in lead.num if c)
    return (arg, 1) if first > 0 else (-arg, -1)


def _diff_coeff(c, name):
    if isinstance(c, ParamScalar):
        return c.diff(name)
    return c.diff_parameter(name)


def _scale_coeff(c, s):
    if isinstance(c, ParamScalar):
        return c * s
    return c.scale(s)


@dataclass(frozen=True)
class DeltaAtom:
    """delta^(order)(arg)."""

    arg: ParamScalar
    order: int

    def is_degenerate(self) -> bool:
        return self.arg.is_zero()

    def render(self) -> str:
        head = "delta" if self.order == 0 else f"delta^({self.order})"
        return f"{head}({self.arg.render()})"

    def sort_key(self):
        return (self.arg.sort_key(), self.order)


class DistValue:
    """Finite sum  coeff * (2 pi)^e * prod delta^(k)(arg).

    Keys are (e, atoms) with atoms a sorted tuple of DeltaAtom.  Coefficients
    are ParamScalars or, for function-valued results, EElements.
    """

    __slots__ = ("p", "parts", "flagged")

    def __init__(self, p: int, parts: dict | None = None, flagged: bool = False):
        self.p = p
        self.parts = {k: v for k, v in (parts or {}).items() if v}
        # set when a delta(0) factor was met, even if its coefficient vanished
        self.flagged = flagged or any(a.is_degenerate() for (_e, atoms) in self.parts for a in atoms)

    @classmethod
    def scalar(cls, p: int, c) -> DistValue:
        c = c if isinstance(c, (ParamScalar, EElement)) else ParamScalar.const(field(p), c)
        return cls(p, {(0, ()): c})

    @classmethod
    def from_atoms(cls, p, coeff, two_pi: int, atoms) -> DistValue:
        sign = 1
        canon = []
        for atom in atoms:
            arg, s = _canonical_arg(atom.arg)
            if s < 0 and atom.order % 2:
                sign = -sign
            if arg.is_constant() and not arg.is_zero():
                return cls(p)  # delta away from the origin
            canon.append(DeltaAtom(arg, atom.order))
        canon.sort(key=DeltaAtom.sort_key)
        c = coeff if sign > 0 else _scale_coeff(coeff, -1)
        return cls(p, {(two_pi, tuple(canon)): c}, flagged=any(a.is_degenerate() for a in canon))._localize()

    def __add__(self, other: DistValue) -> DistValue:
        parts = dict(self.parts)
        for k, v in other.parts.items():
            parts[k] = parts[k] + v if k in parts else v
        return DistValue(self.p, parts, self.flagged or other.flagged)

    def __neg__(self):
        return DistValue(self.p, {k: _scale_coeff(v, -1) for k, v in self.parts.items()}, self.flagged)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> DistValue:
        return DistValue(self.p, {k: _scale_coeff(v, c) for k, v in self.parts.items()}, self.flagged)

    def __bool__(self) -> bool:
        return bool(self.parts)

    def is_zero(self) -> bool:
        return not self.parts

    def is_degenerate(self) -> bool:
        return self.flagged

    def lifted(self) -> DistValue:
        """Coefficients as EElements (c -> c * 1)."""
        return DistValue(self.p, {k: EElement.lift(v) if isinstance(v, EElement)
                                  else EElement.one(self.p).scale(v) for k, v in self.parts.items()},
                         self.flagged)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DistValue):
            return NotImplemented
        a, b = self, other
        if any(isinstance(v, EElement) for v in a.parts.values()) or any(
                isinstance(v, EElement) for v in b.parts.values()):
            a, b = a.lifted(), b.lifted()
        return a.p == b.p and a.parts == b.parts

    def __hash__(self):
        return hash((self.p, frozenset(self.parts)))

    def subs(self, name: str, value) -> DistValue:
        out = DistValue(self.p)
        for (e, atoms), c in self.parts.items():
            new_atoms = [DeltaAtom(a.arg.subs(name, value), a.order) for a in atoms]
            out = out + DistValue.from_atoms(self.p, c.subs(name, value), e, new_atoms)
        return out

    def coefficient(self, two_pi: int, atoms) -> object:
        return self.parts.get((two_pi, tuple(atoms)))

    def terms(self):
        return sorted(self.parts.items(), key=lambda kv: (kv[0][0], [a.sort_key() for a in kv[0][1]]))

    def render(self) -> str:
        if not self.parts:
            return "0"
        out = []
        for (e, atoms), c in self.terms():
            factors = [f"({c.render()})"]
            if e:
                factors.append("(2*pi)" if e == 1 else f"(2*pi)^{e}")
            factors += [a.render() for a in atoms]
            out.append("*".join(factors))
        return " + ".join(out)

    __str__ = render

    def __repr__(self):
        return f"DistValue(p={self.p}, {self.render()})"

    # localization: g(x) delta^(k)(a x + b) with x absent from other atoms
    def _localize(self) -> DistValue:
        result = DistValue(self.p, flagged=self.flagged)
        for (e, atoms), c in self.parts.items():
            result = result + _localize_term(self.p, c, e, atoms)
        return result


def _linear_variable(arg: ParamScalar, others) -> tuple[str, CycScalar, ParamScalar] | None:
    """A parameter x with arg = a x + rest, a constant and x not in rest or other atoms."""
    busy = set()
    for o in others:
        busy |= o.arg.parameters()
    for name in sorted(arg.parameters()):
        if name in busy or arg.degree_in(name) != 1:
            continue
        a = arg.diff(name)
        if not a.is_constant():
            continue
        rest = arg - a * ParamScalar.param(arg.field, name)
        if name in rest.parameters():
            continue
        return name, a.constant(), rest
    return None


def _coeff_parameters(c) -> set[str]:
    if isinstance(c, ParamScalar):
        return c.parameters()
    out = set(c.parameters())
    for (_ak, (_a, _b, u, v)) in c.terms:
        out |= u.parameters() | v.parameters()
    return out


def _localize_term(p, coeff, e, atoms) -> DistValue:
    for idx, atom in enumerate(atoms):
        if atom.is_degenerate():
            continue
        others = atoms[:idx] + atoms[idx + 1:]
        found = _linear_variable(atom.arg, others)
        if found is None:
            continue
        name, a, rest = found
        if name not in _coeff_parameters(coeff):
            continue
        # g(x) delta^(k)(r), r = a x + rest, with d/dr = (1/a) d/dx:
        # g delta^(k)(r) = sum_j (-1)^j C(k,j) (d^j g/dr^j)|_{r=0} delta^(k-j)(r)
        root = -rest * a.inverse()
        inv_a = a.inverse()
        k = atom.order
        out = DistValue(p)
        g = coeff
        for j in range(k + 1):
            val = g.subs(name, root)
            if val:
                factor = inv_a ** j * (comb(k, j) * (-1) ** j)
                new_atoms = others + (DeltaAtom(atom.arg, k - j),)
                out = out + DistValue.from_atoms(p, _scale_coeff(val, factor), e, new_atoms)
            g = _diff_coeff(g, name)
        return out
    canon = tuple(sorted(atoms, key=DeltaAtom.sort_key))
    return DistValue(p, {(e, canon): coeff})


def _split_oscillatory(u: ParamScalar) -> ParamScalar:
    """u = i r with r real; returns r or raises."""
    fld = u.field
    r = u * fld.i.conjugate()
    if not r.is_real():
        raise ValueError(f"exponent {u.render()} is not purely oscillatory; not integrable here")
    return r


def integral_C(f) -> DistValue:
    """Formal integral over (z+, z-) of an exponential-polynomial.

    int z^k exp(i r z) dz = 2 pi (-i)^k delta^(k)(r).
    """
    if isinstance(f, EElement):
        from .extended import flatten_z
        f = flatten_z(f)
    if not isinstance(f, ExpPoly):
        raise TypeError("integral_C needs an exponential-polynomial")
    p = f.p
    fld = field(p)
    out = DistValue(p)
    for (a, b, u, v), c in f.terms.items():
        ru, rv = _split_oscillatory(u), _split_oscillatory(v)
        phase = fld.i.conjugate() ** ((a + b) % 4)
        out = out + DistValue.from_atoms(p, c * phase, 2, [DeltaAtom(ru, a), DeltaAtom(rv, b)])
    return out


def integral_E(F) -> DistValue:
    """I_E(sum a_n f_n) = sum I(a_n) I_C(f_n)."""
    F = EElement.lift(F)
    out = DistValue(F.p)
    for zk, a in F.z_parts().items():
        ia = integral_reduced(a)
        f = ExpPoly(F.p, {zk: ParamScalar.const(field(F.p), 1)})
        part = integral_C(f)
        if not ia:
            out.flagged = out.flagged or part.flagged
            continue
        out = out + DistValue(F.p, {k: v * ia for k, v in part.parts.items()})._localize()
    return out


def e_left_invariance(F) -> tuple[DistValue, DistValue]:
    """((id (x) I_E) Delta(F), I_E(F) 1) as DistValues with EElement coefficients."""
    F = EElement.lift(F)
    p = F.p
    acc = DistValue(p)
    for ek, ec in F.terms.items():
        for (k1, k2), c in _e_key_coproduct(p, ek).terms.items():
            part = integral_E(EElement(p, {k2: ec * c}))
            if not part:
                continue
            left = EElement(p, {k1: ParamScalar.const(field(p), 1)})
            lifted = DistValue(p, {k: left.scale(v) for k, v in part.parts.items()})
            acc = acc + lifted
    acc = acc._localize()
    return acc.lifted(), integral_E(F).lifted()


def e_right_invariance(F) -> tuple[DistValue, DistValue]:
    F = EElement.lift(F)
    p = F.p
    acc = DistValue(p)
    for ek, ec in F.terms.items():
        for (k1, k2), c in _e_key_coproduct(p, ek).terms.items():
            part = integral_E(EElement(p, {k1: ec * c}))
            if not part:
                continue
            right = EElement(p, {k2: ParamScalar.const(field(p), 1)})
            acc = acc + DistValue(p, {k: right.scale(v) for k, v in part.parts.items()})
    acc = acc._localize()
    return acc.lifted(), integral_E(F).lifted()


# -- Hermitian forms ---------------------------------------------------------------


def herm_form(x, y, which: str = "reduced"):
    """(x, y) = I(x y*), (x, y)_S = I_S(x* y), (F, G)_E = I_E(F G*)."""
    if which == "reduced":
        return integral_reduced(x * a_star(y))
    if which == "S":
        return integral_S(a_star(x) * y)
    if which == "E":
        return integral_E(EElement.lift(x) * e_star(y))
    raise ValueError(f"unknown form {which!r}; expected reduced, S or E")


def gram_basis(p: int, space: str) -> list[tuple[tuple[int, int, int], AElement]]:
    if space == "SO":
        keys = [(0, 0, k) for k in range(p)]
    elif space == "M":
        keys = [(n, m, 0) for n in range(p) for m in range(p)]
    elif space == "A":
        keys = a_basis(p)
    else:
        raise ValueError(f"unknown space {space!r}; expected SO, M or A")
    return [(k, AElement.mono(p, *k)) for k in keys]


def gram_matrix(p: int, space: str) -> tuple[list, list[list[CycScalar]]]:
    which = "S" if space == "SO" else "reduced"
    basis = gram_basis(p, space)
    rows = []
    for _, x in basis:
        rows.append([herm_form(x, y, which).constant() for _, y in basis])
    return [k for k, _ in basis], rows


def _partner(p: int, space: str, key):
    n, m, k = key
    if space == "SO":
        return (0, 0, (-k) % p)
    return (p - 1 - n, p - 1 - m, (-k) % p)


def assert_block_structure(p: int, space: str, keys, g) -> None:
    """Each basis vector pairs only with its partner; the matrix is Hermitian."""
    index = {k: j for j, k in enumerate(keys)}
    for j, key in enumerate(keys):
        partner = index[_partner(p, space, key)]
        for l, v in enumerate(g[j]):
            if l != partner and v:
                raise AssertionError(f"Gram entry ({key}, {keys[l]}) = {v.render()} breaks the block pattern")
        if not g[j][partner]:
            raise AssertionError(f"Gram entry ({key}, {keys[partner]}) vanishes; form is degenerate")
        if g[j][partner] != g[partner][j].conjugate():
            raise AssertionError("Gram matrix is not Hermitian")


def gram_signature(p: int, space: str) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of the Hermitian form on the space."""
    keys, g = gram_matrix(p, space)
    assert_block_structure(p, space, keys, g)
    pos = neg = 0
    index = {k: j for j, k in enumerate(keys)}
    for j, key in enumerate(keys):
        partner = index[_partner(p, space, key)]
        if partner == j:
            val = g[j][j]
            if not val.is_real():
                raise AssertionError("diagonal Gram entry is not real")
            if complex(val).real > 0:
                pos += 1
            else:
                neg += 1
        elif j < partner:
            # [[0, c], [conj c, 0]] has eigenvalues +-|c|
            pos += 1
            neg += 1
    return pos, neg, 0


def gram_csv(p: int, space: str) -> str:
    keys, g = gram_matrix(p, space)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["basis"] + ["eta+^%d eta-^%d delta^%d" % k for k in keys])
    for key, row in zip(keys, g):
        w.writerow(["eta+^%d eta-^%d delta^%d" % key] + [v.render() for v in row])
    return buf.getvalue()


__all__ = [
    "integral_reduced", "integral_S", "integral_C", "integral_E", "DistValue", "DeltaAtom",
    "herm_form", "gram_matrix", "gram_signature", "gram_csv", "invariant_functional_space",
    "left_invariance_defect", "right_invariance_defect", "e_left_invariance", "e_right_invariance",
    "assert_block_structure",
]
