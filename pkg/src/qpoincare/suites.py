"""Verification suites: each check is an exact identity evaluated on a basis or
on a seeded sample, reported as a Check record."""

from __future__ import annotations

import math
import random
from dataclasses import asdict, dataclass
from typing import Callable, Iterator

from .algebra import Tensor, contract, flatten, tensor
from .duality import lift_e_tensor, pair, pair_tensor, reduced_pairing_matrix
from .extended import (
    EElement,
    ExpPoly,
    apply_e_antipode_leg,
    apply_e_coproduct_leg,
    apply_e_counit_leg,
    e_coproduct,
    e_counit,
    e_star,
    e_star_tensor,
    d_dz,
    z_key,
)
from .invariants import (
    e_left_invariance,
    e_right_invariance,
    gram_signature,
    integral_C,
    invariant_functional_space,
    left_invariance_defect,
    right_invariance_defect,
)
from .linalg import rank
from .quantum_algebra import (
    UElement,
    apply_u_antipode_leg,
    apply_u_coproduct_leg,
    apply_u_counit_leg,
    casimir,
    u_coproduct,
    u_counit,
    u_reduced_basis,
    u_star,
    u_star_tensor,
)
from .reduced import (
    AElement,
    a_basis,
    a_coproduct,
    a_counit,
    a_star,
    apply_antipode_leg,
    apply_coproduct_leg,
    apply_counit_leg,
    star_tensor,
)
from .representations import (
    Matrix,
    addition_theorem_defects,
    closed_form_report,
    counit_slice,
    dmatrix_mat,
    k_sum,
    orthogonality_discrete,
    plane_wave_defects,
    pseudo_unitarity_defects,
    recurrence_defects,
    rep_image,
    rep_L,
    star_property,
    universal_T_rep,
)
from .scalars import ParamScalar, field

SUITES = ("hopf", "duality", "integral", "forms", "repr")


@dataclass(frozen=True)
class Check:
    assertion_id: str
    paper_anchor: str
    status: str
    detail: str

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def as_dict(self) -> dict:
        return asdict(self)


def _check(aid: str, anchor: str, failures: list[str], checked: int | None = None) -> Check:
    if failures:
        shown = "; ".join(failures[:3])
        more = f" (+{len(failures) - 3} more)" if len(failures) > 3 else ""
        return Check(aid, anchor, "fail", f"{len(failures)} failing: {shown}{more}")
    detail = f"{checked} cases exact" if checked is not None else "exact"
    return Check(aid, anchor, "pass", detail)


def _value_check(aid: str, anchor: str, ok: bool, detail: str) -> Check:
    return Check(aid, anchor, "pass" if ok else "fail", detail)


def _key_text(key) -> str:
    return str(key).replace(" ", "")


# -- hopf ----------------------------------------------------------------------------


def hopf_axioms_A(p: int) -> list[Check]:
    coassoc, counit, antipode, star = [], [], [], []
    basis = a_basis(p)
    for key in basis:
        x = AElement.monomial(p, key)
        d = a_coproduct(x)
        if apply_coproduct_leg(d, 0) != apply_coproduct_leg(d, 1):
            coassoc.append(_key_text(key))
        if flatten(apply_counit_leg(d, 0)) != x or flatten(apply_counit_leg(d, 1)) != x:
            counit.append(_key_text(key))
        unit = AElement.one(p).scale(a_counit(x))
        if contract(apply_antipode_leg(d, 0)) != unit or contract(apply_antipode_leg(d, 1)) != unit:
            antipode.append(_key_text(key))
        if a_coproduct(a_star(x)) != star_tensor(d):
            star.append(_key_text(key))
    n = len(basis)
    return [
        _check("hopf.A.coassociativity", "Hopf structure of A: coassociativity", coassoc, n),
        _check("hopf.A.counit", "Hopf structure of A: counit", counit, n),
        _check("hopf.A.antipode", "Hopf structure of A: antipode", antipode, n),
        _check("hopf.A.star", "*-Hopf structure of A: coproduct commutes with *", star, n),
    ]


def hopf_multiplicativity_A(p: int, rng: random.Random, samples: int = 20) -> Check:
    basis = a_basis(p)
    failures = []
    for _ in range(samples):
        k1, k2 = rng.choice(basis), rng.choice(basis)
        x, y = AElement.monomial(p, k1), AElement.monomial(p, k2)
        if a_coproduct(x * y) != a_coproduct(x) * a_coproduct(y):
            failures.append(f"{_key_text(k1)}*{_key_text(k2)}")
    return _check("hopf.A.multiplicative", "Hopf structure of A: coproduct is an algebra map", failures, samples)


def _u_sample_keys(p: int) -> list[tuple]:
    return u_reduced_basis(p) + [(1, 0, 0, 0, 0), (0, 1, 0, 0, 0), (1, 1, 1, 1, 1), (2, 0, p - 1, 0, 0)]


def hopf_axioms_U(p: int) -> list[Check]:
    coassoc, counit, antipode, star = [], [], [], []
    keys = _u_sample_keys(p)
    for key in keys:
        x = UElement.monomial(p, key)
        d = u_coproduct(x)
        if apply_u_coproduct_leg(d, 0) != apply_u_coproduct_leg(d, 1):
            coassoc.append(_key_text(key))
        if flatten(apply_u_counit_leg(d, 0)) != x or flatten(apply_u_counit_leg(d, 1)) != x:
            counit.append(_key_text(key))
        unit = UElement.one(p).scale(u_counit(x))
        if contract(apply_u_antipode_leg(d, 0)) != unit or contract(apply_u_antipode_leg(d, 1)) != unit:
            antipode.append(_key_text(key))
        if u_coproduct(u_star(x)) != u_star_tensor(d):
            star.append(_key_text(key))
    n = len(keys)
    return [
        _check("hopf.U.coassociativity", "Hopf structure of U_q: coassociativity", coassoc, n),
        _check("hopf.U.counit", "Hopf structure of U_q: counit", counit, n),
        _check("hopf.U.antipode", "Hopf structure of U_q: antipode", antipode, n),
        _check("hopf.U.star", "*-Hopf structure of U_q: coproduct commutes with *", star, n),
    ]


def hopf_relations_U(p: int) -> list[Check]:
    fld = field(p)
    pp, pm, kap = UElement.p_plus(p), UElement.p_minus(p), UElement.kappa(p)
    Pp, Pm = UElement.P_plus(p), UElement.P_minus(p)
    dpp, dpm, dk = u_coproduct(pp), u_coproduct(pm), u_coproduct(kap)
    dPp, dPm = u_coproduct(Pp), u_coproduct(Pm)
    out = []
    rel = {
        "kappa p+ = q p+ kappa": (kap * pp, (pp * kap).scale(fld.q)),
        "kappa p- = q^-1 p- kappa": (kap * pm, (pm * kap).scale(fld.q_power(-1))),
        "p+ p- = p- p+": (pp * pm, pm * pp),
        "kappa^p = 1": (kap ** p, UElement.one(p)),
        "p+^p = P+": (pp ** p, Pp),
        "p-^p = P-": (pm ** p, Pm),
    }
    failures = [name for name, (a, b) in rel.items() if a != b]
    out.append(_check("hopf.U.relations", "U_q defining relations at a root of unity", failures, len(rel)))
    drel = {
        "Delta(kappa)Delta(p+) = q Delta(p+)Delta(kappa)": (dk * dpp, (dpp * dk).scale(fld.q)),
        "Delta(kappa)Delta(p-) = q^-1 Delta(p-)Delta(kappa)": (dk * dpm, (dpm * dk).scale(fld.q_power(-1))),
        "Delta(p+)Delta(p-) = Delta(p-)Delta(p+)": (dpp * dpm, dpm * dpp),
        "Delta(p+)^p = Delta(P+)": (dpp ** p, dPp),
        "Delta(p-)^p = Delta(P-)": (dpm ** p, dPm),
    }
    failures = [name for name, (a, b) in drel.items() if a != b]
    out.append(_check("hopf.U.coproduct_relations", "U_q coproduct respects the relations", failures, len(drel)))
    c = casimir(p)
    failures = [g for g, x in (("p+", pp), ("p-", pm), ("kappa", kap), ("P+", Pp), ("P-", Pm)) if c * x != x * c]
    out.append(_check("hopf.U.casimir_central", "Casimir p+ p- is central", failures, 5))
    return out


def _e_sample(p: int, rng: random.Random, samples: int) -> Iterator[tuple]:
    fld = field(p)
    names = ("lambda+", "lambda-", "chi+", "chi-")
    for _ in range(samples):
        ak = (rng.randrange(p), rng.randrange(p), rng.randrange(p))
        u = ParamScalar.param(fld, rng.choice(names)) * fld.i * rng.choice((-2, -1, 1, 2)) if rng.random() < 0.6 else None
        v = ParamScalar.param(fld, rng.choice(names)) * fld.i * rng.choice((-1, 1)) if rng.random() < 0.4 else None
        zk = z_key(p, rng.randrange(3), rng.randrange(3), u, v)
        yield (ak, zk)


def hopf_axioms_E(p: int, rng: random.Random, samples: int = 8) -> list[Check]:
    coassoc, counit, antipode, star = [], [], [], []
    keys = list(_e_sample(p, rng, samples))
    for key in keys:
        x = EElement.monomial(p, key)
        label = x.render()
        d = e_coproduct(x)
        if apply_e_coproduct_leg(d, 0) != apply_e_coproduct_leg(d, 1):
            coassoc.append(label)
        if flatten(apply_e_counit_leg(d, 0)) != x or flatten(apply_e_counit_leg(d, 1)) != x:
            counit.append(label)
        unit = EElement.one(p).scale(e_counit(x))
        if contract(apply_e_antipode_leg(d, 0)) != unit or contract(apply_e_antipode_leg(d, 1)) != unit:
            antipode.append(label)
        if e_coproduct(e_star(x)) != e_star_tensor(d):
            star.append(label)
    n = len(keys)
    return [
        _check("hopf.E.coassociativity", "Hopf structure of the extended algebra: coassociativity", coassoc, n),
        _check("hopf.E.counit", "Hopf structure of the extended algebra: counit", counit, n),
        _check("hopf.E.antipode", "Hopf structure of the extended algebra: antipode", antipode, n),
        _check("hopf.E.star", "*-structure of the extended algebra", star, n),
    ]


def suite_hopf(p: int, rng: random.Random) -> list[Check]:
    return (hopf_axioms_A(p) + [hopf_multiplicativity_A(p, rng)] + hopf_axioms_U(p)
            + hopf_relations_U(p) + hopf_axioms_E(p, rng))


# -- duality ---------------------------------------------------------------------------


GENERATOR_NAMES = ("p+", "p-", "kappa", "P+", "P-")


def _u_generator(p: int, name: str) -> UElement:
    return {
        "p+": UElement.p_plus, "p-": UElement.p_minus, "kappa": lambda q: UElement.kappa(q, 1),
        "P+": UElement.P_plus, "P-": UElement.P_minus,
    }[name](p)


def duality_product_rule(p: int) -> Check:
    """<phi psi, F> = <phi (x) psi, Delta F> for generator pairs and all reduced monomials."""
    failures = []
    cases = 0
    for key in a_basis(p):
        F = AElement.monomial(p, key)
        dF = lift_e_tensor(a_coproduct(F))
        for a in GENERATOR_NAMES:
            for b in GENERATOR_NAMES:
                phi, psi = _u_generator(p, a), _u_generator(p, b)
                cases += 1
                if pair(phi * psi, F) != pair_tensor(tensor(phi, psi), dF):
                    failures.append(f"<{a} {b}, {_key_text(key)}>")
    return _check("duality.product_to_coproduct", "duality: <phi psi, F> = <phi (x) psi, Delta F>", failures, cases)


def duality_coproduct_rule(p: int) -> Check:
    """<Delta phi, F (x) G> = <phi, F G> for generators and all pairs of reduced monomials."""
    failures = []
    cases = 0
    basis = a_basis(p)
    zk = z_key(p)
    for name in GENERATOR_NAMES:
        phi = _u_generator(p, name)
        dphi = u_coproduct(phi)
        for k1 in basis:
            F = AElement.monomial(p, k1)
            for k2 in basis:
                G = AElement.monomial(p, k2)
                cases += 1
                lhs = pair_tensor(dphi, Tensor(p, (EElement, EElement), {((k1, zk), (k2, zk)): ParamScalar.const(field(p), 1)}))
                if lhs != pair(phi, F * G):
                    failures.append(f"<Delta {name}, {_key_text(k1)} (x) {_key_text(k2)}>")
    return _check("duality.coproduct_to_product", "duality: <Delta phi, F (x) G> = <phi, F G>", failures, cases)


def duality_nondegenerate(p: int) -> Check:
    _, _, matrix = reduced_pairing_matrix(p)
    r = rank(matrix)
    return _value_check("duality.nondegenerate", "non-degenerate duality on the reduced algebras",
                        r == p ** 3, f"rank {r} of {p ** 3}")


def duality_z_pairing(p: int) -> Check:
    fld = field(p)
    cases = {
        "<P+, z+> = i": (pair(UElement.P_plus(p), EElement.z(p, 1)), fld.i),
        "<P-, z-> = i": (pair(UElement.P_minus(p), EElement.z(p, -1)), fld.i),
        "<P+, z-> = 0": (pair(UElement.P_plus(p), EElement.z(p, -1)), fld.zero),
        "<kappa, z+> = 0": (pair(UElement.kappa(p), EElement.z(p, 1)), fld.zero),
    }
    failures = [k for k, (a, b) in cases.items() if a != ParamScalar.const(fld, b)]
    return _check("duality.z_coordinates", "pairing of P+- with the coordinates z+-", failures, len(cases))


def suite_duality(p: int, rng: random.Random) -> list[Check]:
    return [duality_product_rule(p), duality_coproduct_rule(p), duality_nondegenerate(p), duality_z_pairing(p)]


# -- integral -----------------------------------------------------------------------------


def integral_invariance(p: int) -> list[Check]:
    left, right = [], []
    for key in a_basis(p):
        if left_invariance_defect(p, key):
            left.append(_key_text(key))
        if right_invariance_defect(p, key):
            right.append(_key_text(key))
    n = p ** 3
    return [
        _check("integral.left_invariance", "left invariance of the integral on A", left, n),
        _check("integral.right_invariance", "right invariance of the integral on A", right, n),
    ]


def integral_uniqueness(p: int) -> Check:
    basis, sols = invariant_functional_space(p)
    if len(sols) != 1:
        return _value_check("integral.uniqueness", "uniqueness of the invariant integral", False,
                            f"dimension {len(sols)}")
    vec = sols[0]
    support = [basis[j] for j, v in enumerate(vec) if v]
    ok = support == [(p - 1, p - 1, 0)]
    return _value_check("integral.uniqueness", "uniqueness of the invariant integral", ok,
                        f"dimension 1, support {support}")


def integral_derivatives(p: int, rng: random.Random, samples: int = 6) -> Check:
    failures = []
    fld = field(p)
    for j in range(samples):
        a, b = rng.randrange(3), rng.randrange(3)
        # both directions oscillate, otherwise the formal integral is a delta(0) term
        u = ParamScalar.param(fld, "chi+") * fld.i * rng.choice((-1, 1, 2))
        v = ParamScalar.param(fld, "chi-") * fld.i * rng.choice((-1, 1))
        f = ExpPoly(p, {z_key(p, a, b, u, v): ParamScalar.const(fld, 1)})
        for which in (1, -1):
            if integral_C(d_dz(EElement.from_exppoly(f), which)):
                failures.append(f"d/dz{'+' if which > 0 else '-'} {f.render()}")
    return _check("integral.C_derivatives", "the z-integral kills derivatives", failures, 2 * samples)


def integral_E_invariance(p: int, rng: random.Random, samples: int = 4) -> list[Check]:
    fld = field(p)
    left, right = [], []
    for _ in range(samples):
        ak = (p - 1 - rng.randrange(2), p - 1 - rng.randrange(2), rng.randrange(p))
        u = ParamScalar.param(fld, "chi+") * fld.i
        v = ParamScalar.param(fld, "chi-") * fld.i
        F = EElement.monomial(p, (ak, z_key(p, rng.randrange(2), 0, u, v)))
        lhs, rhs = e_left_invariance(F)
        if lhs != rhs:
            left.append(F.render())
        lhs, rhs = e_right_invariance(F)
        if lhs != rhs:
            right.append(F.render())
    return [
        _check("integral.E_left_invariance", "left invariance of the extended integral", left, samples),
        _check("integral.E_right_invariance", "right invariance of the extended integral", right, samples),
    ]


def suite_integral(p: int, rng: random.Random) -> list[Check]:
    return (integral_invariance(p) + [integral_uniqueness(p), integral_derivatives(p, rng)]
            + integral_E_invariance(p, rng))


# -- forms ----------------------------------------------------------------------------------


def expected_signature(p: int, space: str) -> tuple[int, int, int]:
    d = {"SO": p, "M": p * p, "A": p ** 3}[space]
    return ((d + 1) // 2, (d - 1) // 2, 0)


def suite_forms(p: int, rng: random.Random) -> list[Check]:
    out = []
    for space in ("SO", "M", "A"):
        if space == "A" and p > 5:
            continue
        try:
            sig = gram_signature(p, space)
        except AssertionError as exc:
            out.append(Check(f"forms.signature.{space}", f"signature of the form on {space}", "fail", str(exc)))
            continue
        want = expected_signature(p, space)
        out.append(_value_check(f"forms.signature.{space}", f"signature of the form on {space}",
                                sig == want, f"{sig}, expected {want}"))
    return out


# -- representations ----------------------------------------------------------------------------


def repr_relations(p: int) -> list[Check]:
    fld = field(p)
    rep = rep_L(p)
    pp, pm, kap, Pp, Pm = rep["p+"], rep["p-"], rep["kappa"], rep["P+"], rep["P-"]
    zero, one = ParamScalar(fld), ParamScalar.const(fld, 1)
    ident = Matrix.identity(p, zero, one)

    def power(m: Matrix, e: int) -> Matrix:
        out = ident
        for _ in range(e):
            out = out * m
        return out

    lp, lm = ParamScalar.param(fld, "lambda+"), ParamScalar.param(fld, "lambda-")
    rel = {
        "L(kappa)L(p+) = q L(p+)L(kappa)": (kap * pp, (pp * kap) * fld.q),
        "L(kappa)L(p-) = q^-1 L(p-)L(kappa)": (kap * pm, (pm * kap) * fld.q_power(-1)),
        "L(p+)L(p-) = L(p-)L(p+)": (pp * pm, pm * pp),
        "L(kappa)^p = 1": (power(kap, p), ident),
        "L(p+)^p = L(P+)": (power(pp, p), Pp),
        "L(p-)^p = L(P-)": (power(pm, p), Pm),
        "L(P+) = lambda+^p": (Pp, ident * lp ** p),
        "L(P-) = lambda-^p": (Pm, ident * lm ** p),
        "L(P+) central": (Pp * pp, pp * Pp),
        "L(P-) central": (Pm * pm, pm * Pm),
        "L(p+ p-) = lambda+ lambda-": (rep_image(rep, casimir(p)), ident * (lp * lm)),
    }
    failures = [name for name, (a, b) in rel.items() if a != b]
    checks = [_check("repr.L.relations", "L^lambda represents U_q", failures, len(rel))]
    star = star_property(p, rep)
    failures = [name for name, ok in star.items() if not ok]
    checks.append(_check("repr.L.star", "L^lambda is a *-representation for the form (.,.)_S", failures, len(star)))
    return checks


def repr_T_matrix(p: int) -> list[Check]:
    d = universal_T_rep(p)
    pu = [str(k) for k, v in pseudo_unitarity_defects(d).items() if v]
    add = [str(k) for k, v in addition_theorem_defects(d).items() if v]
    fld = field(p)
    cs = counit_slice(d)
    unit = [f"({i},{j})" for i in range(p) for j in range(p)
            if cs[i][j] != ParamScalar.const(fld, 1 if i == j else 0)]
    return [
        _check("repr.T.pseudo_unitarity", "pseudo-unitarity of T^lambda", pu, p * p),
        _check("repr.T.addition_theorem", "addition theorem for D^lambda", add, p * p),
        _check("repr.T.counit", "counit of T^lambda is the identity", unit, p * p),
    ]


def repr_closed_forms(p: int) -> list[Check]:
    report = closed_form_report(p)
    failures = [f"({r['m']},{r['n']})" for r in report if not r["match"]]
    out = [_check("repr.closed_form.dmatrix", "two-branch closed form of D_mn", failures, len(report))]
    d = universal_T_rep(p)
    failures = [f"m={m}" for m in range(p) if dmatrix_mat(p, m) != d[m, 0]]
    out.append(_check("repr.closed_form.bessel_column", "column n=0 via cut-off q-Bessel functions", failures, p))
    return out


def repr_recurrences(p: int) -> list[Check]:
    d = universal_T_rep(p)
    failures = [k for k, v in recurrence_defects(d).items() if v]
    out = [_check("repr.recurrences", "R(p+-), Casimir, weight and P+- on D_m0", failures, 6 * p)]
    failures = [k for k, v in plane_wave_defects(p).items() if v]
    out.append(_check("repr.plane_wave", "plane waves are eigenvectors of R(p'+-) and R(P+-)", failures, 4))
    return out


def repr_orthogonality(p: int) -> list[Check]:
    vanish, coeff = [], []
    for n in range(p):
        for m in range(p):
            r = orthogonality_discrete(p, n, m)
            if (n + m) % p:
                if r["reduced_factor"]:
                    vanish.append(f"({n},{m})")
            elif r["coefficient"] is None or r["coefficient"] != ParamScalar.const(field(p), r["k_sum"]):
                coeff.append(f"({n},{m})")
    ks = complex(k_sum(p))
    oracle = 0.0
    for k in range(p):
        oracle += 1.0 / (_float_qfact(p, k) * _float_qfact(p, p - 1 - k)) ** 2
    err = abs(ks - oracle)
    return [
        _check("repr.orthogonality.selection", "(D_n0, D_m0)_E vanishes unless n+m = 0 mod p", vanish, p * p),
        _check("repr.orthogonality.coefficient", "coefficient at lambda' = lambda is n-independent", coeff, p),
        _value_check("repr.orthogonality.k_sum", "k-sum factor of the orthogonality coefficient",
                     err <= 1e-10, f"|exact - float| = {err:.3e}, value {ks.real:.12g}"),
    ]


def _float_qfact(p: int, n: int) -> float:
    s = math.sin(2 * math.pi / p)
    return math.prod(math.sin(2 * math.pi * j / p) / s for j in range(1, n + 1))


def repr_numeric(p: int) -> Check:
    from .numeric import cross_check

    err = cross_check(p, 1.0, 1.0)
    return _value_check("repr.numeric_cross_check", "float evaluation of the T-matrix product at lambda = (1, 1)",
                        err <= 1e-10, f"max abs error {err:.3e}")


def suite_repr(p: int, rng: random.Random) -> list[Check]:
    return (repr_relations(p) + repr_T_matrix(p) + repr_closed_forms(p) + repr_recurrences(p)
            + repr_orthogonality(p) + [repr_numeric(p)])


_RUNNERS: dict[str, Callable[[int, random.Random], list[Check]]] = {
    "hopf": suite_hopf,
    "duality": suite_duality,
    "integral": suite_integral,
    "forms": suite_forms,
    "repr": suite_repr,
}


def run_suite(p: int, suite: str = "all", seed: int = 0) -> list[Check]:
    """Run one suite (or all); the result is sorted by assertion id."""
    if p < 3 or p % 2 == 0:
        raise ValueError(f"p must be an odd integer >= 3 (the root of unity has odd order), got {p}")
    names = SUITES if suite == "all" else (suite,)
    for name in names:
        if name not in _RUNNERS:
            raise ValueError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)} or all")
    out = []
    for name in names:
        out.extend(_RUNNERS[name](p, random.Random(f"{seed}:{name}")))
    return sorted(out, key=lambda c: c.assertion_id)


__all__ = ["Check", "SUITES", "run_suite", "expected_signature", "GENERATOR_NAMES"]
