"""Acceptance criteria.

Each test appends one ``criterion N <name>: PASS|FAIL (detail)`` line to the
session log (shown in the terminal summary) and prints it, then asserts.
"""

import math
import time

from qpoincare.extended import EElement, e_star
from qpoincare.invariants import gram_signature, integral_reduced, invariant_functional_space
from qpoincare.numeric import cross_check
from qpoincare.representations import (
    dmatrix_mat,
    k_sum,
    orthogonality_discrete,
    universal_T_rep,
)
from qpoincare.reduced import AElement
from qpoincare.scalars import field
from qpoincare.suites import (
    duality_coproduct_rule,
    duality_nondegenerate,
    duality_product_rule,
    expected_signature,
    hopf_axioms_A,
    integral_invariance,
    integral_uniqueness,
    repr_closed_forms,
    repr_orthogonality,
    repr_recurrences,
    repr_relations,
    repr_T_matrix,
)

# pinned tolerances; everything else is exact
K_SUM_TOL = 1e-10
NUMERIC_TOL = 1e-10
HOPF_RUNTIME_LIMIT = 60.0

SMALL = (3, 5)
DESK = (3, 5, 7)


def record(log, number, name, ok, detail):
    line = f"criterion {number:2d} {name}: {'PASS' if ok else 'FAIL'} ({detail})"
    log.append(line)
    print(line)
    return ok


def failing(checks):
    return [f"p={p} {c.assertion_id}: {c.detail}" for p, c in checks if not c.passed]


def test_criterion_01_hopf_axioms(acceptance_log):
    start = time.perf_counter()
    checks = [(p, c) for p in DESK for c in hopf_axioms_A(p)]
    elapsed = time.perf_counter() - start
    bad = failing(checks)
    ok = not bad and elapsed < HOPF_RUNTIME_LIMIT
    detail = f"{len(checks)} checks over p=3,5,7 in {elapsed:.1f}s" if ok else "; ".join(bad) or f"{elapsed:.1f}s"
    assert record(acceptance_log, 1, "Hopf axioms on A", ok, detail)


def test_criterion_02_duality(acceptance_log):
    checks = [(p, f(p)) for p in SMALL for f in (duality_product_rule, duality_coproduct_rule, duality_nondegenerate)]
    bad = failing(checks)
    detail = ", ".join(f"p={p} {c.detail}" for p, c in checks) if not bad else "; ".join(bad)
    assert record(acceptance_log, 2, "duality rules and non-degeneracy", not bad, detail)


def test_criterion_03_invariant_integral(acceptance_log):
    checks = [(p, c) for p in DESK for c in integral_invariance(p) + [integral_uniqueness(p)]]
    bad = failing(checks)
    # the unique solution is proportional to the integral itself on every basis monomial
    for p in DESK:
        basis, sols = invariant_functional_space(p)
        if len(sols) != 1:
            bad.append(f"p={p}: dimension {len(sols)}")
            continue
        values = [integral_reduced(AElement.monomial(p, b)).constant() for b in basis]
        j0 = basis.index((p - 1, p - 1, 0))
        scale = values[j0] / sols[0][j0]
        if values[j0] != field(p).q_power(-1):
            bad.append(f"p={p}: top value {values[j0].render()}")
        if [s * scale for s in sols[0]] != values:
            bad.append(f"p={p}: solution not proportional to the integral")
    assert record(acceptance_log, 3, "invariant integral", not bad,
                  "left/right invariance exact, 1-dim space, generator q^-1 at eta+^(p-1) eta-^(p-1)"
                  if not bad else "; ".join(bad))


def test_criterion_04_signatures(acceptance_log):
    got, bad = [], []
    for p in DESK:
        for space in ("SO", "M"):
            sig = gram_signature(p, space)
            want = expected_signature(p, space)
            got.append(f"p={p} {space}={sig}")
            if sig != want:
                bad.append(f"p={p} {space}: {sig} != {want}")
    assert record(acceptance_log, 4, "form signatures", not bad, ", ".join(got) if not bad else "; ".join(bad))


def test_criterion_05_representation_relations(acceptance_log):
    checks = [(p, c) for p in SMALL for c in repr_relations(p)]
    bad = failing(checks)
    assert record(acceptance_log, 5, "L^lambda relations and star property", not bad,
                  f"{len(checks)} checks, symbolic lambda, p=3,5" if not bad else "; ".join(bad))


def test_criterion_06_t_matrix(acceptance_log):
    checks = [(p, c) for p in SMALL for c in repr_T_matrix(p)]
    bad = failing(checks)
    # component sums: sum_k D_km^* D_(p-k)n at (0,0) and (s,p-s) give 1
    for p in SMALL:
        d = universal_T_rep(p)
        one = EElement.one(p)

        def lhs(m, n):
            total = e_star(d[0, m]) * d[0, n]
            for k in range(1, p):
                total = total + e_star(d[k, m]) * d[p - k, n]
            return total

        for m, n in [(0, 0)] + [(s, p - s) for s in range(1, p)]:
            if lhs(m, n) != one:
                bad.append(f"p={p}: component sum ({m},{n}) != 1")
    assert record(acceptance_log, 6, "T-matrix pseudo-unitarity, addition theorem, counit", not bad,
                  "exact for p=3,5" if not bad else "; ".join(bad))


def test_criterion_07_closed_forms(acceptance_log):
    checks = [(p, c) for p in SMALL for c in repr_closed_forms(p)]
    bad = failing(checks)
    for p in SMALL:
        d = universal_T_rep(p)
        bad.extend(f"p={p}: Bessel column m={m}" for m in range(p) if dmatrix_mat(p, m) != d[m, 0])
    assert record(acceptance_log, 7, "closed forms of D_mn", not bad,
                  "all (m,n) match for p=3,5; column n=0 via cut-off q-Bessel" if not bad else "; ".join(bad))


def test_criterion_08_recurrences(acceptance_log):
    checks = [(p, c) for p in SMALL for c in repr_recurrences(p)]
    bad = failing(checks)
    assert record(acceptance_log, 8, "recurrences, eigenvalues and plane waves", not bad,
                  ", ".join(f"p={p} {c.assertion_id} {c.detail}" for p, c in checks) if not bad else "; ".join(bad))


def test_criterion_09_orthogonality(acceptance_log):
    checks = [(p, c) for p in SMALL for c in repr_orthogonality(p)]
    bad = failing(checks)
    reports = []
    for p in SMALL:
        oracle = 0.0
        for k in range(p):
            oracle += 1.0 / (_qfact(p, k) * _qfact(p, p - 1 - k)) ** 2
        err = abs(complex(k_sum(p)) - oracle)
        if err > K_SUM_TOL:
            bad.append(f"p={p}: k-sum error {err:.2e}")
        r = orthogonality_discrete(p, 0, 0)
        reports.append(f"p={p} k_sum={oracle:.10g} |err|={err:.1e} normalization {r['continuous_normalization']}")
    assert record(acceptance_log, 9, "orthogonality, discrete part", not bad,
                  "; ".join(reports) if not bad else "; ".join(bad))


def test_criterion_10_numeric_cross_check(acceptance_log):
    err = cross_check(5, 1.0, 1.0)
    ok = err <= NUMERIC_TOL
    assert record(acceptance_log, 10, "numeric cross-check at p=5, lambda=(1,1)", ok,
                  f"max abs error {err:.2e} <= {NUMERIC_TOL:.0e}" if ok else f"max abs error {err:.2e}")


def _qfact(p, n):
    s = math.sin(2 * math.pi / p)
    return math.prod(math.sin(2 * math.pi * j / p) / s for j in range(1, n + 1))
