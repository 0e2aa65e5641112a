import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from qpoincare.extended import EElement, d_dz, z_key
from qpoincare.invariants import (
    DeltaAtom,
    DistValue,
    assert_block_structure,
    e_left_invariance,
    e_right_invariance,
    gram_csv,
    gram_matrix,
    gram_signature,
    herm_form,
    integral_C,
    integral_E,
    integral_reduced,
    integral_S,
    invariant_functional_space,
    left_invariance_defect,
    right_invariance_defect,
)
from qpoincare.reduced import AElement, a_basis, a_star, basis_e_pm, e_pm_basis, zeta_idempotent
from qpoincare.scalars import ParamScalar, field

from conftest import a_elements

# tolerance of the quadrature oracle for the formal Fourier rules
FOURIER_TOL = 2e-3


def const(p, c):
    return ParamScalar.const(field(p), c)


def par(p, name):
    return ParamScalar.param(field(p), name)


# -- the reduced integral -------------------------------------------------------------


@pytest.mark.parametrize("p", (3, 5, 7))
def test_integral_values(p):
    fld = field(p)
    assert integral_reduced(AElement.mono(p, p - 1, p - 1)) == const(p, fld.q_power(-1))
    assert integral_reduced(AElement.one(p)).is_zero()
    assert integral_reduced(AElement.mono(p, p - 1, p - 1, 1)).is_zero()
    assert integral_reduced(AElement.mono(p, p - 1, p - 2)).is_zero()


@settings(max_examples=100)
@given(a_elements(5))
def test_integral_of_star_is_conjugate(x):
    assert integral_reduced(a_star(x)) == integral_reduced(x).conjugate()


@pytest.mark.parametrize("p", (3, 5, 7))
def test_left_and_right_invariance(p):
    for key in a_basis(p):
        assert left_invariance_defect(p, key).is_zero()
        assert right_invariance_defect(p, key).is_zero()


@pytest.mark.parametrize("p", (3, 5, 7))
def test_invariant_functional_is_unique(p):
    basis, sols = invariant_functional_space(p)
    assert len(sols) == 1
    support = [basis[j] for j, v in enumerate(sols[0]) if v]
    assert support == [(p - 1, p - 1, 0)]


# -- I_S ----------------------------------------------------------------------------------


@pytest.mark.parametrize("p", (3, 5))
def test_integral_S(p):
    assert integral_S(AElement.delta(p) ** p) == const(p, 1)
    assert integral_S(AElement.delta(p, 2)).is_zero()
    for m in range(p):
        assert integral_S(zeta_idempotent(p, m)) == const(p, Fraction(1, p))
    with pytest.raises(ValueError):
        integral_S(AElement.eta_plus(p))


# -- I_C and I_E --------------------------------------------------------------------------


def _fourier_oracle(order: int, g, length: float = 400.0) -> complex:
    """Quadrature of  int g(r) [int_{-L}^{L} z^order e^{i r z} dz] dr  for a smooth test function g."""
    r = np.linspace(-6.0, 6.0, 240001)
    r = r[np.abs(r) > 1e-9]
    if order == 0:
        inner = 2 * np.sin(r * length) / r
    else:
        inner = 2j * (np.sin(r * length) / r ** 2 - length * np.cos(r * length) / r)
    vals = g(r) * inner
    return complex(np.trapezoid(vals, r) if hasattr(np, "trapezoid") else np.trapz(vals, r))


def test_fourier_rules_against_quadrature():
    # g(r) = exp(-(r - 0.3)^2): pairing with 2 pi delta(r) gives 2 pi g(0),
    # and with 2 pi (-i) delta'(r) gives 2 pi i g'(0)
    g = lambda r: np.exp(-(r - 0.3) ** 2)  # noqa: E731
    g0 = math.exp(-0.09)
    dg0 = 0.6 * g0
    assert abs(_fourier_oracle(0, g) - 2 * math.pi * g0) < FOURIER_TOL
    assert abs(_fourier_oracle(1, g) - 2j * math.pi * dg0) < FOURIER_TOL

    p = 3
    fld = field(p)
    chi = par(p, "chi+")
    # the exact rule produces the same distributions
    d0 = integral_C(EElement.exp(p, chi * fld.i, par(p, "chi-") * fld.i))
    d1 = integral_C(EElement.z(p, 1) * EElement.exp(p, chi * fld.i, par(p, "chi-") * fld.i))
    a0 = (DeltaAtom(par(p, "chi-"), 0), DeltaAtom(chi, 0))
    a1 = (DeltaAtom(par(p, "chi-"), 0), DeltaAtom(chi, 1))
    assert d0.coefficient(2, a0) == const(p, 1)
    assert d1.coefficient(2, a1) == const(p, -fld.i)


def test_integral_C_fourier_pair():
    p = 3
    fld = field(p)
    a, b = par(p, "chi+"), par(p, "lambda+")
    f = EElement.exp(p, (a - b) * fld.i, par(p, "chi-") * fld.i)
    out = integral_C(f)
    assert not out.is_degenerate()
    assert out.render() == "(1)*(2*pi)^2*delta(chi-)*delta(lambda+ - chi+)"
    # no oscillation in z-: the z- integral is a delta(0) symbol, reported and flagged
    g = EElement.exp(p, (a - b) * fld.i)
    out = integral_C(g)
    assert out.is_degenerate()
    assert out.render() == "(1)*(2*pi)^2*delta(0)*delta(lambda+ - chi+)"


def test_integral_C_degenerate_constant():
    out = integral_C(EElement.one(3))
    assert out.is_degenerate()
    assert out.render() == "(1)*(2*pi)^2*delta(0)*delta(0)"


def test_integral_C_rejects_growth():
    p = 3
    with pytest.raises(ValueError):
        integral_C(EElement.exp(p, par(p, "chi+")))


@pytest.mark.parametrize("p", (3, 5))
def test_integral_C_kills_derivatives(p):
    fld = field(p)
    rng = random.Random(p)
    for _ in range(8):
        u = par(p, "chi+") * fld.i * rng.choice((-2, -1, 1, 3))
        v = par(p, "chi-") * fld.i * rng.choice((-1, 1, 2))
        f = EElement.monomial(p, ((0, 0, 0), z_key(p, rng.randrange(3), rng.randrange(3), u, v)))
        for which in (1, -1):
            assert integral_C(d_dz(f, which)).is_zero()


def test_delta_sign_convention():
    p = 3
    x = par(p, "chi+")
    assert DistValue.from_atoms(p, const(p, 1), 1, [DeltaAtom(-x, 0)]) == DistValue.from_atoms(
        p, const(p, 1), 1, [DeltaAtom(x, 0)])
    # delta' is odd
    assert DistValue.from_atoms(p, const(p, 1), 1, [DeltaAtom(-x, 1)]) == DistValue.from_atoms(
        p, const(p, -1), 1, [DeltaAtom(x, 1)])


def test_localization_of_a_parameter_coefficient():
    # chi+ delta(chi+) = 0 and chi+ delta'(chi+) = -delta(chi+)
    p = 3
    x = par(p, "chi+")
    assert DistValue.from_atoms(p, x, 0, [DeltaAtom(x, 0)]).is_zero()
    assert DistValue.from_atoms(p, x, 0, [DeltaAtom(x, 1)]) == DistValue.from_atoms(
        p, const(p, -1), 0, [DeltaAtom(x, 0)])


@pytest.mark.parametrize("p", (3, 5))
def test_integral_E_example(p):
    fld = field(p)
    a, b = par(p, "chi+"), par(p, "chi-")
    F = EElement.from_a(AElement.mono(p, p - 1, p - 1)) * EElement.exp(p, a * fld.i, b * fld.i)
    out = integral_E(F)
    expected = DistValue.from_atoms(p, const(p, fld.q_power(-1)), 2, [DeltaAtom(a, 0), DeltaAtom(b, 0)])
    assert out == expected
    assert not out.is_degenerate()


def test_integral_E_of_one_is_flagged():
    out = integral_E(EElement.one(3))
    assert out.is_degenerate()
    assert out.is_zero()


@pytest.mark.parametrize("p", (3, 5))
def test_extended_invariance(p):
    fld = field(p)
    a, b = par(p, "chi+"), par(p, "chi-")
    for ak in ((p - 1, p - 1, 0), (p - 2, p - 1, 1), (p - 1, p - 2, 0), (0, 0, 0)):
        for zk in (z_key(p, 0, 0, a * fld.i, b * fld.i), z_key(p, 1, 0, a * fld.i, b * fld.i)):
            F = EElement.monomial(p, (ak, zk))
            lhs, rhs = e_left_invariance(F)
            assert lhs == rhs
            lhs, rhs = e_right_invariance(F)
            assert lhs == rhs


# -- Hermitian forms ------------------------------------------------------------------------


@pytest.mark.parametrize("p", (3, 5, 7))
def test_form_on_the_delta_algebra(p):
    for n in range(p):
        for m in range(p):
            want = (1 if n + m == 0 else 0) + (1 if n + m == p else 0)
            assert herm_form(AElement.delta(p, n), AElement.delta(p, m), "S") == const(p, want)


@given(a_elements(3), a_elements(3))
def test_reduced_form_is_hermitian(x, y):
    assert herm_form(y, x) == herm_form(x, y).conjugate()
    assert herm_form(x, x).is_real()


@settings(max_examples=100)
@given(a_elements(5))
def test_reduced_form_is_real_on_the_diagonal(x):
    assert herm_form(x, x).is_real()


def test_unknown_form():
    with pytest.raises(ValueError):
        herm_form(AElement.one(3), AElement.one(3), "X")


def _e_pm_gram(p):
    vecs = [(s, nm, num, nsq) for s in (1, -1) for nm, num, nsq in e_pm_basis(p, s)]
    return vecs, {(a[0], a[1], b[0], b[1]): herm_form(a[2], b[2]).constant() for a in vecs for b in vecs}


@pytest.mark.parametrize("p", (3, 5, 7))
def test_e_pm_diagonal_values(p):
    # (num, num) / normalizer^2 = +-1, except the self-paired vector which gives 2
    n0 = (p - 1) // 2
    for sign in (1, -1):
        for (n, m), num, nsq in e_pm_basis(p, sign):
            val = herm_form(num, num).constant() / nsq
            assert val == (2 if (n, m) == (n0, n0) else sign)


@pytest.mark.parametrize("p", (3, 5))
def test_e_pm_same_sign_orthogonality(p):
    vecs, g = _e_pm_gram(p)
    for s1, nm1, _, _ in vecs:
        for s2, nm2, _, _ in vecs:
            if s1 == s2 and nm1 != nm2:
                assert not g[(s1, nm1, s2, nm2)]


@pytest.mark.parametrize("p", (3, 5))
def test_e_pm_cross_sign_pairings(p):
    # e+_{nm} and e-_{nm} are not orthogonal for n < n0; all other cross pairs vanish
    vecs, g = _e_pm_gram(p)
    n0 = (p - 1) // 2
    fld = field(p)
    for s1, nm1, _, _ in vecs:
        for s2, nm2, _, _ in vecs:
            if s1 == 1 and s2 == -1:
                val = g[(s1, nm1, s2, nm2)]
                if nm1 == nm2 and nm1[0] < n0:
                    assert val
                else:
                    assert not val
    assert g[(1, (0, 0), -1, (0, 0))] != fld.zero


def _cross_value(p, n, m):
    num_p, _ = basis_e_pm(p, n, m, 1)
    num_m, _ = basis_e_pm(p, n, m, -1)
    return herm_form(num_p, num_m).constant()


def test_e_pm_cross_value_p3():
    fld = field(3)
    # computed once from the definitions: 2 w^2 - 1 at p = 3, which is q - q^-1 = i sqrt(3)
    assert _cross_value(3, 0, 0) == fld.w_power(2) * 2 - 1
    assert _cross_value(3, 0, 0) == fld.q - fld.q_power(-1)


def test_normalizer_sign_convention_p3():
    # q^1 + q^-1 = -1 at p = 3, so the principal root is imaginary and the raw form value is -1
    num, nsq = basis_e_pm(3, 0, 1, 1)
    assert nsq == -1
    assert herm_form(num, num).constant() == -1


# -- Gram matrices and signatures ----------------------------------------------------------------


@pytest.mark.parametrize("p", (3, 5, 7))
def test_signatures(p):
    assert gram_signature(p, "SO") == ((p + 1) // 2, (p - 1) // 2, 0)
    assert gram_signature(p, "M") == ((p * p + 1) // 2, (p * p - 1) // 2, 0)


def test_signature_examples():
    assert gram_signature(5, "SO") == (3, 2, 0)
    assert gram_signature(3, "M") == (5, 4, 0)
    assert gram_signature(5, "M") == (13, 12, 0)


@pytest.mark.parametrize("p", (3, 5))
def test_signature_on_the_whole_algebra(p):
    assert gram_signature(p, "A") == ((p ** 3 + 1) // 2, (p ** 3 - 1) // 2, 0)


@pytest.mark.parametrize("p", (3, 5))
def test_signature_against_numeric_eigenvalues(p):
    for space in ("SO", "M"):
        keys, g = gram_matrix(p, space)
        mat = np.array([[complex(v) for v in row] for row in g])
        assert np.allclose(mat, mat.conj().T)
        eig = np.linalg.eigvalsh(mat)
        assert min(abs(eig)) > 1e-9
        assert (int((eig > 0).sum()), int((eig < 0).sum()), 0) == gram_signature(p, space)


@pytest.mark.parametrize("p", (3, 5))
def test_block_structure(p):
    for space in ("SO", "M"):
        keys, g = gram_matrix(p, space)
        assert_block_structure(p, space, keys, g)
        index = {k: j for j, k in enumerate(keys)}
        for j, (n, m, k) in enumerate(keys):
            partner = (0, 0, (-k) % p) if space == "SO" else (p - 1 - n, p - 1 - m, 0)
            nonzero = [keys[l] for l, v in enumerate(g[j]) if v]
            assert nonzero == [partner]
            assert index[partner] is not None


def test_block_structure_detects_a_violation():
    p = 3
    keys, g = gram_matrix(p, "M")
    g = [list(r) for r in g]
    g[0][1] = field(p).one
    with pytest.raises(AssertionError):
        assert_block_structure(p, "M", keys, g)


def test_gram_csv_shape():
    text = gram_csv(3, "M")
    rows = text.strip().split("\n")
    assert len(rows) == 10
    assert all(len(r.split(",")) == 10 for r in rows)
    assert gram_csv(3, "M") == text
