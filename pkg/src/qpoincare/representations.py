"""Representations L^lambda and L^(m), the universal T-matrix evaluated in
them, matrix elements D^lambda_mn and the identities they satisfy.

Operators on A(SO(1,1|p)) = span(delta^0 .. delta^(p-1)) are p x p matrices;
an element of End(V) (x) A is a p x p matrix with group-algebra entries,
multiplied as (MN)_ij = sum_k M_ik N_kj with the entries kept in order.
"""

from __future__ import annotations

import json
from typing import Callable

from .algebra import Element, Tensor
from .duality import right_rep
from .extended import EElement, e_coproduct, e_counit, e_star
from .invariants import herm_form, integral_E, integral_reduced
from .quantum_algebra import UElement
from .reduced import AElement
from .scalars import CycScalar, ParamScalar, as_param_scalar, embed_numeric, field, q_fact_inv

# -- generic matrices ------------------------------------------------------------


class Matrix:
    """Square matrix over a (possibly noncommutative) ring of algebra elements."""

    __slots__ = ("p", "rows", "_zero")

    def __init__(self, rows: list[list], zero):
        self.rows = [list(r) for r in rows]
        self._zero = zero
        self.p = len(rows)

    @classmethod
    def identity(cls, size: int, zero, one):
        return cls([[one if i == j else zero for j in range(size)] for i in range(size)], zero)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __add__(self, other: Matrix) -> Matrix:
        return Matrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)], self._zero)

    def __sub__(self, other: Matrix) -> Matrix:
        return Matrix([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)], self._zero)

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return Matrix([[a * other for a in r] for r in self.rows], self._zero)
        n = self.p
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = self._zero
                for k in range(n):
                    a, b = self.rows[i][k], other.rows[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Matrix(out, self._zero)

    def __rmul__(self, c):
        return Matrix([[c * a for a in r] for r in self.rows], self._zero)

    def map(self, f: Callable) -> Matrix:
        return Matrix([[f(a) for a in r] for r in self.rows], f(self._zero))

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.rows == other.rows

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.rows))

    def is_zero(self) -> bool:
        return not any(a for r in self.rows for a in r)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def render(self) -> list[list[str]]:
        return [[a.render() for a in r] for r in self.rows]


# -- q-special functions ---------------------------------------------------------


def _one_like(x, p: int):
    if isinstance(x, Matrix):
        sample = x.rows[0][0]
        return Matrix.identity(x.p, x._zero, _one_like(sample, p))
    if isinstance(x, Element):
        return type(x).one(x.p)
    return ParamScalar.const(field(p), 1)


def _p_of(x, p):
    if p is not None:
        return p
    if isinstance(x, Matrix):
        return _p_of(x.rows[0][0], None)
    if isinstance(x, Element):
        return x.p
    if isinstance(x, ParamScalar):
        return x.field.p
    if isinstance(x, CycScalar):
        return x.field.p
    raise ValueError("p must be given for plain numbers")


def cutoff_qexp(x, sign: int = 1, p: int | None = None):
    """e_sign^x = sum_{m<p} q^(sign m(m-1)/2) / [m]! x^m."""
    p = _p_of(x, p)
    fld = field(p)
    if isinstance(x, (int,)):
        x = ParamScalar.const(fld, x)
    one = _one_like(x, p)
    total = one
    power = one
    for m in range(1, p):
        power = power * x
        if not power:
            break
        c = fld.q_power(sign * (m * (m - 1) // 2)) * q_fact_inv(p, m)
        total = total + power * c
    return total


def qbessel_cut(m: int, x, p: int | None = None):
    """J_m(x) = sum_{k=0}^{p-1-m} (-1)^k / ([k]! [k+m]!) (q^m x)^k."""
    p = _p_of(x, p)
    fld = field(p)
    if not 0 <= m <= p - 1:
        raise ValueError(f"m must lie in [0, {p - 1}]")
    if isinstance(x, int):
        x = ParamScalar.const(fld, x)
    y = x * fld.q_power(m)
    one = _one_like(x, p)
    total = one * q_fact_inv(p, m)
    power = one
    for k in range(1, p - m):
        power = power * y
        if not power:
            break
        c = q_fact_inv(p, k) * q_fact_inv(p, k + m)
        total = total + power * (c if k % 2 == 0 else -c)
    return total


# -- representations of U --------------------------------------------------------


def default_lambda(p: int, primed: bool = False) -> tuple[ParamScalar, ParamScalar]:
    fld = field(p)
    tag = "'" if primed else ""
    return ParamScalar.param(fld, f"lambda{tag}+"), ParamScalar.param(fld, f"lambda{tag}-")


def _scalar_matrix(p: int, entries: dict) -> Matrix:
    fld = field(p)
    zero = ParamScalar(fld)
    rows = [[zero] * p for _ in range(p)]
    for (i, j), v in entries.items():
        rows[i][j] = as_param_scalar(fld, v)
    return Matrix(rows, zero)


def rep_L(p: int, lam_plus=None, lam_minus=None) -> dict[str, Matrix]:
    """L(p+-) delta^m = lambda+- delta^(m+-1), L(kappa) delta^m = q^m delta^m, L(P+-) = lambda+-^p."""
    fld = field(p)
    if lam_plus is None and lam_minus is None:
        lam_plus, lam_minus = default_lambda(p)
    lp, lm = as_param_scalar(fld, lam_plus), as_param_scalar(fld, lam_minus)
    if not lp and not lm:
        raise ValueError("lambda = (0, 0) is not an irreducible L^lambda; use rep_L_weight(m)")
    # column m holds the image of delta^m
    return {
        "p+": _scalar_matrix(p, {((m + 1) % p, m): lp for m in range(p)}),
        "p-": _scalar_matrix(p, {((m - 1) % p, m): lm for m in range(p)}),
        "kappa": _scalar_matrix(p, {(m, m): fld.q_power(m) for m in range(p)}),
        "P+": _scalar_matrix(p, {(m, m): lp ** p for m in range(p)}),
        "P-": _scalar_matrix(p, {(m, m): lm ** p for m in range(p)}),
    }


def rep_L_weight(p: int, m: int) -> dict[str, Matrix]:
    """One-dimensional L^(m) on span(delta^m)."""
    fld = field(p)
    zero = ParamScalar(fld)
    return {
        "p+": Matrix([[zero]], zero),
        "p-": Matrix([[zero]], zero),
        "kappa": Matrix([[ParamScalar.const(fld, fld.q_power(m))]], zero),
        "P+": Matrix([[zero]], zero),
        "P-": Matrix([[zero]], zero),
    }


def rep_image(rep: dict[str, Matrix], phi: UElement) -> Matrix:
    """Extend a generator map to a PBW element."""
    size = rep["kappa"].p
    fld = field(phi.p)
    zero, one = ParamScalar(fld), ParamScalar.const(fld, 1)
    ident = Matrix.identity(size, zero, one)
    total = Matrix([[zero] * size for _ in range(size)], zero)

    def power(mat, e):
        out = ident
        for _ in range(e):
            out = out * mat
        return out

    for (t, s, n, m, k), c in phi.terms.items():
        term = power(rep["P+"], t) * power(rep["P-"], s) * power(rep["p+"], n) * power(rep["p-"], m)
        term = term * power(rep["kappa"], k)
        total = total + term * c
    return total


def adjoint_S(p: int, mat: Matrix) -> Matrix:
    """Adjoint with respect to (a, b)_S = I_S(a* b); G = Gram matrix is its own inverse."""
    # (L a, b)_S = (a, L^+ b)_S with L^+ = G^-1 conj(L)^T G and G_ab = [a + b = 0 mod p]
    size = mat.p
    out = []
    for i in range(size):
        row = []
        for j in range(size):
            row.append(mat[(-j) % size, (-i) % size].conjugate())
        out.append(row)
    return Matrix(out, mat._zero)


def star_property(p: int, rep: dict[str, Matrix]) -> dict[str, bool]:
    """L(phi)^+ = L(phi*) for the generators (all self-adjoint under *)."""
    return {name: adjoint_S(p, mat) == mat for name, mat in rep.items()}


# -- the T-matrix --------------------------------------------------------------------


def _e_scalar_matrix(p: int, mat: Matrix, factor: EElement) -> Matrix:
    zero = EElement(p)
    return Matrix([[factor.scale(a) if a else zero for a in r] for r in mat.rows], zero)


def exp_prefactor(p: int, lam_plus, lam_minus) -> EElement:
    """exp(-i lambda+^p z+ - i lambda-^p z-)."""
    fld = field(p)
    lp, lm = as_param_scalar(fld, lam_plus), as_param_scalar(fld, lam_minus)
    return EElement.exp(p, -(lp ** p) * fld.i, -(lm ** p) * fld.i)


def epsilon_image(p: int, rep: dict[str, Matrix], sign: int) -> Matrix:
    """L(epsilon_sign) = -q^(-sign/2) L(p_sign) L(kappa)^-1."""
    fld = field(p)
    kinv = Matrix([[a.conjugate() if i == j else a for j, a in enumerate(r)] for i, r in enumerate(rep["kappa"].rows)],
                  rep["kappa"]._zero)
    g = rep["p+"] if sign > 0 else rep["p-"]
    return (g * kinv) * (-fld.half_q_power(-sign))


class DMatrix(Matrix):
    """Matrix elements D_mn of T^lambda; entries are EElements."""

    __slots__ = ("lam",)

    def __init__(self, rows, zero, lam=None):
        super().__init__(rows, zero)
        self.lam = lam

    def to_json(self) -> str:
        return json.dumps(self.render(), indent=None, separators=(",", ":"))

    def numeric(self, assignment: dict, z: tuple[float, float] = (0.0, 0.0)) -> list[list[dict]]:
        """Each entry as {reduced monomial: complex coefficient} at the given parameters."""
        out = []
        for r in self.rows:
            out.append([numeric_coefficients(e, assignment) for e in r])
        return out


def numeric_coefficients(x: EElement, assignment: dict) -> dict:
    """Coefficients of the reduced monomials with the common exponential stripped."""
    out = {}
    for (ak, (a, b, u, v)), c in x.terms.items():
        out[ak] = out.get(ak, 0) + embed_numeric(c, assignment)
    return out


def universal_T_rep(p: int, lam_plus=None, lam_minus=None) -> DMatrix:
    """T^lambda as the p x p matrix D_mn with T delta^n = sum_m delta^m (x) D_mn."""
    fld = field(p)
    if lam_plus is None and lam_minus is None:
        lam_plus, lam_minus = default_lambda(p)
    rep = rep_L(p, lam_plus, lam_minus)
    zero = EElement(p)
    x_plus = _e_scalar_matrix(p, epsilon_image(p, rep, 1) * fld.i, EElement.from_a(AElement.eta_plus(p)))
    x_minus = _e_scalar_matrix(p, epsilon_image(p, rep, -1) * fld.i, EElement.from_a(AElement.eta_minus(p)))
    e_plus = cutoff_qexp(x_plus, 1, p)
    e_minus = cutoff_qexp(x_minus, -1, p)
    # D(L(kappa), delta) = (1/p) sum q^(-mk) L(kappa)^m (x) delta^k = diag(delta^j)
    d = Matrix([[EElement.from_a(AElement.delta(p, i)) if i == j else zero for j in range(p)] for i in range(p)], zero)
    prod = (e_plus * e_minus) * d
    pref = exp_prefactor(p, lam_plus, lam_minus)
    rows = [[pref * e for e in r] for r in prod.rows]
    return DMatrix(rows, zero, (lam_plus, lam_minus))


def projector_D(p: int, rep: dict[str, Matrix]) -> Matrix:
    """D(L(kappa), delta) from its defining double sum, as a matrix over A."""
    fld = field(p)
    zero = EElement(p)
    size = rep["kappa"].p
    total = Matrix([[zero] * size for _ in range(size)], zero)
    kap = rep["kappa"]
    power = Matrix.identity(size, kap._zero, ParamScalar.const(fld, 1))
    for m in range(p):
        for k in range(p):
            c = fld.q_power(-m * k) / p
            total = total + _e_scalar_matrix(p, power * c, EElement.from_a(AElement.delta(p, k)))
        power = power * kap
    return total


def weight_T(p: int, m: int) -> EElement:
    """T^(m) delta^m = delta^m (x) (this element)."""
    rep = rep_L_weight(p, m)
    return projector_D(p, rep)[0, 0]


# -- closed forms ---------------------------------------------------------------------


def _xi(p: int) -> EElement:
    fld = field(p)
    return EElement.from_a(AElement.mono(p, 1, 1)).scale(fld.q)


def dmatrix_closed(p: int, m: int, n: int, lam_plus=None, lam_minus=None) -> EElement:
    """The two-branch closed form for D_mn, read with the q-power inside the bracketed power."""
    fld = field(p)
    if lam_plus is None and lam_minus is None:
        lam_plus, lam_minus = default_lambda(p)
    lp, lm = as_param_scalar(fld, lam_plus), as_param_scalar(fld, lam_minus)
    lam2 = lp * lm
    xi = _xi(p)
    delta_n = EElement.from_a(AElement.delta(p, n))
    eta_p = EElement.from_a(AElement.eta_plus(p))
    eta_m = EElement.from_a(AElement.eta_minus(p))
    one = EElement.one(p)

    def ksum(upper, sign_q, shift):
        total = EElement(p)
        power = one
        for k in range(upper + 1):
            if k > 0:
                power = power * xi
            if k + shift > p - 1:
                break
            c = (-lam2) ** k * fld.q_power(sign_q * k * (m + n)) * q_fact_inv(p, k) * q_fact_inv(p, k + shift)
            total = total + power.scale(c)
        return total

    minus_base = eta_m.scale(-fld.i * fld.half_q_power(1 - 2 * n) * lm)
    plus_base = eta_p.scale(-fld.i * fld.half_q_power(-1 - 2 * n) * lp)
    if n >= m:
        first = ksum(p - 1 - n + m, -1, n - m) * minus_base ** (n - m) * delta_n
        second = plus_base ** (p + m - n) * delta_n * ksum(n - m, 1, p + m - n) if p + m - n < p else EElement(p)
        body = first + second
    else:
        first = ksum(m - n, -1, p + n - m) * minus_base ** (p + n - m) * delta_n
        second = plus_base ** (m - n) * delta_n * ksum(p - 1 - m + n, 1, m - n)
        body = first + second
    return exp_prefactor(p, lp, lm) * body


def dmatrix_mat(p: int, m: int, lam_plus=None, lam_minus=None) -> EElement:
    """D_m0 = exp(...) [J_(p-m)(lambda^2 xi) (-i q^(1/2) lambda- eta-)^(p-m) + (-i q^(-1/2) lambda+ eta+)^m J_m(lambda^2 xi)].

    J_p is read as 0 (its sum is empty), which is what makes the m = 0 term vanish.
    """
    fld = field(p)
    if lam_plus is None and lam_minus is None:
        lam_plus, lam_minus = default_lambda(p)
    lp, lm = as_param_scalar(fld, lam_plus), as_param_scalar(fld, lam_minus)
    arg = _xi(p).scale(lp * lm)
    eta_p = EElement.from_a(AElement.eta_plus(p))
    eta_m = EElement.from_a(AElement.eta_minus(p))
    body = (eta_p.scale(-fld.i * fld.half_q_power(-1) * lp) ** m) * qbessel_cut(m, arg, p)
    if m > 0:
        body = qbessel_cut(p - m, arg, p) * eta_m.scale(-fld.i * fld.sqrt_q * lm) ** (p - m) + body
    return exp_prefactor(p, lp, lm) * body


def closed_form_report(p: int) -> list[dict]:
    """Compare dmatrix_closed with universal_T_rep entry by entry."""
    d = universal_T_rep(p)
    out = []
    for m in range(p):
        for n in range(p):
            closed = dmatrix_closed(p, m, n)
            truth = d[m, n]
            diff = closed - truth
            out.append({
                "m": m, "n": n, "match": not diff,
                "difference": diff.render() if diff else "",
            })
    return out


# -- identities -----------------------------------------------------------------------


def pseudo_unitarity_defects(d: DMatrix) -> dict[tuple[int, int], EElement]:
    """{T delta^a, T delta^b}_S - (delta^a, delta^b)_S 1, for all a, b."""
    p = d.p
    out = {}
    stars = {(i, j): e_star(d[i, j]) for i in range(p) for j in range(p)}
    for a in range(p):
        for b in range(p):
            total = EElement(p)
            for mm in range(p):
                total = total + stars[mm, a] * d[(p - mm) % p, b]
            expected = 1 if (a + b) % p == 0 else 0
            out[(a, b)] = total - EElement.one(p).scale(expected)
    return out


def addition_theorem_defects(d: DMatrix) -> dict[tuple[int, int], Tensor]:
    """Delta(D_nm) - sum_k D_nk (x) D_km."""
    from .algebra import tensor

    p = d.p
    out = {}
    for n in range(p):
        for m in range(p):
            lhs = e_coproduct(d[n, m])
            rhs = Tensor(p, (EElement, EElement))
            for k in range(p):
                rhs = rhs + tensor(d[n, k], d[k, m])
            out[(n, m)] = lhs - rhs
    return out


def counit_slice(d: DMatrix) -> list[list[ParamScalar]]:
    return [[e_counit(e) for e in r] for r in d.rows]


def recurrence_defects(d: DMatrix) -> dict[str, EElement]:
    """Shift recurrences, Casimir, weight and P-eigenvalue equations on the column n = 0."""
    p = d.p
    fld = field(p)
    lp, lm = (as_param_scalar(fld, x) for x in d.lam)
    pp, pm, kap = UElement.p_plus(p), UElement.p_minus(p), UElement.kappa(p)
    out = {}
    for m in range(p):
        col = d[m, 0]
        out[f"R(p+)D[{m},0]"] = right_rep(pp, col) - d[(m - 1) % p, 0].scale(lp)
        out[f"R(p-)D[{m},0]"] = right_rep(pm, col) - d[(m + 1) % p, 0].scale(lm)
        out[f"R(p+p-)D[{m},0]"] = right_rep(pp * pm, col) - col.scale(lp * lm)
        out[f"R(kappa)D[{m},0]"] = right_rep(kap, col) - col.scale(fld.q_power(m))
        out[f"R(P+)D[{m},0]"] = right_rep(UElement.P_plus(p), col) - col.scale(lp ** p)
        out[f"R(P-)D[{m},0]"] = right_rep(UElement.P_minus(p), col) - col.scale(lm ** p)
    return out


def p_prime(p: int, sign: int) -> UElement:
    """p'_+ = q^(-1/2) p+ kappa^-1,  p'_- = q^(-1/2) p- kappa."""
    fld = field(p)
    if sign > 0:
        return (UElement.p_plus(p) * UElement.kappa(p, -1)).scale(fld.half_q_power(-1))
    return (UElement.p_minus(p) * UElement.kappa(p, 1)).scale(fld.half_q_power(-1))


def plane_wave(p: int, chi_plus=None, chi_minus=None) -> EElement:
    """Y = e_+^(-i chi+ eta+) e_+^(-i q chi- eta-) exp(i chi+^p z+) exp(i chi-^p z-)."""
    fld = field(p)
    if chi_plus is None and chi_minus is None:
        chi_plus, chi_minus = ParamScalar.param(fld, "chi+"), ParamScalar.param(fld, "chi-")
    cp, cm = as_param_scalar(fld, chi_plus), as_param_scalar(fld, chi_minus)
    yp = cutoff_qexp(EElement.from_a(AElement.eta_plus(p)).scale(-fld.i * cp), 1, p)
    ym = cutoff_qexp(EElement.from_a(AElement.eta_minus(p)).scale(-fld.i * fld.q * cm), 1, p)
    return yp * ym * EElement.exp(p, fld.i * cp ** p, fld.i * cm ** p)


def plane_wave_defects(p: int, chi_plus=None, chi_minus=None) -> dict[str, EElement]:
    fld = field(p)
    if chi_plus is None and chi_minus is None:
        chi_plus, chi_minus = ParamScalar.param(fld, "chi+"), ParamScalar.param(fld, "chi-")
    cp, cm = as_param_scalar(fld, chi_plus), as_param_scalar(fld, chi_minus)
    y = plane_wave(p, cp, cm)
    return {
        "R(p'+)Y": right_rep(p_prime(p, 1), y) - y.scale(cp),
        "R(p'-)Y": right_rep(p_prime(p, -1), y) - y.scale(cm),
        "R(P+)Y": right_rep(UElement.P_plus(p), y) + y.scale(cp ** p),
        "R(P-)Y": right_rep(UElement.P_minus(p), y) + y.scale(cm ** p),
    }


def adjoint_defects(p: int, samples) -> dict[str, ParamScalar]:
    """(R(phi) X, Y) - (X, R(phi*) Y) on reduced samples, for the reduced form."""
    from .quantum_algebra import u_star

    out = {}
    for name, phi in (("p+", UElement.p_plus(p)), ("p-", UElement.p_minus(p)), ("kappa", UElement.kappa(p))):
        for a, x in enumerate(samples):
            for b, y in enumerate(samples):
                lhs = herm_form(right_rep(phi, x).a_part(), y, "reduced")
                rhs = herm_form(x, right_rep(u_star(phi), y).a_part(), "reduced")
                out[f"{name}:{a},{b}"] = lhs - rhs
    return out


# -- orthogonality ---------------------------------------------------------------------


def k_sum(p: int) -> CycScalar:
    fld = field(p)
    total = fld.zero
    for k in range(p):
        inv = q_fact_inv(p, k) * q_fact_inv(p, p - 1 - k)
        total = total + inv * inv
    return total


def orthogonality_discrete(p: int, n: int, m: int) -> dict:
    """(D^lambda_n0, D^lambda'_m0)_E split into its reduced factor and its delta part."""
    fld = field(p)
    lam = default_lambda(p)
    lam_p = default_lambda(p, primed=True)
    dn = universal_T_rep(p, *lam)[n, 0]
    dm = universal_T_rep(p, *lam_p)[m, 0]
    product = dn * e_star(dm)
    groups = product.z_parts()
    if len(groups) > 1:
        raise AssertionError("the exponential factors did not combine into one")
    (zk, reduced), = groups.items() if groups else ((None, AElement(p)),)
    factor = integral_reduced(reduced)
    dist = integral_E(product) if zk is not None else None
    sliced = factor
    for tag in ("+", "-"):
        sliced = sliced.subs(f"lambda'{tag}", ParamScalar.param(fld, f"lambda{tag}"))
    lam_power = (lam[0] * lam[1]) ** (p - 1)
    coefficient = None
    if sliced:
        lead = sliced.terms.get(next(iter(lam_power.terms)))
        if lead is not None and sliced == lam_power * lead:
            coefficient = lead
    return {
        "reduced_factor": factor,
        "slice": sliced,
        "lambda_power": lam_power,
        "coefficient": coefficient,
        "distribution": dist,
        "k_sum": k_sum(p),
        # delta(x^p - x'^p) = delta(x - x') / (p x^(p-1)) for real x != 0 and odd p,
        # so (2 pi)^2 k_sum (lambda+ lambda-)^(p-1) delta delta becomes (2 pi)^2 / p^2 k_sum delta(l - l') delta(l - l')
        "continuous_normalization": "(2*pi)^2/p^2 * k_sum",
    }


__all__ = [
    "Matrix", "DMatrix", "cutoff_qexp", "qbessel_cut", "rep_L", "rep_L_weight", "rep_image",
    "star_property", "universal_T_rep", "weight_T", "dmatrix_closed", "dmatrix_mat",
    "closed_form_report", "pseudo_unitarity_defects", "addition_theorem_defects", "counit_slice",
    "recurrence_defects", "plane_wave", "plane_wave_defects", "p_prime", "orthogonality_discrete",
    "k_sum", "adjoint_defects", "exp_prefactor", "projector_D", "epsilon_image", "default_lambda",
]
