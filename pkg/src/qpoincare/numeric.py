"""Floating-point evaluation of the T-matrix product, independent of the exact
code path: the reduced algebra is a p^3-dimensional complex vector space with
its own structure constants, and q-numbers come from sines.
"""

from __future__ import annotations

import cmath
import math

import numpy as np


class FloatAlgebra:
    """A(E(1,1|p)) with complex coefficients; basis eta+^n eta-^m delta^k."""

    def __init__(self, p: int):
        self.p = p
        self.dim = p ** 3
        self.q = cmath.exp(2j * math.pi / p)
        a_idx, b_idx, c_idx, phase = [], [], [], []
        for n1 in range(p):
            for m1 in range(p):
                for k1 in range(p):
                    for n2 in range(p - n1):
                        for m2 in range(p - m1):
                            for k2 in range(p):
                                # delta^k1 eta^N = q^(-2 k1 N) eta^N delta^k1 ; eta-^m1 eta+^n2 = q^(2 m1 n2) eta+^n2 eta-^m1
                                ph = self.q ** (2 * m1 * n2 - 2 * k1 * (n2 + m2))
                                a_idx.append(self.index(n1, m1, k1))
                                b_idx.append(self.index(n2, m2, k2))
                                c_idx.append(self.index(n1 + n2, m1 + m2, (k1 + k2) % p))
                                phase.append(ph)
        self._a = np.array(a_idx)
        self._b = np.array(b_idx)
        self._c = np.array(c_idx)
        self._ph = np.array(phase)

    def index(self, n, m, k):
        return (n * self.p + m) * self.p + k

    def basis(self, n, m, k):
        v = np.zeros(self.dim, dtype=complex)
        v[self.index(n, m, k)] = 1.0
        return v

    def mul(self, x, y):
        out = np.zeros(self.dim, dtype=complex)
        np.add.at(out, self._c, x[self._a] * y[self._b] * self._ph)
        return out

    def matmul(self, mx, my):
        size = mx.shape[0]
        out = np.zeros_like(mx)
        for i in range(size):
            for j in range(size):
                acc = np.zeros(self.dim, dtype=complex)
                for k in range(size):
                    if mx[i, k].any() and my[k, j].any():
                        acc += self.mul(mx[i, k], my[k, j])
                out[i, j] = acc
        return out


def q_number(p: int, n: int) -> float:
    return math.sin(2 * math.pi * n / p) / math.sin(2 * math.pi / p)


def q_factorial(p: int, n: int) -> float:
    return math.prod(q_number(p, j) for j in range(1, n + 1))


def t_matrix_float(p: int, lam_plus: float, lam_minus: float) -> np.ndarray:
    """Reduced coefficients of D_mn (the common exponential stripped), shape (p, p, p^3)."""
    alg = FloatAlgebra(p)
    q = alg.q
    sqrt_q = cmath.exp(1j * math.pi / p)
    shift_plus = np.zeros((p, p), dtype=complex)
    shift_minus = np.zeros((p, p), dtype=complex)
    for m in range(p):
        shift_plus[(m + 1) % p, m] = lam_plus
        shift_minus[(m - 1) % p, m] = lam_minus
    kappa_inv = np.diag([q ** (-m) for m in range(p)])
    eps_plus = -sqrt_q ** (-1) * shift_plus @ kappa_inv
    eps_minus = -sqrt_q * shift_minus @ kappa_inv

    def tensor_eta(mat, which):
        out = np.zeros((p, p, alg.dim), dtype=complex)
        eta = alg.basis(1, 0, 0) if which > 0 else alg.basis(0, 1, 0)
        for i in range(p):
            for j in range(p):
                out[i, j] = 1j * mat[i, j] * eta
        return out

    def identity():
        out = np.zeros((p, p, alg.dim), dtype=complex)
        for i in range(p):
            out[i, i] = alg.basis(0, 0, 0)
        return out

    def qexp(x, sign):
        total = identity()
        power = identity()
        for m in range(1, p):
            power = alg.matmul(power, x)
            total = total + power * (q ** (sign * m * (m - 1) / 2) / q_factorial(p, m))
        return total

    e_plus = qexp(tensor_eta(eps_plus, 1), 1)
    e_minus = qexp(tensor_eta(eps_minus, -1), -1)
    d = np.zeros((p, p, alg.dim), dtype=complex)
    for j in range(p):
        d[j, j] = alg.basis(0, 0, j)
    return alg.matmul(alg.matmul(e_plus, e_minus), d)


def exact_to_float(dmatrix, assignment: dict) -> tuple[np.ndarray, list]:
    """Embed an exact DMatrix; returns the coefficient array and the exponent pairs found."""
    from .scalars import embed_numeric

    p = dmatrix.p
    alg_index = lambda n, m, k: (n * p + m) * p + k  # noqa: E731
    out = np.zeros((p, p, p ** 3), dtype=complex)
    exponents = []
    for i in range(p):
        for j in range(p):
            for ((n, m, k), (a, b, u, v)), c in dmatrix[i, j].terms.items():
                if a or b:
                    raise ValueError("unexpected polynomial z-dependence")
                exponents.append((complex(embed_numeric(u, assignment)), complex(embed_numeric(v, assignment))))
                out[i, j, alg_index(n, m, k)] += embed_numeric(c, assignment)
    return out, exponents


def cross_check(p: int, lam_plus: float = 1.0, lam_minus: float = 1.0) -> float:
    """Max absolute difference between the exact D-entries and the float product."""
    from .representations import universal_T_rep
    from .scalars import PARAMETERS

    exact = universal_T_rep(p)
    assignment = {name: 0.0 for name in PARAMETERS}
    assignment["lambda+"], assignment["lambda-"] = lam_plus, lam_minus
    coeffs, exponents = exact_to_float(exact, assignment)
    expected_exp = (complex(0, -lam_plus ** p), complex(0, -lam_minus ** p))
    for e in exponents:
        if abs(e[0] - expected_exp[0]) > 1e-10 or abs(e[1] - expected_exp[1]) > 1e-10:
            raise AssertionError(f"exponential factor {e} differs from {expected_exp}")
    return float(np.max(np.abs(coeffs - t_matrix_float(p, lam_plus, lam_minus))))


__all__ = ["FloatAlgebra", "t_matrix_float", "cross_check", "q_number", "q_factorial", "exact_to_float"]
