"""Lie algebra data in the defining representation.

Bases are lists of constant ``MatrixRF``.  Structure constants are stored in
mixed position, ``C[a][b][c]`` being the coefficient of ``t_c`` in
``[t_a, t_b]``; the trace metric ``kappa_ab = tr(t_a t_b)`` may be any
invertible symmetric matrix, which keeps non-orthonormal bases rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import DegenerateMetricError, NotALieBasisError
from .exact import RatFunc
from .exact import linalg
from .tensor import MatrixRF, commutator, identity, kron, permutation


def _flat(m):
    """Constant matrix -> list of Fractions, row-major."""
    n = m.size
    out = []
    for i in range(n):
        for j in range(n):
            v = m[i, j].constant_value()
            if v is None:
                raise NotALieBasisError("basis matrices must have constant entries")
            out.append(v)
    return out


def elementary(N, a, b):
    return MatrixRF(N, 1, {(a, b): RatFunc.const(1)})


@dataclass(frozen=True, eq=False)
class LieBasis:
    name: str
    N: int
    basis: tuple

    def __post_init__(self):
        if not self.basis:
            raise NotALieBasisError("empty basis")
        for t in self.basis:
            if t.N != self.N or t.legs != 1:
                raise NotALieBasisError("basis matrices must be N x N")
        if linalg.rank([_flat(t) for t in self.basis]) != len(self.basis):
            raise NotALieBasisError("basis matrices are linearly dependent")

    @property
    def dim(self):
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def __getitem__(self, a):
        return self.basis[a]

    def coordinates(self, m):
        """Coefficients of a constant matrix in this basis, or None if outside the span."""
        return linalg.solve_in_span([_flat(t) for t in self.basis], _flat(m))

    @cached_property
    def structure(self):
        return structure_constants(self)

    @cached_property
    def pi(self):
        return casimir(self).Pi


def gl(N):
    """Elementary basis E_ab of gl(N), ordered row-major."""
    return LieBasis(f"gl({N})", N, tuple(elementary(N, a, b) for a in range(N) for b in range(N)))


def sl(N):
    """Off-diagonal E_ab plus Cartan elements E_ii - E_{i+1,i+1}."""
    basis = [elementary(N, a, b) for a in range(N) for b in range(N) if a != b]
    for i in range(N - 1):
        basis.append(elementary(N, i, i) - elementary(N, i + 1, i + 1))
    return LieBasis(f"sl({N})", N, tuple(basis))


def so3():
    """Real antisymmetric generators (L_a)_bc = -eps_abc, so [L_a, L_b] = eps_abc L_c.

    This is the rational real form of su(2) in its three-dimensional
    representation.
    """
    eps = _levi_civita()
    basis = []
    for a in range(3):
        basis.append(
            MatrixRF(3, 1, {(b, c): RatFunc.const(-eps[(a, b, c)]) for b in range(3) for c in range(3) if eps[(a, b, c)]})
        )
    return LieBasis("so(3)", 3, tuple(basis))


def custom(name, matrices):
    matrices = tuple(matrices)
    return LieBasis(name, matrices[0].N, matrices)


def named_algebra(name):
    """Parse ``gl(N)``, ``sl(N)``, ``su(N)`` or ``so(3)``.

    ``su(N)`` is realized by the rational basis of its complexification
    sl(N); the Casimir tensor does not depend on the basis of the span, so
    Pi = P - I/N exactly as for an orthonormal su(N) basis.
    """
    key = name.replace(" ", "").lower()
    if key == "so(3)":
        return so3()
    for prefix, fn in (("gl(", gl), ("sl(", sl), ("su(", sl)):
        if key.startswith(prefix) and key.endswith(")"):
            return fn(int(key[len(prefix) : -1]))
    raise NotALieBasisError(f"unknown algebra {name!r}")


def _levi_civita():
    eps = {}
    for a in range(3):
        for b in range(3):
            for c in range(3):
                eps[(a, b, c)] = ((a - b) * (b - c) * (c - a)) // 2
    return eps


@dataclass(frozen=True, eq=False)
class StructureConstants:
    C: tuple  # C[a][b][c]
    metric: tuple  # kappa[a][b]
    metric_inverse: tuple  # may be None if degenerate

    @property
    def dim(self):
        return len(self.C)

    def jacobi_residual(self):
        """Max |sum_cyclic C_ab^e C_ec^d| over all (a,b,c,d); exact."""
        n = self.dim
        C = self.C
        worst = Fraction(0)
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    for d in range(n):
                        s = sum(
                            C[a][b][e] * C[e][c][d] + C[b][c][e] * C[e][a][d] + C[c][a][e] * C[e][b][d]
                            for e in range(n)
                        )
                        worst = max(worst, abs(s))
        return worst

    def lowered(self):
        """C_abc = sum_d C_ab^d kappa_dc."""
        n = self.dim
        return tuple(
            tuple(tuple(sum(self.C[a][b][d] * self.metric[d][c] for d in range(n)) for c in range(n)) for b in range(n))
            for a in range(n)
        )

    def metric_is_scalar(self):
        n = self.dim
        k0 = self.metric[0][0]
        return all(self.metric[a][b] == (k0 if a == b else 0) for a in range(n) for b in range(n))

    def fully_antisymmetric(self):
        """Total antisymmetry of C_abc (meaningful when the metric is scalar)."""
        n = self.dim
        C = self.C
        return all(
            C[a][b][c] == -C[b][a][c] and C[a][b][c] == -C[a][c][b]
            for a in range(n)
            for b in range(n)
            for c in range(n)
        )


def metric(basis):
    return tuple(tuple((s.matmul(t)).trace().constant_value() for t in basis) for s in basis)


def structure_constants(basis):
    """Solve [t_a, t_b] = sum_c C_abc t_c exactly and verify Jacobi."""
    flats = [_flat(t) for t in basis]
    n = len(flats)
    C = []
    for a in range(n):
        row = []
        for b in range(n):
            coeffs = linalg.solve_in_span(flats, _flat(commutator(basis[a], basis[b])))
            if coeffs is None:
                raise NotALieBasisError(f"[t_{a}, t_{b}] lies outside the span of the basis")
            row.append(tuple(coeffs))
        C.append(tuple(row))
    kappa = metric(basis)
    inv = linalg.inverse([list(r) for r in kappa])
    sc = StructureConstants(
        tuple(C), kappa, None if inv is None else tuple(tuple(r) for r in inv)
    )
    if sc.jacobi_residual() != 0:
        raise NotALieBasisError("structure constants violate the Jacobi identity")
    return sc


@dataclass(frozen=True, eq=False)
class CasimirTensor:
    Pi: MatrixRF
    alpha: Fraction | None  # Pi = alpha * (P + c*I) when of that form
    c: Fraction | None


def casimir(basis, constants=None):
    """Pi = sum_ab (kappa^-1)_ab t_a (x) t_b, with the computed P + c*I decomposition."""
    sc = constants or structure_constants(basis)
    if sc.metric_inverse is None:
        raise DegenerateMetricError("trace metric is degenerate on this basis")
    kinv = sc.metric_inverse
    n = len(basis)
    N = basis.N
    Pi = MatrixRF.zeros(N, 2)
    for a in range(n):
        for b in range(n):
            if kinv[a][b]:
                Pi = Pi + kron(basis[a], basis[b]).scale(kinv[a][b])
    alpha, c = _p_plus_c(Pi, N)
    return CasimirTensor(Pi, alpha, c)


def _p_plus_c(Pi, N):
    """Find alpha, c with Pi = alpha*(P + c*I); (None, None) if not of that form."""
    P = permutation(N)
    I2 = identity(N, 2)
    # off-diagonal (ab, ba) entry with a != b isolates alpha
    if N == 1:
        v = Pi[0, 0].constant_value()
        return (v, Fraction(0)) if v else (None, None)
    alpha = Pi[1, N].constant_value()
    if not alpha:
        return None, None
    diag = Pi[1, 1].constant_value()
    c = diag / alpha
    if Pi == (P + I2.scale(c)).scale(alpha):
        return alpha, c
    return None, None


def pi_identity_check(basis, constants=None):
    """Residuals of [Pi, t_c (x) I] = X_c and [Pi, I (x) t_c] = -X_c for every c.

    ``X_c = sum kappa^ab C_ac^e t_e (x) t_b``, which reduces to
    ``C_bca t_a (x) t_b`` for an orthonormal basis.  Supplying stale
    ``constants`` (from a different basis) exposes normalization mismatches.
    Returns two lists of two-leg residual tensors.
    """
    sc = constants or structure_constants(basis)
    kinv = sc.metric_inverse
    if kinv is None:
        raise DegenerateMetricError("trace metric is degenerate on this basis")
    n = len(basis)
    N = basis.N
    Pi = MatrixRF.zeros(N, 2)
    for a in range(n):
        for b in range(n):
            if kinv[a][b]:
                Pi = Pi + kron(basis[a], basis[b]).scale(kinv[a][b])
    I = identity(N)
    first, second = [], []
    for c in range(n):
        X = MatrixRF.zeros(N, 2)
        for a in range(n):
            for b in range(n):
                if not kinv[a][b]:
                    continue
                for e in range(n):
                    coeff = kinv[a][b] * sc.C[a][c][e]
                    if coeff:
                        X = X + kron(basis[e], basis[b]).scale(coeff)
        first.append(commutator(Pi, kron(basis[c], I)) - X)
        second.append(commutator(Pi, kron(I, basis[c])) + X)
    return first, second
