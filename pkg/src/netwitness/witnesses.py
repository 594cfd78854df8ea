"""Entanglement witness families and numerical witness-property checks."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import bell
from .tensor import DensityOperator, Mat, partial_transpose

# A witness must dip below zero somewhere to detect anything.
NEGATIVITY_TOL = 1e-12
# Numerical floor accepted for min over product states (witness property).
SEP_FLOOR_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class Witness:
    """Hermitian observable with a negative eigenvalue, plus protocol metadata.

    ``eta`` is the detection threshold the matching network state compares
    singlet fractions against; ``lambda_vec`` is set for Bell-diagonal
    families only.
    """

    mat: Mat
    family: str
    eta: float
    lambda_vec: tuple | None = None

    def __post_init__(self):
        if self.mat.hermiticity_defect() > 1e-10:
            raise ValueError(f"{self.family} witness matrix is not Hermitian")
        if float(np.linalg.eigvalsh(self.mat.data)[0]) >= -NEGATIVITY_TOL:
            raise ValueError(
                f"{self.family} matrix has no negative eigenvalue; it detects nothing"
            )

    @property
    def d(self) -> int:
        return self.mat.dims[0]

    def expectation(self, rho: DensityOperator) -> float:
        return float(np.real(np.trace(self.mat.data @ rho.data)))

    def to_dict(self) -> dict:
        out = {
            "family": self.family,
            "d": self.d,
            "eta": self.eta,
            "matrix": self.mat.to_dict(),
        }
        if self.lambda_vec is not None:
            out["lambda"] = list(self.lambda_vec)
        return out


def check_lambda_vec(lam) -> tuple:
    lam = tuple(float(x) for x in lam)
    if any(x < 0 for x in lam):
        raise ValueError("lambda entries must be non-negative")
    if abs(sum(lam) - 1.0) > 1e-9:
        raise ValueError("lambda entries must sum to 1")
    return lam


def two_qubit_pt_witness() -> Witness:
    """The two-qubit witness 0.5*1 - |psi-><psi-|, threshold 1/2.

    Equals the partial transpose of the |phi+> projector entrywise.
    """
    psi_minus = np.zeros(4, dtype=complex)
    psi_minus[1] = 1 / np.sqrt(2)
    psi_minus[2] = -1 / np.sqrt(2)
    m = np.eye(4) / 2 - np.outer(psi_minus, psi_minus.conj())
    return Witness(Mat(m, (2, 2)), "two-qubit-pt", 0.5)


def decomposable_witness(q: DensityOperator) -> Witness:
    """Partial transpose of a unit-trace PSD operator, threshold 1/d."""
    if len(q.dims) != 2 or q.dims[0] != q.dims[1]:
        raise ValueError("Q must live on d (x) d")
    d = q.dims[0]
    return Witness(partial_transpose(q.mat, {1}), "decomposable", 1.0 / d)


def bell_diagonal_witness(
    lam, family: str = "bell-diagonal", check_trials: int = 2000, check_seed: int = 7
) -> Witness:
    """sum_s lambda_s Pi_s - P_00 on d (x) d with d = len(lambda).

    The lambda vector is screened with the randomized cyclic-inequality
    falsifier before construction.
    """
    lam = check_lambda_vec(lam)
    d = len(lam)
    result = cyclic_inequality_check(lam, trials=check_trials, rng_seed=check_seed)
    if not result.passed:
        raise ValueError(
            f"not a valid Bell-diagonal witness: cyclic inequality violated "
            f"(worst value {result.worst_value:.6g} > {d})"
        )
    m = -bell.bell_projector(d, 0, 0).data
    for s in range(d):
        m = m + lam[s] * bell.bell_row_projector(d, s).data
    return Witness(Mat(m, (d, d)), family, lam[0], lambda_vec=lam)


def choi_witness() -> Witness:
    """Qutrit Bell-diagonal witness with lambda = (2/3, 1/3, 0)."""
    return bell_diagonal_witness((2 / 3, 1 / 3, 0.0), family="choi")


def reduction_witness(d: int) -> Witness:
    """1/d - P_00: the uniform Bell-diagonal case."""
    return bell_diagonal_witness((1.0 / d,) * d, family="reduction")


def breuer_hall_witness(d: int) -> Witness:
    """(1/(d-2)) * (1/d - P_00 - F'/d) in even dimension d >= 4."""
    if d % 2 or d < 4:
        raise ValueError("Breuer-Hall witness requires even dimension >= 4")
    fp = bell.twisted_flip(d).data
    p00 = bell.bell_projector(d, 0, 0).data
    m = (np.eye(d * d) / d - p00 - fp / d) / (d - 2)
    return Witness(Mat(m, (d, d)), "breuer-hall", 1.0 / d)


@dataclass(frozen=True)
class CyclicCheckResult:
    passed: bool
    worst_value: float
    worst_t: tuple
    bound: float

    @property
    def margin(self) -> float:
        return self.bound - self.worst_value


def _cyclic_lhs(lam, t_sq) -> float:
    """sum_j t_j^2 / sum_s lambda_s t_{j+s}^2, with 0/0 terms skipped."""
    d = len(lam)
    total = 0.0
    for j in range(d):
        num = t_sq[j]
        den = sum(lam[s] * t_sq[(j + s) % d] for s in range(d))
        if den == 0.0:
            if num == 0.0:
                continue
            return float("inf")
        total += num / den
    return total


def cyclic_inequality_check(lam, trials: int = 10000, rng_seed: int = 0) -> CyclicCheckResult:
    """Randomized falsifier for the cyclic inequalities bounding the LHS by d.

    Deterministic corner cases (basis vectors, all-ones) are always included;
    the rest are random non-negative vectors. This samples, it does not prove.
    """
    lam = check_lambda_vec(lam)
    d = len(lam)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(rng_seed)
    candidates = [tuple(1.0 if i == j else 0.0 for i in range(d)) for j in range(d)]
    candidates.append((1.0,) * d)
    for _ in range(trials):
        candidates.append(tuple(rng.random(d)))
    worst_value = -np.inf
    worst_t = candidates[0]
    for t in candidates:
        t_sq = [x * x for x in t]
        val = _cyclic_lhs(lam, t_sq)
        if val > worst_value:
            worst_value = val
            worst_t = t
            if np.isinf(val):
                break
    return CyclicCheckResult(worst_value <= d + 1e-9, float(worst_value), worst_t, float(d))


def sep_floor_estimate(
    w, restarts: int = 64, iters: int = 200, rng_seed: int = 0, tol: float = 1e-10
) -> float:
    """Seesaw minimum of <a,b|W|a,b> over unit product vectors.

    Alternately eigensolves the d x d operators obtained by conditioning W on
    one side's current vector. Returns the lowest value over restarts;
    deterministic for a given seed. Values below -1e-6 flag a non-witness.
    """
    mat = w.mat if isinstance(w, Witness) else w
    if len(mat.dims) != 2:
        raise ValueError("seesaw expects a bipartite operator")
    da, db = mat.dims
    t = mat.data.reshape(da, db, da, db)
    rng = np.random.default_rng(rng_seed)
    best = np.inf
    for _ in range(restarts):
        a = rng.standard_normal(da) + 1j * rng.standard_normal(da)
        b = rng.standard_normal(db) + 1j * rng.standard_normal(db)
        a /= np.linalg.norm(a)
        b /= np.linalg.norm(b)
        prev = np.inf
        for _ in range(iters):
            mb = np.einsum("ikjl,k,l->ij", t, b.conj(), b, optimize=True)
            vals, vecs = np.linalg.eigh((mb + mb.conj().T) / 2)
            a = vecs[:, 0]
            ma = np.einsum("ikjl,i,j->kl", t, a.conj(), a, optimize=True)
            vals, vecs = np.linalg.eigh((ma + ma.conj().T) / 2)
            b = vecs[:, 0]
            val = float(vals[0])
            if abs(prev - val) < tol:
                break
            prev = val
        if val < best:
            best = val
    return best
