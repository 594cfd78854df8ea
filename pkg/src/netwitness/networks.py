"""Network states on sites (A2,B2,A3,B3) and the witness reconstruction map.

A network state N is a four-factor state, separable across A2B2:A3B3 by
construction (every family below is an explicit convex sum of products
across that cut), such that contracting the A3B3 pair against
(eta*1 - P_00) returns a positive multiple of the transposed witness:

    tr_3[N (eta*1 - P_00)_3] = recon_constant * W^T.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import bell
from .tensor import (
    DensityOperator,
    Mat,
    density,
    hermitian_eigen,
    partial_trace,
    partial_transpose,
)
from .witnesses import Witness, check_lambda_vec, two_qubit_pt_witness

SITE_NAMES = ("A2", "B2", "A3", "B3")


@dataclass(frozen=True, eq=False)
class NetworkState:
    """A prepared resource state with its detection threshold.

    ``witness`` is the matrix whose transpose the reconstruction contraction
    yields; ``recon_constant`` is the exact positive prefactor.
    """

    state: DensityOperator
    eta: float
    recon_constant: float
    family: str
    witness: Mat

    def __post_init__(self):
        if len(self.state.dims) != 4:
            raise ValueError("network state must have four tensor factors")
        if self.recon_constant <= 0:
            raise ValueError("reconstruction constant must be positive")

    @property
    def d(self) -> int:
        return self.state.dims[0]

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "d": self.d,
            "eta": self.eta,
            "recon_constant": self.recon_constant,
            "state": self.state.mat.to_dict(),
        }


@dataclass(frozen=True, eq=False)
class DecompositionTerm:
    """One term a_j * W_j^T of a witness split, with its paired readout operator."""

    a: float
    w: Mat
    pi: Mat


def _hermitize(m: np.ndarray) -> np.ndarray:
    return (m + m.conj().T) / 2


def two_qubit_network() -> NetworkState:
    """Mixture of |psi-><psi-| (x) |phi+><phi+| with its orthogonal complement.

    Realizes the two-qubit partial-transpose witness at threshold 1/2.
    """
    w = two_qubit_pt_witness()
    psi_minus = bell.bell_projector(2, 1, 1).data
    phi_plus = bell.bell_projector(2, 0, 0).data
    eye4 = np.eye(4)
    n = 0.25 * np.kron(psi_minus, phi_plus) + (1 / 12) * np.kron(
        eye4 - psi_minus, eye4 - phi_plus
    )
    return NetworkState(
        state=density(n, (2, 2, 2, 2)),
        eta=0.5,
        recon_constant=0.25,
        family="two-qubit",
        witness=w.mat,
    )


def decomposable_network(q: DensityOperator, lam: float | None = None,
                         family: str = "decomposable") -> NetworkState:
    """Network state for the partial-transpose witness of a PSD unit-trace Q.

    The A2B2 factors mix (lam*1 -/+ (Q^PT)^T) so the contraction returns the
    transpose of W = Q^PT; lam is the spectral radius of Q^PT (overridable
    when known exactly).
    """
    if len(q.dims) != 2 or q.dims[0] != q.dims[1]:
        raise ValueError("Q must live on d (x) d")
    d = q.dims[0]
    wq = partial_transpose(q.mat, {1})
    if lam is None:
        vals, _ = hermitian_eigen(wq)
        lam = float(np.max(np.abs(vals)))
    if abs(lam * d * d - 1.0) < 1e-12:
        raise ValueError("Q^PT proportional to the identity: degenerate denominator")
    denom = d**3 * lam + d - 2
    c1 = (d * d * lam - 1) / denom
    c2 = (d - 1) * (d * d * lam + 1) / denom
    wqt = wq.data.T
    eye = np.eye(d * d)
    first = _hermitize((lam * eye - wqt) / (lam * d * d - 1))
    second = _hermitize((lam * eye + wqt) / (lam * d * d + 1))
    p00 = bell.bell_projector(d, 0, 0).data
    n = c1 * np.kron(first, p00) + c2 * np.kron(second, (eye - p00) / (d * d - 1))
    return NetworkState(
        state=density(n, (d, d, d, d)),
        eta=1.0 / d,
        recon_constant=2 * (d - 1) / (d * denom),
        family=family,
        witness=wq,
    )


def flip_network(d: int) -> NetworkState:
    """Network state for the flip witness F/d; spectral radius 1/d is exact."""
    q = density(bell.bell_projector(d, 0, 0).data, (d, d))
    return decomposable_network(q, lam=1.0 / d, family="flip")


def pbd_network(lam, d: int | None = None, family: str = "pbd") -> NetworkState:
    """Paired Bell-diagonal state: sum_s lambda_s/d sum_t P_st (x) P_st.

    Threshold lambda_0; reconstruction constant lambda_0/d against the
    Bell-diagonal witness with the same lambda.
    """
    lam = check_lambda_vec(lam)
    if d is not None and d != len(lam):
        raise ValueError("d must equal len(lambda)")
    d = len(lam)
    if lam[0] == 0.0:
        raise ValueError("threshold eta would be 0; witness not realizable this way")
    n = np.zeros((d**4, d**4), dtype=complex)
    wmat = -bell.bell_projector(d, 0, 0).data
    for s in range(d):
        wmat = wmat + lam[s] * bell.bell_row_projector(d, s).data
        if lam[s] == 0.0:
            continue
        for t in range(d):
            p = bell.bell_projector(d, s, t).data
            n += (lam[s] / d) * np.kron(p, p)
    return NetworkState(
        state=density(n, (d, d, d, d)),
        eta=lam[0],
        recon_constant=lam[0] / d,
        family=family,
        witness=Mat(wmat, (d, d)),
    )


def reduction_network(d: int) -> NetworkState:
    """Uniform paired Bell-diagonal state; realizes 1/d - P_00."""
    return pbd_network((1.0 / d,) * d, family="reduction")


def smolin_network() -> NetworkState:
    """The four-qubit permutation-invariant bound entangled state."""
    return pbd_network((0.5, 0.5), family="smolin")


def choi_network() -> NetworkState:
    """Paired Bell-diagonal state for lambda = (2/3, 1/3, 0) at d = 3."""
    return pbd_network((2 / 3, 1 / 3, 0.0), family="choi")


def bh_network(d: int) -> NetworkState:
    """Three-term mixture realizing the Breuer-Hall witness in even d >= 4.

    The paired witness is the unscaled form (1/d)(1 - F') - P_00; the scaled
    variant divides it by d - 2. Mixture weights are computed in exact
    rational arithmetic before conversion to floats.
    """
    if d % 2 or d < 4:
        raise ValueError("Breuer-Hall network requires even dimension >= 4")
    denom = 3 * d * d - 3 * d + 2
    c0 = Fraction(2 * d * d - 2 * d, denom)
    c1 = Fraction(d + 1, denom)
    c2 = 1 - c0 - c1
    assert c2 == Fraction((d - 1) ** 2, denom)
    fp = bell.twisted_flip(d).data
    p00 = bell.bell_projector(d, 0, 0).data
    eye = np.eye(d * d)
    paired = np.zeros((d**4, d**4), dtype=complex)
    for s in range(d):
        for t in range(d):
            p = bell.bell_projector(d, s, t).data
            paired += np.kron(p, p) / (d * d)
    n = (
        float(c0) * paired
        + float(c1) * np.kron((eye + fp) / (d * d + d), p00)
        + float(c2) * np.kron((eye - fp) / (d * d - d), (eye - p00) / (d * d - 1))
    )
    wmat = eye / d - p00 - fp / d
    return NetworkState(
        state=density(n, (d, d, d, d)),
        eta=1.0 / d,
        recon_constant=float(c0) / d**2,
        family="breuer-hall",
        witness=Mat(wmat, (d, d)),
    )


def solve_decomposition(w: Witness, eta: float, pi_choices=None):
    """Solve for mixture weights c_j and scale k in the network-state ansatz.

    The witness transpose is split into PSD terms W^T = sum_j a_j * Wn_j with
    each Wn_j trace-normalized (default: positive/negative eigenspace parts).
    Given readout operators Pi_j (PSD, unit trace), the weights satisfy

        a_j = k * c_j * (eta - <phi_00|Pi_j|phi_00>),  sum_j c_j = 1, k > 0,

    and N = sum_j c_j Wn_j (x) Pi_j reconstructs W^T / k. Raises when a term's
    sign is incompatible with its Pi overlap.
    """
    d = w.d
    if not (1.0 / d - 1e-12 <= eta < 1.0):
        raise ValueError("eta must lie in [1/d, 1)")
    phi = bell.bell_ket(d, 0, 0)
    wt = w.mat.data.T
    vals, vecs = np.linalg.eigh(_hermitize(wt))
    neg = vals < -1e-12
    pos = vals > 1e-12
    parts = []
    for mask in (neg, pos):
        if not np.any(mask):
            continue
        block = (vecs[:, mask] * vals[mask]) @ vecs[:, mask].conj().T
        a = float(np.real(np.trace(block)))  # signed weight
        parts.append((a, Mat(_hermitize(block / a), w.mat.dims)))
    if pi_choices is None:
        p00 = bell.bell_projector(d, 0, 0)
        rest = Mat((np.eye(d * d) - p00.data) / (d * d - 1), (d, d))
        pi_choices = [p00, rest][: len(parts)]
    pis = [p if isinstance(p, Mat) else Mat(p, (d, d)) for p in pi_choices]
    if len(pis) != len(parts):
        raise ValueError(f"need {len(parts)} readout operators, got {len(pis)}")
    terms = []
    gaps = []
    k = 0.0
    for j, ((a, wn), pi) in enumerate(zip(parts, pis)):
        overlap_phi = float(np.real(phi.conj() @ pi.data @ phi))
        gap = eta - overlap_phi
        if a * gap <= 0:
            want = "below" if a > 0 else "above"
            raise ValueError(
                f"term {j} infeasible: coefficient {a:.6g} requires "
                f"<phi_00|Pi|phi_00> {want} eta={eta}, got {overlap_phi:.6g}"
            )
        terms.append(DecompositionTerm(a=a, w=wn, pi=pi))
        gaps.append(gap)
        k += a / gap
    c = [t.a / (k * g) for t, g in zip(terms, gaps)]
    return terms, c, float(k)


def network_from_decomposition(w: Witness, eta: float, pi_choices=None,
                               family: str = "custom") -> NetworkState:
    """Assemble the solved decomposition into a network state."""
    terms, c, k = solve_decomposition(w, eta, pi_choices)
    d = w.d
    n = np.zeros((d**4, d**4), dtype=complex)
    for cj, term in zip(c, terms):
        n += cj * np.kron(term.w.data, term.pi.data)
    return NetworkState(
        state=density(n, (d, d, d, d)),
        eta=eta,
        recon_constant=1.0 / k,
        family=family,
        witness=w.mat,
    )


def reconstruct_witness(n, eta: float | None = None) -> Mat:
    """tr over (A3,B3) of N*(eta*1 - P_00 on A3B3); Hermitian output."""
    if isinstance(n, NetworkState):
        mat = n.state.mat
        eta = n.eta if eta is None else eta
    else:
        mat = n.mat if isinstance(n, DensityOperator) else n
        if eta is None:
            raise ValueError("eta is required for a bare matrix")
    d2, d3 = mat.dims[0] * mat.dims[1], mat.dims[2] * mat.dims[3]
    if mat.dims[2] != mat.dims[3]:
        raise ValueError("A3 and B3 factors must have equal dimension")
    p00 = bell.bell_projector(mat.dims[2], 0, 0).data
    meas = np.kron(np.eye(d2), eta * np.eye(d3) - p00)
    prod = Mat(mat.data @ meas, mat.dims)
    out = partial_trace(prod, keep=(0, 1))
    return Mat(_hermitize(out.data), out.dims)


def ppt_report(state) -> dict:
    """Min eigenvalue of the partial transpose across all 7 bipartitions."""
    mat = state.state.mat if isinstance(state, NetworkState) else (
        state.mat if isinstance(state, DensityOperator) else state
    )
    if len(mat.dims) != 4:
        raise ValueError("expected a four-factor state")
    report = {}
    # the 7 bipartitions = proper subsets containing site A2 (complements repeat spectra)
    for bits in range(7):
        subset = [0] + [i for i in range(1, 4) if bits & (1 << (i - 1))]
        rest = [i for i in range(4) if i not in subset]
        label = "".join(SITE_NAMES[i] for i in subset) + ":" + "".join(
            SITE_NAMES[i] for i in rest
        )
        pt = partial_transpose(mat, subset)
        report[label] = float(np.linalg.eigvalsh(_hermitize(pt.data))[0])
    return report
