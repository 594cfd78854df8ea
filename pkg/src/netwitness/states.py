"""Test states: isotropic and Bell-diagonal families, random (separable)
states, and a desk-scale search for a PPT entangled qutrit state seen by the
Bell-diagonal witness with weights (2/3, 1/3, 0).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import bell
from .tensor import DensityOperator, density, partial_transpose
from .witnesses import choi_witness

PPT_EIG_FLOOR = -1e-12
WITNESS_CUTOFF = -1e-4


def isotropic_state(d: int, fidelity: float) -> DensityOperator:
    """F * P_00 + (1-F) * (1 - P_00)/(d^2-1); singlet fraction F exactly."""
    if not 0.0 <= fidelity <= 1.0:
        raise ValueError("fidelity must lie in [0, 1]")
    p00 = bell.bell_projector(d, 0, 0).data
    m = fidelity * p00 + (1 - fidelity) * (np.eye(d * d) - p00) / (d * d - 1)
    return density(m, (d, d))


def bell_diagonal_state(d: int, p) -> DensityOperator:
    """Mixture sum_st p[s,t] P_st of generalized Bell projectors."""
    p = np.asarray(p, dtype=float).reshape(d, d)
    if np.any(p < 0) or abs(p.sum() - 1.0) > 1e-9:
        raise ValueError("p must be a probability vector over the d^2 Bell labels")
    m = np.zeros((d * d, d * d), dtype=complex)
    for s in range(d):
        for t in range(d):
            if p[s, t]:
                m += p[s, t] * bell.bell_projector(d, s, t).data
    return density(m, (d, d))


def random_ket(dim: int, rng) -> np.ndarray:
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def random_state(dims, rng_seed: int, rank: int | None = None) -> DensityOperator:
    """Full-rank (by default) random mixed state from a Ginibre matrix."""
    dims = tuple(int(d) for d in dims)
    dim = int(np.prod(dims))
    rng = np.random.default_rng(rng_seed)
    rank = dim if rank is None else rank
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    m = g @ g.conj().T
    return density(m / np.trace(m), dims)


def random_separable(d: int, terms: int, rng_seed: int) -> DensityOperator:
    """Uniform mixture of random product pure states on d (x) d."""
    if terms < 1:
        raise ValueError("need at least one term")
    rng = np.random.default_rng(rng_seed)
    m = np.zeros((d * d, d * d), dtype=complex)
    for _ in range(terms):
        v = np.kron(random_ket(d, rng), random_ket(d, rng))
        m += np.outer(v, v.conj()) / terms
    return density(m, (d, d))


@dataclass(frozen=True)
class ScanResult:
    found: bool
    rho: DensityOperator | None
    p: np.ndarray | None           # (3, 3) Bell-label weights
    witness_value: float | None    # tr[W rho], certified entangled when <= -1e-4
    min_pt_eig: float | None       # certified PPT when >= -1e-12
    resolution: int
    rng_seed: int

    def to_dict(self) -> dict:
        out = {
            "found": self.found,
            "resolution": self.resolution,
            "rng_seed": self.rng_seed,
            "witness_value": self.witness_value,
            "min_pt_eig": self.min_pt_eig,
        }
        if self.rho is not None:
            out["p"] = [list(row) for row in self.p]
            out["state"] = self.rho.mat.to_dict()
        return out


def _bell_basis_and_pt(d: int = 3):
    projs, pts = [], []
    for s in range(d):
        for t in range(d):
            pm = bell.bell_projector(d, s, t)
            projs.append(pm.data)
            pts.append(partial_transpose(pm, {1}).data)
    return projs, pts


def find_choi_detected_ppt(grid_resolution: int = 40, rng_seed: int = 0) -> ScanResult:
    """Search Bell-diagonal qutrit states for PPT entanglement.

    States are parametrized by the weight a on P_00 and uniform row weights
    b, c = 1 - a - b on the s = 1 and s = 2 Bell rows; the witness value is
    (b - a)/3 in this slice. A simplex grid at the given resolution is
    followed by local step-halving refinement. The search itself certifies
    the result: min eigenvalue of the partial transpose >= -1e-12 and
    tr[W rho] <= -1e-4, or an explicit not-found outcome.
    """
    if grid_resolution < 2:
        raise ValueError("resolution must be >= 2")
    wmat = choi_witness().mat.data
    projs, pts = _bell_basis_and_pt(3)

    def build(a: float, b: float):
        c = 1.0 - a - b
        p = np.array([[a, 0, 0], [b / 3, b / 3, b / 3], [c / 3, c / 3, c / 3]])
        m = sum(p.reshape(-1)[i] * projs[i] for i in range(9))
        pt = sum(p.reshape(-1)[i] * pts[i] for i in range(9))
        return p, m, pt

    def evaluate(a: float, b: float):
        if a < 0 or b < 0 or a + b > 1:
            return None
        p, m, pt = build(a, b)
        wval = float(np.real(np.trace(wmat @ m)))
        min_eig = float(np.linalg.eigvalsh((pt + pt.conj().T) / 2)[0])
        return p, m, wval, min_eig

    def feasible(wval, min_eig):
        return min_eig >= PPT_EIG_FLOOR and wval <= WITNESS_CUTOFF

    best = None  # (wval, a, b, payload)
    step = 1.0 / grid_resolution
    for i in range(grid_resolution + 1):
        for j in range(grid_resolution + 1 - i):
            a, b = i * step, j * step
            res = evaluate(a, b)
            if res is None:
                continue
            p, m, wval, min_eig = res
            if feasible(wval, min_eig) and (best is None or wval < best[0]):
                best = (wval, a, b, (p, m, min_eig))
    # step-halving pattern refinement around the incumbent
    if best is not None:
        wval, a, b, payload = best
        h = step
        for _ in range(12):
            improved = False
            for da, db in ((h, 0), (-h, 0), (0, h), (0, -h), (h, -h), (-h, h)):
                res = evaluate(a + da, b + db)
                if res is None:
                    continue
                p, m, cand_wval, min_eig = res
                if feasible(cand_wval, min_eig) and cand_wval < wval:
                    wval, a, b, payload = cand_wval, a + da, b + db, (p, m, min_eig)
                    improved = True
            if not improved:
                h /= 2
        p, m, min_eig = payload
        return ScanResult(
            found=True,
            rho=density(m, (3, 3)),
            p=p,
            witness_value=wval,
            min_pt_eig=min_eig,
            resolution=grid_resolution,
            rng_seed=rng_seed,
        )
    return ScanResult(False, None, None, None, None, grid_resolution, rng_seed)
