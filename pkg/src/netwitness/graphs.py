"""Graph-state formalism: stabilizer generators, graph bases, circuits, and
the n-party extension of the detection protocol (GHZ and cluster witnesses).

Qubits are vertices 1..n; the joint protocol space is grouped by layer,
(layer 1 vertices, layer 2 vertices, layer 3 vertices), and the Bell
projector pairs vertex v of layer 1 with vertex v of layer 2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import protocol
from .tensor import DensityOperator, Mat, density
from .witnesses import Witness

_X = np.array([[0.0, 1.0], [1.0, 0.0]])
_Z = np.array([[1.0, 0.0], [0.0, -1.0]])


@dataclass(frozen=True)
class GraphSpec:
    """Simple undirected graph on vertices 1..n with edges (i, j), i < j."""

    n: int
    edges: tuple

    def __post_init__(self):
        edges = tuple(tuple(int(v) for v in e) for e in self.edges)
        seen = set()
        for i, j in edges:
            if not (1 <= i < j <= self.n):
                raise ValueError(f"edge ({i},{j}) invalid for n={self.n}")
            if (i, j) in seen:
                raise ValueError(f"duplicate edge ({i},{j})")
            seen.add((i, j))
        object.__setattr__(self, "edges", edges)
        if self.n < 1:
            raise ValueError("graph needs at least one vertex")

    def neighbors(self, i: int) -> tuple:
        out = []
        for a, b in self.edges:
            if a == i:
                out.append(b)
            elif b == i:
                out.append(a)
        return tuple(sorted(out))

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_dict(cls, obj: dict) -> "GraphSpec":
        return cls(int(obj["n"]), tuple(tuple(e) for e in obj["edges"]))


def cl4_graph() -> GraphSpec:
    """The length-four linear cluster graph 1-2-3-4."""
    return GraphSpec(4, ((1, 2), (2, 3), (3, 4)))


# label set for the four-qubit linear cluster witness
CL4_LABELS = (
    "0000", "0001", "0010", "0011", "0100", "0101",
    "0110", "0111", "1000", "1010", "1100", "1110",
)


def _parse_label(x, n: int) -> tuple:
    if isinstance(x, str):
        bits = tuple(int(c) for c in x)
    else:
        bits = tuple(int(b) for b in x)
    if len(bits) != n or any(b not in (0, 1) for b in bits):
        raise ValueError(f"label {x!r} is not a length-{n} bit string")
    return bits


def _single_site(op: np.ndarray, i: int, n: int) -> np.ndarray:
    m = np.array([[1.0]])
    for j in range(1, n + 1):
        m = np.kron(m, op if j == i else np.eye(2))
    return m


def generator(g: GraphSpec, i: int) -> Mat:
    """Stabilizer generator: X at vertex i, Z at each neighbor."""
    if not (1 <= i <= g.n):
        raise ValueError(f"vertex {i} out of range 1..{g.n}")
    m = _single_site(_X, i, g.n)
    for j in g.neighbors(i):
        m = m @ _single_site(_Z, j, g.n)
    return Mat(m, (2,) * g.n)


def graph_state_circuit(g: GraphSpec) -> np.ndarray:
    """|+>^n followed by a controlled-Z on every edge."""
    ket = np.full(2**g.n, 2.0 ** (-g.n / 2))
    t = ket.reshape((2,) * g.n)
    for i, j in g.edges:
        sl = [slice(None)] * g.n
        sl[i - 1] = 1
        sl[j - 1] = 1
        t[tuple(sl)] *= -1.0
    return t.reshape(-1)


def graph_basis_state(g: GraphSpec, x) -> np.ndarray:
    """Joint eigenket of the generators with signs (-1)^{x_i}.

    Built by flipping the base circuit state with Z at every vertex where
    x_i = 1; the projector-product definition is kept as the test oracle.
    """
    bits = _parse_label(x, g.n)
    t = graph_state_circuit(g).reshape((2,) * g.n).copy()
    for i, b in enumerate(bits):
        if b:
            sl = [slice(None)] * g.n
            sl[i] = 1
            t[tuple(sl)] *= -1.0
    return t.reshape(-1)


def graph_basis_projector(g: GraphSpec, x) -> Mat:
    """Product of (1 + (-1)^{x_i} g_i)/2 over all vertices (oracle form)."""
    bits = _parse_label(x, g.n)
    m = np.eye(2**g.n, dtype=complex)
    for i, b in enumerate(bits, start=1):
        gi = generator(g, i).data
        m = m @ (np.eye(2**g.n) + (-1) ** b * gi) / 2
    return Mat(m, (2,) * g.n)


def graph_witness(g: GraphSpec, labels) -> Witness:
    """(1/2) sum over the label set of graph projectors, minus the all-zeros one."""
    labels = [_parse_label(x, g.n) for x in labels]
    if not labels:
        raise ValueError("label set must be non-empty")
    if (0,) * g.n not in labels:
        raise ValueError("label set must contain the all-zeros string")
    m = np.zeros((2**g.n, 2**g.n), dtype=complex)
    for bits in labels:
        v = graph_basis_state(g, bits)
        m += 0.5 * np.outer(v, v.conj())
    v0 = graph_basis_state(g, (0,) * g.n)
    m -= np.outer(v0, v0.conj())
    return Witness(Mat(m, (2,) * g.n), "graph", 0.5)


def graph_network(g: GraphSpec, labels) -> DensityOperator:
    """Uniform pairing of graph-basis projectors across layers 2 and 3."""
    labels = [_parse_label(x, g.n) for x in labels]
    if not labels:
        raise ValueError("label set must be non-empty")
    dim = 2**g.n
    m = np.zeros((dim * dim, dim * dim), dtype=complex)
    for bits in labels:
        v = graph_basis_state(g, bits)
        p = np.outer(v, v.conj())
        m += np.kron(p, p) / len(labels)
    return density(m, (2,) * (2 * g.n))


def graph_measurement_circuit(g: GraphSpec, sigma: DensityOperator) -> float:
    """All-zeros outcome probability after undoing the graph circuit.

    Applies Hadamards on every vertex after the edge controlled-Z gates; the
    returned probability equals the overlap with the all-zeros graph basis
    state.
    """
    if len(sigma.dims) != g.n:
        raise ValueError(f"state must live on {g.n} qubits")
    dim = 2**g.n
    cz_diag = np.ones(dim)
    for idx in range(dim):
        bits = [(idx >> (g.n - 1 - q)) & 1 for q in range(g.n)]
        flips = sum(bits[i - 1] & bits[j - 1] for i, j in g.edges)
        if flips % 2:
            cz_diag[idx] = -1.0
    h_all = np.array([[1.0]])
    for _ in range(g.n):
        h_all = np.kron(h_all, np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2))
    u = h_all @ np.diag(cz_diag)
    return float(np.real((u @ sigma.data @ u.conj().T)[0, 0]))


# --- GHZ family (kept separate from the generic graph machinery) ---


def ghz_ket(a: int = 0, b: int = 0, c: int = 0) -> np.ndarray:
    """Z^a (x) X^b (x) X^c applied to (|000> + |111>)/sqrt(2)."""
    if any(v not in (0, 1) for v in (a, b, c)):
        raise ValueError("labels must be bits")
    v = np.zeros(8)
    v[0] = v[7] = 1 / np.sqrt(2)
    t = v.reshape(2, 2, 2).copy()
    if a:
        t[1, :, :] *= -1.0
    if b:
        t = t[:, ::-1, :]
    if c:
        t = t[:, :, ::-1]
    return t.reshape(-1)


def ghz_witness() -> Witness:
    """(1/2) 1 - GHZ projector on three qubits."""
    v = ghz_ket()
    m = np.eye(8) / 2 - np.outer(v, v)
    return Witness(Mat(m, (2, 2, 2)), "ghz", 0.5)


def ghz_network() -> DensityOperator:
    """Uniform pairing of the eight GHZ-family projectors across two layers."""
    m = np.zeros((64, 64))
    for a in (0, 1):
        for b in (0, 1):
            for c in (0, 1):
                v = ghz_ket(a, b, c)
                p = np.outer(v, v)
                m += np.kron(p, p) / 8
    return density(m, (2,) * 6)


def multi_overlap_raw(rho: DensityOperator, net: DensityOperator, target) -> float:
    """<target|K|target> for an n-qubit layer; the unscaled contraction value."""
    dim = int(np.sqrt(net.data.shape[0]))
    k = protocol.teleport_contraction(rho.data, net.data, dim, dim)
    t = np.asarray(target, dtype=complex)
    return float(np.real(t.conj() @ k @ t))


def detect_multi_exact(rho: DensityOperator, net: DensityOperator, w: Witness,
                       target, eta: float = 0.5,
                       provenance: dict | None = None) -> protocol.DetectionReport:
    """Exact n-party protocol run: vertex-wise Bell pairs, then target readout."""
    dim = int(np.sqrt(net.data.shape[0]))
    if rho.data.shape[0] != dim:
        raise ValueError("state dimension does not match network layer")
    k = protocol.teleport_contraction(rho.data, net.data, dim, dim)
    trk = float(np.real(np.trace(k)))
    success = trk / dim
    if success <= protocol.MIN_SUCCESS_PROB:
        raise ValueError("post-selection probability vanishes")
    t = np.asarray(target, dtype=complex)
    raw = float(np.real(t.conj() @ k @ t))
    fraction = raw / trk
    wexp = float(np.real(np.trace(w.mat.data @ rho.data)))
    verdict = "detected" if fraction > eta else "not_detected"
    if abs(fraction - eta) > protocol.VERDICT_BAND and (fraction > eta) != (wexp < 0):
        raise protocol.ConsistencyError(
            f"fraction {fraction:.12g} vs eta {eta:.12g} disagrees with tr[rho W] = {wexp:.12g}"
        )
    return protocol.DetectionReport(
        success_prob=success,
        singlet_fraction=fraction,
        eta=eta,
        verdict=verdict,
        witness_expectation=wexp,
        raw_overlap=raw,
        raw_threshold=eta * trk,
        provenance=provenance or {},
    )


def ghz_detect_exact(rho: DensityOperator, provenance: dict | None = None):
    return detect_multi_exact(rho, ghz_network(), ghz_witness(), ghz_ket(),
                              provenance=provenance)


def cl4_detect_exact(rho: DensityOperator, provenance: dict | None = None):
    g = cl4_graph()
    return detect_multi_exact(
        rho,
        graph_network(g, CL4_LABELS),
        graph_witness(g, CL4_LABELS),
        graph_basis_state(g, "0000"),
        provenance=provenance,
    )
