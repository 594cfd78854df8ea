import itertools

import numpy as np
import pytest

from netwitness import bell
from netwitness.networks import (
    NetworkState,
    bh_network,
    choi_network,
    decomposable_network,
    flip_network,
    network_from_decomposition,
    pbd_network,
    ppt_report,
    reconstruct_witness,
    reduction_network,
    smolin_network,
    solve_decomposition,
    two_qubit_network,
)
from netwitness.states import random_state
from netwitness.tensor import Mat, density, kron, partial_transpose, proj
from netwitness.witnesses import (
    breuer_hall_witness,
    choi_witness,
    decomposable_witness,
    two_qubit_pt_witness,
)


def recon_error(net: NetworkState) -> float:
    rec = reconstruct_witness(net)
    return float(np.max(np.abs(rec.data - net.recon_constant * net.witness.data.T)))


class TestTwoQubitNetwork:
    def test_unit_trace_and_psd(self):
        net = two_qubit_network()
        assert np.isclose(np.trace(net.state.data), 1.0)
        assert np.linalg.eigvalsh(net.state.data)[0] >= -1e-12

    def test_eigenvalues(self):
        vals = np.sort(np.linalg.eigvalsh(two_qubit_network().state.data))
        expect = np.sort([0.25] + [1 / 12] * 9 + [0.0] * 6)
        assert np.allclose(np.sort(vals), expect, atol=1e-12)

    def test_reconstruction(self):
        net = two_qubit_network()
        assert net.recon_constant == 0.25
        assert recon_error(net) <= 1e-10

    def test_matches_decomposable_construction(self):
        # the explicit mixture equals the generic build for Q = |phi+><phi+|
        net = two_qubit_network()
        generic = flip_network(2)
        assert np.max(np.abs(net.state.data - generic.state.data)) <= 1e-12


class TestSolveDecomposition:
    def test_two_qubit_weights(self):
        w = two_qubit_pt_witness()
        terms, c, k = solve_decomposition(w, 0.5)
        assert np.allclose(c, [0.25, 0.75], atol=1e-12)
        assert np.isclose(k, 4.0, atol=1e-12)
        assert np.isclose(terms[0].a, -0.5, atol=1e-12)
        assert np.isclose(terms[1].a, 1.5, atol=1e-12)

    def test_explicit_pi_choices_reproduce_standard_network(self):
        w = two_qubit_pt_witness()
        p00 = bell.bell_projector(2, 0, 0)
        rest = Mat((np.eye(4) - p00.data) / 3, (2, 2))
        net = network_from_decomposition(w, 0.5, [p00, rest])
        assert np.max(np.abs(net.state.data - two_qubit_network().state.data)) <= 1e-12
        assert np.isclose(net.recon_constant, 0.25)

    def test_sign_contradiction_raises(self):
        w = two_qubit_pt_witness()
        p00 = bell.bell_projector(2, 0, 0)
        with pytest.raises(ValueError, match="term 1 infeasible"):
            solve_decomposition(w, 0.5, [p00, p00])

    def test_random_q_witness_reconstructs(self):
        for seed in range(5):
            q = random_state((2, 2), rng_seed=seed, rank=1)
            w = decomposable_witness(q)
            net = network_from_decomposition(w, 0.5)
            rec = reconstruct_witness(net)
            err = np.max(np.abs(rec.data - net.recon_constant * w.mat.data.T))
            assert err <= 1e-9

    def test_terms_are_psd_and_normalized(self):
        w = choi_witness()
        terms, c, k = solve_decomposition(w, w.eta)
        assert np.isclose(sum(c), 1.0, atol=1e-12)
        assert k > 0
        for term in terms:
            assert np.linalg.eigvalsh(term.w.data)[0] >= -1e-10
            assert np.isclose(np.trace(term.w.data), 1.0, atol=1e-10)
            assert np.isclose(np.trace(term.pi.data), 1.0, atol=1e-10)


class TestDecomposableNetwork:
    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_unit_trace_and_reconstruction(self, d):
        q = random_state((d, d), rng_seed=d, rank=1)
        net = decomposable_network(q)
        assert np.isclose(np.trace(net.state.data), 1.0, atol=1e-12)
        assert np.linalg.eigvalsh(net.state.data)[0] >= -1e-12
        assert recon_error(net) <= 1e-9

    def test_recon_constant_formula(self):
        d = 3
        q = random_state((d, d), rng_seed=17, rank=1)
        net = decomposable_network(q)
        lam = float(np.max(np.abs(
            np.linalg.eigvalsh(partial_transpose(q.mat, {1}).data))))
        assert np.isclose(net.recon_constant,
                          2 * (d - 1) / (d * (d**3 * lam + d - 2)), rtol=1e-12)

    def test_rejects_identity_like_q(self):
        q = density(np.eye(4) / 4, (2, 2))
        with pytest.raises(ValueError, match="degenerate"):
            decomposable_network(q)

    def test_flip_instance_matches_symmetric_form(self):
        # mixture of normalized antisymmetric/symmetric projectors
        d = 3
        net = flip_network(d)
        s, a = bell.sym_antisym(d)
        p00 = bell.bell_projector(d, 0, 0).data
        first = np.kron(a.data / np.trace(a.data).real, p00)
        second = np.kron(s.data / np.trace(s.data).real,
                         (np.eye(9) - p00) / 8)
        expect = first / (d + 2) + second * (d + 1) / (d + 2)
        assert np.max(np.abs(net.state.data - expect)) <= 1e-12
        assert np.isclose(net.recon_constant, 2 / (d * (d + 2)), rtol=1e-12)


class TestPbdNetwork:
    def test_smolin_is_uniform_d2(self):
        net = smolin_network()
        expect = np.zeros((16, 16), dtype=complex)
        for s in range(2):
            for t in range(2):
                p = bell.bell_projector(2, s, t).data
                expect += np.kron(p, p) / 4
        assert np.max(np.abs(net.state.data - expect)) <= 1e-12

    def test_choi_instance(self):
        net = choi_network()
        expect = np.zeros((81, 81), dtype=complex)
        for t in range(3):
            p0 = bell.bell_projector(3, 0, t).data
            p1 = bell.bell_projector(3, 1, t).data
            expect += 2 / 9 * np.kron(p0, p0) + 1 / 9 * np.kron(p1, p1)
        assert np.max(np.abs(net.state.data - expect)) <= 1e-12
        assert np.isclose(net.eta, 2 / 3)
        assert np.isclose(net.recon_constant, 2 / 9)

    def test_random_lambda_valid_state(self):
        rng = np.random.default_rng(3)
        for _ in range(5):
            lam = rng.random(3)
            lam /= lam.sum()
            net = pbd_network(tuple(lam))
            assert np.isclose(np.trace(net.state.data), 1.0, atol=1e-12)
            assert np.linalg.eigvalsh(net.state.data)[0] >= -1e-12
            assert recon_error(net) <= 1e-9

    def test_zero_lambda0_rejected(self):
        with pytest.raises(ValueError, match="eta would be 0"):
            pbd_network((0.0, 0.5, 0.5))

    def test_reduction_reconstruction(self):
        for d in (2, 3):
            net = reduction_network(d)
            assert np.isclose(net.recon_constant, 1 / d**2, rtol=1e-12)
            assert recon_error(net) <= 1e-10


class TestBhNetwork:
    def test_weights_at_d4(self):
        net = bh_network(4)
        assert np.isclose(net.recon_constant, (24 / 38) / 16, rtol=1e-12)

    def test_valid_state_and_reconstruction(self):
        net = bh_network(4)
        assert np.isclose(np.trace(net.state.data), 1.0, atol=1e-12)
        assert np.linalg.eigvalsh(net.state.data)[0] >= -1e-12
        assert recon_error(net) <= 1e-10

    def test_paired_witness_is_scaled_breuer_hall(self):
        d = 4
        net = bh_network(d)
        scaled = breuer_hall_witness(d)
        assert np.max(np.abs(net.witness.data - (d - 2) * scaled.mat.data)) <= 1e-12

    def test_invalid_dimension(self):
        with pytest.raises(ValueError):
            bh_network(3)


class TestReconstructWitness:
    def test_product_network_sign(self):
        # sigma (x) P00 with eta close to 1 contracts to (eta - 1) sigma <= 0
        d = 2
        sigma = random_state((d, d), rng_seed=23)
        p00 = bell.bell_projector(d, 0, 0)
        raw = kron(sigma.mat, p00)
        eta = 1 - 1e-3
        out = reconstruct_witness(raw, eta)
        assert np.max(np.abs(out.data - (eta - 1) * sigma.data)) <= 1e-12
        assert np.linalg.eigvalsh(out.data)[-1] <= 1e-12

    def test_requires_eta_for_bare_matrix(self):
        net = two_qubit_network()
        with pytest.raises(ValueError, match="eta"):
            reconstruct_witness(net.state.mat)

    def test_hermitian_output(self):
        out = reconstruct_witness(choi_network())
        assert out.hermiticity_defect() <= 1e-12


class TestPptReport:
    def test_smolin_two_two_cuts_ppt_and_one_three_cuts_npt(self):
        # Pauli form (1111 + XXXX + YYYY + ZZZZ)/16: a single-qubit partial
        # transpose flips YYYY, giving eigenvalue (1 - 1 - 1 + 1 ... ) = -1/8
        rep = ppt_report(smolin_network())
        assert len(rep) == 7
        for cut in ("A2B2:A3B3", "A2A3:B2B3", "A2B3:B2A3"):
            assert rep[cut] >= -1e-10
        for cut in ("A2:B2A3B3", "A2B2A3:B3", "A2A3B3:B2", "A2B2B3:A3"):
            assert abs(rep[cut] + 0.125) <= 1e-10

    def test_uniform_pbd_d3_breaks_ppt_across_cross_cut(self):
        rep = ppt_report(reduction_network(3))
        assert rep["A2A3:B2B3"] < -1e-6

    def test_flip_network_ppt_across_cross_cut(self):
        for d in (2, 3):
            rep = ppt_report(flip_network(d))
            assert rep["A2A3:B2B3"] >= -1e-10

    def test_choi_network_has_negative_cut(self):
        rep = ppt_report(choi_network())
        assert min(rep.values()) < -1e-6

    def test_pure_product_state_all_ppt(self):
        rng = np.random.default_rng(0)
        kets = [rng.standard_normal(2) + 1j * rng.standard_normal(2) for _ in range(4)]
        v = kets[0]
        for k in kets[1:]:
            v = np.kron(v, k)
        v /= np.linalg.norm(v)
        rep = ppt_report(proj(v, (2, 2, 2, 2)))
        assert all(val >= -1e-10 for val in rep.values())


def test_smolin_permutation_invariance():
    net = smolin_network()
    t = net.state.data.reshape((2,) * 8)
    for perm in itertools.permutations(range(4)):
        axes = list(perm) + [p + 4 for p in perm]
        permuted = t.transpose(axes).reshape(16, 16)
        assert np.max(np.abs(permuted - net.state.data)) <= 1e-12


def test_recon_constant_must_be_positive():
    net = two_qubit_network()
    with pytest.raises(ValueError, match="positive"):
        NetworkState(net.state, net.eta, -1.0, "broken", net.witness)
