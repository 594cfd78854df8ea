import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from netwitness import bell
from netwitness.tensor import partial_transpose


def test_bell_ket_d2_phi_plus():
    v = bell.bell_ket(2, 0, 0)
    assert np.allclose(v, np.array([1, 0, 0, 1]) / np.sqrt(2))


def test_bell_ket_d2_psi_minus():
    # s=1 shifts the second ket, t=1 puts the minus sign on j=1
    v = bell.bell_ket(2, 1, 1)
    assert np.allclose(v, np.array([0, 1, -1, 0]) / np.sqrt(2))


def test_gram_matrix_d3():
    kets = [bell.bell_ket(3, s, t) for s in range(3) for t in range(3)]
    gram = np.array([[ki.conj() @ kj for kj in kets] for ki in kets])
    assert np.max(np.abs(gram - np.eye(9))) <= 1e-12


def test_index_validation():
    with pytest.raises(ValueError):
        bell.bell_ket(3, 3, 0)
    with pytest.raises(ValueError):
        bell.bell_ket(3, 0, -1)


def test_projector_is_rank_one_idempotent():
    p = bell.bell_projector(3, 1, 2)
    assert np.allclose(p.data @ p.data, p.data, atol=1e-12)
    assert np.isclose(np.trace(p.data), 1.0)


def test_projectors_orthogonal():
    p = bell.bell_projector(2, 0, 1)
    q = bell.bell_projector(2, 1, 0)
    assert np.max(np.abs(p.data @ q.data)) <= 1e-12


def test_row_projector_trace_and_rank():
    pi0 = bell.bell_row_projector(3, 0)
    assert np.isclose(np.trace(pi0.data), 3.0)
    assert np.allclose(pi0.data @ pi0.data, pi0.data, atol=1e-12)


def test_row_projector_orthogonal_to_phi00():
    phi = bell.bell_ket(3, 0, 0)
    val = phi.conj() @ bell.bell_row_projector(3, 1).data @ phi
    assert abs(val) <= 1e-12


def test_row_projector_matches_bell_sum():
    for d in (2, 3, 4):
        for s in range(d):
            total = sum(bell.bell_projector(d, s, t).data for t in range(d))
            assert np.max(np.abs(total - bell.bell_row_projector(d, s).data)) <= 1e-12


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_completeness(d):
    total = sum(bell.bell_row_projector(d, s).data for s in range(d))
    assert np.max(np.abs(total - np.eye(d * d))) <= 1e-12


@given(st.integers(2, 5))
@settings(max_examples=4, deadline=None)
def test_transpose_maps_t_to_minus_t(d):
    for s in range(d):
        for t in range(d):
            pt = bell.bell_projector(d, s, t).data.T
            other = bell.bell_projector(d, s, (-t) % d).data
            assert np.max(np.abs(pt - other)) <= 1e-12


class TestFlip:
    def test_action_on_basis(self):
        f = bell.flip_operator(3).data
        for i in range(3):
            for j in range(3):
                v = np.zeros(9)
                v[i * 3 + j] = 1
                out = f @ v
                assert out[j * 3 + i] == 1

    def test_squares_to_identity(self):
        f = bell.flip_operator(4).data
        assert np.array_equal(f @ f, np.eye(16))

    def test_equals_d_times_pt_of_p00(self):
        for d in (2, 3, 4):
            lhs = bell.flip_operator(d).data
            rhs = d * partial_transpose(bell.bell_projector(d, 0, 0), {1}).data
            assert np.max(np.abs(lhs - rhs)) <= 1e-12

    def test_sym_antisym_traces(self):
        s2, a2 = bell.sym_antisym(2)
        assert np.isclose(np.trace(a2.data), 1.0)
        assert np.isclose(np.trace(s2.data), 3.0)
        for d in (3, 4):
            s, a = bell.sym_antisym(d)
            assert np.isclose(np.trace(a.data), d * (d - 1) / 2)
            assert np.isclose(np.trace(s.data), d * (d + 1) / 2)

    def test_projectors_orthogonal_and_complete(self):
        s, a = bell.sym_antisym(3)
        assert np.max(np.abs(s.data @ a.data)) <= 1e-12
        assert np.allclose(s.data + a.data, np.eye(9))

    def test_eigen_split_matches_projectors(self):
        d = 3
        f = bell.flip_operator(d)
        s, a = bell.sym_antisym(d)
        vals, vecs = np.linalg.eigh(f.data)
        minus = vecs[:, vals < 0]
        plus = vecs[:, vals > 0]
        assert np.allclose(minus @ minus.conj().T, a.data, atol=1e-10)
        assert np.allclose(plus @ plus.conj().T, s.data, atol=1e-10)


class TestSkewUnitary:
    def test_block_action(self):
        u = bell.skew_unitary(4)
        e0, e1 = np.eye(4)[0], np.eye(4)[1]
        assert np.array_equal(u @ e0, -e1)
        assert np.array_equal(u @ e1, e0)

    def test_exactly_skew_and_unitary(self):
        for d in (2, 4, 6):
            u = bell.skew_unitary(d)
            assert np.array_equal(u.T, -u)
            assert np.allclose(u @ u.conj().T, np.eye(d))

    def test_odd_dimension_rejected(self):
        with pytest.raises(ValueError, match="even"):
            bell.skew_unitary(3)

    def test_twisted_flip_involution_and_spectrum(self):
        fp = bell.twisted_flip(4)
        assert fp.hermiticity_defect() <= 1e-12
        assert np.allclose(fp.data @ fp.data, np.eye(16), atol=1e-12)
        vals = np.linalg.eigvalsh(fp.data)
        assert np.allclose(np.abs(vals), 1.0, atol=1e-12)

    def test_twisted_flip_trace_equals_d(self):
        # similarity transform of the flip: the trace stays d, and the
        # twisted flip is transpose-invariant for the real block U
        for d in (4, 6):
            fp = bell.twisted_flip(d)
            assert np.isclose(np.trace(fp.data), d)
            assert np.max(np.abs(fp.data - fp.data.T)) <= 1e-12


class TestWeyl:
    def test_maps_phi00_to_phi_st(self):
        d = 3
        phi00 = bell.bell_ket(d, 0, 0)
        for s in range(d):
            for t in range(d):
                lifted = np.kron(np.eye(d), bell.weyl(d, s, t)) @ phi00
                assert np.max(np.abs(lifted - bell.bell_ket(d, s, t))) <= 1e-12

    def test_unitary(self):
        w = bell.weyl(5, 2, 3)
        assert np.allclose(w @ w.conj().T, np.eye(5), atol=1e-12)
