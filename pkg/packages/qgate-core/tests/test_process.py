import numpy as np
import pytest

from qgate_common import DimensionError
from qgate_core import (
    GATE_UNITARIES,
    ProcessMap,
    QuantumState,
    ideal_process,
    matrix_from_json,
    matrix_to_json,
    pauli_labels,
    process_fidelity,
    project_psd,
    state_fidelity,
)


def random_state(rng, dim):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    m = g @ g.conj().T
    return m / np.trace(m)


def random_unitary(rng, dim):
    q, r = np.linalg.qr(rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


class TestIdealProcess:
    def test_identity(self):
        chi = ideal_process("I").chi
        assert np.isclose(chi[0, 0], 1.0)
        assert np.isclose(np.abs(chi).sum(), 1.0)

    def test_x(self):
        assert np.isclose(ideal_process("X").chi[1, 1], 1.0)

    def test_cphase_is_rank_one(self):
        proc = ideal_process("CPHASE")
        assert proc.n_qubits == 2
        vals = np.linalg.eigvalsh(proc.chi)
        assert np.isclose(vals[-1], 1.0)
        assert np.allclose(vals[:-1], 0.0, atol=1e-12)
        labels = pauli_labels(2)
        for label in ("II", "IZ", "ZI", "ZZ"):
            assert np.isclose(np.abs(proc.chi[labels.index(label)]).max(), 0.25)

    def test_apply_reproduces_unitary(self):
        rng = np.random.default_rng(0)
        rho = random_state(rng, 4)
        u = GATE_UNITARIES["CPHASE"]
        assert np.allclose(ideal_process("CPHASE").apply(rho), u @ rho @ u.conj().T)

    def test_unknown_label(self):
        with pytest.raises(ValueError, match="Unknown gate"):
            ideal_process("SWAP")

    @pytest.mark.parametrize("label", ["I", "X", "Y", "T", "CPHASE"])
    def test_idempotent_under_projection(self, label):
        chi = ideal_process(label).chi
        assert np.allclose(project_psd(chi).chi, chi, atol=1e-12)


class TestProcessFidelity:
    def test_self(self):
        assert np.isclose(process_fidelity(ideal_process("Y"), ideal_process("Y")), 1.0)

    def test_orthogonal(self):
        assert np.isclose(process_fidelity(ideal_process("I"), ideal_process("X")), 0.0, atol=1e-12)

    def test_t_gate_overlap(self):
        value = process_fidelity(ideal_process("I"), ideal_process("T"))
        assert np.isclose(value, np.cos(np.pi / 8) ** 2)
        assert value == pytest.approx(0.8536, abs=1e-4)

    def test_qubit_count_mismatch(self):
        with pytest.raises(DimensionError):
            process_fidelity(ideal_process("I"), ideal_process("CPHASE"))


class TestProjectPsd:
    def test_clips_negative_eigenvalue(self):
        out = project_psd(np.diag([1.2, -0.2, 0.0, 0.0]))
        assert np.allclose(out.chi, np.diag([1.0, 0.0, 0.0, 0.0]))

    def test_hermitizes_first(self):
        m = np.diag([0.5, 0.5, 0.0, 0.0]).astype(complex)
        m[0, 1] = 0.2
        out = project_psd(m).chi
        assert np.isclose(out[0, 1], out[1, 0].conj())
        assert np.isclose(out[0, 1], 0.1)

    def test_rejects_invalid_dimension(self):
        with pytest.raises(DimensionError):
            project_psd(np.eye(3) / 3)

    def test_process_map_validates_trace(self):
        with pytest.raises(ValueError, match="trace"):
            ProcessMap(chi=np.eye(4), n_qubits=1)


class TestStateFidelity:
    def test_self(self):
        rho = QuantumState.from_ket([0.6, 0.8])
        assert np.isclose(state_fidelity(rho, rho), 1.0)

    def test_orthogonal(self):
        assert np.isclose(state_fidelity(np.diag([1.0, 0.0]), np.diag([0.0, 1.0])), 0.0)

    def test_plus_against_mixed(self):
        plus = np.full((2, 2), 0.5)
        assert np.isclose(state_fidelity(plus, np.eye(2) / 2), 0.5)

    def test_rejects_non_psd(self):
        with pytest.raises(ValueError, match="semidefinite"):
            state_fidelity(np.diag([1.5, -0.5]), np.eye(2) / 2)

    def test_unitary_invariance_and_symmetry(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            a = random_state(rng, 3)
            b = random_state(rng, 3)
            u = random_unitary(rng, 3)
            f = state_fidelity(a, b)
            assert abs(f - state_fidelity(u @ a @ u.conj().T, u @ b @ u.conj().T)) < 1e-8
            assert abs(f - state_fidelity(b, a)) < 1e-8

    def test_pure_reference_reduces_to_expectation(self):
        rng = np.random.default_rng(12)
        for _ in range(100):
            psi = rng.normal(size=4) + 1j * rng.normal(size=4)
            psi /= np.linalg.norm(psi)
            rho = random_state(rng, 4)
            expected = np.real(psi.conj() @ rho @ psi)
            assert abs(state_fidelity(np.outer(psi, psi.conj()), rho) - expected) < 1e-8


def test_matrix_json_preserves_values():
    m = np.array([[0.5, 0.25j], [-0.25j, 0.5]])
    data = matrix_to_json(m, [2])
    assert data["dims"] == [2]
    restored, dims = matrix_from_json(data)
    assert dims == (2,)
    assert np.array_equal(restored, m)


def test_matrix_json_rejects_bad_dims():
    with pytest.raises(DimensionError):
        matrix_from_json({"dims": [3], "real": [[1.0]], "imag": [[0.0]]})
