import numpy as np
import pytest

from qgate_core import basis_state
from qgate_dynamics import CascadedModel, evolve
from qgate_pulses import PulseSchedule, absorption_coupling, emission_coupling
from qgate_pulses.schedule import CouplingEvent


def transfer_schedule(model):
    bandwidth = model.source.kappa
    source = emission_coupling(bandwidth, model.source.kappa)
    gate = absorption_coupling(emission_coupling(bandwidth, model.gate.kappa))
    return PulseSchedule(
        events=[
            CouplingEvent(t_start=0.0, channel="source", waveform=source),
            CouplingEvent(t_start=0.0, channel="gate", waveform=gate),
        ]
    )


@pytest.mark.slow
class TestStateTransfer:
    def test_lossless_transfer(self):
        model = CascadedModel(eta_loss=1.0, decoherence=False)
        result = evolve(model, transfer_schedule(model), basis_state(model.dims, [1, 0, 0, 0]), dt_out=50.0)
        assert result.populations["a_G"][-1, 1] >= 0.94
        assert result.max_trace_error < 1e-6

    def test_lossy_transfer_scales_with_transmission(self):
        model = CascadedModel(eta_loss=0.75, decoherence=False)
        lossless = CascadedModel(eta_loss=1.0, decoherence=False)
        rho0 = basis_state(model.dims, [1, 0, 0, 0])
        lossy = evolve(model, transfer_schedule(model), rho0, dt_out=50.0).populations["a_G"][-1, 1]
        ideal = evolve(lossless, transfer_schedule(lossless), rho0, dt_out=50.0).populations["a_G"][-1, 1]
        assert lossy / ideal == pytest.approx(0.75, abs=0.01)
