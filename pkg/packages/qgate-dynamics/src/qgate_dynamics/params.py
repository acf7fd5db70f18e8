"""Measured device parameters and the rates derived from them."""

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

TWO_PI = 2.0 * np.pi


def mhz_to_rate(value_mhz: float) -> float:
    """Convert a frequency in MHz to an angular rate in rad/ns."""
    return TWO_PI * value_mhz * 1e-3


class DeviceParams(BaseModel):
    """One chip: three-level transmon, tunable coupler and converter mode.

    Frequencies in GHz, anharmonicity and κ in MHz (divided by 2π), times in µs.
    ``kappa_fit_mhz`` is the converter decay rate fitted from emission data,
    used for waveform generation when selected.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    omega_ge_ghz: float = Field(gt=0)
    omega_ef_ghz: float = Field(gt=0)
    anharmonicity_mhz: float = Field(gt=0)
    t1_e_us: float = Field(gt=0)
    t1_f_us: float = Field(gt=0)
    t2_star_e_us: float = Field(gt=0)
    t2_star_f_us: float = Field(gt=0)
    coupler_ghz: float = Field(gt=0)
    converter_ghz: float = Field(gt=0)
    kappa_mhz: float = Field(gt=0)
    kappa_fit_mhz: float | None = Field(default=None, gt=0)

    @model_validator(mode="after")
    def validate_coherence(self):
        if self.t2_star_e_us > 2 * self.t1_e_us:
            raise ValueError("t2_star_e_us must not exceed 2*t1_e_us")
        if self.t2_star_f_us > 2 * self.t1_f_us:
            raise ValueError("t2_star_f_us must not exceed 2*t1_f_us")
        return self

    @property
    def kappa(self) -> float:
        return mhz_to_rate(self.kappa_mhz)

    @property
    def kappa_fit(self) -> float:
        return mhz_to_rate(self.kappa_fit_mhz if self.kappa_fit_mhz is not None else self.kappa_mhz)

    @property
    def alpha(self) -> float:
        return mhz_to_rate(self.anharmonicity_mhz)

    @property
    def gamma1_e(self) -> float:
        return 1.0 / (self.t1_e_us * 1e3)

    @property
    def gamma1_f(self) -> float:
        return 1.0 / (self.t1_f_us * 1e3)

    @property
    def gamma_phi_e(self) -> float:
        """Pure dephasing rate of |e⟩ in 1/ns: 1/T2* - 1/(2 T1)."""
        return 1.0 / (self.t2_star_e_us * 1e3) - 0.5 * self.gamma1_e

    @property
    def gamma_phi_f(self) -> float:
        return 1.0 / (self.t2_star_f_us * 1e3) - 0.5 * self.gamma1_f

    @property
    def converter_detuning_mhz(self) -> float:
        """Converter minus qubit g-e frequency (the swap carrier)."""
        return (self.converter_ghz - self.omega_ge_ghz) * 1e3

    @property
    def cphase_detuning_mhz(self) -> float:
        """Carrier of the |f0⟩↔|e1⟩ drive: converter detuning plus anharmonicity."""
        return self.converter_detuning_mhz + self.anharmonicity_mhz


def source_device() -> DeviceParams:
    return DeviceParams(
        omega_ge_ghz=5.925,
        omega_ef_ghz=5.630,
        anharmonicity_mhz=295.0,
        t1_e_us=16.0,
        t1_f_us=6.0,
        t2_star_e_us=4.0,
        t2_star_f_us=2.0,
        coupler_ghz=3.2,
        converter_ghz=5.998,
        kappa_mhz=1.8,
        kappa_fit_mhz=2.1,
    )


def gate_device() -> DeviceParams:
    return DeviceParams(
        omega_ge_ghz=5.771,
        omega_ef_ghz=5.478,
        anharmonicity_mhz=301.7,
        t1_e_us=13.0,
        t1_f_us=4.0,
        t2_star_e_us=10.0,
        t2_star_f_us=2.0,
        coupler_ghz=4.6,
        converter_ghz=5.998,
        kappa_mhz=2.1,
        kappa_fit_mhz=2.8,
    )
