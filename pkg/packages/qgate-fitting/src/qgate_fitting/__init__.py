"""qgate-fitting - linewidth, Mollow, chevron, Rabi and coupler calibration fits."""

__version__ = "0.1.0"
__author__ = "gkzhb"
__email__ = "gkzhb98@gmail.com"

from .calibration import calibration_from_fit, fit_coupling_vs_amplitude
from .chevron import fit_chevron, gaussian_model
from .lorentzian import fit_lorentzian_s21, lorentzian_s21_model
from .mollow import MollowTrace, fit_mollow_global, link_efficiency, mollow_psd_model
from .optimizer import START_SCALES, covariance_from_jacobian, multi_start_least_squares
from .rabi import fit_rabi_decay, rabi_decay_model
from .result import FitResult
from .synthetic import NOISE_FRACTION, add_noise, synthetic_dataset

__all__ = [
    "FitResult",
    "MollowTrace",
    "NOISE_FRACTION",
    "START_SCALES",
    "add_noise",
    "calibration_from_fit",
    "covariance_from_jacobian",
    "fit_chevron",
    "fit_coupling_vs_amplitude",
    "fit_lorentzian_s21",
    "fit_mollow_global",
    "fit_rabi_decay",
    "gaussian_model",
    "link_efficiency",
    "lorentzian_s21_model",
    "mollow_psd_model",
    "multi_start_least_squares",
    "rabi_decay_model",
    "synthetic_dataset",
]
