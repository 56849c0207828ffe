"""Information bounds and ML estimation for Gaussian-beam angle-of-arrival tracking."""

__version__ = "0.1.0"

from .beam import (
    BeamModelWarning,
    BeamParams,
    beam_radius,
    beamwidth,
    intensity_profile,
    intensity_vs_aoa,
    received_power,
    received_power_deriv,
    received_power_deriv2,
)
from .estimator import (
    McReport,
    MLAngleEstimator,
    Observation,
    ml_estimate_joint,
    ml_estimate_location_only,
    monte_carlo,
    sample_observation,
)
from .fisher import (
    FisherBreakdown,
    SweepResult,
    crlb,
    crlb_location_only,
    fisher_information,
    sweep_theta,
)
from .focal_plane import (
    DetectorSignal,
    NoiseModel,
    ReceiverGeometry,
    detector_bounds,
    detector_mean,
    detector_mean_deriv,
    noise_variance,
    spot_center,
)
from .numerics import (
    DomainError,
    Interval,
    adaptive_quad,
    central_diff,
    central_diff2,
    erf,
    gauss_mass,
    lambert_w0,
    maximize_1d,
)
from .pointing import (
    PointingChannel,
    PointingModelWarning,
    crlb_general,
    exact_spot_intensity,
    fisher_information_general,
    fisher_information_general_reference,
    gamma_m,
    linearized_spot_intensity,
    signal_mean_sm,
    total_noise_sigma,
)
