"""Low-pass graph signal processing.

Functional API over dense numpy arrays plus scikit-learn style estimators
(:class:`GraphSampler`, :class:`BlindCommunityDetection`,
:class:`SmoothLaplacianLearner`, :class:`HighPassDetector`).
"""
from .anomaly import (
    DetectionResult,
    HighPassDetector,
    Hypothesis,
    calibrate_threshold,
    detect,
    hpf_statistic,
    localize,
    spatial_difference,
)
from .clustering import (
    BlindCommunityDetection,
    CommunityAssignment,
    blind_cd,
    kmeans,
    kmeans_objective,
    permutation_accuracy,
    sample_covariance,
    spectral_clustering,
)
from .errors import (
    ConfigError,
    GspError,
    InstabilityError,
    NumericalError,
    SamplingError,
    SingularityError,
    UnderdeterminedError,
    ValidationError,
)
from .filters import (
    Diffusion,
    FilterSpec,
    FinanceEquilibrium,
    IdealHighPass,
    IdealLowPass,
    Order1,
    Polynomial,
    Resolvent,
    Response,
    apply_diffusion_series,
    apply_polynomial,
    apply_spectral,
    filter_from_dict,
    frequency_response,
    low_pass_ratio,
)
from .graph import BlockModel, Graph, erdos_renyi_sample, expected_laplacian_sbm, laplacian, sbm_ppm_sample
from .interpolation import interpolate_time_vertex
from .processes import covariance_model, diffusion_snapshot, sample_lowpass_signals, smoothness_expectation
from .sampling import GraphSampler, SamplingPlan, build_interpolator, greedy_select, reconstruct, verify_rank
from .spectral import SpectralBasis, eigendecompose, gft, igft, quadratic_form
from .temporal import (
    GfArmaSpec,
    joint_transfer,
    opinion_dynamics_spec,
    simulate_gfarma,
    steady_state,
    temporal_lowpass_ratio,
)
from .topology import LearnedLaplacian, SmoothLaplacianLearner, learn_topology

__version__ = "0.1.0"

__all__ = [
    "apply_diffusion_series",
    "apply_polynomial",
    "apply_spectral",
    "blind_cd",
    "BlindCommunityDetection",
    "BlockModel",
    "build_interpolator",
    "calibrate_threshold",
    "CommunityAssignment",
    "ConfigError",
    "covariance_model",
    "detect",
    "DetectionResult",
    "Diffusion",
    "diffusion_snapshot",
    "eigendecompose",
    "erdos_renyi_sample",
    "expected_laplacian_sbm",
    "filter_from_dict",
    "FilterSpec",
    "FinanceEquilibrium",
    "frequency_response",
    "GfArmaSpec",
    "gft",
    "Graph",
    "GraphSampler",
    "greedy_select",
    "GspError",
    "HighPassDetector",
    "hpf_statistic",
    "Hypothesis",
    "IdealHighPass",
    "IdealLowPass",
    "igft",
    "InstabilityError",
    "interpolate_time_vertex",
    "joint_transfer",
    "kmeans",
    "kmeans_objective",
    "laplacian",
    "learn_topology",
    "LearnedLaplacian",
    "localize",
    "low_pass_ratio",
    "NumericalError",
    "opinion_dynamics_spec",
    "Order1",
    "permutation_accuracy",
    "Polynomial",
    "quadratic_form",
    "reconstruct",
    "Resolvent",
    "Response",
    "sample_covariance",
    "sample_lowpass_signals",
    "SamplingError",
    "SamplingPlan",
    "sbm_ppm_sample",
    "simulate_gfarma",
    "SingularityError",
    "SmoothLaplacianLearner",
    "smoothness_expectation",
    "spatial_difference",
    "spectral_clustering",
    "SpectralBasis",
    "steady_state",
    "temporal_lowpass_ratio",
    "UnderdeterminedError",
    "ValidationError",
    "verify_rank",
]
