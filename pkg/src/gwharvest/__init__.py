"""Entanglement harvesting by Gaussian-switched detectors in a GW background.

Two pointlike two-level detectors with Gaussian switching couple to a
massless scalar field on a linearized gravitational-wave spacetime.  This
package evaluates, to leading order in the coupling and in the wave
amplitude, the closed forms for the transition probability, the matrix
elements that enter the reduced two-detector state, the concurrence, and
the correlation function — plus the GW-induced corrections to each — and
cross-checks every closed form against independent numerical quadrature.

All public APIs are dimensionless: times and lengths in units of the
switching width sigma, energies in units of 1/sigma, and outputs
normalized by the coupling squared (and by the wave amplitude for the
GW corrections).
"""

from .closedform import (
    HarvestReport,
    c_gw,
    c_minkowski,
    concurrence,
    correlation,
    density_matrix,
    evaluate,
    f_envelope,
    integral_I1,
    integral_I2,
    integral_I3,
    integral_I4,
    transition_probability,
    x_gw,
    x_minkowski,
)
from .model import (
    CONFIG_DEFAULTS,
    CONFIG_KEYS,
    ConfigError,
    DegenerateDirection,
    DetectorParams,
    DimensionlessParams,
    GwBackground,
    IncompleteGrid,
    InvalidCoupling,
    InvalidGeometry,
    PairGeometry,
    SpacetimePoint,
    StateInvalid,
    ValidationWarning,
    geodesic_interval,
    is_spacelike,
    params_from_mapping,
    parse_config,
    read_config,
    validate,
)
from .oracle import (
    CheckRecord,
    NoConvergence,
    OracleEstimate,
    all_passed,
    oracle_CM,
    oracle_I2,
    oracle_I4,
    oracle_P,
    oracle_P_full,
    oracle_XM,
    oracle_delta_prime,
    verify_suite,
)
from .specfun import (
    DomainTooLarge,
    erf_complex,
    faddeeva_w,
    scaled_erf_product,
)
from .sweep import (
    CSV_HEADER,
    PRESETS,
    AxisSpec,
    FigurePreset,
    GridPoint,
    GridSpec,
    build_figure,
    emit_csv,
    emit_svg,
    run_grid,
    run_preset,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # closedform
    "HarvestReport",
    "transition_probability",
    "x_minkowski",
    "c_minkowski",
    "f_envelope",
    "integral_I1",
    "integral_I2",
    "integral_I3",
    "integral_I4",
    "x_gw",
    "c_gw",
    "concurrence",
    "correlation",
    "evaluate",
    "density_matrix",
    # model
    "GwBackground",
    "DetectorParams",
    "PairGeometry",
    "DimensionlessParams",
    "SpacetimePoint",
    "geodesic_interval",
    "is_spacelike",
    "validate",
    "ValidationWarning",
    "parse_config",
    "read_config",
    "params_from_mapping",
    "CONFIG_KEYS",
    "CONFIG_DEFAULTS",
    "ConfigError",
    "InvalidGeometry",
    "InvalidCoupling",
    "DegenerateDirection",
    "StateInvalid",
    "IncompleteGrid",
    # oracle
    "OracleEstimate",
    "CheckRecord",
    "NoConvergence",
    "oracle_P",
    "oracle_P_full",
    "oracle_XM",
    "oracle_CM",
    "oracle_I2",
    "oracle_I4",
    "oracle_delta_prime",
    "verify_suite",
    "all_passed",
    # specfun
    "DomainTooLarge",
    "faddeeva_w",
    "erf_complex",
    "scaled_erf_product",
    # sweep
    "AxisSpec",
    "GridSpec",
    "GridPoint",
    "FigurePreset",
    "PRESETS",
    "run_grid",
    "run_preset",
    "emit_csv",
    "emit_svg",
    "build_figure",
    "CSV_HEADER",
]
