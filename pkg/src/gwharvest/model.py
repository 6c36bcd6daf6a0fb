"""Domain types, nondimensionalization, and validation.

All public interfaces work in units of the switching width sigma: energies
and frequencies enter as Omega*sigma and omega*sigma, lengths as D/sigma,
times as t0/sigma.  Outputs are reported normalized (P/lambda^2, X/lambda^2,
Theta_GW/(A lambda^2), ...), which removes the two redundant scales and
matches how the observables are naturally plotted.

Complex quantities are carried as Python's built-in complex, which provides
the real/imag accessor pair the interfaces require.
"""

from __future__ import annotations

import warnings as _warnings
from dataclasses import dataclass, field

__all__ = [
    "InvalidGeometry",
    "InvalidCoupling",
    "DegenerateDirection",
    "StateInvalid",
    "IncompleteGrid",
    "ConfigError",
    "ValidationWarning",
    "GwBackground",
    "DetectorParams",
    "PairGeometry",
    "DimensionlessParams",
    "SpacetimePoint",
    "geodesic_interval",
    "validate",
    "is_spacelike",
    "CONFIG_KEYS",
    "CONFIG_DEFAULTS",
    "parse_config",
    "read_config",
    "params_from_mapping",
]

# Soft validity limits.  The gravitational-wave results are first order in
# the strain amplitude A, and the first-order treatment of Theta_GW requires
# |X_M| to stay away from zero, which bounds the useful detector gap.
AMPLITUDE_SOFT_LIMIT = 0.1
GAP_SOFT_LIMIT = 2.0


class InvalidGeometry(ValueError):
    """Detector separation out of contract (D/sigma must be > 0)."""


class InvalidCoupling(ValueError):
    """Coupling strength out of contract (lambda must be > 0)."""


class DegenerateDirection(ArithmeticError):
    """|X_M| is numerically zero; the first-order GW shift of |X| is undefined."""


class StateInvalid(ValueError):
    """Assembled detector state violates positivity beyond perturbative tolerance."""


class IncompleteGrid(ValueError):
    """A figure was requested from a row set with missing or failed points."""


class ConfigError(ValueError):
    """Malformed or unknown entry in a configuration file."""


@dataclass(frozen=True)
class ValidationWarning:
    """Structured soft-limit warning: a stable code plus a human message."""

    code: str
    message: str

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


@dataclass(frozen=True)
class GwBackground:
    """Gravitational-wave background: strain amplitude and frequency.

    amplitude_A      dimensionless strain, A >= 0 expected; all GW outputs
                     are first order in A.
    omega_sigma      wave frequency times switching width, omega*sigma >= 0
                     expected.
    """

    amplitude_A: float = 0.0
    omega_sigma: float = 2.0


@dataclass(frozen=True)
class DetectorParams:
    """Detector energy gap, interaction center, and coupling.

    gap_omega_sigma  Omega*sigma; may be negative (a detector initialized
                     in its excited state maps to Omega -> -Omega).
    t0_sigma         center of the Gaussian switching window, in sigma.
    coupling_lambda  interaction strength lambda > 0; bookkeeping only,
                     since every reported quantity is normalized.
    """

    gap_omega_sigma: float = 1.0
    t0_sigma: float = 0.0
    coupling_lambda: float = 1.0

    def __post_init__(self) -> None:
        if not self.coupling_lambda > 0.0:
            raise InvalidCoupling(
                f"coupling lambda must be > 0, got {self.coupling_lambda!r}"
            )


@dataclass(frozen=True)
class PairGeometry:
    """Static detector pair separated by proper distance D along one axis.

    d_sigma          D/sigma > 0.  Coincident detectors are out of contract:
                     the separation-dependent integrals have a (a^2 - D^2)^-2
                     structure whose closed forms require D > 0.
    separation_axis  'x' (the polarization stretch axis, the configuration
                     every validated result uses) or 'y'.  The 'y' choice is
                     an experimental flag: for separation along y the
                     quadratic GW correction to the squared interval flips
                     sign, so the GW matrix elements are negated.  This is
                     implied by the interval algebra but is not a validated
                     claim.
    """

    d_sigma: float = 1.0
    separation_axis: str = "x"

    def __post_init__(self) -> None:
        if not self.d_sigma > 0.0:
            raise InvalidGeometry(f"D/sigma must be > 0, got {self.d_sigma!r}")
        if self.separation_axis not in ("x", "y"):
            raise InvalidGeometry(
                f"separation_axis must be 'x' or 'y', got {self.separation_axis!r}"
            )


@dataclass(frozen=True)
class DimensionlessParams:
    """Full physical configuration of one evaluation point."""

    gw: GwBackground = field(default_factory=GwBackground)
    detector: DetectorParams = field(default_factory=DetectorParams)
    pair: PairGeometry = field(default_factory=PairGeometry)

    # Flat accessors, used heavily by the sweep and CLI layers.
    @property
    def A(self) -> float:
        return self.gw.amplitude_A

    @property
    def omega_sigma(self) -> float:
        return self.gw.omega_sigma

    @property
    def Omega_sigma(self) -> float:
        return self.detector.gap_omega_sigma

    @property
    def t0_sigma(self) -> float:
        return self.detector.t0_sigma

    @property
    def coupling_lambda(self) -> float:
        return self.detector.coupling_lambda

    @property
    def d_sigma(self) -> float:
        return self.pair.d_sigma


@dataclass(frozen=True)
class SpacetimePoint:
    """Minkowski event (t, x, y, z) in units of sigma, with light-cone views."""

    t: float
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    @property
    def u(self) -> float:
        """Light-cone coordinate u = t - z."""
        return self.t - self.z

    @property
    def v(self) -> float:
        """Light-cone coordinate v = t + z."""
        return self.t + self.z


def geodesic_interval(a: SpacetimePoint, b: SpacetimePoint) -> float:
    """Squared Minkowski interval -du*dv + dx^2 + dy^2 between two events.

    Positive for spacelike pairs, negative for timelike, zero on the light
    cone.  Symmetric and quadratic in the coordinate differences.
    """
    du = a.u - b.u
    dv = a.v - b.v
    dx = a.x - b.x
    dy = a.y - b.y
    return -du * dv + dx * dx + dy * dy


def is_spacelike(pair: PairGeometry) -> bool:
    """Approximate spacelike classification of a static pair.

    Detectors interacting for a window of width sigma are approximately
    spacelike separated when D > sigma; a pure function of D/sigma used
    by the sweep presets' panel labels.
    """
    return pair.d_sigma > 1.0


def validate(p: DimensionlessParams) -> list[ValidationWarning]:
    """Evaluate all soft validity limits, returning structured warnings.

    Hard violations (D <= 0, lambda <= 0) raise at construction and so
    cannot reach here.  The returned list is empty iff A is within the
    linear-strain regime, |Omega*sigma| is inside the first-order validity
    window, and the wave frequency is non-negative.
    """
    out: list[ValidationWarning] = []
    if p.gw.amplitude_A < 0.0:
        out.append(
            ValidationWarning(
                "AmplitudeNegative",
                f"strain amplitude A = {p.gw.amplitude_A:g} is negative; "
                "results are first order in A and assume A >= 0",
            )
        )
    if p.gw.amplitude_A > AMPLITUDE_SOFT_LIMIT:
        out.append(
            ValidationWarning(
                "AmplitudeBeyondLinearRegime",
                f"strain amplitude A = {p.gw.amplitude_A:g} exceeds the "
                f"linear-regime soft limit {AMPLITUDE_SOFT_LIMIT:g}; "
                "first-order-in-A results degrade",
            )
        )
    if abs(p.detector.gap_omega_sigma) >= GAP_SOFT_LIMIT:
        out.append(
            ValidationWarning(
                "GapBeyondFirstOrderValidity",
                f"|Omega*sigma| = {abs(p.detector.gap_omega_sigma):g} is at or "
                f"beyond the soft limit {GAP_SOFT_LIMIT:g}; |X_M| decays like "
                "exp(-(Omega*sigma)^2) there and the neglected second-order "
                "strain contribution can dominate the GW shift",
            )
        )
    if p.gw.omega_sigma < 0.0:
        out.append(
            ValidationWarning(
                "NegativeGwFrequency",
                f"omega*sigma = {p.gw.omega_sigma:g} is negative; the "
                "background is defined for omega >= 0",
            )
        )
    return out


def emit_warnings(ws: list[ValidationWarning]) -> None:
    """Forward structured warnings to Python's warning stream."""
    for w in ws:
        _warnings.warn(str(w), stacklevel=3)


# --- configuration files -------------------------------------------------
#
# Plain "key = value" files; blank lines and #-comments allowed.  Exactly
# these keys are understood; anything else is an error so that typos fail
# loudly instead of silently falling back to defaults.

CONFIG_KEYS = ("A", "omega_sigma", "Omega_sigma", "D_sigma", "t0_sigma", "lambda")

CONFIG_DEFAULTS: dict[str, float] = {
    "A": 0.0,
    "omega_sigma": 2.0,
    "Omega_sigma": 1.0,
    "D_sigma": 1.0,
    "t0_sigma": 0.0,
    "lambda": 1.0,
}


def parse_config(text: str) -> dict[str, float]:
    """Parse key = value configuration text into a {key: float} mapping."""
    out: dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in CONFIG_KEYS:
            raise ConfigError(
                f"line {lineno}: unknown key {key!r} "
                f"(known keys: {', '.join(CONFIG_KEYS)})"
            )
        try:
            out[key] = float(value)
        except ValueError as exc:
            raise ConfigError(
                f"line {lineno}: value for {key!r} is not a number: {value!r}"
            ) from exc
    return out


def read_config(path: str) -> dict[str, float]:
    """Read and parse a configuration file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path!r}: {exc}") from exc
    return parse_config(text)


def params_from_mapping(values: dict[str, float]) -> DimensionlessParams:
    """Build DimensionlessParams from a {config key: value} mapping.

    Missing keys take the documented defaults; the mapping is typically
    defaults, overlaid by a config file, overlaid by CLI flags.
    """
    merged = dict(CONFIG_DEFAULTS)
    for key in values:
        if key not in CONFIG_KEYS:
            raise ConfigError(f"unknown parameter {key!r}")
    merged.update(values)
    return DimensionlessParams(
        gw=GwBackground(
            amplitude_A=merged["A"], omega_sigma=merged["omega_sigma"]
        ),
        detector=DetectorParams(
            gap_omega_sigma=merged["Omega_sigma"],
            t0_sigma=merged["t0_sigma"],
            coupling_lambda=merged["lambda"],
        ),
        pair=PairGeometry(d_sigma=merged["D_sigma"]),
    )
