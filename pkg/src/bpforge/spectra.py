"""Frequency grids, pump/phasematching builders and joint spectral amplitudes.

The source is parameterized by a Gaussian pump of given intensity FWHM and a
linearized phasematching ridge at angle ``theta`` in the (nu_s, nu_i) plane:
the ridge is the line ``nu_i = tan(theta) * nu_s`` and the phasematching
profile depends only on the perpendicular ridge coordinate
``u = nu_s sin(theta) - nu_i cos(theta)``.  The pump depends only on
``nu_s + nu_i`` and is therefore always a ridge at -45 degrees.
"""

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, GridLeakageWarning, SpectrumShapeWarning
from .units import (
    SINC_HALF_POWER,
    TWO_SQRT_LN2,
    fwhm_nm_to_rad_per_ps,
    nm_fwhm_to_sigma,
    rad_per_ps_to_fwhm_nm,
)

DEFAULT_LAMBDA0_SIGNAL_NM = 1536.0
DEFAULT_LAMBDA0_IDLER_NM = 1536.0
DEFAULT_PM_ANGLE_DEG = 59.0
DEFAULT_PUMP_FWHM_NM = 2.1

# Phasematching intensity FWHM (rad/ps, perpendicular to the ridge) that makes
# the composed signal marginal 5.2 nm wide at the default pump and angle.
# Pinned from optimize.calibrate_pm_width; a regression test keeps it honest.
DEFAULT_PM_FWHM_RAD_PER_PS = 4.530348809485308

_UNIFORM_RTOL = 1e-9


def _validate_axis(nu: np.ndarray, name: str) -> np.ndarray:
    nu = np.asarray(nu, dtype=float)
    if nu.ndim != 1 or nu.size < 8:
        raise DomainError(f"{name}: need a 1-D axis with at least 8 points")
    if not np.all(np.isfinite(nu)):
        raise DomainError(f"{name}: non-finite values")
    steps = np.diff(nu)
    if np.any(steps <= 0):
        raise DomainError(f"{name}: axis must be strictly increasing")
    if np.max(np.abs(steps - steps[0])) > _UNIFORM_RTOL * max(abs(nu[0]), abs(nu[-1]), steps[0]):
        raise DomainError(f"{name}: axis must be uniformly spaced")
    nu.setflags(write=False)
    return nu


@dataclass(frozen=True)
class FrequencyGrid:
    """Uniform detuning axes (rad/ps) around the signal/idler central wavelengths."""

    nu_s: np.ndarray
    nu_i: np.ndarray
    lambda0_s: float = DEFAULT_LAMBDA0_SIGNAL_NM
    lambda0_i: float = DEFAULT_LAMBDA0_IDLER_NM

    def __post_init__(self):
        object.__setattr__(self, "nu_s", _validate_axis(self.nu_s, "nu_s"))
        object.__setattr__(self, "nu_i", _validate_axis(self.nu_i, "nu_i"))
        if self.lambda0_s <= 0 or self.lambda0_i <= 0:
            raise DomainError("central wavelengths must be positive")

    @property
    def n_s(self) -> int:
        return self.nu_s.size

    @property
    def n_i(self) -> int:
        return self.nu_i.size

    @property
    def dnu_s(self) -> float:
        return float(self.nu_s[1] - self.nu_s[0])

    @property
    def dnu_i(self) -> float:
        return float(self.nu_i[1] - self.nu_i[0])

    def mesh(self):
        """(S, I) meshgrid with signal along axis 0."""
        return np.meshgrid(self.nu_s, self.nu_i, indexing="ij")

    def axes_equal(self) -> bool:
        return (
            self.n_s == self.n_i
            and self.lambda0_s == self.lambda0_i
            and np.array_equal(self.nu_s, self.nu_i)
        )


@dataclass(frozen=True)
class GaussianSourceModel:
    """Pump/phasematching parameterization of the pair source.

    Parameters
    ----------
    pump_fwhm_nm : float
        Pump intensity FWHM in nm, measured at the pump wavelength.
    pm_angle_deg : float
        Phasematching ridge angle theta in (-90, 90); the ridge is the line
        nu_i = tan(theta) nu_s.
    pm_fwhm : float
        Phasematching intensity FWHM (rad/ps) along the axis perpendicular
        to the ridge.
    pm_shape : str
        'gaussian' (default) or 'sinc'.
    lambda0_s, lambda0_i, lambda0_p : float
        Central wavelengths in nm.  If lambda0_p is omitted it is derived
        from 1/lambda_p = 1/lambda_s + 1/lambda_i; if given it must satisfy
        that relation to 1e-6 relative.
    crystal_length_mm, poling_period_um : float
        Descriptive geometry, carried as metadata only.
    """

    pump_fwhm_nm: float = DEFAULT_PUMP_FWHM_NM
    pm_angle_deg: float = DEFAULT_PM_ANGLE_DEG
    pm_fwhm: float = DEFAULT_PM_FWHM_RAD_PER_PS
    pm_shape: str = "gaussian"
    lambda0_s: float = DEFAULT_LAMBDA0_SIGNAL_NM
    lambda0_i: float = DEFAULT_LAMBDA0_IDLER_NM
    lambda0_p: float | None = None
    crystal_length_mm: float = 8.0
    poling_period_um: float = 117.0

    def __post_init__(self):
        if self.pump_fwhm_nm <= 0:
            raise DomainError("pump_fwhm_nm must be positive")
        if self.pm_fwhm <= 0:
            raise DomainError("pm_fwhm must be positive")
        if not -90.0 < self.pm_angle_deg < 90.0:
            raise DomainError("pm_angle_deg must lie in (-90, 90)")
        if self.pm_shape not in ("gaussian", "sinc"):
            raise DomainError(f"unknown pm_shape {self.pm_shape!r}")
        if self.lambda0_s <= 0 or self.lambda0_i <= 0:
            raise DomainError("central wavelengths must be positive")
        if self.crystal_length_mm <= 0 or self.poling_period_um <= 0:
            raise DomainError("crystal geometry must be positive")
        harmonic = 1.0 / (1.0 / self.lambda0_s + 1.0 / self.lambda0_i)
        if self.lambda0_p is None:
            object.__setattr__(self, "lambda0_p", harmonic)
        else:
            if abs(1.0 / self.lambda0_p - 1.0 / harmonic) > 1e-6 / harmonic:
                raise DomainError(
                    "central wavelengths violate energy conservation: "
                    f"1/{self.lambda0_p} != 1/{self.lambda0_s} + 1/{self.lambda0_i}"
                )

    @property
    def sigma_pump(self) -> float:
        """Amplitude sigma of the pump envelope in rad/ps."""
        return nm_fwhm_to_sigma(self.pump_fwhm_nm, self.lambda0_p)

    @property
    def sigma_pm(self) -> float:
        """Gaussian-equivalent amplitude sigma of the phasematching profile."""
        return self.pm_fwhm / TWO_SQRT_LN2


def _quadratic_coefficients(model: GaussianSourceModel) -> tuple[float, float, float]:
    # Amplitude exponent of the Gaussian-shape model written as
    # -(a nu_s^2 + 2 b nu_s nu_i + c nu_i^2) / 2.
    theta = np.radians(model.pm_angle_deg)
    p = 1.0 / model.sigma_pump**2
    f = 1.0 / model.sigma_pm**2
    s, co = np.sin(theta), np.cos(theta)
    return p + f * s * s, p - f * s * co, p + f * co * co


def predicted_marginal_sigmas(model: GaussianSourceModel) -> tuple[float, float]:
    """Amplitude sigmas (rad/ps) of the signal and idler marginals.

    Closed form for the Gaussian-shape model; for a sinc phasematching this
    is the prediction of the FWHM-matched Gaussian and is used for grid
    sizing only.
    """
    a, b, c = _quadratic_coefficients(model)
    return 1.0 / np.sqrt(a - b * b / c), 1.0 / np.sqrt(c - b * b / a)


def make_grid(model: GaussianSourceModel, n: int = 256, span_sigmas: float = 4.0) -> FrequencyGrid:
    """Symmetric uniform grid covering +-span_sigmas predicted marginal sigmas.

    Each axis gets its own span; use :func:`make_square_grid` when identical
    axes are required (e.g. for two-photon interference).
    """
    if n < 8:
        raise DomainError("grid size must be at least 8")
    if span_sigmas <= 0:
        raise DomainError("span_sigmas must be positive")
    sig_s, sig_i = predicted_marginal_sigmas(model)
    return FrequencyGrid(
        nu_s=np.linspace(-span_sigmas * sig_s, span_sigmas * sig_s, n),
        nu_i=np.linspace(-span_sigmas * sig_i, span_sigmas * sig_i, n),
        lambda0_s=model.lambda0_s,
        lambda0_i=model.lambda0_i,
    )


def make_square_grid(
    model: GaussianSourceModel, n: int = 256, span_sigmas: float = 4.0
) -> FrequencyGrid:
    """Like :func:`make_grid` but with one shared axis sized by the wider marginal."""
    if n < 8:
        raise DomainError("grid size must be at least 8")
    if span_sigmas <= 0:
        raise DomainError("span_sigmas must be positive")
    sig = max(predicted_marginal_sigmas(model))
    nu = np.linspace(-span_sigmas * sig, span_sigmas * sig, n)
    return FrequencyGrid(nu_s=nu, nu_i=nu.copy(), lambda0_s=model.lambda0_s, lambda0_i=model.lambda0_i)


def pump_amplitude(model: GaussianSourceModel, nu_s, nu_i) -> np.ndarray:
    """Pump amplitude alpha(nu_s + nu_i); broadcasts over array inputs.

    Depends on the detunings only through their sum, so alpha(nu, -nu) = 1
    for every nu: the pump ridge sits exactly at -45 degrees.
    """
    total = np.asarray(nu_s, dtype=float) + np.asarray(nu_i, dtype=float)
    return np.exp(-(total**2) / (2.0 * model.sigma_pump**2))


def phasematching_amplitude(model: GaussianSourceModel, nu_s, nu_i) -> np.ndarray:
    """Phasematching amplitude phi along the ridge coordinate; broadcasts.

    For the sinc shape, phi = sinc(b u) with b chosen so the intensity
    profile sinc^2 has FWHM equal to ``model.pm_fwhm``; its first zero sits
    at b u = pi.
    """
    theta = np.radians(model.pm_angle_deg)
    u = np.asarray(nu_s, dtype=float) * np.sin(theta) - np.asarray(nu_i, dtype=float) * np.cos(theta)
    if model.pm_shape == "gaussian":
        return np.exp(-(u**2) / (2.0 * model.sigma_pm**2))
    b = 2.0 * SINC_HALF_POWER / model.pm_fwhm
    # np.sinc(x) = sin(pi x) / (pi x)
    return np.sinc(b * u / np.pi)


@dataclass(frozen=True)
class JointSpectralAmplitude:
    """Complex two-photon amplitude f(nu_s, nu_i) on a grid, L2-normalized."""

    grid: FrequencyGrid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        if values.shape != (self.grid.n_s, self.grid.n_i):
            raise DomainError(
                f"values shape {values.shape} does not match grid "
                f"({self.grid.n_s}, {self.grid.n_i})"
            )
        if not np.all(np.isfinite(values)):
            raise DomainError("joint amplitude contains non-finite values")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def norm_squared(self) -> float:
        """Quadrature L2 norm: sum |f|^2 dnu_s dnu_i."""
        return float(np.sum(np.abs(self.values) ** 2) * self.grid.dnu_s * self.grid.dnu_i)

    def intensity(self) -> np.ndarray:
        """|f|^2 on the grid."""
        return np.abs(self.values) ** 2


def _normalize(values: np.ndarray, grid: FrequencyGrid) -> np.ndarray:
    norm2 = np.sum(np.abs(values) ** 2) * grid.dnu_s * grid.dnu_i
    if norm2 == 0.0:
        raise DomainError("empty JSA: pump and phasematching do not overlap on the grid")
    return values / np.sqrt(norm2)


def compose_jsa(
    model: GaussianSourceModel,
    grid: FrequencyGrid | None = None,
    leakage_threshold: float = 1e-4,
) -> JointSpectralAmplitude:
    """Pointwise product of pump and phasematching, L2-normalized on the grid.

    Warns with :class:`GridLeakageWarning` when the boundary amplitude
    exceeds ``leakage_threshold`` times the peak, i.e. when the grid is too
    narrow for the state it holds.
    """
    if grid is None:
        grid = make_grid(model)
    s, i = grid.mesh()
    values = pump_amplitude(model, s, i) * phasematching_amplitude(model, s, i)
    values = _normalize(values.astype(complex), grid)
    mags = np.abs(values)
    boundary = max(mags[0].max(), mags[-1].max(), mags[:, 0].max(), mags[:, -1].max())
    if boundary > leakage_threshold * mags.max():
        warnings.warn(
            f"boundary amplitude is {boundary / mags.max():.2e} of the peak; "
            "widen the grid for accurate norms",
            GridLeakageWarning,
            stacklevel=2,
        )
    return JointSpectralAmplitude(grid=grid, values=values)


def separable_jsa(
    fwhm_s_nm: float,
    fwhm_i_nm: float,
    lambda0_s: float = DEFAULT_LAMBDA0_SIGNAL_NM,
    lambda0_i: float = DEFAULT_LAMBDA0_IDLER_NM,
    n: int = 256,
    span_sigmas: float = 4.5,
) -> JointSpectralAmplitude:
    """Zero-correlation Gaussian JSA with the requested marginal widths.

    Built on a square grid (shared axis sized by the wider marginal) so the
    result can be fed directly to the interference routines.
    """
    sig_s = nm_fwhm_to_sigma(fwhm_s_nm, lambda0_s)
    sig_i = nm_fwhm_to_sigma(fwhm_i_nm, lambda0_i)
    nu = np.linspace(-span_sigmas * max(sig_s, sig_i), span_sigmas * max(sig_s, sig_i), n)
    grid = FrequencyGrid(nu_s=nu, nu_i=nu.copy(), lambda0_s=lambda0_s, lambda0_i=lambda0_i)
    s, i = grid.mesh()
    values = np.exp(-(s**2) / (2 * sig_s**2) - i**2 / (2 * sig_i**2)).astype(complex)
    return JointSpectralAmplitude(grid=grid, values=_normalize(values, grid))


def _profile_fwhm(x: np.ndarray, y: np.ndarray) -> tuple[float, int]:
    """FWHM of a sampled profile by linear interpolation of half-max crossings.

    Returns (fwhm, number of crossings).  With more than two crossings the
    outermost pair is used.
    """
    y = np.asarray(y, dtype=float)
    half = y.max() / 2.0
    above = y > half
    if not above.any() or above.all():
        raise DomainError("profile does not cross half maximum inside the grid")
    sign_changes = np.nonzero(above[1:] != above[:-1])[0]

    def crossing(j):
        # linear interpolation between samples j and j+1
        return x[j] + (half - y[j]) * (x[j + 1] - x[j]) / (y[j + 1] - y[j])

    crossings = [crossing(j) for j in sign_changes]
    if len(crossings) < 2:
        raise DomainError("profile does not cross half maximum on both sides")
    if len(crossings) > 2:
        warnings.warn(
            f"profile has {len(crossings)} half-max crossings; "
            "reporting the outermost pair",
            SpectrumShapeWarning,
            stacklevel=3,
        )
    return float(crossings[-1] - crossings[0]), len(crossings)


@dataclass(frozen=True)
class MarginalSpectrum:
    """Single-beam intensity profile with its interpolated width."""

    which: str
    nu: np.ndarray
    intensity: np.ndarray
    lambda0_nm: float
    fwhm_rad_per_ps: float
    fwhm_nm: float
    multipeaked: bool


def marginal_spectrum(jsa: JointSpectralAmplitude, which: str = "signal") -> MarginalSpectrum:
    """Marginal intensity of one beam, normalized so sum(I) dnu = 1.

    The width is the intensity FWHM found by linear interpolation of the
    half-maximum crossings, reported both in rad/ps and in nm at the beam's
    central wavelength.
    """
    if which not in ("signal", "idler"):
        raise DomainError("which must be 'signal' or 'idler'")
    grid = jsa.grid
    intensity2d = jsa.intensity()
    if which == "signal":
        nu, lam = grid.nu_s, grid.lambda0_s
        profile = intensity2d.sum(axis=1) * grid.dnu_i
    else:
        nu, lam = grid.nu_i, grid.lambda0_i
        profile = intensity2d.sum(axis=0) * grid.dnu_s
    fwhm_omega, n_crossings = _profile_fwhm(nu, profile)
    return MarginalSpectrum(
        which=which,
        nu=nu,
        intensity=profile,
        lambda0_nm=lam,
        fwhm_rad_per_ps=fwhm_omega,
        fwhm_nm=rad_per_ps_to_fwhm_nm(fwhm_omega, lam),
        multipeaked=n_crossings > 2,
    )
