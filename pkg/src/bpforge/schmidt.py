"""Schmidt decomposition and the scalar figures of merit derived from it.

The decomposition is computed from the singular values of the discretized
amplitude with quadrature weights sqrt(dnu) applied to rows and columns, so
the coefficients approximate the continuum mode decomposition and the
Schmidt number converges under grid refinement.
"""

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, InconsistentDataWarning
from .spectra import (
    FrequencyGrid,
    GaussianSourceModel,
    JointSpectralAmplitude,
    compose_jsa,
    make_grid,
)

COEFFICIENT_CUTOFF = 1e-12


@dataclass(frozen=True)
class SchmidtResult:
    """Schmidt coefficients, mode functions and derived scalars.

    ``signal_modes[:, k]`` and ``idler_modes[:, k]`` are the k-th mode
    functions sampled on the grid axes, orthonormal under the quadrature
    inner product ``sum conj(f) g dnu``.
    """

    coefficients: np.ndarray
    signal_modes: np.ndarray = field(repr=False)
    idler_modes: np.ndarray = field(repr=False)
    grid: FrequencyGrid
    schmidt_number: float
    purity: float
    g2: float

    def reconstruct(self) -> np.ndarray:
        """Rebuild the joint amplitude sum_k c_k phi_k(nu_s) psi_k(nu_i)."""
        return (self.signal_modes * self.coefficients) @ self.idler_modes.T


def purity_from_schmidt_number(schmidt_number: float) -> float:
    """Marginal-state purity 1/K."""
    if schmidt_number < 1.0:
        raise DomainError("Schmidt number must be >= 1")
    return 1.0 / schmidt_number


def g2_from_schmidt_number(schmidt_number: float) -> float:
    """Unheralded marginal g2(0) = 1 + 1/K.

    A separable source (K = 1) has thermal marginals with g2 = 2; strongly
    correlated sources approach the Poissonian value 1.
    """
    if schmidt_number < 1.0:
        raise DomainError("Schmidt number must be >= 1")
    return 1.0 + 1.0 / schmidt_number


def schmidt_number_from_g2(g2: float) -> float:
    """Invert g2(0) = 1 + 1/K; valid for g2 in (1, 2]."""
    if not 1.0 < g2 <= 2.0:
        raise DomainError(
            f"g2 = {g2} outside (1, 2]: background or statistics beyond the "
            "single-source thermal model"
        )
    return 1.0 / (g2 - 1.0)


def schmidt_decompose(
    jsa: JointSpectralAmplitude, coefficient_cutoff: float = COEFFICIENT_CUTOFF
) -> SchmidtResult:
    """Schmidt decomposition of a normalized joint amplitude.

    Returns
    -------
    SchmidtResult
        Coefficients are non-negative, descending, renormalized so that the
        sum of their squares is exactly one; coefficients below
        ``coefficient_cutoff`` are discarded before forming the Schmidt
        number so floating-point noise cannot bias it.
    """
    grid = jsa.grid
    weighted = jsa.values * np.sqrt(grid.dnu_s * grid.dnu_i)
    u, svals, vh = np.linalg.svd(weighted, full_matrices=False)
    coeffs = svals / np.sqrt(np.sum(svals**2))
    keep = max(int(np.sum(coeffs > coefficient_cutoff)), 1)
    coeffs = coeffs[:keep]
    coeffs = coeffs / np.sqrt(np.sum(coeffs**2))
    k = 1.0 / float(np.sum(coeffs**4))
    return SchmidtResult(
        coefficients=coeffs,
        signal_modes=u[:, :keep] / np.sqrt(grid.dnu_s),
        idler_modes=vh[:keep].T / np.sqrt(grid.dnu_i),
        grid=grid,
        schmidt_number=k,
        purity=1.0 / k,
        g2=1.0 + 1.0 / k,
    )


def schmidt_number_of_model(
    model: GaussianSourceModel, n: int = 256, span_sigmas: float = 4.0
) -> float:
    """Schmidt number of the composed model on a default-sized grid.

    Grid-leakage warnings from composition are suppressed: this helper is
    used inside optimizer loops that deliberately sweep through extreme
    parameter values.
    """
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        jsa = compose_jsa(model, make_grid(model, n=n, span_sigmas=span_sigmas))
    return schmidt_decompose(jsa).schmidt_number


@dataclass(frozen=True)
class ReducedDensityMatrix:
    """Single-beam density matrix rho(nu, nu') and optional Gaussian axes.

    ``gaussian_axes`` holds (sigma_major, sigma_minor): the amplitude sigmas
    of |rho| along the +45 (nu = nu') and -45 degree principal directions.
    Their ratio sigma_minor / sigma_major equals the purity for Gaussian
    states.
    """

    nu: np.ndarray
    values: np.ndarray = field(repr=False)
    lambda0_nm: float
    gaussian_axes: tuple[float, float] | None = None

    @property
    def dnu(self) -> float:
        return float(self.nu[1] - self.nu[0])

    def trace(self) -> float:
        """Quadrature trace sum rho(nu, nu) dnu."""
        return float(np.real(np.trace(self.values)) * self.dnu)

    def purity(self) -> float:
        """Tr rho^2 under the quadrature inner product."""
        return float(np.sum(np.abs(self.values) ** 2) * self.dnu**2)

    def hermiticity_defect(self) -> float:
        return float(np.max(np.abs(self.values - self.values.conj().T)))


def _fit_log_gaussian_sigma(coord: np.ndarray, mags: np.ndarray) -> float:
    """Sigma of exp(-x^2/(2 sigma^2)) fitted to magnitudes on a line cut."""
    mask = mags > mags.max() * 1e-8
    if np.sum(mask) < 3:
        raise DomainError("too few usable points for the Gaussian axis fit")
    x2 = coord[mask] ** 2
    logy = np.log(mags[mask] / mags.max())
    design = np.column_stack([np.ones_like(x2), x2])
    sol, *_ = np.linalg.lstsq(design, logy, rcond=None)
    slope = sol[1]
    if slope >= 0:
        raise DomainError("axis fit did not converge to a Gaussian profile")
    return float(1.0 / np.sqrt(-2.0 * slope))


def reduced_density_matrix(
    jsa: JointSpectralAmplitude, which: str = "signal", fit_axes: bool = False
) -> ReducedDensityMatrix:
    """Trace out one beam: rho(nu, nu') = sum_k f(nu, k) conj(f(nu', k)) dnu_k.

    With ``fit_axes`` the magnitude of rho is fitted along the two diagonal
    principal directions; a failed fit leaves ``gaussian_axes`` as None and
    emits :class:`InconsistentDataWarning`.
    """
    if which not in ("signal", "idler"):
        raise DomainError("which must be 'signal' or 'idler'")
    grid = jsa.grid
    f = jsa.values
    if which == "signal":
        rho = f @ f.conj().T * grid.dnu_i
        nu, lam = grid.nu_s, grid.lambda0_s
    else:
        rho = f.T @ f.conj() * grid.dnu_s
        nu, lam = grid.nu_i, grid.lambda0_i

    axes = None
    if fit_axes:
        try:
            axes = _fit_gaussian_axes(nu, rho)
        except DomainError as exc:
            warnings.warn(
                f"Gaussian axis fit failed ({exc}); returning matrix without axes",
                InconsistentDataWarning,
                stacklevel=2,
            )
    return ReducedDensityMatrix(nu=nu, values=rho, lambda0_nm=lam, gaussian_axes=axes)


def _fit_gaussian_axes(nu: np.ndarray, rho: np.ndarray) -> tuple[float, float]:
    # Cuts along nu = nu' (major) and nu = -nu' (minor) need an axis that is
    # symmetric around zero so the anti-diagonal passes through the center.
    if not np.allclose(nu, -nu[::-1], rtol=0, atol=1e-9 * max(abs(nu[0]), abs(nu[-1]))):
        raise DomainError("axis is not symmetric around zero")
    n = nu.size
    diag = np.abs(np.diagonal(rho))
    anti = np.abs(rho[np.arange(n), n - 1 - np.arange(n)])
    sigma_major = _fit_log_gaussian_sigma(np.sqrt(2.0) * nu, diag)
    sigma_minor = _fit_log_gaussian_sigma(np.sqrt(2.0) * nu, anti)
    if sigma_minor > sigma_major:
        warnings.warn(
            "fitted minor axis exceeds major axis; state is not a valid "
            "Gaussian marginal",
            InconsistentDataWarning,
            stacklevel=3,
        )
    return sigma_major, sigma_minor


def jsi_schmidt_lower_bound(jsi: np.ndarray) -> float:
    """Effective mode number from the square root of a measured intensity.

    Phases are assumed flat, so this is a lower bound on the true Schmidt
    number: any phase structure can only increase the rank.  The result is
    independent of the intensity normalization and of the grid steps.
    """
    jsi = np.asarray(jsi, dtype=float)
    if jsi.ndim != 2:
        raise DomainError("jsi must be a 2-D array")
    if np.any(jsi < 0):
        raise DomainError("jsi must be non-negative")
    if not np.any(jsi > 0):
        raise DomainError("jsi is identically zero")
    svals = np.linalg.svd(np.sqrt(jsi), compute_uv=False)
    coeffs = svals / np.sqrt(np.sum(svals**2))
    coeffs = coeffs[coeffs > COEFFICIENT_CUTOFF]
    coeffs = coeffs / np.sqrt(np.sum(coeffs**2))
    return 1.0 / float(np.sum(coeffs**4))
