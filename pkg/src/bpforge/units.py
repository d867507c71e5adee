"""Unit conventions and conversions.

Internal units are rad/ps for angular-frequency detunings and ps for time
delays; user-facing spectral widths are intensity FWHM in nm.  Every sigma
in this package is the standard deviation of an *amplitude* Gaussian
``exp(-nu^2 / (2 sigma^2))``, whose intensity FWHM is ``2 sqrt(ln 2) sigma``.
Plain (intensity-domain) Gaussians such as dip shapes or blur kernels have
FWHM ``2 sqrt(2 ln 2) sigma``.
"""

import numpy as np

from .errors import DomainError

C_NM_PER_PS = 299792.458
"""Speed of light in nm/ps."""

TWO_SQRT_LN2 = 2.0 * np.sqrt(np.log(2.0))
"""Intensity FWHM of an amplitude Gaussian, in units of its sigma."""

SQRT_8LN2 = 2.0 * np.sqrt(2.0 * np.log(2.0))
"""FWHM of a plain Gaussian profile, in units of its sigma."""

SINC_HALF_POWER = 1.39155737825151
"""Positive root of sinc(x)^2 = 1/2, with sinc(x) = sin(x)/x."""


def fwhm_nm_to_rad_per_ps(fwhm_nm: float, lambda0_nm: float) -> float:
    """Convert an intensity FWHM from nm to rad/ps at a central wavelength.

    Uses the small-bandwidth relation ``d(omega) = 2 pi c d(lambda) / lambda^2``.
    """
    if fwhm_nm <= 0 or lambda0_nm <= 0:
        raise DomainError("width and central wavelength must be positive")
    return 2.0 * np.pi * C_NM_PER_PS * fwhm_nm / lambda0_nm**2


def rad_per_ps_to_fwhm_nm(fwhm_omega: float, lambda0_nm: float) -> float:
    """Inverse of :func:`fwhm_nm_to_rad_per_ps`."""
    if fwhm_omega <= 0 or lambda0_nm <= 0:
        raise DomainError("width and central wavelength must be positive")
    return fwhm_omega * lambda0_nm**2 / (2.0 * np.pi * C_NM_PER_PS)


def nm_fwhm_to_sigma(fwhm_nm: float, lambda0_nm: float) -> float:
    """Amplitude-Gaussian sigma (rad/ps) for an intensity FWHM given in nm.

    Examples
    --------
    1.0 nm at 1536 nm gives 0.4795 rad/ps; the same conversion at the
    770-ish nm pump wavelength is four times larger per nm.
    """
    return fwhm_nm_to_rad_per_ps(fwhm_nm, lambda0_nm) / TWO_SQRT_LN2


def sigma_to_nm_fwhm(sigma: float, lambda0_nm: float) -> float:
    """Intensity FWHM in nm of an amplitude Gaussian with the given sigma."""
    return rad_per_ps_to_fwhm_nm(sigma * TWO_SQRT_LN2, lambda0_nm)


def wavelength_axis_nm(nu: np.ndarray, lambda0_nm: float) -> np.ndarray:
    """Absolute wavelengths (nm) for detunings ``nu`` (rad/ps) around a center.

    Exact mapping ``lambda = 2 pi c / (omega0 + nu)``, not the linearized one,
    so exported axes stay correct for wide grids.
    """
    omega0 = 2.0 * np.pi * C_NM_PER_PS / lambda0_nm
    return 2.0 * np.pi * C_NM_PER_PS / (omega0 + np.asarray(nu, dtype=float))
