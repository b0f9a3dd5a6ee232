"""Complex-argument special functions with overflow-safe scaled variants.

Every closed-form line-shape expression in this package is built from four
families evaluated at complex argument:

* the scaled complementary error function ``erfcx(z) = exp(z^2) erfc(z)``,
* the exponential integral ``E1(z)`` and its scaled form ``exp(z) E1(z)``,
* the modified Bessel functions ``I_n``, ``K_n`` and their scaled forms
  ``exp(-Re z) I_n(z)``, ``exp(Re z) K_n(z)``,
* ``erf`` at shifted complex argument, composed from ``erfcx``.

The unscaled values overflow long before the physics becomes singular
(``A exp(A^2) erfc(A)`` at large collision rates, ``exp(beta R)`` at large
radii), so all downstream formulas consume the scaled variants.  Scaled
values that cannot be represented either are reported through a
``ScaledComplex`` mantissa/exponent pair.

Results are checked to be finite before they are returned; a value that
genuinely overflows raises instead of leaking ``inf``/``nan``.
"""

import cmath
import math
from typing import NamedTuple

import numpy as np
import scipy.special as sp

from .errors import DomainError

SQRT_PI = math.sqrt(math.pi)

__all__ = [
    "SQRT_PI",
    "ScaledComplex",
    "erfcx",
    "erf",
    "erf_shifted",
    "e1",
    "e1_scaled",
    "bessel_i",
    "bessel_k",
    "bessel_i_scaled",
    "bessel_k_scaled",
]


class ScaledComplex(NamedTuple):
    """A complex number stored as ``mantissa * exp(exponent)``.

    Used for quantities like ``C(inf) = (sqrt(pi)/2) a exp(eps^2)`` whose
    exponent can exceed the double-precision range while the combination
    they enter stays finite.
    """

    mantissa: complex
    exponent: complex

    @property
    def value(self) -> complex:
        """The plain complex value; overflows if the exponent is too large."""
        return self.mantissa * cmath.exp(self.exponent)


def _checked(value, name):
    value = complex(value)
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise OverflowError(f"{name} is not representable in double precision")
    return value


def erfcx(z) -> complex:
    """Scaled complementary error function ``exp(z^2) erfc(z)``.

    Decays like ``1/(sqrt(pi) z)`` in the right half plane, so it stays
    representable for arbitrarily large ``|z|`` there; relative accuracy is
    ~1e-13 for ``Re z >= 0`` (Faddeeva-function evaluation).  In the left
    half plane the true value grows like ``2 exp(z^2)`` and the call raises
    once that overflows.
    """
    return _checked(sp.erfcx(complex(z)), "erfcx")


def erf(z) -> complex:
    """Error function for complex argument, via ``1 - exp(-z^2) erfcx(z)``."""
    z = complex(z)
    if z.real < 0.0:
        return -erf(-z)
    return _checked(1.0 - cmath.exp(-z * z) * sp.erfcx(z), "erf")


def erf_shifted(x_over_a: float, eps) -> tuple[complex, complex]:
    """Evaluate ``erf(x/a - eps)`` and ``erf(x/a + eps)`` for complex eps.

    This is the pair entering the finite-slab integrals ``C(x)`` and
    ``S(x)``; both members are computed through the erfcx composition so
    they remain consistent with :func:`erfcx` to ~1e-13.
    """
    return erf(x_over_a - complex(eps)), erf(x_over_a + complex(eps))


# ---------------------------------------------------------------------------
# Exponential integral E1
# ---------------------------------------------------------------------------

_EULER_GAMMA = 0.57721566490153286060651209008240243

# |z| below which the power series is used for E1; above it the Lentz
# continued fraction for exp(z) E1(z) converges quickly.  Both branches
# agree to ~1e-13 on the overlap annulus (checked in the test suite).
_E1_SERIES_RADIUS = 4.0


def _e1_series(z: complex) -> complex:
    # E1(z) = -gamma - ln z + sum_{k>=1} (-1)^{k+1} z^k / (k k!)
    total = 0.0 + 0.0j
    term = 1.0 + 0.0j
    for k in range(1, 60):
        term *= -z / k
        delta = -term / k
        total += delta
        if abs(delta) <= 1e-18 * abs(total):
            break
    return -_EULER_GAMMA - cmath.log(z) + total


def _e1_scaled_lentz(z: complex) -> complex:
    # exp(z) E1(z) = 1/(z + 1/(1 + 1/(z + 2/(1 + 2/(z + ...))))),
    # evaluated with the modified Lentz algorithm.
    tiny = 1e-290
    f = z if z != 0 else tiny
    c = f
    d = 0.0 + 0.0j
    n = 0
    while n < 2000:
        n += 1
        # two CF levels per loop: a_n = n over the "1" layer, then over z
        for a, b in ((float(n), 1.0 + 0.0j), (float(n), z)):
            d = b + a * d
            if d == 0:
                d = tiny
            c = b + a / c
            if c == 0:
                c = tiny
            d = 1.0 / d
            delta = c * d
            f *= delta
            if abs(delta - 1.0) < 1e-16:
                return 1.0 / f
    raise ArithmeticError(f"continued fraction for exp(z) E1(z) failed at z={z}")


def e1_scaled(z) -> complex:
    """Scaled exponential integral ``exp(z) E1(z)`` on the principal branch.

    Finite for any ``|z|`` away from the cut: behaves like ``1/z`` for
    large ``|z|``, so no overflow guard is needed where ``E1`` itself would
    underflow or ``exp(z)`` overflow.

    Raises
    ------
    DomainError
        At ``z = 0`` or on the cut along the negative real axis.
    """
    z = complex(z)
    if z == 0:
        raise DomainError("E1 is singular at z = 0")
    if z.imag == 0.0 and z.real < 0.0:
        raise DomainError("E1 branch cut along the negative real axis")
    if abs(z) <= _E1_SERIES_RADIUS:
        return _checked(cmath.exp(z) * _e1_series(z), "e1_scaled")
    return _checked(_e1_scaled_lentz(z), "e1_scaled")


def e1(z) -> complex:
    """Exponential integral ``E1(z) = int_z^inf exp(-t)/t dt``, principal branch."""
    z = complex(z)
    if z == 0:
        raise DomainError("E1 is singular at z = 0")
    if z.imag == 0.0 and z.real < 0.0:
        raise DomainError("E1 branch cut along the negative real axis")
    if abs(z) <= _E1_SERIES_RADIUS:
        return _checked(_e1_series(z), "e1")
    return _checked(cmath.exp(-z) * _e1_scaled_lentz(z), "e1")


# ---------------------------------------------------------------------------
# Modified Bessel functions
# ---------------------------------------------------------------------------


def _check_k_domain(z: complex):
    if z == 0:
        raise DomainError("K_n is singular at z = 0")
    if z.imag == 0.0 and z.real < 0.0:
        raise DomainError("K_n branch cut along the negative real axis")


def bessel_i(n: int, z) -> complex:
    """Modified Bessel function ``I_n(z)`` for integer order ``n >= 0``."""
    return _checked(sp.iv(n, complex(z)), "bessel_i")


def bessel_k(n: int, z) -> complex:
    """Modified Bessel function ``K_n(z)``, principal branch."""
    z = complex(z)
    _check_k_domain(z)
    return _checked(sp.kv(n, z), "bessel_k")


def bessel_i_scaled(n: int, z) -> complex:
    """``exp(-Re z) I_n(z)``; stays O(1/sqrt(|z|)) for ``Re z >= 0``."""
    z = complex(z)
    if z.real >= 0.0:
        return _checked(sp.ive(n, z), "bessel_i_scaled")
    # ive scales by exp(-|Re z|); flip the sign of the exponent manually
    return _checked(sp.ive(n, z) * cmath.exp(-2.0 * z.real), "bessel_i_scaled")


def bessel_k_scaled(n: int, z) -> complex:
    """``exp(Re z) K_n(z)``; stays O(1/sqrt(|z|)) for ``Re z >= 0``."""
    z = complex(z)
    _check_k_domain(z)
    # kve scales by exp(z); remove the residual phase exp(i Im z)
    return _checked(sp.kve(n, z) * cmath.exp(-1j * z.imag), "bessel_k_scaled")
