"""Closed-form constants, distributions and moments.

Scalar functions for the running-maximum laws of one-dimensional Brownian
motion and Brownian bridge on [0, 1], the joint and marginal laws of
their combined maximum (value and argmax time), and the catalog of exact
expectation constants for the hull functionals.

Conventions: densities return 0.0 (rather than raising) when the query
point lies outside the support, with t in {0, 1} counting as outside for
the time laws; non-finite arguments are invalid.  All arctan/arccot
expressions use the principal branch; every argument that occurs here is
positive, so there is no branch ambiguity.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .quadrature import QuadResult, QuadSpec, integrate, integrate_half_line

_SQRT5 = math.sqrt(5.0)
_SQRT_2PI = math.sqrt(2.0 * math.pi)
_SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)
_INV_SQRT2 = 1.0 / math.sqrt(2.0)


class CatalogEntry(NamedTuple):
    name: str
    expression: str
    value: float


_CATALOG: dict[str, CatalogEntry] = {
    e.name: e
    for e in (
        CatalogEntry(
            "expected_perimeter_combined",
            "sqrt(2*pi)*(2 + atan(1/2))",
            _SQRT_2PI * (2.0 + math.atan(0.5)),
        ),
        CatalogEntry(
            "expected_area_combined",
            "(25 - 7*sqrt(5))*pi/12",
            (25.0 - 7.0 * _SQRT5) * math.pi / 12.0,
        ),
        CatalogEntry("expected_perimeter_bm", "sqrt(8*pi)", math.sqrt(8.0 * math.pi)),
        CatalogEntry("expected_perimeter_bb", "sqrt(pi**3/2)", math.sqrt(math.pi**3 / 2.0)),
        CatalogEntry("expected_area_bm", "pi/2", math.pi / 2.0),
        CatalogEntry("expected_area_bb", "pi/3", math.pi / 3.0),
        CatalogEntry("prob_bm_wins", "1 - 1/sqrt(5)", 1.0 - 1.0 / _SQRT5),
        CatalogEntry(
            "moment_M1",
            "(2 + atan(1/2))/sqrt(2*pi)",
            (2.0 + math.atan(0.5)) / _SQRT_2PI,
        ),
        CatalogEntry("moment_M2", "1 + 1/(2*sqrt(5))", 1.0 + 1.0 / (2.0 * _SQRT5)),
        CatalogEntry(
            "moment_Mprime2",
            "(41 - 13*sqrt(5))/(12*sqrt(5))",
            (41.0 - 13.0 * _SQRT5) / (12.0 * _SQRT5),
        ),
    )
}


def catalog() -> dict[str, CatalogEntry]:
    """All closed-form constants, keyed by name."""
    return dict(_CATALOG)


def constant(name: str) -> float:
    """Value of one catalog constant; unknown names raise ValueError."""
    try:
        return _CATALOG[name].value
    except KeyError:
        valid = ", ".join(sorted(_CATALOG))
        raise ValueError(f"unknown constant {name!r}; valid names: {valid}") from None


def _require_finite(*values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise ValueError("arguments must be finite")


def cdf_max_bm(x: float) -> float:
    """P(running max of a standard Brownian motion on [0,1] <= x)."""
    _require_finite(x)
    if x <= 0.0:
        return 0.0
    return math.erf(x * _INV_SQRT2)


def cdf_max_bb(x: float) -> float:
    """P(running max of a standard Brownian bridge on [0,1] <= x)."""
    _require_finite(x)
    if x <= 0.0:
        return 0.0
    return 1.0 - math.exp(-2.0 * x * x)


def pdf_combined_max(x: float) -> float:
    """Density of the combined maximum of one BM and one independent BB."""
    _require_finite(x)
    if x < 0.0:
        return 0.0
    e2 = math.exp(-2.0 * x * x)
    return (_SQRT_2_OVER_PI * math.exp(-0.5 * x * x) * (1.0 - e2)
            + 4.0 * x * e2 * math.erf(x * _INV_SQRT2))


def pdf_argmax_time(t: float) -> float:
    """Density of the time at which the combined BM/BB maximum is attained."""
    _require_finite(t)
    if t <= 0.0 or t >= 1.0:
        return 0.0
    s = t * (1.0 - t)
    return (4.0 * math.sqrt(t) / (math.pi * (4.0 * t + 1.0) * math.sqrt(1.0 - t))
            + (2.0 / math.pi) * (math.sqrt(s) / (1.0 + s) + math.atan(math.sqrt(s))))


def joint_pdf_bm(x: float, t: float) -> float:
    """Joint density of (max value, argmax time) for a single BM."""
    _require_finite(x, t)
    if x < 0.0 or t <= 0.0 or t >= 1.0:
        return 0.0
    return x / (math.pi * t**1.5 * math.sqrt(1.0 - t)) * math.exp(-x * x / (2.0 * t))


def joint_pdf_bb(x: float, t: float) -> float:
    """Joint density of (max value, argmax time) for a single BB."""
    _require_finite(x, t)
    if x < 0.0 or t <= 0.0 or t >= 1.0:
        return 0.0
    s = t * (1.0 - t)
    return _SQRT_2_OVER_PI * x * x / s**1.5 * math.exp(-x * x / (2.0 * s))


def joint_pdf_combined(x: float, t: float) -> float:
    """Joint density of (value, time) of the combined BM/BB maximum.

    Sum of each family's joint law weighted by the chance that the other
    family stays below.
    """
    _require_finite(x, t)
    if x < 0.0 or t <= 0.0 or t >= 1.0:
        return 0.0
    return (joint_pdf_bm(x, t) * cdf_max_bb(x)
            + joint_pdf_bb(x, t) * cdf_max_bm(x))


def pdf_combined_max_mn(x: float, m: int, n: int) -> float:
    """Density of the combined maximum of m BM and n BB running maxima.

    Either count may be zero (the density of the remaining family's pure
    maximum), but m + n must be at least 1.
    """
    _check_mn(m, n)
    _require_finite(x)
    if x < 0.0:
        return 0.0
    erf_x = math.erf(x * _INV_SQRT2)
    bb_x = 1.0 - math.exp(-2.0 * x * x)
    total = 0.0
    if m >= 1:
        total += (_SQRT_2_OVER_PI * m * math.exp(-0.5 * x * x)
                  * erf_x ** (m - 1) * bb_x**n)
    if n >= 1:
        total += (4.0 * n * x * math.exp(-2.0 * x * x)
                  * erf_x**m * bb_x ** (n - 1))
    return total


def cdf_combined_max_mn(x: float, m: int, n: int) -> float:
    """Distribution function of the combined maximum of m BM and n BB maxima."""
    _check_mn(m, n)
    _require_finite(x)
    if x <= 0.0:
        return 0.0
    return (math.erf(x * _INV_SQRT2) ** m
            * (1.0 - math.exp(-2.0 * x * x)) ** n)


def _argmax_density_part(t: float, m: int, n: int, which: str,
                         spec: QuadSpec | None = None) -> QuadResult:
    """One component of the argmax-time density, by half-line quadrature.

    ``which`` selects the events where a Brownian motion ("bm") or a
    bridge ("bb") attains the combined maximum.  The prefactor is folded
    into the integrand so the requested tolerance applies to the density
    value itself.
    """
    spec = spec or QuadSpec()
    if t <= 0.0 or t >= 1.0:
        return QuadResult(0.0, 0.0, 0)
    if which == "bm":
        if m < 1:
            return QuadResult(0.0, 0.0, 0)
        pref = m / (math.pi * t**1.5 * math.sqrt(1.0 - t))
        inv2t = 1.0 / (2.0 * t)

        def f(x: float) -> float:
            v = pref * x * math.exp(-x * x * inv2t)
            if m > 1:
                v *= math.erf(x * _INV_SQRT2) ** (m - 1)
            if n > 0:
                v *= (1.0 - math.exp(-2.0 * x * x)) ** n
            return v
    elif which == "bb":
        if n < 1:
            return QuadResult(0.0, 0.0, 0)
        s = t * (1.0 - t)
        pref = _SQRT_2_OVER_PI * n / s**1.5
        inv2s = 1.0 / (2.0 * s)

        def f(x: float) -> float:
            v = pref * x * x * math.exp(-x * x * inv2s)
            if m > 0:
                v *= math.erf(x * _INV_SQRT2) ** m
            if n > 1:
                v *= (1.0 - math.exp(-2.0 * x * x)) ** (n - 1)
            return v
    else:
        raise ValueError("which must be 'bm' or 'bb'")
    return integrate_half_line(f, spec)


def argmax_time_density_parts(t: float, m: int, n: int,
                              spec: QuadSpec | None = None) -> tuple[float, float]:
    """The two components of the argmax-time density for m BM and n BB.

    Component one covers the event that a Brownian motion attains the
    combined maximum, component two a bridge; they sum to the density of
    the argmax time.  Each is a semi-infinite quadrature at ``spec.tol``.
    """
    _check_mn(m, n)
    _require_finite(t)
    spec = spec or QuadSpec()
    return (
        _argmax_density_part(t, m, n, "bm", spec).value,
        _argmax_density_part(t, m, n, "bb", spec).value,
    )


def argmax_time_cdf(ts, tol: float = 1e-10) -> np.ndarray | float:
    """CDF of the combined argmax time, by cumulative quadrature.

    Accepts a scalar or an array of query points; values outside [0, 1]
    clamp to 0 or 1.  Segments are integrated once between consecutive
    unique points, so a long sorted grid costs one pass.
    """
    arr = np.asarray(ts, dtype=np.float64)
    scalar = arr.ndim == 0
    flat = np.atleast_1d(arr)
    if not np.isfinite(flat).all():
        raise ValueError("query points must be finite")
    uniq, inverse = np.unique(flat, return_inverse=True)
    out = np.empty(uniq.shape)
    acc = 0.0
    prev = 0.0
    for i, u in enumerate(uniq):
        u = float(u)
        if u >= 1.0:
            out[i] = 1.0
            continue
        if u <= prev:
            out[i] = acc
            continue
        seg = QuadSpec(tol=tol, singular_left=(prev == 0.0))
        acc += integrate(pdf_argmax_time, prev, u, seg).value
        prev = u
        out[i] = acc
    np.clip(out, 0.0, 1.0, out=out)
    result = out[inverse].reshape(arr.shape) if not scalar else float(out[inverse][0])
    return result


def _check_mn(m: int, n: int) -> None:
    if m < 0 or n < 0 or m + n < 1:
        raise ValueError("need m >= 0, n >= 0 and m + n >= 1")
