"""Counter-based splittable random streams.

The generator is SplitMix64: a 64-bit counter pushed through a fixed
avalanche mix.  Stream ``i`` of master seed ``s`` has key
``mix64(s + (i + 1) * GOLDEN_GAMMA)`` (i.e. output ``i`` of a SplitMix64
sequence seeded at ``s``), and raw draw ``j`` of a stream is
``mix64(key + (j + 1) * GOLDEN_GAMMA)``.  Every draw is therefore a pure
function of ``(seed, stream, position)``, so no result can depend on
worker count or evaluation order.

Uniform doubles keep the top 52 bits of a raw draw and force the low bit,
giving an odd numerator over 2**52: strictly inside (0, 1), symmetric
about 1/2, and exactly representable.  Gaussians come from the AS241
(Wichura) rational approximation of the inverse normal CDF, accurate to
about 1e-15.  The Gaussian method is fixed per release: the
(seed, stream) -> path contract is bitwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15

_MIX_MULT_1 = 0xBF58476D1CE4E5B9
_MIX_MULT_2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """SplitMix64 finalizer: avalanche a 64-bit value."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _MIX_MULT_1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX_MULT_2) & MASK64
    return z ^ (z >> 31)


def stream_key(master_seed: int, stream_index: int) -> int:
    """Key of substream ``stream_index`` under ``master_seed``."""
    if stream_index < 0:
        raise ValueError("stream_index must be nonnegative")
    return mix64((master_seed + (stream_index + 1) * GOLDEN_GAMMA) & MASK64)


def raw_draw(key: int, position: int) -> int:
    """Raw 64-bit output ``position`` of the stream with the given key."""
    if position < 0:
        raise ValueError("position must be nonnegative")
    return mix64((key + (position + 1) * GOLDEN_GAMMA) & MASK64)


def unit_uniform(raw: int) -> float:
    """Map a raw 64-bit draw into the open interval (0, 1)."""
    return float((raw >> 12) | 1) * 2.0**-52


@dataclass(frozen=True)
class RngStream:
    """Handle for one substream; each sampled path consumes exactly one."""

    key: int

    @classmethod
    def derive(cls, master_seed: int, stream_index: int) -> "RngStream":
        return cls(stream_key(master_seed, stream_index))


def inv_norm_cdf(p: float) -> float:
    """Inverse standard normal CDF (AS241 PPND16), |error| < 1e-15.

    Also compiled as-is by the numba kernel lane; keep it scalar and free
    of numpy so both lanes share one definition.
    """
    if not 0.0 < p < 1.0:
        raise ValueError("p must be strictly inside (0, 1)")
    q = p - 0.5
    if abs(q) <= 0.425:
        r = 0.180625 - q * q
        num = (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r
                    + 6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r
                  + 1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r
                + 1.3314166789178437745e2) * r + 3.3871328727963666080e0)
        den = (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r
                    + 3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r
                  + 5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r
                + 4.2313330701600911252e1) * r + 1.0)
        return q * num / den
    r = p if q < 0.0 else 1.0 - p
    r = math.sqrt(-math.log(r))
    if r <= 5.0:
        r = r - 1.6
        num = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r
                    + 2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r
                  + 3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r
                + 4.63033784615654529590e0) * r + 1.42343711074968357734e0)
        den = (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r
                    + 1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r
                  + 6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r
                + 2.05319162663775882187e0) * r + 1.0)
    else:
        r = r - 5.0
        num = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r
                    + 1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r
                  + 2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r
                + 5.46378491116411436990e0) * r + 6.65790464350110377720e0)
        den = (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r
                    + 1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r
                  + 1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r
                + 5.99832206555887937690e-1) * r + 1.0)
    val = num / den
    return -val if q < 0.0 else val
