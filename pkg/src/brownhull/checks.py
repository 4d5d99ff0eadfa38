"""Self-validation checks behind ``brownhull validate``.

Fast checks confirm the closed-form catalog against the quadrature route;
full checks add desk-scale Monte Carlo runs against the same targets.
Every check reports its target, achieved value and tolerance so failures
name exactly what drifted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import analytic, montecarlo, quadrature
from .process_sim import EnsembleSpec
from .quadrature import QuadSpec


@dataclass(frozen=True)
class CheckResult:
    name: str
    target: float
    achieved: float
    tol: float
    # "abs": |achieved - target| <= tol; "ge": achieved >= target.
    kind: str = "abs"

    @property
    def passed(self) -> bool:
        if not (math.isfinite(self.achieved) and math.isfinite(self.target)):
            return False
        if self.kind == "ge":
            return self.achieved >= self.target
        return abs(self.achieved - self.target) <= self.tol


def _abs_check(name: str, target: float, achieved: float, tol: float) -> CheckResult:
    return CheckResult(name=name, target=target, achieved=achieved, tol=tol)


def fast_checks() -> list[CheckResult]:
    """Analytic and quadrature identities; runs in seconds."""
    cat = analytic.catalog()
    c = {k: v.value for k, v in cat.items()}
    out = [
        _abs_check("catalog_perimeter_vs_first_moment",
                   2.0 * math.pi * c["moment_M1"],
                   c["expected_perimeter_combined"], 1e-12),
        _abs_check("catalog_area_vs_second_moments",
                   math.pi * (c["moment_M2"] - c["moment_Mprime2"]),
                   c["expected_area_combined"], 1e-12),
    ]

    spec = QuadSpec(tol=1e-10)
    m1 = quadrature.integrate_half_line(
        lambda x: x * analytic.pdf_combined_max(x), spec)
    out.append(_abs_check("quad_moment_m1", c["moment_M1"], m1.value, 1e-8))
    out.append(_abs_check("quad_moment_m2", c["moment_M2"],
                          quadrature.m2_moment_mn(1, 1, spec).value, 1e-8))
    out.append(_abs_check("quad_moment_mprime2", c["moment_Mprime2"],
                          quadrature.mprime2_moment_mn(1, 1, spec).value, 1e-6))

    out.append(_abs_check("quad_perimeter_combined", c["expected_perimeter_combined"],
                          quadrature.expected_perimeter_mn(1, 1, spec).value, 1e-8))
    out.append(_abs_check("quad_area_combined", c["expected_area_combined"],
                          quadrature.expected_area_mn(1, 1, spec).value, 1e-6))
    out.append(_abs_check("quad_perimeter_bm_only", c["expected_perimeter_bm"],
                          quadrature.expected_perimeter_mn(1, 0, spec).value, 1e-8))
    out.append(_abs_check("quad_perimeter_bb_only", c["expected_perimeter_bb"],
                          quadrature.expected_perimeter_mn(0, 1, spec).value, 1e-8))
    out.append(_abs_check("quad_area_bm_only", c["expected_area_bm"],
                          quadrature.expected_area_mn(1, 0, spec).value, 1e-6))
    out.append(_abs_check("quad_area_bb_only", c["expected_area_bb"],
                          quadrature.expected_area_mn(0, 1, spec).value, 1e-6))

    norm_max = quadrature.integrate_half_line(analytic.pdf_combined_max, spec)
    out.append(_abs_check("norm_pdf_combined_max", 1.0, norm_max.value, 1e-8))
    norm_time = quadrature.integrate(
        analytic.pdf_argmax_time, 0.0, 1.0,
        QuadSpec(tol=1e-10, singular_right=True))
    out.append(_abs_check("norm_pdf_argmax_time", 1.0, norm_time.value, 1e-8))

    bm_part = quadrature.integrate(
        lambda t: analytic.argmax_time_density_parts(t, 1, 1)[0],
        0.0, 1.0, QuadSpec(tol=1e-8, singular_left=True, singular_right=True))
    out.append(_abs_check("quad_prob_bm_wins", c["prob_bm_wins"], bm_part.value, 1e-6))
    return out


def full_checks(workers: int = 1,
                mc_reps: int = 50_000, mc_steps: int = 8192,
                ks_reps: int = 100_000, ks_steps: int = 4096,
                seed: int = 42) -> list[CheckResult]:
    """Monte Carlo runs against the closed forms; minutes at full scale.

    Tolerances are max(3 SE, 2% of target): hull functionals of
    grid-sampled paths are biased low, and 8192 steps keeps that bias
    inside 2%.
    """
    cat = analytic.catalog()
    c = {k: v.value for k, v in cat.items()}
    out: list[CheckResult] = []

    def band(est: montecarlo.Estimate, target: float) -> float:
        return max(3.0 * est.std_error, 0.02 * abs(target))

    combined = EnsembleSpec(1, 1, mc_steps, seed)
    values = montecarlo.hull_functional_samples(combined, mc_reps, workers)
    per = montecarlo.Estimate.from_values(values[:, 0], combined)
    ar = montecarlo.Estimate.from_values(values[:, 1], combined)
    out.append(_abs_check("mc_perimeter_combined", c["expected_perimeter_combined"],
                          per.mean, band(per, c["expected_perimeter_combined"])))
    out.append(_abs_check("mc_area_combined", c["expected_area_combined"],
                          ar.mean, band(ar, c["expected_area_combined"])))

    for name_p, name_a, m, n in (("mc_perimeter_bm", "mc_area_bm", 1, 0),
                                 ("mc_perimeter_bb", "mc_area_bb", 0, 1)):
        single = EnsembleSpec(m, n, mc_steps, seed + m + 2 * n)
        vals = montecarlo.hull_functional_samples(single, mc_reps, workers)
        p_est = montecarlo.Estimate.from_values(vals[:, 0], single)
        a_est = montecarlo.Estimate.from_values(vals[:, 1], single)
        p_target = c["expected_perimeter_bm"] if m else c["expected_perimeter_bb"]
        a_target = c["expected_area_bm"] if m else c["expected_area_bb"]
        out.append(_abs_check(name_p, p_target, p_est.mean, band(p_est, p_target)))
        out.append(_abs_check(name_a, a_target, a_est.mean, band(a_est, a_target)))

    ks_spec = EnsembleSpec(1, 1, ks_steps, seed + 7)
    samples = montecarlo.argmax_samples(ks_spec, ks_reps, workers)
    report = montecarlo.ks_test(samples.times, analytic.argmax_time_cdf)
    out.append(CheckResult(name="mc_ks_argmax_time_pvalue", target=0.01,
                           achieved=report.p_value_asymptotic, tol=0.0, kind="ge"))
    _, (frac_bm, _) = montecarlo.sample_argmax_times(ks_spec, ks_reps, samples=samples)
    se = math.sqrt(frac_bm * (1.0 - frac_bm) / samples.times.size)
    out.append(_abs_check("mc_winner_fraction_bm", c["prob_bm_wins"],
                          frac_bm, 3.0 * se))

    moments = montecarlo.estimate_max_moments(ks_spec, ks_reps, samples=samples)
    out.append(_abs_check("mc_moment_m1", c["moment_M1"], moments.m1.mean,
                          band(moments.m1, c["moment_M1"])))
    out.append(_abs_check("mc_moment_m2", c["moment_M2"], moments.m2.mean,
                          band(moments.m2, c["moment_M2"])))
    out.append(_abs_check("mc_moment_mprime2", c["moment_Mprime2"],
                          moments.mprime2.mean,
                          band(moments.mprime2, c["moment_Mprime2"])))
    return out
