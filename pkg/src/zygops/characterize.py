"""Boundedness, compactness, and essential-norm decision procedures.

Three equivalent characterizations are computed side by side:

* quantity route: weighted suprema / limsups A, B, C of |u''|,
  |2 u' phi' + u phi''|, |u phi'^2| against powers of (1 - |phi|^2),
* monomial route: j^(alpha-2) ||D (z^(j+1))||_{Z_beta} over j,
* family route: image norms of the f/g/h families over parameters
  approaching the boundary.

Dispatch on (n, alpha): the case n = 1, alpha < 1 swaps A for ||u||_{Z_beta};
the case n = 1, alpha = 1 weights the u'' term with log(1/(1-|phi|^2)).
n = 0 belongs to the weighted-type analyzer.

Limsups as |phi(z)| -> 1 are proxied by sups over grid points with
|phi(z)| >= 1 - 2^-m across shrinking levels.  When the trailing levels are
empty the condition is vacuous (phi stays compactly inside) and the limsup
is 0 by convention.  Level profiles that decay decisively extrapolate to 0;
the equivalence constants of the underlying theory are unspecified, so
reports assert zero/nonzero agreement and log ratios instead of comparing
estimators numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._parallel import parallel_map
from .errors import NotBoundedError, UnsupportedCaseError, UnsupportedWeightError
from .functions import AnalyticMap
from .operators import (
    MonomialSequence,
    OperatorSpec,
    SpacePair,
    SymbolJetCache,
    gwco_target_norm,
    monomial_sequence,
    tail_limit_estimate,
)
from .spaces import (
    DIVERGING,
    TAU_DIVERGENCE,
    DiskGrid,
    NormEstimate,
    SupremumEstimate,
    Weight,
    monomial_norm,
    supremum_estimate,
    zygmund_norm,
)
from .testfns import make_fgh

BOUNDED = "bounded"
UNBOUNDED = "unbounded"
INDETERMINATE_VERDICT = "indeterminate"

ROUTE_GENERAL = "general"
ROUTE_SMALL_ALPHA = "n1_small_alpha"
ROUTE_LOG = "n1_alpha1_log"


@dataclass(frozen=True)
class AnalysisConfig:
    """Grid sizes and thresholds shared by the decision procedures."""

    grid: DiskGrid = field(default_factory=DiskGrid)
    eps_levels: int = 12
    a_levels: int = 8
    a_angles: int = 8
    monomial_count: int = 200
    weighted_monomial_count: int = 300
    tau_divergence: float = TAU_DIVERGENCE
    tau_compact: float = 1e-6

    def __post_init__(self):
        if not 1 <= self.eps_levels <= 16:
            raise ValueError("eps_levels out of range")
        if not 1 <= self.a_levels <= 16:
            raise ValueError("a_levels out of range")
        if not 1 <= self.a_angles <= 64:
            raise ValueError("a_angles out of range")
        if not 1 <= self.monomial_count <= 2000:
            raise ValueError("monomial_count out of range")
        if not 1 <= self.weighted_monomial_count <= 5000:
            raise ValueError("weighted_monomial_count out of range")


@dataclass(frozen=True)
class LimsupProfile:
    """Per-epsilon-level sups of a quantity over {z : |phi(z)| >= 1 - eps}.

    `vacuous` marks profiles whose trailing levels have no grid points
    (phi compactly inside), pinning the limsup at 0.
    """

    levels: tuple                 # ((eps, point_count, sup), ...)
    vacuous: bool
    estimate: float
    slope: float

    def to_payload(self) -> dict:
        return {
            "levels": [[eps, cnt, sup] for eps, cnt, sup in self.levels],
            "vacuous": self.vacuous,
            "estimate": self.estimate,
            "slope": self.slope,
        }


def limsup_profile(values: np.ndarray, phi_abs: np.ndarray, eps_levels: int,
                   tau: float = TAU_DIVERGENCE) -> LimsupProfile:
    """Build the limsup proxy for sampled nonnegative `values`.

    Levels are nested, so either every level has points or a trailing block
    is empty; the latter means no grid sequence approaches |phi| = 1 and the
    limsup is vacuously 0.
    """
    levels = []
    for m in range(1, eps_levels + 1):
        eps = 2.0**-m
        mask = phi_abs >= 1.0 - eps
        cnt = int(np.count_nonzero(mask))
        sup = float(np.max(values[mask])) if cnt else 0.0
        levels.append((eps, cnt, sup))
    if levels[-1][1] == 0:
        return LimsupProfile(tuple(levels), vacuous=True, estimate=0.0, slope=0.0)
    sups = [s for _, _, s in levels]
    window = min(6, len(sups))
    estimate, slope = tail_limit_estimate(np.arange(1, eps_levels + 1)[-window:],
                                          sups[-window:], tau)
    return LimsupProfile(tuple(levels), vacuous=False, estimate=estimate, slope=slope)


@dataclass(frozen=True)
class QuantityABC:
    """One of the three weighted-derivative quantities, in sup or limsup mode."""

    which: str                   # "A" | "B" | "C"
    mode: str                    # "sup" | "limsup"
    log_weighted: bool
    sup: SupremumEstimate | None = None
    limsup: LimsupProfile | None = None

    @property
    def value(self) -> float:
        return self.sup.value if self.sup is not None else self.limsup.estimate

    def to_payload(self) -> dict:
        out = {"which": self.which, "mode": self.mode, "log_weighted": self.log_weighted,
               "value": self.value}
        if self.sup is not None:
            out["sup"] = self.sup.to_payload()
        if self.limsup is not None:
            out["limsup"] = self.limsup.to_payload()
        return out


def _abc_values(op: OperatorSpec, pair: SpacePair, which: str, pts: np.ndarray,
                log_weighted: bool, denominator_exponent_shift: float = 0.0) -> tuple:
    """Integrand samples of a quantity plus |phi| at the same points."""
    u_jet = op.u.jet_many(pts, 2)
    phi_jet = op.phi.jet_many(pts, 2)
    phi_abs = np.abs(phi_jet[0])
    base = (1.0 - np.abs(pts) ** 2) ** pair.beta
    one_minus_phi_sq = 1.0 - phi_abs**2
    n, alpha = op.n, pair.alpha
    if which == "A":
        numer = np.abs(2.0 * u_jet[2])
        exponent = alpha + n - 2.0
    elif which == "B":
        numer = np.abs(2.0 * u_jet[1] * phi_jet[1] + u_jet[0] * 2.0 * phi_jet[2])
        exponent = alpha + n - 1.0
    elif which == "C":
        numer = np.abs(u_jet[0] * phi_jet[1] ** 2)
        exponent = alpha + n
    else:
        raise ValueError(f"which must be A, B, or C, got {which!r}")
    if which == "A" and log_weighted:
        # the (n, alpha) = (1, 1) route: log weight instead of a power
        vals = base * numer * np.maximum(np.log(1.0 / one_minus_phi_sq), 0.0)
    else:
        vals = base * numer / one_minus_phi_sq ** (exponent + denominator_exponent_shift)
    return vals, phi_abs


def quantity_abc(op: OperatorSpec, pair: SpacePair, which: str, mode: str,
                 config: AnalysisConfig, log_weighted: bool = False) -> QuantityABC:
    """Evaluate quantity A, B, or C in sup mode (boundedness) or limsup mode."""
    if op.n < 1:
        raise UnsupportedCaseError("quantities need n >= 1; n = 0 is weighted-type")
    if mode == "sup":
        est = supremum_estimate(
            lambda pts: _abc_values(op, pair, which, pts, log_weighted)[0], config.grid)
        return QuantityABC(which, mode, log_weighted, sup=est)
    if mode == "limsup":
        pts = config.grid.all_points()
        vals, phi_abs = _abc_values(op, pair, which, pts, log_weighted)
        prof = limsup_profile(vals, phi_abs, config.eps_levels, config.tau_divergence)
        return QuantityABC(which, mode, log_weighted, limsup=prof)
    raise ValueError(f"mode must be 'sup' or 'limsup', got {mode!r}")


@dataclass(frozen=True)
class FamilyProfile:
    """Image norms ||D fam_a||_{Z_beta} over |a| levels approaching 1.

    Serves both readings: the boundedness criterion takes the sup over all
    samples, the essential-norm criterion extrapolates the level trend.
    """

    which: str                  # "E" | "F" | "G"
    family: str                 # "f" | "g" | "h"
    per_level: tuple            # ((|a|, max over angles), ...)
    sup_value: float
    limit_estimate: float
    slope: float

    def to_payload(self) -> dict:
        return {
            "which": self.which, "family": self.family,
            "per_level": [[r, v] for r, v in self.per_level],
            "sup_value": self.sup_value,
            "limit_estimate": self.limit_estimate,
            "slope": self.slope,
        }


_EFG_FAMILY = {"E": "f", "F": "g", "G": "h"}


def quantity_efg(op: OperatorSpec, pair: SpacePair, which: str,
                 config: AnalysisConfig, cache: SymbolJetCache | None = None) -> FamilyProfile:
    """Norm profile of the image of the f/g/h family for quantity E/F/G."""
    family = _EFG_FAMILY[which]
    cache = cache or SymbolJetCache(op, config.grid)

    def norm_at(a: complex) -> float:
        fam = make_fgh(family, a, pair.alpha)
        return gwco_target_norm(op, fam, pair, config.grid, cache=cache).total

    per_level = []
    for m in range(1, config.a_levels + 1):
        r = 1.0 - 2.0**-m
        samples = [r * np.exp(2j * np.pi * k / config.a_angles)
                   for k in range(config.a_angles)]
        values = parallel_map(norm_at, samples)
        per_level.append((r, float(max(values))))
    sups = [v for _, v in per_level]
    window = min(4, len(sups))
    limit, slope = tail_limit_estimate(np.arange(1, config.a_levels + 1)[-window:],
                                       sups[-window:], config.tau_divergence)
    return FamilyProfile(which, family, tuple(per_level), float(max(sups)), limit, slope)


# ---------------------------------------------------------------------------
# verdict plumbing

def _sup_verdict(est: SupremumEstimate) -> str:
    if est.verdict == DIVERGING:
        return UNBOUNDED
    if est.finite_looking:
        return BOUNDED
    return INDETERMINATE_VERDICT


def _slope_verdict(slope: float, tau: float) -> str:
    if slope > tau:
        return UNBOUNDED
    if slope <= 0.0:
        return BOUNDED
    return INDETERMINATE_VERDICT


def _combine(verdicts) -> str:
    verdicts = list(verdicts)
    if any(v == UNBOUNDED for v in verdicts):
        return UNBOUNDED
    if any(v == INDETERMINATE_VERDICT for v in verdicts):
        return INDETERMINATE_VERDICT
    return BOUNDED


def _agreement(verdicts: dict) -> dict:
    names = list(verdicts)
    matrix = {}
    for i in names:
        row = {}
        for j in names:
            a, b = verdicts[i], verdicts[j]
            if INDETERMINATE_VERDICT in (a, b):
                row[j] = "partial"
            else:
                row[j] = "agree" if a == b else "disagree"
        matrix[i] = row
    return {"verdicts": dict(verdicts), "matrix": matrix}


def dispatch_route(n: int, alpha: float) -> str:
    """Pick the classification route; total on n >= 1, alpha > 0."""
    if n == 0:
        raise UnsupportedCaseError(
            "n = 0 is the weighted composition operator; use the weighted-type analyzer")
    if n == 1 and alpha == 1.0:
        return ROUTE_LOG
    if n == 1 and alpha < 1.0:
        return ROUTE_SMALL_ALPHA
    return ROUTE_GENERAL


@dataclass(frozen=True)
class BoundednessReport:
    route: str
    quantities: dict             # name -> QuantityABC (sup mode)
    u_norm: NormEstimate
    weighted_conditions: dict    # name -> SupremumEstimate (the Z_beta-weighted sups)
    monomials: MonomialSequence
    family_audits: dict          # "E"/"F"/"G" -> FamilyProfile
    verdict: str
    agreement: dict

    def to_payload(self) -> dict:
        return {
            "route": self.route,
            "verdict": self.verdict,
            "quantities": {k: q.to_payload() for k, q in sorted(self.quantities.items())},
            "u_norm": self.u_norm.to_payload(),
            "weighted_conditions": {k: v.to_payload()
                                    for k, v in sorted(self.weighted_conditions.items())},
            "monomials": self.monomials.to_payload(),
            "family_audits": {k: v.to_payload() for k, v in sorted(self.family_audits.items())},
            "agreement": self.agreement,
        }


def _weighted_condition(op: OperatorSpec, pair: SpacePair, which: str,
                        config: AnalysisConfig) -> SupremumEstimate:
    """sup (1-|z|^2)^beta |numerator| with no boundary denominator."""
    def integrand(pts):
        u_jet = op.u.jet_many(pts, 2)
        phi_jet = op.phi.jet_many(pts, 2)
        base = (1.0 - np.abs(pts) ** 2) ** pair.beta
        if which == "u_phi_prime_sq":
            return base * np.abs(u_jet[0] * phi_jet[1] ** 2)
        return base * np.abs(2.0 * u_jet[1] * phi_jet[1] + u_jet[0] * 2.0 * phi_jet[2])
    return supremum_estimate(integrand, config.grid)


def classify_boundedness(op: OperatorSpec, pair: SpacePair,
                         config: AnalysisConfig | None = None) -> BoundednessReport:
    """Run all three boundedness criteria and combine the route criterion."""
    config = config or AnalysisConfig()
    route = dispatch_route(op.n, pair.alpha)

    quantities = {}
    if route == ROUTE_GENERAL:
        for which in "ABC":
            quantities[which] = quantity_abc(op, pair, which, "sup", config)
    elif route == ROUTE_SMALL_ALPHA:
        for which in "BC":
            quantities[which] = quantity_abc(op, pair, which, "sup", config)
    else:
        quantities["A_log"] = quantity_abc(op, pair, "A", "sup", config, log_weighted=True)
        for which in "BC":
            quantities[which] = quantity_abc(op, pair, which, "sup", config)

    u_norm = zygmund_norm(op.u, pair.beta, config.grid)
    weighted_conditions = {
        "u_phi_prime_sq": _weighted_condition(op, pair, "u_phi_prime_sq", config),
        "u_derivative_mix": _weighted_condition(op, pair, "u_derivative_mix", config),
    }
    monomials = monomial_sequence(op, pair, config.grid, config.monomial_count)
    cache = SymbolJetCache(op, config.grid)
    audits = {w: quantity_efg(op, pair, w, config, cache=cache) for w in "EFG"}

    route_verdicts = [_sup_verdict(q.sup) for q in quantities.values()]
    if route == ROUTE_SMALL_ALPHA:
        route_verdicts.append(_sup_verdict(u_norm.seminorm))
    verdict = _combine(route_verdicts)

    monomial_verdict = _slope_verdict(monomials.trend_slope, config.tau_divergence)
    family_verdicts = [_slope_verdict(p.slope, config.tau_divergence) for p in audits.values()]
    family_verdicts.append(_sup_verdict(u_norm.seminorm))
    family_verdicts.extend(_sup_verdict(v) for v in weighted_conditions.values())

    agreement = _agreement({
        "quantities": verdict,
        "monomials": monomial_verdict,
        "families": _combine(family_verdicts),
    })

    return BoundednessReport(
        route=route,
        quantities=quantities,
        u_norm=u_norm,
        weighted_conditions=weighted_conditions,
        monomials=monomials,
        family_audits=audits,
        verdict=verdict,
        agreement=agreement,
    )


@dataclass(frozen=True)
class EssentialNormReport:
    """The three essential-norm estimators and their agreement.

    `estimate` is max{A, B, C} (log-weighted A on the (1,1) route); the
    family and monomial estimators are cross-checks.  The underlying
    equivalences hold up to unspecified constants, so only zero/nonzero
    agreement is asserted; ratios are logged for diagnostics.
    """

    route: str
    abc: dict                    # name -> QuantityABC (limsup mode)
    efg: dict                    # "E"/"F"/"G" -> FamilyProfile
    monomial_tail: float
    monomials: MonomialSequence
    estimate: float
    cross_estimates: dict
    ratios: dict
    compact: bool
    agreement: dict

    def to_payload(self) -> dict:
        return {
            "route": self.route,
            "estimate": self.estimate,
            "compact": self.compact,
            "abc": {k: v.to_payload() for k, v in sorted(self.abc.items())},
            "efg": {k: v.to_payload() for k, v in sorted(self.efg.items())},
            "monomial_tail": self.monomial_tail,
            "monomials": self.monomials.to_payload(),
            "cross_estimates": dict(self.cross_estimates),
            "ratios": dict(self.ratios),
            "agreement": self.agreement,
        }


def _ensure_bounded(op, pair, config, boundedness) -> BoundednessReport:
    report = boundedness or classify_boundedness(op, pair, config)
    if report.verdict != BOUNDED:
        raise NotBoundedError(
            f"operator classified {report.verdict}; essential norm needs a bounded operator")
    return report


def essential_norm_estimate(op: OperatorSpec, pair: SpacePair,
                            config: AnalysisConfig | None = None,
                            boundedness: BoundednessReport | None = None) -> EssentialNormReport:
    """Essential-norm estimate with all three characterizations."""
    config = config or AnalysisConfig()
    bounded_report = _ensure_bounded(op, pair, config, boundedness)
    route = bounded_report.route

    abc = {}
    if route == ROUTE_LOG:
        abc["A_log"] = quantity_abc(op, pair, "A", "limsup", config, log_weighted=True)
    else:
        abc["A"] = quantity_abc(op, pair, "A", "limsup", config)
    for which in "BC":
        abc[which] = quantity_abc(op, pair, which, "limsup", config)

    # the family profiles serve both readings; reuse the boundedness sweep
    efg = bounded_report.family_audits
    monomials = bounded_report.monomials

    estimate = max(q.value for q in abc.values())
    efg_value = max(p.limit_estimate for p in efg.values())
    mono_value = monomials.tail_limit
    cross = {"efg": efg_value, "monomial": mono_value}

    tau = config.tau_compact
    ratios = {}
    for name, val in cross.items():
        if estimate > tau and val > tau:
            ratios[name] = val / estimate
        else:
            ratios[name] = None  # both ~0 (agreement) or a zero/nonzero split

    compact = estimate < tau and efg_value < tau and mono_value < tau
    nonzero = {"abc": estimate >= tau, "efg": efg_value >= tau, "monomial": mono_value >= tau}
    agreement = {
        "nonzero": nonzero,
        "consistent": len(set(nonzero.values())) == 1,
    }

    return EssentialNormReport(
        route=route,
        abc=abc,
        efg=efg,
        monomial_tail=mono_value,
        monomials=monomials,
        estimate=estimate,
        cross_estimates=cross,
        ratios=ratios,
        compact=compact,
        agreement=agreement,
    )


@dataclass(frozen=True)
class CompactnessReport:
    verdict: str                 # "compact" | "not_compact"
    essential: EssentialNormReport

    def to_payload(self) -> dict:
        return {"verdict": self.verdict, "essential": self.essential.to_payload()}


def classify_compactness(op: OperatorSpec, pair: SpacePair,
                         config: AnalysisConfig | None = None,
                         boundedness: BoundednessReport | None = None) -> CompactnessReport:
    """Compact iff every essential-norm estimator sits below the tolerance."""
    config = config or AnalysisConfig()
    essential = essential_norm_estimate(op, pair, config, boundedness)
    return CompactnessReport(
        verdict="compact" if essential.compact else "not_compact",
        essential=essential,
    )


# ---------------------------------------------------------------------------
# weighted-type analyzer (n = 0)

@dataclass(frozen=True)
class WeightedTypeReport:
    """Two-sided boundedness and essential-norm data for u C_phi on H^inf_nu.

    Monomial side: sup_n ||u phi^n||_omega / ||z^n||_nu with the denominator
    from the exact 1-D oracle.  Sup side: sup omega(z) |u(z)| / nu(phi(z)).
    The essential norm takes the tail of the monomial ratios and the limsup
    profile of the sup-side integrand.
    """

    nu: str
    omega: str
    sup_side: SupremumEstimate
    monomial_ratios: tuple       # ((n, ratio), ...)
    monomial_sup: float
    monomial_sup_at: int
    monomial_tail_limit: float
    boundedness_ratio: float | None
    limsup_profile: LimsupProfile
    essential_estimate: float
    compact: bool

    def to_payload(self) -> dict:
        return {
            "nu": self.nu,
            "omega": self.omega,
            "sup_side": self.sup_side.to_payload(),
            "monomial_ratios": [[n, v] for n, v in self.monomial_ratios],
            "monomial_sup": self.monomial_sup,
            "monomial_sup_at": self.monomial_sup_at,
            "monomial_tail_limit": self.monomial_tail_limit,
            "boundedness_ratio": self.boundedness_ratio,
            "limsup_profile": self.limsup_profile.to_payload(),
            "essential_estimate": self.essential_estimate,
            "compact": self.compact,
        }


def weighted_type_analyze(u: AnalyticMap, phi: AnalyticMap, nu: Weight, omega: Weight,
                          config: AnalysisConfig | None = None) -> WeightedTypeReport:
    """Analyze u C_phi between weighted-type spaces (the n = 0 route)."""
    config = config or AnalysisConfig()
    if nu.kind not in ("alpha", "log") or omega.kind not in ("alpha", "log"):
        raise UnsupportedWeightError("weights must come from the standard/log catalog")
    op = OperatorSpec(u, phi, 0, validation_grid=config.grid)

    pts = config.grid.all_points()
    u_abs = np.abs(u.eval_many(pts))
    phi_vals = phi.eval_many(pts)
    phi_abs = np.abs(phi_vals)
    ratio_vals = omega.eval(pts) * u_abs / nu.eval(phi_vals)

    sup_side = supremum_estimate(
        lambda qq: omega.eval(qq) * np.abs(u.eval_many(qq)) / nu.eval(phi.eval_many(qq)),
        config.grid)

    count = config.weighted_monomial_count
    log_phi_abs = np.where(phi_abs > 0.0, np.log(np.maximum(phi_abs, 1e-300)), -np.inf)
    omega_u = omega.eval(pts) * u_abs

    def ratio_at(m: int) -> float:
        if m == 0:
            numer = float(np.max(omega_u))
        else:
            with np.errstate(invalid="ignore"):
                powed = np.where(np.isneginf(log_phi_abs), 0.0, np.exp(m * log_phi_abs))
            numer = float(np.max(omega_u * powed))
        return numer / monomial_norm(m, nu)

    ratios = parallel_map(ratio_at, range(count + 1))
    monomial_ratios = tuple((m, v) for m, v in zip(range(count + 1), ratios))
    sup_at = int(np.argmax(ratios))
    tail_sup = max(v for m, v in monomial_ratios if m >= max(count // 2, 1))
    window = [(m, v) for m, v in monomial_ratios if m >= max(count // 4, 1)]
    tail_limit, _ = tail_limit_estimate([math.log(m + 1.0) for m, _ in window],
                                        [v for _, v in window], config.tau_divergence)
    if tail_limit != 0.0:
        tail_limit = tail_sup

    prof = limsup_profile(ratio_vals, phi_abs, config.eps_levels, config.tau_divergence)
    essential = max(tail_limit, prof.estimate) if not prof.vacuous else tail_limit
    sup_value = sup_side.value
    boundedness_ratio = (max(ratios) / sup_value) if sup_value > 1e-300 else None

    return WeightedTypeReport(
        nu=nu.label,
        omega=omega.label,
        sup_side=sup_side,
        monomial_ratios=monomial_ratios,
        monomial_sup=float(max(ratios)),
        monomial_sup_at=sup_at,
        monomial_tail_limit=tail_limit,
        boundedness_ratio=boundedness_ratio,
        limsup_profile=prof,
        essential_estimate=essential,
        compact=essential < config.tau_compact,
    )
