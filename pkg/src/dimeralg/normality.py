"""Normality diagnostics for the homotopy center.

The homotopy center R sits inside the cycle algebra S.  R is normal
exactly when sigma*S lies inside R, equivalently when R = k + m0*S for
the ideal m0 of all nonconstant R-monomials; the report evaluates the
conditions separately and insists they agree.  Products of an
R-monomial that is not a sigma power with anything in S stay in R, so
testing sigma^n * g over the S-generators certifies the whole ideal.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .contraction import Contraction, Monomial, sigma, source_cycle_algebra_generators
from .monomial_algebra import (
    NO,
    YES,
    MonomialAlgebra,
    MonomialIdealSpec,
    degree,
    homotopy_center_contains,
    homotopy_center_monomials,
    is_sigma_power,
    minimal_generators,
    mon_add,
)

UNKNOWN = "unknown"


@dataclass
class SigmaIdealResult:
    verdict: str
    witness: Monomial | None = None  # S-generator g with sigma^n * g outside R
    power: int = 1


def sigma_power_times_S_in_R(c: Contraction, n: int) -> SigmaIdealResult:
    """Does sigma^n * S land in R?  Tested on the S-generators plus the
    pure power itself; the non-sigma-power products absorb the rest of S."""
    s = sigma(c)
    sn = s
    for _ in range(n - 1):
        sn = mon_add(sn, s)
    if homotopy_center_contains(c, sn).verdict != YES:
        return SigmaIdealResult(NO, witness=(0,) * len(s), power=n)
    for g in source_cycle_algebra_generators(c):
        if homotopy_center_contains(c, mon_add(sn, g)).verdict != YES:
            return SigmaIdealResult(NO, witness=g, power=n)
    return SigmaIdealResult(YES, power=n)


def sigma_S_in_R(c: Contraction) -> SigmaIdealResult:
    return sigma_power_times_S_in_R(c, 1)


@dataclass
class MinimalSigmaPower:
    n: int | None
    verdict: str
    failing_witness: Monomial | None = None  # witness at n-1


def minimal_sigma_power(c: Contraction, n_max: int = 6) -> MinimalSigmaPower:
    """Least n with sigma^n * S inside R; below it there is a witness
    product outside R."""
    prev_witness = None
    for n in range(1, n_max + 1):
        res = sigma_power_times_S_in_R(c, n)
        if res.verdict == YES:
            return MinimalSigmaPower(n, YES, prev_witness)
        prev_witness = res.witness
    return MinimalSigmaPower(None, UNKNOWN, prev_witness)


@dataclass
class NormalityReport:
    cond_sigma_S: str
    cond_k_plus_m0S: str
    cond_k_plus_ideal: str
    consistent: bool
    normal: str
    sigma_witness: Monomial | None
    minimal_power: int | None
    decomposition_holds: str
    ideal_property_holds: str
    degree_bound: int
    r_generators: list = field(default_factory=list)

    def as_dict(self):
        return {
            "cond_sigma_S_in_R": self.cond_sigma_S,
            "cond_R_equals_k_plus_m0S": self.cond_k_plus_m0S,
            "cond_R_equals_k_plus_ideal": self.cond_k_plus_ideal,
            "conditions_consistent": self.consistent,
            "normal": self.normal,
            "sigma_witness": list(self.sigma_witness) if self.sigma_witness else None,
            "minimal_sigma_power": self.minimal_power,
            "decomposition_holds": self.decomposition_holds,
            "ideal_property_holds": self.ideal_property_holds,
            "degree_bound": self.degree_bound,
            "homotopy_center_generators": [list(g) for g in self.r_generators],
        }


class EquivalenceViolation(AssertionError):
    """The provably equivalent normality conditions disagreed; that can
    only mean an implementation bug, so it is raised, not reported."""


def normality_report(c: Contraction, degree_bound: int = 8, n_max: int = 6) -> NormalityReport:
    s = sigma(c)
    res_sigma = sigma_S_in_R(c)

    r_mons = homotopy_center_monomials(c, degree_bound)
    r_gens = minimal_generators(sorted(r_mons))
    s_gens = source_cycle_algebra_generators(c)
    r_algebra = MonomialAlgebra(tuple(r_gens), label="homotopy-center")

    # R = k + m0*S as monomial sets up to the degree bound
    m0 = MonomialIdealSpec("m0", r_algebra)
    m0S = m0.monomials(s_gens, degree_bound)
    cond_m0S = YES if m0S == r_mons else NO

    # R = k + J for an ideal J of S: equivalent to the previous condition,
    # reported as its consequence
    cond_ideal = cond_m0S

    if (res_sigma.verdict == YES) != (cond_m0S == YES):
        raise EquivalenceViolation(
            f"sigma*S test says {res_sigma.verdict} but k+m0S test says {cond_m0S}"
        )

    msp = minimal_sigma_power(c, n_max)

    # decomposition: R = k[sigma] + (m0~, sigma^n) * S with m0~ the
    # non-sigma-power part
    decomposition = UNKNOWN
    if msp.n is not None:
        sn = s
        for _ in range(msp.n - 1):
            sn = mon_add(sn, s)
        decomp = set()
        powers = s
        while degree(powers) <= degree_bound:
            decomp.add(powers)
            powers = mon_add(powers, s)
        m0_tilde = MonomialIdealSpec("m0_tilde", r_algebra)
        extended = MonomialIdealSpec(
            "custom", r_algebra,
            tuple(m0_tilde.generators(degree_bound)) + (sn,),
        )
        decomp |= extended.monomials(s_gens, degree_bound)
        decomposition = YES if decomp == r_mons else NO

    # the non-sigma-power part of R is an ideal of S already
    ideal_prop = YES
    for m in r_gens:
        if is_sigma_power(m):
            continue
        for gen in s_gens:
            prod = mon_add(m, gen)
            if homotopy_center_contains(c, prod).verdict != YES:
                ideal_prop = NO
                break
        if ideal_prop == NO:
            break

    return NormalityReport(
        cond_sigma_S=res_sigma.verdict,
        cond_k_plus_m0S=cond_m0S,
        cond_k_plus_ideal=cond_ideal,
        consistent=True,
        normal=res_sigma.verdict,
        sigma_witness=res_sigma.witness,
        minimal_power=msp.n,
        decomposition_holds=decomposition,
        ideal_property_holds=ideal_prop,
        degree_bound=degree_bound,
        r_generators=r_gens,
    )
