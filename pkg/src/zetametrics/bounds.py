"""Right-hand sides of the Berry-Esseen type error bounds.

Every evaluator returns a BoundReport carrying the numeric RHS, an
applicability flag with reason (n-range / moment requirements), and the
metric inputs consumed, so bound sweeps can tabulate "n/a" instead of
raising.  The distance inputs are collected once per law in a
NormalDistanceProfile and shared across the bound family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np

from .numerics import DEFAULT_TOL, Tolerance, golden_section
from .measures import (LawSpec, STANDARD_NORMAL, lattice_span, signed_diff,
                       standardise)
from .metrics import (kappa_r, nu_r_signed, zeta3_cut_criterion, zeta_r)

SQRT_2PI = math.sqrt(2.0 * math.pi)


# ---------------------------------------------------------------------------
# constants
# ---------------------------------------------------------------------------

def zeta_riemann_3_2(terms: int = 100_000) -> float:
    """zeta(3/2) by direct summation plus integral tail."""
    j = np.arange(1, terms + 1, dtype=float)
    return float(np.sum(j ** -1.5)) + 2.0 / math.sqrt(terms)


@dataclass(frozen=True)
class Constants:
    c_Sh: float = 0.469
    c_E: float = (3.0 + math.sqrt(10.0)) / (6.0 * SQRT_2PI)
    p_E: float = (4.0 - math.sqrt(10.0)) / 2.0
    alpha_Z: float = 4.0 * math.exp(-0.5) / SQRT_2PI
    beta_Z: float = 4.0 / SQRT_2PI
    gamma_Z: float = (2.0 + 8.0 * math.exp(-1.5)) / SQRT_2PI
    zeta_R32: float = field(default_factory=zeta_riemann_3_2)
    c_main: float = 9.0
    c_zeta1_coarse: float = 14.0
    c_zeta3: float = 34.0
    c_GT: float = 1.0
    c_hoeglund: float = 82.4

    @property
    def lambda_Z(self) -> float:
        return self.gamma_Z * self.zeta_R32

    @property
    def phi_deriv_L1(self):
        """L1 norms of the first five derivatives of the normal density."""
        r6 = math.sqrt(6.0)
        v4 = 4.0 * (math.sqrt(18.0 - 6.0 * r6) * math.exp(-(3.0 - r6) / 2.0)
                    + math.sqrt(18.0 + 6.0 * r6) * math.exp(-(3.0 + r6) / 2.0)) / SQRT_2PI
        return (1.0,
                2.0 / SQRT_2PI,
                4.0 * math.exp(-0.5) / SQRT_2PI,
                (2.0 + 8.0 * math.exp(-1.5)) / SQRT_2PI,
                v4)

    def c1_even_odd(self) -> float:
        """sqrt(3) (2^{-1/4} + 1)^2 / sqrt(2 pi), the pairing constant."""
        return math.sqrt(3.0) * (2.0 ** -0.25 + 1.0) ** 2 / SQRT_2PI

    def derived_c_zeta1(self) -> float:
        """sup_z min((1 + alpha)/(1 - lambda z), 6 + beta/z) = 13.3803..."""
        lam, beta, alpha = self.lambda_Z, self.beta_Z, self.alpha_Z
        A = alpha - 5.0 + beta * lam
        zstar = (-A + math.sqrt(A * A + 24.0 * lam * beta)) / (12.0 * lam)
        return 6.0 + beta / zstar

    def derived_c_main(self) -> float:
        """sup_z min(c1 (1+alpha)/(1-lambda z), c_Sh (6 + beta/z)) = 8.92085..."""
        lam, beta, alpha = self.lambda_Z, self.beta_Z, self.alpha_Z
        om = self.c1_even_odd() / self.c_Sh
        B = om * (1.0 + alpha) - 6.0 + beta * lam
        zstar = (-B + math.sqrt(B * B + 24.0 * lam * beta)) / (12.0 * lam)
        return self.c_Sh * (6.0 + beta / zstar)


CONSTANTS = Constants()


@dataclass
class BoundReport:
    bound_id: str
    rhs: float
    applicable: bool
    reason: str = ""
    inputs: Dict[str, float] = field(default_factory=dict)


# ---------------------------------------------------------------------------
# g(eta) and Zolotarev's xi
# ---------------------------------------------------------------------------

_G_TERMS = 100_000
_G_J = None


def g_eta(eta) -> float:
    """g(eta) = sum_{j>=1} (j + eta^2)^{-3/2}, truncated at 1e5 terms with
    the integral tail 2 / sqrt(J + eta^2); error below 1e-7."""
    global _G_J
    if _G_J is None:
        _G_J = np.arange(1, _G_TERMS + 1, dtype=float)
    e = np.asarray(eta, dtype=float)
    if e.ndim == 0:
        e2 = float(e) ** 2
        return float(np.sum((_G_J + e2) ** -1.5)) + 2.0 / math.sqrt(_G_TERMS + e2)
    out = np.empty(e.size)
    for i, v in enumerate(e.ravel()):
        e2 = v * v
        out[i] = float(np.sum((_G_J + e2) ** -1.5)) + 2.0 / math.sqrt(_G_TERMS + e2)
    return out.reshape(e.shape)


_XI_GRID = None
_XI_GVALS = None


def _xi_scan_grid():
    global _XI_GRID, _XI_GVALS
    if _XI_GRID is None:
        _XI_GRID = np.concatenate([[0.0], np.logspace(-6, 5, 1024)])
        _XI_GVALS = g_eta(_XI_GRID)
    return _XI_GRID, _XI_GVALS


def xi(kappa: float, zeta: float) -> float:
    """Zolotarev's bound function

        xi(kappa, zeta) = inf_eta (kappa + alpha zeta + beta eta)
                                  / (1 - gamma g(eta) zeta)

    over feasible eta (gamma g(eta) zeta < 1); +inf when no eta in the
    scan range is feasible.  eta = 0 realizes the closed-form branch
    (kappa + alpha zeta)/(1 - lambda zeta) for zeta < 1/lambda.
    """
    if kappa < 0 or zeta < 0:
        raise ValueError("xi needs kappa, zeta >= 0")
    C = CONSTANTS
    if zeta == 0.0:
        return kappa
    grid, gvals = _xi_scan_grid()
    hi = 10.0 * (1.0 + kappa + zeta)
    sel = grid <= hi
    etas = grid[sel]
    gs = gvals[sel]
    denom = 1.0 - C.gamma_Z * gs * zeta
    feas = denom > 0.0
    if not np.any(feas):
        return math.inf
    vals = (kappa + C.alpha_Z * zeta + C.beta_Z * etas[feas]) / denom[feas]
    k = int(np.argmin(vals))
    best = float(vals[k])
    idx_feas = np.nonzero(feas)[0]
    i = idx_feas[k]
    lo_b = float(etas[max(i - 1, 0)])
    hi_b = float(etas[min(i + 1, etas.size - 1)])

    def objective(e):
        d = 1.0 - C.gamma_Z * g_eta(e) * zeta
        if d <= 0:
            return math.inf
        return (kappa + C.alpha_Z * zeta + C.beta_Z * e) / d

    if hi_b > lo_b:
        _, v = golden_section(objective, lo_b, hi_b, tol=1e-9)
        best = min(best, v)
    closed = math.inf
    if zeta < 1.0 / C.lambda_Z:
        closed = (kappa + C.alpha_Z * zeta) / (1.0 - C.lambda_Z * zeta)
    return min(best, closed)


# ---------------------------------------------------------------------------
# per-law distance profile
# ---------------------------------------------------------------------------

@dataclass
class NormalDistanceProfile:
    """Distances of standardise(P) to N consumed by the bound family."""

    law: LawSpec
    zeta1: float
    zeta3: float
    kappa1: float
    kappa3: float
    nu3_std: float
    nu_diff: Dict[int, float]
    mu3_std: float
    span_std: float
    zeta3_method: str = "quadrature"

    @property
    def zeta13(self) -> float:
        return max(self.zeta1, self.zeta3)


def distance_profile(P: LawSpec, tol: Tolerance = DEFAULT_TOL) -> NormalDistanceProfile:
    Pt = standardise(P)
    M = signed_diff(Pt, STANDARD_NORMAL)
    z1 = kappa_r(M, 1.0, tol).value
    cut = zeta3_cut_criterion(P, tol)
    if cut is not None:
        z3 = cut.value
        z3_method = cut.method
    else:
        mv = zeta_r(M, 3, tol)
        z3 = mv.value
        z3_method = mv.method
    k3 = kappa_r(M, 3.0, tol).value
    nus = {r: nu_r_signed(M, r, tol).value for r in (0, 1, 2, 3)}
    return NormalDistanceProfile(
        law=P, zeta1=z1, zeta3=z3, kappa1=z1, kappa3=k3,
        nu3_std=Pt.nu(3), nu_diff=nus, mu3_std=Pt.mu(3),
        span_std=lattice_span(Pt), zeta3_method=z3_method)


def _profile(P_or_prof, tol: Tolerance) -> NormalDistanceProfile:
    if isinstance(P_or_prof, NormalDistanceProfile):
        return P_or_prof
    return distance_profile(P_or_prof, tol)


# ---------------------------------------------------------------------------
# the bounds
# ---------------------------------------------------------------------------

def be_classical(P, n: int, constant: str | float = "c_Sh",
                 tol: Tolerance = DEFAULT_TOL) -> BoundReport:
    """Classical Berry-Esseen RHS c * nu_3(P~) / sqrt(n)."""
    prof = _profile(P, tol)
    c = {"c_Sh": CONSTANTS.c_Sh, "c_E": CONSTANTS.c_E}.get(constant, constant)
    if not math.isfinite(prof.nu3_std):
        return BoundReport("be_classical", math.inf, False, "nu_3 infinite")
    rhs = float(c) * prof.nu3_std / math.sqrt(n)
    return BoundReport("be_classical", rhs, n >= 1, "",
                       {"nu3_std": prof.nu3_std, "c": float(c)})


def be_main(P, n: int, tol: Tolerance = DEFAULT_TOL) -> BoundReport:
    """(9 / sqrt(n)) (zeta_1 v zeta_3)(P~ - N), valid for n >= 2."""
    prof = _profile(P, tol)
    rhs = CONSTANTS.c_main * prof.zeta13 / math.sqrt(n)
    if n < 2:
        return BoundReport("be_main", rhs, False, "needs n >= 2",
                           {"zeta1": prof.zeta1, "zeta3": prof.zeta3})
    return BoundReport("be_main", rhs, True, "",
                       {"zeta1": prof.zeta1, "zeta3": prof.zeta3})


def be_main_all_n(P, n: int, tol: Tolerance = DEFAULT_TOL) -> BoundReport:
    """(9 / sqrt(n)) (zeta_1^(1 ^ n/2) v zeta_3), valid for all n >= 1."""
    prof = _profile(P, tol)
    expo = min(1.0, n / 2.0)
    rhs = CONSTANTS.c_main * max(prof.zeta1 ** expo, prof.zeta3) / math.sqrt(n)
    return BoundReport("be_main_all_n", rhs, n >= 1, "",
                       {"zeta1": prof.zeta1, "zeta3": prof.zeta3,
                        "exponent": expo})


def be_kappa(P, n: int, tol: Tolerance = DEFAULT_TOL) -> BoundReport:
    """max(9 kappa_1, 1.5 kappa_3)(P~ - N) / sqrt(n), n >= 2."""
    prof = _profile(P, tol)
    rhs = max(9.0 * prof.kappa1, 1.5 * prof.kappa3) / math.sqrt(n)
    return BoundReport("be_kappa", rhs, n >= 2,
                       "" if n >= 2 else "needs n >= 2",
                       {"kappa1": prof.kappa1, "kappa3": prof.kappa3})


def be_zeta3_only(P, n: int, tol: Tolerance = DEFAULT_TOL) -> BoundReport:
    """34 (zeta_3^(1/3) v zeta_3)(P~ - N) / sqrt(n), n >= 2."""
    prof = _profile(P, tol)
    rhs = CONSTANTS.c_zeta3 * max(prof.zeta3 ** (1.0 / 3.0), prof.zeta3) / math.sqrt(n)
    return BoundReport("be_zeta3_only", rhs, n >= 2,
                       "" if n >= 2 else "needs n >= 2",
                       {"zeta3": prof.zeta3})


def esseen_asymptotic(P, tol: Tolerance = DEFAULT_TOL) -> float:
    """Limit of sqrt(n) ||P~^{*n} - N||_K:
    (h(P~)/2 + |mu_3(P~)|/6) / sqrt(2 pi)."""
    prof = _profile(P, tol)
    h = prof.span_std
    if math.isinf(h):
        raise ValueError("esseen_asymptotic needs a non-degenerate law")
    return (h / 2.0 + abs(prof.mu3_std) / 6.0) / SQRT_2PI


_SHIGANOV_C = {0: 1.8, 1: 4.2, 2: 13.5, 3: 35.0}


def shiganov_family(P, n: int, r: int, tol: Tolerance = DEFAULT_TOL) -> BoundReport:
    """c_r (nu_r^(1 ^ n/(r+1)) v nu_3)(P~ - N) / sqrt(n)."""
    if r not in _SHIGANOV_C:
        raise ValueError("shiganov family needs r in 0..3")
    prof = _profile(P, tol)
    nur = prof.nu_diff[r]
    nu3 = prof.nu_diff[3]
    if not (math.isfinite(nur) and math.isfinite(nu3)):
        return BoundReport(f"shiganov_r{r}", math.inf, False, "moment infinite")
    expo = min(1.0, n / (r + 1.0))
    rhs = _SHIGANOV_C[r] * max(nur ** expo, nu3) / math.sqrt(n)
    return BoundReport(f"shiganov_r{r}", rhs, True, "",
                       {"nu_r": nur, "nu_3": nu3, "exponent": expo,
                        "c": _SHIGANOV_C[r]})


def shiganov_combined(P, n: int, tol: Tolerance = DEFAULT_TOL) -> BoundReport:
    """min over r from min(3, n-1) to 3 of the Shiganov family RHS."""
    prof = _profile(P, tol)
    r_lo = min(3, n - 1)
    reports = [shiganov_family(prof, n, r, tol) for r in range(r_lo, 4)]
    applicable = [rep for rep in reports if rep.applicable]
    if not applicable:
        return BoundReport("shiganov_combined", math.inf, False,
                           "no admissible r")
    best = min(applicable, key=lambda rep: rep.rhs)
    return BoundReport("shiganov_combined", best.rhs, True, "",
                       best.inputs | {"r": int(best.bound_id[-1])})


def zolotarev_zeta1_bound(P, n: int, tol: Tolerance = DEFAULT_TOL) -> BoundReport:
    """xi(zeta_1, zeta_3)/sqrt(n), bounding zeta_1(P~^{*n} - N); the
    coarse 14 (zeta_1 v zeta_3)/sqrt(n) form is reported alongside."""
    prof = _profile(P, tol)
    v = xi(prof.zeta1, prof.zeta3)
    coarse = CONSTANTS.c_zeta1_coarse * prof.zeta13 / math.sqrt(n)
    if not math.isfinite(v):
        return BoundReport("zolotarev_zeta1", coarse, True,
                           "xi infeasible; coarse form only",
                           {"zeta1": prof.zeta1, "zeta3": prof.zeta3,
                            "xi": math.inf, "coarse": coarse})
    rhs = v / math.sqrt(n)
    return BoundReport("zolotarev_zeta1", rhs, n >= 1, "",
                       {"zeta1": prof.zeta1, "zeta3": prof.zeta3,
                        "xi": v, "coarse": coarse})


def goldstein_tyurin(P, n: int, tol: Tolerance = DEFAULT_TOL) -> BoundReport:
    """zeta_1(P~^{*n} - N) <= nu_3(P~) / sqrt(n)."""
    prof = _profile(P, tol)
    if not math.isfinite(prof.nu3_std):
        return BoundReport("goldstein_tyurin", math.inf, False, "nu_3 infinite")
    return BoundReport("goldstein_tyurin", prof.nu3_std / math.sqrt(n),
                       n >= 1, "", {"nu3_std": prof.nu3_std})


def sampling_bound(population: LawSpec, n: int, N_pop: int,
                   diversity: Optional[int] = None,
                   tol: Tolerance = DEFAULT_TOL) -> Dict[str, BoundReport]:
    """Simple-random-sampling bounds for the empirical population law.

    Main form: (9/sqrt(n)) (zeta_1 v zeta_3)(P~ - N) + min((n-1)/2, d) n/N.
    Companion: the finite-population classical RHS
    82.4 nu_3(P~) / sqrt(n (N-n)/(N-1)).
    """
    if n > N_pop:
        raise ValueError("sample size exceeds population size")
    atoms = population.atoms()
    if not atoms or population.has_density:
        raise ValueError("sampling_bound needs a finite atomic population law")
    d = diversity if diversity is not None else len(atoms)
    if population.std == 0:
        return {"sampling_main": BoundReport("sampling_main", math.inf, False,
                                             "degenerate population (sigma = 0)"),
                "hoeglund": BoundReport("hoeglund", math.inf, False,
                                        "degenerate population (sigma = 0)")}
    prof = distance_profile(population, tol)
    main = (CONSTANTS.c_main / math.sqrt(n)) * prof.zeta13 \
        + min((n - 1) / 2.0, float(d)) * n / N_pop
    eff = n * (N_pop - n) / (N_pop - 1.0) if N_pop > 1 else float(n)
    hoeg = CONSTANTS.c_hoeglund * prof.nu3_std / math.sqrt(eff) if eff > 0 else math.inf
    return {
        "sampling_main": BoundReport("sampling_main", main, n >= 2,
                                     "" if n >= 2 else "needs n >= 2",
                                     {"zeta1": prof.zeta1, "zeta3": prof.zeta3,
                                      "diversity": d, "N": N_pop}),
        "hoeglund": BoundReport("hoeglund", hoeg, 0 < n < N_pop,
                                "" if 0 < n < N_pop else "needs 0 < n < N",
                                {"nu3_std": prof.nu3_std,
                                 "effective_n": eff}),
    }


def kolmogorov_normal_pair(sigma: float, tau: float) -> float:
    """|| N_sigma - N_tau ||_K = Phi(omega x) - Phi(x) in closed form."""
    if sigma <= 0 or tau <= 0:
        raise ValueError("normal pair needs sigma, tau > 0")
    lo, hi = min(sigma, tau), max(sigma, tau)
    omega = hi / lo
    if omega == 1.0:
        return 0.0
    from .numerics import std_normal_cdf
    x = math.sqrt(2.0 * math.log(omega) / (omega * omega - 1.0))
    return float(std_normal_cdf(omega * x) - std_normal_cdf(x))


ALL_BOUND_IDS = ("be_main", "be_main_all_n", "be_kappa", "be_zeta3_only",
                 "be_classical", "shiganov_combined", "zolotarev_zeta1",
                 "goldstein_tyurin")


def all_bounds(P, n: int, tol: Tolerance = DEFAULT_TOL) -> Dict[str, BoundReport]:
    """Every Kolmogorov-LHS bound (and the zeta_1-LHS ones) at once."""
    prof = _profile(P, tol)
    return {
        "be_main": be_main(prof, n, tol),
        "be_main_all_n": be_main_all_n(prof, n, tol),
        "be_kappa": be_kappa(prof, n, tol),
        "be_zeta3_only": be_zeta3_only(prof, n, tol),
        "be_classical": be_classical(prof, n, "c_Sh", tol),
        "shiganov_combined": shiganov_combined(prof, n, tol),
        "zolotarev_zeta1": zolotarev_zeta1_bound(prof, n, tol),
        "goldstein_tyurin": goldstein_tyurin(prof, n, tol),
    }
