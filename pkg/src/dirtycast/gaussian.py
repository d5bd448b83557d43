"""Bounds for the two-user (and K-user) Gaussian multicast channel
Y_k = X + S_k + Z_k with transmitter-known interference.

P is the SNR, Q the INR, noise power normalized to 1, logs base 2.  The two
closed-form upper bounds carry an internal noise-correlation parameter rho
that the closed forms fix at their branch-optimal value; the *_at_rho
variants expose the raw objectives so numeric minimizers can cross-check
the closed forms.  The achievable side is superposition dirty-paper coding
over the split S_k = A +/- D, with a covariance-based oracle that
reproduces the two codebook rates from first principles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import GaussianCov, RateBound, ScalarInterval, gaussian_mi, minimize_scalar

__all__ = [
    "GaussianChannelSpec",
    "PowerSplit",
    "awgn_capacity",
    "rate_timeshare",
    "rate_interference_as_noise",
    "upper_i_at_rho",
    "upper_i",
    "upper_ii_at_rho",
    "upper_ii",
    "upper_envelope",
    "rate_of_split",
    "lower_bound",
    "minimize_upper_i_rho",
    "minimize_upper_ii_rho",
    "maximize_power_split",
    "dpc_covariance",
    "dpc_scheme_oracle",
    "z_sum_difference_cov",
    "upper_k_raw",
    "upper_k",
    "universal_gap",
    "gap",
    "high_sinr_asymptote",
    "feedback_bounds",
]


@dataclass(frozen=True)
class GaussianChannelSpec:
    """SNR/INR operating point, user count and optional fixed noise correlation."""

    p: float
    q: float
    k: int = 2
    rho: float | None = None

    def __post_init__(self):
        if not (math.isfinite(self.p) and math.isfinite(self.q)):
            raise ValueError("P and Q must be finite")
        if self.p < 0 or self.q < 0:
            raise ValueError("P and Q must be nonnegative")
        if self.k < 2:
            raise ValueError("user count must be >= 2")
        if self.rho is not None and not -1.0 <= self.rho <= 1.0:
            raise ValueError("noise correlation must lie in [-1, 1]")


@dataclass(frozen=True)
class PowerSplit:
    """(P_A, P_D) power allocation for the superposition scheme."""

    p_a: float
    p_d: float

    def __post_init__(self):
        if self.p_a < 0 or self.p_d < 0:
            raise ValueError("powers must be nonnegative")

    @property
    def total(self) -> float:
        return self.p_a + self.p_d


def awgn_capacity(p: float) -> float:
    """Interference-free point-to-point rate, the trivial upper bound."""
    return 0.5 * math.log2(1.0 + p)


def rate_timeshare(p: float) -> RateBound:
    """Serve each user on half the uses with full precancellation: log(1+P)/4."""
    if p < 0:
        raise ValueError("P must be nonnegative")
    return RateBound(0.25 * math.log2(1.0 + p), "lower", "time-sharing")


def rate_interference_as_noise(p: float, q: float) -> RateBound:
    """Fold the interference into the noise: log2(1 + P/(Q+1))/2."""
    if p < 0 or q < 0:
        raise ValueError("P and Q must be nonnegative")
    return RateBound(0.5 * math.log2(1.0 + p / (q + 1.0)), "lower", "interference-as-noise")


def upper_i_at_rho(p: float, q: float, rho: float) -> float:
    """Genie-argument upper bound at a fixed noise correlation rho.

    log2((1+P)/(1+rho))/4 + log2((P+Q+1+2 sqrt(PQ))/(Q/2+1-rho))/4;
    +inf where a denominator closes (rho at the ends of [-1,1])."""
    d1 = 1.0 + rho
    d2 = q / 2.0 + 1.0 - rho
    if d1 <= 0.0 or d2 <= 0.0:
        return math.inf
    big = p + q + 1.0 + 2.0 * math.sqrt(p * q)
    return 0.25 * math.log2((1.0 + p) / d1) + 0.25 * math.log2(big / d2)


def upper_i(p: float, q: float) -> RateBound:
    """Closed form of the rho-minimized genie bound (branch split at Q=4)."""
    if p < 0 or q < 0:
        raise ValueError("P and Q must be nonnegative")
    big = p + q + 1.0 + 2.0 * math.sqrt(p * q)
    if q >= 4.0:
        value = 0.25 * math.log2(1.0 + p) + 0.25 * math.log2(big / q)
    else:
        den = q / 4.0 + 1.0
        value = 0.25 * math.log2((1.0 + p) / den) + 0.25 * math.log2(big / den)
    return RateBound(value, "upper", "upper-I")


def upper_ii_at_rho(p: float, q: float, rho: float) -> float:
    """Joint-output upper bound at a fixed noise correlation rho.

    log2((P+Q+2 sqrt(PQ)+1)/sqrt((1+rho)(Q+1-rho)))/2
      - [log2(Q/(2P+1+rho))/4]^+."""
    prod = (1.0 + rho) * (q + 1.0 - rho)
    if prod <= 0.0:
        return math.inf
    big = p + q + 2.0 * math.sqrt(p * q) + 1.0
    main = 0.5 * math.log2(big / math.sqrt(prod))
    penalty = 0.0
    if q > 0.0:
        penalty = max(0.0, 0.25 * math.log2(q / (2.0 * p + 1.0 + rho)))
    return main - penalty


def upper_ii(p: float, q: float) -> RateBound:
    """Closed form of the joint-output bound (branch split at Q=2).

    Uses the branch-optimal rho = min(Q/2, 1) of the leading term; when the
    [.]^+ correction is active at small P the exact minimum over rho of the
    raw objective can sit strictly below this closed form, which stays a
    valid upper bound either way (see minimize_upper_ii_rho).
    """
    if p < 0 or q < 0:
        raise ValueError("P and Q must be nonnegative")
    big = p + q + 2.0 * math.sqrt(p * q) + 1.0
    if q <= 2.0:
        value = 0.5 * math.log2(big / (1.0 + q / 2.0))
    else:
        value = 0.5 * math.log2(big / math.sqrt(2.0 * q)) - max(
            0.0, 0.25 * math.log2(q / (2.0 * p + 2.0))
        )
    return RateBound(value, "upper", "upper-II")


def upper_envelope(p: float, q: float) -> RateBound:
    """min of the two correlation bounds and the trivial bound log2(1+P)/2."""
    value = min(upper_i(p, q).value, upper_ii(p, q).value, awgn_capacity(p))
    return RateBound(value, "upper", "envelope")


def rate_of_split(split: PowerSplit, q: float) -> float:
    """Rate of the superposition scheme at a power split:

    log2(1 + P_A/(P_D+Q/2+1))/2 + log2(1+P_D)/4."""
    if q < 0:
        raise ValueError("Q must be nonnegative")
    common = 0.5 * math.log2(1.0 + split.p_a / (split.p_d + q / 2.0 + 1.0))
    private = 0.25 * math.log2(1.0 + split.p_d)
    return common + private


def lower_bound(p: float, q: float) -> RateBound:
    """Best superposition-DPC rate over all power splits, in closed form.

    Three regimes: pure DPC against the common interference part (Q/2 < 1),
    a mixed split (1 <= Q/2 < P+1), and pure time-sharing (Q/2 >= P+1).
    """
    if p < 0 or q < 0:
        raise ValueError("P and Q must be nonnegative")
    half_q = q / 2.0
    if half_q < 1.0:
        value = 0.5 * math.log2(1.0 + p / (half_q + 1.0))
    elif half_q < p + 1.0:
        value = 0.5 * math.log2((p + half_q + 1.0) / q) + 0.25 * math.log2(half_q)
    else:
        value = 0.25 * math.log2(1.0 + p)
    return RateBound(value, "lower", "superposition-dpc")


def minimize_upper_i_rho(p: float, q: float):
    """Numeric minimizer of the genie bound over rho; returns (rho, bits)."""
    return minimize_scalar(lambda r: upper_i_at_rho(p, q, r), ScalarInterval(-1.0, 1.0))


def minimize_upper_ii_rho(p: float, q: float):
    """Numeric minimizer of the joint-output bound over rho; returns (rho, bits)."""
    return minimize_scalar(lambda r: upper_ii_at_rho(p, q, r), ScalarInterval(-1.0, 1.0))


def maximize_power_split(p: float, q: float, points: int = 200, refinements: int = 3):
    """Grid oracle for the best power split: a points x points sweep of the
    simplex {P_A, P_D >= 0, P_A+P_D <= P} followed by local re-gridding
    around the incumbent.  Returns (PowerSplit, bits)."""
    if p < 0 or q < 0:
        raise ValueError("P and Q must be nonnegative")
    if p == 0.0:
        return PowerSplit(0.0, 0.0), 0.0

    lo_a, hi_a, lo_d, hi_d = 0.0, p, 0.0, p
    best = (0.0, 0.0, -math.inf)
    for _ in range(1 + refinements):
        pa = np.linspace(lo_a, hi_a, points)
        pd = np.linspace(lo_d, hi_d, points)
        a, d = np.meshgrid(pa, pd, indexing="ij")
        feasible = a + d <= p + 1e-12
        rate = 0.5 * np.log2(1.0 + a / (d + q / 2.0 + 1.0)) + 0.25 * np.log2(1.0 + d)
        rate = np.where(feasible, rate, -np.inf)
        i, j = np.unravel_index(int(np.argmax(rate)), rate.shape)
        if rate[i, j] > best[2]:
            best = (float(a[i, j]), float(d[i, j]), float(rate[i, j]))
        step_a = (hi_a - lo_a) / (points - 1)
        step_d = (hi_d - lo_d) / (points - 1)
        lo_a, hi_a = max(0.0, best[0] - step_a), min(p, best[0] + step_a)
        lo_d, hi_d = max(0.0, best[1] - step_d), min(p, best[1] + step_d)
    split = PowerSplit(best[0], best[1])
    return split, rate_of_split(split, q)


# Index map of the factor representation used by the scheme oracle.
_DPC_VARS = {"x_a": 0, "x_d": 1, "a": 2, "d": 3, "z": 4, "u_a": 5, "u_d": 6, "y1": 7}


def dpc_covariance(split: PowerSplit, q: float):
    """Joint covariance of (X_A, X_D, A, D, Z, U_A, U_D, Y1) for the scheme.

    A and D are the half-sum/half-difference interference parts, each of
    variance Q/2; U_A = X_A + alpha_A A with alpha_A = P_A/(P+Q/2+1);
    U_D = X_D + alpha_D((1-alpha_A)A + D) with alpha_D = P_D/(P_D+1).
    Returns (GaussianCov, name->index map).
    """
    if q < 0:
        raise ValueError("Q must be nonnegative")
    p = split.total
    alpha_a = split.p_a / (p + q / 2.0 + 1.0)
    alpha_d = split.p_d / (split.p_d + 1.0)
    variances = [split.p_a, split.p_d, q / 2.0, q / 2.0, 1.0]
    coeffs = np.array(
        [
            [1.0, 0.0, 0.0, 0.0, 0.0],  # X_A
            [0.0, 1.0, 0.0, 0.0, 0.0],  # X_D
            [0.0, 0.0, 1.0, 0.0, 0.0],  # A
            [0.0, 0.0, 0.0, 1.0, 0.0],  # D
            [0.0, 0.0, 0.0, 0.0, 1.0],  # Z
            [1.0, 0.0, alpha_a, 0.0, 0.0],  # U_A
            [0.0, 1.0, alpha_d * (1.0 - alpha_a), alpha_d, 0.0],  # U_D
            [1.0, 1.0, 1.0, 1.0, 1.0],  # Y1 = X_A+X_D+A+D+Z
        ]
    )
    return GaussianCov.from_factors(coeffs, variances), dict(_DPC_VARS)


def dpc_scheme_oracle(split: PowerSplit, q: float):
    """Binning rates of the two codebooks, from the covariance alone.

    r_a = I(U_A;Y1) - I(U_A;A) and r_d = I(U_D;Y1,U_A) - I(U_D;A,D); these
    must equal log2(1+P_A/(P_D+Q/2+1))/2 and log2(1+P_D)/2.  Degenerate
    splits (a zero power or Q = 0) collapse the corresponding blocks to
    constants, whose mutual-information terms are 0 by convention.
    """
    cov, ix = dpc_covariance(split, q)
    if split.p_a == 0.0:
        r_a = 0.0
    else:
        r_a = gaussian_mi(cov, [ix["u_a"]], [ix["y1"]])
        if q > 0.0:
            r_a -= gaussian_mi(cov, [ix["u_a"]], [ix["a"]])
    if split.p_d == 0.0:
        r_d = 0.0
    else:
        side = [ix["y1"]] if split.p_a == 0.0 else [ix["y1"], ix["u_a"]]
        r_d = gaussian_mi(cov, [ix["u_d"]], side)
        if q > 0.0:
            r_d -= gaussian_mi(cov, [ix["u_d"]], [ix["a"], ix["d"]])
    return r_a, r_d


def z_sum_difference_cov(rho: float) -> np.ndarray:
    """Covariance of ((Z1+Z2)/sqrt2, (Z1-Z2)/sqrt2) for unit noises with
    correlation rho: exactly diag(1+rho, 1-rho).

    Computed as A Sigma A^T / 2 with integer A = [[1,1],[1,-1]] so the
    off-diagonal cancellation and the halving are exact in floating point.
    """
    if not -1.0 <= rho <= 1.0:
        raise ValueError("correlation must lie in [-1, 1]")
    a = np.array([[1.0, 1.0], [1.0, -1.0]])
    sigma = np.array([[1.0, rho], [rho, 1.0]])
    return (a @ sigma @ a.T) / 2.0


def upper_k_raw(p: float, q: float, k: int) -> float:
    """Uncapped K-user converse expression (diverges as Q -> 0):

    log2(P+Q+1+2 sqrt(PQ))/2 - (K-1)/(2K) log2 Q - log2(K)/(2K)
      - [log2(Q/(K(P+1)))/(2K)]^+."""
    if k < 2:
        raise ValueError("user count must be >= 2")
    if p < 0 or q < 0:
        raise ValueError("P and Q must be nonnegative")
    if q == 0.0:
        return math.inf
    big = p + q + 1.0 + 2.0 * math.sqrt(p * q)
    value = (
        0.5 * math.log2(big)
        - (k - 1) / (2.0 * k) * math.log2(q)
        - math.log2(k) / (2.0 * k)
        - max(0.0, math.log2(q / (k * (p + 1.0))) / (2.0 * k))
    )
    return value


def upper_k(p: float, q: float, k: int) -> RateBound:
    """K-user upper bound, capped by the trivial bound where the converse
    expression is vacuous (small Q)."""
    value = min(upper_k_raw(p, q, k), awgn_capacity(p))
    return RateBound(value, "upper", f"upper-K{k}")


def universal_gap() -> float:
    """Worst-case upper-II minus lower-bound gap over all (P, Q):
    log2(3/2 + sqrt 2)/2 ~= 0.7716."""
    return 0.5 * math.log2(1.5 + math.sqrt(2.0))


def gap(p: float, q: float) -> float:
    """upper_ii minus lower_bound at one operating point."""
    return upper_ii(p, q).value - lower_bound(p, q).value


def high_sinr_asymptote(p: float, q: float) -> float:
    """Capacity asymptote for P -> infinity at fixed Q:

    log2(P/sqrt(2Q))/2 for Q > 2, log2(P/(1+Q/2))/2 for Q <= 2."""
    if p <= 0:
        raise ValueError("P must be positive")
    if q < 0:
        raise ValueError("Q must be nonnegative")
    if q > 2.0:
        return 0.5 * math.log2(p / math.sqrt(2.0 * q))
    return 0.5 * math.log2(p / (1.0 + q / 2.0))


def feedback_bounds(p: float, q: float, rho_actual: float):
    """Both upper bounds evaluated at the channel's actual noise correlation.

    With causal feedback the correlation is no longer a free analysis
    parameter, so the bounds hold only at the true rho."""
    if not -1.0 <= rho_actual <= 1.0:
        raise ValueError("correlation must lie in [-1, 1]")
    return (
        RateBound(upper_i_at_rho(p, q, rho_actual), "upper", "upper-I-feedback"),
        RateBound(upper_ii_at_rho(p, q, rho_actual), "upper", "upper-II-feedback"),
    )
