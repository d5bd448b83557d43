"""Bounds for the noiseless/noisy binary multicast channel with additive
interference known only at the transmitter.

Covers the exact two-user capacity 1 - H(S1 xor S2)/2, the K-user upper and
lower bounds, the baseline rates (time-sharing, ignoring the side
information), the noisy two-user bound pair, and an exact evaluator for the
random-binning rate min_k I(U;Y_k) - I(U;S) together with the four-letter
auxiliary construction that achieves capacity.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .core import InvalidDistributionError, JointPmf, RateBound, binary_entropy

__all__ = [
    "IidInterference",
    "PairJointInterference",
    "FullyCorrelatedInterference",
    "BinaryChannelSpec",
    "xor_convolve",
    "xor_entropy",
    "capacity_two_user",
    "rate_timeshare",
    "rate_ignore_side_info",
    "joint_xor_entropy",
    "joint_xor_entropy_brute",
    "upper_bound_k",
    "lower_bound_k",
    "noisy_two_user_bounds",
    "xor_channel",
    "gp_rate",
    "capacity_achieving_joint",
]


@dataclass(frozen=True)
class IidInterference:
    """All K interference bits i.i.d. Bernoulli(q)."""

    q: float


@dataclass(frozen=True)
class PairJointInterference:
    """General joint law of (S1, S2) on {0,1}^2; two users only."""

    pmf: JointPmf


@dataclass(frozen=True)
class FullyCorrelatedInterference:
    """S1 ~ Bernoulli(q) with S2 = S1 (flip=False) or S2 = 1 - S1."""

    q: float
    flip: bool = False


@dataclass(frozen=True)
class BinaryChannelSpec:
    """Interference statistics for the binary channel Y_k = X xor S_k (xor Z_k).

    noise_q, when present, is the crossover probability of the i.i.d.
    channel noise bits Z_1, Z_2.
    """

    k: int
    model: object
    noise_q: float | None = None

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("user count must be >= 1")
        if isinstance(self.model, (IidInterference, FullyCorrelatedInterference)):
            if not 0.0 <= self.model.q <= 1.0:
                raise ValueError("interference probability must lie in [0, 1]")
        if isinstance(self.model, (PairJointInterference, FullyCorrelatedInterference)):
            if self.k != 2:
                raise ValueError("this interference model is defined for K=2 only")
        if isinstance(self.model, PairJointInterference):
            pmf = self.model.pmf
            if pmf.arity != 2 or any(s not in ((0, 0), (0, 1), (1, 0), (1, 1)) for s, _ in pmf.atoms()):
                raise ValueError("pair model needs a JointPmf over {0,1}^2")
        if self.noise_q is not None and not 0.0 <= self.noise_q <= 1.0:
            raise ValueError("noise crossover must lie in [0, 1]")

    @classmethod
    def iid(cls, q: float, k: int = 2, noise_q: float | None = None) -> "BinaryChannelSpec":
        return cls(k, IidInterference(q), noise_q)

    @classmethod
    def pair_joint(cls, pmf: JointPmf, noise_q: float | None = None) -> "BinaryChannelSpec":
        return cls(2, PairJointInterference(pmf), noise_q)

    @classmethod
    def fully_correlated(
        cls, q: float, flip: bool = False, noise_q: float | None = None
    ) -> "BinaryChannelSpec":
        return cls(2, FullyCorrelatedInterference(q, flip), noise_q)

    @property
    def noiseless(self) -> bool:
        return self.noise_q is None or self.noise_q == 0.0

    def marginal_one_probabilities(self) -> tuple:
        """P(S_k = 1) for each user."""
        m = self.model
        if isinstance(m, IidInterference):
            return (m.q,) * self.k
        if isinstance(m, FullyCorrelatedInterference):
            return (m.q, 1.0 - m.q if m.flip else m.q)
        p = dict(m.pmf.atoms())
        p1 = p.get((1, 0), 0.0) + p.get((1, 1), 0.0)
        p2 = p.get((0, 1), 0.0) + p.get((1, 1), 0.0)
        return (p1, p2)

    def pair_pmf(self) -> JointPmf:
        """Joint law of (S1, S2); defined for K=2 models."""
        if self.k != 2:
            raise ValueError("pair law requires K=2")
        m = self.model
        if isinstance(m, IidInterference):
            q = m.q
            return JointPmf(
                {
                    (0, 0): (1 - q) * (1 - q),
                    (0, 1): (1 - q) * q,
                    (1, 0): q * (1 - q),
                    (1, 1): q * q,
                }
            )
        if isinstance(m, FullyCorrelatedInterference):
            q = m.q
            if m.flip:
                return JointPmf({(0, 1): 1 - q, (1, 0): q})
            return JointPmf({(0, 0): 1 - q, (1, 1): q})
        return m.pmf

    @property
    def xor_probability(self) -> float:
        """q' = P(S1 xor S2 = 1), the crossover seen on the precancelled half."""
        m = self.model
        if isinstance(m, IidInterference):
            return 2.0 * m.q * (1.0 - m.q)
        if isinstance(m, FullyCorrelatedInterference):
            return 1.0 if m.flip else 0.0
        p = dict(m.pmf.atoms())
        return p.get((0, 1), 0.0) + p.get((1, 0), 0.0)


def xor_convolve(a: float, b: float) -> float:
    """Crossover of the xor of two independent Bernoulli bits."""
    return a * (1.0 - b) + b * (1.0 - a)


def xor_entropy(spec: BinaryChannelSpec) -> float:
    """H(S1 xor S2) in bits; defined for two users."""
    if spec.k != 2:
        raise ValueError("xor entropy is defined for K=2")
    return binary_entropy(spec.xor_probability)


def capacity_two_user(spec: BinaryChannelSpec) -> RateBound:
    """Exact two-user noiseless capacity 1 - H(S1 xor S2)/2."""
    if spec.k != 2:
        raise ValueError("two-user capacity requires K=2")
    if not spec.noiseless:
        raise ValueError("exact capacity is only known for the noiseless channel")
    return RateBound(1.0 - 0.5 * xor_entropy(spec), "exact", "xor-capacity")


def rate_timeshare(k: int) -> RateBound:
    """Precancel one user at a time over 1/K of the uses: rate 1/K."""
    if k < 1:
        raise ValueError("user count must be >= 1")
    return RateBound(1.0 / k, "lower", "time-sharing")


def rate_ignore_side_info(spec: BinaryChannelSpec) -> RateBound:
    """Transmitter ignores the interference: 1 - max_k H(S_k)."""
    worst = max(binary_entropy(p) for p in spec.marginal_one_probabilities())
    return RateBound(1.0 - worst, "lower", "ignore-side-info")


def joint_xor_entropy(k: int, q: float) -> float:
    """H(S1^S2, S1^S3, ..., S1^SK) in bits for i.i.d. Bernoulli(q) bits.

    Conditioning on S1 makes each weight-w pattern of the (K-1)-tuple carry
    probability (1-q) q^w (1-q)^(K-1-w) + q (1-q)^w q^(K-1-w), so the sum
    collapses to K weight classes.
    """
    if k < 2:
        raise ValueError("need at least two users")
    if not 0.0 <= q <= 1.0:
        raise ValueError("probability must lie in [0, 1]")
    m = k - 1
    total = 0.0
    for w in range(m + 1):
        p = (1 - q) * q**w * (1 - q) ** (m - w) + q * (1 - q) ** w * q ** (m - w)
        if p > 0.0:
            total -= math.comb(m, w) * p * math.log2(p)
    return total


def joint_xor_entropy_brute(k: int, q: float) -> float:
    """Brute-force oracle for joint_xor_entropy: enumerate all 2^(K-1) patterns."""
    if k < 2 or k > 24:
        raise ValueError("brute-force enumeration supported for 2 <= K <= 24")
    m = k - 1
    total = 0.0
    for pattern in itertools.product((0, 1), repeat=m):
        p = 0.0
        for s1 in (0, 1):
            ps1 = q if s1 == 1 else 1 - q
            term = ps1
            for b in pattern:
                sk = b ^ s1
                term *= q if sk == 1 else 1 - q
            p += term
        if p > 0.0:
            total -= p * math.log2(p)
    return total


def upper_bound_k(spec: BinaryChannelSpec) -> RateBound:
    """K-user upper bound 1 - H(S1^S2, ..., S1^SK)/K for i.i.d. interference."""
    if not isinstance(spec.model, IidInterference):
        raise ValueError("the K-user bound is stated for i.i.d. interference")
    if spec.k < 2:
        raise ValueError("need at least two users")
    if spec.k > 64:
        raise ValueError("K > 64 would overflow the weight enumeration")
    h = joint_xor_entropy(spec.k, spec.model.q)
    return RateBound(1.0 - h / spec.k, "upper", "joint-xor-converse")


def lower_bound_k(spec: BinaryChannelSpec) -> RateBound:
    """K-user achievable rate max{1 - H(S1), 1 - (1 - 1/K) H(S1 xor S2)}."""
    if not isinstance(spec.model, IidInterference):
        raise ValueError("the K-user bound is stated for i.i.d. interference")
    if spec.k < 2:
        raise ValueError("need at least two users")
    q = spec.model.q
    arm_ignore = 1.0 - binary_entropy(q)
    arm_blocks = 1.0 - (1.0 - 1.0 / spec.k) * binary_entropy(2.0 * q * (1.0 - q))
    return RateBound(max(arm_ignore, arm_blocks), "lower", "block-precancellation")


def noisy_two_user_bounds(spec: BinaryChannelSpec) -> tuple:
    """(achievable, upper) rates for the two-user channel with noise bits Z_k.

    achievable = 1 - H(S1^S2^Z1)/2 - H(Z1)/2
    upper      = 1 - H(S1^S2)/2   - H(Z1)/2
    """
    if spec.k != 2:
        raise ValueError("noisy bounds require K=2")
    if spec.noise_q is None:
        raise ValueError("noisy bounds need a noise crossover probability")
    p = spec.noise_q
    qx = spec.xor_probability
    lower = 1.0 - 0.5 * binary_entropy(xor_convolve(qx, p)) - 0.5 * binary_entropy(p)
    upper = 1.0 - 0.5 * binary_entropy(qx) - 0.5 * binary_entropy(p)
    return (
        RateBound(lower, "lower", "noisy-precancellation"),
        RateBound(upper, "upper", "noisy-converse"),
    )


def xor_channel(user: int):
    """Deterministic channel y = x xor s_user as a conditional pmf."""
    if user not in (1, 2):
        raise ValueError("user must be 1 or 2")

    def channel(x, s1, s2):
        return {x ^ (s1 if user == 1 else s2): 1.0}

    return channel


def gp_rate(joint: JointPmf, channels) -> float:
    """Evaluate min_k I(U;Y_k) - I(U;S1,S2) exactly from a discrete joint.

    joint is over (U, A, S1, S2, X); channels is one conditional pmf
    p(y|x,s1,s2) per user, given as a callable returning {y: prob}.  The
    chain U <-> (X,S) <-> Y_k holds structurally because each Y_k is drawn
    from (x, s1, s2) alone; conditionals that fail to normalize within 1e-9
    raise InvalidDistributionError.
    """
    if joint.arity != 5:
        raise ValueError("joint must cover (U, A, S1, S2, X)")
    for axis in range(5):
        if len({key[axis] for key, _ in joint.atoms()}) > 16:
            raise ValueError("supports above 16 atoms per variable are not supported")
    if not channels:
        raise ValueError("need at least one channel")

    i_us = joint.mutual_information((0,), (2, 3))
    rate = math.inf
    for channel in channels:
        uy: dict = {}
        for (u, _a, s1, s2, x), p in joint.atoms():
            if p == 0.0:
                continue
            cond = channel(x, s1, s2)
            total = math.fsum(float(cp) for cp in cond.values())
            if abs(total - 1.0) > 1e-9 or any(float(cp) < -1e-15 for cp in cond.values()):
                raise InvalidDistributionError(
                    f"channel conditional at x={x}, s=({s1},{s2}) sums to {total}"
                )
            for y, cp in cond.items():
                key = (u, y)
                uy[key] = uy.get(key, 0.0) + p * float(cp)
        i_uy = JointPmf(uy).mutual_information((0,), (1,))
        rate = min(rate, i_uy)
    return rate - i_us


def capacity_achieving_joint(spec: BinaryChannelSpec) -> JointPmf:
    """The four-letter auxiliary construction that meets the two-user capacity.

    A and X are fair coins independent of (S1, S2); U records the coin A
    together with the bit X xor S_A-side, i.e. U in {0,1,2,3} encodes
    (A=1, X^S1=1), (A=1, X^S1=0), (A=0, X^S2=1), (A=0, X^S2=0).
    """
    pair = spec.pair_pmf()
    atoms: dict = {}
    for (s1, s2), ps in pair.atoms():
        for a in (0, 1):
            for x in (0, 1):
                if a == 1:
                    u = 0 if (x ^ s1) == 1 else 1
                else:
                    u = 2 if (x ^ s2) == 1 else 3
                key = (u, a, s1, s2, x)
                atoms[key] = atoms.get(key, 0.0) + 0.25 * ps
    return JointPmf(atoms)
