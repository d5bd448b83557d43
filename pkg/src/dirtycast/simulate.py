"""Monte Carlo driver for the two-user binary precancellation scheme.

Each trial splits the symbol indices by a fair coin sequence A^n, precancels
user 1's interference where A_i = 1 and user 2's where A_i = 0, and decodes
both users by exact maximum likelihood over the whole codebook.  Trial t
draws all of its randomness from a generator seeded by (master_seed, t), so
results are bit-identical no matter how trials are batched across threads.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .binary import BinaryChannelSpec, IidInterference, FullyCorrelatedInterference, xor_convolve
from .core import binary_entropy

__all__ = ["InfeasibleRunError", "SchemeRun", "SchemeReport", "simulate_scheme"]

CODEBOOK_CAP = 2**20


class InfeasibleRunError(ValueError):
    """The requested codebook is too large for exact ML decoding."""


@dataclass(frozen=True)
class SchemeRun:
    """Parameters of one simulation campaign.

    rate=None runs measurement-only trials (empirical crossover and the
    plug-in mutual-information estimate) without building a codebook, which
    is how blocklengths far beyond the ML cap are exercised.  codebook is
    "iid" (fair-coin codewords) or "linear" (random linear code whose
    dimension is ceil(n*rate)).
    """

    n: int
    rate: float | None
    trials: int
    seed: int
    codebook: str = "iid"

    def __post_init__(self):
        if self.n < 2 or self.n % 2 != 0:
            raise ValueError("blocklength must be even and >= 2")
        if self.trials < 1:
            raise ValueError("need at least one trial")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must fit in 64 bits")
        if self.codebook not in ("iid", "linear"):
            raise ValueError("codebook must be 'iid' or 'linear'")
        if self.rate is not None:
            if not 0.0 < self.rate <= 1.0:
                raise ValueError("rate must lie in (0, 1]")
            if self.codewords > CODEBOOK_CAP:
                raise InfeasibleRunError(
                    f"{self.codewords} codewords exceed the ML cap of {CODEBOOK_CAP}"
                )

    @property
    def codewords(self) -> int | None:
        """Codebook size; ceil(2^(n*rate)), rounded up to a power of two for
        linear codebooks."""
        if self.rate is None:
            return None
        if self.codebook == "linear":
            return 2 ** math.ceil(self.n * self.rate - 1e-9)
        return math.ceil(2.0 ** (self.n * self.rate))


@dataclass(frozen=True)
class SchemeReport:
    """Pooled measurements of a simulation campaign.

    empirical_crossover is measured between Y1 and the sent codeword on the
    half precancelled for user 2; the frame error fields are None for
    measurement-only runs.
    """

    trials: int
    n: int
    codewords: int | None
    empirical_crossover: float
    interfered_samples: int
    empirical_mi_per_symbol: float
    predicted_mi_per_symbol: float
    frame_error_rate: float | None
    fer_user1: float | None
    fer_user2: float | None


def _draw_interference(rng, spec: BinaryChannelSpec, n: int):
    m = spec.model
    if isinstance(m, IidInterference):
        s = (rng.random((2, n)) < m.q).astype(np.uint8)
        return s[0], s[1]
    if isinstance(m, FullyCorrelatedInterference):
        s1 = (rng.random(n) < m.q).astype(np.uint8)
        return s1, (1 - s1 if m.flip else s1.copy())
    atom_list = [key for key, _ in m.pmf.atoms()]
    probs = np.array([p for _, p in m.pmf.atoms()])
    draw = rng.choice(len(atom_list), size=n, p=probs)
    table = np.array(atom_list, dtype=np.uint8)
    pair = table[draw]
    return pair[:, 0], pair[:, 1]


def _half_loglik(disagreements, size, crossover):
    """Log-likelihood of a BSC half given per-codeword disagreement counts."""
    d = disagreements.astype(float)
    if crossover == 0.0:
        return np.where(d == 0, 0.0, -np.inf)
    if crossover == 1.0:
        return np.where(d == size, 0.0, -np.inf)
    return d * math.log(crossover) + (size - d) * math.log(1.0 - crossover)


def _run_trial(rng, spec: BinaryChannelSpec, run: SchemeRun, cross_noisy: float):
    n = run.n
    noise_q = spec.noise_q or 0.0
    mask1 = rng.integers(0, 2, size=n, dtype=np.uint8).astype(bool)  # A_i = 1
    s1, s2 = _draw_interference(rng, spec, n)

    if run.rate is None:
        sent = rng.integers(0, 2, size=n, dtype=np.uint8)
        codebook, w = None, None
    else:
        m = run.codewords
        if run.codebook == "linear":
            k = int(math.log2(m))
            gen = rng.integers(0, 2, size=(k, n), dtype=np.uint8)
            messages = ((np.arange(m)[:, None] >> np.arange(k)[None, :]) & 1).astype(np.uint8)
            codebook = (messages @ gen) % 2
        else:
            codebook = rng.integers(0, 2, size=(m, n), dtype=np.uint8)
        w = int(rng.integers(0, m))
        sent = codebook[w]

    x = np.where(mask1, sent ^ s1, sent ^ s2)
    y1 = x ^ s1
    y2 = x ^ s2
    if noise_q > 0.0:
        y1 = y1 ^ (rng.random(n) < noise_q).astype(np.uint8)
        y2 = y2 ^ (rng.random(n) < noise_q).astype(np.uint8)

    noisy1 = ~mask1  # indices where user 1 sees S1 xor S2 (xor Z1)
    mismatches = int(np.count_nonzero((y1 != sent) & noisy1))
    samples = int(np.count_nonzero(noisy1))

    errs = (0, 0)
    if codebook is not None:
        decoded = []
        for y, clean in ((y1, mask1), (y2, ~mask1)):
            diff = codebook != y[None, :]
            d_clean = np.count_nonzero(diff & clean[None, :], axis=1)
            d_noisy = np.count_nonzero(diff & ~clean[None, :], axis=1)
            n_clean = int(np.count_nonzero(clean))
            score = _half_loglik(d_clean, n_clean, noise_q) + _half_loglik(
                d_noisy, n - n_clean, cross_noisy
            )
            decoded.append(int(np.argmax(score)))  # ties: lowest codeword index
        errs = (int(decoded[0] != w), int(decoded[1] != w))
    return mismatches, samples, errs


def simulate_scheme(
    spec: BinaryChannelSpec, run: SchemeRun, threads: int | None = None
) -> SchemeReport:
    """Simulate the precancellation scheme and pool results over all trials.

    The decoder knows the coin sequence of each trial and performs exact ML:
    perfect agreement is required on its clean half (up to channel noise)
    and disagreements on the interfered half are weighted by the crossover
    P(S1 xor S2 = 1) convolved with the noise.
    """
    if spec.k != 2:
        raise ValueError("the scheme simulation covers two users")
    threads = max(1, int(threads or 1))
    cross_noisy = xor_convolve(spec.xor_probability, spec.noise_q or 0.0)

    def worker(trial_indices):
        mism = samp = e1 = e2 = eu = 0
        for t in trial_indices:
            rng = np.random.default_rng(np.random.SeedSequence((int(run.seed), int(t))))
            m, s, (a, b) = _run_trial(rng, spec, run, cross_noisy)
            mism += m
            samp += s
            e1 += a
            e2 += b
            eu += int(a or b)
        return mism, samp, e1, e2, eu

    chunks = [range(i, run.trials, threads) for i in range(threads)]
    chunks = [c for c in chunks if len(c)]
    if len(chunks) == 1:
        parts = [worker(chunks[0])]
    else:
        with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
            parts = list(pool.map(worker, chunks))

    mismatches = sum(p[0] for p in parts)
    samples = sum(p[1] for p in parts)
    e1 = sum(p[2] for p in parts)
    e2 = sum(p[3] for p in parts)
    eu = sum(p[4] for p in parts)

    q_hat = mismatches / samples if samples else 0.0
    report_fer = run.rate is not None
    return SchemeReport(
        trials=run.trials,
        n=run.n,
        codewords=run.codewords,
        empirical_crossover=q_hat,
        interfered_samples=samples,
        empirical_mi_per_symbol=0.5 + 0.5 * (1.0 - binary_entropy(q_hat)),
        predicted_mi_per_symbol=0.5 + 0.5 * (1.0 - binary_entropy(cross_noisy)),
        frame_error_rate=eu / run.trials if report_fer else None,
        fer_user1=e1 / run.trials if report_fer else None,
        fer_user2=e2 / run.trials if report_fer else None,
    )
