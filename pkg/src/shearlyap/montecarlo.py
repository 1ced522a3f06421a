"""Empirical estimators that validate the analytic bounds.

All randomness flows from numpy's Philox counter-based generator; the
stream for ensemble member e is keyed by (seed, e), so results are
bit-for-bit reproducible for a fixed config and identical whether the
ensembles run serially or in parallel.

The Lyapunov estimator is the textbook one-vector method: apply one of
the two shears per step (fair coin), renormalize periodically, accumulate
log norms.  The moment estimator for l(q) is honest about its known
weakness; the q-th moment is dominated by exponentially rare
trajectories, so the estimate is biased low once q * (spread of log
growth) becomes large compared to log(ensemble size).  Keep trajectories
short (the default caps them at 200 applications) and treat the reported
effective sample size warning seriously.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .linalg import DomainError, Regime, ShearParams, spectral_norm_batch

__all__ = [
    "McConfig",
    "McEstimate",
    "BlockStats",
    "RNG_ALGORITHM",
    "lyapunov_mc",
    "gle_mc",
    "standard_bound",
    "block_oracle",
]

RNG_ALGORITHM = "philox4x64 (numpy), stream keyed by (seed, ensemble index)"

_COIN_CHUNK = 1 << 16
_EXHAUSTIVE_MAX_K = 22
_GLE_TRAJ_CAP = 200


@dataclass(frozen=True)
class McConfig:
    """Monte Carlo effort and reproducibility knobs.

    n_steps counts matrix applications in total, split evenly across the
    n_ensembles independent trajectories (remainder dropped).  The
    standard error is estimated from the spread across ensembles.
    """

    n_steps: int
    n_ensembles: int = 32
    seed: int = 0
    renorm_every: int = 1

    def __post_init__(self):
        if self.n_steps < 1 or self.n_ensembles < 1 or self.renorm_every < 1:
            raise DomainError("n_steps, n_ensembles and renorm_every must be positive")
        if self.renorm_every > self.n_steps:
            raise DomainError("renorm_every must not exceed n_steps")
        if self.n_steps < self.n_ensembles:
            raise DomainError("need at least one step per ensemble member")


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_error: float
    n_samples: int


@dataclass(frozen=True)
class BlockStats:
    """Empirical statistics of the A^a B^b block decomposition."""

    mean_block_len: float
    p_eq: float
    p_gt: float
    p_lt: float
    lambda_est: float
    n_blocks: int


def _rng(seed: int, stream: int) -> np.random.Generator:
    return np.random.Generator(
        np.random.Philox(np.random.SeedSequence(entropy=seed, spawn_key=(stream,)))
    )


def _ensemble_rngs(cfg: McConfig) -> list[np.random.Generator]:
    return [_rng(cfg.seed, e) for e in range(cfg.n_ensembles)]


def _iterate_log_growth(params: ShearParams, cfg: McConfig, traj_len: int) -> np.ndarray:
    """Per-ensemble accumulated log |X_N| / |X_0| after traj_len coin steps.

    Starts from X_0 = (0, 1), which lies in the invariant cone of both
    regimes; the L2 norm is used for renormalization bookkeeping.
    """
    alpha, beta = params.alpha, params.beta
    E = cfg.n_ensembles
    rngs = _ensemble_rngs(cfg)
    u = np.zeros(E)
    v = np.ones(E)
    acc = np.zeros(E)
    done = 0
    step_in_cycle = 0
    while done < traj_len:
        n = min(_COIN_CHUNK, traj_len - done)
        coins = np.empty((n, E))
        for e, r in enumerate(rngs):
            coins[:, e] = r.integers(0, 2, size=n)
        for t in range(n):
            m = coins[t]
            u += beta * v * (1.0 - m)   # upper shear where the coin chose B
            v += alpha * u * m          # lower shear where it chose A
            step_in_cycle += 1
            if step_in_cycle == cfg.renorm_every:
                r2 = np.sqrt(u * u + v * v)
                acc += np.log(r2)
                u /= r2
                v /= r2
                step_in_cycle = 0
        done += n
    r2 = np.sqrt(u * u + v * v)
    acc += np.log(r2)
    return acc


def lyapunov_mc(params: ShearParams, cfg: McConfig) -> McEstimate:
    """Lyapunov exponent by renormalized vector iteration.

    Returns the mean per-step log growth over all trajectories and the
    standard error across the independent ensemble members.
    """
    traj_len = cfg.n_steps // cfg.n_ensembles
    acc = _iterate_log_growth(params, cfg, traj_len)
    means = acc / traj_len
    mean = float(means.mean())
    if cfg.n_ensembles > 1:
        se = float(means.std(ddof=1) / math.sqrt(cfg.n_ensembles))
    else:
        se = float("nan")
    return McEstimate(mean=mean, std_error=se, n_samples=cfg.n_ensembles)


def gle_mc(
    q: float,
    params: ShearParams,
    cfg: McConfig,
    traj_len_cap: int | None = _GLE_TRAJ_CAP,
    n_bootstrap: int = 200,
) -> McEstimate:
    """Moment growth rate  (1/N) log E |X_N|^q  from an ensemble of trajectories.

    Per-trajectory log norms are combined by log-sum-exp, and the standard
    error comes from a bootstrap over ensemble members.  Warns when the
    importance weights concentrate on too few trajectories (small effective
    sample size), the telltale of the moment estimator's exponential
    variance problem.
    """
    traj_len = cfg.n_steps // cfg.n_ensembles
    if traj_len_cap is not None:
        traj_len = min(traj_len, traj_len_cap)
    acc = _iterate_log_growth(params, cfg, traj_len)

    z = q * acc
    mx = z.max()
    w = np.exp(z - mx)

    def combine(weights: np.ndarray) -> float:
        return (mx + math.log(weights.mean())) / traj_len

    est = combine(w)
    ess = float(w.sum() ** 2 / (w * w).sum())
    threshold = max(8.0, 0.02 * cfg.n_ensembles)
    if q != 0 and ess < threshold:
        warnings.warn(
            f"effective sample size {ess:.1f} of {cfg.n_ensembles} trajectories; "
            "the moment estimate is likely biased low (rare large excursions "
            "dominate). Reduce the trajectory length or add ensembles.",
            RuntimeWarning,
            stacklevel=2,
        )
    boot_rng = _rng(cfg.seed, 1 << 30)
    E = cfg.n_ensembles
    reps = np.empty(n_bootstrap)
    for i in range(n_bootstrap):
        reps[i] = combine(w[boot_rng.integers(0, E, size=E)])
    return McEstimate(mean=est, std_error=float(reps.std(ddof=1)), n_samples=E)


def _renorm(P: np.ndarray, logacc: np.ndarray) -> None:
    mu = np.abs(P).max(axis=(1, 2))
    P /= mu[:, None, None]
    logacc += np.log(mu)


def standard_bound(
    k: int,
    params: ShearParams,
    mode: str = "exhaustive",
    n_samples: int = 100_000,
    seed: int = 0,
) -> float:
    """Classical submultiplicative upper bound E_k = (1/k) E log |C|_2.

    "exhaustive" averages over all 2^k products of length k (k <= 22 cost
    guard); "sampled" draws n_samples uniform products.  E_k decreases to
    the Lyapunov exponent as k grows.
    """
    if k < 1:
        raise DomainError(f"k must be positive, got {k}")
    A = np.array([[1.0, 0.0], [params.alpha, 1.0]])
    B = np.array([[1.0, params.beta], [0.0, 1.0]])

    if mode == "exhaustive":
        if k > _EXHAUSTIVE_MAX_K:
            raise DomainError(
                f"exhaustive mode enumerates 2^k products; k = {k} exceeds the "
                f"cost guard {_EXHAUSTIVE_MAX_K} (use mode='sampled')"
            )
        P = np.stack([A, B])
        logacc = np.zeros(2)
        for _ in range(k - 1):
            P = np.concatenate(
                [np.einsum("ij,njk->nik", A, P), np.einsum("ij,njk->nik", B, P)]
            )
            logacc = np.concatenate([logacc, logacc])
            _renorm(P, logacc)
        vals = (np.log(spectral_norm_batch(P)) + logacc) / k
        return float(vals.mean())

    if mode != "sampled":
        raise DomainError(f"mode must be 'exhaustive' or 'sampled', got {mode!r}")
    rng = _rng(seed, 1 << 29)
    P = np.broadcast_to(np.eye(2), (n_samples, 2, 2)).copy()
    logacc = np.zeros(n_samples)
    for t in range(k):
        coin = rng.integers(0, 2, size=n_samples).astype(bool)
        PA = np.einsum("ij,njk->nik", A, P)
        PB = np.einsum("ij,njk->nik", B, P)
        P = np.where(coin[:, None, None], PA, PB)
        if (t + 1) % 32 == 0:
            _renorm(P, logacc)
    vals = (np.log(spectral_norm_batch(P)) + logacc) / k
    return float(vals.mean())


def _run_lengths(coins: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Run-length encode a boolean coin stream: (lengths, first-run value)."""
    change = np.flatnonzero(coins[1:] != coins[:-1])
    starts = np.concatenate([[0], change + 1])
    lengths = np.diff(np.concatenate([starts, [coins.size]]))
    return lengths, coins[0]


def block_oracle(params: ShearParams, cfg: McConfig) -> BlockStats:
    """Group raw coin streams into A^a B^b blocks and report their statistics.

    Checks the geometric block law empirically: mean block length 4, the
    three order comparisons P(a=b), P(a>b), P(a<b) each 1/3, and a Lyapunov
    estimate from the block products that must agree with lyapunov_mc.
    """
    per_stream = cfg.n_steps // cfg.n_ensembles
    rngs = _ensemble_rngs(cfg)

    a_streams: list[np.ndarray] = []
    b_streams: list[np.ndarray] = []
    n_blocks = 0
    sum_len = 0
    n_eq = n_gt = n_lt = 0
    for r in rngs:
        coins = r.integers(0, 2, size=per_stream).astype(bool)  # True -> A
        lengths, first_is_a = _run_lengths(coins)
        if not first_is_a:
            lengths = lengths[1:]  # leading B-run belongs to an unseen block
        pairs = lengths.size // 2
        if pairs >= 1:
            pairs -= 1  # final block may be truncated by the stream end
        a = lengths[0 : 2 * pairs : 2]
        b = lengths[1 : 2 * pairs : 2]
        n_blocks += pairs
        sum_len += int(a.sum() + b.sum())
        n_eq += int((a == b).sum())
        n_gt += int((a > b).sum())
        n_lt += int((a < b).sum())
        a_streams.append(a.astype(np.int32))
        b_streams.append(b.astype(np.int32))

    if n_blocks == 0:
        raise DomainError("coin streams too short to form a single complete block")

    # Lyapunov estimate from the block products, vectorized across streams
    J = min(a.size for a in a_streams)
    alpha, beta = params.alpha, params.beta
    E = cfg.n_ensembles
    u = np.zeros(E)
    v = np.ones(E)
    acc = np.zeros(E)
    steps = 0
    if J > 0:
        a_mat = np.stack([s[:J] for s in a_streams]).astype(float)
        b_mat = np.stack([s[:J] for s in b_streams]).astype(float)
        steps = float(a_mat.sum() + b_mat.sum())
        for j in range(J):
            x = a_mat[:, j] * alpha
            y = b_mat[:, j] * beta
            u, v = u + y * v, x * u + (1.0 + x * y) * v
            r2 = np.sqrt(u * u + v * v)
            acc += np.log(r2)
            u /= r2
            v /= r2
    lambda_est = float(acc.sum() / steps) if steps else float("nan")

    return BlockStats(
        mean_block_len=sum_len / n_blocks,
        p_eq=n_eq / n_blocks,
        p_gt=n_gt / n_blocks,
        p_lt=n_lt / n_blocks,
        lambda_est=lambda_est,
        n_blocks=n_blocks,
    )
