"""System-level reliability of a compiled circuit.

Failures are modeled as independent Bernoulli trials, one per emitted
instruction, at the instruction's calibrated error rate; the first
failure ends a run. Two metrics:

* PST — probability that a full pass over the instruction stream sees
  no failure.
* MIBF — expected number of instructions executed before the first
  failure, where error-free passes restart the program and keep
  accumulating, and the failing instruction itself is not counted.

Both are available in closed form and from a seeded Monte Carlo engine.
The engine assigns each trial a fixed-size counter slab of a single
counter-based generator keyed by the master seed, so results are
bit-identical for any trial chunking or worker count. Coherence (T1/T2)
numbers are never injected as failures.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .compiler import KIND_MEASURE, PhysicalCircuit

NON_TERMINATING_PST = 1e-3
TERMINATING = "terminating"
NON_TERMINATING = "non_terminating"

#: Mean restarts per failure beyond which Monte Carlo MIBF estimation is
#: abandoned in favor of the closed form (flagged in the result).
RESTART_CAP = 10_000

_CHUNK_TARGET_DRAWS = 1 << 22
_WILSON_Z = 1.959963984540054


@dataclass(frozen=True)
class ErrorModel:
    """Resolves each physical instruction to its failure probability.

    Readout (measurement) errors participate by default and can be
    excluded; one-qubit and CNOT errors always participate.
    """

    include_readout_errors: bool = True

    def failure_prob(self, instruction) -> float:
        if instruction.kind == KIND_MEASURE and not self.include_readout_errors:
            return 0.0
        return instruction.failure_prob

    def failure_probs(self, physical: PhysicalCircuit) -> np.ndarray:
        return np.array(
            [self.failure_prob(ins) for ins in physical.instructions], dtype=np.float64
        )


@dataclass(frozen=True)
class TrialStats:
    trials: int
    successes: int
    pst: float
    pst_ci95: float
    mibf: float
    mibf_is_analytic: bool
    metric_class: str
    seed: int


def classify_metric(pst: float) -> str:
    """Programs below 0.1% PST are treated as non-terminating (strict <)."""
    return NON_TERMINATING if pst < NON_TERMINATING_PST else TERMINATING


def analytic_pst(physical: PhysicalCircuit, model: ErrorModel) -> float:
    """Exact success probability under independent per-instruction errors."""
    prob = 1.0
    for ins in physical.instructions:
        prob *= 1.0 - model.failure_prob(ins)
    return prob


def analytic_mibf(physical: PhysicalCircuit, model: ErrorModel) -> float:
    """Closed-form mean instructions before the first failure.

    With s_i = 1 - e_i, prefix products S_k (S_0 = 1) and length L:

        MIBF = [ sum_k S_{k-1} (1 - s_k) (k - 1)  +  S_L * L ] / (1 - S_L)

    The first term covers failing passes (failing instruction excluded
    from the count), the second the error-free passes that restart the
    program. Returns ``inf`` when no instruction can fail.
    """
    length = len(physical.instructions)
    survive = 1.0
    acc = 0.0
    for k, ins in enumerate(physical.instructions, start=1):
        s = 1.0 - model.failure_prob(ins)
        acc += survive * (1.0 - s) * (k - 1)
        survive *= s
    if survive == 1.0:
        return math.inf
    return (acc + survive * length) / (1.0 - survive)


def _wilson_halfwidth(successes: int, trials: int) -> float:
    z = _WILSON_Z
    p = successes / trials
    denom = 1.0 + z * z / trials
    return (z / denom) * math.sqrt(p * (1.0 - p) / trials + z * z / (4.0 * trials * trials))


def _run_chunk(
    seed: int, start_trial: int, n_trials: int, slab: int, errors: np.ndarray
) -> tuple[int, int, int]:
    """Simulate trials [start, start+n): one Bernoulli per instruction.

    Returns (successes, failures, sum of instructions-before-failure).
    The generator is advanced to the chunk's slab so any partitioning of
    the trial range reproduces identical draws. Philox emits 4 outputs
    per counter step, hence the slab is a multiple of 4.
    """
    bitgen = np.random.Philox(key=seed)
    bitgen.advance((start_trial * slab) // 4)
    u = np.random.Generator(bitgen).random(n_trials * slab)
    u = u.reshape(n_trials, slab)[:, : errors.shape[0]]
    fail = u < errors
    failed = fail.any(axis=1)
    n_failed = int(failed.sum())
    ibf_sum = int(fail.argmax(axis=1)[failed].sum())
    return n_trials - n_failed, n_failed, ibf_sum


def monte_carlo(
    physical: PhysicalCircuit,
    model: ErrorModel,
    trials: int,
    seed: int,
    workers: int = 1,
) -> TrialStats:
    """Seeded Monte Carlo estimate of PST and MIBF.

    Each trial is one pass over the instruction stream. MIBF follows the
    restart procedure: passes are chained until a failure, accumulating
    the full instruction count of every error-free pass plus the failing
    pass's instructions before its failure. The estimate is the ratio of
    accumulated instructions to observed failures, which is exactly the
    mean over completed restart chains as trials grow, and reduces to
    integer sums so any chunk or worker arrangement yields identical
    output. When failures are too rare (none seen, or more than
    RESTART_CAP passes per failure), the closed form is reported instead
    and flagged.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    errors = model.failure_probs(physical)
    length = len(errors)

    if length == 0 or not errors.any():
        mibf = analytic_mibf(physical, model)
        return TrialStats(
            trials=trials,
            successes=trials,
            pst=1.0,
            pst_ci95=_wilson_halfwidth(trials, trials),
            mibf=mibf,
            mibf_is_analytic=True,
            metric_class=classify_metric(1.0),
            seed=seed,
        )

    slab = 4 * ((length + 3) // 4)
    chunk_trials = max(1, _CHUNK_TARGET_DRAWS // slab)
    tasks = [
        (seed, start, min(chunk_trials, trials - start), slab, errors)
        for start in range(0, trials, chunk_trials)
    ]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_chunk, *zip(*tasks)))
    else:
        results = [_run_chunk(*task) for task in tasks]

    successes = sum(r[0] for r in results)
    failures = sum(r[1] for r in results)
    ibf_sum = sum(r[2] for r in results)

    pst = successes / trials
    if failures == 0 or trials / failures > RESTART_CAP:
        mibf = analytic_mibf(physical, model)
        mibf_analytic = True
    else:
        mibf = (successes * length + ibf_sum) / failures
        mibf_analytic = False

    return TrialStats(
        trials=trials,
        successes=successes,
        pst=pst,
        pst_ci95=_wilson_halfwidth(successes, trials),
        mibf=mibf,
        mibf_is_analytic=mibf_analytic,
        metric_class=classify_metric(pst),
        seed=seed,
    )
