#!/usr/bin/env python3
"""
Direct quasi-Monte Carlo estimate of m(1 + x_1 + ... + x_n).

Each batch is an independently scrambled Sobol point set on [0, 1)^n,
mapped to the torus. The estimate is the mean of batch means and the error
is the standard error over batches.
"""

import logging
from dataclasses import dataclass
from functools import partial

import numpy as np
from scipy.stats import qmc

from ..executors import SerialExecutor

logger = logging.getLogger(__name__)

DEFAULT_BATCHES = 16


@dataclass(frozen=True)
class DirectEstimate:
    n: int
    value: float
    stderr: float
    samples: int
    batches: int
    seed: int

    def to_json(self):
        return {'n': self.n, 'value': self.value, 'stderr': self.stderr,
                'samples': self.samples, 'batches': self.batches, 'seed': self.seed}


def _batch_mean(n, log2_size, rng):
    sampler = qmc.Sobol(d=n, scramble=True, seed=rng)
    u = sampler.random_base2(m=log2_size)
    values = 1 + np.exp(2j * np.pi * u).sum(axis=1)
    modulus = np.abs(values)
    # the zero set has measure zero; guard exact hits
    modulus = np.where(modulus > 0, modulus, np.finfo(float).tiny)
    return float(np.log(modulus).mean())


def mahler_direct(n, samples, seed=1, batches=DEFAULT_BATCHES, executor=None):
    """Estimate m(P) for P = 1 + x_1 + ... + x_n from `samples` torus points."""
    if not 1 <= n <= 4:
        raise ValueError(f"n must be between 1 and 4, got {n}")
    if batches < 2:
        raise ValueError("At least two batches are needed for an error estimate")
    per_batch = max(samples // batches, 2)
    log2_size = int(np.floor(np.log2(per_batch)))
    executor = executor or SerialExecutor()
    seeds = [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(batches)]
    means = np.array(executor.map(partial(_batch_mean, n, log2_size), seeds))
    value = float(means.mean())
    stderr = float(means.std(ddof=1) / np.sqrt(batches))
    used = batches * 2 ** log2_size
    logger.debug("mahler_direct n=%d: %d samples in %d batches, %.6g +- %.2g", n, used, batches, value, stderr)
    return DirectEstimate(n, value, stderr, used, batches, seed)
