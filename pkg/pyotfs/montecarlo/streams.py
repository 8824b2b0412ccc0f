# Copyright (c) 2024, The PyOTFS Authors. All rights reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Deterministic random substreams and block scheduling.

Trials are grouped in fixed blocks of BLOCK_TRIALS. Block b of stream s draws from a Philox generator keyed by
SeedSequence(master_seed, spawn_key=(s, b)), so the samples of a trial depend only on the master seed, the stream
and the trial index. Blocks may run on any number of threads; results are concatenated in block order.
"""
import concurrent.futures
import logging
import math
from typing import Callable, List

import numpy as np

from pyotfs.constants import BLOCK_TRIALS
from pyotfs.montecarlo.config import MCConfig

LOGGER = logging.getLogger(__name__)

BlockFn = Callable[[np.random.Generator, int], np.ndarray]


def substream(master_seed: int, stream_id: int, block_index: int) -> np.random.Generator:
    """Counter-based generator of one block of one stream.

    Args:
        master_seed: Root seed of the run
        stream_id: Independent stream (one per simulated quantity)
        block_index: Index of the block within the stream

    Returns:
        Philox-backed generator
    """
    seed_sequence = np.random.SeedSequence(master_seed, spawn_key=(stream_id, block_index))
    return np.random.Generator(np.random.Philox(seed_sequence))


def block_sizes(trials: int) -> List[int]:
    """Sizes of the consecutive blocks covering `trials` trials; only the last one may be short."""
    n_blocks = math.ceil(trials / BLOCK_TRIALS)
    return [min(BLOCK_TRIALS, trials - index * BLOCK_TRIALS) for index in range(n_blocks)]


def run_blocks(cfg: MCConfig, stream_id: int, block_fn: BlockFn) -> np.ndarray:
    """Run `block_fn(substream, size)` over every block and concatenate the results in block order.

    Args:
        cfg: Monte Carlo configuration
        stream_id: Stream the blocks draw from
        block_fn: Callable returning one result row per trial of its block

    Returns:
        Array with `cfg.trials` leading rows
    """
    sizes = block_sizes(cfg.trials)

    def _run(block_index: int) -> np.ndarray:
        return block_fn(substream(cfg.master_seed, stream_id, block_index), sizes[block_index])

    LOGGER.debug(f"Running {len(sizes)} blocks of stream {stream_id} on {cfg.workers} worker(s).")
    if cfg.workers == 1:
        results = [_run(block_index) for block_index in range(len(sizes))]
    else:
        with concurrent.futures.ThreadPoolExecutor(max_workers=cfg.workers, thread_name_prefix="pyotfs-mc") as pool:
            results = list(pool.map(_run, range(len(sizes))))
    return np.concatenate(results)
