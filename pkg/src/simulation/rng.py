"""
Counter-based random streams for the simulation study.

Each (seed, replicate, purpose) triple owns an independent Philox stream, so
a replicate draws the same numbers whichever worker runs it and whatever
else ran before.
"""

from enum import IntEnum

import numpy as np


class StreamPurpose(IntEnum):
    DATA = 0
    MISSINGNESS = 1


def replicate_generator(seed: int, replicate: int, purpose: StreamPurpose) -> np.random.Generator:
    sequence = np.random.SeedSequence(int(seed), spawn_key=(int(replicate), int(purpose)))
    return np.random.Generator(np.random.Philox(sequence))
