# -----------------------------------------------------------------------------.
# MIT License

# Copyright (c) 2026 itsalab developers
#
# This file is part of itsalab.

# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in all
# copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.

# -----------------------------------------------------------------------------.
"""Counter-based random substreams.

Every random draw in itsalab comes from a PCG64 generator seeded by a
`numpy.random.SeedSequence` whose spawn key encodes *where* the draw is used
(condition, replication, unit). Streams never depend on execution order.
"""
import zlib

import numpy as np

RNG_NAME = "numpy.random.PCG64 via SeedSequence spawn keys"


def key_to_int(key: str) -> int:
    """Map a string key to a stable 32-bit integer."""
    return zlib.crc32(key.encode("utf-8"))


def make_seed_sequence(seed, *keys):
    """Build the seed sequence of a substream.

    Parameters
    ----------
    seed : int or numpy.random.SeedSequence
        Base seed. If a SeedSequence is given, keys extend its spawn key.
    *keys : int or str
        Substream coordinates. Strings are hashed with :func:`key_to_int`.
    """
    keys = tuple(key_to_int(k) if isinstance(k, str) else int(k) for k in keys)
    if isinstance(seed, np.random.SeedSequence):
        return np.random.SeedSequence(seed.entropy, spawn_key=tuple(seed.spawn_key) + keys)
    if seed is None:
        raise ValueError("A seed is required for reproducible substreams.")
    return np.random.SeedSequence(int(seed), spawn_key=keys)


def substream(seed, *keys):
    """Return a PCG64 generator for the substream identified by keys."""
    return np.random.Generator(np.random.PCG64(make_seed_sequence(seed, *keys)))
