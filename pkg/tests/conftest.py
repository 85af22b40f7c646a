import os
import random
import zlib

import pytest

DEFAULT_SEED = 20250809


def base_seed() -> int:
    return int(os.environ.get("FIBSEQ_SEED", DEFAULT_SEED))


@pytest.fixture
def rng(request) -> random.Random:
    """Deterministic per-test RNG; FIBSEQ_SEED overrides the base seed."""
    salt = zlib.crc32(request.node.nodeid.encode())
    return random.Random(base_seed() ^ salt)
