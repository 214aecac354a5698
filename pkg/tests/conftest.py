import math

import numpy as np
import pytest

from gclink.geom4 import GreatCircle, circle_distance


def coprime_pairs(q_max, q_min=2):
    """All (p, q) with q_min <= q <= q_max, 0 < p < q, gcd(p, q) = 1."""
    return [(p, q) for q in range(q_min, q_max + 1)
            for p in range(1, q) if math.gcd(p, q) == 1]


def random_great_circle(rng) -> GreatCircle:
    m, _ = np.linalg.qr(rng.normal(size=(4, 4)))
    return GreatCircle(m[:, 0], m[:, 1])


def random_disjoint_pair(rng, min_angle=1e-6):
    """Two random circles, rejecting near-intersecting pairs."""
    while True:
        c1 = random_great_circle(rng)
        c2 = random_great_circle(rng)
        if circle_distance(c1, c2) >= min_angle:
            return c1, c2


@pytest.fixture(scope="session")
def rng():
    return np.random.Generator(np.random.PCG64(20240311))
