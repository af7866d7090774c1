"""Shared test helpers: a brute-force series oracle and seeded point draws."""

import math

import numpy as np

from g2theta.rng import SampleStream
from g2theta.theta import Point2

# point on the theta divisor of theta[00;11] at the default period matrix,
# found by Newton iteration on the u component; |theta| there is ~3e-16
DIVISOR_U = -0.05783644998375757 - 0.5473428289277064j
DIVISOR_V = 0.1 - 0.05j

BOX = (-0.5, 0.5, -0.2, 0.2)


def brute_theta2(c, point, tau, radius=30):
    """Two-variable theta by a plain double sum over a fixed wide box.

    Independent of the production truncation logic; used as the oracle.
    """
    idx = np.arange(-radius, radius + 1, dtype=float)
    p = (idx + 0.5 * c.a)[:, None]
    q = (idx + 0.5 * c.c)[None, :]
    expo = (
        tau.tau1 * p * p
        + tau.tau2 * q * q
        + 2.0 * tau.tau12 * p * q
        + 2.0 * (p * (point.u + 0.5 * c.b) + q * (point.v + 0.5 * c.d))
    )
    terms = np.exp(1j * math.pi * expo).ravel()
    return complex(math.fsum(terms.real), math.fsum(terms.imag))


def draw_points(seed, label, count):
    stream = SampleStream(seed, label)
    return [
        Point2(stream.next_complex(*BOX), stream.next_complex(*BOX))
        for _ in range(count)
    ]
