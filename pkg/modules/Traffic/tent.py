"""
A two-dimensional homogeneous system whose reduced eigenproblem is the tent
map y -> min(2y, 2 - 2y), and exact tent orbits with their histograms.
"""
from dataclasses import dataclass
from fractions import Fraction
import numpy as np
import logging
log = logging.getLogger(__name__)

from core.errors import BadConfig
from modules.Traffic.homogeneous import HomogeneousMap, Term, eigen_reduce

def tent_system():
    """
    x_1' = min(2 x_1 - x_2, 2 + 3 x_2 - 2 x_1), x_2' = x_2.
    """
    return HomogeneousMap(2, [
        [Term(0, {0: 2, 1: -1}), Term(2, {0: -2, 1: 3})],
        [Term(0, {1: 1})],
    ])

def tent_reduction():
    """
    Reduction of the tent system around its second coordinate, acting on
    y = x_1 - x_2.
    """
    return eigen_reduce(tent_system(), pivot=1)

def tent(y):
    return min(2 * y, 2 - 2 * y)

@dataclass
class TentRun(object):
    orbit: tuple
    histogram: np.ndarray

def _check(y0):
    y0 = Fraction(y0)
    if not 0 <= y0 <= 1:
        raise BadConfig('tent orbits start in [0, 1], got %s' % y0)
    return y0

def _bin_indices(y0, K, bins, orbit=None):
    """
    Bin of each of y_1, ..., y_K, iterating on numerators over the fixed
    denominator of y0.
    """
    p, q = y0.numerator, y0.denominator
    indices = np.empty(K, dtype=np.int64)
    for t in range(K):
        p = min(2 * p, 2 * q - 2 * p)
        indices[t] = min(p * bins // q, bins - 1)
        if orbit is not None:
            orbit.append(Fraction(p, q))
    return indices

def tent_trajectory(y0, K, bins=100):
    """
    Exact orbit y_0, ..., y_K and the histogram of y_1, ..., y_K over [0, 1].
    """
    y0 = _check(y0)
    if K < 1:
        raise ValueError('at least one step is needed')
    orbit = [y0]
    indices = _bin_indices(y0, K, bins, orbit)
    return TentRun(tuple(orbit), np.bincount(indices, minlength=bins))

def tent_histogram(y0s, K, bins=100):
    """
    Pooled histogram of several orbits of K steps each.
    """
    histogram = np.zeros(bins, dtype=np.int64)
    for y0 in y0s:
        histogram += np.bincount(_bin_indices(_check(y0), K, bins), minlength=bins)
    log.debug('pooled %d tent orbits of %d steps' % (len(y0s), K))
    return histogram
