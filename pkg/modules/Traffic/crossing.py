"""
Two circular roads of n cells sharing one crossing.

Road 1 is cells 1..n and road 2 cells n+1..2n; cells n and 2n are the
crossing. Cars leave the crossing onto cells 1 and n+1 by halves (routing
completion). Entries into the crossing are completed either by priority,
road 2 entering with what road 1 left, or by the same halving rule.
"""
from fractions import Fraction
import logging
log = logging.getLogger(__name__)

from core.errors import BadConfig
from modules.Traffic.homogeneous import HomogeneousMap, Term
from modules.Traffic.road import spread_cars

POLICIES = ('priority', 'fifty_fifty')
HALF = Fraction(1, 2)

def crossing_occupancy(n, cars):
    """
    Occupancy list for 1-based car positions; the crossing starts empty.
    """
    if n < 2:
        raise BadConfig('roads need at least two cells, got %d' % n)
    cars = list(cars)
    if len(set(cars)) != len(cars):
        raise BadConfig('overlapping car positions')
    a = [0] * (2 * n)
    for c in cars:
        if not 1 <= c <= 2 * n:
            raise BadConfig('car position %d outside cells 1..%d' % (c, 2 * n))
        if c in (n, 2 * n):
            raise BadConfig('the crossing cell %d must start empty' % c)
        a[c - 1] = 1
    return a

def place_cars(n, road1, road2):
    """
    1-based positions of evenly spread cars on the non-crossing cells.
    """
    if road1 > n - 1 or road2 > n - 1:
        raise BadConfig('at most %d cars fit on a road of %d cells' % (n - 1, n))
    return [p + 1 for p in spread_cars(n - 1, road1)] + \
           [n + p + 1 for p in spread_cars(n - 1, road2)]

def build_crossing(n, cars, policy='priority'):
    """
    Degree-one homogeneous map of the crossing system, coordinates x_1..x_2n
    at indices 0..2n-1.
    """
    if policy not in POLICIES:
        raise BadConfig('unknown crossing policy %r (expected %s)' % (policy, ', '.join(POLICIES)))
    a = crossing_occupancy(n, cars)
    free = [1 - v for v in a]

    def idx(c):
        return c - 1

    def A(c):
        return a[c - 1]

    def F(c):
        return free[c - 1]

    terms = [None] * (2 * n)
    for start, end in ((1, n), (n + 1, 2 * n)):
        for c in range(start + 1, end):
            terms[idx(c)] = [Term(A(c - 1), {idx(c - 1): 1}),
                             Term(F(c), {idx(c + 1): 1})]

    crossing = {idx(n): HALF, idx(2 * n): HALF}
    terms[idx(1)] = [Term(A(n), crossing), Term(F(1), {idx(2): 1})]
    terms[idx(n + 1)] = [Term(A(2 * n), crossing), Term(F(n + 1), {idx(n + 2): 1})]

    if policy == 'priority':
        entry1 = Term(F(n), {idx(1): 1, idx(n + 1): 1, idx(2 * n): -1})
        entry2 = Term(F(2 * n), {idx(1): 1, idx(n + 1): 1}, fresh={idx(n): -1})
    else:
        exits = {idx(1): HALF, idx(n + 1): HALF}
        entry1 = Term(Fraction(F(n), 2), exits)
        entry2 = Term(Fraction(F(2 * n), 2), exits)

    terms[idx(n)] = [entry1, Term(A(n - 1), {idx(n - 1): 1})]
    terms[idx(2 * n)] = [entry2, Term(A(2 * n - 1), {idx(2 * n - 1): 1})]

    log.debug('crossing with %d cells per road, %d cars, %s policy' % (n, sum(a), policy))
    return HomogeneousMap(2 * n, terms)
