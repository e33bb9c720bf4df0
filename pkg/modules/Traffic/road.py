"""
A single circular road: the 10 -> 01 exclusion process and its min-plus
event-graph model.
"""
from dataclasses import dataclass
from fractions import Fraction
import logging
log = logging.getLogger(__name__)

from core.errors import BadConfig
from modules.Traffic.homogeneous import HomogeneousMap, Term

@dataclass(frozen=True)
class RingWord(object):
    """
    Occupied (1) and free (0) cells of a circular road.
    """
    bits: tuple

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if len(bits) < 2:
            raise BadConfig('a ring needs at least two cells')
        if any(b not in (0, 1) for b in bits):
            raise BadConfig('ring cells are 0 or 1')
        object.__setattr__(self, 'bits', bits)

    @classmethod
    def of(cls, text):
        return cls(tuple(int(c) for c in text.strip()))

    def __len__(self):
        return len(self.bits)

    @property
    def cars(self):
        return sum(self.bits)

    @property
    def density(self):
        return Fraction(self.cars, len(self.bits))

    def __str__(self):
        return ''.join(str(b) for b in self.bits)

def exclusion_step(word):
    """
    Every car followed by a free cell moves, simultaneously. Returns the new
    word and the number of cars moved.
    """
    bits = word.bits
    m = len(bits)
    moving = [bits[i] == 1 and bits[(i + 1) % m] == 0 for i in range(m)]

    new = list(bits)
    for i in range(m):
        if moving[i]:
            new[i] = 0
            new[(i + 1) % m] = 1
    return RingWord(tuple(new)), sum(moving)

def exclusion_run(word, steps):
    """
    Trajectory w_0, ..., w_steps and the flow (cars moved / cells) of each
    step.
    """
    if steps < 0:
        raise ValueError('steps must be nonnegative')
    trajectory = [word]
    flows = []
    for _ in range(steps):
        word, moved = exclusion_step(word)
        trajectory.append(word)
        flows.append(Fraction(moved, len(word)))
    return trajectory, flows

def road_terms(a):
    """
    x_i' = min(a_{i-1} + x_{i-1}, (1 - a_i) + x_{i+1}) on the circle.
    """
    m = len(a)
    return [[Term(a[i - 1], {(i - 1) % m: 1}), Term(1 - a[i], {(i + 1) % m: 1})]
            for i in range(m)]

def road_event_graph(a):
    """
    Min-plus linear counter dynamics of a circular road with occupancy a.
    Its eigenvalue is min(n/m, (m - n)/m, 1/2) for n cars on m cells.
    """
    if isinstance(a, RingWord):
        a = a.bits
    a = [int(v) for v in a]
    if len(a) < 2:
        raise BadConfig('a road needs at least two cells')
    if any(v not in (0, 1) for v in a):
        raise BadConfig('cell occupancy is 0 or 1')
    return HomogeneousMap(len(a), road_terms(a))

def spread_cars(cells, cars):
    """
    Evenly spaced positions, 0-based, of the given number of cars.
    """
    if not 0 <= cars <= cells:
        raise BadConfig('%d cars do not fit on %d cells' % (cars, cells))
    return [k * cells // cars for k in range(cars)] if cars else []

def occupancy(cells, cars):
    positions = set(spread_cars(cells, cars))
    return [1 if i in positions else 0 for i in range(cells)]
