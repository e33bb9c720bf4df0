"""
Projectors onto finitely generated max-plus semimodules, cyclic projectors,
Hilbert values and separation of several semimodules by halfspaces.

A semimodule is given by the columns of its generator matrix. The projector
P_V(x) = V (x) (V \\ x) is the greatest element of V below x.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
import logging
log = logging.getLogger(__name__)

from core import config
from core.errors import ZeroColumn, UnsupportedSemiring, DimensionMismatch, \
    NotSeparable, Diverged
from modules.Algebra import semiring as sr
from modules.Algebra.semiring import Semiring, TropScalar
from modules.Algebra.tropmat import TropMatrix, TropVector, mat_vec, \
    mat_residual_left, vec_residual

@dataclass(frozen=True)
class Semimodule(object):
    generators: TropMatrix

    def __post_init__(self):
        for j, column in enumerate(self.generators.columns()):
            if column.is_zero:
                raise ZeroColumn('generator %d is the zero vector' % j)

    @classmethod
    def of(cls, vectors):
        return cls(TropMatrix.from_columns(vectors))

    @property
    def tag(self):
        return self.generators.tag

    @property
    def dim(self):
        return self.generators.rows

    def vectors(self):
        return self.generators.columns()

    def __contains__(self, x):
        return project(self, x) == x

@dataclass(frozen=True)
class Halfspace(object):
    """
    {z : u / z >= v / z} together with the zero vector, for u <= v.
    """
    u: TropVector
    v: TropVector

    def __post_init__(self):
        if not self.u <= self.v:
            raise ValueError('halfspace needs u <= v')

    def contains(self, z):
        if z.is_zero:
            return True
        return sr.le(self.u.tag, vec_residual(self.v, z), vec_residual(self.u, z))

    __contains__ = contains

@dataclass(frozen=True)
class HilbertReport(object):
    value: TropScalar
    witnesses: tuple
    support: frozenset
    certified: bool = True
    eigenvector: TropVector = field(default=None)

def _check_dims(Vs, n=None):
    if not Vs:
        raise DimensionMismatch('no semimodules given')
    n = Vs[0].dim if n is None else n
    for V in Vs:
        if V.dim != n:
            raise DimensionMismatch('semimodules of dimension %d and %d' % (n, V.dim))
        sr.check_tags(Vs[0].tag, V.tag)
    return n

def project(V, x):
    """
    P_V(x) = max{u in V : u <= x}.
    """
    if V.dim != len(x):
        raise DimensionMismatch('projecting a vector of length %d onto %d-space' % (len(x), V.dim))
    return mat_vec(V.generators, mat_residual_left(V.generators, x))

def compose(Vs, x):
    """
    P_k ... P_1 x.
    """
    for V in Vs:
        x = project(V, x)
    return x

def cyclic_orbit(Vs, x0, sweeps):
    """
    x^1 = P_1 x^0, x^2 = P_2 x^1, ... cycling through the projectors for the
    given number of sweeps. The starting vector is not included.
    """
    _check_dims(Vs, len(x0))
    if sweeps < 1:
        raise ValueError('sweeps must be positive')

    orbit = []
    x = x0
    for _ in range(sweeps):
        for V in Vs:
            x = project(V, x)
            orbit.append(x)
    return orbit

def hilbert_value(xs):
    """
    (x1 / x2) (x) (x2 / x3) (x) ... (x) (xk / x1).
    """
    xs = list(xs)
    if not xs:
        raise ValueError('hilbert value of an empty family')
    tag = xs[0].tag

    terms = [vec_residual(x, xs[(i + 1) % len(xs)]) for i, x in enumerate(xs)]
    return TropScalar(sr.otimes(tag, terms), tag)

def hilbert_metric(x, y):
    """
    Hilbert's projective distance, the negated two-point Hilbert value. None
    when x and y have different supports.
    """
    value = hilbert_value([x, y]).value
    return None if value is None else -value

def _top(x):
    return max(v for v in x.data if v is not None)

def _normalized(x):
    top = _top(x)
    return tuple(None if v is None else v - top for v in x.data)

def _support_vector(mask, n):
    return TropVector(Semiring.MAX_PLUS, tuple(0 if mask >> i & 1 else None for i in range(n)))

def _mask_of(x):
    return sum(1 << i for i in x.support())

def _covered(Vs, mask):
    """
    Intersection over the semimodules of the joint support of the generators
    living inside mask.
    """
    result = mask
    for V in Vs:
        union = 0
        for g in V.vectors():
            gmask = _mask_of(g)
            if gmask & ~mask == 0:
                union |= gmask
        result &= union
    return result

def _restricted_cycle(Vs, mask, n):
    """
    Iterate the cyclic projector from the unit vector on mask until the
    normalised state repeats. Returns (mean, states of one period) or None.
    """
    x = _support_vector(mask, n)
    states = [x]
    seen = {_normalized(x): 0}

    for step in range(1, config.ORBIT_CAP + 1):
        x = compose(Vs, x)
        key = _normalized(x)
        if key in seen:
            start = seen[key]
            period = step - start
            mean = (_top(x) - _top(states[start])) / period
            return mean, states[start:step]
        seen[key] = step
        states.append(x)

    log.warning('no period within %d sweeps on support %s' % (config.ORBIT_CAP, bin(mask)))
    return None

def _eigenvector(Vs, cycle, mean):
    y = TropVector.zeros(len(cycle[0]))
    for t, x in enumerate(cycle):
        y = y + x.shift(-t * mean)

    for _ in range(config.ORBIT_CAP):
        z = compose(Vs, y).shift(-mean)
        if z == y:
            return y.shift(-_top(y))
        y = z
    raise Diverged('cyclic eigenvector iteration did not settle')

def _witnesses(Vs, y):
    witnesses = []
    for V in Vs:
        y = project(V, y)
        witnesses.append(y)
    return tuple(witnesses)

def _candidate(Vs, mask, n):
    if _covered(Vs, mask) != mask:
        return None
    found = _restricted_cycle(Vs, mask, n)
    if found is None:
        return None
    return mask, found[0], found[1]

def _report(Vs, mask, mean, cycle, certified):
    y = _eigenvector(Vs, cycle, mean)
    return HilbertReport(TropScalar(mean), _witnesses(Vs, y),
                         frozenset(y.support()), certified, y)

def cyclic_spectral_radius(Vs):
    """
    Spectral radius of P_k ... P_1 as the maximal Hilbert value over support
    sets, with an eigenvector and its orbit as witnesses.
    """
    n = _check_dims(Vs)
    if Vs[0].tag is not Semiring.MAX_PLUS:
        raise UnsupportedSemiring('cyclic projectors are provided over max-plus only')

    if n > config.SUPPORT_CAP:
        mask = (1 << n) - 1
        while True:
            covered = _covered(Vs, mask)
            if covered == mask:
                break
            mask = covered
        log.info('dimension %d above the support cap, using support %s uncertified' % (n, bin(mask)))

        found = _restricted_cycle(Vs, mask, n) if mask else None
        if found is None:
            if mask:
                raise Diverged('cyclic projector orbit has no period within the cap')
            return HilbertReport(TropScalar.zero(), (), frozenset(), False)
        return _report(Vs, mask, found[0], found[1], False)

    with ThreadPoolExecutor(max_workers=config.threads()) as executor:
        candidates = list(executor.map(lambda m: _candidate(Vs, m, n), range(1, 1 << n)))

    best = None
    for candidate in candidates:
        if candidate is None:
            continue
        mask, mean, _ = candidate
        if best is None or mean > best[1] or \
                (mean == best[1] and bin(mask).count('1') > bin(best[0]).count('1')):
            best = candidate

    if best is None:
        log.info('no common support, cyclic spectral radius is zero')
        return HilbertReport(TropScalar.zero(), (), frozenset(), True)

    log.debug('cyclic spectral radius %s on support %s' % (sr.fmt(Semiring.MAX_PLUS, best[1]), bin(best[0])))
    return _report(Vs, best[0], best[1], best[2], True)

def separate(Vs):
    """
    Halfspaces H_i containing V_i whose intersection is the zero vector, or
    NotSeparable with a common nonzero point.

    The halfspaces come from a finite vector x with P_k ... P_1 x <= mu (x) x
    for some mu below the unit: H_i = {z : xb^i / z >= xb^(i-1) / z} where
    xb^0 = x and xb^i = P_i xb^(i-1).
    """
    report = cyclic_spectral_radius(Vs)
    rho = report.value.value
    if rho is not None and rho == 0:
        raise NotSeparable('semimodules share a nonzero point', witness=report.eigenvector)

    mu = rho / 2 if rho is not None else Fraction(-1)
    n = Vs[0].dim

    s = TropVector.of([0] * n)
    x = s
    g = s
    reached = [False] * n
    for t in range(1, config.ORBIT_CAP + 1):
        g = compose(Vs, g) + g.shift(2 * mu)
        s = g.shift(-t * mu)
        for i, v in enumerate(s.data):
            if v <= 0:
                reached[i] = True
        if all(reached):
            break
        x = TropVector(Semiring.MAX_PLUS, tuple(min(a, b) for a, b in zip(x.data, s.data)))
    else:
        raise Diverged('no sub-eigenvector found within %d sweeps' % config.ORBIT_CAP)

    if not compose(Vs, x) <= x.shift(mu):
        raise Diverged('sub-eigenvector check failed')

    halfspaces = []
    previous = x
    for V in Vs:
        current = project(V, previous)
        halfspaces.append(Halfspace(current, previous))
        previous = current

    log.info('%d semimodules separated (radius %s)' % (len(Vs), report.value))
    return halfspaces

def separating_halfspace(V1, V2):
    """
    One halfspace containing V1 and meeting V2 only in the zero vector.
    """
    return separate([V1, V2])[0]
