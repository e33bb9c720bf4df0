"""
Triangular one-homogeneous (T1H) systems

    u' = C (x) u,    x' = A(u) (x) x (+) B(u) (x) u

over min-plus, where the entries of A(u) and B(u) are minima of terms
c + sum_k e_k u_k with exponents summing to zero. Once the normalised u
orbit is periodic the x dynamics is a periodic linear system.
"""
from dataclasses import dataclass, field
from fractions import Fraction
import logging
log = logging.getLogger(__name__)

from core import config
from core.errors import BadConfig, Diverged
from modules.Algebra.semiring import Semiring
from modules.Algebra.tropmat import TropMatrix, mat_mul
from modules.Spectral.spectral import max_cycle_mean
from modules.Traffic.homogeneous import Term, exact
from modules.Traffic.road import road_terms, occupancy

MIN_PLUS = Semiring.MIN_PLUS

def _normalized(v):
    low = min(v)
    return tuple(a - low for a in v)

@dataclass(frozen=True)
class T1HSystem(object):
    C: TropMatrix
    A: dict = field(hash=False)
    B: dict = field(hash=False)
    u0: tuple = ()
    x0: tuple = ()

    def __post_init__(self):
        p, n = len(self.u0), len(self.x0)
        if self.C.tag is not MIN_PLUS or self.C.shape != (p, p):
            raise BadConfig('C must be a %dx%d min-plus matrix' % (p, p))
        object.__setattr__(self, 'u0', tuple(exact(v) for v in self.u0))
        object.__setattr__(self, 'x0', tuple(exact(v) for v in self.x0))

        covered = set()
        for name, entries, cols in (('A', self.A, n), ('B', self.B, p)):
            for (i, j), terms in entries.items():
                if not (0 <= i < n and 0 <= j < cols):
                    raise BadConfig('%s entry (%d, %d) out of range' % (name, i, j))
                for term in terms:
                    if term.fresh or term.degree != 0:
                        raise BadConfig('%s entry (%d, %d) is not 0-homogeneous in u' % (name, i, j))
                    if any(not 0 <= k < p for k in term.exponents):
                        raise BadConfig('%s entry (%d, %d) reads a missing control' % (name, i, j))
                covered.add(i)
        if covered != set(range(n)):
            raise BadConfig('every state coordinate needs an entry in A or B')

    def matrix_at(self, u):
        """
        A(u) as a min-plus matrix.
        """
        n = len(self.x0)
        rows = [[None] * n for _ in range(n)]
        for (i, j), terms in self.A.items():
            rows[i][j] = min(t.evaluate(u) for t in terms)
        return TropMatrix(MIN_PLUS, tuple(tuple(row) for row in rows))

def _evaluate(entries, u):
    return [(i, j, min(t.evaluate(u) for t in terms)) for (i, j), terms in entries.items()]

def _control_step(C, u):
    return tuple(exact(min(c + v for c, v in zip(row, u) if c is not None)) for row in C.data)

@dataclass
class T1HRun(object):
    u: list
    x: list
    u_transient: int = None
    u_period: int = None
    transient: int = None
    period: int = None
    rates: tuple = None

    def flow(self, indices=None):
        """
        Growth rate of the mean of the given state coordinates: exact over the
        detected period, otherwise averaged over the second half.
        """
        indices = range(len(self.x[0])) if indices is None else list(indices)
        if self.rates is not None:
            return Fraction(sum(self.rates[i] for i in indices), len(indices))
        K = len(self.x) - 1
        half = K // 2
        return Fraction(sum(self.x[K][i] - self.x[half][i] for i in indices),
                        len(indices) * (K - half))

def t1h_simulate(S, K):
    """
    Run K steps, recording when the normalised u orbit and the joint
    normalised (u, x) orbit start repeating.
    """
    if K < 1:
        raise ValueError('at least one step is needed')

    u, x = S.u0, S.x0
    us, xs = [u], [x]
    seen_u = {_normalized(u): 0} if u else {}
    seen = {(_normalized(u) if u else (), _normalized(x)): 0}
    run = T1HRun(us, xs)

    for k in range(1, K + 1):
        new = {}
        for i, j, value in _evaluate(S.A, u):
            candidate = value + x[j]
            if i not in new or candidate < new[i]:
                new[i] = candidate
        for i, j, value in _evaluate(S.B, u):
            candidate = value + u[j]
            if i not in new or candidate < new[i]:
                new[i] = candidate
        x = tuple(exact(new[i]) for i in range(len(x)))
        u = _control_step(S.C, u) if u else u

        if max(x) - min(x) > config.DIVERGENCE_BOUND:
            raise Diverged('state spread exceeds %s after %d steps' % (config.DIVERGENCE_BOUND, k))
        us.append(u)
        xs.append(x)

        if u and run.u_period is None:
            key = _normalized(u)
            if key in seen_u:
                run.u_transient = seen_u[key]
                run.u_period = k - seen_u[key]
            else:
                seen_u[key] = k

        if run.period is None:
            key = (_normalized(u) if u else (), _normalized(x))
            if key in seen:
                start = seen[key]
                run.transient, run.period = start, k - start
                run.rates = tuple(Fraction(a - b, run.period) for a, b in zip(x, xs[start]))
            else:
                seen[key] = k

    log.debug('T1H run of %d steps, control period %s, joint period %s' % (K, run.u_period, run.period))
    return run

def lp_matrices(S, run):
    """
    A(u^t), ..., A(u^(t+p-1)) over one period of the control orbit.
    """
    if run.u_period is None:
        raise Diverged('control orbit is not periodic within the run')
    start = run.u_transient
    return [S.matrix_at(run.u[t]) for t in range(start, start + run.u_period)]

def lp_product(matrices):
    """
    M_(p-1) (x) ... (x) M_0.
    """
    product = matrices[0]
    for M in matrices[1:]:
        product = mat_mul(M, product)
    return product

def ring_matrix(length):
    """
    Control ring u_(r+1)' = m_r + u_r with the single token on place 0.
    """
    rows = [[None] * length for _ in range(length)]
    for r in range(length):
        rows[(r + 1) % length][r] = 1 if r == 0 else 0
    return TropMatrix(MIN_PLUS, tuple(tuple(row) for row in rows))

def periodic_to_t1h(Es, x0=None):
    """
    T1H system reproducing x^(k+1) = E_(k mod p) (x) x^k: entry (i, j) is the
    single term E_0[i,j] + sum_r E_r[i,j] (u_r - u_(r+1)), which equals
    E_r[i,j] while the control token sits on place r.
    """
    if not Es:
        raise BadConfig('no matrices given')
    p = len(Es)
    n = Es[0].rows
    for E in Es:
        if E.tag is not MIN_PLUS or E.shape != (n, n):
            raise BadConfig('periodic family must be %dx%d min-plus matrices' % (n, n))
        if any((E[i, j] is None) != (Es[0][i, j] is None) for i in range(n) for j in range(n)):
            raise BadConfig('periodic family must share one support')

    A = {}
    for i in range(n):
        for j in range(n):
            if Es[0][i, j] is None:
                continue
            exponents = {}
            for r, E in enumerate(Es):
                exponents[r] = exponents.get(r, 0) + E[i, j]
                following = (r + 1) % p
                exponents[following] = exponents.get(following, 0) - E[i, j]
            A[(i, j)] = (Term(Es[0][i, j], exponents),)

    x0 = tuple([0] * n) if x0 is None else tuple(x0)
    return T1HSystem(ring_matrix(p), A, {}, tuple([0] * p), x0)

@dataclass(frozen=True)
class TrafficLight(object):
    """
    Two circular roads crossing at a light. Durations are the lengths of the
    four phases: road 1 green, all red, road 2 green, all red.
    """
    road1: int
    road2: int
    cars1: int
    cars2: int
    durations: tuple = (1, 1, 1, 1)

    def __post_init__(self):
        durations = tuple(int(d) for d in self.durations)
        if len(durations) != 4 or min(durations) < 1:
            raise BadConfig('a light has four positive phase durations, got %s' % (self.durations,))
        object.__setattr__(self, 'durations', durations)
        for cells, cars in ((self.road1, self.cars1), (self.road2, self.cars2)):
            if cells < 2:
                raise BadConfig('roads need at least two cells')
            if not 0 <= cars <= cells:
                raise BadConfig('%d cars do not fit on %d cells' % (cars, cells))

    @property
    def cycle(self):
        return sum(self.durations)

    def green_terms(self):
        """
        Token counts of the road 1 and road 2 green places as functions of u.
        """
        d1, d2, d3, _ = self.durations
        start = d1 + d2
        return Term(1, {0: 1, d1: -1}), Term(0, {start: 1, start + d3: -1})

    def road_indices(self, road):
        if road == 1:
            return list(range(self.road1))
        return list(range(self.road1, self.road1 + self.road2))

    def system(self):
        green1, green2 = self.green_terms()
        A = {}
        for offset, cells, cars, green in ((0, self.road1, self.cars1, green1),
                                           (self.road1, self.road2, self.cars2, green2)):
            for i, terms in enumerate(road_terms(occupancy(cells, cars))):
                for t in terms:
                    k = next(iter(t.exponents))
                    A.setdefault((offset + i, offset + k), []).append(Term(t.constant))
            A.setdefault((offset + cells - 1, offset + cells - 1), []).append(green)

        n = self.road1 + self.road2
        A = dict((key, tuple(terms)) for key, terms in A.items())
        return T1HSystem(ring_matrix(self.cycle), A, {}, tuple([0] * self.cycle), tuple([0] * n))

def light_phases(light, u):
    """
    (road 1 green tokens, road 2 green tokens) for the control vector u.
    """
    green1, green2 = light.green_terms()
    return green1.evaluate(u), green2.evaluate(u)

def light_flow(light, road=1):
    """
    Asymptotic flow of a road: the eigenvalue of the product of its matrices
    over one light cycle, divided by the cycle length.
    """
    S = light.system()
    indices = light.road_indices(road)
    u = S.u0
    blocks = []
    for _ in range(light.cycle):
        M = S.matrix_at(u)
        blocks.append(TropMatrix(MIN_PLUS, tuple(tuple(M[i, j] for j in indices) for i in indices)))
        u = _control_step(S.C, u)

    value = max_cycle_mean(lp_product(blocks)).value
    return value / light.cycle
