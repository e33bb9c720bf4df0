"""
Fundamental diagrams: asymptotic flow as a function of car density for a
single road, two roads sharing a crossing, or two roads behind a light.
"""
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
import logging
log = logging.getLogger(__name__)

from core import config
from core.errors import BadConfig
from modules.Traffic.homogeneous import hom_iterate
from modules.Traffic.road import road_event_graph, occupancy
from modules.Traffic.crossing import POLICIES, build_crossing, place_cars
from modules.Traffic.t1h import TrafficLight, t1h_simulate

KINDS = ('road', 'crossing', 'light')

def parse_densities(text):
    """
    "lo:hi:step" with rational fields, both ends included.
    """
    try:
        lo, hi, step = [Fraction(v.strip()) for v in text.split(':')]
    except (ValueError, ZeroDivisionError):
        raise BadConfig('densities must read lo:hi:step, got %r' % text)
    if step <= 0:
        raise BadConfig('density step must be positive')
    if not 0 <= lo <= hi <= 1:
        raise BadConfig('densities must satisfy 0 <= lo <= hi <= 1')

    densities = []
    rho = lo
    while rho <= hi:
        densities.append(rho)
        rho += step
    return densities

def _cars(rho, cells):
    cars = rho * cells
    if cars.denominator != 1:
        raise BadConfig('density %s is not realisable on %d cells' % (rho, cells))
    return int(cars)

def check_config(net):
    """
    Validate a traffic configuration object and fill in defaults.
    """
    if not isinstance(net, dict) or net.get('kind') not in KINDS:
        raise BadConfig('traffic config needs a kind among %s' % ', '.join(KINDS))
    net = dict(net)
    if net['kind'] == 'crossing':
        net.setdefault('policy', 'priority')
        if net['policy'] not in POLICIES:
            raise BadConfig('unknown crossing policy %r' % net['policy'])
    if net['kind'] == 'light':
        net.setdefault('durations', [1, 1, 1, 1])
        for key in ('road1', 'road2'):
            if not isinstance(net.get(key), int):
                raise BadConfig('light config needs an integer %r' % key)
    elif not isinstance(net.get('cells'), int) or net['cells'] < 2:
        raise BadConfig('%s config needs an integer cells >= 2' % net['kind'])
    return net

def density_flow(net, rho, steps):
    """
    Measured flow q at density rho after the given number of steps.
    """
    kind = net['kind']
    if kind == 'road':
        cells = net['cells']
        f = road_event_graph(occupancy(cells, _cars(rho, cells)))
        return hom_iterate(f, [0] * cells, steps, cells).exact

    if kind == 'crossing':
        n = net['cells']
        cars = _cars(rho, 2 * n)
        positions = place_cars(n, (cars + 1) // 2, cars // 2)
        f = build_crossing(n, positions, net['policy'])
        return hom_iterate(f, [0] * (2 * n), steps, 2 * n).exact

    light = TrafficLight(net['road1'], net['road2'], _cars(rho, net['road1']),
                         _cars(rho, net['road2']), tuple(net['durations']))
    run = t1h_simulate(light.system(), steps)
    return run.flow(light.road_indices(1))

def fundamental_diagram(net, densities, steps):
    """
    List of (rho, q), in density order. Densities are evaluated in parallel.
    """
    net = check_config(net)
    densities = [Fraction(rho) for rho in densities]
    log.info('fundamental diagram of a %s network over %d densities' % (net['kind'], len(densities)))

    with ThreadPoolExecutor(max_workers=config.threads()) as executor:
        flows = list(executor.map(lambda rho: density_flow(net, rho, steps), densities))
    return list(zip(densities, flows))
