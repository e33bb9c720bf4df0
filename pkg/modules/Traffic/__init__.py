from fractions import Fraction

from core.Module import Module
from core import jsonio
from core.runner import Table
from core.errors import BadConfig
from modules.Traffic.road import RingWord, exclusion_run
from modules.Traffic.tent import tent_histogram
from modules.Traffic.t1h import TrafficLight, t1h_simulate, light_phases, light_flow
from modules.Traffic.diagram import fundamental_diagram, parse_densities, check_config

import logging
log = logging.getLogger(__name__)

def parse_light(net):
    net = check_config(net)
    if net['kind'] != 'light':
        raise BadConfig('expected a light config, got %r' % net['kind'])
    return TrafficLight(net['road1'], net['road2'], net.get('cars1', 0), net.get('cars2', 0),
                        tuple(net['durations']))

class Traffic(Module):
    """
    Min-plus traffic models: exclusion process, crossings, the tent map and
    traffic lights.
    """
    dependencies = ['Algebra', 'Spectral']

    def module_load(self):
        """
        Events registered:
            * command_traffic_diagram <args> - (rho, q) table of --config.
            * command_traffic_tent <args> - pooled histogram of tent orbits.
            * command_traffic_exclusion <args> - exclusion trajectory of --word.
            * command_traffic_light <args> - phases and flows of a light.
        """
        log.info('initializing traffic models.')

        self.commands = {
            'traffic_diagram': self.diagram,
            'traffic_tent': self.tent,
            'traffic_exclusion': self.exclusion,
            'traffic_light': self.light,
        }
        for command, function in self.commands.items():
            self.serve(command, function)

    def module_unload(self):
        for command, function in self.commands.items():
            self.withdraw(command, function)

    def diagram(self, args):
        points = fundamental_diagram(jsonio.load(args.config), parse_densities(args.densities), args.steps)
        return Table(('rho', 'q'), points)

    def tent(self, args):
        y0s = [jsonio.parse_rational(y0, 'y0') for y0 in args.y0]
        histogram = tent_histogram(y0s, args.steps, args.bins)
        return Table(('bin', 'lo', 'hi', 'count'),
                     [(b, Fraction(b, args.bins), Fraction(b + 1, args.bins), int(count))
                      for b, count in enumerate(histogram)])

    def exclusion(self, args):
        trajectory, flows = exclusion_run(RingWord.of(args.word), args.steps)
        rows = [(0, str(trajectory[0]), '')]
        rows.extend((t, str(word), flow) for t, (word, flow) in enumerate(zip(trajectory[1:], flows), 1))
        return Table(('step', 'word', 'flow'), rows)

    def light(self, args):
        light = parse_light(jsonio.load(args.config))
        S = light.system()
        run = t1h_simulate(S, args.steps)
        return {
            'phases': [light_phases(light, u) for u in run.u[:light.cycle]],
            'control_period': run.u_period,
            'period': run.period,
            'flow': [run.flow(light.road_indices(1)), run.flow(light.road_indices(2))],
            'eigenvalue_flow': [light_flow(light, 1), light_flow(light, 2)],
        }
