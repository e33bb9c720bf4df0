from core.Module import Module
from core import jsonio
from core.errors import SchemaError
from modules.Plucker.plucker import SubsetFunction, GridFlowNet, is_tp, is_dmtp, \
    check_plucker_relations, is_submodular, flow_tp, reconstruct_from_intervals

import logging
log = logging.getLogger(__name__)

def subset_function(f):
    """
    {"n": n, "values": {"0b101": value, ...}} with "-inf" for missing flows.
    """
    return {
        'n': f.n,
        'values': dict((jsonio.mask_key(mask), '-inf' if value is None else jsonio.rational(value))
                       for mask, value in sorted(f.values.items())),
    }

def parse_subset_function(obj):
    n = jsonio.require(obj, 'n', int)
    if n < 1:
        raise SchemaError('ground set must be nonempty')
    values = {}
    for key, token in jsonio.require(obj, 'values', dict).items():
        mask = jsonio.parse_mask(key, n)
        values[mask] = None if token == '-inf' else jsonio.parse_rational(token, key)
    return SubsetFunction(n, values)

def parse_grid(obj):
    n = jsonio.require(obj, 'n', int)
    weights = {}
    for entry in obj.get('weights', []):
        edge = (tuple(jsonio.require(entry, 'from', list)), tuple(jsonio.require(entry, 'to', list)))
        weights[edge] = jsonio.parse_rational(jsonio.require(entry, 'weight'), 'weight')
    return GridFlowNet(n, weights), bool(obj.get('vertex_disjoint', True))

class Plucker(Module):
    """
    Tropical Pluecker functions: relation checks, flow constructions and
    reconstruction from intervals.
    """
    def module_load(self):
        """
        Events registered:
            * command_plucker_check <args> - relation checks on --function.
            * command_plucker_build <args> - flow function of the grid in
              --config.
            * command_plucker_reconstruct <args> - TP extension of the interval
              values in --function.
        """
        log.info('initializing Pluecker functions.')

        self.commands = {
            'plucker_check': self.check,
            'plucker_build': self.build,
            'plucker_reconstruct': self.reconstruct,
        }
        for command, function in self.commands.items():
            self.serve(command, function)

    def module_unload(self):
        for command, function in self.commands.items():
            self.withdraw(command, function)

    def check(self, args):
        f = parse_subset_function(jsonio.load(args.function))
        return {
            'tp': is_tp(f),
            'dmtp': is_dmtp(f),
            'plucker': check_plucker_relations(f),
            'submodular': is_submodular(f),
            'submodular_on_intervals': is_submodular(f, on_intervals_only=True),
        }

    def build(self, args):
        net, vertex_disjoint = parse_grid(jsonio.load(args.config))
        return subset_function(flow_tp(net, vertex_disjoint))

    def reconstruct(self, args):
        return subset_function(reconstruct_from_intervals(parse_subset_function(jsonio.load(args.function))))
