from core.Module import Module
from core import jsonio
from modules.TwoSided.twosided import InequalitySystem, solve_system

import logging
log = logging.getLogger(__name__)

class TwoSided(Module):
    """
    Generators of two-sided max-plus inequality systems.
    """
    dependencies = ['Algebra', 'Projector']

    def module_load(self):
        """
        Events registered:
            * command_twosided <args> - generators of --A x <= --B x.
        """
        log.info('initializing two-sided solver.')
        self.serve('twosided', self.twosided)

    def module_unload(self):
        self.withdraw('twosided', self.twosided)

    def twosided(self, args):
        S = InequalitySystem(jsonio.read_matrix(args.A), jsonio.read_matrix(args.B))
        return solve_system(S).matrix()
