from core.Module import Module
from core import jsonio
from modules.Projector.projector import Semimodule, compose, cyclic_orbit, \
    cyclic_spectral_radius, separate

import logging
log = logging.getLogger(__name__)

class Projector(Module):
    """
    Projections onto finitely generated semimodules, cyclic projectors and
    separation by halfspaces.
    """
    dependencies = ['Algebra', 'Spectral']

    def module_load(self):
        """
        Events registered:
            * command_project <args> - project --vector through every
              --modules in turn, or report the cyclic spectral radius.
            * command_separate <args> - halfspaces separating every --modules.
        """
        log.info('initializing projectors.')
        self.serve('project', self.project)
        self.serve('separate', self.separate)

    def module_unload(self):
        self.withdraw('project', self.project)
        self.withdraw('separate', self.separate)

    def semimodules(self, args):
        return [Semimodule(jsonio.read_matrix(path)) for path in args.modules]

    def project(self, args):
        Vs = self.semimodules(args)
        if args.vector is None:
            return cyclic_spectral_radius(Vs)

        x = jsonio.parse_vector(jsonio.load(args.vector), Vs[0].tag)
        orbit = cyclic_orbit(Vs, x, args.sweeps)
        log.debug('projected through %d semimodules, %d sweeps' % (len(Vs), args.sweeps))
        return {'projection': compose(Vs, x), 'orbit': orbit}

    def separate(self, args):
        Vs = self.semimodules(args)
        if len(Vs) < 2:
            raise ValueError('separation needs at least two semimodules')
        return {'halfspaces': separate(Vs)}
