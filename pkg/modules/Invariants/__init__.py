from core.Module import Module
from core import config
from core import jsonio
from modules.Invariants.determ import bideterminant, permanent, rook_coefficients, \
    is_trop_singular, is_pattern_singular

import logging
log = logging.getLogger(__name__)

class Invariants(Module):
    """
    Bideterminant, permanent, rook coefficients and singularity tests.
    """
    dependencies = ['Algebra']

    def module_load(self):
        """
        Events registered:
            * command_invariants <args> - invariants of --matrix.
        """
        log.info('initializing matrix invariants.')
        self.serve('invariants', self.invariants)

    def module_unload(self):
        self.withdraw('invariants', self.invariants)

    def invariants(self, args):
        A = jsonio.read_matrix(args.matrix)
        report = {
            'pattern_singular': is_pattern_singular(A),
            'rook': rook_coefficients(A),
        }

        if A.square:
            report['bideterminant'] = bideterminant(A)
            report['permanent'] = permanent(A)
            report['trop_singular'] = is_trop_singular(A)
            if args.exhaustive or A.rows <= config.SUBSET_SINGULAR_CAP:
                report['subset_singular'] = is_trop_singular(A, exhaustive=True)
        return report
