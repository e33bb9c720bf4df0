from core.Module import Module
from core import jsonio
from core.errors import Unbounded
from modules.Spectral.spectral import spectrum, collatz_wielandt

import logging
log = logging.getLogger(__name__)

class Spectral(Module):
    """
    Eigenvalue, critical graph, eigenvectors and Collatz-Wielandt number.
    """
    dependencies = ['Algebra']

    def module_load(self):
        """
        Events registered:
            * command_eig <args> - spectral report of --matrix.
        """
        log.info('initializing spectral kernels.')
        self.serve('eig', self.eig)

    def module_unload(self):
        self.withdraw('eig', self.eig)

    def eig(self, args):
        A = jsonio.read_matrix(args.matrix)
        result = spectrum(A)
        report = {
            'eigenvalue': jsonio.scalar(A.tag, result.eigenvalue.value),
            'critical_nodes': sorted(result.critical_nodes),
            'critical_edges': sorted(result.critical_edges),
            'classes': result.classes,
            'eigenvectors': result.eigenvectors,
        }

        try:
            cw = collatz_wielandt(A)
            report['collatz_wielandt'] = {
                'value': jsonio.scalar(A.tag, cw.value.value),
                'certificate': cw.certificate,
            }
        except Unbounded as e:
            log.debug('no Collatz-Wielandt number: %s' % e)

        return report
