from core.Module import Module
from core import jsonio
from modules.Assign.assign import AssignMatrix, strong_regularity, normal_form, \
    distances_potentials, subdifferential

import logging
log = logging.getLogger(__name__)

class Assign(Module):
    """
    Strong regularity of finite assignment problems.
    """
    dependencies = ['Algebra']

    def module_load(self):
        """
        Events registered:
            * command_assign <args> - certificate, normal form, distances and
              potentials of --matrix.
        """
        log.info('initializing assignment analysis.')
        self.serve('assign', self.assign)

    def module_unload(self):
        self.withdraw('assign', self.assign)

    def assign(self, args):
        B = AssignMatrix(jsonio.read_matrix(args.matrix))
        cert = strong_regularity(B)
        distances, phi, phi_tilde = distances_potentials(B, cert.bijection)
        return {
            'certificate': cert,
            'normal_form': normal_form(B, cert).matrix,
            'subdifferential': subdifferential(B, cert.g).sets,
            'distances': distances,
            'phi': phi,
            'phi_tilde': phi_tilde,
        }
