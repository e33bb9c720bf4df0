from core.Module import Module
from core import jsonio
from modules.Algebra.semiring import iv_binary
from modules.Algebra.tropmat import kleene_star, kleene_plus, iv_kleene_star

import logging
log = logging.getLogger(__name__)

class Algebra(Module):
    """
    Semiring scalars and matrices, the Kleene star and the interval versions
    of the scalar operations and of the star.
    """
    def module_load(self):
        """
        Events registered:
            * command_star <args> - star (or plus) of --matrix.
            * command_interval_<op> <args> - add, mul or residual of the
              intervals in --A and --B.
            * command_interval_star <args> - star of the interval matrix in
              --matrix.
        """
        log.info('initializing semiring kernels.')

        self.commands = {
            'star': self.star,
            'interval_add': self.interval_add,
            'interval_mul': self.interval_mul,
            'interval_residual': self.interval_residual,
            'interval_star': self.interval_star,
        }
        for command, function in self.commands.items():
            self.serve(command, function)

    def module_unload(self):
        for command, function in self.commands.items():
            self.withdraw(command, function)

    def star(self, args):
        A = jsonio.read_matrix(args.matrix)
        log.debug('star of a %dx%d %s matrix' % (A.rows, A.cols, A.tag.value))
        return kleene_plus(A) if args.plus else kleene_star(A)

    def _interval(self, op, args):
        a = jsonio.parse_interval(jsonio.load(args.A))
        b = jsonio.parse_interval(jsonio.load(args.B))
        return iv_binary(op, a, b)

    def interval_add(self, args):
        return self._interval('add', args)

    def interval_mul(self, args):
        return self._interval('mul', args)

    def interval_residual(self, args):
        return self._interval('residual', args)

    def interval_star(self, args):
        return iv_kleene_star(jsonio.parse_interval_matrix(jsonio.load(args.matrix)))
