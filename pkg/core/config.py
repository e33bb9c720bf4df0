import os
import logging
log = logging.getLogger(__name__)

from core.errors import BadConfig

# Enumeration caps.
SUPPORT_CAP = 12
TWOSIDED_CAP = 6
PERM_CAP = 8
ROOK_CAP = 7
SUBSET_SINGULAR_CAP = 3
PLUCKER_CAP = 8
FLOW_CAP = 4
EDGE_FLOW_CAP = 3

# Iteration caps.
ORBIT_CAP = 4096
PERIOD_CAP = 20000

# Coordinate spread above which homogeneous iterations are declared divergent.
DIVERGENCE_BOUND = 10 ** 6

def threads(environ=None):
    """
    Worker count for parallel sweeps, capped by TROPKIT_THREADS.
    """
    environ = os.environ if environ is None else environ
    default = os.cpu_count() or 1

    value = environ.get('TROPKIT_THREADS')
    if value is None:
        return default

    try:
        count = int(value)
    except ValueError:
        raise BadConfig('TROPKIT_THREADS must be an integer, got %r' % value)

    if count < 1:
        raise BadConfig('TROPKIT_THREADS must be positive, got %d' % count)

    log.debug('thread cap %d from environment' % count)
    return count
