#!/usr/bin/env python3
import os
import sys
import logging
import logging.config

logging.config.fileConfig(os.path.join(os.path.dirname(os.path.abspath(__file__)), 'log.conf'),
                          disable_existing_loggers=False)

import core.runner as runner

if __name__ == '__main__':
    # Pass the command line to the runner.
    sys.exit(runner.main(sys.argv[1:]))
