""" Entry point for `python -m geometric_integrators`. """

import sys

from geometric_integrators.harness.cli import main

sys.exit(main())
