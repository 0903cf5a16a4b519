import sys

from chyperbolic.cli import main

sys.exit(main())
