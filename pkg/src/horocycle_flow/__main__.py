import sys

from horocycle_flow.cli import main

sys.exit(main())
