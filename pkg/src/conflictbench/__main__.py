import sys

from conflictbench.cli import main

sys.exit(main())
