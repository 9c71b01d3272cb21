"""Allow running CLI as python -m gridcarbon.cli."""

import sys

from .main import main

sys.exit(main())
