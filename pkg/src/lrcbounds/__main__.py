import sys

from lrcbounds.cli import main

sys.exit(main())
