import sys

from gcomplex.cli import main

sys.exit(main())
