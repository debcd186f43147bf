import sys

from qfalg.cli import main

sys.exit(main())
