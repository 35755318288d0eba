import sys

from qlambert.cli import main

sys.exit(main())
