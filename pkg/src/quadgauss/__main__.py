import sys

from quadgauss.cli import main

sys.exit(main())
