import sys

from compnet.cli import main

sys.exit(main())
