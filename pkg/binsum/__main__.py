import sys

from binsum.cli import main

sys.exit(main())
