import sys

from primefield.cli import main

sys.exit(main())
