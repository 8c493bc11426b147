import sys

from balfactor.cli import main

sys.exit(main())
