import sys

from ahg_hgm.cli import main

sys.exit(main())
