import sys

from invofact.cli import main

sys.exit(main())
