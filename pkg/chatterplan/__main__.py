import sys

from chatterplan.cli import main

sys.exit(main())
