import sys

from gaterace._internal.cli.main import main

sys.exit(main())
