import sys

from .GDCli import main

sys.exit(main())
