import sys

from sandtree.cli import main

sys.exit(main())
