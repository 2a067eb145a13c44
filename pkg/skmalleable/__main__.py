import sys

from skmalleable.harness.cli import main

sys.exit(main())
