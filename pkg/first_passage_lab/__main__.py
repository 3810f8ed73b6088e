import sys

from first_passage_lab.cli import main

sys.exit(main())
