import sys

from gptv.cli import main

sys.exit(main())
