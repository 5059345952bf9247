import sys

from sullivan.main import main

sys.exit(main())
