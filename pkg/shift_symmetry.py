import sys

from dotenv import load_dotenv

from sources.manager_debug import DebugManager as DBM

# Initialize debug logger first
DBM.create_logger()


if __name__ == "__main__":
    load_dotenv()
    from sources.main import main

    sys.exit(main())
