"""
lobcal - Main Entry Point

Usage:
    python -m src.main --help
    python -m src.main calibrate --method nm-ta --bars bars.csv ...
"""

import sys
from pathlib import Path

from dotenv import load_dotenv

# Load environment variables FIRST, before settings are read
project_root = Path(__file__).parent.parent
env_paths = [
    project_root / '.env',
    Path.cwd() / '.env',
]

for env_path in env_paths:
    if env_path.exists():
        load_dotenv(env_path, override=False)  # Don't override existing env vars
        break

from src.cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
