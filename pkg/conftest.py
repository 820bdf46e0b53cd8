import sys
from pathlib import Path

# make the in-tree sources importable without installation
_src = Path(__file__).parent / "src"
if str(_src) not in sys.path:
    sys.path.insert(0, str(_src))
