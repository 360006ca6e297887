import sys
from pathlib import Path

from hypothesis import settings

# oracles.py lives beside the tests, not in the package
sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("suite", max_examples=25, deadline=None, derandomize=True)
settings.load_profile("suite")
