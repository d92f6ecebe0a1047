import os
import sys

# Let test modules import the local helpers (gen, oracle) directly.
sys.path.insert(0, os.path.dirname(__file__))
