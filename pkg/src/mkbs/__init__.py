"""mkbs: a generic knowledge-based expert-system shell.

Rule bases written in a small textual language are proven by interactive
backward chaining with certainty factors; consultations can run in a terminal,
from scripted answers, or over an HTTP protocol driving a question-at-a-time
session. A semantic net answers property queries with isa inheritance, and a
store supports live rule editing with validation gating.
"""

from . import editor, engine, rulelang, semnet

__version__ = "0.1.0"

__all__ = ["editor", "engine", "rulelang", "semnet", "__version__"]
