"""Closed-itemset mining over sliding and landmark transaction windows.

The miner maintains the exact family of closed itemsets of the current
window under single-transaction additions and evictions, storing itemset
composition only in per-item inverted lists and growing intersections item
by item in a per-shift trie.  A brute-force referee (``streamclose.oracle``)
provides ground truth for verification.
"""

from .engine import MinerEngine, ShiftReport
from .estimator import ClosedItemsetStreamMiner, NotFittedError
from .formats import ParseError, StreamSource, read_fimi, write_snapshot
from .store import ItemDictionary
from .window import StatsRecord, StreamDriver, WindowConfig, replay

__version__ = "0.1.0"

__all__ = [
    "ClosedItemsetStreamMiner",
    "ItemDictionary",
    "MinerEngine",
    "NotFittedError",
    "ParseError",
    "ShiftReport",
    "StatsRecord",
    "StreamDriver",
    "StreamSource",
    "WindowConfig",
    "read_fimi",
    "replay",
    "write_snapshot",
    "__version__",
]
