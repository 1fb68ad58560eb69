"""Stream replay driver: tid assignment, FIFO window, shift sequencing.

The driver owns the dictionary, the mining state and the window buffer.  A
push in sliding mode at capacity evicts the oldest transaction first and then
adds the new one, so the buffer never exceeds its capacity; landmark mode
never evicts.  Evicted itemsets are taken from the buffer, which is the only
place transaction contents survive between shifts.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator

from .engine import MinerEngine, ShiftReport
from .store import ItemDictionary

SLIDING = "sliding"
LANDMARK = "landmark"


@dataclass(frozen=True)
class WindowConfig:
    """Replay parameters.

    ``capacity`` is the sliding-window size and is ignored in landmark mode;
    ``min_supp`` filters emission only, never maintenance.
    """

    capacity: int | None = None
    mode: str = SLIDING
    min_supp: int = 1

    def __post_init__(self):
        if self.mode not in (SLIDING, LANDMARK):
            raise ValueError(f"unknown window mode {self.mode!r}")
        if self.mode == SLIDING:
            if self.capacity is None or self.capacity < 1:
                raise ValueError("sliding mode needs a capacity of at least 1")
        if self.min_supp < 1:
            raise ValueError("min_supp must be at least 1")


@dataclass
class StatsRecord:
    """One row of the per-transaction replay series.

    ``op`` is "add" while the window is filling (or in landmark mode) and
    "shift" once pushes evict; counts cover both halves of a shift pair.
    ``trie_nodes`` and ``entries_scanned`` are summed over the pair.
    """

    shift: int
    tid: int
    op: str
    new: int
    promoted: int
    obsolete: int
    demoted: int
    live_cis: int
    trie_nodes: int
    entries_scanned: int
    wall_ns: int
    max_transaction_size: int
    list_entries: int
    snapshot: list | None = None


class StreamDriver:
    """Feeds transactions through the engine under a window policy."""

    def __init__(self, config: WindowConfig, dictionary: ItemDictionary | None = None):
        self.config = config
        self.dictionary = dictionary if dictionary is not None else ItemDictionary()
        self.engine = MinerEngine()
        self.buffer: deque[tuple[int, tuple]] = deque()
        self.next_tid = 0
        self.max_transaction_size = 0

    def push(self, tokens: Iterable) -> tuple[ShiftReport | None, ShiftReport]:
        """Intern ``tokens`` and push the resulting itemset."""
        items = sorted({self.dictionary.intern(t) for t in tokens})
        return self.push_ids(items)

    def push_ids(self, items: Iterable[int]) -> tuple[ShiftReport | None, ShiftReport]:
        """Push an already-interned itemset.

        Returns the eviction report (None when nothing was evicted) and the
        addition report.
        """
        items = tuple(sorted(set(items)))
        removed = None
        cfg = self.config
        if cfg.mode == SLIDING and len(self.buffer) >= cfg.capacity:
            old_tid, old_items = self.buffer.popleft()
            removed = self.engine.shift_remove(old_tid, old_items)
        tid = self.next_tid
        self.next_tid += 1
        added = self.engine.shift_add(tid, items)
        self.buffer.append((tid, items))
        if len(items) > self.max_transaction_size:
            self.max_transaction_size = len(items)
        return removed, added

    def snapshot_ids(self, min_supp: int | None = None) -> list[tuple[tuple, int]]:
        ms = self.config.min_supp if min_supp is None else min_supp
        return self.engine.snapshot(ms)

    def snapshot(self, min_supp: int | None = None) -> list[tuple[tuple, int]]:
        """Like snapshot_ids but with original tokens, same (id-lex) order.

        Ids pushed around the dictionary (push_ids with uninterned ints) have
        no token and are emitted as-is.
        """
        tok = self.dictionary.token
        known = len(self.dictionary)
        return [(tuple(tok(a) if 0 <= a < known else a for a in items), supp)
                for items, supp in self.snapshot_ids(min_supp)]

    @property
    def live_cis(self) -> int:
        return self.engine.store.live_count


def replay(source: Iterable[Iterable[int]], config: WindowConfig,
           driver: StreamDriver | None = None,
           snapshot_every: int = 0) -> Iterator[StatsRecord]:
    """Replay a source of interned itemsets, yielding one record per push.

    ``source`` must yield itemsets of item ids (see formats.StreamSource);
    pass a ``driver`` sharing the source's dictionary to keep tokens
    consistent.  With ``snapshot_every`` = k > 0, every k-th record carries a
    token-level snapshot.
    """
    if driver is None:
        driver = StreamDriver(config)
    shift_no = 0
    for items in source:
        shift_no += 1
        t0 = time.perf_counter_ns()
        removed, added = driver.push_ids(items)
        wall = time.perf_counter_ns() - t0
        snap = None
        if snapshot_every > 0 and shift_no % snapshot_every == 0:
            snap = driver.snapshot()
        yield StatsRecord(
            shift=shift_no,
            tid=added.tid,
            op="shift" if removed is not None else "add",
            new=len(added.new_cis),
            promoted=len(added.promoted),
            obsolete=len(removed.obsolete) if removed is not None else 0,
            demoted=len(removed.demoted) if removed is not None else 0,
            live_cis=driver.live_cis,
            trie_nodes=added.nodes_created + (removed.nodes_created if removed else 0),
            entries_scanned=added.entries_scanned + (removed.entries_scanned if removed else 0),
            wall_ns=wall,
            max_transaction_size=driver.max_transaction_size,
            list_entries=driver.engine.index.entry_count,
            snapshot=snap,
        )
