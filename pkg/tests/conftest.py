"""Shared fixtures: the worked example dataset, golden families, helpers."""

from __future__ import annotations

import random

import pytest

from streamclose import MinerEngine, ShiftReport, StreamDriver, WindowConfig
from streamclose.trie import DECREMENT, INCREMENT

# Ten-transaction worked example; tid n is TABLE1[n - 1].
TABLE1 = [
    tuple("abcdefgh"),
    tuple("abcef"),
    tuple("cdfgh"),
    tuple("efgh"),
    tuple("g"),
    tuple("efh"),
    tuple("abcd"),
    tuple("bcd"),
    tuple("d"),
    tuple("bcgh"),
]

# Closed family of all ten transactions.
TABLE2 = {
    tuple("abcdefgh"): 1, tuple("abcef"): 2, tuple("cf"): 3, tuple("cdfgh"): 2,
    tuple("f"): 5, tuple("ef"): 4, tuple("fgh"): 3, tuple("efgh"): 2,
    tuple("g"): 5, tuple("fh"): 4, tuple("efh"): 3, tuple("c"): 6,
    tuple("cd"): 4, tuple("abc"): 3, tuple("abcd"): 2, tuple("bc"): 5,
    tuple("bcd"): 3, tuple("d"): 5, tuple("h"): 5, tuple("gh"): 4,
    tuple("cgh"): 3, tuple("bcgh"): 2,
}

# Closed family of the first nine transactions.
TABLE3 = {
    tuple("abcdefgh"): 1, tuple("abcef"): 2, tuple("cf"): 3, tuple("cdfgh"): 2,
    tuple("f"): 5, tuple("ef"): 4, tuple("fgh"): 3, tuple("efgh"): 2,
    tuple("g"): 4, tuple("fh"): 4, tuple("efh"): 3, tuple("c"): 5,
    tuple("cd"): 4, tuple("abc"): 3, tuple("abcd"): 2, tuple("bc"): 4,
    tuple("bcd"): 3, tuple("d"): 5,
}


def landmark_driver(transactions) -> StreamDriver:
    """Replay token transactions additively; tid k holds transactions[k]."""
    driver = StreamDriver(WindowConfig(mode="landmark"))
    for t in transactions:
        driver.push(t)
    return driver


def token_family(driver: StreamDriver, min_supp: int = 1) -> dict:
    return {items: supp for items, supp in driver.snapshot(min_supp)}


def ids_family(engine: MinerEngine) -> dict:
    return {frozenset(items): supp for items, supp in engine.snapshot(1)}


def window_db(buffer) -> dict:
    return {tid: frozenset(items) for tid, items in buffer}


def random_stream(rng: random.Random, alphabet: int, length: int,
                  max_len: int = 8) -> list[tuple]:
    """Random itemsets over 0..alphabet-1, lengths 1..max_len."""
    hi = min(max_len, alphabet)
    return [tuple(sorted(rng.sample(range(alphabet), rng.randint(1, hi))))
            for _ in range(length)]


def step_shift(eng: MinerEngine, tid, items, kind: str) -> ShiftReport:
    """Run one shift through the single-step ops instead of the fast loop.

    Reference implementation used to pin the inlined shift loops to
    expand_path/update_gen/update_cis semantics.
    """
    items = tuple(sorted(set(items)))
    if kind == "add":
        if tid in eng.window_tids:
            raise ValueError(f"tid {tid} is already in the window")
        eng.window_tids.add(tid)
    else:
        if tid not in eng.window_tids:
            raise ValueError(f"tid {tid} is not in the window")
        eng.window_tids.discard(tid)
    if not items:
        return ShiftReport(kind, tid)
    eng.store.advance_shift()
    eng.trie.reset(INCREMENT if kind == "add" else DECREMENT)
    entries = 0
    for a in items:
        eng.expand_path(eng.store.universe, a)
        entries += 1
        for rec in list(eng.index.lists.get(a, ())):
            eng.expand_path(rec, a)
            entries += 1
    if kind == "add":
        return eng.update_cis_inc(tid, entries)
    return eng.update_cis_dec(tid, entries)


@pytest.fixture
def table2_driver() -> StreamDriver:
    return landmark_driver(TABLE1)


@pytest.fixture
def table3_driver() -> StreamDriver:
    return landmark_driver(TABLE1[:9])
