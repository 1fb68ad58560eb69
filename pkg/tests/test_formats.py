"""Input parsing and output rendering."""

import io

import pytest

from streamclose import ItemDictionary, ParseError, read_fimi, write_snapshot
from streamclose.formats import STATS_COLUMNS, StatsWriter, save_snapshot
from streamclose.window import StatsRecord
from conftest import TABLE1, TABLE2, landmark_driver


def test_read_line_sorted_and_interned():
    src = read_fimi(b"1 3 2\n")
    assert list(src) == [(0, 1, 2)]
    assert src.dictionary.token(1) == "3"


def test_read_blank_line_is_empty_basket():
    src = read_fimi(b"1 2\n\n3\n")
    assert list(src) == [(0, 1), (), (2,)]


def test_read_duplicates_collapse_with_counter():
    src = read_fimi(b"7 7 8 7\n8 8\n")
    assert list(src) == [(0, 1), (1,)]
    assert src.duplicate_tokens == 3


def test_read_control_character_is_parse_error():
    src = read_fimi(b"1 2\n3 \x004\n")
    with pytest.raises(ParseError) as err:
        list(src)
    assert err.value.line_no == 2


def test_read_invalid_utf8_is_parse_error():
    src = read_fimi(b"1 2\n\xff\xfe\n")
    with pytest.raises(ParseError) as err:
        list(src)
    assert err.value.line_no == 2


def test_read_table1_reproduces_worked_example():
    text = "\n".join(" ".join(row) for row in TABLE1).encode() + b"\n"
    src = read_fimi(text)
    itemsets = list(src)
    assert len(itemsets) == 10
    assert itemsets[0] == tuple(range(8))
    assert itemsets[4] == (src.dictionary.intern("g"),)


def test_read_from_path(tmp_path):
    p = tmp_path / "d.dat"
    p.write_bytes(b"5 6\n6\n")
    assert list(read_fimi(p)) == [(0, 1), (1,)]


def test_read_shared_dictionary():
    d = ItemDictionary()
    d.intern("x")
    src = read_fimi(b"y x\n", dictionary=d)
    assert list(src) == [(0, 1)]


def test_write_snapshot_tsv_golden():
    driver = landmark_driver(TABLE1)
    text = write_snapshot(driver.snapshot(), "tsv")
    lines = text.splitlines()
    assert len(lines) == len(TABLE2) == 22
    assert "b c\t5" in lines
    assert lines[0] == "a b c\t3"  # id-lexicographic order


def test_write_snapshot_threshold_four():
    driver = landmark_driver(TABLE1)
    text = write_snapshot(driver.snapshot(min_supp=4), "tsv")
    assert len(text.splitlines()) == 10


def test_write_snapshot_jsonl():
    text = write_snapshot([(("a", "b"), 3), (("c",), 1)], "jsonl")
    assert text == ('{"itemset": ["a", "b"], "support": 3}\n'
                    '{"itemset": ["c"], "support": 1}\n')


def test_write_snapshot_empty():
    assert write_snapshot([], "tsv") == ""
    assert write_snapshot([], "jsonl") == ""


def test_write_snapshot_unknown_format():
    with pytest.raises(ValueError):
        write_snapshot([], "xml")


def test_save_snapshot_deterministic_bytes(tmp_path):
    driver = landmark_driver(TABLE1)
    p1, p2 = tmp_path / "a.tsv", tmp_path / "b.tsv"
    save_snapshot(p1, driver.snapshot())
    save_snapshot(p2, driver.snapshot())
    assert p1.read_bytes() == p2.read_bytes()
    assert b"\r" not in p1.read_bytes()


def test_stats_writer_header_and_rows():
    out = io.StringIO()
    w = StatsWriter(out)
    w.write(StatsRecord(shift=1, tid=0, op="add", new=2, promoted=0, obsolete=0,
                        demoted=0, live_cis=2, trie_nodes=3, entries_scanned=4,
                        wall_ns=1000, max_transaction_size=2, list_entries=3))
    lines = out.getvalue().splitlines()
    assert lines[0] == ",".join(STATS_COLUMNS)
    assert lines[1] == "1,0,add,2,0,0,0,2,3,4,1000"
