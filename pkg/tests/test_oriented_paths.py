"""Tables for the Blue-Red game on directed paths, checked three ways:
against the search engine on small lengths, against a from-scratch scalar
recursion on moderate lengths, and against frozen landmark values."""

import io
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coloring_games import games, oriented_paths as op
from coloring_games.rulesets import BLUE, RED

from reference import ref_grundy

# landmark values, frozen from the k <= 12 engine cross-check plus the
# recursion continued past it
GA_SMALL = [0, 0, 1, 1, 2, 3, 1, 1, 4, 3, 2, 2, 4, 5, 2]
GD_SMALL = [0, 1, 2, 0, 3, 1, 0, 3, 3, 2, 4, 0, 5, 2, 3]
GC_SMALL = [0, 0, 0, 0, 1, 2, 0, 3, 1, 0, 3, 3, 2, 4, 0]

# every D length of value 0 up to 9000; none between 8084 and 9000
D_ZEROS = [
    3, 6, 11, 15, 16, 22, 27, 32, 38, 43, 49, 55, 59, 65, 66, 81, 85, 92,
    97, 101, 141, 145, 151, 178, 523, 1251, 1376, 1456, 1526, 1538, 3625,
    3678, 3933, 8084,
]


def scalar_tables(K):
    """The three Mex recursions, written plainly and independently."""
    a, c, d = [0] * (K + 1), [0] * (K + 1), [0] * (K + 1)
    for k in range(1, K + 1):
        opts = set()
        for i in range(3, k):
            opts.add(a[i - 2] ^ c[k + 1 - i])
        for i in range(2, k - 1):
            opts.add(c[i] ^ a[k - i - 1])
        c[k] = games.mex(opts)
        opts = set()
        for i in range(3, k + 1):
            opts.add(a[i - 2] ^ a[k + 1 - i])
        for i in range(2, k + 1):
            opts.add(c[i] ^ d[max(k - i - 1, 0)])
        a[k] = games.mex(opts)
        opts = set()
        for i in range(1, k + 1):
            opts.add(d[max(i - 2, 0)] ^ a[k + 1 - i])
            opts.add(a[i] ^ d[max(k - i - 1, 0)])
        d[k] = games.mex(opts)
    return a, c, d


@pytest.fixture(scope="module")
def table():
    return op.compute_tables(300)


def test_landmark_values(table):
    assert table.gA[:15].tolist() == GA_SMALL
    assert table.gD[:15].tolist() == GD_SMALL
    assert table.gC[2:15].tolist() == GC_SMALL[2:]


def test_matches_scalar_recursion(table):
    a, c, d = scalar_tables(300)
    assert table.gA.tolist() == a
    assert table.gC[2:].tolist() == c[2:]
    assert table.gD.tolist() == d


def test_engine_cross_validation(table):
    # B is built literally (last vertex Red), not via the mirror identity
    for klass in "ABCD":
        for k in range(2 if klass == "C" else 1, 13):
            pos = op.build_class_position(klass, k)
            assert games.grundy(pos) == table.value(klass, k), (klass, k)


def test_class_positions_reject_bad_input():
    with pytest.raises(ValueError):
        op.build_class_position("E", 5)
    with pytest.raises(ValueError):
        op.build_class_position("C", 1)
    with pytest.raises(ValueError):
        op.build_class_position("A", 0)


def test_reference_walker_agrees_on_tiny_paths(table):
    for klass in "AD":
        for k in range(1, 7):
            pos = op.build_class_position(klass, k)
            assert ref_grundy("oriented-br", pos.graph, 2, pos.coloring) == table.value(klass, k)


def test_offset_identity_full_table(table):
    for k in range(0, table.K - 2):
        assert table.value("C", k + 3) == table.value("D", k)


def test_a_and_b_positive_beyond_three(table):
    for k in range(4, table.K + 1):
        assert table.value("A", k) > 0
        assert table.value("B", k) > 0


def test_value_bounds(table):
    assert table.value("A", -5) == 0
    assert table.value("D", 0) == 0
    with pytest.raises(IndexError):
        table.value("A", table.K + 1)
    with pytest.raises(ValueError):
        table.value("C", 1)
    with pytest.raises(ValueError):
        table.value("Q", 4)


def test_d_zero_census_to_9000():
    t = op.compute_tables(9000)
    assert op.enumerate_p_positions(t, "D") == D_ZEROS
    assert op.enumerate_p_positions(t, "A") == [1]  # positive for every k > 1
    # by the offset identity the C zeros are the shifted D zeros plus the
    # two degenerate lengths whose D partner is the empty path
    zeros_c = op.enumerate_p_positions(t, "C")
    assert set(zeros_c) == {2, 3} | {k + 3 for k in D_ZEROS}


def test_p_position_enumeration_starts_at_one(table):
    assert op.enumerate_p_positions(table, "A")[0] == 1
    with pytest.raises(ValueError):
        op.enumerate_p_positions(table, "X")


# ---- rare/common structure ----

def test_rare_set_shape():
    rare = op.rare_set()
    assert len(rare) == 1024
    assert 0 in rare and 48 in rare  # 48 = 24 ^ 40
    assert 8 not in rare
    members = sorted(rare)
    for _ in range(500):
        x, y = random.choice(members), random.choice(members)
        assert (x ^ y) in rare


def test_classification_report(table):
    rep = op.classify_rare_common(table)
    rare = op.rare_set()
    assert all(v in rare for v in rep.rare_values)
    assert all(v not in rare for v in rep.common_values)
    assert rep.max_value == max(rep.value_counts)
    assert sum(rep.value_counts.values()) == 3 * table.K - 1  # C starts at 2
    assert rep.max_rare_index == max(rep.largest_rare_index.values())
    for name in "ACD":
        idx = rep.largest_rare_index[name]
        assert table.value(name, idx) in rare


def test_accelerated_matches_naive():
    naive = op.compute_tables(600)
    accel = op.compute_tables(600, mode="accelerated")
    assert naive.gA.tolist() == accel.gA.tolist()
    assert naive.gC.tolist() == accel.gC.tolist()
    assert naive.gD.tolist() == accel.gD.tolist()


def test_accelerated_extend_matches_naive_full(table):
    ext = op.extend_table(table, 450, mode="accelerated")
    assert ext.gA[:301].tolist() == table.gA.tolist()
    full = op.compute_tables(450)
    assert ext.gA.tolist() == full.gA.tolist()
    assert ext.gC.tolist() == full.gC.tolist()
    assert ext.gD.tolist() == full.gD.tolist()


def test_bad_mode_and_bounds():
    with pytest.raises(ValueError):
        op.compute_tables(10, mode="turbo")
    with pytest.raises(ValueError):
        op.compute_tables(0)


def test_budget_guard(monkeypatch):
    monkeypatch.setenv(games.TT_BYTES_ENV, "100")
    with pytest.raises(games.MemoryBudgetExceeded):
        op.compute_tables(1000)


# ---- moves ----

def _split_value(table, parts):
    total = 0
    for c, l in parts:
        total ^= table.value(c, l)
    return total


def test_move_options_reconstruct_entries(table):
    rng = random.Random(7)
    ks = list(range(1, 25)) + [rng.randrange(25, 201) for _ in range(30)]
    for klass in "ABCD":
        for k in ks:
            if klass == "C" and k < 2:
                continue
            opts = {_split_value(table, parts) for _, parts in op.class_move_options(klass, k)}
            assert games.mex(opts) == table.value(klass, k), (klass, k)


def test_move_options_are_engine_legal():
    for klass in "ABCD":
        for k in range(2 if klass == "C" else 1, 9):
            pos = op.build_class_position(klass, k)
            expect = set(games.legal_moves(pos))
            got = {mv for mv, _ in op.class_move_options(klass, k)}
            assert got == expect, (klass, k)


@pytest.mark.parametrize("klass", ["A", "B"])
def test_winning_move_small_by_engine(klass, table):
    for k in range(4, 13):
        mv = op.winning_move_AB(k, klass)
        pos = op.build_class_position(klass, k)
        assert mv in games.legal_moves(pos)
        assert games.grundy(games.apply_move(pos, mv)) == 0


@pytest.mark.parametrize("klass", ["A", "B"])
def test_winning_move_large_by_table(klass, table):
    for k in range(4, 201):
        mv = op.winning_move_AB(k, klass)
        matches = [p for m, p in op.class_move_options(klass, k) if m == mv]
        assert len(matches) == 1, (klass, k)
        assert _split_value(table, matches[0]) == 0, (klass, k)


def test_winning_move_known_splits():
    # A_5: Blue on v_4 leaves A_2 + A_2; A_6: Red on v_4 leaves C_4 + D_1
    assert op.winning_move_AB(5, "A") == games.Move(3, BLUE)
    assert op.winning_move_AB(6, "A") == games.Move(3, RED)
    t = op.compute_tables(10)
    assert (t.value("C", 4), t.value("D", 1)) == (1, 1)
    with pytest.raises(ValueError):
        op.winning_move_AB(3, "A")
    with pytest.raises(ValueError):
        op.winning_move_AB(8, "D")


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 200), st.sampled_from("ABCD"), st.data())
def test_split_soundness_random(table, k, klass, data):
    if klass == "C" and k < 2:
        k = 2
    moves = op.class_move_options(klass, k)
    if not moves:
        return
    _, parts = data.draw(st.sampled_from(moves))
    # every split reaches an option of the entry, and mex(S) is never in S
    assert _split_value(table, parts) != table.value(klass, k)


# ---- persistence ----

def test_save_load_round_trip(tmp_path, table):
    path = str(tmp_path / "t.bin")
    op.save_table(table, path)
    back = op.load_table(path)
    assert back.K == table.K
    assert back.gA.tolist() == table.gA.tolist()
    assert back.gC.tolist() == table.gC.tolist()
    assert back.gD.tolist() == table.gD.tolist()


def test_save_load_file_objects(table):
    buf = io.BytesIO()
    op.save_table(table, buf)
    back = op.load_table(io.BytesIO(buf.getvalue()))
    assert back.gD.tolist() == table.gD.tolist()


def test_corruption_detected(tmp_path, table):
    path = str(tmp_path / "t.bin")
    op.save_table(table, path)
    raw = bytearray(open(path, "rb").read())
    raw[40] ^= 0xFF
    with pytest.raises(op.TableChecksumError):
        op.load_table(io.BytesIO(bytes(raw)))


def test_bad_magic_and_version(table):
    buf = io.BytesIO()
    op.save_table(table, buf)
    raw = bytearray(buf.getvalue())
    with pytest.raises(op.TableFormatError):
        op.load_table(io.BytesIO(b"XXXX" + bytes(raw[4:])))
    bad = bytearray(raw)
    bad[4:6] = (99).to_bytes(2, "little")
    import hashlib
    bad[-8:] = hashlib.blake2b(bytes(bad[:-8]), digest_size=8).digest()
    with pytest.raises(op.TableVersionError):
        op.load_table(io.BytesIO(bytes(bad)))
    with pytest.raises(op.TableFormatError):
        op.load_table(io.BytesIO(b"CG"))


def test_extend_after_load_preserves_prefix(tmp_path):
    t100 = op.compute_tables(100)
    path = str(tmp_path / "t.bin")
    op.save_table(t100, path)
    t200 = op.extend_table(op.load_table(path), 200)
    assert t200.gA[:101].tolist() == t100.gA.tolist()
    assert t200.gA.tolist() == op.compute_tables(200).gA.tolist()
    assert op.extend_table(t200, 150) is t200  # no shrinking


def test_csv_export_deterministic(table):
    one, two = io.StringIO(), io.StringIO()
    op.export_csv(table, one)
    op.export_csv(table, two)
    assert one.getvalue() == two.getvalue()
    lines = one.getvalue().splitlines()
    assert len(lines) == table.K
    assert lines[0] == "1,0,0,1"
    k, ga, gc, gd = map(int, lines[13].split(","))
    assert (k, ga, gc, gd) == (14, 2, 0, 3)


def test_table_array_validation():
    with pytest.raises(ValueError):
        op.GrundyTable(K=3, gA=np.zeros(4, np.uint16), gC=np.zeros(4, np.uint16),
                       gD=np.zeros(3, np.uint16))
    with pytest.raises(ValueError):
        op.GrundyTable(K=3, gA=np.zeros(4, np.int32), gC=np.zeros(4, np.uint16),
                       gD=np.zeros(4, np.uint16))
