"""Enumeration tests: published sets, Gray locality, chunking, digests, writers."""

import io
import random

import numpy as np
import pytest

from hlf2d import (
    BitMatrix,
    BitVector,
    ResourceCapError,
    ValidationError,
    build_general_instance,
    build_grid_instance,
    check_solution,
    run_cla,
    solution_set,
    solution_words,
)
from hlf2d.stream import (
    Digest,
    MAX_RANK_ENV_VAR,
    digest_chunk,
    digest_solutions,
    enumerate_chunk,
    enumerate_solutions,
    _hash_solution_int,
    partition_ranges,
    pivot_column_ints,
    write_binary,
    write_text,
)
from conftest import column_space_closure, random_general, random_grid


def texts(vectors):
    return sorted(v.to_text() for v in vectors)


def prepared(ref):
    inst = build_grid_instance(int(ref.split(":")[1]), ref.split(":")[2])
    return inst, run_cla(inst)


# --- published solution sets ------------------------------------------------


def test_grid2_b0000_set():
    inst, cla = prepared("grid:2:0000")
    assert texts(solution_set(inst, cla)) == ["0000", "0110", "1001", "1111"]


def test_grid2_b1011_set():
    inst, cla = prepared("grid:2:1011")
    assert texts(solution_set(inst, cla)) == [
        "0001", "0011", "0100", "0110", "1000", "1010", "1101", "1111",
    ]


def test_grid2_b1111_all_sixteen():
    inst, cla = prepared("grid:2:1111")
    assert texts(solution_set(inst, cla)) == sorted(
        format(v, "04b") for v in range(16)
    )


# --- stream structure --------------------------------------------------------


def test_stream_length_distinct_and_indexed():
    rng = random.Random(61)
    for inst in (random_grid(2, rng), random_grid(3, rng), random_general(9, rng)):
        cla = run_cla(inst)
        items = list(enumerate_solutions(inst, cla))
        assert [t for t, _ in items] == list(range(1 << cla.r))
        values = [z for _, z in items]
        assert len(set(values)) == 1 << cla.r


def test_gray_locality_single_column_steps():
    inst, cla = prepared("grid:3:000000000")
    cols = {BitVector(inst.n, c) for c in pivot_column_ints(inst, cla)}
    items = list(enumerate_solutions(inst, cla))
    for (_, a), (_, b) in zip(items, items[1:]):
        assert (a ^ b) in cols


def test_solution_set_is_shifted_column_space():
    rng = random.Random(62)
    for inst in (random_grid(2, rng), random_general(8, rng)):
        cla = run_cla(inst)
        expected = {cla.z_a.value ^ y for y in column_space_closure(inst.a)}
        assert {z.value for z in solution_set(inst, cla)} == expected


def test_every_streamed_solution_satisfies_the_condition():
    rng = random.Random(63)
    for inst in (random_grid(2, rng), random_grid(3, rng)):
        cla = run_cla(inst)
        for _, z in enumerate_solutions(inst, cla):
            assert check_solution(inst, z)


# --- chunking ---------------------------------------------------------------


def test_chunk_identity_partition():
    inst, cla = prepared("grid:3:000000000")
    full = list(enumerate_solutions(inst, cla))
    assert list(enumerate_chunk(inst, cla, 0, 1 << cla.r)) == full


def test_two_halves_cover_exactly():
    inst, cla = prepared("grid:3:000000000")
    assert cla.r == 6
    half = 1 << 5
    first = list(enumerate_chunk(inst, cla, 0, half))
    second = list(enumerate_chunk(inst, cla, half, half))
    union = {z for _, z in first} | {z for _, z in second}
    assert len(first) == len(second) == half
    assert {z for _, z in first}.isdisjoint(z for _, z in second)
    assert union == solution_set(inst, cla)


def test_chunks_match_full_stream_itemwise():
    inst, cla = prepared("grid:2:1011")
    full = list(enumerate_solutions(inst, cla))
    for chunks in (1, 2, 3, 8):
        rebuilt = []
        for start, count in partition_ranges(1 << cla.r, chunks):
            rebuilt.extend(enumerate_chunk(inst, cla, start, count))
        assert rebuilt == full


def test_empty_chunk():
    inst, cla = prepared("grid:2:0000")
    assert list(enumerate_chunk(inst, cla, 2, 0)) == []


def test_chunk_bounds_checked():
    inst, cla = prepared("grid:2:0000")
    with pytest.raises(ValidationError):
        enumerate_chunk(inst, cla, 0, 5)
    with pytest.raises(ValidationError):
        enumerate_chunk(inst, cla, -1, 1)
    with pytest.raises(ValidationError):
        enumerate_chunk(inst, cla, 4, 1)


def test_partition_ranges():
    assert partition_ranges(10, 3) == [(0, 4), (4, 3), (7, 3)]
    assert partition_ranges(4, 8) == [
        (0, 1), (1, 1), (2, 1), (3, 1), (4, 0), (4, 0), (4, 0), (4, 0),
    ]
    with pytest.raises(ValidationError):
        partition_ranges(4, 0)


# --- rank cap ----------------------------------------------------------------


def big_rank_instance():
    # identity-diagonal instance: rank n with no edges
    return build_general_instance(BitMatrix.identity(40))


def test_rank_cap_refusal_mentions_env_var():
    inst = big_rank_instance()
    cla = run_cla(inst)
    with pytest.raises(ResourceCapError, match=MAX_RANK_ENV_VAR):
        list(enumerate_solutions(inst, cla))


def test_rank_cap_explicit_override():
    inst = build_grid_instance(2, "1111")
    cla = run_cla(inst)
    with pytest.raises(ResourceCapError):
        list(enumerate_solutions(inst, cla, max_rank=3))
    assert len(solution_set(inst, cla, max_rank=4)) == 16


def test_rank_cap_env_override(monkeypatch):
    inst = build_grid_instance(2, "1111")
    cla = run_cla(inst)
    monkeypatch.setenv(MAX_RANK_ENV_VAR, "3")
    with pytest.raises(ResourceCapError):
        list(enumerate_solutions(inst, cla))
    monkeypatch.setenv(MAX_RANK_ENV_VAR, "40")
    assert len(solution_set(inst, cla)) == 16
    monkeypatch.setenv(MAX_RANK_ENV_VAR, "zebra")
    with pytest.raises(ValidationError):
        list(enumerate_solutions(inst, cla))


# --- word kernel --------------------------------------------------------------


def test_solution_words_match_iterator():
    rng = random.Random(64)
    for inst in (random_grid(2, rng), random_grid(3, rng), random_general(12, rng)):
        cla = run_cla(inst)
        words = solution_words(inst, cla)
        by_iter = [v for _, v in enumerate_solutions(inst, cla)]
        assert [int(w) for w in words] == [z.value for z in by_iter]


def test_solution_words_multiword():
    # 70 vertices, two disjoint edges: rank 4, solutions are 70 bits wide
    n = 70
    rows = [0] * n
    for (i, j) in ((1, 2), (3, 4)):
        rows[i - 1] |= 1 << (j - 1)
        rows[j - 1] |= 1 << (i - 1)
    inst = build_general_instance(BitMatrix.from_row_ints(n, rows))
    cla = run_cla(inst)
    assert cla.r == 4
    words = solution_words(inst, cla)
    assert words.shape == (16, 2)
    values = [int(w[0]) | (int(w[1]) << 64) for w in words]
    assert values == [z.value for _, z in enumerate_solutions(inst, cla)]


def test_solution_words_range():
    inst, cla = prepared("grid:3:000000000")
    words = solution_words(inst, cla, start=10, count=7)
    expected = [v for _, v in enumerate_chunk(inst, cla, 10, 7)]
    assert [int(w) for w in words] == [z.value for z in expected]


# --- digests -------------------------------------------------------------------


def scalar_digest(inst, cla, start, count):
    xor_acc = 0
    mix_acc = 0
    total = 0
    for _, z in enumerate_chunk(inst, cla, start, count):
        xor_acc ^= z.value
        mix_acc ^= _hash_solution_int(z.value, inst.n)
        total += 1
    return Digest(total, xor_acc, mix_acc)


def test_digest_matches_scalar_twin():
    rng = random.Random(65)
    for inst in (random_grid(2, rng), random_grid(3, rng)):
        cla = run_cla(inst)
        total = 1 << cla.r
        assert digest_chunk(inst, cla, 0, total) == scalar_digest(inst, cla, 0, total)
        assert digest_chunk(inst, cla, 1, total - 1) == scalar_digest(inst, cla, 1, total - 1)


def test_digest_matches_scalar_twin_multiword():
    n = 70
    rows = [0] * n
    for (i, j) in ((1, 2), (3, 4), (9, 70)):
        rows[i - 1] |= 1 << (j - 1)
        rows[j - 1] |= 1 << (i - 1)
    inst = build_general_instance(BitMatrix.from_row_ints(n, rows))
    cla = run_cla(inst)
    total = 1 << cla.r
    assert digest_chunk(inst, cla, 0, total) == scalar_digest(inst, cla, 0, total)


def test_digest_identical_across_chunk_counts():
    inst, cla = prepared("grid:4:0000000000000000")
    reference = digest_solutions(inst, cla, chunks=1)
    for chunks in (2, 3, 8):
        assert digest_solutions(inst, cla, chunks=chunks) == reference
    assert reference.count == 1 << 12


def test_digest_merge_algebra():
    a = Digest(2, 0b01, 5)
    b = Digest(3, 0b10, 9)
    assert a.merge(b) == Digest(5, 0b11, 12)
    assert Digest.combine([a, b]) == a.merge(b)
    assert "count=5" in str(a.merge(b))


# --- writers --------------------------------------------------------------------


def test_write_text_round_trip():
    inst, cla = prepared("grid:2:1011")
    buf = io.StringIO()
    assert write_text(inst, cla, buf) == 8
    lines = buf.getvalue().splitlines()
    assert sorted(lines) == texts(solution_set(inst, cla))


def test_write_binary_round_trip():
    inst, cla = prepared("grid:3:000000001")
    buf = io.BytesIO()
    count = write_binary(inst, cla, buf)
    data = np.frombuffer(buf.getvalue(), dtype="<u8")
    assert data.size == count == 1 << cla.r
    assert [int(v) for v in data] == [z.value for _, z in enumerate_solutions(inst, cla)]


def test_write_binary_bit_order():
    # solution 1000 must serialise with byte 0 = 0x01
    inst, cla = prepared("grid:2:0000")
    buf = io.BytesIO()
    write_binary(inst, cla, buf)
    raw = buf.getvalue()
    values = {raw[i * 8] for i in range(4)}
    assert values == {z.value & 0xFF for z in solution_set(inst, cla)}
