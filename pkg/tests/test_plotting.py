"""Distribution-grid rendering and portable-bitmap round-trips."""

import random

import numpy as np
import pytest

from hlf2d import BitVector, ResourceCapError, ValidationError, build_grid_instance, run_cla, solution_set
from hlf2d.plotting import (
    GridImage,
    grid_image_from_words,
    image_from_pbm,
    image_to_pbm,
    render_distribution_grid,
    save_figure,
    solutions_from_image,
)
from hlf2d.stream import solution_words


def bv(text):
    return BitVector.from_text(text)


def grid2_solution_image():
    inst = build_grid_instance(2, "0000")
    return render_distribution_grid(solution_set(inst, run_cla(inst)), 4)


def test_grid2_cells():
    image = grid2_solution_image()
    assert (image.width, image.height) == (4, 4)
    # (col, row) pairs: 0000->(00,00) 0110->(01,10) 1001->(10,01) 1111->(11,11)
    expected = {(0, 0), (1, 2), (2, 1), (3, 3)}
    occupied = {(int(c), int(r)) for r, c in zip(*np.nonzero(image.cells))}
    assert occupied == expected


def test_empty_and_full_sets():
    empty = render_distribution_grid([], 4)
    assert not empty.cells.any()
    full = render_distribution_grid([BitVector(4, v) for v in range(16)], 4)
    assert full.cells.all()


def test_odd_length_split():
    # n=3: 2 column bits, 1 row bit -> 4x2 image
    image = render_distribution_grid([bv("101")], 3)
    assert (image.width, image.height) == (4, 2)
    assert image.cell(col=2, row=1)


def test_mixed_lengths_rejected():
    with pytest.raises(ValidationError):
        render_distribution_grid([bv("10"), bv("100")], 2)


def test_image_size_cap():
    with pytest.raises(ResourceCapError):
        render_distribution_grid([], 30)


def test_words_renderer_matches_scalar():
    rng = random.Random(77)
    for n in (1, 2, 5, 11):
        values = [rng.getrandbits(n) for _ in range(min(40, 1 << n))]
        scalar = render_distribution_grid([BitVector(n, v) for v in values], n)
        vectorised = grid_image_from_words(np.array(values, dtype=np.uint64), n)
        assert scalar == vectorised


def test_words_renderer_on_instance_stream():
    inst = build_grid_instance(3, "000000001")
    cla = run_cla(inst)
    image = grid_image_from_words(solution_words(inst, cla), inst.n)
    assert image == render_distribution_grid(solution_set(inst, cla), inst.n)


def test_render_parse_recovers_solution_set():
    rng = random.Random(78)
    for n in (1, 3, 6, 9):
        values = {BitVector(n, rng.getrandbits(n)) for _ in range(min(50, 1 << n))}
        image = render_distribution_grid(values, n)
        assert solutions_from_image(image) == values


def test_pbm_p1_round_trip():
    image = grid2_solution_image()
    data = image_to_pbm(image, binary=False)
    assert data.startswith(b"P1\n4 4\n")
    assert image_from_pbm(data) == image


def test_pbm_p4_round_trip():
    rng = random.Random(79)
    for n in (1, 4, 9, 13):
        values = {BitVector(n, rng.getrandbits(n)) for _ in range(min(60, 1 << n))}
        image = render_distribution_grid(values, n)
        assert image_from_pbm(image_to_pbm(image, binary=True)) == image


def test_pbm_p1_tolerates_comments_and_spacing():
    data = b"P1\n# comment line\n2 2\n1 0\n0 1\n"
    image = image_from_pbm(data)
    assert image.cell(0, 0) and image.cell(1, 1)
    assert not image.cell(1, 0) and not image.cell(0, 1)


def test_pbm_rejects_garbage():
    with pytest.raises(ValidationError):
        image_from_pbm(b"P5\n2 2\n")
    with pytest.raises(ValidationError):
        image_from_pbm(b"P1\n2 2\n101")  # truncated pixel data


def test_image_dimension_validation():
    with pytest.raises(ValidationError):
        GridImage(3, 2, np.zeros((2, 3), dtype=bool))
    with pytest.raises(ValidationError):
        GridImage(4, 2, np.zeros((4, 2), dtype=bool))


def test_save_figure_writes_file(tmp_path):
    path = tmp_path / "dist.png"
    save_figure(grid2_solution_image(), str(path), title="demo")
    assert path.exists() and path.stat().st_size > 0
