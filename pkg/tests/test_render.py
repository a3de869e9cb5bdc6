import numpy as np
import pytest

from latticegames.engine import OutcomeGrid
from latticegames.kernels import CODE_DEFEATED, CODE_N, CODE_P
from latticegames.render import render_grid


def grid2(codes):
    data = np.array(codes, dtype=np.uint8)
    return OutcomeGrid((data.shape[0] - 1, data.shape[1] - 1), data)


def test_text_all_n():
    g = grid2([[CODE_N, CODE_N], [CODE_N, CODE_N]])
    assert render_grid(g, None, "text") == b"..\n..\n"


def test_text_orientation():
    # data[x][y]; y grows upward in the output, x to the right
    g = grid2([[CODE_P, CODE_N], [CODE_N, CODE_DEFEATED]])
    # top row is y=1: (0,1)='.', (1,1)='x'; bottom row y=0: '#', '.'
    assert render_grid(g, None, "text") == b".x\n#.\n"


def test_gasket_mask(gamma_prime_grid_48):
    # positions (6i,6j,1) for i,j <= 3, live cells where i & j == 0
    data = render_grid(gamma_prime_grid_48, 1, "text", highlight_stride=6)
    lines = data.decode().splitlines()
    window_lines = [row[:4] for row in lines[-4:]]
    assert window_lines == ["#...", "##..", "#.#.", "####"]


def test_pbm_matches_text():
    g = grid2([[CODE_P, CODE_N], [CODE_N, CODE_P]])
    pbm = render_grid(g, None, "pbm").decode().splitlines()
    assert pbm[0] == "P1"
    assert pbm[1] == "2 2"
    assert pbm[2:] == ["0 1", "1 0"]
    text = render_grid(g, None, "text").decode().splitlines()
    for prow, trow in zip(pbm[2:], text):
        assert ["1" if c == "#" else "0" for c in trow] == prow.split()


def test_svg_deterministic():
    g = grid2([[CODE_P, CODE_N], [CODE_DEFEATED, CODE_N]])
    a = render_grid(g, None, "svg")
    b = render_grid(g, None, "svg")
    assert a == b
    assert a.startswith(b"<svg ")
    assert b"black" in a and b"silver" in a


def test_unknown_format():
    g = grid2([[CODE_N]])
    with pytest.raises(ValueError):
        render_grid(g, None, "png")


def test_bad_highlight():
    g = grid2([[CODE_N]])
    with pytest.raises(ValueError):
        render_grid(g, None, "text", highlight_stride=0)
