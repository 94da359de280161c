import math

import pytest

from coversphere.catalog import get_rule
from coversphere.growth import stage_tilings
from coversphere.pack import (PackError, flower, pack, render_svg,
                              tangency_error, triangulate)
from coversphere.tiling import Tiling, face_spec


def test_hex_flower_unit_radius():
    label = pack(flower(6))
    assert label.radius["c"] == pytest.approx(1.0, abs=1e-9)


def test_five_flower_scalar_solve():
    # interior radius r solves 10*arcsin(1/(1+r)) = 2*pi
    expect = 1.0 / math.sin(math.pi / 5) - 1.0
    label = pack(flower(5))
    assert label.radius["c"] == pytest.approx(expect, abs=1e-6)


def test_seven_flower_radius_exceeds_one():
    assert pack(flower(7)).radius["c"] > 1.0


def test_cube_triangulation():
    t = get_rule("torus3").initial
    p = triangulate(t, 0)
    assert len(p.triangles) == 20
    assert len(p.boundary) == 4


def test_tetrahedron_no_starring():
    t = get_rule("barycentric").initial
    p = triangulate(t, 0)
    assert len(p.triangles) == 3
    assert all(not isinstance(v, tuple) for v in p.vertices)


def test_torus_input_rejected():
    sq = face_spec("sq", ["a", "a", "a", "a"], ["e1", "e2", "e1", "e2"])
    torus = Tiling([sq])
    with pytest.raises(PackError):
        triangulate(torus, 0)


def test_shipped_stages_pack_within_tolerance():
    e = get_rule("torus3")
    for t in stage_tilings(e, 3, "replacement"):
        label = pack(triangulate(t, 0))
        assert label.residual <= 1e-8
        assert tangency_error(label) <= 1e-6


def test_symmetric_input_symmetric_radii():
    label = pack(flower(8))
    petals = [label.radius[f"p{i}"] for i in range(8)]
    assert all(r == 1.0 for r in petals)
    # cube minus a face has a 4-fold symmetry: radii come in multiplets
    t = get_rule("torus3").initial
    label = pack(triangulate(t, 0))
    from collections import Counter
    sizes = Counter(round(r, 7) for r in label.radius.values())
    assert all(m % 4 == 0 or m == 1 for m in sizes.values())


def test_svg_output():
    label = pack(flower(6))
    svg = render_svg(label)
    assert svg.count("<circle") == 7
    assert svg.startswith("<?xml")
    assert render_svg(label) == svg


def test_empty_label_rejected():
    p = flower(6)
    from coversphere.pack import PackingLabel
    with pytest.raises(PackError):
        render_svg(PackingLabel(p, {v: 1.0 for v in p.vertices}))
