import numpy as np
import pytest

from bispect.errors import DomainError, EmptyImageError, EmptyIndexError
from bispect.groups import SO3, distance, identity, to_euler, z_rotation
from bispect.glyphs import (
    GlyphIndex,
    PlanarMotion,
    apply_planar_motion,
    build_glyph_index,
    canvas_points,
    glyph_descriptor,
    lift_image,
    match,
    planar_motion_to_rotation,
    synthetic_glyphs,
)
from bispect.sphere import rotate_sphere


def test_zero_motion_is_identity_rotation():
    assert distance(planar_motion_to_rotation(PlanarMotion(0.0)), identity(SO3)) < 1e-15


def test_pure_rotation_maps_to_z_rotation():
    rot = planar_motion_to_rotation(PlanarMotion(0.8))
    assert distance(rot, z_rotation(0.8)) < 1e-12


def test_pure_translation_inverts_stated_relations():
    theta0 = 0.3
    rot = planar_motion_to_rotation(PlanarMotion(0.0, np.sin(theta0), 0.0))
    ang = to_euler(rot)
    assert abs(ang.beta - theta0) < 1e-12
    assert abs(ang.alpha) < 1e-12


def test_motion_translation_bound():
    with pytest.raises(DomainError):
        PlanarMotion(0.0, 0.9, 0.9)


def test_uniform_disk_lifts_to_upper_hemisphere():
    img = np.ones((64, 64))
    s = lift_image(img, 8)
    upper = s.grid.thetas < np.pi / 2
    assert np.max(np.abs(s.values[upper, :] - 1.0)) < 1e-12
    assert np.max(np.abs(s.values[~upper, :])) == 0.0


def test_centered_dot_concentrates_at_pole():
    pts = canvas_points(64)
    img = np.exp(-(np.linalg.norm(pts, axis=-1) / 0.1) ** 2)
    s = lift_image(img, 16)
    vals = np.abs(s.values)
    polar_mass = vals[s.grid.thetas < 0.3, :].sum()
    rest = vals[s.grid.thetas >= 0.3, :].sum()
    assert polar_mass > 10 * rest


def test_empty_image_errors():
    with pytest.raises(EmptyImageError):
        lift_image(np.zeros((0, 0)), 8)
    with pytest.raises(EmptyImageError):
        lift_image(np.zeros((32, 32)), 8)


def test_motion_then_lift_matches_lift_then_rotate():
    # smooth test pattern; empirical tolerance for the local correspondence
    pts = canvas_points(64)
    img = np.exp(-(np.linalg.norm(pts - np.array([-0.15, 0.1]), axis=-1) / 0.3) ** 2)
    img += 0.7 * np.exp(-(np.linalg.norm(pts - np.array([0.25, -0.1]), axis=-1) / 0.25) ** 2)
    for motion in (PlanarMotion(0.3), PlanarMotion(0.0, 0.05, -0.03), PlanarMotion(0.25, 0.06, 0.04)):
        moved = lift_image(apply_planar_motion(img, motion), 16)
        rotated = rotate_sphere(lift_image(img, 16), planar_motion_to_rotation(motion), method="bilinear")
        assert np.max(np.abs(moved.values - rotated.values)) < 5e-2


def test_match_exact_query_is_rank_one_with_zero_distance():
    glyphs = synthetic_glyphs(64)
    index = build_glyph_index(glyphs, 8, 3)
    query = glyph_descriptor(glyphs["cross"], 8, 3)
    ranked = match(query, index)
    assert ranked[0][0] == "cross"
    assert ranked[0][1] < 1e-12
    assert len(ranked) == 5


def test_match_unseen_glyph_reports_distances():
    glyphs = synthetic_glyphs(64)
    index = build_glyph_index({k: v for k, v in glyphs.items() if k != "ring"}, 8, 3)
    ranked = match(glyph_descriptor(glyphs["ring"], 8, 3), index)
    assert len(ranked) == 4
    assert all(d > 0 for _, d in ranked)


def test_match_moved_glyph(rng):
    glyphs = synthetic_glyphs(64)
    index = build_glyph_index(glyphs, 16, 4)
    motion = PlanarMotion(1.1, 0.06, -0.04)
    moved = apply_planar_motion(glyphs["hook"], motion)
    ranked = match(glyph_descriptor(moved, 16, 4), index)
    assert ranked[0][0] == "hook"


def test_empty_index_errors():
    index = GlyphIndex(3, ())
    glyphs = synthetic_glyphs(32)
    with pytest.raises(EmptyIndexError):
        match(glyph_descriptor(glyphs["bar"], 8, 3), index)


def test_index_bandlimit_uniformity():
    glyphs = synthetic_glyphs(32)
    index = build_glyph_index(glyphs, 8, 3)
    with pytest.raises(DomainError):
        match(glyph_descriptor(glyphs["bar"], 8, 2), index)


def test_synthetic_glyphs_shapes():
    glyphs = synthetic_glyphs(64)
    assert len(glyphs) == 5
    for img in glyphs.values():
        assert img.shape == (64, 64)
        assert img.min() >= 0.0 and img.max() <= 1.0
