import math

import numpy as np
import pytest

from gclink.errors import InvalidInputError
from gclink.geom4 import GreatCircle
from gclink.greatlink import GreatCircleLink, construct_dpq, linking_matrix
from gclink.projection import (
    render_projection,
    scene_linking_sums,
    scene_to_svg,
)

from conftest import coprime_pairs

Z_CIRCLE = GreatCircle([1, 0, 0, 0], [0, 1, 0, 0])


class TestScene:
    def test_hopf_like_two_crossing_pairs(self):
        link = construct_dpq(1, 2)
        scene = render_projection(link, samples=400)
        between = scene.crossings_between(0, 1)
        assert len(between) % 2 == 0 and len(between) >= 2
        lk = linking_matrix(link)
        sums = scene_linking_sums(scene, 2)
        assert sums[0, 1] == lk[0, 1]

    def test_single_circle_no_crossings(self):
        scene = render_projection(GreatCircleLink((Z_CIRCLE,)), samples=256)
        assert scene.crossings == ()
        assert len(scene.curves) == 1

    def test_d25_structure(self):
        link = construct_dpq(2, 5)
        scene = render_projection(link, samples=400)
        assert len(scene.curves) == 5
        for c in scene.crossings:
            assert c.depth_gap > 1e-6
            assert c.sign in (1, -1)
            assert c.over_component != c.under_component

    def test_signed_halves_match_linking_matrix(self):
        for (p, q) in coprime_pairs(9):
            link = construct_dpq(p, q)
            scene = render_projection(link, samples=400)
            lk = linking_matrix(link)
            sums = scene_linking_sums(scene, q)
            assert np.array_equal(sums, lk), (p, q)
            for i in range(q):
                for j in range(i + 1, q):
                    assert len(scene.crossings_between(i, j)) % 2 == 0

    def test_crossings_stable_under_resampling(self):
        link = construct_dpq(2, 5)
        a = render_projection(link, samples=400)
        b = render_projection(link, samples=700)
        assert len(a.crossings) == len(b.crossings)
        key_a = sorted((c.over_component, c.under_component,
                        round(c.over_param, 5)) for c in a.crossings)
        key_b = sorted((c.over_component, c.under_component,
                        round(c.over_param, 5)) for c in b.crossings)
        assert key_a == key_b

    def test_rejects_low_sample_count(self):
        with pytest.raises(InvalidInputError):
            render_projection(construct_dpq(1, 2), samples=50)

    def test_pole_perturbed_off_link(self):
        # a pole angle directly on an axis point must be nudged, not fail
        link = construct_dpq(2, 5)
        scene = render_projection(link, samples=400, pole_angle=math.pi / 5)
        assert scene.pole_angle != math.pi / 5
        assert len(scene.curves) == 5


class TestSvg:
    def test_deterministic_output(self):
        link = construct_dpq(2, 5)
        s1 = scene_to_svg(render_projection(link, samples=400))
        s2 = scene_to_svg(render_projection(link, samples=400))
        assert s1 == s2

    def test_component_and_axis_elements(self):
        link = construct_dpq(2, 5)
        svg = scene_to_svg(render_projection(link, samples=400))
        assert svg.count('class="component"') == 5
        assert svg.count('class="w-axis"') == 1
        assert 'stroke-dasharray' in svg
        assert svg.startswith('<?xml version="1.0"')
        assert svg.rstrip().endswith("</svg>")

    def test_under_strand_gaps_present(self):
        link = construct_dpq(2, 5)
        scene = render_projection(link, samples=400)
        svg = scene_to_svg(scene)
        under_counts = [0] * 5
        for c in scene.crossings:
            under_counts[c.under_component] += 1
        paths = [line for line in svg.splitlines() if 'class="component"' in line]
        assert len(paths) == 5
        broken = 0
        for line in paths:
            index = int(line.split('data-index="')[1].split('"')[0])
            if under_counts[index] == 0:
                # the globally topmost strand stays unbroken and closed
                assert line.count("M ") == 1 and " Z" in line
            else:
                # gapped: drawn as open subpaths (nearby gaps may merge into one)
                assert " Z" not in line
                broken += line.count("M ") > 1
        assert broken >= 1

    def test_single_circle_closed_path(self):
        svg = scene_to_svg(render_projection(GreatCircleLink((Z_CIRCLE,)), samples=256))
        for line in svg.splitlines():
            if 'class="component"' in line:
                assert line.count("M ") == 1
                assert " Z" in line
