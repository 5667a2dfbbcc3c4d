import math
import xml.etree.ElementTree as ET

import pytest

from boltzmann import WallState, make_params, orbit
from boltzmann.render import RenderSpec, render_svg

from conftest import GENERIC, PERIOD3

NS = {"svg": "http://www.w3.org/2000/svg"}


def _parse(text):
    return ET.fromstring(text.encode())


def test_period3_picture():
    p = make_params(*PERIOD3).as_float()
    states = orbit(WallState(math.sqrt(3), 0.0, 0.25), p, 3)
    root = _parse(render_svg(p, states))
    arcs = root.findall(".//svg:polyline[@class='arc']", NS)
    assert [a.get("data-step") for a in arcs] == ["0", "1", "2"]
    assert root.findall(".//svg:line", NS)  # the wall
    assert root.findall(".//svg:polyline[@class='caustic_plus']", NS)
    assert root.findall(".//svg:circle[@class='circle']", NS)


def test_zero_steps_only_wall_and_caustics():
    p = make_params(*GENERIC).as_float()
    root = _parse(render_svg(p, [WallState(0.0, 0.0, 0.0)], show_circle=False))
    assert not root.findall(".//svg:polyline[@class='arc']", NS)
    assert root.findall(".//svg:polyline[@class='caustic_minus']", NS)
    assert not root.findall(".//svg:circle[@class='circle']", NS)


def test_render_is_deterministic():
    p = make_params(*GENERIC).as_float()
    states = orbit(WallState(1.1647840633363817, 0.15118877715261886, -0.03873586904659976), p, 5)
    assert render_svg(p, states) == render_svg(p, states)


def test_render_spec_validation():
    with pytest.raises(ValueError):
        RenderSpec(samples_per_arc=1)
    with pytest.raises(ValueError):
        RenderSpec(viewport=(1, 0, 0, 1))
    spec = RenderSpec(viewport=(-2, 2, 0, 4))
    p = make_params(*PERIOD3).as_float()
    root = _parse(render_svg(p, [WallState(math.sqrt(3), 0.0, 0.25)], spec))
    assert root.get("viewBox") == "-2 0 4 4"
