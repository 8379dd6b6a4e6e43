"""Disk diagrams of knots and links.

Diagrams are passed as JSON text or as the equivalent dict; functions that
return a diagram return it as a dict.
"""

import json

from . import _core
from ._core import RibbonError, catalog_names, closed_form, crossing_bound

__all__ = [
    "RibbonError",
    "catalog_names",
    "catalog",
    "length",
    "ribbonlength",
    "closed_form",
    "gradient",
    "minimize",
    "certify",
    "check",
    "crossing_bound",
    "render_svg",
]


def _text(diagram):
    if isinstance(diagram, str):
        return diagram
    return json.dumps(diagram)


def catalog(name):
    entry = _core.catalog_entry(name)
    entry["diagram"] = json.loads(entry["diagram"])
    return entry


def length(diagram):
    return _core.length(_text(diagram))


def ribbonlength(diagram):
    return _core.ribbonlength(_text(diagram))


def gradient(diagram):
    return _core.gradient(_text(diagram))


def minimize(diagram, tol=1e-9, max_iters=100000, step=0.05, fixed=()):
    out = _core.minimize(_text(diagram), tol, max_iters, step, list(fixed))
    out["diagram"] = json.loads(out["diagram"])
    return out


def certify(diagram, tol=1e-6):
    return _core.certify(_text(diagram), tol)


def check(diagram, sample_step=0.0, grid_step=0.05):
    return _core.check(_text(diagram), sample_step, grid_step)


def render_svg(diagram, scale=40.0, ribbon=False, disks=False, violations=False):
    return _core.render_svg(_text(diagram), scale, ribbon, disks, violations)
