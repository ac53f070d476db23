"""Bundled demonstration data: matrices, a diagram, and two flow paths.

Everything here is loadable by name, and `tnncells fixtures --out DIR`
copies the raw files somewhere convenient for command-line experiments.

Names:

* ``tnn_4x4``: a totally nonnegative integer matrix with a zero corner.
* ``symmetric_4x4``: a symmetric TNN matrix.
* ``near_tnn_4x4``: entrywise nonnegative but with one negative 2x2 minor.
* ``restore_seed_3x3``: the starting matrix of the worked restoration run.
* ``demo_diagram_3x3``: the three-black-cell diagram used across examples.
* ``path_matrix_3x3``: the path matrix of that diagram's network.
* ``flow_linear_2x2`` / ``flow_exponential_2x2``: Hamiltonian flow paths
  for H = a, one polynomial and one exponential.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .diagrams import CauchonDiagram
from .errors import DomainError
from .matrices import Matrix, matrix_from_json
from .poisson import FlowPath

MATRIX_NAMES = (
    "tnn_4x4",
    "symmetric_4x4",
    "near_tnn_4x4",
    "restore_seed_3x3",
    "path_matrix_3x3",
)
DIAGRAM_NAMES = ("demo_diagram_3x3",)
FLOW_NAMES = ("flow_linear_2x2", "flow_exponential_2x2")

_EXTENSIONS = {name: ".json" for name in MATRIX_NAMES + FLOW_NAMES}
_EXTENSIONS.update({name: ".diag" for name in DIAGRAM_NAMES})


def _read(name: str) -> str:
    if name not in _EXTENSIONS:
        raise DomainError(f"unknown fixture {name!r}")
    path = resources.files("tnncells").joinpath("data", name + _EXTENSIONS[name])
    return path.read_text()


def load_matrix(name: str) -> Matrix:
    if name not in MATRIX_NAMES:
        raise DomainError(f"{name!r} is not a matrix fixture")
    return matrix_from_json(json.loads(_read(name)))


def load_diagram(name: str) -> CauchonDiagram:
    if name not in DIAGRAM_NAMES:
        raise DomainError(f"{name!r} is not a diagram fixture")
    return CauchonDiagram.from_ascii(_read(name))


def load_flow(name: str) -> FlowPath:
    if name not in FLOW_NAMES:
        raise DomainError(f"{name!r} is not a flow fixture")
    return FlowPath.from_json(json.loads(_read(name)))


def export_all(target: str | Path) -> list[Path]:
    """Copy every bundled fixture into the target directory."""
    target = Path(target)
    target.mkdir(parents=True, exist_ok=True)
    written = []
    for name, ext in sorted(_EXTENSIONS.items()):
        out = target / (name + ext)
        out.write_text(_read(name))
        written.append(out)
    return written
