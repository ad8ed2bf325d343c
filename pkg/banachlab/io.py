"""
JSON algebra files and element coefficient parsing
"""

import json
import logging
from pathlib import Path
from typing import Union

import numpy as np

from .algebra import AlgebraSpec, Element
from .builders import GALLERY_ALGEBRAS, named_algebra
from .exceptions import InconsistentDimensions

log = logging.getLogger(__name__)

PathLike = Union[str, Path]


def load_algebra(source: PathLike) -> AlgebraSpec:
    """
    Load an algebra from a JSON file, or a gallery algebra by name

    The file holds {"dim", "mult": [[i, j, coeffs], ...], "norm", "identity", "label"};
    complex numbers are written as [re, im] pairs or plain reals.

    Raises:
        OSError, json.JSONDecodeError, and the construction errors of build_algebra
    """
    if str(source) in GALLERY_ALGEBRAS:
        return named_algebra(str(source))
    path = Path(source)
    with path.open("r", encoding="utf-8") as fh:
        data = json.load(fh)
    log.info("loading algebra from %s", path)
    return AlgebraSpec.from_dict(data)


def save_algebra(algebra: AlgebraSpec, path: PathLike) -> None:
    Path(path).write_text(json.dumps(algebra.to_dict(), indent=2), encoding="utf-8")


def parse_coefficients(text: str, algebra: AlgebraSpec) -> Element:
    """
    Element from a coefficient string

    Accepts a JSON list of numbers or [re, im] pairs ("[0.5, [0, 1]]"),
    or comma separated Python complex literals ("0.5,1j").
    """
    text = text.strip()
    if text.startswith("["):
        coeffs = np.array([complex(*v) if isinstance(v, list) else complex(v) for v in json.loads(text)])
    else:
        coeffs = np.array([complex(part.replace(" ", "")) for part in text.split(",") if part.strip()])
    if coeffs.shape != (algebra.dim,):
        raise InconsistentDimensions(f"expected {algebra.dim} coefficients, got {coeffs.size}")
    return Element(coeffs, algebra)


def write_json(report: dict, path: PathLike) -> None:
    """Deterministic JSON: sorted keys, fixed indentation"""
    Path(path).write_text(json.dumps(report, indent=2, sort_keys=True) + "\n", encoding="utf-8")
