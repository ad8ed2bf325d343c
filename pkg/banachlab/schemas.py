"""
Norm descriptors and result records for banachlab
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from .exceptions import InconsistentDimensions


class NormKind(str, Enum):
    """Norm families with exactly computable values"""
    L1 = "l1"
    OPNORM = "opnorm"
    LINF_SUM = "linf_sum"


class OpDomain(str, Enum):
    """Coordinate space an OpNorm representation acts on"""
    L1 = "l1"
    LINF = "linf"
    L2 = "l2"


class PowerMethod(str, Enum):
    SERIES = "series"
    QUADRATURE = "quadrature"


class IdealSide(str, Enum):
    RIGHT = "right"
    LEFT = "left"
    TWO_SIDED = "two-sided"


class SupportRoute(str, Enum):
    ALGEBRAIC = "algebraic"
    LIMIT = "limit"


class LiftMode(str, Enum):
    CLOSED_FORM = "closed_form"
    ITERATION = "iteration"


def _encode_complex(values) -> Any:
    array = np.asarray(values, dtype=complex)
    if array.ndim == 0:
        return [float(array.real), float(array.imag)]
    return [_encode_complex(v) for v in array]


def _decode_complex(data, ndim: int = 1) -> np.ndarray:
    """Inverse of _encode_complex for an array of rank ndim; plain real arrays are accepted too"""
    array = np.asarray(data, dtype=float)
    if array.ndim == ndim + 1 and array.shape[-1] == 2:
        return array[..., 0] + 1j * array[..., 1]
    return array.astype(complex)


class NormSpec:
    """Norm descriptor of an algebra"""

    def __init__(
        self,
        kind: NormKind,
        weights: Optional[np.ndarray] = None,
        domain: Optional[OpDomain] = None,
        rep: Optional[np.ndarray] = None,
        left: Optional[Any] = None,
        right: Optional[Any] = None,
    ):
        self.kind = NormKind(kind)
        self.weights = None if weights is None else np.asarray(weights, dtype=float)
        self.domain = None if domain is None else OpDomain(domain)
        self.rep = None if rep is None else np.asarray(rep, dtype=complex)
        self.left = left
        self.right = right
        if self.weights is not None and np.any(self.weights <= 0):
            raise InconsistentDimensions("norm weights must be positive")

    @classmethod
    def l1(cls, weights=None) -> "NormSpec":
        return cls(NormKind.L1, weights=weights)

    @classmethod
    def opnorm(cls, rep, domain: str = "l1", weights=None) -> "NormSpec":
        return cls(NormKind.OPNORM, weights=weights, domain=domain, rep=rep)

    @classmethod
    def linf_sum(cls, left, right) -> "NormSpec":
        return cls(NormKind.LINF_SUM, left=left, right=right)

    def to_dict(self) -> dict:
        """Convert to the JSON algebra-file norm block"""
        data: Dict[str, Any] = {"type": self.kind.value}
        if self.weights is not None:
            data["weights"] = self.weights.tolist()
        if self.kind == NormKind.OPNORM:
            data["domain"] = self.domain.value
            data["rep"] = _encode_complex(self.rep)
        if self.kind == NormKind.LINF_SUM:
            data["left"] = self.left.to_dict()
            data["right"] = self.right.to_dict()
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "NormSpec":
        kind = NormKind(data.get("type", "l1"))
        if kind == NormKind.L1:
            return cls.l1(data.get("weights"))
        if kind == NormKind.OPNORM:
            return cls.opnorm(_decode_complex(data["rep"], ndim=3), data.get("domain", "l1"), data.get("weights"))
        from .algebra import AlgebraSpec
        return cls.linf_sum(AlgebraSpec.from_dict(data["left"]), AlgebraSpec.from_dict(data["right"]))


@dataclass
class ConeReport:
    """Membership of an element in F_A, (1/2)F_A and r_A"""
    in_F: bool
    in_halfF: bool
    min_re: float
    accretive: bool
    crosscheck_ok: bool
    norm_one_minus: float = float("nan")
    norm_one_minus_two: float = float("nan")

    def to_dict(self) -> dict:
        return {
            "in_F": self.in_F,
            "in_halfF": self.in_halfF,
            "min_re": self.min_re,
            "accretive": self.accretive,
            "crosscheck_ok": self.crosscheck_ok,
            "norm_one_minus": self.norm_one_minus,
            "norm_one_minus_two": self.norm_one_minus_two,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ConeReport":
        return cls(**data)


@dataclass
class NumericalRangeEstimate:
    """Outer support-function body plus an optional inner point cloud"""
    directions: np.ndarray
    outer: np.ndarray
    inner: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=complex))
    hausdorff_gap: float = float("nan")
    grid_meta: Dict[str, Any] = field(default_factory=dict)

    def support(self, angles: Optional[np.ndarray] = None) -> np.ndarray:
        """Support function of the outer polygon, at the stored directions by default"""
        from .numrange import polygon_support
        return polygon_support(self.vertices(), self.directions if angles is None else angles)

    def vertices(self) -> np.ndarray:
        from .numrange import outer_polygon
        return outer_polygon(self.directions, self.outer)

    def contains(self, points, slack: float = 1e-9) -> bool:
        points = np.atleast_1d(np.asarray(points, dtype=complex))
        if points.size == 0:
            return True
        units = np.exp(1j * self.directions)
        projections = np.real(np.outer(points, units.conj()))
        return bool(np.all(projections <= self.outer[None, :] + slack))

    def min_re(self) -> float:
        return float(-np.max(self.support(np.array([np.pi]))))

    def width(self) -> float:
        """Minimal width over the direction grid"""
        support = self.support()
        opposite = self.support(self.directions + np.pi)
        return float(np.min(support + opposite))

    def to_dict(self) -> dict:
        return {
            "directions": self.directions.tolist(),
            "outer": self.outer.tolist(),
            "inner": _encode_complex(self.inner),
            "hausdorff_gap": self.hausdorff_gap,
            "grid_meta": self.grid_meta,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "NumericalRangeEstimate":
        return cls(
            directions=np.asarray(data["directions"], dtype=float),
            outer=np.asarray(data["outer"], dtype=float),
            inner=_decode_complex(data.get("inner", [])).reshape(-1),
            hausdorff_gap=data.get("hausdorff_gap", float("nan")),
            grid_meta=dict(data.get("grid_meta", {})),
        )


@dataclass
class PowerResult:
    value: Any
    method: PowerMethod
    est_error: float
    terms_or_nodes: int

    def to_dict(self) -> dict:
        return {
            "coeffs": _encode_complex(self.value.coeffs),
            "method": self.method.value,
            "est_error": self.est_error,
            "terms_or_nodes": self.terms_or_nodes,
        }

    @classmethod
    def from_dict(cls, data: dict, algebra) -> "PowerResult":
        return cls(
            algebra.element(_decode_complex(data["coeffs"])),
            PowerMethod(data["method"]),
            data["est_error"],
            data["terms_or_nodes"],
        )


@dataclass
class RootDefectProfile:
    n_values: List[int]
    defects: List[float]

    def to_dict(self) -> dict:
        return {"n": list(self.n_values), "defects": list(self.defects)}

    @classmethod
    def from_dict(cls, data: dict) -> "RootDefectProfile":
        return cls(list(data["n"]), list(data["defects"]))


@dataclass
class LipschitzReport:
    alpha: float
    constant: float
    worst_ratio: float
    trials: int
    violations: int

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "constant": self.constant,
            "worst_ratio": self.worst_ratio,
            "trials": self.trials,
            "violations": self.violations,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "LipschitzReport":
        return cls(**data)


@dataclass
class SupportIdempotent:
    s: Any
    route: SupportRoute
    defects: Tuple[float, float, float, float]
    is_central: Optional[bool] = None

    def to_dict(self) -> dict:
        return {
            "s": _encode_complex(self.s.coeffs),
            "route": self.route.value,
            "defects": list(self.defects),
            "is_central": self.is_central,
        }

    @classmethod
    def from_dict(cls, data: dict, algebra) -> "SupportIdempotent":
        return cls(
            algebra.element(_decode_complex(data["s"])),
            SupportRoute(data["route"]),
            tuple(data["defects"]),
            data.get("is_central"),
        )


@dataclass
class WsReport:
    """Independent checks of the pseudo-invertibility equivalences"""
    support_in_algebra: bool
    pseudo_invertible: bool
    invertible_in_ba: bool
    zero_isolated: bool
    spectral_gap: float
    spectrum: np.ndarray

    @property
    def all_hold(self) -> bool:
        return self.support_in_algebra and self.pseudo_invertible and self.invertible_in_ba and self.zero_isolated

    def to_dict(self) -> dict:
        return {
            "support_in_algebra": self.support_in_algebra,
            "pseudo_invertible": self.pseudo_invertible,
            "invertible_in_ba": self.invertible_in_ba,
            "zero_isolated": self.zero_isolated,
            "spectral_gap": self.spectral_gap,
            "spectrum": _encode_complex(self.spectrum),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "WsReport":
        fields = dict(data)
        fields["spectrum"] = _decode_complex(fields["spectrum"])
        return cls(**fields)


@dataclass
class CohenStep:
    step: int
    chosen: int
    defect: float
    inverse_norm: float

    def to_dict(self) -> dict:
        return {"step": self.step, "chosen": self.chosen, "defect": self.defect, "inverse_norm": self.inverse_norm}

    @classmethod
    def from_dict(cls, data: dict) -> "CohenStep":
        return cls(**data)


@dataclass
class CohenTrace:
    steps: List[CohenStep] = field(default_factory=list)
    partial_products: List[Any] = field(default_factory=list)
    z: Any = None
    factors: List[Any] = field(default_factory=list)
    residuals: List[float] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "steps": [s.to_dict() for s in self.steps],
            "z": None if self.z is None else _encode_complex(self.z.coeffs),
            "factors": [_encode_complex(w.coeffs) for w in self.factors],
            "residuals": list(self.residuals),
        }

    @classmethod
    def from_dict(cls, data: dict, algebra) -> "CohenTrace":
        """Partial products are not serialized and come back empty"""
        z = data.get("z")
        return cls(
            steps=[CohenStep.from_dict(step) for step in data.get("steps", [])],
            z=None if z is None else algebra.element(_decode_complex(z)),
            factors=[algebra.element(_decode_complex(w)) for w in data.get("factors", [])],
            residuals=list(data.get("residuals", [])),
        )


@dataclass
class LiftStep:
    step: int
    epsilon: float
    norm: float
    contained: bool
    slack: float = float("nan")

    def to_dict(self) -> dict:
        return {"step": self.step, "epsilon": self.epsilon, "norm": self.norm, "contained": self.contained, "slack": self.slack}

    @classmethod
    def from_dict(cls, data: dict) -> "LiftStep":
        return cls(**data)


@dataclass
class ClaimResult:
    description: str
    passed: bool
    margin: float
    tolerance: float
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "description": self.description,
            "passed": self.passed,
            "margin": self.margin,
            "tolerance": self.tolerance,
            "detail": self.detail,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ClaimResult":
        return cls(**data)


@dataclass
class MinNormIdentity:
    """Best left identity found inside an ideal, or an infeasibility certificate"""
    feasible: bool
    u: Any = None
    norm: float = float("inf")
    residual: float = 0.0
    iterations: int = 0

    def to_dict(self) -> dict:
        return {
            "feasible": self.feasible,
            "u": None if self.u is None else _encode_complex(self.u.coeffs),
            "norm": self.norm,
            "residual": self.residual,
            "iterations": self.iterations,
        }

    @classmethod
    def from_dict(cls, data: dict, algebra) -> "MinNormIdentity":
        u = data.get("u")
        return cls(
            data["feasible"],
            None if u is None else algebra.element(_decode_complex(u)),
            data.get("norm", float("inf")),
            data.get("residual", 0.0),
            data.get("iterations", 0),
        )
