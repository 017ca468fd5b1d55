"""Problem configuration: YAML schema, validation, and object builders.

The config surface is a nested key/value file (YAML; JSON works too).  Unknown
keys are rejected, defaults are filled at load time, and a loaded config
round-trips through :func:`dump_config` unchanged.  Builders turn validated
sections into live space/operator/solver objects.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np
import yaml

from .certify import DEFAULT_ALPHA_GRID, DEFAULT_B_GRID, CertifyConfig
from .demos import DEMOS, Demo, get_demo
from .errors import ConfigError
from .iteration import IterationConfig, StopRule
from .operators import AffineOperator, Operator, ProjectedOperator
from .sets import Ball, Box, ConvexSet, Halfspace, Simplex
from .space import WeightedSpace
from .vip import VipProblem

__all__ = [
    "SpaceSection", "OperatorSection", "SetSection", "CertifySection",
    "IterateSection", "VipSection", "AnalyzeSection", "OutputSection",
    "ProblemConfig", "load_config", "loads_config", "dump_config", "demo_config",
    "build_space", "build_operator", "build_set", "build_certify_config",
    "build_iteration_config", "build_vip_problem",
]


def _check_keys(data: dict, allowed: set, where: str):
    if not isinstance(data, dict):
        raise ConfigError(f"{where} must be a mapping", field=where)
    unknown = sorted(set(data) - allowed)
    if unknown:
        raise ConfigError(f"unknown key(s) {unknown} in {where}", field=where)


def _number(value, where, *, integer=False):
    if isinstance(value, str):
        # YAML 1.1 reads "1e-6" (no dot) as a string; accept the notation anyway.
        try:
            value = float(value)
        except ValueError:
            raise ConfigError(f"{where} must be a number, got {value!r}",
                              field=where) from None
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where} must be a number, got {value!r}", field=where)
    if not math.isfinite(value):
        raise ConfigError(f"{where} must be finite, got {value!r}", field=where)
    if integer:
        if int(value) != value:
            raise ConfigError(f"{where} must be an integer, got {value!r}", field=where)
        return int(value)
    return float(value)


def _float_list(value, where):
    if not isinstance(value, (list, tuple)):
        raise ConfigError(f"{where} must be a list of numbers", field=where)
    return [_number(v, where) for v in value]


def _matrix(value, where):
    if not isinstance(value, (list, tuple)) or not value:
        raise ConfigError(f"{where} must be a nonempty list of rows", field=where)
    return [_float_list(row, where) for row in value]


# ---------------------------------------------------------------------------
# sections


@dataclass
class SpaceSection:
    dim: int
    weights: list | None = None

    @classmethod
    def from_dict(cls, data, where="space"):
        _check_keys(data, {"dim", "weights"}, where)
        if "dim" not in data:
            raise ConfigError(f"{where}.dim is required", field=f"{where}.dim")
        dim = _number(data["dim"], f"{where}.dim", integer=True)
        if dim < 1:
            raise ConfigError(f"{where}.dim must be >= 1", field=f"{where}.dim")
        weights = None
        if data.get("weights") is not None:
            weights = _float_list(data["weights"], f"{where}.weights")
            if len(weights) != dim:
                raise ConfigError(
                    f"{where}.weights has length {len(weights)}, expected dim={dim}",
                    field=f"{where}.weights")
            if any(w <= 0 for w in weights):
                raise ConfigError(f"{where}.weights must be positive",
                                  field=f"{where}.weights")
        return cls(dim=dim, weights=weights)

    def to_dict(self):
        out = {"dim": self.dim}
        if self.weights is not None:
            out["weights"] = list(self.weights)
        return out


_SET_KINDS = {"ball", "box", "halfspace", "simplex"}


@dataclass
class SetSection:
    kind: str
    center: list | None = None
    radius: float | None = None
    lo: list | None = None
    hi: list | None = None
    normal: list | None = None
    offset: float | None = None

    @classmethod
    def from_dict(cls, data, where="set"):
        _check_keys(data, {"kind", "center", "radius", "lo", "hi", "normal", "offset"},
                    where)
        kind = data.get("kind")
        if kind not in _SET_KINDS:
            raise ConfigError(
                f"{where}.kind must be one of {sorted(_SET_KINDS)}, got {kind!r}",
                field=f"{where}.kind")
        sec = cls(kind=kind)
        if kind == "ball":
            if "center" not in data or "radius" not in data:
                raise ConfigError(f"{where}: ball needs center and radius", field=where)
            sec.center = _float_list(data["center"], f"{where}.center")
            sec.radius = _number(data["radius"], f"{where}.radius")
            if sec.radius <= 0:
                raise ConfigError(f"{where}.radius must be positive",
                                  field=f"{where}.radius")
        elif kind == "box":
            if "lo" not in data or "hi" not in data:
                raise ConfigError(f"{where}: box needs lo and hi", field=where)
            sec.lo = _float_list(data["lo"], f"{where}.lo")
            sec.hi = _float_list(data["hi"], f"{where}.hi")
            if len(sec.lo) != len(sec.hi) or any(a > b for a, b in zip(sec.lo, sec.hi)):
                raise ConfigError(f"{where}: box requires lo <= hi of equal length",
                                  field=where)
        elif kind == "halfspace":
            if "normal" not in data or "offset" not in data:
                raise ConfigError(f"{where}: halfspace needs normal and offset",
                                  field=where)
            sec.normal = _float_list(data["normal"], f"{where}.normal")
            if all(v == 0 for v in sec.normal):
                raise ConfigError(f"{where}.normal must be nonzero",
                                  field=f"{where}.normal")
            sec.offset = _number(data["offset"], f"{where}.offset")
        return sec

    def to_dict(self):
        out = {"kind": self.kind}
        for name in ("center", "radius", "lo", "hi", "normal", "offset"):
            val = getattr(self, name)
            if val is not None:
                out[name] = val
        return out


_OPERATOR_KINDS = {"affine", "projected", "demo"}


@dataclass
class OperatorSection:
    kind: str
    matrix: list | None = None
    offset: list | None = None
    gamma: float | None = None
    set: SetSection | None = None
    inner: "OperatorSection | None" = None
    name: str | None = None

    @classmethod
    def from_dict(cls, data, where="operator"):
        _check_keys(data, {"kind", "matrix", "offset", "gamma", "set", "inner", "name"},
                    where)
        kind = data.get("kind")
        if kind not in _OPERATOR_KINDS:
            raise ConfigError(
                f"{where}.kind must be one of {sorted(_OPERATOR_KINDS)}, got {kind!r}",
                field=f"{where}.kind")
        sec = cls(kind=kind)
        if kind == "affine":
            if "matrix" not in data or "offset" not in data:
                raise ConfigError(f"{where}: affine needs matrix and offset", field=where)
            sec.matrix = _matrix(data["matrix"], f"{where}.matrix")
            sec.offset = _float_list(data["offset"], f"{where}.offset")
        elif kind == "projected":
            for key in ("gamma", "set", "inner"):
                if key not in data:
                    raise ConfigError(f"{where}: projected needs {key}", field=where)
            sec.gamma = _number(data["gamma"], f"{where}.gamma")
            if sec.gamma <= 0:
                raise ConfigError(f"{where}.gamma must be positive",
                                  field=f"{where}.gamma")
            sec.set = SetSection.from_dict(data["set"], f"{where}.set")
            sec.inner = OperatorSection.from_dict(data["inner"], f"{where}.inner")
        else:  # demo
            name = data.get("name")
            if name not in DEMOS:
                raise ConfigError(
                    f"{where}.name must be one of {sorted(DEMOS)}, got {name!r}",
                    field=f"{where}.name")
            sec.name = name
        return sec

    def to_dict(self):
        out = {"kind": self.kind}
        if self.matrix is not None:
            out["matrix"] = self.matrix
        if self.offset is not None:
            out["offset"] = self.offset
        if self.gamma is not None:
            out["gamma"] = self.gamma
        if self.set is not None:
            out["set"] = self.set.to_dict()
        if self.inner is not None:
            out["inner"] = self.inner.to_dict()
        if self.name is not None:
            out["name"] = self.name
        return out


@dataclass
class CertifySection:
    samples: int = 2000
    box_lo: list | None = None
    box_hi: list | None = None
    seed: int | None = None
    b_grid: list = field(default_factory=lambda: list(DEFAULT_B_GRID))
    alpha_grid: list = field(default_factory=lambda: list(DEFAULT_ALPHA_GRID))
    denom_floor: float = 1e-9

    @classmethod
    def from_dict(cls, data, where="certify"):
        _check_keys(data, {"samples", "box_lo", "box_hi", "seed", "b_grid",
                           "alpha_grid", "denom_floor"}, where)
        sec = cls()
        if "samples" in data:
            sec.samples = _number(data["samples"], f"{where}.samples", integer=True)
            if sec.samples < 1:
                raise ConfigError(f"{where}.samples must be >= 1",
                                  field=f"{where}.samples")
        if data.get("box_lo") is not None:
            sec.box_lo = _float_list(data["box_lo"], f"{where}.box_lo")
        if data.get("box_hi") is not None:
            sec.box_hi = _float_list(data["box_hi"], f"{where}.box_hi")
        if data.get("seed") is not None:
            sec.seed = _number(data["seed"], f"{where}.seed", integer=True)
        if "b_grid" in data:
            sec.b_grid = _float_list(data["b_grid"], f"{where}.b_grid")
            if not sec.b_grid:
                raise ConfigError(f"{where}.b_grid must be nonempty",
                                  field=f"{where}.b_grid")
            if any(b < 0 for b in sec.b_grid):
                raise ConfigError(f"{where}.b_grid: b must be >= 0",
                                  field=f"{where}.b_grid")
        if "alpha_grid" in data:
            sec.alpha_grid = _float_list(data["alpha_grid"], f"{where}.alpha_grid")
            if not sec.alpha_grid:
                raise ConfigError(f"{where}.alpha_grid must be nonempty",
                                  field=f"{where}.alpha_grid")
            for alpha in sec.alpha_grid:
                if not 0.0 < alpha < 1.0:
                    raise ConfigError(
                        f"{where}.alpha_grid: alpha must lie in (0,1), got {alpha}",
                        field=f"{where}.alpha_grid")
        if "denom_floor" in data:
            sec.denom_floor = _number(data["denom_floor"], f"{where}.denom_floor")
            if sec.denom_floor <= 0:
                raise ConfigError(f"{where}.denom_floor must be positive",
                                  field=f"{where}.denom_floor")
        return sec

    def to_dict(self):
        out = {"samples": self.samples, "b_grid": self.b_grid,
               "alpha_grid": self.alpha_grid, "denom_floor": self.denom_floor}
        if self.box_lo is not None:
            out["box_lo"] = self.box_lo
        if self.box_hi is not None:
            out["box_hi"] = self.box_hi
        if self.seed is not None:
            out["seed"] = self.seed
        return out


_STOP_RULES = {r.value for r in StopRule}


@dataclass
class IterateSection:
    b: float | None = None
    lam: float | None = None  # None means automatic 1/(b+1)
    a: float | None = None
    tol: float = 1e-10
    max_iter: int = 1_000_000
    stop_rule: str = "residual"
    x0: list | None = None

    @classmethod
    def from_dict(cls, data, where="iterate"):
        _check_keys(data, {"b", "lambda", "a", "tol", "max_iter", "stop_rule", "x0"},
                    where)
        sec = cls()
        if data.get("b") is not None:
            sec.b = _number(data["b"], f"{where}.b")
            if sec.b < 0:
                raise ConfigError(f"{where}.b must be >= 0", field=f"{where}.b")
        lam = data.get("lambda")
        if lam is not None and lam != "auto":
            sec.lam = _number(lam, f"{where}.lambda")
            if not 0.0 < sec.lam <= 1.0:
                raise ConfigError(f"{where}.lambda must lie in (0, 1] or be 'auto'",
                                  field=f"{where}.lambda")
        if data.get("a") is not None:
            sec.a = _number(data["a"], f"{where}.a")
            if not 0.0 <= sec.a < 1.0:
                raise ConfigError(f"{where}.a must lie in [0, 1)", field=f"{where}.a")
        if "tol" in data:
            sec.tol = _number(data["tol"], f"{where}.tol")
            if sec.tol <= 0:
                raise ConfigError(f"{where}.tol must be positive", field=f"{where}.tol")
        if "max_iter" in data:
            sec.max_iter = _number(data["max_iter"], f"{where}.max_iter", integer=True)
            if sec.max_iter < 1:
                raise ConfigError(f"{where}.max_iter must be >= 1",
                                  field=f"{where}.max_iter")
        if "stop_rule" in data:
            if data["stop_rule"] not in _STOP_RULES:
                raise ConfigError(
                    f"{where}.stop_rule must be one of {sorted(_STOP_RULES)}",
                    field=f"{where}.stop_rule")
            sec.stop_rule = data["stop_rule"]
        if data.get("x0") is not None:
            sec.x0 = _float_list(data["x0"], f"{where}.x0")
        return sec

    def to_dict(self):
        out = {"lambda": self.lam if self.lam is not None else "auto",
               "tol": self.tol, "max_iter": self.max_iter,
               "stop_rule": self.stop_rule}
        if self.b is not None:
            out["b"] = self.b
        if self.a is not None:
            out["a"] = self.a
        if self.x0 is not None:
            out["x0"] = self.x0
        return out


@dataclass
class VipSection:
    gamma: float = 1.0
    set: SetSection | None = None
    inner: OperatorSection | None = None
    probes: int = 1000

    @classmethod
    def from_dict(cls, data, where="vip"):
        _check_keys(data, {"gamma", "set", "inner_operator", "probes"}, where)
        sec = cls()
        if "gamma" in data:
            sec.gamma = _number(data["gamma"], f"{where}.gamma")
            if sec.gamma <= 0:
                raise ConfigError(f"{where}.gamma must be positive",
                                  field=f"{where}.gamma")
        if data.get("set") is not None:
            sec.set = SetSection.from_dict(data["set"], f"{where}.set")
        if data.get("inner_operator") is not None:
            sec.inner = OperatorSection.from_dict(data["inner_operator"],
                                                  f"{where}.inner_operator")
        if "probes" in data:
            sec.probes = _number(data["probes"], f"{where}.probes", integer=True)
            if sec.probes < 1:
                raise ConfigError(f"{where}.probes must be >= 1",
                                  field=f"{where}.probes")
        return sec

    def to_dict(self):
        out = {"gamma": self.gamma, "probes": self.probes}
        if self.set is not None:
            out["set"] = self.set.to_dict()
        if self.inner is not None:
            out["inner_operator"] = self.inner.to_dict()
        return out


_CHECK_KINDS = {"wellposed", "periodic", "ulam"}


@dataclass
class AnalyzeSection:
    check: str | None = None
    n_list: list = field(default_factory=lambda: [1, 2, 3])
    start_lo: list | None = None
    start_hi: list | None = None
    start_count: int = 20
    cluster_tol: float = 1e-6
    epsilons: list = field(default_factory=lambda: [1e-1, 1e-3, 1e-6])
    probes_per_eps: int = 12
    perturbations: int = 100

    @classmethod
    def from_dict(cls, data, where="analyze"):
        _check_keys(data, {"check", "n_list", "start_lo", "start_hi", "start_count",
                           "cluster_tol", "epsilons", "probes_per_eps",
                           "perturbations"}, where)
        sec = cls()
        if data.get("check") is not None:
            if data["check"] not in _CHECK_KINDS:
                raise ConfigError(
                    f"{where}.check must be one of {sorted(_CHECK_KINDS)}",
                    field=f"{where}.check")
            sec.check = data["check"]
        if "n_list" in data:
            sec.n_list = [_number(n, f"{where}.n_list", integer=True)
                          for n in data["n_list"]]
            if not sec.n_list or any(n < 1 for n in sec.n_list):
                raise ConfigError(f"{where}.n_list entries must be >= 1",
                                  field=f"{where}.n_list")
        if data.get("start_lo") is not None:
            sec.start_lo = _float_list(data["start_lo"], f"{where}.start_lo")
        if data.get("start_hi") is not None:
            sec.start_hi = _float_list(data["start_hi"], f"{where}.start_hi")
        if "start_count" in data:
            sec.start_count = _number(data["start_count"], f"{where}.start_count",
                                      integer=True)
            if sec.start_count < 1:
                raise ConfigError(f"{where}.start_count must be >= 1",
                                  field=f"{where}.start_count")
        if "cluster_tol" in data:
            sec.cluster_tol = _number(data["cluster_tol"], f"{where}.cluster_tol")
            if sec.cluster_tol <= 0:
                raise ConfigError(f"{where}.cluster_tol must be positive",
                                  field=f"{where}.cluster_tol")
        if "epsilons" in data:
            sec.epsilons = _float_list(data["epsilons"], f"{where}.epsilons")
            if not sec.epsilons or any(e <= 0 for e in sec.epsilons):
                raise ConfigError(f"{where}.epsilons must be positive",
                                  field=f"{where}.epsilons")
        if "probes_per_eps" in data:
            sec.probes_per_eps = _number(data["probes_per_eps"],
                                         f"{where}.probes_per_eps", integer=True)
            if sec.probes_per_eps < 1:
                raise ConfigError(f"{where}.probes_per_eps must be >= 1",
                                  field=f"{where}.probes_per_eps")
        if "perturbations" in data:
            sec.perturbations = _number(data["perturbations"], f"{where}.perturbations",
                                        integer=True)
            if sec.perturbations < 1:
                raise ConfigError(f"{where}.perturbations must be >= 1",
                                  field=f"{where}.perturbations")
        return sec

    def to_dict(self):
        out = {"n_list": self.n_list, "start_count": self.start_count,
               "cluster_tol": self.cluster_tol, "epsilons": self.epsilons,
               "probes_per_eps": self.probes_per_eps,
               "perturbations": self.perturbations}
        if self.check is not None:
            out["check"] = self.check
        if self.start_lo is not None:
            out["start_lo"] = self.start_lo
        if self.start_hi is not None:
            out["start_hi"] = self.start_hi
        return out


@dataclass
class OutputSection:
    trace_path: str | None = None
    summary_path: str | None = None
    plot_path: str | None = None

    @classmethod
    def from_dict(cls, data, where="output"):
        _check_keys(data, {"trace_path", "summary_path", "plot_path"}, where)
        sec = cls()
        for name in ("trace_path", "summary_path", "plot_path"):
            val = data.get(name)
            if val is not None:
                if not isinstance(val, str):
                    raise ConfigError(f"{where}.{name} must be a string",
                                      field=f"{where}.{name}")
                setattr(sec, name, val)
        return sec

    def to_dict(self):
        out = {}
        for name in ("trace_path", "summary_path", "plot_path"):
            val = getattr(self, name)
            if val is not None:
                out[name] = val
        return out


@dataclass
class ProblemConfig:
    space: SpaceSection
    operator: OperatorSection
    certify: CertifySection = field(default_factory=CertifySection)
    iterate: IterateSection = field(default_factory=IterateSection)
    vip: VipSection | None = None
    analyze: AnalyzeSection = field(default_factory=AnalyzeSection)
    seed: int = 42
    output: OutputSection = field(default_factory=OutputSection)

    def to_dict(self):
        out = {
            "space": self.space.to_dict(),
            "operator": self.operator.to_dict(),
            "certify": self.certify.to_dict(),
            "iterate": self.iterate.to_dict(),
            "analyze": self.analyze.to_dict(),
            "seed": self.seed,
            "output": self.output.to_dict(),
        }
        if self.vip is not None:
            out["vip"] = self.vip.to_dict()
        return out


_TOP_KEYS = {"space", "operator", "certify", "iterate", "vip", "analyze", "seed",
             "output"}


def _config_from_dict(data: dict) -> ProblemConfig:
    _check_keys(data, _TOP_KEYS, "config")
    if "operator" not in data:
        raise ConfigError("config.operator is required", field="operator")
    operator = OperatorSection.from_dict(data["operator"])

    demo: Demo | None = None
    if operator.kind == "demo":
        demo = get_demo(operator.name)

    if "space" in data:
        space = SpaceSection.from_dict(data["space"])
    elif demo is not None:
        demo_space = demo.space()
        weights = None if demo_space.is_euclidean else demo_space.weights.tolist()
        space = SpaceSection(dim=demo_space.dim, weights=weights)
    else:
        raise ConfigError("config.space is required for non-demo operators",
                          field="space")

    cfg = ProblemConfig(
        space=space,
        operator=operator,
        certify=CertifySection.from_dict(data.get("certify", {})),
        iterate=IterateSection.from_dict(data.get("iterate", {})),
        vip=VipSection.from_dict(data["vip"]) if data.get("vip") is not None else None,
        analyze=AnalyzeSection.from_dict(data.get("analyze", {})),
        output=OutputSection.from_dict(data.get("output", {})),
    )
    if "seed" in data:
        cfg.seed = _number(data["seed"], "config.seed", integer=True)

    if demo is not None:
        if cfg.iterate.b is None:
            cfg.iterate.b = demo.b
        if cfg.iterate.x0 is None:
            cfg.iterate.x0 = list(demo.x0)
        if cfg.analyze.start_lo is None:
            cfg.analyze.start_lo = list(demo.start_lo)
        if cfg.analyze.start_hi is None:
            cfg.analyze.start_hi = list(demo.start_hi)

    _validate_dimensions(cfg)
    return cfg


def _expect_len(values, dim, where):
    if values is not None and len(values) != dim:
        raise ConfigError(f"{where} has length {len(values)}, expected dim={dim}",
                          field=where)


def _validate_operator_dims(sec: OperatorSection, dim: int, where="operator"):
    if sec.kind == "affine":
        if len(sec.matrix) != dim or any(len(row) != dim for row in sec.matrix):
            raise ConfigError(f"{where}.matrix must be {dim}x{dim}",
                              field=f"{where}.matrix")
        _expect_len(sec.offset, dim, f"{where}.offset")
    elif sec.kind == "projected":
        _validate_set_dims(sec.set, dim, f"{where}.set")
        _validate_operator_dims(sec.inner, dim, f"{where}.inner")


def _validate_set_dims(sec: SetSection, dim: int, where="set"):
    _expect_len(sec.center, dim, f"{where}.center")
    _expect_len(sec.lo, dim, f"{where}.lo")
    _expect_len(sec.hi, dim, f"{where}.hi")
    _expect_len(sec.normal, dim, f"{where}.normal")


def _validate_dimensions(cfg: ProblemConfig):
    dim = cfg.space.dim
    _validate_operator_dims(cfg.operator, dim)
    _expect_len(cfg.certify.box_lo, dim, "certify.box_lo")
    _expect_len(cfg.certify.box_hi, dim, "certify.box_hi")
    _expect_len(cfg.iterate.x0, dim, "iterate.x0")
    _expect_len(cfg.analyze.start_lo, dim, "analyze.start_lo")
    _expect_len(cfg.analyze.start_hi, dim, "analyze.start_hi")
    if cfg.vip is not None:
        if cfg.vip.set is not None:
            _validate_set_dims(cfg.vip.set, dim, "vip.set")
        if cfg.vip.inner is not None:
            _validate_operator_dims(cfg.vip.inner, dim, "vip.inner")


def loads_config(text: str) -> ProblemConfig:
    """Parse and validate a config from YAML/JSON text."""
    try:
        data = yaml.safe_load(text)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark
        line = mark.line + 1 if mark else None
        col = mark.column + 1 if mark else None
        raise ConfigError(f"config parse error at line {line}, column {col}: "
                          f"{exc.problem}", line=line, column=col) from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"config parse error: {exc}") from exc
    if data is None:
        data = {}
    return _config_from_dict(data)


def load_config(path) -> ProblemConfig:
    """Load, validate and default-fill a config file."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    return loads_config(path.read_text())


def dump_config(cfg: ProblemConfig) -> str:
    """Serialize a config so that loading the result reproduces it."""
    return yaml.safe_dump(cfg.to_dict(), sort_keys=True)


def demo_config(name: str) -> ProblemConfig:
    """Default-filled config for a named demo problem."""
    return _config_from_dict({"operator": {"kind": "demo", "name": name}})


# ---------------------------------------------------------------------------
# builders


def build_space(cfg: ProblemConfig) -> WeightedSpace:
    if cfg.space.weights is not None:
        return WeightedSpace.weighted(cfg.space.weights)
    return WeightedSpace(dim=cfg.space.dim)


def build_set(sec: SetSection, space: WeightedSpace) -> ConvexSet:
    if sec.kind == "ball":
        return Ball(center=sec.center, radius=sec.radius)
    if sec.kind == "box":
        return Box(lo=sec.lo, hi=sec.hi)
    if sec.kind == "halfspace":
        return Halfspace(normal=sec.normal, offset=sec.offset)
    return Simplex(dim=space.dim)


def build_operator_section(sec: OperatorSection, space: WeightedSpace) -> Operator:
    if sec.kind == "affine":
        return AffineOperator(space, matrix=sec.matrix, offset=sec.offset)
    if sec.kind == "projected":
        inner = build_operator_section(sec.inner, space)
        return ProjectedOperator(convex_set=build_set(sec.set, space),
                                 gamma=sec.gamma, inner_op=inner)
    # demo
    return get_demo(sec.name).operator(space)


def build_operator(cfg: ProblemConfig, space: WeightedSpace) -> Operator:
    return build_operator_section(cfg.operator, space)


def build_certify_config(cfg: ProblemConfig) -> CertifyConfig:
    sec = cfg.certify
    seed = sec.seed if sec.seed is not None else cfg.seed
    return CertifyConfig(
        samples=sec.samples,
        box_lo=None if sec.box_lo is None else np.asarray(sec.box_lo, dtype=float),
        box_hi=None if sec.box_hi is None else np.asarray(sec.box_hi, dtype=float),
        seed=seed,
        b_grid=tuple(sec.b_grid),
        alpha_grid=tuple(sec.alpha_grid),
        denom_floor=sec.denom_floor,
    )


def build_iteration_config(cfg: ProblemConfig) -> IterationConfig:
    sec = cfg.iterate
    return IterationConfig(lam=sec.lam, a=sec.a, tol=sec.tol,
                           max_iter=sec.max_iter, stop_rule=StopRule(sec.stop_rule))


def build_vip_problem(cfg: ProblemConfig, space: WeightedSpace) -> VipProblem:
    sec = cfg.vip
    if sec is None or sec.set is None or sec.inner is None:
        raise ConfigError("vip task needs vip.gamma, vip.set and vip.inner_operator",
                          field="vip")
    inner = build_operator_section(sec.inner, space)
    return VipProblem(S=inner, gamma=sec.gamma, set=build_set(sec.set, space))
