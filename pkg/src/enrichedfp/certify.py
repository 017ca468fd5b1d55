"""Numerical certification of the enriched interpolative Kannan condition.

An operator ``T`` on a normed space is an (a, b, alpha)-enriched interpolative
Kannan type operator when

    ||b (x - y) + T x - T y||  <=  a * ||x - T x||^alpha * ||y - T y||^(1-alpha)

for all x, y, with b >= 0, a in [0, 1) and alpha in (0, 1).  The certifier
estimates the least admissible ``a`` as the sup of the left/right ratio over a
seeded sample of pairs, excluding near-fixed points where the ratio is a 0/0
form.  A certificate is an *empirical lower bound* on the true sup — a failure
to refute, not a proof.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateOperatorError, ParameterError
from .operators import Operator
from .space import WeightedSpace

__all__ = [
    "CertifyConfig", "Certificate", "Witness",
    "ratio", "estimate_constant", "search", "refute",
    "DEFAULT_B_GRID", "DEFAULT_ALPHA_GRID",
]

DEFAULT_B_GRID = (0.0, 0.5, 1.0, 2.0, 3.0, 4.0, 8.0)
DEFAULT_ALPHA_GRID = (0.1, 0.25, 0.5, 0.75, 0.9)


@dataclass(frozen=True, eq=False)
class CertifyConfig:
    """Sampling plan for the ratio sup.

    ``box_lo``/``box_hi`` default to [-10, 10] per coordinate.  ``denom_floor``
    is the relative exclusion threshold: a pair is skipped when either
    displacement norm falls below ``denom_floor * (1 + ||point||)``.
    ``extra_probes`` are deterministic (x, y) pairs checked before the random
    sample; the (zero-vector, ones-vector) probe is always included.
    """

    samples: int = 2000
    box_lo: np.ndarray | None = None
    box_hi: np.ndarray | None = None
    seed: int = 42
    b_grid: tuple = DEFAULT_B_GRID
    alpha_grid: tuple = DEFAULT_ALPHA_GRID
    denom_floor: float = 1e-9
    extra_probes: tuple = ()

    def __post_init__(self):
        if self.samples < 1:
            raise ParameterError("samples must be >= 1")
        if not self.denom_floor > 0.0:
            raise ParameterError("denom_floor must be positive")
        if len(self.b_grid) == 0 or len(self.alpha_grid) == 0:
            raise ParameterError("parameter grids must be nonempty")
        for b in self.b_grid:
            if b < 0.0:
                raise ParameterError(f"b must be >= 0, got {b}")
        for alpha in self.alpha_grid:
            if not 0.0 < alpha < 1.0:
                raise ParameterError("alpha must lie in (0,1)")

    def resolve_box(self, space: WeightedSpace) -> tuple[np.ndarray, np.ndarray]:
        lo = (np.full(space.dim, -10.0) if self.box_lo is None
              else space.require_member(self.box_lo))
        hi = (np.full(space.dim, 10.0) if self.box_hi is None
              else space.require_member(self.box_hi))
        if np.any(lo >= hi):
            raise ParameterError("sampling box requires box_lo < box_hi componentwise")
        return lo, hi


@dataclass(frozen=True, eq=False)
class Witness:
    """A pair realizing a ratio value; refuting when ``ratio >= 1``."""

    x: np.ndarray
    y: np.ndarray
    ratio: float


@dataclass(frozen=True, eq=False)
class Certificate:
    """Estimated contraction constant for fixed (b, alpha).

    ``a_hat`` is the max of defined ratios over the evaluated pairs and equals
    ``max_witness.ratio``.  Passing means ``a_hat < 1``; since the sup is
    sampled, a passing certificate is evidence, not proof.
    """

    a_hat: float
    b: float
    alpha: float
    valid_pairs: int
    excluded_pairs: int
    max_witness: Witness

    @property
    def passing(self) -> bool:
        return self.a_hat < 1.0


def ratio(T: Operator, x, y, b: float, alpha: float,
          denom_floor: float = 1e-9) -> float | None:
    """Enrichment ratio ``||b(x-y) + Tx - Ty|| / (||x-Tx||^alpha ||y-Ty||^(1-alpha))``.

    Returns None (undefined) when either displacement norm is below the
    relative exclusion floor; undefined is a value, not an error.
    """
    if b < 0.0:
        raise ParameterError(f"b must be >= 0, got {b}")
    if not 0.0 < alpha < 1.0:
        raise ParameterError("alpha must lie in (0,1)")
    if not denom_floor > 0.0:
        raise ParameterError("denom_floor must be positive")
    s = T.space
    x = s.require_member(x)
    y = s.require_member(y)
    tx = T.apply(x)
    ty = T.apply(y)
    dx = s.norm(x - tx)
    dy = s.norm(y - ty)
    if dx < denom_floor * (1.0 + s.norm(x)) or dy < denom_floor * (1.0 + s.norm(y)):
        return None
    num = s.norm(b * (x - y) + tx - ty)
    return num / (dx ** alpha * dy ** (1.0 - alpha))


def _pair_stream(T: Operator, cfg: CertifyConfig):
    """Deterministic pair sequence: probes first, then the seeded box sample."""
    s = T.space
    yield s.zeros(), s.ones()
    for x, y in cfg.extra_probes:
        yield s.require_member(x), s.require_member(y)
    lo, hi = cfg.resolve_box(s)
    rng = np.random.default_rng(cfg.seed)
    u = rng.random((cfg.samples, 2, s.dim))
    pts = lo + u * (hi - lo)
    for i in range(cfg.samples):
        yield pts[i, 0], pts[i, 1]


class _PairTable:
    """Sampled pairs with ``T`` applied once; shared across all grid cells.

    Neither the displacements nor the exclusion decision depend on (b, alpha),
    so a grid search needs only one pass of operator applications.  Cell
    evaluation repeats the exact arithmetic of :func:`ratio` on the cached
    vectors, keeping single-cell and grid results bit-identical.
    """

    def __init__(self, T: Operator, cfg: CertifyConfig):
        self.space = T.space
        self.xs, self.ys, self.txs, self.tys = [], [], [], []
        self.dx, self.dy, self.defined = [], [], []
        s = T.space
        floor = cfg.denom_floor
        for x, y in _pair_stream(T, cfg):
            x = s.require_member(x)
            y = s.require_member(y)
            tx = T.apply(x)
            ty = T.apply(y)
            dx = s.norm(x - tx)
            dy = s.norm(y - ty)
            self.xs.append(x)
            self.ys.append(y)
            self.txs.append(tx)
            self.tys.append(ty)
            self.dx.append(dx)
            self.dy.append(dy)
            self.defined.append(
                not (dx < floor * (1.0 + s.norm(x))
                     or dy < floor * (1.0 + s.norm(y))))

    def cell(self, b: float, alpha: float) -> Certificate:
        s = self.space
        best = -1.0
        best_i = -1
        valid = 0
        excluded = 0
        for i, ok in enumerate(self.defined):
            if not ok:
                excluded += 1
                continue
            valid += 1
            num = s.norm(b * (self.xs[i] - self.ys[i]) + self.txs[i] - self.tys[i])
            r = num / (self.dx[i] ** alpha * self.dy[i] ** (1.0 - alpha))
            if best_i < 0 or r > best:
                best = r
                best_i = i
        if best_i < 0:
            raise DegenerateOperatorError(
                "all sampled pairs were excluded: operator is identity-like "
                "on the box")
        witness = Witness(x=np.array(self.xs[best_i]), y=np.array(self.ys[best_i]),
                          ratio=best)
        return Certificate(a_hat=best, b=float(b), alpha=float(alpha),
                           valid_pairs=valid, excluded_pairs=excluded,
                           max_witness=witness)


def estimate_constant(T: Operator, b: float, alpha: float,
                      cfg: CertifyConfig) -> Certificate:
    """Estimate the least admissible ``a`` at fixed (b, alpha).

    Evaluates the ratio over the probe pairs and ``cfg.samples`` seeded box
    pairs; ``a_hat`` is the max of the defined ratios, with the first maximizer
    (in pair order) recorded as witness.  Deterministic given (seed, config,
    operator).
    """
    if b < 0.0:
        raise ParameterError(f"b must be >= 0, got {b}")
    if not 0.0 < alpha < 1.0:
        raise ParameterError("alpha must lie in (0,1)")
    return _PairTable(T, cfg).cell(b, alpha)


def search(T: Operator, cfg: CertifyConfig) -> Certificate:
    """Grid search over (b, alpha) for the certificate minimizing ``a_hat``.

    Ties break toward smaller ``b``, then smaller ``|alpha - 0.5|``.  Cells
    where every pair is excluded are skipped; if all cells degenerate the
    degenerate-operator error propagates.
    """
    table = _PairTable(T, cfg)
    best: Certificate | None = None
    for b in cfg.b_grid:
        for alpha in cfg.alpha_grid:
            try:
                cert = table.cell(b, alpha)
            except DegenerateOperatorError:
                continue
            if best is None or _cert_key(cert) < _cert_key(best):
                best = cert
    if best is None:
        raise DegenerateOperatorError(
            "every grid cell degenerated: operator is identity-like on the box")
    return best


def _cert_key(cert: Certificate):
    return (cert.a_hat, cert.b, abs(cert.alpha - 0.5))


def refute(T: Operator, b: float, alpha: float,
           cfg: CertifyConfig) -> Witness | None:
    """First pair (probes, then seeded sample) whose defined ratio is >= 1.

    Returns None when no evaluated pair refutes the condition at (b, alpha).
    """
    for x, y in _pair_stream(T, cfg):
        r = ratio(T, x, y, b, alpha, cfg.denom_floor)
        if r is not None and r >= 1.0:
            return Witness(x=np.array(x), y=np.array(y), ratio=r)
    return None
