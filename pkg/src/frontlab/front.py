"""Fronts f: U -> R^3 with unit normal: forms, curvature, parallel surfaces.

A `Front` bundles two jet sources (the map and its analytic unit normal), a
rectangular parameter domain with optional periodicity, and free-form
metadata (known singular set, Euler characteristic, end growth orders...).
The ambient space is Euclidean R^3 throughout: the connection is the flat
derivative and the volume form is the 3x3 determinant.
"""

import json
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import FrontContractError
from .expr import (
    BinOp,
    Expr,
    Num,
    Vector,
    eval_jet,
    finite_difference_jet,
    parse,
    to_source,
)


def det3(a, b, c):
    """Scalar triple product det(a, b, c) over the last axis."""
    return np.einsum("...i,...i->...", np.asarray(a), np.cross(b, c))


def dot(a, b):
    return np.einsum("...i,...i->...", np.asarray(a), np.asarray(b))


@dataclass(frozen=True)
class Domain:
    u0: float
    u1: float
    v0: float
    v1: float
    periodic_u: bool = False
    periodic_v: bool = False

    def __post_init__(self):
        if not (self.u1 > self.u0 and self.v1 > self.v0):
            raise ValueError("domain must have positive extent")

    @property
    def scale(self):
        return max(self.u1 - self.u0, self.v1 - self.v0)

    def contains(self, u, v, slack=0.0):
        ok_u = self.periodic_u or (self.u0 - slack <= u <= self.u1 + slack)
        ok_v = self.periodic_v or (self.v0 - slack <= v <= self.v1 + slack)
        return ok_u and ok_v

    def wrap(self, u, v):
        """Fold periodic coordinates back into the fundamental rectangle."""
        if self.periodic_u:
            u = self.u0 + (u - self.u0) % (self.u1 - self.u0)
        if self.periodic_v:
            v = self.v0 + (v - self.v0) % (self.v1 - self.v0)
        return u, v

    def grid(self, n_u, n_v=None):
        """Sample grid; periodic axes drop the duplicate endpoint."""
        n_v = n_u if n_v is None else n_v
        uu = np.linspace(self.u0, self.u1, n_u, endpoint=not self.periodic_u)
        vv = np.linspace(self.v0, self.v1, n_v, endpoint=not self.periodic_v)
        return np.meshgrid(uu, vv, indexing="ij")


@dataclass(frozen=True)
class Front:
    map: object  # Expr or callback (u, v) -> 3-vector
    normal: object
    domain: Domain
    label: str = ""
    metadata: dict = field(default_factory=dict)

    def map_jet(self, u, v, order):
        if isinstance(self.map, Expr):
            return eval_jet(self.map, u, v, order)
        return finite_difference_jet(self.map, u, v, order)

    def normal_jet(self, u, v, order):
        if isinstance(self.normal, Expr):
            return eval_jet(self.normal, u, v, order)
        return finite_difference_jet(self.normal, u, v, order)

    def jets(self, u, v, order_map=1, order_normal=1):
        return self.map_jet(u, v, order_map), self.normal_jet(u, v, order_normal)

    @property
    def is_analytic(self):
        return isinstance(self.map, Expr) and isinstance(self.normal, Expr)


@dataclass(frozen=True)
class FundamentalForms:
    E: float
    F: float
    G: float
    L: float
    M: float
    N: float

    @property
    def area_density_sq(self):
        return self.E * self.G - self.F * self.F


@dataclass(frozen=True)
class CurvatureSample:
    K: float
    K_ext: float  # equals K: Euclidean ambient contributes no sectional term
    H: float
    lam: float
    regular: bool


def lambda_value(front, u, v):
    """Signed area density lambda = det(f_u, f_v, nu)."""
    jf, jn = front.jets(u, v, 1, 0)
    return det3(jf.f_u, jf.f_v, jn.value)


def forms(front, u, v, check_tol=1e-9):
    """First and second fundamental forms at (u, v) (scalars or grids)."""
    jf, jn = front.jets(u, v, 1, 1)
    fu, fv = jf.f_u, jf.f_v
    nu_u, nu_v = jn.f_u, jn.f_v
    E = dot(fu, fu)
    F = dot(fu, fv)
    G = dot(fv, fv)
    L = -dot(fu, nu_u)
    M = -dot(fv, nu_u)
    M2 = -dot(fu, nu_v)
    worst = np.max(np.abs(M - M2))
    if worst > check_tol * max(1.0, float(np.max(np.abs(M)))):
        raise FrontContractError(
            f"second fundamental form asymmetry {worst:.3e} at (u,v)=({u},{v}): "
            "normal is not compatible with the map"
        )
    N = -dot(fv, nu_v)
    return FundamentalForms(E=E, F=F, G=G, L=L, M=M, N=N)


def curvature(front, u, v, tol=1e-12):
    """Gaussian/mean curvature sample; flags the singular (unbounded) case."""
    fm = forms(front, u, v)
    jf, jn = front.jets(u, v, 1, 0)
    lam = det3(jf.f_u, jf.f_v, jn.value)
    denom = fm.E * fm.G - fm.F * fm.F
    floor = tol * max(1.0, float(np.max(fm.E + fm.G)) ** 2)
    regular = bool(np.all(denom > floor))
    if regular:
        K = (fm.L * fm.N - fm.M * fm.M) / denom
        H = (fm.E * fm.N - 2.0 * fm.F * fm.M + fm.G * fm.L) / (2.0 * denom)
    else:
        K = math.inf if np.all(fm.L * fm.N - fm.M * fm.M > 0) else -math.inf
        H = math.nan
    return CurvatureSample(K=K, K_ext=K, H=H, lam=lam, regular=regular)


def parallel_surface(front, dist, check_grid=48):
    """Front at constant normal distance `dist`: f_d = f + dist*nu, same nu.

    The input must be an immersion (no singular points); the offset front may
    well be singular - that is the point of the construction.
    """
    uu, vv = front.domain.grid(check_grid)
    lam = lambda_value(front, uu, vv)
    scale = float(np.max(np.abs(lam)))
    if scale == 0.0 or float(np.min(np.abs(lam))) < 1e-9 * scale or np.any(
        lam * lam.flat[0] <= 0
    ):
        raise FrontContractError(
            f"parallel_surface input '{front.label}' has singular points "
            f"(min |lambda| = {float(np.min(np.abs(lam))):.3e})"
        )
    if front.is_analytic:
        fc = front.map.root.components
        nc = front.normal.root.components
        params = dict(front.map.params)
        for name, value in front.normal.params:
            if name in params and params[name] != value:
                raise ValueError(f"parameter {name!r} bound inconsistently")
            params[name] = value
        comps = [
            BinOp("+", f, BinOp("*", Num(float(dist), 0), n, 0), 0)
            for f, n in zip(fc, nc)
        ]
        root = Vector(comps, 0)
        new_map = Expr(root, tuple(sorted(params.items())), to_source(root))
    else:
        fmap, fnormal = front.map, front.normal

        def new_map(u, v, _f=fmap, _n=fnormal, _d=float(dist)):
            return np.asarray(_f(u, v), dtype=float) + _d * np.asarray(
                _n(u, v), dtype=float
            )

    meta = dict(front.metadata)
    meta["parallel_of"] = front.label
    meta["parallel_dist"] = float(dist)
    return replace(
        front,
        map=new_map,
        label=f"{front.label} parallel d={dist}" if front.label else f"parallel d={dist}",
        metadata=meta,
    )


@dataclass(frozen=True)
class ValidationReport:
    passed: bool
    grid_n: int
    worst_unit: float  # max | |nu| - 1 |
    worst_orth: float  # max |g(f_*X, nu)| / max(1, |f_*X|)
    worst_rank: float  # min second singular value of (f_u f_v nu_u nu_v)
    failures: tuple

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        return (
            f"[{status}] unit-normal dev {self.worst_unit:.3e}; "
            f"orthogonality dev {self.worst_orth:.3e}; "
            f"min Legendrian rank sigma_2 {self.worst_rank:.3e}"
        )


def validate(front, grid_n=64, tol=1e-9, rank_tol=1e-9):
    """Check the three front invariants on a grid; collect worst violations."""
    uu, vv = front.domain.grid(grid_n)
    jf, jn = front.jets(uu, vv, 1, 1)
    nu = jn.value
    unit_dev = float(np.max(np.abs(np.sqrt(dot(nu, nu)) - 1.0)))
    orth_u = np.abs(dot(jf.f_u, nu)) / np.maximum(1.0, np.sqrt(dot(jf.f_u, jf.f_u)))
    orth_v = np.abs(dot(jf.f_v, nu)) / np.maximum(1.0, np.sqrt(dot(jf.f_v, jf.f_v)))
    orth_dev = float(max(np.max(orth_u), np.max(orth_v)))
    cols = np.stack([jf.f_u, jf.f_v, jn.f_u, jn.f_v], axis=-1)
    sing = np.linalg.svd(cols, compute_uv=False)
    min_sigma2 = float(np.min(sing[..., 1]))
    failures = []
    if unit_dev > tol:
        failures.append(f"unit normal deviates by {unit_dev:.3e} (tol {tol:.0e})")
    if orth_dev > tol:
        failures.append(f"orthogonality deviates by {orth_dev:.3e} (tol {tol:.0e})")
    if min_sigma2 <= rank_tol:
        failures.append(
            f"Legendrian rank condition fails: sigma_2 = {min_sigma2:.3e}"
        )
    return ValidationReport(
        passed=not failures,
        grid_n=grid_n,
        worst_unit=unit_dev,
        worst_orth=orth_dev,
        worst_rank=min_sigma2,
        failures=tuple(failures),
    )


# --- description files --------------------------------------------------

_HEADER = "frontlab-front 1"


def write_description(front):
    """Serialize an analytic front to the key-value description format."""
    if not front.is_analytic:
        raise ValueError("only expression-backed fronts can be serialized")
    d = front.domain
    periodic = {(False, False): "none", (True, False): "u",
                (False, True): "v", (True, True): "uv"}[(d.periodic_u, d.periodic_v)]
    lines = [
        _HEADER,
        f"label = {front.label}",
        f"map = {to_source(front.map)}",
        f"normal = {to_source(front.normal)}",
        f"domain = {d.u0!r} {d.u1!r} {d.v0!r} {d.v1!r}",
        f"periodic = {periodic}",
    ]
    params = dict(front.map.params)
    params.update(dict(front.normal.params))
    for name in sorted(params):
        lines.append(f"param {name} = {params[name]!r}")
    for key in sorted(front.metadata):
        value = json.dumps(front.metadata[key], sort_keys=True, separators=(",", ":"))
        lines.append(f"meta {key} = {value}")
    return "\n".join(lines) + "\n"


def read_description(text):
    """Parse a description produced by `write_description` (bit-exact inverse)."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != _HEADER:
        raise ValueError(f"not a front description (expected '{_HEADER}' header)")
    fields = {}
    params = {}
    metadata = {}
    for ln in lines[1:]:
        key, sep, value = ln.partition(" = ")
        if not sep:
            raise ValueError(f"malformed description line: {ln!r}")
        if key.startswith("param "):
            params[key[6:]] = float(value)
        elif key.startswith("meta "):
            metadata[key[5:]] = json.loads(value)
        else:
            fields[key] = value
    for required in ("map", "normal", "domain", "periodic"):
        if required not in fields:
            raise ValueError(f"description missing field {required!r}")
    u0, u1, v0, v1 = (float(x) for x in fields["domain"].split())
    periodic = fields["periodic"]
    if periodic not in ("none", "u", "v", "uv"):
        raise ValueError(f"bad periodic flag {periodic!r}")
    domain = Domain(u0, u1, v0, v1, periodic_u="u" in periodic, periodic_v="v" in periodic)
    return Front(
        map=parse(fields["map"], params),
        normal=parse(fields["normal"], params),
        domain=domain,
        label=fields.get("label", ""),
        metadata=metadata,
    )
