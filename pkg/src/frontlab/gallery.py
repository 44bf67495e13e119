"""Built-in fronts: the worked examples plus two ellipsoid-based entries.

Each entry stores the map and its analytic unit normal exactly as printed in
the source formulas; normals are never reconstructed from cross products,
which would be sign-ambiguous across the singular set.
"""

import dataclasses
import math

from .errors import FrontlabError
from .front import Domain, Front, parallel_surface
from .expr import parse

TWO_PI = 2.0 * math.pi


def _parabola(params):
    delta = "sqrt(4+(1+4*a^2*u^2)*(4*b^2+12*b*v+9*v^2))"
    return Front(
        map=parse("(a*u^2+v^2, b*v^2+v^3, u)", params),
        normal=parse(
            f"((-3*v-2*b)/{delta}, 2/{delta}, 2*a*u*(3*v+2*b)/{delta})", params
        ),
        domain=Domain(-1.5, 1.5, -1.5, 1.5),
        label=f"cuspidal parabola a={params['a']} b={params['b']}",
        metadata={
            "lambda": f"v*{delta}",
            "kappa_s": "2*a/((1+4*a^2*u^2)^1.5*sqrt(1+b^2*(1+4*a^2*u^2)))",
            "K": "-12*a*(2*b+3*v)/(v*(4+(1+4*a^2*u^2)*(4*b^2+12*b*v+9*v^2))^2)",
            "singular_set": "v=0 (the u-axis); cuspidal edges",
            "adapted_chart": True,
            "chi": 1,
        },
    )


def _standard_cuspidal_edge(params):
    return Front(
        map=parse("(u^2, u^3, v)"),
        normal=parse("(3*u/sqrt(4+9*u^2), -2/sqrt(4+9*u^2), 0)"),
        domain=Domain(-1.0, 1.0, -1.0, 1.0),
        label="standard cuspidal edge",
        metadata={
            "lambda": "u*sqrt(4+9*u^2)",
            "singular_set": "u=0 (the v-axis); cuspidal edges",
            "kappa_s": "0",
            "chi": 1,
        },
    )


def _standard_swallowtail(params):
    d = "sqrt(1+u^2+u^4)"
    return Front(
        map=parse("(3*u^4+u^2*v, 4*u^3+2*u*v, v)"),
        normal=parse(f"(1/{d}, -u/{d}, u^2/{d})"),
        domain=Domain(-1.25, 1.25, -7.0, 1.0),
        label="standard swallowtail",
        metadata={
            "lambda": "2*(6*u^2+v)*sqrt(1+u^2+u^4)",
            "kappa_s": "-sqrt(1+u^2+u^4)/(6*abs(u)*(1+4*u^2+u^4)^1.5)",
            "singular_set": "v=-6*u^2; swallowtail at the origin",
            "chi": 1,
        },
    )


def _double_swallowtail(params):
    d = "sqrt(1+4*u^2*(1+u^2*v^2))"
    return Front(
        map=parse("(2*u^3-u*v^2, 3*u^4-u^2*v^2, v)"),
        normal=parse(f"(-2*u/{d}, 1/{d}, -2*u^2*v/{d})"),
        domain=Domain(-1.0, 1.0, -1.0, 1.0),
        label="double swallowtail",
        metadata={
            "lambda": "(v^2-6*u^2)*sqrt(1+4*u^2*(1+u^2*v^2))",
            "singular_set": "v=sqrt(6)*u and v=-sqrt(6)*u; degenerate peak at origin",
            "chi": 1,
        },
    )


def _pseudosphere(params):
    return Front(
        map=parse("(sech(u)*cos(v), sech(u)*sin(v), u-tanh(u))"),
        normal=parse("(tanh(u)*cos(v), tanh(u)*sin(v), sech(u))"),
        domain=Domain(-20.0, 20.0, 0.0, TWO_PI, periodic_v=True),
        label="pseudosphere",
        metadata={
            "K": "-1",
            "kappa_s": "1",
            "singular_set": "u=0; cuspidal edges",
            "chi": 0,
            "ends": [
                {"label": "x->-inf", "a": 0.0},
                {"label": "x->+inf", "a": 0.0},
            ],
        },
    )


def _kuen(params):
    D = "(1+2*(1+2*v^2)*exp(2*u)+exp(4*u))"
    return Front(
        map=parse(
            f"(4*exp(u)*(1+exp(2*u))*(cos(v)+v*sin(v))/{D},"
            f" 4*exp(u)*(1+exp(2*u))*(sin(v)-v*cos(v))/{D},"
            f" (2+u+2*u*(1+2*v^2)*exp(2*u)+(u-2)*exp(4*u))/{D})"
        ),
        normal=parse(
            f"((8*exp(2*u)*v*cos(v)-(1+2*(1-2*v^2)*exp(2*u)+exp(4*u))*sin(v))/{D},"
            f" (8*exp(2*u)*v*sin(v)+(1+2*(1-2*v^2)*exp(2*u)+exp(4*u))*cos(v))/{D},"
            f" 4*exp(u)*(1-exp(2*u))*v/{D})"
        ),
        domain=Domain(-2.0, 2.0, -4.0, 4.0),
        label="Kuen surface",
        metadata={
            "K": "-1",
            "singular_set": "v=0 together with v=cosh(u) and v=-cosh(u)",
            "chi": 1,
        },
    )


def _cone(params):
    if params["a"] == 0:
        raise FrontlabError("cone parameter a must be nonzero")
    s = "sqrt(1+a^2)"
    return Front(
        map=parse("(log(u)*cos(v), log(u)*sin(v), a*log(u))", params),
        normal=parse(f"(a*cos(v)/{s}, a*sin(v)/{s}, -1/{s})", params),
        domain=Domain(0.2, 2.0, 0.0, TWO_PI, periodic_v=True),
        label=f"cone a={params['a']}",
        metadata={
            "lambda": "-sqrt(1+a^2)*log(u)/u",
            "singular_set": "r=1; image collapses to the cone vertex",
            "chi": 0,
            "ends": [
                {"label": "r->0", "a": 1.0 / math.sqrt(1.0 + params["a"] ** 2)},
                {"label": "r->inf", "a": 1.0 / math.sqrt(1.0 + params["a"] ** 2)},
            ],
            "cone_angle": TWO_PI / math.sqrt(1.0 + params["a"] ** 2),
        },
    )


def _swallowtail_pm(params):
    s = params["sign"]
    if s not in (1.0, -1.0):
        raise FrontlabError(f"swallowtail_pm sign must be +1 or -1, got {s}")
    p = {"s": s}
    d = "sqrt(1+u^2+145*u^4+576*v*(v-u^2)+s*24*u^2*(2*v-u^2))"
    return Front(
        map=parse(
            "((3*u^4-12*u^2*v+s*(6*u^2-12*v)^2)/12,"
            " (8*u^3-24*u*v)/12, (6*u^2-12*v)/12)",
            p,
        ),
        normal=parse(f"(1/{d}, -u/{d}, (u^2+s*12*(2*v-u^2))/{d})", p),
        domain=Domain(-0.75, 0.75, -0.5, 0.5),
        label=f"swallowtail f{'+' if s > 0 else '-'}",
        metadata={
            "singular_set": "v=0; swallowtail at the origin (adapted chart)",
            "adapted_chart": True,
            "second_ff_origin": f"{'+' if s > 0 else '-'}24 dv^2",
            "chi": 1,
        },
    )


def _plane(params):
    return Front(
        map=parse("(u, v, 0)"),
        normal=parse("(0, 0, 1)"),
        domain=Domain(-1.0, 1.0, -1.0, 1.0),
        label="plane",
        metadata={"K": "0", "singular_set": "empty", "chi": 1},
    )


def _sphere(params):
    if params["r"] <= 0:
        raise FrontlabError("sphere radius must be positive")
    # polar caps excluded; normals point inward (so sphere parallels focus
    # at positive offsets: d=r is the center)
    return Front(
        map=parse("(r*cos(u)*sin(v), r*sin(u)*sin(v), r*cos(v))", params),
        normal=parse("(-cos(u)*sin(v), -sin(u)*sin(v), -cos(v))", params),
        domain=Domain(0.0, TWO_PI, 1e-3 * math.pi, (1.0 - 1e-3) * math.pi,
                      periodic_u=True),
        label=f"sphere r={params['r']}",
        metadata={"singular_set": "empty", "chi": 2, "caps": 2},
    )


_ELLIPSOID_W = (
    "sqrt(cos(u)^2*sin(v)^2/a1^2+sin(u)^2*sin(v)^2/a2^2+cos(v)^2/a3^2)"
)


def _ellipsoid(params):
    w = _ELLIPSOID_W
    return Front(
        map=parse("(a1*cos(u)*sin(v), a2*sin(u)*sin(v), a3*cos(v))", params),
        normal=parse(
            f"(-cos(u)*sin(v)/(a1*{w}), -sin(u)*sin(v)/(a2*{w}), -cos(v)/(a3*{w}))",
            params,
        ),
        domain=Domain(0.0, TWO_PI, 1e-3 * math.pi, (1.0 - 1e-3) * math.pi,
                      periodic_u=True),
        label=f"ellipsoid {params['a1']}x{params['a2']}x{params['a3']}",
        metadata={"singular_set": "empty", "chi": 2, "caps": 2},
    )


def _ellipsoid_parallel(params):
    d = params.pop("d")
    base = _ellipsoid(params)
    out = parallel_surface(base, d)
    meta = dict(out.metadata)
    meta["singular_set"] = "focal caustic of the ellipsoid (offset between sheets)"
    return dataclasses.replace(out, metadata=meta)


_ENTRIES = {
    "cuspidal_parabola": (_parabola, {"a": 1.0, "b": 1.0}),
    "standard_cuspidal_edge": (_standard_cuspidal_edge, {}),
    "standard_swallowtail": (_standard_swallowtail, {}),
    "double_swallowtail": (_double_swallowtail, {}),
    "pseudosphere": (_pseudosphere, {}),
    "kuen": (_kuen, {}),
    "cone": (_cone, {"a": 1.0}),
    "swallowtail_pm": (_swallowtail_pm, {"sign": 1.0}),
    "plane": (_plane, {}),
    "sphere": (_sphere, {"r": 1.0}),
    "ellipsoid": (_ellipsoid, {"a1": 1.0, "a2": 1.2, "a3": 1.5}),
    "ellipsoid_parallel": (
        _ellipsoid_parallel,
        {"a1": 1.0, "a2": 1.2, "a3": 1.5, "d": 1.6},
    ),
}


def gallery_names():
    return sorted(_ENTRIES)


def gallery(name, params=None):
    """Build a named gallery front, overriding default parameters."""
    if name not in _ENTRIES:
        raise FrontlabError(
            f"unknown gallery front {name!r}; available: {', '.join(gallery_names())}"
        )
    builder, defaults = _ENTRIES[name]
    values = dict(defaults)
    for key, val in (params or {}).items():
        if key not in defaults:
            raise FrontlabError(
                f"front {name!r} takes no parameter {key!r}"
                + (f" (expected {sorted(defaults)})" if defaults else "")
            )
        values[key] = float(val)
    return builder(values)
