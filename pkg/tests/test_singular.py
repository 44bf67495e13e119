"""Tests for singular-set tracing, classification, and singular curvature."""

import dataclasses
import json
import math

import numpy as np
import pytest

from frontlab import (
    Domain,
    Front,
    FrontContractError,
    FrontlabError,
    InapplicableError,
    classify,
    curvature,
    curve_to_csv,
    curve_to_dict,
    gallery,
    half_space_signs,
    kappa_s_measure,
    lambda_jets,
    lambda_value,
    limiting_normal_curvature,
    parse,
    peak_arc_count,
    sign_meaning_check,
    singular_curvature,
    singular_curvature_intrinsic,
    tail_side,
    trace,
)
from frontlab.singular import SingularClass, _probe_sign_delta


def parabola_kappa_s(a, b, u):
    w = 1.0 + 4.0 * a * a * u * u
    return 2.0 * a / (w**1.5 * math.sqrt(1.0 + b * b * w))


def swallowtail_kappa_s(t):
    return -math.sqrt(1 + t**2 + t**4) / (6 * abs(t) * (1 + 4 * t**2 + t**4) ** 1.5)


def split_components(source):
    """Top-level components of a vector expression source string."""
    body, parts, depth, cur = source.strip()[1:-1], [], 0, []
    for ch in body:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def negate_normal(front):
    comps = split_components(front.normal.source)
    src = "(" + ", ".join(f"-({c})" for c in comps) + ")"
    return dataclasses.replace(front, normal=parse(src, dict(front.normal.params)))


def swap_chart(front):
    def sw(src):
        return src.replace("u", "\x00").replace("v", "u").replace("\x00", "v")

    d = front.domain
    dom = Domain(d.v0, d.v1, d.u0, d.u1, periodic_u=d.periodic_v,
                 periodic_v=d.periodic_u)
    return dataclasses.replace(
        front,
        map=parse(sw(front.map.source), dict(front.map.params)),
        normal=parse(sw(front.normal.source), dict(front.normal.params)),
        domain=dom,
    )


def sheared_edge():
    """An adapted-chart cuspidal edge whose metric twists along the curve.

    On the singular axis g(f_uvv, f_u) = u != 0, so the two candidate
    second-order closing terms of the intrinsic formula stop agreeing.
    """
    d = "sqrt(v^2*(2*u+v^2)^2/16 + v^2/4 + (1+u)^2)"
    return Front(
        map=parse("(u, u^2/2 + v^2*(1+u)/2, v^3/6)"),
        normal=parse(f"(v*(2*u+v^2)/(4*{d}), -v/(2*{d}), (1+u)/{d})"),
        domain=Domain(-0.5, 0.5, -1.0, 1.0),
    )


@pytest.fixture(scope="module")
def parabola_curve():
    front = gallery("cuspidal_parabola")
    return front, trace(front, grid=32)


@pytest.fixture(scope="module")
def swallowtail_curve():
    front = gallery("standard_swallowtail")
    return front, trace(front, grid=32)


class TestLambdaJets:
    """Partial derivatives of the area density against finite differences."""

    @pytest.mark.parametrize("name", ["cuspidal_parabola", "standard_swallowtail",
                                      "double_swallowtail"])
    @pytest.mark.parametrize("uv", [(0.31, 0.57), (-0.73, 0.22)])
    def test_matches_finite_differences(self, name, uv):
        front = gallery(name)
        u, v = uv
        lam, lu, lv, luu, luv, lvv = lambda_jets(front, u, v, order=2)
        h = 2.0**-13  # balances second-difference truncation against roundoff

        def fd(du, dv):
            return lambda_value(front, u + du * h, v + dv * h)

        ref_u = (fd(1, 0) - fd(-1, 0)) / (2 * h)
        ref_v = (fd(0, 1) - fd(0, -1)) / (2 * h)
        ref_uu = (fd(1, 0) - 2 * fd(0, 0) + fd(-1, 0)) / h**2
        ref_vv = (fd(0, 1) - 2 * fd(0, 0) + fd(0, -1)) / h**2
        ref_uv = (fd(1, 1) - fd(1, -1) - fd(-1, 1) + fd(-1, -1)) / (4 * h**2)
        assert abs(lam - fd(0, 0)) < 1e-12
        for got, ref, tag in [(lu, ref_u, "lu"), (lv, ref_v, "lv"),
                              (luu, ref_uu, "luu"), (luv, ref_uv, "luv"),
                              (lvv, ref_vv, "lvv")]:
            tol = 5e-6 * max(1.0, abs(ref))
            assert abs(got - ref) < tol, f"{name} {tag}: {got} vs FD {ref}"

    def test_parabola_axis_values(self):
        front = gallery("cuspidal_parabola")
        for u in (-1.0, 0.0, 0.8):
            lam, lu, lv = lambda_jets(front, u, 0.0, order=1)
            delta = math.sqrt(4.0 + (1.0 + 4.0 * u * u) * 4.0)
            assert abs(lam) < 1e-14, f"lambda off zero at u={u}: {lam}"
            assert abs(lu) < 1e-12, f"lambda_u nonzero on the axis: {lu}"
            assert abs(lv - delta) < 1e-12 * delta, f"lambda_v {lv} != {delta}"

    def test_bad_order_rejected(self):
        with pytest.raises(ValueError, match="order"):
            lambda_jets(gallery("plane"), 0.0, 0.0, order=3)


class TestClassify:
    """Pointwise classification into edge/swallowtail/peak/degenerate."""

    @pytest.mark.parametrize("u", [-1.0, -0.5, 0.0, 0.5, 1.0])
    def test_parabola_edge_curvature(self, u):
        front = gallery("cuspidal_parabola")
        p = classify(front, (u, 0.0))
        assert p.kind is SingularClass.CUSPIDAL_EDGE
        want = parabola_kappa_s(1.0, 1.0, u)
        assert abs(p.kappa_s - want) < 1e-12 * abs(want), (
            f"kappa_s {p.kappa_s} != {want} at u={u}"
        )

    def test_parabola_normal_curvature_frozen(self):
        front = gallery("cuspidal_parabola")
        p = classify(front, (0.0, 0.0))
        assert abs(p.kappa_nu + math.sqrt(2.0)) < 1e-12, (
            f"kappa_nu at the origin should be -sqrt(2), got {p.kappa_nu}"
        )

    @pytest.mark.parametrize("t", [0.2, 0.5, -0.8])
    def test_swallowtail_edge_samples(self, t):
        front = gallery("standard_swallowtail")
        p = classify(front, (t, -6.0 * t * t))
        assert p.kind is SingularClass.CUSPIDAL_EDGE
        want = swallowtail_kappa_s(t)
        assert abs(p.kappa_s - want) < 1e-10 * abs(want)

    def test_swallowtail_origin(self):
        p = classify(gallery("standard_swallowtail"), (0.0, 0.0))
        assert p.kind is SingularClass.SWALLOWTAIL
        assert p.kappa_s == -math.inf
        assert abs(p.transversality) < 1e-12

    def test_double_swallowtail_origin_degenerate(self):
        p = classify(gallery("double_swallowtail"), (0.0, 0.0))
        assert p.kind is SingularClass.DEGENERATE
        assert math.isnan(p.kappa_s)

    def test_cone_circle_is_peak(self):
        front = gallery("cone")
        for v in (0.3, 2.0, 5.1):
            p = classify(front, (1.0, v))
            assert p.kind is SingularClass.NONDEGENERATE_PEAK_OTHER, (
                f"cone point at v={v} classified {p.kind}"
            )

    def test_kuen_swallowtail_at_waist(self):
        p = classify(gallery("kuen"), (0.0, 1.0))
        assert p.kind is SingularClass.SWALLOWTAIL
        assert abs(p.transversality) < 1e-12

    def test_standard_edge_is_flat(self):
        front = gallery("standard_cuspidal_edge")
        p = classify(front, (0.0, 0.4))
        assert p.kind is SingularClass.CUSPIDAL_EDGE
        assert abs(p.kappa_s) < 1e-12
        assert abs(p.kappa_nu) < 1e-12

    def test_regular_point_rejected(self):
        with pytest.raises(FrontContractError, match="rank 2"):
            classify(gallery("cuspidal_parabola"), (0.3, 0.5))

    def test_frame_orientation(self):
        rng = np.random.default_rng(11)
        front = gallery("standard_swallowtail")
        for t in rng.uniform(0.1, 1.0, 5):
            p = classify(front, (t, -6.0 * t * t))
            T, eta = p.singular_dir, p.null_dir
            assert abs(math.hypot(*eta) - 1.0) < 1e-12
            assert abs(math.hypot(*T) - 1.0) < 1e-12
            assert T[0] * eta[1] - T[1] * eta[0] > 0, (
                f"(tangent, null) frame not positively oriented at t={t}"
            )


class TestTrace:
    """Curve tracing: seeds, continuation, termination, determinism."""

    def test_parabola_axis(self, parabola_curve):
        front, curves = parabola_curve
        assert len(curves) == 1
        c = curves[0]
        assert not c.closed
        assert c.peaks == ()
        vs = np.array([p.uv[1] for p in c.samples])
        assert np.max(np.abs(vs)) < 1e-8
        us = np.array([p.uv[0] for p in c.samples])
        assert abs(us.min() + 1.5) < 1e-6 and abs(us.max() - 1.5) < 1e-6, (
            f"curve should span the chart, got u in [{us.min()}, {us.max()}]"
        )
        assert all(p.kind is SingularClass.CUSPIDAL_EDGE for p in c.samples)

    def test_swallowtail_discriminant(self, swallowtail_curve):
        front, curves = swallowtail_curve
        assert len(curves) == 1
        c = curves[0]
        worst = max(abs(p.uv[1] + 6.0 * p.uv[0] ** 2) for p in c.samples)
        assert worst < 1e-8, f"discriminant residual {worst}"
        assert len(c.peaks) == 1
        peak = c.samples[c.peaks[0]]
        assert peak.kind is SingularClass.SWALLOWTAIL
        assert math.hypot(*peak.uv) < 1e-6
        assert peak.swallowtail_sign == 1

    def test_arclength_is_monotone(self, swallowtail_curve):
        front, curves = swallowtail_curve
        s = np.array([p.s for p in curves[0].samples])
        assert s[0] == 0.0
        assert np.all(np.diff(s) >= 0.0)

    def test_peak_guard_band(self, swallowtail_curve):
        front, curves = swallowtail_curve
        c = curves[0]
        peak_s = c.samples[c.peaks[0]].s
        guard = 1e-3 * front.domain.scale
        for p in c.samples:
            if p.kind is SingularClass.CUSPIDAL_EDGE:
                assert p.near_peak == (abs(p.s - peak_s) < guard)

    def test_pseudosphere_circle(self):
        front = gallery("pseudosphere")
        curves = trace(front, grid=32)
        assert len(curves) == 1
        c = curves[0]
        assert c.closed
        assert max(abs(p.uv[0]) for p in c.samples) < 1e-10
        ks = [p.kappa_s for p in c.samples]
        assert max(abs(k - 1.0) for k in ks) < 1e-9, (
            f"pseudosphere kappa_s should be 1, range [{min(ks)}, {max(ks)}]"
        )

    def test_cone_circle_all_peaks(self):
        curves = trace(gallery("cone"), grid=32)
        assert len(curves) == 1
        assert curves[0].closed
        kinds = {p.kind for p in curves[0].samples}
        assert kinds == {SingularClass.NONDEGENERATE_PEAK_OTHER}

    def test_double_swallowtail_rays_stop_at_degeneracy(self):
        curves = trace(gallery("double_swallowtail"), grid=32)
        assert len(curves) >= 2
        for c in curves:
            uv = np.array([p.uv for p in c.samples])
            r = np.hypot(uv[:, 0], uv[:, 1])
            # each ray lies on v^2 = 6 u^2 and never reaches the origin
            resid = np.abs(uv[:, 1] ** 2 - 6.0 * uv[:, 0] ** 2)
            assert np.max(resid[r > 0.05]) < 1e-6
            assert np.min(r) > 1e-8

    def test_sphere_has_no_singular_set(self):
        assert trace(gallery("sphere"), grid=16) == []

    def test_lambda_changes_sign_across_curve(self, parabola_curve):
        front, curves = parabola_curve
        eps = 1e-4 * front.domain.scale
        for p in curves[0].samples[2:-2:5]:
            T = p.singular_dir
            n = (-T[1], T[0])
            above = lambda_value(front, p.uv[0] + eps * n[0], p.uv[1] + eps * n[1])
            below = lambda_value(front, p.uv[0] - eps * n[0], p.uv[1] - eps * n[1])
            assert above * below < 0, (
                f"lambda does not change sign across the curve at {p.uv}"
            )

    def test_coarse_grid_rejected(self):
        with pytest.raises(ValueError, match="at least 16"):
            trace(gallery("plane"), grid=8)

    def test_deterministic(self):
        front = gallery("cuspidal_parabola")
        a = trace(front, grid=32)
        b = trace(front, grid=32)
        assert repr(a) == repr(b)


class TestCurvatureRoutes:
    """The jet formula against tangent differencing and the intrinsic form."""

    @pytest.mark.parametrize("params", [{}, {"a": -1.0, "b": 0.5}, {"a": 2.0, "b": 0.0}])
    def test_differenced_matches_jets(self, params):
        front = gallery("cuspidal_parabola", params)
        for u in (-0.9, 0.0, 0.6):
            p = classify(front, (u, 0.0))
            got = singular_curvature(front, p)
            assert abs(got - p.kappa_s) < 1e-8 * max(1.0, abs(p.kappa_s)), (
                f"routes disagree at u={u}: {got} vs {p.kappa_s}"
            )

    def test_differenced_on_swallowtail_flank(self):
        front = gallery("standard_swallowtail")
        p = classify(front, (0.4, -0.96))
        got = singular_curvature(front, p)
        assert abs(got - p.kappa_s) < 1e-7 * abs(p.kappa_s)

    def test_differenced_reversal_invariant(self):
        front = gallery("cuspidal_parabola")
        p = classify(front, (0.35, 0.0))
        rev = dataclasses.replace(
            p,
            singular_dir=(-p.singular_dir[0], -p.singular_dir[1]),
            null_dir=(-p.null_dir[0], -p.null_dir[1]),
        )
        assert abs(singular_curvature(front, rev) - p.kappa_s) < 1e-9

    def test_differenced_needs_edge(self):
        front = gallery("standard_swallowtail")
        p = classify(front, (0.0, 0.0))
        with pytest.raises(InapplicableError, match="cuspidal edge"):
            singular_curvature(front, p)

    @pytest.mark.parametrize("params,u", [({}, 0.0), ({}, 0.7),
                                          ({"a": -1.0, "b": 0.5}, 0.3)])
    def test_intrinsic_matches_extrinsic(self, params, u):
        front = gallery("cuspidal_parabola", params)
        p = classify(front, (u, 0.0))
        got = singular_curvature_intrinsic(front, u)
        assert abs(got - p.kappa_s) < 1e-10 * max(1.0, abs(p.kappa_s)), (
            f"intrinsic {got} vs extrinsic {p.kappa_s} at u={u}"
        )

    def test_intrinsic_variant_discrimination(self):
        """Only the second-v-derivative closing term survives a metric shear."""
        front = sheared_edge()
        u = 0.3
        p = classify(front, (u, 0.0))
        good = singular_curvature_intrinsic(front, u, variant="E_vv")
        bad = singular_curvature_intrinsic(front, u, variant="E_v")
        assert abs(good - p.kappa_s) < 1e-10 * max(1.0, abs(p.kappa_s))
        assert abs(bad - p.kappa_s) > 1e-3, (
            f"variants should separate here: E_v gives {bad}, extrinsic {p.kappa_s}"
        )

    def test_intrinsic_needs_adapted_chart(self):
        with pytest.raises(InapplicableError, match="not adapted"):
            singular_curvature_intrinsic(gallery("standard_swallowtail"), 0.3)

    def test_intrinsic_bad_variant(self):
        with pytest.raises(ValueError, match="variant"):
            singular_curvature_intrinsic(gallery("cuspidal_parabola"), 0.0,
                                         variant="G_uu")


class TestInvariance:
    """kappa_s is independent of co-orientation and chart labeling."""

    @pytest.mark.parametrize("name,points", [
        ("cuspidal_parabola", [(-1.1, 0.0), (0.0, 0.0), (0.45, 0.0)]),
        ("standard_swallowtail", [(0.3, -0.54), (-0.7, -2.94)]),
        ("standard_cuspidal_edge", [(0.0, 0.2)]),
    ])
    def test_normal_flip_and_chart_swap(self, name, points):
        front = gallery(name)
        flipped = negate_normal(front)
        swapped = swap_chart(front)
        for (u, v) in points:
            k0 = classify(front, (u, v)).kappa_s
            k1 = classify(flipped, (u, v)).kappa_s
            k2 = classify(swapped, (v, u)).kappa_s
            scale = max(1.0, abs(k0))
            assert abs(k1 - k0) < 1e-9 * scale, f"{name}: -nu changed kappa_s"
            assert abs(k2 - k0) < 1e-9 * scale, f"{name}: chart swap changed kappa_s"

    def test_normal_flip_negates_normal_curvature(self):
        front = gallery("cuspidal_parabola")
        p0 = classify(front, (0.2, 0.0))
        p1 = classify(negate_normal(front), (0.2, 0.0))
        assert abs(p1.kappa_nu + p0.kappa_nu) < 1e-12


class TestMeasureAndNormalCurvature:
    def test_parabola_density_closed_form(self, parabola_curve):
        front, curves = parabola_curve
        dens = kappa_s_measure(front, curves[0])
        for p, d in zip(curves[0].samples, dens):
            u = p.uv[0]
            want = parabola_kappa_s(1.0, 1.0, u) * math.sqrt(1.0 + 4.0 * u * u)
            assert abs(d - want) < 1e-8, f"density at u={u}: {d} vs {want}"

    def test_swallowtail_density_continuous(self, swallowtail_curve):
        front, curves = swallowtail_curve
        c = curves[0]
        dens = kappa_s_measure(front, c)
        assert np.all(np.isfinite(dens))
        i = c.peaks[0]
        # the peak limit of kappa_s * |image speed| on both flanks is -2
        assert abs(dens[i] + 2.0) < 0.05, f"peak density {dens[i]}"
        window = dens[max(0, i - 3): i + 4]
        assert np.max(np.abs(np.diff(window))) < 0.1

    def test_limiting_normal_curvature_generic(self):
        front = gallery("cuspidal_parabola")
        nc = limiting_normal_curvature(front, classify(front, (0.0, 0.0)))
        assert nc.generic
        assert abs(nc.value + math.sqrt(2.0)) < 1e-12

    @pytest.mark.parametrize("name,uv", [
        ("cuspidal_parabola", (0.0, 0.0)),
        ("standard_cuspidal_edge", (0.0, 0.5)),
    ])
    def test_non_generic_cases(self, name, uv):
        if name == "cuspidal_parabola":
            front = gallery(name, {"b": 0.0})
        else:
            front = gallery(name)
        nc = limiting_normal_curvature(front, classify(front, uv))
        assert not nc.generic
        assert abs(nc.value) < 1e-10

    def test_normal_curvature_needs_edge(self):
        front = gallery("standard_swallowtail")
        with pytest.raises(InapplicableError):
            limiting_normal_curvature(front, classify(front, (0.0, 0.0)))


class TestHalfSpaceSigns:
    @pytest.mark.parametrize("a", [1.0, -1.0])
    @pytest.mark.parametrize("b", [1.0, -1.0])
    def test_parabola_predicts_sampled_K(self, a, b):
        front = gallery("cuspidal_parabola", {"a": a, "b": b})
        p = classify(front, (0.0, 0.0))
        hs = half_space_signs(front, p, side=1)
        K = curvature(front, 0.0, 0.05).K
        assert hs.predicted_K_sign == int(math.copysign(1.0, K)), (
            f"a={a} b={b}: predicted {hs.predicted_K_sign}, sampled K={K}"
        )
        assert hs.predicted_K_sign == -int(a * b)
        assert hs.sgn_0 == int(math.copysign(1.0, p.kappa_nu))

    def test_parabola_probe_agrees(self):
        front = gallery("cuspidal_parabola")
        p = classify(front, (0.0, 0.0))
        for side in (1, -1):
            hs = half_space_signs(front, p, side)
            assert _probe_sign_delta(front, p, side, 1e-3) == hs.sgn_Delta

    def test_opposite_side_flips_prediction(self):
        front = gallery("cuspidal_parabola")
        p = classify(front, (0.0, 0.0))
        up = half_space_signs(front, p, side=1)
        down = half_space_signs(front, p, side=-1)
        K_up = curvature(front, 0.0, 0.05).K
        K_down = curvature(front, 0.0, -0.05).K
        assert up.predicted_K_sign == int(math.copysign(1.0, K_up))
        assert down.predicted_K_sign == int(math.copysign(1.0, K_down))

    @pytest.mark.parametrize("sign", [1.0, -1.0])
    def test_swallowtail_tail_side(self, sign):
        front = gallery("swallowtail_pm", {"sign": sign})
        p = classify(front, (0.0, 0.0))
        ts = tail_side(front, p)
        assert ts.lambda_sign == -1  # the tail sits below the singular axis
        hs = half_space_signs(front, p, side=1)
        assert hs.predicted_K_sign == int(sign)
        # sampled K on the tail side, at probes straddling the origin
        for (u, v) in [(0.0, -0.02), (0.05, -0.01), (-0.05, -0.01),
                       (0.08, -0.02), (-0.08, -0.015)]:
            lam = lambda_value(front, u, v)
            assert math.copysign(1.0, lam) == ts.lambda_sign
            K = curvature(front, u, v).K
            assert int(math.copysign(1.0, K)) == hs.predicted_K_sign, (
                f"sampled K={K} at ({u},{v}) against prediction"
            )

    def test_standard_swallowtail_is_positive(self):
        front = gallery("standard_swallowtail")
        ts = tail_side(front, classify(front, (0.0, 0.0)))
        assert ts.st_sign == 1
        assert ts.alpha_plus == pytest.approx(2.0 * math.pi)

    def test_bad_side_value(self):
        front = gallery("cuspidal_parabola")
        with pytest.raises(ValueError, match="side"):
            half_space_signs(front, classify(front, (0.0, 0.0)), side=0)

    def test_flat_edge_inapplicable(self):
        front = gallery("standard_cuspidal_edge")
        with pytest.raises(InapplicableError, match="not generic"):
            half_space_signs(front, classify(front, (0.0, 0.3)), side=1)


class TestSignMeaning:
    @pytest.mark.parametrize("a,expected", [(1.0, 1), (-1.0, -1)])
    def test_null_curve_agrees_with_kappa_s(self, a, expected):
        front = gallery("cuspidal_parabola", {"a": a})
        rec = sign_meaning_check(front, classify(front, (0.2, 0.0)))
        assert rec["consistent"]
        assert rec["kappa_s_side"] == expected

    def test_inconclusive_when_flat(self):
        front = gallery("standard_cuspidal_edge")
        with pytest.raises(InapplicableError, match="too small"):
            sign_meaning_check(front, classify(front, (0.0, 0.2)))


class TestPeakArcCount:
    def test_counts(self):
        assert peak_arc_count(gallery("double_swallowtail"), (0.0, 0.0)) == 2
        assert peak_arc_count(gallery("standard_swallowtail"), (0.0, 0.0)) == 1
        assert peak_arc_count(gallery("cuspidal_parabola"), (0.0, 0.0)) == 1

    def test_regular_point_errors(self):
        with pytest.raises(FrontlabError, match="no singular arcs"):
            peak_arc_count(gallery("standard_swallowtail"), (0.5, 0.5))


class TestNearCurveDivergence:
    """Mean curvature blows up beside the singular set; K can stay finite."""

    def test_mean_curvature_parabola(self):
        front = gallery("cuspidal_parabola")
        for u in (-0.8, 0.0, 0.6):
            H = curvature(front, u, 1e-4).H
            assert abs(H) >= 1e3, f"|H|={abs(H)} at (u,v)=({u},1e-4)"

    def test_mean_curvature_swallowtail(self):
        front = gallery("standard_swallowtail")
        for t in (0.3, 0.7):
            H = curvature(front, t, -6.0 * t * t + 1e-4).H
            assert abs(H) >= 1e3

    def test_kappa_s_diverges_at_swallowtail(self):
        front = gallery("standard_swallowtail")
        for t in (5e-5, -6e-5):
            p = classify(front, (t, -6.0 * t * t))
            assert p.kappa_s < -1e3, f"kappa_s={p.kappa_s} at t={t}"
            assert abs(p.kappa_s * abs(t) + 1.0 / 6.0) < 1e-3

    def test_bounded_K_with_negative_kappa_s(self):
        front = gallery("cuspidal_parabola", {"a": -1.0, "b": 0.0})
        for v in (1e-3, -1e-3, 0.1):
            sample = curvature(front, 0.2, v)
            assert sample.K > 0.0
            assert abs(sample.K) < 1e6
        assert classify(front, (0.2, 0.0)).kappa_s < 0.0


class TestExport:
    def test_csv_round_trip(self, parabola_curve):
        front, curves = parabola_curve
        text = curve_to_csv(front, curves[0])
        lines = text.strip().split("\n")
        assert lines[0] == ("u,v,s,class,lambda,lambda_u,lambda_v,"
                            "eta_u,eta_v,kappa_s,kappa_nu,density")
        assert len(lines) == len(curves[0].samples) + 1
        cells = lines[1].split(",")
        p = curves[0].samples[0]
        assert float(cells[0]) == p.uv[0]
        assert cells[3] == "CuspidalEdge"
        assert float(cells[9]) == p.kappa_s

    def test_json_deterministic(self, parabola_curve):
        front, curves = parabola_curve
        d1 = json.dumps(curve_to_dict(front, curves[0]), sort_keys=True)
        d2 = json.dumps(curve_to_dict(front, trace(front, grid=32)[0]),
                        sort_keys=True)
        assert d1 == d2
