"""Acceptance gate: one test per release criterion, at pinned tolerances.

Reference coordinates for the full-scale scene (seed-averaged targets) come
from the published tradeoff study this package reproduces; those checks use
phase-averaged runs and +/-20% bands because the published gain-phase draws
are not available.  Algebraic criteria are exact up to stated tolerances.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one line per
criterion.
"""

import math
import time

import numpy as np
import pytest

from crbeam import channel as chan
from crbeam import fim, optimize
from crbeam.cli import fold_to_front
from crbeam.fim import FimWorkspace
from crbeam.scenario import (Scenario, derive_bp_params, derive_ms_params)

from conftest import random_geometry, random_psd, small_system
from test_channel import fd_channel_partials
from test_fim import assert_jacobian_close, fd_jacobian

RHO_GRID_21 = [float(r) for r in optimize.rho_grid(21)]
FIG3_GRID = [0.0, 0.25, 0.5, 0.75, 1.0]
FIG3_SEEDS = list(range(1, 11))

# published full-scale reference points (three targets)
REF_FDB_BP_RHO1 = 0.0619
REF_FDB_MS_RHO0 = 0.1068
REF_APA = (0.1902, 0.1857)
REF_BAND = 0.20


def report(name, ok, detail=""):
    print(f"ACCEPTANCE {name}: {'PASS' if ok else 'FAIL'}"
          + (f" ({detail})" if detail else ""))


@pytest.fixture(scope="module")
def default_ws():
    return FimWorkspace(Scenario.default(seed=1))


@pytest.fixture(scope="module")
def fdb_sweeps(default_ws):
    """21-point covariances + bound pairs for the three full-covariance schemes."""
    out = {}
    for scheme in ("FDB-WCRB", "FDB-WBF", "FDB-WVM"):
        points = optimize.scheme_covariances(default_ws, scheme, RHO_GRID_21,
                                             rng=np.random.default_rng(1))
        pairs = [default_ws.crb_pair(p.covariance) for p in points]
        out[scheme] = (points, pairs)
    return out


@pytest.fixture(scope="module")
def cpa_sweeps(default_ws):
    out = {}
    for scheme in ("CPA-WCRB", "CPA-WBF", "CPA-WVM"):
        points = optimize.scheme_covariances(default_ws, scheme, RHO_GRID_21,
                                             rng=np.random.default_rng(1))
        pairs = [default_ws.crb_pair(p.covariance) for p in points]
        out[scheme] = (points, pairs)
    return out


def test_derivative_correctness():
    """Channel partials and both Jacobians match central finite differences."""
    start = time.monotonic()
    system = small_system(num_subcarriers=16)
    from crbeam.scenario import ArraySet, ArraySpec, Scenario as Scn
    arrays = ArraySet(ArraySpec(6), ArraySpec(5), ArraySpec(4))
    rng = np.random.default_rng(2024)
    worst = 0.0
    for trial in range(10):
        geometry = random_geometry(rng)
        scenario = Scn(system=system, geometry=geometry, arrays=arrays)
        for mode in (chan.BP, chan.MS):
            derive = derive_bp_params if mode == chan.BP else derive_ms_params
            pack = chan.pack_bp_params if mode == chan.BP else chan.pack_ms_params
            params = derive(geometry, system)
            derivs = chan.channel_derivatives(params, system, arrays, mode)
            numeric = fd_channel_partials(pack(params), system, arrays, mode)
            global_scale = np.abs(derivs.tensor).max()
            for i in range(derivs.num_params):
                scale = max(np.abs(derivs.tensor[i]).max(), 1e-9 * global_scale)
                err = np.abs(numeric[i] - derivs.tensor[i]).max() / scale
                worst = max(worst, err)
        params_bp = derive_bp_params(geometry, system)
        eta = fim.bp_eta(geometry, params_bp)
        jac = fim.jacobian_bp(geometry, system)
        num = fd_jacobian(eta, lambda e: fim.bp_xi_of_eta(
            e, geometry.num_targets, geometry.bs_position_m))
        assert_jacobian_close(jac, num)
        params_ms = derive_ms_params(geometry, system)
        eta = fim.ms_eta(geometry, params_ms)
        jac = fim.jacobian_ms(geometry, system)
        num = fd_jacobian(eta, lambda e: fim.ms_xi_of_eta(
            e, geometry.num_targets, geometry.bs_position_m))
        assert_jacobian_close(jac, num)
    elapsed = time.monotonic() - start
    ok = worst < 1e-6 and elapsed < 30.0
    report("derivative-correctness", ok,
           f"max rel err {worst:.2e}, {elapsed:.1f}s")
    assert worst < 1e-6
    assert elapsed < 30.0


def test_fim_algebra(default_ws):
    """Symmetry, PSD, additivity, and Schur-vs-direct agreement at 1e-8."""
    start = time.monotonic()
    rng = np.random.default_rng(11)
    worst_schur = 0.0
    for _ in range(20):
        v = random_psd(rng, default_ws.n_tx, default_ws.power_budget)
        for coeffs in (default_ws.bp, default_ws.ms):
            pfim = coeffs.evaluate(v)
            mat = pfim.matrix
            assert np.abs(mat - mat.T).max() <= 1e-12 * np.abs(mat).max()
            trace = np.trace(mat)
            assert np.linalg.eigvalsh(mat).min() >= -1e-9 * trace
            # the two evaluation routes are cross-checked inside crb()
            value = fim.crb(pfim)
            assert value > 0
            npos = pfim.n_position
            scale = fim._nuisance_scale(pfim)
            t_full = np.concatenate([np.ones(npos), scale])
            scaled = mat * t_full[:, None] * t_full[None, :]
            direct = float(np.trace(np.linalg.inv(scaled)[:npos, :npos]))
            worst_schur = max(worst_schur, abs(value - direct) / abs(direct))
        v2 = random_psd(rng, default_ws.n_tx, default_ws.power_budget)
        for coeffs in (default_ws.bp, default_ws.ms):
            lhs = coeffs.evaluate(v + v2).matrix
            rhs = coeffs.evaluate(v).matrix + coeffs.evaluate(v2).matrix
            assert np.abs(lhs - rhs).max() <= 1e-12 * np.abs(lhs).max()
    elapsed = time.monotonic() - start
    ok = worst_schur < 1e-8 and elapsed < 30.0
    report("fim-algebra", ok, f"max Schur-vs-direct {worst_schur:.2e}, {elapsed:.1f}s")
    assert worst_schur < 1e-8
    assert elapsed < 30.0


def test_exact_scaling_law(default_ws):
    """sqrt(bound) scales as 1/sqrt(gamma) when the covariance scales by gamma."""
    rng = np.random.default_rng(12)
    v = random_psd(rng, default_ws.n_tx, default_ws.power_budget)
    base = default_ws.sqrt_crb_pair(v)
    worst = 0.0
    for gamma in (0.5, 2.0, 10.0):
        scaled = default_ws.sqrt_crb_pair(gamma * v)
        for b, s in zip(base, scaled):
            worst = max(worst, abs(s - b / math.sqrt(gamma)) / (b / math.sqrt(gamma)))
    report("exact-scaling-law", worst < 1e-10, f"max rel err {worst:.2e}")
    assert worst < 1e-10


def test_wvm_closed_form_equivalence(default_ws, fdb_sweeps):
    """Conic projection route returns the weighted endpoint average."""
    points, _ = fdb_sweeps["FDB-WCRB"]
    by_rho = {p.rho: p.covariance for p in points}
    v_bp, v_ms = by_rho[1.0], by_rho[0.0]
    worst = 0.0
    for rho in (0.25, 0.5, 0.75):
        blend = optimize.solve_wvm(v_bp, v_ms, rho)
        via = optimize.solve_wvm(v_bp, v_ms, rho, via_sdp=True)
        worst = max(worst, np.linalg.norm(via - blend) / np.linalg.norm(blend))
    report("wvm-closed-form-equivalence", worst < 1e-6,
           f"max rel Frobenius {worst:.2e}")
    assert worst < 1e-6


def test_wbf_closed_form_equivalence():
    """Per-slot lift agrees with the sphere-renormalized average objective."""
    rng = np.random.default_rng(13)
    worst = 0.0
    for trial in range(5):
        n_tx, n_slots, power = 8, 3, 2.0
        w_bp = rng.normal(size=(n_tx, n_slots)) + 1j * rng.normal(size=(n_tx, n_slots))
        w_ms = rng.normal(size=(n_tx, n_slots)) + 1j * rng.normal(size=(n_tx, n_slots))
        w_bp *= math.sqrt(power) / np.linalg.norm(w_bp, "fro")
        w_ms *= math.sqrt(power) / np.linalg.norm(w_ms, "fro")
        rho = float(rng.uniform(0.1, 0.9))
        star = optimize.solve_wbf(w_bp, w_ms, rho, power)
        closed = optimize.wbf_objective(star, w_bp, w_ms, rho)
        _, lifted = optimize.solve_wbf_lifted(w_bp, w_ms, rho, power)
        worst = max(worst, abs(lifted - closed))
    report("wbf-closed-form-equivalence", worst <= 1e-6,
           f"max |obj diff| {worst:.2e}")
    assert worst <= 1e-6


def test_weak_pareto_monotonicity(default_ws, fdb_sweeps):
    """Sweep is monotone in the weight; no mismatch point dominates it."""
    start = time.monotonic()
    _, wcrb_pairs = fdb_sweeps["FDB-WCRB"]
    bp = [p[0] for p in wcrb_pairs]
    ms = [p[1] for p in wcrb_pairs]
    for i in range(len(bp) - 1):
        assert bp[i + 1] <= bp[i] * (1 + 1e-6), f"BP bound rose at index {i}"
        assert ms[i + 1] >= ms[i] * (1 - 1e-6), f"MS bound fell at index {i}"
    for scheme in ("FDB-WBF", "FDB-WVM"):
        _, pairs = fdb_sweeps[scheme]
        for (b, m), (b0, m0) in zip(pairs, wcrb_pairs):
            dominates = (b < b0 * (1 - 1e-4)) and (m < m0 * (1 - 1e-4))
            assert not dominates, f"{scheme} dominates the optimal sweep"
    elapsed = time.monotonic() - start
    report("weak-pareto-monotonicity", True, f"checked in {elapsed:.1f}s")
    assert elapsed < 300.0


def test_endpoint_coincidence(fdb_sweeps):
    """Mismatch interpolants reproduce the optimal endpoints after recovery."""
    _, wcrb_pairs = fdb_sweeps["FDB-WCRB"]
    worst = 0.0
    for scheme in ("FDB-WBF", "FDB-WVM"):
        _, pairs = fdb_sweeps[scheme]
        for idx in (0, len(pairs) - 1):
            for a, b in zip(pairs[idx], wcrb_pairs[idx]):
                worst = max(worst, abs(a - b) / b)
    report("endpoint-coincidence", worst < 1e-4, f"max rel diff {worst:.2e}")
    assert worst < 1e-4


@pytest.fixture(scope="module")
def fig3_averages():
    """Phase-averaged curves over ten seeds on the coarse weight grid."""
    fdb, cpa, apa_pts = [], [], []
    for seed in FIG3_SEEDS:
        ws = FimWorkspace(Scenario.default(seed=seed))
        fdb.append([ws.sqrt_crb_pair(p.covariance) for p in
                    optimize.scheme_covariances(ws, "FDB-WCRB", FIG3_GRID)])
        cpa.append([ws.sqrt_crb_pair(p.covariance) for p in
                    optimize.scheme_covariances(ws, "CPA-WCRB", FIG3_GRID)])
        apa_pts.append(ws.sqrt_crb_pair(
            optimize.scheme_covariances(ws, "APA", [])[0].covariance))
    return (np.mean(fdb, axis=0), np.mean(cpa, axis=0), np.mean(apa_pts, axis=0))


def test_fig3_reproduction(fig3_averages):
    """Phase-averaged endpoints and the equal-allocation point sit in band;
    the codebook-restricted sweep is dominated everywhere."""
    start = time.monotonic()
    fdb, cpa, apa_pt = fig3_averages
    checks = {
        "FDB bp(rho=1)": (fdb[-1][0], REF_FDB_BP_RHO1),
        "FDB ms(rho=0)": (fdb[0][1], REF_FDB_MS_RHO0),
        "APA bp": (apa_pt[0], REF_APA[0]),
        "APA ms": (apa_pt[1], REF_APA[1]),
    }
    details = []
    ok = True
    for label, (got, ref) in checks.items():
        rel = (got - ref) / ref
        details.append(f"{label}={got:.4f} ({rel:+.1%} vs {ref})")
        ok &= abs(rel) <= REF_BAND
    above_right = all(c[0] > f[0] and c[1] > f[1] for c, f in zip(cpa, fdb))
    ok &= above_right
    elapsed = time.monotonic() - start
    report("fig3-reproduction", ok,
           "; ".join(details) + f"; CPA above-right: {above_right}")
    for label, (got, ref) in checks.items():
        assert abs(got - ref) <= REF_BAND * ref, label
    assert above_right
    assert elapsed < 900.0


def local_maxima(values):
    return [i for i in range(1, len(values) - 1)
            if values[i] > values[i - 1] and values[i] > values[i + 1]]


def test_fig2_beampatterns(default_ws, fdb_sweeps):
    """Qualitative pattern shapes at the two endpoints.

    Known deviation: at the downlink-only endpoint this model consistently
    places the strongest beam on a reflector (the UE beam sits about 2 dB
    below), so the global-peak clause fails; see the analysis notes.
    """
    points, _ = fdb_sweeps["FDB-WCRB"]
    by_rho = {p.rho: p.covariance for p in points}
    grid_deg = np.arange(-90.0, 91.0, 1.0)
    spec = default_ws.scenario.arrays.bs_tx
    aods_deg = [math.degrees(fold_to_front(a)) for a in default_ws.aod_rad]
    ue_deg = aods_deg[0]

    p0 = optimize.beampattern(by_rho[0.0], np.radians(grid_deg), spec)
    peaks0 = [grid_deg[i] for i in local_maxima(p0)]
    missing = [a for a in aods_deg
               if not any(abs(pk - a) <= 3.0 for pk in peaks0)]
    rho0_ok = not missing

    p1 = optimize.beampattern(by_rho[1.0], np.radians(grid_deg), spec)
    peak1 = float(grid_deg[int(np.argmax(p1))])
    rho1_ok = abs(peak1 - ue_deg) <= 3.0

    report("fig2-beampatterns", rho0_ok and rho1_ok,
           f"rho=0 peaks cover AoDs: {rho0_ok} (missing {missing}); "
           f"rho=1 global peak {peak1:+.0f} deg vs UE {ue_deg:+.1f} deg: {rho1_ok}")
    assert rho0_ok, f"rho=0 pattern lacks local maxima near {missing}"
    assert rho1_ok, (
        f"rho=1 global peak at {peak1:+.1f} deg is not within 3 deg of the "
        f"UE direction {ue_deg:+.1f} deg")


def polygon_area(forward, backward):
    """Shoelace area of the loop (forward curve, reversed other curve)."""
    pts = np.vstack([forward, backward[::-1]])
    x, y = pts[:, 0], pts[:, 1]
    return 0.5 * abs(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def test_wvm_beats_wbf_area(fdb_sweeps, cpa_sweeps):
    """Covariance mismatch hugs the optimal boundary tighter than beamformer
    mismatch, in enclosed-area terms, for both design families."""
    results = {}
    for family, sweeps in (("FDB", fdb_sweeps), ("CPA", cpa_sweeps)):
        boundary = np.array([(math.sqrt(b), math.sqrt(m))
                             for b, m in sweeps[f"{family}-WCRB"][1]])
        areas = {}
        for kind in ("WBF", "WVM"):
            curve = np.array([(math.sqrt(b), math.sqrt(m))
                              for b, m in sweeps[f"{family}-{kind}"][1]])
            areas[kind] = polygon_area(curve, boundary)
        results[family] = areas
    ok = all(res["WVM"] <= res["WBF"] for res in results.values())
    report("wvm-beats-wbf-area", ok,
           "; ".join(f"{fam}: WVM {res['WVM']:.2e} vs WBF {res['WBF']:.2e}"
                     for fam, res in results.items()))
    for fam, res in results.items():
        assert res["WVM"] <= res["WBF"], fam
