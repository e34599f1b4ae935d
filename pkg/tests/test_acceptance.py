"""Acceptance suite: one test per release criterion, one printed line each.

Run with `pytest tests/test_acceptance.py -s` to see every line. Criterion 5
pins the restore onset at the ideal exp(2*gamma*t) scaling of the lossless
tip (0.2385 +/- 2%); the closed form mandates gamma^2-broadened denominators
that put the true onset ~3% above that anchor, so the check reads red. The
analysis and the honest measured value are printed either way.
"""

import math
import os
import time
from dataclasses import replace

import numpy as np

from jchmf import bath, gutzwiller, perturbation, sweep
from jchmf.model import ModelParams, complex_dressed_spectrum, jc_energy
from jchmf.sweep import RunConfig

JOBS = os.cpu_count() or 1


def _report(num: str, description: str, ok: bool, detail: str = "") -> bool:
    status = "PASS" if ok else "FAIL"
    suffix = f"  [{detail}]" if detail else ""
    print(f"criterion {num}: {status} - {description}{suffix}")
    return ok


def _onset_zkappa(gamma_half: float, t: float, mu: float,
                  zk_hi: float = 1.0) -> float:
    """Smallest hopping with psi > 0 at (gamma, t), bisected to 1e-10."""
    params = ModelParams(mu_tilde=mu, gamma_a=gamma_half, gamma_c=gamma_half)

    def superfluid(zk: float) -> bool:
        return perturbation.order_parameter(replace(params, zkappa=zk), t) > 0.0

    lo, hi = 1e-6, zk_hi
    assert not superfluid(lo) and superfluid(hi)
    while hi - lo > 1e-10:
        mid = 0.5 * (lo + hi)
        if superfluid(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def test_criterion_1_lobe_tip():
    start = time.perf_counter()
    mu_star, zk_star = perturbation.lobe_tip(ModelParams())
    elapsed = time.perf_counter() - start
    ok = abs(zk_star - 0.1599) <= 0.001 and elapsed < 1.0
    assert _report("1", "boundary maximizes at zkappa/beta = 0.1599 +/- 0.001",
                   ok, f"tip=({mu_star:.5f}, {zk_star:.6f}), {elapsed:.2f}s")


def test_criterion_2_oracle_equivalence():
    start = time.perf_counter()
    table = sweep.cmd_boundary(RunConfig(subcommand="boundary", mu_points=11,
                                         oracle=True, jobs=JOBS))
    elapsed = time.perf_counter() - start
    deviations = [abs(num - pt) / pt
                  for _, _, pt, num in table.rows]
    ok = max(deviations) <= 0.02 and elapsed < 30.0
    assert _report("2", "perturbative vs numerical boundary within 2% at 11 points",
                   ok, f"worst {max(deviations):.3%}, {elapsed:.1f}s")


def test_criterion_3_critical_time():
    start = time.perf_counter()
    base = ModelParams(mu_tilde=perturbation.lobe_tip(ModelParams())[0],
                       gamma_a=0.005, gamma_c=0.005)
    zk_c = perturbation.boundary_kappa(base, 0.0)
    result = perturbation.critical_time(replace(base, zkappa=2.0 * zk_c))
    formula = math.log(2.0) / (2.0 * base.gamma)
    elapsed = time.perf_counter() - start
    ok = (abs(result.root - formula) / formula <= 0.01
          and abs(formula - 34.657) < 0.01 and elapsed < 1.0)
    assert _report("3", "chi(t)=0 root equals log-formula 34.657/beta within 1%",
                   ok, f"root={result.root:.4f}, est={result.estimate:.4f}, "
                       f"{elapsed:.2f}s")


def test_criterion_4_covariance_law():
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(100):
        params = ModelParams(mu_tilde=float(rng.uniform(-0.98, -0.43)),
                             gamma_a=float(rng.uniform(0.0, 0.05)),
                             gamma_c=float(rng.uniform(0.0, 0.05)))
        t = float(rng.uniform(0.0, 40.0))
        bk_t = perturbation.boundary_kappa(params, t)
        scaled = perturbation.boundary_kappa(params, 0.0) * math.exp(
            2.0 * params.gamma * t)
        worst = max(worst, abs(bk_t - scaled) / bk_t)
    ok = worst <= 1e-13
    assert _report("4", "boundary(t) = boundary(0)*exp(2*gamma*t) to machine "
                        "precision over 100 draws", ok, f"worst rel {worst:.2e}")


def test_criterion_5_restore_onset_shift():
    mu_star = perturbation.lobe_tip(ModelParams())[0]
    onset_ideal = _onset_zkappa(0.0, 0.0, mu_star)
    onset_shifted = _onset_zkappa(0.025, 0.2 / 0.05, mu_star)
    ok_start = abs(onset_ideal - 0.1599) <= 0.001
    deviation = abs(onset_shifted - 0.2385) / 0.2385
    ok = ok_start and deviation <= 0.02
    assert _report("5", "psi>0 onset moves from 0.1599 (t=0) to 0.2385 +/- 2% "
                        "at gamma=0.05, t=0.2/gamma", ok,
                   f"measured {onset_ideal:.6f} -> {onset_shifted:.6f}, "
                   f"off anchor by {deviation:.2%}; the gamma^2-broadened "
                   f"denominators raise the onset above the ideal "
                   f"exp(2*gamma*t) scaling the anchor assumes")


def test_criterion_6_bath_reduction():
    start = time.perf_counter()
    spec = bath.make_bath(0.01, 2001, 1.0)
    series = bath.propagate_survival(spec, 400.0, 801)
    gamma_fit = bath.fit_decay_rate(series)
    elapsed = time.perf_counter() - start
    norm_dev = float(np.max(np.abs(series.norm - 1.0)))
    ok = (abs(gamma_fit - 0.01) / 0.01 <= 0.05 and norm_dev < 1e-10
          and elapsed < 20.0)
    assert _report("6", "2001-mode bath: fitted rate within 5%, norm conserved "
                        "to 1e-10", ok,
                   f"gamma_fit={gamma_fit:.6f}, norm dev {norm_dev:.1e}, "
                   f"{elapsed:.1f}s")


def test_criterion_7_spectrum_identities():
    lossless = ModelParams()
    split_ok = all(
        abs((jc_energy(lossless, n, +1) - jc_energy(lossless, n, -1))
            - 2.0 * math.sqrt(n)) <= 1e-12 * 2.0 * math.sqrt(n)
        for n in range(1, 6))
    lossy = ModelParams(gamma_a=0.005, gamma_c=0.005)
    imag_ok = True
    for n in range(1, 6):
        minus, plus = complex_dressed_spectrum(lossy, n)
        target = -n * (lossy.gamma_a + lossy.gamma_c) / 2.0
        imag_ok = imag_ok and abs(minus.energy.imag - target) < 1e-10 \
            and abs(plus.energy.imag - target) < 1e-10
    ok = split_ok and imag_ok
    assert _report("7", "splitting 2*sqrt(n) exact, lossy imag parts "
                        "-n*(gamma_a+gamma_c)/2 for n=1..5", ok)


def test_criterion_8_order_parameter_continuity():
    table = sweep.cmd_evolve(RunConfig(subcommand="evolve", jobs=JOBS))
    mu_star = RunConfig(subcommand="evolve").resolved_mu()
    ok = all(psi >= 0.0 for psi in table.column("psi"))
    grid_step = 60.0 / 600
    for zk, gamma in ((0.2, 0.01), (0.2, 0.02), (0.3, 0.01), (0.3, 0.02)):
        rows = [(t, psi) for z, g, t, psi, *_ in table.rows
                if z == zk and g == gamma]
        psi = np.array([p for _, p in rows])
        alive = psi > 0.0
        ok = ok and np.all(np.diff(psi[alive]) <= 1e-12)
        ok = ok and np.all(psi[np.argmax(~alive):] == 0.0)
        params = ModelParams(mu_tilde=mu_star, gamma_a=gamma / 2,
                             gamma_c=gamma / 2, zkappa=zk)
        t_c = perturbation.critical_time(params).root
        first_dead = next(t for t, p in rows if p == 0.0)
        ok = ok and 0.0 <= first_dead - t_c <= grid_step + 1e-9
    assert _report("8", "psi >= 0, monotone decay to 0 at t_c, stays 0 after "
                        "(all quench cases)", ok)


def test_criterion_9_determinism_across_jobs(tmp_path):
    outputs = []
    for jobs in (1, 2):
        path = tmp_path / f"boundary_j{jobs}.csv"
        table = sweep.cmd_boundary(RunConfig(subcommand="boundary",
                                             mu_points=11, jobs=jobs))
        sweep.write_csv(table, path)
        outputs.append(path.read_bytes())
    boundary_ok = outputs[0] == outputs[1]
    outputs = []
    for jobs in (1, 2):
        path = tmp_path / f"restore_j{jobs}.csv"
        table = sweep.cmd_restore(RunConfig(subcommand="restore",
                                            zkappa_points=41, jobs=jobs))
        sweep.write_csv(table, path)
        outputs.append(path.read_bytes())
    ok = boundary_ok and outputs[0] == outputs[1]
    assert _report("9", "byte-identical CSV at any --jobs setting", ok)


def test_fluctuation_model_note():
    # the spread model is accepted by its own properties, not figure values
    params = ModelParams(mu_tilde=-0.7836, gamma_a=0.005, gamma_c=0.005)
    zero_start = gutzwiller.leakage_fluctuation(params, 0.0) == 0.0
    peak = gutzwiller.leakage_fluctuation(params, math.log(2.0) / params.gamma)
    peak_ok = abs(peak - 0.5) < 1e-12
    collapse_ok = all(
        gutzwiller.total_fluctuation(params, t)
        == gutzwiller.leakage_fluctuation(params, t)
        for t in (0.0, 10.0, 50.0))
    ok = zero_start and peak_ok and collapse_ok
    assert _report("note", "spread model: dn_leak(0)=0, max 0.5 at t=ln2/gamma, "
                           "dn_total=dn_leak at zero hopping", ok)
