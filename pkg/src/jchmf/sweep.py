"""Grid sweeps behind the CLI: tables, CSV output, and plot-script emission.

All sweep outputs are deterministic: grid points are independent pure
evaluations, gathered in grid-index order regardless of the parallelism
degree, and CSV bytes depend only on the run configuration.
"""

import math
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from . import bath, gutzwiller, model, perturbation
from .errors import BracketInvalid, DissipativeNotSupported, OutsideLobe
from .model import ModelParams


@dataclass(frozen=True)
class SeriesTable:
    """Rectangular labeled table; None cells become empty CSV fields."""

    name: str
    columns: tuple[tuple[str, str], ...]
    rows: tuple[tuple, ...]

    def __post_init__(self) -> None:
        arity = len(self.columns)
        for row in self.rows:
            if len(row) != arity:
                raise ValueError("all rows must match the column count")

    def header(self) -> list[str]:
        return [f"{label}[{unit}]" for label, unit in self.columns]

    def column(self, label: str) -> list:
        for i, (lab, _) in enumerate(self.columns):
            if lab == label:
                return [row[i] for row in self.rows]
        raise KeyError(label)


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def write_csv(table: SeriesTable, path) -> None:
    """Write the table as UTF-8 CSV, atomically (temp file + rename)."""
    target = Path(path)
    lines = [",".join(table.header())]
    lines.extend(",".join(_format_cell(v) for v in row) for row in table.rows)
    payload = "\n".join(lines) + "\n"
    fd, tmp_name = tempfile.mkstemp(dir=target.parent or Path("."),
                                    prefix=target.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(payload)
        os.replace(tmp_name, target)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise


def write_plot_script(table: SeriesTable, csv_name: str, path) -> None:
    """Emit a sidecar matplotlib script reading the CSV by relative path."""
    labels = [label for label, _ in table.columns]
    script = f'''"""Plot {table.name} curves from {csv_name} (written alongside)."""
import csv

import matplotlib.pyplot as plt

NORMALIZE = False  # divide psi-like columns by their first nonzero value

rows = []
with open({csv_name!r}, newline="") as handle:
    reader = csv.reader(handle)
    header = next(reader)
    for row in reader:
        rows.append([float(v) if v else float("nan") for v in row])

columns = {{name.split("[")[0]: [r[i] for r in rows] for i, name in enumerate(header)}}
x_label = {labels[0]!r}
x = columns[x_label]
for name, values in columns.items():
    if name == x_label:
        continue
    if NORMALIZE and name.startswith("psi"):
        scale = next((abs(v) for v in values if v), 1.0)
        values = [v / scale for v in values]
    plt.plot(x, values, label=name)
plt.xlabel(x_label)
plt.legend()
plt.tight_layout()
plt.savefig({(table.name + ".png")!r}, dpi=150)
'''
    Path(path).write_text(script, encoding="utf-8")


@dataclass(frozen=True)
class RunConfig:
    """Effective configuration of one sweep run (flags over config file)."""

    subcommand: str
    omega_c: float = 1000.0
    delta: float = 0.0
    gamma_a: float | None = None
    gamma_c: float | None = None
    mu_tilde: float | None = None
    zkappa: float | None = None
    z: int = 4
    n_max: int = 6
    t: float = 0.0
    t_max: float | None = None
    t_steps: int | None = None
    mu_points: int = 25
    mu_min: float | None = None
    mu_max: float | None = None
    zkappa_max: float | None = None
    zkappa_points: int | None = None
    n_levels: int = 5
    gamma_target: float = 0.01
    n_modes: int = 2001
    half_bandwidth: float = 1.0
    out: str | None = None
    jobs: int = field(default_factory=lambda: os.cpu_count() or 1)
    plot: bool = False
    oracle: bool = False

    def __post_init__(self) -> None:
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")
        for name in ("mu_points", "zkappa_points", "t_steps"):
            count = getattr(self, name)
            if count is not None and count < 2:
                raise ValueError(f"{name} must be at least 2")

    def params(self, gamma_a: float = 0.0, gamma_c: float = 0.0,
               mu_tilde: float | None = None, zkappa: float = 0.0) -> ModelParams:
        mu = mu_tilde if mu_tilde is not None else self.resolved_mu()
        return ModelParams(omega_c=self.omega_c, omega_a=self.omega_c - self.delta,
                           gamma_a=self.gamma_a if self.gamma_a is not None else gamma_a,
                           gamma_c=self.gamma_c if self.gamma_c is not None else gamma_c,
                           mu_tilde=mu, z=self.z,
                           zkappa=self.zkappa if self.zkappa is not None else zkappa)

    def resolved_mu(self) -> float:
        """Explicit mu_tilde, or the lossless lobe tip (the lossy boundary
        diverges toward the lobe edges, so only the ideal tip is well defined)."""
        if self.mu_tilde is not None:
            return self.mu_tilde
        reference = ModelParams(omega_c=self.omega_c, mu_tilde=-0.5, z=self.z)
        mu_star, _ = perturbation.lobe_tip(reference)
        return mu_star


def _interior_grid(lo: float, hi: float, count: int) -> np.ndarray:
    steps = np.arange(1, count + 1, dtype=float)
    return lo + steps * (hi - lo) / (count + 1)


def _pmap(fn, items: list, jobs: int) -> list:
    if jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=min(jobs, len(items))) as pool:
        return list(pool.map(fn, items))


def _boundary_point(task: tuple) -> tuple:
    omega_c, z, gamma_a, gamma_c, mu, t, oracle, n_max = task
    params = ModelParams(omega_c=omega_c, gamma_a=gamma_a, gamma_c=gamma_c,
                         mu_tilde=mu, z=z)
    try:
        perturbative = perturbation.boundary_kappa(params, t)
        in_lobe = 1
    except OutsideLobe:
        perturbative = None
        in_lobe = 0
    numeric = None
    if oracle and in_lobe:
        basis = gutzwiller.TruncatedBasis(n_max)
        try:
            numeric = gutzwiller.numeric_boundary(params, basis)
        except BracketInvalid:
            numeric = None
    if oracle:
        return (mu, in_lobe, perturbative, numeric)
    return (mu, in_lobe, perturbative)


def cmd_boundary(config: RunConfig) -> SeriesTable:
    """Lobe boundary trace zkappa_c(mu_tilde) at fixed gamma and t."""
    gamma_a = config.gamma_a if config.gamma_a is not None else 0.0
    gamma_c = config.gamma_c if config.gamma_c is not None else 0.0
    if config.oracle and (gamma_a != 0.0 or gamma_c != 0.0):
        raise ValueError("--oracle forces gamma = 0")
    lo, hi = model.mott_lobe_interval(ModelParams(omega_c=config.omega_c))
    if config.mu_min is None and config.mu_max is None:
        grid = _interior_grid(lo, hi, config.mu_points)
    else:
        grid = np.linspace(config.mu_min if config.mu_min is not None else lo,
                           config.mu_max if config.mu_max is not None else hi,
                           config.mu_points)
    tasks = [(config.omega_c, config.z, gamma_a, gamma_c, float(mu), config.t,
              config.oracle, config.n_max) for mu in grid]
    rows = _pmap(_boundary_point, tasks, config.jobs)
    columns = [("mu_tilde", "1"), ("in_lobe", "flag"),
               ("zkappa_c_perturbative", "beta")]
    if config.oracle:
        columns.append(("zkappa_c_numeric", "beta"))
    return SeriesTable(name="boundary", columns=tuple(columns), rows=tuple(rows))


# default quench cases (zkappa, gamma) plus the localized reference
EVOLVE_CASES = ((0.2, 0.01), (0.2, 0.02), (0.3, 0.01), (0.3, 0.02), (0.0, 0.01))


def _evolve_case(task: tuple) -> list[tuple]:
    omega_c, z, mu, zkappa, gamma, t_max, t_steps = task
    params = ModelParams(omega_c=omega_c, gamma_a=0.5 * gamma, gamma_c=0.5 * gamma,
                         mu_tilde=mu, z=z, zkappa=zkappa)
    rows = []
    for t in np.linspace(0.0, t_max, t_steps):
        t = float(t)
        psi = perturbation.order_parameter(params, t)
        leak = gutzwiller.leakage_fluctuation(params, t)
        total = gutzwiller.total_fluctuation(params, t)
        chi = perturbation.chi_theta(params, t).chi if zkappa > 0.0 else None
        rows.append((zkappa, gamma, t, psi, total, leak, chi))
    return rows


def cmd_evolve(config: RunConfig) -> SeriesTable:
    """Order parameter and occupation-spread time series per quench case."""
    if config.zkappa is not None or config.gamma_a is not None or config.gamma_c is not None:
        gamma = ((config.gamma_a if config.gamma_a is not None else 0.005)
                 + (config.gamma_c if config.gamma_c is not None else 0.005))
        cases = [(config.zkappa if config.zkappa is not None else 0.3, gamma)]
    else:
        cases = list(EVOLVE_CASES)
    if any(gamma <= 0.0 for _, gamma in cases):
        raise ValueError("evolve requires gamma > 0")
    mu = config.resolved_mu()
    t_max = config.t_max if config.t_max is not None else 60.0
    t_steps = config.t_steps if config.t_steps is not None else 601
    tasks = [(config.omega_c, config.z, mu, zk, gamma, t_max, t_steps)
             for zk, gamma in cases]
    rows: list[tuple] = []
    for case_rows in _pmap(_evolve_case, tasks, config.jobs):
        rows.extend(case_rows)
    return SeriesTable(
        name="evolve",
        columns=(("zkappa", "beta"), ("gamma", "beta"), ("t", "1/beta"),
                 ("psi", "1"), ("dn_total", "1"), ("dn_leak", "1"),
                 ("chi", "1/beta")),
        rows=tuple(rows))


RESTORE_CASES = ((0.0, 0.0), (0.05, 0.0), (0.05, 2.0), (0.05, 4.0))


def _restore_case(task: tuple) -> list[tuple]:
    omega_c, z, mu, gamma, t, zk_max, zk_points = task
    rows = []
    for zk in np.linspace(0.0, zk_max, zk_points):
        zk = float(zk)
        params = ModelParams(omega_c=omega_c, gamma_a=0.5 * gamma,
                             gamma_c=0.5 * gamma, mu_tilde=mu, z=z, zkappa=zk)
        rows.append((gamma, t, zk, perturbation.order_parameter(params, t)))
    return rows


def cmd_restore(config: RunConfig) -> SeriesTable:
    """psi versus hopping at fixed times, restarting from the localized side."""
    if config.gamma_a is not None or config.gamma_c is not None:
        gamma = ((config.gamma_a if config.gamma_a is not None else 0.0)
                 + (config.gamma_c if config.gamma_c is not None else 0.0))
        if gamma > 0.0:
            cases = [(gamma, 0.0), (gamma, 0.1 / gamma), (gamma, 0.2 / gamma)]
        else:
            cases = [(0.0, 0.0)]
    else:
        cases = list(RESTORE_CASES)
    mu = config.resolved_mu()
    zk_max = config.zkappa_max if config.zkappa_max is not None else 0.6
    zk_points = config.zkappa_points if config.zkappa_points is not None else 121
    if zk_max < 0.5:
        raise ValueError("restore needs a zkappa grid reaching at least 0.5")
    tasks = [(config.omega_c, config.z, mu, gamma, t, zk_max, zk_points)
             for gamma, t in cases]
    rows: list[tuple] = []
    for case_rows in _pmap(_restore_case, tasks, config.jobs):
        rows.extend(case_rows)
    return SeriesTable(
        name="restore",
        columns=(("gamma", "beta"), ("t", "1/beta"), ("zkappa", "beta"),
                 ("psi", "1")),
        rows=tuple(rows))


def cmd_spectrum(config: RunConfig) -> SeriesTable:
    """Dressed levels, splittings, and complex spectra for n = 1..n_levels."""
    params = config.params(gamma_a=0.005, gamma_c=0.005)
    resonant = params.delta == 0.0
    defect = model.commutator_defect(params)
    rows = []
    for n in range(1, config.n_levels + 1):
        e_minus = model.jc_energy(params, n, -1)
        e_plus = model.jc_energy(params, n, +1)
        minus, plus = model.complex_dressed_spectrum(params, n)
        decay = model.total_decay(params, n) if resonant else None
        rows.append((n, e_minus, e_plus, e_plus - e_minus,
                     minus.energy.real, minus.energy.imag,
                     plus.energy.real, plus.energy.imag, decay, defect))
    return SeriesTable(
        name="spectrum",
        columns=(("n", "1"), ("e_minus", "beta"), ("e_plus", "beta"),
                 ("splitting", "beta"), ("re_minus", "beta"),
                 ("im_minus", "beta"), ("re_plus", "beta"), ("im_plus", "beta"),
                 ("total_decay", "beta"), ("commutator_defect", "1")),
        rows=tuple(rows))


def cmd_bath(config: RunConfig) -> SeriesTable:
    """Survival-amplitude series for the discretized flat-bath validation."""
    spec = bath.make_bath(config.gamma_target, config.n_modes,
                          config.half_bandwidth, config.omega_c)
    t_end = config.t_max if config.t_max is not None else 4.0 / config.gamma_target
    n_samples = config.t_steps if config.t_steps is not None else 801
    series = bath.propagate_survival(spec, t_end, n_samples)
    gamma_fit = bath.fit_decay_rate(series)
    print(f"gamma_fit = {gamma_fit:.6g}  (target {config.gamma_target:.6g}, "
          f"rel err {abs(gamma_fit - config.gamma_target) / config.gamma_target:.3%})")
    rows = tuple(
        (float(t), float(a.real), float(a.imag), float(abs(a)**2))
        for t, a in zip(series.times, series.amplitude))
    return SeriesTable(
        name="bath",
        columns=(("t", "1/beta"), ("re_ec", "1"), ("im_ec", "1"),
                 ("abs2_ec", "1")),
        rows=rows)


def _gutzwiller_point(task: tuple) -> tuple:
    omega_c, z, mu, zk, n_max = task
    params = ModelParams(omega_c=omega_c, mu_tilde=mu, z=z, zkappa=zk)
    basis = gutzwiller.TruncatedBasis(n_max)
    sol = gutzwiller.solve_self_consistent(params, basis)
    return (zk, sol.psi, sol.energy, sol.n_mean, math.sqrt(sol.n_var),
            sol.iterations, int(sol.converged))


def cmd_gutzwiller(config: RunConfig) -> SeriesTable:
    """Self-consistent numerical solves over a hopping grid (lossless)."""
    if (config.gamma_a or 0.0) != 0.0 or (config.gamma_c or 0.0) != 0.0:
        raise DissipativeNotSupported("the numerical solver runs at gamma = 0")
    mu = config.resolved_mu()
    zk_max = config.zkappa_max if config.zkappa_max is not None else 0.35
    zk_points = config.zkappa_points if config.zkappa_points is not None else 36
    tasks = [(config.omega_c, config.z, mu, float(zk), config.n_max)
             for zk in np.linspace(0.0, zk_max, zk_points)]
    rows = _pmap(_gutzwiller_point, tasks, config.jobs)
    return SeriesTable(
        name="gutzwiller",
        columns=(("zkappa", "beta"), ("psi", "1"), ("energy", "beta"),
                 ("n_mean", "1"), ("n_dev", "1"), ("iterations", "count"),
                 ("converged", "flag")),
        rows=tuple(rows))
