"""Batch driver: every verification and simulation as a subcommand.

Subcommands

    verify      structure constants, formal embedding, classical agreement,
                representation suite, convergence, commuting diagram
    eds-check   finite-difference residuals of the coframe identities
    transport   parallel transport along a JSON path spec, Born probabilities
    table       CSV/JSON summary tables over m and ell ranges
    dump-rep    matrix dumps of the level-m representations

Exit codes: 0 all checks passed, 1 a check failed, 2 usage/config error.
Reports are deterministic for a fixed seed up to the generated_at header.
SPHERE7_THREADS caps worker parallelism for the per-level sweeps.
"""

import argparse
import csv
import datetime
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import classical, coframe, connection, fock, u2h, weyl
from .tolerances import TAU_REP


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    seed: int = 0
    m_range: tuple = (1, 6)
    ell_range: tuple = (0, 4)
    steps: int = 10_000
    h: float = 1e-4
    tau_rep: float = TAU_REP
    tau_sphere: float = 1e-10
    out: Path = Path("sphere7_out")
    fmt: str = "json"
    mutate: str = None
    samples: int = 100

    def validate(self):
        if self.m_range[0] < 1 or self.m_range[1] < self.m_range[0]:
            raise ConfigError(f"invalid m range {self.m_range}")
        if self.ell_range[0] < 0 or self.ell_range[1] < self.ell_range[0]:
            raise ConfigError(f"invalid ell range {self.ell_range}")
        if self.h <= 0 or self.tau_rep <= 0 or self.tau_sphere <= 0:
            raise ConfigError("tolerances and step must be positive")
        if self.steps < 2:
            raise ConfigError("steps must be >= 2")
        if self.fmt not in ("json", "csv"):
            raise ConfigError(f"unknown format {self.fmt}")
        return self

    def ms(self):
        return range(self.m_range[0], self.m_range[1] + 1)

    def ells(self):
        return range(self.ell_range[0], self.ell_range[1] + 1)


def worker_count(tasks):
    cap = os.environ.get("SPHERE7_THREADS")
    try:
        cap = int(cap) if cap else (os.cpu_count() or 1)
    except ValueError:
        cap = 1
    return max(1, min(cap, tasks))


def _parse_range(text):
    if ".." in text:
        lo, hi = text.split("..", 1)
        return (int(lo), int(hi))
    v = int(text)
    return (v, v)


def _config_from_args(args):
    cfg = RunConfig()
    if getattr(args, "config", None):
        raw = json.loads(Path(args.config).read_text())
        for k, v in raw.items():
            if not hasattr(cfg, k):
                raise ConfigError(f"unknown config key {k!r}")
            if k in ("m_range", "ell_range"):
                v = tuple(v)
            elif k == "out":
                v = Path(v)
            setattr(cfg, k, v)
    if getattr(args, "m", None):
        cfg.m_range = _parse_range(args.m)
    if getattr(args, "ell", None):
        cfg.ell_range = _parse_range(args.ell)
    for name in ("seed", "steps", "samples"):
        v = getattr(args, name, None)
        if v is not None:
            setattr(cfg, name, v)
    if getattr(args, "h", None) is not None:
        cfg.h = args.h
    if getattr(args, "out", None):
        cfg.out = Path(args.out)
    if getattr(args, "format", None):
        cfg.fmt = args.format
    if getattr(args, "mutate", None):
        cfg.mutate = args.mutate
    return cfg.validate()


def _write_report(cfg, name, payload):
    cfg.out.mkdir(parents=True, exist_ok=True)
    payload = {"generated_at": datetime.datetime.now(datetime.timezone.utc)
               .isoformat(),
               "seed": cfg.seed, **payload}
    path = cfg.out / f"{name}.json"
    path.write_text(json.dumps(payload, indent=1, sort_keys=True,
                               default=str))
    if cfg.fmt == "csv" and "checks" in payload:
        cpath = cfg.out / f"{name}.csv"
        with open(cpath, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["check", "detail", "value", "threshold", "passed"])
            for row in payload["checks"]:
                w.writerow([row["check"], row.get("detail", ""),
                            row["value"], row.get("threshold", ""),
                            row["passed"]])
    return path


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _rep_checks(m, tau):
    rep = fock.build_rho(m)
    br, pair = fock.verify_brackets(rep)
    rows = [
        {"check": "rep-bracket", "detail": f"m={m} worst={pair}",
         "value": br, "threshold": tau, "passed": br < tau},
        {"check": "rep-reality", "detail": f"m={m}",
         "value": fock.verify_reality(rep), "threshold": tau,
         "passed": fock.verify_reality(rep) < tau},
        {"check": "rep-trace", "detail": f"m={m}",
         "value": fock.verify_traceless(rep), "threshold": tau,
         "passed": fock.verify_traceless(rep) < tau},
    ]
    spec_err = float(np.max(np.abs(fock.k_spectrum(rep)
                                   - fock.expected_k_spectrum(m))))
    rows.append({"check": "rep-spectrum", "detail": f"m={m}",
                 "value": spec_err, "threshold": 1e-12,
                 "passed": spec_err < 1e-12})
    cd = fock.commutant_dimension(rep)
    rows.append({"check": "rep-commutant", "detail": f"m={m}",
                 "value": cd, "threshold": 1, "passed": cd == 1})
    cas = fock.casimir_deviation(rep)
    rows.append({"check": "rep-casimir", "detail": f"m={m}",
                 "value": cas, "threshold": 1e-8, "passed": cas < 1e-8})
    return rows


# pairs that must close exactly at every truncation order
def _required_exact_pairs():
    out = []
    for x, y in weyl.generator_pairs():
        if x.startswith("J") or y.startswith("J") or "K+-" in (x, y):
            out.append(f"{x}|{y}")
    return out


def cmd_verify(cfg):
    checks = []
    mutate = cfg.mutate
    jac, triple = u2h.verify_jacobi("spinor", mutate=mutate)
    checks.append({"check": "jacobi-spinor",
                   "detail": f"worst triple {triple}" if triple else "",
                   "value": str(jac), "threshold": "0 (exact)",
                   "passed": jac == 0})
    jac_v, triple_v = u2h.verify_jacobi("vector")
    checks.append({"check": "jacobi-vector", "detail": "",
                   "value": str(jac_v), "threshold": "0 (exact)",
                   "passed": jac_v == 0})
    xb = u2h.cross_basis_residual()
    checks.append({"check": "cross-basis", "detail": "",
                   "value": str(xb), "threshold": "0 (exact)",
                   "passed": xb == 0})
    rb = u2h.reality_bracket_residual()
    checks.append({"check": "reality-antiautomorphism", "detail": "",
                   "value": str(rb), "threshold": "0 (exact)",
                   "passed": rb == 0})

    required = set(_required_exact_pairs())
    embed_reports = {}
    prev_grades = {}
    for ell in cfg.ells():
        rep = weyl.verify_embedding(ell)
        embed_reports[ell] = rep
        bad_exact = [k for k in required if not rep[k]["exact"]]
        checks.append({"check": "embedding-exact-sector",
                       "detail": f"ell={ell} failing={bad_exact}",
                       "value": len(bad_exact), "threshold": 0,
                       "passed": not bad_exact})
        grades = {k: v["residual_min_grade"] for k, v in rep.items()
                  if k not in required}
        mono_ok = True
        for k, g in grades.items():
            gprev = prev_grades.get(k)
            if gprev is not None and g is not None and gprev is not None:
                if g < gprev:
                    mono_ok = False
        checks.append({"check": "embedding-monotone",
                       "detail": f"ell={ell}",
                       "value": "nondecreasing" if mono_ok else "decreased",
                       "threshold": "nondecreasing", "passed": mono_ok})
        prev_grades = grades

    for ell in range(cfg.ell_range[0], min(cfg.ell_range[1], 4) + 1):
        cl = classical.verify_classical(ell)
        qt = {k: v["residual_min_grade"] for k, v in embed_reports[ell].items()}
        ct = {k: v["residual_min_grade"] for k, v in cl.items()}
        same = qt == ct
        checks.append({"check": "classical-quantum-agreement",
                       "detail": f"ell={ell}", "value": str(same),
                       "threshold": "identical grade tables",
                       "passed": same})

    if mutate:
        rep_m = fock.build_rho(max(2, cfg.m_range[0]))
        br, pair = fock.verify_brackets(rep_m,
                                        table=u2h.bracket_table("spinor",
                                                                mutate=mutate))
        checks.append({"check": "rep-bracket-mutated",
                       "detail": f"failing pair {pair}",
                       "value": br, "threshold": cfg.tau_rep,
                       "passed": br < cfg.tau_rep})

    ms = list(cfg.ms())
    with ThreadPoolExecutor(max_workers=worker_count(len(ms))) as pool:
        for rows in pool.map(lambda m: _rep_checks(m, cfg.tau_rep), ms):
            checks.extend(rows)

    m_conv = min(cfg.m_range[1], 4)
    for m in range(max(2, cfg.m_range[0]), m_conv + 1):
        dists = [fock.partial_sum_distance(m, ell) for ell in
                 (0, 1, 2, 4, 8, 16, 32, 64)]
        mono = all(b <= a + 1e-15 for a, b in zip(dists, dists[1:]))
        checks.append({"check": "partial-sum-monotone", "detail": f"m={m}",
                       "value": f"{dists[0]:.3g}..{dists[-1]:.3g}",
                       "threshold": "nonincreasing", "passed": mono})
        interior = fock.partial_sum_distance(m, 40, block="interior")
        checks.append({"check": "partial-sum-interior", "detail":
                       f"m={m} ell=40", "value": interior,
                       "threshold": 1e-6, "passed": interior < 1e-6})

    for m in range(cfg.m_range[0], min(cfg.m_range[1], 3) + 1):
        worst = 0.0
        for ell in range(cfg.ell_range[0], min(cfg.ell_range[1], 4) + 1):
            gens = weyl.embedded_generators(ell)
            part = fock.build_rho_partial(m, ell)
            for name, lau in gens.items():
                mat = fock.matrix_of_laurent(lau, m, m, m + 1)
                worst = max(worst, float(np.max(np.abs(mat - part[name]))))
        checks.append({"check": "commuting-diagram", "detail": f"m={m}",
                       "value": worst, "threshold": 1e-12,
                       "passed": worst < 1e-12})

    ok = all(row["passed"] for row in checks)
    path = _write_report(cfg, "verify", {"config": cfg.__dict__,
                                         "checks": checks,
                                         "embedding_reports": embed_reports,
                                         "passed": ok})
    for row in checks:
        status = "PASS" if row["passed"] else "FAIL"
        print(f"[{status}] {row['check']} {row.get('detail','')} "
              f"value={row['value']}")
    print(f"report: {path}")
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# eds-check
# ---------------------------------------------------------------------------

def cmd_eds_check(cfg):
    # half-length tangents away from the chart edges keep the second-order
    # truncation constant well under the absolute threshold
    rng = np.random.default_rng(cfg.seed)
    worst = 0.0
    for _ in range(cfg.samples):
        p = coframe.random_point(rng, min_patch=0.35)
        u = coframe.random_unit_tangent(rng, p, length=0.5)
        v = coframe.random_unit_tangent(rng, p, length=0.5)
        worst = max(worst, float(coframe.eds_residual(p, u, v, h=cfg.h).max()))
    p = coframe.random_point(rng, min_patch=0.35)
    u = coframe.random_unit_tangent(rng, p, length=0.5)
    v = coframe.random_unit_tangent(rng, p, length=0.5)
    r1 = float(coframe.eds_residual(p, u, v, h=1e-3).max())
    r2 = float(coframe.eds_residual(p, u, v, h=5e-4).max())
    order = float(np.log2(r1 / r2))
    checks = [
        {"check": "eds-residual", "detail": f"{cfg.samples} samples h={cfg.h}",
         "value": worst, "threshold": 1e-6, "passed": worst < 1e-6},
        {"check": "eds-order", "detail": "h=1e-3 vs 5e-4",
         "value": order, "threshold": "[1.8, 2.2]",
         "passed": 1.8 <= order <= 2.2},
    ]
    ok = all(c["passed"] for c in checks)
    path = _write_report(cfg, "eds", {"config": cfg.__dict__,
                                      "checks": checks, "passed": ok})
    for row in checks:
        print(f"[{'PASS' if row['passed'] else 'FAIL'}] {row['check']} "
              f"value={row['value']}")
    print(f"report: {path}")
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# transport
# ---------------------------------------------------------------------------

def _path_from_spec(spec, steps):
    kind = spec.get("type")
    if kind == "great_circle":
        p0 = coframe.SpherePoint(spec["from"]["x"], spec["from"]["y"])
        p1 = coframe.SpherePoint(spec["to"]["x"], spec["to"]["y"])
        return connection.PathSpec.great_circle(p0, p1, steps)
    if kind == "great_circle_loop":
        p0 = coframe.SpherePoint(spec["at"]["x"], spec["at"]["y"])
        return connection.PathSpec.great_circle_loop(
            p0, np.asarray(spec["direction"], dtype=float), steps)
    if kind == "reeb_loop":
        t0 = coframe.ToricPoint(spec["r"], spec["theta"])
        return connection.PathSpec.reeb_loop(t0, steps)
    if kind == "piecewise":
        pts = [coframe.SpherePoint(q["x"], q["y"]) for q in spec["points"]]
        return connection.PathSpec.piecewise(pts, steps)
    if kind == "constant":
        p0 = coframe.SpherePoint(spec["at"]["x"], spec["at"]["y"])
        return connection.PathSpec.constant(p0, steps)
    raise ConfigError(f"unknown path type {kind!r}")


def _state_from_json(obj, d):
    v = np.zeros(d, dtype=complex)
    arr = np.asarray(obj, dtype=float)
    if arr.ndim == 2:
        v[: arr.shape[0]] = arr[:, 0] + 1j * arr[:, 1]
    else:
        v[: arr.shape[0]] = arr
    return v


def cmd_transport(cfg, path_file):
    try:
        spec = json.loads(Path(path_file).read_text())
        m = int(spec.get("m", cfg.m_range[0]))
        steps = int(spec.get("steps", cfg.steps))
        path = _path_from_spec(spec, steps)
    except (OSError, KeyError, ValueError, json.JSONDecodeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    result = connection.parallel_transport(path, m, steps)
    payload = {"config": cfg.__dict__, "path": path.to_json(), "m": m,
               "result": result.to_json()}
    if spec.get("dump_matrix"):
        payload["matrix"] = [[[float(v.real), float(v.imag)] for v in row]
                             for row in result.matrix]
    if "psi_i" in spec and "psi_f" in spec:
        d = fock.dim(m)
        psi_i = _state_from_json(spec["psi_i"], d)
        psi_f = _state_from_json(spec["psi_f"], d)
        amp = complex(np.vdot(psi_f, result.matrix @ psi_i))
        ni = float(np.vdot(psi_i, psi_i).real)
        nf = float(np.vdot(psi_f, psi_f).real)
        payload["probability"] = abs(amp) ** 2 / (ni * nf)
    rpath = _write_report(cfg, "transport", payload)
    print(json.dumps(payload["result"], indent=1, sort_keys=True))
    if "probability" in payload:
        print(f"probability: {payload['probability']}")
    print(f"report: {rpath}")
    return 0


# ---------------------------------------------------------------------------
# table
# ---------------------------------------------------------------------------

def cmd_table(cfg):
    cfg.out.mkdir(parents=True, exist_ok=True)
    rep_rows = []
    for m in cfg.ms():
        rep = fock.build_rho(m)
        br, _ = fock.verify_brackets(rep)
        spec_vals = fock.expected_k_spectrum(m).astype(int)
        lo, hi = int(spec_vals.min()), int(spec_vals.max())
        rep_rows.append({
            "m": m, "dim": fock.dim(m),
            "k_spectrum": f"{lo}..{hi}",
            "bracket_residual": br,
            "reality_residual": fock.verify_reality(rep),
            "note": "trivial representation" if m == 1 else "",
        })
    emb_rows = []
    for ell in cfg.ells():
        rep = weyl.verify_embedding(ell)
        finite = [v["residual_min_grade"] for v in rep.values()
                  if v["residual_min_grade"] is not None]
        emb_rows.append({
            "ell": ell,
            "exact_pairs": sum(1 for v in rep.values() if v["exact"]),
            "min_residual_grade": min(finite) if finite else "",
            "max_residual_grade": max(finite) if finite else "",
        })
    tpath = cfg.out / "table.csv"
    with open(tpath, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["m", "dim", "k_spectrum", "bracket_residual",
                    "reality_residual", "note"])
        for r in rep_rows:
            w.writerow([r[k] for k in ("m", "dim", "k_spectrum",
                                       "bracket_residual",
                                       "reality_residual", "note")])
        w.writerow([])
        w.writerow(["ell", "exact_pairs", "min_residual_grade",
                    "max_residual_grade"])
        for r in emb_rows:
            w.writerow([r[k] for k in ("ell", "exact_pairs",
                                       "min_residual_grade",
                                       "max_residual_grade")])
    _write_report(cfg, "table", {"config": cfg.__dict__,
                                 "representations": rep_rows,
                                 "embedding": emb_rows})
    print(f"table: {tpath}")
    return 0


def cmd_dump_rep(cfg):
    mode = "json" if cfg.fmt == "json" else "binary"
    for m in cfg.ms():
        path = fock.dump_representation(m, cfg.out, mode=mode)
        print(f"dumped m={m}: {path}")
    return 0


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def _add_common(sp):
    sp.add_argument("--m", help="level range, e.g. 2 or 1..6")
    sp.add_argument("--ell", help="truncation range, e.g. 0..4")
    sp.add_argument("--steps", type=int, help="integrator steps")
    sp.add_argument("--h", type=float, help="finite-difference step")
    sp.add_argument("--seed", type=int, help="RNG seed")
    sp.add_argument("--samples", type=int, help="random sample count")
    sp.add_argument("--out", help="report directory")
    sp.add_argument("--format", choices=["json", "csv"], help="report format")
    sp.add_argument("--config", help="RunConfig JSON file")


def build_parser():
    ap = argparse.ArgumentParser(prog="sphere7", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run the verification suites")
    _add_common(v)
    v.add_argument("--mutate", choices=["k-bracket"],
                   help="corrupt one structure constant (failure-path fixture)")
    e = sub.add_parser("eds-check", help="coframe identity residuals")
    _add_common(e)
    t = sub.add_parser("transport", help="parallel transport along a path")
    _add_common(t)
    t.add_argument("path_file", help="JSON path specification")
    tb = sub.add_parser("table", help="summary tables")
    _add_common(tb)
    d = sub.add_parser("dump-rep", help="dump representation matrices")
    _add_common(d)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = _config_from_args(args)
    except (ConfigError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    if args.command == "verify":
        return cmd_verify(cfg)
    if args.command == "eds-check":
        return cmd_eds_check(cfg)
    if args.command == "transport":
        return cmd_transport(cfg, args.path_file)
    if args.command == "table":
        return cmd_table(cfg)
    if args.command == "dump-rep":
        return cmd_dump_rep(cfg)
    return 2


if __name__ == "__main__":
    sys.exit(main())
