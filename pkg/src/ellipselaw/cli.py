"""Command-line front end.

Exit status: 0 success, 1 numerical or tolerance failure, 2 usage or domain
error.  JSON outputs embed a ``manifest`` block (command, resolved
parameters, seed, version, duration); CSV outputs get a sibling
``<name>.manifest.json``.  Floats are written with 17 significant digits.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from . import closed_form as cf
from . import elcheck
from . import flow
from . import quadrature as quad
from .errors import CollisionError, DomainError
from .geometry import EllipseDomain, Region
from .reduce import reduce

log = logging.getLogger("ellipselaw")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Encoder(json.JSONEncoder):
    def default(self, o):
        if isinstance(o, np.generic):
            return o.item()
        if isinstance(o, np.ndarray):
            return o.tolist()
        if isinstance(o, complex):
            return [o.real, o.imag]
        return super().default(o)

    def iterencode(self, o, _one_shot=False):
        return super().iterencode(_round_trip(o), _one_shot)


def _round_trip(o):
    # 17 significant digits, emitted as JSON numbers
    if isinstance(o, float):
        if not np.isfinite(o):
            return None if np.isnan(o) else ("inf" if o > 0 else "-inf")
        return float(f"{o:.17g}")
    if isinstance(o, dict):
        return {k: _round_trip(v) for k, v in o.items()}
    if isinstance(o, (list, tuple)):
        return [_round_trip(v) for v in o]
    if isinstance(o, np.generic):
        return _round_trip(o.item())
    if isinstance(o, complex):
        return [_round_trip(o.real), _round_trip(o.imag)]
    return o


def _dumps(doc) -> str:
    return json.dumps(doc, cls=_Encoder, indent=2)


def _g(v) -> str:
    return f"{v:.17g}"


def _manifest(args, started, seed=None):
    params = {k: v for k, v in vars(args).items() if k not in ("func",)}
    return {
        "command": args.command,
        "parameters": params,
        "seed": seed,
        "version": __version__,
        "duration_s": time.perf_counter() - started,
    }


def _emit(doc, out):
    text = _dumps(doc)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _ellipse(args) -> EllipseDomain:
    e = EllipseDomain(args.a, args.b)
    if not e.is_canonical and not args.allow_swap:
        raise DomainError(f"need b >= a (got a={args.a}, b={args.b}); pass --allow-swap")
    return e


# -- potential ---------------------------------------------------------------


def cmd_potential(args) -> int:
    started = time.perf_counter()
    e = _ellipse(args)
    if args.grid is not None:
        extent, res = float(args.grid[0]), int(args.grid[1])
        if res < 2 or extent <= 0:
            raise DomainError("--grid needs a positive extent and resolution >= 2")
        xs = np.linspace(-extent, extent, res)
        X, Y = np.meshgrid(xs, xs, indexing="xy")
        z = (X + 1j * Y).ravel()
    else:
        if args.x is None or args.y is None:
            raise DomainError("give --x and --y, or --grid EXTENT RESOLUTION")
        z = np.array([complex(args.x, args.y)])
    val = np.atleast_1d(cf.potential(z, e, args.alpha, allow_swap=args.allow_swap))
    grad = np.atleast_1d(cf.grad_potential(z, e, args.alpha, allow_swap=args.allow_swap))
    cls = e.classify(z)
    region = [Region(r).value for r in (cls.ravel() if isinstance(cls, np.ndarray) else [cls])]

    if args.format == "csv":
        rows = [
            [_g(p.real), _g(p.imag), r, _g(v), _g(g.real), _g(g.imag)]
            for p, r, v, g in zip(z, region, val, grad)
        ]
        header = ["x1", "x2", "region", "potential", "grad1", "grad2"]
        if args.out:
            with open(args.out, "w", newline="") as fh:
                w = csv.writer(fh)
                w.writerow(header)
                w.writerows(rows)
            Path(str(args.out) + ".manifest.json").write_text(_dumps(_manifest(args, started)) + "\n")
        else:
            w = csv.writer(sys.stdout)
            w.writerow(header)
            w.writerows(rows)
        return EXIT_OK

    points = [
        {"x1": p.real, "x2": p.imag, "region": r, "potential": v, "grad": [g.real, g.imag]}
        for p, r, v, g in zip(z, region, val, grad)
    ]
    doc = {"points": points, "manifest": _manifest(args, started)}
    if args.grid is None and not args.out:
        # single point: compact form on stdout
        doc = dict(points[0], manifest=doc["manifest"])
    _emit(doc, args.out)
    return EXIT_OK


# -- elcheck -----------------------------------------------------------------


def cmd_elcheck(args) -> int:
    started = time.perf_counter()
    if not 0.0 <= args.alpha < 1.0:
        raise DomainError(f"closed forms cover 0 <= alpha < 1, got {args.alpha}")
    kw = {} if args.tol is None else {"tol": args.tol}
    r1 = elcheck.check_el1(args.alpha, args.interior_resolution, **kw)
    r2 = elcheck.check_el2(args.alpha, args.extent, args.resolution, **kw)
    ok = r1.passed and r2.passed
    doc = {"el1": r1.to_dict(), "el2": r2.to_dict(), "passed": ok, "manifest": _manifest(args, started)}
    _emit(doc, args.out)
    return EXIT_OK if ok else EXIT_FAIL


# -- simulate ----------------------------------------------------------------

_SIM_KEYS = {
    "n_particles": int,
    "dt": float,
    "t_end": float,
    "alpha": float,
    "beta": float,
    "gamma": float,
    "init": str,
    "init_scale": float,
    "seed": int,
    "record_every": int,
}


def _load_config(path):
    """Flat key/value config: a JSON object, or ``key = value`` lines."""
    text = Path(path).read_text()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError:
        raw = {}
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DomainError(f"bad config line: {line!r}")
            k, v = (s.strip() for s in line.split("=", 1))
            raw[k] = v
    if not isinstance(raw, dict):
        raise DomainError("config must be a flat key/value document")
    out = {}
    for k, v in raw.items():
        key = k.replace("-", "_")
        if key not in _SIM_KEYS:
            raise DomainError(f"unknown config key {k!r}")
        out[key] = _SIM_KEYS[key](v)
    return out


def cmd_simulate(args) -> int:
    started = time.perf_counter()
    settings = {"n_particles": 500, "dt": 1e-3, "t_end": 20.0, "alpha": 0.0, "beta": 0.0, "gamma": 0.0,
                "init": "uniform_disk", "init_scale": 2.0, "seed": 0, "record_every": 1000}
    if args.config:
        settings.update(_load_config(args.config))
    for k in _SIM_KEYS:
        v = getattr(args, k, None)
        if v is not None:
            settings[k] = v
    al, be, ga = settings.pop("alpha"), settings.pop("beta"), settings.pop("gamma")
    params = al if (be == 0.0 and ga == 0.0) else (al, be, ga)
    try:
        cfg = flow.SimConfig(alpha=params, **settings)
    except ValueError as exc:
        raise DomainError(str(exc)) from exc
    res = flow.run(cfg)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    flow.write_snapshots_csv(res, out / "snapshots.csv")
    manifest = _manifest(args, started, seed=cfg.seed)
    manifest["parameters"] = dict(manifest["parameters"], resolved=cfg.params_dict())
    (out / "snapshots.csv.manifest.json").write_text(_dumps(manifest) + "\n")
    doc = flow.summary_dict(res)
    doc["manifest"] = manifest
    (out / "summary.json").write_text(_dumps(doc) + "\n")
    log.info("wrote %s", out)
    return EXIT_OK


# -- oracle-compare ----------------------------------------------------------


def _read_points(path):
    pts = []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row or row[0].strip().startswith("#"):
                continue
            try:
                pts.append(complex(float(row[0]), float(row[1])))
            except ValueError:
                if pts:
                    raise
                continue  # header
    if not pts:
        raise DomainError(f"no points in {path}")
    return np.array(pts)


def _random_points(e, n, seed, extent):
    rng = np.random.default_rng(seed)
    n_in = n // 2
    inner = e.sample_uniform(n_in, rng)
    outer = []
    while len(outer) < n - n_in:
        p = complex(*rng.uniform(-extent, extent, 2))
        if e.level(p) > 1.0 + e.eps_b:
            outer.append(p)
    return np.concatenate([inner, np.array(outer, dtype=np.complex128)])


def compare_with_oracle(z, e, alpha, qcfg, threads=1, allow_swap=False):
    """Relative discrepancies of potential and gradient against quadrature."""
    pot = np.atleast_1d(cf.potential(z, e, alpha, allow_swap=allow_swap))
    grd = np.atleast_1d(cf.grad_potential(z, e, alpha, allow_swap=allow_swap))

    def one(p):
        return (
            quad.conv_oracle("w_alpha", p, e, alpha, qcfg),
            quad.conv_oracle("grad_w_alpha", p, e, alpha, qcfg),
        )

    with ThreadPoolExecutor(max_workers=max(1, threads)) as ex:
        results = list(ex.map(one, z))  # map keeps input order
    qp = np.array([r[0] for r in results])
    qg = np.array([r[1] for r in results])
    rel_p = np.abs(pot - qp) / np.abs(qp)
    rel_g = np.abs(grd - qg) / np.abs(qg)
    return pot, grd, qp, qg, rel_p, rel_g


def cmd_oracle_compare(args) -> int:
    started = time.perf_counter()
    e = _ellipse(args)
    if args.points:
        z = _read_points(args.points)
    else:
        z = _random_points(e, args.random, args.seed, args.extent)
    qcfg = quad.QuadratureConfig(args.radial_nodes, args.angular_nodes)
    _, _, _, _, rel_p, rel_g = compare_with_oracle(z, e, args.alpha, qcfg, args.threads, args.allow_swap)
    worst = float(max(rel_p.max(), rel_g.max()))
    ok = worst <= args.tol
    doc = {
        "n_points": int(z.size),
        "max_rel_potential": float(rel_p.max()),
        "max_rel_gradient": float(rel_g.max()),
        "max_rel": worst,
        "tol": args.tol,
        "passed": ok,
        "manifest": _manifest(args, started, seed=None if args.points else args.seed),
    }
    _emit(doc, args.out)
    return EXIT_OK if ok else EXIT_FAIL


# -- reduce ------------------------------------------------------------------


def cmd_reduce(args) -> int:
    started = time.perf_counter()
    r = reduce((args.alpha, args.beta, args.gamma))
    doc = r.as_dict()
    if args.format == "text":
        for k, v in doc.items():
            print(f"{k}: {v}")
        return EXIT_OK
    doc["manifest"] = _manifest(args, started)
    _emit(doc, None)
    return EXIT_OK


# -- energy ------------------------------------------------------------------


def cmd_energy(args) -> int:
    started = time.perf_counter()
    if args.minimizer:
        e = cf.minimizer_ellipse(args.alpha)
        if not e.is_canonical and not args.allow_swap:
            raise DomainError("alpha < 0 gives a > b; pass --allow-swap")
    else:
        if args.a is None or args.b is None:
            raise DomainError("give --a and --b, or --minimizer")
        e = _ellipse(args)
    closed = cf.ellipse_energy(e, args.alpha, allow_swap=args.allow_swap)
    doc = {"a": e.a, "b": e.b, "alpha": args.alpha, "energy": closed}
    if args.minimizer and 0.0 <= args.alpha < 1.0:
        doc["min_energy"] = cf.min_energy(args.alpha)
        doc["c_alpha"] = cf.c_alpha(args.alpha)
    ok = True
    if args.mc_samples:
        est = quad.energy_oracle(e, args.alpha, quad.QuadratureConfig(mc_samples=args.mc_samples, rng_seed=args.seed))
        z = (est.value - closed) / est.stderr
        ok = abs(z) <= 3.0
        doc["monte_carlo"] = {"estimate": est.value, "stderr": est.stderr, "samples": est.samples, "z_score": z, "within_3_sigma": ok}
    doc["manifest"] = _manifest(args, started, seed=args.seed if args.mc_samples else None)
    _emit(doc, args.out)
    return EXIT_OK if ok else EXIT_FAIL


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ellipselaw", description=__doc__.splitlines()[0])
    p.add_argument("--threads", type=int, default=int(os.environ.get("ELLIPSELAW_THREADS", "1")),
                   help="worker threads for point-parallel work (results do not depend on it)")
    p.add_argument("-v", "--verbose", action="store_true")
    # also accepted after the subcommand name
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)
    _sub = p.add_subparsers(dest="command", required=True)

    class _Sub:
        def add_parser(self, *a, **kw):
            return _sub_add(*a, parents=[common], **kw)

    _sub_add = _sub.add_parser
    sub = _Sub()

    s = sub.add_parser("potential", help="closed-form potential and gradient")
    s.add_argument("--alpha", type=float, required=True)
    s.add_argument("--a", type=float, required=True)
    s.add_argument("--b", type=float, required=True)
    s.add_argument("--x", type=float)
    s.add_argument("--y", type=float)
    s.add_argument("--grid", nargs=2, metavar=("EXTENT", "RESOLUTION"))
    s.add_argument("--out")
    s.add_argument("--format", choices=["csv", "json"], default="json")
    s.add_argument("--allow-swap", action="store_true")
    s.set_defaults(func=cmd_potential)

    s = sub.add_parser("elcheck", help="Euler-Lagrange grid checks")
    s.add_argument("--alpha", type=float, required=True)
    s.add_argument("--extent", type=float, default=4.0)
    s.add_argument("--resolution", type=int, default=201, help="exterior grid resolution")
    s.add_argument("--interior-resolution", type=int, default=101)
    s.add_argument("--tol", type=float)
    s.add_argument("--out")
    s.set_defaults(func=cmd_elcheck)

    s = sub.add_parser("simulate", help="particle gradient flow")
    s.add_argument("--config")
    s.add_argument("--out", required=True)
    s.add_argument("--n-particles", dest="n_particles", type=int)
    s.add_argument("--dt", type=float)
    s.add_argument("--t-end", dest="t_end", type=float)
    s.add_argument("--alpha", type=float)
    s.add_argument("--beta", type=float)
    s.add_argument("--gamma", type=float)
    s.add_argument("--init", choices=["uniform_disk", "gaussian"])
    s.add_argument("--init-scale", dest="init_scale", type=float)
    s.add_argument("--seed", type=int)
    s.add_argument("--record-every", dest="record_every", type=int)
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("oracle-compare", help="closed form vs quadrature")
    s.add_argument("--alpha", type=float, required=True)
    s.add_argument("--a", type=float, required=True)
    s.add_argument("--b", type=float, required=True)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--points", help="CSV with x1,x2 columns")
    g.add_argument("--random", type=int, help="number of random points (half inside)")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--extent", type=float, default=4.0)
    s.add_argument("--tol", type=float, default=1e-4)
    s.add_argument("--radial-nodes", type=int, default=256)
    s.add_argument("--angular-nodes", type=int, default=256)
    s.add_argument("--allow-swap", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_oracle_compare)

    s = sub.add_parser("reduce", help="rotate a general anisotropy to canonical form")
    s.add_argument("--alpha", type=float, required=True)
    s.add_argument("--beta", type=float, required=True)
    s.add_argument("--gamma", type=float, required=True)
    s.add_argument("--format", choices=["json", "text"], default="json")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("energy", help="energy of a uniform ellipse")
    s.add_argument("--alpha", type=float, required=True)
    s.add_argument("--a", type=float)
    s.add_argument("--b", type=float)
    s.add_argument("--minimizer", action="store_true")
    s.add_argument("--mc-samples", type=int, default=0)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--allow-swap", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_energy)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CollisionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
