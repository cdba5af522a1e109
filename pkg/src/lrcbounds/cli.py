"""Command-line front end: `table`, `curve` and `verify`."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from decimal import ROUND_HALF_EVEN, Decimal

import numpy as np

from lrcbounds import disjoint_bounds as db
from lrcbounds import large_deviations as ld
from lrcbounds import nondisjoint_bounds as nd
from lrcbounds import special_n3, wzl_bounds
from lrcbounds.acceptance import GROUPS, run_checks


class ConfigError(ValueError):
    pass


def _lambda_star(q, n, x):
    th = (q - 1) / q
    if not th < x < ld.max_parity_weight(q, n) / n:
        return None  # outside the open domain of the upper-tail exponent
    return ld.lambda_star(q, n, x)


BOUNDS = {
    "r0": lambda c, x, kw: db.r0_lower(c.q, c.n, x),
    "sp": lambda c, x, kw: db.r_sp(c.q, c.n, x),
    "cm": lambda c, x, kw: db.r_cm(c.q, c.n, x, **kw),
    "r1": lambda c, x, kw: db.r1(c.q, c.n, x, **kw),
    "r2": lambda c, x, kw: db.r2(c.q, c.n, x, **kw),
    "r12": lambda c, x, kw: db.r12(c.q, c.n, x, **kw),
    "sp-hat": lambda c, x, kw: nd.r_sp_hat(c.q, c.n, x, **kw),
    "r1-hat": lambda c, x, kw: nd.r1_hat(c.q, c.n, x, **kw),
    "r2-hat": lambda c, x, kw: nd.r2_hat(c.q, c.n, x, **kw),
    "r3-hat": lambda c, x, kw: nd.r3_hat(c.q, c.n, x, **kw),
    "n2": lambda c, x, kw: special_n3.n2_bound(c.q, x),
    "n3": lambda c, x, kw: special_n3.n3_bound(x),
    "lambda": lambda c, x, kw: ld.lambda_growth(c.q, c.n, x).value,
    "lambda-star": lambda c, x, kw: _lambda_star(c.q, c.n, x),
    "wzl": lambda c, x, kw: wzl_bounds.wzl_r0_bar(c.q, c.n, c.mu, x, c.variant),
}


def parse_grid(text: str) -> list:
    """'start:stop:step' (inclusive) or a comma-separated list."""
    text = text.strip()
    if not text:
        raise ConfigError("empty delta grid")
    if ":" in text:
        try:
            start, stop, step = (float(p) for p in text.split(":"))
        except ValueError:
            raise ConfigError(f"bad grid spec {text!r}") from None
        if step <= 0 or stop < start:
            raise ConfigError(f"bad grid spec {text!r}")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        grid = [round(start + i * step, 12) for i in range(count)]
    else:
        try:
            grid = [float(p) for p in text.split(",") if p.strip()]
        except ValueError:
            raise ConfigError(f"bad delta list {text!r}") from None
    if not grid:
        raise ConfigError("empty delta grid")
    if any(not 0 <= g <= 1 for g in grid):
        raise ConfigError("grid values must lie in [0, 1]")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ConfigError("grid must be strictly increasing")
    return grid


def parse_opts(items) -> dict:
    out = {}
    for item in items or []:
        key, sep, val = item.partition("=")
        if not sep:
            raise ConfigError(f"optimizer override {item!r} is not key=value")
        try:
            out[key.strip()] = int(val)
        except ValueError:
            try:
                out[key.strip()] = float(val)
            except ValueError:
                raise ConfigError(f"override {item!r} needs a numeric value") from None
    return out


def _validate(cfg):
    if cfg.q < 2:
        raise ConfigError("q must be at least 2")
    if cfg.n < 1:
        raise ConfigError("n must be positive")
    names = [b.strip() for b in cfg.bounds.split(",") if b.strip()]
    unknown = [b for b in names if b not in BOUNDS]
    if not names or unknown:
        raise ConfigError(f"unknown bounds {unknown}; choose from {', '.join(BOUNDS)}")
    if "wzl" in names and not (cfg.mu is not None and 1 <= cfg.mu <= cfg.n):
        raise ConfigError("wzl needs --mu in [1, n]")
    return names, parse_grid(cfg.delta), parse_opts(cfg.opt)


def compute(cfg, names, grid, opts) -> list:
    """Rows of {delta, values}; cells are independent and may run in threads."""
    cells = [(x, b) for x in grid for b in names]

    def one(cell):
        x, b = cell
        kw = opts if b in ("cm", "r1", "r2", "r12", "sp-hat", "r1-hat", "r2-hat", "r3-hat") else {}
        v = BOUNDS[b](cfg, x, kw)
        return None if v is None else float(v)

    if cfg.jobs > 1:
        with ThreadPoolExecutor(cfg.jobs) as pool:
            vals = list(pool.map(one, cells))
    else:
        vals = [one(c) for c in cells]
    rows, it = [], iter(vals)
    for x in grid:
        rows.append({"delta": x, "values": {b: next(it) for b in names}})
    return rows


def fmt4(v) -> str:
    if v is None:
        return "-"
    return str(Decimal(repr(float(v))).quantize(Decimal("0.0001"), rounding=ROUND_HALF_EVEN))


def render(rows, names, cfg, fmt: str) -> str:
    if fmt == "json":
        meta = {"q": cfg.q, "n": cfg.n, "bounds": names, "grid": [r["delta"] for r in rows]}
        if cfg.mu is not None:
            meta.update(mu=cfg.mu, variant=cfg.variant)
        return json.dumps({"meta": meta, "rows": rows}, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["delta"] + names)
        for r in rows:
            w.writerow([repr(r["delta"])] + ["" if r["values"][b] is None else repr(r["values"][b])
                                             for b in names])
        return buf.getvalue()
    widths = [max(6, len(b)) for b in names]
    lines = ["delta  " + "  ".join(b.rjust(w) for b, w in zip(names, widths))]
    for r in rows:
        cells = [fmt4(r["values"][b]).rjust(w) for b, w in zip(names, widths)]
        lines.append(f"{r['delta']:<5.2f}  " + "  ".join(cells))
    return "\n".join(lines) + "\n"


def read_curve_csv(path: str) -> dict:
    """Parse a `curve` CSV back into {name: (grid, values)}."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    grid = tuple(float(r[0]) for r in body)
    return {name: (grid, tuple(float(r[i]) if r[i] else None for r in body))
            for i, name in enumerate(header[1:], start=1)}


def save_plot(rows, names, cfg, path: str) -> None:
    """Optional figure of the curves; needs matplotlib (the `plot` extra)."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5.5, 4.0))
    x = np.array([r["delta"] for r in rows])
    for b in names:
        y = np.array([np.nan if r["values"][b] is None else r["values"][b] for r in rows])
        ax.plot(x, y, label=b, linewidth=1.2)
    ax.set_xlabel("delta")
    ax.set_ylabel("rate")
    ax.set_title(f"q = {cfg.q}, n = {cfg.n}")
    ax.grid(alpha=0.3)
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _write(text: str, path):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror}") from exc


def cmd_table(cfg) -> int:
    names, grid, opts = _validate(cfg)
    rows = compute(cfg, names, grid, opts)
    _write(render(rows, names, cfg, cfg.format), cfg.output)
    return 0


def cmd_curve(cfg) -> int:
    names, grid, opts = _validate(cfg)
    rows = compute(cfg, names, grid, opts)
    _write(render(rows, names, cfg, cfg.format), cfg.output)
    if cfg.plot:
        save_plot(rows, names, cfg, cfg.plot)
    return 0


def cmd_verify(cfg) -> int:
    only = [o.strip() for o in cfg.only.split(",")] if cfg.only else None
    if only:
        valid = set(GROUPS) | {str(i) for i in range(1, 9)}
        bad = [o for o in only if o not in valid]
        if bad:
            raise ConfigError(f"unknown check group {bad}; choose from {', '.join(GROUPS)}")
    results = run_checks(only)
    for r in results:
        print(r.line(), flush=True)
    summary = {
        "passed": all(r.passed for r in results),
        "checks": [{"criterion": r.criterion, "name": r.name, "passed": r.passed,
                    "detail": r.detail, "seconds": round(r.seconds, 3)} for r in results],
    }
    if cfg.json:
        _write(json.dumps(summary, indent=2) + "\n", cfg.json)
    return 0 if summary["passed"] else 1


def _common(p, default_bounds, default_grid, default_format):
    p.add_argument("--q", type=int, default=2, help="field size")
    p.add_argument("--n", type=int, default=4, help="repair group size (locality + 1)")
    p.add_argument("--bounds", default=default_bounds,
                   help=f"comma-separated subset of: {', '.join(BOUNDS)}")
    p.add_argument("--delta", "--grid", dest="delta", default=default_grid,
                   help="start:stop:step or a comma-separated list")
    p.add_argument("--mu", type=float, help="average group size for the wzl bound")
    p.add_argument("--variant", choices=wzl_bounds.VARIANTS, default="per_group")
    p.add_argument("--format", choices=("table", "csv", "json"), default=default_format)
    p.add_argument("--output", "-o", help="output path (stdout if omitted)")
    p.add_argument("--opt", action="append", metavar="KEY=VALUE",
                   help="optimizer override passed to the bound, e.g. points=4001")
    p.add_argument("--jobs", type=int, default=1, help="worker threads")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lrcbounds",
                                     description="Asymptotic rate bounds for locally repairable codes.")
    sub = parser.add_subparsers(dest="command", required=True)
    t = sub.add_parser("table", help="bounds at a few delta values, 4-decimal table")
    _common(t, "sp,cm,r1,r2,r12", "0.07,0.10,0.15,0.30", "table")
    t.set_defaults(func=cmd_table)
    c = sub.add_parser("curve", help="bounds over a delta grid as CSV or JSON")
    _common(c, "sp", "0:0.5:0.01", "csv")
    c.add_argument("--plot", metavar="PATH", help="also render the curves to an image file")
    c.set_defaults(func=cmd_curve)
    v = sub.add_parser("verify", help="run the acceptance checks")
    v.add_argument("--only", help=f"comma-separated groups: {', '.join(GROUPS)}")
    v.add_argument("--json", metavar="PATH", help="write a JSON summary")
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    cfg = parser.parse_args(argv)
    try:
        return cfg.func(cfg)
    except ConfigError as exc:
        print(f"lrcbounds: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"lrcbounds: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
