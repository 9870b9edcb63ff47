"""Command-line driver: single values, rectangle scans, growth tables and the
numerical certificate.

Exit status: 0 success, 1 computation or usage error, 2 a certificate check failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

import mpmath as mp
from gmpy2 import mpq

from .cache import SCHEMA, SeriesCache
from .genfun import GenfunContext, chi11_equivariant, chi11_scalar, chi13_equivariant, extract
from .numtheory import Partition
from .symfunc import SchurExpansion, SymFunc, p_to_schur

EXIT_OK, EXIT_ERROR, EXIT_CERT = 0, 1, 2
CSV_COLUMNS = ("g", "n", "partition", "coefficient")
DIMENSION_MARK = "*"

log = logging.getLogger("moduli_euler")


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    weight: int = 11
    g_max: int = 12
    n_max: int = 0
    max_total: int | None = None
    p_cap: int | None = None
    precision: int = 40
    threads: int = 1
    only_p1: bool = False

    @property
    def total(self) -> int:
        return self.g_max + self.n_max if self.max_total is None else self.max_total

    @property
    def u_cap(self) -> int:
        return self.total + 1

    @property
    def pcap(self) -> int:
        return self.n_max if self.p_cap is None else self.p_cap

    def validate(self) -> None:
        if self.weight not in (11, 13):
            raise UsageError("weight must be 11 or 13")
        if min(self.g_max, self.n_max) < 0:
            raise UsageError("g and n must be nonnegative")
        if self.n_max > self.pcap:
            raise UsageError(f"caps insufficient: n = {self.n_max} needs p_cap >= {self.n_max} (got {self.pcap})")
        if self.weight == 13 and self.only_p1:
            raise UsageError("dimension-only mode is available for weight 11")


# computation with caching

def characteristic_series(cfg: RunConfig, cache: SeriesCache):
    """Half characteristic of the configured weight, graded by u^(g+n)."""
    cfg.validate()
    fp = cache.fingerprint(
        formula=f"chi{cfg.weight}" + ("_p1" if cfg.only_p1 else ""),
        u_cap=cfg.u_cap,
        p_cap=cfg.pcap,
    )

    def compute():
        if cfg.weight == 13:
            return chi13_equivariant(GenfunContext(u_cap=cfg.u_cap, p_cap=cfg.pcap, w_cap=12))
        return chi11_equivariant(GenfunContext(u_cap=cfg.u_cap, p_cap=cfg.pcap), only_p1=cfg.only_p1)

    return cache.get_or_compute(fp, compute)


def scalar_z_series(g_max: int, cache: SeriesCache):
    fp = cache.fingerprint(formula="z11", u_cap=g_max)
    return cache.get_or_compute(fp, lambda: chi11_scalar(GenfunContext(u_cap=g_max)))


def _cell(series, g, n, factor):
    f = extract(series, g, n)
    return f.scale(factor) if factor != 1 else f


def _q(x) -> str:
    x = mpq(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _partition_text(lam) -> str:
    return "[" + ",".join(map(str, lam)) + "]"


def _parse_partition(text: str) -> Partition:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError(f"bad partition field {text!r}")
    body = text[1:-1].strip()
    return Partition(int(x) for x in body.split(",")) if body else Partition()


def cell_rows(g: int, n: int, f: SymFunc, dimension_only: bool = False) -> list[tuple]:
    """CSV rows for one cell; a zero cell becomes a single row with empty partition."""
    if dimension_only:
        return [(g, n, DIMENSION_MARK, _q(f.dimension(n)))]
    schur = p_to_schur(f.homogeneous(n))
    if not schur:
        return [(g, n, "", "0")]
    return [(g, n, _partition_text(lam), _q(c)) for lam, c in sorted(schur.items())]


def write_csv(rows, stream) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    w.writerows(rows)


def read_csv(stream) -> dict:
    """Parse scan CSV back into {(g, n): SchurExpansion or scalar}."""
    reader = csv.DictReader(stream)
    if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
        raise ValueError(f"expected columns {CSV_COLUMNS}")
    out: dict = {}
    for row in reader:
        key = (int(row["g"]), int(row["n"]))
        coeff = mpq(row["coefficient"])
        if row["partition"] == DIMENSION_MARK:
            out[key] = coeff
            continue
        exp = out.setdefault(key, SchurExpansion())
        if row["partition"]:
            exp[_parse_partition(row["partition"])] = coeff
    return out


def rows_from_table(table: dict) -> list[tuple]:
    rows = []
    for (g, n), v in sorted(table.items()):
        if not isinstance(v, SchurExpansion):
            rows.append((g, n, DIMENSION_MARK, _q(v)))
        elif not v:
            rows.append((g, n, "", "0"))
        else:
            rows.extend((g, n, _partition_text(lam), _q(c)) for lam, c in sorted(v.items()))
    return rows


# output helpers

def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _label(whole: bool) -> str:
    return "whole (doubled)" if whole else "half"


# subcommands

def cmd_chi(args, cache) -> int:
    g, n = args.g, args.n
    if g is None or n is None:
        raise UsageError("chi needs --g and --n")
    if 2 * g - 2 + n <= 0 or g < 0 or n < 0:
        raise UsageError(f"unstable (g, n) = ({g}, {n}): need 2g - 2 + n > 0")
    cfg = RunConfig(weight=args.weight, g_max=g, n_max=n, max_total=g + n, p_cap=args.pcap)
    series = characteristic_series(cfg, cache)
    factor = 2 if args.whole else 1
    f = _cell(series, g, n, factor)
    schur = p_to_schur(f)
    euler = f.dimension(n)
    if args.format == "json":
        payload = {
            "schema": SCHEMA,
            "command": "chi",
            "weight": args.weight,
            "g": g,
            "n": n,
            "characteristic": "whole" if args.whole else "half",
            "schur": schur.render(),
            "euler": _q(euler),
        }
        text = json.dumps(payload, indent=2) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        write_csv(cell_rows(g, n, f), buf)
        text = buf.getvalue()
    else:
        text = (
            f"# weight {args.weight}, (g, n) = ({g}, {n}), {_label(args.whole)} characteristic\n"
            f"schur: {schur.render()}\n"
            f"euler: {_q(euler)}\n"
        )
    _emit(text, args.output)
    return EXIT_OK


def scan_table(cfg: RunConfig, cache: SeriesCache, g_min: int = 0, whole: bool = False):
    """{(g, n): SchurExpansion (or scalar in dimension mode)} over the configured region."""
    series = characteristic_series(cfg, cache)
    factor = 2 if whole else 1
    table = {}
    for g in range(g_min, cfg.g_max + 1):
        for n in range(0, cfg.n_max + 1):
            if g + n > cfg.total:
                continue
            f = _cell(series, g, n, factor)
            table[(g, n)] = f.dimension(n) if cfg.only_p1 else p_to_schur(f.homogeneous(n))
    return table


def zero_cells(table: dict, region=lambda g, n: 3 * g + 2 * n >= 25, g_min: int = 1):
    return sorted(
        (g, n) for (g, n), v in table.items()
        if g >= g_min and region(g, n) and (not v if isinstance(v, SchurExpansion) else v == 0)
    )


def cmd_scan(args, cache) -> int:
    g_max = args.gmax if args.gmax is not None else 12
    n_max = args.nmax if args.nmax is not None else 0
    cfg = RunConfig(weight=args.weight, g_max=g_max, n_max=n_max, max_total=args.max_total,
                    p_cap=args.pcap, only_p1=args.mode == "dimension")
    g_min = args.gmin if args.gmin is not None else 0
    if g_min > g_max or (args.max_total is not None and args.max_total < 0):
        table = {}
    else:
        table = scan_table(cfg, cache, g_min, args.whole)
    zeros = zero_cells(table)
    rows = rows_from_table(table)
    if args.format == "json":
        payload = {
            "schema": SCHEMA,
            "command": "scan",
            "weight": args.weight,
            "characteristic": "whole" if args.whole else "half",
            "mode": args.mode,
            "rows": [dict(zip(CSV_COLUMNS, r)) for r in rows],
            "zero_cells_3g_plus_2n_ge_25": [list(z) for z in zeros],
        }
        text = json.dumps(payload, indent=2) + "\n"
    else:
        buf = io.StringIO()
        write_csv(rows, buf)
        text = buf.getvalue()
        print("# zero cells with g >= 1 and 3g + 2n >= 25: "
              + (" ".join(f"({g},{n})" for g, n in zeros) or "none"), file=sys.stderr)
    _emit(text, args.output)
    return EXIT_OK


def asymp_rows(g_min: int, g_max: int, cache: SeriesCache):
    from .asymptotics import z_asymp

    if g_min > g_max:
        raise UsageError("g_min must not exceed g_max")
    Z = scalar_z_series(g_max, cache)
    rows = []
    for g in range(max(g_min, 2), g_max + 1):
        z = Z.coefficient(g)
        za = z_asymp(g)
        ratio = mp.mpf(int(z.numerator)) / int(z.denominator) / za
        rows.append({"g": g, "Z_g": _q(z), "z_asymp": mp.nstr(za, 20), "ratio": mp.nstr(ratio, 20)})
    return rows


def plot_ratio(rows, path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    gs = [r["g"] for r in rows]
    ratios = [float(r["ratio"]) for r in rows]
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(gs, ratios, marker=".", linestyle="-", linewidth=0.8)
    ax.axhline(1.0, color="grey", linewidth=0.6, linestyle="--")
    ax.set_xlabel("g")
    ax.set_ylabel("Z_g / Z_g^asymp")
    ax.set_title("Weight 11 Euler characteristic vs. asymptotic approximation")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def cmd_asymp(args, cache) -> int:
    g_min = args.gmin if args.gmin is not None else 2
    g_max = args.gmax if args.gmax is not None else 150
    with mp.workdps(args.precision):
        rows = asymp_rows(g_min, g_max, cache)
    if args.format == "json":
        text = json.dumps({"schema": SCHEMA, "command": "asymp", "rows": rows}, indent=2) + "\n"
    else:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=["g", "Z_g", "z_asymp", "ratio"], lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        text = buf.getvalue()
    _emit(text, args.output)
    if args.plot:
        shown = [r for r in rows if r["g"] >= args.plot_gmin and mpq(r["Z_g"]) != 0]
        plot_ratio(shown or rows, args.plot)
    return EXIT_OK


def cmd_certify(args, cache) -> int:
    from .asymptotics import certification_checks

    if args.precision < 30:
        raise UsageError("certify needs --precision >= 30")
    checks = certification_checks(g=args.g or 600, dps=args.precision, tolerance=args.tolerance,
                                  g_scan=args.gmax or 150)
    failed = [c for c in checks if c.gating and not c.passed]
    if args.format == "json":
        payload = {
            "schema": SCHEMA,
            "command": "certify",
            "precision": args.precision,
            "checks": [c.as_dict() for c in checks],
            "pass": not failed,
        }
        text = json.dumps(payload, indent=2) + "\n"
    else:
        lines = []
        for c in checks:
            d = c.as_dict()
            status = "PASS" if c.passed else ("FAIL" if c.gating else "NOTE")
            params = ",".join(f"{k}={v}" for k, v in d["params"].items())
            ref = f" (published {d['published_value']})" if "published_value" in d else ""
            lines.append(f"{status} {c.family}[{params}] = {d['value']}{ref} tol {d['tolerance']}"
                         + (f"  # {c.note}" if c.note else ""))
        lines.append(f"overall: {'PASS' if not failed else 'FAIL'} ({len(failed)} gating failures)")
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return EXIT_CERT if failed else EXIT_OK


def cmd_cache(args, cache) -> int:
    if args.action == "clear":
        removed = cache.clear()
        print(f"removed {removed} cache entries from {cache.directory}")
    else:
        print(json.dumps(cache.info(), indent=2))
    return EXIT_OK


# argument parsing

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=40, help="decimal digits for floating values")
    common.add_argument("--threads", type=int, default=1, help="accepted for compatibility; work runs serially")
    common.add_argument("--format", choices=("text", "csv", "json"), default=None)
    common.add_argument("--output", help="write to this file instead of stdout")
    common.add_argument("--cache-dir", help="series cache location")
    common.add_argument("--no-cache", action="store_true", help="neither read nor write the cache")
    common.add_argument("-v", "--verbose", action="store_true")

    half = argparse.ArgumentParser(add_help=False)
    grp = half.add_mutually_exclusive_group()
    grp.add_argument("--half", dest="whole", action="store_false", help="half characteristic (default)")
    grp.add_argument("--whole", dest="whole", action="store_true", help="double the half characteristic")
    half.set_defaults(whole=False)

    caps = argparse.ArgumentParser(add_help=False)
    caps.add_argument("weight_pos", nargs="?", type=int, choices=(11, 13), metavar="WEIGHT",
                      help="shorthand for --weight")
    caps.add_argument("--weight", type=int, choices=(11, 13), default=None)
    caps.add_argument("--pcap", type=int, help="p-degree cap (defaults to the largest n)")

    parser = argparse.ArgumentParser(
        prog="moduli-euler",
        description="Weight 11 and 13 Euler characteristics of moduli spaces of curves.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("chi", parents=[common, half, caps], help="one (g, n) value")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_chi, default_format="text")

    p = sub.add_parser("scan", parents=[common, half, caps], help="rectangle of (g, n) values")
    p.add_argument("--gmin", type=int)
    p.add_argument("--gmax", type=int)
    p.add_argument("--nmax", type=int)
    p.add_argument("--max-total", type=int, help="only cells with g + n <= this (default gmax + nmax)")
    p.add_argument("--mode", choices=("schur", "dimension"), default="schur",
                   help="dimension: one row per cell with the scalar characteristic (partition '*')")
    p.set_defaults(func=cmd_scan, default_format="csv")

    p = sub.add_parser("asymp", parents=[common], help="Z_g against its asymptotic approximation")
    p.add_argument("--gmin", type=int)
    p.add_argument("--gmax", type=int)
    p.add_argument("--plot", help="save a PNG of the ratio Z_g / Z_g^asymp")
    p.add_argument("--plot-gmin", type=int, default=30,
                   help="first genus drawn (small g swamps the scale; default 30)")
    p.set_defaults(func=cmd_asymp, default_format="csv")

    p = sub.add_parser("certify", parents=[common], help="run every numerical check")
    p.add_argument("--g", type=int, help="genus for the remainder certificate (default 600)")
    p.add_argument("--gmax", type=int, help="largest genus for exact comparisons (default 150)")
    p.add_argument("--tolerance", type=float,
                   help="override every value-match tolerance (0 forces those checks to fail)")
    p.set_defaults(func=cmd_certify, default_format="text")

    p = sub.add_parser("cache", parents=[common], help="inspect or clear the series cache")
    p.add_argument("action", choices=("clear", "info"))
    p.set_defaults(func=cmd_cache, default_format="text")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.format is None:
        args.format = args.default_format
    if hasattr(args, "weight_pos"):
        if args.weight_pos is not None and args.weight is not None and args.weight_pos != args.weight:
            parser.error("positional WEIGHT and --weight disagree")
        args.weight = args.weight or args.weight_pos or 11
    if args.threads != 1:
        log.info("--threads=%d accepted; computation runs in one thread", args.threads)
    cache = SeriesCache(args.cache_dir, enabled=not args.no_cache)
    try:
        with mp.workdps(args.precision):
            return args.func(args, cache)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
