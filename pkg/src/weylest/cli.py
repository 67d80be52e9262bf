"""Command-line harness.

Reproduce a built-in table:      weylest --table 1
Custom experiment:               weylest --dist cauchy --theta 1 --n-grid 50:1000:50 --estimators sign_count,mean
Run the acceptance suite:        weylest --check

Flags may also be given in a plain-text config file (key = value per line,
keys named like the flags without the leading dashes); explicit flags win.
Exit codes: 0 ok, 1 config error, 2 acceptance-check failure.
"""

from __future__ import annotations

import argparse
import sys

from .distributions import DistributionSpec, Kind
from .errors import ConfigError
from .harness import (
    ExperimentConfig,
    FixedN0,
    HalfN,
    OutputSpec,
    PseudoGenerator,
    Table,
    WeylGenerator,
    builtin_config,
    emit_report,
    run_experiment,
)
from .weyl import IrrationalId

_ALPHAS = {"pi": IrrationalId.PI, "sqrt2": IrrationalId.SQRT2, "phi": IrrationalId.GOLDEN_RATIO}
_FORMATS = {"csv": "csv", "md": "markdown"}

_DEFAULTS = {
    "dist": "gaussian",
    "loc": 0.0,
    "scale": 1.0,
    "probe": 0.0,
    "n_grid": "50:1000:50",
    "estimators": "sign_count,mean",
    "gen": "weyl",
    "alpha": "pi",
    "precision_bits": 128,
    "seed": 0,
    "n0": "half",
    "format": "csv",
}


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="weylest", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--table", choices=("1", "2", "3"), help="reproduce a built-in reference table")
    p.add_argument("--dist", choices=("gaussian", "cauchy"))
    p.add_argument("--loc", type=float, help="location of the sampled distribution")
    p.add_argument("--scale", type=float, help="scale of the sampled distribution")
    p.add_argument("--theta", type=float, help="useful signal; shorthand for --loc with theta recorded")
    p.add_argument("--probe", type=float, help="probe point x* for the CDF estimators")
    p.add_argument("--n-grid", dest="n_grid", help="prefix lengths a:b:step (inclusive)")
    p.add_argument("--estimators", help="comma list; see --list-estimators")
    p.add_argument("--gen", choices=("weyl", "pseudo"))
    p.add_argument("--alpha", choices=tuple(_ALPHAS))
    p.add_argument("--precision-bits", dest="precision_bits", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--n0", help="tail start for tail_sup/tail_inf: 'half' or an integer")
    p.add_argument("--format", choices=tuple(_FORMATS))
    p.add_argument("--out", help="output path (default: standard output)")
    p.add_argument("--workers", type=int, help="concurrent row evaluation (default 1)")
    p.add_argument("--config", help="key = value file supplying defaults for any flag")
    p.add_argument("--list-estimators", action="store_true", help="print registered estimator names")
    p.add_argument("--check", action="store_true",
                   help="run the acceptance suite; exit 2 on any failure")
    return p


def _read_config_file(path: str) -> dict[str, str]:
    keys = {"table", "dist", "loc", "scale", "theta", "probe", "n-grid", "estimators",
            "gen", "alpha", "precision-bits", "seed", "n0", "format", "out", "workers"}
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ConfigError("config", f"{path}:{lineno}: expected 'key = value'")
                key, value = (s.strip() for s in line.split("=", 1))
                if key not in keys:
                    raise ConfigError("config", f"{path}:{lineno}: unknown key {key!r}")
                out[key.replace("-", "_")] = value
    except OSError as exc:
        raise ConfigError("config", f"cannot read {path}: {exc}") from exc
    return out


def _merge(args: argparse.Namespace) -> dict:
    """Layer flag values over config-file values over built-in defaults."""
    merged = dict(_DEFAULTS)
    if args.config:
        file_vals = _read_config_file(args.config)
        for k, v in file_vals.items():
            if k in ("loc", "scale", "theta", "probe"):
                merged[k] = float(v)
            elif k in ("precision_bits", "seed", "workers"):
                merged[k] = int(v)
            else:
                merged[k] = v
    for k in ("table", "dist", "loc", "scale", "theta", "probe", "n_grid", "estimators",
              "gen", "alpha", "precision_bits", "seed", "n0", "format", "out", "workers"):
        v = getattr(args, k, None)
        if v is not None:
            merged[k] = v
    return merged


def _parse_grid(text: str) -> tuple[int, ...]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError("n-grid", f"expected a:b:step, got {text!r}")
    try:
        a, b, step = (int(s) for s in parts)
    except ValueError:
        raise ConfigError("n-grid", f"non-integer in {text!r}") from None
    if a < 1 or b < a or step < 1:
        raise ConfigError("n-grid", f"need 1 <= a <= b and step >= 1, got {text!r}")
    return tuple(range(a, b + 1, step))


def _config_from(merged: dict) -> ExperimentConfig:
    kind = Kind.GAUSSIAN if merged["dist"] == "gaussian" else Kind.CAUCHY
    loc = float(merged["loc"])
    true_params = {}
    if merged.get("theta") is not None:
        loc = float(merged["theta"])
        true_params["theta"] = loc
    spec = DistributionSpec(kind, loc, float(merged["scale"]))
    if merged["gen"] == "weyl":
        gen = WeylGenerator(_ALPHAS[merged["alpha"]], int(merged["precision_bits"]))
    else:
        gen = PseudoGenerator(int(merged["seed"]))
    n0 = merged["n0"]
    if n0 == "half":
        n0_rule = HalfN()
    else:
        try:
            n0_rule = FixedN0(int(n0))
        except ValueError:
            raise ConfigError("n0", f"expected 'half' or an integer, got {n0!r}") from None
    fmt = merged["format"]
    if fmt not in _FORMATS:
        raise ConfigError("format", f"expected csv or md, got {fmt!r}")
    return ExperimentConfig(
        distribution=spec,
        n_grid=_parse_grid(str(merged["n_grid"])),
        estimators=tuple(s.strip() for s in str(merged["estimators"]).split(",") if s.strip()),
        generator=gen,
        true_params=true_params,
        probe=float(merged["probe"]),
        n0_rule=n0_rule,
        output=OutputSpec(_FORMATS[fmt], merged.get("out")),
        workers=int(merged.get("workers") or 1),
    )


def _run_check() -> int:
    from .acceptance import run_all

    results = run_all()
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status} {r.name} [{r.elapsed:.2f}s] {r.detail}")
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} acceptance criteria passed")
    return 2 if failed else 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.check:
        return _run_check()
    if args.list_estimators:
        from .harness import ESTIMATOR_NAMES
        print("\n".join(ESTIMATOR_NAMES))
        return 0
    try:
        merged = _merge(args)
        if merged.get("table") not in (None, ""):
            config = builtin_config(Table(int(merged["table"])))
            fmt = _FORMATS[merged["format"]]
            out_path = merged.get("out")
            if merged.get("workers"):
                from dataclasses import replace
                config = replace(config, workers=int(merged["workers"]))
        else:
            config = _config_from(merged)
            fmt = config.output.format
            out_path = config.output.path
        report = run_experiment(config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    text = emit_report(report, fmt)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
