"""Command-line interface for the Green-function / Teichmüller toolkit.

Subcommands: green, teich, azukawa, kobayashi, disc-search, extremal,
verify, smoothness-probe.  Output is JSON (default) or CSV on stdout with
diagnostics on stderr; identical command line and seed produce
byte-identical JSON payloads.

Exit codes: 0 success, 1 verification FAIL, 2 parse/config error,
3 domain violation (point outside the domain, invalid modulus, or a
Beltrami coefficient of sup norm >= 1).
"""

from __future__ import annotations

import argparse
import os
import sys
import time

import numpy as np

from . import extremality as ext
from . import report as rpt
from . import torus
from . import verify as ver
from .discsearch import SearchConfig, minimize_disc_functional
from .domains import ModelDomain
from .hyperbolic import NEG_INF, COINCIDENCE_TOL, DomainViolation
from .metrics import LimitConfig, azukawa, kobayashi_royden

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_DOMAIN = 3

CONFIG_ENV_VAR = "GREEN_TEICH_CONFIG"


class ParseError(ValueError):
    """Unparseable command-line value or config entry."""


# -- input parsing -------------------------------------------------------------

def parse_complex(text: str) -> complex:
    """Parse `a+bi`, `a,b`, or a bare real; `i` alone means 0+1i."""
    t = text.strip()
    if not t:
        raise ParseError("empty complex number")
    if "," in t:
        parts = t.split(",")
        if len(parts) != 2:
            raise ParseError(f"expected 're,im' in {text!r}")
        try:
            return complex(float(parts[0]), float(parts[1]))
        except ValueError as exc:
            raise ParseError(f"bad complex number {text!r}") from exc
    try:
        return complex(t.replace("i", "j").replace(" ", ""))
    except ValueError as exc:
        raise ParseError(f"bad complex number {text!r}") from exc


def parse_vector(text: str, dim: int) -> np.ndarray:
    """Parse a complex vector: components separated by ';'.

    For multi-dimensional domains a single comma-separated token is also
    accepted as a list of real components (so `--x 0,0` addresses the
    2-ball), since the 'a,b' complex form is unambiguous only at dim 1.
    """
    tokens = [tok for tok in text.split(";") if tok.strip()]
    if len(tokens) == dim:
        return np.array([parse_complex(tok) for tok in tokens],
                        dtype=complex)
    if len(tokens) == 1 and dim > 1 and "," in tokens[0]:
        parts = tokens[0].split(",")
        if len(parts) == dim:
            return np.array([parse_complex(p) for p in parts],
                            dtype=complex)
    raise ParseError(
        f"expected {dim} components separated by ';' in {text!r}")


def load_config(path: str | None) -> dict[str, str]:
    """Read a flat `key = value` config file; '#' starts a comment."""
    if path is None:
        path = os.environ.get(CONFIG_ENV_VAR)
    if not path:
        return {}
    if not os.path.exists(path):
        raise ParseError(f"config file not found: {path}")
    entries: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ParseError(f"{path}:{lineno}: expected 'key = value'")
            key, value = line.split("=", 1)
            entries[key.strip()] = value.strip()
    return entries


def _setting(args, config: dict, name: str, cast, default):
    """Resolve one setting with precedence: flag > config file > default."""
    flag = getattr(args, name.replace("-", "_"), None)
    if flag is not None:
        return flag
    if name in config:
        try:
            return cast(config[name])
        except ValueError as exc:
            raise ParseError(f"config key {name}: bad value "
                             f"{config[name]!r}") from exc
    return default


def build_search_config(args, config: dict) -> SearchConfig:
    return SearchConfig(
        max_degree=_setting(args, config, "max_degree", int, 4),
        n_starts=_setting(args, config, "n_starts", int, 16),
        n_boundary_samples=_setting(args, config, "n_boundary_samples",
                                    int, 64),
        margin=_setting(args, config, "margin", float, 1e-9),
        seed=_setting(args, config, "seed", int, 0),
        tol=_setting(args, config, "tol", float, 1e-4),
        maxfev=_setting(args, config, "maxfev", int, 250),
    )


def build_limit_config(args, config: dict) -> LimitConfig:
    return LimitConfig(
        lambda0=_setting(args, config, "lambda0", float, 1e-2),
        rungs=_setting(args, config, "rungs", int, 6),
    )


# -- subcommand implementations -------------------------------------------------

def cmd_green(args, config: dict) -> tuple[dict, int]:
    D = ModelDomain.from_descriptor(args.domain)
    x = D.require_inside(parse_vector(args.x, D.dim), "x")
    y = D.require_inside(parse_vector(args.y, D.dim), "y")
    cfg = build_search_config(args, config)
    use_oracle = D.has_green_oracle and not args.estimate
    results: dict = {"domain": D.describe()}
    if float(np.max(np.abs(x - y))) < COINCIDENCE_TOL:
        results.update({"value": NEG_INF, "method": "oracle"})
    elif use_oracle:
        results.update({"value": D.green(x, y), "method": "oracle"})
    else:
        out = minimize_disc_functional(D, x, y, cfg)
        results.update({
            "value": out.estimate,
            "method": "estimator",
            "witness": out.witness,
            "informative": out.informative,
            "n_evaluations": out.n_evaluations,
        })
        if D.has_green_oracle:
            results["oracle_value"] = D.green(x, y)
    echo = {"domain": args.domain, "x": args.x, "y": args.y,
            "estimate": bool(args.estimate), "search": cfg}
    return rpt.build_report("green", echo, results), EXIT_OK


def cmd_teich(args, config: dict) -> tuple[dict, int]:
    tau1 = parse_complex(args.tau1)
    tau2 = parse_complex(args.tau2)
    rep = torus.teich_distance(tau1, tau2)
    echo = {"tau1": args.tau1, "tau2": args.tau2}
    return rpt.build_report("teich", echo, rep.to_jsonable()), EXIT_OK


def cmd_azukawa(args, config: dict) -> tuple[dict, int]:
    D = ModelDomain.from_descriptor(args.domain)
    base = parse_vector(args.base, D.dim)
    direction = parse_vector(args.direction, D.dim)
    lcfg = build_limit_config(args, config)
    scfg = build_search_config(args, config)
    res = azukawa(D, base, direction, lcfg, scfg)
    echo = {"domain": args.domain, "base": args.base,
            "direction": args.direction, "limit": lcfg, "search": scfg}
    return rpt.build_report("azukawa", echo, res), EXIT_OK


def cmd_kobayashi(args, config: dict) -> tuple[dict, int]:
    D = ModelDomain.from_descriptor(args.domain)
    base = parse_vector(args.base, D.dim)
    direction = parse_vector(args.direction, D.dim)
    scfg = build_search_config(args, config)
    res = kobayashi_royden(D, base, direction, scfg)
    results = {"value": res.value, "witness": res.witness,
               "derivative_budget": res.derivative_budget}
    echo = {"domain": args.domain, "base": args.base,
            "direction": args.direction, "search": scfg}
    return rpt.build_report("kobayashi", echo, results), EXIT_OK


def cmd_disc_search(args, config: dict) -> tuple[dict, int]:
    D = ModelDomain.from_descriptor(args.domain)
    x = parse_vector(args.x, D.dim)
    y = parse_vector(args.y, D.dim)
    cfg = build_search_config(args, config)
    out = minimize_disc_functional(D, x, y, cfg)
    results = {
        "estimate": out.estimate,
        "witness": out.witness,
        "informative": out.informative,
        "n_evaluations": out.n_evaluations,
    }
    if D.has_green_oracle:
        results["oracle_value"] = D.green(x, y)
        results["oracle_gap"] = out.estimate - D.green(x, y)
    echo = {"domain": args.domain, "x": args.x, "y": args.y, "search": cfg}
    return rpt.build_report("disc-search", echo, results), EXIT_OK


def _extremal_field(args):
    degree = args.degree if args.degree is not None else \
        (0 if args.torus else 6)
    if args.torus:
        if args.mu is None:
            raise ParseError("--torus requires --mu")
        mu_val = parse_complex(args.mu)
        if abs(mu_val) >= 1.0:
            raise DomainViolation("Beltrami coefficient must have |mu| < 1")
        quad = ext.torus_quadrature()
        if args.pattern == "half-cell":
            mu = ext.torus_half_cell_field(abs(mu_val), quad)
        else:
            mu = ext.BeltramiField.from_constant(mu_val)
        basis = ext.QuadDiffBasis.monomials(degree, "torus")
        return mu, basis, quad
    quad = ext.disc_polar_quadrature()
    k = args.k if args.k is not None else 0.4
    if not 0.0 <= k < 1.0:
        raise DomainViolation("Beltrami coefficient must have |mu| < 1")
    pattern = args.pattern or "teichmueller"
    if pattern == "teichmueller":
        mu = ext.disc_teichmueller_field(k, quad=quad)
    elif pattern.startswith("angular"):
        try:
            winding = int(pattern[len("angular"):] or "4")
        except ValueError as exc:
            raise ParseError(f"bad pattern {pattern!r}") from exc
        mu = ext.disc_angular_field(k, winding=winding, quad=quad)
    else:
        raise ParseError(f"unknown pattern {pattern!r}; use "
                         "'teichmueller' or 'angular<N>'")
    basis = ext.QuadDiffBasis.monomials(degree, "disc")
    return mu, basis, quad


def cmd_extremal(args, config: dict) -> tuple[dict, int]:
    seed = _setting(args, config, "seed", int, 0)
    mu, basis, quad = _extremal_field(args)
    if mu.sup_norm >= 1.0:
        raise DomainViolation("Beltrami coefficient must have sup norm < 1")
    rep = ext.is_extremal(mu, basis, quad, seed=seed)
    echo = {"torus": bool(args.torus), "mu": args.mu, "k": args.k,
            "pattern": args.pattern, "degree": args.degree, "seed": seed}
    return rpt.build_report("extremal", echo, rep.to_jsonable()), EXIT_OK


def cmd_verify(args, config: dict) -> tuple[dict, int]:
    seed = _setting(args, config, "seed", int, 0)
    scfg = build_search_config(args, config)
    if args.suite == "corollary5":
        results = ver.suite_corollary5(args.case or "all", seed)
    else:
        results = ver.run_suite(args.suite, args.n, seed,
                                domain=args.domain, cfg=scfg)
    echo = {"suite": args.suite, "n": args.n, "seed": seed,
            "domain": args.domain, "case": args.case, "search": scfg}
    payload = rpt.build_report("verify", echo, results)
    if args.figures:
        paths = rpt.render_figures(payload, args.figures)
        print(f"wrote {len(paths)} figure(s) to {args.figures}",
              file=sys.stderr)
    return payload, EXIT_OK if payload["pass"] else EXIT_FAIL


def cmd_smoothness_probe(args, config: dict) -> tuple[dict, int]:
    tau0 = parse_complex(args.tau0)
    direction = parse_complex(args.direction)
    results = torus.smoothness_probe(tau0, direction)
    echo = {"tau0": args.tau0, "direction": args.direction}
    return rpt.build_report("smoothness-probe", echo, results), EXIT_OK


# -- argument plumbing -----------------------------------------------------------

def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=None,
                   help="RNG seed (default 0)")
    p.add_argument("--config", default=None,
                   help=f"flat key=value config file "
                        f"(default: ${CONFIG_ENV_VAR})")
    p.add_argument("--format", choices=("json", "csv"), default="json",
                   help="output format (default json)")


def _add_search_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--n-starts", type=int, default=None)
    p.add_argument("--n-boundary-samples", type=int, default=None)
    p.add_argument("--margin", type=float, default=None)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--maxfev", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    root = argparse.ArgumentParser(
        prog="greenteich",
        description="Pluricomplex Green function / Teichmüller distance "
                    "toolkit: invariant-metric computations and "
                    "verification suites on model domains.")
    sub = root.add_subparsers(dest="command", required=True)

    p = sub.add_parser("green", help="Green function value at (x, y)")
    p.add_argument("--domain", required=True,
                   help="domain descriptor, e.g. disc, ball2, polydisc3")
    p.add_argument("--x", required=True, help="evaluation point")
    p.add_argument("--y", required=True, help="pole location")
    p.add_argument("--estimate", action="store_true",
                   help="force the disc-functional estimator over the oracle")
    _add_search_flags(p)
    _add_common(p)
    p.set_defaults(fn=cmd_green)

    p = sub.add_parser("teich", help="torus Teichmüller distance report")
    p.add_argument("--tau1", required=True, help="first modulus (Im > 0)")
    p.add_argument("--tau2", required=True, help="second modulus (Im > 0)")
    _add_common(p)
    p.set_defaults(fn=cmd_teich)

    p = sub.add_parser("azukawa",
                       help="Azukawa metric via the pole asymptotics ladder")
    p.add_argument("--domain", required=True)
    p.add_argument("--base", required=True)
    p.add_argument("--direction", required=True)
    p.add_argument("--lambda0", type=float, default=None)
    p.add_argument("--rungs", type=int, default=None)
    _add_search_flags(p)
    _add_common(p)
    p.set_defaults(fn=cmd_azukawa)

    p = sub.add_parser("kobayashi",
                       help="Kobayashi-Royden metric via extremal discs")
    p.add_argument("--domain", required=True)
    p.add_argument("--base", required=True)
    p.add_argument("--direction", required=True)
    _add_search_flags(p)
    _add_common(p)
    p.set_defaults(fn=cmd_kobayashi)

    p = sub.add_parser("disc-search",
                       help="minimize the disc functional for a pair (x, y)")
    p.add_argument("--domain", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    _add_search_flags(p)
    _add_common(p)
    p.set_defaults(fn=cmd_disc_search)

    p = sub.add_parser("extremal",
                       help="Hamilton-Krushkal extremality verdict")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--torus", action="store_true",
                       help="constant field on the square torus")
    group.add_argument("--disc", action="store_true",
                       help="pattern field on the unit disc")
    p.add_argument("--mu", default=None, help="constant Beltrami value")
    p.add_argument("--k", type=float, default=None,
                   help="field amplitude for disc patterns (default 0.4)")
    p.add_argument("--pattern", default=None,
                   help="teichmueller | angular<N> | half-cell")
    p.add_argument("--degree", type=int, default=None,
                   help="quadratic-differential basis degree")
    _add_common(p)
    p.set_defaults(fn=cmd_extremal)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=ver.SUITES + ("poletskii",))
    p.add_argument("--n", type=int, default=None, help="sample count")
    p.add_argument("--domain", default="disc",
                   help="domain for the metric-comparison suite")
    p.add_argument("--case", default=None,
                   help="named case for the extremality suite")
    p.add_argument("--figures", default=None, metavar="DIR",
                   help="also render summary figures into DIR")
    _add_search_flags(p)
    _add_common(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("smoothness-probe",
                       help="finite-difference regularity diagnostic "
                            "(no acceptance claim)")
    p.add_argument("--tau0", required=True, help="reference modulus")
    p.add_argument("--direction", default="1", help="probe direction")
    _add_common(p)
    p.set_defaults(fn=cmd_smoothness_probe)

    return root


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.time()
    try:
        config = load_config(args.config)
        payload, code = args.fn(args, config)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DomainViolation as exc:
        print(f"domain violation: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"domain violation: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if args.format == "csv":
        sys.stdout.write(rpt.dumps_csv(payload))
    else:
        print(rpt.dumps_json(payload))
    # timestamps are non-deterministic, so they go to the diagnostic
    # stream only, never into the payload
    print(f"elapsed: {time.time() - started:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
