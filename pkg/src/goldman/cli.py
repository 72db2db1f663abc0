"""Command-line front end.

    goldman bracket --x aB --y aB --m 2
    goldman separable --x aB --y aab
    goldman center --combo "2*aaa, -1*ab"
    goldman zigzag --x aB --y aab --u 0.4 --svg out.svg
    goldman selftest

Exit status is 0 on success, 2 for bad input (parse errors, violated
preconditions, unsupported shapes) and 1 for anything else.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import decide, zigzag
from .errors import ConstructionError, DomainError, GoldmanError, Unsupported
from .fuchsian import DEFAULT_TRACES, rep_from_config
from .intersect import DEFAULT_RADIUS, goldman_bracket, min_angle_point, transverse_points
from .words import parse_cyclic, power, same_root_up_to_inversion

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

EXIT_OK, EXIT_INTERNAL, EXIT_USER = 0, 1, 2


class UserError(Exception):
    pass


@dataclass
class RunConfig:
    surface: str = "pants"
    traces: tuple | None = None
    lengths: tuple | None = None
    radius: int = DEFAULT_RADIUS
    tol: float = 1e-9
    format: str = "json"
    svg: str | None = None
    extra: dict = field(default_factory=dict)

    def validate(self) -> "RunConfig":
        if not isinstance(self.radius, int) or not 4 <= self.radius <= 14:
            raise UserError(f"radius must be an integer in [4, 14], got {self.radius!r}")
        if not 0 < self.tol < 1e-4:
            raise UserError(f"tol must lie in (0, 1e-4), got {self.tol!r}")
        if self.format not in ("json", "text"):
            raise UserError(f"format must be json or text, got {self.format!r}")
        return self

    def rep(self):
        cfg = {"surface": self.surface, "tol": self.tol}
        if self.lengths is not None:
            cfg["lengths"] = list(self.lengths)
        else:
            cfg["traces"] = list(self.traces or DEFAULT_TRACES)
        return rep_from_config(cfg)


def load_config(path: str) -> dict:
    p = Path(path)
    try:
        text = p.read_bytes()
    except OSError as e:
        raise UserError(f"cannot read config {path}: {e.strerror}") from e
    try:
        if p.suffix.lower() == ".json":
            data = json.loads(text)
        else:
            data = tomllib.loads(text.decode())
    except (ValueError, tomllib.TOMLDecodeError) as e:
        raise UserError(f"cannot parse config {path}: {e}") from e
    if not isinstance(data, dict):
        raise UserError(f"config {path} must hold a table")
    return data


def make_config(args) -> RunConfig:
    data = load_config(args.config) if args.config else {}
    known = {"surface", "traces", "lengths", "radius", "tol", "format", "svg"}
    cfg = RunConfig(**{k: v for k, v in data.items() if k in known})
    cfg.extra = {k: v for k, v in data.items() if k not in known}
    for name in ("traces", "lengths"):
        if getattr(args, name, None) is not None:
            setattr(cfg, name, tuple(getattr(args, name)))
    if args.traces is not None:
        cfg.lengths = None
    for name in ("radius", "tol", "format"):
        v = getattr(args, name, None)
        if v is not None:
            setattr(cfg, name, v)
    return cfg.validate()


def _word(text: str, flag: str):
    try:
        return parse_cyclic(text)
    except DomainError as e:
        raise DomainError(f"{flag}: {e}") from e


# Commands ----------------------------------------------------------------

def cmd_bracket(args, cfg: RunConfig) -> dict:
    rep = cfg.rep()
    x, y = _word(args.x, "--x"), _word(args.y, "--y")
    if args.m < 1:
        raise DomainError(f"--m must be a positive integer, got {args.m}")
    xm = x if x.is_empty() else power(x, args.m)
    if x.is_empty() or y.is_empty() or same_root_up_to_inversion(xm, y):
        s = decide.bracket_of(rep, xm, y, cfg.radius)
        return {"terms": s.to_json(), "points": [], "radius": cfg.radius, "converged": True}
    return goldman_bracket(rep, xm, y, cfg.radius).to_json()


def cmd_separable(args, cfg: RunConfig) -> dict:
    rep = cfg.rep()
    return decide.decide_separable(rep, _word(args.x, "--x"), _word(args.y, "--y"), cfg.radius).to_json()


def cmd_center(args, cfg: RunConfig) -> dict:
    rep = cfg.rep()
    return decide.center_probe(rep, decide.parse_combo(args.combo), cfg.radius).to_json()


def cmd_zigzag(args, cfg: RunConfig) -> dict:
    rep = cfg.rep()
    x, y = _word(args.x, "--x"), _word(args.y, "--y")
    if same_root_up_to_inversion(x, y):
        raise DomainError("--x and --y share a primitive root; their geodesics coincide")
    pts = transverse_points(rep, x, y, cfg.radius)
    if not pts:
        raise DomainError(f"the geodesics of {x.letters} and {y.letters} do not cross")
    if args.point is None:
        P = min_angle_point(pts)
    elif 0 <= args.point < len(pts):
        P = pts[args.point]
    else:
        raise DomainError(f"--point must lie in [0, {len(pts) - 1}]")
    z = zigzag.build_zigzag(rep, x, y, P)
    try:
        c = zigzag.make_config(z, args.u)
    except DomainError as e:
        raise DomainError(f"--u: {e}") from e
    case = zigzag.classify_config(c)
    out = {
        "alpha": x.letters,
        "beta": y.letters,
        "point": P.to_json(),
        "len_alpha": z.len_alpha,
        "len_beta": z.len_beta,
        "len_product": z.len_product,
        "phi_P": z.phi_P,
        "theta0": c.theta0,
        "a": c.a,
        "u": c.u,
        "case": case.value,
        "collinearity_residual": z.collinearity_residual(),
        "spacing_residual": z.spacing_residual(),
    }
    if z.len_alpha <= z.len_beta:
        out["segment_crossing"] = zigzag.verify_segment_crossing(c)
    else:
        out["segment_crossing"] = None
    try:
        r = zigzag.find_smaller_angle(c)
        out["smaller_angle"] = None if r is None else r.to_json()
    except DomainError as e:
        out["smaller_angle"] = {"unavailable": str(e)}
    svg = args.svg or cfg.svg
    if svg:
        Path(svg).write_text(zigzag.render_svg(c))
        out["svg"] = svg
    return out


def cmd_selftest(args, cfg: RunConfig) -> int:
    from . import acceptance

    results = acceptance.run(set(args.only) if args.only else None)
    for r in results:
        print(r.line(), flush=True)
    return EXIT_OK if all(r.passed for r in results) else EXIT_INTERNAL


# Output ------------------------------------------------------------------

def _clean(v):
    # Floats are rounded so output bytes do not depend on the last ulp.
    if isinstance(v, float):
        return round(v, 12) if math.isfinite(v) else str(v)
    if isinstance(v, dict):
        return {k: _clean(w) for k, w in v.items()}
    if isinstance(v, (list, tuple)):
        return [_clean(w) for w in v]
    return v


def _text(v, indent="") -> str:
    if isinstance(v, dict):
        lines = []
        for k, w in v.items():
            if isinstance(w, (dict, list)) and w:
                lines.append(f"{indent}{k}:")
                lines.append(_text(w, indent + "  "))
            else:
                lines.append(f"{indent}{k}: {w}")
        return "\n".join(lines)
    if isinstance(v, list):
        return "\n".join(_text(w, indent) if isinstance(w, dict) else f"{indent}- {w}" for w in v)
    return f"{indent}{v}"


def emit(data: dict, fmt: str, stream=None):
    stream = stream or sys.stdout
    data = _clean(data)
    if fmt == "text":
        stream.write(_text(data) + "\n")
    else:
        stream.write(json.dumps(data, indent=2, sort_keys=True) + "\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="TOML or JSON file with surface, traces/lengths, radius, tol, format, svg")
    common.add_argument("--traces", type=float, nargs=3, metavar="T", help="pants boundary traces, all below -2")
    common.add_argument("--lengths", type=float, nargs=3, metavar="L", help="pants boundary lengths")
    common.add_argument("--radius", type=int, help=f"ball radius for the crossing search (default {DEFAULT_RADIUS})")
    common.add_argument("--tol", type=float, help="numerical tolerance (default 1e-9)")
    common.add_argument("--format", choices=("json", "text"), help="output format (default json)")

    p = argparse.ArgumentParser(prog="goldman", description="Goldman brackets and separability on the pair of pants.")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bracket", parents=[common], help="the bracket [x^m, y]")
    b.add_argument("--x", required=True)
    b.add_argument("--y", required=True)
    b.add_argument("--m", type=int, default=1)

    s = sub.add_parser("separable", parents=[common], help="do x and y have disjoint representatives")
    s.add_argument("--x", required=True)
    s.add_argument("--y", required=True)

    c = sub.add_parser("center", parents=[common], help="probe a combination against powers of aB")
    c.add_argument("--combo", required=True, help='for example "2*aaa, -1*ab"')

    z = sub.add_parser("zigzag", parents=[common], help="zigzag curve, mirror configuration and SVG")
    z.add_argument("--x", required=True)
    z.add_argument("--y", required=True)
    z.add_argument("--u", type=float, required=True, help="offset of the mirror from H_0, in (0, len/2]")
    z.add_argument("--point", type=int, help="index of the crossing (default: smallest angle)")
    z.add_argument("--svg", help="write the figure to this file")

    t = sub.add_parser("selftest", parents=[common], help="run the acceptance suite")
    t.add_argument("--only", type=int, nargs="*", help="criterion numbers to run")
    return p


COMMANDS = {
    "bracket": cmd_bracket,
    "separable": cmd_separable,
    "center": cmd_center,
    "zigzag": cmd_zigzag,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USER if e.code else EXIT_OK
    try:
        cfg = make_config(args)
        if args.command == "selftest":
            return cmd_selftest(args, cfg)
        emit(COMMANDS[args.command](args, cfg), cfg.format)
        return EXIT_OK
    except (UserError, DomainError, Unsupported, ConstructionError) as e:
        print(f"goldman: error: {e}", file=sys.stderr)
        return EXIT_USER
    except GoldmanError as e:
        print(f"goldman: failed: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as e:  # pragma: no cover
        print(f"goldman: internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
