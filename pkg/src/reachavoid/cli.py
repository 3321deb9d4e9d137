"""Command-line interface: classify, barrier, oracle, simulate, sweep."""
import argparse
import csv
import json
import sys

import numpy as np

from .coalition import BAND, build_model
from .configio import load_config
from .evasion import escape_margin_supremum
from .exceptions import DegenerateConfiguration, EvaderNotInPlay, ReachAvoidError
from .geometry import from_canonical
from .mesh import export_mesh
from .simulator import run_straight_line_escape
from .sweep import agreement, failed, rows_to_csv, sweep

EXIT_OK, EXIT_USAGE, EXIT_DISAGREE, EXIT_DEGENERATE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(obj):
    print(json.dumps(obj, indent=1))


def _need_evader(config):
    if config.evader is None:
        raise EvaderNotInPlay("config has no evader")


def _range(text):
    try:
        lo, hi = (int(x) for x in text.split(".."))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None
    if not 1 <= lo <= hi:
        raise argparse.ArgumentTypeError(f"need 1 <= A <= B, got {text!r}")
    return lo, hi


def _xy(text):
    try:
        x, y = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected x,y, got {text!r}") from None
    return x, y


def cmd_classify(args):
    config, _ = load_config(args.config)
    _need_evader(config)
    model = build_model(config.pursuers)
    verdict = model.verdict(config.evader, args.band)
    coal = model.coalitions
    out = {
        "verdict": verdict.tag,
        "margin": verdict.margin,
        "region": verdict.details,
        "active": list(coal.active),
        "triples": [list(t) for t in coal.triples],
        "pairs": [list(p) for p in coal.pairs],
        "singles": list(coal.singles),
    }
    code = EXIT_OK
    if args.oracle:
        rep = escape_margin_supremum(config.evader, config.pursuers)
        agree = agreement(verdict.tag, verdict.margin, rep, args.oracle_band)
        out["oracle"] = {"supremum": rep.supremum, "witness": rep.witness.tolist(),
                         "resolved": rep.resolved, "agree": agree}
        if agree == "0":
            code = EXIT_DISAGREE
    _emit(out)
    return code


def cmd_barrier(args):
    config, frame = load_config(args.config)
    model = build_model(config.pursuers)
    mesh = export_mesh(model.pieces, args.resolution, args.frame, frame)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(mesh.to_json())
    if args.obj:
        with open(args.obj, "w", encoding="utf-8") as fh:
            fh.write(mesh.to_obj())
    _emit({"pieces": len(mesh.pieces), "vertices": len(mesh.vertices),
           "faces": len(mesh.faces), "segments": len(mesh.segments),
           "components": mesh.n_components()})
    return EXIT_OK


def cmd_oracle(args):
    config, frame = load_config(args.config)
    _need_evader(config)
    rep = escape_margin_supremum(config.evader, config.pursuers, grid=args.grid, extent=args.extent)
    _emit({"supremum": rep.supremum, "witness": rep.witness.tolist(),
           "witness_raw": from_canonical(frame, rep.witness).tolist(),
           "resolved": rep.resolved, "extent": rep.extent,
           "evader_wins": bool(rep.evader_wins)})
    return EXIT_OK


def cmd_simulate(args):
    config, frame = load_config(args.config)
    _need_evader(config)
    if args.target is None:
        target = escape_margin_supremum(config.evader, config.pursuers).witness
    else:
        target = np.array([args.target[0], args.target[1], 0.0])
    run = run_straight_line_escape(config, target, args.dt, record=True)
    traj = run.trajectory
    if args.frame == "raw":
        traj = from_canonical(frame, traj)
    names = ["evader"] + [f"pursuer{k}" for k in range(len(config.pursuers))]
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["time", "player", "x", "y", "z"])
        for t, rows in zip(run.times, traj):
            for name, (x, y, z) in zip(names, rows):
                writer.writerow([format(t, ".17g"), name] + [format(v, ".17g") for v in (x, y, z)])
    st = run.state
    _emit({"status": st.status, "time": st.time, "captured_by": st.captured_by,
           "clearance": st.clearance, "target": target.tolist()})
    return EXIT_OK


def cmd_sweep(args):
    rows = sweep(args.n, args.pursuers, args.seed, args.band, args.trials, args.dt,
                 simulate=not args.no_sim)
    text = rows_to_csv(rows)
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    bad = failed(rows)
    for r in bad:
        print(f"config {r.index}: verdict {r.verdict}, supremum {r.supremum:.17g}, "
              f"agree {r.agree}, sim {r.sim_pass}", file=sys.stderr)
    return EXIT_DISAGREE if bad else EXIT_OK


def build_parser():
    p = _Parser(prog="reachavoid", description="Reach-avoid barrier analysis for 3D pursuit-evasion.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", help="analytic verdict for the evader in a config")
    c.add_argument("--config", required=True)
    c.add_argument("--band", type=float, default=BAND)
    c.add_argument("--oracle", action="store_true", help="cross-check against the numeric oracle")
    c.add_argument("--oracle-band", type=float, default=1e-3)
    c.set_defaults(func=cmd_classify)

    b = sub.add_parser("barrier", help="export the barrier surface as a mesh")
    b.add_argument("--config", required=True)
    b.add_argument("--out", required=True)
    b.add_argument("--obj")
    b.add_argument("--resolution", type=int, default=32)
    b.add_argument("--frame", choices=("raw", "canonical"), default="raw")
    b.set_defaults(func=cmd_barrier)

    o = sub.add_parser("oracle", help="numeric escape-margin supremum")
    o.add_argument("--config", required=True)
    o.add_argument("--grid", type=int, default=201)
    o.add_argument("--extent", type=float)
    o.set_defaults(func=cmd_oracle)

    s = sub.add_parser("simulate", help="straight-line escape run with intercepting pursuers")
    s.add_argument("--config", required=True)
    s.add_argument("--dt", type=float, required=True)
    s.add_argument("--target", type=_xy, help="canonical-frame plane point x,y (default: oracle witness)")
    s.add_argument("--out", required=True)
    s.add_argument("--frame", choices=("raw", "canonical"), default="raw")
    s.set_defaults(func=cmd_simulate)

    w = sub.add_parser("sweep", help="random agreement sweep written as CSV")
    w.add_argument("--n", type=int, required=True)
    w.add_argument("--pursuers", type=_range, default=(1, 3))
    w.add_argument("--seed", type=int, required=True)
    w.add_argument("--out", required=True)
    w.add_argument("--band", type=float, default=1e-3)
    w.add_argument("--trials", type=int, default=100)
    w.add_argument("--dt", type=float, default=1e-3)
    w.add_argument("--no-sim", action="store_true")
    w.set_defaults(func=cmd_sweep)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DegenerateConfiguration as exc:
        print(f"degenerate configuration: {exc} {exc.diagnostics}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (ReachAvoidError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
