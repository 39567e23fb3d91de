"""Command-line entry point: ``creutz-cqed <subcommand> [flags]``.

Data (CSV or JSON) goes to ``--out`` or stdout; diagnostics go to stderr.
Exit codes: 0 success, 1 domain error, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
import warnings

import numpy as np

from . import circuitqed as cq
from . import dynamics as dyn
from . import floquet as fl
from . import lattice as lat
from . import netlist
from . import topology as topo
from .errors import DomainError

_ANGLE = re.compile(r"([+-]?(?:\d+(?:\.\d*)?|\.\d+)?)\*?pi(?:/(\d+(?:\.\d*)?))?\Z")


def angle(text):
    """Radians as a float, or a multiple of pi such as ``pi/2`` or ``-3pi/4``."""
    m = _ANGLE.match(text.strip())
    if m:
        coef = m.group(1)
        coef = 1.0 if coef in ("", "+") else -1.0 if coef == "-" else float(coef)
        div = float(m.group(2)) if m.group(2) else 1.0
        return coef * math.pi / div
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an angle: {text!r}") from None


def positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


# output

def _cell(value):
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_output(args, columns, rows, summary=None):
    """Write a table (CSV) or a JSON object holding ``summary`` plus ``rows``."""
    buf = io.StringIO()
    if args.format == "csv":
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([_cell(v) for v in row])
        if summary:
            for key, value in summary.items():
                print(f"{key}: {value}", file=sys.stderr)
    else:
        payload = dict(summary or {})
        if rows:
            payload["rows"] = [dict(zip(columns, row)) for row in rows]
        buf.write(json.dumps(_jsonable(payload), allow_nan=False))
        buf.write("\n")
    _emit(args, buf.getvalue())


def write_json(args, payload):
    _emit(args, json.dumps(_jsonable(payload), allow_nan=False) + "\n")


def _emit(args, text):
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


# model sources

MODEL_FLAGS = ("N", "td", "tv", "phi", "omega_m", "depth", "phase1", "phase2")


def _ladder_from(args, defaults):
    if getattr(args, "input", None):
        spec = netlist.load(args.input)
        if not isinstance(spec, netlist.LatticeSpec):
            raise DomainError(f"{args.input} does not describe a [ladder]")
        return spec
    vals = {k: getattr(args, k) if getattr(args, k) is not None else defaults[k] for k in defaults}
    boundary = getattr(args, "boundary", None) or defaults.get("boundary", "periodic")
    return netlist.LatticeSpec(vals["N"], vals["td"], vals["tv"], vals["phi"], boundary)


STRONG = {"N": 64, "td": 1.0, "tv": 0.0, "phi": math.pi / 2}


# subcommands

def cmd_params(args):
    if args.input:
        spec = netlist.load(args.input)
        if not isinstance(spec, netlist.CircuitSpec):
            raise DomainError("params needs a circuit document with [site] records")
    else:
        if args.ej is None or (args.ec is None) == (args.cap is None):
            raise UsageError("params needs --ej and exactly one of --ec/--cap, or --input")
        transmon = cq.TransmonSpec(args.ej, capacitance=args.cap, charging_energy=args.ec)
        spec = netlist.CircuitSpec((netlist.SiteEntry("q1", transmon=transmon),))

    hopping = {}
    for c in spec.couplings:
        J = cq.coupled_params(spec.coupled_spec(c)).hopping_J if c.physical else c.J
        for name in (c.source, c.target):
            hopping[name] = hopping.get(name, 0.0) + J
    freqs = spec.site_frequencies()
    columns = ["site", "omega0", "delta_omega0", "kerr", "kerr6", "epsilon", "hopping_J", "omega_site"]
    rows = []
    for s, w_site in zip(spec.sites, freqs):
        if s.transmon is not None:
            p = cq.transmon_params(s.transmon)
            vals = [p.omega0, p.delta_omega0, p.kerr, p.kerr6, p.epsilon]
        else:
            vals = [s.omega, None, None, None, None]
        rows.append([s.name, *vals, hopping.get(s.name, 0.0), float(w_site)])
    if args.format == "json":
        write_json(args, [dict(zip(columns, r)) for r in rows])
    else:
        write_output(args, columns, [["" if v is None else v for v in r] for r in rows])


def _two_site_drive(args):
    """Model and drive for the driven dimer, from --input or inline flags."""
    if args.input:
        spec = netlist.load(args.input)
        if not isinstance(spec, netlist.CircuitSpec) or len(spec.sites) != 2:
            raise DomainError("expected a two-site circuit document")
        drive = spec.drive()
        if drive is None:
            raise DomainError("document has no [modulation] records")
        return spec.lattice_model(), drive
    omega_m = args.omega_m if args.omega_m is not None else 50.0
    depth = args.depth if args.depth is not None else omega_m
    depth2 = args.depth2 if args.depth2 is not None else depth
    phase1 = args.phase1 if args.phase1 is not None else 0.0
    phase2 = args.phase2 if args.phase2 is not None else math.pi
    model = dyn.two_site_model(args.J, (0.0, args.detune * omega_m))
    return model, fl.DriveSpec((depth, depth2), omega_m, (phase1, phase2))


def cmd_floquet(args):
    model, drive = _two_site_drive(args)
    J = abs(model.hops[0].amplitude) if args.input else args.J
    h = model.hops[0]
    orders = [args.order] if args.order is not None else range(args.n_min, args.n_max + 1)
    rows = []
    for n in orders:
        sc = fl.sideband_coupling(J, drive, n, h.i, h.j)
        a = sc.amplitude
        rows.append([n, a.real, a.imag, abs(a)])
    write_output(args, ["n", "re_Jn", "im_Jn", "abs_Jn"], rows)


def cmd_bands(args):
    spec = _ladder_from(args, STRONG)
    b = lat.band_structure(spec.N, spec.td, spec.tv, spec.phi)
    rows = [
        [int(k), float(em), float(ep), float(n0), float(nx), float(nz)]
        for k, em, ep, n0, nx, nz in zip(b.k, b.E_minus, b.E_plus, b.n0, b.nx, b.nz)
    ]
    write_output(args, ["k", "E_minus", "E_plus", "n0", "nx", "nz"], rows)


def cmd_winding(args):
    spec = _ladder_from(args, STRONG)
    report = topo.winding_number(spec.td, spec.tv, spec.phi, args.samples)
    if args.format == "json":
        write_json(args, report.as_dict())
    else:
        d = report.as_dict()
        write_output(args, list(d), [list(d.values())])


def cmd_berry(args):
    spec = _ladder_from(args, STRONG)
    phase = topo.berry_phase(spec.N, spec.td, spec.tv, spec.phi)
    d = {"berry_phase": phase, "ratio": None if spec.td == 0 else spec.tv / spec.td, "N": spec.N}
    if args.format == "json":
        write_json(args, d)
    else:
        write_output(args, list(d), [list(d.values())])


def cmd_zeromodes(args):
    spec = _ladder_from(args, dict(STRONG, N=8, boundary="open"))
    H = spec.build().matrix()
    E = np.linalg.eigvalsh(H)
    zero = E[np.abs(E) < args.zero_tol]
    left, right = topo.edge_zero_modes(spec.N)
    d = {
        "zero_mode_count": int(zero.size),
        "residual_left": float(np.linalg.norm(H @ left)),
        "residual_right": float(np.linalg.norm(H @ right)),
    }
    if args.format == "json":
        write_json(args, dict(d, energies=[float(e) for e in zero], boundary=spec.boundary))
    else:
        write_output(args, list(d), [list(d.values())])


def cmd_domainwall(args):
    N = args.N if args.N is not None else 64
    td = args.td if args.td is not None else 1.0
    phi = args.phi if args.phi is not None else math.pi / 2
    profile = np.where(np.arange(N) < N // 2, args.tv_left, args.tv_right)
    mode = topo.domain_wall_mode(N, td, profile, phi, args.boundary or "open")
    rows = [
        [n, float(m), float(p), float(e)]
        for n, (m, p, e) in enumerate(zip(mode.mass, mode.rung_density, mode.envelope))
    ]
    summary = {
        "energy": mode.energy,
        "half_gap": mode.half_gap,
        "kink": mode.kink,
        "decay_rates": [float(r) for r in mode.decay_rates],
        "continuum_rates": [float(r) for r in mode.predicted_rates],
        "lattice_rates": [float(r) for r in mode.lattice_rates],
        "tail_correlation": mode.correlation,
    }
    write_output(args, ["rung", "mass", "density", "continuum_envelope"], rows, summary)


def _time_grid(t_final, dt):
    n = int(math.floor(t_final / dt + 1e-9))
    return np.arange(n + 1) * dt


def cmd_plaquette(args):
    times = _time_grid(args.t_final, args.dt)
    if args.closed_form:
        _, occ = dyn.plaquette_closed_form(times)
    else:
        traj = dyn.evolve_static(dyn.plaquette_model(), dyn.site_state(4, 0), times)
        occ = traj.occupations
    rows = [[float(t), *map(float, p)] for t, p in zip(times, occ)]
    write_output(args, ["t", "p1", "p2", "p3", "p4"], rows)


def cmd_evolve(args):
    drive = None
    if args.input:
        spec = netlist.load(args.input)
        if isinstance(spec, netlist.LatticeSpec):
            model = spec.build()
        else:
            model, drive = spec.lattice_model(), spec.drive()
    else:
        model = _ladder_from(args, dict(STRONG, N=8, boundary="open")).build()
    if args.init == "random":
        rng = np.random.default_rng(args.seed)
        psi0 = rng.normal(size=model.size) + 1j * rng.normal(size=model.size)
        psi0 /= np.linalg.norm(psi0)
    else:
        if not 0 <= args.site < model.size:
            raise DomainError(f"--site {args.site} out of range for {model.size} sites")
        psi0 = dyn.site_state(model.size, args.site)
    times = _time_grid(args.t_final, args.dt)
    if drive is None:
        traj = dyn.evolve_static(model, psi0, times)
    else:
        traj = dyn.evolve_driven(model, drive, psi0, times[-1], args.dt, times=times)
    cols = ["t"] + [f"p_{label}" for label in model.labels]
    rows = [[float(t), *map(float, p)] for t, p in zip(traj.times, traj.occupations)]
    write_output(args, cols, rows)


def cmd_compare(args):
    model, drive = _two_site_drive(args)
    dt = args.dt if args.dt is not None else dyn.max_time_step(model, drive)
    traj = dyn.evolve_driven(model, drive, dyn.site_state(2, 0), args.t_final, dt)
    eff = fl.effective_hamiltonian(model, drive, order=args.order)
    static = dyn.evolve_static(eff, dyn.site_state(2, 0), traj.times)
    slow = 0.25 * drive.omega_M
    period_driven = dyn.oscillation_period(traj.times, traj.occupations[:, 0], max_omega=slow)
    period_eff = dyn.oscillation_period(static.times, static.occupations[:, 0], max_omega=slow)
    J_eff = abs(eff.bond(1, 0))
    summary = {
        "J_eff": J_eff,
        "period_predicted": math.pi / J_eff if J_eff > 0 else None,
        "period_driven": period_driven,
        "period_effective": period_eff,
        "ratio": period_driven / period_eff,
        "renormalizations": traj.renormalizations,
    }
    stride = max(1, args.stride)
    rows = [
        [float(t), float(pd[0]), float(pd[1]), float(pe[0]), float(pe[1])]
        for t, pd, pe in list(zip(traj.times, traj.occupations, static.occupations))[::stride]
    ]
    write_output(args, ["t", "p1_driven", "p2_driven", "p1_effective", "p2_effective"], rows, summary)


# parser

class UsageError(Exception):
    pass


def _output_parent():
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("output")
    g.add_argument("--format", choices=("csv", "json"), default="csv", help="output format (default csv)")
    g.add_argument("--out", metavar="PATH", help="write data here instead of stdout")
    g.add_argument("--seed", type=int, default=0, help="RNG seed for random initial states (default 0)")
    return p


def _ladder_parent(input_ok=True):
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("ladder (energies in units of the leg hopping)")
    if input_ok:
        g.add_argument("--input", metavar="FILE.qnl", help="read a [ladder] record instead of flags")
    g.add_argument("--N", type=positive_int, help="number of rungs")
    g.add_argument("--td", type=float, help="diagonal hopping t_d")
    g.add_argument("--tv", type=float, help="rung hopping t_v")
    g.add_argument("--phi", type=angle, help="flux per plaquette in radians (accepts pi/2 etc.)")
    return p


def _drive_parent():
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("two-site drive (frequencies in units of the bare hopping J)")
    g.add_argument("--input", metavar="FILE.qnl", help="two-site circuit with [modulation] records")
    g.add_argument("--J", type=float, default=1.0, help="bare hopping J (default 1)")
    g.add_argument("--omega-m", dest="omega_m", type=float, help="modulation frequency omega_M (default 50)")
    g.add_argument("--depth", type=float, help="modulation depth Omega_0 of site 1 (default omega_M)")
    g.add_argument("--depth2", type=float, help="modulation depth of site 2 (default --depth)")
    g.add_argument("--phase1", type=angle, help="drive phase of site 1, radians (default 0)")
    g.add_argument("--phase2", type=angle, help="drive phase of site 2, radians (default pi)")
    g.add_argument("--detune", type=int, default=0, help="site-2 static offset in multiples of omega_M")
    g.add_argument("--order", type=int, help="force Floquet harmonic n instead of the resonant one")
    return p


def build_parser():
    out = _output_parent()
    parser = argparse.ArgumentParser(
        prog="creutz-cqed",
        description="Modulated circuit-QED lattices and the bosonic Creutz ladder.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="SUBCOMMAND")

    p = sub.add_parser(
        "params",
        parents=[out],
        help="transmon and coupling parameters",
        description="Transmon frequency, Kerr terms and hopping (all rad/s) from SI circuit values. "
        "Columns: site, omega0, delta_omega0, kerr, kerr6, epsilon, hopping_J, omega_site.",
    )
    p.add_argument("--input", metavar="FILE.qnl", help="circuit netlist with physical [site] values")
    p.add_argument("--ej", type=float, help="junction energy E_J in joules")
    p.add_argument("--ec", type=float, help="charging energy E_C in joules")
    p.add_argument("--cap", type=float, help="shunt capacitance in farads")
    p.set_defaults(func=cmd_params, inline=("ej", "ec", "cap"))

    p = sub.add_parser(
        "floquet",
        parents=[_drive_parent(), out],
        help="sideband couplings J_n",
        description="Table of n, re_Jn, im_Jn, abs_Jn for the modulated dimer bond a_2^dag a_1.",
    )
    p.add_argument("--n-min", type=int, default=-3, help="lowest harmonic (default -3)")
    p.add_argument("--n-max", type=int, default=3, help="highest harmonic (default 3)")
    p.set_defaults(func=cmd_floquet, inline=("omega_m", "depth", "depth2", "phase1", "phase2"))

    p = sub.add_parser(
        "bands",
        parents=[_ladder_parent(), out],
        help="Creutz ladder band structure",
        description="Bloch bands per momentum index k in (-N/2, N/2]. Columns: k, E_minus, E_plus, n0, nx, nz. "
        "Defaults: N=64, td=1, tv=0, phi=pi/2.",
    )
    p.set_defaults(func=cmd_bands, inline=("N", "td", "tv", "phi"))

    p = sub.add_parser(
        "winding",
        parents=[_ladder_parent(), out],
        help="winding number of the (nx, nz) curve",
        description="Winding number (counterclockwise positive), ratio tv/td and criticality flag.",
    )
    p.add_argument("--samples", type=positive_int, default=256, help="k samples on the curve (>= 64)")
    p.set_defaults(func=cmd_winding, inline=("N", "td", "tv", "phi"))

    p = sub.add_parser(
        "berry",
        parents=[_ladder_parent(), out],
        help="Berry phase of the lower band",
        description="Wilson-loop Berry phase of the lower band, radians in [0, 2 pi).",
    )
    p.set_defaults(func=cmd_berry, inline=("N", "td", "tv", "phi"))

    p = sub.add_parser(
        "zeromodes",
        parents=[_ladder_parent(), out],
        help="edge zero modes of the open ladder",
        description="Counts eigenvalues with |E| < zero-tol on the open ladder (default N=8, strong coupling) "
        "and the residuals ||H eta|| of the two edge states.",
    )
    p.add_argument("--boundary", choices=("open", "periodic"), default="open")
    p.add_argument("--zero-tol", type=float, default=1e-10, help="|E| threshold for a zero mode")
    p.set_defaults(func=cmd_zeromodes, inline=("N", "td", "tv", "phi"))

    p = sub.add_parser(
        "domainwall",
        parents=[_ladder_parent(input_ok=False), out],
        help="zero mode at a mass kink",
        description="Ladder whose rung hopping steps from --tv-left to --tv-right at mid-ladder. "
        "Columns: rung, mass (2 td - tv), density, continuum_envelope.",
    )
    p.add_argument("--tv-left", type=float, default=1.0, help="rung hopping on the left half (default 1)")
    p.add_argument("--tv-right", type=float, default=3.0, help="rung hopping on the right half (default 3)")
    p.add_argument("--boundary", choices=("open", "periodic"), default="open")
    p.set_defaults(func=cmd_domainwall, inline=())

    p = sub.add_parser(
        "plaquette",
        parents=[out],
        help="chiral transfer on one plaquette",
        description="Occupations of the four plaquette modes starting from a_1. Columns: t, p1, p2, p3, p4 "
        "(time in inverse leg-hopping units).",
    )
    p.add_argument("--t-final", type=float, default=math.pi, help="final time (default pi)")
    p.add_argument("--dt", type=float, default=0.01, help="sample spacing (default 0.01)")
    p.add_argument("--closed-form", action="store_true", help="use the analytic solution")
    p.set_defaults(func=cmd_plaquette, inline=())

    p = sub.add_parser(
        "evolve",
        parents=[_ladder_parent(), out],
        help="single-particle evolution",
        description="Evolve one particle on a ladder (flags or --input) or a driven circuit (--input). "
        "Columns: t and one occupation per site.",
    )
    p.add_argument("--boundary", choices=("open", "periodic"), default="open")
    p.add_argument("--t-final", type=float, default=10.0, help="final time (default 10)")
    p.add_argument("--dt", type=float, default=0.01, help="sample spacing / max RK4 step (default 0.01)")
    p.add_argument("--site", type=int, default=0, help="initially occupied site (default 0)")
    p.add_argument("--init", choices=("site", "random"), default="site", help="initial state (random uses --seed)")
    p.set_defaults(func=cmd_evolve, inline=("N", "td", "tv", "phi"))

    p = sub.add_parser(
        "compare",
        parents=[_drive_parent(), out],
        help="driven dimer vs effective Floquet model",
        description="Integrates the driven dimer and evolves its effective static model from site 1. "
        "Columns: t, p1_driven, p2_driven, p1_effective, p2_effective; the extracted periods and their "
        "ratio are in the JSON output (stderr for CSV).",
    )
    p.add_argument("--t-final", type=float, default=30.0, help="final time in 1/J (default 30)")
    p.add_argument("--dt", type=float, help="RK4 step (default: 2 pi / (200 max(omega_M, omega0)))")
    p.add_argument("--stride", type=int, default=10, help="emit every n-th integration step (default 10)")
    p.set_defaults(func=cmd_compare, inline=("omega_m", "depth", "depth2", "phase1", "phase2"))
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "input", None):
        clash = [f for f in args.inline if getattr(args, f, None) is not None]
        if clash:
            parser.error("--input cannot be combined with inline model flags: " + ", ".join(f"--{c}" for c in clash))
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            warnings.showwarning = _warn_to_stderr
            args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except FileNotFoundError as exc:
        parser.error(f"file not found: {exc.filename}")
    except (DomainError, netlist.ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def _warn_to_stderr(message, category, filename, lineno, file=None, line=None):
    print(f"warning: {message}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
