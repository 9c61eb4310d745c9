"""Command-line front end.

Subcommands ``plan``, ``simulate``, ``compare``, ``sweep`` and ``encoded``.
Exit status: 0 on success, 1 on bad input, 2 when a planned schedule fails
numerical verification.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bloch import BlochAngles, fidelity_up_to_phase, state_from_angles
from .encoded import (
    LindbladSpec,
    dfs_residual,
    embed_logical,
    project_logical,
    simulate_encoded,
    simulate_master_equation,
)
from .one_rotation import plan_one_rotation
from .propagate import (
    DEFAULT_SAMPLES,
    evaluate_performance_numeric,
    integrate_schedule_rk4,
    simulate_schedule,
)
from .pulses import PulseShape
from .schedule import Schedule
from .three_rotation import plan_three_rotation

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2
FIDELITY_TOL = 1e-8
SHAPES = ("bang", "quadratic", "triangle")


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


@dataclass(frozen=True)
class ProblemSpec:
    initial: BlochAngles
    target: BlochAngles
    scheme: str = "three"
    shape: PulseShape = PulseShape.BANG
    lam: float = 1.0
    bound: float | None = None
    encoded: bool = False
    lindblad: str | None = None
    dt: float | None = None

    def __post_init__(self):
        if self.scheme not in ("three", "one"):
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if not (np.isfinite(self.lam) and self.lam > 0):
            raise ValueError(f"lambda must be positive, got {self.lam}")
        if self.bound is not None and not self.bound > 0:
            raise ValueError(f"bound must be positive, got {self.bound}")
        if self.dt is not None and not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt}")

    def plan(self, shape: PulseShape | None = None, lam: float | None = None):
        planner = plan_three_rotation if self.scheme == "three" else plan_one_rotation
        return planner(self.initial, self.target, PulseShape(shape or self.shape),
                       self.lam if lam is None else lam, self.bound)


def _add_problem_args(p, shape=True):
    p.add_argument("--theta0", type=float, required=True)
    p.add_argument("--phi0", type=float, default=0.0)
    p.add_argument("--thetas", type=float, required=True)
    p.add_argument("--phis", type=float, default=0.0)
    p.add_argument("--scheme", choices=("three", "one"), default="three")
    if shape:
        p.add_argument("--shape", choices=SHAPES, default="bang")
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--bound", type=float, default=None)
    p.add_argument("--dt", type=float, default=None)


def _add_output_args(p):
    p.add_argument("--out-dir", type=Path, default=Path("."))
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="blochsteer", description="Qubit steering pulse synthesis")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized self-checks")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("plan", help="plan, verify and export one schedule")
    _add_problem_args(p)
    _add_output_args(p)

    p = sub.add_parser("simulate", help="replay a schedule JSON file")
    p.add_argument("schedule", type=Path)
    p.add_argument("--theta0", type=float, required=True)
    p.add_argument("--phi0", type=float, default=0.0)
    p.add_argument("--thetas", type=float, default=None)
    p.add_argument("--phis", type=float, default=0.0)
    p.add_argument("--dt", type=float, default=None)
    _add_output_args(p)

    p = sub.add_parser("compare", help="optimal performance of all three shapes")
    _add_problem_args(p, shape=False)

    p = sub.add_parser("sweep", help="performance over a list of lambda values")
    _add_problem_args(p, shape=False)
    p.add_argument("--lambdas", type=float, nargs="+", required=True)
    p.add_argument("--shapes", choices=SHAPES, nargs="+", default=list(SHAPES))
    p.add_argument("--out", type=Path, default=None)

    p = sub.add_parser("encoded", help="run a logical schedule on the two-qubit encoding")
    _add_problem_args(p)
    p.add_argument("--lindblad", type=Path, default=None)
    p.add_argument("--gamma", type=float, default=1.0)
    return parser


def _spec_from_args(args, encoded=False) -> ProblemSpec:
    return ProblemSpec(
        initial=BlochAngles(args.theta0, args.phi0),
        target=BlochAngles(args.thetas, args.phis),
        scheme=args.scheme,
        shape=PulseShape(getattr(args, "shape", "bang")),
        lam=args.lam,
        bound=args.bound,
        encoded=encoded,
        lindblad=str(getattr(args, "lindblad", None) or "") or None,
        dt=args.dt,
    )


def performance_table(closed, numeric) -> str:
    rows = [
        ("t_f", closed.t_f, numeric.t_f),
        ("E", closed.energy, numeric.energy),
        ("J", closed.j_value, numeric.j_value),
        ("t_f*E", closed.te_product, numeric.te_product),
        ("magnitude", closed.magnitude_used, numeric.magnitude_used),
    ]
    lines = [f"{'quantity':<10} {'closed_form':>22} {'numeric':>22}"]
    lines += [f"{name:<10} {a:>22.15g} {b:>22.15g}" for name, a, b in rows]
    lines.append(f"{'clamped':<10} {str(closed.clamped):>22} {str(numeric.clamped):>22}")
    return "\n".join(lines) + "\n"


def _verify(psi0, target_state, sched, dt):
    final, traj = simulate_schedule(psi0, sched)
    f_exact = fidelity_up_to_phase(final, target_state)
    f_rk4 = fidelity_up_to_phase(integrate_schedule_rk4(psi0, sched, dt), target_state)
    return final, traj, f_exact, f_rk4


def cmd_plan(args, out) -> int:
    spec = _spec_from_args(args)
    sched, closed = spec.plan()
    dt = spec.dt if spec.dt is not None else max(sched.t_f, 1.0) * 1e-4
    numeric = evaluate_performance_numeric(sched, spec.lam, dt)
    psi0, psis = state_from_angles(spec.initial), state_from_angles(spec.target)
    final, _, f_exact, f_rk4 = _verify(psi0, psis, sched, spec.dt)
    _, traj = simulate_schedule(psi0, sched, args.samples)

    args.out_dir.mkdir(parents=True, exist_ok=True)
    (args.out_dir / "schedule.json").write_text(sched.to_json(indent=2))
    traj.to_csv(args.out_dir / "trajectory.csv")
    table = performance_table(closed, numeric)
    table += f"{'fidelity':<10} {f_exact:>22.15g} {f_rk4:>22.15g}\n"
    (args.out_dir / "performance.txt").write_text(table)
    out.write(table)
    ok = min(f_exact, f_rk4) >= 1 - FIDELITY_TOL
    if not ok:
        out.write("verification FAILED\n")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_simulate(args, out) -> int:
    try:
        sched = Schedule.from_json(args.schedule.read_text())
    except (OSError, KeyError, TypeError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read schedule: {exc}") from exc
    psi0 = state_from_angles(BlochAngles(args.theta0, args.phi0))
    final, traj = simulate_schedule(psi0, sched, args.samples)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    traj.to_csv(args.out_dir / "trajectory.csv")
    out.write(f"final_state {final[0]:.15g} {final[1]:.15g}\n")
    if args.thetas is None:
        return EXIT_OK
    target = state_from_angles(BlochAngles(args.thetas, args.phis))
    f_exact = fidelity_up_to_phase(final, target)
    f_rk4 = fidelity_up_to_phase(integrate_schedule_rk4(psi0, sched, args.dt), target)
    out.write(f"fidelity {f_exact:.15g} rk4 {f_rk4:.15g}\n")
    return EXIT_OK if min(f_exact, f_rk4) >= 1 - FIDELITY_TOL else EXIT_VERIFY


def cmd_compare(args, out) -> int:
    spec = _spec_from_args(args)
    out.write(f"{'shape':<10} {'t_f':>20} {'E':>20} {'J':>20} {'t_f*E':>20} {'magnitude':>20} clamped\n")
    for shape in SHAPES:
        _, r = spec.plan(shape)
        out.write(f"{shape:<10} {r.t_f:>20.12g} {r.energy:>20.12g} {r.j_value:>20.12g} "
                  f"{r.te_product:>20.12g} {r.magnitude_used:>20.12g} {r.clamped}\n")
    return EXIT_OK


SWEEP_COLUMNS = ("lambda", "shape", "t_f", "E", "J", "te_product", "magnitude", "clamped")


def sweep_rows(spec: ProblemSpec, lambdas, shapes=SHAPES):
    for lam in lambdas:
        if not lam > 0:
            raise ValueError(f"lambda must be positive, got {lam}")
        for shape in shapes:
            _, r = spec.plan(shape, lam)
            yield (lam, shape, r.t_f, r.energy, r.j_value, r.te_product, r.magnitude_used, r.clamped)


def cmd_sweep(args, out) -> int:
    spec = _spec_from_args(args)
    rows = list(sweep_rows(spec, args.lambdas, args.shapes))
    fh = open(args.out, "w", newline="") if args.out else out
    try:
        w = csv.writer(fh)
        w.writerow(SWEEP_COLUMNS)
        for row in rows:
            w.writerow([f"{v:.15g}" if isinstance(v, float) else v for v in row])
    finally:
        if args.out:
            fh.close()
    return EXIT_OK


def cmd_encoded(args, out) -> int:
    spec = _spec_from_args(args, encoded=True)
    if args.lindblad is not None:
        try:
            noise = LindbladSpec.load(args.lindblad)
        except (OSError, KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed Lindblad document: {exc}") from exc
    else:
        noise = LindbladSpec.collective_dephasing(args.gamma)
    sched, _ = spec.plan()
    psi0 = state_from_angles(spec.initial)
    target = state_from_angles(spec.target)
    dt = spec.dt if spec.dt is not None else max(sched.t_f, 1e-12) * 1e-3
    psi4, leak = simulate_encoded(spec.initial, sched, dt)
    f_logical = fidelity_up_to_phase(project_logical(psi4), target)
    rho0 = np.outer(embed_logical(psi0), embed_logical(psi0).conj())
    rho = simulate_master_equation(rho0, sched, noise, dt)
    rho_closed = np.outer(psi4, psi4.conj())
    residual = dfs_residual(noise, seed=args.seed)
    deviation = float(np.max(np.abs(rho - rho_closed)))
    out.write(f"logical_fidelity {f_logical:.15g}\n")
    out.write(f"max_leakage {leak:.3e}\n")
    out.write(f"dfs_residual {residual:.3e}\n")
    out.write(f"open_vs_closed_max_abs {deviation:.3e}\n")
    out.write(f"trace {np.trace(rho).real:.15g}\n")
    return EXIT_OK if f_logical >= 1 - FIDELITY_TOL else EXIT_VERIFY


COMMANDS = {"plan": cmd_plan, "simulate": cmd_simulate, "compare": cmd_compare,
            "sweep": cmd_sweep, "encoded": cmd_encoded}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except (InputError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
