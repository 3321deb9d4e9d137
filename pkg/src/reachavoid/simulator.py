"""Discrete-time simple-motion simulation used to falsify verdicts.

All players move at unit speed with forward-Euler steps. The evader runs
straight at a target point of the plane. Each pursuer follows the
constant-bearing interception course for that straight path, or falls back
to pure pursuit when no interception course exists. This is a
falsification harness, not an optimal-strategy solver. A PursuerWin verdict
survives if no straight run escapes. An EvaderWin verdict is corroborated
by one clean escape toward the oracle witness.
"""
from dataclasses import dataclass, field

import numba
import numpy as np

from ._validation import check_point
from .coalition import BAND, EVADER_WIN, ON_BARRIER, PURSUER_WIN, GameConfig, build_model
from .evasion import auto_extent, escape_margin_supremum
from .exceptions import NonPositiveDt, NonUnitHeading, TargetNotOnPlane
from .geometry import EPS_GEO

RUNNING = "Running"
CAPTURED = "Captured"
ESCAPED = "Escaped"
_STATUS = {0: RUNNING, 1: CAPTURED, 2: ESCAPED}


def capture_tolerance(dt):
    return max(1e-9, 2.0 * dt)


@dataclass(frozen=True)
class SimState:
    time: float
    pursuers: np.ndarray
    evader: np.ndarray
    status: str = RUNNING
    event_time: float = None
    captured_by: int = None
    crossing: np.ndarray = None
    clearance: float = None

    @classmethod
    def initial(cls, config):
        return cls(0.0, np.array(config.pursuers, float), np.array(config.evader, float))


@numba.njit(cache=True)
def _advance(e, P, he, HP, dt, tol, out_e, out_P):
    """One Euler step into ``out_e``/``out_P``.

    Returns ``(code, fraction, index, clearance)``: code 0 running, 1
    captured, 2 escaped. ``fraction`` is the part of ``dt`` elapsed at the
    event.
    """
    n = P.shape[0]
    best = np.inf
    arg = -1
    for k in range(n):
        d = np.sqrt((P[k, 0] - e[0]) ** 2 + (P[k, 1] - e[1]) ** 2 + (P[k, 2] - e[2]) ** 2)
        if d < best:
            best = d
            arg = k
    if best <= tol:
        for c in range(3):
            out_e[c] = e[c]
            for k in range(n):
                out_P[k, c] = P[k, c]
        return 1, 0.0, arg, best
    for c in range(3):
        out_e[c] = e[c] + dt * he[c]
        for k in range(n):
            out_P[k, c] = P[k, c] + dt * HP[k, c]
    frac = 1.0
    if out_e[2] <= 0.0:
        frac = e[2] / (e[2] - out_e[2])
        for c in range(3):
            out_e[c] = e[c] + frac * dt * he[c]
            for k in range(n):
                out_P[k, c] = P[k, c] + frac * dt * HP[k, c]
        out_e[2] = 0.0
    best = np.inf
    arg = -1
    for k in range(n):
        d = np.sqrt((out_P[k, 0] - out_e[0]) ** 2 + (out_P[k, 1] - out_e[1]) ** 2
                    + (out_P[k, 2] - out_e[2]) ** 2)
        if d < best:
            best = d
            arg = k
    if best <= tol:
        return 1, frac, arg, best
    if frac < 1.0 or out_e[2] <= 0.0:
        return 2, frac, -1, best
    return 0, 1.0, -1, best


@numba.njit(cache=True)
def _run(e0, P0, he, HP0, fixed, dt, tol, t_max, record, max_rows):
    n = P0.shape[0]
    e = e0.copy()
    P = P0.copy()
    HP = HP0.copy()
    ne = np.empty(3)
    nP = np.empty_like(P)
    rows = max_rows if record else 1
    traj = np.empty((rows, n + 1, 3))
    times = np.empty(rows)
    count = 0
    t = 0.0
    code = 0
    idx = -1
    clear = np.inf
    while True:
        if record and count < rows:
            times[count] = t
            traj[count, 0] = e
            traj[count, 1:] = P
            count += 1
        if t > t_max:
            break
        for k in range(n):
            if not fixed[k]:
                dx = e[0] - P[k, 0]
                dy = e[1] - P[k, 1]
                dz = e[2] - P[k, 2]
                norm = np.sqrt(dx * dx + dy * dy + dz * dz)
                if norm > 0.0:
                    HP[k, 0] = dx / norm
                    HP[k, 1] = dy / norm
                    HP[k, 2] = dz / norm
        code, frac, idx, clear = _advance(e, P, he, HP, dt, tol, ne, nP)
        t = t + frac * dt
        e[:] = ne
        P[:, :] = nP
        if code != 0:
            if record and count < rows:
                times[count] = t
                traj[count, 0] = e
                traj[count, 1:] = P
                count += 1
            break
    return code, t, idx, clear, e, P, times[:count], traj[:count]


def _check_heading(h, name):
    h = np.asarray(h, dtype=float)
    if abs(np.linalg.norm(h) - 1.0) > 1e-12:
        raise NonUnitHeading(f"{name} heading {h.tolist()} is not unit length")
    return h


def step(state, evader_heading, pursuer_headings, dt):
    """Advance every player by ``dt`` along its unit heading."""
    if not dt > 0:
        raise NonPositiveDt(f"dt must be positive, got {dt}")
    if state.status != RUNNING:
        return state
    he = _check_heading(evader_heading, "evader")
    HP = np.array(pursuer_headings, dtype=float).reshape(-1, 3)
    for k, h in enumerate(HP):
        _check_heading(h, f"pursuer {k}")
    ne = np.empty(3)
    nP = np.empty_like(state.pursuers)
    tol = capture_tolerance(dt)
    code, frac, idx, clear = _advance(state.evader, state.pursuers, he, HP, dt, tol, ne, nP)
    t = state.time + frac * dt
    if code == 1:
        return SimState(t, nP, ne, CAPTURED, t, int(idx), clearance=float(clear))
    if code == 2:
        return SimState(t, nP, ne, ESCAPED, t, crossing=ne.copy(), clearance=float(clear))
    return SimState(t, nP, ne)


def interception_headings(evader, pursuers, direction):
    """Constant-bearing headings against a straight evader run.

    Pursuer ``k`` meets the evader at time ``t* = -|d|^2 / (2 d.u)`` with
    ``d = e - p_k``. That time is positive only when ``d . u < 0``. Returns
    the headings and a mask of pursuers that have such a course.
    """
    e = np.asarray(evader, float)
    u = np.asarray(direction, float)
    P = np.asarray(pursuers, float)
    H = np.zeros_like(P)
    fixed = np.zeros(len(P), dtype=bool)
    for k, p in enumerate(P):
        d = e - p
        du = d @ u
        if du < 0:
            t_star = -(d @ d) / (2.0 * du)
            aim = e + t_star * u - p
            H[k] = aim / np.linalg.norm(aim)
            fixed[k] = True
    return H, fixed


@dataclass(frozen=True)
class RunResult:
    state: SimState
    times: np.ndarray = field(repr=False, default=None)
    trajectory: np.ndarray = field(repr=False, default=None)


def run_straight_line_escape(config, target, dt, record=False):
    """Evader runs straight to ``target``; pursuers intercept or chase."""
    if not dt > 0:
        raise NonPositiveDt(f"dt must be positive, got {dt}")
    target = check_point(target, "target")
    if abs(target[2]) > EPS_GEO:
        raise TargetNotOnPlane(f"target z={target[2]} is not on the target plane")
    if not isinstance(config, GameConfig):
        raise TypeError("config must be a GameConfig")
    e0 = np.array(config.evader, float)
    P0 = np.array(config.pursuers, float)
    span = float(np.linalg.norm(target - e0))
    u = (target - e0) / span
    HP, fixed = interception_headings(e0, P0, u)
    t_max = 10.0 * span
    # the straight run reaches the plane at t = span, so the run ends by then
    max_rows = int(np.ceil(span / dt)) + 3 if record else 1
    code, t, idx, clear, e, P, times, traj = _run(e0, P0, u, HP, fixed, float(dt),
                                                  capture_tolerance(dt), t_max, record, max_rows)
    status = _STATUS[int(code)]
    if status == CAPTURED:
        state = SimState(t, P, e, CAPTURED, t, int(idx), clearance=float(clear))
    elif status == ESCAPED:
        state = SimState(t, P, e, ESCAPED, t, crossing=e.copy(), clearance=float(clear))
    else:
        state = SimState(t, P, e)
    if record:
        return RunResult(state, times, traj)
    return RunResult(state)


@dataclass(frozen=True)
class ValidationReport:
    verdict: str
    passed: bool
    trials: int
    escapes: int
    supremum: float
    counterexample: np.ndarray = None
    clearance: float = None
    note: str = ""


def validate_verdict(config, trials=100, dt=1e-3, seed=0, band=BAND, oracle=None, model=None):
    """Try to falsify the analytic verdict by simulation.

    ``passed`` is None when the run is informational only: OnBarrier
    verdicts, and EvaderWin verdicts whose oracle margin is too small to
    separate from the discretisation error.
    """
    model = model if model is not None else build_model(config.pursuers)
    verdict = model.verdict(config.evader, band)
    report = oracle if oracle is not None else escape_margin_supremum(config.evader, config.pursuers)
    slack = 10.0 * dt
    if verdict.tag == ON_BARRIER:
        return ValidationReport(verdict.tag, None, 0, 0, report.supremum,
                                note="barrier verdicts are not falsifiable")
    if verdict.tag == EVADER_WIN:
        if report.supremum <= slack:
            return ValidationReport(verdict.tag, None, 0, 0, report.supremum,
                                    note="oracle margin below simulation resolution")
        state = run_straight_line_escape(config, report.witness, dt).state
        ok = state.status == ESCAPED and state.clearance >= report.supremum - slack
        return ValidationReport(verdict.tag, bool(ok), 1, int(state.status == ESCAPED),
                                report.supremum,
                                counterexample=None if ok else report.witness,
                                clearance=state.clearance)
    assert verdict.tag == PURSUER_WIN
    rng = np.random.default_rng(seed)
    centre = config.evader[:2]
    # widened oracle squares can be huge; targets stay in the base square
    half = min(report.extent, auto_extent(config.evader, config.pursuers))
    escapes = 0
    worst = None
    counterexample = None
    for _ in range(trials):
        xy = centre + rng.uniform(-half, half, size=2)
        target = np.array([xy[0], xy[1], 0.0])
        state = run_straight_line_escape(config, target, dt).state
        if state.status == ESCAPED and state.clearance > slack:
            escapes += 1
            if counterexample is None:
                counterexample = target
        if state.status == ESCAPED and (worst is None or state.clearance > worst):
            worst = state.clearance
    return ValidationReport(verdict.tag, escapes == 0, trials, escapes, report.supremum,
                            counterexample=counterexample, clearance=worst)
