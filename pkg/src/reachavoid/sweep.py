"""Randomised agreement sweep: analytic verdict vs. oracle vs. simulation."""
import csv
import io
from dataclasses import dataclass

import numpy as np

from .coalition import BAND, EVADER_WIN, ON_BARRIER, PURSUER_WIN, GameConfig, build_model
from .evasion import escape_margin_supremum
from .exceptions import DegenerateConfiguration
from .simulator import validate_verdict

COLUMNS = ("index", "seed", "n", "verdict", "margin", "supremum", "resolved", "agree", "sim_pass")
BOX = 5.0


def random_config(seed, index, pursuer_range=(1, 3)):
    """Config ``index`` of the sweep; its RNG stream depends only on (seed, index)."""
    rng = np.random.default_rng([seed, index])
    lo, hi = pursuer_range
    n = int(rng.integers(lo, hi + 1))
    P = rng.uniform(-BOX, BOX, size=(n, 3))
    e = np.array([rng.uniform(-BOX, BOX), rng.uniform(-BOX, BOX), BOX * (1.0 - rng.random())])
    return GameConfig(P, e)


def agreement(tag, margin, report, band):
    """``"1"``/``"0"``, or ``"na"`` when the oracle is inside the band or not conclusive.

    A positive supremum is a certificate for the evader even when its
    witness sits on the search boundary. A negative one only counts when
    resolved, since capture regions often tighten toward infinity.
    """
    s = report.supremum
    if abs(s) <= band:
        return "na"
    if s > 0:
        clash = tag == PURSUER_WIN or (tag == ON_BARRIER and margin > 0)
        return "0" if clash else "1"
    if not report.resolved:
        return "na"
    clash = tag == EVADER_WIN or (tag == ON_BARRIER and margin < 0)
    return "0" if clash else "1"


def _num(x):
    return format(x, ".17g")


@dataclass(frozen=True)
class SweepRow:
    index: int
    seed: int
    n: int
    verdict: str
    margin: float
    supremum: float
    resolved: bool
    agree: str
    sim_pass: str

    def cells(self):
        return [str(self.index), str(self.seed), str(self.n), self.verdict, _num(self.margin),
                _num(self.supremum), "1" if self.resolved else "0", self.agree, self.sim_pass]


def evaluate(config, seed, index, band=1e-3, trials=100, dt=1e-3, simulate=True, oracle_kwargs=None):
    n = len(config.pursuers)
    report = escape_margin_supremum(config.evader, config.pursuers, **(oracle_kwargs or {}))
    try:
        model = build_model(config.pursuers)
        verdict = model.verdict(config.evader, BAND)
    except DegenerateConfiguration:
        return SweepRow(index, seed, n, "Degenerate", float("nan"), report.supremum,
                        report.resolved, "na", "na")
    sim = "na"
    if simulate:
        res = validate_verdict(config, trials=trials, dt=dt, seed=int(seed) * 100003 + index,
                               oracle=report, model=model)
        sim = "na" if res.passed is None else ("1" if res.passed else "0")
    return SweepRow(index, seed, n, verdict.tag, verdict.margin, report.supremum,
                    report.resolved, agreement(verdict.tag, verdict.margin, report, band), sim)


def sweep(n_configs, pursuer_range=(1, 3), seed=0, band=1e-3, trials=100, dt=1e-3,
          simulate=True, oracle_kwargs=None):
    """Rows in index order; every row is a pure function of (seed, index)."""
    return [evaluate(random_config(seed, k, pursuer_range), seed, k, band, trials, dt,
                     simulate, oracle_kwargs)
            for k in range(n_configs)]


def rows_to_csv(rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in rows:
        writer.writerow(row.cells())
    return buf.getvalue()


def failed(rows):
    return [r for r in rows if r.agree == "0" or r.sim_pass == "0"]
