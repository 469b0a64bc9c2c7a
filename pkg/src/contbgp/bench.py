"""Benchmark harness: check an evaluator against the oracle, then time it alone."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterable, List, Optional

from .model import Query, Sign, UpdateMessage
from .oracle import SnapshotOracleState, oracle_step
from .session import Mode, Session, Strictness


@dataclass
class BenchReport:
    mode: str
    updates: int
    repeat: int
    matched: bool
    mismatch_time: Optional[int]
    seconds: float
    updates_per_sec: float
    peak_state_elements: int

    def lines(self) -> List[str]:
        rows = [
            ("status", "MATCH" if self.matched else f"MISMATCH\t{self.mismatch_time}"),
            ("mode", self.mode),
            ("updates", str(self.updates)),
            ("repeat", str(self.repeat)),
            ("seconds", f"{self.seconds:.6f}"),
            ("updates_per_sec", f"{self.updates_per_sec:.1f}"),
            ("peak_state_elements", str(self.peak_state_elements)),
        ]
        return [f"{k}\t{v}\n" for k, v in rows]


def check_against_oracle(q: Query, updates: Iterable[UpdateMessage], mode: Mode = Mode.AUTO,
                         strictness: Strictness = Strictness.STRICT):
    """Per-step delta comparison. Returns ``(first mismatch time or None, peak state)``."""
    s = Session(q, mode, strictness)
    ref = SnapshotOracleState.start(q)
    peak = s.measure_state()
    for u in updates:
        deltas = s.feed(u)
        pos, neg = oracle_step(q, u, ref, strict=strictness is Strictness.STRICT)
        got_pos = {d.answer for d in deltas if d.sign is Sign.POSITIVE}
        got_neg = {d.answer for d in deltas if d.sign is Sign.NEGATIVE}
        if got_pos != pos or got_neg != neg or len(deltas) != len(pos) + len(neg):
            return u.time, peak
        peak = max(peak, s.measure_state())
    return None, peak


def run_bench(q: Query, updates: Iterable[UpdateMessage], mode: Mode = Mode.AUTO,
              repeat: int = 1, strictness: Strictness = Strictness.STRICT,
              verify: bool = True) -> BenchReport:
    updates = list(updates)
    mismatch, peak = (None, 0)
    if verify:
        mismatch, peak = check_against_oracle(q, updates, mode, strictness)
    total = 0.0
    resolved = Mode(mode)
    for _ in range(max(1, repeat)):
        s = Session(q, mode, strictness)
        resolved = s.mode
        feed = s.feed
        t0 = time.perf_counter()
        for u in updates:
            feed(u)
        total += time.perf_counter() - t0
        if not verify:
            peak = max(peak, s.measure_state())
    n = len(updates) * max(1, repeat)
    return BenchReport(
        mode=resolved.value,
        updates=len(updates),
        repeat=max(1, repeat),
        matched=mismatch is None,
        mismatch_time=mismatch,
        seconds=total,
        updates_per_sec=n / total if total > 0 else float("inf"),
        peak_state_elements=peak,
    )
