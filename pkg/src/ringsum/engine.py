"""Round-based execution of a swap schedule with full message tracing.

Every round starts at P1, which forwards its running total plus its own
segment for that round; each following party adds its segment for the
round and passes the result on, and the last hop lands back at P1. The
value P1 receives at the end of the last round is the announced sum.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from ringsum.errors import DimensionMismatch
from ringsum.ring_math import (
    Modulus,
    SegmentMatrix,
    as_modulus,
    random_elements,
    rng_stream,
    segment_inputs,
)
from ringsum.topology import INITIATOR, SwapSchedule, Variant, check_parties, schedule, send_order

logger = logging.getLogger(__name__)

TRACE_FIELDS = ("round", "hop", "sender", "receiver", "payload")


@dataclass(frozen=True)
class TraceEvent:
    round: int
    hop: int
    sender: int
    receiver: int
    payload: int

    def to_json(self) -> str:
        return json.dumps({name: getattr(self, name) for name in TRACE_FIELDS})


@dataclass(frozen=True)
class RunResult:
    announced: int
    trace: tuple[TraceEvent, ...]
    messages_sent: int
    additions_performed: int
    rounds_executed: int
    schedule: SwapSchedule
    segments: SegmentMatrix
    seed: int
    mask: int | None = None

    @property
    def variant(self) -> Variant:
        return self.schedule.variant

    @property
    def n(self) -> int:
        return self.schedule.n

    @property
    def modulus(self) -> Modulus:
        return self.segments.modulus

    def events_in_round(self, r: int) -> list[TraceEvent]:
        return [ev for ev in self.trace if ev.round == r]


def _execute(sched: SwapSchedule, segments: SegmentMatrix, mask: int | None):
    p = segments.modulus.p
    d = segments.d
    trace: list[TraceEvent] = []
    additions = 0
    total = 0
    for r, ring in enumerate(sched.rounds, 1):
        order = send_order(ring, INITIATOR)
        running = total
        if mask is not None and r == 1:
            running = mask
        for hop, sender in enumerate(order, 1):
            running = (running + d[sender - 1][r - 1]) % p
            additions += 1
            trace.append(TraceEvent(r, hop, sender, order[hop % len(order)], running))
        total = running
    if mask is not None:
        total = (total - mask) % p
        additions += 1
    return total, trace, additions


def run(
    variant: Variant | str,
    inputs: Sequence[int],
    p: Modulus | int | None = None,
    seed: int = 0,
    k: int | None = None,
) -> RunResult:
    """Execute one protocol run over ``inputs`` (party ``i + 1`` holds ``inputs[i]``).

    ``k`` sets the segment count of the k-Secure variant and must be left
    unset (or match) for the others, whose segment count is fixed by ``n``.
    """
    variant = Variant.parse(variant)
    modulus = as_modulus(p)
    n = len(inputs)
    check_parties(variant, n)
    seg_count = variant.segment_count(n, k)
    if k is not None and k != seg_count:
        raise DimensionMismatch(f"{variant} with n={n} uses k={seg_count}, got k={k}")
    sched = schedule(variant, n, seg_count)
    segments = segment_inputs(inputs, seg_count, modulus, seed)
    mask = None
    if variant is Variant.BASELINE:
        (mask,) = random_elements(rng_stream(seed, "mask"), 1, modulus)
    announced, trace, additions = _execute(sched, segments, mask)
    return RunResult(
        announced=announced,
        trace=tuple(trace),
        messages_sent=len(trace),
        additions_performed=additions,
        rounds_executed=len(sched.rounds),
        schedule=sched,
        segments=segments,
        seed=seed,
        mask=mask,
    )


def first_mismatch(result: RunResult) -> int | None:
    """Index of the first trace event that disagrees with a fresh re-execution."""
    try:
        announced, expected, additions = _execute(result.schedule, result.segments, result.mask)
    except (ValueError, IndexError):
        return 0
    for idx, (got, want) in enumerate(zip(result.trace, expected)):
        if got != want:
            return idx
    if len(result.trace) != len(expected):
        return min(len(result.trace), len(expected))
    if result.announced != announced or result.messages_sent != len(expected):
        return len(expected)
    if result.additions_performed != additions:
        return len(expected)
    return None


def replay(result: RunResult) -> bool:
    """Re-run every hop from the segments and schedule and compare with the trace."""
    idx = first_mismatch(result)
    if idx is not None:
        ev = result.trace[idx] if idx < len(result.trace) else None
        logger.info("trace mismatch at event %d: %s", idx, ev)
        return False
    return True


def complexity_table(
    variant: Variant | str,
    n_range: Iterable[int],
    k: int | None = None,
    p: Modulus | int | None = None,
    seed: int = 0,
) -> list[tuple[int, int, int]]:
    """(n, messages, additions) measured from actual runs on zero inputs."""
    variant = Variant.parse(variant)
    rows = []
    for n in n_range:
        res = run(variant, [0] * n, p=p, seed=seed, k=k if variant is Variant.K_SECURE else None)
        rows.append((n, res.messages_sent, res.additions_performed))
    return rows


def trace_jsonl(trace: Iterable[TraceEvent]) -> str:
    return "".join(ev.to_json() + "\n" for ev in trace)


def write_trace(trace: Iterable[TraceEvent], path: str | Path) -> None:
    Path(path).write_text(trace_jsonl(trace))


def read_trace(path: str | Path) -> tuple[TraceEvent, ...]:
    events = []
    for line in Path(path).read_text().splitlines():
        if line.strip():
            events.append(TraceEvent(**json.loads(line)))
    return tuple(events)


def complexity_csv(rows: Iterable[tuple[int, int, int]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "messages", "additions"])
    writer.writerows(rows)
    return buf.getvalue()
