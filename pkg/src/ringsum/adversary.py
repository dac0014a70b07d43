"""Semi-honest collusion analysis.

A coalition pools everything its members see: the payload of every message
they send or receive, their own segments (and the baseline mask when the
initiator colludes), and the public announced sum. Each observation is an
affine equation over the unknown segments. A victim's input is leaked
exactly when the linear functional "sum of the victim's segments" lies in
the row space of those equations.

:func:`decide_leakage` answers that with Gaussian elimination over Z_p.
:func:`brute_force_leakage` answers it independently by re-simulating the
ring for every assignment of the unknown segments.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Iterable

from ringsum.engine import RunResult, run
from ringsum.errors import InconsistentView, InvalidCoalition, TooLargeToEnumerate
from ringsum.field_linalg import rref
from ringsum.ring_math import Modulus, as_modulus, random_elements, rng_stream
from ringsum.topology import INITIATOR, Variant, check_parties, send_order

ENUMERATION_MAX_P = 7
ENUMERATION_MAX_UNKNOWNS = 16
MATRIX_MAX_COALITIONS = 10**5


@dataclass(frozen=True)
class Equation:
    form: tuple[int, ...]
    value: int
    source: str


@dataclass(frozen=True)
class CoalitionView:
    """Pooled view of ``coalition`` as affine equations.

    Column ``(i - 1) * k + (j - 1)`` is segment ``j`` of party ``i``; the
    baseline variant has one extra trailing column for the mask.
    """

    coalition: frozenset[int]
    n: int
    k: int
    has_mask: bool
    equations: tuple[Equation, ...]

    @property
    def nvars(self) -> int:
        return self.n * self.k + int(self.has_mask)

    def column(self, party: int, j: int) -> int:
        return (party - 1) * self.k + (j - 1)

    def victim_functional(self, victim: int) -> list[int]:
        vec = [0] * self.nvars
        for j in range(1, self.k + 1):
            vec[self.column(victim, j)] = 1
        return vec

    def count(self, prefix: str) -> int:
        return sum(1 for eq in self.equations if eq.source.startswith(prefix))


@dataclass(frozen=True)
class LeakageVerdict:
    determined: bool
    value: int | None
    free_dimension: int
    segments_determined: tuple[bool, ...] = ()


def _check_coalition(n: int, coalition: Iterable[int]) -> frozenset[int]:
    members = frozenset(int(q) for q in coalition)
    if not members:
        raise InvalidCoalition("coalition is empty")
    if any(not 1 <= q <= n for q in members):
        raise InvalidCoalition(f"coalition {sorted(members)} names parties outside 1..{n}")
    if len(members) >= n:
        raise InvalidCoalition("coalition contains every party, no victim remains")
    return members


def _check_victim(n: int, members: frozenset[int], victim: int) -> None:
    if not 1 <= victim <= n:
        raise InvalidCoalition(f"victim {victim} outside 1..{n}")
    if victim in members:
        raise InvalidCoalition(f"victim {victim} is a member of the coalition")


def symbolic_payloads(result: RunResult) -> list[list[int]]:
    """Coefficient vector of every trace payload over the segment (and mask) columns."""
    n, k = result.n, result.segments.k
    has_mask = result.mask is not None
    nvars = n * k + int(has_mask)
    forms = []
    running = [0] * nvars
    for r, ring in enumerate(result.schedule.rounds, 1):
        if has_mask and r == 1:
            running[n * k] = 1
        for sender in send_order(ring, INITIATOR):
            running = running.copy()
            running[(sender - 1) * k + (r - 1)] += 1
            forms.append(running)
    return forms


def extract_view(result: RunResult, coalition: Iterable[int]) -> CoalitionView:
    n, k = result.n, result.segments.k
    members = _check_coalition(n, coalition)
    has_mask = result.mask is not None
    nvars = n * k + int(has_mask)
    equations: list[Equation] = []

    forms = symbolic_payloads(result)
    # one equation per (member, incident message): each member's own view, pooled
    for member in sorted(members):
        for ev, form in zip(result.trace, forms):
            if member in (ev.sender, ev.receiver):
                tag = f"msg r{ev.round} h{ev.hop} P{ev.sender}->P{ev.receiver} @P{member}"
                equations.append(Equation(tuple(form), ev.payload, tag))

    for member in sorted(members):
        for j in range(1, k + 1):
            unit = [0] * nvars
            unit[(member - 1) * k + (j - 1)] = 1
            equations.append(Equation(tuple(unit), result.segments.segment(member, j), f"own P{member} d{j}"))

    if has_mask and INITIATOR in members:
        unit = [0] * nvars
        unit[n * k] = 1
        equations.append(Equation(tuple(unit), result.mask, "mask"))

    total = [1] * (n * k) + [0] * int(has_mask)
    equations.append(Equation(tuple(total), result.announced, "announced"))
    return CoalitionView(members, n, k, has_mask, tuple(equations))


def decide_leakage(view: CoalitionView, victim: int, p: Modulus | int) -> LeakageVerdict:
    """Does ``view`` pin down the victim's input? Exact rank test over Z_p."""
    modulus = as_modulus(p)
    _check_victim(view.n, view.coalition, victim)
    ech = rref([eq.form for eq in view.equations], [eq.value for eq in view.equations], modulus.p)
    if not ech.consistent:
        raise InconsistentView(f"view of coalition {sorted(view.coalition)} has no solution")

    residual, value = ech.reduce(view.victim_functional(victim))
    determined = not any(residual)

    seg_known = []
    for j in range(1, view.k + 1):
        unit = [0] * view.nvars
        unit[view.column(victim, j)] = 1
        seg_known.append(not any(ech.reduce(unit)[0]))

    return LeakageVerdict(
        determined=determined,
        value=value if determined else None,
        free_dimension=0 if determined else 1,
        segments_determined=tuple(seg_known),
    )


def unknown_count(result: RunResult, coalition: Iterable[int]) -> int:
    members = frozenset(coalition)
    count = (result.n - len(members)) * result.segments.k
    if result.mask is not None and INITIATOR not in members:
        count += 1
    return count


def brute_force_leakage(
    result: RunResult, coalition: Iterable[int], victim: int, p: Modulus | int
) -> LeakageVerdict:
    """Enumeration oracle for :func:`decide_leakage`.

    Walks the ring hop by hop, branching over every value of each segment the
    coalition does not own, and discards a branch as soon as a payload the
    coalition observed (or the announced sum) disagrees. The victim leaks iff
    every surviving assignment gives it the same total; the search stops at
    the second distinct total. Per-segment diagnostics are not computed.
    """
    modulus = as_modulus(p)
    n = result.n
    members = _check_coalition(n, coalition)
    _check_victim(n, members, victim)
    if modulus.p != result.modulus.p:
        raise ValueError("analysis modulus differs from the run's modulus")
    unknowns = unknown_count(result, members)
    if modulus.p > ENUMERATION_MAX_P or unknowns > ENUMERATION_MAX_UNKNOWNS:
        raise TooLargeToEnumerate(
            f"p={modulus.p}, {unknowns} unknowns (bounds p <= {ENUMERATION_MAX_P}, "
            f"unknowns <= {ENUMERATION_MAX_UNKNOWNS})"
        )
    P = modulus.p

    hops = []  # (round, sender, observed payload or None)
    for ev in result.trace:
        seen = ev.sender in members or ev.receiver in members
        hops.append((ev.round, ev.sender, ev.payload if seen else None))

    masked = result.mask is not None
    mask_choices = [result.mask] if (not masked or INITIATOR in members) else range(P)
    totals: set[int] = set()

    def leaf(running: int, mask: int, victim_total: int) -> None:
        announced = (running - mask) % P if masked else running
        if announced == result.announced:
            totals.add(victim_total)

    def walk(t: int, running: int, mask: int, victim_total: int) -> None:
        if len(totals) > 1:
            return
        if t == len(hops):
            leaf(running, mask, victim_total)
            return
        r, sender, observed = hops[t]
        if sender in members:
            choices: Iterable[int] = (result.segments.segment(sender, r),)
        elif observed is not None:
            choices = ((observed - running) % P,)
        else:
            choices = range(P)
        for seg in choices:
            nxt = (running + seg) % P
            if observed is not None and nxt != observed:
                continue
            if sender == victim:
                walk(t + 1, nxt, mask, (victim_total + seg) % P)
            else:
                walk(t + 1, nxt, mask, victim_total)

    for mask in mask_choices:
        walk(0, mask if masked else 0, mask if masked else 0, 0)

    if not totals:
        raise InconsistentView("no assignment reproduces the coalition's observations")
    determined = len(totals) == 1
    return LeakageVerdict(
        determined=determined,
        value=next(iter(totals)) if determined else None,
        free_dimension=0 if determined else 1,
    )


@dataclass(frozen=True)
class PrivacyRow:
    coalition_size: int
    leaks: bool
    witness_coalition: tuple[int, ...] | None
    witness_victim: int | None
    leaking_pairs: int
    pairs_checked: int
    initiator_leaks: bool
    initiator_witness: tuple[int, ...] | None = None

    def to_dict(self) -> dict:
        return {
            "coalition_size": self.coalition_size,
            "leaks": self.leaks,
            "witness_coalition": list(self.witness_coalition) if self.witness_coalition else None,
            "witness_victim": self.witness_victim,
            "leaking_pairs": self.leaking_pairs,
            "pairs_checked": self.pairs_checked,
            "initiator_leaks": self.initiator_leaks,
            "initiator_witness": list(self.initiator_witness) if self.initiator_witness else None,
        }


def coalition_pairs(n: int, size: int):
    """All (coalition, victim) pairs of the given size in lexicographic order."""
    for coalition in itertools.combinations(range(1, n + 1), size):
        for victim in range(1, n + 1):
            if victim not in coalition:
                yield coalition, victim


def analysis_run(
    variant: Variant | str, n: int, p: Modulus | int | None, seed: int, k: int | None = None
) -> RunResult:
    """Protocol run on seeded random inputs, the object every matrix scan analyzes."""
    variant = Variant.parse(variant)
    modulus = as_modulus(p)
    inputs = random_elements(rng_stream(seed, "inputs"), n, modulus)
    return run(variant, inputs, p=modulus, seed=seed, k=k if variant is Variant.K_SECURE else None)


def scan_result(result: RunResult, sizes: Iterable[int] | None = None) -> list[PrivacyRow]:
    n = result.n
    if sizes is None:
        sizes = range(2, n)
    rows = []
    for size in sizes:
        if math.comb(n, size) > MATRIX_MAX_COALITIONS:
            raise ValueError(f"C({n}, {size}) coalitions exceed the exhaustive scan bound")
        witness = None
        leaking = checked = 0
        initiator_witness = None
        views: dict[tuple[int, ...], CoalitionView] = {}
        for coalition, victim in coalition_pairs(n, size):
            view = views.get(coalition)
            if view is None:
                views.clear()
                view = views[coalition] = extract_view(result, coalition)
            verdict = decide_leakage(view, victim, result.modulus)
            checked += 1
            if verdict.determined:
                if verdict.value != result.segments.inputs[victim - 1]:
                    raise InconsistentView(f"reconstructed a wrong value for P{victim} from {coalition}")
                leaking += 1
                if victim == INITIATOR and initiator_witness is None:
                    initiator_witness = coalition
                if witness is None:
                    witness = (coalition, victim)
        rows.append(
            PrivacyRow(
                coalition_size=size,
                leaks=witness is not None,
                witness_coalition=witness[0] if witness else None,
                witness_victim=witness[1] if witness else None,
                leaking_pairs=leaking,
                pairs_checked=checked,
                initiator_leaks=initiator_witness is not None,
                initiator_witness=initiator_witness,
            )
        )
    return rows


def privacy_matrix(
    variant: Variant | str, n: int, p: Modulus | int | None = None, seed: int = 0, k: int | None = None
) -> list[PrivacyRow]:
    """Scan every coalition of size 2..n-1 against every victim outside it.

    Each row reports whether any pair leaks, with the lexicographically first
    leaking (coalition, victim) as witness.
    """
    variant = Variant.parse(variant)
    check_parties(variant, n)
    return scan_result(analysis_run(variant, n, p, seed, k))


def privacy_report(
    variant: Variant | str,
    n: int,
    p: Modulus | int | None,
    seed: int,
    rows: list[PrivacyRow],
    k: int | None = None,
    **extra,
) -> dict:
    variant = Variant.parse(variant)
    report = {
        "variant": variant.value,
        "n": n,
        "k": variant.segment_count(n, k),
        "p": as_modulus(p).p,
        "seed": seed,
        "rows": [row.to_dict() for row in rows],
    }
    report.update(extra)
    return report


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"
