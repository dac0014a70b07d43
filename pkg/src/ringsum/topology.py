"""Per-round ring arrangements for the four secure-sum variants.

Parties are numbered 1..n and a ring is a tuple of party ids in slot order;
messages flow ``ring[t] -> ring[t + 1]`` and wrap from the last slot to the
first. P1 is always the initiator.
"""

from __future__ import annotations

import enum
import functools
import json
from dataclasses import dataclass
from typing import Sequence

from ringsum.errors import TooFewParties, UnknownParty

RingOrder = tuple[int, ...]
INITIATOR = 1


class Variant(str, enum.Enum):
    BASELINE = "baseline"
    K_SECURE = "k-secure"
    CK_SECURE = "ck"
    MODIFIED_CK = "modified-ck"

    @classmethod
    def parse(cls, value: "Variant | str") -> "Variant":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("_", "-")
        aliases = {"ksecure": "k-secure", "ck-secure": "ck", "cksecure": "ck", "modified": "modified-ck"}
        return cls(aliases.get(key, key))

    @property
    def min_parties(self) -> int:
        return 4 if self in (Variant.CK_SECURE, Variant.MODIFIED_CK) else 3

    def segment_count(self, n: int, k: int | None = None) -> int:
        """Number of segments per party (and of rounds) for ``n`` parties."""
        if self is Variant.BASELINE:
            return 1
        if self is Variant.CK_SECURE:
            return n - 1
        if self is Variant.MODIFIED_CK:
            return n
        return n if k is None else k

    def __str__(self) -> str:
        return self.value


def check_parties(variant: Variant, n: int) -> None:
    if n < variant.min_parties:
        raise TooFewParties(variant, n, variant.min_parties)


def check_ring(ring: Sequence[int]) -> RingOrder:
    ring = tuple(int(q) for q in ring)
    if sorted(ring) != list(range(1, len(ring) + 1)):
        raise ValueError(f"{ring} is not a permutation of 1..{len(ring)}")
    return ring


@dataclass(frozen=True)
class SwapSchedule:
    variant: Variant
    n: int
    rounds: tuple[RingOrder, ...]

    def __post_init__(self):
        for ring in self.rounds:
            if len(ring) != self.n:
                raise ValueError(f"ring {ring} does not have {self.n} slots")
            check_ring(ring)

    def transpositions(self) -> list[tuple[int, int] | None]:
        """For each adjacent round pair, the two parties that swapped slots.

        ``None`` marks an unchanged ring. A change that is not a single
        transposition raises ``ValueError``.
        """
        out: list[tuple[int, int] | None] = []
        for before, after in zip(self.rounds, self.rounds[1:]):
            moved = [t for t in range(self.n) if before[t] != after[t]]
            if not moved:
                out.append(None)
            elif len(moved) == 2 and before[moved[0]] == after[moved[1]] and before[moved[1]] == after[moved[0]]:
                out.append((before[moved[0]], before[moved[1]]))
            else:
                raise ValueError(f"rounds {before} -> {after} differ by more than one transposition")
        return out

    @property
    def exchange_count(self) -> int:
        return sum(1 for swap in self.transpositions() if swap is not None)

    def slot_of(self, party: int) -> list[int]:
        """Slot index (0-based) of ``party`` in every round."""
        return [ring.index(party) for ring in self.rounds]

    def to_dict(self) -> dict:
        return {
            "variant": self.variant.value,
            "n": self.n,
            "rounds": {str(r): list(ring) for r, ring in enumerate(self.rounds, 1)},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> "SwapSchedule":
        rounds = [tuple(data["rounds"][key]) for key in sorted(data["rounds"], key=int)]
        return cls(Variant.parse(data["variant"]), int(data["n"]), tuple(rounds))


def _walk(n: int, walker: int, rounds: int, first_target: int) -> tuple[RingOrder, ...]:
    # After round r the walker trades places with whoever sits in the slot
    # that party (first_target + r - 1) started in.
    ring = list(range(1, n + 1))
    out = [tuple(ring)]
    for r in range(1, rounds):
        target_slot = first_target + r - 2
        here = ring.index(walker)
        ring[here], ring[target_slot] = ring[target_slot], ring[here]
        out.append(tuple(ring))
    return tuple(out)


def schedule(variant: Variant | str, n: int, k: int | None = None) -> SwapSchedule:
    """Ring arrangement of every round for ``variant`` with ``n`` parties.

    ``k`` only matters for the k-Secure variant (default ``n``).
    """
    variant = Variant.parse(variant)
    check_parties(variant, n)
    return _schedule(variant, n, k)


@functools.lru_cache(maxsize=256)
def _schedule(variant: Variant, n: int, k: int | None) -> SwapSchedule:
    rounds = variant.segment_count(n, k)
    if rounds < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if variant is Variant.MODIFIED_CK:
        # P1 walks towards the tail, swapping with P2..Pn after rounds 1..n-1
        rings = _walk(n, INITIATOR, rounds, first_target=2)
    elif variant is Variant.CK_SECURE:
        # P1 stays put, P2 walks, swapping with P3..Pn after rounds 1..n-2
        rings = _walk(n, 2, rounds, first_target=3)
    else:
        rings = (tuple(range(1, n + 1)),) * rounds
    return SwapSchedule(variant, n, rings)


def neighbors_of(ring: Sequence[int], party: int) -> tuple[int, int]:
    """(predecessor, successor) of ``party`` on ``ring``."""
    ring = tuple(ring)
    try:
        t = ring.index(party)
    except ValueError:
        raise UnknownParty(f"party {party} is not on ring {ring}") from None
    return ring[t - 1], ring[(t + 1) % len(ring)]


def send_order(ring: Sequence[int], start: int = INITIATOR) -> RingOrder:
    """The ring rotated so that ``start`` sends first."""
    ring = tuple(ring)
    t = ring.index(start)
    return ring[t:] + ring[:t]


def constant_neighbor_pairs(sched: SwapSchedule, victim: int) -> set[tuple[int, int]]:
    """(pred, succ) pairs that flank ``victim`` in every round of ``sched``."""
    if not 1 <= victim <= sched.n:
        raise UnknownParty(f"party {victim} is not in 1..{sched.n}")
    pairs = [neighbors_of(ring, victim) for ring in sched.rounds]
    return set(pairs[:1]) if all(pair == pairs[0] for pair in pairs) else set()
