"""Exit criteria for the protocol laboratory, one test per criterion.

Each test records a PASS/FAIL line that is printed in the pytest terminal
summary under "acceptance criteria".
"""

import random
import time

import pytest

from ringsum.adversary import (
    analysis_run,
    brute_force_leakage,
    coalition_pairs,
    decide_leakage,
    extract_view,
    privacy_matrix,
)
from ringsum.cli import main
from ringsum.engine import run
from ringsum.ring_math import MERSENNE_61
from ringsum.topology import constant_neighbor_pairs, schedule

RANGES = {
    "baseline": range(3, 11),
    "k-secure": range(3, 11),
    "ck": range(4, 11),
    "modified-ck": range(4, 11),
}
TRIALS = 1000


def test_1_sum_correctness(criterion):
    rng = random.Random(20240101)
    failures = 0
    runs = 0
    start = time.perf_counter()
    for variant, ns in RANGES.items():
        for n in ns:
            for _ in range(TRIALS):
                p = rng.choice((5, 11, MERSENNE_61))
                inputs = [rng.randrange(p) for _ in range(n)]
                k = rng.randint(1, n) if variant == "k-secure" else None
                res = run(variant, inputs, p=p, seed=rng.getrandbits(32), k=k)
                failures += res.announced != sum(inputs) % p
                runs += 1
    elapsed = time.perf_counter() - start
    ok = failures == 0 and elapsed < 10.0
    criterion("1 correctness: announced == sum mod p", ok, f"{runs} runs, {failures} wrong, {elapsed:.2f}s < 10s")
    assert failures == 0
    assert elapsed < 10.0


def test_2_complexity_law(criterion, tmp_path, capsys):
    counts_ok = True
    for n in range(4, 13):
        res = run("modified-ck", [0] * n, seed=n)
        counts_ok &= res.messages_sent == n * n and res.additions_performed == n * n

    out = tmp_path / "complexity.csv"
    assert main(["complexity", "--variant", "modified-ck", "--n-range", "4..12", "--out", str(out)]) == 0
    capsys.readouterr()
    rows = [list(map(int, line.split(","))) for line in out.read_text().splitlines()[1:]]
    csv_ok = [r[0] for r in rows] == list(range(4, 13)) and all(m == a == n * n for n, m, a in rows)
    msgs = [r[1] for r in rows]
    second = [msgs[i + 2] - 2 * msgs[i + 1] + msgs[i] for i in range(len(msgs) - 2)]
    shape_ok = set(second) == {2}

    ok = counts_ok and csv_ok and shape_ok
    criterion("2 complexity: messages == additions == n^2, n in 4..12", ok, f"second differences {sorted(set(second))}")
    assert counts_ok and csv_ok and shape_ok


def test_3_rounds_and_exchanges(criterion):
    got = {n: (len(schedule("modified-ck", n).rounds), schedule("modified-ck", n).exchange_count) for n in range(4, 13)}
    ok = all(got[n] == (n, n - 1) for n in got)
    criterion("3 schedule: (rounds, exchanges) == (n, n-1), n in 4..12", ok)
    assert ok


def test_4_neighbour_change(criterion):
    modified_ok = all(
        constant_neighbor_pairs(schedule("modified-ck", n), v) == set()
        for n in range(4, 13)
        for v in range(1, n + 1)
    )
    fixed_ok = all(
        len(constant_neighbor_pairs(schedule("k-secure", n), v)) == 1
        for n in range(4, 13)
        for v in range(2, n + 1)
    )
    criterion("4 neighbours: none constant under modified-ck; constant under k-secure", modified_ok and fixed_ok)
    assert modified_ok and fixed_ok


def _leaking_sizes(variant, n, seed=0):
    res = analysis_run(variant, n, 5, seed)
    by_size = {}
    for size in range(1, n):
        pairs = list(coalition_pairs(n, size))
        hits = [(c, v) for c, v in pairs if decide_leakage(extract_view(res, c), v, 5).determined]
        by_size[size] = (hits, len(pairs))
    return by_size


def test_5a_baseline_pairs_leak(criterion):
    start = time.perf_counter()
    ok = all(privacy_matrix("baseline", n, 5, seed=0)[0].leaks for n in (3, 4, 5))
    criterion("5a privacy: baseline n in {3,4,5} has a leaking size-2 coalition", ok,
              f"{time.perf_counter() - start:.2f}s")
    assert ok


@pytest.mark.parametrize("n", [4, 5])
def test_5b_modified_ck_only_n_minus_1_leaks(criterion, n):
    start = time.perf_counter()
    by_size = _leaking_sizes("modified-ck", n)
    small = [hit for size in range(1, n - 1) for hit in by_size[size][0]]
    hits, total = by_size[n - 1]
    elapsed = time.perf_counter() - start
    ok = not small and len(hits) == total and elapsed < 120
    detail = f"{len(small)} leaking pairs below size {n - 1}"
    if small:
        detail += f", first {small[0][0]} -> P{small[0][1]}"
    criterion(f"5b privacy: modified-ck n={n} leaks only to size n-1 coalitions", ok,
              f"{detail}; size {n - 1}: {len(hits)}/{total}; {elapsed:.2f}s")
    assert not small, f"coalitions of size <= n-2 recover inputs: {small}"
    assert len(hits) == total
    assert elapsed < 120


@pytest.mark.parametrize("n", [4, 5])
def test_5c_ck_pairs_safe_and_initiator_attack(criterion, n):
    by_size = _leaking_sizes("ck", n)
    pairs_safe = not by_size[2][0]
    findings = []
    for size in range(3, n):
        hits, total = by_size[size]
        on_p1 = [c for c, v in hits if v == 1]
        on_p2 = [c for c, v in hits if v == 2]
        findings.append(f"size {size}: {len(hits)}/{total} leak, P1 attacked by {on_p1[:1] or 'none'}, "
                        f"P2 attacked {len(on_p2)}x")
    criterion(f"5c privacy: ck n={n} no leaking size-2 coalition", pairs_safe, "; ".join(findings))
    assert pairs_safe


def test_6_oracle_equivalence(criterion):
    disagreements = []
    compared = 0
    for variant in RANGES:
        res = analysis_run(variant, 4, 5, seed=6)
        for size in range(1, 4):
            for coalition, victim in coalition_pairs(4, size):
                fast = decide_leakage(extract_view(res, coalition), victim, 5)
                slow = brute_force_leakage(res, coalition, victim, 5)
                compared += 1
                if (fast.determined, fast.value) != (slow.determined, slow.value):
                    disagreements.append((variant, coalition, victim))
    ok = not disagreements
    criterion("6 analyzer == enumeration oracle at n=4, p=5", ok, f"{compared} pairs, {len(disagreements)} disagreements")
    assert ok, disagreements


def test_7_determinism(criterion, tmp_path, capsys):
    commands = [
        ("trace.jsonl", ["run", "--variant", "modified-ck", "--n", "7", "--seed", "11"]),
        ("trace.jsonl.meta.json", None),
        ("complexity.csv", ["complexity", "--variant", "ck", "--n-range", "4..9", "--seed", "11"]),
        ("privacy.json", ["privacy", "--variant", "modified-ck", "--n", "5", "--modulus", "5", "--seed", "11"]),
    ]
    for name in ("first", "second"):
        d = tmp_path / name
        d.mkdir()
        for artifact, argv in commands:
            if argv is not None:
                assert main(argv + ["--out", str(d / artifact)]) == 0
    capsys.readouterr()
    same = {
        artifact: (tmp_path / "first" / artifact).read_bytes() == (tmp_path / "second" / artifact).read_bytes()
        for artifact, _ in commands
    }
    ok = all(same.values())
    criterion("7 determinism: identical flags give byte-identical artifacts", ok, ", ".join(same))
    assert ok
