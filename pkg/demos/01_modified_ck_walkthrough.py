"""Walk through one Modified ck-Secure Sum run with four parties.

Run with ``python demos/01_modified_ck_walkthrough.py``.
"""

from ringsum import replay, run, schedule

# %% The ring in every round: P1 walks one slot towards the tail after each round.
sched = schedule("modified-ck", 4)
for r, ring in enumerate(sched.rounds, 1):
    print(f"round {r}: " + " -> ".join(f"P{q}" for q in ring))
print("exchanges:", sched.transpositions())

# %% Each party splits its input into four segments that sum to the input mod p.
result = run("modified-ck", [1, 2, 3, 4], p=101, seed=7)
for i, row in enumerate(result.segments.d, 1):
    print(f"P{i}: x = {result.segments.inputs[i - 1]:>3}  segments = {row}")

# %% The messages: P1 opens each round with its running total plus one segment.
for ev in result.trace:
    print(f"r{ev.round} hop {ev.hop}: P{ev.sender} -> P{ev.receiver}  carries {ev.payload}")

print("announced sum:", result.announced)
print("messages:", result.messages_sent, "additions:", result.additions_performed)
print("trace replays:", replay(result))
