"""Which coalitions can recover which inputs?

Every coalition's pooled view is a system of linear equations over Z_p, and
a victim's input leaks when it is pinned down by that system. Small cases are
cross-checked against brute-force enumeration.
"""

from ringsum.adversary import (
    analysis_run,
    brute_force_leakage,
    decide_leakage,
    extract_view,
    privacy_matrix,
)

# %% The baseline random-mask protocol: the two neighbours of P2 subtract and are done.
res = analysis_run("baseline", 3, 5, seed=1)
view = extract_view(res, {1, 3})
print("baseline, {P1,P3} vs P2:", decide_leakage(view, 2, 5), "true x2 =", res.segments.inputs[1])

# %% Same question answered by exhaustive enumeration.
print("oracle:", brute_force_leakage(res, {1, 3}, 2, 5))

# %% Privacy matrices at desk scale.
for variant, n in [("baseline", 4), ("k-secure", 4), ("ck", 4), ("ck", 5), ("modified-ck", 4), ("modified-ck", 5)]:
    print(f"\n{variant}, n={n}")
    for row in privacy_matrix(variant, n, 5, seed=0):
        witness = f"{row.witness_coalition} -> P{row.witness_victim}" if row.leaks else "-"
        print(f"  size {row.coalition_size}: leaks={row.leaks!s:<5} "
              f"({row.leaking_pairs}/{row.pairs_checked})  {witness}")

# %% With five parties, P3 is only ever flanked by P1, P2 and P4, so those three
# see every payload entering and leaving it.
res = analysis_run("modified-ck", 5, 5, seed=0)
print("\nmodified-ck n=5, {P1,P2,P4} vs P3:", decide_leakage(extract_view(res, {1, 2, 4}), 3, 5))
