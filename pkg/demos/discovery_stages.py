"""Discovery, one stage at a time.

discover() runs the whole pipeline; this script runs each stage by hand
on a toy loan process to show what flows between them.
"""

from pmcore.alphappp import (
    ARTIFICIAL_END,
    ARTIFICIAL_START,
    assemble_net,
    balance_filter,
    build_dfg,
    discover,
    filter_dfg,
    generate_candidates,
    parse_variant,
    replay_filter,
)
from pmcore.eventlog import ActivityProjection, add_artificial_acts
from pmcore.petri import to_json, to_pnml

# A projection is just an alphabet plus weighted variants; normally it
# comes from project(parse_xes(...)), but building one directly keeps
# the example self-contained.
#   0=register  1=check  2=approve  3=reject  4=archive
proj = ActivityProjection(
    alphabet=["register", "check", "approve", "reject", "archive"],
    variants=[
        ((0, 1, 2, 4), 40),   # the happy path
        ((0, 1, 3, 4), 25),
        ((0, 1, 1, 2, 4), 6),  # re-check loop
        ((0, 2, 4), 1),        # noise: skipped check
    ],
)
cfg = parse_variant("0.5|b0.4|t0.1|r0.9")
print(f"config: {cfg}\n")


def show(label, value):
    print(f"--- {label}")
    print(value)
    print()


wrapped = add_artificial_acts(proj, ARTIFICIAL_START, ARTIFICIAL_END)
names = wrapped.alphabet
show("alphabet after wrapping", names)

dfg = build_dfg(wrapped)
show(
    "directly-follows counts",
    {(names[a], names[b]): n for (a, b), n in sorted(dfg.df_counts.items())},
)

# Relations rarer than df_significance times the mean are dropped; the
# skipped-check edge (count 1) and the rare re-check self-loop die here.
filtered = filter_dfg(dfg, cfg.df_significance)
dropped = dfg.df_counts.keys() - filtered.df_counts.keys()
show("relations dropped", {(names[a], names[b]) for a, b in sorted(dropped)})

cands = generate_candidates(filtered, cfg.max_candidate_set_size)
print(f"--- {len(cands)} candidate places")
for c in cands:
    ins = "{" + ",".join(names[i] for i in c.in_set) + "}"
    outs = "{" + ",".join(names[i] for i in c.out_set) + "}"
    print(f"  {ins} -> {outs}")
print()

balanced = balance_filter(cands, filtered, cfg.balance_thresh)
print(f"--- balance filter: {len(cands)} -> {len(balanced)}")
kept = replay_filter(balanced, wrapped, cfg.fitness_thresh, cfg.replay_thresh)
print(f"--- replay filter:  {len(balanced)} -> {len(kept)}")
print()

apn = assemble_net(kept, wrapped.alphabet)
assert apn.validate() == []
show("net as JSON", to_json(apn))

# The one-call form gives the identical net.
assert to_json(discover(proj, cfg)) == to_json(apn)
print("discover() reproduces the staged result byte for byte\n")

print("--- net as PNML")
print(to_pnml(apn))
