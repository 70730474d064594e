"""Play the three-cop pursuit on the two-loop graph.

One cop guards the current loop's entry, one its exit, and the third
chases. A lazy robber starting at vertex 0 gets cornered in whichever
inner cycle it flees to; the tie at vertex 2 picks the cycle.

Run: python demos/05_pursuit.py
"""

from cfgdag import LazyRobber, LoopGuardStrategy, check_cop_monotone, play_game, two_loop_cfg

cfg, forest = two_loop_cfg()

for tie in ("low", "high"):
    trace = play_game(cfg, LoopGuardStrategy(cfg, forest), LazyRobber(cfg, start=0, tie=tie))
    print(f"tie-break {tie!r}:")
    for step in trace.steps:
        cops = ", ".join("-" if x is None else str(x) for x in step.cops)
        print(f"  [{step.note:>2}] cops ({cops})  robber {step.robber}")
    print(f"  outcome: {trace.outcome} ({trace.end_note}), "
          f"monotone: {check_cop_monotone(trace)}\n")
