"""Exact cop numbers by exhaustive search, and why two cops fail.

The solver explores the cop-monotone game: cops may never return to a
vacated vertex, so a robber that reaches vacated ground wins outright.

Run: python demos/06_cop_number.py
"""

from cfgdag import (
    OptimalCops,
    OptimalRobber,
    brute_force_cop_number,
    cfg_from_source,
    play_game,
    two_loop_cfg,
)

for src in ("a; b; c;", "if c { a; } else { b; }", "while c { b; }", "do { a; } while c;"):
    cfg, _ = cfg_from_source(src)
    print(f"{src!r:<28} cop number = {brute_force_cop_number(cfg, 4)}")

cfg, _ = two_loop_cfg()
print(f"two-loop graph{'':<15} cop number = {brute_force_cop_number(cfg, 4)}")

cops = OptimalCops(cfg, 2)
robber = OptimalRobber(cfg, 2, solver=cops.solver)
duel = play_game(cfg, cops, robber, max_rounds=200)
print(f"\ntwo optimal cops vs optimal robber: {duel.outcome} after {duel.rounds()} rounds")
print(f"robber finished at {duel.steps[-1].robber}, "
      f"vacated ground: {sorted(robber.vacated)}")
