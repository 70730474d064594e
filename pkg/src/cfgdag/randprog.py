"""Seeded random structured programs for property tests and benchmarks.

The same (seed, size) pair always yields byte-identical source. Size counts
emitted statements (assignments, branches, loops, break/continue/return).
Loop conditions are always labels, so every generated loop has a reachable
exit, and loop bodies open with an assignment so no loop collapses to its
bare condition vertex. continue and return are wrapped in a branch: an
unconditional continue in a do-while body would never reach the condition
again and everything after the loop would be dead.
"""

from __future__ import annotations

import random

_MAX_DEPTH = 10


def _gen_block(rng: random.Random, budget: int, depth: int, in_loop: bool, counter: list[int]) -> tuple[list[str], int]:
    """Emit up to budget statements; returns (lines, statements used)."""
    lines: list[str] = []
    used = 0
    while used < budget:
        remaining = budget - used
        roll = rng.random()
        if depth >= _MAX_DEPTH or remaining < 3:
            kind = "assign"
        elif roll < 0.50:
            kind = "assign"
        elif roll < 0.62:
            kind = "if"
        elif roll < 0.72:
            kind = "ifelse"
        elif roll < 0.86:
            kind = "while"
        elif roll < 0.93:
            kind = "dowhile"
        elif roll < 0.955 and in_loop:
            kind = "break"
        elif roll < 0.975 and in_loop:
            kind = "guarded-continue"
        elif roll < 0.985:
            kind = "guarded-return"
        else:
            kind = "assign"

        indent = "  " * depth
        if kind == "assign":
            counter[0] += 1
            lines.append(f"{indent}a{counter[0]};")
            used += 1
        elif kind == "break":
            lines.append(f"{indent}break;")
            used += 1
        elif kind in ("guarded-continue", "guarded-return"):
            counter[0] += 1
            jump = "continue" if kind == "guarded-continue" else "return"
            lines.append(f"{indent}if c{counter[0]} {{")
            lines.append(f"{indent}  {jump};")
            lines.append(f"{indent}}}")
            used += 2
        elif kind in ("if", "ifelse"):
            counter[0] += 1
            cond = f"c{counter[0]}"
            inner_budget = 1 + rng.randrange(min(remaining - 1, 12))
            body, body_used = _gen_block(rng, inner_budget, depth + 1, in_loop, counter)
            used += 1 + body_used
            lines.append(f"{indent}if {cond} {{")
            lines.extend(body)
            if kind == "ifelse" and used < budget:
                else_budget = 1 + rng.randrange(min(budget - used, 8))
                else_body, else_used = _gen_block(rng, else_budget, depth + 1, in_loop, counter)
                used += else_used
                lines.append(f"{indent}}} else {{")
                lines.extend(else_body)
            lines.append(f"{indent}}}")
        else:  # while / dowhile
            counter[0] += 1
            cond = f"c{counter[0]}"
            inner_budget = rng.randrange(min(remaining - 2, 14))
            counter[0] += 1
            opener = f"a{counter[0]};"  # loop bodies start with a real statement
            body, body_used = _gen_block(rng, inner_budget, depth + 1, True, counter)
            used += 2 + body_used
            if kind == "while":
                lines.append(f"{indent}while {cond} {{")
                lines.append(f"{indent}  {opener}")
                lines.extend(body)
                lines.append(f"{indent}}}")
            else:
                lines.append(f"{indent}do {{")
                lines.append(f"{indent}  {opener}")
                lines.extend(body)
                lines.append(f"{indent}}} while {cond};")
    return lines, used


def generate_random_program(seed: int, size: int) -> str:
    """Deterministic random program with exactly max(size, 1) statements."""
    rng = random.Random(seed)
    counter = [0]
    lines, _ = _gen_block(rng, max(size, 1), 0, False, counter)
    return "\n".join(lines) + "\n"
