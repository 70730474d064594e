"""Loop elements: entries, exits, the inside/belongs split, and nesting.

Run: python demos/02_loop_structure.py
"""

from cfgdag import cfg_from_source, compute_dominators, loop_regions

SOURCE = """\
init;
while outer {
  a;
  while inner {
    b;
    if flag { break; }
  }
  c;
}
done;
"""

cfg, forest = cfg_from_source(SOURCE)
loop_regions(cfg, forest, compute_dominators(cfg))

print("program:")
print(SOURCE)


def show(elem, depth=0):
    pad = "  " * depth
    names = lambda vs: "{" + ", ".join(cfg.labels[v] for v in sorted(vs)) + "}"
    print(f"{pad}loop entry={cfg.labels[elem.entry]} exit={cfg.labels[elem.exit]}")
    print(f"{pad}  inside  = {names(elem.inside)}")
    print(f"{pad}  belongs = {names(elem.belongs)}")
    for child in elem.children:
        show(child, depth + 1)


for top in forest.phi.children:
    show(top)
print("root owns:", sorted(cfg.labels[v] for v in forest.phi.belongs))
