import pytest

from cfgdag import (
    BACKWARD,
    FORWARD,
    LoopForest,
    build_cfg,
    cfg_from_source,
    check_cycle_corollary,
    classify_edges,
    compute_dominators,
    generate_random_program,
    loop_regions,
    parse_program,
    recover_loop_forest,
    simple_cycles,
    two_loop_cfg,
)
from helpers import dominators_by_paths, pipeline


def by_label(cfg):
    return {cfg.labels[v]: v for v in cfg.vertex_ids()}


# -- dominators ---------------------------------------------------------------


def test_chain_dominators():
    cfg, _ = cfg_from_source("a;")
    dom = compute_dominators(cfg)
    ids = by_label(cfg)
    assert dom.idom[ids["a"]] == ids["start"]
    assert dom.idom[ids["stop"]] == ids["a"]


def test_diamond_dominators():
    cfg, _ = cfg_from_source("if c { a; } else { b; } ")
    dom = compute_dominators(cfg)
    ids = by_label(cfg)
    assert dom.idom[ids["stop"]] == ids["c"]  # neither branch dominates the join
    assert dom.dominates(ids["c"], ids["a"])
    assert not dom.dominates(ids["a"], ids["stop"])


def test_while_condition_dominates_body_and_exit():
    cfg, _ = cfg_from_source("while c { b; }")
    dom = compute_dominators(cfg)
    ids = by_label(cfg)
    assert dom.dominates(ids["c"], ids["b"])
    assert dom.dominates(ids["c"], ids["exit(c)"])


@pytest.mark.parametrize("seed", range(25))
def test_dominators_match_path_enumeration_oracle(seed):
    cfg, _ = cfg_from_source(generate_random_program(seed, 9))
    if cfg.n_vertices > 14:
        pytest.skip("oracle too slow")
    dom = compute_dominators(cfg)
    oracle = dominators_by_paths(cfg)
    for v in cfg.vertex_ids():
        if oracle[v] is None:
            assert v == cfg.stop and not cfg.stop_reachable
            continue
        for u in cfg.vertex_ids():
            if oracle[u] is not None:
                assert dom.dominates(u, v) == (u in oracle[v]), (u, v)


def test_unreachable_vertex_rejected():
    ast = parse_program("a; return; b;")
    cfg, _ = build_cfg(ast)  # not pruned
    with pytest.raises(ValueError, match="prune"):
        compute_dominators(cfg)


def test_post_dominators_ignore_return_edges():
    cfg, forest, dom = pipeline("while c { if x { return; } a; } d;")
    ids = by_label(cfg)
    (elem,) = forest.elements
    # ignoring the return edge, the loop exit post-dominates the whole inside
    for v in elem.inside:
        assert dom.post_dominates(elem.exit, v), cfg.labels[v]
    assert dom.post_dominates(ids["stop"], ids["a"])


# -- regions ------------------------------------------------------------------


def test_loop_free_program_belongs_to_root():
    cfg, forest, _ = pipeline("a; if c { b; } d;")
    assert forest.elements == []
    assert forest.phi.belongs == set(cfg.vertex_ids())


def test_while_regions():
    cfg, forest, _ = pipeline("while c { b; }")
    ids = by_label(cfg)
    (elem,) = forest.elements
    assert elem.inside == {ids["c"], ids["b"]}
    assert elem.belongs == {ids["c"], ids["b"]}
    assert forest.phi.belongs == {ids["start"], ids["exit(c)"], ids["stop"]}


def test_entry_inside_exit_outside():
    for seed in range(30):
        cfg, forest, _ = pipeline(generate_random_program(seed, 60))
        for elem in forest.elements:
            assert elem.entry in elem.inside
            assert elem.exit is None or elem.exit not in elem.inside


def test_belongs_partition():
    for seed in range(40):
        cfg, forest, _ = pipeline(generate_random_program(seed, 80))
        sizes = len(forest.phi.belongs) + sum(len(e.belongs) for e in forest.elements)
        assert sizes == cfg.n_vertices


def test_nesting_iff_exit_in_parent_belongs():
    for seed in range(30):
        _, forest, _ = pipeline(generate_random_program(seed, 80))
        for elem in forest.elements:
            if elem.exit is not None:
                assert elem.exit in elem.parent.belongs


def test_do_while_entry_is_first_body_vertex():
    cfg, forest, _ = pipeline("do { a; b; } while c;")
    ids = by_label(cfg)
    (elem,) = forest.elements
    assert elem.entry == ids["a"]
    assert elem.inside == {ids["a"], ids["b"], ids["c"]}


def test_do_while_opening_with_loop_gets_skip_entry():
    cfg, forest, _ = pipeline("do { while c { b; } a; } while d;")
    ids = by_label(cfg)
    outer, inner = forest.elements
    assert outer.entry == ids["skip"]
    assert inner.entry == ids["c"]
    assert inner.parent is outer
    entries = [e.entry for e in forest.elements]
    assert len(entries) == len(set(entries))


def test_stop_belongs_to_root_even_with_returns_inside_loops():
    cfg, forest, _ = pipeline("while c { if x { return; } a; }")
    assert cfg.stop in forest.phi.belongs


def test_syntactic_regions_equal_dominator_regions():
    for seed in range(60):
        src = generate_random_program(seed, 50)
        cfg, forest = cfg_from_source(src)
        syntactic = loop_regions(cfg, forest.restricted_to(cfg))
        reference = loop_regions(cfg, forest, compute_dominators(cfg))
        assert len(syntactic.elements) == len(reference.elements)
        for a, b in zip(syntactic.elements, reference.elements):
            assert (a.entry, a.exit) == (b.entry, b.exit)
            assert a.inside == b.inside
            assert a.belongs == b.belongs
        assert syntactic.phi.belongs == reference.phi.belongs


# -- edge classification --------------------------------------------------------


def test_while_backward_edge():
    cfg, forest, dom = pipeline("while c { b; }")
    ids = by_label(cfg)
    classes = classify_edges(cfg, forest, dom)
    assert classes[(ids["b"], ids["c"])] == BACKWARD
    backs = [e for e, c in classes.items() if c == BACKWARD]
    assert backs == [(ids["b"], ids["c"])]


def test_loop_free_has_no_backward_edges():
    cfg, forest, dom = pipeline("a; if c { b; } d;")
    classes = classify_edges(cfg, forest, dom)
    assert set(classes.values()) <= {FORWARD}


def test_classification_cross_check_runs_on_random_programs():
    for seed in range(50):
        cfg, forest, dom = pipeline(generate_random_program(seed, 70))
        classes = classify_edges(cfg, forest, dom)  # raises on disagreement
        assert len(classes) == cfg.n_edges


def test_removing_backward_edges_leaves_acyclic_graph():
    for seed in range(40):
        cfg, forest, dom = pipeline(generate_random_program(seed, 60))
        classes = classify_edges(cfg, forest, dom)
        succ = {v: [] for v in cfg.vertex_ids()}
        for (u, v), cls in classes.items():
            if cls == FORWARD:
                succ[u].append(v)
        # Kahn
        indeg = {v: 0 for v in succ}
        for u in succ:
            for v in succ[u]:
                indeg[v] += 1
        ready = [v for v, d in indeg.items() if d == 0]
        seen = 0
        while ready:
            v = ready.pop()
            seen += 1
            for w in succ[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    ready.append(w)
        assert seen == cfg.n_vertices, seed


def test_fixture_backward_edges():
    cfg, forest = two_loop_cfg()
    classes = classify_edges(cfg, forest, compute_dominators(cfg))
    backs = {e for e, c in classes.items() if c == BACKWARD}
    assert backs == {(7, 5), (11, 9), (8, 1), (12, 1)}


def test_fixture_regions():
    _, forest = two_loop_cfg()
    outer, left, right = forest.elements
    assert left.belongs == {5, 6, 7}
    assert right.belongs == {9, 10, 11}
    assert outer.belongs >= {1, 2, 8, 12}


# -- cycles ---------------------------------------------------------------------


def test_cycle_corollary_on_while():
    cfg, forest, _ = pipeline("while c { b; }")
    assert check_cycle_corollary(cfg, forest) == []
    cycles = simple_cycles(cfg)
    ids = by_label(cfg)
    assert [sorted(c) for c in cycles] == [sorted([ids["c"], ids["b"]])]


def test_cycle_corollary_on_fixture():
    cfg, forest = two_loop_cfg()
    assert check_cycle_corollary(cfg, forest, limit=14) == []
    cycles = {tuple(sorted(c)) for c in simple_cycles(cfg, limit=14)}
    assert (5, 6, 7) in cycles


def test_cycle_corollary_on_nested_loops():
    cfg, forest, _ = pipeline("while c1 { a; while c2 { b; } }")
    assert check_cycle_corollary(cfg, forest) == []


def test_cycle_corollary_flags_forged_forest():
    cfg, forest, _ = pipeline("while c { b; }")
    (elem,) = forest.elements
    real_entry = elem.entry
    elem.entry = elem.exit  # forge: the entry is no longer on the cycle
    elem.inside = {real_entry, *elem.inside}
    violations = check_cycle_corollary(cfg, forest)
    assert violations


# -- forest io and recovery -------------------------------------------------------


def test_forest_json_round_trip():
    cfg, forest, _ = pipeline("while c1 { while c2 { a; } b; } d;")
    data = forest.to_json_dict()
    again = LoopForest.from_json_dict(data)
    assert again.to_json_dict() == data
    assert [e.entry for e in again.elements] == [e.entry for e in forest.elements]


def test_recover_loop_forest_from_fixture_graph():
    cfg, forest = two_loop_cfg()
    dom = compute_dominators(cfg)
    recovered = recover_loop_forest(cfg, dom)
    got = {(e.entry, e.exit) for e in recovered.elements}
    want = {(e.entry, e.exit) for e in forest.elements}
    assert got == want
    loop_regions(cfg, recovered, dom)
    for a in forest.elements:
        b = next(e for e in recovered.elements if e.entry == a.entry)
        assert a.inside == b.inside


def test_recover_matches_builder_on_random_programs():
    for seed in range(30):
        cfg, forest, dom = pipeline(generate_random_program(seed, 50))
        recovered = recover_loop_forest(cfg, dom)
        got = {(e.entry, e.exit) for e in recovered.elements}
        want = {(e.entry, e.exit) for e in forest.elements if any(
            cls == BACKWARD for (u, v), cls in classify_edges(cfg, forest).items() if v == e.entry
        )}
        assert got == want, seed
