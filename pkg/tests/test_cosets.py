import random

import pytest

from treecert.cosets import (
    CapExceeded,
    DepthExceedsChain,
    IndexChain,
    NotASubgroup,
    NotInGroup,
    PermGroup,
    WrongIndex,
    build_coset_tree,
    chain_4_to_3,
    core,
    coset_action,
    format_perm,
    group_order,
    kernel_at_depth,
    parse_chain_file,
    parse_group_file,
    parse_perm,
    perm_identity,
    perm_inv,
    perm_mul,
    refine_index4,
    small_generating_set,
    tree_action,
)


def sym4():
    return PermGroup(4, [parse_perm("(0 1)", 4), parse_perm("(0 1 2 3)", 4)])


def alt4():
    return PermGroup(4, [parse_perm("(0 1 2)", 4), parse_perm("(1 2 3)", 4)])


def wreath_c4():
    """C4 wr C4 on 16 leaves: depth-2 truncation of the 4-ary rooted tree
    automorphisms generated by rotations."""
    rho = tuple(((i // 4 + 1) % 4) * 4 + (i % 4) for i in range(16))
    tau = tuple((i // 4) * 4 + ((i % 4 + 1) % 4) if i < 4 else i for i in range(16))
    return PermGroup(16, [rho, tau])


def wreath_level_chain():
    """W > (level-1 stabiliser) > leaf stabilisers, all steps of index 4."""
    W = wreath_c4()
    els = sorted(W.elements())
    groups = [W]
    sub = [x for x in els if set(x[0:4]) == {0, 1, 2, 3}]
    groups.append(PermGroup(16, small_generating_set(16, sub)))
    conds = []
    for leaf in (0, 4, 8, 12):
        conds.append(leaf)
        sub = [x for x in sub if all(x[l] == l for l in conds)]
        groups.append(PermGroup(16, small_generating_set(16, sub)))
    return IndexChain(groups).removed_repeats()


def test_perm_parsing():
    p = parse_perm("(0 1 2)(3 4)")
    assert p == (1, 2, 0, 4, 3)
    assert parse_perm(format_perm(p)) == p
    assert parse_perm("()", 3) == (0, 1, 2)
    with pytest.raises(ValueError):
        parse_perm("(0 1)(1 2)")


def test_group_order_examples():
    assert group_order(sym4()) == 24
    assert group_order(alt4()) == 12
    assert group_order(PermGroup.trivial(4)) == 1
    with pytest.raises(CapExceeded):
        PermGroup(12, [parse_perm("(0 1)", 12), parse_perm(f"({' '.join(map(str, range(12)))})", 12)], cap=1000).order()


def test_coset_action_examples():
    g = sym4()
    s3 = g.subgroup([parse_perm("(1 2)", 4), parse_perm("(1 2 3)", 4)])
    act = coset_action(g, s3)
    assert act.index == 4
    assert act.image.order() == 24
    assert act.kernel.order() == 1
    c4 = PermGroup(4, [parse_perm("(0 1 2 3)", 4)])
    act2 = coset_action(c4, PermGroup.trivial(4))
    assert act2.index == 4 and act2.image.order() == 4
    a4 = alt4()
    act3 = coset_action(a4, a4.subgroup([parse_perm("(0 1 2)", 4)]))
    assert act3.index == 4 and act3.image.order() == 12
    with pytest.raises(NotASubgroup):
        coset_action(a4, PermGroup(4, [parse_perm("(0 1)", 4)]))


def test_coset_action_image_transitive():
    g = sym4()
    s3 = g.subgroup([parse_perm("(1 2)", 4), parse_perm("(1 2 3)", 4)])
    act = coset_action(g, s3)
    # transitive image: single orbit of 0
    orbit = {0}
    frontier = [0]
    while frontier:
        pt = frontier.pop()
        for gen in act.image.generators:
            if gen[pt] not in orbit:
                orbit.add(gen[pt])
                frontier.append(gen[pt])
    assert orbit == set(range(act.index))


def _assert_chain_valid(chain, expect_indices=None):
    for upper, lower in zip(chain.subgroups, chain.subgroups[1:]):
        assert lower.is_subgroup_of(upper)
    if expect_indices is not None:
        assert chain.indices == expect_indices


def test_refine_index4_sym4():
    g = sym4()
    s3 = g.subgroup([parse_perm("(1 2)", 4), parse_perm("(1 2 3)", 4)])
    chain = refine_index4(g, s3)
    _assert_chain_valid(chain, [2, 3, 2, 2])
    k = core(g, s3)
    assert chain.subgroups[-1].elements() == k.elements()
    # product of step indices equals [G : core]
    prod = 1
    for i in chain.indices:
        prod *= i
    assert prod == g.order() // k.order()


def test_refine_index4_alt4():
    g = alt4()
    c3 = g.subgroup([parse_perm("(0 1 2)", 4)])
    chain = refine_index4(g, c3)
    _assert_chain_valid(chain, [3, 2, 2])
    assert chain.subgroups[-1].order() == 1  # core of C3 in A4 is trivial


def test_refine_index4_c4():
    c4 = PermGroup(4, [parse_perm("(0 1 2 3)", 4)])
    chain = refine_index4(c4, PermGroup.trivial(4))
    _assert_chain_valid(chain, [2, 2])


def test_refine_index4_dihedral():
    # D4 acting on itself by cosets of a reflection: image order 8 case
    d4 = PermGroup(4, [parse_perm("(0 1 2 3)", 4), parse_perm("(0 2)", 4)])
    refl = d4.subgroup([parse_perm("(0 2)", 4)])
    assert d4.order() == 8
    chain = refine_index4(d4, refl)
    _assert_chain_valid(chain, [2, 2, 2])
    assert chain.subgroups[-1].elements() == core(d4, refl).elements()


def test_refine_index4_wrong_index():
    g = sym4()
    with pytest.raises(WrongIndex):
        refine_index4(g, g.subgroup([parse_perm("(0 1 2)", 4), parse_perm("(1 2 3)", 4)]))


def test_chain_4_to_3_no_op():
    s3 = PermGroup(3, [parse_perm("(0 1)", 3), parse_perm("(0 1 2)", 3)])
    c3 = s3.subgroup([parse_perm("(0 1 2)", 3)])
    chain = IndexChain([s3, c3, PermGroup.trivial(3)])
    out = chain_4_to_3(chain)
    assert out.indices == [2, 3]
    assert [g.order() for g in out.subgroups] == [6, 3, 1]


def test_chain_4_to_3_single_step():
    g = sym4()
    s3 = g.subgroup([parse_perm("(1 2)", 4), parse_perm("(1 2 3)", 4)])
    out = chain_4_to_3(IndexChain([g, s3]))
    ref = refine_index4(g, s3)
    assert [x.elements() for x in out.subgroups] == [x.elements() for x in ref.subgroups]


def test_chain_4_to_3_wreath():
    chain = wreath_level_chain()
    assert chain.indices == [4, 4, 4, 4, 4]
    out = chain_4_to_3(chain)
    assert all(i in (2, 3) for i in out.indices)
    _assert_chain_valid(out)
    # terminal contained in the original terminal
    assert out.subgroups[-1].elements() <= chain.subgroups[-1].elements()
    # waypoint invariant K_j <= G_j
    assert out.waypoints is not None
    for k, g in zip(out.waypoints, chain.subgroups):
        assert k.is_subgroup_of(g)


def test_chain_4_to_3_rejects_big_steps():
    from treecert.cosets import StepTooLarge

    s4 = sym4()
    with pytest.raises(StepTooLarge):
        chain_4_to_3(IndexChain([s4, PermGroup.trivial(4)]))


def test_build_coset_tree_s3():
    s3 = PermGroup(3, [parse_perm("(0 1)", 3), parse_perm("(0 1 2)", 3)])
    c3 = s3.subgroup([parse_perm("(0 1 2)", 3)])
    chain = IndexChain([s3, c3, PermGroup.trivial(3)])
    tree = build_coset_tree(chain, 2)
    degs = tree.degrees()
    assert degs[0] == [2]
    assert degs[1] == [4, 4]
    assert len(degs[2]) == 6 and all(d == 1 for d in degs[2])
    assert kernel_at_depth(chain, 0).order() == 6
    assert kernel_at_depth(chain, 1).order() == 3  # C3 is normal
    assert kernel_at_depth(chain, 2).order() == 1
    with pytest.raises(DepthExceedsChain):
        build_coset_tree(chain, 3)


def test_build_coset_tree_c8():
    c8 = PermGroup(8, [parse_perm("(0 1 2 3 4 5 6 7)", 8)])
    c = c8.generators[0]
    chain = IndexChain([
        c8,
        c8.subgroup([perm_mul(c, c)]),
        c8.subgroup([perm_mul(perm_mul(c, c), perm_mul(c, c))]),
        PermGroup.trivial(8),
    ])
    tree = build_coset_tree(chain, 3)
    degs = tree.degrees()
    assert degs[0] == [2]
    assert all(d == 3 for d in degs[1] + degs[2])
    assert all(d == 1 for d in degs[3])
    tree0 = build_coset_tree(chain, 0)
    assert tree0.node_count() == 1


def test_tree_action():
    s3 = PermGroup(3, [parse_perm("(0 1)", 3), parse_perm("(0 1 2)", 3)])
    c3 = s3.subgroup([parse_perm("(0 1 2)", 3)])
    chain = IndexChain([s3, c3, PermGroup.trivial(3)])
    tree = build_coset_tree(chain, 2)
    ident = perm_identity(3)
    assert all(perm == list(range(len(perm))) for perm in tree_action(ident, tree))
    # an element outside C3 moves the level-1 node of the trivial coset
    flip = parse_perm("(0 1)", 3)
    moved = tree_action(flip, tree)
    root_coset_index = next(i for i, c in enumerate(tree.levels[1]) if ident in c)
    assert moved[1][root_coset_index] != root_coset_index
    # action is a homomorphism and preserves adjacency
    rng = random.Random(0)
    els = sorted(s3.elements())
    for _ in range(10):
        g, h = rng.choice(els), rng.choice(els)
        ag, ah, agh = tree_action(g, tree), tree_action(h, tree), tree_action(perm_mul(g, h), tree)
        for lvl in range(3):
            assert agh[lvl] == [ag[lvl][ah[lvl][i]] for i in range(len(ah[lvl]))]
        for lvl in range(1, 3):
            for i, parent in enumerate(tree.parents[lvl]):
                assert ag[lvl - 1][parent] == tree.parents[lvl][ag[lvl][i]]
    with pytest.raises(NotInGroup):
        tree_action(parse_perm("(0 1)", 3), build_coset_tree(IndexChain([c3, PermGroup.trivial(3)]), 1))


def test_parse_group_and_chain_files():
    g = parse_group_file("degree 4\n(0 1)\n(0 1 2 3)\n")
    assert g.order() == 24
    chain = parse_chain_file("degree 3\n(0 1)\n(0 1 2)\n--\n(0 1 2)\n--\n")
    assert [x.order() for x in chain.subgroups] == [6, 3, 1]
    assert chain.indices == [2, 3]
