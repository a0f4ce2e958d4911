from itertools import chain, combinations, product

import numpy as np
import pytest

from gglab.action import ActionError, fixer_subgroupoid, invariants, restrict, validate_action
from gglab.galois import GaloisContext
from gglab.groupoid import enumerate_subgroupoids, generated_subgroupoid
from gglab.instances import load_builtin
from gglab.linalg import Subspace


def test_pair_f5_invariants_are_diagonal():
    inst = load_builtin("pair_f5")
    inv = invariants(inst.action, list(inst.groupoid.arrows()))
    assert inv.dim == 1
    assert inv.basis[0].tolist() == [1, 1]  # (a, a) line


def test_klein_invariants_are_scalars():
    inst = load_builtin("klein_m2f3")
    inv = invariants(inst.action, list(inst.groupoid.arrows()))
    assert inv.dim == 1
    assert np.array_equal(inv.basis[0], inst.algebra.unit)


def test_empty_members_full_space():
    inst = load_builtin("pair_f5")
    assert invariants(inst.action, []).dim == inst.algebra.dim


def brute_force_invariants(inst, members):
    """Oracle: elementwise fixed-point scan over all of F_p^n."""
    act = inst.action
    p = inst.field.p
    n = inst.algebra.dim
    fixed = []
    for coeffs in product(range(p), repeat=n):
        r = inst.field.vector(list(coeffs))
        ok = True
        for h in members:
            lhs = act.apply_truncated(h, r)
            rhs = act.truncate(h, r)
            if not np.array_equal(lhs, rhs):
                ok = False
                break
        if ok:
            fixed.append(r)
    return fixed


@pytest.mark.parametrize("name", ["klein_m2f3", "cyclic_shift_c3", "pair_f5"])
def test_invariants_match_elementwise_oracle(name):
    inst = load_builtin(name)
    if inst.field.p ** inst.algebra.dim > 700:
        pytest.skip("oracle too large")
    arrows = list(inst.groupoid.arrows())
    for k in range(len(arrows) + 1):
        for members in combinations(arrows, k):
            space = invariants(inst.action, members)
            for r in brute_force_invariants(inst, members):
                assert space.contains(r)
            count = inst.field.p ** space.dim
            assert count == len(brute_force_invariants(inst, members))


def test_invariants_antitone():
    inst = load_builtin("klein_disjoint2")
    arrows = list(inst.groupoid.arrows())
    small = invariants(inst.action, arrows[:3])
    big = invariants(inst.action, arrows)
    assert small.contains_space(big)


def test_invariants_closure_invariance():
    # R^{beta_members} = R^{beta_<members>}
    inst = load_builtin("klein_disjoint2")
    arrows = list(inst.groupoid.arrows())
    for members in chain.from_iterable(combinations(arrows, k) for k in (1, 2)):
        h = generated_subgroupoid(inst.groupoid, set(members))
        assert invariants(inst.action, members) == invariants(inst.action, h.members)


def test_galois_connection():
    inst = load_builtin("klein_m2f3")
    act = inst.action
    subs = enumerate_subgroupoids(inst.groupoid)
    probes = [invariants(act, h.members) for h in subs]
    probes.append(Subspace.span(inst.field, inst.algebra.unit))
    for h in subs:
        for t in probes:
            # T <= invariants(H) iff H <= fixer(T)
            left = invariants(act, h.members).contains_space(t)
            right = h.members <= fixer_subgroupoid(act, t).members
            assert left == right


def test_fixer_klein_diagonal():
    inst = load_builtin("klein_m2f3")
    diag = Subspace(inst.field, 4, inst.field.array([[1, 0, 0, 0], [0, 0, 0, 1]]))
    h = fixer_subgroupoid(inst.action, diag)
    g = inst.groupoid
    assert h.members == {g.index("e"), g.index("a")}  # conjugation by diag fixes diagonals


def test_fixer_of_unit_span_is_everything():
    inst = load_builtin("cyclic_shift_c3")
    t = Subspace.span(inst.field, inst.algebra.unit)
    assert fixer_subgroupoid(inst.action, t).members == set(inst.groupoid.arrows())


def test_validate_action_rejects_broken_cocycle():
    inst = load_builtin("klein_m2f3")
    g = inst.groupoid
    beta = dict(inst.action.beta)
    a = g.index("a")
    bad = beta[a].copy()
    bad[0, 1] = (bad[0, 1] + 1) % 3
    beta[a] = bad
    with pytest.raises(ActionError):
        validate_action(g, inst.algebra, inst.action.idempotents, beta)


def test_validate_action_rejects_nonorthogonal_idempotents():
    inst = load_builtin("pair_f5")
    idem = dict(inst.action.idempotents)
    e1 = inst.groupoid.index("e1")
    idem[e1] = inst.algebra.unit  # overlaps 1_{e2}
    with pytest.raises(ActionError):
        validate_action(inst.groupoid, inst.algebra, idem, inst.action.beta)


def test_restrict_wide_keeps_algebra():
    inst = load_builtin("klein_m2f3")
    h = enumerate_subgroupoids(inst.groupoid, wide_only=True)[1]
    sub_act, embed = restrict(inst.action, h)
    assert sub_act.algebra is inst.algebra
    assert np.array_equal(embed, inst.field.eye(4))


def test_restrict_non_wide_cuts_ideal():
    inst = load_builtin("pair_f5")
    g = inst.groupoid
    h = generated_subgroupoid(g, {g.index("e1")})
    sub_act, embed = restrict(inst.action, h)
    assert sub_act.algebra.dim == 1
    assert embed.shape == (1, 2)


def test_restrict_then_invariants():
    # invariants of the restriction = ambient invariants cut to R_H, wide case
    inst = load_builtin("klein_disjoint2")
    for h in enumerate_subgroupoids(inst.groupoid, wide_only=True):
        sub_act, _ = restrict(inst.action, h)
        assert invariants(sub_act, list(sub_act.groupoid.arrows())) == invariants(
            inst.action, h.members
        )


def test_connecting_arrows_have_zero_j():
    inst = load_builtin("pair_f5")
    ctx = GaloisContext(inst.action)
    g = inst.groupoid
    for a in g.arrows():
        if g.source[a] != g.target[a]:
            assert ctx.jmodules[a].dim == 0
