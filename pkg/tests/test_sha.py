import json
import random
from dataclasses import replace
from importlib import resources

import pytest

from shamoduli import gallery
from shamoduli.errors import InvalidSha, NotDestabilized, PreconditionError, UnstableReplacement
from shamoduli.io import dumps, sha_from_json, sha_to_dot, sha_to_json
from shamoduli.linalg import det3
from shamoduli.projgeom import SPECIAL_LINE, arrangement_from_s, generic_base_params, meet
from shamoduli.rational import random_nonzero_rational
from shamoduli.sha import (
    Sha,
    destabilized_loci,
    dual_graph,
    is_maximally_degenerate,
    is_stable,
    stable_replacement,
)
from shamoduli.weights import WeightVector, default_base_weight

from support import invariant_violations, random_run


def generic(n, seed=0):
    rng = random.Random(seed)
    return Sha.from_arrangement(arrangement_from_s(n, generic_base_params(n, seed),
                                                   [random_nonzero_rational(rng) for _ in range(n - 2)]))


def cross_ratio(points, bracket):
    a, b, c, d = points
    return (bracket(a, c) * bracket(b, d)) / (bracket(a, d) * bracket(b, c))


# -- stability --------------------------------------------------------------


def test_generic_sha_is_stable():
    x = generic(6)
    assert x.root.multiple_sets == ()
    assert is_stable(x, WeightVector.ones(6))
    assert destabilized_loci(x, WeightVector.ones(6)) == []


def test_triple_point_is_unstable_for_unit_weights_but_fine_for_base_weight():
    x = gallery.with_multiple_points(6, [(1, 2, 3)])
    assert not is_stable(x, WeightVector.ones(6))
    assert is_stable(x, default_base_weight(6))


def test_origin_point_has_one_locus():
    x = Sha.from_arrangement(arrangement_from_s(5, [2, 3], [1, 0, 0]))
    assert destabilized_loci(x, WeightVector.ones(5)) == [(0, (2, 3, 4, 5))]


def test_two_triple_points_give_two_loci():
    x = gallery.with_multiple_points(6, [(1, 2, 3), (3, 4, 5)])
    assert destabilized_loci(x, WeightVector.ones(6)) == [(0, (1, 2, 3)), (0, (3, 4, 5))]


# -- replacement ---------------------------------------------------------------


def test_replacement_preconditions():
    x = gallery.six_line_quadruple()
    with pytest.raises(NotDestabilized):
        stable_replacement(x, 0, (1, 2, 3))
    with pytest.raises(NotDestabilized):
        stable_replacement(x, 0, (1, 2, 3, 4), w=default_base_weight(6))
    with pytest.raises(UnstableReplacement):
        stable_replacement(x, 0, (1, 2, 3, 4), mu=[0, 0])
    with pytest.raises(PreconditionError):
        stable_replacement(x, 0, (1, 2, 3, 4), mu=[1])


def test_new_plane_keeps_the_tangent_cross_ratio():
    # the four lines through p(I) and their four points on the gluing line are projectively equal
    x = gallery.six_line_quadruple()
    p = x.root.point_of((1, 2, 3, 4))
    y = stable_replacement(x, 0, (1, 2, 3, 4))
    child = y.components[1]
    aux = next(l for l in (x.root.line(5), x.root.line(6)) if not l.contains(p))
    parent = [meet(x.root.line(i), aux).coords for i in (1, 2, 3, 4)]
    glue = [meet(child.line(i), SPECIAL_LINE).coords for i in (1, 2, 3, 4)]
    on_aux = lambda u, v: det3([u, v, p.coords])
    on_glue = lambda u, v: u[1] * v[2] - u[2] * v[1]
    assert cross_ratio(parent, on_aux) == cross_ratio(glue, on_glue)


def test_triple_replacement_has_a_single_moduli_point():
    x = gallery.with_multiple_points(5, [(1, 2, 3)])
    rng = random.Random(1)
    results = {stable_replacement(x, 0, (1, 2, 3), mu=[random_nonzero_rational(rng)]) for _ in range(5)}
    assert len(results) == 1
    (y,) = results
    assert y.components[1].moduli == (1,)
    assert y.components[1].moduli_dimension() == 0


@pytest.mark.parametrize("size", [3, 4, 5])
def test_moduli_dimension_law(size):
    n = size + 2
    x = gallery.with_multiple_points(n, [tuple(range(1, size + 1))])
    y = stable_replacement(x, 0, tuple(range(1, size + 1)))
    child = y.components[1]
    assert len(child.moduli) == size - 2
    assert child.moduli_dimension() == size - 3
    assert child.multiple_sets == ()


def test_replacement_invariants():
    x = gallery.with_multiple_points(7, [(1, 2, 3, 4), (4, 5, 6)])
    w = WeightVector.ones(7)
    before = destabilized_loci(x, w)
    y = stable_replacement(x, 0, (1, 2, 3, 4))
    after = destabilized_loci(y, w)
    assert set(after) < set(before)
    assert all(v != 0 or J in dict(before).values() for v, J in after)
    assert len(dual_graph(y).vertices()) == len(dual_graph(x).vertices()) + 1
    assert dual_graph(y).is_rooted_tree()
    assert y.line_home()[1] == frozenset({1})


@pytest.mark.parametrize("seed", range(40))
def test_random_replacement_runs_keep_invariants(seed):
    rng = random.Random(seed)
    size = None
    for x in random_run(rng, rng.randint(4, 7)):
        assert invariant_violations(x) == []
        if size is not None:
            assert len(x.components) == size + 1
        size = len(x.components)


# -- dual graphs and degeneracy --------------------------------------------------


def test_single_component_dual_graph():
    g = dual_graph(generic(5))
    assert g.markings == ((0, (1, 2, 3, 4, 5)),) and g.edges == ()


def test_two_vertex_dual_graph():
    g = dual_graph(gallery.quadruple_sha())
    assert g.canonical() == ((5,), (((1, 2, 3, 4), ()),))


def test_chain_dual_graph():
    g = dual_graph(gallery.quadruple_chain_sha())
    assert g.canonical() == ((5,), (((1,), (((2, 3, 4), ()),)),))


def test_two_leaves_sharing_a_line():
    x = gallery.two_triples_sha()
    g = dual_graph(x)
    assert g.canonical() == ((), (((1, 2, 3), ()), ((1, 4, 5), ())))
    assert x.line_home()[1] == frozenset({1, 2})
    # per-component counts: the root has two triple points, each leaf three lines
    assert [len(c.lines) for c in x.components] == [5, 3, 3]
    assert [c.moduli_dimension() for c in x.components] == [0, 0, 0]
    assert is_maximally_degenerate(x)


def test_maximal_degeneracy():
    assert not is_maximally_degenerate(generic(5))
    assert is_maximally_degenerate(gallery.quadruple_chain_sha())
    assert not is_maximally_degenerate(gallery.quadruple_sha())
    # a binary tree for six lines: two quadruple points can't share two lines, so use triples
    x = gallery.with_multiple_points(6, [(1, 2, 3), (3, 4, 5), (1, 5, 6)])
    for J in ((1, 2, 3), (3, 4, 5), (1, 5, 6)):
        x = stable_replacement(x, 0, J)
    assert is_maximally_degenerate(x)


def test_skeleton_ignores_replacement_order():
    x = gallery.with_multiple_points(5, [(1, 2, 3), (1, 4, 5)])
    a = stable_replacement(stable_replacement(x, 0, (1, 2, 3)), 0, (1, 4, 5))
    b = stable_replacement(stable_replacement(x, 0, (1, 4, 5)), 0, (1, 2, 3))
    assert a.skeleton() == b.skeleton()
    assert dual_graph(a).canonical() == dual_graph(b).canonical()


def test_validate_rejects_broken_trees():
    x = gallery.quadruple_chain_sha()
    comps = list(x.components)
    comps[2] = replace(comps[2], parent=0)
    with pytest.raises(InvalidSha):
        Sha(x.n, tuple(comps)).validate()
    comps = list(x.components)
    comps[1] = replace(comps[1], attachments=())
    with pytest.raises(InvalidSha):
        Sha(x.n, tuple(comps)).validate()


# -- serialization -----------------------------------------------------------------


@pytest.mark.parametrize("name", sorted(gallery.FIXTURES))
def test_fixtures_match_their_constructions(name):
    text = resources.files("shamoduli").joinpath(f"fixtures/{name}.json").read_text()
    x = sha_from_json(json.loads(text))
    assert x == gallery.FIXTURES[name]()
    assert dumps(sha_to_json(x)) == text


def test_dot_marks_the_root():
    dot = sha_to_dot(gallery.quadruple_sha())
    assert 'v0 [label="{5}", shape=doublecircle];' in dot
    assert 'v1 [label="{1,2,3,4}", shape=circle];' in dot
    assert "v0 -- v1;" in dot
