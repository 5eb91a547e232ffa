"""Shared generators and invariant checks for the test suite."""
import functools
import random

from shamoduli.enumeration import label_families, realize
from shamoduli.projgeom import SPECIAL_LINE, arrangement_from_s, generic_base_params, meet, root_directions
from shamoduli.sha import Sha, child_directions, dual_graph, stable_replacement


@functools.lru_cache(maxsize=None)
def families(lines):
    return label_families(lines, None)


def random_root(rng: random.Random, n: int) -> Sha:
    a = generic_base_params(n, rng.randrange(10 ** 6))
    lines = tuple(range(1, n + 1))
    while True:
        fam = rng.choice(families(lines))
        s = realize(root_directions(n, a), lines, fam, rng)
        if s is not None:
            return Sha.from_arrangement(arrangement_from_s(n, a, s))


def random_step(rng: random.Random, x: Sha) -> Sha:
    """Resolve one free multiple point, with a random degeneration of the new plane."""
    loci = [(c.id, J) for c in x.components for J in x.free_multiple_sets(c.id)]
    v, J = rng.choice(loci)
    directions = child_directions(x, v, J)
    for _ in range(8):
        fam = rng.choice(families(J))
        mu = realize(directions, J, fam, rng)
        if mu is not None:
            return stable_replacement(x, v, J, mu=mu)
    return stable_replacement(x, v, J, seed=rng.randrange(10 ** 6))


def random_run(rng: random.Random, n: int, max_steps: int = 6):
    """A root followed by the shas produced by successive replacements."""
    x = random_root(rng, n)
    yield x
    for _ in range(max_steps):
        if not any(x.free_multiple_sets(c.id) for c in x.components):
            return
        x = random_step(rng, x)
        yield x


def invariant_violations(x: Sha) -> list[str]:
    """Tree shape, no overlapping lines, connected broken lines, distinct root base points."""
    out = []
    try:
        x.validate()
    except Exception as exc:  # noqa: BLE001 - collected as a violation
        out.append(f"validate: {exc}")
    g = dual_graph(x)
    if not g.is_rooted_tree() or len(g.vertices()) != len(x.components):
        out.append("dual graph is not a rooted tree on the components")
    for c in x.components:
        models = [c.line(i) for i in c.lines]
        if len(set(models)) != len(models):
            out.append(f"overlapping lines in component {c.id}")
    for i in range(1, x.n + 1):
        holders = {c.id for c in x.components if i in c.lines}
        if 0 not in holders:
            out.append(f"line {i} misses the root")
        for v in holders:
            p = x.components[v].parent
            if p is not None and p not in holders:
                out.append(f"line {i} is disconnected at {v}")
    base = [meet(x.root.line(i), SPECIAL_LINE) for i in range(1, x.n + 1)]
    if len(set(base)) != x.n:
        out.append("root base points collide")
    return out
