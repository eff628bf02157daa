"""Linear-time outcome decision for the forced-order 2-coloring game on paths.

Vertices are classed by when they are painted relative to their neighbors:
a Source is painted before both neighbors (a free color choice), a Closed
vertex after both (no influence, possibly blocked), and a Constrained vertex
in between (its color is forced, and with two colors always available, so it
can never be the losing square; an endpoint painted after its one neighbor
is Constrained for the same reason). The game therefore reduces to the
alternating Source/Closed skeleton: each Closed vertex is saved or doomed by
whoever controls the later of its two flanking Sources, which turns the
whole decision into one elimination sweep in paint order.

Turns are 0-based internally; the first player owns even turns.
"""

from __future__ import annotations

from .graphs import Graph

SOURCE = "source"
CLOSED = "closed"
CONSTRAINED = "constrained"

OUTCOME_N = "N"
OUTCOME_P = "P"

ORACLE_CAP = 22


def path_walk(g: Graph) -> list[int]:
    """Vertex ids in path order. Raises for anything that is not a path."""
    if g.directed:
        raise ValueError("sequential path analysis works on undirected paths")
    if g.n == 1:
        return [0]
    deg = {v: len(g.adj[v]) for v in range(g.n)}
    ends = [v for v, d in deg.items() if d == 1]
    if len(ends) != 2 or any(d > 2 for d in deg.values()):
        raise ValueError("graph is not a path (cycles and branches unsupported)")
    walk = [min(ends)]
    prev = -1
    while len(walk) < g.n:
        nxt = [u for u in g.adj[walk[-1]] if u != prev]
        if not nxt:
            raise ValueError("graph is not a path (disconnected)")
        prev = walk[-1]
        walk.append(nxt[0])
    return walk


def _check_order(n: int, order: tuple[int, ...]) -> None:
    if sorted(order) != list(range(n)):
        raise ValueError("order must be a permutation of the vertices")


def classify(g: Graph, order: tuple[int, ...]) -> dict[int, str]:
    """Source/Closed/Constrained label per vertex id."""
    walk = path_walk(g)
    _check_order(g.n, order)
    turn = {v: t for t, v in enumerate(order)}
    labels: dict[int, str] = {}
    for i, v in enumerate(walk):
        nbr_turns = [turn[walk[j]] for j in (i - 1, i + 1) if 0 <= j < len(walk)]
        if all(turn[v] < t for t in nbr_turns):
            labels[v] = SOURCE
        elif len(nbr_turns) == 2 and all(turn[v] > t for t in nbr_turns):
            labels[v] = CLOSED
        else:
            labels[v] = CONSTRAINED
    return labels


def decide_path(order: tuple[int, ...]) -> str:
    """Outcome on the path 0-1-...-(n-1) painted in the given vertex order."""
    n = len(order)
    _check_order(n, order)
    return _decide(list(range(n)), order)


def decide_outcome(g: Graph, order: tuple[int, ...]) -> str:
    """Outcome of the forced-order game on a path graph; O(n)."""
    walk = path_walk(g)
    _check_order(g.n, order)
    return _decide(walk, order)


def _decide(walk: list[int], order: tuple[int, ...]) -> str:
    n = len(walk)
    turn = {v: t for t, v in enumerate(order)}
    pos = {v: i for i, v in enumerate(walk)}

    t_of = [turn[v] for v in walk]  # paint turn by path position
    label: list[str] = []
    for i in range(n):
        nbrs = [j for j in (i - 1, i + 1) if 0 <= j < n]
        if all(t_of[i] < t_of[j] for j in nbrs):
            label.append(SOURCE)
        elif len(nbrs) == 2 and all(t_of[i] > t_of[j] for j in nbrs):
            label.append(CLOSED)
        else:
            label.append(CONSTRAINED)

    # splice out the constrained vertices; left/right are path positions
    left = list(range(-1, n - 1))
    right = list(range(1, n + 1))
    alive = [lab != CONSTRAINED for lab in label]
    for i in range(n):
        if alive[i]:
            continue
        li, ri = left[i], right[i]
        if li >= 0:
            right[li] = ri
        if ri < n:
            left[ri] = li

    def unlink(i: int) -> None:
        alive[i] = False
        li, ri = left[i], right[i]
        if li >= 0:
            right[li] = ri
        if ri < n:
            left[ri] = li

    # visit closed vertices in paint order; the order array gives it for free
    for t in range(n):
        i = pos[order[t]]
        if label[i] != CLOSED or not alive[i]:
            continue
        li, ri = left[i], right[i]
        # the reduced path alternates Source/Closed with Source ends, so a
        # live closed vertex always sits between two live sources
        assert 0 <= li and ri < n and label[li] == label[ri] == SOURCE
        hi = li if t_of[li] > t_of[ri] else ri
        if t_of[hi] % 2 == t % 2:
            unlink(i)  # its owner also controls the later source: saved
            unlink(hi)
        else:
            # the opponent colors the later source to block this vertex
            return OUTCOME_P if t % 2 == 0 else OUTCOME_N
    # nobody is ever blocked; the n-th move is the last
    return OUTCOME_N if n % 2 else OUTCOME_P


def brute_force_outcome(g: Graph, order: tuple[int, ...]) -> str:
    """Exhaustive play-out oracle, independent of the elimination algorithm."""
    if g.n > ORACLE_CAP:
        raise ValueError(f"brute force oracle is capped at {ORACLE_CAP} vertices")
    walk = path_walk(g)
    _check_order(g.n, order)
    pos = {v: i for i, v in enumerate(walk)}
    colors = [0] * g.n  # by path position; 0 = unpainted

    def win(t: int) -> bool:
        if t == g.n:
            return False
        i = pos[order[t]]
        for c in (1, 2):
            if i > 0 and colors[i - 1] == c:
                continue
            if i + 1 < g.n and colors[i + 1] == c:
                continue
            colors[i] = c
            opp = win(t + 1)
            colors[i] = 0
            if not opp:
                return True
        return False  # every color blocked or losing; blocked counts as lost

    return OUTCOME_N if win(0) else OUTCOME_P
