"""The six coloring rulesets: legality predicates and known outcome shortcuts.

A ruleset decides which colorings are legal. Players alternately paint one
uncolored vertex so that the coloring stays legal; the first player without a
move loses. Colors are 1..k; in Blue/Red games Blue=1 and Red=2.

Predicates come in two forms: is_legal_coloring checks a whole coloring
against the textual definition, move_ok answers "may vertex v take color c
now" assuming the current coloring is already legal (what the solver needs).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import ClassVar, Sequence

from .graphs import (
    FIXED_POINT_FREE,
    SINGLE_FIXED_POINT,
    Graph,
    InvolutionSearchBudget,
    find_involution,
    power_graph,
    underlying_graph,
)

BLUE = 1
RED = 2

# decomposition levels the solver may use
DECOMP_LIVE = "live"     # split on components of the uncolored subgraph
DECOMP_GRAPH = "graph"   # split on components of the whole graph only
DECOMP_NONE = None


class RulesetMismatchError(ValueError):
    """Graph directedness, k, or move order incompatible with the ruleset."""


@dataclass(frozen=True)
class ProperColoring:
    """Adjacent vertices never share a color. k=1 is Node-Kayles."""

    token: ClassVar[str] = "proper"
    needs_directed: ClassVar[bool | None] = None  # either is fine, direction ignored
    fixed_k: ClassVar[int | None] = None
    color_symmetric: ClassVar[bool] = True
    decomposition: ClassVar[str | None] = DECOMP_LIVE
    needs_order: ClassVar[bool] = False


@dataclass(frozen=True)
class OrientedColoring:
    """Digraph coloring: arc ends differ, and no color pair (a, b) on an arc
    may appear reversed as (b, a) on any other arc."""

    token: ClassVar[str] = "oriented"
    needs_directed: ClassVar[bool | None] = True
    fixed_k: ClassVar[int | None] = None
    color_symmetric: ClassVar[bool] = True
    # the reversed-pair rule couples arcs across the whole graph, even across
    # disconnected components, so no decomposition is sound
    decomposition: ClassVar[str | None] = DECOMP_NONE
    needs_order: ClassVar[bool] = False


@dataclass(frozen=True)
class OrientedBlueRed:
    """Two colors on a digraph: a fully painted arc (u, v) must have u Blue
    and v Red. Painting v Blue kills its in-neighbors, Red its out-neighbors."""

    token: ClassVar[str] = "oriented-br"
    needs_directed: ClassVar[bool | None] = True
    fixed_k: ClassVar[int | None] = 2
    color_symmetric: ClassVar[bool] = False
    decomposition: ClassVar[str | None] = DECOMP_LIVE
    needs_order: ClassVar[bool] = False


@dataclass(frozen=True)
class WeakColoring:
    """Two colors; adjacent same-colored vertices are allowed only when each
    endpoint also has a painted neighbor of the opposite color (judged on the
    current partial coloring)."""

    token: ClassVar[str] = "weak"
    needs_directed: ClassVar[bool | None] = False
    fixed_k: ClassVar[int | None] = 2
    color_symmetric: ClassVar[bool] = True
    # painting inside one live component can enable moves in another through a
    # shared painted neighbor, so only whole-graph components are independent
    decomposition: ClassVar[str | None] = DECOMP_GRAPH
    needs_order: ClassVar[bool] = False


@dataclass(frozen=True)
class DistanceColoring:
    """Vertices within hop distance d must differ; solved as ProperColoring
    on the d-th power graph."""

    d: int = 2

    token: ClassVar[str] = "distance"
    needs_directed: ClassVar[bool | None] = False
    fixed_k: ClassVar[int | None] = None
    color_symmetric: ClassVar[bool] = True
    decomposition: ClassVar[str | None] = DECOMP_LIVE  # after power-graph translation
    needs_order: ClassVar[bool] = False

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError("distance parameter d must be >= 1")


@dataclass(frozen=True)
class SequentialColoring:
    """Proper coloring where turn i must paint the i-th vertex of a fixed
    visit order; a player who cannot legally color that vertex loses."""

    token: ClassVar[str] = "sequential"
    needs_directed: ClassVar[bool | None] = False
    fixed_k: ClassVar[int | None] = None
    color_symmetric: ClassVar[bool] = True
    decomposition: ClassVar[str | None] = DECOMP_NONE  # the shared turn order is global state
    needs_order: ClassVar[bool] = True


Ruleset = (
    ProperColoring
    | OrientedColoring
    | OrientedBlueRed
    | WeakColoring
    | DistanceColoring
    | SequentialColoring
)

RULESET_TOKENS = {
    "proper": ProperColoring,
    "oriented": OrientedColoring,
    "oriented-br": OrientedBlueRed,
    "weak": WeakColoring,
    "distance": DistanceColoring,
    "sequential": SequentialColoring,
}


def check_compatible(
    ruleset: Ruleset, g: Graph, k: int, order: tuple[int, ...] | None = None
) -> None:
    """Raise RulesetMismatchError on directedness/k/order mismatches."""
    if k < 1:
        raise RulesetMismatchError("k must be >= 1")
    if ruleset.needs_directed is True and not g.directed:
        raise RulesetMismatchError(f"{ruleset.token} needs a directed graph")
    if ruleset.needs_directed is False and g.directed:
        raise RulesetMismatchError(f"{ruleset.token} needs an undirected graph")
    if ruleset.fixed_k is not None and k != ruleset.fixed_k:
        raise RulesetMismatchError(f"{ruleset.token} is played with k={ruleset.fixed_k}")
    if ruleset.needs_order and order is None:
        raise RulesetMismatchError(f"{ruleset.token} needs a visit order")
    if not ruleset.needs_order and order is not None:
        raise RulesetMismatchError(f"{ruleset.token} takes no visit order")
    if order is not None and sorted(order) != list(range(g.n)):
        raise RulesetMismatchError("order must be a permutation of the vertices")


@lru_cache(maxsize=256)
def _power(g: Graph, d: int) -> Graph:
    return power_graph(g, d)


def translate_for_solving(ruleset: Ruleset, g: Graph) -> tuple[Ruleset, Graph]:
    """Distance games are played as proper games on the power graph."""
    if isinstance(ruleset, DistanceColoring):
        return ProperColoring(), _power(g, ruleset.d)
    return ruleset, g


# ---- full-coloring legality ---------------------------------------------

def is_legal_coloring(
    ruleset: Ruleset,
    g: Graph,
    k: int,
    coloring: Sequence[int | None],
    order: tuple[int, ...] | None = None,
) -> bool:
    """Evaluate the ruleset's textual definition on a whole partial coloring."""
    check_compatible(ruleset, g, k, order)
    if len(coloring) != g.n:
        raise ValueError("coloring length must equal vertex count")
    for c in coloring:
        if c is not None and not 1 <= c <= k:
            return False

    if isinstance(ruleset, ProperColoring):
        return _proper_ok(g, coloring)
    if isinstance(ruleset, DistanceColoring):
        return _proper_ok(_power(g, ruleset.d), coloring)
    if isinstance(ruleset, OrientedBlueRed):
        for u, v in g.edges:
            if coloring[u] is not None and coloring[v] is not None:
                if not (coloring[u] == BLUE and coloring[v] == RED):
                    return False
        return True
    if isinstance(ruleset, OrientedColoring):
        pairs: set[tuple[int, int]] = set()
        for u, v in g.edges:
            cu, cv = coloring[u], coloring[v]
            if cu is None or cv is None:
                continue
            if cu == cv:
                return False
            pairs.add((cu, cv))
        return all((b, a) not in pairs for a, b in pairs)
    if isinstance(ruleset, WeakColoring):
        for u, v in g.edges:
            cu, cv = coloring[u], coloring[v]
            if cu is not None and cu == cv:
                opp = 3 - cu
                if not any(coloring[w] == opp for w in g.adj[u]):
                    return False
                if not any(coloring[w] == opp for w in g.adj[v]):
                    return False
        return True
    if isinstance(ruleset, SequentialColoring):
        assert order is not None
        painted = [v for v in range(g.n) if coloring[v] is not None]
        if set(painted) != set(order[: len(painted)]):
            return False
        return _proper_ok(g, coloring)
    raise TypeError(f"unknown ruleset {ruleset!r}")


def _proper_ok(g: Graph, coloring: Sequence[int | None]) -> bool:
    for u, v in g.edges:
        if coloring[u] is not None and coloring[u] == coloring[v]:
            return False
    return True


# ---- incremental move legality -------------------------------------------
# colors is an int list with 0 = uncolored; the current coloring is assumed
# legal, so only constraints touching v need checking. Distance rulesets never
# reach these (the solver translates them to proper on the power graph first).

def move_ok(ruleset: Ruleset, g: Graph, k: int, colors: list[int], v: int, c: int) -> bool:
    if isinstance(ruleset, (ProperColoring, SequentialColoring)):
        return all(colors[u] != c for u in g.adj[v])
    if isinstance(ruleset, OrientedBlueRed):
        if c == BLUE:
            return all(colors[u] == 0 for u in g.in_adj[v]) and all(
                colors[w] in (0, RED) for w in g.out_adj[v]
            )
        return all(colors[w] == 0 for w in g.out_adj[v]) and all(
            colors[u] in (0, BLUE) for u in g.in_adj[v]
        )
    if isinstance(ruleset, WeakColoring):
        same = [u for u in g.adj[v] if colors[u] == c]
        if not same:
            return True
        opp = 3 - c
        if not any(colors[w] == opp for w in g.adj[v]):
            return False
        for u in same:
            if not any(colors[w] == opp for w in g.adj[u]):
                return False
        return True
    if isinstance(ruleset, OrientedColoring):
        new_pairs: list[tuple[int, int]] = []
        for w in g.out_adj[v]:
            if colors[w]:
                if colors[w] == c:
                    return False
                new_pairs.append((c, colors[w]))
        for u in g.in_adj[v]:
            if colors[u]:
                if colors[u] == c:
                    return False
                new_pairs.append((colors[u], c))
        if not new_pairs:
            return True
        existing = {
            (colors[x], colors[y]) for x, y in g.edges if colors[x] and colors[y]
        }
        existing.update(new_pairs)
        return all((b, a) not in existing for a, b in new_pairs)
    if isinstance(ruleset, DistanceColoring):
        return all(colors[u] != c for u in _power(g, ruleset.d).adj[v])
    raise TypeError(f"unknown ruleset {ruleset!r}")


# ---- outcome shortcuts -----------------------------------------------------

OUTCOME_N = "N"
OUTCOME_P = "P"
OUTCOME_UNKNOWN = "unknown"


def outcome_by_involution(
    g: Graph, k: int, *, exhaustive_cap: int = 24, node_budget: int = 2_000_000
) -> str:
    """Outcome of the uncolored proper-k game from involution pairing.

    A single-fixed-point involution whose pairs are never adjacent gives the
    first player a mirror strategy (N, any k). A fixed-point-free involution
    gives the second player an opposite-color mirror (P, k=2 only). Returns
    "unknown" when neither applies or the search runs out of budget. The
    proper rule ignores arc directions, so the search runs on the underlying
    undirected graph.
    """
    g = underlying_graph(g)
    try:
        if find_involution(
            g, SINGLE_FIXED_POINT, exhaustive_cap=exhaustive_cap, node_budget=node_budget
        ):
            return OUTCOME_N
    except InvolutionSearchBudget:
        pass
    if k == 2:
        try:
            if find_involution(
                g, FIXED_POINT_FREE, exhaustive_cap=exhaustive_cap, node_budget=node_budget
            ):
                return OUTCOME_P
        except InvolutionSearchBudget:
            pass
    return OUTCOME_UNKNOWN


# odd-path outcomes for the 2-distance 2-coloring game; even lengths are all P
DISTANCE2_ODD_PATHS = {3: OUTCOME_P, 5: OUTCOME_N, 7: OUTCOME_N, 9: OUTCOME_P,
                       11: OUTCOME_P, 13: OUTCOME_N, 15: OUTCOME_P, 17: OUTCOME_P}


def closed_form_outcome(ruleset: Ruleset, k: int, g: Graph) -> tuple[str, int | None]:
    """Known outcome (and Grundy value when known) for uncolored family starts.

    Returns (outcome, grundy) with outcome in {"N", "P", "unknown"}; grundy is
    None when only the outcome class is known.
    """
    if g.family is None:
        return OUTCOME_UNKNOWN, None
    name, params = g.family

    if isinstance(ruleset, ProperColoring):
        if name in ("path", "directed_path"):
            (n,) = params
            if n % 2 == 1:
                # mirror through the middle; the exact value 1 needs a spare
                # color for the middle vertex, so k=1 only gets the outcome
                return OUTCOME_N, (1 if k >= 2 else None)
            if k == 2:
                return OUTCOME_P, 0
        elif name == "cycle" and k == 2:
            return OUTCOME_P, 0
        elif name == "grid":
            if all(d % 2 == 1 for d in params):
                return OUTCOME_N, None  # central point reflection
            if k == 2:
                return OUTCOME_P, 0  # reflect the even axes
        elif name == "hypercube" and k == 2:
            return OUTCOME_P, 0  # antipodal map
        elif name == "complete_binary_tree":
            return OUTCOME_N, None  # swap the root's subtrees
    elif isinstance(ruleset, WeakColoring):
        if name == "path":
            (n,) = params
            return (OUTCOME_N, None) if n % 2 == 1 else (OUTCOME_P, 0)
        if name == "cycle":
            (n,) = params
            # every maximal play colors the whole cycle, so the Grundy value
            # is just the parity of the number of uncolored vertices
            return (OUTCOME_N, 1) if n % 2 == 1 else (OUTCOME_P, 0)
    elif isinstance(ruleset, DistanceColoring) and ruleset.d == 2 and k == 2:
        if name == "path":
            (n,) = params
            if n % 2 == 0:
                return OUTCOME_P, 0
            if n in DISTANCE2_ODD_PATHS:
                out = DISTANCE2_ODD_PATHS[n]
                return out, (0 if out == OUTCOME_P else None)
        elif name == "cycle":
            (n,) = params
            if n % 2 == 0:
                return OUTCOME_P, 0
    elif isinstance(ruleset, OrientedBlueRed):
        if name == "directed_cycle":
            (n,) = params
            if n > 3:
                return OUTCOME_P, 0  # any first move leaves a nonzero path class
    return OUTCOME_UNKNOWN, None
