"""Graph model, named graph families, involution search, and text serialization.

Vertices are 0-based integers 0..n-1. Undirected edges are stored as
(min, max) pairs, directed arcs as ordered (tail, head) pairs. Graphs are
immutable and hashable so they can serve as transposition-table keys.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class UnknownFamilyError(ValueError):
    """Family name not recognized by build_family."""


class GraphFormatError(ValueError):
    """Malformed graph text document."""


class InvolutionSearchBudget(RuntimeError):
    """Exhaustive involution search would exceed its budget; existence unknown."""


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph (no loops, no multi-edges)."""

    n: int
    directed: bool
    edges: frozenset[tuple[int, int]]
    # family tag ("path", (5,)) set by build_family; identity only, not compared
    family: tuple[str, tuple[int, ...]] | None = field(
        default=None, compare=False, repr=False
    )

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
            if u == v:
                raise ValueError(f"self-loop on vertex {u}")
            if not self.directed and u > v:
                raise ValueError("undirected edges must be stored as (min, max)")
        object.__setattr__(self, "_hash", hash((self.n, self.directed, self.edges)))
        object.__setattr__(self, "_adj", None)
        object.__setattr__(self, "_out", None)
        object.__setattr__(self, "_in", None)

    def __hash__(self) -> int:
        return self._hash  # type: ignore[attr-defined]

    # ---- adjacency ----------------------------------------------------

    @property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        """Neighbors ignoring direction (union of in and out for digraphs)."""
        cached = self._adj  # type: ignore[attr-defined]
        if cached is None:
            lists: list[list[int]] = [[] for _ in range(self.n)]
            for u, v in self.edges:
                lists[u].append(v)
                lists[v].append(u)
            cached = tuple(tuple(sorted(set(l))) for l in lists)
            object.__setattr__(self, "_adj", cached)
        return cached

    @property
    def out_adj(self) -> tuple[tuple[int, ...], ...]:
        cached = self._out  # type: ignore[attr-defined]
        if cached is None:
            lists: list[list[int]] = [[] for _ in range(self.n)]
            for u, v in self.edges:
                lists[u].append(v)
            cached = tuple(tuple(sorted(l)) for l in lists)
            object.__setattr__(self, "_out", cached)
        return cached

    @property
    def in_adj(self) -> tuple[tuple[int, ...], ...]:
        cached = self._in  # type: ignore[attr-defined]
        if cached is None:
            lists: list[list[int]] = [[] for _ in range(self.n)]
            for u, v in self.edges:
                lists[v].append(u)
            cached = tuple(tuple(sorted(l)) for l in lists)
            object.__setattr__(self, "_in", cached)
        return cached

    def has_edge(self, u: int, v: int) -> bool:
        if self.directed:
            return (u, v) in self.edges
        return (min(u, v), max(u, v)) in self.edges

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def components(self) -> list[frozenset[int]]:
        """Connected components (weak components for digraphs)."""
        seen = [False] * self.n
        comps: list[frozenset[int]] = []
        for s in range(self.n):
            if seen[s]:
                continue
            comp = []
            stack = [s]
            seen[s] = True
            while stack:
                v = stack.pop()
                comp.append(v)
                for u in self.adj[v]:
                    if not seen[u]:
                        seen[u] = True
                        stack.append(u)
            comps.append(frozenset(comp))
        return comps


def make_graph(
    n: int,
    edges: Iterable[tuple[int, int]],
    *,
    directed: bool = False,
    family: tuple[str, tuple[int, ...]] | None = None,
) -> Graph:
    """Normalize an edge list (dedup, canonical order) and build a Graph."""
    es: set[tuple[int, int]] = set()
    for u, v in edges:
        if u == v:
            raise ValueError(f"self-loop on vertex {u}")
        es.add((u, v) if directed else (min(u, v), max(u, v)))
    return Graph(n=n, directed=directed, edges=frozenset(es), family=family)


# ---- named families ----------------------------------------------------

FAMILY_NAMES = (
    "path",
    "cycle",
    "grid",
    "hypercube",
    "complete_binary_tree",
    "directed_path",
    "directed_cycle",
)


def build_family(name: str, *params: int) -> Graph:
    """Build a named graph family instance.

    path:n, cycle:n (n >= 3), grid:d1,..,dm, hypercube:d,
    complete_binary_tree:depth, directed_path:n, directed_cycle:n (n >= 2).
    """
    name = name.replace("-", "_")
    if name not in FAMILY_NAMES:
        raise UnknownFamilyError(f"unknown family {name!r}")
    if not params:
        raise ValueError(f"family {name!r} needs parameters")
    if any(p <= 0 for p in params):
        raise ValueError(f"family parameters must be positive, got {params}")
    tag = (name, tuple(params))

    if name == "path":
        (n,) = params
        return make_graph(n, ((i, i + 1) for i in range(n - 1)), family=tag)
    if name == "cycle":
        (n,) = params
        if n < 3:
            raise ValueError("undirected cycles need n >= 3")
        return make_graph(n, ((i, (i + 1) % n) for i in range(n)), family=tag)
    if name == "grid":
        dims = params
        coords = list(itertools.product(*(range(d) for d in dims)))
        index = {c: i for i, c in enumerate(coords)}
        edges = []
        for c in coords:
            for axis in range(len(dims)):
                if c[axis] + 1 < dims[axis]:
                    d = list(c)
                    d[axis] += 1
                    edges.append((index[c], index[tuple(d)]))
        return make_graph(len(coords), edges, family=tag)
    if name == "hypercube":
        (d,) = params
        n = 1 << d
        edges = [(v, v ^ (1 << b)) for v in range(n) for b in range(d) if v < v ^ (1 << b)]
        return make_graph(n, edges, family=tag)
    if name == "complete_binary_tree":
        (depth,) = params
        n = (1 << (depth + 1)) - 1
        edges = [((v - 1) // 2, v) for v in range(1, n)]
        return make_graph(n, edges, family=tag)
    if name == "directed_path":
        (n,) = params
        return make_graph(n, ((i, i + 1) for i in range(n - 1)), directed=True, family=tag)
    if name == "directed_cycle":
        (n,) = params
        if n < 2:
            raise ValueError("directed cycles need n >= 2")
        return make_graph(n, ((i, (i + 1) % n) for i in range(n)), directed=True, family=tag)
    raise AssertionError("unreachable")


def parse_family_spec(spec: str) -> Graph:
    """Parse a shorthand like "path:7", "grid:3,4" or "dpath:5"."""
    if ":" not in spec:
        raise UnknownFamilyError(f"bad family spec {spec!r}, expected name:params")
    name, _, rest = spec.partition(":")
    name = name.strip().replace("-", "_")
    aliases = {"dpath": "directed_path", "dcycle": "directed_cycle"}
    name = aliases.get(name, name)
    try:
        params = tuple(int(p) for p in rest.split(",") if p.strip() != "")
    except ValueError as exc:
        raise UnknownFamilyError(f"bad parameters in family spec {spec!r}") from exc
    return build_family(name, *params)


def underlying_graph(g: Graph) -> Graph:
    """Forget arc directions. Keeps the family tag when it still applies."""
    if not g.directed:
        return g
    renames = {"directed_path": "path", "directed_cycle": "cycle"}
    fam = g.family
    if fam is not None:
        fam = (renames.get(fam[0], fam[0]), fam[1])
        if fam[0] == "cycle" and fam[1][0] < 3:
            fam = None  # a 2-cycle collapses to a single undirected edge
    return make_graph(g.n, g.edges, family=fam)


# ---- distances and power graphs ----------------------------------------

def bfs_distances(g: Graph, source: int) -> list[int]:
    """Hop distances from source, ignoring arc direction. -1 = unreachable."""
    dist = [-1] * g.n
    dist[source] = 0
    q = deque([source])
    while q:
        v = q.popleft()
        for u in g.adj[v]:
            if dist[u] < 0:
                dist[u] = dist[v] + 1
                q.append(u)
    return dist


def power_graph(g: Graph, d: int) -> Graph:
    """Graph on the same vertices joining every pair at hop distance <= d.

    Always returns an undirected graph; arc directions are ignored for the
    distance measure. power_graph(g, 1) equals g for undirected g.
    """
    if d < 1:
        raise ValueError("power exponent must be >= 1")
    edges = set()
    for s in range(g.n):
        # bounded BFS out to depth d
        dist = {s: 0}
        q = deque([s])
        while q:
            v = q.popleft()
            if dist[v] == d:
                continue
            for u in g.adj[v]:
                if u not in dist:
                    dist[u] = dist[v] + 1
                    q.append(u)
        for v in dist:
            if v != s:
                edges.add((min(s, v), max(s, v)))
    return make_graph(g.n, edges)


def connected_graph_census(n: int) -> list[Graph]:
    """One representative per isomorphism class of connected graphs on n vertices.

    Exhaustive over edge subsets, so capped at n <= 6 (112 classes); classes
    are deduplicated by marking every permutation image of each accepted
    representative.
    """
    if not 1 <= n <= 6:
        raise ValueError("census enumeration is exhaustive only for 1 <= n <= 6")
    pairs = list(itertools.combinations(range(n), 2))
    bit_of = {p: 1 << i for i, p in enumerate(pairs)}

    def connected(mask: int) -> bool:
        adj = [[] for _ in range(n)]
        for (u, v), bit in bit_of.items():
            if mask & bit:
                adj[u].append(v)
                adj[v].append(u)
        seen = {0}
        stack = [0]
        while stack:
            for u in adj[stack.pop()]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == n

    out: list[Graph] = []
    claimed: set[int] = set()
    for mask in range(1 << len(pairs)):
        if mask in claimed or not connected(mask):
            continue
        edges = [p for p, bit in bit_of.items() if mask & bit]
        out.append(make_graph(n, edges))
        for perm in itertools.permutations(range(n)):
            image = 0
            for u, v in edges:
                a, b = perm[u], perm[v]
                image |= bit_of[(min(a, b), max(a, b))]
            claimed.add(image)
    return out


# ---- involutions --------------------------------------------------------

SINGLE_FIXED_POINT = "single-fixed-point"  # exactly one fixed point, v never adjacent to s(v)
FIXED_POINT_FREE = "fixed-point-free"      # no fixed point at all

_INVOLUTION_MODES = (SINGLE_FIXED_POINT, FIXED_POINT_FREE)


@dataclass(frozen=True)
class Involution:
    """An order-2 graph automorphism, stored as the full mapping."""

    mapping: tuple[int, ...]
    fixed_points: tuple[int, ...]

    def __post_init__(self) -> None:
        for v, u in enumerate(self.mapping):
            if self.mapping[u] != v:
                raise ValueError("mapping is not an involution")
        expect = tuple(v for v, u in enumerate(self.mapping) if u == v)
        if tuple(self.fixed_points) != expect:
            raise ValueError("fixed_points inconsistent with mapping")

    @classmethod
    def from_mapping(cls, mapping: Sequence[int]) -> "Involution":
        m = tuple(mapping)
        return cls(m, tuple(v for v, u in enumerate(m) if u == v))


def is_automorphism(g: Graph, mapping: Sequence[int]) -> bool:
    """Check that mapping preserves the edge set (direction included)."""
    if sorted(mapping) != list(range(g.n)):
        return False
    if g.directed:
        return all((mapping[u], mapping[v]) in g.edges for u, v in g.edges)
    return all(
        (min(mapping[u], mapping[v]), max(mapping[u], mapping[v])) in g.edges
        for u, v in g.edges
    )


def _mode_ok(g: Graph, mapping: Sequence[int], mode: str) -> bool:
    fixed = sum(1 for v, u in enumerate(mapping) if u == v)
    if mode == FIXED_POINT_FREE:
        return fixed == 0
    if fixed != 1:
        return False
    return all(u == v or not g.has_edge(v, u) for v, u in enumerate(mapping))


def _family_candidates(g: Graph) -> list[list[int]]:
    """Cheap canonical reflections for recognized families."""
    if g.family is None:
        return []
    name, params = g.family
    n = g.n
    out: list[list[int]] = []
    if name in ("path", "directed_path"):
        out.append([n - 1 - i for i in range(n)])
    elif name == "cycle":
        if n % 2 == 0:
            out.append([(i + n // 2) % n for i in range(n)])  # antipodal rotation
        out.append([(n - i) % n for i in range(n)])            # reflection at vertex 0
        out.append([(n - 1 - i) % n for i in range(n)])        # reflection at an edge
    elif name == "grid":
        dims = params
        coords = list(itertools.product(*(range(d) for d in dims)))
        index = {c: i for i, c in enumerate(coords)}
        # reflect any nonempty subset of axes
        for mask in range(1, 1 << len(dims)):
            mapping = [0] * n
            for c in coords:
                img = tuple(
                    dims[a] - 1 - c[a] if mask >> a & 1 else c[a]
                    for a in range(len(dims))
                )
                mapping[index[c]] = index[img]
            out.append(mapping)
    elif name == "hypercube":
        out.append([v ^ (n - 1) for v in range(n)])  # complement every bit
    elif name == "complete_binary_tree":
        mapping = [0] * n
        for v in range(1, n):
            p = (v - 1) // 2
            mapping[v] = 2 * mapping[p] + (2 if v % 2 == 1 else 1)
        out.append(mapping)
    return out


def find_involution(
    g: Graph,
    mode: str,
    *,
    exhaustive_cap: int = 24,
    node_budget: int = 2_000_000,
) -> Involution | None:
    """Search for an involutive automorphism with the given fixed-point shape.

    mode is SINGLE_FIXED_POINT (exactly one fixed vertex, and v is never
    adjacent to its image, so a pairing strategy can always answer on the
    partner) or FIXED_POINT_FREE. Returns None only when nonexistence is
    proven; raises InvolutionSearchBudget when the search is cut short
    (n above exhaustive_cap with no recognized family reflection, or the
    backtracking node budget runs out).
    """
    if mode not in _INVOLUTION_MODES:
        raise ValueError(f"unknown involution mode {mode!r}")

    # parity of the fixed-point count is forced: n - #fixed is even
    want_fixed = 1 if mode == SINGLE_FIXED_POINT else 0
    if g.n % 2 != want_fixed % 2:
        return None
    if g.n == 0:
        return None if want_fixed == 1 else Involution.from_mapping(())

    for cand in _family_candidates(g):
        if is_automorphism(g, cand) and _mode_ok(g, cand, mode):
            return Involution.from_mapping(cand)

    if g.n > exhaustive_cap:
        raise InvolutionSearchBudget(
            f"n={g.n} exceeds exhaustive cap {exhaustive_cap} and no canonical "
            "reflection applies"
        )

    # Backtracking over pairings. Vertices are matched in index order; each
    # step either fixes v (if the fixed budget allows) or pairs it with a
    # degree-compatible unmatched partner, checking edge preservation against
    # everything already matched.
    n = g.n
    mapping = [-1] * n
    deg = [g.degree(v) for v in range(n)]
    nodes = 0

    out_adj = g.out_adj if g.directed else None
    in_adj = g.in_adj if g.directed else None

    def consistent(v: int) -> bool:
        # all edges between v and matched vertices must map to edges
        if g.directed:
            for w in out_adj[v]:  # type: ignore[index]
                if mapping[w] >= 0 and (mapping[v], mapping[w]) not in g.edges:
                    return False
            for w in in_adj[v]:  # type: ignore[index]
                if mapping[w] >= 0 and (mapping[w], mapping[v]) not in g.edges:
                    return False
        else:
            for w in g.adj[v]:
                if mapping[w] >= 0 and not g.has_edge(mapping[v], mapping[w]):
                    return False
        return True

    def rec(fixed_left: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise InvolutionSearchBudget(
                f"involution search exceeded {node_budget} nodes on n={n}"
            )
        v = next((i for i in range(n) if mapping[i] < 0), -1)
        if v < 0:
            return True
        if fixed_left > 0:
            mapping[v] = v
            if consistent(v) and rec(fixed_left - 1):
                return True
            mapping[v] = -1
        for u in range(v + 1, n):
            if mapping[u] >= 0 or deg[u] != deg[v]:
                continue
            if mode == SINGLE_FIXED_POINT and g.has_edge(v, u):
                continue
            mapping[v], mapping[u] = u, v
            if consistent(v) and consistent(u) and rec(fixed_left):
                return True
            mapping[v] = mapping[u] = -1
        return False

    if rec(want_fixed):
        assert is_automorphism(g, mapping)
        return Involution.from_mapping(mapping)
    return None


# ---- text format ---------------------------------------------------------

@dataclass(frozen=True)
class GraphDocument:
    """A graph plus the optional position data the text format can carry."""

    graph: Graph
    k: int | None = None
    coloring: tuple[int | None, ...] | None = None
    order: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        n = self.graph.n
        if self.coloring is not None:
            if len(self.coloring) != n:
                raise ValueError("coloring length must equal vertex count")
            for c in self.coloring:
                if c is not None and c < 1:
                    raise ValueError("colors are 1-based positive integers")
                if c is not None and self.k is not None and c > self.k:
                    raise ValueError(f"color {c} exceeds k={self.k}")
        if self.order is not None and sorted(self.order) != list(range(n)):
            raise ValueError("order must be a permutation of all vertices")


def parse_graph_text(text: str) -> GraphDocument:
    """Parse the line-oriented graph format.

    Directives: "graph directed|undirected", "vertices <n>", "edge <u> <v>",
    "color <v> <c>", "k <colors>", "order <v_1> ... <v_n>". '#' starts a
    comment; blank lines are skipped. Vertex ids are 0-based, colors 1-based.
    """
    directed: bool | None = None
    n: int | None = None
    k: int | None = None
    edges: list[tuple[int, int]] = []
    colors: dict[int, int] = {}
    order: tuple[int, ...] | None = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        key, args = parts[0], parts[1:]

        def fail(msg: str) -> GraphFormatError:
            return GraphFormatError(f"line {lineno}: {msg}")

        if key == "graph":
            if len(args) != 1 or args[0] not in ("directed", "undirected"):
                raise fail("expected 'graph directed|undirected'")
            if directed is not None:
                raise fail("duplicate graph line")
            directed = args[0] == "directed"
        elif key == "vertices":
            if len(args) != 1 or not args[0].isdigit():
                raise fail("expected 'vertices <n>'")
            if n is not None:
                raise fail("duplicate vertices line")
            n = int(args[0])
        elif key == "edge":
            if len(args) != 2:
                raise fail("expected 'edge <u> <v>'")
            try:
                edges.append((int(args[0]), int(args[1])))
            except ValueError:
                raise fail("edge endpoints must be integers") from None
        elif key == "color":
            if len(args) != 2:
                raise fail("expected 'color <v> <c>'")
            try:
                v, c = int(args[0]), int(args[1])
            except ValueError:
                raise fail("color arguments must be integers") from None
            if v in colors:
                raise fail(f"duplicate color for vertex {v}")
            if c < 1:
                raise fail("colors are 1-based")
            colors[v] = c
        elif key == "k":
            if len(args) != 1 or not args[0].isdigit():
                raise fail("expected 'k <colors>'")
            k = int(args[0])
        elif key == "order":
            if order is not None:
                raise fail("duplicate order line")
            try:
                order = tuple(int(a) for a in args)
            except ValueError:
                raise fail("order entries must be integers") from None
        else:
            raise fail(f"unknown directive {key!r}")

    if directed is None:
        raise GraphFormatError("missing 'graph directed|undirected' line")
    if n is None:
        raise GraphFormatError("missing 'vertices <n>' line")
    try:
        g = make_graph(n, edges, directed=directed)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from exc
    if any(not 0 <= v < n for v in colors):
        raise GraphFormatError("color line names a vertex out of range")
    if k is not None and any(c > k for c in colors.values()):
        raise GraphFormatError("color exceeds declared k")
    coloring = None
    if colors:
        coloring = tuple(colors.get(v) for v in range(n))
    if order is not None and sorted(order) != list(range(n)):
        raise GraphFormatError("order must list every vertex exactly once")
    return GraphDocument(graph=g, k=k, coloring=coloring, order=order)


def format_graph_text(doc: GraphDocument) -> str:
    """Emit the canonical text form (stable line order, bit-exact round trip)."""
    g = doc.graph
    lines = [
        f"graph {'directed' if g.directed else 'undirected'}",
        f"vertices {g.n}",
    ]
    if doc.k is not None:
        lines.append(f"k {doc.k}")
    for u, v in sorted(g.edges):
        lines.append(f"edge {u} {v}")
    if doc.coloring is not None:
        for v, c in enumerate(doc.coloring):
            if c is not None:
                lines.append(f"color {v} {c}")
    if doc.order is not None:
        lines.append("order " + " ".join(str(v) for v in doc.order))
    return "\n".join(lines) + "\n"


def load_graph_file(path: str) -> GraphDocument:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph_text(fh.read())


def save_graph_file(doc: GraphDocument, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_graph_text(doc))
