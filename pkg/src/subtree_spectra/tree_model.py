"""Trees on vertices 0..n-1: parsing, named families, deletion, isomorphism codes.

Trees and forests are immutable after construction and safe to share
across worker processes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidParameters, MalformedLine, NotATree, VertexOutOfRange


class Tree:
    """Undirected tree with vertices 0..n-1 and sorted adjacency lists."""

    __slots__ = ("n", "adjacency")

    def __init__(self, n: int, edges):
        if n < 1:
            raise NotATree("a tree has at least one vertex")
        edges = list(edges)
        if len(edges) != n - 1:
            raise NotATree(f"{n} vertices need {n - 1} edges, got {len(edges)}")
        adj = [[] for _ in range(n)]
        seen = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise NotATree(f"edge ({u},{v}) outside vertex range 0..{n - 1}")
            if u == v:
                raise NotATree(f"self-loop at {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise NotATree(f"parallel edge ({u},{v})")
            seen.add(key)
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(
            self, "adjacency", tuple(tuple(sorted(a)) for a in adj)
        )
        object.__setattr__(self, "n", n)
        if not self.is_connected():
            raise NotATree("edge set is disconnected")

    def __setattr__(self, name, value):
        raise AttributeError("Tree is immutable")

    def __reduce__(self):
        return (Tree, (self.n, self.edges()))

    def neighbors(self, v: int):
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def edges(self):
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def is_connected(self) -> bool:
        seen = [False] * self.n
        stack = [0]
        seen[0] = True
        count = 1
        while stack:
            u = stack.pop()
            for w in self.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    count += 1
                    stack.append(w)
        return count == self.n

    def check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise VertexOutOfRange(f"vertex {v} not in 0..{self.n - 1}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tree):
            return NotImplemented
        return self.n == other.n and self.adjacency == other.adjacency

    def __hash__(self) -> int:
        return hash((self.n, self.adjacency))

    def __repr__(self) -> str:
        return f"Tree(n={self.n}, edges={self.edges()!r})"


@dataclass(frozen=True)
class Forest:
    """Disjoint trees; component i uses local indices 0..components[i].n-1.

    ``origins[i][j]`` is the vertex of the originating graph that became
    vertex j of component i (identity ranges when built directly).
    """

    components: tuple[Tree, ...]
    origins: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        if not self.origins:
            start = 0
            origins = []
            for t in self.components:
                origins.append(tuple(range(start, start + t.n)))
                start += t.n
            object.__setattr__(self, "origins", tuple(origins))

    @property
    def total(self) -> int:
        return sum(t.n for t in self.components)


@dataclass(frozen=True)
class FamilySpec:
    """Named tree family.

    kind "path" and "star" take one parameter n (the order).  kind
    "spider" takes (a, b), both >= 1: a star center with a pendant leaves
    plus b spokes of length two; order a + 2b + 1.
    """

    kind: str
    params: tuple[int, ...]

    KINDS = ("path", "star", "spider")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise InvalidParameters(f"unknown family kind {self.kind!r}")
        if self.kind in ("path", "star"):
            if len(self.params) != 1 or self.params[0] < 1:
                raise InvalidParameters(f"{self.kind} needs one parameter n >= 1")
        else:
            if len(self.params) != 2 or min(self.params) < 1:
                raise InvalidParameters("spider needs parameters a >= 1, b >= 1")

    @property
    def order(self) -> int:
        if self.kind == "spider":
            a, b = self.params
            return a + 2 * b + 1
        return self.params[0]

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        """Parse the CLI syntax: "path:N", "star:N", "spider:A,B"."""
        kind, sep, rest = text.partition(":")
        if not sep:
            raise InvalidParameters(f"missing ':' in family spec {text!r}")
        try:
            params = tuple(int(p) for p in rest.split(","))
        except ValueError as exc:
            raise InvalidParameters(f"non-integer parameter in {text!r}") from exc
        return cls(kind, params)

    def __str__(self) -> str:
        return f"{self.kind}:{','.join(str(p) for p in self.params)}"


def parse_edge_list(text: str) -> Tree:
    """Build a Tree from edge-list text, one "u v" pair per line.

    Blank lines and lines starting with '#' are ignored.  The order is
    inferred as max vertex index + 1; an empty edge list is the
    single-vertex tree.
    """
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise MalformedLine(f"line {lineno}: expected two fields, got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise MalformedLine(f"line {lineno}: non-integer vertex in {raw!r}") from exc
        if u < 0 or v < 0:
            raise MalformedLine(f"line {lineno}: negative vertex in {raw!r}")
        edges.append((u, v))
    if not edges:
        return Tree(1, [])
    n = max(max(u, v) for u, v in edges) + 1
    return Tree(n, edges)


def build_family(spec: FamilySpec) -> Tree:
    """Construct the named family member with the documented labeling."""
    if spec.kind == "path":
        n = spec.params[0]
        return Tree(n, [(i, i + 1) for i in range(n - 1)])
    if spec.kind == "star":
        n = spec.params[0]
        return Tree(n, [(0, i) for i in range(1, n)])
    a, b = spec.params
    # center 0; leaves 1..a; spoke a+i joins 0, pendant a+b+i hangs off a+i
    edges = [(0, i) for i in range(1, a + 1)]
    for i in range(1, b + 1):
        edges.append((0, a + i))
        edges.append((a + i, a + b + i))
    return Tree(a + 2 * b + 1, edges)


def delete_vertex(t: Tree, v: int) -> Forest:
    """Remove v; components are re-indexed from 0 with their origin maps."""
    t.check_vertex(v)
    if t.n == 1:
        return Forest(())
    seen = [False] * t.n
    seen[v] = True
    components = []
    origins = []
    for start in t.adjacency[v]:
        if seen[start]:
            continue
        verts = [start]
        seen[start] = True
        stack = [start]
        while stack:
            u = stack.pop()
            for w in t.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    verts.append(w)
                    stack.append(w)
        verts.sort()
        index = {old: new for new, old in enumerate(verts)}
        edges = [
            (index[u], index[w])
            for u in verts
            for w in t.adjacency[u]
            if w != v and u < w
        ]
        components.append(Tree(len(verts), edges))
        origins.append(tuple(verts))
    return Forest(tuple(components), tuple(origins))


def _rooted_code(t: Tree, root: int, banned: int = -1) -> bytes:
    """Canonical code of the subtree reachable from root avoiding `banned`.

    Children codes are sorted, so equal codes <=> isomorphic rooted trees.
    Iterative post-order to stay safe on path-like trees.
    """
    parent = {root: banned}
    order = [root]
    stack = [root]
    while stack:
        u = stack.pop()
        for w in t.adjacency[u]:
            if w != parent[u]:
                parent[w] = u
                order.append(w)
                stack.append(w)
    code: dict[int, bytes] = {}
    children: dict[int, list[bytes]] = {u: [] for u in order}
    for u in reversed(order):
        code[u] = b"(" + b"".join(sorted(children[u])) + b")"
        p = parent[u]
        if p != banned:
            children[p].append(code[u])
    return code[root]


def tree_centers(t: Tree) -> tuple[int, ...]:
    """The one or two middle vertices found by repeatedly stripping leaves."""
    if t.n <= 2:
        return tuple(range(t.n))
    degree = [t.degree(v) for v in range(t.n)]
    layer = [v for v in range(t.n) if degree[v] == 1]
    remaining = t.n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for w in t.adjacency[v]:
                degree[w] -= 1
                if degree[w] == 1:
                    nxt.append(w)
        layer = nxt
    return tuple(sorted(layer))


def canonical_code(t: Tree) -> bytes:
    """Isomorphism-complete byte code: equal codes <=> isomorphic trees."""
    centers = tree_centers(t)
    if len(centers) == 1:
        return b"1:" + _rooted_code(t, centers[0])
    c1, c2 = centers
    half1 = _rooted_code(t, c1, banned=c2)
    half2 = _rooted_code(t, c2, banned=c1)
    lo, hi = sorted((half1, half2))
    return b"2:" + lo + hi


def brute_force_isomorphic(t1: Tree, t2: Tree) -> bool:
    """Definitional isomorphism test by trying all vertex bijections.

    Exponential; used only as a test oracle for canonical_code at tiny n.
    """
    from itertools import permutations

    if t1.n != t2.n:
        return False
    e2 = {frozenset(e) for e in t2.edges()}
    for perm in permutations(range(t1.n)):
        if all(frozenset((perm[u], perm[v])) in e2 for u, v in t1.edges()):
            return True
    return False
