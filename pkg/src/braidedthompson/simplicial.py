"""Finite simplicial complexes, matching complexes, and integer homology.

Complexes are stored by their maximal faces over an explicit vertex tuple.
Matching complexes of small graphs are built two independent ways (directly,
and as independence complexes of line graphs) so each construction can check
the other.  Homology is exact: boundary matrices over the integers reduced
to Smith normal form with arbitrary-precision arithmetic.
"""

from __future__ import annotations

import dataclasses
import itertools
import json
import math
from typing import Hashable, Iterable, Iterator, Sequence

__all__ = [
    "ComplexError",
    "ConnectivityReport",
    "Graph",
    "SimplicialComplex",
    "complete_graph",
    "connectivity_report",
    "graph_distance",
    "homology",
    "independence_complex",
    "is_matching",
    "line_graph",
    "matching_complex",
    "path_graph",
    "qi_constant",
    "smith_normal_form",
]


class ComplexError(ValueError):
    pass


# -- graphs -------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class Graph:
    """Vertices 1..vertex_count with an unordered edge set; loops allowed."""

    vertex_count: int
    edges: frozenset[tuple[int, int]]

    def __init__(self, vertex_count: int, edges: Iterable[Sequence[int]]) -> None:
        norm = set()
        for e in edges:
            u, v = e
            if not (1 <= u <= vertex_count and 1 <= v <= vertex_count):
                raise ComplexError(f"edge {e!r} leaves 1..{vertex_count}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "vertex_count", vertex_count)
        object.__setattr__(self, "edges", frozenset(norm))

    def non_loop_edges(self) -> list[tuple[int, int]]:
        return sorted(e for e in self.edges if e[0] != e[1])

    def neighbors(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {v: set() for v in range(1, self.vertex_count + 1)}
        for u, v in self.non_loop_edges():
            adj[u].add(v)
            adj[v].add(u)
        return adj


def path_graph(num_edges: int) -> Graph:
    """The linear graph whose edges form a single path."""
    return Graph(num_edges + 1, [(i, i + 1) for i in range(1, num_edges + 1)])


def complete_graph(n: int) -> Graph:
    return Graph(n, itertools.combinations(range(1, n + 1), 2))


def line_graph(g: Graph) -> Graph:
    """Vertices are the non-loop edges of g, in sorted order, joined when they meet."""
    edges = g.non_loop_edges()
    adj = []
    for i, j in itertools.combinations(range(len(edges)), 2):
        if set(edges[i]) & set(edges[j]):
            adj.append((i + 1, j + 1))
    return Graph(len(edges), adj)


def is_matching(g: Graph, edges: Iterable[tuple[int, int]]) -> bool:
    edges = list(edges)
    seen: set[int] = set()
    for e in edges:
        if tuple(e) not in g.edges or e[0] == e[1]:
            return False
        if e[0] in seen or e[1] in seen:
            return False
        seen.update(e)
    return True


# -- simplicial complexes -----------------------------------------------------


@dataclasses.dataclass(frozen=True)
class SimplicialComplex:
    """Finite complex on opaque vertex labels, stored by maximal faces.

    Every listed vertex is a face; the empty complex has no vertices.
    """

    vertices: tuple[Hashable, ...]
    maximal: frozenset[frozenset]

    def __init__(self, vertices: Iterable[Hashable], faces: Iterable[Iterable]) -> None:
        verts: list[Hashable] = []
        seen: set[Hashable] = set()
        for v in vertices:
            if v not in seen:
                seen.add(v)
                verts.append(v)
        sets = {frozenset(f) for f in faces}
        sets.discard(frozenset())
        for f in sets:
            if not f <= seen:
                raise ComplexError(f"face {set(f)!r} uses unknown vertices")
        covered: set[Hashable] = set().union(*sets) if sets else set()
        sets.update(frozenset((v,)) for v in verts if v not in covered)
        maximal = {f for f in sets if not any(f < g for g in sets)}
        object.__setattr__(self, "vertices", tuple(verts))
        object.__setattr__(self, "maximal", frozenset(maximal))

    # -- queries -----------------------------------------------------------

    def is_empty(self) -> bool:
        return not self.vertices

    def dim(self) -> int:
        if not self.maximal:
            return -1
        return max(len(f) for f in self.maximal) - 1

    def contains(self, face: Iterable) -> bool:
        f = frozenset(face)
        return any(f <= g for g in self.maximal)

    def all_faces(self) -> set[frozenset]:
        out: set[frozenset] = set()
        for f in self.maximal:
            for k in range(1, len(f) + 1):
                out.update(map(frozenset, itertools.combinations(f, k)))
        return out

    def faces_of_dim(self, k: int) -> list[tuple[int, ...]]:
        """k-faces as sorted tuples of vertex indices."""
        index = {v: i for i, v in enumerate(self.vertices)}
        found = {
            tuple(sorted(index[v] for v in c))
            for f in self.maximal
            if len(f) > k
            for c in itertools.combinations(f, k + 1)
        }
        return sorted(found)

    def f_vector(self) -> list[int]:
        return [len(self.faces_of_dim(k)) for k in range(self.dim() + 1)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * fk for k, fk in enumerate(self.f_vector()))

    def adjacency(self) -> dict[Hashable, set[Hashable]]:
        adj: dict[Hashable, set[Hashable]] = {v: set() for v in self.vertices}
        for f in self.maximal:
            for u, v in itertools.combinations(f, 2):
                adj[u].add(v)
                adj[v].add(u)
        return adj

    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        adj = self.adjacency()
        todo = [self.vertices[0]]
        seen = {self.vertices[0]}
        while todo:
            for w in adj[todo.pop()]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == len(self.vertices)

    def link(self, face: Iterable) -> SimplicialComplex:
        sigma = frozenset(face)
        if sigma and not self.contains(sigma):
            raise ComplexError(f"face {set(sigma)!r} is not in the complex")
        if not sigma:
            return self
        residues = [f - sigma for f in self.maximal if sigma <= f]
        verts = [v for v in self.vertices if any(v in r for r in residues)]
        return SimplicialComplex(verts, residues)

    def is_flag(self) -> bool:
        """Every clique of the 1-skeleton spans a face."""
        adj = self.adjacency()
        return all(self.contains(c) for c in _maximal_cliques(adj))

    # -- serialisation -------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "vertices": [_plain(v) for v in self.vertices],
            "maximal_faces": sorted(
                [sorted((_plain(v) for v in f), key=json.dumps) for f in self.maximal],
                key=json.dumps,
            ),
        }

    @staticmethod
    def from_json(data: object) -> SimplicialComplex:
        if not isinstance(data, dict) or set(data) != {"vertices", "maximal_faces"}:
            raise ComplexError(f"not a complex object: {data!r}")
        verts = [_unplain(v) for v in data["vertices"]]
        faces = [[_unplain(v) for v in f] for f in data["maximal_faces"]]
        return SimplicialComplex(verts, faces)

    def to_dot(self, name: str = "complex") -> str:
        lines = [f"graph {name} {{"]
        adj = self.adjacency()
        for v in self.vertices:
            lines.append(f'  "{_plain(v)}";')
        for u, v in sorted(
            {tuple(sorted((str(_plain(a)), str(_plain(b))))) for a in adj for b in adj[a]}
        ):
            lines.append(f'  "{u}" -- "{v}";')
        lines.append("}")
        return "\n".join(lines)


def _plain(label):
    """Stable JSON-friendly form of a vertex label."""
    if isinstance(label, tuple):
        return list(label)
    return label


def _unplain(label):
    if isinstance(label, list):
        return tuple(label)
    return label


def _maximal_cliques(adj: dict) -> Iterator[frozenset]:
    """Bron-Kerbosch with pivoting."""

    def rec(r: set, p: set, x: set) -> Iterator[frozenset]:
        if not p and not x:
            yield frozenset(r)
            return
        pivot = max(p | x, key=lambda u: len(p & adj[u]))
        for v in list(p - adj[pivot]):
            yield from rec(r | {v}, p & adj[v], x & adj[v])
            p.remove(v)
            x.add(v)

    if adj:
        yield from rec(set(), set(adj), set())


# -- matching complexes -------------------------------------------------------


def matching_complex(g: Graph) -> SimplicialComplex:
    """Faces are the matchings of the graph; loops are discarded."""
    edges = g.non_loop_edges()
    faces: list[list[tuple[int, int]]] = []

    def rec(start: int, used: set[int], current: list[tuple[int, int]]) -> None:
        faces.append(list(current))
        for i in range(start, len(edges)):
            u, v = edges[i]
            if u in used or v in used:
                continue
            current.append(edges[i])
            rec(i + 1, used | {u, v}, current)
            current.pop()

    rec(0, set(), [])
    return SimplicialComplex(edges, faces)


def independence_complex(g: Graph, labels: Sequence[Hashable] | None = None) -> SimplicialComplex:
    """Faces are the independent vertex sets; the cross-check constructor."""
    if labels is None:
        labels = list(range(1, g.vertex_count + 1))
    if len(labels) != g.vertex_count:
        raise ComplexError("need one label per vertex")
    adj = g.neighbors()
    complement = {
        v: {w for w in adj if w != v and w not in adj[v]} for v in adj
    }
    faces = [
        [labels[v - 1] for v in clique] for clique in _maximal_cliques(complement)
    ]
    return SimplicialComplex(labels, faces)


# -- homology -----------------------------------------------------------------


def smith_normal_form(rows: Sequence[Sequence[int]]) -> list[int]:
    """Diagonal of the Smith normal form, nonnegative with a divisibility chain.

    Pivots are chosen by smallest nonzero magnitude to tame coefficient growth.
    """
    mat = [list(r) for r in rows]
    m = len(mat)
    n = len(mat[0]) if mat else 0
    diag: list[int] = []
    t = 0
    while t < m and t < n:
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if mat[i][j] and (pivot is None or abs(mat[i][j]) < abs(mat[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        mat[t], mat[pi] = mat[pi], mat[t]
        for row in mat:
            row[t], row[pj] = row[pj], row[t]
        p = mat[t][t]
        dirty = False
        for i in range(t + 1, m):
            if mat[i][t]:
                q = mat[i][t] // p
                mat[i] = [a - q * b for a, b in zip(mat[i], mat[t])]
                dirty = dirty or mat[i][t] != 0
        for j in range(t + 1, n):
            if mat[t][j]:
                q = mat[t][j] // p
                for row in mat:
                    row[j] -= q * row[t]
                dirty = dirty or mat[t][j] != 0
        if dirty:
            continue
        off = next(
            (
                i
                for i in range(t + 1, m)
                if any(mat[i][j] % p for j in range(t + 1, n))
            ),
            None,
        )
        if off is not None:
            mat[t] = [a + b for a, b in zip(mat[t], mat[off])]
            continue
        diag.append(abs(p))
        t += 1
    return diag


def _boundary_matrix(upper: list[tuple[int, ...]], lower: list[tuple[int, ...]]) -> list[list[int]]:
    index = {f: i for i, f in enumerate(lower)}
    mat = [[0] * len(upper) for _ in lower]
    for j, f in enumerate(upper):
        for i in range(len(f)):
            sub = f[:i] + f[i + 1 :]
            mat[index[sub]][j] = (-1) ** i
    return mat


def homology(k: SimplicialComplex) -> list[tuple[int, list[int]]]:
    """Reduced integer homology, one (betti, torsion) pair per dimension."""
    top = k.dim()
    if top < 0:
        return []
    chains = [k.faces_of_dim(d) for d in range(top + 1)]
    # the augmentation row makes dimension zero reduced
    mats = [[[1] * len(chains[0])]]
    for d in range(1, top + 1):
        mats.append(_boundary_matrix(chains[d], chains[d - 1]))
    diags = [smith_normal_form(m) for m in mats]
    ranks = [sum(1 for d in diag if d) for diag in diags]
    out: list[tuple[int, list[int]]] = []
    for d in range(top + 1):
        kernel = len(chains[d]) - ranks[d]
        if d + 1 <= top:
            image = ranks[d + 1]
            torsion = [v for v in diags[d + 1] if v > 1]
        else:
            image = 0
            torsion = []
        out.append((kernel - image, torsion))
    return out


# -- connectivity -------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class ConnectivityReport:
    nonempty: bool
    path_connected: bool
    reduced_homology: tuple[tuple[int, tuple[int, ...]], ...]
    homological_connectivity: int
    collapses_to_point: bool
    simply_connected: bool | None

    def to_json(self) -> dict:
        return dataclasses.asdict(self)


def _greedy_collapse(faces: set[frozenset]) -> set[frozenset]:
    """Remove free face pairs until stuck; deterministic sweep order."""
    faces = set(faces)
    key = lambda f: (len(f), sorted(map(repr, f)))
    changed = True
    while changed and len(faces) > 1:
        changed = False
        for sigma in sorted(faces, key=key):
            cofaces = [t for t in faces if sigma < t]
            if len(cofaces) == 1:
                faces.remove(sigma)
                faces.remove(cofaces[0])
                changed = True
                break
    return faces


def connectivity_report(k: SimplicialComplex) -> ConnectivityReport:
    """Exact homological connectivity plus a best-effort collapse probe.

    The connectivity number is the largest i such that all reduced homology
    vanishes through dimension i; -1 means nonempty but disconnected, -2 means
    empty.  Simple connectivity is only decided when a collapse settles it or
    first homology obstructs it.
    """
    hom = homology(k)
    if not hom:
        return ConnectivityReport(False, False, (), -2, False, None)
    conn = -1
    for betti, torsion in hom:
        if betti or torsion:
            break
        conn += 1
    remaining = _greedy_collapse(k.all_faces())
    collapsed = len(remaining) == 1
    if collapsed:
        simply = True
    elif hom[0][0] != 0 or (len(hom) > 1 and (hom[1][0] or hom[1][1])):
        simply = False
    else:
        simply = None
    return ConnectivityReport(
        nonempty=True,
        path_connected=k.is_connected(),
        reduced_homology=tuple((b, tuple(t)) for b, t in hom),
        homological_connectivity=conn,
        collapses_to_point=collapsed,
        simply_connected=simply,
    )


def graph_distance(k: SimplicialComplex, u: Hashable, v: Hashable) -> int | float:
    """Breadth-first distance in the 1-skeleton; infinity when separated."""
    if u not in k.vertices or v not in k.vertices:
        raise ComplexError("both endpoints must be vertices")
    if u == v:
        return 0
    adj = k.adjacency()
    dist = {u: 0}
    todo = [u]
    while todo:
        nxt = []
        for w in todo:
            for z in adj[w]:
                if z not in dist:
                    dist[z] = dist[w] + 1
                    if z == v:
                        return dist[z]
                    nxt.append(z)
        todo = nxt
    return math.inf


def qi_constant(y: SimplicialComplex, x: SimplicialComplex) -> int | float:
    """Largest x-distance across any y-edge whose ends are both x-vertices."""
    best: int | float = 0
    xverts = set(x.vertices)
    for f in y.maximal:
        for u, v in itertools.combinations(sorted(f, key=repr), 2):
            if u in xverts and v in xverts:
                best = max(best, graph_distance(x, u, v))
    return best
