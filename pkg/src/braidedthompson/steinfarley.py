"""Finite patches of the cube complex of braided tree diagrams.

A 0-cube is a reduced (tree, braid, forest) diagram taken up to right
multiplication by pure moves at the forest object; its height is the number
of forest roots.  Split directions raise the height and always assemble into
a single simplex; merge directions lower it and may carry a pure braid, so
the descending side can only ever be enumerated up to a braid length bound.
Every shadow produced here carries its bound with it.
"""

from __future__ import annotations

import dataclasses
import itertools
from typing import Iterable, Sequence

from .braid import BraidWord
from .diagram import Diagram, DiagramError, multiply
from .forest import Forest, ShapeError, SupportOverlapError, elementary_forest
from .simplicial import SimplicialComplex

__all__ = [
    "Cube",
    "CubeVertex",
    "DescendingLinkShadow",
    "PatchReport",
    "VertexInterner",
    "ascending_link",
    "build_patch",
    "cube_span",
    "descending_link_shadow",
    "is_deferred_bare",
    "merge_forest",
    "merge_vertex",
    "patch_check",
    "pure_braid_words",
    "split_vertex",
    "vertex_equal",
]


@dataclasses.dataclass(frozen=True)
class CubeVertex:
    """A 0-cube, stored as the reduced diagram of one coset representative.

    Structural equality compares representatives; use vertex_equal or an
    interner for coset equality.
    """

    diagram: Diagram

    def __post_init__(self) -> None:
        if self.diagram.neg.num_roots != 1:
            raise DiagramError("a cube vertex hangs from a single tree")
        object.__setattr__(self, "diagram", self.diagram.reduced())

    @property
    def height(self) -> int:
        return self.diagram.pos.num_roots

    @staticmethod
    def base() -> CubeVertex:
        return CubeVertex(Diagram.identity())

    def __repr__(self) -> str:
        return f"CubeVertex(h={self.height}, {self.diagram!r})"


def vertex_equal(x: CubeVertex, y: CubeVertex) -> bool:
    """Coset equality: one vertex backwards then the other is a pure move."""
    if x.height != y.height:
        return False
    z = multiply(y.diagram.invert(), x.diagram)
    return z.neg.is_trivial() and z.pos.is_trivial() and z.braid.is_pure()


class VertexInterner:
    """Get-or-insert table mapping vertices to canonical coset representatives.

    Buckets are keyed by data a pure right move cannot change on the reduced
    diagram (both shapes and the braid's permutation), so the quadratic
    equality scan only runs within a bucket.  Patch walks share one table;
    a parallel driver must treat canonical() as an atomic get-or-insert.
    """

    def __init__(self) -> None:
        self._buckets: dict[tuple, list[CubeVertex]] = {}

    @staticmethod
    def _key(v: CubeVertex) -> tuple:
        d = v.diagram
        return (d.neg, d.pos, d.braid.permutation())

    def canonical(self, v: CubeVertex) -> CubeVertex:
        bucket = self._buckets.setdefault(self._key(v), [])
        for w in bucket:
            if vertex_equal(v, w):
                return w
        bucket.append(v)
        return v

    def find(self, v: CubeVertex) -> CubeVertex | None:
        for w in self._buckets.get(self._key(v), []):
            if vertex_equal(v, w):
                return w
        return None

    def __len__(self) -> int:
        return sum(len(b) for b in self._buckets.values())


# -- elementary moves ---------------------------------------------------------


def merge_forest(num_feet: int, left_feet: Iterable[int]) -> Forest:
    """Elementary forest with one caret joining leaves (i, i+1) per entry."""
    pairs = sorted(set(left_feet))
    used: set[int] = set()
    for i in pairs:
        if not 1 <= i <= num_feet - 1:
            raise ShapeError(f"merge position {i} out of range 1..{num_feet - 1}")
        if i in used or i + 1 in used:
            raise SupportOverlapError(f"merge pairs collide at foot {i}")
        used.update((i, i + 1))
    return elementary_forest(num_feet - len(pairs), [i - k for k, i in enumerate(pairs)])


def _split_element(num_feet: int, feet: Iterable[int]) -> Diagram:
    c = elementary_forest(num_feet, set(feet))
    n = c.num_leaves
    return Diagram(c, BraidWord.identity(n), Forest.trivial(n))


def _merge_element(
    num_feet: int, left_feet: Iterable[int], braid: BraidWord | None = None
) -> Diagram:
    e = merge_forest(num_feet, left_feet)
    q = BraidWord.identity(num_feet) if braid is None else braid
    if q.strands != num_feet:
        raise DiagramError(f"merge braid needs {num_feet} strands, got {q.strands}")
    return Diagram(Forest.trivial(num_feet), q, e)


def split_vertex(x: CubeVertex, foot: int) -> CubeVertex:
    if not 1 <= foot <= x.height:
        raise ShapeError(f"split foot {foot} out of range 1..{x.height}")
    return CubeVertex(multiply(x.diagram, _split_element(x.height, [foot])))


def merge_vertex(
    x: CubeVertex, left_foot: int, braid: BraidWord | None = None
) -> CubeVertex:
    if x.height < 2:
        raise DiagramError("merging needs at least two feet")
    return CubeVertex(multiply(x.diagram, _merge_element(x.height, [left_foot], braid)))


def pure_braid_words(strands: int, max_length: int) -> list[BraidWord]:
    """Freely reduced words of bounded length with trivial permutation."""
    out = [BraidWord.identity(strands)]
    alphabet = [g for i in range(1, strands) for g in (i, -i)]

    def rec(word: list[int]) -> None:
        if word:
            w = BraidWord(strands, tuple(word))
            if w.is_pure():
                out.append(w)
        if len(word) == max_length:
            return
        for g in alphabet:
            if word and g == -word[-1]:
                continue
            word.append(g)
            rec(word)
            word.pop()

    rec([])
    return out


# -- links --------------------------------------------------------------------


def ascending_link(x: CubeVertex) -> SimplicialComplex:
    """The split directions, one per foot; they always span a full simplex."""
    feet = list(range(1, x.height + 1))
    return SimplicialComplex(feet, [feet])


@dataclasses.dataclass(frozen=True, eq=False)
class DescendingLinkShadow:
    """Merge directions below a vertex, enumerated up to a braid length bound.

    No effective bound relates braid length to coverage, so completeness at
    the recorded bound is unknown and the bound travels with the result.
    projection maps every enumerated face to the matching its carets cut out
    of the feet; data keeps one witnessing (braid, merge positions) pair.
    """

    complex: SimplicialComplex
    braid_bound: int
    projection: dict
    data: dict


def _merge_position_sets(num_feet: int) -> list[tuple[int, ...]]:
    positions = range(1, num_feet)
    out: list[tuple[int, ...]] = []
    for k in range(1, num_feet // 2 + 1):
        for combo in itertools.combinations(positions, k):
            if all(b - a >= 2 for a, b in zip(combo, combo[1:])):
                out.append(combo)
    return out


def descending_link_shadow(
    x: CubeVertex, braid_bound: int, interner: VertexInterner | None = None
) -> DescendingLinkShadow:
    m = x.height
    if m < 2:
        raise DiagramError("descending directions need height at least 2")
    if interner is None:
        interner = VertexInterner()
    words = pure_braid_words(m, braid_bound)

    def bottom(q: BraidWord, feet: Sequence[int]) -> CubeVertex:
        return interner.canonical(
            CubeVertex(multiply(x.diagram, _merge_element(m, feet, q)))
        )

    vertices: list[CubeVertex] = []
    seen_vertices: set[CubeVertex] = set()
    seen_simplices: set[CubeVertex] = set()
    faces: dict[frozenset, tuple[frozenset, tuple]] = {}
    for positions in _merge_position_sets(m):
        for q in words:
            full = bottom(q, positions)
            if full in seen_simplices:
                continue
            seen_simplices.add(full)
            labels = tuple(bottom(q, (i,)) for i in positions)
            for lab in labels:
                if lab not in seen_vertices:
                    seen_vertices.add(lab)
                    vertices.append(lab)
            face = frozenset(labels)
            assert len(face) == len(positions)
            matching = frozenset((i, i + 1) for i in positions)
            if face in faces:
                assert faces[face][0] == matching
            else:
                faces[face] = (matching, (q, positions))
    complex_ = SimplicialComplex(vertices, faces.keys())
    projection = {f: m_ for f, (m_, _) in faces.items()}
    data = {f: d for f, (_, d) in faces.items()}
    return DescendingLinkShadow(complex_, braid_bound, projection, data)


# -- cubes --------------------------------------------------------------------


@dataclasses.dataclass(frozen=True, eq=False)
class Cube:
    """A spanned cube; corners are keyed by the consumed direction subsets."""

    base: CubeVertex
    downs: tuple[int, ...]
    ups: tuple[int, ...]
    corners: dict
    bottom: CubeVertex
    top: CubeVertex
    connector: Diagram

    @property
    def dimension(self) -> int:
        return len(self.downs) + len(self.ups)

    def vertex_set(self) -> list[CubeVertex]:
        return list(self.corners.values())


def _corner(
    x: CubeVertex, merge_lefts: Sequence[int], split_feet: Sequence[int]
) -> CubeVertex:
    h = x.height
    d = x.diagram
    if split_feet:
        d = multiply(d, _split_element(h, split_feet))
    if merge_lefts:
        shifted = [i + sum(1 for u in split_feet if u < i) for i in merge_lefts]
        d = multiply(d, _merge_element(h + len(split_feet), shifted))
    return CubeVertex(d)


def _connector(h: int, downs: Sequence[int], ups: Sequence[int]) -> Diagram:
    rights = {i + 1 for i in downs}

    def foot(f: int) -> int:
        return f - sum(1 for r in rights if r <= f)

    roots = {foot(i) for i in downs} | {foot(j) for j in ups}
    return _split_element(h - len(downs), roots)


def cube_span(x: CubeVertex, downs: Iterable[int], ups: Iterable[int]) -> Cube:
    """Span the cube at x from merge pairs (downs) and split feet (ups).

    Each merge consumes feet (i, i+1) and each split consumes foot j; the
    consumed sets must be pairwise disjoint or SupportOverlapError is raised.
    The bottom corner takes every merge, the top every split, and the two are
    rejoined by a single elementary forest, which is verified before return.
    """
    h = x.height
    downs = tuple(downs)
    ups = tuple(ups)
    used: set[int] = set()
    for i in downs:
        if not 1 <= i <= h - 1:
            raise ShapeError(f"merge position {i} out of range 1..{h - 1}")
        if used & {i, i + 1}:
            raise SupportOverlapError(f"cube directions collide at foot {i}")
        used.update((i, i + 1))
    for j in ups:
        if not 1 <= j <= h:
            raise ShapeError(f"split foot {j} out of range 1..{h}")
        if j in used:
            raise SupportOverlapError(f"cube directions collide at foot {j}")
        used.add(j)
    corners = {
        (frozenset(s), frozenset(u)): _corner(x, s, u)
        for k in range(len(downs) + 1)
        for s in itertools.combinations(downs, k)
        for k2 in range(len(ups) + 1)
        for u in itertools.combinations(ups, k2)
    }
    bottom = corners[(frozenset(downs), frozenset())]
    top = corners[(frozenset(), frozenset(ups))]
    connector = _connector(h, downs, ups)
    if not vertex_equal(CubeVertex(multiply(bottom.diagram, connector)), top):
        raise DiagramError("cube connector failed to rejoin bottom and top")
    return Cube(x, downs, ups, corners, bottom, top, connector)


# -- the spine subcomplexes ---------------------------------------------------


def is_deferred_bare(v: CubeVertex, n: int) -> bool:
    """Whether the vertex lies in the depth-n spine subcomplex.

    The tree must defer to the spine word 1^n and the forest's first n trees
    must be trivial.  Only forced expansions are applied to the reduced form,
    and every deferred refinement contains them, so the answer does not
    depend on the representative.
    """
    if n < 1:
        raise DiagramError("need n >= 1")
    w = "1" * n
    d = v.diagram.reduced()
    while True:
        t = d.neg.trees[0]
        leaf = next((a for a in t.leaves if len(a) < n and w.startswith(a)), None)
        if leaf is None:
            break
        d = d.expand_neg(t.leaf_index(leaf))
    if not d.neg.trees[0].is_deferred(w):
        return False
    if d.pos.num_roots < n:
        return False
    return all(t.is_leaf() for t in d.pos.trees[:n])


# -- patches ------------------------------------------------------------------


def build_patch(base: CubeVertex, height_bound: int, braid_bound: int) -> list[CubeVertex]:
    """A finite braid-bounded patch around a base vertex.

    Takes the split closure of the base under the height bound, then adds
    every bounded merge of it.  Core vertices below the height bound then see
    their whole bounded link inside the patch; the merge layer is boundary.
    """
    interner = VertexInterner()
    seen: set[CubeVertex] = set()
    core: list[CubeVertex] = []
    todo = [interner.canonical(base)]
    while todo:
        v = todo.pop()
        if v in seen:
            continue
        seen.add(v)
        core.append(v)
        if v.height < height_bound:
            todo.extend(
                interner.canonical(split_vertex(v, j)) for j in range(1, v.height + 1)
            )
    layer: list[CubeVertex] = []
    for v in core:
        for w in _merge_neighbors(v, braid_bound, interner):
            if w not in seen:
                seen.add(w)
                layer.append(w)
    return core + layer


def _merge_neighbors(
    v: CubeVertex, braid_bound: int, interner: VertexInterner
) -> list[CubeVertex]:
    if v.height < 2:
        return []
    out: list[CubeVertex] = []
    local: set[CubeVertex] = set()
    for q in pure_braid_words(v.height, braid_bound):
        for i in range(1, v.height):
            w = interner.canonical(merge_vertex(v, i, q))
            if w not in local:
                local.add(w)
                out.append(w)
    return out


@dataclasses.dataclass(frozen=True)
class PatchReport:
    braid_bound: int
    vertex_count: int
    testable_count: int
    untestable_count: int
    all_links_flag: bool
    flag_failures: tuple
    subcomplex_depth: int | None
    subcomplex_count: int
    all_links_full: bool
    fullness_failures: tuple

    def to_json(self) -> dict:
        return {
            "braid_bound": self.braid_bound,
            "vertex_count": self.vertex_count,
            "testable_count": self.testable_count,
            "untestable_count": self.untestable_count,
            "all_links_flag": self.all_links_flag,
            "flag_failures": len(self.flag_failures),
            "subcomplex_depth": self.subcomplex_depth,
            "subcomplex_count": self.subcomplex_count,
            "all_links_full": self.all_links_full,
            "fullness_failures": len(self.fullness_failures),
        }


def _link_shadow(
    v: CubeVertex, ups: dict[int, CubeVertex], shadow: DescendingLinkShadow | None
) -> SimplicialComplex:
    """The bounded link: split directions joined with compatible merge faces."""
    up_labels = {j: ("up", j) for j in ups}
    vertices: list = list(up_labels.values())
    faces: list = [frozenset(up_labels.values())]
    if shadow is not None:
        vertices.extend(("down", lab) for lab in shadow.complex.vertices)
        feet = set(range(1, v.height + 1))
        for face, (_, positions) in shadow.data.items():
            support = {f for i in positions for f in (i, i + 1)}
            free = feet - support
            faces.append(
                {("down", lab) for lab in face} | {up_labels[j] for j in free}
            )
    return SimplicialComplex(vertices, faces)


def _fullness_certificate(
    v: CubeVertex,
    n: int,
    ups: dict[int, CubeVertex],
    shadow: DescendingLinkShadow | None,
) -> bool:
    """All corners spanned by depth-n directions stay in the subcomplex."""
    m = v.height
    good_ups = [j for j, w in ups.items() if is_deferred_bare(w, n)]
    datasets: list[tuple[BraidWord | None, tuple[int, ...], list[int]]] = [
        (None, (), good_ups)
    ]
    if shadow is not None:
        for _, (q, positions) in shadow.data.items():
            keep = tuple(
                i
                for i in positions
                if is_deferred_bare(
                    CubeVertex(multiply(v.diagram, _merge_element(m, (i,), q))), n
                )
            )
            support = {f for i in keep for f in (i, i + 1)}
            frees = [j for j in good_ups if j not in support]
            datasets.append((q, keep, frees))
    for q, keep, frees in datasets:
        for k in range(len(keep) + 1):
            for sub in itertools.combinations(keep, k):
                for k2 in range(len(frees) + 1):
                    for usub in itertools.combinations(frees, k2):
                        d = v.diagram
                        if sub or q is not None:
                            d = multiply(d, _merge_element(m, sub, q))
                        if usub:
                            shifted = [
                                j - sum(1 for i in sub if i < j) for j in usub
                            ]
                            d = multiply(
                                d, _split_element(m - len(sub), shifted)
                            )
                        if not is_deferred_bare(CubeVertex(d), n):
                            return False
    return True


def patch_check(
    vertices: Iterable[CubeVertex], n: int | None = None, braid_bound: int = 2
) -> PatchReport:
    """Flag and subcomplex-fullness report over a finite patch.

    Only vertices whose whole bounded link lies inside the patch are tested;
    the rest are counted as boundary.  When n is given, vertices of the
    depth-n spine subcomplex additionally get a fullness certificate: every
    link face restricted to subcomplex directions must span a cube whose
    corners all stay in the subcomplex.
    """
    interner = VertexInterner()
    members: list[CubeVertex] = []
    mset: set[CubeVertex] = set()
    for v in vertices:
        c = interner.canonical(v)
        if c not in mset:
            mset.add(c)
            members.append(c)
    testable = 0
    untestable = 0
    flag_failures: list[CubeVertex] = []
    sub_count = 0
    fullness_failures: list[CubeVertex] = []
    for v in members:
        # splits first and lazily: boundary vertices bail out cheaply
        ups: dict[int, CubeVertex] = {}
        inside = True
        for j in range(1, v.height + 1):
            u = interner.canonical(split_vertex(v, j))
            ups[j] = u
            if u not in mset:
                inside = False
                break
        shadow = None
        if inside and v.height >= 2:
            shadow = descending_link_shadow(v, braid_bound, interner)
            inside = all(lab in mset for lab in shadow.complex.vertices)
        if not inside:
            untestable += 1
            continue
        testable += 1
        if not _link_shadow(v, ups, shadow).is_flag():
            flag_failures.append(v)
        if n is not None and is_deferred_bare(v, n):
            sub_count += 1
            if not _fullness_certificate(v, n, ups, shadow):
                fullness_failures.append(v)
    return PatchReport(
        braid_bound=braid_bound,
        vertex_count=len(members),
        testable_count=testable,
        untestable_count=untestable,
        all_links_flag=not flag_failures,
        flag_failures=tuple(flag_failures),
        subcomplex_depth=n,
        subcomplex_count=sub_count,
        all_links_full=not fullness_failures,
        fullness_failures=tuple(fullness_failures),
    )
