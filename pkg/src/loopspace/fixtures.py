"""Standard simplicial presentations used across the test and CLI layers.

Vertex-reduced sphere models: `sphere(n)` is the one-cell quotient of the
standard n-simplex by its boundary, and `sphere2_tree_collapsed()` is the
boundary of the tetrahedron with a spanning tree of edges collapsed, a
second reduced model of the 2-sphere with three surviving edge loops.
"""

from __future__ import annotations

from itertools import combinations
from typing import Dict, List, Sequence, Tuple

from .simplicial import (SimplexRef, SimplicialSetPresentation,
                         normalize_degeneracies)


def _subset_id(vertices: Sequence[int]) -> str:
    return "".join(str(v) for v in vertices)


def simplex(n: int) -> SimplicialSetPresentation:
    """The standard n-simplex; simplices are increasing vertex strings."""
    simplices: Dict[int, Tuple[str, ...]] = {}
    faces: Dict[str, Tuple[SimplexRef, ...]] = {}
    for d in range(n + 1):
        ids = []
        for verts in combinations(range(n + 1), d + 1):
            sid = _subset_id(verts)
            ids.append(sid)
            if d > 0:
                fs = []
                for i in range(d + 1):
                    sub = verts[:i] + verts[i + 1:]
                    fs.append(((), _subset_id(sub)))
                faces[sid] = tuple(fs)
        simplices[d] = tuple(ids)
    return SimplicialSetPresentation(
        name=f"delta{n}", dimension_cap=n, simplices=simplices, faces=faces)


def boundary_simplex(n: int) -> SimplicialSetPresentation:
    """The boundary of the standard n-simplex (top cell removed)."""
    full = simplex(n)
    simplices = {d: ids for d, ids in full.simplices.items() if d < n}
    faces = {sid: fs for sid, fs in full.faces.items()
             if full.dim(sid) < n}
    return SimplicialSetPresentation(
        name=f"boundary-delta{n}", dimension_cap=n - 1,
        simplices=simplices, faces=faces)


def sphere(n: int) -> SimplicialSetPresentation:
    """S^n as one vertex and one n-cell with fully degenerate faces."""
    if n < 1:
        raise ValueError("sphere needs n >= 1")
    cell = "s"
    degenerate_face: SimplexRef = (tuple(range(n - 2, -1, -1)), "v")
    faces: Dict[str, Tuple[SimplexRef, ...]] = {
        cell: tuple(degenerate_face for _ in range(n + 1))}
    return SimplicialSetPresentation(
        name=f"sphere{n}", dimension_cap=n,
        simplices={0: ("v",), n: (cell,)}, faces=faces)


def circle() -> SimplicialSetPresentation:
    """S^1 with one vertex and one loop edge."""
    return SimplicialSetPresentation(
        name="circle", dimension_cap=1,
        simplices={0: ("v",), 1: ("t",)},
        faces={"t": (((), "v"), ((), "v"))})


def nerve_cyclic(m: int, cap: int) -> SimplicialSetPresentation:
    """Nerve of Z/m stored up to dimension cap.

    Nondegenerate n-simplices are tuples of nonzero residues; ids look
    like "g1.g2".  The presentation is a truncation of an infinite
    object, so complete_above_cap is False.
    """
    if m < 2 or cap < 1:
        raise ValueError("need m >= 2 and cap >= 1")

    def tuple_id(t: Sequence[int]) -> str:
        return ".".join(f"g{a}" for a in t)

    def ref_of(t: Sequence[int]) -> SimplexRef:
        t = tuple(t)
        for i, a in enumerate(t):
            if a == 0:
                w, b = ref_of(t[:i] + t[i + 1:])
                return normalize_degeneracies((i,) + w), b
        return ((), tuple_id(t) if t else "e")

    simplices: Dict[int, Tuple[str, ...]] = {0: ("e",)}
    faces: Dict[str, Tuple[SimplexRef, ...]] = {}
    for d in range(1, cap + 1):
        ids = []
        for combo in _tuples(m, d):
            sid = tuple_id(combo)
            ids.append(sid)
            fs: List[SimplexRef] = []
            for i in range(d + 1):
                if i == 0:
                    sub = combo[1:]
                elif i == d:
                    sub = combo[:-1]
                else:
                    merged = (combo[i - 1] + combo[i]) % m
                    sub = combo[:i - 1] + (merged,) + combo[i + 1:]
                fs.append(ref_of(sub))
            faces[sid] = tuple(fs)
        simplices[d] = tuple(ids)
    return SimplicialSetPresentation(
        name=f"nerve-z{m}-cap{cap}", dimension_cap=cap,
        simplices=simplices, faces=faces, complete_above_cap=False)


def _tuples(m: int, length: int):
    if length == 0:
        yield ()
        return
    for rest in _tuples(m, length - 1):
        for a in range(1, m):
            yield (a,) + rest


def sphere2_tree_collapsed() -> SimplicialSetPresentation:
    """Boundary of the tetrahedron with the edge tree {01, 02, 03} collapsed.

    Vertex-reduced model of S^2 with three loop edges and four triangles.
    """
    dv: SimplexRef = ((0,), "v")
    vv: SimplexRef = ((), "v")
    return SimplicialSetPresentation(
        name="sphere2-tree", dimension_cap=2,
        simplices={0: ("v",), 1: ("e12", "e13", "e23"),
                   2: ("t012", "t013", "t023", "t123")},
        faces={
            "e12": (vv, vv), "e13": (vv, vv), "e23": (vv, vv),
            "t012": (((), "e12"), dv, dv),
            "t013": (((), "e13"), dv, dv),
            "t023": (((), "e23"), dv, dv),
            "t123": (((), "e23"), ((), "e13"), ((), "e12")),
        })


def sphere2_double_cone() -> SimplicialSetPresentation:
    """Double cone on the circle with both cone edges collapsed.

    Vertex-reduced model of S^2 with one loop edge and two triangles
    whose bases are that loop; each triangle witnesses a null-homotopy
    of the loop.
    """
    dv: SimplexRef = ((0,), "v")
    return SimplicialSetPresentation(
        name="sphere2-cone", dimension_cap=2,
        simplices={0: ("v",), 1: ("t",), 2: ("a", "b")},
        faces={
            "t": (((), "v"), ((), "v")),
            "a": (((), "t"), dv, dv),
            "b": (((), "t"), dv, dv),
        })


def sphere2_two_cells() -> SimplicialSetPresentation:
    """One vertex, two 2-cells, and a 3-cell identifying them.

    A vertex-reduced model of S^2 with no nondegenerate 1-simplices, so
    every hom-space enumeration stays finite.
    """
    d2: SimplexRef = ((1, 0), "v")
    return SimplicialSetPresentation(
        name="sphere2-pair", dimension_cap=3,
        simplices={0: ("v",), 2: ("a", "b"), 3: ("T",)},
        faces={
            "a": (((0,), "v"), ((0,), "v"), ((0,), "v")),
            "b": (((0,), "v"), ((0,), "v"), ((0,), "v")),
            "T": (((), "a"), d2, d2, ((), "b")),
        })


STANDARD_FIXTURES = {
    "delta0": lambda: simplex(0),
    "delta1": lambda: simplex(1),
    "delta2": lambda: simplex(2),
    "delta3": lambda: simplex(3),
    "boundary-delta3": lambda: boundary_simplex(3),
    "circle": circle,
    "sphere2": lambda: sphere(2),
    "sphere2-tree": sphere2_tree_collapsed,
    "sphere2-cone": sphere2_double_cone,
    "sphere2-pair": sphere2_two_cells,
    "nerve-z2": lambda: nerve_cyclic(2, 3),
    "nerve-z3": lambda: nerve_cyclic(3, 3),
}
