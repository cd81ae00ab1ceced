"""Finitely presented simplicial sets and their chain-level structure.

A presentation stores nondegenerate simplices per dimension together with
face tuples whose entries are simplex references in Eilenberg-Zilber
normal form: a strictly decreasing degeneracy word applied to a
nondegenerate base simplex.

The sign conventions fixed here propagate through the whole package and
are asserted by the test suite; see README for the convention ledger.
Boundary is d = sum (-1)^i d_i with d_i deleting vertex i.  The weight
functional on 1-chains counts nondegenerate edges with coefficient 1.
The twisted degree -1 coderivation is

    d~ = d + (id (x) e~  -  e~ (x) id) o Delta

evaluated with the Koszul rule (f (x) g)(x (x) y) = (-1)^{|g||x|} f(x)g(y)
and |e~| = -1, and the scalar curvature on 2-simplices is

    h = (e~ (x) e~) o Delta + e~ o d.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .formal import FormalSum

# A simplex reference: (degeneracy word, base id).  The word (j_t, ..., j_1)
# is strictly decreasing and denotes s_{j_t} ... s_{j_1} applied to the base.
SimplexRef = Tuple[Tuple[int, ...], str]


class SimplicialError(Exception):
    pass


class CapExceededError(SimplicialError):
    """An operation needed simplices beyond the stored dimension cap."""


def normalize_degeneracies(word: Sequence[int]) -> Tuple[int, ...]:
    """Rewrite a degeneracy word into strictly decreasing normal form.

    Uses s_i s_j = s_{j+1} s_i for i <= j until sorted.
    """
    w = list(word)
    changed = True
    while changed:
        changed = False
        for k in range(len(w) - 1):
            a, b = w[k], w[k + 1]
            if a <= b:
                w[k], w[k + 1] = b + 1, a
                changed = True
    return tuple(w)


def ref_dimension(ref: SimplexRef, base_dim: int) -> int:
    return base_dim + len(ref[0])


def is_degenerate(ref: SimplexRef) -> bool:
    return bool(ref[0])


def face_of_ref(ref: SimplexRef, i: int,
                faces_of_base: Sequence[SimplexRef]) -> SimplexRef:
    """Normal form of d_i applied to a (possibly degenerate) simplex.

    Pushes d_i through the degeneracy word by the simplicial identities:
    d_i s_j = s_{j-1} d_i (i < j), = id (i in {j, j+1}), = s_j d_{i-1}
    (i > j + 1).
    """
    word, base = ref
    out: List[int] = []
    for t, j in enumerate(word):
        if i < j:
            out.append(j - 1)
        elif i == j or i == j + 1:
            return normalize_degeneracies(out + list(word[t + 1:])), base
        else:
            out.append(j)
            i -= 1
    fw, fb = faces_of_base[i]
    return normalize_degeneracies(out + list(fw)), fb


@dataclass
class SimplicialSetPresentation:
    """Nondegenerate simplices per dimension with normal-form face tuples.

    complete_above_cap means the simplicial set genuinely has no
    nondegenerate simplices above dimension_cap (Delta^n, spheres);
    otherwise the presentation is a truncation of an infinite object and
    requests beyond the cap raise CapExceededError.
    """

    name: str
    dimension_cap: int
    simplices: Dict[int, Tuple[str, ...]]
    faces: Dict[str, Tuple[SimplexRef, ...]]
    complete_above_cap: bool = True
    _dim_of: Dict[str, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.simplices = {d: tuple(ids) for d, ids in self.simplices.items() if ids}
        self.faces = {s: tuple((tuple(w), b) for (w, b) in fs)
                      for s, fs in self.faces.items()}
        self._dim_of = {}
        for d, ids in self.simplices.items():
            for s in ids:
                if s in self._dim_of:
                    raise SimplicialError(f"duplicate simplex id {s!r}")
                self._dim_of[s] = d

    def dim(self, simplex_id: str) -> int:
        return self._dim_of[simplex_id]

    def ids(self, dimension: int) -> Tuple[str, ...]:
        return self.simplices.get(dimension, ())

    def all_ids(self) -> List[str]:
        out: List[str] = []
        for d in sorted(self.simplices):
            out.extend(self.simplices[d])
        return out

    def top_dimension(self) -> int:
        return max(self.simplices) if self.simplices else -1

    def face(self, ref: SimplexRef, i: int) -> SimplexRef:
        word, base = ref
        n = self.dim(base) + len(word)
        if not (0 <= i <= n):
            raise SimplicialError(f"face index {i} out of range for dim {n}")
        return face_of_ref((tuple(word), base), i, self.faces.get(base, ()))

    def nondeg_face(self, simplex_id: str, i: int) -> SimplexRef:
        return self.face(((), simplex_id), i)

    # vertex-subset faces -------------------------------------------------

    def front_face(self, ref: SimplexRef, i: int) -> SimplexRef:
        """Face on vertices 0..i (delete trailing vertices)."""
        word, base = ref
        n = self.dim(base) + len(word)
        cur: SimplexRef = (tuple(word), base)
        for k in range(n, i, -1):
            cur = self.face(cur, k)
        return cur

    def back_face(self, ref: SimplexRef, i: int) -> SimplexRef:
        """Face on vertices i..n (delete leading vertices)."""
        cur: SimplexRef = (tuple(ref[0]), ref[1])
        for _ in range(i):
            cur = self.face(cur, 0)
        return cur

    def subset_face(self, ref: SimplexRef, vertices: Sequence[int]) -> SimplexRef:
        """Face on an arbitrary increasing vertex subset."""
        word, base = ref
        n = self.dim(base) + len(word)
        keep = sorted(vertices)
        cur: SimplexRef = (tuple(word), base)
        for v in range(n, -1, -1):
            if v not in keep:
                cur = self.face(cur, v)
        return cur

    def first_vertex(self, simplex_id: str) -> str:
        ref = self.front_face(((), simplex_id), 0)
        return ref[1]

    def last_vertex(self, simplex_id: str) -> str:
        n = self.dim(simplex_id)
        ref = self.back_face(((), simplex_id), n)
        return ref[1]

    # validation ----------------------------------------------------------

    def validate(self) -> "ValidationReport":
        """Check reference integrity and the simplicial identities."""
        violations: List[str] = []
        for sid, fs in self.faces.items():
            if sid not in self._dim_of:
                violations.append(f"faces listed for unknown simplex {sid!r}")
                continue
            n = self.dim(sid)
            if n == 0:
                if fs:
                    violations.append(f"vertex {sid!r} must have no faces")
                continue
            if len(fs) != n + 1:
                violations.append(
                    f"{sid!r} has {len(fs)} faces, expected {n + 1}")
                continue
            for i, (word, base) in enumerate(fs):
                if base not in self._dim_of:
                    violations.append(
                        f"face d_{i} of {sid!r} references unknown {base!r}")
                    continue
                if tuple(word) != normalize_degeneracies(word):
                    violations.append(
                        f"face d_{i} of {sid!r} has non-normal word {word}")
                if self.dim(base) + len(word) != n - 1:
                    violations.append(
                        f"face d_{i} of {sid!r} has wrong dimension")
        for d, ids in self.simplices.items():
            for sid in ids:
                if d > 0 and sid not in self.faces:
                    violations.append(f"{sid!r} missing face tuple")
        if violations:
            return ValidationReport(self.name, violations)
        # simplicial identities d_i d_j = d_{j-1} d_i for i < j
        for sid in self.all_ids():
            n = self.dim(sid)
            if n < 2:
                continue
            for j in range(1, n + 1):
                for i in range(j):
                    lhs = self.face(self.nondeg_face(sid, j), i)
                    rhs = self.face(self.nondeg_face(sid, i), j - 1)
                    if lhs != rhs:
                        violations.append(
                            f"identity d_{i} d_{j} failed on {sid!r}: "
                            f"{lhs} != {rhs}")
        return ValidationReport(self.name, violations)

    # chain-level structure -------------------------------------------------

    def weight_of_edge(self, ref: SimplexRef) -> int:
        """1 on nondegenerate 1-simplices, 0 on degenerate ones."""
        return 0 if is_degenerate(ref) else 1

    def boundary(self, simplex_id: str) -> FormalSum:
        """Alternating-sum boundary in normalized chains."""
        n = self.dim(simplex_id)
        out = FormalSum()
        for i in range(n + 1):
            ref = self.nondeg_face(simplex_id, i)
            if not is_degenerate(ref):
                out.add_term(ref[1], -1 if i % 2 else 1)
        return out

    def aw_coproduct(self, simplex_id: str, reduced: bool = False):
        """Alexander-Whitney splitting into (front, back) reference pairs.

        Returns a list of (coeff, front_ref, back_ref).  Pairs with a
        degenerate factor are zero in normalized chains and are dropped;
        with reduced=True the two unit-side terms (i = 0 and i = n) are
        dropped as well.
        """
        n = self.dim(simplex_id)
        out = []
        rng = range(1, n) if reduced else range(n + 1)
        for i in rng:
            front = self.front_face(((), simplex_id), i)
            back = self.back_face(((), simplex_id), i)
            if is_degenerate(front) or is_degenerate(back):
                continue
            out.append((1, front, back))
        return out

    def weight_functional(self, chain: FormalSum) -> int:
        """Sum of coefficients of nondegenerate 1-simplices in a 1-chain."""
        total = 0
        for sid, c in chain.items():
            if self.dim(sid) != 1:
                raise SimplicialError("weight functional needs a degree-1 chain")
            total += c
        return total

    def tilde_differential(self, simplex_id: str) -> FormalSum:
        """Twisted differential d~ on a nondegenerate simplex."""
        n = self.dim(simplex_id)
        if n == 0:
            return FormalSum()
        out = self.boundary(simplex_id)
        if n == 1:
            # correction cancels the boundary exactly in degree 1
            return FormalSum()
        # (id (x) e~) term: (-1)^{n-1} sigma(0..n-1) e~(sigma(n-1,n))
        last_edge = self.subset_face(((), simplex_id), [n - 1, n])
        if not is_degenerate(last_edge):
            front = self.front_face(((), simplex_id), n - 1)
            if not is_degenerate(front):
                out.add_term(front[1], -1 if (n - 1) % 2 else 1)
        # -(e~ (x) id) term: -e~(sigma(0,1)) sigma(1..n)
        first_edge = self.subset_face(((), simplex_id), [0, 1])
        if not is_degenerate(first_edge):
            back = self.back_face(((), simplex_id), 1)
            if not is_degenerate(back):
                out.add_term(back[1], -1)
        return out

    def curvature(self, simplex_id: str) -> int:
        """Scalar curvature h on a 2-simplex."""
        if self.dim(simplex_id) != 2:
            raise SimplicialError("curvature is defined on 2-simplices")
        e01 = self.nondeg_face(simplex_id, 2)
        e12 = self.nondeg_face(simplex_id, 0)
        e02 = self.nondeg_face(simplex_id, 1)
        value = -self.weight_of_edge(e01) * self.weight_of_edge(e12)
        value += self.weight_of_edge(e12)       # + e~(d_0)
        value -= self.weight_of_edge(e02)       # - e~(d_1)
        value += self.weight_of_edge(e01)       # + e~(d_2)
        return value

    # serialization ---------------------------------------------------------

    def to_json_dict(self) -> Dict:
        return {
            "name": self.name,
            "dimension_cap": self.dimension_cap,
            "complete_above_cap": self.complete_above_cap,
            "simplices": {str(d): list(self.simplices[d])
                          for d in sorted(self.simplices)},
            "faces": {sid: [[list(w), b] for (w, b) in self.faces[sid]]
                      for sid in sorted(self.faces)},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True,
                          separators=(",", ":")) + "\n"

    @classmethod
    def from_json_dict(cls, data: Dict) -> "SimplicialSetPresentation":
        try:
            simplices = {int(d): tuple(ids)
                         for d, ids in data["simplices"].items()}
            faces = {sid: tuple((tuple(int(x) for x in w), b)
                                for (w, b) in fs)
                     for sid, fs in data.get("faces", {}).items()}
            return cls(name=data["name"],
                       dimension_cap=int(data["dimension_cap"]),
                       simplices=simplices, faces=faces,
                       complete_above_cap=bool(
                           data.get("complete_above_cap", True)))
        except (KeyError, TypeError, ValueError) as exc:
            raise SimplicialError(f"malformed presentation: {exc}") from exc

    @classmethod
    def loads(cls, text: str) -> "SimplicialSetPresentation":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SimplicialError(
                f"JSON parse error at line {exc.lineno}, column {exc.colno}: "
                f"{exc.msg}") from exc
        return cls.from_json_dict(data)


@dataclass
class ValidationReport:
    name: str
    violations: List[str]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.ok:
            return f"{self.name}: valid"
        lines = [f"{self.name}: {len(self.violations)} violation(s)"]
        lines += [f"  - {v}" for v in self.violations]
        return "\n".join(lines)


def validate_presentation(pres: SimplicialSetPresentation) -> ValidationReport:
    return pres.validate()
