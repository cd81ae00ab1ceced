"""Curved coalgebras with set-like degree-0 part, and their morphisms.

The structure is stored as explicit finite integer tables per degree up
to a cap: a graded basis, full Alexander-Whitney-style coproduct table,
twisted differential table, scalar curvature on degree 2, and endpoint
projections to set-likes.

Convention ledger (asserted by the axiom checker and the test suite):

  * the counit kills positive degrees and is 1 on set-likes;
  * the differential vanishes on degrees 0 and 1;
  * the curvature identity reads, over the reduced coproduct,

        d~(d~(c)) = sum_{(c)} h(c'') c'  -  h(c') c'' ;

  * nonzero curvature forces equal endpoints: h(c) != 0 implies
    first(c) = last(c), which the cobar layer relies on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .formal import FormalSum
from .simplicial import (CapExceededError, SimplicialSetPresentation,
                         is_degenerate)

Term = Tuple[int, str]          # (coefficient, basis id)
PairTerm = Tuple[int, str, str]  # (coefficient, left id, right id)


class CatCoalgebraError(Exception):
    pass


@dataclass
class CatCoalgebra:
    """Explicit table-backed categorical coalgebra."""

    name: str
    basis: Dict[int, Tuple[str, ...]]
    delta: Dict[str, Tuple[PairTerm, ...]]   # full coproduct
    d: Dict[str, Tuple[Term, ...]]           # twisted differential
    h: Dict[str, int]                        # curvature, degree-2 ids only
    first: Dict[str, str]
    last: Dict[str, str]
    cap: int
    complete_above_cap: bool = True
    degree_of: Dict[str, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.basis = {n: tuple(ids) for n, ids in self.basis.items() if ids}
        self.degree_of = {}
        for n, ids in self.basis.items():
            for s in ids:
                self.degree_of[s] = n
        for x in self.set_likes:
            if self.first.get(x, x) != x or self.last.get(x, x) != x:
                raise CatCoalgebraError("set-like with bad endpoint maps")
            self.first[x] = x
            self.last[x] = x
        for s, val in self.h.items():
            if self.degree_of.get(s) != 2 and val:
                raise CatCoalgebraError("curvature supported outside degree 2")

    @property
    def set_likes(self) -> Tuple[str, ...]:
        return self.basis.get(0, ())

    def degree(self, basis_id: str) -> int:
        return self.degree_of[basis_id]

    def ids(self, degree: int) -> Tuple[str, ...]:
        if degree > self.cap and not self.complete_above_cap:
            raise CapExceededError(
                f"{self.name}: degree {degree} beyond cap {self.cap}")
        return self.basis.get(degree, ())

    def max_degree(self) -> int:
        return max(self.basis) if self.basis else 0

    def positive_ids(self) -> List[str]:
        out: List[str] = []
        for n in sorted(self.basis):
            if n > 0:
                out.extend(self.basis[n])
        return out

    def delta_of(self, basis_id: str) -> Tuple[PairTerm, ...]:
        return self.delta.get(basis_id, ())

    def delta_reduced(self, basis_id: str) -> Tuple[PairTerm, ...]:
        return tuple((c, l, r) for (c, l, r) in self.delta.get(basis_id, ())
                     if self.degree_of[l] > 0 and self.degree_of[r] > 0)

    def d_of(self, basis_id: str) -> FormalSum:
        return FormalSum({s: c for (c, s) in self.d.get(basis_id, ())})

    def d_chain(self, chain: FormalSum) -> FormalSum:
        return chain.map_terms(self.d_of)

    def h_of(self, basis_id: str) -> int:
        return self.h.get(basis_id, 0)

    def counit(self, basis_id: str) -> int:
        return 1 if self.degree_of[basis_id] == 0 else 0

    def is_reduced(self) -> bool:
        return len(self.set_likes) == 1

    # ------------------------------------------------------------------
    # debug dump mirroring the JSON input, structure tables inlined

    def dump_tables(self) -> Dict:
        return {
            "name": self.name,
            "cap": self.cap,
            "basis": {str(n): list(ids) for n, ids in sorted(self.basis.items())},
            "set_likes": list(self.set_likes),
            "delta": {s: [[c, l, r] for (c, l, r) in terms]
                      for s, terms in sorted(self.delta.items())},
            "d": {s: [[c, t] for (c, t) in terms]
                  for s, terms in sorted(self.d.items()) if terms},
            "h": {s: v for s, v in sorted(self.h.items()) if v},
            "endpoints": {s: [self.first[s], self.last[s]]
                          for s in sorted(self.degree_of)},
        }


def from_presentation(pres: SimplicialSetPresentation,
                      dimension_cap: Optional[int] = None) -> CatCoalgebra:
    """Normalized chains of a presentation as a categorical coalgebra."""
    cap = pres.dimension_cap if dimension_cap is None else dimension_cap
    if cap > pres.dimension_cap:
        raise CapExceededError(
            f"requested cap {cap} exceeds stored cap {pres.dimension_cap}")
    report = pres.validate()
    if not report.ok:
        raise CatCoalgebraError(f"invalid presentation:\n{report}")
    basis = {n: tuple(ids) for n, ids in pres.simplices.items() if n <= cap}
    delta: Dict[str, Tuple[PairTerm, ...]] = {}
    d: Dict[str, Tuple[Term, ...]] = {}
    h: Dict[str, int] = {}
    first: Dict[str, str] = {}
    last: Dict[str, str] = {}
    for n in sorted(basis):
        for sid in basis[n]:
            first[sid] = pres.first_vertex(sid)
            last[sid] = pres.last_vertex(sid)
            delta[sid] = tuple(
                (c, f[1], b[1]) for (c, f, b) in pres.aw_coproduct(sid))
            if n >= 1:
                d[sid] = tuple(
                    (c, t) for t, c in pres.tilde_differential(sid).items())
            if n == 2:
                hv = pres.curvature(sid)
                if hv:
                    h[sid] = hv
    return CatCoalgebra(
        name=pres.name, basis=basis, delta=delta, d=d, h=h,
        first=first, last=last, cap=cap,
        complete_above_cap=pres.complete_above_cap and
        pres.top_dimension() <= cap)


# ---------------------------------------------------------------------------
# axiom checker


@dataclass
class AxiomCheck:
    axiom: str
    status: str                  # "pass" | "fail" | "unverifiable"
    witness: Optional[str] = None

    def __str__(self) -> str:
        tail = f" [{self.witness}]" if self.witness else ""
        return f"{self.axiom}: {self.status}{tail}"


@dataclass
class AxiomReport:
    name: str
    checks: List[AxiomCheck]
    notes: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def failures(self) -> List[AxiomCheck]:
        return [c for c in self.checks if c.status == "fail"]

    def __str__(self) -> str:
        lines = [f"axioms for {self.name}: {'pass' if self.ok else 'FAIL'}"]
        lines += [f"  {c}" for c in self.checks]
        lines += [f"  note: {n}" for n in self.notes]
        return "\n".join(lines)


def _pair_sum(terms: Sequence[PairTerm]) -> FormalSum:
    s = FormalSum()
    for (c, l, r) in terms:
        s.add_term((l, r), c)
    return s


def check_axioms(C: CatCoalgebra) -> AxiomReport:
    checks: List[AxiomCheck] = []
    notes: List[str] = []

    def record(axiom: str, witness: Optional[str]):
        if witness is None:
            checks.append(AxiomCheck(axiom, "pass"))
        else:
            checks.append(AxiomCheck(axiom, "fail", witness))

    all_ids = [s for n in sorted(C.basis) for s in C.basis[n]]

    # (grading) endpoints are set-likes, references in-basis
    w = None
    for s in all_ids:
        if C.first[s] not in C.set_likes or C.last[s] not in C.set_likes:
            w = s
            break
    record("endpoint projections land in set-likes", w)

    # set-like coproduct: Delta(x) = x (x) x, counit 1
    w = None
    for x in C.set_likes:
        if C.delta_of(x) != ((1, x, x),):
            w = x
            break
    record("set-likes are group-like for the coproduct", w)

    # counit laws
    w = None
    for s in all_ids:
        left = FormalSum()
        right = FormalSum()
        for (c, l, r) in C.delta_of(s):
            if C.degree_of[l] == 0:
                left.add_term(r, c)
            if C.degree_of[r] == 0:
                right.add_term(l, c)
        if left != FormalSum.term(s) or right != FormalSum.term(s):
            w = s
            break
    record("counit laws", w)

    # coassociativity: (Delta (x) id) Delta = (id (x) Delta) Delta
    w = None
    for s in all_ids:
        lhs = FormalSum()
        rhs = FormalSum()
        for (c, l, r) in C.delta_of(s):
            for (c2, a, b) in C.delta_of(l):
                lhs.add_term((a, b, r), c * c2)
            for (c2, a, b) in C.delta_of(r):
                rhs.add_term((l, a, b), c * c2)
        if lhs != rhs:
            w = s
            break
    record("coassociativity", w)

    # cotensor condition: matching endpoints inside the coproduct
    w = None
    for s in all_ids:
        for (c, l, r) in C.delta_of(s):
            if C.last[l] != C.first[r]:
                w = f"{s}: ({l},{r})"
                break
        if w:
            break
    record("coproduct factors through the cotensor product", w)

    # differential endpoints and degree
    w = None
    for s in all_ids:
        for t, c in C.d_of(s).items():
            if C.degree_of[t] != C.degree_of[s] - 1:
                w = s
                break
            if C.first[t] != C.first[s] or C.last[t] != C.last[s]:
                w = s
                break
        if w:
            break
    record("differential preserves endpoints, degree -1", w)

    # axiom: d vanishes on degrees 0 and 1
    w = None
    for s in all_ids:
        if C.degree_of[s] <= 1 and not C.d_of(s).is_zero():
            w = s
            break
    record("differential vanishes in degrees 0 and 1", w)

    # coderivation: Delta d = (d (x) id + id (x) d) Delta with Koszul signs
    w = None
    for s in all_ids:
        lhs = FormalSum()
        for t, c in C.d_of(s).items():
            for (c2, l, r) in C.delta_of(t):
                lhs.add_term((l, r), c * c2)
        rhs = FormalSum()
        for (c, l, r) in C.delta_of(s):
            for t, c2 in C.d_of(l).items():
                rhs.add_term((t, r), c * c2)
            sign = -1 if C.degree_of[l] % 2 else 1
            for t, c2 in C.d_of(r).items():
                rhs.add_term((l, t), c * c2 * sign)
        if lhs != rhs:
            w = s
            break
    record("differential is a coderivation", w)

    # curvature support: h only in degree 2, endpoints equal
    w = None
    for s, v in C.h.items():
        if v and C.first[s] != C.last[s]:
            w = s
            break
    record("nonzero curvature forces equal endpoints", w)

    # curvature identity: d~^2(c) = sum h(c'')c' - h(c')c'' over reduced Delta
    w = None
    any_d_square = False
    for s in all_ids:
        dd = C.d_chain(C.d_of(s))
        if not dd.is_zero():
            any_d_square = True
        rhs = FormalSum()
        for (c, l, r) in C.delta_reduced(s):
            rhs.add_term(l, c * C.h_of(r))
            rhs.add_term(r, -c * C.h_of(l))
        if dd != rhs:
            w = s
            break
    record("curvature identity", w)

    # h o d = 0 (only degree 3 can contribute)
    w = None
    for s in all_ids:
        if C.degree_of[s] != 3:
            continue
        total = sum(c * C.h_of(t) for t, c in C.d_of(s).items())
        if total:
            w = s
            break
    record("curvature annihilates the differential", w)

    if any(C.h.values()) and not any_d_square:
        notes.append("nonzero curvature while the differential squares to "
                     "zero (both are possible simultaneously)")
    if not C.complete_above_cap:
        notes.append(f"axioms involving degrees above cap {C.cap} are "
                     "unverifiable at this cap")
    return AxiomReport(C.name, checks, notes)


# ---------------------------------------------------------------------------
# morphisms


@dataclass
class CatCoalgebraMorphism:
    """A pair (f0, f1): f0 a counital coalgebra map stored as a table,
    f1 a degree -1 correction recorded as a scalar per degree-1 basis id
    (the value of f1 on c is that scalar times the set-like f0(first(c)))."""

    source: CatCoalgebra
    target: CatCoalgebra
    f0: Dict[str, Tuple[Term, ...]]
    f1: Dict[str, int] = field(default_factory=dict)
    name: str = "morphism"

    def f0_of(self, basis_id: str) -> FormalSum:
        return FormalSum({t: c for (c, t) in self.f0.get(basis_id, ())})

    def f0_chain(self, chain: FormalSum) -> FormalSum:
        return chain.map_terms(self.f0_of)

    def f1_of(self, basis_id: str) -> int:
        return self.f1.get(basis_id, 0)

    def f1_chain(self, chain: FormalSum) -> int:
        return sum(c * self.f1_of(s) for s, c in chain.items())

    def object_image(self, set_like: str) -> str:
        img = self.f0_of(set_like)
        terms = list(img.items())
        if len(terms) != 1 or terms[0][1] != 1:
            raise CatCoalgebraError(
                f"{self.name}: image of set-like {set_like} is not set-like")
        return terms[0][0]


def identity_morphism(C: CatCoalgebra) -> CatCoalgebraMorphism:
    f0 = {s: ((1, s),) for s in C.degree_of}
    return CatCoalgebraMorphism(C, C, f0, {}, name=f"id_{C.name}")


def compose(g: CatCoalgebraMorphism, f: CatCoalgebraMorphism) -> CatCoalgebraMorphism:
    """(g0, g1) o (f0, f1) = (g0 f0, g1 f0 + g0 f1)."""
    if f.target is not g.source:
        raise CatCoalgebraError("composition domain mismatch")
    f0: Dict[str, Tuple[Term, ...]] = {}
    f1: Dict[str, int] = {}
    for s in f.source.degree_of:
        img = f.f0_of(s).map_terms(g.f0_of)
        if not img.is_zero():
            f0[s] = tuple((c, t) for t, c in img.items())
        if f.source.degree_of[s] == 1:
            val = g.f1_chain(f.f0_of(s)) + f.f1_of(s)
            if val:
                f1[s] = val
    return CatCoalgebraMorphism(f.source, g.target, f0, f1,
                                name=f"{g.name}o{f.name}")


def check_morphism(f: CatCoalgebraMorphism) -> AxiomReport:
    """Verify the coalgebra-map and twisted-compatibility equations.

    With fbar1 the scalar part of f1, the two structure equations read

      (M1)  d~'(f0 c) = f0(d~ c)
             + sum fbar1(c') f0(c'') + (-1)^{|c|} fbar1(c'') f0(c')
      (M2)  h'(f0 c) = h(c) - fbar1(d~ c) - sum fbar1(c') fbar1(c'')

    with both sums over the reduced coproduct of c.
    """
    C, D = f.source, f.target
    checks: List[AxiomCheck] = []

    def record(axiom: str, witness: Optional[str]):
        checks.append(AxiomCheck(axiom, "pass" if witness is None else "fail",
                                 witness))

    all_ids = [s for n in sorted(C.basis) for s in C.basis[n]]

    w = None
    for s in all_ids:
        n = C.degree_of[s]
        img = f.f0_of(s)
        for t in img.coeffs:
            if D.degree_of[t] != n:
                w = s
                break
        if w:
            break
    record("f0 preserves degree", w)

    w = None
    for x in C.set_likes:
        try:
            f.object_image(x)
        except CatCoalgebraError:
            w = x
            break
    record("f0 is counital on set-likes", w)

    # comultiplicativity of f0
    w = None
    for s in all_ids:
        lhs = FormalSum()
        for t, c in f.f0_of(s).items():
            for (c2, l, r) in D.delta_of(t):
                lhs.add_term((l, r), c * c2)
        rhs = FormalSum()
        for (c, l, r) in C.delta_of(s):
            for lt, lc in f.f0_of(l).items():
                for rt, rc in f.f0_of(r).items():
                    rhs.add_term((lt, rt), c * lc * rc)
        if lhs != rhs:
            w = s
            break
    record("f0 commutes with the coproduct", w)

    # f1 support: degree 1 with merged endpoints in the target
    w = None
    for s, val in f.f1.items():
        if not val:
            continue
        if C.degree_of.get(s) != 1:
            w = s
            break
        if f.object_image(C.first[s]) != f.object_image(C.last[s]):
            w = s
            break
    record("f1 supported on degree-1 loops (after f0)", w)

    # (M1)
    w = None
    for s in all_ids:
        n = C.degree_of[s]
        lhs = D.d_chain(f.f0_of(s))
        rhs = f.f0_chain(C.d_of(s))
        sign = -1 if n % 2 else 1
        for (c, l, r) in C.delta_reduced(s):
            fl = f.f1_of(l)
            if fl:
                for t, c2 in f.f0_of(r).items():
                    rhs.add_term(t, c * fl * c2)
            fr = f.f1_of(r)
            if fr:
                for t, c2 in f.f0_of(l).items():
                    rhs.add_term(t, sign * c * fr * c2)
        if lhs != rhs:
            w = s
            break
    record("twisted differential equation (M1)", w)

    # (M2)
    w = None
    for s in all_ids:
        lhs = sum(c * D.h_of(t) for t, c in f.f0_of(s).items())
        rhs = C.h_of(s) - f.f1_chain(C.d_of(s))
        for (c, l, r) in C.delta_reduced(s):
            rhs -= c * f.f1_of(l) * f.f1_of(r)
        if lhs != rhs:
            w = s
            break
    record("curvature rebalancing equation (M2)", w)

    return AxiomReport(f.name, checks)


def from_simplicial_map(source: SimplicialSetPresentation,
                        target: SimplicialSetPresentation,
                        assignment: Dict[str, Tuple[Tuple[int, ...], str]],
                        cap: Optional[int] = None,
                        name: str = "map") -> CatCoalgebraMorphism:
    """Chain morphism induced by a simplicial map given on nondegenerate
    simplices (values are normal-form references in the target).

    Checks compatibility with all face maps before inducing f0; f1 = 0.
    """
    for sid, ref in assignment.items():
        n = source.dim(sid)
        if target.dim(ref[1]) + len(ref[0]) != n:
            raise CatCoalgebraError(f"{name}: image of {sid} has wrong dimension")
        for i in range(n + 1) if n else ():
            src_face = source.nondeg_face(sid, i)
            fw, fb = src_face
            iw, ib = assignment[fb]
            mapped_src = (tuple(fw), (iw, ib))
            # image of the face: push the face's degeneracy word onto the
            # image of its base
            from .simplicial import normalize_degeneracies
            img_of_face = (normalize_degeneracies(tuple(fw) + tuple(iw)), ib)
            ref_w, ref_b = assignment[sid]
            face_of_img = target.face(
                (normalize_degeneracies(tuple(ref_w)), ref_b), i)
            if img_of_face != face_of_img:
                raise CatCoalgebraError(
                    f"{name}: does not commute with d_{i} on {sid}")
    src_c = from_presentation(source, cap)
    tgt_c = from_presentation(target, cap)
    f0: Dict[str, Tuple[Term, ...]] = {}
    for s in src_c.degree_of:
        word, base = assignment[s]
        if not word:
            f0[s] = ((1, base),)
    return CatCoalgebraMorphism(src_c, tgt_c, f0, {}, name=name)
