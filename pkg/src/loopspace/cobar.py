"""The cobar dg category of a categorical coalgebra and its localization.

Morphisms are words of desuspended positive-degree basis elements; the
localized (extended) variant adds formal inverses of the degree-0 letters
(the nondegenerate 1-simplices) and works with reduced words over the
resulting free groupoid.

Differential convention (asserted by the D^2 = 0 suite and the homology
benchmarks): on a single letter {c},

    D{c} = {d~ c} + sum_{(c)} (-1)^{|c'|-1} {c'|c''} - h(c) (letter deleted)

with the sum over the reduced coproduct, extended to words as a derivation
with Koszul signs over shifted degrees, and zero on inverse letters.
"""

from __future__ import annotations

from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .catcoalg import CatCoalgebra, CatCoalgebraMorphism
from .formal import FormalSum
from .linalg import CoefficientRing, HomologyResult
from .simplicial import CapExceededError
from .slices import window_homology

# letter: (basis id, exponent); exponent -1 marks a formal inverse and is
# only allowed on degree-1 ids in extended mode
Letter = Tuple[str, int]


class CobarWord(NamedTuple):
    source: str
    target: str
    letters: Tuple[Letter, ...]

    def is_identity(self) -> bool:
        return not self.letters


def serialize_word(w: CobarWord) -> list:
    """Wire format: [source, ["c1", "c2^-1", ...], target]."""
    return [w.source,
            [sid if exp == 1 else f"{sid}^-1" for sid, exp in w.letters],
            w.target]


def parse_letters(items) -> Tuple[Letter, ...]:
    out = []
    for item in items:
        if item.endswith("^-1"):
            out.append((item[:-3], -1))
        else:
            out.append((item, 1))
    return tuple(out)


class CobarError(Exception):
    pass


class CobarCategory:
    """Hom-space algebra of the (possibly extended) cobar construction."""

    def __init__(self, coalgebra: CatCoalgebra, extended: bool = False):
        self.C = coalgebra
        self.extended = extended
        if extended:
            for s, v in coalgebra.h.items():
                if v and coalgebra.first[s] != coalgebra.last[s]:
                    raise CobarError("curvature with unequal endpoints")
        self._diff_cache: Dict[CobarWord, FormalSum] = {}

    # letter-level data ----------------------------------------------------

    def letter_degree(self, letter: Letter) -> int:
        sid, exp = letter
        if exp == -1:
            return 0
        return self.C.degree_of[sid] - 1

    def letter_source(self, letter: Letter) -> str:
        sid, exp = letter
        return self.C.first[sid] if exp == 1 else self.C.last[sid]

    def letter_target(self, letter: Letter) -> str:
        sid, exp = letter
        return self.C.last[sid] if exp == 1 else self.C.first[sid]

    def _check_letter(self, letter: Letter):
        sid, exp = letter
        deg = self.C.degree_of.get(sid)
        if deg is None or deg < 1:
            raise CobarError(f"invalid letter {letter}")
        if exp == -1:
            if not self.extended:
                raise CobarError("inverse letters need extended mode")
            if deg != 1:
                raise CobarError("only degree-1 letters are invertible")
        elif exp != 1:
            raise CobarError(f"bad exponent in {letter}")

    def alphabet(self, from_vertex: Optional[str] = None) -> List[Letter]:
        """All letters, optionally restricted by source vertex, in stable order."""
        letters: List[Letter] = []
        for n in sorted(self.C.basis):
            if n == 0:
                continue
            for sid in self.C.basis[n]:
                letters.append((sid, 1))
                if self.extended and n == 1:
                    letters.append((sid, -1))
        if from_vertex is not None:
            letters = [l for l in letters if self.letter_source(l) == from_vertex]
        return letters

    # words ------------------------------------------------------------------

    def reduce_letters(self, letters: Sequence[Letter]) -> Tuple[Letter, ...]:
        """Free-groupoid reduction: cancel adjacent inverse pairs."""
        if not self.extended:
            return tuple(letters)
        out: List[Letter] = []
        for l in letters:
            if out and out[-1][0] == l[0] and out[-1][1] == -l[1] \
                    and self.C.degree_of[l[0]] == 1:
                out.pop()
            else:
                out.append(l)
        return tuple(out)

    def word(self, letters: Sequence[Letter],
             source: Optional[str] = None) -> CobarWord:
        """Build a word in normal form, validating the endpoint chain."""
        letters = tuple(letters)
        for l in letters:
            self._check_letter(l)
        reduced = self.reduce_letters(letters)
        if reduced:
            src = self.letter_source(reduced[0])
            tgt = self.letter_target(reduced[-1])
            for a, b in zip(reduced, reduced[1:]):
                if self.letter_target(a) != self.letter_source(b):
                    raise CobarError(f"endpoint mismatch in {letters}")
        else:
            if source is None:
                if letters:
                    src = self.letter_source(letters[0])
                else:
                    raise CobarError("empty word needs an explicit object")
            else:
                src = source
            tgt = src
        if source is not None and src != source:
            raise CobarError("declared source does not match letters")
        return CobarWord(src, tgt, reduced)

    def identity(self, set_like: str) -> CobarWord:
        if set_like not in self.C.set_likes:
            raise CobarError(f"{set_like} is not an object")
        return CobarWord(set_like, set_like, ())

    def degree(self, w: CobarWord) -> int:
        return sum(self.letter_degree(l) for l in w.letters)

    def winding(self, w: CobarWord) -> int:
        """Signed count of degree-1 letters (loop winding when the
        degree-0 alphabet is a single loop edge)."""
        total = 0
        for sid, exp in w.letters:
            if self.C.degree_of[sid] == 1:
                total += exp
        return total

    def compose(self, w1: CobarWord, w2: CobarWord) -> CobarWord:
        """Concatenation w1 then w2; renormalized in extended mode."""
        if w1.target != w2.source:
            raise CobarError(
                f"cannot compose: target {w1.target} != source {w2.source}")
        letters = self.reduce_letters(w1.letters + w2.letters)
        return CobarWord(w1.source, w2.target, letters)

    def compose_sums(self, s1: FormalSum, s2: FormalSum,
                     koszul: bool = False) -> FormalSum:
        """Bilinear composition; koszul=True inserts no signs (degree-0
        composition carries none) and is kept for symmetry of call sites."""
        out = FormalSum()
        for w1, c1 in s1.items():
            for w2, c2 in s2.items():
                out.add_term(self.compose(w1, w2), c1 * c2)
        return out

    def word_key(self, w: CobarWord):
        return (self.degree(w), len(w.letters), w.letters, w.source)

    # differential -----------------------------------------------------------

    def letter_differential(self, letter: Letter) -> FormalSum:
        """Formal sum over letter tuples replacing one letter."""
        sid, exp = letter
        if exp == -1:
            return FormalSum()
        out = FormalSum()
        for t, c in self.C.d_of(sid).items():
            out.add_term(((t, 1),), c)
        for (c, l, r) in self.C.delta_reduced(sid):
            sign = -1 if (self.C.degree_of[l] - 1) % 2 else 1
            out.add_term(((l, 1), (r, 1)), sign * c)
        hv = self.C.h_of(sid)
        if hv:
            out.add_term((), -hv)
        return out

    def differential(self, w: CobarWord) -> FormalSum:
        cached = self._diff_cache.get(w)
        if cached is not None:
            return cached
        out = FormalSum()
        prefix = 0
        for i, letter in enumerate(w.letters):
            dl = self.letter_differential(letter)
            if not dl.is_zero():
                sign = -1 if prefix % 2 else 1
                for repl, c in dl.items():
                    letters = w.letters[:i] + repl + w.letters[i + 1:]
                    nw = CobarWord(w.source, w.target,
                                   self.reduce_letters(letters))
                    out.add_term(nw, sign * c)
            prefix += self.letter_degree(letter)
        self._diff_cache[w] = out
        return out

    def differential_sum(self, s: FormalSum) -> FormalSum:
        return s.map_terms(self.differential)

    # functoriality ----------------------------------------------------------

    def apply_morphism(self, f: CatCoalgebraMorphism,
                       target_ctx: "CobarCategory", w: CobarWord) -> FormalSum:
        """Induced dg functor on a word, expanded multiplicatively.

        Each positive letter {c} maps to {f0(c)} plus the scalar f1-term
        collapsing the letter.  Inverse letters require f1 = 0 on their
        edge and a one-term unit-coefficient image.
        """
        src = f.object_image(w.source)
        result = FormalSum.term(target_ctx.identity(src))
        for letter in w.letters:
            sid, exp = letter
            piece = FormalSum()
            if exp == 1:
                for t, c in f.f0_of(sid).items():
                    if target_ctx.C.degree_of[t] >= 1:
                        piece.add_term(
                            target_ctx.word([(t, 1)]), c)
                lam = f.f1_of(sid)
                if lam:
                    x = f.object_image(self.C.first[sid])
                    piece.add_term(target_ctx.identity(x), lam)
            else:
                if f.f1_of(sid):
                    raise CobarError(
                        "localized functoriality needs f1 = 0 on inverted edges")
                img = list(f.f0_of(sid).items())
                if len(img) != 1 or img[0][1] not in (1, -1):
                    raise CobarError(
                        "inverted edge must map to a single unit-coefficient edge")
                t, c = img[0]
                piece.add_term(target_ctx.word([(t, -1)]), c)
            result = target_ctx.compose_sums(result, piece)
        return result

    # basis enumeration -------------------------------------------------------

    def has_degree_zero_letters(self) -> bool:
        return bool(self.C.basis.get(1))

    def max_length_increase(self) -> int:
        """1 when some letter has a nonzero reduced coproduct (splits can
        lengthen words), else 0 and length caps are subcomplexes."""
        for n, ids in self.C.basis.items():
            if n >= 2:
                for sid in ids:
                    if self.C.delta_reduced(sid):
                        return 1
        return 0

    def required_cap(self, degree: int) -> int:
        """Letters of a degree-n word can involve basis degree up to n + 1."""
        return degree + 1

    def check_cap(self, degree: int):
        if self.C.complete_above_cap:
            return
        if self.required_cap(degree) > self.C.cap:
            raise CapExceededError(
                f"{self.C.name}: words of degree {degree} may need basis "
                f"degree {self.required_cap(degree)} beyond cap {self.C.cap}")

    def basis(self, source: str, target: str, degree: int,
              max_length: Optional[int] = None,
              winding: Optional[int] = None,
              allow_capped: bool = False) -> List[CobarWord]:
        """All normal-form words with the given endpoints and degree.

        max_length may be omitted exactly when the alphabet has no
        degree-0 letters, in which case the enumeration is provably
        complete (length is bounded by degree).  allow_capped permits
        enumeration over the stored alphabet of a capped coalgebra
        (useful for identity tests; never for homology claims).
        """
        if not allow_capped:
            self.check_cap(degree)
        if max_length is None:
            if self.has_degree_zero_letters():
                raise CobarError("max_length required with degree-0 letters")
            max_length = degree
        out: List[CobarWord] = []

        def extend(current: List[Letter], vertex: str, deg_left: int):
            if len(current) > max_length:
                return
            if deg_left == 0 and vertex == target:
                w = CobarWord(source, target, tuple(current))
                if winding is None or self.winding(w) == winding:
                    out.append(w)
            if len(current) == max_length:
                return
            for letter in self.alphabet(from_vertex=vertex):
                if self.letter_degree(letter) > deg_left:
                    continue
                if self.extended and current:
                    prev = current[-1]
                    if prev[0] == letter[0] and prev[1] == -letter[1] \
                            and self.C.degree_of[letter[0]] == 1:
                        continue
                extend(current + [letter], self.letter_target(letter),
                       deg_left - self.letter_degree(letter))

        if degree >= 0:
            extend([], source, degree)
        out.sort(key=self.word_key)
        return out

    def enumeration_exact(self, degree: int,
                          max_length: Optional[int]) -> bool:
        """Whether basis() provably lists the whole degree-n hom space."""
        if not self.has_degree_zero_letters():
            return max_length is None or max_length >= degree
        return False

    # hom-space homology -------------------------------------------------------

    def hom_homology(self, source: str, target: str, degrees: Sequence[int],
                     ring: CoefficientRing,
                     max_length: Optional[int] = None,
                     winding: Optional[int] = None) -> HomologyResult:
        """Homology of the hom complex over a degree window.

        Results are flagged exact when the enumeration is provably
        complete; otherwise each degree is marked truncated at
        max_length.
        """
        complete = not self.has_degree_zero_letters()
        if winding is not None and not self._single_loop_alphabet():
            raise CobarError("winding sectors need a single loop edge")
        if not complete and max_length is None:
            raise CobarError(
                "truncation unacknowledged: pass max_length for this input")

        def enum(n: int, cap: Optional[int]) -> List[CobarWord]:
            return self.basis(source, target, n, cap, winding=winding)

        def exact_at(n: int, cap: Optional[int]) -> bool:
            if complete:
                return True
            if winding is not None and self._winding_sector_exact():
                return True
            return False

        return window_homology(enum, self.differential, degrees, ring,
                               max_length=max_length, complete=complete,
                               exact_at=exact_at,
                               length_increase=self.max_length_increase())

    def _single_loop_alphabet(self) -> bool:
        edges = self.C.basis.get(1, ())
        if len(edges) != 1:
            return False
        e = edges[0]
        return self.C.first[e] == self.C.last[e]

    def _winding_sector_exact(self) -> bool:
        """Extended circle-like case: one loop edge, nothing above it."""
        return (self.extended and self._single_loop_alphabet()
                and not any(n > 1 for n in self.C.basis))
