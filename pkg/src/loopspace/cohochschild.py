"""The coHochschild mixed complex of a categorical coalgebra, its
localized extension, the small resolution with its twisted differential,
and the explicit comparison maps to the cyclic bar complex.

Generators are closed necklaces x0{x1|...|xp}: a module slot holding any
basis element and a block of desuspended letters (localized words in
extended mode) chaining from the last vertex of x0 back to its first
vertex.

Sign conventions (pinned by the d^2 = 0, mixed-complex and contraction
suites; see README):

  * block letters differentiate through the cobar convention, prefixed
    by (-1)^{|x0|};
  * the left wrap x0'{x0''|x1|...} carries (-1)^{|x0|};
  * the right wrap x0''{x1|...|x0'} carries the rotation sign
    (-1)^{(|x0'|-1)(|x0''| + B) + |x0'| + 1} for block degree B;
  * the rotation operator promotes letter x_i to the module slot with
    sign (-1)^{M K + eta_i + 1} for moved/kept block degrees M and K.
"""

from __future__ import annotations

from typing import List, NamedTuple, Optional, Sequence, Tuple

from .catcoalg import CatCoalgebra
from .cobar import CobarCategory, CobarError, CobarWord, Letter
from .formal import FormalSum
from .hochschild import BarComplex, BarGen, CHGen, HochschildComplex
from .linalg import CoefficientRing, HomologyResult
from .slices import window_homology


class CoChGen(NamedTuple):
    x0: str
    letters: Tuple[Letter, ...]


class QGen(NamedTuple):
    m: CobarWord
    c: str
    n: CobarWord


class CoHochschildComplex:
    """Closed-necklace complex of a categorical coalgebra."""

    def __init__(self, coalgebra: CatCoalgebra, extended: bool = False):
        self.C = coalgebra
        self.extended = extended
        self.ctx = CobarCategory(coalgebra, extended=extended)

    # generators -------------------------------------------------------------

    def make(self, x0: str, letters: Sequence[Letter]) -> CoChGen:
        g = CoChGen(x0, self.ctx.reduce_letters(tuple(letters)))
        self.check(g)
        return g

    def check(self, g: CoChGen):
        if g.x0 not in self.C.degree_of:
            raise CobarError(f"unknown module element {g.x0}")
        w = self.block_word(g)  # validates the chain
        if w.source != self.C.last[g.x0] or w.target != self.C.first[g.x0]:
            raise CobarError(f"necklace does not close in {g}")

    def block_word(self, g: CoChGen) -> CobarWord:
        return self.ctx.word(g.letters, source=self.C.last[g.x0])

    def degree(self, g: CoChGen) -> int:
        return self.C.degree_of[g.x0] + sum(
            self.ctx.letter_degree(l) for l in g.letters)

    def length(self, g: CoChGen) -> int:
        return len(g.letters)

    def winding(self, g: CoChGen) -> int:
        total = 1 if self.C.degree_of[g.x0] == 1 else 0
        for sid, exp in g.letters:
            if self.C.degree_of[sid] == 1:
                total += exp
        return total

    def gen_key(self, g: CoChGen):
        return (self.degree(g), self.length(g), g)

    # differential -----------------------------------------------------------

    def differential(self, g: CoChGen) -> FormalSum:
        out = FormalSum()
        deg0 = self.C.degree_of[g.x0]
        # module slot differential
        for t, c in self.C.d_of(g.x0).items():
            out.add_term(CoChGen(t, g.letters), c)
        # block differential through the cobar convention
        block = self.block_word(g)
        sign = -1 if deg0 % 2 else 1
        for w, c in self.ctx.differential(block).items():
            out.add_term(CoChGen(g.x0, w.letters), sign * c)
        # wraps from the module coproduct
        B = self.degree(g) - deg0
        for (c, l, r) in self.C.delta_of(g.x0):
            dl, dr = self.C.degree_of[l], self.C.degree_of[r]
            if dr >= 1:
                # left wrap: r becomes the leading letter
                letters = self.ctx.reduce_letters(((r, 1),) + g.letters)
                s = -1 if deg0 % 2 else 1
                out.add_term(CoChGen(l, letters), s * c)
            if dl >= 1:
                # right wrap: l rotates past the block to the tail
                exp = (dl - 1) * (dr + B) + dl + 1
                s = -1 if exp % 2 else 1
                letters = self.ctx.reduce_letters(g.letters + ((l, 1),))
                out.add_term(CoChGen(r, letters), s * c)
        return out

    # rotation operator --------------------------------------------------------

    def rotation_operator(self, g: CoChGen) -> FormalSum:
        """Degree +1 rotation; vanishes unless the module is set-like.

        Letters promoted to the module slot must be plain simplex
        letters; in extended mode rotations that would promote an
        inverse letter are skipped (localized rotation convention,
        validated per winding sector by the test suite).
        """
        out = FormalSum()
        if self.C.degree_of[g.x0] != 0:
            return out
        p = len(g.letters)
        etas = [self.ctx.letter_degree(l) for l in g.letters]
        total = sum(etas)
        for i, letter in enumerate(g.letters):
            sid, exp = letter
            if exp == -1:
                continue
            moved = sum(etas[:i])
            kept = total - moved
            sign_exp = moved * kept + etas[i] + 1
            sign = -1 if sign_exp % 2 else 1
            letters = g.letters[i + 1:] + g.letters[:i]
            out.add_term(CoChGen(sid, self.ctx.reduce_letters(letters)), sign)
        return out

    # enumeration and homology --------------------------------------------------

    def basis(self, degree: int, max_length: Optional[int] = None,
              winding: Optional[int] = None,
              allow_capped: bool = False) -> List[CoChGen]:
        if not allow_capped:
            self.ctx.check_cap(degree)
        if max_length is None:
            if self.ctx.has_degree_zero_letters():
                raise CobarError("max_length required with degree-0 letters")
            max_length = degree + 1
        out: List[CoChGen] = []
        for n0 in sorted(self.C.basis):
            if n0 > degree and self.C.basis.get(n0):
                continue
            for x0 in self.C.basis.get(n0, ()):
                rem = degree - n0
                if rem < 0:
                    continue
                for w in self.ctx.basis(self.C.last[x0], self.C.first[x0],
                                        rem, max_length,
                                        allow_capped=allow_capped):
                    g = CoChGen(x0, w.letters)
                    if winding is None or self.winding(g) == winding:
                        out.append(g)
        out.sort(key=self.gen_key)
        return out

    def enumeration_complete(self) -> bool:
        return not self.ctx.has_degree_zero_letters()

    def winding_sectors_exact(self) -> bool:
        return self.extended and self.ctx._winding_sector_exact()

    def homology(self, degrees: Sequence[int], ring: CoefficientRing,
                 max_length: Optional[int] = None,
                 winding: Optional[int] = None) -> HomologyResult:
        complete = self.enumeration_complete()
        if not complete and max_length is None:
            raise CobarError(
                "truncation unacknowledged: pass max_length for this input")

        def enum(n: int, cap: Optional[int]) -> List[CoChGen]:
            return self.basis(n, cap, winding=winding)

        def exact_at(n, cap):
            return bool(winding is not None and self.winding_sectors_exact())

        return window_homology(enum, self.differential, degrees, ring,
                               max_length=max_length, complete=complete,
                               exact_at=exact_at)


class QComplex:
    """Small resolution m [] c [] n with cobar-word outer slots."""

    def __init__(self, coalgebra: CatCoalgebra,
                 module_ctx: Optional[CobarCategory] = None):
        self.C = coalgebra
        self.modules = module_ctx or CobarCategory(coalgebra)

    def check(self, g: QGen):
        if g.m.target != self.C.first[g.c] or self.C.last[g.c] != g.n.source:
            raise CobarError(f"broken chain in {g}")

    def degree(self, g: QGen) -> int:
        return (self.modules.degree(g.m) + self.C.degree_of[g.c]
                + self.modules.degree(g.n))

    def differential(self, g: QGen) -> FormalSum:
        out = FormalSum()
        dm = self.modules.degree(g.m)
        dc = self.C.degree_of[g.c]
        for w, c in self.modules.differential(g.m).items():
            out.add_term(QGen(w, g.c, g.n), c)
        sign = -1 if dm % 2 else 1
        for t, c in self.C.d_of(g.c).items():
            out.add_term(QGen(g.m, t, g.n), sign * c)
        sign = -1 if (dm + dc) % 2 else 1
        for w, c in self.modules.differential(g.n).items():
            out.add_term(QGen(g.m, g.c, w), sign * c)
        # splitting terms
        for (c, l, r) in self.C.delta_of(g.c):
            dl, dr = self.C.degree_of[l], self.C.degree_of[r]
            if dl >= 1:
                # left: m absorbs the letter {l}
                word = self.modules.compose(
                    g.m, self.modules.word([(l, 1)]))
                s = -1 if (dm + dl + 1) % 2 else 1
                out.add_term(QGen(word, r, g.n), s * c)
            if dr >= 1:
                # right: n absorbs the letter {r} in front
                word = self.modules.compose(
                    self.modules.word([(r, 1)]), g.n)
                s = -1 if (dm + dc) % 2 else 1
                out.add_term(QGen(g.m, l, word), s * c)
        return out


# ---------------------------------------------------------------------------
# contraction maps between the bar resolution and the small resolution


def iterated_reduced_coproduct(C: CatCoalgebra, basis_id: str,
                               parts: int) -> List[Tuple[int, Tuple[str, ...]]]:
    """All (coefficient, factor tuple) of the (parts-1)-fold reduced
    coproduct; coassociativity makes the bracketing irrelevant."""
    if parts == 1:
        return [(1, (basis_id,))]
    out: List[Tuple[int, Tuple[str, ...]]] = []
    for (c, l, r) in C.delta_reduced(basis_id):
        for (c2, rest) in iterated_reduced_coproduct(C, r, parts - 1):
            out.append((c * c2, (l,) + rest))
    return out


class ContractionMaps:
    """pi, alpha and the homotopy H between Bar(M, Omega(C), N) and the
    small resolution Q(M, C, N)."""

    def __init__(self, bar: BarComplex, q: QComplex):
        self.bar = bar
        self.q = q
        self.C = q.C

    # pi ----------------------------------------------------------------------

    def map_pi(self, g: BarGen) -> FormalSum:
        out = FormalSum()
        if len(g.bars) > 1:
            return out
        if not g.bars:
            out.add_term(QGen(g.m, g.m.target, g.n), 1)
            return out
        word = g.bars[0]
        letters = word.letters
        mods = self.bar.modules
        dm = mods.degree(g.m)
        for i, (sid, exp) in enumerate(letters):
            if exp == -1:
                raise CobarError("bars are plain words")
            head = mods.word(letters[:i], source=word.source)
            tail = mods.word(letters[i + 1:],
                             source=self.C.last[sid])
            mm = mods.compose(g.m, head)
            nn = mods.compose(tail, g.n)
            exp_sign = mods.degree(head) + self.C.degree_of[sid]
            s = -1 if exp_sign % 2 else 1
            out.add_term(QGen(mm, sid, nn), s)
        return out

    # alpha ---------------------------------------------------------------------

    def map_alpha(self, g: QGen) -> FormalSum:
        out = FormalSum()
        mods = self.bar.modules
        if self.C.degree_of[g.c] == 0:
            out.add_term(BarGen(g.m, (), g.n), 1)
            return out
        sign = -1 if self.C.degree_of[g.c] % 2 else 1
        for parts in range(1, self.C.degree_of[g.c] + 1):
            for coeff, factors in iterated_reduced_coproduct(
                    self.C, g.c, parts):
                bars = tuple(self.bar.bars.word([(f, 1)]) for f in factors)
                out.add_term(BarGen(g.m, bars, g.n), sign * coeff)
        return out

    # homotopy ------------------------------------------------------------------

    def map_h(self, g: BarGen) -> FormalSum:
        out = FormalSum()
        if not g.bars:
            return out
        first = g.bars[0]
        letters = first.letters
        q = len(letters)
        if q < 2:
            return out
        mods = self.bar.modules
        dm = mods.degree(g.m)
        for i in range(q - 1):
            head = mods.word(letters[:i], source=first.source)
            mm = mods.compose(g.m, self._lift(head))
            pivot = letters[i][0]
            tail_word = self.bar.bars.word(letters[i + 1:],
                                           source=self.C.last[pivot])
            s = -1 if (dm + self.C.degree_of[pivot]) % 2 else 1
            for parts in range(1, self.C.degree_of[pivot] + 1):
                for coeff, factors in iterated_reduced_coproduct(
                        self.C, pivot, parts):
                    bars = tuple(self.bar.bars.word([(f, 1)])
                                 for f in factors)
                    bars = bars + (tail_word,) + g.bars[1:]
                    out.add_term(BarGen(mm, bars, g.n), s * coeff)
        return out

    def _lift(self, word: CobarWord) -> CobarWord:
        mods = self.bar.modules
        if mods is self.bar.bars:
            return word
        return mods.word(word.letters, source=word.source)


# ---------------------------------------------------------------------------
# assembled contraction between the cyclic complex and the necklace complex


class AssembledContraction:
    """pi-bar, alpha-bar, H-bar relating CH of the cobar category to the
    necklace complex, via the wheel-collapse identification.

    Moving a module word m around the necklace carries the rotation sign
    (-1)^{|m| (degree of everything it passes)}.
    """

    def __init__(self, hochschild: HochschildComplex,
                 cohochschild: CoHochschildComplex):
        self.ch = hochschild
        self.coch = cohochschild
        self.C = cohochschild.C
        if hochschild.C is not cohochschild.C:
            raise CobarError("complexes must share one coalgebra")

    def pi_bar(self, g: CHGen) -> FormalSum:
        out = FormalSum()
        wheels = self.ch.wheels
        if len(g.bars) > 1:
            return out
        if not g.bars:
            out.add_term(CoChGen(g.wheel.source, g.wheel.letters), 1)
            return out
        word = g.bars[0]
        letters = word.letters
        ctx = self.coch.ctx
        for i, (sid, exp) in enumerate(letters):
            head = letters[:i]
            tail = letters[i + 1:]
            hdeg = sum(self.ch.bars.letter_degree(l) for l in head)
            cdeg = self.C.degree_of[sid]
            # pi sign, then rotate the head past the rest of the necklace
            rest = (cdeg + sum(self.ch.bars.letter_degree(l) for l in tail)
                    + wheels.degree(g.wheel))
            exp_sign = (hdeg + cdeg) + hdeg * rest
            s = -1 if exp_sign % 2 else 1
            block = ctx.reduce_letters(tail + g.wheel.letters + head)
            out.add_term(CoChGen(sid, block), s)
        return out

    def alpha_bar(self, g: CoChGen) -> FormalSum:
        out = FormalSum()
        wheels = self.ch.wheels
        wheel = wheels.word(g.letters, source=self.C.last[g.x0])
        if self.C.degree_of[g.x0] == 0:
            out.add_term(CHGen((), wheel), 1)
            return out
        sign = -1 if self.C.degree_of[g.x0] % 2 else 1
        for parts in range(1, self.C.degree_of[g.x0] + 1):
            for coeff, factors in iterated_reduced_coproduct(
                    self.C, g.x0, parts):
                bars = tuple(self.ch.bars.word([(f, 1)]) for f in factors)
                out.add_term(CHGen(bars, wheel), sign * coeff)
        return out

    def h_bar(self, g: CHGen) -> FormalSum:
        out = FormalSum()
        if not g.bars:
            return out
        first = g.bars[0]
        letters = first.letters
        q = len(letters)
        if q < 2:
            return out
        bars_ctx = self.ch.bars
        wheels = self.ch.wheels
        for i in range(q - 1):
            head = letters[:i]
            hdeg = sum(bars_ctx.letter_degree(l) for l in head)
            pivot = letters[i][0]
            cdeg = self.C.degree_of[pivot]
            tail_word = bars_ctx.word(letters[i + 1:],
                                      source=self.C.last[pivot])
            new_wheel = wheels.compose(
                g.wheel, wheels.word(head, source=first.source))
            passed = (cdeg + bars_ctx.degree(tail_word) + 1
                      + sum(bars_ctx.degree(b) + 1 for b in g.bars[1:])
                      + wheels.degree(g.wheel))
            exp_sign = cdeg + hdeg * passed
            s = -1 if exp_sign % 2 else 1
            for parts in range(1, cdeg + 1):
                for coeff, factors in iterated_reduced_coproduct(
                        self.C, pivot, parts):
                    bars = tuple(bars_ctx.word([(f, 1)]) for f in factors)
                    bars = bars + (tail_word,) + g.bars[1:]
                    out.add_term(CHGen(bars, new_wheel), s * coeff)
        return out


def serialize_necklace(g: CoChGen) -> list:
    """Wire format: [x0, ["c1", "c2^-1", ...]]."""
    return [g.x0,
            [sid if exp == 1 else f"{sid}^-1" for sid, exp in g.letters]]


def parse_necklace(hc: CoHochschildComplex, data) -> CoChGen:
    from .cobar import parse_letters
    return hc.make(data[0], parse_letters(data[1]))
