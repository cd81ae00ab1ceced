"""Two-sided bar complexes over the cobar category and the cyclic
Hochschild complex with its degree +1 rotation operator.

Generators are tensor words of suspended non-identity cobar words (the
bars) with module slots holding arbitrary cobar words; the cyclic
complex closes the necklace with a single wheel slot.  Signs follow one
convention throughout: a degree -1 operator applied at a position picks
up the Koszul sign of the total degree to its left, the in-slot
differential on a suspended bar is minus the word differential, merging
two suspended bars sa (x) sb carries an extra (-1)^{|a|}, merging a
module from the left carries (-1)^{|m|+1}, and merging into a module
from the right carries no extra sign.  The identities d^2 = 0, B^2 = 0
and dB + Bd = 0 asserted by the test suite pin this convention.
"""

from __future__ import annotations

from typing import List, NamedTuple, Optional, Sequence, Tuple

from .catcoalg import CatCoalgebraMorphism
from .cobar import CobarCategory, CobarError, CobarWord
from .formal import FormalSum
from .linalg import CoefficientRing, HomologyResult
from .slices import window_homology


class BarGen(NamedTuple):
    m: CobarWord
    bars: Tuple[CobarWord, ...]
    n: CobarWord


class CHGen(NamedTuple):
    bars: Tuple[CobarWord, ...]
    wheel: CobarWord


def cotensor_basis(left_basis, right_basis, last_of, first_of):
    """Pairs (m, n) with matching endpoints: the basis of the cotensor
    product of set-like-graded bicomodules."""
    return [(m, n) for m in left_basis for n in right_basis
            if last_of(m) == first_of(n)]


class BarComplex:
    """Bar construction with bars in the plain cobar category and module
    slots in a possibly extended one over the same coalgebra."""

    def __init__(self, bar_ctx: CobarCategory,
                 module_ctx: Optional[CobarCategory] = None):
        if bar_ctx.extended:
            raise CobarError("bars live in the non-extended cobar category")
        self.bars = bar_ctx
        self.modules = module_ctx or bar_ctx
        if self.modules.C is not bar_ctx.C:
            raise CobarError("bar and module contexts share one coalgebra")

    # structure -------------------------------------------------------------

    def check(self, g: BarGen):
        if any(b.is_identity() for b in g.bars):
            raise CobarError("identity bars are zero in the normalized complex")
        chain = [g.m] + list(g.bars) + [g.n]
        for a, b in zip(chain, chain[1:]):
            if a.target != b.source:
                raise CobarError(f"broken cotensor chain in {g}")

    def degree(self, g: BarGen) -> int:
        return (self.modules.degree(g.m) + self.modules.degree(g.n)
                + sum(self.bars.degree(b) + 1 for b in g.bars))

    def length(self, g: BarGen) -> int:
        return (len(g.m.letters) + len(g.n.letters)
                + sum(len(b.letters) for b in g.bars))

    def gen_key(self, g: BarGen):
        return (self.degree(g), self.length(g), g)

    # differential -----------------------------------------------------------

    def differential(self, g: BarGen) -> FormalSum:
        out = FormalSum()
        eps = [self.bars.degree(b) + 1 for b in g.bars]
        deg_m = self.modules.degree(g.m)
        p = len(g.bars)
        prefix = [deg_m]
        for e in eps:
            prefix.append(prefix[-1] + e)
        # slot differentials
        for w, c in self.modules.differential(g.m).items():
            out.add_term(BarGen(w, g.bars, g.n), c)
        for i, b in enumerate(g.bars):
            sign = -1 if prefix[i] % 2 else 1
            for w, c in self.bars.differential(b).items():
                if w.is_identity():
                    continue
                bars = g.bars[:i] + (w,) + g.bars[i + 1:]
                out.add_term(BarGen(g.m, bars, g.n), -sign * c)
        sign = -1 if prefix[p] % 2 else 1
        for w, c in self.modules.differential(g.n).items():
            out.add_term(BarGen(g.m, g.bars, w), sign * c)
        if p == 0:
            return out
        # merge first bar into the left module
        sign = 1 if deg_m % 2 else -1          # (-1)^{|m|+1}
        lifted = self._into_module(g.bars[0])
        out.add_term(BarGen(self.modules.compose(g.m, lifted),
                            g.bars[1:], g.n), sign)
        # merge adjacent bars
        for i in range(p - 1):
            merged = self.bars.compose(g.bars[i], g.bars[i + 1])
            if merged.is_identity():
                continue
            sign_exp = prefix[i] + self.bars.degree(g.bars[i])
            sign = -1 if sign_exp % 2 else 1
            bars = g.bars[:i] + (merged,) + g.bars[i + 2:]
            out.add_term(BarGen(g.m, bars, g.n), sign)
        # merge last bar into the right module
        sign = -1 if prefix[p - 1] % 2 else 1
        lifted = self._into_module(g.bars[-1])
        out.add_term(BarGen(g.m, g.bars[:-1],
                            self.modules.compose(lifted, g.n)), sign)
        return out

    def _into_module(self, bar: CobarWord) -> CobarWord:
        if self.modules is self.bars:
            return bar
        return self.modules.word(bar.letters, source=bar.source)


class HochschildComplex:
    """Cyclic bar-type complex of the cobar category, with the rotation
    operator making it a mixed complex.

    The wheel slot may live in the extended cobar category; the bars are
    always plain non-identity words.
    """

    def __init__(self, bar_ctx: CobarCategory,
                 wheel_ctx: Optional[CobarCategory] = None):
        self.bars = bar_ctx
        self.wheels = wheel_ctx or bar_ctx
        if self.wheels.C is not bar_ctx.C:
            raise CobarError("bar and wheel contexts share one coalgebra")
        if bar_ctx.extended and self.wheels is not bar_ctx:
            raise CobarError("extended bars require extended wheels")
        self.C = bar_ctx.C

    def check(self, g: CHGen):
        if any(b.is_identity() for b in g.bars):
            raise CobarError("identity bars are zero in the normalized complex")
        chain = list(g.bars) + [g.wheel]
        for a, b in zip(chain, chain[1:]):
            if a.target != b.source:
                raise CobarError(f"broken chain in {g}")
        if chain[-1].target != chain[0].source:
            raise CobarError(f"necklace does not close in {g}")

    def degree(self, g: CHGen) -> int:
        return (self.wheels.degree(g.wheel)
                + sum(self.bars.degree(b) + 1 for b in g.bars))

    def length(self, g: CHGen) -> int:
        return len(g.wheel.letters) + sum(len(b.letters) for b in g.bars)

    def winding(self, g: CHGen) -> int:
        return (self.wheels.winding(g.wheel)
                + sum(self.bars.winding(b) for b in g.bars))

    def gen_key(self, g: CHGen):
        return (self.degree(g), self.length(g), g)

    def _into_wheel(self, bar: CobarWord) -> CobarWord:
        if self.wheels is self.bars:
            return bar
        return self.wheels.word(bar.letters, source=bar.source)

    # differential -----------------------------------------------------------

    def differential(self, g: CHGen) -> FormalSum:
        out = FormalSum()
        p = len(g.bars)
        eps = [self.bars.degree(b) + 1 for b in g.bars]
        deg_w = self.wheels.degree(g.wheel)
        prefix = [0]
        for e in eps:
            prefix.append(prefix[-1] + e)
        # slot differentials
        for i, b in enumerate(g.bars):
            sign = -1 if prefix[i] % 2 else 1
            for w, c in self.bars.differential(b).items():
                if w.is_identity():
                    continue
                bars = g.bars[:i] + (w,) + g.bars[i + 1:]
                out.add_term(CHGen(bars, g.wheel), -sign * c)
        sign = -1 if prefix[p] % 2 else 1
        for w, c in self.wheels.differential(g.wheel).items():
            out.add_term(CHGen(g.bars, w), sign * c)
        if p == 0:
            return out
        # adjacent bar merges
        for i in range(p - 1):
            merged = self.bars.compose(g.bars[i], g.bars[i + 1])
            if merged.is_identity():
                continue
            sign_exp = prefix[i] + self.bars.degree(g.bars[i])
            sign = -1 if sign_exp % 2 else 1
            bars = g.bars[:i] + (merged,) + g.bars[i + 2:]
            out.add_term(CHGen(bars, g.wheel), sign)
        # last bar absorbed into the wheel from the left
        sign = -1 if prefix[p - 1] % 2 else 1
        merged = self.wheels.compose(self._into_wheel(g.bars[-1]), g.wheel)
        out.add_term(CHGen(g.bars[:-1], merged), sign)
        # wrap: wheel absorbs the first bar from the right of the cycle;
        # rotate sa_1 past the rest, then merge with prefix over the
        # remaining bars and the intrinsic (-1)^{|wheel|+1}
        e1 = eps[0]
        r = prefix[p] - e1
        sign_exp = e1 * (r + deg_w) + r + deg_w + 1
        sign = -1 if sign_exp % 2 else 1
        merged = self.wheels.compose(g.wheel, self._into_wheel(g.bars[0]))
        out.add_term(CHGen(g.bars[1:], merged), sign)
        return out

    # rotation operator -------------------------------------------------------

    def rotation_operator(self, g: CHGen) -> FormalSum:
        """Degree +1 operator rotating the wheel into the bars.

        All cyclic rotations whose new wheel is an identity at the
        rotation basepoint; rotations placing an identity wheel into the
        bar region vanish by normalization.
        """
        out = FormalSum()
        p = len(g.bars)
        wheel_bar = self._from_wheel(g.wheel)
        if wheel_bar is None:
            return out
        eps = [self.bars.degree(b) + 1 for b in g.bars]
        w = self.wheels.degree(g.wheel)
        for r in range(p + 1):
            # new bars start at a_{r+1} (or at the old wheel when r = p);
            # moved block degree M = eps_1 + .. + eps_r, kept K = the rest
            moved = sum(eps[:r])
            kept = sum(eps[r:])
            sign_exp = kept * (moved + 1) + w * moved
            sign = -1 if sign_exp % 2 else 1
            if r == p:
                bars = (wheel_bar,) + g.bars
                base = g.wheel.source
            else:
                bars = g.bars[r:] + (wheel_bar,) + g.bars[:r]
                base = g.bars[r].source
            out.add_term(CHGen(bars, self.wheels.identity(base)), sign)
        return out

    def _from_wheel(self, wheel: CobarWord) -> Optional[CobarWord]:
        """Wheel word as a bar; None when it is an identity or leaves the
        bar category (with plain bars, inverse letters cannot rotate in)."""
        if wheel.is_identity():
            return None
        if not self.bars.extended and \
                any(exp == -1 for (_, exp) in wheel.letters):
            return None
        return self.bars.word(wheel.letters, source=wheel.source)

    # functoriality -----------------------------------------------------------

    def map_by(self, f: CatCoalgebraMorphism,
               target: "HochschildComplex", g: CHGen) -> FormalSum:
        """Chain map induced by a coalgebra morphism, slotwise."""
        pieces: List[FormalSum] = []
        for b in g.bars:
            pieces.append(self.bars.apply_morphism(f, target.bars, b))
        wheel_img = self.wheels.apply_morphism(f, target.wheels, g.wheel)
        out = FormalSum()

        def expand(i: int, bars: Tuple[CobarWord, ...], coeff: int):
            if i == len(pieces):
                for w, c in wheel_img.items():
                    out.add_term(CHGen(bars, w), coeff * c)
                return
            for b, c in pieces[i].items():
                if b.is_identity():
                    continue
                expand(i + 1, bars + (b,), coeff * c)

        expand(0, (), 1)
        return out

    # basis and homology --------------------------------------------------------

    def basis(self, degree: int, max_length: Optional[int] = None,
              winding: Optional[int] = None,
              allow_capped: bool = False) -> List[CHGen]:
        """All cyclic generators of the given degree, deterministic order."""
        if not allow_capped:
            self.bars.check_cap(degree)
        if max_length is None:
            if self.bars.has_degree_zero_letters():
                raise CobarError("max_length required with degree-0 letters")
            max_length = degree
        out: List[CHGen] = []
        objects = sorted(self.C.set_likes)
        for start in objects:
            self._enumerate(start, degree, max_length, winding, out)
        out.sort(key=self.gen_key)
        return out

    def _enumerate(self, start: str, degree: int, max_length: int,
                   winding: Optional[int], out: List[CHGen]):
        """Necklaces whose first slot starts at `start`; to avoid double
        counting across basepoints, only keep generators whose minimal
        chain vertex equals `start` lexicographically."""

        def rec(vertex: str, deg_left: int, len_left: int,
                bars: Tuple[CobarWord, ...]):
            # close with a wheel back to the start
            for w in self._wheel_words(vertex, start, deg_left, len_left,
                                       winding=None):
                g = CHGen(bars, w)
                if winding is None or self.winding(g) == winding:
                    out.append(g)
            # or add one more bar (suspended degree n >= 1)
            for n in range(1, deg_left + 1):
                for b in self._bar_words(vertex, n - 1, len_left):
                    rec(b.target, deg_left - n, len_left - len(b.letters),
                        bars + (b,))

        rec(start, degree, max_length, ())

    def _bar_words(self, source: str, word_degree: int, max_len: int):
        if max_len < 0:
            return
        for y in sorted(self.C.set_likes):
            for w in self.bars.basis(source, y, word_degree, max_len,
                                     allow_capped=True):
                if not w.is_identity():
                    yield w

    def _wheel_words(self, source: str, target: str, degree: int,
                     max_len: int, winding: Optional[int]):
        if max_len < 0:
            return
        yield from self.wheels.basis(source, target, degree, max_len,
                                     winding=winding, allow_capped=True)

    def _chain_vertices(self, g: CHGen) -> List[str]:
        verts = [b.source for b in g.bars] + [g.wheel.source, g.wheel.target]
        return verts

    def homology(self, degrees: Sequence[int], ring: CoefficientRing,
                 max_length: Optional[int] = None,
                 winding: Optional[int] = None) -> HomologyResult:
        complete = (not self.bars.has_degree_zero_letters()
                    and not self.wheels.has_degree_zero_letters())
        if not complete and max_length is None:
            raise CobarError(
                "truncation unacknowledged: pass max_length for this input")

        def enum(n: int, cap: Optional[int]) -> List[CHGen]:
            return self.basis(n, cap, winding=winding)

        increase = max(self.bars.max_length_increase(),
                       self.wheels.max_length_increase())
        return window_homology(enum, self.differential, degrees, ring,
                               max_length=max_length, complete=complete,
                               length_increase=increase)
