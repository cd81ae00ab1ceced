"""Hopf structure on the localized cobar construction of a reduced
simplicial set, and the twisted tensor product model built from its
adjoint action.

Everything here assumes one vertex.  The coproduct on a letter follows
the cubical diagonal: an n-simplex letter splits, for each subset B of
its inner vertices, into the word of consecutive faces cut at B tensor
the face spanned by {0} u B u {n}, with shuffle signs; degenerate edges
act as identities while higher-dimensional degenerate faces kill the
term.  The antipode is computed as a convolution inverse: the degree-0
part inverts group-likes by word reversal, and positive degrees are
corrected by a finite geometric series.
"""

from __future__ import annotations

from itertools import combinations
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .catcoalg import CatCoalgebra
from .cobar import CobarCategory, CobarError, CobarWord
from .cohochschild import (AssembledContraction, CoChGen,
                           CoHochschildComplex, iterated_reduced_coproduct)
from .formal import FormalSum
from .hochschild import CHGen, HochschildComplex
from .simplicial import SimplicialSetPresentation, is_degenerate


class TwistedGen(NamedTuple):
    c: str
    b: CobarWord


class PairSum:
    """Formal sum of pairs (left word, right word) with int coefficients."""

    def __init__(self):
        self.coeffs: Dict[Tuple[CobarWord, CobarWord], int] = {}

    def add(self, pair, coeff):
        if not coeff:
            return
        c = self.coeffs.get(pair, 0) + coeff
        if c:
            self.coeffs[pair] = c
        else:
            del self.coeffs[pair]

    def items(self):
        return self.coeffs.items()

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, PairSum) and self.coeffs == other.coeffs


class HopfCobar:
    """Dg bialgebra structure on the (extended) cobar construction of the
    chains on a reduced presentation, with a constructive antipode in the
    extended case."""

    def __init__(self, coalgebra: CatCoalgebra,
                 presentation: SimplicialSetPresentation,
                 extended: bool = True):
        if len(coalgebra.set_likes) != 1:
            raise CobarError("Hopf structure needs a reduced simplicial set")
        self.C = coalgebra
        self.pres = presentation
        self.ctx = CobarCategory(coalgebra, extended=extended)
        self.plain = CobarCategory(coalgebra, extended=False)
        self.vertex = coalgebra.set_likes[0]
        self._letter_cache: Dict[Tuple[str, int], PairSum] = {}
        self._antipode_cache: Dict[CobarWord, FormalSum] = {}

    # ------------------------------------------------------------------
    # coproduct

    def _word_or_none(self, refs: Sequence, ctx: CobarCategory):
        """Cobar word from face references; degenerate edges drop out,
        higher-dimensional degenerate faces return None (zero)."""
        letters = []
        for ref in refs:
            word, base = ref
            if is_degenerate(ref):
                dim = self.pres.dim(base) + len(word)
                if dim == 1:
                    continue
                return None
            letters.append((base, 1))
        return self.ctx.word(letters, source=self.vertex)

    def coproduct_letter(self, letter) -> PairSum:
        sid, exp = letter
        key = (sid, exp)
        cached = self._letter_cache.get(key)
        if cached is not None:
            return cached
        out = PairSum()
        if exp == -1 or self.C.degree_of[sid] == 1:
            w = self.ctx.word([letter])
            out.add((w, w), 1)
            self._letter_cache[key] = out
            return out
        n = self.C.degree_of[sid]
        inner = list(range(1, n))
        base_ref = ((), sid)
        for k in range(0, n):
            for B in combinations(inner, k):
                A = [i for i in inner if i not in B]
                # shuffle sign: pairs (a, b) in A x B with b < a
                inv = sum(1 for a in A for b in B if b < a)
                cuts = [0] + list(B) + [n]
                refs = [self.pres.subset_face(
                    base_ref, list(range(cuts[j], cuts[j + 1] + 1)))
                    for j in range(len(cuts) - 1)]
                left = self._word_or_none(refs, self.ctx)
                if left is None:
                    continue
                right_ref = self.pres.subset_face(base_ref, sorted({0, n} | set(B)))
                right = self._word_or_none([right_ref], self.ctx)
                if right is None:
                    continue
                out.add((left, right), -1 if inv % 2 else 1)
        self._letter_cache[key] = out
        return out

    def coproduct(self, w: CobarWord) -> PairSum:
        """Multiplicative extension over the letters, with Koszul signs
        (x1 (x) y1)(x2 (x) y2) = (-1)^{|y1||x2|} x1x2 (x) y1y2."""
        out = PairSum()
        out.add((self.ctx.identity(w.source), self.ctx.identity(w.source)), 1)
        for letter in w.letters:
            piece = self.coproduct_letter(letter)
            nxt = PairSum()
            for (x1, y1), c1 in out.items():
                for (x2, y2), c2 in piece.items():
                    sign_exp = self.ctx.degree(y1) * self.ctx.degree(x2)
                    s = -1 if sign_exp % 2 else 1
                    nxt.add((self.ctx.compose(x1, x2),
                             self.ctx.compose(y1, y2)), s * c1 * c2)
            out = nxt
        return out

    def coproduct_sum(self, s: FormalSum) -> PairSum:
        out = PairSum()
        for w, c in s.items():
            for pair, c2 in self.coproduct(w).items():
                out.add(pair, c * c2)
        return out

    def coproduct_plain(self, w: CobarWord) -> PairSum:
        """Coproduct of a plain word; both legs stay in the plain
        category (letter splittings never produce inverse letters)."""
        out = PairSum()
        for (x, y), c in self.coproduct(self.include(w)).items():
            px = self.plain.word(x.letters, source=x.source)
            py = self.plain.word(y.letters, source=y.source)
            out.add((px, py), c)
        return out

    def counit(self, w: CobarWord) -> int:
        return 1 if self.ctx.degree(w) == 0 else 0

    # ------------------------------------------------------------------
    # antipode

    def _degree_zero_antipode(self, w: CobarWord) -> CobarWord:
        letters = tuple((sid, -exp) for (sid, exp) in reversed(w.letters))
        return self.ctx.word(letters, source=w.source)

    def antipode(self, w: CobarWord) -> FormalSum:
        """Convolution inverse of the identity, evaluated recursively.

        With pi0/pi+ the degree projections and s0 the group-like
        inversion, the inverse satisfies s = s0 pi0 - ((s0 pi0) * pi+) * s,
        which terminates because the correction consumes positive degree.
        """
        if not self.ctx.extended:
            raise CobarError("antipode needs the extended cobar construction")
        cached = self._antipode_cache.get(w)
        if cached is not None:
            return cached
        total = FormalSum()
        if self.ctx.degree(w) == 0:
            total.add_term(self._degree_zero_antipode(w), 1)
        for (x, y), c in self.coproduct(w).items():
            # correction term: -(s0 pi0 * pi+)(x) composed with s(y)
            corr = FormalSum()
            for (x1, x2), c2 in self.coproduct(x).items():
                if self.ctx.degree(x1) == 0 and self.ctx.degree(x2) > 0:
                    corr.add_term(self.ctx.compose(
                        self._degree_zero_antipode(x1), x2), c2)
            if corr.is_zero():
                continue
            rec = self.antipode(y)
            for t1, c1 in corr.items():
                for t2, c2 in rec.items():
                    total.add_term(self.ctx.compose(t1, t2), -c * c1 * c2)
        self._antipode_cache[w] = total
        return total

    def antipode_sum(self, s: FormalSum) -> FormalSum:
        return s.map_terms(self.antipode)

    def check_antipode_equations(self, w: CobarWord) -> bool:
        """mu (s (x) id) nabla = eta eps = mu (id (x) s) nabla, exactly."""
        expected = FormalSum.term(self.ctx.identity(w.source)) \
            if self.counit(w) else FormalSum()
        left = FormalSum()
        right = FormalSum()
        for (x, y), c in self.coproduct(w).items():
            for t, c2 in self.antipode(x).items():
                left.add_term(self.ctx.compose(t, y), c * c2)
            for t, c2 in self.antipode(y).items():
                right.add_term(self.ctx.compose(x, t), c * c2)
        return left == expected and right == expected

    # ------------------------------------------------------------------
    # adjoint action

    def include(self, w: CobarWord) -> CobarWord:
        """Plain word viewed in the extended category."""
        return self.ctx.word(w.letters, source=w.source)

    def adjoint_action(self, a: CobarWord, b: CobarWord) -> FormalSum:
        """a . b = sum (-1)^{|a'|(|a''| + |b|)} f(a'') b s(f(a'))."""
        out = FormalSum()
        db = self.ctx.degree(b)
        for (a1, a2), c in self.coproduct(self.include(a)).items():
            d1 = self.ctx.degree(a1)
            d2 = self.ctx.degree(a2)
            s = -1 if (d1 * (d2 + db)) % 2 else 1
            for t, c2 in self.antipode(a1).items():
                word = self.ctx.compose(self.ctx.compose(a2, b), t)
                out.add_term(word, s * c * c2)
        return out

    def adjoint_action_sum(self, a: CobarWord, bs: FormalSum) -> FormalSum:
        out = FormalSum()
        for b, c in bs.items():
            for t, c2 in self.adjoint_action(a, b).items():
                out.add_term(t, c * c2)
        return out


# ---------------------------------------------------------------------------
# Hochschild complexes with coefficients, and the change-of-action map


class AdjointComplex:
    """Bar(k, A, B) for the adjoint action of the plain cobar algebra on
    the localized one.  Generators share the (bars, wheel) shape of
    cyclic generators, with the wheel holding the coefficient."""

    def __init__(self, hopf: HopfCobar):
        self.hopf = hopf
        self.bars = hopf.plain
        self.wheels = hopf.ctx

    def degree(self, g: CHGen) -> int:
        return (self.wheels.degree(g.wheel)
                + sum(self.bars.degree(b) + 1 for b in g.bars))

    def differential(self, g: CHGen) -> FormalSum:
        out = FormalSum()
        p = len(g.bars)
        eps = [self.bars.degree(b) + 1 for b in g.bars]
        prefix = [0]
        for e in eps:
            prefix.append(prefix[-1] + e)
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
        # counit absorption of the first bar into the trivial module
        if self.bars.degree(g.bars[0]) == 0:
            out.add_term(CHGen(g.bars[1:], g.wheel), -1)
        # adjacent merges
        for i in range(p - 1):
            merged = self.bars.compose(g.bars[i], g.bars[i + 1])
            if merged.is_identity():
                continue
            sign_exp = prefix[i] + self.bars.degree(g.bars[i])
            sign = -1 if sign_exp % 2 else 1
            bars = g.bars[:i] + (merged,) + g.bars[i + 2:]
            out.add_term(CHGen(bars, g.wheel), sign)
        # last bar acts on the coefficient through the adjoint action
        sign = -1 if prefix[p - 1] % 2 else 1
        acted = self.hopf.adjoint_action(g.bars[-1], g.wheel)
        for w, c in acted.items():
            out.add_term(CHGen(g.bars[:-1], w), sign * c)
        return out


def phi_map(hopf: HopfCobar, g: CHGen, inverse: bool = False) -> FormalSum:
    """Strict isomorphism between the inner-coefficient Hochschild complex
    and the adjoint-coefficient complex (and its inverse).

    phi([a1|..|ap]b) collects the coproduct legs of each bar, moving the
    primed legs past the kept legs and the coefficient with unsuspended
    Koszul signs, and multiplies their ordered product onto the
    coefficient (through the antipode for the inverse map).
    """
    ctx = hopf.ctx
    out = FormalSum()

    def rec(i: int, kept: Tuple[CobarWord, ...], primes: Tuple[CobarWord, ...],
            coeff: int, sign_exp: int):
        if i == len(g.bars):
            prod = ctx.identity(hopf.vertex)
            for pr in primes:
                prod = ctx.compose(prod, hopf.include(pr))
            if inverse:
                acted = hopf.antipode(prod)
            else:
                acted = FormalSum.term(prod)
            for t, c2 in acted.items():
                word = ctx.compose(g.wheel, t)
                keep = tuple(b for b in kept if not b.is_identity())
                if len(keep) != len(kept):
                    return
                out.add_term(CHGen(keep, word),
                             coeff * c2 * (-1 if sign_exp % 2 else 1))
            return
        bar = g.bars[i]
        for (x, y), c in hopf.coproduct_plain(bar).items():
            # x is the primed leg, y the kept leg; x crosses the kept legs
            # to its right and the coefficient
            cross = sum(hopf.plain.degree(b) for b in g.bars[i + 1:]) \
                + hopf.plain.degree(y) + ctx.degree(g.wheel)
            rec(i + 1, kept + (y,), primes + (x,), coeff * c,
                sign_exp + hopf.plain.degree(x) * cross)

    rec(0, (), (), 1, 0)
    return out


# ---------------------------------------------------------------------------
# twisting cochains and the twisted tensor product


def twisting_cochain_residuals(ctx: CobarCategory,
                               tau: Dict[str, FormalSum]) -> Dict[str, FormalSum]:
    """Residual of the curved twisting-cochain condition per basis element:

        D(tau c) - tau(d~ c) + sum (-1)^{|c'|} tau(c') tau(c'') + h(c) id

    with the splitting sum over the reduced coproduct.  The universal
    cochain c -> {c} satisfies it identically.
    """
    C = ctx.C
    out: Dict[str, FormalSum] = {}
    for c in C.degree_of:
        if C.degree_of[c] == 0:
            continue
        res = FormalSum()
        tc = tau.get(c, FormalSum())
        for w, k in tc.items():
            for t, k2 in ctx.differential(w).items():
                res.add_term(t, k * k2)
        for t, k in C.d_of(c).items():
            for w, k2 in tau.get(t, FormalSum()).items():
                res.add_term(w, -k * k2)
        for (k, l, r) in C.delta_reduced(c):
            sign = -1 if C.degree_of[l] % 2 else 1
            for w1, k1 in tau.get(l, FormalSum()).items():
                for w2, k2 in tau.get(r, FormalSum()).items():
                    res.add_term(ctx.compose(w1, w2), sign * k * k1 * k2)
        hv = C.h_of(c)
        if hv:
            res.add_term(ctx.identity(C.first[c]), hv)
        if not res.is_zero():
            out[c] = res
    return out


def universal_twisting_cochain(ctx: CobarCategory) -> Dict[str, FormalSum]:
    tau = {}
    for c, n in ctx.C.degree_of.items():
        if n >= 1:
            tau[c] = FormalSum.term(ctx.word([(c, 1)]))
    return tau


class TwistedComplex:
    """C tensor the adjoint module over the universal twisting cochain.

    The differential is induced by the small-resolution identification:
    besides the two slotwise terms and the adjoint-twisting term, the
    counit of the Hopf algebra absorbs degree-0 letters split off on the
    left (that absorption is what makes the circle sectors acyclic-free)."""

    def __init__(self, hopf: HopfCobar):
        self.hopf = hopf
        self.C = hopf.C
        self.ctx = hopf.ctx

    def degree(self, g: TwistedGen) -> int:
        return self.C.degree_of[g.c] + self.ctx.degree(g.b)

    def winding(self, g: TwistedGen) -> int:
        # the fiber word carries the loop class; the base simplex only
        # moves the basepoint (conjugation preserves winding)
        return self.ctx.winding(g.b)

    def gen_key(self, g: TwistedGen):
        return (self.degree(g), len(g.b.letters), g)

    def differential(self, g: TwistedGen) -> FormalSum:
        out = FormalSum()
        dc = self.C.degree_of[g.c]
        for t, c in self.C.d_of(g.c).items():
            out.add_term(TwistedGen(t, g.b), c)
        sign = -1 if dc % 2 else 1
        for w, c in self.ctx.differential(g.b).items():
            out.add_term(TwistedGen(g.c, w), sign * c)
        for (c, l, r) in self.C.delta_of(g.c):
            dl, dr = self.C.degree_of[l], self.C.degree_of[r]
            if dl == 1:
                # counit absorption of the split-off edge
                out.add_term(TwistedGen(r, g.b), c)
            if dr >= 1:
                word = self.ctx.word([(r, 1)])
                for b2, c2 in self.hopf.adjoint_action(
                        self.hopf.plain.word([(r, 1)]), g.b).items():
                    out.add_term(TwistedGen(l, b2), sign * c * c2)
        return out

    def basis(self, degree: int, max_length: Optional[int] = None,
              winding: Optional[int] = None) -> List[TwistedGen]:
        if max_length is None:
            if self.ctx.has_degree_zero_letters():
                raise CobarError("max_length required with degree-0 letters")
            max_length = degree + 1
        out = []
        v = self.hopf.vertex
        for n0 in sorted(self.C.basis):
            for c in self.C.basis.get(n0, ()):
                rem = degree - n0
                if rem < 0:
                    continue
                for w in self.ctx.basis(v, v, rem, max_length,
                                        allow_capped=True):
                    g = TwistedGen(c, w)
                    if winding is None or self.winding(g) == winding:
                        out.append(g)
        out.sort(key=self.gen_key)
        return out


def constant_loop(hopf: HopfCobar, c: str) -> TwistedGen:
    """The point-to-constant-loop inclusion at the chain level."""
    return TwistedGen(c, hopf.ctx.identity(hopf.vertex))


# ---------------------------------------------------------------------------
# comparison with the localized necklace complex


class LoopComparison:
    """Chain maps between the twisted tensor product and the localized
    necklace complex, composed from the contraction, the action
    isomorphism, and the wheel collapses."""

    def __init__(self, hopf: HopfCobar):
        self.hopf = hopf
        self.C = hopf.C
        self.twisted = TwistedComplex(hopf)
        self.adjoint = AdjointComplex(hopf)
        self.ch = HochschildComplex(hopf.plain, hopf.ctx)
        self.coch = CoHochschildComplex(hopf.C, extended=True)
        self.assembled = AssembledContraction(self.ch, self.coch)

    # twisted <-> adjoint-coefficient bar complex ------------------------

    def alpha_two(self, g: TwistedGen) -> FormalSum:
        out = FormalSum()
        if self.C.degree_of[g.c] == 0:
            out.add_term(CHGen((), g.b), 1)
            return out
        sign = -1 if self.C.degree_of[g.c] % 2 else 1
        for parts in range(1, self.C.degree_of[g.c] + 1):
            for coeff, factors in iterated_reduced_coproduct(
                    self.C, g.c, parts):
                bars = tuple(self.hopf.plain.word([(f, 1)]) for f in factors)
                out.add_term(CHGen(bars, g.b), sign * coeff)
        return out

    def pi_two(self, g: CHGen) -> FormalSum:
        out = FormalSum()
        if len(g.bars) > 1:
            return out
        if not g.bars:
            out.add_term(TwistedGen(self.hopf.vertex, g.wheel), 1)
            return out
        letters = g.bars[0].letters
        plain = self.hopf.plain
        for i, (sid, exp) in enumerate(letters):
            head_deg = sum(plain.letter_degree(l) for l in letters[:i])
            if head_deg != 0:
                continue
            tail = plain.word(letters[i + 1:], source=self.C.last[sid])
            sign = -1 if self.C.degree_of[sid] % 2 else 1
            for b2, c2 in self.hopf.adjoint_action(tail, g.wheel).items():
                out.add_term(TwistedGen(sid, b2), sign * c2)
        return out

    # full composites -----------------------------------------------------

    def forward(self, g: TwistedGen) -> FormalSum:
        """Twisted tensor product to the localized necklace complex."""
        step1 = self.alpha_two(g)
        step2 = step1.map_terms(lambda x: phi_map(self.hopf, x, inverse=True))
        return step2.map_terms(self.assembled.pi_bar)

    def backward(self, g: CoChGen) -> FormalSum:
        step1 = self.assembled.alpha_bar(g)
        step2 = step1.map_terms(lambda x: phi_map(self.hopf, x))
        return step2.map_terms(self.pi_two)
