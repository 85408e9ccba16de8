"""The bigraded complex computing H^*(C_k(M); Q).

For k points the complex is

    sum over w = 0..floor(k/2) of  Sym^{k-2w}(V) (x) Sym^w(W),

graded by cohomological degree i and weight w, with the differential
sending weight w to weight w-1 and raising degree by one.  Monomials
are words in the generators; the graded-symmetric algebra means even
generators commute, odd generators anticommute and square to zero.

Signs.  Every monomial is stored in canonical order (V-factors first,
then W-factors, each block sorted by generator position) with
coefficient +1.  The differential of a canonical word f_1 ... f_L is
the Leibniz sum over positions j:

    (-1)^(deg f_1 + ... + deg f_{j-1}) f_1 ... (d f_j) ... f_L,

and each resulting word is renormalized to canonical order, picking up
(-1)^(number of inversions among its odd factors); words with a
repeated odd factor die.  All coefficients are exact rationals.

For the built-in CP^m rings there is a reduction: the ideal generated
by (v_top^2, w_top) — top meaning the degree-2m V-generator and the
degree-(4m-1) W-generator — is a subcomplex, acyclic for k >= 2 via the
explicit homotopy  h(v_top^2 A + B w_top) = w_top A,  so the quotient
complex (monomials with v_top-exponent <= 1 and no w_top) has the same
cohomology.  homotopy_check verifies (dh + hd) = id on the ideal
exactly; reduce_complex builds the quotient basis.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb


class AssemblyError(RuntimeError):
    """Internal consistency failure while assembling differential blocks."""


class Monomial:
    """Canonical monomial: exponent tuples over the V- and W-generators.

    degree, weight (total W-exponent) and v_length (total V-exponent)
    are precomputed; identity is by exponents alone, so monomials from
    the same GeneratorSet compare and hash cheaply.
    """

    __slots__ = ("v_exps", "w_exps", "degree", "weight", "v_length", "_h")

    def __init__(self, v_exps, w_exps, degree, weight, v_length):
        self.v_exps = v_exps
        self.w_exps = w_exps
        self.degree = degree
        self.weight = weight
        self.v_length = v_length
        self._h = hash((v_exps, w_exps))

    def __eq__(self, other):
        return self.v_exps == other.v_exps and self.w_exps == other.w_exps

    def __hash__(self):
        return self._h

    def key(self):
        """Canonical sort key within a (degree, weight) slice."""
        return (self.v_exps, self.w_exps)

    def label(self, G):
        """Human-readable form, e.g. 'v2^2 v4 w7'."""
        parts = []
        for gens, exps in ((G.v_gens, self.v_exps), (G.w_gens, self.w_exps)):
            for g, e in zip(gens, exps):
                if e == 1:
                    parts.append(g.name)
                elif e > 1:
                    parts.append("%s^%d" % (g.name, e))
        return " ".join(parts) if parts else "1"

    def __repr__(self):
        return "Monomial(v=%r, w=%r)" % (self.v_exps, self.w_exps)


def make_monomial(G, v_exps, w_exps):
    v_exps = tuple(v_exps)
    w_exps = tuple(w_exps)
    degree = sum(e * d for e, d in zip(v_exps, G.v_degrees)) \
        + sum(e * d for e, d in zip(w_exps, G.w_degrees))
    return Monomial(v_exps, w_exps, degree, sum(w_exps), sum(v_exps))


@dataclass
class BigradedBasis:
    """Monomial bases of all (degree, weight) slices for one k.

    slices maps (degree, weight) to a tuple of Monomials in canonical
    order; empty slices are absent.  mode is "full" or "reduced".
    """
    k: int
    mode: str
    slices: dict
    _pos: dict = field(default_factory=dict, repr=False, compare=False)

    def slice(self, degree, weight):
        return self.slices.get((degree, weight), ())

    def positions(self, degree, weight):
        """Monomial -> column index within the slice (cached)."""
        key = (degree, weight)
        pos = self._pos.get(key)
        if pos is None:
            pos = {mon: i for i, mon in enumerate(self.slices.get(key, ()))}
            self._pos[key] = pos
        return pos

    def total_dimension(self):
        return sum(len(mons) for mons in self.slices.values())

    def top_degree(self):
        return max((i for i, _ in self.slices), default=0)

    def degree_dimensions(self):
        """Total dimension per degree, summed over weights."""
        out = {}
        for (i, _), mons in self.slices.items():
            out[i] = out.get(i, 0) + len(mons)
        return out


@dataclass
class DifferentialBlock:
    """One matrix of the differential, from slice source to slice target.

    Columns index the source slice, rows the target slice, both in
    canonical monomial order.
    """
    source: tuple
    target: tuple
    matrix: object


def _sym_exponents(parities, total):
    """Exponent tuples of graded-symmetric monomials of given length.

    parities flags which generators are odd (exponent at most 1).
    Yields tuples in lexicographic order.
    """
    n = len(parities)
    out = []
    exps = [0] * n

    def rec(i, rem):
        if i == n:
            if rem == 0:
                out.append(tuple(exps))
            return
        cap = 1 if parities[i] else rem
        for e in range(min(cap, rem) + 1):
            exps[i] = e
            rec(i + 1, rem - e)
        exps[i] = 0

    rec(0, total)
    return out


def _sym_count(parities, total):
    """Closed-form count matching _sym_exponents."""
    odd = sum(1 for p in parities if p)
    even = len(parities) - odd
    count = 0
    for j in range(min(odd, total) + 1):
        rest = total - j
        if even == 0:
            count += comb(odd, j) if rest == 0 else 0
        else:
            count += comb(odd, j) * comb(rest + even - 1, even - 1)
    return count


def count_monomials(G, k):
    """Total number of monomials in the full complex for k points."""
    return sum(
        _sym_count(G.v_parities, k - 2 * w) * _sym_count(G.w_parities, w)
        for w in range(k // 2 + 1)
    )


def enumerate_basis(G, k):
    """Canonical monomial basis of the full complex, sliced by (i, w)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    slices = {}
    for w in range(k // 2 + 1):
        for ve in _sym_exponents(G.v_parities, k - 2 * w):
            vdeg = sum(e * d for e, d in zip(ve, G.v_degrees))
            vlen = k - 2 * w
            for we in _sym_exponents(G.w_parities, w):
                deg = vdeg + sum(e * d for e, d in zip(we, G.w_degrees))
                mon = Monomial(ve, we, deg, w, vlen)
                slices.setdefault((deg, w), []).append(mon)
    return BigradedBasis(
        k=k, mode="full",
        slices={key: tuple(sorted(mons, key=Monomial.key))
                for key, mons in slices.items()},
    )


def _word(G, mon):
    """Canonical factor sequence of a monomial: list of (space, index).

    space 0 means V, 1 means W; within each space factors appear in
    generator order, repeated per exponent.
    """
    word = []
    for idx, e in enumerate(mon.v_exps):
        word.extend([(0, idx)] * e)
    for idx, e in enumerate(mon.w_exps):
        word.extend([(1, idx)] * e)
    return word


def _factor_degree(G, factor):
    space, idx = factor
    return G.v_degrees[idx] if space == 0 else G.w_degrees[idx]


def _normalize_word(G, word):
    """Canonical form of an arbitrary word.

    Returns (sign, Monomial), or None when an odd factor repeats.  The
    sign is (-1)^(inversions among the odd factors) — even factors
    commute freely, so only the relative order of odd ones matters.
    """
    odd_seq = []
    v_exps = [0] * len(G.v_gens)
    w_exps = [0] * len(G.w_gens)
    for factor in word:
        space, idx = factor
        if _factor_degree(G, factor) % 2:
            odd_seq.append(factor)
        if space == 0:
            v_exps[idx] += 1
        else:
            w_exps[idx] += 1
    if len(set(odd_seq)) != len(odd_seq):
        return None
    inversions = 0
    for i in range(len(odd_seq)):
        for j in range(i + 1, len(odd_seq)):
            if odd_seq[i] > odd_seq[j]:
                inversions += 1
    sign = -1 if inversions % 2 else 1
    return sign, make_monomial(G, v_exps, w_exps)


def differential_of_monomial(G, mon):
    """d(mon) as a sorted list of (Monomial, Fraction) with exact signs.

    V-factors are cycles; each W-factor is replaced in turn by its
    quadratic boundary, with the Koszul prefix sign for sliding d past
    the factors to its left and the normalization sign for re-sorting
    the resulting word.
    """
    acc = {}
    word = _word(G, mon)
    prefix_parity = 0
    for pos, factor in enumerate(word):
        space, idx = factor
        if space == 1:
            koszul = -1 if prefix_parity else 1
            head, tail = word[:pos], word[pos + 1:]
            for (a, b), coeff in G.boundary_on_w[idx]:
                normalized = _normalize_word(G, head + [(0, a), (0, b)] + tail)
                if normalized is None:
                    continue
                sign, out = normalized
                q = coeff * koszul * sign
                acc[out] = acc.get(out, Fraction(0)) + q
        prefix_parity ^= _factor_degree(G, factor) % 2
    terms = [(m, q) for m, q in acc.items() if q]
    terms.sort(key=lambda t: t[0].key())
    return terms


def _top_indices(G):
    """Positions of the degree-2m V-generator and degree-(4m-1) W-generator."""
    if G.cpm is None:
        raise ValueError("reduction is only defined for the built-in CP^m rings")
    m = G.cpm
    v_top = G.v_degrees.index(2 * m)
    w_top = G.w_degrees.index(4 * m - 1)
    return v_top, w_top


def in_reduction_ideal(G, mon):
    """True when mon is divisible by v_top^2 or by w_top."""
    v_top, w_top = _top_indices(G)
    return mon.v_exps[v_top] >= 2 or mon.w_exps[w_top] >= 1


def reduce_complex(G, basis):
    """Quotient basis by the acyclic (v_top^2, w_top) ideal.

    Keeps exactly the monomials with v_top-exponent at most 1 and
    w_top-exponent 0.  The induced differential (apply d, delete ideal
    terms) is what assemble_blocks computes for a reduced basis.
    """
    v_top, w_top = _top_indices(G)
    slices = {}
    for key, mons in basis.slices.items():
        kept = tuple(m for m in mons
                     if m.v_exps[v_top] <= 1 and m.w_exps[w_top] == 0)
        if kept:
            slices[key] = kept
    return BigradedBasis(k=basis.k, mode="reduced", slices=slices)


def assemble_blocks(G, basis):
    """All differential blocks of a basis, one per nonempty source slice.

    In reduced mode, image terms outside the basis must lie in the
    reduction ideal — anything else is a grading bug and raises
    AssemblyError, as does any stray term in full mode.
    """
    from .linalg import SparseExactMatrix

    reduced = basis.mode == "reduced"
    blocks = []
    for (i, w) in sorted(basis.slices):
        if w == 0:
            continue
        source = basis.slices[(i, w)]
        target_key = (i + 1, w - 1)
        target_pos = basis.positions(i + 1, w - 1)
        entries = []
        for col, mon in enumerate(source):
            for out, q in differential_of_monomial(G, mon):
                row = target_pos.get(out)
                if row is not None:
                    entries.append((row, col, q))
                elif reduced and in_reduction_ideal(G, out):
                    continue
                else:
                    raise AssemblyError(
                        "d(%s) produced %s outside slice %r"
                        % (mon.label(G), out.label(G), target_key))
        matrix = SparseExactMatrix(len(basis.slice(i + 1, w - 1)), len(source), entries)
        blocks.append(DifferentialBlock(source=(i, w), target=target_key, matrix=matrix))
    return blocks


def _apply_d(G, vec):
    """Extend the differential linearly to a dict Monomial -> Fraction."""
    out = {}
    for mon, c in vec.items():
        for tm, q in differential_of_monomial(G, mon):
            out[tm] = out.get(tm, Fraction(0)) + c * q
    return {m: q for m, q in out.items() if q}


def _apply_h(G, vec, v_top, w_top):
    """The contracting homotopy of the (v_top^2, w_top) ideal.

    h kills anything containing w_top and sends v_top^2 * A to
    w_top * A, i.e. the canonical form of the word (w_top, factors of
    A) with its normalization sign.
    """
    out = {}
    for mon, c in vec.items():
        if mon.w_exps[w_top] >= 1:
            continue
        if mon.v_exps[v_top] < 2:
            raise ValueError("h applied outside the ideal: %s" % mon.label(G))
        stripped = list(mon.v_exps)
        stripped[v_top] -= 2
        rest = make_monomial(G, stripped, mon.w_exps)
        sign, image = _normalize_word(G, [(1, w_top)] + _word(G, rest))
        out[image] = out.get(image, Fraction(0)) + c * sign
    return {m: q for m, q in out.items() if q}


def homotopy_check(G, k):
    """Verify (dh + hd) = id on the ideal's monomial basis, exactly.

    Returns (True, None) on success, else (False, witness_monomial).
    The check is vacuous for k < 2 where the ideal is empty.
    """
    v_top, w_top = _top_indices(G)
    basis = enumerate_basis(G, k)
    for mons in basis.slices.values():
        for mon in mons:
            if not in_reduction_ideal(G, mon):
                continue
            one = {mon: Fraction(1)}
            lhs = _apply_d(G, _apply_h(G, one, v_top, w_top))
            for out, q in _apply_h(G, _apply_d(G, one), v_top, w_top).items():
                lhs[out] = lhs.get(out, Fraction(0)) + q
            lhs = {m: q for m, q in lhs.items() if q}
            if lhs != one:
                return False, mon
    return True, None


def dump_complex(G, basis, blocks):
    """JSON-ready dump: slice monomial names plus coordinate triples."""
    from .rat import format_rational

    return {
        "k": basis.k,
        "mode": basis.mode,
        "slices": [
            {"degree": i, "weight": w,
             "monomials": [m.label(G) for m in basis.slices[(i, w)]]}
            for (i, w) in sorted(basis.slices)
        ],
        "blocks": [
            {"source": list(b.source), "target": list(b.target),
             "shape": [b.matrix.n_rows, b.matrix.n_cols],
             "entries": [[r, c, format_rational(q)] for r, c, q in b.matrix.entries]}
            for b in blocks
        ],
    }
