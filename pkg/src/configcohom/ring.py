"""Finite presentations of rational cohomology rings of closed
oriented even-dimensional manifolds.

A presentation records a homogeneous basis of H^*(M; Q), the degree of
each element, the multiplication table as structure constants, and the
(even) dimension d of M.  The one nontrivial derived operation is the
diagonal comultiplication on H_*(M; Q): writing h_0, ..., h_{n-1} for
the homology basis dual to the cohomology basis under evaluation, the
coproduct dual to the cup product is

    diag(h_c) = sum over ordered pairs (a, b) of  c_{ab}^c  h_a (x) h_b

where e_a e_b = sum_c c_{ab}^c e_c is the multiplication table.  The
structure constants come back transposed: the output above is indexed
by c, not by (a, b).  Poincare duality guarantees the result is
homogeneous of homology degree deg(h_c) once the ring validates.
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .linalg import SparseExactMatrix, rank
from .rat import format_rational, parse_rational


class RingSchemaError(ValueError):
    """Malformed presentation data (shape/type level)."""


class InvalidRingError(ValueError):
    """Structurally well-formed presentation that fails validation."""


class RingPresentation:
    """Basis, degrees, multiplication table, and manifold dimension.

    structure_constants maps an ordered index pair (i, j) to a tuple of
    (result_index, coefficient); absent pairs multiply to zero.  The
    object is immutable by convention; derived caches hang off private
    attributes.  cpm is set to m for the built-in CP^m presentations
    and None otherwise — a few downstream operations (the reduced
    complex) are only defined for those.
    """

    def __init__(self, basis_names, degrees, structure_constants,
                 manifold_dimension, label="custom", cpm=None):
        basis_names = tuple(basis_names)
        degrees = tuple(degrees)
        n = len(basis_names)
        if len(degrees) != n:
            raise RingSchemaError("degrees and basis_names disagree in length")
        if len(set(basis_names)) != n:
            raise RingSchemaError("duplicate basis names")
        for name in basis_names:
            if not isinstance(name, str) or not name:
                raise RingSchemaError("basis names must be nonempty strings")
        for deg in degrees:
            if not isinstance(deg, int) or isinstance(deg, bool) or deg < 0:
                raise RingSchemaError("degrees must be non-negative integers")
        if (not isinstance(manifold_dimension, int) or isinstance(manifold_dimension, bool)
                or manifold_dimension <= 0 or manifold_dimension % 2):
            raise RingSchemaError("manifold dimension must be a positive even integer")
        table = {}
        for (i, j), terms in structure_constants.items():
            if not (isinstance(i, int) and isinstance(j, int) and 0 <= i < n and 0 <= j < n):
                raise RingSchemaError("product indexed outside the basis: (%r, %r)" % (i, j))
            merged = {}
            for l, coeff in terms:
                if not (isinstance(l, int) and 0 <= l < n):
                    raise RingSchemaError("product result outside the basis: %r" % (l,))
                coeff = Fraction(coeff)
                merged[l] = merged.get(l, Fraction(0)) + coeff
            cleaned = tuple(sorted((l, q) for l, q in merged.items() if q))
            if cleaned:
                table[(i, j)] = cleaned

        self.basis_names = basis_names
        self.degrees = degrees
        self.structure_constants = table
        self.manifold_dimension = manifold_dimension
        self.label = label
        self.cpm = cpm
        zero = [i for i, deg in enumerate(degrees) if deg == 0]
        top = [i for i, deg in enumerate(degrees) if deg == manifold_dimension]
        self.unit_index = zero[0] if len(zero) == 1 else None
        self.top_index = top[0] if len(top) == 1 else None

    @property
    def n(self):
        return len(self.basis_names)

    def product(self, i, j):
        """e_i * e_j as a dict result_index -> Fraction (zeros absent)."""
        return dict(self.structure_constants.get((i, j), ()))

    def pairing_matrix(self):
        """P[i][j] = coefficient of the top class in e_i e_j."""
        if self.top_index is None:
            raise InvalidRingError("no unique top-degree class; pairing undefined")
        t = self.top_index
        n = self.n
        P = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                P[i][j] = self.product(i, j).get(t, Fraction(0))
        return P

    def to_dict(self):
        """JSON-ready form of the presentation (see ring_from_dict)."""
        products = []
        for (i, j) in sorted(self.structure_constants):
            products.append({
                "left": self.basis_names[i],
                "right": self.basis_names[j],
                "result": [
                    {"basis": self.basis_names[l], "coeff": format_rational(q)}
                    for l, q in self.structure_constants[(i, j)]
                ],
            })
        top = self.basis_names[self.top_index] if self.top_index is not None else None
        return {
            "dimension": self.manifold_dimension,
            "basis": [
                {"name": name, "degree": deg}
                for name, deg in zip(self.basis_names, self.degrees)
            ],
            "products": products,
            "top": top,
        }

    def __repr__(self):
        return "RingPresentation(%s, n=%d, d=%d)" % (self.label, self.n, self.manifold_dimension)


@dataclass
class RingDiagnostics:
    """Outcome of validate_ring: valid flag plus per-rule violations."""
    valid: bool
    violations: tuple

    def messages(self):
        return tuple(msg for _, msg in self.violations)


@lru_cache(maxsize=None)
def make_cpm(m):
    """The cohomology ring of complex projective space CP^m.

    Truncated polynomial ring on a degree-2 class x with x^{m+1} = 0,
    basis 1, x, ..., x^m, manifold dimension 2m, and the fundamental
    class normalized so that x^m evaluates to 1.
    """
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise ValueError("m must be a positive integer, got %r" % (m,))
    names = tuple("1" if a == 0 else "x" if a == 1 else "x^%d" % a for a in range(m + 1))
    degrees = tuple(2 * a for a in range(m + 1))
    table = {}
    for a in range(m + 1):
        for b in range(m + 1):
            if a + b <= m:
                table[(a, b)] = ((a + b, Fraction(1)),)
    return RingPresentation(names, degrees, table, 2 * m, label="CP^%d" % m, cpm=m)


def validate_ring(R):
    """Check the ring axioms; returns diagnostics, never raises.

    Rules checked: a unique degree-0 class acting as a two-sided unit,
    grading of every product, graded commutativity, associativity, a
    unique top-degree class, and nondegeneracy of the Poincare pairing
    into the top class.
    """
    v = []
    n = R.n
    deg = R.degrees

    zero = [i for i in range(n) if deg[i] == 0]
    if len(zero) != 1:
        v.append(("unit", "expected exactly one degree-0 class, found %d" % len(zero)))
    top = [i for i in range(n) if deg[i] == R.manifold_dimension]
    if len(top) != 1:
        v.append(("top", "expected exactly one degree-%d class, found %d"
                  % (R.manifold_dimension, len(top))))

    for (i, j), terms in sorted(R.structure_constants.items()):
        for l, _ in terms:
            if deg[l] != deg[i] + deg[j]:
                v.append(("grading",
                          "%s * %s hits %s: degree %d + %d != %d"
                          % (R.basis_names[i], R.basis_names[j], R.basis_names[l],
                             deg[i], deg[j], deg[l])))

    if len(zero) == 1:
        u = zero[0]
        for j in range(n):
            expect = {j: Fraction(1)}
            if R.product(u, j) != expect or R.product(j, u) != expect:
                v.append(("unit-law", "unit does not act as identity on %s" % R.basis_names[j]))

    for i in range(n):
        for j in range(n):
            sign = Fraction(-1) if (deg[i] % 2 and deg[j] % 2) else Fraction(1)
            flipped = {l: sign * q for l, q in R.product(j, i).items()}
            if R.product(i, j) != flipped:
                v.append(("commutativity",
                          "%s * %s vs %s * %s violate graded commutativity"
                          % (R.basis_names[i], R.basis_names[j],
                             R.basis_names[j], R.basis_names[i])))

    for i in range(n):
        for j in range(n):
            for k in range(n):
                left = {}
                for l, q in R.product(i, j).items():
                    for t, s in R.product(l, k).items():
                        left[t] = left.get(t, Fraction(0)) + q * s
                right = {}
                for l, q in R.product(j, k).items():
                    for t, s in R.product(i, l).items():
                        right[t] = right.get(t, Fraction(0)) + q * s
                left = {t: q for t, q in left.items() if q}
                right = {t: q for t, q in right.items() if q}
                if left != right:
                    v.append(("associativity",
                              "(%s %s) %s != %s (%s %s)"
                              % (R.basis_names[i], R.basis_names[j], R.basis_names[k],
                                 R.basis_names[i], R.basis_names[j], R.basis_names[k])))

    if len(top) == 1 and not any(rule == "grading" for rule, _ in v):
        t = top[0]
        P = []
        for i in range(n):
            P.append([R.product(i, j).get(t, Fraction(0)) for j in range(n)])
        if rank(SparseExactMatrix.from_dense(P, n)) != n:
            v.append(("pairing", "Poincare pairing into %s is degenerate" % R.basis_names[t]))

    return RingDiagnostics(valid=not v, violations=tuple(v))


def diagonal_comultiplication(R):
    """Coproduct on the evaluation-dual homology basis.

    Returns a dict c -> tuple of ((a, b), Fraction) over ordered pairs,
    sorted by (a, b), zero terms dropped.  Raises InvalidRingError if
    the presentation does not validate (a degenerate pairing would make
    the answer meaningless).
    """
    diag = validate_ring(R)
    if not diag.valid:
        raise InvalidRingError("; ".join(diag.messages()))
    out = {}
    for c in range(R.n):
        terms = []
        for (a, b), prods in R.structure_constants.items():
            for l, q in prods:
                if l == c and q:
                    terms.append(((a, b), q))
        terms.sort(key=lambda t: t[0])
        out[c] = tuple(terms)
    return out


def ring_from_dict(doc, label="custom"):
    """Build a presentation from the JSON document layout.

    Expected shape:

        {"dimension": 2,
         "basis": [{"name": "1", "degree": 0}, {"name": "x", "degree": 2}],
         "products": [{"left": "1", "right": "x",
                       "result": [{"basis": "x", "coeff": "1"}]}],
         "top": "x"}

    Products omitted from the list are zero, so unit products must be
    spelled out.  "top" is advisory; the unique top-degree class is
    recomputed and cross-checked when present.
    """
    if not isinstance(doc, dict):
        raise RingSchemaError("ring document must be a JSON object")
    for key in ("dimension", "basis", "products"):
        if key not in doc:
            raise RingSchemaError("ring document missing %r" % key)
    dim = doc["dimension"]
    if not isinstance(dim, int) or isinstance(dim, bool):
        raise RingSchemaError("dimension must be an integer")
    basis = doc["basis"]
    if not isinstance(basis, list) or not basis:
        raise RingSchemaError("basis must be a nonempty list")
    names, degrees = [], []
    for item in basis:
        if not isinstance(item, dict) or "name" not in item or "degree" not in item:
            raise RingSchemaError("each basis item needs a name and a degree")
        name, deg = item["name"], item["degree"]
        if not isinstance(name, str) or not name:
            raise RingSchemaError("basis names must be nonempty strings")
        if not isinstance(deg, int) or isinstance(deg, bool) or deg < 0:
            raise RingSchemaError("basis degree for %r must be a non-negative integer" % name)
        names.append(name)
        degrees.append(deg)
    if len(set(names)) != len(names):
        raise RingSchemaError("duplicate basis names")
    index = {name: i for i, name in enumerate(names)}

    table = {}
    products = doc["products"]
    if not isinstance(products, list):
        raise RingSchemaError("products must be a list")
    for item in products:
        if not isinstance(item, dict):
            raise RingSchemaError("each product must be an object")
        for key in ("left", "right", "result"):
            if key not in item:
                raise RingSchemaError("product missing %r" % key)
        left, right = item["left"], item["right"]
        if left not in index:
            raise RingSchemaError("product references unknown basis name %r" % left)
        if right not in index:
            raise RingSchemaError("product references unknown basis name %r" % right)
        pair = (index[left], index[right])
        if pair in table:
            raise RingSchemaError("duplicate product entry for %s * %s" % (left, right))
        if not isinstance(item["result"], list):
            raise RingSchemaError("product result for %s * %s must be a list" % (left, right))
        terms = []
        for term in item["result"]:
            if not isinstance(term, dict) or "basis" not in term or "coeff" not in term:
                raise RingSchemaError("result terms need a basis and a coeff")
            if term["basis"] not in index:
                raise RingSchemaError("result references unknown basis name %r" % term["basis"])
            try:
                coeff = parse_rational(term["coeff"])
            except ValueError as exc:
                raise RingSchemaError("bad coefficient in %s * %s: %s" % (left, right, exc))
            terms.append((index[term["basis"]], coeff))
        table[pair] = tuple(terms)

    try:
        R = RingPresentation(names, degrees, table, dim, label=label)
    except RingSchemaError:
        raise
    except ValueError as exc:
        raise RingSchemaError(str(exc))

    declared_top = doc.get("top")
    if declared_top is not None:
        if declared_top not in index:
            raise RingSchemaError("top references unknown basis name %r" % declared_top)
        if degrees[index[declared_top]] != dim:
            raise RingSchemaError("declared top class %r does not have degree %d"
                                  % (declared_top, dim))
    return R


def load_ring(path, label=None):
    """Read a presentation from a JSON file."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise RingSchemaError("not valid JSON: %s" % exc)
    return ring_from_dict(doc, label=label if label is not None else str(path))
