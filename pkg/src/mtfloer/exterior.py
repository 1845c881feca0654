"""Integer exterior algebra on the first cohomology of a genus-g surface.

The symplectic basis of H^1 is ordered a1 < b1 < a2 < b2 < ... < ag < bg;
symbol index 2i names a_{i+1} and index 2i+1 names b_{i+1}.  Monomials are
strictly increasing tuples of symbol indices and all Koszul signs are taken
with respect to this order.  Throughout the package the distinguished
circle class gamma is dual to a1, so contraction means contraction with a1
and the Poincare dual of gamma is (a sign times) b1.

The centered grading convention puts Lambda^i H^1 in degree i - g, so the
grading range is symmetric about zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, NamedTuple, Sequence

from .errors import BadParams, GenusMismatch
from .graded import GradedGroup

Monomial = tuple[int, ...]


def symbol_name(index: int) -> str:
    """Map a symbol index to its display name: 0 -> 'a1', 1 -> 'b1', 2 -> 'a2', ..."""
    stem = "a" if index % 2 == 0 else "b"
    return f"{stem}{index // 2 + 1}"


def symbol_index(name: str) -> int:
    stem, pair = name[0], int(name[1:])
    if stem not in "ab" or pair < 1:
        raise ValueError(f"not a symplectic symbol name: {name!r}")
    return 2 * (pair - 1) + (0 if stem == "a" else 1)


def monomial_symbols(mono: Monomial) -> list[str]:
    """Serialized form of a monomial: the sorted list of symbol names."""
    return [symbol_name(i) for i in mono]


def monomials(symbols: Sequence[int], size: int) -> Iterable[Monomial]:
    """All strictly increasing size-``size`` tuples from ``symbols``, in lex order."""
    return combinations(sorted(symbols), size)


def _sort_with_sign(indices: Sequence[int]) -> tuple[Monomial, int] | None:
    """Sort a symbol tuple, tracking the permutation sign; None if repeated."""
    if len(set(indices)) != len(indices):
        return None
    sign = 1
    items = list(indices)
    # insertion sort; each adjacent swap flips the Koszul sign
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
    return tuple(items), sign


def _merge_with_sign(left: Monomial, right: Monomial) -> tuple[Monomial, int] | None:
    """Concatenate two sorted monomials, counting transpositions; None if they share a symbol."""
    merged = _sort_with_sign(left + right)
    return merged


@dataclass(frozen=True)
class ExtVector:
    """An integer linear combination of exterior monomials over a fixed genus.

    Terms are stored sorted by (length, monomial) with zero coefficients
    dropped, so dataclass equality is equality of vectors.
    """

    genus: int
    terms: tuple[tuple[Monomial, int], ...] = ()

    def __post_init__(self) -> None:
        if self.genus < 1:
            raise BadParams("genus must be >= 1")
        top = 2 * self.genus
        seen = set()
        prev = None
        for mono, coeff in self.terms:
            key = (len(mono), mono)
            if prev is not None and key <= prev:
                raise ValueError("terms must be strictly sorted")
            prev = key
            if coeff == 0:
                raise ValueError("zero coefficient stored")
            if any(not 0 <= s < top for s in mono) or list(mono) != sorted(set(mono)):
                raise ValueError(f"bad monomial {mono} for genus {self.genus}")
            seen.add(mono)

    # -- construction ---------------------------------------------------

    @classmethod
    def zero(cls, genus: int) -> "ExtVector":
        return cls(genus)

    @classmethod
    def unit(cls, genus: int) -> "ExtVector":
        """The empty monomial 1 in Lambda^0."""
        return cls(genus, (((), 1),))

    @classmethod
    def monomial(cls, genus: int, indices: Sequence[int], coeff: int = 1) -> "ExtVector":
        """Wedge of the given symbols in the given order, canonicalized.

        >>> ExtVector.monomial(2, [3, 0]).terms       # b2 ^ a1 = -(a1 ^ b2)
        (((0, 3), -1),)
        """
        sorted_form = _sort_with_sign(indices)
        if sorted_form is None or coeff == 0:
            return cls.zero(genus)
        mono, sign = sorted_form
        return cls(genus, ((mono, sign * coeff),))

    @classmethod
    def from_terms(cls, genus: int, raw: Iterable[tuple[Monomial, int]]) -> "ExtVector":
        acc: dict[Monomial, int] = {}
        for mono, coeff in raw:
            acc[mono] = acc.get(mono, 0) + coeff
        terms = tuple(
            (mono, acc[mono])
            for mono in sorted(acc, key=lambda m: (len(m), m))
            if acc[mono] != 0
        )
        return cls(genus, terms)

    # -- vector-space structure ------------------------------------------

    def _check_genus(self, other: "ExtVector") -> None:
        if self.genus != other.genus:
            raise GenusMismatch(f"genus {self.genus} vs {other.genus}")

    def __add__(self, other: "ExtVector") -> "ExtVector":
        self._check_genus(other)
        return ExtVector.from_terms(self.genus, self.terms + other.terms)

    def __neg__(self) -> "ExtVector":
        return ExtVector(self.genus, tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other: "ExtVector") -> "ExtVector":
        return self + (-other)

    def scale(self, c: int) -> "ExtVector":
        if c == 0:
            return ExtVector.zero(self.genus)
        return ExtVector(self.genus, tuple((m, c * k) for m, k in self.terms))

    __rmul__ = scale

    def is_zero(self) -> bool:
        return not self.terms

    def is_homogeneous(self) -> bool:
        return len({len(m) for m, _ in self.terms}) <= 1

    def exterior_degree(self) -> int:
        """Common monomial length of a homogeneous vector."""
        lengths = {len(m) for m, _ in self.terms}
        if len(lengths) != 1:
            raise ValueError("vector is not homogeneous")
        return lengths.pop()

    # -- algebra structure ------------------------------------------------

    def wedge(self, other: "ExtVector") -> "ExtVector":
        """Exterior product with Koszul signs.

        >>> t = ExtVector.monomial(2, [0, 2, 3])      # a1 ^ a2 ^ b2
        >>> b1 = ExtVector.monomial(2, [1])
        >>> b1.wedge(t).terms                          # b1 moves past a1
        (((0, 1, 2, 3), -1),)
        """
        self._check_genus(other)
        raw = []
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                merged = _merge_with_sign(m1, m2)
                if merged is not None:
                    mono, sign = merged
                    raw.append((mono, sign * c1 * c2))
        return ExtVector.from_terms(self.genus, raw)

    def contract(self) -> "ExtVector":
        """Contraction with the class dual to a1 (symbol index 0).

        Removes a leading a1 from each monomial; since a1 sorts first, the
        Koszul sign of the removal is always +1.

        >>> ExtVector.monomial(2, [0, 1]).contract().terms
        (((1,), 1),)
        """
        raw = [
            (mono[1:], coeff)
            for mono, coeff in self.terms
            if mono and mono[0] == 0
        ]
        return ExtVector.from_terms(self.genus, raw)

    def to_json_dict(self) -> dict:
        return {
            "genus": self.genus,
            "terms": {"^".join(monomial_symbols(m)) or "1": c for m, c in self.terms},
        }


def e_half(mono: Monomial) -> str:
    """Which half of the splitting along the genus-1 block a monomial sits in.

    "E-" when exactly one of {a1, b1} divides the monomial, "E+" when
    neither or both do.
    """
    return "E-" if (0 in mono) + (1 in mono) == 1 else "E+"


def lambda_group(genus: int) -> GradedGroup:
    """Whole exterior algebra as a graded group, centered so Lambda^i sits in degree i - g.

    >>> lambda_group(1) == GradedGroup.free({-1: 1, 0: 2, 1: 1})
    True
    """
    if genus < 1:
        raise BadParams("genus must be >= 1")
    return GradedGroup.free({i - genus: comb(2 * genus, i) for i in range(2 * genus + 1)})


@dataclass(frozen=True, order=True)
class XBasisElement:
    """Basis element ``monomial (x) U^u`` of a truncated tower module.

    The monomial has exterior codegree i = 2g - len(monomial) and the
    U-exponent obeys 0 <= u <= d - i, so the grading g - i - 2u ranges over
    [g-2d .. g], symmetrically about g - d.
    """

    genus: int
    monomial: Monomial
    u: int

    @property
    def codegree(self) -> int:
        return 2 * self.genus - len(self.monomial)

    @property
    def grading(self) -> int:
        return self.genus - self.codegree - 2 * self.u


class XModule(NamedTuple):
    basis: tuple[XBasisElement, ...]
    graded: GradedGroup


def build_X(genus: int, d: int) -> XModule:
    """The module X(g, d) = sum over i <= d of Lambda^{2g-i} (x) Z[U]/U^{d+1-i}.

    Returns the canonical ordered basis together with its graded group.
    ``d = -1`` (or below, clamped at -1 by the defining sum being empty) is
    the zero module.
    """
    if genus < 1:
        raise BadParams("genus must be >= 1")
    if d < -1:
        raise BadParams("truncation parameter d must be >= -1")
    basis: list[XBasisElement] = []
    for i in range(0, min(d, 2 * genus) + 1):
        for mono in monomials(range(2 * genus), 2 * genus - i):
            for u in range(d - i + 1):
                basis.append(XBasisElement(genus, mono, u))
    ranks: dict[int, int] = {}
    for x in basis:
        ranks[x.grading] = ranks.get(x.grading, 0) + 1
    return XModule(tuple(basis), GradedGroup.free(ranks))


def sym_betti(genus: int, d: int, j: int) -> int:
    """Rank of the degree-j part of H*(Sym^d of a genus-g surface), centered.

    Extracted from the generating function
    sum_d P(Sym^d)(t) q^d = (1 + tq)^{2g} / ((1 - q)(1 - t^2 q)),
    with the cohomological degree m = g - j recentered about the middle.
    """
    if genus < 1:
        raise BadParams("genus must be >= 1")
    if d < 0:
        return 0
    m = genus - j
    if m < 0:
        return 0
    total = 0
    for b in range(m // 2 + 1):
        r = m - 2 * b
        if r + b <= d:
            total += comb(2 * genus, r)
    return total
