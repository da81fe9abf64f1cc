"""Linearized cochain complexes, their cohomology, and height capacities.

The cochain complex of a twisted DGA has the Reeb chords as basis and the
adjoint of the word-length-1 part of the twisted differential as its
degree +1 codifferential.  Chord heights give a filtration by the subspaces
spanned by chords of height >= w; the capacity of a cocycle is the largest
level at which its class dies in the quotient complex.

Linear algebra over F2 is done on bitmask integers with lexicographic pivot
order, so cocycle representatives are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from legcob import f2poly
from legcob.augment import TwistedDga
from legcob.errors import NotACocycle, SplittingNotPreserved

__all__ = [
    "CochainComplex",
    "CohomologyClass",
    "Echelon",
    "linearized_complex",
    "cohomology",
    "capacity",
    "split_by_components",
]


class Echelon:
    """Row space over F2 in reduced echelon form, lexicographic pivots.

    Vectors are bitmask ints; bit i corresponds to basis element i, and the
    pivot of a row is its least significant set bit (the lexicographically
    first basis name when bit order follows sorted names).
    """

    def __init__(self) -> None:
        self.rows: dict[int, int] = {}  # pivot bit index -> row

    def reduce(self, vec: int) -> int:
        while vec:
            p = (vec & -vec).bit_length() - 1
            row = self.rows.get(p)
            if row is None:
                return vec
            vec ^= row
        return 0

    def add(self, vec: int) -> int:
        """Insert the vector; return its reduced form (0 if dependent)."""
        red = self.reduce(vec)
        if red:
            p = (red & -red).bit_length() - 1
            # Keep reduced form: clear bit p from existing rows.
            for q, row in list(self.rows.items()):
                if row >> p & 1:
                    self.rows[q] = row ^ red
            self.rows[p] = red
        return red

    def contains(self, vec: int) -> bool:
        return self.reduce(vec) == 0

    def basis(self) -> list[int]:
        return [self.rows[p] for p in sorted(self.rows)]


@dataclass(frozen=True)
class CohomologyClass:
    degree: int
    representative: frozenset[str]
    designated_fundamental: bool = False


@dataclass
class CochainComplex:
    """F2 complex on chord duals with codifferential d of degree +1."""

    name: str
    names: tuple[str, ...]  # sorted chord names
    degree: dict[str, int]
    height: dict[str, Fraction]
    pair: dict[str, tuple[int, int]]  # (lower, upper) component endpoints
    grading_modulus: int
    d: dict[str, frozenset[str]]

    def __post_init__(self) -> None:
        self._index = {n: i for i, n in enumerate(self.names)}

    # -- bitmask plumbing ------------------------------------------------

    def mask(self, chords: frozenset[str] | set[str]) -> int:
        m = 0
        for c in chords:
            m |= 1 << self._index[c]
        return m

    def chords(self, mask: int) -> frozenset[str]:
        out = set()
        while mask:
            i = (mask & -mask).bit_length() - 1
            out.add(self.names[i])
            mask &= mask - 1
        return frozenset(out)

    def degree_reduce(self, deg: int) -> int:
        return deg % self.grading_modulus if self.grading_modulus else deg

    def d_of(self, chord: str) -> frozenset[str]:
        return self.d.get(chord, frozenset())

    def d_vector(self, vec: frozenset[str]) -> frozenset[str]:
        out: set[str] = set()
        for c in vec:
            out.symmetric_difference_update(self.d_of(c))
        return frozenset(out)

    def is_cocycle(self, vec: frozenset[str]) -> bool:
        return not self.d_vector(vec)

    def coboundaries(self) -> Echelon:
        ech = Echelon()
        for c in self.names:
            img = self.d_of(c)
            if img:
                ech.add(self.mask(img))
        return ech

    def is_coboundary(self, vec: frozenset[str]) -> bool:
        return self.coboundaries().contains(self.mask(vec))

    def classes_equal(self, x: frozenset[str], y: frozenset[str]) -> bool:
        return self.coboundaries().contains(self.mask(x) ^ self.mask(y))

    # -- structure checks ------------------------------------------------

    def check_d_squared(self) -> bool:
        return all(not self.d_vector(self.d_of(c)) for c in self.names)

    def check_degree_raise(self) -> bool:
        for c, image in self.d.items():
            want = self.degree_reduce(self.degree[c] + 1)
            if any(self.degree_reduce(self.degree[a]) != want for a in image):
                return False
        return True

    def check_filtration(self) -> bool:
        """d preserves F^w for every level w, i.e. h(a) >= h(c) termwise."""
        for c, image in self.d.items():
            if any(self.height[a] < self.height[c] for a in image):
                return False
        return True

    def filtration_levels(self) -> list[Fraction]:
        return sorted(set(self.height.values()), reverse=True)

    def names_of_degree(self, deg: int) -> list[str]:
        deg = self.degree_reduce(deg)
        return [n for n in self.names if self.degree_reduce(self.degree[n]) == deg]


def linearized_complex(t: TwistedDga) -> CochainComplex:
    """Adjoint of the linear part of the twisted differential.

    d(c) = sum over generators a of [coefficient of the word (c,) in
    d^eps(a)] a*, stored as the set of such a.
    """
    base = t.base
    names = tuple(base.sorted_names())
    d: dict[str, set[str]] = {}
    for a in names:
        for w in f2poly.length_part(t.d(a), 1):
            d.setdefault(w[0], set()).add(a)
    return CochainComplex(
        name=f"{base.name}/{','.join(t.augmentation.sorted_names()) or 'trivial'}",
        names=names,
        degree={n: base.generators[n].degree for n in names},
        height={n: base.generators[n].height for n in names},
        pair={n: (base.generators[n].lower, base.generators[n].upper) for n in names},
        grading_modulus=base.grading_modulus,
        d={c: frozenset(v) for c, v in d.items() if v},
    )


def cohomology(c: CochainComplex) -> list[CohomologyClass]:
    """A basis of cohomology classes per degree with explicit cocycles.

    Kernel and image are computed degree by degree with lexicographic pivot
    order; representatives are the kernel basis vectors reduced against the
    image echelon, so they are canonical for a fixed chord ordering.
    """
    degrees = sorted({c.degree_reduce(c.degree[n]) for n in c.names})
    out: list[CohomologyClass] = []
    for deg in degrees:
        cols = c.names_of_degree(deg)
        # Kernel of d restricted to this degree, by column reduction.
        ech = Echelon()
        kernel: list[int] = []
        combos: dict[int, int] = {}  # pivot -> combination mask over cols
        for j, name in enumerate(cols):
            img = c.mask(c.d_of(name))
            combo = 1 << j
            while img:
                p = (img & -img).bit_length() - 1
                if p in ech.rows:
                    img ^= ech.rows[p]
                    combo ^= combos[p]
                else:
                    ech.rows[p] = img
                    combos[p] = combo
                    img = 0
                    combo = 0
            if combo:
                vec = 0
                for jj in range(len(cols)):
                    if combo >> jj & 1:
                        vec |= 1 << c._index[cols[jj]]
                kernel.append(vec)
        # Image of d from the previous degree (mod the grading modulus).
        img_ech = Echelon()
        prev = c.names_of_degree(deg - 1)
        for name in prev:
            v = c.mask(c.d_of(name))
            if v:
                img_ech.add(v)
        quotient = Echelon()
        for vec in kernel:
            red = img_ech.reduce(vec)
            red = quotient.add(red)
            if red:
                out.append(CohomologyClass(deg, c.chords(red)))
    return out


def capacity(c: CochainComplex, x: frozenset[str]) -> Fraction | None:
    """Largest filtration level at which the class of x dies; None is +inf.

    For a cocycle x, the class maps to zero in the quotient by F^w exactly
    when x lies in F^w + im(d); the solvable levels are down-closed and the
    supremum is attained at a chord height, so scanning the distinct heights
    in descending order and solving an F2 system at each level is exact.
    """
    if not c.is_cocycle(x):
        raise NotACocycle(f"d({sorted(x)}) != 0 in {c.name}")
    cob = c.coboundaries()
    xm = c.mask(x)
    if cob.contains(xm):
        return None
    for w in c.filtration_levels():
        below = 0
        for i, n in enumerate(c.names):
            if c.height[n] < w:
                below |= 1 << i
        ech = Echelon()
        for name in c.names:
            v = c.mask(c.d_of(name)) & below
            if v:
                ech.add(v)
        if ech.contains(xm & below):
            return w
    raise AssertionError("capacity scan failed below the minimal height")


def split_by_components(c: CochainComplex) -> dict[tuple[int, int], CochainComplex]:
    """Block decomposition by chord endpoint pairs.

    Returns one subcomplex per ordered component pair carrying chords.
    Raises SplittingNotPreserved when d maps some chord outside its block,
    which happens e.g. when the augmentation was nonzero on a mixed chord.
    """
    blocks: dict[tuple[int, int], list[str]] = {}
    for n in c.names:
        blocks.setdefault(c.pair[n], []).append(n)
    for n in c.names:
        for a in c.d_of(n):
            if c.pair[a] != c.pair[n]:
                raise SplittingNotPreserved(
                    f"d({n}) hits {a} in block {c.pair[a]}, expected {c.pair[n]}"
                )
    out: dict[tuple[int, int], CochainComplex] = {}
    for pair, names in sorted(blocks.items()):
        names_t = tuple(sorted(names))
        out[pair] = CochainComplex(
            name=f"{c.name}[{pair[0]},{pair[1]}]",
            names=names_t,
            degree={n: c.degree[n] for n in names_t},
            height={n: c.height[n] for n in names_t},
            pair={n: c.pair[n] for n in names_t},
            grading_modulus=c.grading_modulus,
            d={n: c.d_of(n) for n in names_t if c.d_of(n)},
        )
    return out
