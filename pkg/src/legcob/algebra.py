"""Free unital DGAs over F2 on graded, height-weighted generators.

Generators model Reeb chords: an integer degree, a positive rational height
(the action integral of dz along the chord), and the indices of the link
components carrying the lower and upper endpoint.  The differential of a
generator is a noncommutative F2 polynomial in the generators; it extends to
the whole tensor algebra by linearity and the Leibniz rule.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from legcob import f2poly
from legcob.errors import UnknownGenerator
from legcob.f2poly import Poly, Word

__all__ = [
    "Generator",
    "Dga",
    "Violation",
    "ValidationReport",
    "differential_extend",
    "monomial_height",
    "validate_dga",
]


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    height: Fraction
    lower: int = 0
    upper: int = 0


@dataclass(frozen=True)
class Violation:
    rule: str
    subject: str
    detail: str


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)
    warnings: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, rule: str, subject: str, detail: str) -> None:
        self.violations.append(Violation(rule, subject, detail))

    def warn(self, rule: str, subject: str, detail: str) -> None:
        self.warnings.append(Violation(rule, subject, detail))

    def summary(self) -> str:
        lines = ["ok" if self.ok else "FAIL"]
        for v in self.violations:
            lines.append(f"violation[{v.rule}] {v.subject}: {v.detail}")
        for v in self.warnings:
            lines.append(f"warning[{v.rule}] {v.subject}: {v.detail}")
        return "\n".join(lines)


@dataclass
class Dga:
    """Generator table plus an F2 noncommutative differential.

    ``grading_modulus`` 0 means a Z-grading; m > 0 means degrees live in Z/m.
    The differential maps each generator name to a polynomial; generators
    missing from the mapping have zero differential.
    """

    name: str
    grading_modulus: int
    num_components: int
    generators: dict[str, Generator]
    differential: dict[str, Poly]

    def gen(self, name: str) -> Generator:
        try:
            return self.generators[name]
        except KeyError:
            raise UnknownGenerator(f"{self.name}: unknown generator {name!r}") from None

    def d(self, name: str) -> Poly:
        self.gen(name)
        return self.differential.get(name, f2poly.ZERO)

    def sorted_names(self) -> list[str]:
        return sorted(self.generators)

    def degree_reduce(self, deg: int) -> int:
        return deg % self.grading_modulus if self.grading_modulus else deg

    def degrees_equal(self, a: int, b: int) -> bool:
        return self.degree_reduce(a - b) == 0

    def word_degree(self, w: Word) -> int:
        return self.degree_reduce(sum(self.gen(g).degree for g in w))

    def word_height(self, w: Word) -> Fraction:
        return sum((self.gen(g).height for g in w), Fraction(0))

    def generators_of_degree(self, deg: int) -> list[str]:
        deg = self.degree_reduce(deg)
        return [n for n in self.sorted_names() if self.degree_reduce(self.generators[n].degree) == deg]

    def rescaled(self, t: Fraction) -> "Dga":
        """Multiply every height by the positive rational t."""
        if t <= 0:
            raise ValueError("rescaling factor must be positive")
        gens = {
            n: Generator(g.name, g.degree, g.height * t, g.lower, g.upper)
            for n, g in self.generators.items()
        }
        return Dga(self.name, self.grading_modulus, self.num_components, gens, dict(self.differential))


def monomial_height(dga: Dga, w: Word) -> Fraction:
    """Sum of generator heights along the word; the empty word has height 0."""
    return sum((dga.gen(g).height for g in w), Fraction(0))


def differential_extend(dga: Dga, x: Poly) -> Poly:
    """Extend the differential to a polynomial by linearity and Leibniz.

    d(g1 ... gk) = sum_i  g1 ... g_{i-1} (d g_i) g_{i+1} ... gk  over F2,
    and d(1) = 0.
    """
    out: Poly = f2poly.ZERO
    for w in x:
        for i, g in enumerate(w):
            dg = dga.d(g)
            if dg:
                out = f2poly.padd(out, f2poly.pscale_word(w[:i], dg, w[i + 1 :]))
    return out


def _word_components_ok(dga: Dga, a: Generator, w: Word) -> bool:
    """Endpoint chain condition for a monomial of d(a).

    Reading the word counterclockwise from the positive corner, boundary
    arcs force: upper(a) = upper(b1), lower(b_i) = upper(b_{i+1}), and
    lower(b_k) = lower(a); an empty word needs upper(a) = lower(a).
    """
    if not w:
        return a.upper == a.lower
    gens = [dga.gen(g) for g in w]
    if gens[0].upper != a.upper:
        return False
    for cur, nxt in zip(gens, gens[1:]):
        if cur.lower != nxt.upper:
            return False
    return gens[-1].lower == a.lower


def validate_dga(dga: Dga, allow_weak_energy: bool = False) -> ValidationReport:
    """Check the DGA axioms and report problems instead of raising.

    Rules: structural sanity (heights positive, component indices in range,
    differential names resolve), degree drop by exactly 1 mod the grading
    modulus, strict energy h(a) > h(word) for every monomial of d(a), the
    endpoint chain condition, and d(d(a)) = 0 for every generator.

    With ``allow_weak_energy`` strict-energy violations (equality allowed,
    i.e. h(a) >= h(word) still required) are downgraded to warnings.
    """
    report = ValidationReport()
    if dga.grading_modulus < 0:
        report.add("grading-modulus", dga.name, "grading modulus must be >= 0")
    if dga.num_components <= 0:
        report.add("components", dga.name, "number of components must be positive")

    for name in dga.sorted_names():
        g = dga.generators[name]
        if g.name != name:
            report.add("table", name, f"table key {name!r} does not match generator name {g.name!r}")
        if g.height <= 0:
            report.add("height-positive", name, f"height {g.height} is not positive")
        for side, comp in (("lower", g.lower), ("upper", g.upper)):
            if not 0 <= comp < dga.num_components:
                report.add("component-range", name, f"{side} component {comp} out of range")

    for name in sorted(dga.differential):
        if name not in dga.generators:
            report.add("unknown-generator", name, "differential defined for a name not in the table")
            continue
        a = dga.generators[name]
        da = dga.differential[name]
        for w in f2poly.sorted_words(da):
            missing = [g for g in w if g not in dga.generators]
            if missing:
                report.add("unknown-generator", name, f"monomial {w} uses unknown names {missing}")
                continue
            if not dga.degrees_equal(dga.word_degree(w), a.degree - 1):
                report.add(
                    "degree-drop",
                    name,
                    f"monomial {w} has degree {dga.word_degree(w)}, expected {dga.degree_reduce(a.degree - 1)}",
                )
            hw = dga.word_height(w)
            if hw >= a.height:
                detail = f"h({name}) = {a.height} vs monomial height {hw} of {w}"
                if allow_weak_energy and hw == a.height:
                    report.warn("strict-energy", name, detail)
                else:
                    report.add("strict-energy", name, detail)
            if not _word_components_ok(dga, a, w):
                report.add("component-endpoints", name, f"monomial {w} breaks the endpoint chain")

    if not report.violations:
        # d^2 is only meaningful once names resolve and shapes are sane.
        for name in dga.sorted_names():
            dd = differential_extend(dga, dga.d(name))
            if dd:
                report.add("d-squared", name, f"d(d({name})) = {f2poly.format_poly(dd)}")
    return report
