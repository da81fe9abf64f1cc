"""Chain maps between DGAs and the length lower bounds they induce.

A Lagrangian cobordism from the negative end to the positive end induces a
DGA map from the positive-end algebra to the negative-end algebra; its
twisted word-length pieces dualize to maps between the linearized complexes.
Capacities are monotone under these maps up to the conformal factor e^s of
the symplectization, which is what turns capacity ratios into exact
logarithmic lower bounds for the cobordism length.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from legcob import f2poly
from legcob.algebra import Dga, ValidationReport, differential_extend
from legcob.augment import Augmentation, a_infinity_ops, twist
from legcob.bounds import LengthBound, format_fraction
from legcob.cohomology import CochainComplex, Echelon, capacity, cohomology, linearized_complex, split_by_components
from legcob.errors import (
    DimensionMismatch,
    ImageClassZero,
    ImageNotCocycle,
    InsufficientAssignments,
    NotACocycle,
    PreconditionFailed,
    Undetermined,
)
from legcob.f2poly import Poly

__all__ = [
    "ChainMap",
    "LinearizedCobordismMap",
    "validate_chain_map",
    "push_augmentation",
    "linearize_map",
    "induced_cohomology_map",
    "capacity_lower_bound",
    "best_capacity_bound",
    "chord_diff_bound",
    "chain_action_bound",
    "product_bound",
    "split_cylinder_bound",
]

CLASS_ENUMERATION_DIM_CAP = 20


@dataclass
class ChainMap:
    """DGA map from the positive-end algebra to the negative-end algebra.

    ``source`` is the DGA of the top (+) end, ``target`` the bottom (-) end.
    ``assignments`` may cover only a subset of source generators; partial
    maps are first-class and downstream operations report Undetermined
    rather than guessing.
    """

    source: Dga
    target: Dga
    assignments: dict[str, Poly]
    partial: bool = False

    def assigned(self, name: str) -> bool:
        return name in self.assignments

    def unassigned_names(self) -> list[str]:
        return [n for n in self.source.sorted_names() if n not in self.assignments]

    def apply(self, p: Poly) -> Poly:
        """Evaluate on a polynomial; every letter must be assigned."""
        for w in p:
            for g in w:
                if g not in self.assignments:
                    raise Undetermined(f"generator {g!r} has no assignment")
        return f2poly.substitute(p, self.assignments)

    @staticmethod
    def identity(dga: Dga) -> "ChainMap":
        return ChainMap(dga, dga, {n: frozenset({(n,)}) for n in dga.generators}, partial=False)


def validate_chain_map(m: ChainMap) -> ValidationReport:
    """Check the chain-map equation and degree preservation.

    phi(d+ a) = d-(phi(a)) is verified on every generator whose full orbit
    is assigned (a itself and every letter of d+ a); other generators are
    reported as undetermined warnings when the map is partial, violations
    otherwise.  The cobordism map has degree 0, so every monomial of phi(a)
    must match the degree of a.
    """
    report = ValidationReport()
    for name in sorted(m.assignments):
        if name not in m.source.generators:
            report.add("unknown-generator", name, "assignment for a name not in the source")
    for name, image in sorted(m.assignments.items()):
        if name not in m.source.generators:
            continue
        a = m.source.generators[name]
        for w in f2poly.sorted_words(image):
            missing = [g for g in w if g not in m.target.generators]
            if missing:
                report.add("unknown-generator", name, f"image word {w} uses unknown names {missing}")
                continue
            if not m.target.degrees_equal(m.target.word_degree(w), a.degree):
                report.add(
                    "degree-preservation",
                    name,
                    f"image word {w} has degree {m.target.word_degree(w)}, expected {a.degree}",
                )
    if report.violations:
        return report

    for name in m.source.sorted_names():
        da = m.source.d(name)
        letters = {g for w in da for g in w}
        determined = m.assigned(name) and all(m.assigned(g) for g in letters)
        if not determined:
            if m.partial:
                report.warn("undetermined", name, "orbit not fully assigned; chain equation skipped")
            else:
                report.add("incomplete", name, "total map is missing assignments for this orbit")
            continue
        lhs = m.apply(da)
        rhs = differential_extend(m.target, m.assignments[name])
        if lhs != rhs:
            report.add(
                "chain-equation",
                name,
                f"phi(d a) = {f2poly.format_poly(lhs)} but d(phi a) = {f2poly.format_poly(rhs)}",
            )
    return report


def push_augmentation(m: ChainMap, eps_minus: Augmentation) -> Augmentation:
    """The induced augmentation eps+ = eps- o phi of the positive end.

    Requires assignments on every degree-0 source generator; the result is
    verified to be an augmentation of the source DGA.
    """
    from legcob.augment import is_augmentation

    support = set()
    for name in m.source.generators_of_degree(0):
        if not m.assigned(name):
            raise InsufficientAssignments(f"degree-0 generator {name!r} is unassigned")
        if eps_minus.of_poly(m.assignments[name]):
            support.add(name)
    eps_plus = Augmentation(m.source.name, frozenset(support))
    if not is_augmentation(m.source, eps_plus):
        from legcob.errors import NotAnAugmentation

        raise NotAnAugmentation("eps- o phi is not an augmentation of the source DGA")
    return eps_plus


@dataclass
class LinearizedCobordismMap:
    """Adjoints psi_k of the word-length pieces of the twisted chain map.

    psi_k sends a k-tuple of negative-end chord duals to a set of
    positive-end chords.  A value is determined only when no unassigned
    source generator could contribute, which is a degree condition: the
    (reduced) degree of the input word must avoid the degrees of the
    unassigned generators.
    """

    chain_map: ChainMap
    eps_minus: Augmentation
    eps_plus: Augmentation
    psi: dict[int, dict[tuple[str, ...], frozenset[str]]]
    undetermined_degrees: frozenset[int]
    relation_report: ValidationReport = field(default_factory=ValidationReport)

    def _word_degree(self, args: tuple[str, ...]) -> int:
        t = self.chain_map.target
        return t.degree_reduce(sum(t.generators[c].degree for c in args))

    def determined(self, args: tuple[str, ...]) -> bool:
        return self._word_degree(args) not in self.undetermined_degrees

    def apply(self, args: tuple[str, ...]) -> frozenset[str]:
        if not self.determined(args):
            raise Undetermined(f"psi_{len(args)}{args} depends on unassigned generators")
        return self.psi.get(len(args), {}).get(args, frozenset())

    def apply_linear(self, k: int, vectors: tuple[frozenset[str], ...]) -> frozenset[str]:
        out: set[str] = set()
        for combo in itertools.product(*[sorted(v) for v in vectors]):
            for a in self.apply(combo):
                if a in out:
                    out.remove(a)
                else:
                    out.add(a)
        return frozenset(out)

    def psi1_vector(self, vec: frozenset[str]) -> frozenset[str]:
        return self.apply_linear(1, (vec,))


def linearize_map(m: ChainMap, eps_minus: Augmentation) -> LinearizedCobordismMap:
    """Conjugate the chain map by the augmentation coordinate changes.

    Computes eta^{eps-} o phi o (eta^{eps+})^{-1} on every assigned
    generator, splits the result by word length, and records the adjoints.
    The constant part must vanish (it equals eps+(a) + eps-(phi a) = 0 by
    construction); the A-infinity map relation is verified for n <= 2 on
    inputs where every needed value is determined.
    """
    eps_plus = push_augmentation(m, eps_minus)
    eta_minus = {
        n: frozenset({(n,), ()}) if eps_minus(n) else frozenset({(n,)})
        for n in m.target.generators
    }
    psi: dict[int, dict[tuple[str, ...], frozenset[str]]] = {}
    for name in sorted(m.assignments):
        image = m.assignments[name]
        if eps_plus(name):
            image = f2poly.padd(image, f2poly.ONE)
        twisted_image = f2poly.substitute(image, eta_minus)
        if f2poly.constant_part(twisted_image):
            from legcob.errors import ConstantPartNonzero

            raise ConstantPartNonzero(f"twisted image of {name!r} has a constant term")
        for w in twisted_image:
            table = psi.setdefault(len(w), {})
            table[w] = table.get(w, frozenset()).symmetric_difference({name})
    for k in list(psi):
        psi[k] = {w: v for w, v in psi[k].items() if v}

    undet = frozenset(
        m.source.degree_reduce(m.source.generators[n].degree) for n in m.unassigned_names()
    )
    lin = LinearizedCobordismMap(m, eps_minus, eps_plus, psi, undet)
    lin.relation_report = _check_a_infinity_map(lin, n_max=2)
    return lin


def _check_a_infinity_map(lin: LinearizedCobordismMap, n_max: int) -> ValidationReport:
    """A-infinity map relation, evaluated where all terms are determined.

    n=1:  psi1 m1- = m1+ psi1.
    n=2:  psi1 m2- + psi2 (m1- x 1) + psi2 (1 x m1-) = m1+ psi2 + m2+ (psi1 x psi1).
    """
    report = ValidationReport()
    m = lin.chain_map
    ops_minus = a_infinity_ops(twist(m.target, lin.eps_minus))
    ops_plus = a_infinity_ops(twist(m.source, lin.eps_plus))
    minus_names = m.target.sorted_names()

    def psi_det(args: tuple[str, ...]) -> frozenset[str] | None:
        return lin.psi.get(len(args), {}).get(args, frozenset()) if lin.determined(args) else None

    if n_max >= 1:
        for c in minus_names:
            lhs: set[str] = set()
            ok = True
            for y in ops_minus.apply(1, (c,)):
                v = psi_det((y,))
                if v is None:
                    ok = False
                    break
                lhs.symmetric_difference_update(v)
            v = psi_det((c,))
            if v is None or not ok:
                continue
            rhs: set[str] = set()
            for a in v:
                rhs.symmetric_difference_update(ops_plus.apply(1, (a,)))
            if frozenset(lhs) != frozenset(rhs):
                report.add("a-infinity-map", c, f"n=1 relation fails: {sorted(lhs)} vs {sorted(rhs)}")

    if n_max >= 2:
        for c1, c2 in itertools.product(minus_names, repeat=2):
            terms: set[str] = set()
            ok = True

            def acc(vals: frozenset[str] | None) -> bool:
                nonlocal terms, ok
                if vals is None:
                    ok = False
                    return False
                terms.symmetric_difference_update(vals)
                return True

            for y in ops_minus.apply(2, (c1, c2)):
                if not acc(psi_det((y,))):
                    break
            if ok:
                for y in ops_minus.apply(1, (c1,)):
                    if not acc(psi_det((y, c2))):
                        break
            if ok:
                for y in ops_minus.apply(1, (c2,)):
                    if not acc(psi_det((c1, y))):
                        break
            v12 = psi_det((c1, c2)) if ok else None
            v1 = psi_det((c1,)) if ok else None
            v2 = psi_det((c2,)) if ok else None
            if not ok or v12 is None or v1 is None or v2 is None:
                continue
            rhs: set[str] = set()
            for a in v12:
                rhs.symmetric_difference_update(ops_plus.apply(1, (a,)))
            for a1 in v1:
                for a2 in v2:
                    rhs.symmetric_difference_update(ops_plus.apply(2, (a1, a2)))
            if terms != rhs:
                report.add(
                    "a-infinity-map",
                    f"({c1},{c2})",
                    f"n=2 relation fails: {sorted(terms)} vs {sorted(rhs)}",
                )
    return report


def _express_class(c: CochainComplex, vec: frozenset[str], basis: list[frozenset[str]]) -> list[int] | None:
    """Coefficients of [vec] in the given cohomology basis, or None."""
    cob = c.coboundaries()
    ech = Echelon()
    ech.rows.update(cob.rows)
    cols: list[int] = []
    for b in basis:
        cols.append(ech.reduce(c.mask(b)))
    target = ech.reduce(c.mask(vec))
    solve = Echelon()
    combos: dict[int, int] = {}
    for j, col in enumerate(cols):
        red, combo = col, 1 << j
        while red:
            p = (red & -red).bit_length() - 1
            if p in solve.rows:
                red ^= solve.rows[p]
                combo ^= combos[p]
            else:
                solve.rows[p] = red
                combos[p] = combo
                red = 0
                combo = 0
    acc, combo = target, 0
    while acc:
        p = (acc & -acc).bit_length() - 1
        if p not in solve.rows:
            return None
        acc ^= solve.rows[p]
        combo ^= combos[p]
    return [combo >> j & 1 for j in range(len(basis))]


@dataclass
class CohomologyMap:
    """Matrix of Psi_1 in chosen cohomology bases (columns = minus classes)."""

    minus_classes: list
    plus_classes: list
    columns: list[list[int] | None]  # None marks an undetermined column

    def column(self, j: int) -> list[int] | None:
        return self.columns[j]


def induced_cohomology_map(
    lin: LinearizedCobordismMap, c_minus: CochainComplex, c_plus: CochainComplex
) -> CohomologyMap:
    """Psi_1 on cohomology: [x] -> [psi_1 x] in the echelon bases.

    Raises Undetermined if a chord of some chosen representative has no
    determined image, and ImageNotCocycle if a determined image fails the
    cocycle check (possible for defective partial maps).
    """
    minus_classes = cohomology(c_minus)
    plus_classes = cohomology(c_plus)
    plus_basis = [cl.representative for cl in plus_classes]
    columns: list[list[int] | None] = []
    for cl in minus_classes:
        try:
            image = lin.psi1_vector(cl.representative)
        except Undetermined:
            columns.append(None)
            continue
        if not c_plus.is_cocycle(image):
            raise ImageNotCocycle(f"psi1 of {sorted(cl.representative)} is not a cocycle")
        coeffs = _express_class(c_plus, image, plus_basis)
        if coeffs is None:
            raise ImageNotCocycle(f"image of {sorted(cl.representative)} is not expressible in the basis")
        columns.append(coeffs)
    return CohomologyMap(minus_classes, plus_classes, columns)


def capacity_lower_bound(c_minus_val: Fraction | None, c_plus_val: Fraction | None) -> LengthBound:
    """max(0, ln(c-/c+)) from the capacity monotonicity inequality."""
    if c_minus_val is None:
        raise PreconditionFailed("negative-end capacity is infinite (class is zero)")
    if c_plus_val is None:
        raise ImageClassZero("positive-end capacity is infinite (image class is zero)")
    return LengthBound(
        Fraction(c_minus_val) / Fraction(c_plus_val),
        rule="capacity",
        provenance={
            "c_minus": format_fraction(Fraction(c_minus_val)),
            "c_plus": format_fraction(Fraction(c_plus_val)),
        },
    )


def _enumerate_classes(classes: list, dim_cap: int) -> tuple[list[tuple[int, frozenset[str]]], list[int]]:
    """Nonzero classes grouped per degree: all 2^d - 1 combinations when the
    degree has dimension <= dim_cap, basis classes only otherwise."""
    by_degree: dict[int, list] = {}
    for cl in classes:
        by_degree.setdefault(cl.degree, []).append(cl)
    out: list[tuple[int, frozenset[str]]] = []
    capped: list[int] = []
    for deg in sorted(by_degree):
        group = by_degree[deg]
        if len(group) > dim_cap:
            capped.append(deg)
            for cl in group:
                out.append((deg, cl.representative))
            continue
        for r in range(1, len(group) + 1):
            for subset in itertools.combinations(group, r):
                rep: frozenset[str] = frozenset()
                for cl in subset:
                    rep = rep.symmetric_difference(cl.representative)
                out.append((deg, rep))
    return out, capped


def best_capacity_bound(
    dga_minus: Dga,
    eps_minus: Augmentation,
    m: ChainMap,
    dim_cap: int = CLASS_ENUMERATION_DIM_CAP,
    assume_fundamental: frozenset[str] | None = None,
) -> LengthBound:
    """Maximize the capacity bound over negative-end cohomology classes.

    Enumerates every nonzero class per degree (capped at dimension
    ``dim_cap``, beyond which only basis classes are tried and the cap is
    recorded in provenance), pushes each through psi_1, and keeps the best
    ln(c-/c+).  Classes with undetermined or zero image are skipped; if
    ``assume_fundamental`` names a cocycle whose image is undetermined, its
    nonvanishing is trusted and the positive end's maximal chord height
    stands in for the unknown capacity (recorded in provenance).
    """
    t_minus = twist(dga_minus, eps_minus)
    c_minus = linearized_complex(t_minus)
    lin = linearize_map(m, eps_minus)
    t_plus = twist(m.source, lin.eps_plus)
    c_plus = linearized_complex(t_plus)

    candidates, capped = _enumerate_classes(cohomology(c_minus), dim_cap)
    best: LengthBound | None = None
    skipped: list[str] = []
    for deg, rep in candidates:
        c_minus_val = capacity(c_minus, rep)
        if c_minus_val is None:
            continue
        provenance_theta = "+".join(sorted(rep))
        try:
            image = lin.psi1_vector(rep)
        except Undetermined:
            if assume_fundamental is not None and rep == assume_fundamental:
                c_plus_val = max(c_plus.height.values())
                cand = LengthBound(
                    Fraction(c_minus_val) / c_plus_val,
                    rule="capacity",
                    provenance={
                        "theta": provenance_theta,
                        "c_minus": format_fraction(c_minus_val),
                        "c_plus_bound": format_fraction(c_plus_val),
                        "assume_fundamental": True,
                    },
                )
                if best is None or best < cand:
                    best = cand
            else:
                skipped.append(provenance_theta)
            continue
        if not c_plus.is_cocycle(image):
            skipped.append(provenance_theta + " (image not a cocycle)")
            continue
        c_plus_val = capacity(c_plus, image)
        if c_plus_val is None:
            continue
        cand = LengthBound(
            Fraction(c_minus_val) / Fraction(c_plus_val),
            rule="capacity",
            provenance={
                "theta": provenance_theta,
                "image": "+".join(sorted(image)) or "0",
                "c_minus": format_fraction(c_minus_val),
                "c_plus": format_fraction(c_plus_val),
            },
        )
        if best is None or best < cand:
            best = cand
    if best is None:
        raise PreconditionFailed("no class with a determined, nonzero image under psi_1")
    if capped:
        best.provenance["basis_only_degrees"] = capped
    if skipped:
        best.provenance["undetermined_classes"] = skipped
    return best


def chord_diff_bound(
    min_height_minus: Fraction,
    max_height_plus: Fraction,
    minus_connected: bool,
    minus_augmentable: bool,
    plus_connected: bool,
) -> LengthBound:
    """max(0, ln(u/v)) with u the minimal chord height below, v the maximal above."""
    for flag, what in (
        (minus_connected, "negative end must be connected"),
        (minus_augmentable, "negative end must admit an augmentation"),
        (plus_connected, "positive end must be connected"),
    ):
        if not flag:
            raise PreconditionFailed(what)
    if min_height_minus <= 0 or max_height_plus <= 0:
        raise PreconditionFailed("chord heights must be positive")
    return LengthBound(
        Fraction(min_height_minus) / Fraction(max_height_plus),
        rule="chord-diff",
        provenance={
            "min_height_minus": format_fraction(Fraction(min_height_minus)),
            "max_height_plus": format_fraction(Fraction(max_height_plus)),
        },
    )


def chain_action_bound(m: ChainMap) -> LengthBound:
    """Smallest length compatible with the action inequality on every term.

    Every monomial b_1...b_k of phi(a) forces e^{s+} h(a) >= e^{s-} sum h(b_i);
    the bound is the max over assigned generators and monomials of
    max(0, ln(sum h(b_i) / h(a))).  Constant terms contribute nothing.
    """
    best_ratio = Fraction(1)
    witness: dict[str, Any] = {}
    for name in sorted(m.assignments):
        ha = m.source.gen(name).height
        for w in f2poly.sorted_words(m.assignments[name]):
            if not w:
                continue
            hw = m.target.word_height(w)
            ratio = hw / ha
            if ratio > best_ratio:
                best_ratio = ratio
                witness = {"generator": name, "monomial": list(w)}
    return LengthBound(best_ratio, rule="chain-action", provenance=witness)


def product_bound(
    lin: LinearizedCobordismMap,
    thetas: list[frozenset[str]],
    c_minus: CochainComplex,
    c_plus: CochainComplex,
) -> LengthBound:
    """max(0, sum_i ln c-(theta_i) - ln c+([psi_k(theta_1,...,theta_k)])).

    Chain-level evaluation: psi_k is applied to the given cocycles and the
    image must itself be a cocycle with nonzero class.
    """
    k = len(thetas)
    if k == 0:
        raise PreconditionFailed("need at least one class")
    caps: list[Fraction] = []
    for theta in thetas:
        if not c_minus.is_cocycle(theta):
            raise NotACocycle(f"{sorted(theta)} is not a cocycle at the negative end")
        val = capacity(c_minus, theta)
        if val is None:
            raise PreconditionFailed(f"class of {sorted(theta)} is zero; its capacity is infinite")
        caps.append(val)
    image = lin.apply_linear(k, tuple(thetas))
    if not c_plus.is_cocycle(image):
        raise ImageNotCocycle(f"psi_{k} image {sorted(image)} is not a cocycle")
    c_plus_val = capacity(c_plus, image)
    if c_plus_val is None:
        raise ImageClassZero(f"psi_{k} image class vanishes")
    ratio = Fraction(1)
    for v in caps:
        ratio *= v
    ratio /= c_plus_val
    return LengthBound(
        ratio,
        rule="product",
        provenance={
            "k": k,
            "c_minus_factors": [format_fraction(v) for v in caps],
            "c_plus": format_fraction(c_plus_val),
        },
    )


def split_cylinder_bound(
    dga_minus: Dga,
    dga_plus: Dga,
    eps_minus: Augmentation,
    pairing: dict[int, int],
    eps_plus: Augmentation | None = None,
) -> LengthBound:
    """Blockwise capacity bounds for a disjoint union of cylinders.

    The user asserts the cobordism is a union of cylinders joining component
    i of the negative end to component pairing[i] of the positive end; a
    cylinder is acyclic rel its bottom, so the induced map is a blockwise
    isomorphism on the component-pair subcomplexes.  For every block whose
    per-degree cohomology is at most one-dimensional the classes match up
    uniquely and each matched pair contributes ln(c-/c+); ambiguous blocks
    are skipped with a warning.  Dimension mismatches contradict the
    cylinder assumption and raise DimensionMismatch.
    """
    if eps_plus is None:
        eps_plus = Augmentation(dga_plus.name, frozenset())
    if sorted(pairing) != list(range(dga_minus.num_components)) or sorted(
        set(pairing.values())
    ) != list(range(dga_plus.num_components)):
        raise PreconditionFailed("pairing must be a bijection between component sets")

    c_minus = linearized_complex(twist(dga_minus, eps_minus))
    c_plus = linearized_complex(twist(dga_plus, eps_plus))
    blocks_minus = split_by_components(c_minus)
    blocks_plus = split_by_components(c_plus)

    best_ratio = Fraction(1)
    witness: dict[str, Any] = {}
    warnings: list[str] = []
    seen_plus: set[tuple[int, int]] = set()
    for pair, block in sorted(blocks_minus.items()):
        plus_pair = (pairing[pair[0]], pairing[pair[1]])
        seen_plus.add(plus_pair)
        plus_block = blocks_plus.get(plus_pair)
        classes_minus = cohomology(block)
        classes_plus = cohomology(plus_block) if plus_block is not None else []
        dims_minus: dict[int, list] = {}
        for cl in classes_minus:
            dims_minus.setdefault(cl.degree, []).append(cl)
        dims_plus: dict[int, list] = {}
        for cl in classes_plus:
            dims_plus.setdefault(cl.degree, []).append(cl)
        if {d: len(v) for d, v in dims_minus.items()} != {d: len(v) for d, v in dims_plus.items()}:
            raise DimensionMismatch(
                f"block {pair} -> {plus_pair}: cohomology dimensions differ; not a cylinder"
            )
        for deg in sorted(dims_minus):
            group_minus, group_plus = dims_minus[deg], dims_plus[deg]
            if len(group_minus) != 1:
                warnings.append(f"block {pair} degree {deg}: dimension {len(group_minus)} > 1, skipped")
                continue
            vm = capacity(block, group_minus[0].representative)
            vp = capacity(plus_block, group_plus[0].representative)
            if vm is None or vp is None:
                continue
            ratio = vm / vp
            if ratio > best_ratio:
                best_ratio = ratio
                witness = {
                    "block": list(pair),
                    "degree": deg,
                    "c_minus": format_fraction(vm),
                    "c_plus": format_fraction(vp),
                }
    for plus_pair, plus_block in sorted(blocks_plus.items()):
        if plus_pair not in seen_plus and cohomology(plus_block):
            raise DimensionMismatch(f"positive-end block {plus_pair} has no partner")
    bound = LengthBound(best_ratio, rule="split-cylinder", provenance=witness)
    if warnings:
        bound.provenance["skipped_blocks"] = warnings
    return bound
