"""Augmentations, twisted differentials, and A-infinity operations.

An augmentation is a unital algebra map to F2 supported in degree 0 that
kills the differential.  Twisting by the change of coordinates
g -> g + eps(g) produces a differential with vanishing constant part, whose
word-length-k pieces dualize to the A-infinity operations m_k.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from legcob import f2poly
from legcob.algebra import Dga
from legcob.algebra import ValidationReport
from legcob.errors import BudgetExceeded, NotAnAugmentation
from legcob.f2poly import Poly, Word

__all__ = [
    "Augmentation",
    "TwistedDga",
    "AInfinityOps",
    "enumerate_augmentations",
    "twist",
    "a_infinity_ops",
    "check_a_infinity",
]

DEFAULT_AUGMENTATION_CAP = 2**24


@dataclass(frozen=True)
class Augmentation:
    """An F2 point of the degree-0 part of a DGA.

    ``sent_to_one`` lists the generators mapped to 1; all of them must have
    degree 0 mod the grading modulus.
    """

    dga_name: str
    sent_to_one: frozenset[str]

    def __call__(self, name: str) -> int:
        return 1 if name in self.sent_to_one else 0

    def of_word(self, w: Word) -> int:
        for g in w:
            if g not in self.sent_to_one:
                return 0
        return 1

    def of_poly(self, p: Poly) -> int:
        return sum(self.of_word(w) for w in p) % 2

    def sorted_names(self) -> list[str]:
        return sorted(self.sent_to_one)


def is_augmentation(dga: Dga, eps: Augmentation) -> bool:
    for name in dga.sorted_names():
        g = dga.generators[name]
        if eps(name) and not dga.degrees_equal(g.degree, 0):
            return False
    return all(eps.of_poly(dga.d(name)) == 0 for name in dga.sorted_names())


def enumerate_augmentations(dga: Dga, cap: int = DEFAULT_AUGMENTATION_CAP) -> list[Augmentation]:
    """Exhaustively enumerate augmentations.

    Searches all F2 assignments on the degree-0 generators and keeps those
    with eps(d a) = 0 for every generator a.  Results are ordered by the
    lexicographically sorted support.  Raises BudgetExceeded when
    2^(#degree-0 generators) > cap.
    """
    deg0 = dga.generators_of_degree(0)
    if 2 ** len(deg0) > cap:
        raise BudgetExceeded(f"2^{len(deg0)} assignments exceed cap {cap}")
    found: list[Augmentation] = []
    diffs = [dga.d(n) for n in dga.sorted_names()]
    for bits in itertools.product((0, 1), repeat=len(deg0)):
        support = frozenset(n for n, b in zip(deg0, bits) if b)
        eps = Augmentation(dga.name, support)
        if all(eps.of_poly(d) == 0 for d in diffs):
            found.append(eps)
    found.sort(key=lambda e: sorted(e.sent_to_one))
    return found


@dataclass
class TwistedDga:
    """A DGA together with the differential conjugated by g -> g + eps(g)."""

    base: Dga
    augmentation: Augmentation
    differential: dict[str, Poly] = field(default_factory=dict)

    def d(self, name: str) -> Poly:
        self.base.gen(name)
        return self.differential.get(name, f2poly.ZERO)

    def linear_part(self, name: str) -> Poly:
        return f2poly.length_part(self.d(name), 1)

    def max_word_length(self) -> int:
        return max((f2poly.max_word_length(p) for p in self.differential.values()), default=0)


def twist(dga: Dga, eps: Augmentation) -> TwistedDga:
    """Conjugate the differential by the coordinate change g -> g + eps(g).

    Over F2 the change of coordinates is an involution, so the twisted
    differential of a generator is obtained by substituting g + eps(g) for
    every generator of d(a) and expanding.  The constant part must vanish;
    a nonzero constant part means eps was not an augmentation.
    """
    images = {
        n: frozenset({(n,), ()}) if eps(n) else frozenset({(n,)})
        for n in dga.generators
    }
    twisted: dict[str, Poly] = {}
    for name in dga.sorted_names():
        da = dga.d(name)
        if not da:
            continue
        td = f2poly.substitute(da, images)
        if f2poly.constant_part(td):
            raise NotAnAugmentation(
                f"constant part of twisted d({name}) is nonzero; eps is not an augmentation"
            )
        if td:
            twisted[name] = td
    return TwistedDga(dga, eps, twisted)


@dataclass
class AInfinityOps:
    """The operations m_k as sparse tensors over the chord basis.

    ``ops[k]`` maps a k-tuple of input chord names to the frozenset of output
    chord names: m_k(c_1*, ..., c_k*) = sum over a of [c_1...c_k : d^eps a] a*.
    ``k_max`` is the largest k stored; with ``exact=True`` all higher
    operations vanish identically (the default when k_max covers the longest
    twisted word).
    """

    twisted: TwistedDga
    k_max: int
    exact: bool
    ops: dict[int, dict[tuple[str, ...], frozenset[str]]]

    def apply(self, k: int, args: tuple[str, ...]) -> frozenset[str]:
        if k > self.k_max:
            if self.exact:
                return frozenset()
            raise ValueError(f"m_{k} not computed (k_max={self.k_max})")
        return self.ops.get(k, {}).get(args, frozenset())

    def apply_linear(self, k: int, vectors: tuple[frozenset[str], ...]) -> frozenset[str]:
        """Multilinear extension of m_k to F2 chord-set vectors."""
        out: set[str] = set()
        for combo in itertools.product(*[sorted(v) for v in vectors]):
            for a in self.apply(k, combo):
                if a in out:
                    out.remove(a)
                else:
                    out.add(a)
        return frozenset(out)


def a_infinity_ops(t: TwistedDga, k_max: int | None = None) -> AInfinityOps:
    """Extract m_k for k <= k_max as adjoints of the twisted differential.

    By default k_max is the longest word occurring in the twisted
    differential, which determines every operation exactly.
    """
    exact_k = t.max_word_length()
    if k_max is None:
        k_max = exact_k
    ops: dict[int, dict[tuple[str, ...], frozenset[str]]] = {}
    for name in sorted(t.differential):
        for w in t.differential[name]:
            k = len(w)
            if k == 0 or k > k_max:
                continue
            table = ops.setdefault(k, {})
            cur = table.get(w, frozenset())
            table[w] = cur.symmetric_difference({name})
    for k in list(ops):
        ops[k] = {w: v for w, v in ops[k].items() if v}
    return AInfinityOps(t, k_max, k_max >= exact_k, ops)


def check_a_infinity(ops: AInfinityOps, n_max: int) -> ValidationReport:
    """Verify sum_{i+j+k=n} m_{i+1+k} (1^i x m_j x 1^k) = 0 for n <= n_max.

    Evaluated on every n-tuple of basis chords; requires the operations to be
    exact (all higher m_k zero), which the default extraction guarantees.
    """
    report = ValidationReport()
    if not ops.exact:
        report.add("a-infinity", "ops", "operations were truncated; relations are undecidable")
        return report
    names = ops.twisted.base.sorted_names()
    for n in range(1, n_max + 1):
        for args in itertools.product(names, repeat=n):
            acc: set[str] = set()
            for j in range(1, n + 1):
                for i in range(0, n - j + 1):
                    inner = ops.apply(j, args[i : i + j])
                    outer_k = n - j + 1
                    for y in inner:
                        outer_args = args[:i] + (y,) + args[i + j :]
                        for a in ops.apply(outer_k, outer_args):
                            if a in acc:
                                acc.remove(a)
                            else:
                                acc.add(a)
            if acc:
                report.add(
                    "a-infinity",
                    "(" + ",".join(args) + ")",
                    f"relation at n={n} gives {sorted(acc)}",
                )
    return report
