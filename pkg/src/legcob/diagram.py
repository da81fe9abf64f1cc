"""Compile Lagrangian-projection diagrams into Chekanov-Eliashberg DGAs.

A diagram is an abstract 4-valent planar map: cyclic strand sequences per
link component (each crossing visited once over and once under), a rotation
system giving the counterclockwise order of the four strand-ends at each
crossing, and a designated outer face.  Crossings carry user-supplied
heights, degrees, and component endpoints.

The differential counts immersed polygons with one positive corner.  At a
crossing the two quadrants whose counterclockwise-first boundary ray lies on
the over-strand are positive; this is the unique assignment for which the
polygon area identity  area = h(positive) - sum h(negative)  holds, and it
is pinned by the shipped trefoil fixture.  Polygons are enumerated by a
depth-first boundary walk (interior on the left): at every crossing the walk
either follows the strand straight through or takes the tightest left turn,
which is a convex corner covering one quadrant.  A closed walk is accepted
only if a nonnegative region-multiplicity field with the correct jumps
across its boundary exists, with matching interior sheet counts around every
crossing.  Monomials whose negative-corner heights reach the height of the
positive corner are abandoned, which both enforces strict energy and bounds
the search.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from legcob import f2poly
from legcob.algebra import Dga, Generator, ValidationReport, validate_dga
from legcob.errors import CompileFailure, DegreeInconsistency, MalformedInput

__all__ = ["CrossingData", "LagrangianDiagram", "validate_diagram", "compile_diagram", "mirror_diagram"]

ENDS = ("over_in", "over_out", "under_in", "under_out")
_PARTNER = {
    "over_in": "over_out",
    "over_out": "over_in",
    "under_in": "under_out",
    "under_out": "under_in",
}


@dataclass(frozen=True)
class CrossingData:
    height: Fraction
    degree: int
    lower: int = 0
    upper: int = 0


@dataclass
class LagrangianDiagram:
    """Abstract planar diagram with crossing data.

    ``components[i]`` is the cyclic sequence of (crossing id, "over"|"under")
    visits along link component i.  ``rotation[c]`` lists the four ends of
    crossing c counterclockwise.  ``outer`` designates the unbounded face as
    the face to the left of the dart leaving ``outer[0]`` via end
    ``outer[1]``.
    """

    name: str
    components: list[list[tuple[str, str]]]
    rotation: dict[str, list[str]]
    crossings: dict[str, CrossingData]
    outer: tuple[str, str]
    grading_modulus: int = 0


# -- combinatorial map -------------------------------------------------------


@dataclass
class _Map:
    diagram: LagrangianDiagram
    # edge i joins end_of_dart[2i] (tail, dart 2i) to end_of_dart[2i+1]
    dart_end: list[tuple[str, str]] = field(default_factory=list)  # dart -> (crossing, arriving end)
    leave: dict[tuple[str, str], int] = field(default_factory=dict)  # (crossing, end) -> dart leaving
    face_of_dart: list[int] = field(default_factory=list)
    n_faces: int = 0
    outer_face: int = -1

    def opposite(self, dart: int) -> int:
        return dart ^ 1

    def head(self, dart: int) -> tuple[str, str]:
        return self.dart_end[dart]

    def rotation_pred(self, crossing: str, end: str) -> str:
        rot = self.diagram.rotation[crossing]
        return rot[rot.index(end) - 1]

    def rotation_succ(self, crossing: str, end: str) -> str:
        rot = self.diagram.rotation[crossing]
        return rot[(rot.index(end) + 1) % 4]

    def next_left(self, dart: int) -> int:
        """Next dart along the face on the left of ``dart``."""
        crossing, end = self.head(dart)
        return self.leave[(crossing, self.rotation_pred(crossing, end))]

    def face_left(self, dart: int) -> int:
        return self.face_of_dart[dart]

    def quadrant_face(self, crossing: str, idx: int) -> int:
        """Face containing quadrant idx (between rotation[idx], rotation[idx+1])."""
        end = self.diagram.rotation[crossing][idx]
        return self.face_left(self.leave[(crossing, end)])


def _visit_end(kind: str, direction: str) -> str:
    return f"{kind}_{direction}"


def _build_map(d: LagrangianDiagram, report: ValidationReport | None = None) -> _Map | None:
    """Assemble darts, edges, and faces; report structural defects."""

    def bad(rule: str, subject: str, detail: str) -> None:
        if report is None:
            raise MalformedInput(f"{rule}: {subject}: {detail}")
        report.add(rule, subject, detail)

    seen: dict[tuple[str, str], int] = {}
    for comp in d.components:
        for crossing, kind in comp:
            if crossing not in d.crossings:
                bad("unknown-crossing", crossing, "visit references an undeclared crossing")
                return None
            if kind not in ("over", "under"):
                bad("strand-flag", crossing, f"strand flag must be over|under, got {kind!r}")
                return None
            seen[(crossing, kind)] = seen.get((crossing, kind), 0) + 1
    for crossing in sorted(d.crossings):
        for kind in ("over", "under"):
            if seen.get((crossing, kind), 0) != 1:
                bad("two-visit", crossing, f"needs exactly one {kind} visit, found {seen.get((crossing, kind), 0)}")
                return None

    for crossing in sorted(d.crossings):
        rot = d.rotation.get(crossing)
        if rot is None or sorted(rot) != sorted(ENDS):
            bad("rotation", crossing, f"rotation must list the four ends once each, got {rot}")
            return None
        over_pos = [i for i, e in enumerate(rot) if e.startswith("over")]
        if (over_pos[1] - over_pos[0]) % 4 != 2:
            bad("transversality", crossing, "strand ends must alternate around the crossing")
            return None

    m = _Map(d)
    for comp in d.components:
        k = len(comp)
        for i, (crossing, kind) in enumerate(comp):
            nxt_crossing, nxt_kind = comp[(i + 1) % k]
            tail = (crossing, _visit_end(kind, "out"))
            head = (nxt_crossing, _visit_end(nxt_kind, "in"))
            dart = len(m.dart_end)
            m.dart_end.append(head)
            m.dart_end.append(tail)
            m.leave[tail] = dart
            m.leave[head] = dart + 1

    if len(m.leave) != 4 * len(d.crossings):
        bad("ends", d.name, "strand ends are not in bijection with crossing ends")
        return None

    # connectivity of the underlying 4-valent graph
    adj: dict[str, set[str]] = {c: set() for c in d.crossings}
    for dart in range(0, len(m.dart_end), 2):
        a, b = m.dart_end[dart][0], m.dart_end[dart + 1][0]
        adj[a].add(b)
        adj[b].add(a)
    if d.crossings:
        first = sorted(d.crossings)[0]
        todo, reach = [first], {first}
        while todo:
            for nb in adj[todo.pop()]:
                if nb not in reach:
                    reach.add(nb)
                    todo.append(nb)
        if len(reach) != len(d.crossings):
            bad("connected", d.name, "underlying 4-valent graph must be connected")
            return None

    # faces by left-hand traversal
    m.face_of_dart = [-1] * len(m.dart_end)
    for dart in range(len(m.dart_end)):
        if m.face_of_dart[dart] != -1:
            continue
        fid = m.n_faces
        m.n_faces += 1
        cur = dart
        while m.face_of_dart[cur] == -1:
            m.face_of_dart[cur] = fid
            cur = m.next_left(cur)

    v, e, f = len(d.crossings), len(m.dart_end) // 2, m.n_faces
    if v - e + f != 2:
        bad("planarity", d.name, f"Euler check failed: V-E+F = {v}-{e}+{f} = {v - e + f}")
        return None

    oc, oe = d.outer
    if oc not in d.crossings or (oc, oe) not in m.leave:
        bad("outer", d.name, f"outer-face dart ({oc!r}, {oe!r}) does not exist")
        return None
    m.outer_face = m.face_left(m.leave[(oc, oe)])
    return m


def validate_diagram(d: LagrangianDiagram) -> ValidationReport:
    """Planarity, two-visit, rotation, height and endpoint checks."""
    report = ValidationReport()
    for crossing in sorted(d.crossings):
        data = d.crossings[crossing]
        if data.height <= 0:
            report.add("height-positive", crossing, f"height {data.height} is not positive")
    n_comp = len(d.components)
    comp_of_visit: dict[tuple[str, str], int] = {}
    for ci, comp in enumerate(d.components):
        for crossing, kind in comp:
            comp_of_visit[(crossing, kind)] = ci
    m = _build_map(d, report)
    if m is None:
        return report
    for crossing in sorted(d.crossings):
        data = d.crossings[crossing]
        over_comp = comp_of_visit.get((crossing, "over"))
        under_comp = comp_of_visit.get((crossing, "under"))
        if data.upper != over_comp:
            report.add("endpoints", crossing, f"upper component {data.upper} but over strand lies on {over_comp}")
        if data.lower != under_comp:
            report.add("endpoints", crossing, f"lower component {data.lower} but under strand lies on {under_comp}")
        for side, comp in (("lower", data.lower), ("upper", data.upper)):
            if not 0 <= comp < n_comp:
                report.add("component-range", crossing, f"{side} component {comp} out of range")
    return report


# -- disk enumeration --------------------------------------------------------


def _positive_quadrants(d: LagrangianDiagram, crossing: str) -> list[int]:
    rot = d.rotation[crossing]
    return [i for i in range(4) if rot[i].startswith("over")]


@dataclass
class _Walk:
    darts: list[int]
    corners: list[tuple[str, int]]  # (crossing, quadrant idx) for negative corners
    word: tuple[str, ...]


def _admissible(m: _Map, walk: _Walk) -> bool:
    """Region-multiplicity test: does the closed walk bound an immersed disk?

    Builds the jump-consistent multiplicity field with 0 on the outer face,
    requires it nonnegative, and checks around every crossing that the field
    minus the local boundary coverage (corners cover one quadrant, straight
    passes two) is a single nonnegative interior sheet count.
    """
    d = m.diagram
    t = [0] * len(m.dart_end)
    for dart in walk.darts:
        t[dart] += 1

    n: dict[int, int] = {m.outer_face: 0}
    todo = [m.outer_face]
    # face adjacency with jumps: n(left) - n(right) = t(dart) - t(opposite).
    incident: dict[int, list[int]] = {}
    for dart in range(len(m.dart_end)):
        incident.setdefault(m.face_left(dart), []).append(dart)
    while todo:
        face = todo.pop()
        for dart in incident[face]:
            other = m.face_left(m.opposite(dart))
            jump = t[dart] - t[m.opposite(dart)]
            val = n[face] - jump
            if other in n:
                if n[other] != val:
                    return False
            else:
                n[other] = val
                todo.append(other)
    if len(n) != m.n_faces or any(v < 0 for v in n.values()):
        return False

    # interior sheets over an edge: n(left) - t(dart) >= 0
    for dart in range(len(m.dart_end)):
        if n[m.face_left(dart)] < t[dart]:
            return False

    # local coverage around crossings, from consecutive dart pairs; the
    # closing turn at the positive corner is picked up by the wrap-around.
    corner_cover: dict[tuple[str, int], int] = {}
    straight_cover: dict[tuple[str, int], int] = {}
    k = len(walk.darts)
    for i in range(k):
        cur = walk.darts[i]
        nxt = walk.darts[(i + 1) % k]
        crossing, in_end = m.head(cur)
        tail_crossing, out_end = m.dart_end[m.opposite(nxt)]
        if tail_crossing != crossing:
            return False
        rot = d.rotation[crossing]
        p = rot.index(out_end)
        if out_end == _PARTNER[in_end]:
            straight_cover[(crossing, p)] = straight_cover.get((crossing, p), 0) + 1
            straight_cover[(crossing, (p + 1) % 4)] = straight_cover.get((crossing, (p + 1) % 4), 0) + 1
        else:
            if rot[(p + 1) % 4] != in_end:
                return False
            corner_cover[(crossing, p)] = corner_cover.get((crossing, p), 0) + 1

    for crossing in d.crossings:
        sheets = None
        for q in range(4):
            cover = corner_cover.get((crossing, q), 0) + straight_cover.get((crossing, q), 0)
            local = n[m.quadrant_face(crossing, q)] - cover
            if local < 0:
                return False
            if sheets is None:
                sheets = local
            elif sheets != local:
                return False
    return True


def _search_disks(
    m: _Map,
    crossing: str,
    quadrant: int,
    max_steps: int | None = None,
) -> list[tuple[str, ...]]:
    """All admissible boundary walks with positive corner at the quadrant.

    Returns the negative-corner words read counterclockwise from the positive
    corner.  Partial words are abandoned as soon as their height reaches the
    height of the positive crossing (strict energy as a search budget), and
    straight runs longer than the dart count are cut (they cycle a strand
    without progress).
    """
    d = m.diagram
    rot = d.rotation[crossing]
    exit_end = rot[quadrant]
    close_end = rot[(quadrant + 1) % 4]
    budget = d.crossings[crossing].height
    lap_limit = len(m.dart_end)
    if max_steps is None:
        max_steps = 4096 * len(m.dart_end)

    results: list[tuple[str, ...]] = []
    start_dart = m.leave[(crossing, exit_end)]

    # explicit DFS: frames are (dart, word, height, run) with shared dart path
    darts: list[int] = []
    stack: list[tuple[int, int, tuple[str, ...], Fraction, int]] = [
        (0, start_dart, (), Fraction(0), 0)
    ]
    steps = 0
    while stack:
        depth, dart, word, height, run = stack.pop()
        del darts[depth:]
        darts.append(dart)
        steps += 1
        if steps > max_steps:
            raise CompileFailure(f"disk search at {crossing!r} exceeded {max_steps} steps")
        here, in_end = m.head(dart)
        if here == crossing and in_end == close_end:
            walk = _Walk(list(darts), [], word)
            if _admissible(m, walk):
                results.append(word)
            # fall through: the boundary may pass here and close later
        # left-turn corner at a negative quadrant (explored after straight)
        out = m.rotation_pred(here, in_end)
        q = d.rotation[here].index(out)
        if not d.rotation[here][q].startswith("over"):
            h = height + d.crossings[here].height
            if h < budget:
                stack.append((depth + 1, m.leave[(here, out)], word + (here,), h, 0))
        # straight continuation
        if run < lap_limit:
            stack.append((depth + 1, m.leave[(here, _PARTNER[in_end])], word, height, run + 1))
    # each admissible walk is one rigid disk; cancellation mod 2 happens in
    # the caller across all walks and both positive quadrants
    return results


def compile_diagram(d: LagrangianDiagram) -> Dga:
    """Enumerate disks and assemble the DGA; the result must validate.

    Raises DegreeInconsistency if an enumerated disk breaks the
    degree-drop-by-1 rule (a symptom of wrong user-supplied degrees) and
    CompileFailure if the assembled DGA fails validation.
    """
    report = validate_diagram(d)
    if not report.ok:
        raise MalformedInput(f"diagram invalid:\n{report.summary()}")
    m = _build_map(d)
    assert m is not None

    generators = {
        c: Generator(c, data.degree, data.height, data.lower, data.upper)
        for c, data in d.crossings.items()
    }
    modulus = d.grading_modulus
    differential: dict[str, frozenset] = {}
    for crossing in sorted(d.crossings):
        terms: set[tuple[str, ...]] = set()
        for quadrant in _positive_quadrants(d, crossing):
            for word in _search_disks(m, crossing, quadrant):
                if word in terms:
                    terms.remove(word)
                else:
                    terms.add(word)
        want = generators[crossing].degree - 1
        for word in terms:
            got = sum(generators[g].degree for g in word)
            matches = ((got - want) % modulus == 0) if modulus else (got == want)
            if not matches:
                raise DegreeInconsistency(
                    f"disk at {crossing} with word {word} has degree {got}, expected {want}"
                )
        if terms:
            differential[crossing] = frozenset(terms)

    dga = Dga(
        name=d.name,
        grading_modulus=modulus,
        num_components=len(d.components),
        generators=generators,
        differential=differential,
    )
    check = validate_dga(dga)
    if not check.ok:
        raise CompileFailure(f"compiled DGA fails validation:\n{check.summary()}")
    return dga


def mirror_diagram(d: LagrangianDiagram) -> LagrangianDiagram:
    """Reverse the plane orientation (rotations reversed, outer face kept)."""
    oc, oe = d.outer
    new_outer = (oc, d.rotation[oc][(d.rotation[oc].index(oe) + 1) % 4])
    return LagrangianDiagram(
        name=d.name + "~mirror",
        components=[list(comp) for comp in d.components],
        rotation={c: list(reversed(rot)) for c, rot in d.rotation.items()},
        crossings=dict(d.crossings),
        outer=new_outer,
        grading_modulus=d.grading_modulus,
    )
