"""Length upper bounds from isotopy profiles, and the packing region.

A profile problem asks for a smooth interpolation rho with rho = u for
s <= 0 and rho = v for s >= A, subject to constraints of two kinds:

- derivative: rho'(s) = lambda (rho(s) + c) is forbidden for all s;
- pointwise: alpha rho(s) + beta != 0 is required for all s.

Multiplying by the integrating factor e^{-lambda s} turns a derivative
constraint into strict monotonicity of e^{-lambda s} (rho + c).  Because the
profile is constant outside [0, A], the direction of monotonicity is forced
by the sign of u + c, and the constraint becomes a pure threshold on A:
feasible iff u + c and v + c are nonzero of equal sign, in which case any
A > (-1/lambda) ln((u+c)/(v+c)) admits a solution.  The infimum over A is
therefore exact but not attained.

All constraints in one problem must share a common lambda (the only case the
symplectization geometry produces is lambda = -1); mixed lambdas are
rejected rather than guessed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from legcob.bounds import LengthBound, format_fraction
from legcob.errors import MalformedConstraint, MalformedInput, MixedLambda

__all__ = [
    "ProfileConstraint",
    "ProfileProblem",
    "FeasibilityResult",
    "profile_min_length",
    "packing_feasible",
    "packing_constraints_to_profile",
    "compare_with_e_multiple",
    "hopf_profile_problem",
]


@dataclass(frozen=True)
class ProfileConstraint:
    """Either a derivative constraint (lambda, c) or a pointwise (alpha, beta)."""

    kind: str  # "derivative" | "pointwise"
    lam: Fraction | None = None
    c: Fraction | None = None
    alpha: Fraction | None = None
    beta: Fraction | None = None

    def __post_init__(self) -> None:
        if self.kind == "derivative":
            if self.lam is None or self.c is None:
                raise MalformedConstraint("derivative constraint needs lambda and c")
            if self.lam == 0:
                raise MalformedConstraint("derivative constraint needs lambda != 0")
        elif self.kind == "pointwise":
            if self.alpha is None or self.beta is None:
                raise MalformedConstraint("pointwise constraint needs alpha and beta")
        else:
            raise MalformedConstraint(f"unknown constraint kind {self.kind!r}")

    @staticmethod
    def derivative(lam: Fraction, c: Fraction) -> "ProfileConstraint":
        return ProfileConstraint("derivative", lam=Fraction(lam), c=Fraction(c))

    @staticmethod
    def pointwise(alpha: Fraction, beta: Fraction) -> "ProfileConstraint":
        return ProfileConstraint("pointwise", alpha=Fraction(alpha), beta=Fraction(beta))


@dataclass
class ProfileProblem:
    """Boundary values u = rho(0-) and v = rho(A+) plus the constraint list."""

    u: Fraction
    v: Fraction
    constraints: list[ProfileConstraint] = field(default_factory=list)


@dataclass
class FeasibilityResult:
    feasible: bool
    inf_length: LengthBound | None
    blocking: str | None = None
    thresholds: list[tuple[str, Fraction]] = field(default_factory=list)


def profile_min_length(p: ProfileProblem) -> FeasibilityResult:
    """Exact infimum of admissible interpolation lengths, or infeasibility.

    Derivative constraint (lambda, c): infeasible unless u+c and v+c are
    nonzero with equal sign; otherwise contributes the threshold ratio
    ((u+c)/(v+c))^{-1/lambda} as a formal logarithm.  Pointwise (alpha,
    beta): infeasible unless alpha u + beta and alpha v + beta are nonzero
    with equal sign (the tails already realize both values); contributes
    threshold 0.  The result is max(0, max thresholds), an open bound.
    """
    lams = {c.lam for c in p.constraints if c.kind == "derivative"}
    if len(lams) > 1:
        raise MixedLambda(f"derivative constraints must share one lambda, got {sorted(lams)}")

    thresholds: list[tuple[str, Fraction]] = []
    best_ratio = Fraction(1)
    for con in p.constraints:
        if con.kind == "derivative":
            a, b = p.u + con.c, p.v + con.c
            label = f"derivative(lambda={con.lam},c={con.c})"
            if a == 0 or b == 0 or (a > 0) != (b > 0):
                return FeasibilityResult(False, None, blocking=f"{label}: u+c={a}, v+c={b}")
            ratio = a / b
            # threshold exponent is (-1/lambda) ln(ratio): as a ratio this is
            # ratio^(-1/lambda); keep it rational by requiring -1/lambda to be
            # an integer or by tracking the pair (ratio, exponent).
            exponent = Fraction(-1, 1) / con.lam
            thr = _rational_power(ratio, exponent)
            thresholds.append((label, thr))
            if thr > best_ratio:
                best_ratio = thr
        else:
            a = con.alpha * p.u + con.beta
            b = con.alpha * p.v + con.beta
            label = f"pointwise(alpha={con.alpha},beta={con.beta})"
            if con.alpha == 0:
                if con.beta == 0:
                    return FeasibilityResult(False, None, blocking=f"{label}: identically zero")
                thresholds.append((label, Fraction(1)))
                continue
            if a == 0 or b == 0 or (a > 0) != (b > 0):
                return FeasibilityResult(False, None, blocking=f"{label}: values {a}, {b}")
            thresholds.append((label, Fraction(1)))
    bound = LengthBound(
        best_ratio,
        rule="profile",
        provenance={"thresholds": [(lbl, format_fraction(t)) for lbl, t in thresholds]},
        open_bound=True,
    )
    return FeasibilityResult(True, bound, thresholds=thresholds)


def _rational_power(ratio: Fraction, exponent: Fraction) -> Fraction:
    """ratio**exponent when the result is rational; rejects the rest.

    The shipped constraint families all have lambda = -1 (exponent 1); other
    integer exponents of either sign are supported exactly.
    """
    if exponent.denominator != 1:
        raise MalformedConstraint(
            f"threshold ratio^{exponent} is irrational; only integer -1/lambda is supported"
        )
    return ratio ** int(exponent)


def hopf_profile_problem(u: Fraction, v: Fraction) -> ProfileProblem:
    """The constraint set of the linked-cylinder construction.

    Chord heights rho, rho, 1-rho, 1+rho along the moving link forbid
    rho' = -rho (twice), rho' = -(rho-1) and rho' = -(rho+1); as derivative
    constraints: (lambda=-1, c=0) twice, (-1, -1), (-1, +1).
    """
    minus1 = Fraction(-1)
    return ProfileProblem(
        Fraction(u),
        Fraction(v),
        [
            ProfileConstraint.derivative(minus1, Fraction(0)),
            ProfileConstraint.derivative(minus1, Fraction(0)),
            ProfileConstraint.derivative(minus1, Fraction(-1)),
            ProfileConstraint.derivative(minus1, Fraction(1)),
        ],
    )


# -- packing region --------------------------------------------------------


def compare_with_e_multiple(q: Fraction, coeff: Fraction, precision: int) -> int:
    """Certified comparison of the rational q against coeff * e.

    Returns -1, +1, or 0 when the interval evaluation at the requested
    decimal precision cannot separate them (a boundary verdict; since e is
    irrational and q, coeff are rational with coeff != 0, higher precision
    always separates).
    """
    if coeff == 0:
        return -1 if q < 0 else (1 if q > 0 else 0)
    with mpmath.workdps(precision + 10):
        iv = mpmath.iv.mpf
        e = mpmath.iv.exp(1)
        rhs = iv(coeff.numerator) / iv(coeff.denominator) * e
        lhs = iv(q.numerator) / iv(q.denominator)
        if lhs.b < rhs.a:
            return -1
        if lhs.a > rhs.b:
            return 1
        return 0


def _verdict_ge(diff: Fraction, coeff: Fraction, precision: int) -> str:
    """Verdict for 'diff >= coeff * e' with certified arithmetic."""
    cmp = compare_with_e_multiple(diff, coeff, precision)
    if cmp > 0:
        return "holds"
    if cmp < 0:
        return "fails"
    return "boundary"


@dataclass
class PackingVerdict:
    i: int
    j: int
    lower: str  # verdict for (i-j)/((k+1)e) <= v_i - v_j
    upper: str  # verdict for v_i - v_j <= 1 - ((k+1)-(i-j))/((k+1)e)

    @property
    def overall(self) -> str:
        if "fails" in (self.lower, self.upper):
            return "infeasible"
        if "boundary" in (self.lower, self.upper):
            return "boundary"
        return "feasible"


@dataclass
class PackingResult:
    k: int
    v: list[Fraction]
    verdicts: list[PackingVerdict]

    @property
    def overall(self) -> str:
        states = [vd.overall for vd in self.verdicts]
        if "infeasible" in states:
            return "infeasible"
        if "boundary" in states:
            return "boundary"
        return "feasible"


def packing_feasible(k: int, v: list[Fraction], precision: int = 30) -> PackingResult:
    """Check (i-j)/((k+1)e) <= v_i - v_j <= 1 - ((k+1)-(i-j))/((k+1)e).

    The inequalities run over i in 1..k, j in 0..k-1 with i > j and v_0 = 0.
    Comparisons against the irrational thresholds are certified interval
    evaluations at the requested decimal precision; any undecidable
    comparison yields a per-inequality (and overall) "boundary" verdict.
    """
    if k <= 0 or len(v) != k:
        raise MalformedInput(f"need k >= 1 shifts, got k={k} with {len(v)} values")
    vals = [Fraction(0)] + [Fraction(x) for x in v]
    for a, b in zip(vals, vals[1:]):
        if not a < b:
            raise MalformedInput(f"shifts must satisfy 0 < v_1 < ... < v_k, got {v}")
    if not vals[-1] < 1:
        raise MalformedInput(f"shifts must stay below 1, got {v}")
    verdicts: list[PackingVerdict] = []
    for i in range(1, k + 1):
        for j in range(0, i):
            diff = vals[i] - vals[j]
            lower = _verdict_ge(diff, Fraction(i - j, k + 1), precision)
            # upper: 1 - diff >= ((k+1)-(i-j))/((k+1)e)
            upper = _verdict_ge(1 - diff, Fraction((k + 1) - (i - j), k + 1), precision)
            verdicts.append(PackingVerdict(i, j, lower, upper))
    return PackingResult(k, [Fraction(x) for x in v], verdicts)


def packing_thresholds(k: int) -> list[tuple[str, Fraction]]:
    """The symbolic corner thresholds of the packing region.

    For each difference d = i - j in 1..k: d/((k+1)e) and 1 - ((k+1)-d)/((k+1)e),
    reported as the coefficient of e^{-1} (lower) and 1 minus such (upper).
    """
    out = []
    for d in range(1, k + 1):
        out.append((f"lower d={d}: {d}/({k + 1}e)", Fraction(d, k + 1)))
        out.append((f"upper d={d}: 1 - {k + 1 - d}/({k + 1}e)", Fraction(k + 1 - d, k + 1)))
    return out


def packing_constraints_to_profile(k: int, v: list[Fraction]) -> list[tuple[tuple[int, int], ProfileProblem]]:
    """One profile problem per ordered component pair (i, j), i > j.

    The pair's shift difference interpolates from the evenly shifted value
    (i-j)/(k+1) to v_i - v_j under the linked-cylinder constraint set; the
    packing region is recovered by asking that every problem be feasible
    with infimum length < 1.
    """
    if k <= 0 or len(v) != k:
        raise MalformedInput(f"need k >= 1 shifts, got k={k} with {len(v)} values")
    vals = [Fraction(0)] + [Fraction(x) for x in v]
    for a, b in zip(vals, vals[1:]):
        if not a < b:
            raise MalformedInput(f"shifts must satisfy 0 < v_1 < ... < v_k, got {v}")
    if not vals[-1] < 1:
        raise MalformedInput(f"shifts must stay below 1, got {v}")
    problems = []
    for i in range(1, k + 1):
        for j in range(0, i):
            u_pair = Fraction(i - j, k + 1)
            v_pair = vals[i] - vals[j]
            problems.append(((i, j), hopf_profile_problem(u_pair, v_pair)))
    return problems


def packing_via_profiles(k: int, v: list[Fraction], precision: int = 30) -> str:
    """Packing verdict through the all-pairs profile route.

    Feasible iff every pairwise infimum is < 1, i.e. every threshold ratio
    is < e; certified against e at the given precision.
    """
    worst = Fraction(0)
    for _, problem in packing_constraints_to_profile(k, v):
        res = profile_min_length(problem)
        if not res.feasible:
            return "infeasible"
        worst = max(worst, res.inf_length.ratio)
    cmp = compare_with_e_multiple(worst, Fraction(1), precision)
    if cmp < 0:
        return "feasible"
    if cmp > 0:
        return "infeasible"
    return "boundary"
