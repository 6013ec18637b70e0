"""Propositional terms and finite proposition algebras.

A proposition algebra is any set with a unary operation (negation) and a
binary operation (conjunction); no equations are assumed.  Everything else
here is brute force over small carriers: valuations, filters generated by
three implication axioms plus modus ponens, deduction closures, Boolean
recognition, and quotients by a filter.

Subsets of a finite carrier are passed around as int bitmasks, so the
natural ascending order of masks doubles as the deterministic enumeration
order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import BoundExceeded, LogicError

__all__ = [
    "PVar",
    "PNot",
    "PAnd",
    "PropTerm",
    "por",
    "pimp",
    "piff",
    "expand_sugar",
    "prop_variables",
    "eval_prop",
    "truth_table",
    "tautology",
    "semantic_consequence",
    "FinitePropAlgebra",
    "algebra_two",
    "bitmask_algebra",
    "free_boolean_algebra",
    "mask_of",
    "elements_of",
    "is_valuation",
    "enumerate_valuations",
    "val_set",
    "axiom_elements",
    "ded_closure",
    "is_filter",
    "enumerate_filters",
    "is_maximal_filter",
    "boolean_filter_criterion",
    "is_boolean",
    "lindenbaum",
    "free_boolean_classes",
    "CheckResult",
    "PropAxiom",
    "PropHyp",
    "PropMP",
    "PropStep",
    "check_prop_proof",
]


@dataclass(frozen=True)
class PVar:
    name: str


@dataclass(frozen=True)
class PNot:
    body: "PropTerm"


@dataclass(frozen=True)
class PAnd:
    left: "PropTerm"
    right: "PropTerm"


PropTerm = Union[PVar, PNot, PAnd]


def por(p: PropTerm, q: PropTerm) -> PropTerm:
    return PNot(PAnd(PNot(p), PNot(q)))


def pimp(p: PropTerm, q: PropTerm) -> PropTerm:
    return por(PNot(p), q)


def piff(p: PropTerm, q: PropTerm) -> PropTerm:
    return PAnd(pimp(p, q), pimp(q, p))


def expand_sugar(kind: str, p: PropTerm, q: PropTerm) -> PropTerm:
    """Expand a derived connective ('or', 'imp', 'iff') into the core."""
    if kind == "or":
        return por(p, q)
    if kind == "imp":
        return pimp(p, q)
    if kind == "iff":
        return piff(p, q)
    raise ValueError(f"unknown connective {kind!r}")


def prop_variables(term: PropTerm) -> tuple[str, ...]:
    """Variable names occurring in the term, sorted."""
    out: set[str] = set()

    def walk(t: PropTerm) -> None:
        match t:
            case PVar(name):
                out.add(name)
            case PNot(body):
                walk(body)
            case PAnd(left, right):
                walk(left)
                walk(right)

    walk(term)
    return tuple(sorted(out))


def eval_prop(term: PropTerm, assignment: dict[str, bool]) -> bool:
    match term:
        case PVar(name):
            return assignment[name]
        case PNot(body):
            return not eval_prop(body, assignment)
        case PAnd(left, right):
            return eval_prop(left, assignment) and eval_prop(right, assignment)


def truth_table(term: PropTerm, var_order: Sequence[str]) -> int:
    """Bitmask of rows where the term is true.

    Row r assigns variable i the bit (r >> i) & 1 of r.
    """
    mask = 0
    for row in range(1 << len(var_order)):
        assignment = {v: bool((row >> i) & 1) for i, v in enumerate(var_order)}
        if eval_prop(term, assignment):
            mask |= 1 << row
    return mask


def tautology(term: PropTerm) -> bool:
    names = prop_variables(term)
    return truth_table(term, names) == (1 << (1 << len(names))) - 1


def semantic_consequence(hypotheses: Sequence[PropTerm], term: PropTerm) -> bool:
    """True when every assignment satisfying all hypotheses satisfies the term."""
    seen = set(prop_variables(term))
    for h in hypotheses:
        seen.update(prop_variables(h))
    names = sorted(seen)
    for row in range(1 << len(names)):
        assignment = {v: bool((row >> i) & 1) for i, v in enumerate(names)}
        if all(eval_prop(h, assignment) for h in hypotheses) and not eval_prop(term, assignment):
            return False
    return True


# ------------------------------------------------------------------
# finite proposition algebras
# ------------------------------------------------------------------

@dataclass(frozen=True)
class FinitePropAlgebra:
    """Operation tables over the carrier {0, ..., size-1}."""

    not_table: tuple[int, ...]
    and_table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "not_table", tuple(self.not_table))
        object.__setattr__(self, "and_table", tuple(tuple(row) for row in self.and_table))
        n = len(self.not_table)
        if n == 0:
            raise ValueError("carrier must be nonempty")
        if len(self.and_table) != n or any(len(row) != n for row in self.and_table):
            raise ValueError("conjunction table must be n x n")
        if any(not 0 <= v < n for v in self.not_table):
            raise ValueError("negation table entry out of range")
        if any(not 0 <= v < n for row in self.and_table for v in row):
            raise ValueError("conjunction table entry out of range")

    @property
    def size(self) -> int:
        return len(self.not_table)

    def neg(self, a: int) -> int:
        return self.not_table[a]

    def conj(self, a: int, b: int) -> int:
        return self.and_table[a][b]

    def disj(self, a: int, b: int) -> int:
        return self.neg(self.conj(self.neg(a), self.neg(b)))

    def imp(self, a: int, b: int) -> int:
        # (not a) or b, with the disjunction itself expanded
        return self.disj(self.neg(a), b)

    def iff(self, a: int, b: int) -> int:
        return self.conj(self.imp(a, b), self.imp(b, a))


def algebra_two() -> FinitePropAlgebra:
    """The two-element Boolean algebra: 0 false, 1 true."""
    return FinitePropAlgebra((1, 0), ((0, 0), (0, 1)))


def bitmask_algebra(bits: int) -> FinitePropAlgebra:
    """Boolean algebra of subsets of ``bits`` points, elements as bitmasks."""
    if bits < 0:
        raise ValueError("bits must be >= 0")
    size = 1 << bits
    full = size - 1
    return FinitePropAlgebra(
        tuple(full ^ a for a in range(size)),
        tuple(tuple(a & b for b in range(size)) for a in range(size)),
    )


def free_boolean_algebra(generators: int) -> FinitePropAlgebra:
    """Free Boolean algebra on the given number of generators."""
    return bitmask_algebra(1 << generators)


def mask_of(elements: Iterable[int]) -> int:
    mask = 0
    for e in elements:
        mask |= 1 << e
    return mask


def elements_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _full(algebra: FinitePropAlgebra) -> int:
    return (1 << algebra.size) - 1


def is_valuation(algebra: FinitePropAlgebra, subset: int) -> bool:
    """Membership flips under negation and distributes over conjunction."""
    n = algebra.size
    for p in range(n):
        if bool(subset >> p & 1) == bool(subset >> algebra.neg(p) & 1):
            return False
    for p in range(n):
        for q in range(n):
            both = (subset >> p & 1) and (subset >> q & 1)
            if bool(subset >> algebra.conj(p, q) & 1) != bool(both):
                return False
    return True


def _check_bound(algebra: FinitePropAlgebra, bound: int) -> None:
    if algebra.size > bound:
        raise BoundExceeded(
            f"carrier of size {algebra.size} exceeds enumeration bound {bound}"
        )


def enumerate_valuations(algebra: FinitePropAlgebra, bound: int = 16) -> list[int]:
    """All valuation subsets, ascending as bitmasks."""
    _check_bound(algebra, bound)
    return [v for v in range(1 << algebra.size) if is_valuation(algebra, v)]


def val_set(algebra: FinitePropAlgebra, bound: int = 16) -> int:
    """Intersection of all valuations; the whole carrier when there are none."""
    valuations = enumerate_valuations(algebra, bound)
    if not valuations:
        return _full(algebra)
    out = _full(algebra)
    for v in valuations:
        out &= v
    return out


def _a1(algebra: FinitePropAlgebra, p: int) -> int:
    return algebra.imp(p, algebra.conj(p, p))


def _a2(algebra: FinitePropAlgebra, p: int, q: int) -> int:
    return algebra.imp(algebra.conj(p, q), p)


def _a3(algebra: FinitePropAlgebra, p: int, q: int, r: int) -> int:
    return algebra.imp(
        algebra.imp(p, q),
        algebra.imp(algebra.neg(algebra.conj(q, r)), algebra.neg(algebra.conj(r, p))),
    )


def axiom_elements(algebra: FinitePropAlgebra) -> int:
    """Mask of all values the three axiom schemata take on the carrier."""
    n = algebra.size
    mask = 0
    for p in range(n):
        mask |= 1 << _a1(algebra, p)
        for q in range(n):
            mask |= 1 << _a2(algebra, p, q)
            for r in range(n):
                mask |= 1 << _a3(algebra, p, q, r)
    return mask


def ded_closure(algebra: FinitePropAlgebra, subset: int) -> int:
    """Least filter containing the subset: axioms plus modus ponens, iterated."""
    n = algebra.size
    closed = subset | axiom_elements(algebra)
    changed = True
    while changed:
        changed = False
        for p in range(n):
            if not (closed >> p & 1):
                continue
            for q in range(n):
                if closed >> q & 1:
                    continue
                if closed >> algebra.imp(p, q) & 1:
                    closed |= 1 << q
                    changed = True
    return closed


def is_filter(algebra: FinitePropAlgebra, subset: int) -> bool:
    """Contains every axiom element and is closed under modus ponens."""
    if axiom_elements(algebra) & ~subset:
        return False
    n = algebra.size
    for p in range(n):
        if not (subset >> p & 1):
            continue
        for q in range(n):
            if (subset >> algebra.imp(p, q) & 1) and not (subset >> q & 1):
                return False
    return True


def enumerate_filters(algebra: FinitePropAlgebra, bound: int = 16) -> list[int]:
    """All filter subsets, ascending as bitmasks."""
    _check_bound(algebra, bound)
    return [f for f in range(1 << algebra.size) if is_filter(algebra, f)]


def is_maximal_filter(
    algebra: FinitePropAlgebra,
    subset: int,
    filters: Sequence[int] | None = None,
    bound: int = 16,
) -> bool:
    """Proper filter contained in no strictly larger proper filter.

    Computed from the definition over the enumerated filters, then
    cross-checked against the negation criterion (p in F iff not-p outside F);
    the two must agree.
    """
    if filters is None:
        filters = enumerate_filters(algebra, bound)
    full = _full(algebra)
    by_definition = (
        subset != full
        and is_filter(algebra, subset)
        and not any(
            f != full and f != subset and (subset & ~f) == 0 for f in filters
        )
    )
    by_negation = is_filter(algebra, subset) and all(
        bool(subset >> p & 1) != bool(subset >> algebra.neg(p) & 1)
        for p in range(algebra.size)
    )
    if by_definition != by_negation:
        raise LogicError(
            "maximality routes disagree on subset "
            f"{elements_of(subset)} of a {algebra.size}-element algebra"
        )
    return by_definition


def boolean_filter_criterion(algebra: FinitePropAlgebra, subset: int) -> bool:
    """Order-theoretic filter test for Boolean carriers.

    Closed under conjunction, upward closed under disjunction, and
    containing the top element p or not-p.
    """
    n = algebra.size
    top = algebra.disj(0, algebra.neg(0))
    if not (subset >> top & 1):
        return False
    for p in range(n):
        if not (subset >> p & 1):
            continue
        for q in range(n):
            if (subset >> q & 1) and not (subset >> algebra.conj(p, q) & 1):
                return False
            if not (subset >> algebra.disj(p, q) & 1):
                return False
    return True


def is_boolean(algebra: FinitePropAlgebra) -> bool:
    """Equational recognition of Boolean algebras in (and, not).

    Conjunction is associative and commutative; p and not-q equals the
    (necessarily unique) bottom exactly when p and q equals p.
    """
    n = algebra.size
    for p in range(n):
        for q in range(n):
            if algebra.conj(p, q) != algebra.conj(q, p):
                return False
            for r in range(n):
                if algebra.conj(algebra.conj(p, q), r) != algebra.conj(p, algebra.conj(q, r)):
                    return False
                bottom = algebra.conj(r, algebra.neg(r))
                if algebra.conj(p, algebra.neg(q)) == bottom:
                    if algebra.conj(p, q) != p:
                        return False
                if algebra.conj(p, q) == p:
                    if algebra.conj(p, algebra.neg(q)) != bottom:
                        return False
    return True


def lindenbaum(
    algebra: FinitePropAlgebra, filter_subset: int
) -> tuple[FinitePropAlgebra, tuple[int, ...]]:
    """Quotient by the congruence p ~ q iff (p iff q) lies in the filter.

    Returns the quotient algebra and the projection from carrier indices to
    class indices.  Raises when the relation fails to be a congruence.
    """
    n = algebra.size

    def related(p: int, q: int) -> bool:
        return bool(filter_subset >> algebra.iff(p, q) & 1)

    for p in range(n):
        if not related(p, p):
            raise LogicError(f"filter does not relate {p} to itself")
        for q in range(n):
            if related(p, q) != related(q, p):
                raise LogicError("filter relation is not symmetric")
            for r in range(n):
                if related(p, q) and related(q, r) and not related(p, r):
                    raise LogicError("filter relation is not transitive")

    # congruence with respect to both operations
    for p in range(n):
        for q in range(n):
            if not related(p, q):
                continue
            if not related(algebra.neg(p), algebra.neg(q)):
                raise LogicError("filter relation does not respect negation")
            for r in range(n):
                if not related(algebra.conj(p, r), algebra.conj(q, r)):
                    raise LogicError("filter relation does not respect conjunction")
                if not related(algebra.conj(r, p), algebra.conj(r, q)):
                    raise LogicError("filter relation does not respect conjunction")

    representatives: list[int] = []
    projection: list[int] = []
    for p in range(n):
        for idx, rep in enumerate(representatives):
            if related(p, rep):
                projection.append(idx)
                break
        else:
            projection.append(len(representatives))
            representatives.append(p)

    m = len(representatives)
    not_table = tuple(projection[algebra.neg(rep)] for rep in representatives)
    and_table = tuple(
        tuple(projection[algebra.conj(a, b)] for b in representatives)
        for a in representatives
    )
    return FinitePropAlgebra(not_table, and_table), tuple(projection)


def free_boolean_classes(num_vars: int, depth: int) -> frozenset[int]:
    """Truth-table classes reachable from the variables in ``depth`` rounds
    of closing under negation and conjunction."""
    rows = 1 << num_vars
    full = (1 << rows) - 1
    current: frozenset[int] = frozenset(
        truth_table(PVar(f"v{i}"), [f"v{j}" for j in range(num_vars)])
        for i in range(num_vars)
    )
    for _ in range(depth):
        step = set(current)
        step.update(full ^ t for t in current)
        step.update(a & b for a in current for b in current)
        if len(step) == len(current):
            break
        current = frozenset(step)
    return current


# ------------------------------------------------------------------
# propositional proofs
# ------------------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    """Outcome of a proof check; ``step`` is the 0-based first failure."""

    ok: bool
    step: int | None = None
    reason: str | None = None


@dataclass(frozen=True)
class PropAxiom:
    """Instance of axiom schema 1, 2, or 3 at the given propositions."""

    number: int
    p: PropTerm
    q: PropTerm | None = None
    r: PropTerm | None = None


@dataclass(frozen=True)
class PropHyp:
    index: int


@dataclass(frozen=True)
class PropMP:
    premise: int
    implication: int


PropJustification = Union[PropAxiom, PropHyp, PropMP]


@dataclass(frozen=True)
class PropStep:
    formula: PropTerm
    by: PropJustification


def build_prop_axiom(just: PropAxiom) -> PropTerm:
    if just.number == 1:
        return pimp(just.p, PAnd(just.p, just.p))
    if just.number == 2:
        if just.q is None:
            raise ValueError("axiom 2 needs q")
        return pimp(PAnd(just.p, just.q), just.p)
    if just.number == 3:
        if just.q is None or just.r is None:
            raise ValueError("axiom 3 needs q and r")
        return pimp(
            pimp(just.p, just.q),
            pimp(PNot(PAnd(just.q, just.r)), PNot(PAnd(just.r, just.p))),
        )
    raise ValueError(f"no propositional axiom {just.number}")


def check_prop_proof(
    steps: Sequence[PropStep], hypotheses: Sequence[PropTerm] = ()
) -> CheckResult:
    """Certificate check: every step must be exactly what its justification builds."""
    for i, step in enumerate(steps):
        by = step.by
        match by:
            case PropAxiom():
                try:
                    expected = build_prop_axiom(by)
                except ValueError as exc:
                    return CheckResult(False, i, str(exc))
                if expected != step.formula:
                    return CheckResult(False, i, "formula is not that axiom instance")
            case PropHyp(index):
                if not 0 <= index < len(hypotheses):
                    return CheckResult(False, i, f"hypothesis {index} out of range")
                if hypotheses[index] != step.formula:
                    return CheckResult(False, i, f"formula is not hypothesis {index}")
            case PropMP(premise, implication):
                if not (0 <= premise < i and 0 <= implication < i):
                    return CheckResult(False, i, "modus ponens must cite earlier steps")
                if steps[implication].formula != pimp(steps[premise].formula, step.formula):
                    return CheckResult(False, i, "cited implication does not match")
            case _:
                return CheckResult(False, i, f"unknown justification {by!r}")
    return CheckResult(True)
