"""Formulas with negation, conjunction, and a positional universal binder.

The binder carries no variable name: ``Forall(p)`` binds coordinate 1 of
``p``, and substitution pushes under it by keeping coordinate 1 fixed and
shifting everything else up (see :func:`clonelogic.terms.lift`).  Binding a
named variable ``forall xi. p`` is sugar: rotate coordinate i into position
1, then bind.

Disjunction, implication and equivalence are not node types; they expand
into the negation/conjunction core at construction time.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import ArityMismatch
from . import terms
from .terms import (
    App,
    FunctionType,
    Substitution,
    Term,
    Var,
    check_term,
)

__all__ = [
    "Atom",
    "FNot",
    "FAnd",
    "Forall",
    "Formula",
    "PredicateType",
    "Language",
    "f_or",
    "f_imp",
    "f_iff",
    "fsubst",
    "fplus",
    "fminus",
    "fstar",
    "forall_xi",
    "exists",
    "exists_xi",
    "frank",
    "is_sentence",
    "close_off",
    "check_formula",
    "equality_atom",
    "arithmetic_language",
    "zero",
    "succ",
    "plus",
    "times",
    "peano_core",
    "peano_induction",
    "enumerate_formulas",
]


@dataclass(frozen=True)
class Atom:
    """A predicate symbol applied to argument terms."""

    symbol: str
    args: tuple[Term, ...]

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True)
class FNot:
    body: "Formula"


@dataclass(frozen=True)
class FAnd:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    """Binds coordinate 1 of its body."""

    body: "Formula"


Formula = Union[Atom, FNot, FAnd, Forall]


class PredicateType:
    """Predicate signature, optionally designating one binary symbol as equality."""

    __slots__ = ("_functions", "equality")

    def __init__(
        self,
        symbols: Mapping[str, int] | Iterable[tuple[str, int]] = (),
        equality: str | None = None,
    ):
        self._functions = FunctionType(symbols)
        if equality is not None:
            if equality not in self._functions:
                raise ValueError(f"equality symbol {equality!r} is not declared")
            if self._functions.arity(equality) != 2:
                raise ValueError(f"equality symbol {equality!r} must be binary")
        self.equality = equality

    def arity(self, name: str) -> int:
        return self._functions.arity(name)

    def __contains__(self, name: str) -> bool:
        return name in self._functions

    def __iter__(self) -> Iterator[str]:
        return iter(self._functions)

    def items(self):
        return self._functions.items()

    def __len__(self) -> int:
        return len(self._functions)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PredicateType)
            and self._functions == other._functions
            and self.equality == other.equality
        )

    def __repr__(self) -> str:
        return f"PredicateType({dict(self.items())!r}, equality={self.equality!r})"


class Language:
    """A function signature and a predicate signature with disjoint names."""

    __slots__ = ("functions", "predicates")

    def __init__(self, functions: FunctionType, predicates: PredicateType):
        overlap = set(functions) & set(predicates)
        if overlap:
            raise ValueError(f"symbols declared twice: {sorted(overlap)}")
        self.functions = functions
        self.predicates = predicates

    @property
    def equality(self) -> str | None:
        return self.predicates.equality

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Language)
            and self.functions == other.functions
            and self.predicates == other.predicates
        )

    def __repr__(self) -> str:
        return f"Language({self.functions!r}, {self.predicates!r})"


def check_formula(formula: Formula, language: Language) -> None:
    """Raise if the formula uses undeclared symbols or wrong arities."""
    match formula:
        case Atom(symbol, args):
            expected = language.predicates.arity(symbol)
            if len(args) != expected:
                raise ArityMismatch(symbol, expected, len(args))
            for t in args:
                check_term(t, language.functions)
        case FNot(body):
            check_formula(body, language)
        case FAnd(left, right):
            check_formula(left, language)
            check_formula(right, language)
        case Forall(body):
            check_formula(body, language)


# ------------------------------------------------------------------
# connective sugar (expanded immediately; only ~, & and forall exist)
# ------------------------------------------------------------------

def f_or(p: Formula, q: Formula) -> Formula:
    return FNot(FAnd(FNot(p), FNot(q)))


def f_imp(p: Formula, q: Formula) -> Formula:
    return f_or(FNot(p), q)


def f_iff(p: Formula, q: Formula) -> Formula:
    return FAnd(f_imp(p, q), f_imp(q, p))


# ------------------------------------------------------------------
# substitution action
# ------------------------------------------------------------------

def fsubst(formula: Formula, sub: Substitution) -> Formula:
    """Apply a substitution to every free coordinate of the formula."""
    match formula:
        case Atom(symbol, args):
            return Atom(symbol, tuple(terms.apply(t, sub) for t in args))
        case FNot(body):
            return FNot(fsubst(body, sub))
        case FAnd(left, right):
            return FAnd(fsubst(left, sub), fsubst(right, sub))
        case Forall(body):
            return Forall(fsubst(body, terms.lift(sub)))


def fplus(formula: Formula) -> Formula:
    """Shift every free coordinate up by one."""
    return fsubst(formula, terms.SHIFT_UP)


def fminus(formula: Formula) -> Formula:
    """Inverse of :func:`fplus` on formulas not using coordinate 1."""
    return fsubst(formula, terms.MINUS)


def fstar(formula: Formula) -> Formula:
    """Collapse coordinate 1 onto coordinate 2."""
    return fsubst(formula, terms.STAR)


# ------------------------------------------------------------------
# binders
# ------------------------------------------------------------------

def forall_xi(i: int, formula: Formula) -> Formula:
    """Bind the named coordinate i: rotate it into position 1, then bind."""
    return Forall(fsubst(formula, terms.forall_rotation(i)))


def exists(formula: Formula) -> Formula:
    return FNot(Forall(FNot(formula)))


def exists_xi(i: int, formula: Formula) -> Formula:
    return exists(fsubst(formula, terms.forall_rotation(i)))


# ------------------------------------------------------------------
# rank
# ------------------------------------------------------------------

def frank(formula: Formula) -> int:
    """Largest free coordinate, 0 for sentences.

    The binder consumes coordinate 1, so free coordinates of the body
    appear shifted down by one outside it.
    """
    match formula:
        case Atom(_, args):
            return max((terms.rank(t) for t in args), default=0)
        case FNot(body):
            return frank(body)
        case FAnd(left, right):
            return max(frank(left), frank(right))
        case Forall(body):
            return max(frank(body) - 1, 0)


def is_sentence(formula: Formula) -> bool:
    return frank(formula) == 0


def close_off(formula: Formula) -> Formula:
    """Universally bind every free coordinate, highest binder innermost."""
    out = formula
    for i in range(frank(formula), 0, -1):
        out = forall_xi(i, out)
    return out


def equality_atom(language: Language) -> Atom:
    """The atom e(x1, x2) for the language's designated equality symbol."""
    name = language.equality
    if name is None:
        raise ValueError("language has no designated equality symbol")
    return Atom(name, (Var(1), Var(2)))


# ------------------------------------------------------------------
# arithmetic
# ------------------------------------------------------------------

def arithmetic_language() -> Language:
    """Zero, successor, addition, multiplication, and equality."""
    return Language(
        FunctionType({"0": 0, "S": 1, "add": 2, "mul": 2}),
        PredicateType({"e": 2}, equality="e"),
    )


def zero() -> Term:
    return App("0", ())


def succ(t: Term) -> Term:
    return App("S", (t,))


def plus(t: Term, u: Term) -> Term:
    return App("add", (t, u))


def times(t: Term, u: Term) -> Term:
    return App("mul", (t, u))


def _eq(t: Term, u: Term) -> Formula:
    return Atom("e", (t, u))


def peano_core() -> tuple[Formula, ...]:
    """The six quantifier-free arithmetic schemata.

    Zero is no successor; successor is injective; addition and
    multiplication recurse on their second argument.
    """
    x1, x2 = Var(1), Var(2)
    return (
        FNot(_eq(zero(), succ(x1))),
        f_imp(_eq(succ(x1), succ(x2)), _eq(x1, x2)),
        _eq(plus(x1, zero()), x1),
        _eq(plus(x1, succ(x2)), succ(plus(x1, x2))),
        _eq(times(x1, zero()), zero()),
        _eq(times(x1, succ(x2)), plus(times(x1, x2), x1)),
    )


def peano_induction(p: Formula) -> Formula:
    """Induction instance for ``p``: from p at 0 and p preserved by successor,
    conclude p everywhere (in coordinate 1)."""
    check_formula(p, arithmetic_language())
    x1 = Var(1)
    at_zero = fsubst(p, terms.subst_from_list([zero()]))
    at_x = fsubst(p, terms.subst_from_list([x1]))
    at_sx = fsubst(p, terms.subst_from_list([succ(x1)]))
    return f_imp(FAnd(at_zero, Forall(f_imp(at_x, at_sx))), Forall(at_x))


# ------------------------------------------------------------------
# exhaustive fragments
# ------------------------------------------------------------------

def enumerate_formulas(atoms: Sequence[Formula], connectives: int) -> list[Formula]:
    """All formulas built from ``atoms`` with at most ``connectives`` nodes
    of negation, conjunction, or the binder.

    Deterministic order: by connective count, negations first, then binders,
    then conjunctions (left operand count ascending, operands in list order).
    Grows fast in the budget; meant for small exhaustive oracles.
    """
    by_count: list[list[Formula]] = [list(dict.fromkeys(atoms))]
    seen: set[Formula] = set(by_count[0])
    for budget in range(1, connectives + 1):
        layer: list[Formula] = []

        def emit(candidate: Formula) -> None:
            if candidate not in seen:
                seen.add(candidate)
                layer.append(candidate)

        for p in by_count[budget - 1]:
            emit(FNot(p))
        for p in by_count[budget - 1]:
            emit(Forall(p))
        for left_count in range(budget):
            right_count = budget - 1 - left_count
            for p in by_count[left_count]:
                for q in by_count[right_count]:
                    emit(FAnd(p, q))
        by_count.append(layer)
    out: list[Formula] = []
    for layer in by_count:
        out.extend(layer)
    return out
