"""Terms and substitutions.

Terms over a signature of function symbols form the carrier of the term
kernel: variables ``x1, x2, ...`` (1-based) act as projections, and every
term can be hit with a substitution, an infinite sequence of terms given
in a finite normal form.

A substitution stores an explicit prefix of terms for its first ``n``
coordinates plus a tail rule for the rest: either ``Shift(d)`` (coordinate
``j`` maps to the variable ``x(j+d)``) or ``Const(t)`` (every remaining
coordinate maps to ``t``).  The constructor canonicalizes the prefix, so
two substitutions are structurally equal exactly when they agree at every
coordinate.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import ArityMismatch, UndeclaredSymbol

__all__ = [
    "Var",
    "App",
    "Term",
    "Shift",
    "Const",
    "Substitution",
    "FunctionType",
    "identity",
    "IDENTITY",
    "SHIFT_UP",
    "MINUS",
    "STAR",
    "sigma_at",
    "apply",
    "compose",
    "shift_up",
    "minus",
    "star",
    "lift",
    "subst_from_list",
    "cons_subst",
    "drop_first",
    "dup_second",
    "touch_subst",
    "rank",
    "is_closed",
    "forall_rotation",
    "check_term",
    "enumerate_terms",
]


@dataclass(frozen=True)
class Var:
    """Variable with 1-based index."""

    index: int

    def __post_init__(self):
        if self.index < 1:
            raise ValueError(f"variable index must be >= 1, got {self.index}")


@dataclass(frozen=True)
class App:
    """Application of a function symbol to argument terms."""

    symbol: str
    args: tuple["Term", ...]

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


Term = Union[Var, App]

_VARIABLE_SHAPE = re.compile(r"^x[1-9][0-9]*$")


class FunctionType:
    """Function signature: a finite map from symbol names to arities."""

    __slots__ = ("_arities",)

    def __init__(self, symbols: Mapping[str, int] | Iterable[tuple[str, int]] = ()):
        arities: dict[str, int] = {}
        pairs = symbols.items() if isinstance(symbols, Mapping) else symbols
        for name, arity in pairs:
            if not name:
                raise ValueError("empty symbol name")
            if _VARIABLE_SHAPE.match(name):
                raise ValueError(f"symbol name {name!r} would collide with a variable")
            if name in arities:
                raise ValueError(f"duplicate symbol {name!r}")
            if arity < 0:
                raise ValueError(f"negative arity for {name!r}")
            arities[name] = arity
        self._arities = arities

    def arity(self, name: str) -> int:
        try:
            return self._arities[name]
        except KeyError:
            raise UndeclaredSymbol(name) from None

    def __contains__(self, name: str) -> bool:
        return name in self._arities

    def __iter__(self) -> Iterator[str]:
        return iter(self._arities)

    def items(self):
        return self._arities.items()

    def __len__(self) -> int:
        return len(self._arities)

    def __eq__(self, other) -> bool:
        return isinstance(other, FunctionType) and self._arities == other._arities

    def __repr__(self) -> str:
        return f"FunctionType({self._arities!r})"

    def term(self, name: str, *args: Term) -> App:
        """Arity-checked term construction."""
        expected = self.arity(name)
        if len(args) != expected:
            raise ArityMismatch(name, expected, len(args))
        return App(name, tuple(args))


def check_term(term: Term, functions: FunctionType) -> None:
    """Raise if ``term`` uses a symbol not declared in ``functions``."""
    match term:
        case Var(_):
            return
        case App(symbol, args):
            expected = functions.arity(symbol)
            if len(args) != expected:
                raise ArityMismatch(symbol, expected, len(args))
            for a in args:
                check_term(a, functions)


@dataclass(frozen=True)
class Shift:
    """Tail rule: coordinate j maps to the variable x(j + offset)."""

    offset: int


@dataclass(frozen=True)
class Const:
    """Tail rule: every remaining coordinate maps to one fixed term."""

    term: Term


@dataclass(frozen=True)
class Substitution:
    """Finitely represented infinite sequence of terms.

    Coordinate ``j`` (1-based) reads ``prefix[j-1]`` when ``j <= len(prefix)``
    and otherwise follows the tail rule.  The prefix is canonical: no
    trailing entry duplicates what the tail rule would produce.
    """

    prefix: tuple[Term, ...]
    tail: Shift | Const

    def __post_init__(self):
        prefix = tuple(self.prefix)
        tail = self.tail
        if isinstance(tail, Shift) and len(prefix) + tail.offset < 0:
            raise ValueError(
                f"shift tail {tail.offset} under prefix of length {len(prefix)} "
                "would produce variable indices below 1"
            )
        # Canonicalize: drop trailing prefix entries the tail already covers.
        while prefix:
            last = prefix[-1]
            if isinstance(tail, Shift):
                index = len(prefix) + tail.offset
                if index < 1 or last != Var(index):
                    break
            else:
                if last != tail.term:
                    break
            prefix = prefix[:-1]
        object.__setattr__(self, "prefix", prefix)


IDENTITY = Substitution((), Shift(0))
SHIFT_UP = Substitution((), Shift(1))
MINUS = Substitution((Var(1), Var(1)), Shift(-1))
STAR = Substitution((Var(2), Var(2)), Shift(0))


def identity() -> Substitution:
    """The substitution sending every coordinate j to xj."""
    return IDENTITY


def sigma_at(sub: Substitution, j: int) -> Term:
    """The term at coordinate ``j`` (1-based) of ``sub``."""
    if j < 1:
        raise ValueError(f"coordinate must be >= 1, got {j}")
    if j <= len(sub.prefix):
        return sub.prefix[j - 1]
    tail = sub.tail
    if isinstance(tail, Shift):
        return Var(j + tail.offset)
    return tail.term


def apply(term: Term, sub: Substitution) -> Term:
    """Substitute: replace each variable xj in ``term`` by coordinate j of ``sub``."""
    match term:
        case Var(i):
            return sigma_at(sub, i)
        case App(symbol, args):
            return App(symbol, tuple(apply(a, sub) for a in args))


def compose(first: Substitution, second: Substitution) -> Substitution:
    """Sequencing of substitutions: apply ``first``, then ``second``.

    Satisfies apply(t, compose(f, s)) == apply(apply(t, f), s) coordinatewise,
    hence structurally.
    """
    mapped = tuple(apply(t, second) for t in first.prefix)
    n1 = len(first.prefix)
    tail1 = first.tail
    if isinstance(tail1, Const):
        return Substitution(mapped, Const(apply(tail1.term, second)))
    d1 = tail1.offset
    tail2 = second.tail
    n2 = len(second.prefix)
    upto = max(n1, n2 - d1)
    extra = tuple(sigma_at(second, j + d1) for j in range(n1 + 1, upto + 1))
    if isinstance(tail2, Const):
        return Substitution(mapped + extra, Const(tail2.term))
    return Substitution(mapped + extra, Shift(d1 + tail2.offset))


def shift_up() -> Substitution:
    """[x2, x3, ...]: every coordinate bumped one up."""
    return SHIFT_UP


def minus() -> Substitution:
    """[x1, x1, x2, x3, ...]: inverse of shift_up on its image."""
    return MINUS


def star() -> Substitution:
    """[x2, x2, x3, x4, ...]: collapse the first coordinate onto the second."""
    return STAR


def lift(sub: Substitution) -> Substitution:
    """Push a substitution under one binder.

    Coordinate 1 is kept fixed at x1; coordinate j+1 becomes coordinate j of
    ``sub`` with every variable shifted up.
    """
    mapped = (Var(1),) + tuple(apply(t, SHIFT_UP) for t in sub.prefix)
    tail = sub.tail
    if isinstance(tail, Shift):
        return Substitution(mapped, tail)
    return Substitution(mapped, Const(apply(tail.term, SHIFT_UP)))


def subst_from_list(terms: Sequence[Term]) -> Substitution:
    """Eventually-constant substitution [t1, ..., tn, tn, tn, ...]."""
    terms = tuple(terms)
    if not terms:
        raise ValueError("eventually-constant substitution needs at least one term")
    return Substitution(terms[:-1], Const(terms[-1]))


def cons_subst(term: Term) -> Substitution:
    """[t, x1, x2, ...]: prepend one term, shifting everything else down."""
    return Substitution((term,), Shift(-1))


def drop_first(sub: Substitution) -> Substitution:
    """Coordinate j of the result is coordinate j+1 of ``sub``."""
    return compose(SHIFT_UP, sub)


def dup_second(sub: Substitution) -> Substitution:
    """[s2, s2, s3, s4, ...] where sj is coordinate j of ``sub``."""
    return compose(STAR, sub)


def touch_subst(i: int, term: Term) -> Substitution:
    """Identity everywhere except coordinate ``i``, which maps to ``term``."""
    if i < 1:
        raise ValueError(f"coordinate must be >= 1, got {i}")
    prefix = tuple(Var(j) for j in range(1, i)) + (term,)
    return Substitution(prefix, Shift(0))


def rank(term: Term) -> int:
    """Largest variable index occurring in the term, 0 when closed."""
    match term:
        case Var(i):
            return i
        case App(_, args):
            return max((rank(a) for a in args), default=0)


def is_closed(term: Term) -> bool:
    return rank(term) == 0


def forall_rotation(i: int) -> Substitution:
    """The reindexing that moves coordinate ``i`` into binding position.

    Coordinate i maps to x1, every other coordinate j maps to x(j+1).
    """
    if i < 1:
        raise ValueError(f"binder coordinate must be >= 1, got {i}")
    prefix = tuple(Var(j + 1) for j in range(1, i)) + (Var(1),)
    return Substitution(prefix, Shift(1))


def enumerate_terms(functions: FunctionType, depth: int, max_var: int) -> list[Term]:
    """All terms of nesting depth <= ``depth`` over variables x1..x(max_var).

    Deterministic order: by depth layer, then variables before symbol
    applications, symbols in declaration order, argument tuples
    lexicographically by enumeration order of the previous layer.
    """
    layer: list[Term] = [Var(i) for i in range(1, max_var + 1)]
    seen: set[Term] = set(layer)
    out: list[Term] = list(layer)
    for _ in range(depth):
        new: list[Term] = []
        for name, arity in functions.items():
            if arity == 0:
                candidate: Term = App(name, ())
                if candidate not in seen:
                    seen.add(candidate)
                    new.append(candidate)
                continue
            for args in _product(out, arity):
                candidate = App(name, args)
                if candidate not in seen:
                    seen.add(candidate)
                    new.append(candidate)
        if not new:
            break
        out.extend(new)
    return out


def _product(pool: Sequence[Term], arity: int) -> Iterator[tuple[Term, ...]]:
    if arity == 0:
        yield ()
        return
    for head in pool:
        for rest in _product(pool, arity - 1):
            yield (head,) + rest
