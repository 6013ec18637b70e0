"""Finite structures and evaluation of terms and formulas.

A structure interprets every function symbol as a finite operation table
and every predicate symbol as a truth table over tuples of domain
elements, all stored row-major.  Environments are eventually-constant
sequences of domain elements, so a finite prefix plus a default element
describes a total assignment.  Two evaluation routes are provided: the
direct two-valued one, and a finite-Boolean-algebra-valued one where
relation tables carry bitmask values and the universal quantifier is a
bitwise meet over the domain.

On top of evaluation sit validity checking, deterministic countermodel
search over enumerated structures, quantifier-law checks on the
function algebras induced by formulas, and bounded witness checks for
perfect valuations.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .errors import BoundExceeded, LogicError
from .formulas import (
    Atom,
    FAnd,
    FNot,
    Forall,
    Formula,
    Language,
    arithmetic_language,
    check_formula,
    equality_atom,
    frank,
    fsubst,
    fplus,
    fstar,
)
from .terms import (
    App,
    Const,
    Substitution,
    Term,
    Var,
    cons_subst,
    is_closed,
    sigma_at,
)

DEFAULT_CELLS_CAP = 64


@dataclass(frozen=True)
class Env:
    """Eventually-constant assignment of domain elements to variables.

    Coordinate i reads prefix[i-1] when available and the default
    element afterwards.
    """

    prefix: tuple[int, ...] = ()
    default: int = 0

    def __post_init__(self):
        for value in (*self.prefix, self.default):
            if not isinstance(value, int) or value < 0:
                raise ValueError(f"environment entries must be >= 0, got {value!r}")

    def at(self, index: int) -> int:
        if index <= len(self.prefix):
            return self.prefix[index - 1]
        return self.default

    def cons(self, element: int) -> "Env":
        """Prepend one element, shifting every coordinate up by one."""
        return Env((element,) + self.prefix, self.default)


@dataclass(frozen=True)
class FiniteBooleanAlg:
    """Boolean algebra of bitmasks over a fixed number of atoms.

    Elements are the integers 0 .. 2**atom_count - 1; meet, join, and
    complement are bitwise.  Every meet exists, so the universal
    quantifier is defined everywhere.
    """

    atom_count: int

    def __post_init__(self):
        if self.atom_count < 1 or self.atom_count > 16:
            raise ValueError("atom_count must be between 1 and 16")

    @property
    def size(self) -> int:
        return 1 << self.atom_count

    @property
    def top(self) -> int:
        return (1 << self.atom_count) - 1

    def check(self, value: int) -> None:
        if not 0 <= value < self.size:
            raise ValueError(f"value {value} outside the {self.size}-element algebra")

    def meet(self, a: int, b: int) -> int:
        return a & b

    def join(self, a: int, b: int) -> int:
        return a | b

    def complement(self, a: int) -> int:
        return self.top ^ a

    def meet_all(self, values) -> int:
        out = self.top
        for v in values:
            out &= v
        return out


TWO = FiniteBooleanAlg(1)
FOUR = FiniteBooleanAlg(2)


@dataclass
class Structure:
    """Finite interpretation of a language over the domain {0..size-1}.

    Function tables map argument tuples (read row-major) to domain
    elements.  Relation tables hold truth values: plain 0/1 when
    truth_bits is 1, and truth_bits-wide bitmasks when the structure is
    meant to pair with a FiniteBooleanAlg of that many atoms.  When
    eq_identity is set (the default for equality languages) the
    equality table is pinned to the identity relation and may be
    omitted from the constructor.
    """

    language: Language
    size: int
    fn_tables: dict[str, tuple[int, ...]] = field(default_factory=dict)
    rel_tables: dict[str, tuple[int, ...]] = field(default_factory=dict)
    eq_identity: bool = True
    truth_bits: int = 1

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("domain size must be >= 1")
        if self.truth_bits < 1:
            raise ValueError("truth_bits must be >= 1")
        full = (1 << self.truth_bits) - 1
        eq = self.language.equality
        if eq is not None and self.eq_identity and eq not in self.rel_tables:
            self.rel_tables = dict(self.rel_tables)
            self.rel_tables[eq] = identity_table(self.size, full)
        self._check_tables(self.fn_tables, self.language.functions, self.size - 1, "function")
        self._check_tables(self.rel_tables, self.language.predicates, full, "relation")
        if eq is not None and self.eq_identity:
            if self.rel_tables[eq] != identity_table(self.size, full):
                raise ValueError(
                    "structure is flagged equality-preserving but the "
                    "equality table is not the identity relation"
                )

    def _check_tables(self, tables, symbols, top_value, kind) -> None:
        for name in tables:
            if name not in symbols:
                raise ValueError(f"table for undeclared {kind} symbol {name!r}")
        for name, arity in symbols.items():
            if name not in tables:
                raise ValueError(f"missing {kind} table for {name!r}")
            table = tables[name]
            want = self.size ** arity
            if len(table) != want:
                raise ValueError(
                    f"{kind} table for {name!r} has {len(table)} entries, expected {want}"
                )
            for value in table:
                if not 0 <= value <= top_value:
                    raise ValueError(
                        f"{kind} table for {name!r} holds {value}, outside 0..{top_value}"
                    )

    def check_env(self, env: Env) -> None:
        for value in (*env.prefix, env.default):
            if value >= self.size:
                raise ValueError(
                    f"environment element {value} outside domain of size {self.size}"
                )

    def cell_count(self) -> int:
        total = sum(len(t) for t in self.fn_tables.values())
        return total + sum(len(t) for t in self.rel_tables.values())


def identity_table(size: int, diagonal_value: int = 1) -> tuple[int, ...]:
    """Row-major table of the identity relation on {0..size-1}."""
    return tuple(
        diagonal_value if i == j else 0 for i in range(size) for j in range(size)
    )


def table_index(values: tuple[int, ...], size: int) -> int:
    index = 0
    for v in values:
        index = index * size + v
    return index


def eval_term(structure: Structure, term: Term, env: Env) -> int:
    structure.check_env(env)
    return _eval_term(structure, term, env)


def _eval_term(structure: Structure, term: Term, env: Env) -> int:
    match term:
        case Var(index):
            return env.at(index)
        case App(symbol, args):
            table = structure.fn_tables.get(symbol)
            if table is None:
                raise LogicError(f"no function table for {symbol!r}")
            values = tuple(_eval_term(structure, a, env) for a in args)
            return table[table_index(values, structure.size)]
    raise TypeError(f"not a term: {term!r}")


def eval_formula(structure: Structure, formula: Formula, env: Env) -> int:
    """Two-valued truth of a formula, 0 or 1.

    The binder quantifies the first coordinate: the body is evaluated
    with each domain element consed onto the environment.
    """
    if structure.truth_bits != 1:
        raise ValueError("two-valued evaluation needs 1-bit relation tables")
    check_formula(formula, structure.language)
    structure.check_env(env)
    return _eval_formula(structure, formula, env)


def _eval_formula(structure: Structure, formula: Formula, env: Env) -> int:
    match formula:
        case Atom(symbol, args):
            values = tuple(_eval_term(structure, a, env) for a in args)
            return structure.rel_tables[symbol][table_index(values, structure.size)]
        case FNot(body):
            return 1 - _eval_formula(structure, body, env)
        case FAnd(left, right):
            if _eval_formula(structure, left, env) == 0:
                return 0
            return _eval_formula(structure, right, env)
        case Forall(body):
            for element in range(structure.size):
                if _eval_formula(structure, body, env.cons(element)) == 0:
                    return 0
            return 1
    raise TypeError(f"not a formula: {formula!r}")


def eval_formula_B(
    structure: Structure, algebra: FiniteBooleanAlg, formula: Formula, env: Env
) -> int:
    """Algebra-valued truth of a formula, as a bitmask in the algebra.

    Negation is complement, conjunction is meet, and the binder is the
    meet of the body's values over all domain elements.
    """
    if structure.truth_bits != algebra.atom_count:
        raise ValueError(
            f"mask width mismatch: relation tables use {structure.truth_bits} "
            f"bits but the algebra has {algebra.atom_count} atoms"
        )
    check_formula(formula, structure.language)
    structure.check_env(env)
    return _eval_formula_B(structure, algebra, formula, env)


def _eval_formula_B(
    structure: Structure, algebra: FiniteBooleanAlg, formula: Formula, env: Env
) -> int:
    match formula:
        case Atom(symbol, args):
            values = tuple(_eval_term(structure, a, env) for a in args)
            return structure.rel_tables[symbol][table_index(values, structure.size)]
        case FNot(body):
            return algebra.complement(_eval_formula_B(structure, algebra, body, env))
        case FAnd(left, right):
            return algebra.meet(
                _eval_formula_B(structure, algebra, left, env),
                _eval_formula_B(structure, algebra, right, env),
            )
        case Forall(body):
            return algebra.meet_all(
                _eval_formula_B(structure, algebra, body, env.cons(element))
                for element in range(structure.size)
            )
    raise TypeError(f"not a formula: {formula!r}")


def env_after_subst(structure: Structure, env: Env, sub: Substitution) -> Env:
    """The environment that reads coordinate i as the value of sub(i).

    Evaluating a substituted formula under env agrees with evaluating
    the original under this environment.
    """
    n = len(sub.prefix)
    if isinstance(sub.tail, Const):
        constant = eval_term(structure, sub.tail.term, env)
        values = tuple(eval_term(structure, t, env) for t in sub.prefix)
        return Env(values, constant)
    upto = max(n, len(env.prefix) - sub.tail.offset, 0)
    values = tuple(
        eval_term(structure, sigma_at(sub, i), env) for i in range(1, upto + 1)
    )
    return Env(values, env.default)


def counterexample_env(
    structure: Structure, formula: Formula, base: Env | None = None
) -> Env | None:
    """First environment falsifying the formula, in ascending prefix
    order over prefixes of length frank(formula).

    Coordinates past the searched prefix come from ``base`` (default:
    all zero).  Returns None when the formula is valid in the
    structure.  Only prefixes up to the formula's rank matter: truth
    cannot depend on later coordinates.
    """
    k = frank(formula)
    tail = Env() if base is None else base
    rest = tail.prefix[k:]
    for prefix in itertools.product(range(structure.size), repeat=k):
        env = Env(prefix + rest, tail.default)
        if eval_formula(structure, formula, env) == 0:
            return env
    return None


def is_valid(structure: Structure, formula: Formula) -> bool:
    return counterexample_env(structure, formula) is None


def enumerate_structures(
    language: Language,
    size: int,
    truth_bits: int = 1,
    eq_identity: bool = True,
    cells_cap: int = DEFAULT_CELLS_CAP,
):
    """All structures of one domain size, in a reproducible order.

    Function tables vary before relation tables, each in declaration
    order, and each table runs through its entries row-major
    lexicographically.  When the language declares equality and
    eq_identity is set, the equality table is pinned to the identity
    relation rather than enumerated.
    """
    eq = language.equality
    fn_symbols = list(language.functions.items())
    rel_symbols = [
        (name, arity)
        for name, arity in language.predicates.items()
        if not (eq_identity and name == eq)
    ]
    cells = sum(size ** a for _, a in fn_symbols)
    cells += sum(size ** a for _, a in language.predicates.items())
    if cells > cells_cap:
        raise BoundExceeded(
            f"candidate structures need {cells} table cells, over the cap of "
            f"{cells_cap}; use a smaller language or a lower size bound"
        )
    full = (1 << truth_bits) - 1
    table_spaces = [
        itertools.product(range(size), repeat=size ** arity)
        for _, arity in fn_symbols
    ]
    table_spaces += [
        itertools.product(range(full + 1), repeat=size ** arity)
        for _, arity in rel_symbols
    ]
    for combo in itertools.product(*table_spaces):
        fn_tables = {
            name: combo[i] for i, (name, _) in enumerate(fn_symbols)
        }
        rel_tables = {
            name: combo[len(fn_symbols) + i]
            for i, (name, _) in enumerate(rel_symbols)
        }
        yield Structure(
            language, size, fn_tables, rel_tables,
            eq_identity=eq_identity, truth_bits=truth_bits,
        )


def countermodel_search(
    language: Language,
    formula: Formula,
    max_size: int,
    threads: int = 1,
    cells_cap: int = DEFAULT_CELLS_CAP,
) -> Structure | None:
    """First structure falsifying the formula, sizes 1..max_size.

    Candidates follow the enumeration order of enumerate_structures
    and the first countermodel in that order is returned regardless of
    the thread count, so results are reproducible.
    """
    if max_size < 1:
        raise ValueError("max_size must be >= 1")
    check_formula(formula, language)
    for size in range(1, max_size + 1):
        candidates = enumerate_structures(language, size, cells_cap=cells_cap)
        if threads <= 1:
            for structure in candidates:
                if not is_valid(structure, formula):
                    return structure
            continue
        with ThreadPoolExecutor(max_workers=threads) as pool:
            while True:
                batch = list(itertools.islice(candidates, 64 * threads))
                if not batch:
                    break
                verdicts = list(pool.map(lambda d: is_valid(d, formula), batch))
                for structure, valid in zip(batch, verdicts):
                    if not valid:
                        return structure
    return None


def zmod_structure(m: int) -> Structure:
    """Modular arithmetic on {0..m-1} for the arithmetic language."""
    if m < 1:
        raise ValueError("modulus must be >= 1")
    language = arithmetic_language()
    fn_tables = {
        "0": (0,),
        "S": tuple((i + 1) % m for i in range(m)),
        "add": tuple((i + j) % m for i in range(m) for j in range(m)),
        "mul": tuple((i * j) % m for i in range(m) for j in range(m)),
    }
    return Structure(language, m, fn_tables, {})


@dataclass(frozen=True)
class LawFailure:
    """Witness for one failed law instance."""

    p: Formula
    q: Formula | None
    env: Env
    left: int
    right: int


@dataclass(frozen=True)
class LawReport:
    law: str
    ok: bool
    checked: int
    failure: LawFailure | None = None


@dataclass(frozen=True)
class QAReport:
    laws: tuple[LawReport, ...]

    @property
    def ok(self) -> bool:
        return all(entry.ok for entry in self.laws)


def qa_law_check(
    structure: Structure,
    algebra: FiniteBooleanAlg,
    sample: list[Formula],
    rank_bound: int,
) -> QAReport:
    """Check the quantifier laws pointwise on formula-induced functions.

    Q1  forall(p & q) = forall(p) & forall(q)
    Q2  (forall p)+   = (forall p)+ & p
    Q3  forall(p+)    = p
    Q4  e*            = top            (equality languages only)
    Q5  e & p         = e & p*         (equality languages only)

    Each sampled formula must have rank at most rank_bound; both sides
    of every law are compared under all environments whose prefix has
    length rank_bound + 1.  For the two-formula law Q1 each p is paired
    with the sample rotated by a few fixed offsets, which keeps the
    check quadratic-free while still exercising every formula in both
    positions.
    """
    for p in sample:
        if frank(p) > rank_bound:
            raise ValueError(
                f"sample formula has rank {frank(p)}, over the bound {rank_bound}"
            )
        check_formula(p, structure.language)
    if structure.truth_bits != algebra.atom_count:
        raise ValueError(
            f"mask width mismatch: relation tables use {structure.truth_bits} "
            f"bits but the algebra has {algebra.atom_count} atoms"
        )
    envs_by_rank = [
        [
            Env(prefix, 0)
            for prefix in itertools.product(range(structure.size), repeat=length)
        ]
        for length in range(rank_bound + 2)
    ]
    # Values are memoized per formula and per env prefix truncated to the
    # formula's rank.  Keys use a stable slot number instead of the formula
    # itself so lookups never re-hash whole trees; the keep list pins every
    # slotted formula alive so id() stays unambiguous.
    memo: dict[tuple[int, tuple[int, ...]], int] = {}
    slots: dict[int, tuple[int, int]] = {}
    keep: list[Formula] = []

    def slot_of(phi: Formula) -> tuple[int, int]:
        info = slots.get(id(phi))
        if info is None:
            info = (len(keep), frank(phi))
            keep.append(phi)
            slots[id(phi)] = info
        return info

    def ev(phi: Formula, env: Env) -> int:
        slot, r = slot_of(phi)
        key = (slot, env.prefix[:r])
        value = memo.get(key)
        if value is None:
            value = _eval_formula_B(structure, algebra, phi, env)
            memo[key] = value
        return value

    def run_law(law: str, instances) -> LawReport:
        # Both sides ignore env coordinates beyond their rank, so
        # comparing over prefixes of the larger side rank decides
        # equality over every longer environment as well.
        checked = 0
        for p, q, left, right in instances:
            depth = max(slot_of(left)[1], slot_of(right)[1])
            for env in envs_by_rank[min(depth, rank_bound + 1)]:
                checked += 1
                lv, rv = ev(left, env), ev(right, env)
                if lv != rv:
                    return LawReport(law, False, checked, LawFailure(p, q, env, lv, rv))
        return LawReport(law, True, checked)

    def q1_instances():
        n = len(sample)
        offsets = sorted({0, 1 % n, n // 2}) if n else []
        for offset in offsets:
            for i, p in enumerate(sample):
                q = sample[(i + offset) % n]
                yield p, q, Forall(FAnd(p, q)), FAnd(Forall(p), Forall(q))

    def q2_instances():
        for p in sample:
            half = fplus(Forall(p))
            yield p, None, half, FAnd(half, p)

    def q3_instances():
        for p in sample:
            yield p, None, Forall(fplus(p)), p

    reports = [
        run_law("Q1", q1_instances()),
        run_law("Q2", q2_instances()),
        run_law("Q3", q3_instances()),
    ]
    if structure.language.equality is not None:
        e = equality_atom(structure.language)
        top_formula = FNot(FAnd(e, FNot(e)))

        def q4_instances():
            yield e, None, fstar(e), top_formula

        def q5_instances():
            for p in sample:
                yield p, None, FAnd(e, p), FAnd(e, fstar(p))

        reports.append(run_law("Q4", q4_instances()))
        reports.append(run_law("Q5", q5_instances()))
    return QAReport(tuple(reports))


@dataclass(frozen=True)
class WitnessEntry:
    """Outcome of the witness check for one sampled formula.

    A formula whose universal closure holds locally lands in the
    "universal" category and ok records the sound direction: every
    candidate instance holds too.  Otherwise the negated universal
    holds and ok records whether some candidate witnesses the negated
    body; when none does the search was merely too small, which
    inconclusive flags.
    """

    formula: Formula
    category: str
    ok: bool
    witness: Term | None = None
    inconclusive: bool = False


@dataclass(frozen=True)
class PerfectReport:
    entries: tuple[WitnessEntry, ...]

    @property
    def ok(self) -> bool:
        return all(e.ok or e.inconclusive for e in self.entries)


def perfect_check_bounded(
    structure: Structure,
    env: Env,
    candidates: list[Term],
    sample: list[Formula],
) -> PerfectReport:
    """Bounded witness checks against one local valuation.

    The valuation is the set of formulas true in the structure under
    the given environment.  For each sampled p, either forall(p) holds
    there, and then p must hold with each closed candidate term in the
    first slot, or its negation holds, and then the candidates are
    searched for one making the negated body true.
    """
    for term in candidates:
        if not is_closed(term):
            raise ValueError(f"candidate term is not closed: {term!r}")
    entries = []
    for p in sample:
        holds = eval_formula(structure, Forall(p), env)
        if holds == 1:
            ok = all(
                eval_formula(structure, fsubst(p, cons_subst(a)), env) == 1
                for a in candidates
            )
            entries.append(WitnessEntry(p, "universal", ok))
            continue
        witness = None
        for a in candidates:
            if eval_formula(structure, fsubst(FNot(p), cons_subst(a)), env) == 1:
                witness = a
                break
        entries.append(
            WitnessEntry(
                p,
                "negated-universal",
                witness is not None,
                witness,
                inconclusive=witness is None,
            )
        )
    return PerfectReport(tuple(entries))


def finite_meet_property(sentences: list[Formula], structure: Structure) -> bool:
    """Whether all the sentences hold jointly in the structure.

    This witnesses consistency of a finite set at desk scale: the
    conjunction of the sentences evaluates to true under the empty
    environment.  The empty set passes vacuously.
    """
    empty = Env((), 0)
    for phi in sentences:
        if frank(phi) != 0:
            raise ValueError(f"not a sentence (rank {frank(phi)}): {phi!r}")
    return all(eval_formula(structure, phi, empty) == 1 for phi in sentences)
