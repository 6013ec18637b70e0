"""Survey drivers shared by the command line and the acceptance suite.

Each driver bundles a fixed language or corpus with a seeded sweep and
returns a small report object, so a test can assert on it and the
command line can print it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .formulas import (
    Atom,
    FNot,
    Forall,
    Formula,
    FunctionType,
    Language,
    PredicateType,
    enumerate_formulas,
    exists,
    f_imp,
    f_or,
)
from .proofs import AXIOM_IDS, instantiate_axiom
from .propositional import (
    algebra_two,
    bitmask_algebra,
    enumerate_filters,
    enumerate_valuations,
    free_boolean_algebra,
    is_boolean,
    is_maximal_filter,
)
from .sampling import random_axiom_spec, random_prop_algebra, random_structure
from .semantics import (
    FOUR,
    TWO,
    FiniteBooleanAlg,
    Structure,
    counterexample_env,
    enumerate_structures,
    qa_law_check,
)
from .terms import App, Var


def soundness_language() -> Language:
    """One unary and one binary function, one unary and one binary
    predicate, plus equality."""
    return Language(
        FunctionType({"g": 1, "f": 2}),
        PredicateType({"r": 1, "s": 2, "e": 2}, equality="e"),
    )


@dataclass(frozen=True)
class SoundnessFailure:
    axiom: str
    instance: Formula
    structure: Structure
    env_prefix: tuple[int, ...]


@dataclass(frozen=True)
class SoundnessReport:
    per_axiom: tuple[tuple[str, int], ...]
    structures_checked: int
    failures: tuple[SoundnessFailure, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def soundness_survey(
    seed: int = 0,
    per_schema: int = 200,
    max_size: int = 3,
    sampled_per_size: int = 4,
    max_index: int = 3,
    depth: int = 2,
    schemas: tuple[str, ...] = AXIOM_IDS,
) -> SoundnessReport:
    """Randomized axiom instances evaluated over small structures.

    Size-1 structures are enumerated exhaustively; for each larger size
    a fresh batch of seeded random structures is drawn per instance.
    Every instance must be valid everywhere.
    """
    language = soundness_language()
    rng = random.Random(seed)
    small = list(enumerate_structures(language, 1))
    failures = []
    counts = []
    structures_checked = 0
    for axiom in schemas:
        checked = 0
        for _ in range(per_schema):
            spec = random_axiom_spec(rng, axiom, language, max_index, depth)
            instance = instantiate_axiom(spec, language)
            checked += 1
            candidates = list(small)
            for size in range(2, max_size + 1):
                candidates.extend(
                    random_structure(rng, language, size)
                    for _ in range(sampled_per_size)
                )
            structures_checked += len(candidates)
            for structure in candidates:
                bad = counterexample_env(structure, instance)
                if bad is not None:
                    failures.append(
                        SoundnessFailure(axiom, instance, structure, bad.prefix)
                    )
                    break
        counts.append((axiom, checked))
    return SoundnessReport(tuple(counts), structures_checked, tuple(failures))


@dataclass(frozen=True)
class AlgebraVerdict:
    carrier: int
    boolean: bool
    filters: int
    valuations: int
    filters_are_intersections: bool
    maximal_filters_match_valuations: bool

    @property
    def ok(self) -> bool:
        return self.filters_are_intersections and self.maximal_filters_match_valuations


@dataclass(frozen=True)
class CompletenessReport:
    verdicts: tuple[AlgebraVerdict, ...]

    @property
    def ok(self) -> bool:
        return all(v.ok for v in self.verdicts)


def prop_corpus(seed: int = 0, total: int = 20, min_non_boolean: int = 5):
    """Proposition algebras with carrier at most 8: the two-element
    algebra, the free Boolean algebra on one generator, the eight
    element Boolean algebra, and seeded random tables with at least
    min_non_boolean verified non-Boolean among them."""
    rng = random.Random(seed)
    corpus = [algebra_two(), free_boolean_algebra(1), bitmask_algebra(3)]
    non_boolean = 0
    size_cycle = (2, 3, 4, 5, 6, 7, 8)
    attempt = 0
    while len(corpus) < total or non_boolean < min_non_boolean:
        size = size_cycle[attempt % len(size_cycle)]
        attempt += 1
        algebra = random_prop_algebra(rng, size)
        if not is_boolean(algebra):
            non_boolean += 1
        corpus.append(algebra)
    return corpus


def completeness_survey(corpus) -> CompletenessReport:
    """Filters as intersections of valuations, and maximal filters as
    exactly the valuations, on every algebra of the corpus."""
    verdicts = []
    for algebra in corpus:
        valuations = enumerate_valuations(algebra)
        filters = enumerate_filters(algebra)
        as_intersections = True
        for filt in filters:
            meet = (1 << algebra.size) - 1
            for valuation in valuations:
                if valuation & filt == filt:
                    meet &= valuation
            if meet != filt:
                as_intersections = False
                break
        maximal = {
            filt
            for filt in filters
            if is_maximal_filter(algebra, filt, filters=filters)
        }
        match = maximal == set(valuations)
        verdicts.append(
            AlgebraVerdict(
                algebra.size,
                is_boolean(algebra),
                len(filters),
                len(valuations),
                as_intersections,
                match,
            )
        )
    return CompletenessReport(tuple(verdicts))


def countermodel_language() -> Language:
    return Language(FunctionType({"c": 0, "g": 1}), PredicateType({"r": 1}))


def standard_countermodel_suite() -> list[Formula]:
    """Ten fixed formulas over a constant, a unary function, and a
    unary predicate; a deterministic search workload."""
    x1, x2 = Var(1), Var(2)
    c = App("c", ())
    gx1 = App("g", (x1,))
    gc = App("g", (c,))

    def r(t):
        return Atom("r", (t,))

    return [
        f_imp(r(x1), Forall(r(x1))),
        f_imp(Forall(r(x1)), r(x1)),
        f_imp(r(c), exists(r(x1))),
        f_imp(exists(r(x1)), r(c)),
        f_imp(Forall(f_imp(r(x1), r(gx1))), f_imp(r(c), r(gc))),
        f_imp(r(gc), r(c)),
        f_imp(Forall(r(x1)), Forall(r(gx1))),
        f_imp(Forall(r(gx1)), Forall(r(x1))),
        f_or(FNot(r(c)), r(c)),
        f_imp(r(x1), r(Var(2))),
    ]


def qa_language() -> Language:
    return Language(
        FunctionType({}), PredicateType({"r": 2, "e": 2}, equality="e")
    )


def qa_fragment(depth: int = 2) -> list[Formula]:
    """All formulas of the given connective depth over one binary
    predicate, with variables drawn from the first two coordinates."""
    atoms = [Atom("r", (Var(i), Var(j))) for i in (1, 2) for j in (1, 2)]
    return enumerate_formulas(atoms, depth)


@dataclass(frozen=True)
class QACell:
    size: int
    atom_bits: int
    structures: int
    exhaustive: bool
    ok: bool
    failing_law: str | None = None


@dataclass(frozen=True)
class QASurveyReport:
    cells: tuple[QACell, ...]

    @property
    def ok(self) -> bool:
        return all(cell.ok for cell in self.cells)


def qa_survey(
    seed: int = 0,
    sizes: tuple[int, ...] = (1, 2, 3),
    algebras: tuple[FiniteBooleanAlg, ...] = (TWO, FOUR),
    rank_bound: int = 2,
    sample: list[Formula] | None = None,
    exhaustive_cap: int = 64,
    sampled_count: int = 8,
) -> QASurveyReport:
    """Quantifier laws over function-algebra fragments.

    For each domain size and value algebra, the binary predicate's
    table ranges over every possibility when there are at most
    exhaustive_cap of them, and over seeded random tables otherwise.
    """
    language = qa_language()
    if sample is None:
        sample = qa_fragment()
    rng = random.Random(seed)
    cells = []
    for size in sizes:
        for algebra in algebras:
            bits = algebra.atom_count
            table_count = (1 << bits) ** (size * size)
            exhaustive = table_count <= exhaustive_cap
            if exhaustive:
                structures = enumerate_structures(
                    language, size, truth_bits=bits, cells_cap=4096
                )
            else:
                structures = (
                    random_structure(rng, language, size, truth_bits=bits)
                    for _ in range(sampled_count)
                )
            count = 0
            ok = True
            failing = None
            for structure in structures:
                count += 1
                report = qa_law_check(structure, algebra, sample, rank_bound)
                if not report.ok:
                    ok = False
                    failing = next(e.law for e in report.laws if not e.ok)
                    break
            cells.append(
                QACell(size, bits, count, exhaustive, ok, failing)
            )
    return QASurveyReport(tuple(cells))
