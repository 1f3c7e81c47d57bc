"""Single-element extensions that repair modular defects in rank 4.

A loopless rank-4 hypermodular matroid that is not modular has a
disjoint flag: a rank-3 flat and a rank-2 flat with empty intersection.
Around one flag we assemble an :class:`ExtensionContext`:

* the *pencil*: all rank-3 flats containing the flag's rank-2 flat
  (they tile the ground set, overlapping only in that flat);
* the *traces*: the flag's rank-2 flat together with the pencil's
  intersections with the flag's rank-3 flat (they tile that flat);
* the *cross lines*: rank-2 flats outside the flag whose joins hit two
  or more traces at rank 3;
* the *star lines* (traces plus cross lines) and *star planes* (rank-3
  flats through some trace) — the flats that would pass through a new
  point sitting where the flag fails to meet.

The extension criterion asks whether every join of two distinct star
lines is a star plane.  When it holds, :func:`extend_once` adjoins a
new element to exactly the star lines and star planes, yielding a
matroid whose lattice is re-verified from scratch and whose total
modular defect strictly drops.  :func:`complete_to_modular` repeats
this until no disjoint flag is left.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

from .core import (
    AxiomReport,
    ElementSet,
    Matroid,
    Violation,
    closure,
    flat_key,
    restrict,
    verify_flat_axioms,
)
from .modularity import (
    disjoint_rank32_pairs,
    is_hypermodular,
    is_modular,
    total_modular_defect,
)


class InternalConsistencyError(RuntimeError):
    """A structural guarantee failed; the input is corrupt or there is a bug."""


@dataclass
class ExtensionContext:
    """The flag neighbourhood data for one single-element extension."""

    matroid: Matroid
    flat3: ElementSet
    flat2: ElementSet
    pencil: tuple[ElementSet, ...]
    traces: tuple[ElementSet, ...]
    cross_lines: tuple[ElementSet, ...] | None = None
    star_lines: tuple[ElementSet, ...] | None = None
    star_planes: tuple[ElementSet, ...] | None = None

    @property
    def pencil_size(self) -> int:
        return len(self.pencil)


class CriterionResult(NamedTuple):
    holds: bool
    witness: Optional[tuple[ElementSet, ElementSet]]


@dataclass(frozen=True)
class ExtensionResult:
    extended: Matroid
    new_element: int
    enlarged: tuple[ElementSet, ...]
    defect_before: int
    defect_after: int


@dataclass(frozen=True)
class CompletionStep:
    step: int
    flat3: ElementSet
    flat2: ElementSet
    new_element: int
    defect_before: int
    defect_after: int


@dataclass(frozen=True)
class FlagFailure:
    flat3: ElementSet
    flat2: ElementSet
    witness: tuple[ElementSet, ElementSet]


@dataclass(frozen=True)
class CompletionOutcome:
    ok: bool
    matroid: Matroid | None
    steps: tuple[CompletionStep, ...]
    failures: tuple[FlagFailure, ...]


def _require_flat_of_rank(M: Matroid, flat, k: int) -> ElementSet:
    f = frozenset(flat)
    mask = M._subset_mask(f)
    idx = M._index_of_mask.get(mask)
    if idx is None:
        raise ValueError(f"{sorted(f)} is not a flat")
    if M._grade_of_index[idx] != k:
        raise ValueError(f"{sorted(f)} has rank {M._grade_of_index[idx]}, expected {k}")
    return f


def build_context(M: Matroid, flat3, flat2) -> ExtensionContext:
    """Assemble and validate the context of one disjoint flag.

    Requires a loopless hypermodular rank-4 matroid and a disjoint
    (rank-3, rank-2) flat pair.  The structural consequences that are
    forced for such input (pencil size >= 3, pencil members tiling the
    ground set and overlapping pairwise only in the flag's rank-2 flat,
    traces tiling the rank-3 flat, star planes arising as joins of star
    lines) are all re-checked; their failure aborts loudly since it
    means the input was not what it claimed to be.
    """
    if M.rank != 4:
        raise ValueError(f"extension contexts require rank 4, got rank {M.rank}")
    if not M.is_loopless:
        raise ValueError("extension contexts require a loopless matroid")
    if not is_hypermodular(M):
        raise ValueError("extension contexts require a hypermodular matroid")
    f3 = _require_flat_of_rank(M, flat3, 3)
    f2 = _require_flat_of_rank(M, flat2, 2)
    if f3 & f2:
        raise ValueError("the two flats of a flag must be disjoint")

    pencil = tuple(a for a in M.flats_by_rank[3] if f2 <= a)
    traces = [f2]
    for a in pencil:
        t = a & f3
        if not M._is_flat_mask(M._subset_mask(t)) or len(t) == 0:
            raise InternalConsistencyError(
                f"pencil member {sorted(a)} meets the flag's rank-3 flat in a non-flat"
            )
        traces.append(t)

    n = len(pencil)
    if n < 3:
        raise InternalConsistencyError(f"pencil has {n} members, expected at least 3")
    flag_union = f3 | f2
    covered: set[int] = set()
    residues = [a - f2 for a in pencil]
    for i, res in enumerate(residues):
        if covered & res:
            raise InternalConsistencyError("pencil residues are not pairwise disjoint")
        covered |= res
        if not (pencil[i] - flag_union):
            raise InternalConsistencyError(
                f"pencil member {sorted(pencil[i])} adds nothing beyond the flag"
            )
    if covered | f2 != M.ground_set:
        raise InternalConsistencyError("pencil does not cover the ground set")
    if frozenset().union(*traces[1:]) != f3:
        raise InternalConsistencyError("traces do not tile the flag's rank-3 flat")

    ctx = ExtensionContext(matroid=M, flat3=f3, flat2=f2, pencil=pencil, traces=tuple(traces))
    compute_star_lines(M, ctx)
    compute_star_planes(M, ctx)

    joins = _star_line_joins(M, ctx)
    if not set(ctx.star_planes) <= set(joins):
        raise InternalConsistencyError("a star plane is not a join of two star lines")
    return ctx


def join_spectrum(M: Matroid, flat, family, k: int) -> set[ElementSet]:
    """Closures of ``flat`` with each member of ``family`` whose union has rank ``k``."""
    fmask = M._subset_mask(flat)
    if not M._is_flat_mask(fmask):
        raise ValueError(f"{sorted(flat)} is not a flat")
    out = set()
    for t in family:
        tmask = M._subset_mask(t)
        if not M._is_flat_mask(tmask):
            raise ValueError(f"{sorted(t)} is not a flat")
        union = fmask | tmask
        idx = M._closure_index(union)
        if M._grade_of_index[idx] == k:
            out.add(M._flat_list[idx])
    return out


def compute_star_lines(M: Matroid, ctx: ExtensionContext) -> tuple[ElementSet, ...]:
    """Cross lines plus traces: the rank-2 flats through the prospective point.

    A cross line is a rank-2 flat disjoint from the whole flag whose
    rank-3 joins meet at least two traces.  Results are stored on the
    context; the cross lines are returned.
    """
    flag_mask = M._subset_mask(ctx.flat3 | ctx.flat2)
    cross = []
    for x in M.flats_by_rank[2]:
        if M._subset_mask(x) & flag_mask:
            continue
        if len(join_spectrum(M, x, ctx.traces, 3)) >= 2:
            cross.append(x)
    ctx.cross_lines = tuple(cross)
    ctx.star_lines = tuple(sorted(cross + list(ctx.traces), key=flat_key))
    return ctx.cross_lines


def compute_star_planes(M: Matroid, ctx: ExtensionContext) -> tuple[ElementSet, ...]:
    """The rank-3 flats containing some trace; stored on the context."""
    ctx.star_planes = tuple(
        x for x in M.flats_by_rank[3] if any(t <= x for t in ctx.traces)
    )
    return ctx.star_planes


def _star_line_joins(M: Matroid, ctx: ExtensionContext) -> list[ElementSet]:
    lines = ctx.star_lines
    out = []
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            out.append(closure(M, lines[i] | lines[j]))
    return out


def criterion_holds(M: Matroid, ctx: ExtensionContext) -> CriterionResult:
    """Whether every join of two distinct star lines is a star plane.

    On failure the witness is the first (canonical order) pair of star
    lines whose join escapes the star planes.
    """
    if ctx.star_lines is None or ctx.star_planes is None:
        compute_star_lines(M, ctx)
        compute_star_planes(M, ctx)
    planes = set(ctx.star_planes)
    lines = ctx.star_lines
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            if closure(M, lines[i] | lines[j]) not in planes:
                return CriterionResult(False, (lines[i], lines[j]))
    return CriterionResult(True, None)


def verify_star_structure(M: Matroid, ctx: ExtensionContext) -> AxiomReport:
    """Check the structure forced on the star once the criterion holds.

    Five checks: the star planes are exactly the pairwise star-line
    joins; star lines are pairwise disjoint; they partition the ground
    set; every other rank-2 flat joins exactly one trace at rank 3; and
    each star line is inside or disjoint from each star plane.
    """
    verdict = criterion_holds(M, ctx)
    if not verdict.holds:
        raise ValueError(f"criterion does not hold; witness {verdict.witness}")
    violations: list[Violation] = []
    lines = ctx.star_lines
    planes = set(ctx.star_planes)

    joins = set(_star_line_joins(M, ctx))
    if joins != planes:
        diff = (joins - planes) | (planes - joins)
        violations.append(
            Violation("star-planes-equality", tuple(sorted(diff, key=flat_key)),
                      "star planes differ from pairwise star-line joins")
        )

    seen: set[int] = set()
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            if lines[i] & lines[j]:
                violations.append(
                    Violation("star-lines-disjoint", (lines[i], lines[j]),
                              "two star lines intersect")
                )
    for x in lines:
        seen |= x
    if frozenset(seen) != M.ground_set:
        violations.append(
            Violation("star-lines-partition", (frozenset(seen),),
                      "star lines do not cover the ground set")
        )

    star_line_set = set(lines)
    for x in M.flats_by_rank[2]:
        if x in star_line_set:
            continue
        spectrum = join_spectrum(M, x, ctx.traces, 3)
        if len(spectrum) != 1:
            violations.append(
                Violation("outside-line-unique-join", (x,),
                          f"rank-3 join spectrum has size {len(spectrum)}, expected 1")
            )

    for x in ctx.star_planes:
        for j in lines:
            if j & x and not j <= x:
                violations.append(
                    Violation("line-in-plane-dichotomy", (x, j),
                              "a star line partially meets a star plane")
                )

    return AxiomReport.from_violations(violations)


def extend_once(M: Matroid, ctx: ExtensionContext) -> ExtensionResult:
    """Adjoin one element through the context's star.

    The new element (labelled with the next dense index) is added to
    every star line and star plane, and becomes a new rank-1 flat; all
    other flats are untouched.  The resulting lattice is re-verified
    against the flat axioms, must restrict back to the input, must stay
    hypermodular and must strictly decrease the total modular defect —
    any failure is raised as an internal error rather than returned.
    """
    verdict = criterion_holds(M, ctx)
    if not verdict.holds:
        raise ValueError(f"criterion does not hold; witness {verdict.witness}")

    m = M.ground_size
    new = frozenset([m])
    star_lines = set(ctx.star_lines)
    star_planes = set(ctx.star_planes)
    grades = [
        [frozenset()],
        list(M.flats_by_rank[1]) + [new],
        [x | new if x in star_lines else x for x in M.flats_by_rank[2]],
        [x | new if x in star_planes else x for x in M.flats_by_rank[3]],
        [M.ground_set | new],
    ]
    extended = Matroid(m + 1, grades)

    report = verify_flat_axioms(extended)
    if not report.passed:
        first = report.violations[0]
        raise InternalConsistencyError(
            f"extension lattice fails {first.axiom}: {first.detail}"
        )
    if restrict(extended, range(m)) != M:
        raise InternalConsistencyError("extension does not restrict back to the input")
    before = total_modular_defect(M).total
    after = total_modular_defect(extended).total
    if not after < before:
        raise InternalConsistencyError(
            f"total modular defect did not decrease ({before} -> {after})"
        )
    if not is_hypermodular(extended):
        raise InternalConsistencyError("extension lost hypermodularity")

    enlarged = tuple(sorted(star_lines | star_planes, key=flat_key))
    return ExtensionResult(
        extended=extended,
        new_element=m,
        enlarged=enlarged,
        defect_before=before,
        defect_after=after,
    )


def complete_to_modular(M: Matroid, max_steps: int | None = None) -> CompletionOutcome:
    """Repeatedly extend along disjoint flags until the matroid is modular.

    Flags are tried in canonical order and the first one whose criterion
    holds is used; each step strictly decreases the total modular
    defect, so ``max_steps`` defaults to that initial total plus one.
    If at some step no flag passes the criterion, the outcome carries
    one witness per failed flag instead of a matroid.
    """
    if M.rank != 4:
        raise ValueError(f"completion requires rank 4, got rank {M.rank}")
    if not M.is_loopless:
        raise ValueError("completion requires a loopless matroid")
    if not is_hypermodular(M):
        raise ValueError("completion requires a hypermodular matroid")

    if max_steps is None:
        max_steps = total_modular_defect(M).total + 1

    current = M
    steps: list[CompletionStep] = []
    while True:
        if is_modular(current):
            return CompletionOutcome(True, current, tuple(steps), ())
        if len(steps) >= max_steps:
            raise RuntimeError(f"no modular completion within {max_steps} steps")
        failures: list[FlagFailure] = []
        progressed = False
        for f3, f2 in disjoint_rank32_pairs(current):
            ctx = build_context(current, f3, f2)
            verdict = criterion_holds(current, ctx)
            if verdict.holds:
                result = extend_once(current, ctx)
                steps.append(
                    CompletionStep(
                        step=len(steps) + 1,
                        flat3=f3,
                        flat2=f2,
                        new_element=result.new_element,
                        defect_before=result.defect_before,
                        defect_after=result.defect_after,
                    )
                )
                current = result.extended
                progressed = True
                break
            failures.append(FlagFailure(f3, f2, verdict.witness))
        if not progressed:
            return CompletionOutcome(False, None, tuple(steps), tuple(failures))
