"""Modular pairs, defects, modular/hypermodular decisions, defect totals.

The modular defect of two flats A, B is r(A) + r(B) - r(A∪B) - r(A∩B),
nonnegative by submodularity.  A matroid is modular when every pair of
flats has defect zero and hypermodular (defined for rank >= 3) when
every pair of corank-1 flats does.  For loopless rank-4 matroids the
gap between the two notions is witnessed exactly by disjoint
(rank-3, rank-2) flat pairs, which is what :func:`disjoint_rank32_pairs`
enumerates and the extension machinery repairs.

Defects are defined only between flats; close arbitrary sets first.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import ElementSet, Matroid, _lsb_index, _members_of, flat_key, pair_key


@dataclass
class DefectReport:
    """All strictly positive pair defects, their sum, and the disjoint flags.

    ``pair_defects`` maps canonically ordered flat pairs to their defect;
    zero-defect pairs are omitted but still count toward nothing.  For
    loopless rank-4 matroids ``disjoint_flags`` lists the disjoint
    (rank-3, rank-2) pairs; it is empty for other ranks.
    """

    pair_defects: dict[tuple[ElementSet, ElementSet], int]
    total: int
    disjoint_flags: tuple[tuple[ElementSet, ElementSet], ...]


def _flat_index(M: Matroid, flat) -> int:
    mask = M._subset_mask(flat)
    idx = M._index_of_mask.get(mask)
    if idx is None:
        raise ValueError(f"{sorted(_members_of(mask))} is not a flat")
    return idx


def _defect_by_index(M: Matroid, i: int, j: int) -> int:
    mi, mj = M._flat_masks[i], M._flat_masks[j]
    inter = mi & mj
    if inter == mi or inter == mj:
        return 0
    join = _lsb_index(M._sup_bits[i] & M._sup_bits[j])
    return (
        M._grade_of_index[i]
        + M._grade_of_index[j]
        - M._grade_of_index[join]
        - M._rank_of_mask(inter)
    )


def modular_defect(M: Matroid, a, b) -> int:
    """Defect r(A) + r(B) - r(A∪B) - r(A∩B) of two flats."""
    return _defect_by_index(M, _flat_index(M, a), _flat_index(M, b))


def is_modular_pair(M: Matroid, a, b) -> bool:
    return modular_defect(M, a, b) == 0


def is_modular_flat(M: Matroid, flat) -> bool:
    """Whether the flat has defect zero against every flat of the matroid."""
    i = _flat_index(M, flat)
    return all(_defect_by_index(M, i, j) == 0 for j in range(len(M._flat_masks)) if j != i)


def is_modular(M: Matroid) -> bool:
    """Whether every pair of flats is modular."""
    cached = M._cache.get("modular")
    if cached is None:
        count = len(M._flat_masks)
        cached = all(
            _defect_by_index(M, i, j) == 0
            for i in range(count)
            for j in range(i + 1, count)
        )
        M._cache["modular"] = cached
    return cached


def hypermodularity_witness(M: Matroid) -> tuple[ElementSet, ElementSet] | None:
    """First (canonical order) non-modular pair of corank-1 flats, or None."""
    if M.rank < 3:
        raise ValueError(f"hypermodularity is defined for rank >= 3, got rank {M.rank}")
    if "hm_witness" not in M._cache:
        witness = None
        tops = M.flats_by_rank[M.rank - 1]
        offset = sum(len(g) for g in M.flats_by_rank[: M.rank - 1])
        for i in range(len(tops)):
            for j in range(i + 1, len(tops)):
                if _defect_by_index(M, offset + i, offset + j) != 0:
                    witness = (tops[i], tops[j])
                    break
            if witness:
                break
        M._cache["hm_witness"] = witness
    return M._cache["hm_witness"]


def is_hypermodular(M: Matroid) -> bool:
    """Whether every pair of corank-1 flats is modular (rank >= 3 only)."""
    return hypermodularity_witness(M) is None


def total_modular_defect(M: Matroid) -> DefectReport:
    """Sum of defects over all unordered pairs of distinct flats."""
    cached = M._cache.get("defect_report")
    if cached is None:
        pairs: dict[tuple[ElementSet, ElementSet], int] = {}
        total = 0
        count = len(M._flat_masks)
        for i in range(count):
            for j in range(i + 1, count):
                d = _defect_by_index(M, i, j)
                if d:
                    total += d
                    pairs[pair_key(M._flat_list[i], M._flat_list[j])] = d
        flags: tuple = ()
        if M.rank == 4 and M.is_loopless:
            flags = tuple(disjoint_rank32_pairs(M))
        cached = DefectReport(pair_defects=pairs, total=total, disjoint_flags=flags)
        M._cache["defect_report"] = cached
    return cached


def disjoint_rank32_pairs(M: Matroid) -> list[tuple[ElementSet, ElementSet]]:
    """All disjoint (rank-3 flat, rank-2 flat) pairs, canonically ordered.

    For a loopless rank-4 hypermodular matroid this list is empty
    exactly when the matroid is modular, so it enumerates the defects
    the completion loop must repair.
    """
    if M.rank != 4:
        raise ValueError(f"defined for rank-4 matroids, got rank {M.rank}")
    if not M.is_loopless:
        raise ValueError("defined for loopless matroids")
    out = []
    for f in M.flats_by_rank[3]:
        for l in M.flats_by_rank[2]:
            if not (f & l):
                out.append((f, l))
    return out
