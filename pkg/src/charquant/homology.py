"""Cohomology of bounded complexes of free F_p[t]-modules.

Each degree is summarized by a free rank plus the list of nontrivial
invariant factors of the inclusion image-in-kernel, computed in an
SNF-adapted basis of the kernel.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import CompositionNonzero, ShapeMismatch
from .smith import PolyMatrix, smith_decompose


@dataclass(frozen=True)
class HomologySummary:
    degree: int
    free_rank: int
    torsion: tuple = ()

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def describe(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        if self.free_rank:
            parts.append(f"free^{self.free_rank}")
        parts.extend(f"tors({t.pretty()})" for t in self.torsion)
        return " + ".join(parts)


def _presentation_summary(degree: int, kernel_rank: int, presentation: PolyMatrix) -> HomologySummary:
    dec = smith_decompose(presentation, want_u=False)
    torsion = tuple(f for f in dec.invariant_factors() if not f.is_unit())
    return HomologySummary(degree=degree, free_rank=kernel_rank - dec.rank, torsion=torsion)


def complex_cohomology(differentials: list, bounded: bool = False) -> list:
    """Cohomology of C^0 -> C^1 -> ... given the differential matrices.

    differentials[i] maps C^i to C^{i+1} (columns index the source).
    Degrees 0..len-1 are reported; with bounded=True the top term C^len
    is taken to end the complex and its cokernel is reported as well.
    Raises CompositionNonzero unless consecutive maps compose to zero.
    """
    if not differentials:
        return []
    p, var = differentials[0].p, differentials[0].var
    for i in range(len(differentials) - 1):
        if differentials[i + 1].cols != differentials[i].rows:
            raise ShapeMismatch(
                f"rank chain broken between degrees {i} and {i + 1}: "
                f"{differentials[i].rows} != {differentials[i + 1].cols}"
            )
        if not (differentials[i + 1] @ differentials[i]).is_zero():
            raise CompositionNonzero(f"d_{i + 1} compose d_{i} is nonzero")

    summaries = []
    for n, out_map in enumerate(differentials):
        out_dec = smith_decompose(out_map, want_u=False)
        kernel_rank = out_map.cols - out_dec.rank
        if n == 0:
            summaries.append(HomologySummary(degree=0, free_rank=kernel_rank))
            continue
        in_map = differentials[n - 1]
        # columns of in_map live in ker(out_map); their coordinates in the
        # SNF-adapted basis are the kernel-indexed rows of Vinv @ in_map
        coords = out_dec.Vinv @ in_map
        for j in range(out_dec.rank):
            for c in coords.entries[j]:
                if not c.is_zero():
                    raise CompositionNonzero(
                        f"image of d_{n - 1} leaves the kernel of d_{n} (degree {n})"
                    )
        pres = PolyMatrix(
            p, kernel_rank, in_map.cols, coords.entries[out_dec.rank:], var
        )
        summaries.append(_presentation_summary(n, kernel_rank, pres))
    if bounded:
        last = differentials[-1]
        summaries.append(_presentation_summary(len(differentials), last.rows, last))
    return summaries


@dataclass
class VerificationReport:
    """Outcome of one proposition-level verification suite."""

    suite: str
    p: int
    params: dict = field(default_factory=dict)
    summaries: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    wall_time: float = 0.0

    def add_check(self, name: str, passed: bool) -> None:
        self.checks.append((name, bool(passed)))

    def passed(self) -> bool:
        return bool(self.checks) and all(ok for _, ok in self.checks)

    def summary_map(self) -> dict:
        return {s.degree: s for s in self.summaries}


def summaries_match(
    summaries: list, expected: dict, allow_extra_zero: bool = False
) -> bool:
    """expected maps degree -> free rank with no torsion allowed."""
    seen = {s.degree: s for s in summaries}
    for degree, rank in expected.items():
        s = seen.get(degree)
        if s is None or s.free_rank != rank or s.torsion:
            return False
    if not allow_extra_zero:
        for degree, s in seen.items():
            if degree not in expected and not s.is_zero():
                return False
    return True
