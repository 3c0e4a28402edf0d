"""Integer-solution sequences of f = 1 and a brute-force search oracle.

Sequences iterate a family's composition map from a seed solution; every
emitted vector is re-verified by exact evaluation, so a transcription error
anywhere upstream surfaces immediately instead of silently corrupting the
chain.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .catalog import FormFamily, family as catalog_family
from .polyring import PolyError


class SeedNotSolution(PolyError):
    """The sequence seed does not satisfy f = 1."""


class StepNotSolution(PolyError):
    """A fixed step/partner vector does not satisfy f = 1."""


class SearchSpaceTooLarge(PolyError):
    """Brute-force box exceeds the enumeration guard."""


class SequenceVerificationError(PolyError):
    """An iterate failed re-verification (internal inconsistency)."""


Vec = Tuple[int, ...]


def _as_family(fam, params: Optional[Sequence[int]]) -> FormFamily:
    if isinstance(fam, str):
        return catalog_family(fam, params)
    if params is not None:
        return fam.specialize(params)
    return fam


def is_solution(fam, v: Sequence[int],
                params: Optional[Sequence[int]] = None) -> bool:
    """Exact check f(v) = 1 (the product of all factors for multi-factor
    families)."""
    f = _as_family(fam, params)
    return f.evaluate(v) == 1


def simultaneous_is_solution(q: int, v: Sequence[int]) -> bool:
    """Both equations of the simultaneous sextic system at once:
    f1(v) = 1 and f2(v) = 1 for the u-coordinate pair with parameter q."""
    fam = catalog_family("sextic_uv", (q,))
    return fam.evaluate_factors(v) == (1, 1)


@dataclass(frozen=True)
class SequenceSpec:
    """Recipe for one solution chain.

    mode "pairwise": next = map(current, step).
    mode "triple": next = trilinear map applied to the three slots named by
    `order`, each slot being "current", "fixed1", or "fixed2" (trilinear
    maps are not symmetric, so the order is explicit and recorded).
    """
    family: FormFamily
    seed: Vec
    count: int
    mode: str = "pairwise"
    step: Optional[Vec] = None
    fixed1: Optional[Vec] = None
    fixed2: Optional[Vec] = None
    order: Tuple[str, str, str] = ("current", "fixed1", "fixed2")
    variant: int = 0


@dataclass
class SequenceResult:
    spec: SequenceSpec
    solutions: List[Vec] = field(default_factory=list)
    verified: bool = True

    def to_json_obj(self) -> dict:
        fam = self.spec.family
        return {
            "family": fam.name,
            "params": [str(v) for v in (fam.param_values or ())],
            "mode": self.spec.mode,
            "solutions": [[str(c) for c in v] for v in self.solutions],
            "verified": self.verified,
        }


def generate_sequence(spec: SequenceSpec) -> SequenceResult:
    """Iterate the composition map `count` times total, seed included.

    Raises SeedNotSolution / StepNotSolution up front and re-verifies every
    iterate exactly.
    """
    fam = spec.family
    seed = tuple(int(v) for v in spec.seed)
    if fam.evaluate(seed) != 1:
        raise SeedNotSolution(f"f{seed} = {fam.evaluate(seed)} != 1")

    if spec.mode == "pairwise":
        step = tuple(int(v) for v in spec.step)
        if fam.evaluate(step) != 1:
            raise StepNotSolution(f"f{step} = {fam.evaluate(step)} != 1")
        cmap = fam.pair_map

        def advance(current: Vec) -> Vec:
            return cmap.apply((current, step))
    elif spec.mode == "triple":
        fixed = {"fixed1": tuple(int(v) for v in spec.fixed1),
                 "fixed2": tuple(int(v) for v in spec.fixed2)}
        for name, vec in fixed.items():
            if fam.evaluate(vec) != 1:
                raise StepNotSolution(f"{name}: f{vec} = {fam.evaluate(vec)} != 1")
        if sorted(spec.order) != ["current", "fixed1", "fixed2"]:
            raise ValueError("order must name current, fixed1, fixed2 once each")
        cmap = fam.triple_map(spec.variant)

        def advance(current: Vec) -> Vec:
            slots = {"current": current, **fixed}
            return cmap.apply(tuple(slots[name] for name in spec.order))
    else:
        raise ValueError(f"unknown mode {spec.mode!r}")

    result = SequenceResult(spec=spec)
    current = seed
    for i in range(spec.count):
        if i > 0:
            current = advance(current)
            if fam.evaluate(current) != 1:
                raise SequenceVerificationError(
                    f"iterate {i} fails f = 1: {current}")
        result.solutions.append(current)
    return result


@dataclass
class MonotoneReport:
    ok: bool
    violations: List[str] = field(default_factory=list)


def check_monotone_positive(solutions: Sequence[Sequence[int]],
                            increasing: Sequence[int] = (0,),
                            positive: Optional[Sequence[int]] = None
                            ) -> MonotoneReport:
    """Check strict growth of the designated coordinates and positivity of
    the designated coordinate set (all coordinates by default)."""
    report = MonotoneReport(ok=True)
    seq = [tuple(int(c) for c in v) for v in solutions]
    if positive is None:
        pos: Sequence[int] = range(len(seq[0])) if seq else ()
    else:
        pos = positive
    for i, v in enumerate(seq):
        for j in pos:
            if v[j] <= 0:
                report.ok = False
                report.violations.append(
                    f"solution {i}: coordinate {j + 1} = {v[j]} not positive")
        if i > 0:
            for j in increasing:
                if v[j] <= seq[i - 1][j]:
                    report.ok = False
                    report.violations.append(
                        f"solution {i}: coordinate {j + 1} did not increase "
                        f"({seq[i - 1][j]} -> {v[j]})")
    return report


_SEARCH_GUARD = 10 ** 9


def brute_force_search(fam, bound: int,
                       params: Optional[Sequence[int]] = None,
                       target: int = 1) -> List[Vec]:
    """All v with max|v_i| <= bound and f(v) = target, in lexicographic
    order.  Deliberately dumb: enumerates the full signed box so it can
    serve as an independent oracle."""
    f = _as_family(fam, params)
    side = 2 * int(bound) + 1
    if side ** f.h > _SEARCH_GUARD:
        raise SearchSpaceTooLarge(f"{side}^{f.h} candidate points")
    values = range(-int(bound), int(bound) + 1)
    out: List[Vec] = []
    for v in itertools.product(values, repeat=f.h):
        if f.evaluate(v) == target:
            out.append(v)
    return out
