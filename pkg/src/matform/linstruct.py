"""Matrix families whose entries are linear forms in coordinate variables.

A LinearStructure describes an n x n matrix A(x_1..x_h) whose (i,j) entry is
sum_r L[i][j][r] * x_r, with each L[i][j][r] a polynomial in named integer
parameters.  Closure of the family under matrix multiplication (for pairs or
for triples) is decided fully symbolically: coordinates and parameters are
ring variables, never sampled.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .polyring import (PolyError, PolyMatrix, Polynomial, VarTable)


class NameCollision(PolyError):
    """Coordinate names collide with parameter names."""


class ParameterCollision(PolyError):
    """Outer and inner structures share a parameter name."""


class NonExactDivision(PolyError):
    """A recipe divisor does not divide the designated entry exactly."""


@dataclass(frozen=True)
class NotInSpan:
    """Witness that a matrix does not carry the structure.

    `entry` is the first offending (row, col), 0-based; `residual` is the
    difference between the matrix entry and its reconstruction from the
    extracted coordinates (None when extraction itself failed on a
    non-exact division).
    """
    entry: Tuple[int, int]
    residual: Optional[Polynomial]
    reason: str  # "division" or "mismatch"


@dataclass(frozen=True)
class NotClosed:
    """Witness that a structure is not closed under the attempted product."""
    order: int  # 2 for pairwise, 3 for triple
    witness: NotInSpan


@dataclass(frozen=True)
class ClosureCertificate:
    """Successful pairwise closure: A(x) A(y) = A(z(x, y)) entrywise.

    `outputs[r]` is z_r, a polynomial bilinear in the two coordinate sets,
    with coefficients polynomial in the structure's parameters.
    """
    order: int
    coord_sets: Tuple[Tuple[str, ...], ...]
    outputs: Tuple[Polynomial, ...]
    degenerate_single_coordinate: bool = False
    pairwise_failure: Optional[NotClosed] = None  # set on triple certificates


Divisor = Tuple[Tuple[str, int], ...]  # parameter monomial, e.g. (("t", 1),)


@dataclass(frozen=True)
class ExtractionRecipe:
    """Designated matrix positions from which coordinates are read back.

    `positions[r]` is a 0-based (row, col); `divisors[r]` is a monomial in
    the parameters, given as ((name, exponent), ...) pairs (the empty tuple
    means a unit divisor), by which the entry must be exactly divisible.
    At the listed positions the structure's coefficient matrix must be
    diagonal with these divisors.
    """
    positions: Tuple[Tuple[int, int], ...]
    divisors: Tuple[Divisor, ...]

    @classmethod
    def first_row(cls, h: int, divisors: Optional[Sequence[Divisor]] = None
                  ) -> "ExtractionRecipe":
        divisors = tuple(divisors) if divisors is not None else ((),) * h
        return cls(tuple((0, j) for j in range(h)), divisors)

    @classmethod
    def first_column(cls, h: int) -> "ExtractionRecipe":
        return cls(tuple((i, 0) for i in range(h)), ((),) * h)


class LinearStructure:
    """n x n matrix family with entries linear in h coordinate variables."""

    def __init__(self, n: int, h: int, params: Sequence[str],
                 coeff: Sequence[Sequence[Sequence[Polynomial]]]):
        self.n = n
        self.h = h
        self.param_table = VarTable(params)
        if len(coeff) != n or any(len(row) != n for row in coeff):
            raise ValueError("coefficient tensor must be n x n")
        for row in coeff:
            for cell in row:
                if len(cell) != h:
                    raise ValueError("each cell needs one coefficient per coordinate")
                for p in cell:
                    if p.table != self.param_table:
                        raise ValueError("coefficients must live over the parameter table")
        self.coeff = tuple(tuple(tuple(cell) for cell in row) for row in coeff)
        self._form_cache: Dict[Tuple[str, ...], Polynomial] = {}

    @property
    def params(self) -> Tuple[str, ...]:
        return self.param_table.names

    @classmethod
    def from_matrix(cls, params: Sequence[str], coords: Sequence[str],
                    entries: Sequence[Sequence[Polynomial]]) -> "LinearStructure":
        """Build a structure from a symbolic matrix over params + coords.

        Every entry must be homogeneous linear in the coordinates with
        coefficients polynomial in the parameters.
        """
        n = len(entries)
        h = len(coords)
        ptable = VarTable(params)
        coeff: List[List[List[Polynomial]]] = []
        for row in entries:
            crow: List[List[Polynomial]] = []
            for entry in row:
                cell = [ptable.zero() for _ in range(h)]
                table = entry.table
                cidx = [table.index(c) for c in coords]
                pidx = [table.index(p) for p in params]
                for m, c in entry.terms.items():
                    active = [k for k, ci in enumerate(cidx) if m[ci]]
                    if len(active) != 1 or m[cidx[active[0]]] != 1:
                        raise ValueError("entry is not linear in the coordinates")
                    if sum(m) != 1 + sum(m[i] for i in pidx):
                        raise ValueError("entry mixes coordinates with foreign variables")
                    pm = tuple(m[i] for i in pidx)
                    k = active[0]
                    cell[k] = cell[k] + Polynomial(ptable, {pm: c})
                crow.append(cell)
            coeff.append(crow)
        return cls(n, h, params, coeff)

    # -- instantiation ----------------------------------------------------

    def instantiate(self, coord_names: Sequence[str],
                    table: Optional[VarTable] = None) -> PolyMatrix:
        """The matrix A(coord_names) over params + coord_names.

        `table` may supply a larger shared VarTable (it must contain all
        parameters and coordinate names).
        """
        coord_names = tuple(coord_names)
        if len(coord_names) != self.h:
            raise ValueError(f"expected {self.h} coordinate names")
        if len(set(coord_names)) != self.h:
            raise NameCollision("coordinate names must be distinct")
        if set(coord_names) & set(self.params):
            raise NameCollision("coordinate names collide with parameters")
        if table is None:
            table = VarTable(self.params + coord_names)
        coord_vars = [table.var(c) for c in coord_names]
        rows = []
        for i in range(self.n):
            row = []
            for j in range(self.n):
                acc = table.zero()
                for r in range(self.h):
                    cr = self.coeff[i][j][r]
                    if cr.is_zero():
                        continue
                    acc = acc + cr.embed(table) * coord_vars[r]
                row.append(acc)
            rows.append(row)
        return PolyMatrix(rows)

    def matrix_of(self, point: Sequence[int],
                  param_values: Sequence[int]) -> List[List[int]]:
        """Integer matrix A(point) at numeric coordinates and parameters."""
        if len(point) != self.h:
            raise ValueError(f"expected {self.h} coordinates")
        if len(param_values) != len(self.params):
            raise ValueError(f"expected {len(self.params)} parameter values")
        pv = [int(v) for v in param_values]
        return [
            [sum(self.coeff[i][j][r].eval_vector(pv) * int(point[r])
                 for r in range(self.h))
             for j in range(self.n)]
            for i in range(self.n)
        ]

    def form(self, coord_names: Sequence[str]) -> Polynomial:
        """det(A(coord_names)): the degree-n form carried by the family.

        Cached per coordinate tuple; the symbolic determinants of the larger
        families are expensive and requested repeatedly.
        """
        key = tuple(coord_names)
        got = self._form_cache.get(key)
        if got is None:
            got = self.instantiate(key).determinant()
            self._form_cache[key] = got
        return got

    def specialize(self, param_values: Sequence[int]) -> "LinearStructure":
        """Substitute integer values for all parameters (result has none)."""
        if len(param_values) != len(self.params):
            raise ValueError(f"expected {len(self.params)} parameter values")
        pv = [int(v) for v in param_values]
        empty = VarTable(())
        coeff = [[[empty.const(self.coeff[i][j][r].eval_vector(pv))
                   for r in range(self.h)]
                  for j in range(self.n)]
                 for i in range(self.n)]
        return LinearStructure(self.n, self.h, (), coeff)

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "h": self.h,
            "params": list(self.params),
            "coeff": [[[self.coeff[i][j][r].to_json_obj()
                        for r in range(self.h)]
                       for j in range(self.n)]
                      for i in range(self.n)],
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "LinearStructure":
        params = tuple(obj["params"])
        table = VarTable(params)
        coeff = [[[Polynomial.from_json_obj(cell).embed(table)
                   for cell in entry]
                  for entry in row]
                 for row in obj["coeff"]]
        return cls(int(obj["n"]), int(obj["h"]), params, coeff)

    def rename_params(self, mapping: Dict[str, str]) -> "LinearStructure":
        new_names = tuple(mapping.get(p, p) for p in self.params)
        table = VarTable(new_names)
        coeff = [[[Polynomial(table, self.coeff[i][j][r].terms)
                   for r in range(self.h)]
                  for j in range(self.n)]
                 for i in range(self.n)]
        return LinearStructure(self.n, self.h, new_names, coeff)

    # -- extraction -------------------------------------------------------

    def default_recipe(self) -> ExtractionRecipe:
        """First-row recipe with unit divisors (fits most catalog families)."""
        return ExtractionRecipe.first_row(self.h)

    def extract_coordinates(self, recipe: ExtractionRecipe, matrix: PolyMatrix):
        """Read coordinates back from `matrix`, or report NotInSpan.

        Returns the list [z_1..z_h] such that instantiating this structure
        at the z's reproduces `matrix` exactly; otherwise a NotInSpan
        carrying the first offending entry.
        """
        if matrix.n != self.n:
            raise ValueError("matrix order differs from structure order")
        table = matrix.table
        outputs: List[Polynomial] = []
        for (i, j), divisor in zip(recipe.positions, recipe.divisors):
            entry = matrix[i, j]
            if not divisor:
                outputs.append(entry)
                continue
            div_idx = [(table.index(name), e) for name, e in divisor]
            divided: Dict[Tuple[int, ...], int] = {}
            for m, c in entry.terms.items():
                exps = list(m)
                for k, e in div_idx:
                    if exps[k] < e:
                        return NotInSpan(entry=(i, j), residual=None, reason="division")
                    exps[k] -= e
                divided[tuple(exps)] = c
            outputs.append(Polynomial(table, divided))
        # Reconstruct and compare entrywise.
        for i in range(self.n):
            for j in range(self.n):
                acc = table.zero()
                for r in range(self.h):
                    cr = self.coeff[i][j][r]
                    if cr.is_zero():
                        continue
                    acc = acc + cr.embed(table) * outputs[r]
                residual = matrix[i, j] - acc
                if not residual.is_zero():
                    return NotInSpan(entry=(i, j), residual=residual, reason="mismatch")
        return outputs

    # -- closure checks ---------------------------------------------------

    def _coord_sets(self, count: int) -> Tuple[Tuple[str, ...], ...]:
        prefixes = ("x", "y", "z")[:count]
        return tuple(
            tuple(f"{p}{i + 1}" for i in range(self.h)) for p in prefixes)

    def verify_pair_closure(self, recipe: Optional[ExtractionRecipe] = None):
        """Symbolically check A(x) A(y) = A(z) for bilinear z.

        Returns a ClosureCertificate carrying the z-forms, or NotClosed.
        """
        recipe = recipe or self.default_recipe()
        xs, ys = self._coord_sets(2)
        table = VarTable(self.params + xs + ys)
        ax = self.instantiate(xs, table)
        ay = self.instantiate(ys, table)
        result = self.extract_coordinates(recipe, ax @ ay)
        if isinstance(result, NotInSpan):
            return NotClosed(order=2, witness=result)
        return ClosureCertificate(
            order=2, coord_sets=(xs, ys), outputs=tuple(result),
            degenerate_single_coordinate=(self.h == 1))

    def verify_triple_closure(self, recipe: Optional[ExtractionRecipe] = None):
        """Symbolically check A(x) A(y) A(z) = A(w) for trilinear w.

        The certificate records whether the pairwise product already closed
        (then the triple law is the pairwise law applied twice) or not (the
        genuinely three-fold case).
        """
        recipe = recipe or self.default_recipe()
        pair = self.verify_pair_closure(recipe)
        xs, ys, zs = self._coord_sets(3)
        table = VarTable(self.params + xs + ys + zs)
        ax = self.instantiate(xs, table)
        ay = self.instantiate(ys, table)
        az = self.instantiate(zs, table)
        result = self.extract_coordinates(recipe, ax @ ay @ az)
        if isinstance(result, NotInSpan):
            return NotClosed(order=3, witness=result)
        return ClosureCertificate(
            order=3, coord_sets=(xs, ys, zs), outputs=tuple(result),
            degenerate_single_coordinate=(self.h == 1),
            pairwise_failure=pair if isinstance(pair, NotClosed) else None)

    # -- block lifting ------------------------------------------------------

    def block_compose(self, inner: "LinearStructure",
                      outer_recipe: Optional[ExtractionRecipe] = None,
                      inner_recipe: Optional[ExtractionRecipe] = None):
        """Lift to an (n*m) x (n*m) structure with blocks P_ij = sum_r L[i][j][r] A_r.

        A_r is `inner` instantiated on coordinate slice r; coordinates are
        slice-major (all inner coordinates of outer slot 1, then slot 2, ...).
        Returns (structure, recipe); the recipe is derived from the factors'
        recipes when both are given (or default to first-row).
        """
        if set(self.params) & set(inner.params):
            raise ParameterCollision(sorted(set(self.params) & set(inner.params))[0])
        outer_recipe = outer_recipe or self.default_recipe()
        inner_recipe = inner_recipe or inner.default_recipe()
        n, m = self.n, inner.n
        H, hin = self.h, inner.h
        params = self.params + inner.params
        ptable = VarTable(params)
        zero = ptable.zero()
        N = n * m
        coeff = [[[zero for _ in range(H * hin)] for _ in range(N)] for _ in range(N)]
        for i in range(n):
            for j in range(n):
                for r in range(H):
                    outer_c = self.coeff[i][j][r]
                    if outer_c.is_zero():
                        continue
                    oc = outer_c.embed(ptable)
                    for a in range(m):
                        for b in range(m):
                            for s in range(hin):
                                inner_c = inner.coeff[a][b][s]
                                if inner_c.is_zero():
                                    continue
                                cell = coeff[i * m + a][j * m + b]
                                cell[r * hin + s] = cell[r * hin + s] + oc * inner_c.embed(ptable)
        lifted = LinearStructure(N, H * hin, params, coeff)

        positions = []
        divisors = []
        for r in range(H):
            (oi, oj) = outer_recipe.positions[r]
            od = outer_recipe.divisors[r]
            for s in range(hin):
                (ii, ij) = inner_recipe.positions[s]
                idv = inner_recipe.divisors[s]
                positions.append((oi * m + ii, oj * m + ij))
                divisors.append(tuple(od) + tuple(idv))  # params are disjoint
        recipe = ExtractionRecipe(tuple(positions), tuple(divisors))
        return lifted, recipe

    def with_param_order(self, names: Sequence[str]) -> "LinearStructure":
        """Same structure with the parameter table reordered to `names`."""
        names = tuple(names)
        if set(names) != set(self.params) or len(names) != len(self.params):
            raise ValueError("names must be a permutation of the parameters")
        table = VarTable(names)
        coeff = [[[self.coeff[i][j][r].embed(table) for r in range(self.h)]
                  for j in range(self.n)]
                 for i in range(self.n)]
        return LinearStructure(self.n, self.h, names, coeff)


def companion_structure(monic_coeffs: Sequence[int]) -> LinearStructure:
    """Structure of x1*I + x2*M + ... + xn*M^(n-1) for the companion matrix M
    of x^n + a_1 x^(n-1) + ... + a_n.  Its determinant is the norm form of
    the corresponding algebraic integer, so pairwise closure always holds;
    coordinates are read from the first column.
    """
    coeffs = [int(a) for a in monic_coeffs]
    n = len(coeffs)
    if n < 1:
        raise ValueError("need at least one coefficient")
    # M maps e_k -> e_{k+1} for k < n and e_n -> -(a_n e_1 + ... + a_1 e_n).
    M = [[0] * n for _ in range(n)]
    for k in range(n - 1):
        M[k + 1][k] = 1
    for i in range(n):
        M[i][n - 1] = -coeffs[n - 1 - i]
    powers = [[[1 if i == j else 0 for j in range(n)] for i in range(n)]]
    for _ in range(n - 1):
        prev = powers[-1]
        powers.append([
            [sum(prev[i][k] * M[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)
        ])
    empty = VarTable(())
    coeff = [[[empty.const(powers[r][i][j]) for r in range(n)]
              for j in range(n)]
             for i in range(n)]
    return LinearStructure(n, n, (), coeff)
