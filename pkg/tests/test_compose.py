"""Bilinear/trilinear composition maps and identity verification."""

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matform import catalog, compose
from matform.compose import (
    MultilinearMap,
    NotAUnit,
    WrongFamilyKind,
    ZeroResidual,
    diophantine_chain,
    identity_element,
    invert,
    maps_equal,
    threefold_reduction,
    verify_identity,
    verify_threefold_genuineness,
)
from matform.polyring import VarTable

ivec = st.lists(st.integers(-20, 20), min_size=2, max_size=2).map(tuple)
ivec4 = st.lists(st.integers(-9, 9), min_size=4, max_size=4).map(tuple)


class TestMultilinearMap:
    def test_from_forms_round_trip(self):
        fam = catalog.family("quad2x2")
        cmap = fam.pair_map
        xs = ("x1", "x2")
        ys = ("y1", "y2")
        forms = cmap.forms((xs, ys))
        again = MultilinearMap.from_forms(forms, cmap.params, (xs, ys))
        assert maps_equal(cmap, again)

    def test_from_forms_rejects_non_multilinear(self):
        table = VarTable(("x1", "x2", "y1", "y2"))
        x1 = table.var("x1")
        with pytest.raises(ValueError):
            MultilinearMap.from_forms(
                [x1 * x1, table.zero()], (), (("x1", "x2"), ("y1", "y2")))

    @given(ivec, ivec, st.integers(-5, 5), st.integers(-5, 5))
    def test_apply_matches_forms(self, x, y, p, q):
        cmap = catalog.family("quad2x2").pair_map
        forms = cmap.forms((("x1", "x2"), ("y1", "y2")))
        env = {"p": p, "q": q, "x1": x[0], "x2": x[1], "y1": y[0], "y2": y[1]}
        assert cmap.apply((x, y), (p, q)) == tuple(
            f.eval_int(env) for f in forms)

    @given(ivec, ivec, ivec, st.integers(-5, 5), st.integers(-5, 5))
    def test_bilinearity(self, x, xp, y, p, q):
        cmap = catalog.family("quad2x2").pair_map.specialize((p, q))
        left = cmap.apply((tuple(a + b for a, b in zip(x, xp)), y))
        split = tuple(u + v for u, v in zip(cmap.apply((x, y)),
                                            cmap.apply((xp, y))))
        assert left == split

    @given(ivec, ivec, ivec, st.integers(-3, 3), st.integers(-3, 3),
           st.integers(-3, 3))
    def test_trilinearity(self, x, y, z, a, b, c):
        cmap = catalog.family("threefold_quadratic").triple_map()
        spec = cmap.specialize((a, b, c))
        doubled = tuple(2 * v for v in x)
        assert spec.apply((doubled, y, z)) == tuple(
            2 * v for v in spec.apply((x, y, z)))

    def test_argument_matrix_reproduces_apply(self):
        fam = catalog.family("quartic4x4", (5, -23, 2, -7))
        cmap = fam.pair_map
        x, y = (6, 2, 3, 1), (1, 0, 0, 0)
        N = cmap.argument_matrix((x,), None, free_slot=1)
        assert tuple(sum(N[i][j] * y[j] for j in range(4)) for i in range(4)) \
            == cmap.apply((x, y))

    def test_json_round_trip(self):
        cmap = catalog.family("cubic3x3").pair_map
        again = MultilinearMap.from_json_obj(
            json.loads(json.dumps(cmap.to_json_obj())))
        assert maps_equal(cmap, again)


class TestVerifyIdentity:
    def test_expand_zero_residual(self):
        fam = catalog.family("quad2x2")
        res = verify_identity(fam.form, fam.pair_map, fam.coord_names,
                              method="expand")
        assert isinstance(res, ZeroResidual)

    def test_matrix_route_agrees_with_expansion(self):
        fam = catalog.family("quartic4x4")
        by_matrix = verify_identity(fam.form, fam.pair_map, fam.coord_names,
                                    structure=fam.structure,
                                    recipe=fam.recipe, method="matrix")
        by_expand = verify_identity(fam.form, fam.pair_map, fam.coord_names,
                                    method="expand")
        assert isinstance(by_matrix, ZeroResidual)
        assert isinstance(by_expand, ZeroResidual)

    def test_mutated_map_yields_nonzero_residual(self):
        fam = catalog.family("quad2x2")
        cmap = fam.pair_map
        bad = dict(cmap.coeff)
        key = (0, (0, 0))
        bad[key] = bad[key] + 1
        mutant = MultilinearMap(2, 2, cmap.params, bad)
        res = verify_identity(fam.form, mutant, fam.coord_names,
                              method="expand")
        assert not isinstance(res, ZeroResidual)
        assert not res.is_zero()

    def test_mutated_map_detected_by_matrix_route(self):
        fam = catalog.family("quartic4x4")
        cmap = fam.pair_map
        bad = dict(cmap.coeff)
        key = next(iter(bad))
        bad[key] = bad[key] + 1
        mutant = MultilinearMap(2, 4, cmap.params, bad)
        res = verify_identity(fam.form, mutant, fam.coord_names,
                              structure=fam.structure, recipe=fam.recipe,
                              method="matrix")
        assert not isinstance(res, ZeroResidual)


class TestGroupLaw:
    def test_identity_element(self):
        fam = catalog.family("quartic4x4", (5, -23, 2, -7))
        e = identity_element(4)
        assert e == (1, 0, 0, 0)
        assert fam.pair_map.apply(((6, 2, 3, 1), e)) == (6, 2, 3, 1)
        assert fam.pair_map.apply((e, (6, 2, 3, 1))) == (6, 2, 3, 1)

    def test_invert_round_trip(self):
        fam = catalog.family("quartic4x4", (5, -23, 2, -7))
        x = (6, 2, 3, 1)
        y = invert(fam.pair_map, x)
        assert fam.pair_map.apply((x, y)) == identity_element(4)

    def test_invert_rejects_non_unit(self):
        fam = catalog.family("quad2x2", (0, -1))
        with pytest.raises(NotAUnit):
            invert(fam.pair_map, (3, 1))  # f = 8

    @given(ivec4, ivec4, ivec4)
    @settings(max_examples=25)
    def test_numeric_associativity(self, x, y, z):
        cmap = catalog.family("quartic4x4", (5, -23, 2, -7)).pair_map
        assert cmap.apply((cmap.apply((x, y)), z)) \
            == cmap.apply((x, cmap.apply((y, z))))

    def test_symbolic_associativity_quad(self):
        cmap = catalog.family("quad2x2").pair_map
        xs, ys, zs = ("x1", "x2"), ("y1", "y2"), ("z1", "z2")
        names = cmap.params + xs + ys + zs
        table = VarTable(names)
        xy = cmap.forms((xs, ys), table=table)
        yz = cmap.forms((ys, zs), table=table)
        # (x*y)*z via substitution of the intermediate outputs
        left = [f.substitute({"x1": xy[0], "x2": xy[1],
                              "y1": table.var("z1"), "y2": table.var("z2")})
                for f in cmap.forms((xs, ys), table=table)]
        right = [f.substitute({"y1": yz[0], "y2": yz[1]})
                 for f in cmap.forms((xs, ys), table=table)]
        assert left == right


class TestThreefold:
    def test_reduction_matches_specialized_form(self):
        fam = catalog.family("threefold_quadratic")
        reduced = threefold_reduction(fam.symbolic_form(), fam.param_names,
                                      (-1, 0, -1))
        t = reduced.table
        x1, x2 = t.var("x1"), t.var("x2")
        assert reduced == -(x1 ** 2) - x2 ** 2

    def test_genuineness_wrong_kind(self):
        with pytest.raises(WrongFamilyKind):
            verify_threefold_genuineness(catalog.family("quad2x2"), (0, 1))

    def test_quadratic_witness_is_definite_negative(self):
        fam = catalog.family("threefold_quadratic")
        w = verify_threefold_genuineness(fam, fam.degenerate_witness)
        t = w.table
        x1, x2 = t.var("x1"), t.var("x2")
        assert w == -(x1 ** 2) - x2 ** 2

    def test_triple_identity_quadratic_all_variants(self):
        fam = catalog.family("threefold_quadratic")
        for variant in range(fam.triple_map_count):
            res = verify_identity(fam.form, fam.triple_map(variant),
                                  fam.coord_names, method="expand")
            assert isinstance(res, ZeroResidual)


class TestDiophantineChain:
    @given(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4),
           ivec, ivec, ivec)
    @settings(max_examples=40)
    def test_chain_values_agree(self, a, b, c, x, y, z):
        u, v, w, value = diophantine_chain(a, b, c, x, y, z)

        def q(p):
            return a * p[0] ** 2 + b * p[0] * p[1] + c * p[1] ** 2

        assert value == q(x) * q(y) * q(z)
        assert q(u) == q(v) == q(w) == value

    def test_chain_solutions_of_q_equals_one(self):
        # three solutions of u1^2 - 2*u2^2 = 1 chained together stay on it
        u, v, w, value = diophantine_chain(
            1, 0, -2, (3, 2), (17, 12), (99, 70))
        assert value == 1
