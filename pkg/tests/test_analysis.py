"""Verification engines: relation reports, constraint systems, finite-field
enumeration, span/irreducibility machinery, quotient factoring."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uvbraid.analysis import (
    burnside_dim,
    classify_virtual_point,
    enumerate_solutions_mod_p,
    factor_check,
    forbidden_moves,
    generate_constraints,
    generic_rep,
    invariant_check,
    reducibility_criterion,
    spin,
    verify_relations,
)
from uvbraid.groups import Word, make_spec, relations, rho, sigma, word
from uvbraid.matrices import Matrix
from uvbraid.reps import build_local_rep
from uvbraid.scalars import GaussianRational, PolyRing


class TestVerifyRelations:
    def test_symbolic_pass(self):
        rep = build_local_rep("upsilon", make_spec("uv", 4, 2))
        report = verify_relations(rep)
        assert report.all_passed
        assert len(report.outcomes) == 18
        assert all(o.residue is None for o in report.outcomes)

    def test_failure_reports_offending_entry(self):
        # upsilon does not satisfy the extra involution sigma^2 = 1
        vt = make_spec("vt", 3, 1)
        rep = build_local_rep("upsilon", vt)
        report = verify_relations(rep)
        failed = {o.tag for o in report.failed}
        assert failed == {"INV[i=1,t=1]", "INV[i=2,t=1]"}
        bad = report.failed[0]
        assert bad.residue is not None
        assert "entry" in bad.detail

    def test_blockless_generators_are_skipped_not_checked(self):
        rep = build_local_rep("burau", make_spec("vb", 4))
        report = verify_relations(rep)
        assert report.all_passed
        statuses = {o.tag: o.status for o in report.outcomes}
        assert statuses["PR1[i=1]"] == "skipped"
        assert statuses["BR[i=1,t=1]"] == "pass"

    def test_sampled_mode_is_deterministic_per_seed(self):
        rep = build_local_rep("upsilon", make_spec("uv", 3, 2))
        r1 = verify_relations(rep, mode="sampled", seed=7, samples=4)
        r2 = verify_relations(rep, mode="sampled", seed=7, samples=4)
        assert r1.to_dict() == r2.to_dict()
        assert r1.all_passed and r1.mode == "sampled"

    def test_sampled_mode_catches_generic_failure(self):
        vt = make_spec("vt", 3, 1)
        rep = build_local_rep("upsilon", vt)
        report = verify_relations(rep, mode="sampled", seed=0)
        assert {o.tag for o in report.failed} == {"INV[i=1,t=1]", "INV[i=2,t=1]"}
        assert "at {" in report.failed[0].detail

    def test_quotient_spec_override(self):
        # verify a virtual-group family against the welded relation set
        uv = make_spec("uv", 3, 1)
        uw = make_spec("uw", 3, 1)
        rep = build_local_rep("upsilon", uv)
        report = verify_relations(rep, spec=uw)
        assert {o.tag for o in report.failed} == {"WR1[i=1,t=1]"}

    def test_strand_count_mismatch_rejected(self):
        rep = build_local_rep("upsilon", make_spec("uv", 3, 1))
        with pytest.raises(ValueError):
            verify_relations(rep, spec=make_spec("uv", 4, 1))

    def test_unknown_mode_rejected(self):
        rep = build_local_rep("upsilon", make_spec("uv", 3, 1))
        with pytest.raises(ValueError):
            verify_relations(rep, mode="fuzzy")


class TestGenerateConstraints:
    def test_fifteen_equations_in_eight_unknowns(self):
        system = generate_constraints(2, make_spec("uv", 3, 1))
        assert len(system.equations) == 15
        assert system.unknowns == (
            "r1", "r2", "r3", "r4", "s1_1", "s2_1", "s3_1", "s4_1"
        )

    def test_matches_hand_derived_system_up_to_scalar(self):
        system = generate_constraints(2, make_spec("uv", 3, 1))
        ring = system.ring
        r1, r2, r3, r4 = (ring.rf(f"r{j}") for j in (1, 2, 3, 4))
        s1, s2, s3, s4 = (ring.rf(f"s{j}_1") for j in (1, 2, 3, 4))
        expected = [
            r1 * (1 - r1 - r2 * r3),
            r1 * r2 * r4,
            r1 * r3 * r4,
            r1 * r4 * (r1 - r4),
            r4 * (1 - r2 * r3 - r4),
            r1 * r1 + r2 * r3 - 1,
            r2 * (r1 + r4),
            r3 * (r1 + r4),
            r2 * r3 + r4 * r4 - 1,
            r1 * (s1 + r2 * s3 - 1),
            r1 * (s2 + r2 * s4 - r2),
            r1 * r4 * s3,
            r1 * r4 * (s1 - s4),
            r4 * (r2 - r2 * s1 - s2),
            r4 * (1 - r2 * s3 - s4),
        ]
        got = {e.key() for e in system.equations}
        want = {f.num.monic().key() for f in expected}
        assert got == want

    def test_provenance_aggregates_duplicate_sources(self):
        system = generate_constraints(2, make_spec("uv", 3, 1))
        by_poly = dict(zip((str(e) for e in system.equations), system.provenance))
        assert by_poly["r1^2 + r2*r3 - 1"] == ["PR3[i=1]", "PR3[i=2]"]

    def test_welded_addition_over_antidiagonal_block(self):
        system = generate_constraints(
            2, make_spec("uw", 3, 1), ["WR1[i=1,t=1]"], rho_form="antidiagonal"
        )
        ring = system.ring
        r2 = ring.rf("r2")
        s1, s3, s4 = ring.rf("s1_1"), ring.rf("s3_1"), ring.rf("s4_1")
        expected = [s1 * (1 - r2 * s3), r2 * s1 * s4, s4 * (1 - r2 * s3)]
        assert {e.key() for e in system.equations} == {
            f.num.monic().key() for f in expected
        }

    def test_relation_subset_by_tag(self):
        system = generate_constraints(
            2, make_spec("uv", 3, 1), ["PR1[i=1]", "PR3[i=1]"]
        )
        assert len(system.equations) == 9
        assert all(v.startswith("r") for v in system.unknowns)
        with pytest.raises(ValueError, match="tags"):
            generate_constraints(2, make_spec("uv", 3, 1), ["PR9[i=1]"])

    def test_three_by_three_blocks_supported(self):
        system = generate_constraints(3, make_spec("uv", 3, 1), ["PR3[i=1]"])
        assert any(str(v) == "r9" for v in system.unknowns)
        with pytest.raises(ValueError):
            generate_constraints(4, make_spec("uv", 3, 1))
        with pytest.raises(ValueError):
            generate_constraints(3, make_spec("uv", 3, 1), rho_form="antidiagonal")

    def test_classified_families_annihilate_the_system(self):
        """Substituting each classified family's block entries into the
        generated equations must give identically zero, family by family."""
        system = generate_constraints(2, make_spec("uv", 3, 1))
        ups = build_local_rep("upsilon", make_spec("uv", 3, 1))
        ring = ups.ring
        r2 = ring.rf("r2")
        mapping = {
            "r1": ring.rf(0), "r2": r2, "r3": 1 / r2, "r4": ring.rf(0),
            "s1_1": ring.rf("s1_1"), "s2_1": ring.rf("s2_1"),
            "s3_1": ring.rf("s3_1"), "s4_1": ring.rf("s4_1"),
        }
        assert all(v.is_zero() for v in system.substitute(mapping, ring))

    def test_omega_families_solve_the_welded_system(self):
        system = generate_constraints(
            2, make_spec("uw", 3, 1), ["WR1[i=1,t=1]"], rho_form="antidiagonal"
        )
        uw = make_spec("uw", 3, 1)
        for fam in ("omega1", "omega2", "omega3"):
            rep = build_local_rep(fam, uw)
            blk = rep.sigma_blocks[1]
            mapping = {
                "r2": rep.ring.rf("r2"),
                "s1_1": blk.rows[0][0], "s3_1": blk.rows[1][0],
                "s4_1": blk.rows[1][1],
            }
            values = system.substitute(mapping, rep.ring)
            assert all(v.is_zero() for v in values), fam


class TestModP:
    def test_seven_solutions_mod_seven(self):
        system = generate_constraints(
            2, make_spec("uv", 3, 1), ["PR1[i=1]", "PR3[i=1]"]
        )
        scan = enumerate_solutions_mod_p(system, 7)
        assert scan.count == 7

    def test_classification_buckets(self):
        system = generate_constraints(
            2, make_spec("uv", 3, 1), ["PR1[i=1]", "PR3[i=1]"]
        )
        scan = enumerate_solutions_mod_p(system, 5)
        kinds = sorted(classify_virtual_point(s, 5) for s in scan.solutions)
        assert kinds == ["antidiagonal"] * 4 + ["identity"]
        for s in scan.solutions:
            if classify_virtual_point(s, 5) == "antidiagonal":
                assert s["r2"] * s["r3"] % 5 == 1

    def test_identity_bucket_forces_identity_crossing_block(self):
        full = generate_constraints(2, make_spec("uv", 3, 1))
        fixed = {"r1": 1, "r2": 0, "r3": 0, "r4": 1}
        sub = enumerate_solutions_mod_p(full, 5, fixed=fixed)
        assert sub.count == 1
        (sol,) = sub.solutions
        assert (sol["s1_1"], sol["s2_1"], sol["s3_1"], sol["s4_1"]) == (1, 0, 0, 1)

    def test_invertibility_constraints_thin_the_count(self):
        system = generate_constraints(2, make_spec("uv", 3, 1), ["PR3[i=1]"])
        gen = generic_rep(2, make_spec("uv", 3, 1))
        det = gen.rho_block.det().num
        plain = enumerate_solutions_mod_p(system, 5)
        inv = enumerate_solutions_mod_p(system, 5, [det])
        assert inv.count <= plain.count
        assert all(
            (s["r1"] * s["r4"] - s["r2"] * s["r3"]) % 5 != 0 for s in inv.solutions
        )

    def test_imaginary_coefficients_rejected(self):
        ring = PolyRing(("x",))
        from uvbraid.analysis import ConstraintSystem
        from uvbraid.scalars import G_I

        eq = (ring.rf("x") * ring.rf(G_I)).num
        system = ConstraintSystem(
            block_size=2, spec=make_spec("uv", 3, 1), ring=ring,
            unknowns=("x",), equations=[eq], provenance=[["synthetic"]],
        )
        with pytest.raises(ValueError, match="imaginary"):
            enumerate_solutions_mod_p(system, 5)

    def test_scale_guards(self):
        system = generate_constraints(2, make_spec("uv", 3, 1))
        with pytest.raises(ValueError):
            enumerate_solutions_mod_p(system, 4)
        with pytest.raises(ValueError):
            enumerate_solutions_mod_p(system, 17)
        with pytest.raises(ValueError, match="desk scale"):
            enumerate_solutions_mod_p(system, 13)  # 13^8 grid points


def _images(rep):
    return [m for _g, m in rep.generator_images()]


class TestSpanEngines:
    def test_identity_algebra_is_one_dimensional(self):
        ring = PolyRing(("t",))
        assert burnside_dim([Matrix.identity(ring, 2)]) == 1

    def test_irreducible_sample_reaches_full_algebra(self):
        spec = make_spec("uv", 3, 1)
        rep = build_local_rep(
            "upsilon-prime", spec,
            {"s1_1": 1, "s2_1": 2, "s3_1": 3, "s4_1": 4},
        )
        assert burnside_dim(_images(rep)) == 9

    def test_reducible_sample_stalls_below_full(self):
        spec = make_spec("uv", 3, 1)
        rep = build_local_rep(
            "upsilon-prime", spec,
            {"s1_1": 2, "s2_1": -1, "s3_1": 3, "s4_1": -2},
        )
        assert burnside_dim(_images(rep)) == 7

    def test_burnside_input_validation(self):
        ring = PolyRing(("t",))
        with pytest.raises(ValueError):
            burnside_dim([])
        with pytest.raises(ValueError):
            burnside_dim([Matrix.identity(ring, 2), Matrix.identity(ring, 3)])

    def test_spin_of_all_ones_under_permutations(self):
        spec = make_spec("uv", 4, 1)
        rep = build_local_rep(
            "upsilon-prime", spec,
            {"s1_1": 1, "s2_1": 0, "s3_1": 0, "s4_1": 1},
        )
        perms = [m for g, m in rep.generator_images() if g.kind == "rho"]
        ring = rep.ring
        ones = Matrix.column(ring, [1] * 4)
        assert len(spin(perms, [ones])) == 1

    def test_spin_of_difference_vector_spans_sum_zero_space(self):
        for n in (3, 4, 5):
            spec = make_spec("uv", n, 1)
            rep = build_local_rep(
                "upsilon-prime", spec,
                {"s1_1": 1, "s2_1": 0, "s3_1": 0, "s4_1": 1},
            )
            perms = [m for g, m in rep.generator_images() if g.kind == "rho"]
            ring = rep.ring
            d12 = Matrix.column(ring, [1, -1] + [0] * (n - 2))
            basis = spin(perms, [d12])
            assert len(basis) == n - 1
            # the span is sum-zero, so e2 - e3 reduces to nothing new
            d23 = Matrix.column(ring, [0, 1, -1] + [0] * (n - 3))
            assert len(spin(perms, basis + [d23])) == n - 1

    def test_spin_of_basis_vector_fills_space(self):
        spec = make_spec("uv", 3, 1)
        rep = build_local_rep(
            "upsilon-prime", spec,
            {"s1_1": 1, "s2_1": 0, "s3_1": 0, "s4_1": 1},
        )
        perms = [m for g, m in rep.generator_images() if g.kind == "rho"]
        e1 = Matrix.column(rep.ring, [1, 0, 0])
        assert len(spin(perms, [e1])) == 3

    def test_invariant_check_column_and_row(self):
        spec = make_spec("uv", 3, 2)
        rep = build_local_rep(
            "epsilon1", spec,
            {"r6": 2, "s5_1": 1, "s6_1": 2, "s8_1": 3, "s9_1": 5,
             "s5_2": 2, "s6_2": 1, "s8_2": 1, "s9_2": 1},
        )
        gens = _images(rep)
        e1 = Matrix.column(rep.ring, [1, 0, 0, 0])
        assert invariant_check(gens, e1, "column")
        assert not invariant_check(gens, Matrix.column(rep.ring, [0, 1, 0, 0]), "column")

    def test_invariant_check_works_symbolically(self):
        rep = build_local_rep("epsilon1", make_spec("uv", 3, 2))
        e1 = Matrix.column(rep.ring, [1, 0, 0, 0])
        assert invariant_check(_images(rep), e1, "column")

    def test_invariant_check_rejects_bad_inputs(self):
        ring = PolyRing(("t",))
        m = Matrix.identity(ring, 2)
        with pytest.raises(ValueError):
            invariant_check([m], Matrix.column(ring, [0, 0]), "column")
        with pytest.raises(ValueError):
            invariant_check([m], Matrix.column(ring, [1, 0]), "row")
        with pytest.raises(ValueError):
            invariant_check([m], Matrix.column(ring, [1, 0]), "diagonal")


class TestReducibilityCriterion:
    def test_row_sum_branch_with_column_witness(self):
        spec = make_spec("uv", 3, 1)
        res = reducibility_criterion(
            "upsilon-prime", spec, {"s1_1": 2, "s2_1": -1, "s3_1": 3, "s4_1": -2}
        )
        assert res.verdict == "reducible" and res.witness_side == "column"
        rep = build_local_rep(
            "upsilon-prime", spec, {"s1_1": 2, "s2_1": -1, "s3_1": 3, "s4_1": -2}
        )
        assert invariant_check(_images(rep), res.witness, "column")

    def test_column_sum_branch_with_row_witness(self):
        spec = make_spec("uv", 3, 1)
        res = reducibility_criterion(
            "upsilon-prime", spec, {"s1_1": 2, "s2_1": 3, "s3_1": -1, "s4_1": -2}
        )
        assert res.verdict == "reducible" and res.witness_side == "row"

    def test_generic_point_is_irreducible(self):
        res = reducibility_criterion(
            "upsilon-prime", make_spec("uv", 3, 1),
            {"s1_1": 1, "s2_1": 2, "s3_1": 3, "s4_1": 4},
        )
        assert res.verdict == "irreducible" and res.witness is None

    def test_mixed_types_quantify_over_all(self):
        spec = make_spec("uv", 3, 2)
        params = {
            "s1_1": 2, "s2_1": -1, "s3_1": 3, "s4_1": -2,  # on the row locus
            "s1_2": 1, "s2_2": 2, "s3_2": 3, "s4_2": 4,    # off it
        }
        res = reducibility_criterion("upsilon-prime", spec, params)
        assert res.verdict == "irreducible"
        assert any("all 2 crossing types" in d for d in res.details)

    def test_omega_prime_loci(self):
        spec = make_spec("uw", 3, 1)
        on1 = {"r2": 3, "s2_1": 3, "s3_1": GaussianRational(1) / 3}
        res = reducibility_criterion("omega1p", spec, on1)
        assert res.verdict == "reducible" and res.witness_side == "column"
        off1 = {"r2": 3, "s2_1": 2, "s3_1": 5}
        assert reducibility_criterion("omega1p", spec, off1).verdict == "irreducible"
        on2 = {"r2": 2, "s2_1": 4, "s4_1": -1}  # s2/r2 + s4 = 1
        res2 = reducibility_criterion("omega2p", spec, on2)
        assert res2.verdict == "reducible" and res2.witness_side == "row"
        on3 = {"r2": 2, "s1_1": 3, "s2_1": -4}  # s1 + s2/r2 = 1
        res3 = reducibility_criterion("omega3p", spec, on3)
        assert res3.verdict == "reducible" and res3.witness_side == "column"

    def test_epsilon_families_always_reducible(self):
        spec = make_spec("uv", 4, 2)
        res = reducibility_criterion(
            "epsilon3", spec, {"r6": 2, "s4_1": 1, "s5_1": 3, "s4_2": 2, "s5_2": 1}
        )
        assert res.verdict == "reducible"
        col = [row[0] for row in res.witness.constant_entries()]
        assert col[1] == GaussianRational(1) / 2  # geometric in 1/r6

    def test_epsilon4_dual_reading_is_recorded(self):
        spec = make_spec("uv", 4, 2)
        res = reducibility_criterion(
            "epsilon4", spec, {"r2": 2, "s5_1": 3, "s8_1": 1, "s5_2": 1, "s8_2": 2}
        )
        assert res.verdict == "reducible" and res.witness_side == "row"
        joined = " ".join(res.details)
        assert "r2^-1" in joined and "invariant: True" in joined
        row = res.witness.constant_entries()[0]
        assert row == [GaussianRational(2) ** j for j in range(5)]

    def test_families_without_closed_form_rejected(self):
        with pytest.raises(ValueError, match="criterion"):
            reducibility_criterion(
                "upsilon", make_spec("uv", 3, 1),
                {"r2": 1, "s1_1": 1, "s2_1": 0, "s3_1": 0, "s4_1": 1},
            )

    @given(st.integers(0, 10 ** 6))
    @settings(max_examples=40, deadline=None)
    def test_criterion_matches_burnside_oracle(self, seed):
        rng = random.Random(seed)
        spec = make_spec("uv", 3, 1)
        params = {k: rng.choice([x for x in range(-5, 6) if x])
                  for k in ("s1_1", "s2_1", "s3_1", "s4_1")}
        try:
            rep = build_local_rep("upsilon-prime", spec, params)
        except ValueError:
            return  # singular crossing block; not a representation
        res = reducibility_criterion("upsilon-prime", spec, params)
        dim = burnside_dim(_images(rep))
        assert (res.verdict == "irreducible") == (dim == 9)


class TestFactoring:
    def test_welded_relator_survives_crossing_trivial_map(self):
        uw = make_spec("uw", 4, 1)
        wr1 = [r for r in relations(uw) if r.tag == "WR1[i=1,t=1]"][0]
        out = factor_check(wr1, uw, "piK")
        assert out.verdict == "distinguishes"
        assert (out.lhs_image, out.rhs_image) == ("(1 2)", "(2 3)")
        assert factor_check(wr1, uw, "piP").verdict == "kills"

    def test_relator_word_form(self):
        uw = make_spec("uw", 4, 1)
        wr1 = [r for r in relations(uw) if r.tag == "WR1[i=1,t=1]"][0]
        out = factor_check(wr1.relator(), uw, "piK")
        assert out.verdict == "distinguishes"
        assert out.rhs_image == "id"

    def test_splitting_map_on_forbidden_moves(self):
        spec = make_spec("uv", 3, 2)
        moves = forbidden_moves(spec)
        assert [m.tag for m in moves] == [
            "FM1[i=1,t=1]", "FM2[i=1,t=1]", "FM1[i=1,t=2]", "FM2[i=1,t=2]"
        ]
        for m in moves:
            out = factor_check(m, spec, "phi", t0=1)
            assert out.verdict == "distinguishes"

    def test_splitting_map_kills_defining_relations(self):
        spec = make_spec("uv", 4, 2)
        for rel in relations(spec):
            assert factor_check(rel, spec, "phi", t0=2).verdict == "kills", rel.tag

    def test_unknown_map_rejected(self):
        spec = make_spec("uv", 3, 1)
        with pytest.raises(ValueError):
            factor_check(Word(), spec, "piQ")

    def test_forbidden_move_shapes(self):
        spec = make_spec("uv", 4, 1)
        fm1 = forbidden_moves(spec)[0]
        assert fm1.lhs == word(rho(1), sigma(2, 1), sigma(1, 1))
        assert fm1.rhs == word(sigma(2, 1), sigma(1, 1), rho(2))
        fm2 = forbidden_moves(spec)[1]
        assert fm2.lhs == word(rho(2), sigma(1, 1), sigma(2, 1))
        assert fm2.rhs == word(sigma(1, 1), sigma(2, 1), rho(1))
