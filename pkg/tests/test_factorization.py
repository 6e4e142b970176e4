"""The mirror map, induced homs, bicycle identifications, verdicts."""

import random

import pytest

from mirrorcrit.factorization import (
    build_maps,
    component_linking_cycles,
    g_injection,
    identify_kernel_cokernel,
    induced_f_star,
    induced_ft_star,
    main_theorem_verdict,
    phi_fixed_bicycles,
    psi_fixed_bicycles,
    snake_dimension_report,
    two_torsion_check,
    verify_lattice_preservation,
)
from mirrorcrit.graphs import (
    FIXED,
    LEFT,
    RIGHT,
    InvalidSymmetricGraph,
    Multigraph,
    SymmetricGraph,
)
from mirrorcrit.lattice import FpAbelianGroup, IntMatrix

from conftest import (
    identity_mirror_triangle,
    mirror_cycle,
    running_example,
    single_fixed_edge,
)

# block edge order for the running example: ab, ac, (cb,1), (cb,2), dc, db
# edge order of G: ab, ac, dc, db, cb


@pytest.fixture(scope="module")
def maps():
    return build_maps(running_example().decompose())


def tripod():
    """Two mirrored star centers joined through three axis vertices.

    The graph is K_{2,3}; the axis has three components, so the
    exponent is 2 and kappa(G) = 4 * kappa(G+) * kappa(G-) = 12.
    """
    vertices = ["L1", "F1", "F2", "F3", "R1"]
    edges = [
        ("t1", "L1", "F1"),
        ("t2", "L1", "F2"),
        ("t3", "L1", "F3"),
        ("m1", "R1", "F1"),
        ("m2", "R1", "F2"),
        ("m3", "R1", "F3"),
    ]
    vphi = {"L1": "R1", "R1": "L1", "F1": "F1", "F2": "F2", "F3": "F3"}
    ephi = {"t1": "m1", "m1": "t1", "t2": "m2", "m2": "t2", "t3": "m3", "m3": "t3"}
    vside = {"L1": LEFT, "R1": RIGHT, "F1": FIXED, "F2": FIXED, "F3": FIXED}
    eside = {"t1": LEFT, "t2": LEFT, "t3": LEFT, "m1": RIGHT, "m2": RIGHT, "m3": RIGHT}
    sg = SymmetricGraph(Multigraph(vertices, edges), vphi, ephi, vside, eside)
    return sg.canonical_orientation()


class TestBuildMaps:
    def test_left_edge_column(self, maps):
        # f(ab, 0) = ab + db
        assert maps.f_matrix.column(0) == (1, 0, 0, 1, 0)

    def test_half_edge_columns(self, maps):
        # both halves of cb map to cb itself
        assert maps.f_matrix.column(2) == (0, 0, 0, 0, 1)
        assert maps.f_matrix.column(3) == (0, 0, 0, 0, 1)

    def test_right_edge_column(self, maps):
        # f(0, dc) = dc - ac
        assert maps.f_matrix.column(4) == (0, -1, 1, 0, 0)

    def test_ft_of_fixed_edge(self, maps):
        # f^t(cb) = (half1 + half2, 0)
        cb = [0, 0, 0, 0, 1]
        assert maps.ft_matrix.mul_vector(cb) == [0, 0, 1, 1, 0, 0]

    def test_ft_is_transpose(self, maps):
        assert maps.ft_matrix == maps.f_matrix.transpose()

    def test_psi_is_fixed_point_free_involution(self, maps):
        assert maps.psi_matrix.is_involution()
        n = maps.n_block
        for j in range(n):
            e = [int(i == j) for i in range(n)]
            assert maps.psi_matrix.apply(e) != tuple(e)

    def test_psi_swaps_halves_and_mirrors(self, maps):
        # half1(cb) <-> half2(cb); ab <-> db
        assert maps.psi_matrix.apply([0, 0, 1, 0, 0, 0]) == (0, 0, 0, 1, 0, 0)
        assert maps.psi_matrix.apply([1, 0, 0, 0, 0, 0]) == (0, 0, 0, 0, 0, 1)


class TestLatticePreservation:
    def test_running_example_all_identities(self, maps):
        report = verify_lattice_preservation(maps)
        assert report.passed

    def test_single_fixed_edge(self):
        report = verify_lattice_preservation(build_maps(single_fixed_edge().decompose()))
        assert report.passed
        assert report.subdivision_bonds_vanish

    def test_random_corpus(self, mixed_corpus):
        for g in mixed_corpus:
            assert verify_lattice_preservation(build_maps(g.decompose())).passed


class TestInducedMaps:
    def test_running_example_kernel_and_cokernel(self, maps):
        f_star = induced_f_star(maps)
        assert f_star.source.invariant_factors == (2, 4)
        assert f_star.target.invariant_factors == (8,)
        assert f_star.kernel().invariant_factors == (2,)
        assert f_star.cokernel().invariant_factors == (2,)

    def test_mirror_cycles_injective_with_z2_cokernel(self):
        for n in (2, 3, 5):
            m = build_maps(mirror_cycle(n).decompose())
            f_star = induced_f_star(m)
            assert f_star.kernel().is_trivial()
            assert f_star.cokernel().invariant_factors == (2,)

    def test_single_fixed_edge_zero_map(self):
        m = build_maps(single_fixed_edge().decompose())
        f_star = induced_f_star(m)
        assert f_star.source.is_trivial()
        assert f_star.target.is_trivial()
        assert induced_ft_star(m).source.is_trivial()


class TestTwoTorsion:
    def test_running_example(self, maps):
        report = two_torsion_check(maps)
        assert report.passed
        assert report.ker_f.invariant_factors == (2,)
        assert report.coker_f.invariant_factors == (2,)

    def test_mirror_cycle(self):
        report = two_torsion_check(build_maps(mirror_cycle(3).decompose()))
        assert report.passed
        assert report.ker_f.is_trivial()
        assert report.coker_f.invariant_factors == (2,)

    def test_random_corpus(self, mixed_corpus):
        for g in mixed_corpus:
            report = two_torsion_check(build_maps(g.decompose()))
            assert report.all_two_torsion
            assert report.doubling_witnesses


class TestBicycleSpaces:
    def test_running_example_dims(self, maps):
        assert phi_fixed_bicycles(maps).dim == 1
        assert psi_fixed_bicycles(maps).dim == 1

    def test_running_example_phi_fixed_is_symmetric_square(self, maps):
        space = phi_fixed_bicycles(maps)
        assert space.basis.rows[0] == (1, 1, 1, 1, 0)

    def test_whole_union_is_psi_fixed_bicycle(self, maps):
        space = psi_fixed_bicycles(maps)
        assert space.contains([1, 1, 1, 1, 1, 1])

    def test_one_sided_bicycles_not_psi_fixed(self, maps):
        # the plus graph alone and the minus graph alone are bicycles
        # of the union but are not psi-fixed
        union_bic = maps.pair_union.p_bicycle_space(2)
        plus_only = [1, 1, 1, 1, 0, 0]
        minus_only = [0, 0, 0, 0, 1, 1]
        assert union_bic.contains(plus_only)
        assert union_bic.contains(minus_only)
        space = psi_fixed_bicycles(maps)
        assert not space.contains(plus_only)
        assert not space.contains(minus_only)

    def test_mirror_cycle_dims(self):
        # the whole 2n-cycle is the phi-fixed bicycle; the plus path
        # has no bicycles at all, so nothing is psi-fixed
        m = build_maps(mirror_cycle(4).decompose())
        assert phi_fixed_bicycles(m).dim == 1
        assert psi_fixed_bicycles(m).dim == 0


class TestIdentification:
    def test_running_example(self, maps):
        ident = identify_kernel_cokernel(maps)
        assert ident.coker_matches and ident.ker_matches
        assert ident.coker_order == 2 and ident.ker_order == 2
        assert ident.ker_ft_mod2_dim == 2  # |E_L|
        assert ident.ker_ft_basis_ok
        assert ident.ker_f_psi_fixed_ok
        assert ident.alternate_ker_matches and ident.alternate_coker_matches

    def test_running_example_sum_dimension(self, maps):
        # dim Z^phi = 1 and dim B^phi = 2 meet in the bicycle line, so
        # dim (Z^phi + B^phi) = 2
        ident = identify_kernel_cokernel(maps)
        assert ident.dim_sum_phi == 2
        assert ident.dim_phi_ambient == 3

    def test_quotient_presentations_cross_over(self):
        # mirrored 4-cycle: ker(f*) = 0 and coker(f*) = Z/2; the
        # quotient on the G side gives the kernel, the one on the
        # G+ u G- side the cokernel (not the other way around)
        ident = identify_kernel_cokernel(build_maps(mirror_cycle(2).decompose()))
        assert ident.ker_order == 1 and ident.coker_order == 2
        assert ident.phi_quotient_log2 == 0
        assert ident.psi_quotient_log2 == 1
        assert ident.alternate_ker_matches and ident.alternate_coker_matches

    def test_corpus(self, small_corpus):
        for g in small_corpus:
            ident = identify_kernel_cokernel(build_maps(g.decompose()))
            assert ident.coker_matches and ident.ker_matches
            assert ident.ker_ft_basis_ok and ident.ker_f_psi_fixed_ok
            assert ident.alternate_ker_matches and ident.alternate_coker_matches

    def test_restricted_kernels_are_fixed_bicycle_spaces(self, mixed_corpus):
        # coker(f*) is the kernel of f^t restricted to the bicycles of
        # G, and ker(f*) the kernel of f restricted to the bicycles of
        # G+ u G-; both equal the corresponding fixed subspaces
        from mirrorcrit.modp import kernel as modp_kernel

        for g in mixed_corpus:
            m = build_maps(g.decompose())
            bic_g = m.pair_g.p_bicycle_space(2)
            restricted_ft = modp_kernel(m.ft_mod2).intersection(bic_g)
            assert restricted_ft == phi_fixed_bicycles(m)
            bic_pm = m.pair_union.p_bicycle_space(2)
            restricted_f = modp_kernel(m.f_mod2).intersection(bic_pm)
            assert restricted_f == psi_fixed_bicycles(m)

    def test_f_mod2_maps_bicycles_to_bicycles(self, mixed_corpus):
        # the mod-2 reduction of f carries the bicycle space of the
        # union into the bicycle space of G (functoriality of K/2K)
        for g in mixed_corpus:
            m = build_maps(g.decompose())
            bic_g = m.pair_g.p_bicycle_space(2)
            for row in m.pair_union.p_bicycle_space(2).basis.rows:
                assert bic_g.contains(m.f_mod2.apply(row))


class TestInjection:
    def test_running_example_image_is_shaded_cycle(self, maps):
        report = g_injection(maps)
        assert report.domain_dim == 1
        assert report.injective
        assert report.halves_agree
        assert report.image_in_phi_fixed_bicycles
        assert report.images.rows[0] == (1, 1, 1, 1, 0)

    def test_mirror_cycle_vacuous(self):
        report = g_injection(build_maps(mirror_cycle(3).decompose()))
        assert report.domain_dim == 0
        assert report.injective

    def test_corpus_injective(self, small_corpus):
        for g in small_corpus:
            report = g_injection(build_maps(g.decompose()))
            assert report.halves_agree
            assert report.image_in_phi_fixed_bicycles
            assert report.injective


class TestSnakeDimensions:
    def test_running_example(self, maps):
        snake = snake_dimension_report(maps)
        assert snake.dim_b_psi == 2   # |V_R| + |E^phi| = 1 + 1
        assert snake.dim_b_phi == 2   # |V_R| + |V^phi| - 1 = 1 + 2 - 1
        assert snake.dim_z_psi == 1
        assert snake.dim_z_phi == 1
        assert snake.exponent == 0
        assert snake.column_exactness
        assert snake.bond_dim_plus_formula and snake.bond_dim_formula
        assert snake.cycle_dim_gap_formula
        assert snake.sum_ratio_matches_ker_coker
        assert snake.final_two_power_identity

    def test_mirror_cycle_n3(self):
        snake = snake_dimension_report(build_maps(mirror_cycle(3).decompose()))
        assert snake.exponent == 1
        assert snake.log2_coker - snake.log2_ker == 1
        assert snake.cycle_dim_gap_formula
        assert snake.final_two_power_identity

    def test_single_fixed_edge_trivial(self):
        snake = snake_dimension_report(build_maps(single_fixed_edge().decompose()))
        assert snake.exponent == 0
        assert snake.dim_z_psi == snake.dim_z_phi == 0
        assert snake.bond_dim_plus_formula and snake.bond_dim_formula

    def test_corpus(self, small_corpus):
        for g in small_corpus:
            snake = snake_dimension_report(build_maps(g.decompose()))
            assert snake.column_exactness
            assert snake.bond_dim_plus_formula
            assert snake.bond_dim_formula
            assert snake.cycle_dim_gap_formula
            assert snake.sum_ratio_matches_ker_coker
            assert snake.final_two_power_identity


class TestLinkingCycles:
    def test_mirror_cycle_single_link(self):
        m = build_maps(mirror_cycle(3).decompose())
        basis = component_linking_cycles(m)
        assert len(basis.cycles) == 1
        # the symmetrized path is the whole cycle
        assert basis.cycles[0] == (1,) * 6
        assert basis.independent_and_spanning

    def test_running_example_empty(self, maps):
        basis = component_linking_cycles(maps)
        assert basis.cycles == ()
        assert basis.independent_and_spanning

    def test_three_axis_components(self):
        basis = component_linking_cycles(build_maps(tripod().decompose()))
        assert len(basis.cycles) == 2
        assert basis.independent_and_spanning

    def test_requires_connected_plus(self):
        two = Multigraph(
            ["b", "c", "b2", "c2"],
            [("e", "b", "c"), ("e2", "b2", "c2")],
        )
        g = SymmetricGraph(
            two,
            {v: v for v in two.vertices},
            {"e": "e", "e2": "e2"},
            {v: FIXED for v in two.vertices},
            {"e": FIXED, "e2": FIXED},
        )
        with pytest.raises(ValueError):
            component_linking_cycles(build_maps(g.decompose()))

    def test_corpus(self, small_corpus):
        for g in small_corpus:
            basis = component_linking_cycles(build_maps(g.decompose()))
            assert basis.independent_and_spanning
            assert len(basis.cycles) == g.fixed_subgraph_components()[0] - 1


class TestMainTheoremVerdict:
    def test_running_example(self):
        rep = main_theorem_verdict(running_example())
        assert rep.group_g.invariant_factors == (8,)
        assert rep.group_plus.invariant_factors == (4,)
        assert rep.group_minus.invariant_factors == (2,)
        assert rep.ker_f.invariant_factors == (2,)
        assert rep.coker_f.invariant_factors == (2,)
        assert rep.exponent == 0
        assert (rep.kappa_g, rep.kappa_plus, rep.kappa_minus) == (8, 4, 2)
        assert rep.theorem_applicable
        assert rep.overall_pass
        assert all(v is True for v in rep.verdicts.values())

    def test_mirror_cycle_family(self):
        for n in range(2, 9):
            rep = main_theorem_verdict(mirror_cycle(n))
            assert rep.group_g.invariant_factors == (2 * n,)
            assert rep.group_plus.is_trivial()
            assert rep.group_minus.order() == n
            assert rep.ker_f.is_trivial()
            assert rep.coker_f.invariant_factors == (2,)
            assert rep.exponent == 1
            assert rep.overall_pass

    def test_mirror_cycle_non_splitness(self):
        # for even n the extension 0 -> Z/n -> K -> Z/2 -> 0 does not
        # split: Z/2n and Z/n + Z/2 have different invariant factors
        for n in range(2, 9):
            rep = main_theorem_verdict(mirror_cycle(n))
            split = FpAbelianGroup.quotient(
                2, IntMatrix([[n, 0], [0, 2]])
            )
            if n % 2 == 0:
                assert not rep.group_g.same_type(split)
            else:
                assert rep.group_g.same_type(split)

    def test_order_identity_written_out(self):
        rep = main_theorem_verdict(running_example())
        assert (
            rep.group_plus.order() * rep.group_minus.order() * rep.coker_f.order()
            == rep.group_g.order() * rep.ker_f.order()
        )

    def test_tripod_exponent_two(self):
        rep = main_theorem_verdict(tripod())
        assert rep.exponent == 2
        assert rep.kappa_g == 12
        assert rep.kappa_plus == 1 and rep.kappa_minus == 3
        assert rep.overall_pass

    def test_identity_mirror_triangle_gated(self):
        # valid input whose axis is a cycle: the unconditional checks
        # pass; everything needing the forest hypothesis is n/a, and
        # the counterexample numbers show why the gate exists
        rep = main_theorem_verdict(identity_mirror_triangle())
        assert rep.axis_forest is False
        assert not rep.theorem_applicable
        assert rep.group_g.invariant_factors == (3,)
        assert rep.group_plus.invariant_factors == (6,)
        assert rep.ker_f.invariant_factors == (2,)
        assert rep.coker_f.is_trivial()
        assert rep.verdicts["ratio_is_two_power"] is None
        assert rep.verdicts["g_injective"] is None
        assert rep.verdicts["order_identity"] is True
        assert rep.verdicts["two_torsion"] is True
        assert rep.overall_pass

    def test_empty_axis_gated(self):
        graph = Multigraph(
            ["u1", "u2", "w1", "w2"],
            [("a", "u1", "u2"), ("b", "w1", "w2")],
        )
        g = SymmetricGraph(
            graph,
            {"u1": "w1", "w1": "u1", "u2": "w2", "w2": "u2"},
            {"a": "b", "b": "a"},
            {"u1": LEFT, "u2": LEFT, "w1": RIGHT, "w2": RIGHT},
            {"a": LEFT, "b": RIGHT},
        ).canonical_orientation()
        rep = main_theorem_verdict(g)
        assert rep.axis_nonempty is False
        assert rep.verdicts["ratio_is_two_power"] is None
        assert rep.overall_pass  # unconditional checks still hold

    def test_disconnected_plus_gated(self):
        two = Multigraph(
            ["b", "c", "b2", "c2"],
            [("e", "b", "c"), ("e2", "b2", "c2")],
        )
        g = SymmetricGraph(
            two,
            {v: v for v in two.vertices},
            {"e": "e", "e2": "e2"},
            {v: FIXED for v in two.vertices},
            {"e": FIXED, "e2": FIXED},
        )
        rep = main_theorem_verdict(g)
        assert rep.plus_connected is False
        assert rep.verdicts["snake_bond_dims"] is None
        assert rep.verdicts["corollary_factorization"] is None
        assert rep.overall_pass

    def test_invalid_input_raises(self):
        g = running_example()
        vside = dict(g.vertex_side)
        vside["a"] = FIXED
        bad = SymmetricGraph(
            g.graph, g.vertex_involution, g.edge_involution, vside, g.edge_side
        )
        with pytest.raises(InvalidSymmetricGraph):
            main_theorem_verdict(bad)

    def test_corpus_all_pass(self, small_corpus, mixed_corpus):
        for g in small_corpus + mixed_corpus:
            rep = main_theorem_verdict(g)
            assert rep.overall_pass, {
                k: v for k, v in rep.verdicts.items() if v is False
            }

    def test_connected_corpus_applicable(self, small_corpus):
        for g in small_corpus:
            rep = main_theorem_verdict(g)
            assert rep.theorem_applicable
            assert rep.verdicts["ratio_is_two_power"] is True
            assert rep.verdicts["corollary_factorization"] is True
