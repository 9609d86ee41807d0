#include <catch2/catch_amalgamated.hpp>

#include <jetcheck/jetcheck.hpp>

#include "test_util.hpp"

using namespace jetcheck;
using testutil::int_matrix;
using testutil::rationals;

namespace {

std::vector<Rational> unit(std::size_t dim, std::size_t pos) {
    std::vector<Rational> v(dim);
    v[pos] = 1;
    return v;
}

using Path = std::vector<std::pair<int, int>>;

} // namespace

TEST_CASE("assembling the tangent matrix in jet coordinates") {
    const Jet a = zero_jet(1, 1, 1);
    const TangentSubspace V = TangentSubspace::make({unit(3, 1)});
    FiberPoint z = zero_fiber(1, 1, 1);
    z.values[0] = 7;

    CHECK(assemble_matrix(a, V, z) == int_matrix({{0, 1}, {1, 0}, {0, 7}}));
    CHECK(assemble_matrix(a, V, zero_fiber(1, 1, 1)) ==
          int_matrix({{0, 1}, {1, 0}, {0, 0}}));
    CHECK_THROWS_AS(assemble_matrix(a, TangentSubspace::make({unit(4, 1)}), z),
                    invalid_input);

    SECTION("top-level rows duplicate shared fiber variables") {
        const Jet flat = zero_jet(2, 1, 1);
        const TangentSubspace w = TangentSubspace::make({unit(5, 2)});
        FiberPoint zz = zero_fiber(2, 1, 1);
        zz.values = rationals({2, 3, 4});
        CHECK(assemble_matrix(flat, w, zz) ==
              int_matrix({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}, {0, 2, 3}, {0, 3, 4}}));
    }

    SECTION("rows below the top level never depend on the fiber point") {
        for (int c = 1; c <= 2; ++c) {
            const StratumInstance inst = degenerate_witness(2, 2, 2, c);
            const JetDims dims = jet_dims(2, 2, 2);
            const std::int64_t below = rows_below_top(dims);
            FiberPoint moved = inst.z0;
            for (std::size_t i = 0; i < moved.values.size(); ++i)
                moved.values[i] = Rational(static_cast<long long>(3 * i + 1));
            const RationalMatrix at_zero = assemble_matrix(inst.a, inst.V, inst.z0);
            const RationalMatrix at_moved = assemble_matrix(inst.a, inst.V, moved);
            for (std::int64_t i = 0; i < below; ++i)
                CHECK(at_zero.row(static_cast<std::size_t>(i)) ==
                      at_moved.row(static_cast<std::size_t>(i)));
        }
    }
}

TEST_CASE("counting rows below the top derivative level") {
    CHECK(rows_below_top(jet_dims(1, 1, 1)) == 2);
    CHECK(rows_below_top(jet_dims(2, 3, 0)) == 2);
    CHECK(rows_below_top(jet_dims(2, 1, 1)) == 3);
}

TEST_CASE("projected surjectivity hypothesis") {
    const Jet a = zero_jet(1, 1, 1);
    CHECK(check_hypothesis(a, TangentSubspace::make({unit(3, 1)})));
    CHECK_FALSE(check_hypothesis(a, TangentSubspace::make({unit(3, 2)})));

    SECTION("order zero jets always project onto the base") {
        const Jet flat = zero_jet(1, 1, 0);
        CHECK(check_hypothesis(flat, TangentSubspace::make({unit(2, 1)})));
        CHECK(check_hypothesis(flat, TangentSubspace::make({unit(2, 0)})));
    }
}

TEST_CASE("classifying fiber points against the jet dimension") {
    const Jet a = zero_jet(1, 1, 1);
    const TangentSubspace V = TangentSubspace::make({unit(3, 1), unit(3, 0)});

    FiberPoint z = zero_fiber(1, 1, 1);
    z.values[0] = 1;
    const Classification away = classify(a, V, z);
    CHECK(away.rank == 3);
    CHECK_FALSE(away.in_Z);

    const Classification inside = classify(a, V, zero_fiber(1, 1, 1));
    CHECK(inside.rank == 2);
    CHECK(inside.in_Z);

    CHECK_THROWS_AS(classify(a, TangentSubspace::make({unit(3, 2)}), z),
                    precondition_error);
}

TEST_CASE("predicted number of independent equations") {
    CHECK(theta_count(2, 1, 1, 1, 4) == 2);
    CHECK(theta_count(1, 1, 1, 1, 2) == 1);
    CHECK(theta_count(2, 1, 1, 2, 4) == 1);
    CHECK(theta_count(2, 1, 1, 2, 3) == 3);

    CHECK_THROWS_AS(theta_count(1, 1, 1, 0, 2), invalid_input);
    CHECK_THROWS_AS(theta_count(1, 1, 1, 3, 2), invalid_input);
    CHECK_THROWS_AS(theta_count(1, 1, 1, 1, 1), invalid_input);
    CHECK_THROWS_AS(theta_count(1, 1, 1, 1, 3), invalid_input);
}

TEST_CASE("complement patterns and the staircase path") {
    const SubmatrixPattern hat =
        complement_pattern(SubmatrixPattern{{1, 2}, {1, 2}}, 3, 3);
    CHECK(hat.rows == std::vector<int>{3});
    CHECK(hat.cols == std::vector<int>{3});

    const SubmatrixPattern wide = complement_pattern(SubmatrixPattern{{1, 3}, {2}}, 3, 4);
    CHECK(wide.rows == std::vector<int>{2});
    CHECK(wide.cols == std::vector<int>{1, 3, 4});

    CHECK_THROWS_AS(complement_pattern(SubmatrixPattern{{4}, {1}}, 3, 3), invalid_input);

    CHECK(staircase_path(SubmatrixPattern{{4, 5}, {5, 6}}) ==
          Path{{4, 5}, {4, 6}, {5, 6}});
    CHECK(staircase_path(SubmatrixPattern{{3}, {4}}) == Path{{3, 4}});
    CHECK(staircase_path(SubmatrixPattern{{3}, {4, 5, 6}}) ==
          Path{{3, 4}, {3, 5}, {3, 6}});
    CHECK(staircase_path(SubmatrixPattern{{3, 4}, {}}).empty());
    CHECK(staircase_path(SubmatrixPattern{{}, {4}}).empty());
    CHECK_THROWS_AS(staircase_path(SubmatrixPattern{{}, {}}), precondition_error);
}

TEST_CASE("full verification on a hand-checked instance") {
    const StratumInstance inst{zero_jet(1, 1, 1),
                               TangentSubspace::make({unit(3, 1), unit(3, 0)}),
                               zero_fiber(1, 1, 1)};
    const VerificationReport rep = verify_core(inst);

    CHECK(rep.n == 1);
    CHECK(rep.m == 2);
    CHECK(rep.c == 1);
    CHECK(rep.rank == 2);
    CHECK(rep.theta == 1);
    CHECK(rep.mstar.rows == std::vector<int>{1, 2});
    CHECK(rep.mstar.cols == std::vector<int>{1, 2});
    CHECK(rep.hat.rows == std::vector<int>{3});
    CHECK(rep.hat.cols == std::vector<int>{3});
    CHECK(rep.path == Path{{3, 3}});
    CHECK(rep.det_mstar == -1);
    CHECK(rep.jacobian_block.at(0, 0) == -1);
    CHECK(rep.jacobian_rank == 1);
    CHECK(rep.vanishing_minors_ok);
    CHECK(rep.path_vars_distinct_ok);
    CHECK(rep.semiperimeter_ok);
    CHECK(rep.diagonal_ok);
    CHECK(rep.uppertriangle_zero_ok);
    CHECK(rep.pass);
}

TEST_CASE("verification preconditions") {
    StratumInstance transverse = degenerate_witness(1, 1, 1, 1);
    transverse.z0.values[0] = 1;
    CHECK_THROWS_AS(verify_core(transverse), precondition_error);

    const StratumInstance bad{zero_jet(1, 1, 1), TangentSubspace::make({unit(3, 2)}),
                              zero_fiber(1, 1, 1)};
    CHECK_THROWS_AS(verify_core(bad), precondition_error);

    StratumInstance mismatched = degenerate_witness(1, 1, 1, 1);
    mismatched.z0 = zero_fiber(2, 1, 1);
    CHECK_THROWS_AS(verify_core(mismatched), invalid_input);
}

TEST_CASE("order zero instances verify end to end") {
    const StratumInstance inst{zero_jet(1, 1, 0), TangentSubspace::make({unit(2, 0)}),
                               zero_fiber(1, 1, 0)};
    const VerificationReport rep = verify_core(inst);
    CHECK(rep.rank == 1);
    CHECK(rep.theta == 1);
    CHECK(rep.path == Path{{2, 2}});
    CHECK(rep.det_mstar == 1);
    CHECK(rep.pass);
}

TEST_CASE("canonical degenerate witnesses") {
    CHECK_THROWS_AS(degenerate_witness(1, 1, 1, 0), invalid_input);
    CHECK_THROWS_AS(degenerate_witness(1, 1, 1, 2), invalid_input);
    CHECK_THROWS_AS(degenerate_witness(1, 1, 0, 1), invalid_input);
    CHECK_THROWS_AS(degenerate_witness(0, 1, 1, 1), invalid_input);

    SECTION("one input dimension") {
        const StratumInstance inst = degenerate_witness(1, 1, 1, 1);
        const VerificationReport rep = verify_core(inst);
        CHECK(rep.m == 2);
        CHECK(rep.rank == 2);
        CHECK(rep.theta == 1);
        CHECK(rep.mstar.rows == std::vector<int>{1, 2});
        CHECK(rep.mstar.cols == std::vector<int>{1, 2});
        CHECK(rep.hat.rows == std::vector<int>{3});
        CHECK(rep.hat.cols == std::vector<int>{3});
        CHECK(rep.det_mstar == 1);
        CHECK(rep.jacobian_block.at(0, 0) == 1);
        CHECK(rep.pass);
    }

    SECTION("two input dimensions, corank one") {
        const VerificationReport rep = verify_core(degenerate_witness(2, 1, 1, 1));
        CHECK(rep.m == 4);
        CHECK(rep.rank == 4);
        CHECK(rep.theta == 2);
        CHECK(rep.mstar.rows == std::vector<int>{1, 2, 3, 4});
        CHECK(rep.mstar.cols == std::vector<int>{1, 2, 3, 4});
        CHECK(rep.hat.rows == std::vector<int>{5});
        CHECK(rep.hat.cols == std::vector<int>{5, 6});
        CHECK(rep.path == Path{{5, 5}, {5, 6}});
        CHECK(rep.pass);
    }

    SECTION("two input dimensions, corank two") {
        const VerificationReport rep = verify_core(degenerate_witness(2, 1, 1, 2));
        CHECK(rep.m == 3);
        CHECK(rep.rank == 3);
        CHECK(rep.theta == 3);
        CHECK(rep.mstar.rows == std::vector<int>{1, 2, 3});
        CHECK(rep.mstar.cols == std::vector<int>{1, 2, 3});
        CHECK(rep.hat.rows == std::vector<int>{4, 5});
        CHECK(rep.hat.cols == std::vector<int>{4, 5});
        CHECK(rep.path == Path{{4, 4}, {4, 5}, {5, 5}});
        CHECK(rep.pass);
    }

    SECTION("rank, count, and verdict across small shapes") {
        for (int n = 1; n <= 2; ++n)
            for (int q = 1; q <= 2; ++q)
                for (int p = 1; p <= 2; ++p)
                    for (int c = 1; c <= n; ++c) {
                        const StratumInstance inst = degenerate_witness(n, q, p, c);
                        const JetDims dims = jet_dims(n, q, p);
                        CHECK(static_cast<std::int64_t>(inst.V.dim()) == dims.dim_jet - c);
                        const VerificationReport rep = verify_core(inst);
                        CHECK(rep.rank == dims.dim_jet - c);
                        CHECK(rep.theta == n + c - 1);
                        CHECK(rep.pass);
                    }
    }
}

TEST_CASE("the verdict only sees the subspace, not its basis") {
    const StratumInstance base = degenerate_witness(2, 1, 1, 1);
    const VerificationReport expected = verify_core(base);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        StratumInstance rotated = base;
        rotated.V = rotate_basis(base.V, seed);
        REQUIRE(rotated.V.dim() == base.V.dim());
        const VerificationReport rep = verify_core(rotated);
        CHECK(rep.rank == expected.rank);
        CHECK(rep.c == expected.c);
        CHECK(rep.theta == expected.theta);
        CHECK(rep.pass);
    }
}
