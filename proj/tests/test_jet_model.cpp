#include <catch2/catch_amalgamated.hpp>

#include <jetcheck/jetcheck.hpp>

#include "test_util.hpp"

using namespace jetcheck;
using testutil::rationals;

namespace {

// f determined by its derivative data: monomial coefficient = value / alpha!.
PolynomialMap reassemble(const Jet& a, const FiberPoint& z) {
    const JetLayout layout(a.n, a.q, a.p);
    PolynomialMap f(a.n, a.q, a.p + 1);
    for (int k = 0; k <= a.p; ++k)
        for (const auto& coord : layout.level(k)) {
            const Rational v = jet_value(layout, a, coord.s, coord.alpha);
            if (v != 0) f.set_coeff(coord.s, coord.alpha, v / Rational(factorial_of(coord.alpha)));
        }
    for (const auto& coord : layout.level(a.p + 1)) {
        const Rational v = fiber_value(layout, z, coord.s, coord.alpha);
        if (v != 0) f.set_coeff(coord.s, coord.alpha, v / Rational(factorial_of(coord.alpha)));
    }
    return f;
}

PolynomialMap random_poly(Rng& rng, int n, int q, int degree) {
    PolynomialMap f(n, q, degree);
    for (int s = 1; s <= q; ++s)
        for (int k = 0; k <= degree; ++k)
            for (const auto& alpha : enumerate_multiindices(n, k))
                f.set_coeff(s, alpha, make_rational(rng.int_in(-4, 4), rng.int_in(1, 3)));
    return f;
}

} // namespace

TEST_CASE("polynomial maps store Taylor data sparsely") {
    PolynomialMap f(1, 1, 2);
    f.set_coeff(1, {2}, 1);
    CHECK(f.coeff(1, {2}) == 1);
    CHECK(f.coeff(1, {1}) == 0);
    CHECK(f.eval(rationals({3})) == rationals({9}));
    f.set_coeff(1, {2}, 0);
    CHECK(f.coeffs.empty());

    CHECK_THROWS_AS(PolynomialMap(0, 1, 1), invalid_input);
    CHECK_THROWS_AS(PolynomialMap(1, 1, -1), invalid_input);
    CHECK_THROWS_AS(f.set_coeff(2, {1}, 1), invalid_input);
    CHECK_THROWS_AS(f.set_coeff(1, {1, 1}, 1), invalid_input);
    CHECK_THROWS_AS(f.set_coeff(1, {3}, 1), invalid_input);
    CHECK_THROWS_AS(f.eval(rationals({1, 2})), invalid_input);

    SECTION("partial derivatives") {
        PolynomialMap g(2, 1, 3);
        g.set_coeff(1, {2, 1}, make_rational(1, 2));
        const PolynomialMap gx = g.partial(1);
        CHECK(gx.coeff(1, {1, 1}) == 1);
        const PolynomialMap gy = g.partial(2);
        CHECK(gy.coeff(1, {2, 0}) == make_rational(1, 2));
        CHECK_THROWS_AS(g.partial(0), invalid_input);
        CHECK_THROWS_AS(g.partial(3), invalid_input);
    }

    SECTION("derivative values carry the factorial") {
        PolynomialMap g(2, 1, 4);
        g.set_coeff(1, {2, 2}, 1);
        CHECK(derivative_at_zero(g, 1, {2, 2}) == 4);
        CHECK(factorial_of({3, 2}) == 12);
        CHECK(factorial_of({0, 0}) == 1);
    }
}

TEST_CASE("prolongation reads derivative values at the origin") {
    PolynomialMap sq(1, 1, 2);
    sq.set_coeff(1, {2}, 1);
    CHECK(prolong(sq, 1).values == rationals({0, 0}));
    CHECK(prolong(sq, 2).values == rationals({0, 0, 2}));
    CHECK_THROWS_AS(prolong(sq, 3), insufficient_degree);
    CHECK_THROWS_AS(prolong(sq, -1), invalid_input);

    PolynomialMap mixed(2, 1, 2);
    mixed.set_coeff(1, {1, 1}, 1);
    CHECK(prolong(mixed, 2).values == rationals({0, 0, 0, 0, 1, 0}));
}

TEST_CASE("splitting a polynomial into jet and top-order data") {
    PolynomialMap cubic(1, 1, 3);
    cubic.set_coeff(1, {3}, 1);
    const auto [a3, z3] = split_jet_and_fiber(cubic, 2);
    CHECK(a3.values == rationals({0, 0, 0}));
    CHECK(z3.values == rationals({6}));
    CHECK_THROWS_AS(split_jet_and_fiber(cubic, 3), insufficient_degree);

    PolynomialMap parabola(1, 1, 2);
    parabola.set_coeff(1, {2}, 3);
    const auto [ap, zp] = split_jet_and_fiber(parabola, 1);
    CHECK(ap.values == rationals({0, 0}));
    CHECK(zp.values == rationals({6}));

    PolynomialMap affine(1, 1, 2);
    affine.set_coeff(1, {1}, 1);
    affine.set_coeff(1, {2}, 1);
    const auto [aa, za] = split_jet_and_fiber(affine, 1);
    CHECK(aa.values == rationals({0, 1}));
    CHECK(za.values == rationals({2}));

    const PolynomialMap zero(1, 1, 2);
    const auto [a0, z0] = split_jet_and_fiber(zero, 1);
    CHECK(a0.values == rationals({0, 0}));
    CHECK(z0.values == rationals({0}));

    SECTION("round trip through a polynomial representative") {
        Rng rng(913);
        for (int n = 1; n <= 3; ++n)
            for (int q = 1; q <= 3; ++q)
                for (int p = 0; p <= 3; ++p) {
                    const JetLayout layout(n, q, p);
                    Jet a{n, q, p, {}};
                    FiberPoint z{n, q, p, {}};
                    for (std::size_t i = 0; i < layout.jet_value_count(); ++i)
                        a.values.push_back(make_rational(rng.int_in(-9, 9), rng.int_in(1, 4)));
                    for (std::size_t i = 0; i < layout.fiber_value_count(); ++i)
                        z.values.push_back(make_rational(rng.int_in(-9, 9), rng.int_in(1, 4)));
                    const auto [a2, z2] = split_jet_and_fiber(reassemble(a, z), p);
                    CHECK(a2.values == a.values);
                    CHECK(z2.values == z.values);
                }
    }
}

TEST_CASE("jet layout bookkeeping") {
    const JetLayout layout(2, 1, 1);
    CHECK(layout.jet_value_count() == 3);
    CHECK(layout.fiber_value_count() == 3);
    CHECK(layout.jet_index(1, {0, 0}) == 0);
    CHECK(layout.jet_index(1, {1, 0}) == 1);
    CHECK(layout.jet_index(1, {0, 1}) == 2);
    CHECK(layout.fiber_index(1, {2, 0}) == 0);
    CHECK(layout.fiber_index(1, {1, 1}) == 1);
    CHECK(layout.fiber_index(1, {0, 2}) == 2);
    CHECK_THROWS_AS(layout.jet_index(1, {2, 0}), invalid_input);
    CHECK_THROWS_AS(layout.fiber_index(2, {2, 0}), invalid_input);

    SECTION("counts match the dimension formulas") {
        for (int n = 1; n <= 4; ++n)
            for (int q = 1; q <= 4; ++q)
                for (int p = 0; p <= 4; ++p) {
                    const JetLayout l(n, q, p);
                    const JetDims& d = l.dims();
                    CHECK(static_cast<std::int64_t>(l.jet_value_count()) == d.dim_jet - n);
                    CHECK(static_cast<std::int64_t>(l.fiber_value_count()) ==
                          d.dim_fiber[static_cast<std::size_t>(p + 1)]);
                }
    }

    SECTION("jets and fiber points validate their value counts") {
        CHECK_THROWS_AS(validate_jet(Jet{2, 1, 1, rationals({1, 2})}), invalid_input);
        CHECK_THROWS_AS(validate_fiber(FiberPoint{2, 1, 1, rationals({1})}), invalid_input);
        CHECK(zero_jet(2, 1, 1).values == rationals({0, 0, 0}));
        CHECK(zero_fiber(2, 1, 1).values == rationals({0, 0, 0}));
    }
}

TEST_CASE("base-direction tangent vectors of a jet") {
    Jet a = zero_jet(1, 1, 1);
    CHECK(e_vectors(a) == std::vector<std::vector<Rational>>{rationals({1, 0})});
    a.values[1] = 5;
    CHECK(e_vectors(a) == std::vector<std::vector<Rational>>{rationals({1, 5})});

    const Jet flat = zero_jet(2, 1, 0);
    CHECK(e_vectors(flat) ==
          std::vector<std::vector<Rational>>{rationals({1, 0}), rationals({0, 1})});

    SECTION("depends only on the jet below the top level") {
        Rng rng(641);
        for (int n = 1; n <= 2; ++n)
            for (int q = 1; q <= 2; ++q)
                for (int p = 1; p <= 2; ++p) {
                    const PolynomialMap f = random_poly(rng, n, q, p);
                    const Jet a = prolong(f, p);
                    const auto [below, level_p] = split_jet_and_fiber(f, p - 1);
                    CHECK(e_vectors(a) == jet_frame(below, level_p));
                }
    }
}

TEST_CASE("holonomic frame of a jet and a fiber point") {
    const Jet a = zero_jet(1, 1, 1);
    FiberPoint z = zero_fiber(1, 1, 1);
    z.values[0] = 6;
    CHECK(jet_frame(a, z) == std::vector<std::vector<Rational>>{rationals({1, 0, 6})});
    CHECK(jet_frame(a, zero_fiber(1, 1, 1)) ==
          std::vector<std::vector<Rational>>{rationals({1, 0, 0})});

    SECTION("symmetric second derivatives share fiber values across columns") {
        const Jet flat = zero_jet(2, 1, 1);
        FiberPoint w = zero_fiber(2, 1, 1);
        w.values = rationals({2, 3, 4});
        const auto frame = jet_frame(flat, w);
        REQUIRE(frame.size() == 2);
        CHECK(frame[0] == rationals({1, 0, 0, 2, 3}));
        CHECK(frame[1] == rationals({0, 1, 0, 3, 4}));
    }

    SECTION("frame equals the jet of each partial derivative") {
        Rng rng(229);
        for (int n = 1; n <= 2; ++n)
            for (int q = 1; q <= 2; ++q)
                for (int p = 0; p <= 2; ++p) {
                    const PolynomialMap f = random_poly(rng, n, q, p + 1);
                    const auto [a2, z2] = split_jet_and_fiber(f, p);
                    const auto frame = jet_frame(a2, z2);
                    REQUIRE(frame.size() == static_cast<std::size_t>(n));
                    for (int j = 1; j <= n; ++j) {
                        const Jet dj = prolong(f.partial(j), p);
                        std::vector<Rational> expected(static_cast<std::size_t>(n), Rational(0));
                        expected[static_cast<std::size_t>(j - 1)] = 1;
                        expected.insert(expected.end(), dj.values.begin(), dj.values.end());
                        CHECK(frame[static_cast<std::size_t>(j - 1)] == expected);
                    }
                    CHECK(rank(RationalMatrix::from_rows(frame)) ==
                          static_cast<std::size_t>(n));
                }
    }

    SECTION("mismatched spaces are rejected") {
        CHECK_THROWS_AS(jet_frame(zero_jet(1, 1, 1), zero_fiber(2, 1, 1)), invalid_input);
        CHECK_THROWS_AS(jet_frame(zero_jet(1, 1, 2), zero_fiber(1, 1, 1)), invalid_input);
    }
}

TEST_CASE("tangent subspaces require an independent basis") {
    const TangentSubspace v = TangentSubspace::make({rationals({1, 0}), rationals({0, 1})});
    CHECK(v.dim() == 2);
    CHECK(v.ambient_dim() == 2);
    CHECK_THROWS_AS(TangentSubspace::make({}), invalid_input);
    CHECK_THROWS_AS(TangentSubspace::make({rationals({1}), rationals({1, 2})}), invalid_input);
    CHECK_THROWS_AS(TangentSubspace::make({rationals({1, 2}), rationals({2, 4})}),
                    invalid_input);
}
