#include <catch2/catch_amalgamated.hpp>

#include <jetcheck/jetcheck.hpp>

#include "test_util.hpp"

using namespace jetcheck;
using testutil::rationals;

namespace {

SampleConfig witness_config(int n, int q, int p, int c, long long count, long long bound,
                            std::uint64_t seed) {
    SampleConfig cfg;
    cfg.witness = WitnessParams{n, q, p, c};
    cfg.count = count;
    cfg.bound = bound;
    cfg.seed = seed;
    return cfg;
}

bool reports_equal(const SampleReport& a, const SampleReport& b) {
    return a.total == b.total && a.hits_in_Z == b.hits_in_Z &&
           a.hit_fraction == b.hit_fraction && a.rank_histogram == b.rank_histogram;
}

} // namespace

TEST_CASE("fiber sampling is a function of seed and index alone") {
    const SampleConfig cfg = witness_config(1, 1, 1, 1, 300, 2, 99);
    const SampleReport first = sample_fiber(cfg);
    const SampleReport second = sample_fiber(cfg);
    CHECK(reports_equal(first, second));

    SampleConfig threaded = cfg;
    threaded.jobs = 3;
    CHECK(reports_equal(first, sample_fiber(threaded)));

    SECTION("hit count has a closed form on the one-dimensional witness") {
        long long expected = 0;
        for (long long i = 0; i < cfg.count; ++i)
            if (counter_int_in_sym(cfg.seed, static_cast<std::uint64_t>(i), 0, cfg.bound) == 0)
                ++expected;
        CHECK(first.hits_in_Z == expected);
        CHECK(first.hit_fraction == make_rational(expected, cfg.count));

        std::map<std::int64_t, long long> histogram;
        if (expected > 0) histogram[2] = expected;
        if (expected < cfg.count) histogram[3] = cfg.count - expected;
        CHECK(first.rank_histogram == histogram);
    }
}

TEST_CASE("sampled ranks stay between the subspace dimension and the ambient one") {
    const SampleReport rep = sample_fiber(witness_config(2, 1, 1, 1, 200, 3, 5));
    long long sum = 0;
    for (const auto& [r, count] : rep.rank_histogram) {
        CHECK(r >= 4);
        CHECK(r <= 5);
        sum += count;
    }
    CHECK(sum == rep.total);
    CHECK(rep.hits_in_Z == (rep.rank_histogram.count(4) ? rep.rank_histogram.at(4) : 0));
}

TEST_CASE("classifying a fixed list of fiber points") {
    const StratumInstance inst = degenerate_witness(1, 1, 1, 1);
    FiberPoint away = zero_fiber(1, 1, 1);
    away.values[0] = 1;
    const SampleReport rep = classify_points(inst, {inst.z0, away});
    CHECK(rep.total == 2);
    CHECK(rep.hits_in_Z == 1);
    CHECK(rep.hit_fraction == make_rational(1, 2));
    CHECK(rep.rank_histogram == std::map<std::int64_t, long long>{{2, 1}, {3, 1}});
}

TEST_CASE("strata of higher corank are rare under uniform sampling") {
    const SampleReport rep = sample_fiber(witness_config(2, 1, 1, 2, 1500, 40, 2026));
    CHECK(rep.total == 1500);
    CHECK(rep.hit_fraction <= make_rational(1, 100));
    CHECK(rep.hits_in_Z < rep.total);
}

TEST_CASE("sampling configuration validation") {
    CHECK_THROWS_AS(sample_fiber(witness_config(1, 1, 1, 1, 0, 1, 7)), invalid_input);
    CHECK_THROWS_AS(sample_fiber(witness_config(1, 1, 1, 1, 10, 0, 7)), invalid_input);

    SampleConfig bad_jobs = witness_config(1, 1, 1, 1, 10, 1, 7);
    bad_jobs.jobs = 0;
    CHECK_THROWS_AS(sample_fiber(bad_jobs), invalid_input);

    SampleConfig both = witness_config(1, 1, 1, 1, 10, 1, 7);
    both.instance = degenerate_witness(1, 1, 1, 1);
    CHECK_THROWS_AS(sample_fiber(both), invalid_input);

    SampleConfig neither;
    neither.count = 10;
    CHECK_THROWS_AS(sample_fiber(neither), invalid_input);

    SampleConfig bad_instance;
    bad_instance.count = 10;
    std::vector<Rational> y_prime(3);
    y_prime[2] = 1;
    bad_instance.instance = StratumInstance{
        zero_jet(1, 1, 1), TangentSubspace::make({y_prime}), zero_fiber(1, 1, 1)};
    CHECK_THROWS_AS(sample_fiber(bad_instance), precondition_error);
}

TEST_CASE("classifying points of a scalar function") {
    PolynomialMap cubic(1, 1, 3);
    cubic.set_coeff(1, {3}, 1);
    CHECK(morse_classify(cubic, rationals({0})) == MorsePointType::DegenerateCritical);
    CHECK(morse_classify(cubic, rationals({1})) == MorsePointType::Regular);

    PolynomialMap square(1, 1, 2);
    square.set_coeff(1, {2}, 1);
    CHECK(morse_classify(square, rationals({0})) == MorsePointType::MorseCritical);

    PolynomialMap saddle(2, 1, 2);
    saddle.set_coeff(1, {2, 0}, 1);
    saddle.set_coeff(1, {0, 2}, -1);
    CHECK(morse_classify(saddle, rationals({0, 0})) == MorsePointType::MorseCritical);

    CHECK(std::string(to_string(MorsePointType::Regular)) == "Regular");
    CHECK(std::string(to_string(MorsePointType::MorseCritical)) == "MorseCritical");
    CHECK(std::string(to_string(MorsePointType::DegenerateCritical)) == "DegenerateCritical");

    PolynomialMap vector_valued(1, 2, 2);
    CHECK_THROWS_AS(morse_classify(vector_valued, rationals({0})), invalid_input);
    PolynomialMap linear(1, 1, 1);
    linear.set_coeff(1, {1}, 1);
    CHECK_THROWS_AS(morse_classify(linear, rationals({0})), invalid_input);
    CHECK_THROWS_AS(morse_classify(square, rationals({0, 0})), invalid_input);
}

TEST_CASE("exact rational critical points") {
    SECTION("univariate") {
        PolynomialMap f(1, 1, 3);
        f.set_coeff(1, {3}, 1);
        f.set_coeff(1, {1}, -3);
        CHECK(rational_critical_points(f) ==
              std::vector<std::vector<Rational>>{rationals({-1}), rationals({1})});

        PolynomialMap g(1, 1, 3);
        g.set_coeff(1, {3}, 1);
        g.set_coeff(1, {1}, -1);
        CHECK(rational_critical_points(g).empty());

        const PolynomialMap constant(1, 1, 2);
        CHECK_THROWS_AS(rational_critical_points(constant), unsupported_instance);
    }

    SECTION("bivariate through elimination") {
        PolynomialMap f(2, 1, 3);
        f.set_coeff(1, {3, 0}, 1);
        f.set_coeff(1, {1, 0}, -3);
        f.set_coeff(1, {0, 2}, 1);
        CHECK(rational_critical_points(f) ==
              std::vector<std::vector<Rational>>{rationals({-1, 0}), rationals({1, 0})});

        PolynomialMap folium(2, 1, 3);
        folium.set_coeff(1, {3, 0}, 1);
        folium.set_coeff(1, {0, 3}, 1);
        folium.set_coeff(1, {1, 1}, -3);
        const auto pts = rational_critical_points(folium);
        CHECK(pts == std::vector<std::vector<Rational>>{rationals({0, 0}), rationals({1, 1})});
        CHECK(morse_classify(folium, pts[0]) == MorsePointType::MorseCritical);
        CHECK(morse_classify(folium, pts[1]) == MorsePointType::MorseCritical);
    }

    SECTION("instances outside the exact solver") {
        PolynomialMap line(2, 1, 2);
        line.set_coeff(1, {2, 0}, 1);
        CHECK_THROWS_AS(rational_critical_points(line), unsupported_instance);

        PolynomialMap quartic(2, 1, 4);
        quartic.set_coeff(1, {4, 0}, 1);
        quartic.set_coeff(1, {0, 2}, 1);
        CHECK_THROWS_AS(rational_critical_points(quartic), unsupported_instance);

        PolynomialMap three_vars(3, 1, 2);
        three_vars.set_coeff(1, {2, 0, 0}, 1);
        CHECK_THROWS_AS(rational_critical_points(three_vars), unsupported_instance);

        PolynomialMap vector_valued(1, 2, 2);
        vector_valued.set_coeff(1, {2}, 1);
        CHECK_THROWS_AS(rational_critical_points(vector_valued), invalid_input);
    }
}

TEST_CASE("perturbation probes along a linear form") {
    PolynomialMap cubic(1, 1, 3);
    cubic.set_coeff(1, {3}, 1);

    const ProbeReport rep = morse_perturbation_probe(cubic, rationals({0}), rationals({1}), 20);
    CHECK(rep.degenerate_count == 0);
    CHECK(rep.degenerate_ts.empty());
    REQUIRE(rep.grid.size() == 20);
    CHECK(rep.grid[0] == 1);
    CHECK(rep.grid[1] == -1);
    CHECK(rep.grid[2] == make_rational(1, 2));
    CHECK(rep.grid[3] == make_rational(-1, 2));
    CHECK(rep.grid[18] == make_rational(1, 10));
    CHECK(rep.grid[19] == make_rational(-1, 10));

    PolynomialMap quartic(1, 1, 4);
    quartic.set_coeff(1, {4}, 1);
    CHECK(morse_perturbation_probe(quartic, rationals({0}), rationals({1}), 20)
              .degenerate_count == 0);

    SECTION("a grid containing zero keeps the degenerate point") {
        const ProbeReport zero_kept = morse_perturbation_probe_at(
            cubic, rationals({1}), {Rational(1), Rational(0), Rational(-1)});
        CHECK(zero_kept.degenerate_count == 1);
        CHECK(zero_kept.degenerate_ts == rationals({0}));
    }

    SECTION("validation") {
        PolynomialMap square(1, 1, 2);
        square.set_coeff(1, {2}, 1);
        CHECK_THROWS_AS(morse_perturbation_probe(square, rationals({0}), rationals({1}), 5),
                        precondition_error);
        CHECK_THROWS_AS(morse_perturbation_probe(cubic, rationals({0}), rationals({1}), 0),
                        invalid_input);
        CHECK_THROWS_AS(morse_perturbation_probe_at(cubic, rationals({1, 2}), {Rational(1)}),
                        invalid_input);
    }
}

TEST_CASE("stratum membership matches the Hessian test on planted cubics") {
    Rng rng(31415);
    const std::size_t dim = 5;
    const TangentSubspace V = TangentSubspace::make(
        {std::vector<Rational>{1, 0, 0, 0, 0}, std::vector<Rational>{0, 1, 0, 0, 0},
         std::vector<Rational>{0, 0, 1, 0, 0}});

    int degenerate_seen = 0;
    for (int trial = 0; trial < 50; ++trial) {
        PolynomialMap f(2, 1, 3);
        f.set_coeff(1, {0, 0}, rng.int_in(-3, 3));
        if (trial % 7 == 0) {
            f.set_coeff(1, {2, 0}, 1);
            f.set_coeff(1, {1, 1}, 2);
            f.set_coeff(1, {0, 2}, 1);
        } else {
            f.set_coeff(1, {2, 0}, rng.int_in(-3, 3));
            f.set_coeff(1, {1, 1}, rng.int_in(-3, 3));
            f.set_coeff(1, {0, 2}, rng.int_in(-3, 3));
        }
        for (const auto& alpha : enumerate_multiindices(2, 3))
            f.set_coeff(1, alpha, rng.int_in(-3, 3));

        const auto [a, z] = split_jet_and_fiber(f, 1);
        const Classification cls = classify(a, V, z);
        const bool hessian_degenerate =
            morse_classify(f, rationals({0, 0})) == MorsePointType::DegenerateCritical;
        CHECK(cls.in_Z == hessian_degenerate);
        if (hessian_degenerate) ++degenerate_seen;
        CHECK(static_cast<std::size_t>(cls.rank) <= dim);
    }
    CHECK(degenerate_seen >= 7);
}
