#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <thread>
#include <vector>

#include "jetcheck/errors.hpp"
#include "jetcheck/polynomial.hpp"
#include "jetcheck/rng.hpp"
#include "jetcheck/strata.hpp"

namespace jetcheck {

struct WitnessParams {
    int n = 1, q = 1, p = 1, c = 1;
};

// Either name a canonical witness by its parameters or supply the instance.
struct SampleConfig {
    std::optional<WitnessParams> witness;
    std::optional<StratumInstance> instance;
    long long count = 0;
    long long bound = 1;
    std::uint64_t seed = 0;
    int jobs = 1;
};

struct SampleReport {
    long long total = 0;
    long long hits_in_Z = 0;
    Rational hit_fraction;
    std::map<std::int64_t, long long> rank_histogram;
};

inline StratumInstance resolve_instance(const SampleConfig& cfg) {
    if (cfg.instance.has_value() == cfg.witness.has_value())
        throw invalid_input("sampling needs exactly one of witness parameters or an instance");
    if (cfg.instance) return *cfg.instance;
    return degenerate_witness(cfg.witness->n, cfg.witness->q, cfg.witness->p, cfg.witness->c);
}

// The fiber point drawn for one sample index: every coordinate is a uniform
// integer in [-bound, bound], determined by (seed, index, coordinate) alone.
inline FiberPoint sampled_fiber_point(const JetLayout& layout, std::uint64_t seed,
                                      std::uint64_t index, long long bound) {
    FiberPoint z{layout.n(), layout.q(), layout.p(),
                 std::vector<Rational>(layout.fiber_value_count())};
    for (std::size_t d = 0; d < z.values.size(); ++d)
        z.values[d] = counter_int_in_sym(seed, index, static_cast<std::uint64_t>(d), bound);
    return z;
}

// Classify a fixed list of fiber points over one instance. The sampler
// delegates here; tests use it directly to plant specific points.
inline SampleReport classify_points(const StratumInstance& inst,
                                    const std::vector<FiberPoint>& points) {
    validate_instance(inst);
    if (!check_hypothesis(inst.a, inst.V))
        throw precondition_error(
            "the projection of V and the frame to the lower jet space is not surjective");
    SampleReport rep;
    rep.total = static_cast<long long>(points.size());
    for (const auto& z : points) {
        const Classification cls = detail::classify_unchecked(inst.a, inst.V, z);
        if (cls.in_Z) ++rep.hits_in_Z;
        ++rep.rank_histogram[cls.rank];
    }
    rep.hit_fraction = rep.total == 0 ? Rational(0)
                                      : make_rational(rep.hits_in_Z, rep.total);
    return rep;
}

// Uniform integer sampling of the fiber over a stratum instance. Samples are
// functions of (seed, index), so the report does not depend on cfg.jobs.
inline SampleReport sample_fiber(const SampleConfig& cfg) {
    if (cfg.count < 1) throw invalid_input("sample count must be >= 1");
    if (cfg.bound < 1) throw invalid_input("sample bound must be >= 1");
    if (cfg.jobs < 1) throw invalid_input("job count must be >= 1");
    const StratumInstance inst = resolve_instance(cfg);
    validate_instance(inst);
    if (!check_hypothesis(inst.a, inst.V))
        throw precondition_error(
            "the projection of V and the frame to the lower jet space is not surjective");
    const JetLayout layout(inst.a.n, inst.a.q, inst.a.p);

    struct Partial {
        long long hits = 0;
        std::map<std::int64_t, long long> histogram;
    };
    const int jobs = static_cast<int>(std::min<long long>(cfg.jobs, cfg.count));
    std::vector<Partial> partials(static_cast<std::size_t>(jobs));
    std::vector<std::thread> workers;
    for (int w = 0; w < jobs; ++w) {
        workers.emplace_back([&, w]() {
            Partial& mine = partials[static_cast<std::size_t>(w)];
            for (long long i = w; i < cfg.count; i += jobs) {
                const FiberPoint z = sampled_fiber_point(
                    layout, cfg.seed, static_cast<std::uint64_t>(i), cfg.bound);
                const Classification cls = detail::classify_unchecked(inst.a, inst.V, z);
                if (cls.in_Z) ++mine.hits;
                ++mine.histogram[cls.rank];
            }
        });
    }
    for (auto& t : workers) t.join();

    SampleReport rep;
    rep.total = cfg.count;
    for (const auto& part : partials) {
        rep.hits_in_Z += part.hits;
        for (const auto& [r, count] : part.histogram) rep.rank_histogram[r] += count;
    }
    rep.hit_fraction = make_rational(rep.hits_in_Z, rep.total);
    return rep;
}

enum class MorsePointType { Regular, MorseCritical, DegenerateCritical };

inline const char* to_string(MorsePointType t) {
    switch (t) {
    case MorsePointType::Regular: return "Regular";
    case MorsePointType::MorseCritical: return "MorseCritical";
    default: return "DegenerateCritical";
    }
}

// Exact classification of one point of a scalar function: regular if the
// gradient is nonzero, otherwise Morse or degenerate by the Hessian
// determinant.
inline MorsePointType morse_classify(const PolynomialMap& f, const std::vector<Rational>& x) {
    if (f.q != 1) throw invalid_input("Morse classification needs a scalar function");
    if (f.degree < 2) throw invalid_input("Morse classification needs degree >= 2");
    if (static_cast<int>(x.size()) != f.n)
        throw invalid_input("evaluation point has wrong dimension");

    std::vector<PolynomialMap> partials;
    for (int j = 1; j <= f.n; ++j) partials.push_back(f.partial(j));
    for (const auto& pj : partials)
        if (pj.eval(x)[0] != 0) return MorsePointType::Regular;

    RationalMatrix hessian(static_cast<std::size_t>(f.n), static_cast<std::size_t>(f.n));
    for (int i = 1; i <= f.n; ++i)
        for (int j = 1; j <= f.n; ++j)
            hessian.at(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)) =
                partials[static_cast<std::size_t>(i - 1)].partial(j).eval(x)[0];
    return det(hessian) == 0 ? MorsePointType::DegenerateCritical
                             : MorsePointType::MorseCritical;
}

namespace detail {

// Bivariate polynomial as a polynomial in the second variable whose
// coefficients are univariate in the first.
using Poly2 = std::vector<Poly>;

inline Poly2 to_poly2(const PolynomialMap& g) {
    Poly2 out;
    for (const auto& [key, c] : g.coeffs) {
        const int i = key.second[0], j = key.second[1];
        if (static_cast<int>(out.size()) <= j) out.resize(static_cast<std::size_t>(j + 1));
        Poly& coeff = out[static_cast<std::size_t>(j)];
        if (static_cast<int>(coeff.c.size()) <= i)
            coeff.c.resize(static_cast<std::size_t>(i + 1), Rational(0));
        coeff.c[static_cast<std::size_t>(i)] += c;
    }
    for (auto& coeff : out) coeff.trim();
    while (!out.empty() && out.back().is_zero()) out.pop_back();
    return out;
}

inline Poly specialize(const Poly2& a, const Rational& x1) {
    Poly out;
    out.c.reserve(a.size());
    for (const auto& coeff : a) out.c.push_back(coeff.eval(x1));
    out.trim();
    return out;
}

inline Poly poly_matrix_det(const std::vector<std::vector<Poly>>& m) {
    const std::size_t n = m.size();
    if (n == 0) return Poly{{Rational(1)}};
    if (n == 1) return m[0][0];
    Poly out;
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        std::vector<std::vector<Poly>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Poly> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(std::move(row));
        }
        Poly term = poly_mul(m[0][j], poly_matrix_det(minor));
        out = poly_add(out, (j % 2) ? poly_neg(term) : term);
    }
    return out;
}

// Resultant of two bivariate polynomials with respect to the second
// variable, as a univariate polynomial in the first: determinant of the
// Sylvester matrix over Q[x1].
inline Poly sylvester_resultant(const Poly2& a, const Poly2& b) {
    const int da = static_cast<int>(a.size()) - 1;
    const int db = static_cast<int>(b.size()) - 1;
    const std::size_t size = static_cast<std::size_t>(da + db);
    std::vector<std::vector<Poly>> m(size, std::vector<Poly>(size));
    for (int i = 0; i < db; ++i)
        for (int k = 0; k <= da; ++k)
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + k)] =
                a[static_cast<std::size_t>(da - k)];
    for (int i = 0; i < da; ++i)
        for (int k = 0; k <= db; ++k)
            m[static_cast<std::size_t>(db + i)][static_cast<std::size_t>(i + k)] =
                b[static_cast<std::size_t>(db - k)];
    return poly_matrix_det(m);
}

// All rational solutions of P1 = P2 = 0 for the two partials of a bivariate
// function. Throws unsupported_instance whenever the solution set fails to be
// finite (shared components, vanishing resultant), since then no list of
// isolated critical points exists.
inline std::vector<std::array<Rational, 2>> rational_common_zeros(const Poly2& a,
                                                                  const Poly2& b) {
    if (a.empty() || b.empty())
        throw unsupported_instance("critical equations vanish identically");

    std::vector<std::array<Rational, 2>> points;
    const auto push = [&](const Rational& x1, const Rational& x2) {
        const std::array<Rational, 2> pt{x1, x2};
        if (std::find(points.begin(), points.end(), pt) == points.end())
            points.push_back(pt);
    };

    const auto solve_at = [&](const Rational& x1) {
        const Poly sa = specialize(a, x1);
        const Poly sb = specialize(b, x1);
        if (sa.is_zero() && sb.is_zero())
            throw unsupported_instance("a whole line of critical points");
        if (sa.is_zero()) {
            for (const Rational& x2 : rational_roots(sb)) push(x1, x2);
            return;
        }
        if (sb.is_zero()) {
            for (const Rational& x2 : rational_roots(sa)) push(x1, x2);
            return;
        }
        for (const Rational& x2 : rational_roots(sa))
            if (sb.eval(x2) == 0) push(x1, x2);
    };

    const int da = static_cast<int>(a.size()) - 1;
    const int db = static_cast<int>(b.size()) - 1;
    if (da == 0 && db == 0) {
        // Neither equation involves x2; a common root would give a line.
        for (const Rational& x1 : rational_roots(a[0]))
            if (b[0].eval(x1) == 0)
                throw unsupported_instance("a whole line of critical points");
        return points;
    }
    if (da == 0) {
        for (const Rational& x1 : rational_roots(a[0])) solve_at(x1);
        return points;
    }
    if (db == 0) {
        for (const Rational& x1 : rational_roots(b[0])) solve_at(x1);
        return points;
    }

    Poly res = sylvester_resultant(a, b);
    if (res.is_zero())
        throw unsupported_instance("critical equations share a component");
    for (const Rational& x1 : rational_roots(res)) solve_at(x1);
    return points;
}

} // namespace detail

// All rational critical points of a scalar function, by exact solving.
// Supported: univariate of any degree (rational root theorem) and bivariate
// of total degree at most 3 (resultant elimination).
inline std::vector<std::vector<Rational>> rational_critical_points(const PolynomialMap& f) {
    if (f.q != 1) throw invalid_input("critical point search needs a scalar function");
    if (f.n == 1) {
        const PolynomialMap d = f.partial(1);
        Poly dp;
        for (const auto& [key, c] : d.coeffs) {
            const int e = key.second[0];
            if (static_cast<int>(dp.c.size()) <= e)
                dp.c.resize(static_cast<std::size_t>(e + 1), Rational(0));
            dp.c[static_cast<std::size_t>(e)] = c;
        }
        dp.trim();
        if (dp.is_zero())
            throw unsupported_instance("derivative vanishes identically");
        std::vector<std::vector<Rational>> out;
        for (const Rational& x : rational_roots(dp)) out.push_back({x});
        return out;
    }
    if (f.n == 2) {
        if (f.degree > 3)
            throw unsupported_instance(
                "bivariate critical point search is limited to total degree 3");
        const auto pts = detail::rational_common_zeros(detail::to_poly2(f.partial(1)),
                                                       detail::to_poly2(f.partial(2)));
        std::vector<std::vector<Rational>> out;
        for (const auto& pt : pts) out.push_back({pt[0], pt[1]});
        return out;
    }
    throw unsupported_instance("critical point search supports n <= 2 only");
}

struct ProbeReport {
    std::vector<Rational> grid;
    long long degenerate_count = 0;
    std::vector<Rational> degenerate_ts;
};

// For each grid value t, perturb f by t * (linear form ell) and check whether
// any rational critical point of the perturbation is still degenerate.
inline ProbeReport morse_perturbation_probe_at(const PolynomialMap& f,
                                               const std::vector<Rational>& ell,
                                               const std::vector<Rational>& grid) {
    if (f.q != 1) throw invalid_input("perturbation probe needs a scalar function");
    if (static_cast<int>(ell.size()) != f.n)
        throw invalid_input("linear form has wrong dimension");
    ProbeReport rep;
    rep.grid = grid;
    for (const Rational& t : grid) {
        PolynomialMap g = f;
        for (int j = 1; j <= f.n; ++j) {
            MultiIndex delta(static_cast<std::size_t>(f.n), 0);
            delta[static_cast<std::size_t>(j - 1)] = 1;
            g.set_coeff(1, delta, g.coeff(1, delta) + t * ell[static_cast<std::size_t>(j - 1)]);
        }
        bool degenerate = false;
        for (const auto& pt : rational_critical_points(g))
            if (morse_classify(g, pt) == MorsePointType::DegenerateCritical) degenerate = true;
        if (degenerate) {
            ++rep.degenerate_count;
            rep.degenerate_ts.push_back(t);
        }
    }
    return rep;
}

// Symmetric grid +-1/k around 0 (never 0 itself), `steps` values in total.
inline ProbeReport morse_perturbation_probe(const PolynomialMap& f,
                                            const std::vector<Rational>& x0,
                                            const std::vector<Rational>& ell, int steps) {
    if (steps < 1) throw invalid_input("probe needs at least one grid value");
    if (morse_classify(f, x0) != MorsePointType::DegenerateCritical)
        throw precondition_error("probe base point must be a degenerate critical point");
    std::vector<Rational> grid;
    for (int k = 1; static_cast<int>(grid.size()) < steps; ++k) {
        grid.push_back(make_rational(1, k));
        if (static_cast<int>(grid.size()) < steps) grid.push_back(make_rational(-1, k));
    }
    return morse_perturbation_probe_at(f, ell, grid);
}

} // namespace jetcheck
