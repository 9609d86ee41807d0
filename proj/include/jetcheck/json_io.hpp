#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "jetcheck/experiments.hpp"
#include "jetcheck/fredholm.hpp"
#include "jetcheck/jets.hpp"
#include "jetcheck/matrix.hpp"
#include "jetcheck/multiindex.hpp"
#include "jetcheck/polynomial.hpp"
#include "jetcheck/strata.hpp"

namespace jetcheck::io {

using json = nlohmann::ordered_json;

inline json parse_json_text(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw invalid_input(what + ": " + e.what());
    }
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str(), path);
}

inline const json& field(const json& j, const char* name) {
    if (!j.is_object() || !j.contains(name))
        throw invalid_input(std::string("missing field '") + name + "'");
    return j.at(name);
}

inline int int_field(const json& j, const char* name) {
    const json& v = field(j, name);
    if (!v.is_number_integer())
        throw invalid_input(std::string("field '") + name + "' must be an integer");
    return v.get<int>();
}

inline long long int64_field(const json& j, const char* name) {
    const json& v = field(j, name);
    if (!v.is_number_integer())
        throw invalid_input(std::string("field '") + name + "' must be an integer");
    return v.get<long long>();
}

inline Rational rational_from_json(const json& j) {
    if (!j.is_string())
        throw invalid_input("rationals are encoded as strings like \"2/3\"");
    return parse_rational(j.get<std::string>());
}

inline json rational_to_json(const Rational& r) { return to_string(r); }

inline RationalMatrix matrix_from_json(const json& j) {
    const std::size_t rows = static_cast<std::size_t>(int_field(j, "rows"));
    const std::size_t cols = static_cast<std::size_t>(int_field(j, "cols"));
    const json& entries = field(j, "entries");
    if (!entries.is_array() || entries.size() != rows)
        throw invalid_input("matrix entries must hold one array per row");
    RationalMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const json& row = entries.at(i);
        if (!row.is_array() || row.size() != cols)
            throw invalid_input("matrix row " + std::to_string(i + 1) + " has wrong length");
        for (std::size_t k = 0; k < cols; ++k) m.at(i, k) = rational_from_json(row.at(k));
    }
    return m;
}

inline json matrix_to_json(const RationalMatrix& m) {
    json entries = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(rational_to_json(m.at(i, k)));
        entries.push_back(std::move(row));
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

inline json pattern_to_json(const SubmatrixPattern& p) {
    return json{{"rows", p.rows}, {"cols", p.cols}};
}

inline SubmatrixPattern pattern_from_json(const json& j) {
    SubmatrixPattern p;
    for (const json& v : field(j, "rows")) p.rows.push_back(v.get<int>());
    for (const json& v : field(j, "cols")) p.cols.push_back(v.get<int>());
    return p;
}

// Coordinate keys are "s,a1,...,an" with s first.
inline std::string coordinate_key(int s, const MultiIndex& alpha) {
    std::string key = std::to_string(s);
    for (int a : alpha) key += "," + std::to_string(a);
    return key;
}

inline std::pair<int, MultiIndex> parse_coordinate_key(const std::string& key, int n) {
    std::vector<int> parts;
    std::size_t pos = 0;
    while (pos <= key.size()) {
        const std::size_t next = key.find(',', pos);
        const std::string tok = key.substr(pos, next == std::string::npos ? next : next - pos);
        try {
            std::size_t used = 0;
            parts.push_back(std::stoi(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw invalid_input("bad coordinate key '" + key + "'");
        }
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    if (static_cast<int>(parts.size()) != n + 1)
        throw invalid_input("coordinate key '" + key + "' must hold s and " +
                            std::to_string(n) + " exponents");
    return {parts.front(), MultiIndex(parts.begin() + 1, parts.end())};
}

inline Jet jet_from_json(const json& j) {
    const int n = int_field(j, "n"), q = int_field(j, "q"), p = int_field(j, "p");
    const JetLayout layout(n, q, p);
    Jet a{n, q, p, std::vector<Rational>(layout.jet_value_count())};
    const json& values = field(j, "values");
    if (!values.is_object()) throw invalid_input("jet values must be an object");
    std::vector<bool> filled(layout.jet_value_count(), false);
    for (const auto& [key, value] : values.items()) {
        const auto [s, alpha] = parse_coordinate_key(key, n);
        const std::size_t idx = layout.jet_index(s, alpha);
        if (filled[idx]) throw invalid_input("duplicate jet coordinate '" + key + "'");
        filled[idx] = true;
        a.values[idx] = rational_from_json(value);
    }
    for (bool f : filled)
        if (!f)
            throw invalid_input("jet must list every coordinate up to order p exactly once");
    return a;
}

inline json jet_to_json(const Jet& a) {
    const JetLayout layout(a.n, a.q, a.p);
    json values = json::object();
    for (int k = 0; k <= a.p; ++k)
        for (const auto& coord : layout.level(k))
            values[coordinate_key(coord.s, coord.alpha)] =
                rational_to_json(jet_value(layout, a, coord.s, coord.alpha));
    return json{{"n", a.n}, {"q", a.q}, {"p", a.p}, {"values", std::move(values)}};
}

inline FiberPoint fiber_from_json(const json& j) {
    const int n = int_field(j, "n"), q = int_field(j, "q"), p = int_field(j, "p");
    const JetLayout layout(n, q, p);
    FiberPoint z{n, q, p, std::vector<Rational>(layout.fiber_value_count())};
    const json& values = field(j, "values");
    if (!values.is_object()) throw invalid_input("fiber values must be an object");
    std::vector<bool> filled(layout.fiber_value_count(), false);
    for (const auto& [key, value] : values.items()) {
        const auto [s, alpha] = parse_coordinate_key(key, n);
        const std::size_t idx = layout.fiber_index(s, alpha);
        if (filled[idx]) throw invalid_input("duplicate fiber coordinate '" + key + "'");
        filled[idx] = true;
        z.values[idx] = rational_from_json(value);
    }
    for (bool f : filled)
        if (!f)
            throw invalid_input("fiber point must list every order-(p+1) coordinate exactly once");
    return z;
}

inline json fiber_to_json(const FiberPoint& z) {
    const JetLayout layout(z.n, z.q, z.p);
    json values = json::object();
    for (const auto& coord : layout.level(z.p + 1))
        values[coordinate_key(coord.s, coord.alpha)] =
            rational_to_json(fiber_value(layout, z, coord.s, coord.alpha));
    return json{{"n", z.n}, {"q", z.q}, {"p", z.p}, {"values", std::move(values)}};
}

inline PolynomialMap polynomial_from_json(const json& j) {
    PolynomialMap f(int_field(j, "n"), int_field(j, "q"), int_field(j, "degree"));
    const json& values = field(j, "values");
    if (!values.is_object()) throw invalid_input("polynomial values must be an object");
    for (const auto& [key, value] : values.items()) {
        const auto [s, alpha] = parse_coordinate_key(key, f.n);
        f.set_coeff(s, alpha, rational_from_json(value));
    }
    return f;
}

inline json polynomial_to_json(const PolynomialMap& f) {
    json values = json::object();
    for (const auto& [key, c] : f.coeffs)
        values[coordinate_key(key.first, key.second)] = rational_to_json(c);
    return json{{"n", f.n}, {"q", f.q}, {"degree", f.degree}, {"values", std::move(values)}};
}

inline StratumInstance instance_from_json(const json& j) {
    Jet a = jet_from_json(field(j, "jet"));
    const json& vs = field(j, "V");
    if (!vs.is_array() || vs.empty())
        throw invalid_input("V must be a non-empty array of coordinate vectors");
    std::vector<std::vector<Rational>> basis;
    for (const json& row : vs) {
        if (!row.is_array()) throw invalid_input("V vectors must be arrays of rationals");
        std::vector<Rational> v;
        for (const json& e : row) v.push_back(rational_from_json(e));
        basis.push_back(std::move(v));
    }
    FiberPoint z0 = fiber_from_json(field(j, "z0"));
    StratumInstance inst{std::move(a), TangentSubspace::make(std::move(basis)), std::move(z0)};
    validate_instance(inst);
    return inst;
}

inline json instance_to_json(const StratumInstance& inst) {
    json vs = json::array();
    for (const auto& v : inst.V.basis) {
        json row = json::array();
        for (const auto& e : v) row.push_back(rational_to_json(e));
        vs.push_back(std::move(row));
    }
    return json{{"jet", jet_to_json(inst.a)}, {"V", std::move(vs)},
                {"z0", fiber_to_json(inst.z0)}};
}

inline json dims_to_json(const JetDims& d) {
    return json{{"n", d.n},           {"q", d.q},
                {"p", d.p},           {"dim_jet", d.dim_jet},
                {"dim_fiber", d.dim_fiber}};
}

inline json classification_to_json(const Classification& c) {
    return json{{"rank", c.rank}, {"in_Z", c.in_Z}};
}

inline json path_to_json(const std::vector<std::pair<int, int>>& path) {
    json out = json::array();
    for (const auto& [i, j] : path) out.push_back(json::array({i, j}));
    return out;
}

inline json report_to_json(const VerificationReport& rep) {
    return json{{"n", rep.n},
                {"q", rep.q},
                {"p", rep.p},
                {"m", rep.m},
                {"c", rep.c},
                {"rank", rep.rank},
                {"theta", rep.theta},
                {"mstar", pattern_to_json(rep.mstar)},
                {"hat", pattern_to_json(rep.hat)},
                {"path", path_to_json(rep.path)},
                {"det_mstar", rational_to_json(rep.det_mstar)},
                {"jacobian_block", matrix_to_json(rep.jacobian_block)},
                {"jacobian_rank", rep.jacobian_rank},
                {"checks",
                 json{{"vanishing_minors", rep.vanishing_minors_ok},
                      {"path_vars_distinct", rep.path_vars_distinct_ok},
                      {"semiperimeter", rep.semiperimeter_ok},
                      {"diagonal", rep.diagonal_ok},
                      {"uppertriangle_zero", rep.uppertriangle_zero_ok}}},
                {"pass", rep.pass}};
}

inline LinearSetup setup_from_json(const json& j) {
    LinearSetup s;
    s.f_dim = int_field(j, "f_dim");
    s.n = int_field(j, "n");
    s.c = int_field(j, "c");
    s.L = matrix_from_json(field(j, "L"));
    validate_setup(s);
    return s;
}

inline json setup_to_json(const LinearSetup& s) {
    return json{{"f_dim", s.f_dim}, {"n", s.n}, {"c", s.c}, {"L", matrix_to_json(s.L)}};
}

inline json index_report_to_json(const IndexReport& r) {
    return json{{"ker_dim", r.ker_dim},
                {"coker_dim", r.coker_dim},
                {"index", r.index},
                {"k_onto", r.k_onto},
                {"l0_onto", r.l0_onto}};
}

inline SampleConfig sample_config_from_json(const json& j) {
    SampleConfig cfg;
    cfg.count = int64_field(j, "count");
    cfg.bound = int64_field(j, "bound");
    const json& seed = field(j, "seed");
    if (!seed.is_number_unsigned() && !seed.is_number_integer())
        throw invalid_input("field 'seed' must be a nonnegative integer");
    cfg.seed = seed.get<std::uint64_t>();
    if (j.contains("jobs")) cfg.jobs = int_field(j, "jobs");
    if (j.contains("witness")) {
        const json& w = j.at("witness");
        cfg.witness = WitnessParams{int_field(w, "n"), int_field(w, "q"), int_field(w, "p"),
                                    int_field(w, "c")};
    }
    if (j.contains("instance")) cfg.instance = instance_from_json(j.at("instance"));
    return cfg;
}

inline json sample_report_to_json(const SampleReport& rep) {
    json hist = json::object();
    for (const auto& [r, count] : rep.rank_histogram) hist[std::to_string(r)] = count;
    return json{{"total", rep.total},
                {"hits_in_Z", rep.hits_in_Z},
                {"hit_fraction", rational_to_json(rep.hit_fraction)},
                {"rank_histogram", std::move(hist)}};
}

inline json probe_report_to_json(const ProbeReport& rep) {
    json grid = json::array();
    for (const auto& t : rep.grid) grid.push_back(rational_to_json(t));
    json bad = json::array();
    for (const auto& t : rep.degenerate_ts) bad.push_back(rational_to_json(t));
    return json{{"grid", std::move(grid)},
                {"degenerate_count", rep.degenerate_count},
                {"degenerate_ts", std::move(bad)}};
}

} // namespace jetcheck::io
