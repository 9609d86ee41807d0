#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <jetcheck/jetcheck.hpp>

namespace {

using jetcheck::io::json;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw jetcheck::invalid_input("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw jetcheck::invalid_input("cannot write '" + out_path + "'");
    out << text;
}

// Accept either a bare document or the envelope another subcommand wrote, so
// outputs can be fed straight back in as inputs.
json payload_of(json j) {
    if (j.is_object() && j.contains("tool") && j.at("tool") == "jetcheck" &&
        j.contains("result"))
        return j.at("result");
    return j;
}

json load_payload(const std::string& bytes, const std::string& path) {
    return payload_of(jetcheck::io::parse_json_text(bytes, path));
}

void emit_envelope(const std::string& command, const json& result,
                   const std::string& digest_payload, const std::string& out_path) {
    const json envelope{{"tool", "jetcheck"},
                        {"version", jetcheck::version_string},
                        {"command", command},
                        {"input_digest", jetcheck::digest_hex(digest_payload)},
                        {"result", result}};
    write_text(envelope.dump(2) + "\n", out_path);
}

std::vector<jetcheck::Rational> parse_rational_list(const std::string& text) {
    std::vector<jetcheck::Rational> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t next = text.find(',', pos);
        const std::string tok =
            text.substr(pos, next == std::string::npos ? next : next - pos);
        out.push_back(jetcheck::parse_rational(tok));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification of jet-space stratum data"};
    app.require_subcommand(1);
    app.set_version_flag("--version", jetcheck::version_string);

    std::string out_path;

    auto add_output = [&](CLI::App* cmd) {
        cmd->add_option("--output", out_path, "write the JSON report to this file");
    };

    // mstar
    std::string mstar_file;
    auto* cmd_mstar =
        app.add_subcommand("mstar", "minimal non-singular submatrix of a rational matrix");
    cmd_mstar->add_option("--matrix", mstar_file, "matrix JSON file")->required();
    add_output(cmd_mstar);

    // dims
    int dims_n = 1, dims_q = 1, dims_p = 0;
    auto* cmd_dims = app.add_subcommand("dims", "jet space and fiber dimensions");
    cmd_dims->add_option("-n", dims_n, "base dimension")->required();
    cmd_dims->add_option("-q", dims_q, "target dimension")->required();
    cmd_dims->add_option("-p", dims_p, "jet order")->required();
    add_output(cmd_dims);

    // theta
    int th_n = 1, th_q = 1, th_p = 1;
    long long th_c = 1, th_r = 0;
    auto* cmd_theta = app.add_subcommand("theta", "number of local stratum equations");
    cmd_theta->add_option("-n", th_n)->required();
    cmd_theta->add_option("-q", th_q)->required();
    cmd_theta->add_option("-p", th_p)->required();
    cmd_theta->add_option("-c", th_c, "corank of V in the jet space")->required();
    cmd_theta->add_option("-r", th_r, "rank of the assembled matrix")->required();
    add_output(cmd_theta);

    // assemble / classify / verify
    std::string instance_file;
    auto* cmd_assemble =
        app.add_subcommand("assemble", "assemble the span matrix of an instance");
    cmd_assemble->add_option("--instance", instance_file, "instance JSON file")->required();
    add_output(cmd_assemble);

    auto* cmd_classify = app.add_subcommand("classify", "rank and stratum membership at z0");
    cmd_classify->add_option("--instance", instance_file, "instance JSON file")->required();
    add_output(cmd_classify);

    auto* cmd_verify =
        app.add_subcommand("verify", "run every exact check of the stratum normal form");
    cmd_verify->add_option("--instance", instance_file, "instance JSON file")->required();
    add_output(cmd_verify);

    // witness
    int wit_n = 1, wit_q = 1, wit_p = 1, wit_c = 1;
    std::uint64_t wit_rotate = 0;
    bool wit_do_rotate = false;
    auto* cmd_witness =
        app.add_subcommand("witness", "canonical degenerate instance for given parameters");
    cmd_witness->add_option("-n", wit_n)->required();
    cmd_witness->add_option("-q", wit_q)->required();
    cmd_witness->add_option("-p", wit_p)->required();
    cmd_witness->add_option("-c", wit_c)->required();
    cmd_witness->add_option("--rotate-seed", wit_rotate, "replace the V basis by a seeded unimodular mix")
        ->each([&](const std::string&) { wit_do_rotate = true; });
    add_output(cmd_witness);

    // sample
    std::string sample_config_file, sample_instance_file;
    int smp_n = 0, smp_q = 0, smp_p = 0, smp_c = 0;
    long long smp_count = 0, smp_bound = 0;
    std::uint64_t smp_seed = 0;
    int jobs = 1;
    auto* cmd_sample =
        app.add_subcommand("sample", "uniform integer sampling of the fiber over an instance");
    cmd_sample->add_option("--config", sample_config_file, "sampling config JSON file");
    cmd_sample->add_option("--instance", sample_instance_file, "instance JSON file");
    cmd_sample->add_option("-n", smp_n);
    cmd_sample->add_option("-q", smp_q);
    cmd_sample->add_option("-p", smp_p);
    cmd_sample->add_option("-c", smp_c);
    cmd_sample->add_option("--count", smp_count, "number of samples");
    cmd_sample->add_option("--bound", smp_bound, "coordinates drawn from [-bound, bound]");
    cmd_sample->add_option("--seed", smp_seed, "sampling seed");
    cmd_sample->add_option("--jobs", jobs, "worker threads (report is independent of this)");
    add_output(cmd_sample);

    // fredholm
    std::string setup_file;
    auto* cmd_fredholm =
        app.add_subcommand("fredholm", "kernel, cokernel, and index of a linear setup");
    cmd_fredholm->add_option("--setup", setup_file, "setup JSON file")->required();
    add_output(cmd_fredholm);

    // morse
    std::string morse_poly_file, morse_point_text, morse_dir_text;
    bool morse_probe = false;
    int morse_steps = 20;
    auto* cmd_morse = app.add_subcommand("morse", "exact Morse classification of a point");
    cmd_morse->add_option("--poly", morse_poly_file, "polynomial JSON file")->required();
    cmd_morse->add_option("--point", morse_point_text, "comma-separated rational coordinates")
        ->required();
    cmd_morse->add_flag("--probe", morse_probe, "perturb by a linear form over a 1/k grid");
    cmd_morse->add_option("--direction", morse_dir_text,
                          "comma-separated coefficients of the linear form");
    cmd_morse->add_option("--steps", morse_steps, "grid size for the probe");
    add_output(cmd_morse);

    // suite
    std::uint64_t suite_seed = 42;
    bool suite_json = false;
    auto* cmd_suite = app.add_subcommand("suite", "run the full acceptance battery");
    cmd_suite->add_option("--seed", suite_seed, "battery seed");
    cmd_suite->add_option("--jobs", jobs, "worker threads (report is independent of this)");
    cmd_suite->add_flag("--json", suite_json, "emit the JSON envelope instead of the table");
    add_output(cmd_suite);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (cmd_mstar->parsed()) {
            const std::string bytes = slurp(mstar_file);
            const auto m = jetcheck::io::matrix_from_json(load_payload(bytes, mstar_file));
            const auto pattern = jetcheck::minimal_submatrix(m);
            emit_envelope("mstar", jetcheck::io::pattern_to_json(pattern), bytes, out_path);
            return 0;
        }
        if (cmd_dims->parsed()) {
            const auto d = jetcheck::jet_dims(dims_n, dims_q, dims_p);
            const std::string payload = "dims -n " + std::to_string(dims_n) + " -q " +
                                        std::to_string(dims_q) + " -p " + std::to_string(dims_p);
            emit_envelope("dims", jetcheck::io::dims_to_json(d), payload, out_path);
            return 0;
        }
        if (cmd_theta->parsed()) {
            const auto value = jetcheck::theta_count(th_n, th_q, th_p, th_c, th_r);
            const std::string payload = "theta -n " + std::to_string(th_n) + " -q " +
                                        std::to_string(th_q) + " -p " + std::to_string(th_p) +
                                        " -c " + std::to_string(th_c) + " -r " +
                                        std::to_string(th_r);
            emit_envelope("theta", json{{"theta", value}}, payload, out_path);
            return 0;
        }
        if (cmd_assemble->parsed()) {
            const std::string bytes = slurp(instance_file);
            const auto inst =
                jetcheck::io::instance_from_json(load_payload(bytes, instance_file));
            const auto m = jetcheck::assemble_matrix(inst.a, inst.V, inst.z0);
            emit_envelope("assemble", jetcheck::io::matrix_to_json(m), bytes, out_path);
            return 0;
        }
        if (cmd_classify->parsed()) {
            const std::string bytes = slurp(instance_file);
            const auto inst =
                jetcheck::io::instance_from_json(load_payload(bytes, instance_file));
            const auto cls = jetcheck::classify(inst.a, inst.V, inst.z0);
            emit_envelope("classify", jetcheck::io::classification_to_json(cls), bytes, out_path);
            return 0;
        }
        if (cmd_verify->parsed()) {
            const std::string bytes = slurp(instance_file);
            const auto inst =
                jetcheck::io::instance_from_json(load_payload(bytes, instance_file));
            const auto rep = jetcheck::verify_core(inst);
            emit_envelope("verify", jetcheck::io::report_to_json(rep), bytes, out_path);
            return rep.pass ? 0 : 1;
        }
        if (cmd_witness->parsed()) {
            auto inst = jetcheck::degenerate_witness(wit_n, wit_q, wit_p, wit_c);
            std::string payload = "witness -n " + std::to_string(wit_n) + " -q " +
                                  std::to_string(wit_q) + " -p " + std::to_string(wit_p) +
                                  " -c " + std::to_string(wit_c);
            if (wit_do_rotate) {
                inst.V = jetcheck::rotate_basis(inst.V, wit_rotate);
                payload += " --rotate-seed " + std::to_string(wit_rotate);
            }
            emit_envelope("witness", jetcheck::io::instance_to_json(inst), payload, out_path);
            return 0;
        }
        if (cmd_sample->parsed()) {
            if (!sample_config_file.empty() &&
                (!sample_instance_file.empty() || cmd_sample->count("-n") > 0))
                throw jetcheck::invalid_input(
                    "--config already names the instance; drop --instance and -n/-q/-p/-c");
            jetcheck::SampleConfig cfg;
            std::string payload;
            if (!sample_config_file.empty()) {
                const std::string bytes = slurp(sample_config_file);
                cfg = jetcheck::io::sample_config_from_json(
                    load_payload(bytes, sample_config_file));
                payload = bytes;
            } else {
                cfg.count = smp_count;
                cfg.bound = smp_bound;
                cfg.seed = smp_seed;
                if (!sample_instance_file.empty()) {
                    const std::string bytes = slurp(sample_instance_file);
                    cfg.instance = jetcheck::io::instance_from_json(
                        load_payload(bytes, sample_instance_file));
                    payload = bytes;
                } else {
                    cfg.witness = jetcheck::WitnessParams{smp_n, smp_q, smp_p, smp_c};
                    payload = "sample -n " + std::to_string(smp_n) + " -q " +
                              std::to_string(smp_q) + " -p " + std::to_string(smp_p) + " -c " +
                              std::to_string(smp_c);
                }
                payload += " --count " + std::to_string(cfg.count) + " --bound " +
                           std::to_string(cfg.bound) + " --seed " + std::to_string(cfg.seed);
            }
            if (cmd_sample->count("--jobs") > 0) cfg.jobs = jobs;
            const auto rep = jetcheck::sample_fiber(cfg);
            emit_envelope("sample", jetcheck::io::sample_report_to_json(rep), payload, out_path);
            return 0;
        }
        if (cmd_fredholm->parsed()) {
            const std::string bytes = slurp(setup_file);
            const auto setup = jetcheck::io::setup_from_json(load_payload(bytes, setup_file));
            const auto rep = jetcheck::fredholm_index(setup);
            emit_envelope("fredholm", jetcheck::io::index_report_to_json(rep), bytes, out_path);
            return 0;
        }
        if (cmd_morse->parsed()) {
            const std::string bytes = slurp(morse_poly_file);
            const auto f =
                jetcheck::io::polynomial_from_json(load_payload(bytes, morse_poly_file));
            const auto point = parse_rational_list(morse_point_text);
            const auto type = jetcheck::morse_classify(f, point);
            json result{{"type", jetcheck::to_string(type)}};
            std::string payload = bytes + "|point=" + morse_point_text;
            if (morse_probe) {
                if (morse_dir_text.empty())
                    throw jetcheck::invalid_input("--probe needs --direction");
                const auto ell = parse_rational_list(morse_dir_text);
                const auto probe =
                    jetcheck::morse_perturbation_probe(f, point, ell, morse_steps);
                result["probe"] = jetcheck::io::probe_report_to_json(probe);
                payload += "|direction=" + morse_dir_text +
                           "|steps=" + std::to_string(morse_steps);
            }
            emit_envelope("morse", result, payload, out_path);
            return 0;
        }
        if (cmd_suite->parsed()) {
            const auto rep = jetcheck::run_suite(suite_seed, jobs);
            const std::string payload = "suite --seed " + std::to_string(suite_seed);
            if (suite_json)
                emit_envelope("suite", jetcheck::suite_report_to_json(rep), payload, out_path);
            else
                write_text(jetcheck::render_table(rep), out_path);
            return rep.all_pass ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::cerr << "error: no subcommand\n";
    return 2;
}
