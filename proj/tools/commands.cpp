// Copyright 2026 The AQCE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "aqce/amplitude.hpp"
#include "aqce/encoder.hpp"
#include "aqce/gates.hpp"
#include "aqce/golden.hpp"
#include "aqce/hamiltonian.hpp"
#include "aqce/numerics.hpp"
#include "aqce/parallel.hpp"

#ifndef AQCE_VERSION
#define AQCE_VERSION "0.0.0"
#endif

namespace aqce::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

/// Schedule flags shared by encode-state and encode-image.
struct ScheduleFlags {
    std::size_t m0 = 0;
    std::size_t m_max = 0;
    std::size_t delta_m = 0;
    std::size_t sweeps = 0;
    std::size_t final_sweeps = 0;
    std::size_t restarts = 1;
    std::uint64_t seed = 1;
    std::string preset;
    std::string bonds = "all";
    std::string init = "gain";
    double fidelity_stop = 0.0;
    std::size_t threads = 0;
    bool timing = false;
    std::string out = ".";

    CLI::Option *m0_opt = nullptr;
    CLI::Option *m_max_opt = nullptr;
    CLI::Option *delta_m_opt = nullptr;
    CLI::Option *sweeps_opt = nullptr;
    CLI::Option *final_opt = nullptr;
    CLI::Option *stop_opt = nullptr;

    void attach(CLI::App &app) {
        m0_opt = app.add_option("--M0", m0, "initial number of blocks");
        m_max_opt = app.add_option("--Mmax", m_max, "final number of blocks");
        delta_m_opt =
            app.add_option("--dM", delta_m, "blocks added per enlargement");
        sweeps_opt = app.add_option("--sweeps", sweeps,
                                    "sweeps after each circuit size change");
        final_opt = app.add_option("--final-sweeps", final_sweeps,
                                   "extra sweeps at the final size");
        app.add_option("--restarts", restarts, "independent runs, best kept")
            ->check(CLI::PositiveNumber);
        app.add_option("--seed", seed, "base random seed")->capture_default_str();
        app.add_option("--preset", preset,
                       "paper-heis, paper-xy, paper-xy-strict, paper-image, "
                       "paper-image-seg");
        app.add_option("--bonds", bonds, "all, chain, chain-open or file:PATH")
            ->capture_default_str();
        app.add_option("--init", init,
                       "initial bond ranking: gain or leading")
            ->check(CLI::IsMember({"gain", "leading"}))
            ->capture_default_str();
        stop_opt = app.add_option("--fidelity-stop", fidelity_stop,
                                  "stop once |F| reaches this value");
        app.add_option("--threads", threads, "worker cap (0 = all cores)");
        app.add_flag("--timing", timing, "write wall times into CSV outputs");
        app.add_option("--out", out, "output directory")->capture_default_str();
    }

    /// Preset (if any) overlaid with explicitly given flags.
    EncodeConfig resolve(std::size_t num_qubits, std::size_t default_m0) const {
        EncodeConfig c;
        if (!preset.empty()) {
            c = preset_config(preset, num_qubits);
        } else {
            c.m0 = default_m0;
            c.sweeps = 20;
            c.delta_m = std::max<std::size_t>(1, num_qubits / 2);
            c.m_max = c.m0;
        }
        if (m0_opt->count() > 0) {
            c.m0 = m0;
        }
        if (m_max_opt->count() > 0) {
            c.m_max = m_max;
            if (m0_opt->count() == 0) {
                c.m0 = std::min(c.m0, m_max);
            }
        } else {
            c.m_max = std::max(c.m_max, c.m0);
        }
        if (delta_m_opt->count() > 0) {
            c.delta_m = delta_m;
        }
        if (sweeps_opt->count() > 0) {
            c.sweeps = sweeps;
        }
        if (final_opt->count() > 0) {
            c.final_sweeps = final_sweeps;
        }
        if (stop_opt->count() > 0) {
            c.fidelity_stop = fidelity_stop;
        }
        c.restarts = restarts;
        c.seed = seed;
        c.bonds = parse_bonds(bonds, num_qubits);
        c.init_selection = init == "leading" ? InitSelection::kLeadingEigenvalue
                                             : InitSelection::kGain;
        return c;
    }

    static BondSet parse_bonds(const std::string &text, std::size_t L) {
        if (text == "all") {
            return all_pairs_bonds(L);
        }
        if (text == "chain") {
            return chain_bonds(L, true);
        }
        if (text == "chain-open") {
            return chain_bonds(L, false);
        }
        if (text.rfind("file:", 0) == 0) {
            return read_bonds_file(text.substr(5), L);
        }
        throw InputError("--bonds: expected all, chain, chain-open or "
                         "file:PATH, got '" + text + "'");
    }
};

json config_json(const EncodeConfig &c) {
    json bonds = json::array();
    for (const auto &b : c.bonds.bonds()) {
        bonds.push_back({b.first, b.second});
    }
    json j{{"M0", c.m0},
           {"Mmax", c.m_max},
           {"dM", c.delta_m},
           {"sweeps", c.sweeps},
           {"final_sweeps", c.final_sweeps},
           {"restarts", c.restarts},
           {"seed", c.seed},
           {"init", c.init_selection == InitSelection::kGain ? "gain"
                                                              : "leading"},
           {"bonds", bonds}};
    j["fidelity_stop"] =
        c.fidelity_stop ? json(*c.fidelity_stop) : json(nullptr);
    return j;
}

std::string fmt(const char *f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

class Manifest {
  public:
    Manifest(std::string command, const std::vector<std::string> &args)
        : start_(std::chrono::steady_clock::now()) {
        j_["command"] = std::move(command);
        j_["args"] = args;
        j_["version"] = AQCE_VERSION;
        j_["outputs"] = json::array();
        j_["seeds"] = json::array();
    }
    json &operator[](const char *key) { return j_[key]; }
    void output(const fs::path &p) { j_["outputs"].push_back(p.string()); }
    void seed(std::uint64_t s) { j_["seeds"].push_back(s); }

    void write(const fs::path &dir) {
        j_["wall_time_ms"] = std::chrono::duration<double, std::milli>(
                                 std::chrono::steady_clock::now() - start_)
                                 .count();
        const fs::path p = dir / "manifest.json";
        std::ofstream out(p);
        if (!out) {
            throw IoError("cannot open " + p.string() + " for writing");
        }
        out << j_.dump(1) << "\n";
    }

  private:
    json j_;
    std::chrono::steady_clock::time_point start_;
};

void make_dir(const fs::path &dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create " + dir.string() + ": " + ec.message());
    }
}

// "RxC" -> (rows, cols)
std::pair<std::size_t, std::size_t> parse_grid(const std::string &s) {
    const auto x = s.find_first_of("xX");
    std::size_t r = 0;
    std::size_t c = 0;
    try {
        if (x == std::string::npos) {
            throw std::invalid_argument(s);
        }
        std::size_t p1 = 0;
        std::size_t p2 = 0;
        r = std::stoul(s.substr(0, x), &p1);
        c = std::stoul(s.substr(x + 1), &p2);
        if (p1 != x || p2 != s.size() - x - 1) {
            throw std::invalid_argument(s);
        }
    } catch (const std::exception &) {
        throw InputError("--segments: expected RxC, got '" + s + "'");
    }
    if (r == 0 || c == 0) {
        throw InputError("--segments: rows and columns must be positive");
    }
    return {r, c};
}

// "auto" | "trotter:D" | "mera:D"
std::optional<Circuit> parse_structure(const std::string &s, std::size_t L) {
    if (s == "auto") {
        return std::nullopt;
    }
    const auto colon = s.find(':');
    const std::string kind = s.substr(0, colon);
    std::size_t depth = 0;
    try {
        std::size_t pos = 0;
        if (colon == std::string::npos) {
            throw std::invalid_argument(s);
        }
        depth = std::stoul(s.substr(colon + 1), &pos);
        if (pos != s.size() - colon - 1 || depth == 0) {
            throw std::invalid_argument(s);
        }
    } catch (const std::exception &) {
        throw InputError("--structure: expected auto, trotter:D or mera:D, "
                         "got '" + s + "'");
    }
    if (kind == "trotter") {
        return trotter_structure(L, depth);
    }
    if (kind == "mera") {
        return mera_structure(L, depth);
    }
    throw InputError("--structure: unknown layout '" + kind + "'");
}

// ---- encode-state ----------------------------------------------------------

struct EncodeStateArgs {
    std::string model;
    double delta = 1.0;
    std::size_t num_sites = 0;
    std::string target_file;
    std::string structure = "auto";
    bool qasm = false;
    ScheduleFlags schedule;
    CLI::Option *delta_opt = nullptr;
};

int cmd_encode_state(const EncodeStateArgs &a,
                     const std::vector<std::string> &argv, std::ostream &out) {
    if (a.model.empty() == a.target_file.empty()) {
        throw InputError("encode-state: give exactly one of --model or "
                         "--target-file");
    }
    set_thread_count(a.schedule.threads);

    TargetFactory factory;
    std::size_t L = 0;
    json target_info;
    if (!a.model.empty()) {
        if (a.num_sites < 2) {
            throw InputError("encode-state: --L must be at least 2");
        }
        L = a.num_sites;
        XXZModel model{L, 1.0};
        if (a.model == "heisenberg" || a.model == "xy") {
            const double fixed = a.model == "xy" ? 0.0 : 1.0;
            if (a.delta_opt->count() > 0 && a.delta != fixed) {
                throw InputError("--delta conflicts with --model " + a.model +
                                 "; use --model xxz");
            }
            model.delta = fixed;
        } else if (a.model == "xxz") {
            model.delta = a.delta;
        } else {
            throw InputError("--model: expected heisenberg, xy or xxz");
        }
        target_info = {{"model", a.model}, {"L", L}, {"delta", model.delta}};
        factory = [model](std::uint64_t seed) {
            LanczosOptions opt;
            opt.seed = seed;
            return lanczos_ground_state(model, opt).state;
        };
    } else {
        StateVector psi = read_state(a.target_file);
        if (std::abs(psi.norm() - 1.0) > tol::kNorm) {
            throw InputError(a.target_file + ": state is not normalized (norm " +
                             fmt("%.12g", psi.norm()) + ")");
        }
        L = psi.num_qubits();
        if (L < 2) {
            throw InputError(a.target_file + ": need at least 2 qubits");
        }
        target_info = {{"file", a.target_file}, {"L", L}};
        factory = [psi](std::uint64_t) { return psi; };
    }

    EncodeConfig config = a.schedule.resolve(L, L);
    const std::optional<Circuit> layout = parse_structure(a.structure, L);
    const fs::path dir = a.schedule.out;
    make_dir(dir);
    Manifest manifest("encode-state", argv);
    manifest["target"] = target_info;
    manifest["structure"] = a.structure;

    EncodeResult result;
    if (layout) {
        config.mode = EncodeMode::kFixedStructure;
        if (config.restarts == 0) {
            throw InputError("restarts must be at least 1");
        }
        bool have = false;
        for (std::size_t k = 0; k < config.restarts; ++k) {
            const std::uint64_t seed = config.seed + k;
            EncodeResult r = encode_fixed(factory(seed), *layout,
                                          config.sweeps,
                                          FixedInit::kReducedDensity,
                                          config.fidelity_stop, seed);
            r.restart = k;
            r.target_seed = seed;
            manifest.seed(seed);
            if (!have || r.abs_fidelity > result.abs_fidelity) {
                result = std::move(r);
                have = true;
            }
        }
    } else {
        config.validate();
        for (std::size_t k = 0; k < config.restarts; ++k) {
            manifest.seed(config.seed + k);
        }
        result = encode_with_restarts(factory, config);
    }
    json cj = config_json(config);
    cj["mode"] = layout ? "fixed" : "auto";
    manifest["config"] = cj;

    const fs::path circuit_path = dir / "circuit.json";
    const fs::path trace_path = dir / "trace.csv";
    export_json(result.circuit, circuit_path);
    result.trace.write_csv(trace_path, a.schedule.timing);
    manifest.output(circuit_path);
    manifest.output(trace_path);
    if (a.qasm) {
        const fs::path qasm_path = dir / "circuit.qasm";
        export_qasm(result.circuit, qasm_path);
        manifest.output(qasm_path);
    }
    const double f = result.abs_fidelity;
    manifest["result"] = {{"M", result.circuit.size()},
                          {"abs_fidelity", f},
                          {"f_ps", fidelity_per_site(f, L)},
                          {"restart", result.restart},
                          {"target_seed", result.target_seed}};
    manifest.write(dir);

    out << "L = " << L << "\n";
    out << "M = " << result.circuit.size() << "\n";
    out << "|F| = " << fmt("%.15f", f) << "\n";
    out << "1-|F| = " << fmt("%.3e", 1.0 - f) << "\n";
    out << "f_ps = " << fmt("%.15f", fidelity_per_site(f, L)) << "\n";
    return kExitOk;
}

// ---- encode-image ----------------------------------------------------------

struct EncodeImageArgs {
    std::string input;
    std::string segments = "1x1";
    std::vector<std::size_t> checkpoints;
    ScheduleFlags schedule;
};

int cmd_encode_image(const EncodeImageArgs &a,
                     const std::vector<std::string> &argv, std::ostream &out) {
    set_thread_count(a.schedule.threads);
    const ImageGrid image = read_pgm(a.input);
    const auto [rows, cols] = parse_grid(a.segments);
    // Validates divisibility before any work.
    const Segmentation probe = segment_image(image, rows, cols);
    const std::size_t length = probe.segment_width * probe.segment_height;
    std::size_t L = 0;
    while ((std::size_t{1} << L) < length) {
        ++L;
    }
    if (L < 2) {
        throw InputError("encode-image: segments need at least 3 pixels");
    }
    ImageEncodeConfig config;
    config.encode = a.schedule.resolve(L, L);
    config.checkpoints = a.checkpoints;
    if (a.schedule.restarts != 1) {
        throw InputError("encode-image: --restarts is not supported; image "
                         "targets are deterministic");
    }

    const fs::path dir = a.schedule.out;
    make_dir(dir);
    Manifest manifest("encode-image", argv);
    manifest.seed(config.encode.seed);
    manifest["input"] = {{"file", a.input},
                         {"width", image.width},
                         {"height", image.height}};
    json cj = config_json(config.encode);
    cj["segments"] = {rows, cols};
    cj["checkpoints"] = config.checkpoints;
    manifest["config"] = cj;

    const ImagePipelineResult result =
        encode_image_pipeline(image, rows, cols, config);

    const fs::path recon = dir / "reconstructed.pgm";
    write_pgm(recon, result.reconstruction);
    manifest.output(recon);
    const fs::path report = dir / "segments.csv";
    write_segment_report(report, result, a.schedule.timing);
    manifest.output(report);
    for (const auto &s : result.segments) {
        const std::string stem = "segment_" + std::to_string(s.index);
        const fs::path cp = dir / (stem + ".json");
        export_json(s.encoding.circuit, cp);
        manifest.output(cp);
        const fs::path tp = dir / (stem + "_trace.csv");
        s.encoding.trace.write_csv(tp, a.schedule.timing);
        manifest.output(tp);
    }
    for (const auto &[m, img] : result.checkpoint_images) {
        const fs::path p = dir / ("reconstructed_M" + std::to_string(m) + ".pgm");
        write_pgm(p, img);
        manifest.output(p);
    }
    const double mse = mean_square_error(image, result.reconstruction);
    manifest["result"] = {{"segments", result.segments.size()},
                          {"L", L},
                          {"mse", mse}};
    manifest.write(dir);

    out << "segments = " << result.segments.size() << " (L = " << L
        << " each)\n";
    for (const auto &s : result.segments) {
        const double f = s.encoding.abs_fidelity;
        out << "segment " << s.index << ": M = " << s.encoding.circuit.size()
            << ", |F| = " << fmt("%.12f", f)
            << ", f_ps = " << fmt("%.12f", fidelity_per_site(f, L)) << "\n";
    }
    out << "mse = " << fmt("%.6g", mse) << "\n";
    return kExitOk;
}

// ---- decompose -------------------------------------------------------------

struct DecomposeArgs {
    std::string builtin;
    std::string input;
    bool check = false;
    bool qasm = false;
    std::string out;
};

int cmd_decompose(const DecomposeArgs &a, std::ostream &out,
                  std::ostream &err) {
    if (a.builtin.empty() == a.input.empty()) {
        throw InputError("decompose: give exactly one of --builtin or --in");
    }
    Matrix4c u;
    if (!a.builtin.empty()) {
        u = builtin_gate(a.builtin);
    } else {
        std::ifstream in(a.input);
        if (!in) {
            throw IoError("cannot open " + a.input);
        }
        json j;
        try {
            in >> j;
        } catch (const json::exception &e) {
            throw IoError(a.input + ": " + e.what());
        }
        u = matrix_from_json(j);
    }
    const double dev = unitarity_deviation(u);
    if (!(dev <= tol::kUnitaryInput)) {
        err << "error: input is not unitary (deviation " << fmt("%.3e", dev)
            << ")\n";
        return kExitUsage;
    }
    const GateParams p = decompose_gate(u);
    const Matrix4c rebuilt = reconstruct_gate(p);
    const double error = max_abs_diff(rebuilt, u);
    GateParams bare = p;
    bare.global_phase = 0.0;
    const double phase_free = max_abs_diff_up_to_phase(reconstruct_gate(bare), u);

    out << "  k      theta_k\n";
    for (std::size_t k = 0; k < p.theta.size(); ++k) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%3zu  %13.8f\n", k, p.theta[k]);
        out << buf;
    }
    out << "global phase = " << fmt("%.12f", p.global_phase) << "\n";
    out << "reconstruction error = " << fmt("%.3e", error) << "\n";
    out << "reconstruction error up to phase = " << fmt("%.3e", phase_free)
        << "\n";
    if (a.qasm) {
        Circuit c(2);
        c.append({{0, 1}, u});
        out << to_qasm(c);
    }
    if (!a.out.empty()) {
        std::ofstream f(a.out);
        if (!f) {
            throw IoError("cannot open " + a.out + " for writing");
        }
        f << gate_params_to_json(p, true).dump(1) << "\n";
    }
    if (a.check && !(error < tol::kKakReconstruction)) {
        err << "check failed: reconstruction error " << fmt("%.3e", error)
            << "\n";
        return kExitVerify;
    }
    return kExitOk;
}

// ---- verify ----------------------------------------------------------------

struct VerifyArgs {
    std::vector<std::string> only;
    std::string mutate;
    std::uint64_t seed = 1;
};

int cmd_verify(const VerifyArgs &a, std::ostream &out) {
    golden::VerifyOptions opt;
    opt.only = a.only;
    opt.seed = a.seed;
    if (!a.mutate.empty()) {
        const auto colon = a.mutate.find(':');
        if (colon == std::string::npos) {
            throw InputError("--mutate: expected TABLE:OFFSET");
        }
        opt.mutate_table = a.mutate.substr(0, colon);
        try {
            opt.mutate_offset = std::stod(a.mutate.substr(colon + 1));
        } catch (const std::exception &) {
            throw InputError("--mutate: bad offset in '" + a.mutate + "'");
        }
    }
    const auto results = golden::run_checks(opt);
    if (results.empty()) {
        throw InputError("verify: --only matched no checks");
    }
    std::size_t passed = 0;
    for (const auto &r : results) {
        out << golden::format_check(r) << "\n";
        passed += r.passed ? 1 : 0;
    }
    out << passed << "/" << results.size() << " checks passed\n";
    return passed == results.size() ? kExitOk : kExitVerify;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err) {
    CLI::App app{"Automatic quantum circuit encoding", "aqce"};
    app.require_subcommand(1);
    app.set_version_flag("--version", AQCE_VERSION);

    EncodeStateArgs es;
    auto *enc = app.add_subcommand("encode-state",
                                   "encode a model ground state or a state file");
    enc->add_option("--model", es.model, "heisenberg, xy or xxz");
    es.delta_opt = enc->add_option("--delta", es.delta, "XXZ anisotropy");
    enc->add_option("--L", es.num_sites, "number of sites");
    enc->add_option("--target-file", es.target_file,
                    "target state (.qsv or text)");
    enc->add_option("--structure", es.structure, "auto, trotter:D or mera:D")
        ->capture_default_str();
    enc->add_flag("--qasm", es.qasm, "also write circuit.qasm");
    es.schedule.attach(*enc);

    EncodeImageArgs ei;
    auto *img = app.add_subcommand("encode-image", "encode a grayscale PGM image");
    img->add_option("input", ei.input, "input PGM (P2 or P5)")->required();
    img->add_option("--segments", ei.segments, "segment grid RxC")
        ->capture_default_str();
    img->add_option("--checkpoints", ei.checkpoints,
                    "circuit sizes to reconstruct at, e.g. 8,16,32")
        ->delimiter(',');
    ei.schedule.attach(*img);

    DecomposeArgs dc;
    auto *dec = app.add_subcommand("decompose",
                                   "decompose a two-qubit unitary into gates");
    dec->add_option("--builtin", dc.builtin,
                    "identity, cnot, swap, cz, iswap, sqrt-swap");
    dec->add_option("--in", dc.input, "4x4 matrix as JSON (32 doubles)");
    dec->add_flag("--check", dc.check, "exit 3 unless reconstruction < 1e-10");
    dec->add_flag("--qasm", dc.qasm, "print an OpenQASM snippet");
    dec->add_option("--out", dc.out, "write angles as JSON");

    VerifyArgs vf;
    auto *ver = app.add_subcommand("verify", "run the reference check suite");
    ver->add_option("--only", vf.only, "check names or groups")->delimiter(',');
    ver->add_option("--mutate", vf.mutate, "perturb a table, e.g. table2:1e-2");
    ver->add_option("--seed", vf.seed, "seed for random checks")
        ->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*enc) {
            return cmd_encode_state(es, args, out);
        }
        if (*img) {
            return cmd_encode_image(ei, args, out);
        }
        if (*dec) {
            return cmd_decompose(dc, out, err);
        }
        if (*ver) {
            return cmd_verify(vf, out);
        }
    } catch (const InputError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DimensionError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "runtime error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}

} // namespace aqce::cli
