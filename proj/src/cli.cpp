#include "mdiew/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>

#include "mdiew/demos.hpp"
#include "mdiew/scan.hpp"
#include "mdiew/version.hpp"

namespace mdiew {

namespace {

constexpr std::uint64_t kDefaultSeed = 12345;

std::string fmt(double v) {
    if (std::isinf(v)) return "inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

struct SuiteOutcome {
    std::string name;
    bool pass = true;
    double deviation = 0.0;
    std::string note;
};

SuiteOutcome reconstruction_suite(bool inject_beta) {
    WitnessDecomposition decomp = werner_decomposition();
    if (inject_beta) decomp.beta[0][0] += 1e-6;
    SuiteOutcome out;
    out.name = "decomposition-reconstruction";
    out.deviation = verify_decomposition(decomp, werner_witness());
    out.pass = out.deviation <= 1e-10;
    return out;
}

SuiteOutcome game_identity_suite(std::uint64_t seed) {
    const WitnessDecomposition decomp = werner_decomposition();
    SuiteOutcome out;
    out.name = "game-identity";
    for (std::uint64_t k = 0; k < 100; ++k) {
        const DensityMatrix rho =
            reshaped(random_density(4, seed + k), DimFactorization{2, 2});
        const double slow = mdi_value(bell_setup(decomp, rho));
        const double fast = mdi_value_fast(decomp, rho);
        out.deviation = std::max(out.deviation, std::abs(slow - fast));
    }
    out.pass = out.deviation <= 1e-10;
    return out;
}

SuiteOutcome independence_suite(std::uint64_t seed) {
    const WitnessDecomposition decomp = werner_decomposition();
    SuiteOutcome out;
    out.name = "measurement-independence";
    double worst = 0.0;
    for (std::uint64_t trial = 0; trial < 200; ++trial) {
        Rng rng(seed + trial);
        const DensityMatrix shared =
            trial % 2 == 0 ? random_product_state(rng) : random_separable_state(rng, 4);
        PovmElement a = random_povm_element(DimFactorization{2, 2}, rng);
        PovmElement b = random_povm_element(DimFactorization{2, 2}, rng);
        const double v = mdi_value(GameSetup(decomp, shared, std::move(a), std::move(b)));
        worst = std::min(worst, v);
    }
    out.deviation = -worst;
    out.pass = worst >= -1e-9;
    return out;
}

SuiteOutcome channel_suite(std::uint64_t seed) {
    SuiteOutcome out;
    out.name = "channel-certification";
    for (const CatalogEntry& entry : uniform_catalog()) {
        try {
            const KrausChannel ch = to_kraus(entry.spec);
            validate_cptp(ch);
            const KrausChannel adj = adjoint_channel(ch);
            for (std::uint64_t k = 0; k < 10; ++k) {
                Rng rng(seed + k);
                const ComplexMatrix o1 = random_psd(4, rng);
                const ComplexMatrix o2 = random_psd(4, rng);
                const double lhs = trace_product(o1, apply_channel(ch, o2)).real();
                const double rhs = trace_product(apply_channel(adj, o1), o2).real();
                out.deviation = std::max(out.deviation, std::abs(lhs - rhs));
            }
        } catch (const ChannelContractError& e) {
            out.pass = false;
            out.note = entry.name + ": " + e.what();
            return out;
        }
    }
    out.pass = out.deviation <= 1e-10;
    return out;
}

SuiteOutcome preservation_suite(std::uint64_t seed) {
    SuiteOutcome out;
    out.name = "separability-preservation";
    double worst = 0.0;
    for (const CatalogEntry& entry : uniform_catalog()) {
        const SeparabilityVerdict verdict =
            adjoint_preserves_separability(entry.spec, 200, seed);
        worst = std::min(worst, verdict.worst_pt_eigenvalue);
        if (!verdict.pass) {
            out.pass = false;
            out.note = entry.name + " trial " + std::to_string(verdict.counterexample_trial);
        }
    }
    out.deviation = -worst;
    return out;
}

SuiteOutcome noisy_positivity_suite(std::uint64_t seed) {
    const WitnessDecomposition decomp = werner_decomposition();
    SuiteOutcome out;
    out.name = "noisy-game-positivity";
    double worst = 0.0;
    for (const CatalogEntry& entry : uniform_catalog()) {
        for (std::uint64_t trial = 0; trial < 20; ++trial) {
            Rng rng(seed + trial);
            const DensityMatrix shared =
                trial % 2 == 0 ? random_product_state(rng) : random_separable_state(rng, 4);
            PovmElement a = random_povm_element(DimFactorization{2, 2}, rng);
            PovmElement b = random_povm_element(DimFactorization{2, 2}, rng);
            const GameSetup setup(decomp, shared, std::move(a), std::move(b));
            worst = std::min(worst, noisy_mdi_value(setup, entry.spec));
        }
    }
    out.deviation = -worst;
    out.pass = worst >= -1e-9;
    return out;
}

int cmd_verify(std::uint64_t seed, bool inject_beta) {
    std::vector<SuiteOutcome> outcomes;
    outcomes.push_back(reconstruction_suite(inject_beta));
    outcomes.push_back(game_identity_suite(seed));
    outcomes.push_back(independence_suite(seed));
    outcomes.push_back(channel_suite(seed));
    outcomes.push_back(preservation_suite(seed));
    outcomes.push_back(noisy_positivity_suite(seed));
    bool all_pass = true;
    for (const SuiteOutcome& o : outcomes) {
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << o.name
                  << "  max_deviation=" << fmt(o.deviation);
        if (!o.note.empty()) std::cout << "  (" << o.note << ")";
        std::cout << "\n";
        all_pass = all_pass && o.pass;
    }
    if (!all_pass) {
        for (const SuiteOutcome& o : outcomes)
            if (!o.pass) {
                std::cout << "failed invariant: " << o.name << "\n";
                break;
            }
        return 1;
    }
    std::cout << "all invariants hold\n";
    return 0;
}

int cmd_fake_detect(int example, double q) {
    if (example == 1) {
        const DemoMinimum best = nonuniform_demo_minimum(q);
        std::cout << "replacement-noise demo, q=" << fmt(q) << "\n";
        std::cout << "grid minimum: " << fmt(best.min_value) << " at Bloch ("
                  << fmt(best.argmin.n1) << ", " << fmt(best.argmin.n2) << ", "
                  << fmt(best.argmin.n3) << ")\n";
        std::cout << "max |full - closed|: " << fmt(best.max_closed_gap) << "\n";
        return 0;
    }
    std::cout << "entangling-noise demo, branch weight sweep\n";
    for (int k = 0; k <= 10; ++k) {
        const double p = 0.1 * k;
        std::cout << "p=" << fmt(p) << "  value=" << fmt(entangling_demo_value(p)) << "\n";
    }
    return 0;
}

struct ThresholdArgs {
    std::string kind = "white";
    double p1 = 1.0, p2 = 1.0;
    double eps1 = 0.0, eps2 = 0.0;
    double m = 1.0;
    std::vector<double> probs{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    std::size_t i = 1, j = 2;
    std::size_t index = 1;
    std::string convention = "pairs-once";
};

MemorySumConvention parse_convention(const std::string& name) {
    if (name == "all-pairs") return MemorySumConvention::AllPairs;
    if (name == "off-diagonal") return MemorySumConvention::OffDiagonal;
    if (name == "pairs-once") return MemorySumConvention::PairsOnce;
    throw ConfigError("unknown sum convention '" + name + "'");
}

int cmd_threshold(const ThresholdArgs& args) {
    ThresholdResult closed;
    NoiseSpec noise = NoiseSpec::identity();
    if (args.kind == "white") {
        closed = white_noise_threshold(args.p1, args.p2);
        noise = NoiseSpec::white(args.p1, args.p2);
    } else if (args.kind == "pauli-same") {
        closed = pauli_threshold(args.index, args.index, args.p1, args.p2);
        noise = NoiseSpec::pauli_flip(args.index, args.index, args.p1, args.p2);
    } else if (args.kind == "pauli-diff") {
        if (args.i == args.j) throw ConfigError("pauli-diff needs distinct indices");
        closed = pauli_threshold(args.i, args.j, args.p1, args.p2);
        noise = NoiseSpec::pauli_flip(args.i, args.j, args.p1, args.p2);
    } else if (args.kind == "amplitude-damping") {
        closed = amplitude_damping_threshold(args.eps1, args.eps2);
        noise = NoiseSpec::amplitude_damping(args.eps1, args.eps2);
    } else if (args.kind == "admixture-min" || args.kind == "admixture-max") {
        const DensityMatrix x = bloch_state({0.0, 0.0, 1.0});
        const DensityMatrix y =
            bloch_state({0.0, 0.0, args.kind == "admixture-min" ? -1.0 : 1.0});
        closed = admixture_threshold(args.p1, args.p2, x, y);
        noise = NoiseSpec::admixture(args.p1, args.p2, x, y);
    } else if (args.kind == "memory") {
        closed = memory_threshold(args.m, args.probs, parse_convention(args.convention));
        noise = NoiseSpec::correlated_pauli(args.m, args.probs);
    } else {
        throw ConfigError("unknown threshold kind '" + args.kind + "'");
    }
    const ThresholdResult numeric = numeric_threshold(noise);
    std::cout << "closed-form (" << closed.formula_id << "): v_star=" << fmt(closed.v_star)
              << " detectable=" << (closed.detectable ? "yes" : "no") << "\n";
    std::cout << "numeric: v_star=" << fmt(numeric.v_star)
              << " detectable=" << (numeric.detectable ? "yes" : "no") << "\n";
    if (!closed.detectable && !numeric.detectable) {
        std::cout << "difference: n/a (not detectable)\n";
        return 0;
    }
    const double diff = std::abs(closed.v_star - numeric.v_star);
    std::cout << "difference: " << fmt(diff) << "\n";
    if (!(diff <= 1e-6)) {
        std::cout << "threshold mismatch beyond 1e-6\n";
        return 1;
    }
    return 0;
}

AxisSpec default_axis(const std::string& kind, int which) {
    AxisSpec axis;
    axis.name = kind == "amplitude-damping" ? (which == 0 ? "eps1" : "eps2")
                                            : (which == 0 ? "p1" : "p2");
    axis.min = 0.0;
    axis.max = 1.0;
    axis.steps = 101;
    return axis;
}

AxisSpec parse_axis_flag(const std::string& text, const char* label) {
    const std::size_t a = text.find(':');
    const std::size_t b = text.find(':', a == std::string::npos ? a : a + 1);
    const std::size_t c = text.find(':', b == std::string::npos ? b : b + 1);
    if (a == std::string::npos || b == std::string::npos || c == std::string::npos)
        throw ConfigError(std::string(label) + ": expected name:min:max:steps");
    AxisSpec axis;
    axis.name = text.substr(0, a);
    try {
        axis.min = std::stod(text.substr(a + 1, b - a - 1));
        axis.max = std::stod(text.substr(b + 1, c - b - 1));
        axis.steps = static_cast<std::size_t>(std::stoull(text.substr(c + 1)));
    } catch (const std::exception&) {
        throw ConfigError(std::string(label) + ": expected name:min:max:steps");
    }
    return axis;
}

int cmd_scan(const ScanConfig& config, const std::string& out_path) {
    const ScanResult result = run_scan(config);
    write_scan_csv(result, out_path);
    std::size_t detectable = 0;
    for (const auto& row : result.grid)
        for (double cell : row)
            if (!std::isinf(cell)) ++detectable;
    std::cout << "wrote " << result.grid.size() << "x" << result.axis2_values.size()
              << " grid to " << out_path << " (" << detectable << " detectable cells)\n";
    return 0;
}

int cmd_schema() {
    std::cout << "scan config JSON schema:\n"
              << "{\n"
              << "  \"noise_kind\": \"white | pauli-same | pauli-diff | amplitude-damping |"
                 " admixture-min | admixture-max\",\n"
              << "  \"axis1\": {\"name\": \"p1|eps1\", \"min\": 0.0, \"max\": 1.0, \"steps\":"
                 " 101},\n"
              << "  \"axis2\": {\"name\": \"p2|eps2\", \"min\": 0.0, \"max\": 1.0, \"steps\":"
                 " 101},\n"
              << "  \"fixed\": {\"index\": 1, \"i\": 1, \"j\": 2},\n"
              << "  \"seed\": 12345\n"
              << "}\n"
              << "CSV output: header `axis1\\axis2, <axis2 values>`, one row per axis1 value,\n"
              << "12 significant digits, empty cell = not detectable, LF line endings.\n"
              << "A sidecar <out>.meta.json echoes the config, tool version and seed.\n"
              << "Exit codes: 0 success, 1 failed check or runtime error, 2 usage/config"
                 " error.\n";
    return 0;
}

// The grid sweeps clamp huge numbers of -1e-17 probabilities; printing each
// clamp would drown the actual output. Show the first few, then a count.
class WarningAggregator {
public:
    WarningAggregator() {
        previous_ = set_warning_handler([this](const std::string& msg) {
            ++total_;
            if (first_.size() < 3) first_.push_back(msg);
        });
    }
    ~WarningAggregator() {
        set_warning_handler(std::move(previous_));
        for (const std::string& msg : first_) std::fprintf(stderr, "warning: %s\n", msg.c_str());
        if (total_ > first_.size())
            std::fprintf(stderr, "(%zu further warnings suppressed)\n", total_ - first_.size());
    }

private:
    WarningHandler previous_;
    std::vector<std::string> first_;
    std::size_t total_ = 0;
};

}  // namespace

int run_cli(std::vector<std::string> args) {
    WarningAggregator warnings;
    CLI::App app{"Semi-quantum game simulator: entanglement witnesses with noisy referee"
                 " inputs"};
    app.set_version_flag("--version", kVersion);

    std::uint64_t seed = kDefaultSeed;
    std::string out_path;
    std::string config_path;
    app.add_option("--seed", seed, "Seed for all randomized suites");
    app.add_option("--out", out_path, "Output path (scan CSV)");
    app.add_option("--config", config_path, "Scan config JSON path");

    CLI::App* verify = app.add_subcommand("verify", "Run the library invariant suites");
    verify->fallthrough();
    bool inject_beta = false;
    verify->add_flag("--inject-beta-perturbation", inject_beta,
                     "Deliberately corrupt the coefficient table (fault-injection check)");

    CLI::App* fake = app.add_subcommand("fake-detect",
                                        "Demonstrate negative values on separable states");
    fake->fallthrough();
    int example = 0;
    double fake_q = 1.0;
    fake->add_option("--example", example, "1 = replacement noise, 2 = entangling noise")
        ->required()
        ->check(CLI::Range(1, 2));
    fake->add_option("--q", fake_q, "Noise weight for example 1")->check(CLI::Range(0.0, 1.0));

    CLI::App* threshold = app.add_subcommand("threshold",
                                             "Closed-form vs numeric detection threshold");
    threshold->fallthrough();
    ThresholdArgs targs;
    threshold->add_option("--kind", targs.kind,
                          "white | pauli-same | pauli-diff | amplitude-damping |"
                          " admixture-min | admixture-max | memory")
        ->required();
    threshold->add_option("--p1", targs.p1, "First keep probability");
    threshold->add_option("--p2", targs.p2, "Second keep probability");
    threshold->add_option("--eps1", targs.eps1, "First damping strength");
    threshold->add_option("--eps2", targs.eps2, "Second damping strength");
    threshold->add_option("--m", targs.m, "Correlation weight (memory kind)");
    threshold->add_option("--probs", targs.probs, "Three flip probabilities (memory kind)")
        ->expected(3);
    threshold->add_option("--i", targs.i, "First Pauli index (pauli-diff)");
    threshold->add_option("--j", targs.j, "Second Pauli index (pauli-diff)");
    threshold->add_option("--index", targs.index, "Pauli index (pauli-same)");
    threshold->add_option("--convention", targs.convention,
                          "memory pair-sum convention: all-pairs | off-diagonal | pairs-once");

    CLI::App* scan = app.add_subcommand("scan", "Sweep a threshold family onto a CSV grid");
    scan->fallthrough();
    std::string scan_kind;
    std::string axis1_flag, axis2_flag;
    std::vector<std::string> fixed_flags;
    scan->add_option("--kind", scan_kind, "Scan family (see schema)");
    scan->add_option("--axis1", axis1_flag, "Axis spec name:min:max:steps");
    scan->add_option("--axis2", axis2_flag, "Axis spec name:min:max:steps");
    scan->add_option("--fixed", fixed_flags, "Fixed parameter key=value (repeatable)");

    CLI::App* schema = app.add_subcommand("schema", "Print config and output formats");
    schema->fallthrough();

    app.require_subcommand(0, 1);

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (verify->parsed()) return cmd_verify(seed, inject_beta);
        if (fake->parsed()) return cmd_fake_detect(example, fake_q);
        if (threshold->parsed()) return cmd_threshold(targs);
        if (scan->parsed()) {
            ScanConfig config;
            bool have_config = false;
            if (!config_path.empty()) {
                std::ifstream in(config_path);
                if (!in) throw IoError("cannot open '" + config_path + "' for reading");
                nlohmann::json j;
                try {
                    in >> j;
                } catch (const nlohmann::json::exception& e) {
                    throw ConfigError(std::string("invalid scan config: ") + e.what());
                }
                config = scan_config_from_json(j);
                have_config = true;
            }
            if (!scan_kind.empty())
                config.noise_kind = scan_kind;
            else if (!have_config)
                throw ConfigError("scan needs --config or --kind");
            if (!axis1_flag.empty()) config.axis1 = parse_axis_flag(axis1_flag, "axis1");
            else if (!have_config) config.axis1 = default_axis(config.noise_kind, 0);
            if (!axis2_flag.empty()) config.axis2 = parse_axis_flag(axis2_flag, "axis2");
            else if (!have_config) config.axis2 = default_axis(config.noise_kind, 1);
            for (const std::string& kv : fixed_flags) {
                const std::size_t eq = kv.find('=');
                if (eq == std::string::npos)
                    throw ConfigError("fixed: expected key=value, got '" + kv + "'");
                try {
                    config.fixed[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
                } catch (const std::exception&) {
                    throw ConfigError("fixed: bad value in '" + kv + "'");
                }
            }
            if (app.count("--seed") > 0) config.seed = seed;
            const std::string path = out_path.empty() ? "scan.csv" : out_path;
            return cmd_scan(config, path);
        }
        if (schema->parsed()) return cmd_schema();
        std::cout << app.help();
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid parameter: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace mdiew
