#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "loam/errors.hpp"
#include "loam/io.hpp"
#include "loam/verify.hpp"

namespace loam::cli {

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

struct DesignArgs {
    double h_re = 1.0;
    double h_im = 0.0;
    double b_re = 0.0;
    double b_im = 0.0;
    double power = 1.0;
    int order = 0;
    std::string scheme = "loam";
    std::string out_path;
};

struct SweepArgs {
    std::string config_path;
    std::string out_path;
    std::string json_path;
    unsigned threads = 0;
};

bool write_artifact(const std::string& path, const std::string& text, std::ostream& out, std::ostream& err) {
    if (path.empty()) {
        out << text;
        return true;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file || !(file << text)) {
        err << "error: cannot write " << path << '\n';
        return false;
    }
    return true;
}

int cmd_design(const DesignArgs& a, std::ostream& out, std::ostream& err) {
    try {
        const Scheme scheme = parse_scheme(a.scheme);
        const ChannelState state({a.h_re, a.h_im}, {a.b_re, a.b_im}, a.power, a.order);
        const std::string doc = scheme == Scheme::Loam
                                    ? design_to_json(design_loam(state))
                                    : baseline_to_json(gen_baseline(scheme, a.power, a.order), state);
        return write_artifact(a.out_path, doc, out, err) ? kOk : kFailure;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
}

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
    std::ifstream file(a.config_path, std::ios::binary);
    if (!file) {
        err << "error: cannot read " << a.config_path << '\n';
        return kUsage;
    }
    std::stringstream text;
    text << file.rdbuf();
    try {
        const SweepConfig config = parse_sweep_config(text.str());
        const auto points = run_sweep(config, a.threads);
        std::ostringstream csv;
        write_ser_csv(csv, points);
        if (!write_artifact(a.out_path, csv.str(), out, err)) {
            return kFailure;
        }
        if (!a.json_path.empty()) {
            std::ofstream mirror(a.json_path, std::ios::binary);
            if (!mirror || !(mirror << ser_to_json(points))) {
                err << "error: cannot write " << a.json_path << '\n';
                return kFailure;
            }
        }
        return kOk;
    } catch (const ConfigError& e) {
        err << "config error at " << (e.path().empty() ? "/" : e.path()) << ": " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
}

int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err) {
    try {
        const auto checks = run_verification(options);
        out << format_report(checks);
        for (const auto& c : checks) {
            if (!c.passed) {
                return kFailure;
            }
        }
        return kOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Amplitude-only (LO-aware) constellation design and SER simulation", "loam"};
    app.set_version_flag("--version", std::string("loam ") + kVersion);
    app.require_subcommand(1);

    DesignArgs design;
    auto* design_cmd = app.add_subcommand("design", "Design a constellation and print it as JSON");
    design_cmd->add_option("--h-re", design.h_re, "Channel gain, real part")->capture_default_str();
    design_cmd->add_option("--h-im", design.h_im, "Channel gain, imaginary part")->capture_default_str();
    design_cmd->add_option("--b-re", design.b_re, "LO reference, real part")->capture_default_str();
    design_cmd->add_option("--b-im", design.b_im, "LO reference, imaginary part")->capture_default_str();
    design_cmd->add_option("--power", design.power, "Average power budget P")->capture_default_str();
    design_cmd->add_option("--order", design.order, "Alphabet size M")->required();
    design_cmd->add_option("--scheme", design.scheme, "loam|pam|qam|psk")->capture_default_str();
    design_cmd->add_option("--out", design.out_path, "Write JSON here instead of stdout");

    SweepArgs sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run a Monte-Carlo SER sweep from a JSON config, emit CSV");
    sweep_cmd->add_option("config", sweep.config_path, "Sweep configuration (JSON)")->required();
    sweep_cmd->add_option("--out", sweep.out_path, "Write CSV here instead of stdout");
    sweep_cmd->add_option("--json", sweep.json_path, "Also write a JSON mirror of the results");
    sweep_cmd->add_option("--threads", sweep.threads, "Worker cap (0 = available parallelism)");

    VerifyOptions verify;
    verify.threads = std::max(1u, std::thread::hardware_concurrency());
    auto* verify_cmd = app.add_subcommand("verify", "Check closed-form designs against brute-force oracles");
    verify_cmd->add_option("--order", verify.order, "Alphabet size M for the ray checks")->capture_default_str();
    verify_cmd->add_option("--trials", verify.scenarios, "Random scenarios per regime")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    verify_cmd->add_option("--steps", verify.free_grid, "Free-search grid points per dimension (>= 50)")
        ->check(CLI::Range(50, 1000))
        ->capture_default_str();
    verify_cmd->add_option("--ray-steps", verify.ray_steps, "Ray-search coarse cells (>= 1000)")
        ->check(CLI::Range(1000, 10000000))
        ->capture_default_str();
    verify_cmd->add_option("--seed", verify.seed, "Scenario seed")->capture_default_str();
    verify_cmd->add_option("--threads", verify.threads, "Worker cap");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    if (*design_cmd) {
        if (design.order < 2) {
            err << "error: order must be >= 2\n";
            return kUsage;
        }
        return cmd_design(design, out, err);
    }
    if (*sweep_cmd) {
        return cmd_sweep(sweep, out, err);
    }
    if (verify.order < 2) {
        err << "error: order must be >= 2\n";
        return kUsage;
    }
    if (verify.threads == 0) {
        verify.threads = std::max(1u, std::thread::hardware_concurrency());
    }
    return cmd_verify(verify, out, err);
}

} // namespace loam::cli
