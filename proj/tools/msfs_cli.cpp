// msfs: run experiments, compare results against golden tables, list case studies.
//
// Exit codes: 0 success, 1 verify found differing cells, 2 config or schema
// error, 3 runtime model error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "msfs/cli/manifest.hpp"
#include "msfs/cli/runners.hpp"
#include "msfs/cli/verify.hpp"

namespace fs = std::filesystem;
using namespace msfs::cli;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct RunArgs {
    std::string config, out = "results";
    int jobs = 1;
    std::optional<std::uint64_t> seed;
    bool full_trace = false;
};

int cmd_run(const RunArgs& a) {
    Plan plan;
    std::string text;
    try {
        text = read_text(a.config);
        plan = plan_experiment(parse_config_text(text, a.config), a.seed);
        if (a.jobs < 0) throw msfs::ConfigError("--jobs must be non-negative");
        if (fs::exists(a.out) && !fs::is_directory(a.out)) throw msfs::ConfigError(a.out + " is not a directory");
    } catch (const msfs::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }

    const int jobs = a.jobs == 0 ? static_cast<int>(std::max(1u, std::thread::hardware_concurrency())) : a.jobs;
    std::vector<Table> tables;
    try {
        tables = plan.run(jobs, a.full_trace);
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << '\n';
        return kExitRuntime;
    }

    try {
        fs::create_directories(a.out);
        RunManifest m;
        m.config_path = a.config;
        m.output_dir = a.out;
        m.case_study = plan.case_study;
        m.experiment = plan.experiment;
        m.config_hash = git_blob_hash(text);
        m.effective = plan.effective;
        m.effective_hash = git_blob_hash(plan.effective.dump());
        m.seed = plan.seed;
        m.jobs = jobs;
        m.full_trace = a.full_trace;
        m.timestamp = utc_timestamp();
        for (const auto& t : tables) {
            std::ostringstream os;
            write_csv(os, t);
            const std::string file = t.name + ".csv";
            std::ofstream f(fs::path(a.out) / file, std::ios::binary);
            if (!(f << os.str())) throw std::runtime_error("cannot write " + file);
            m.outputs.push_back({file, t.rows.size(), sha1_hex(os.str())});
            std::cout << (fs::path(a.out) / file).string() << " (" << t.rows.size() << " rows)\n";
        }
        std::ofstream f(fs::path(a.out) / "manifest.json", std::ios::binary);
        if (!(f << m.to_json().dump(2) << '\n')) throw std::runtime_error("cannot write manifest.json");
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return 0;
}

int cmd_verify(const std::string& golden, const std::string& results, double tol, const std::string& report) {
    VerifyReport rep;
    try {
        rep = verify_tables(read_csv(golden), read_csv(results), tol);
    } catch (const msfs::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    print_failures(std::cout, rep);
    if (!report.empty()) {
        try {
            write_csv(report, report_table(rep));
        } catch (const std::exception& e) {
            std::cerr << "runtime error: " << e.what() << '\n';
            return kExitRuntime;
        }
    }
    return rep.ok() ? 0 : 1;
}

std::string joined(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ",") + x;
    return s;
}

int cmd_list() {
    for (const auto& c : registry())
        std::cout << c.id << " strategies=" << joined(c.strategies) << " experiments=" << joined(c.experiments) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-scale feedback systems: information measures for four case studies"};
    app.require_subcommand(1);

    RunArgs ra;
    auto* run = app.add_subcommand("run", "Run the experiment described by a config file");
    run->add_option("--config", ra.config, "Experiment config (JSON)")->required();
    run->add_option("--out", ra.out, "Output directory")->capture_default_str();
    run->add_option("--jobs", ra.jobs, "Worker threads; 0 uses every core")->capture_default_str();
    run->add_option("--seed", ra.seed, "Overrides the config seed");
    run->add_flag("--full-trace", ra.full_trace, "Also write state snapshots");

    std::string golden, results, report;
    double tol = 0.0;
    auto* verify = app.add_subcommand("verify", "Compare a results CSV against a golden CSV");
    verify->add_option("--golden", golden, "Golden CSV")->required();
    verify->add_option("--results", results, "Results CSV")->required();
    verify->add_option("--tolerance", tol, "Absolute tolerance per cell")->capture_default_str();
    verify->add_option("--report", report, "Write every compared cell to this CSV");

    auto* list = app.add_subcommand("list", "List case studies, strategies and experiments");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }
    if (run->parsed()) return cmd_run(ra);
    if (verify->parsed()) return cmd_verify(golden, results, tol, report);
    if (list->parsed()) return cmd_list();
    return kExitConfig;
}
