// Experiment runner for entropy-based edge data selection.
//
//   lltc generate --config cfg.ini --out dir        synthesize dataset CSVs
//   lltc run      --config cfg.ini --out dir        run every (strategy, seed)
//   lltc curves   --input comparison.csv --out pfx  accuracy-vs-traffic tables
//
// Exit codes: 0 success, 2 config/usage error, 3 runtime failure.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lltc/config.hpp"
#include "lltc/datagen.hpp"
#include "lltc/fsutil.hpp"
#include "lltc/report.hpp"
#include "lltc/runner.hpp"

namespace fs = std::filesystem;
using namespace lltc;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

int cmd_generate(const std::string& config_path, const std::string& out_dir) {
    config::FileConfig cfg;
    try {
        cfg = config::load_config(config_path);
        if (cfg.source != config::FileConfig::Source::synth)
            fail(Err::config_invalid, "generate needs dataset.source = synth");
    } catch (const Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    try {
        datagen::Dataset d = datagen::generate(cfg.synth);
        datagen::save(d, out_dir);
        std::cout << "wrote " << out_dir << ": labeled=" << d.labeled.size()
                  << " unlabeled=" << d.unlabeled.size() << " test=" << d.test.size()
                  << " classes=" << d.classes << " dim_f=" << d.dim_f << " dim_s=" << d.dim_s
                  << "\n";
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

int cmd_run(const std::string& config_path, const std::string& out_dir, bool force,
            std::optional<std::uint64_t> seed_override, int jobs) {
    config::FileConfig cfg;
    std::vector<fs::path> targets;
    try {
        cfg = config::load_config(config_path);
        const std::vector<std::uint64_t> seeds =
            seed_override ? std::vector<std::uint64_t>{*seed_override} : cfg.seeds;
        for (const auto& [name, strategy] : cfg.strategies)
            for (std::uint64_t seed : seeds) {
                targets.push_back(fs::path(out_dir) /
                                  (name + "_seed" + std::to_string(seed) + ".csv"));
                targets.push_back(fs::path(out_dir) /
                                  (name + "_seed" + std::to_string(seed) + ".json"));
            }
        targets.push_back(fs::path(out_dir) / "comparison.csv");
        if (!force)
            for (const fs::path& t : targets)
                if (fs::exists(t))
                    fail(Err::config_invalid,
                         t.string() + " already exists; pass --force to overwrite");
    } catch (const Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }

    try {
        std::vector<report::RunRecord> runs = runner::run_all(cfg, jobs, seed_override);
        fs::create_directories(out_dir);
        for (const report::RunRecord& run : runs) {
            const std::string stem = run.strategy + "_seed" + std::to_string(run.seed);
            write_file_atomic(fs::path(out_dir) / (stem + ".csv"), report::rounds_to_csv(run));
            write_file_atomic(fs::path(out_dir) / (stem + ".json"), report::summary_to_json(run));
            const edgesim::RoundReport& last = run.rounds.back();
            std::cout << stem << ": rounds=" << run.rounds.size() - 1
                      << " final_accuracy=" << last.cloud_accuracy
                      << " bytes_up=" << last.cum_bytes_up << "\n";
        }
        write_file_atomic(fs::path(out_dir) / "comparison.csv", report::comparison_to_csv(runs));
        std::cout << "wrote " << (fs::path(out_dir) / "comparison.csv").string() << " ("
                  << runs.size() << " runs)\n";
        return 0;
    } catch (const Error& e) {
        std::cerr << "run error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

int cmd_curves(const std::string& input, const std::string& out_prefix) {
    try {
        std::vector<report::ComparisonRow> rows =
            report::parse_comparison_csv(read_file(input), input);
        report::CurveTables tables = report::curves_from_comparison(rows);
        const fs::path bytes_path = out_prefix + "_bytes.csv";
        const fs::path pool_path = out_prefix + "_pool.csv";
        if (bytes_path.has_parent_path()) fs::create_directories(bytes_path.parent_path());
        write_file_atomic(bytes_path, tables.bytes_csv);
        write_file_atomic(pool_path, tables.pool_csv);
        std::cout << "wrote " << bytes_path.string() << " and " << pool_path.string() << "\n";
        return 0;
    } catch (const Error& e) {
        const bool usage = e.kind() == Err::schema_violation || e.kind() == Err::io_failure;
        std::cerr << (usage ? "input error: " : "error: ") << e.what() << "\n";
        return usage ? kExitConfig : kExitRuntime;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"edge-cloud data selection simulator"};
    app.require_subcommand(1);

    std::string config_path, out_path, input_path;
    bool force = false;
    int jobs = 1;
    std::optional<std::uint64_t> seed_override;
    std::uint64_t seed_value = 0;

    CLI::App* generate = app.add_subcommand("generate", "write dataset CSVs from [dataset]");
    generate->add_option("--config", config_path, "config file")->required();
    generate->add_option("--out", out_path, "output directory")->required();

    CLI::App* run = app.add_subcommand("run", "run all (strategy, seed) experiments");
    run->add_option("--config", config_path, "config file")->required();
    run->add_option("--out", out_path, "output directory")->required();
    run->add_flag("--force", force, "overwrite existing report files");
    CLI::Option* seed_opt =
        run->add_option("--seed", seed_value, "replace the config seed list with one seed");
    run->add_option("--jobs", jobs, "parallel runs")->check(CLI::PositiveNumber);

    CLI::App* curves = app.add_subcommand("curves", "aggregate a comparison.csv into curve tables");
    curves->add_option("--input", input_path, "comparison.csv from `run`")->required();
    curves->add_option("--out", out_path, "output path prefix")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        app.exit(e);
        return kExitConfig;
    }

    if (seed_opt->count() > 0) seed_override = seed_value;

    if (generate->parsed()) return cmd_generate(config_path, out_path);
    if (run->parsed()) return cmd_run(config_path, out_path, force, seed_override, jobs);
    if (curves->parsed()) return cmd_curves(input_path, out_path);
    return kExitConfig;
}
