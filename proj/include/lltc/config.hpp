#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "lltc/baselines.hpp"
#include "lltc/classifier.hpp"
#include "lltc/datagen.hpp"
#include "lltc/edgesim.hpp"

// INI-style experiment configuration. Sections: [dataset], [schedule],
// [channel], [train], [edge], [strategy.<name>] (one per run arm), [seeds].
// Full schema in docs/formats.md. Unknown sections and keys are errors;
// environment variables override nothing.

namespace lltc::config {

struct ScheduleConfig {
    int k0 = 10;
    int growth = 0;
    int iterations = 1;
    std::int64_t collect_per_round = 0;
};

struct FileConfig {
    enum class Source { synth, files };
    Source source = Source::synth;
    datagen::SynthSpec synth;
    std::filesystem::path dataset_dir;  // source = files
    int classes = 0;                    // source = files
    SampleBytes bytes;

    ScheduleConfig schedule;
    edgesim::ChannelConfig channel;
    classifier::TrainConfig train;
    double noise_detect_rate = 1.0;

    // Run arms in file order: (arm name, strategy).
    std::vector<std::pair<std::string, baselines::Strategy>> strategies;
    std::vector<std::uint64_t> seeds;
};

// Throws Err::config_invalid with file:line or section.key context.
FileConfig parse_config(const std::string& text, const std::string& origin);
FileConfig load_config(const std::filesystem::path& path);

// Materializes the dataset for one run seed. Synthetic datasets derive their
// generation seed from (dataset seed, run seed) so every run arm at the same
// run seed sees the same data.
datagen::Dataset dataset_for_run(const FileConfig& cfg, std::uint64_t run_seed);

// Assembles the simulator configuration for one (strategy, seed) arm.
edgesim::SimConfig sim_config(const FileConfig& cfg, const baselines::Strategy& strategy,
                              std::uint64_t run_seed);

}  // namespace lltc::config
