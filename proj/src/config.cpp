#include "lltc/config.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>

#include "lltc/fsutil.hpp"
#include "lltc/llselect.hpp"
#include "lltc/rng.hpp"

namespace lltc::config {

namespace {

struct IniValue {
    std::string value;
    std::size_t line = 0;
    mutable bool used = false;
};

struct IniSection {
    std::size_t line = 0;
    std::map<std::string, IniValue> keys;
};

using Ini = std::map<std::string, IniSection>;

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(const std::string& origin, std::size_t line, const std::string& msg) {
    fail(Err::config_invalid, origin + ":" + std::to_string(line) + ": " + msg);
}

Ini parse_ini(const std::string& text, const std::string& origin) {
    Ini ini;
    std::string section;
    std::size_t pos = 0, line_no = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        std::string line = trim(text.substr(pos, eol - pos));
        pos = eol + 1;
        ++line_no;
        if (line.empty() || line[0] == '#' || line[0] == ';') {
            if (pos > text.size()) break;
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') bad(origin, line_no, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) bad(origin, line_no, "empty section name");
            if (ini.count(section)) bad(origin, line_no, "duplicate section [" + section + "]");
            ini[section].line = line_no;
        } else {
            const std::size_t eq = line.find('=');
            if (eq == std::string::npos) bad(origin, line_no, "expected key = value");
            if (section.empty()) bad(origin, line_no, "key outside any section");
            std::string key = trim(line.substr(0, eq));
            std::string value = trim(line.substr(eq + 1));
            if (key.empty()) bad(origin, line_no, "empty key");
            auto [it, inserted] = ini[section].keys.emplace(key, IniValue{value, line_no});
            if (!inserted) bad(origin, line_no, "duplicate key '" + key + "' in [" + section + "]");
        }
        if (pos > text.size()) break;
    }
    return ini;
}

// Typed accessors; every read marks the key used so leftovers can be
// reported as unknown keys.
class SectionReader {
  public:
    SectionReader(const Ini& ini, std::string name, const std::string& origin)
        : origin_(origin), name_(std::move(name)) {
        auto it = ini.find(name_);
        section_ = it == ini.end() ? nullptr : &it->second;
    }

    bool present() const { return section_ != nullptr; }

    std::optional<std::string> raw(const std::string& key) const {
        if (!section_) return std::nullopt;
        auto it = section_->keys.find(key);
        if (it == section_->keys.end()) return std::nullopt;
        it->second.used = true;
        return it->second.value;
    }

    template <typename T>
    T number(const std::string& key, T fallback) const {
        auto v = raw(key);
        if (!v) return fallback;
        T out{};
        auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
        if (ec != std::errc{} || ptr != v->data() + v->size())
            fail(Err::config_invalid, where(key) + ": not a number: '" + *v + "'");
        return out;
    }

    bool boolean(const std::string& key, bool fallback) const {
        auto v = raw(key);
        if (!v) return fallback;
        if (*v == "true" || *v == "1") return true;
        if (*v == "false" || *v == "0") return false;
        fail(Err::config_invalid, where(key) + ": expected true/false, got '" + *v + "'");
    }

    std::string text(const std::string& key, const std::string& fallback) const {
        auto v = raw(key);
        return v ? *v : fallback;
    }

    std::string require(const std::string& key) const {
        auto v = raw(key);
        if (!v) fail(Err::config_invalid, where(key) + ": missing required key");
        return *v;
    }

    void finish() const {
        if (!section_) return;
        for (const auto& [key, val] : section_->keys)
            if (!val.used)
                fail(Err::config_invalid, origin_ + ":" + std::to_string(val.line) +
                                              ": unknown key '" + key + "' in [" + name_ + "]");
    }

    std::string where(const std::string& key) const { return origin_ + ": " + name_ + "." + key; }

  private:
    const std::string& origin_;
    std::string name_;
    const IniSection* section_;
};

std::vector<std::uint64_t> parse_seed_list(const std::string& value, const std::string& where) {
    std::vector<std::uint64_t> seeds;
    std::size_t pos = 0;
    while (pos < value.size()) {
        std::size_t comma = value.find(',', pos);
        if (comma == std::string::npos) comma = value.size();
        std::string tok = trim(value.substr(pos, comma - pos));
        pos = comma + 1;
        if (tok.empty()) continue;
        std::uint64_t s = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), s);
        if (ec != std::errc{} || ptr != tok.data() + tok.size())
            fail(Err::config_invalid, where + ": bad seed '" + tok + "'");
        seeds.push_back(s);
    }
    if (seeds.empty()) fail(Err::config_invalid, where + ": no seeds given");
    std::set<std::uint64_t> uniq(seeds.begin(), seeds.end());
    if (uniq.size() != seeds.size()) fail(Err::config_invalid, where + ": duplicate seeds");
    return seeds;
}

}  // namespace

FileConfig parse_config(const std::string& text, const std::string& origin) {
    Ini ini = parse_ini(text, origin);
    FileConfig cfg;

    SectionReader dataset(ini, "dataset", origin);
    if (!dataset.present())
        fail(Err::config_invalid, origin + ": missing required section [dataset]");
    const std::string source = dataset.text("source", "synth");
    if (source == "synth") {
        cfg.source = FileConfig::Source::synth;
        datagen::SynthSpec& s = cfg.synth;
        s.classes = dataset.number<int>("classes", s.classes);
        s.dim_f = dataset.number<int>("dim_f", s.dim_f);
        s.dim_s = dataset.number<int>("dim_s", s.dim_s);
        s.n_labeled = dataset.number<std::int64_t>("n_labeled", s.n_labeled);
        s.n_unlabeled = dataset.number<std::int64_t>("n_unlabeled", s.n_unlabeled);
        s.n_test = dataset.number<std::int64_t>("n_test", s.n_test);
        s.class_separation = dataset.number<double>("class_separation", s.class_separation);
        s.modality_correlation =
            dataset.number<double>("modality_correlation", s.modality_correlation);
        s.noise_fraction = dataset.number<double>("noise_fraction", s.noise_fraction);
        s.seed = dataset.number<std::uint64_t>("seed", s.seed);
        s.bytes.bytes_per_value = dataset.number<std::int64_t>("bytes_per_value", 8);
        s.bytes.header_bytes = dataset.number<std::int64_t>("sample_header_bytes", 16);
        cfg.bytes = s.bytes;
        cfg.classes = s.classes;
        try {
            s.validate();
        } catch (const Error& e) {
            fail(Err::config_invalid, origin + ": " + e.what());
        }
    } else if (source == "files") {
        cfg.source = FileConfig::Source::files;
        cfg.dataset_dir = dataset.require("dir");
        cfg.classes = dataset.number<int>("classes", 0);
        if (cfg.classes < 2)
            fail(Err::config_invalid, dataset.where("classes") + ": must be >= 2");
        cfg.bytes.bytes_per_value = dataset.number<std::int64_t>("bytes_per_value", 8);
        cfg.bytes.header_bytes = dataset.number<std::int64_t>("sample_header_bytes", 16);
    } else {
        fail(Err::config_invalid, dataset.where("source") + ": must be synth or files");
    }
    dataset.finish();

    SectionReader schedule(ini, "schedule", origin);
    cfg.schedule.k0 = schedule.number<int>("k0", cfg.schedule.k0);
    cfg.schedule.growth = schedule.number<int>("growth", cfg.schedule.growth);
    cfg.schedule.iterations = schedule.number<int>("iterations", cfg.schedule.iterations);
    cfg.schedule.collect_per_round =
        schedule.number<std::int64_t>("collect_per_round", cfg.schedule.collect_per_round);
    if (cfg.schedule.k0 < 1) fail(Err::config_invalid, schedule.where("k0") + ": must be >= 1");
    if (cfg.schedule.growth < 0)
        fail(Err::config_invalid, schedule.where("growth") + ": must be >= 0");
    if (cfg.schedule.iterations < 1)
        fail(Err::config_invalid, schedule.where("iterations") + ": must be >= 1");
    if (cfg.schedule.collect_per_round < 0)
        fail(Err::config_invalid, schedule.where("collect_per_round") + ": must be >= 0");
    schedule.finish();

    SectionReader channel(ini, "channel", origin);
    cfg.channel.count_model_push = channel.boolean("count_model_push", false);
    cfg.channel.header_bytes = channel.number<std::int64_t>("header_bytes", 64);
    try {
        cfg.channel.validate();
    } catch (const Error& e) {
        fail(Err::config_invalid, origin + ": " + e.what());
    }
    channel.finish();

    SectionReader train(ini, "train", origin);
    cfg.train.learning_rate = train.number<double>("learning_rate", cfg.train.learning_rate);
    cfg.train.epochs = train.number<int>("epochs", cfg.train.epochs);
    cfg.train.l2 = train.number<double>("l2", cfg.train.l2);
    try {
        cfg.train.validate();
    } catch (const Error& e) {
        fail(Err::config_invalid, origin + ": " + e.what());
    }
    train.finish();

    SectionReader edge(ini, "edge", origin);
    cfg.noise_detect_rate = edge.number<double>("noise_detect_rate", 1.0);
    if (cfg.noise_detect_rate < 0.0 || cfg.noise_detect_rate > 1.0)
        fail(Err::config_invalid, edge.where("noise_detect_rate") + ": must be in [0, 1]");
    edge.finish();

    for (const auto& [name, section] : ini) {
        if (name == "dataset" || name == "schedule" || name == "channel" || name == "train" ||
            name == "edge" || name == "seeds")
            continue;
        if (name.rfind("strategy.", 0) != 0)
            fail(Err::config_invalid,
                 origin + ":" + std::to_string(section.line) + ": unknown section [" + name + "]");
        const std::string arm = name.substr(9);
        if (arm.empty())
            fail(Err::config_invalid,
                 origin + ":" + std::to_string(section.line) + ": empty strategy name");
        // Arm names become file names.
        for (char ch : arm)
            if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_' && ch != '-')
                fail(Err::config_invalid, origin + ":" + std::to_string(section.line) +
                                              ": strategy name '" + arm +
                                              "' may only use [a-zA-Z0-9_-]");
        SectionReader reader(ini, name, origin);
        baselines::Strategy strategy;
        const std::string kind_name = reader.text("kind", arm);
        auto kind = baselines::strategy_kind_from_name(kind_name);
        if (!kind)
            fail(Err::config_invalid,
                 reader.where("kind") + ": unknown strategy kind '" + kind_name + "'");
        strategy.kind = *kind;
        strategy.params.balanced = reader.boolean("balanced", true);
        if (auto v = reader.raw("tau")) {
            double tau = reader.number<double>("tau", 0.0);
            strategy.params.tau = tau;
        }
        if (auto v = reader.raw("tau_fraction")) {
            double fr = reader.number<double>("tau_fraction", 0.0);
            strategy.params.tau_fraction = fr;
        }
        try {
            strategy.params.validate(strategy.kind);
        } catch (const Error& e) {
            fail(Err::config_invalid, origin + ": [" + name + "]: " + e.what());
        }
        reader.finish();
        cfg.strategies.emplace_back(arm, strategy);
    }
    if (cfg.strategies.empty())
        fail(Err::config_invalid, origin + ": no [strategy.<name>] sections");

    SectionReader seeds(ini, "seeds", origin);
    if (!seeds.present()) fail(Err::config_invalid, origin + ": missing required section [seeds]");
    cfg.seeds = parse_seed_list(seeds.require("run"), seeds.where("run"));
    seeds.finish();

    return cfg;
}

FileConfig load_config(const std::filesystem::path& path) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const Error& e) {
        fail(Err::config_invalid, e.what());
    }
    return parse_config(text, path.string());
}

datagen::Dataset dataset_for_run(const FileConfig& cfg, std::uint64_t run_seed) {
    if (cfg.source == FileConfig::Source::files) {
        return datagen::load(cfg.dataset_dir, cfg.classes, cfg.bytes);
    }
    datagen::SynthSpec spec = cfg.synth;
    spec.seed = Rng::mix(cfg.synth.seed, run_seed);
    return datagen::generate(spec);
}

edgesim::SimConfig sim_config(const FileConfig& cfg, const baselines::Strategy& strategy,
                              std::uint64_t run_seed) {
    edgesim::SimConfig sim;
    sim.strategy = strategy;
    sim.train = cfg.train;
    sim.channel = cfg.channel;
    sim.noise_detect_rate = cfg.noise_detect_rate;
    sim.collect_per_round = cfg.schedule.collect_per_round;
    sim.schedule =
        llselect::iteration_schedule(cfg.schedule.k0, cfg.schedule.iterations, cfg.schedule.growth);
    sim.seed = run_seed;
    return sim;
}

}  // namespace lltc::config
