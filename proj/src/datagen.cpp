#include "lltc/datagen.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "lltc/fsutil.hpp"
#include "lltc/rng.hpp"

namespace lltc::datagen {

namespace {

// Background noise samples are iid N(0, kNoiseSigma^2), centred at the
// origin while class centroids sit at radius ~separation/sqrt(2).
constexpr double kNoiseSigma = 2.0;

}  // namespace

void SynthSpec::validate() const {
    auto reject = [](const std::string& msg) { fail(Err::spec_invalid, "dataset: " + msg); };
    if (classes < 2) reject("classes must be >= 2");
    if (dim_f < 1 || dim_s < 1) reject("dim_f and dim_s must be >= 1");
    if (n_labeled < classes || n_unlabeled < classes || n_test < classes)
        reject("n_labeled, n_unlabeled and n_test must each be >= classes");
    if (!(class_separation > 0.0) || class_separation > 100.0)
        reject("class_separation must be in (0, 100]");
    if (modality_correlation < 0.0 || modality_correlation > 1.0)
        reject("modality_correlation must be in [0, 1]");
    if (noise_fraction < 0.0 || noise_fraction >= 1.0)
        reject("noise_fraction must be in [0, 1)");
    if (bytes.bytes_per_value < 1 || bytes.header_bytes < 0) reject("invalid byte encoding");
}

namespace {

using Centroids = std::vector<std::vector<double>>;

Centroids draw_centroids(Rng stream, int classes, int dim, double separation) {
    // Per-coordinate sigma such that the expected squared inter-centroid
    // distance is separation^2 (cluster noise has sigma 1).
    const double sigma = separation / std::sqrt(2.0 * dim);
    Centroids cs(static_cast<std::size_t>(classes), std::vector<double>(static_cast<std::size_t>(dim)));
    for (auto& c : cs)
        for (double& v : c) v = sigma * stream.next_normal();
    return cs;
}

std::vector<double> cluster_point(Rng& stream, const std::vector<double>& centroid) {
    std::vector<double> v(centroid.size());
    for (std::size_t d = 0; d < v.size(); ++d) v[d] = centroid[d] + stream.next_normal();
    return v;
}

std::vector<double> background_point(Rng& stream, int dim) {
    std::vector<double> v(static_cast<std::size_t>(dim));
    for (double& x : v) x = kNoiseSigma * stream.next_normal();
    return v;
}

// Draws n samples: balanced round-robin labels over the non-noise positions,
// modality s cluster-swapped with probability (1 - correlation).
std::vector<Sample> draw_set(Rng stream, const SynthSpec& spec, std::int64_t first_id,
                             std::int64_t n, const Centroids& cf, const Centroids& cs,
                             const std::vector<bool>& noise_at, std::vector<int>* labels_out) {
    std::vector<Sample> out;
    out.reserve(static_cast<std::size_t>(n));
    int next_label = 0;
    for (std::int64_t i = 0; i < n; ++i) {
        Sample s;
        s.id = first_id + i;
        s.size_bytes = sample_size_bytes(spec.dim_f, spec.dim_s, spec.bytes);
        if (!noise_at.empty() && noise_at[static_cast<std::size_t>(i)]) {
            s.is_noise = true;
            s.feat_f = background_point(stream, spec.dim_f);
            s.feat_s = background_point(stream, spec.dim_s);
            if (labels_out) labels_out->push_back(-1);
        } else {
            const int label = next_label;
            next_label = (next_label + 1) % spec.classes;
            s.true_label = label;
            s.feat_f = cluster_point(stream, cf[static_cast<std::size_t>(label)]);
            int s_class = label;
            if (!stream.next_bernoulli(spec.modality_correlation))
                s_class = static_cast<int>(stream.next_below(static_cast<std::uint64_t>(spec.classes)));
            s.feat_s = cluster_point(stream, cs[static_cast<std::size_t>(s_class)]);
            if (labels_out) labels_out->push_back(label);
        }
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace

Dataset generate(const SynthSpec& spec) {
    spec.validate();
    Rng root(spec.seed);
    const Centroids cf = draw_centroids(root.fork(1), spec.classes, spec.dim_f, spec.class_separation);
    const Centroids cs = draw_centroids(root.fork(2), spec.classes, spec.dim_s, spec.class_separation);

    Dataset d;
    d.classes = spec.classes;
    d.dim_f = spec.dim_f;
    d.dim_s = spec.dim_s;

    d.labeled.classes = spec.classes;
    d.labeled.samples = draw_set(root.fork(3), spec, 0, spec.n_labeled, cf, cs, {}, &d.labeled.labels);

    // Pick which pool positions are noise, then fill the rest round-robin.
    const auto n_noise =
        static_cast<std::int64_t>(spec.noise_fraction * static_cast<double>(spec.n_unlabeled) + 0.5);
    std::vector<bool> noise_at(static_cast<std::size_t>(spec.n_unlabeled), false);
    {
        Rng pick = root.fork(4);
        std::vector<std::int64_t> idx(static_cast<std::size_t>(spec.n_unlabeled));
        std::iota(idx.begin(), idx.end(), std::int64_t{0});
        for (std::int64_t i = 0; i < n_noise; ++i) {
            const auto j = static_cast<std::size_t>(i) +
                           static_cast<std::size_t>(pick.next_below(idx.size() - static_cast<std::size_t>(i)));
            std::swap(idx[static_cast<std::size_t>(i)], idx[j]);
            noise_at[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])] = true;
        }
    }
    d.unlabeled.samples =
        draw_set(root.fork(5), spec, spec.n_labeled, spec.n_unlabeled, cf, cs, noise_at, nullptr);

    d.test.classes = spec.classes;
    d.test.samples = draw_set(root.fork(6), spec, spec.n_labeled + spec.n_unlabeled, spec.n_test,
                              cf, cs, {}, &d.test.labels);
    return d;
}

// ---------------------------------------------------------------------------
// CSV schema: header `id,label,is_noise,f_0..f_{df-1},s_0..s_{ds-1}`, LF line
// endings, shortest round-trip decimals. label is the ground-truth class when
// known and -1 otherwise; files in the unlabeled role are treated as
// unlabeled regardless (ground truth is used only for reporting).

std::string set_to_csv(std::span<const Sample> samples, std::span<const int> labels) {
    const int dim_f = samples.empty() ? 0 : static_cast<int>(samples[0].feat_f.size());
    const int dim_s = samples.empty() ? 0 : static_cast<int>(samples[0].feat_s.size());
    std::string out = "id,label,is_noise";
    for (int j = 0; j < dim_f; ++j) out += ",f_" + std::to_string(j);
    for (int j = 0; j < dim_s; ++j) out += ",s_" + std::to_string(j);
    out += '\n';
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const Sample& s = samples[i];
        const int label = labels.empty() ? (s.true_label ? *s.true_label : -1)
                                         : labels[i];
        out += format_int(s.id);
        out += ',';
        out += format_int(label);
        out += ',';
        out += s.is_noise ? '1' : '0';
        for (double v : s.feat_f) {
            out += ',';
            out += format_double(v);
        }
        for (double v : s.feat_s) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

[[noreturn]] void schema_error(const std::string& origin, std::size_t line_no,
                               const std::string& msg) {
    fail(Err::schema_violation, origin + ":" + std::to_string(line_no) + ": " + msg);
}

double parse_double(const std::string& origin, std::size_t line_no, const std::string& field,
                    const std::string& text) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        schema_error(origin, line_no, "field " + field + ": not a number: '" + text + "'");
    return v;
}

std::int64_t parse_int(const std::string& origin, std::size_t line_no, const std::string& field,
                       const std::string& text) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        schema_error(origin, line_no, "field " + field + ": not an integer: '" + text + "'");
    return v;
}

}  // namespace

ParsedSet set_from_csv(const std::string& text, const std::string& origin, int classes,
                       const SampleBytes& bytes) {
    ParsedSet set;
    std::size_t pos = 0, line_no = 0;
    bool saw_header = false;
    std::unordered_set<std::int64_t> ids;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        std::string line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> fields = split_csv_line(line);
        if (!saw_header) {
            if (fields.size() < 3 || fields[0] != "id" || fields[1] != "label" ||
                fields[2] != "is_noise")
                schema_error(origin, line_no, "header must start with id,label,is_noise");
            std::size_t j = 3;
            while (j < fields.size() && fields[j] == "f_" + std::to_string(set.dim_f)) {
                ++set.dim_f;
                ++j;
            }
            while (j < fields.size() && fields[j] == "s_" + std::to_string(set.dim_s)) {
                ++set.dim_s;
                ++j;
            }
            if (j != fields.size())
                schema_error(origin, line_no, "unexpected header column '" + fields[j] + "'");
            saw_header = true;
            continue;
        }
        const std::size_t want = 3 + static_cast<std::size_t>(set.dim_f) + static_cast<std::size_t>(set.dim_s);
        if (fields.size() != want)
            schema_error(origin, line_no,
                         "expected " + std::to_string(want) + " fields, got " +
                             std::to_string(fields.size()));
        Sample s;
        s.id = parse_int(origin, line_no, "id", fields[0]);
        if (s.id < 0) schema_error(origin, line_no, "id must be non-negative");
        if (!ids.insert(s.id).second)
            schema_error(origin, line_no, "duplicate id " + std::to_string(s.id));
        const std::int64_t label = parse_int(origin, line_no, "label", fields[1]);
        if (label < -1 || label >= classes)
            schema_error(origin, line_no,
                         "label " + std::to_string(label) + " outside [-1, " +
                             std::to_string(classes) + ") for id " + std::to_string(s.id));
        if (fields[2] == "1")
            s.is_noise = true;
        else if (fields[2] != "0")
            schema_error(origin, line_no, "is_noise must be 0 or 1");
        if (label >= 0) s.true_label = static_cast<int>(label);
        s.feat_f.reserve(static_cast<std::size_t>(set.dim_f));
        s.feat_s.reserve(static_cast<std::size_t>(set.dim_s));
        std::size_t j = 3;
        for (int dd = 0; dd < set.dim_f; ++dd, ++j)
            s.feat_f.push_back(parse_double(origin, line_no, "f_" + std::to_string(dd), fields[j]));
        for (int dd = 0; dd < set.dim_s; ++dd, ++j)
            s.feat_s.push_back(parse_double(origin, line_no, "s_" + std::to_string(dd), fields[j]));
        s.size_bytes = sample_size_bytes(set.dim_f, set.dim_s, bytes);
        set.labels.push_back(static_cast<int>(label));
        set.samples.push_back(std::move(s));
    }
    if (!saw_header) schema_error(origin, 1, "missing header");
    return set;
}

void save(const Dataset& d, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) fail(Err::io_failure, "cannot create " + dir.string() + ": " + ec.message());
    write_file_atomic(dir / "labeled.csv", set_to_csv(d.labeled.samples, d.labeled.labels));
    write_file_atomic(dir / "unlabeled.csv", set_to_csv(d.unlabeled.samples, {}));
    write_file_atomic(dir / "test.csv", set_to_csv(d.test.samples, d.test.labels));
}

Dataset load(const std::filesystem::path& dir, int classes, const SampleBytes& bytes) {
    Dataset d;
    d.classes = classes;

    ParsedSet labeled = set_from_csv(read_file(dir / "labeled.csv"), (dir / "labeled.csv").string(),
                                     classes, bytes);
    for (std::size_t i = 0; i < labeled.labels.size(); ++i)
        if (labeled.labels[i] < 0)
            fail(Err::schema_violation, (dir / "labeled.csv").string() + ": sample id " +
                                            std::to_string(labeled.samples[i].id) +
                                            " in the labeled set has no label");
    d.labeled.samples = std::move(labeled.samples);
    d.labeled.labels = std::move(labeled.labels);
    d.labeled.classes = classes;

    ParsedSet pool = set_from_csv(read_file(dir / "unlabeled.csv"),
                                  (dir / "unlabeled.csv").string(), classes, bytes);
    d.unlabeled.samples = std::move(pool.samples);

    ParsedSet test = set_from_csv(read_file(dir / "test.csv"), (dir / "test.csv").string(), classes,
                                  bytes);
    for (std::size_t i = 0; i < test.labels.size(); ++i)
        if (test.labels[i] < 0)
            fail(Err::schema_violation, (dir / "test.csv").string() + ": sample id " +
                                            std::to_string(test.samples[i].id) +
                                            " in the test set has no label");
    d.test.samples = std::move(test.samples);
    d.test.labels = std::move(test.labels);
    d.test.classes = classes;

    d.dim_f = labeled.dim_f ? labeled.dim_f : pool.dim_f;
    d.dim_s = labeled.dim_s ? labeled.dim_s : pool.dim_s;

    std::unordered_set<std::int64_t> ids;
    auto check_ids = [&](const std::vector<Sample>& samples, const char* which) {
        for (const Sample& s : samples)
            if (!ids.insert(s.id).second)
                fail(Err::schema_violation, std::string("duplicate sample id ") +
                                                std::to_string(s.id) + " across sets (" + which +
                                                ")");
    };
    check_ids(d.labeled.samples, "labeled");
    check_ids(d.unlabeled.samples, "unlabeled");
    check_ids(d.test.samples, "test");
    return d;
}

}  // namespace lltc::datagen
