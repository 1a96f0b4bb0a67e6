#include "lltc/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <nlohmann/json.hpp>

#include "lltc/kernels.hpp"
#include "lltc/rng.hpp"

namespace lltc::classifier {

void TrainConfig::validate() const {
    if (!(learning_rate > 0.0) || learning_rate > 10.0)
        fail(Err::config_invalid, "train.learning_rate must be in (0, 10]");
    if (epochs < 1 || epochs > 100000)
        fail(Err::config_invalid, "train.epochs must be in [1, 100000]");
    if (l2 < 0.0 || !std::isfinite(l2)) fail(Err::config_invalid, "train.l2 must be >= 0");
}

std::int64_t model_size_bytes(const Head& f, const Head& s) {
    return 8 * static_cast<std::int64_t>(f.w.size() + s.w.size()) + 16;
}

DesignMatrix modality_matrix(std::span<const Sample> samples, bool modality_f) {
    DesignMatrix m;
    m.n = static_cast<int>(samples.size());
    m.dim = samples.empty()
                ? 0
                : static_cast<int>(modality_f ? samples[0].feat_f.size() : samples[0].feat_s.size());
    m.x.reserve(static_cast<std::size_t>(m.n) * m.dim);
    for (const Sample& s : samples) {
        const std::vector<double>& feat = modality_f ? s.feat_f : s.feat_s;
        if (static_cast<int>(feat.size()) != m.dim)
            fail(Err::dimension_mismatch, "sample " + std::to_string(s.id) +
                                              " has feature dim " + std::to_string(feat.size()) +
                                              ", expected " + std::to_string(m.dim));
        m.x.insert(m.x.end(), feat.begin(), feat.end());
    }
    return m;
}

namespace {

// scores[r] = w_r . x + bias_r
void affine_scores(const Head& head, std::span<const double> feat, std::span<double> scores) {
    for (int r = 0; r < head.classes; ++r) {
        std::span<const double> row = head.row(r);
        scores[static_cast<std::size_t>(r)] =
            kernels::dot(row.first(static_cast<std::size_t>(head.dim)), feat) + row[head.dim];
    }
}

// Writes exp(scores - max) into out, returns (max, sum of out).
std::pair<double, double> shifted_exp(std::span<const double> scores, std::span<double> out) {
    double max = scores[0];
    for (double v : scores) max = std::max(max, v);
    double sum = 0.0;
    for (std::size_t j = 0; j < scores.size(); ++j) {
        out[j] = std::exp(scores[j] - max);
        sum += out[j];
    }
    return {max, sum};
}

}  // namespace

double head_loss(const Head& head, const DesignMatrix& X, std::span<const int> y, double l2) {
    const int c = head.classes;
    std::vector<double> scores(static_cast<std::size_t>(c));
    std::vector<double> e(static_cast<std::size_t>(c));
    double total = 0.0;
    for (int i = 0; i < X.n; ++i) {
        affine_scores(head, X.row(i), scores);
        auto [max, sum] = shifted_exp(scores, e);
        total += -(scores[static_cast<std::size_t>(y[i])] - max - std::log(sum));
    }
    double loss = total / X.n;
    for (int r = 0; r < c; ++r) {
        std::span<const double> row = head.row(r);
        loss += 0.5 * l2 *
                kernels::dot(row.first(static_cast<std::size_t>(head.dim)),
                             row.first(static_cast<std::size_t>(head.dim)));
    }
    return loss;
}

double head_loss_grad(const Head& head, const DesignMatrix& X, std::span<const int> y, double l2,
                      std::span<double> grad) {
    const int c = head.classes;
    const int cols = head.cols();
    std::fill(grad.begin(), grad.end(), 0.0);
    std::vector<double> scores(static_cast<std::size_t>(c));
    std::vector<double> e(static_cast<std::size_t>(c));
    double total = 0.0;
    for (int i = 0; i < X.n; ++i) {
        std::span<const double> xi = X.row(i);
        affine_scores(head, xi, scores);
        auto [max, sum] = shifted_exp(scores, e);
        total += -(scores[static_cast<std::size_t>(y[i])] - max - std::log(sum));
        for (int r = 0; r < c; ++r) {
            double coef = e[static_cast<std::size_t>(r)] / sum - (r == y[i] ? 1.0 : 0.0);
            std::span<double> grow{grad.data() + static_cast<std::size_t>(r) * cols,
                                   static_cast<std::size_t>(cols)};
            kernels::axpy(coef, xi, grow.first(static_cast<std::size_t>(head.dim)));
            grow[head.dim] += coef;  // bias
        }
    }
    const double inv_n = 1.0 / X.n;
    for (double& g : grad) g *= inv_n;
    if (l2 > 0.0) {
        for (int r = 0; r < c; ++r) {
            std::span<const double> row = head.row(r);
            std::span<double> grow{grad.data() + static_cast<std::size_t>(r) * cols,
                                   static_cast<std::size_t>(cols)};
            kernels::axpy(l2, row.first(static_cast<std::size_t>(head.dim)),
                          grow.first(static_cast<std::size_t>(head.dim)));
        }
    }
    double reg = 0.0;
    for (int r = 0; r < c; ++r) {
        std::span<const double> row = head.row(r);
        reg += 0.5 * l2 *
               kernels::dot(row.first(static_cast<std::size_t>(head.dim)),
                            row.first(static_cast<std::size_t>(head.dim)));
    }
    return total / X.n + reg;
}

Head train_head(const DesignMatrix& X, std::span<const int> y, int classes,
                const TrainConfig& cfg) {
    Head head;
    head.classes = classes;
    head.dim = X.dim;
    head.w.assign(static_cast<std::size_t>(classes) * head.cols(), 0.0);
    std::vector<double> grad(head.w.size());
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        double loss = head_loss_grad(head, X, y, cfg.l2, grad);
        if (!std::isfinite(loss))
            fail(Err::degenerate, "non-finite loss at epoch " + std::to_string(epoch));
        kernels::axpy(-cfg.learning_rate, grad, head.w);
    }
    return head;
}

ModelSnapshot train(const LabeledSet& labeled, const TrainConfig& cfg, std::int64_t version) {
    cfg.validate();
    labeled.validate();
    const int c = labeled.classes;
    if (static_cast<int>(labeled.size()) < c)
        fail(Err::empty_class, "need at least one sample per class, got n=" +
                                   std::to_string(labeled.size()) + " for c=" + std::to_string(c));
    std::vector<int> counts(static_cast<std::size_t>(c), 0);
    for (int label : labeled.labels) ++counts[static_cast<std::size_t>(label)];
    for (int j = 0; j < c; ++j)
        if (counts[static_cast<std::size_t>(j)] == 0)
            fail(Err::empty_class, "class " + std::to_string(j) + " has no labeled sample");

    ModelSnapshot m;
    m.f = train_head(modality_matrix(labeled.samples, true), labeled.labels, c, cfg);
    m.s = train_head(modality_matrix(labeled.samples, false), labeled.labels, c, cfg);
    m.version = version;
    m.size_bytes = model_size_bytes(m.f, m.s);
    return m;
}

ClassDistribution predict_head(const Head& head, std::span<const double> feat) {
    if (static_cast<int>(feat.size()) != head.dim)
        fail(Err::dimension_mismatch, "feature dim " + std::to_string(feat.size()) +
                                          " does not match model dim " + std::to_string(head.dim));
    std::vector<double> scores(static_cast<std::size_t>(head.classes));
    std::vector<double> e(static_cast<std::size_t>(head.classes));
    affine_scores(head, feat, scores);
    shifted_exp(scores, e);
    return make_distribution(e);
}

ClassDistribution predict_f(const ModelSnapshot& model, std::span<const double> feat_f) {
    return predict_head(model.f, feat_f);
}

ClassDistribution predict_s(const ModelSnapshot& model, std::span<const double> feat_s) {
    return predict_head(model.s, feat_s);
}

ClassDistribution predict_fused(const ModelSnapshot& model, const Sample& sample) {
    ClassDistribution df = predict_f(model, sample.feat_f);
    ClassDistribution ds = predict_s(model, sample.feat_s);
    std::vector<double> mean(df.probs().size());
    for (int j = 0; j < df.classes(); ++j) mean[static_cast<std::size_t>(j)] = 0.5 * (df[j] + ds[j]);
    return make_distribution(mean);
}

double gradient_check(const LabeledSet& labeled, const TrainConfig& cfg) {
    labeled.validate();
    const int c = labeled.classes;
    const double h = 1e-5;
    Rng rng(cfg.seed);
    double worst = 0.0;
    for (bool modality_f : {true, false}) {
        DesignMatrix X = modality_matrix(labeled.samples, modality_f);
        Head head;
        head.classes = c;
        head.dim = X.dim;
        head.w.resize(static_cast<std::size_t>(c) * head.cols());
        Rng stream = rng.fork(modality_f ? 1 : 2);
        for (double& w : head.w) w = stream.next_double() - 0.5;

        std::vector<double> analytic(head.w.size());
        head_loss_grad(head, X, labeled.labels, cfg.l2, analytic);
        for (std::size_t j = 0; j < head.w.size(); ++j) {
            const double keep = head.w[j];
            head.w[j] = keep + h;
            double up = head_loss(head, X, labeled.labels, cfg.l2);
            head.w[j] = keep - h;
            double down = head_loss(head, X, labeled.labels, cfg.l2);
            head.w[j] = keep;
            worst = std::max(worst, std::abs((up - down) / (2 * h) - analytic[j]));
        }
    }
    return worst;
}

std::string snapshot_to_json(const ModelSnapshot& m) {
    nlohmann::ordered_json j;
    j["format"] = 1;
    j["version"] = m.version;
    j["classes"] = m.f.classes;
    j["dim_f"] = m.f.dim;
    j["dim_s"] = m.s.dim;
    j["weights_f"] = m.f.w;
    j["weights_s"] = m.s.w;
    j["size_bytes"] = m.size_bytes;
    return j.dump();
}

ModelSnapshot snapshot_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) fail(Err::schema_violation, "model snapshot: invalid json");
    try {
        if (j.at("format").get<int>() != 1)
            fail(Err::schema_violation, "model snapshot: unsupported format");
        ModelSnapshot m;
        m.version = j.at("version").get<std::int64_t>();
        const int c = j.at("classes").get<int>();
        m.f.classes = m.s.classes = c;
        m.f.dim = j.at("dim_f").get<int>();
        m.s.dim = j.at("dim_s").get<int>();
        m.f.w = j.at("weights_f").get<std::vector<double>>();
        m.s.w = j.at("weights_s").get<std::vector<double>>();
        m.size_bytes = j.at("size_bytes").get<std::int64_t>();
        if (m.f.w.size() != static_cast<std::size_t>(c) * m.f.cols() ||
            m.s.w.size() != static_cast<std::size_t>(c) * m.s.cols())
            fail(Err::schema_violation, "model snapshot: weight count does not match dims");
        if (m.size_bytes != model_size_bytes(m.f, m.s))
            fail(Err::schema_violation, "model snapshot: size_bytes mismatch");
        return m;
    } catch (const nlohmann::json::exception& e) {
        fail(Err::schema_violation, std::string("model snapshot: ") + e.what());
    }
}

}  // namespace lltc::classifier
