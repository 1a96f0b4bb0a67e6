#include "lltc/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>

#include <nlohmann/json.hpp>

#include "lltc/fsutil.hpp"

namespace lltc::report {

namespace {

const char* kRoundColumns =
    "round,k_requested,batch_size,shortfall,items_collected,items_discarded_noise,"
    "items_offloaded,bytes_up,bytes_down,cum_bytes_up,cum_bytes_down,cum_items_offloaded,"
    "train_size,cloud_accuracy,autolabel_accuracy,pool_autolabel_accuracy";

void append_round_row(std::string& out, const edgesim::RoundReport& r) {
    out += format_int(r.round);
    out += ',';
    out += format_int(r.k_requested);
    out += ',';
    out += format_int(r.batch_size);
    out += ',';
    out += r.shortfall ? '1' : '0';
    out += ',';
    out += format_int(r.ledger.items_collected);
    out += ',';
    out += format_int(r.ledger.items_discarded_noise);
    out += ',';
    out += format_int(r.ledger.items_offloaded);
    out += ',';
    out += format_int(r.ledger.bytes_up);
    out += ',';
    out += format_int(r.ledger.bytes_down);
    out += ',';
    out += format_int(r.cum_bytes_up);
    out += ',';
    out += format_int(r.cum_bytes_down);
    out += ',';
    out += format_int(r.cum_items_offloaded);
    out += ',';
    out += format_int(r.train_size);
    out += ',';
    out += format_double(r.cloud_accuracy);
    out += ',';
    out += format_double(r.autolabel_accuracy);
    out += ',';
    out += format_double(r.pool_autolabel_accuracy);
    out += '\n';
}

}  // namespace

std::string rounds_to_csv(const RunRecord& run) {
    std::string out = std::string("strategy,seed,") + kRoundColumns + "\n";
    for (const edgesim::RoundReport& r : run.rounds) {
        out += run.strategy;
        out += ',';
        out += format_int(static_cast<std::int64_t>(run.seed));
        out += ',';
        append_round_row(out, r);
    }
    return out;
}

std::string summary_to_json(const RunRecord& run) {
    const edgesim::RoundReport& last = run.rounds.back();
    double autolabel_sum = 0.0;
    std::int64_t autolabel_rounds = 0, shortfalls = 0, discarded = 0;
    for (const edgesim::RoundReport& r : run.rounds) {
        if (std::isfinite(r.autolabel_accuracy)) {
            autolabel_sum += r.autolabel_accuracy * static_cast<double>(r.batch_size);
            autolabel_rounds += r.batch_size;
        }
        if (r.shortfall) ++shortfalls;
        discarded += r.ledger.items_discarded_noise;
    }
    nlohmann::ordered_json j;
    j["strategy"] = run.strategy;
    j["seed"] = run.seed;
    j["selection_rounds"] = run.rounds.size() - 1;  // round 0 is the bootstrap
    j["bootstrap_accuracy"] = run.rounds.front().cloud_accuracy;
    j["final_accuracy"] = last.cloud_accuracy;
    j["final_train_size"] = last.train_size;
    j["total_bytes_up"] = last.cum_bytes_up;
    j["total_bytes_down"] = last.cum_bytes_down;
    j["total_items_offloaded"] = last.cum_items_offloaded;
    j["total_items_discarded_noise"] = discarded;
    // Weighted by batch size: the fraction of all admitted items whose label
    // matched ground truth.
    j["autolabel_accuracy"] =
        autolabel_rounds > 0 ? autolabel_sum / static_cast<double>(autolabel_rounds) : -1.0;
    j["shortfall_rounds"] = shortfalls;
    return j.dump(2) + "\n";
}

std::string comparison_to_csv(std::span<const RunRecord> runs) {
    std::string out = std::string("strategy,seed,") + kRoundColumns + "\n";
    for (const RunRecord& run : runs)
        for (const edgesim::RoundReport& r : run.rounds) {
            out += run.strategy;
            out += ',';
            out += format_int(static_cast<std::int64_t>(run.seed));
            out += ',';
            append_round_row(out, r);
        }
    return out;
}

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

template <typename T>
T parse_num(const std::string& text, const std::string& origin, std::size_t line_no) {
    T v{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        fail(Err::schema_violation,
             origin + ":" + std::to_string(line_no) + ": bad number '" + text + "'");
    return v;
}

// from_chars(double) rejects "nan"; reports legitimately carry it for rounds
// without a batch.
double parse_double_or_nan(const std::string& text, const std::string& origin,
                           std::size_t line_no) {
    if (text == "nan" || text == "-nan") return std::numeric_limits<double>::quiet_NaN();
    return parse_num<double>(text, origin, line_no);
}

}  // namespace

std::vector<ComparisonRow> parse_comparison_csv(const std::string& text,
                                                const std::string& origin) {
    const std::string expected_header = std::string("strategy,seed,") + kRoundColumns;
    std::vector<ComparisonRow> rows;
    std::size_t pos = 0, line_no = 0;
    bool saw_header = false;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        std::string line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (line.empty()) continue;
        if (!saw_header) {
            if (line != expected_header)
                fail(Err::schema_violation, origin + ":1: unexpected header");
            saw_header = true;
            continue;
        }
        std::vector<std::string> f = split(line);
        if (f.size() != 18)
            fail(Err::schema_violation, origin + ":" + std::to_string(line_no) +
                                            ": expected 18 fields, got " +
                                            std::to_string(f.size()));
        ComparisonRow row;
        row.strategy = f[0];
        row.seed = parse_num<std::uint64_t>(f[1], origin, line_no);
        edgesim::RoundReport& r = row.round;
        r.strategy = row.strategy;
        r.round = parse_num<int>(f[2], origin, line_no);
        r.k_requested = parse_num<int>(f[3], origin, line_no);
        r.batch_size = parse_num<std::int64_t>(f[4], origin, line_no);
        r.shortfall = f[5] == "1";
        r.ledger.round = r.round;
        r.ledger.items_collected = parse_num<std::int64_t>(f[6], origin, line_no);
        r.ledger.items_discarded_noise = parse_num<std::int64_t>(f[7], origin, line_no);
        r.ledger.items_offloaded = parse_num<std::int64_t>(f[8], origin, line_no);
        r.ledger.bytes_up = parse_num<std::int64_t>(f[9], origin, line_no);
        r.ledger.bytes_down = parse_num<std::int64_t>(f[10], origin, line_no);
        r.cum_bytes_up = parse_num<std::int64_t>(f[11], origin, line_no);
        r.cum_bytes_down = parse_num<std::int64_t>(f[12], origin, line_no);
        r.cum_items_offloaded = parse_num<std::int64_t>(f[13], origin, line_no);
        r.train_size = parse_num<std::int64_t>(f[14], origin, line_no);
        r.cloud_accuracy = parse_double_or_nan(f[15], origin, line_no);
        r.autolabel_accuracy = parse_double_or_nan(f[16], origin, line_no);
        r.pool_autolabel_accuracy = parse_double_or_nan(f[17], origin, line_no);
        rows.push_back(std::move(row));
    }
    if (!saw_header) fail(Err::schema_violation, origin + ": empty comparison file");
    return rows;
}

CurveTables curves_from_comparison(std::span<const ComparisonRow> rows) {
    // Group by (strategy, round); strategies keep their first-seen order.
    std::vector<std::string> order;
    std::map<std::string, std::map<int, std::vector<const ComparisonRow*>>> groups;
    for (const ComparisonRow& row : rows) {
        if (!groups.count(row.strategy)) order.push_back(row.strategy);
        groups[row.strategy][row.round.round].push_back(&row);
    }

    CurveTables out;
    out.bytes_csv = "strategy,round,cum_bytes_up,mean_accuracy,std_accuracy,seeds\n";
    out.pool_csv = "strategy,round,cum_items_offloaded,mean_accuracy,std_accuracy,seeds\n";
    for (const std::string& strategy : order) {
        for (const auto& [round, bucket] : groups[strategy]) {
            const double n = static_cast<double>(bucket.size());
            double mean_bytes = 0.0, mean_items = 0.0, mean_acc = 0.0;
            for (const ComparisonRow* r : bucket) {
                mean_bytes += static_cast<double>(r->round.cum_bytes_up);
                mean_items += static_cast<double>(r->round.cum_items_offloaded);
                mean_acc += r->round.cloud_accuracy;
            }
            mean_bytes /= n;
            mean_items /= n;
            mean_acc /= n;
            double var = 0.0;
            for (const ComparisonRow* r : bucket) {
                const double d = r->round.cloud_accuracy - mean_acc;
                var += d * d;
            }
            const double stddev = std::sqrt(var / n);  // population; 0 for one seed

            for (std::string* csv : {&out.bytes_csv, &out.pool_csv}) {
                *csv += strategy;
                *csv += ',';
                *csv += format_int(round);
                *csv += ',';
                *csv += format_double(csv == &out.bytes_csv ? mean_bytes : mean_items);
                *csv += ',';
                *csv += format_double(mean_acc);
                *csv += ',';
                *csv += format_double(stddev);
                *csv += ',';
                *csv += format_int(static_cast<std::int64_t>(bucket.size()));
                *csv += '\n';
            }
        }
    }
    return out;
}

}  // namespace lltc::report
