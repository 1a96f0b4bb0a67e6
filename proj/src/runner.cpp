#include "lltc/runner.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace lltc::runner {

std::vector<report::RunRecord> run_all(const config::FileConfig& cfg, int jobs,
                                       std::optional<std::uint64_t> seed_override) {
    if (jobs < 1) fail(Err::config_invalid, "jobs must be >= 1");
    std::vector<std::uint64_t> seeds =
        seed_override ? std::vector<std::uint64_t>{*seed_override} : cfg.seeds;

    struct Job {
        std::string name;
        baselines::Strategy strategy;
        std::uint64_t seed;
    };
    std::vector<Job> todo;
    for (const auto& [name, strategy] : cfg.strategies)
        for (std::uint64_t seed : seeds) todo.push_back({name, strategy, seed});

    std::vector<report::RunRecord> results(todo.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mu;

    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= todo.size()) return;
            const Job& job = todo[i];
            try {
                datagen::Dataset data = config::dataset_for_run(cfg, job.seed);
                edgesim::SimConfig sim = config::sim_config(cfg, job.strategy, job.seed);
                report::RunRecord rec;
                rec.strategy = job.name;
                rec.seed = job.seed;
                rec.rounds = edgesim::run_experiment(data, sim);
                results[i] = std::move(rec);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!first_error)
                    first_error = std::make_exception_ptr(
                        Error(Err::degenerate, "strategy " + job.name + " seed " +
                                                   std::to_string(job.seed) + ": " + e.what()));
            }
        }
    };

    if (jobs == 1 || todo.size() == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        const std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(jobs), todo.size());
        pool.reserve(n);
        for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);
    return results;
}

}  // namespace lltc::runner
