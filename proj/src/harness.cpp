#include "motiflog/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

namespace motiflog::harness {

namespace {

int log_level() {
    static const int level = [] {
        const char* env = std::getenv("MOTIFLOG_LOG");
        if (!env) return 1;
        std::string value = env;
        if (value == "quiet") return 0;
        if (value == "debug") return 2;
        return 1;
    }();
    return level;
}

std::vector<DayLog> first_days(const std::vector<DayLog>& days, int count) {
    if (static_cast<int>(days.size()) < count) {
        throw DataError("benchmark needs more days than the dataset provides");
    }
    return {days.begin(), days.begin() + count};
}

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

BenchRun run_once(const ingest::Dataset& dataset, int num_days, std::optional<int> window,
                  const mining::MiningConfig& config, int threads) {
    mining::MiningConfig run_config = config;
    if (window) run_config.window_size = *window;

    std::vector<const std::pair<const std::string, std::vector<DayLog>>*> users;
    users.reserve(dataset.size());
    for (const auto& entry : dataset) users.push_back(&entry);

    std::vector<mining::MiningStats> stats(users.size());
    auto mine_user = [&](std::size_t index) {
        const auto& [user_id, days] = *users[index];
        auto slice = first_days(days, num_days);
        if (window) {
            mining::mine_profile(slice, run_config, user_id, &stats[index]);
        } else {
            std::vector<DayLog> snapped;
            snapped.reserve(slice.size());
            for (const DayLog& day : slice) {
                snapped.push_back(temporal::apply_granularity(day, run_config.granularity));
            }
            mining::baseline_profile(snapped, run_config, user_id, &stats[index]);
        }
    };

    auto start = std::chrono::steady_clock::now();
    if (threads <= 1) {
        for (std::size_t i = 0; i < users.size(); ++i) mine_user(i);
    } else {
        std::vector<std::thread> workers;
        std::size_t per_worker = (users.size() + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            std::size_t begin = t * per_worker;
            std::size_t end = std::min(users.size(), begin + per_worker);
            if (begin >= end) break;
            workers.emplace_back([&, begin, end] {
                for (std::size_t i = begin; i < end; ++i) mine_user(i);
            });
        }
        for (std::thread& worker : workers) worker.join();
    }
    auto stop = std::chrono::steady_clock::now();

    BenchRun run;
    run.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    for (const mining::MiningStats& s : stats) run.stats += s;
    return run;
}

std::vector<BenchRow> run_benchmark(const ingest::Dataset& dataset,
                                    const std::vector<int>& days_schedule,
                                    const std::vector<int>& window_sizes,
                                    const mining::MiningConfig& config, int repetitions,
                                    int threads) {
    if (repetitions < 3) throw ConfigError("benchmark needs at least 3 repetitions");
    std::vector<BenchRow> rows;
    for (int num_days : days_schedule) {
        std::vector<std::optional<int>> runs;
        runs.push_back(std::nullopt);
        for (int w : window_sizes) runs.push_back(w);
        for (const auto& window : runs) {
            run_once(dataset, num_days, window, config, threads);  // warm-up, discarded
            std::vector<double> times;
            mining::MiningStats stats;
            for (int rep = 0; rep < repetitions; ++rep) {
                BenchRun run = run_once(dataset, num_days, window, config, threads);
                times.push_back(run.wall_ms);
                stats = run.stats;
            }
            BenchRow row;
            row.num_days = num_days;
            row.window = window ? std::to_string(*window) : "baseline";
            row.wall_time_ms = median(times);
            row.comparisons = stats.total();
            row.day_pair_comparisons = stats.day_pair_comparisons;
            rows.push_back(std::move(row));
            log_debug("bench d=" + std::to_string(num_days) + " window=" + rows.back().window +
                      " comparisons=" + std::to_string(rows.back().comparisons));
        }
    }
    return rows;
}

void write_bench_csv(const std::string& path, const std::vector<BenchRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path);
    out << "num_days,window,wall_time_ms,comparisons\n";
    for (const BenchRow& row : rows) {
        out << row.num_days << ',' << row.window << ',' << row.wall_time_ms << ','
            << row.comparisons << '\n';
    }
}

void log_info(const std::string& message) {
    if (log_level() >= 1) std::cerr << "[motiflog] " << message << '\n';
}

void log_debug(const std::string& message) {
    if (log_level() >= 2) std::cerr << "[motiflog:debug] " << message << '\n';
}

}  // namespace motiflog::harness
