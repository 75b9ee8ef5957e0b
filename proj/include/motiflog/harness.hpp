#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "motiflog/ingest.hpp"
#include "motiflog/mining.hpp"

namespace motiflog::harness {

struct BenchRow {
    int num_days = 0;
    std::string window;  // "2".."6" or "baseline"
    double wall_time_ms = 0.0;
    std::uint64_t comparisons = 0;  // day-pair + group comparisons
    std::uint64_t day_pair_comparisons = 0;
};

struct BenchRun {
    double wall_ms = 0.0;
    mining::MiningStats stats;
};

// Mines the first num_days days of every user once. window == nullopt
// runs the windowless baseline. threads > 1 mines users in parallel;
// counters are summed either way and do not depend on scheduling.
BenchRun run_once(const ingest::Dataset& dataset, int num_days, std::optional<int> window,
                  const mining::MiningConfig& config, int threads = 1);

// Full grid: every day count against the baseline and every window
// size. Wall times are medians over `repetitions` timed runs after one
// discarded warm-up; comparison counters are exact and repetition-free.
std::vector<BenchRow> run_benchmark(const ingest::Dataset& dataset,
                                    const std::vector<int>& days_schedule,
                                    const std::vector<int>& window_sizes,
                                    const mining::MiningConfig& config, int repetitions,
                                    int threads = 1);

void write_bench_csv(const std::string& path, const std::vector<BenchRow>& rows);

// Stderr logging gated by the MOTIFLOG_LOG environment variable
// (quiet, info, debug; default info).
void log_info(const std::string& message);
void log_debug(const std::string& message);

}  // namespace motiflog::harness
