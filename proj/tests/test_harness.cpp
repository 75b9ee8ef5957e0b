#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "motiflog/harness.hpp"
#include "motiflog/synth.hpp"

using namespace motiflog;
using namespace motiflog::harness;

namespace {

ingest::Dataset routine_dataset(int users, int days, int motifs) {
    synth::SynthSpec spec;
    spec.num_users = users;
    spec.num_days = days;
    spec.start_date = make_date(2014, 1, 6);
    spec.seed = 404;
    spec.noise_entities_per_day = 4;
    for (int k = 0; k < motifs; ++k) {
        spec.planted_motifs.push_back(
            {k * 60, {{"WiFi", "ap" + std::to_string(k)},
                      {"Application", "app" + std::to_string(k)}},
             1.0, 0});
    }
    return synth::generate_dataset(spec).dataset;
}

mining::MiningConfig bench_config() {
    mining::MiningConfig config;
    config.theta = 2;
    config.lambda_pct = 20;
    config.window_size = 3;
    config.granularity.precision_minutes = 60;
    return config;
}

}  // namespace

TEST_CASE("run_once counters follow the window arithmetic") {
    auto dataset = routine_dataset(2, 12, 3);
    for (int window : {2, 3, 4, 6}) {
        BenchRun run = run_once(dataset, 12, window, bench_config());
        std::uint64_t positions = 12 - window + 1;
        std::uint64_t pairs = static_cast<std::uint64_t>(window) * (window - 1) / 2;
        CHECK(run.stats.day_pair_comparisons == 2 * positions * pairs);
    }
    BenchRun baseline = run_once(dataset, 12, std::nullopt, bench_config());
    CHECK(baseline.stats.day_pair_comparisons == 2 * (12 * 11 / 2));
}

TEST_CASE("window-two counters grow linearly with days") {
    auto dataset = routine_dataset(1, 40, 3);
    BenchRun d20 = run_once(dataset, 20, 2, bench_config());
    BenchRun d40 = run_once(dataset, 40, 2, bench_config());
    // day-pair count doubles with the day count
    double ratio = static_cast<double>(d40.stats.day_pair_comparisons) /
                   static_cast<double>(d20.stats.day_pair_comparisons);
    CHECK(ratio >= 1.8);
    CHECK(ratio <= 2.2);
    CHECK(d20.stats.day_pair_comparisons == 19);
    CHECK(d40.stats.day_pair_comparisons == 39);
    // the full counter stays near-linear too
    double total_ratio =
        static_cast<double>(d40.stats.total()) / static_cast<double>(d20.stats.total());
    CHECK(total_ratio <= 2.5);

    // the windowless baseline grows quadratically
    BenchRun b20 = run_once(dataset, 20, std::nullopt, bench_config());
    BenchRun b40 = run_once(dataset, 40, std::nullopt, bench_config());
    double baseline_ratio =
        static_cast<double>(b40.stats.total()) / static_cast<double>(b20.stats.total());
    CHECK(baseline_ratio >= 3.0);
}

TEST_CASE("windowed mining does less comparison work than the baseline") {
    auto dataset = routine_dataset(2, 8, 6);
    BenchRun baseline = run_once(dataset, 8, std::nullopt, bench_config());
    for (int window : {2, 3}) {
        BenchRun windowed = run_once(dataset, 8, window, bench_config());
        CHECK(windowed.stats.total() < baseline.stats.total());
    }
}

TEST_CASE("counters are independent of threading") {
    auto dataset = routine_dataset(4, 10, 3);
    BenchRun serial = run_once(dataset, 10, 3, bench_config(), 1);
    BenchRun parallel = run_once(dataset, 10, 3, bench_config(), 4);
    CHECK(serial.stats.day_pair_comparisons == parallel.stats.day_pair_comparisons);
    CHECK(serial.stats.group_comparisons == parallel.stats.group_comparisons);
}

TEST_CASE("benchmark grid shape and csv") {
    auto dataset = routine_dataset(1, 20, 2);
    auto rows = run_benchmark(dataset, {10, 20}, {2, 3}, bench_config(), 3);
    REQUIRE(rows.size() == 6);  // 2 day counts x (baseline + 2 windows)
    CHECK(rows[0].window == "baseline");
    CHECK(rows[1].window == "2");
    CHECK(rows[2].window == "3");
    for (const BenchRow& row : rows) {
        CHECK(row.wall_time_ms >= 0.0);
        CHECK(row.comparisons > 0);
    }
    // baseline day-pair counts are exact
    CHECK(rows[0].day_pair_comparisons == 45);
    CHECK(rows[3].day_pair_comparisons == 190);

    auto path = std::filesystem::temp_directory_path() / "motiflog_bench_test.csv";
    write_bench_csv(path.string(), rows);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "num_days,window,wall_time_ms,comparisons");
    std::size_t lines = 0;
    for (std::string line; std::getline(in, line);) ++lines;
    CHECK(lines == rows.size());
    std::filesystem::remove(path);
}

TEST_CASE("benchmark refuses impossible schedules") {
    auto dataset = routine_dataset(1, 5, 1);
    CHECK_THROWS_AS(run_once(dataset, 10, 2, bench_config()), DataError);
    CHECK_THROWS_AS(run_benchmark(dataset, {5}, {2}, bench_config(), 0), ConfigError);
}
