#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "motiflog/analysis.hpp"
#include "motiflog/harness.hpp"
#include "motiflog/ingest.hpp"
#include "motiflog/location.hpp"
#include "motiflog/mining.hpp"
#include "motiflog/synth.hpp"

namespace fs = std::filesystem;
using namespace motiflog;

namespace {

struct InputFlags {
    std::string in;
    std::string format = "ubiqlog";
    int tz_offset_minutes = 0;
    bool exclude_weekend = false;
    std::vector<std::string> weekend_days = {"Friday"};
    std::vector<std::string> deny;
    std::string location_mode = "off";  // off | wifi | fused
    int gap_minutes = 12;
};

void add_input_flags(CLI::App* cmd, InputFlags& flags) {
    cmd->add_option("--in", flags.in, "Input directory (one file or folder per user)")
        ->required();
    cmd->add_option("--format", flags.format, "Input record format")
        ->check(CLI::IsMember({"ubiqlog", "generic"}));
    cmd->add_option("--tz-offset", flags.tz_offset_minutes,
                    "Fixed dataset UTC offset in minutes");
    cmd->add_flag("--exclude-weekend", flags.exclude_weekend, "Drop weekend days");
    cmd->add_option("--weekend-days", flags.weekend_days,
                    "Weekend day names (default Friday)")
        ->delimiter(',');
    cmd->add_option("--deny", flags.deny, "Extra sensor names to reject (generic format)")
        ->delimiter(',');
    cmd->add_option("--location", flags.location_mode,
                    "Attach movement states before mining: off, wifi or fused")
        ->check(CLI::IsMember({"off", "wifi", "fused"}));
    cmd->add_option("--gap-minutes", flags.gap_minutes,
                    "Max gap inside one signal sequence");
}

ingest::LoadOptions to_load_options(const InputFlags& flags) {
    ingest::LoadOptions options;
    options.parse.format = flags.format == "generic" ? ingest::SourceFormat::generic
                                                     : ingest::SourceFormat::ubiqlog;
    options.parse.tz_offset_minutes = flags.tz_offset_minutes;
    for (const std::string& sensor : flags.deny) options.parse.deny_list.insert(sensor);
    options.exclude_weekend = flags.exclude_weekend;
    options.weekend_days.clear();
    for (const std::string& name : flags.weekend_days) {
        auto day = weekday_from_name(name);
        if (!day) throw ConfigError("unknown weekday name: " + name);
        options.weekend_days.insert(*day);
    }
    return options;
}

ingest::Dataset load_prepared(const InputFlags& flags, ingest::LoadReport* report) {
    ingest::Dataset dataset = ingest::load_dataset(flags.in, to_load_options(flags), report);
    if (flags.location_mode != "off") {
        location::SignalType signal = flags.location_mode == "wifi"
                                          ? location::SignalType::wifi_only
                                          : location::SignalType::fused;
        location::LocationParams params;
        params.gap_seconds = static_cast<std::int64_t>(flags.gap_minutes) * 60;
        for (auto& [user_id, days] : dataset) {
            for (DayLog& day : days) {
                auto estimate = location::estimate_location_states(day, signal, params);
                location::attach_location_states(day, estimate.events);
            }
        }
    }
    return dataset;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path);
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
}

std::map<std::string, mining::Profile> load_profiles(const std::string& dir) {
    std::map<std::string, mining::Profile> profiles;
    if (!fs::is_directory(dir)) throw DataError("profile directory not found: " + dir);
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() != ".json") continue;
        mining::Profile profile = mining::profile_from_json(slurp(entry.path().string()));
        if (profile.user_id.empty()) profile.user_id = entry.path().stem().string();
        profiles[profile.user_id] = std::move(profile);
    }
    if (profiles.empty()) throw DataError("no profiles found in " + dir);
    return profiles;
}

int cmd_ingest(const InputFlags& flags, const std::string& out_dir) {
    ingest::LoadReport report;
    ingest::Dataset dataset = load_prepared(flags, &report);
    fs::create_directories(out_dir);
    for (const auto& [user_id, days] : dataset) {
        ingest::write_canonical_jsonl((fs::path(out_dir) / (user_id + ".jsonl")).string(), days);
    }
    ingest::write_rejections_csv((fs::path(out_dir) / "rejections.csv").string(),
                                 report.rejections);
    harness::log_info("ingested " + std::to_string(dataset.size()) + " user(s), rejected " +
                      std::to_string(report.rejected_count()) + " line(s)");
    return 0;
}

int cmd_mine(const InputFlags& flags, const std::string& out_dir,
             const mining::MiningConfig& config, bool baseline, int threads) {
    config.validate();
    ingest::Dataset dataset = load_prepared(flags, nullptr);
    if (dataset.empty()) {
        std::cerr << "error: no users found in " << flags.in << '\n';
        return 1;
    }
    fs::create_directories(out_dir);
    auto mine_user = [&](const std::string& user_id, const std::vector<DayLog>& days) {
        mining::Profile profile;
        if (baseline) {
            std::vector<DayLog> snapped;
            for (const DayLog& day : days) {
                snapped.push_back(temporal::apply_granularity(day, config.granularity));
            }
            profile = mining::baseline_profile(snapped, config, user_id);
        } else {
            profile = mining::mine_profile(days, config, user_id);
        }
        write_text((fs::path(out_dir) / (user_id + ".json")).string(),
                   mining::profile_to_json(profile));
        harness::log_debug(user_id + ": " + std::to_string(profile.motifs.size()) + " motif(s)");
    };
    if (threads <= 1) {
        for (const auto& [user_id, days] : dataset) mine_user(user_id, days);
    } else {
        std::vector<const std::pair<const std::string, std::vector<DayLog>>*> users;
        for (const auto& entry : dataset) users.push_back(&entry);
        std::vector<std::thread> workers;
        std::size_t per_worker = (users.size() + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            std::size_t begin = t * per_worker;
            std::size_t end = std::min(users.size(), begin + per_worker);
            if (begin >= end) break;
            workers.emplace_back([&, begin, end] {
                for (std::size_t i = begin; i < end; ++i) {
                    mine_user(users[i]->first, users[i]->second);
                }
            });
        }
        for (std::thread& worker : workers) worker.join();
    }
    harness::log_info("wrote " + std::to_string(dataset.size()) + " profile(s) to " + out_dir);
    return 0;
}

int cmd_sweep(const InputFlags& flags, const std::string& out_path,
              const std::vector<int>& thetas, const std::vector<double>& lambdas,
              const std::vector<int>& granularities, int window) {
    ingest::Dataset dataset = load_prepared(flags, nullptr);
    if (dataset.empty()) {
        std::cerr << "error: no users found in " << flags.in << '\n';
        return 1;
    }
    auto cells = analysis::threshold_sweep(dataset, thetas, lambdas, granularities, window);
    analysis::write_sweep_csv(out_path, cells);
    harness::log_info("wrote " + std::to_string(cells.size()) + " sweep cell(s) to " + out_path);
    return 0;
}

int cmd_segments(const std::string& profiles_dir, const std::string& segments_path,
                 const std::string& features_path) {
    auto profiles = load_profiles(profiles_dir);
    std::map<std::string, std::map<std::string, int>> distributions;
    std::vector<analysis::UserFeatureVector> features;
    for (const auto& [user_id, profile] : profiles) {
        distributions[user_id] =
            analysis::segment_distribution(profile, analysis::default_segments());
        features.push_back(analysis::user_feature_vector(profile));
    }
    if (!segments_path.empty()) {
        analysis::write_segments_csv(segments_path, distributions, analysis::default_segments());
    }
    if (!features_path.empty()) analysis::write_features_csv(features_path, features);
    return 0;
}

int cmd_synth(const std::string& spec_path, const std::string& out_dir,
              const std::string& truth_path) {
    synth::SynthSpec spec = synth::load_spec(spec_path);
    synth::SynthResult result = synth::generate_dataset(spec);
    fs::create_directories(out_dir);
    for (const auto& [user_id, days] : result.dataset) {
        ingest::write_canonical_jsonl((fs::path(out_dir) / (user_id + ".jsonl")).string(), days);
    }
    if (!truth_path.empty()) write_text(truth_path, synth::truth_to_json(result.truth));
    harness::log_info("generated " + std::to_string(result.dataset.size()) + " user(s) x " +
                      std::to_string(spec.num_days) + " day(s)");
    return 0;
}

int cmd_bench(const std::string& spec_path, const std::vector<int>& days,
              const std::vector<int>& windows, const std::string& out_path,
              const mining::MiningConfig& config, int repetitions, int threads) {
    synth::SynthSpec spec = synth::load_spec(spec_path);
    synth::SynthResult data = synth::generate_dataset(spec);
    auto rows = harness::run_benchmark(data.dataset, days, windows, config, repetitions, threads);
    harness::write_bench_csv(out_path, rows);
    harness::log_info("wrote " + std::to_string(rows.size()) + " bench row(s) to " + out_path);
    return 0;
}

int cmd_eval(const std::string& profiles_dir, const std::string& truth_path, int tolerance,
             const std::string& out_path) {
    auto profiles = load_profiles(profiles_dir);
    synth::GroundTruth truth = synth::truth_from_json(slurp(truth_path));
    std::ostringstream csv;
    csv << "user_id,precision,recall,empty_profile\n";
    double precision_sum = 0.0, recall_sum = 0.0;
    int evaluated = 0;
    for (const auto& [user_id, profile] : profiles) {
        auto it = truth.find(user_id);
        if (it == truth.end()) continue;
        synth::EvalResult result = synth::evaluate_profile(profile, it->second, tolerance);
        csv << user_id << ',' << result.precision << ',' << result.recall << ','
            << (result.empty_profile ? 1 : 0) << '\n';
        precision_sum += result.precision;
        recall_sum += result.recall;
        ++evaluated;
    }
    if (evaluated == 0) throw DataError("no profile matched a ground-truth user");
    csv << "mean," << precision_sum / evaluated << ',' << recall_sum / evaluated << ",\n";
    if (!out_path.empty()) {
        write_text(out_path, csv.str());
    }
    std::cout << "evaluated " << evaluated << " user(s): mean precision "
              << precision_sum / evaluated << ", mean recall " << recall_sum / evaluated << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Daily behavioral motif mining over mobile sensing lifelogs"};
    app.require_subcommand(1);

    // ingest
    auto* ingest_cmd = app.add_subcommand("ingest", "Parse raw logs into canonical JSON lines");
    InputFlags ingest_flags;
    std::string ingest_out;
    add_input_flags(ingest_cmd, ingest_flags);
    ingest_cmd->add_option("--out", ingest_out, "Output directory")->required();

    // mine
    auto* mine_cmd = app.add_subcommand("mine", "Mine behavioral motif profiles");
    InputFlags mine_flags;
    std::string mine_out;
    mining::MiningConfig mine_config;
    bool mine_baseline = false;
    int mine_threads = 1;
    add_input_flags(mine_cmd, mine_flags);
    mine_cmd->add_option("--out", mine_out, "Profile output directory")->required();
    mine_cmd->add_option("--granularity", mine_config.granularity.precision_minutes,
                         "Time grid in minutes");
    mine_cmd->add_option("--theta", mine_config.theta, "Minimum matched items per slot");
    mine_cmd->add_option("--lambda", mine_config.lambda_pct, "Confidence threshold percent");
    mine_cmd->add_option("--window", mine_config.window_size, "Sliding window size in days");
    mine_cmd->add_flag("--baseline", mine_baseline, "Compare all day pairs instead of windows");
    mine_cmd->add_option("--threads", mine_threads, "Mine users in parallel");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "Motif counts across a threshold grid");
    InputFlags sweep_flags;
    std::string sweep_out;
    std::vector<int> sweep_thetas = {1, 2, 3, 4};
    std::vector<double> sweep_lambdas = {0, 20, 40, 60};
    std::vector<int> sweep_granularities = {5, 15, 30, 60, 90, 120};
    int sweep_window = 3;
    add_input_flags(sweep_cmd, sweep_flags);
    sweep_cmd->add_option("--out", sweep_out, "Sweep CSV path")->required();
    sweep_cmd->add_option("--thetas", sweep_thetas, "Activity thresholds")->delimiter(',');
    sweep_cmd->add_option("--lambdas", sweep_lambdas, "Confidence thresholds")->delimiter(',');
    sweep_cmd->add_option("--granularities", sweep_granularities, "Grids in minutes")
        ->delimiter(',');
    sweep_cmd->add_option("--window", sweep_window, "Sliding window size in days");

    // segments
    auto* segments_cmd =
        app.add_subcommand("segments", "Day-segment distribution and user feature vectors");
    std::string segments_profiles, segments_out = "segments.csv", features_out = "features.csv";
    segments_cmd->add_option("--profiles", segments_profiles, "Directory of profile JSON files")
        ->required();
    segments_cmd->add_option("--out-segments", segments_out, "Segment distribution CSV");
    segments_cmd->add_option("--out-features", features_out, "Feature vector CSV");

    // synth
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic lifelog dataset");
    std::string synth_spec, synth_out, synth_truth;
    synth_cmd->add_option("--spec", synth_spec, "Synthesis spec JSON")->required();
    synth_cmd->add_option("--out", synth_out, "Output dataset directory")->required();
    synth_cmd->add_option("--truth", synth_truth, "Ground-truth JSON path");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "Window-size scalability benchmark");
    std::string bench_spec, bench_out = "bench.csv";
    std::vector<int> bench_days = {10, 20, 30, 40, 50, 60};
    std::vector<int> bench_windows = {2, 3, 4, 6};
    mining::MiningConfig bench_config;
    bench_config.theta = 2;
    bench_config.lambda_pct = 20;
    int bench_reps = 5, bench_threads = 1;
    bench_cmd->add_option("--synth-spec", bench_spec, "Benchmark dataset spec JSON")->required();
    bench_cmd->add_option("--days", bench_days, "Day counts")->delimiter(',');
    bench_cmd->add_option("--windows", bench_windows, "Window sizes")->delimiter(',');
    bench_cmd->add_option("--out", bench_out, "Benchmark CSV path");
    bench_cmd->add_option("--reps", bench_reps, "Timed repetitions per point");
    bench_cmd->add_option("--threads", bench_threads, "Parallel user mining");
    bench_cmd->add_option("--theta", bench_config.theta, "Minimum matched items per slot");
    bench_cmd->add_option("--lambda", bench_config.lambda_pct, "Confidence threshold percent");
    bench_cmd->add_option("--granularity", bench_config.granularity.precision_minutes,
                          "Time grid in minutes");

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "Score profiles against planted ground truth");
    std::string eval_profiles, eval_truth, eval_out;
    int eval_tolerance = 1;
    eval_cmd->add_option("--profiles", eval_profiles, "Directory of profile JSON files")
        ->required();
    eval_cmd->add_option("--truth", eval_truth, "Ground-truth JSON path")->required();
    eval_cmd->add_option("--tolerance", eval_tolerance, "Slot tolerance in grid cells");
    eval_cmd->add_option("--out", eval_out, "Evaluation CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (ingest_cmd->parsed()) return cmd_ingest(ingest_flags, ingest_out);
        if (mine_cmd->parsed()) {
            return cmd_mine(mine_flags, mine_out, mine_config, mine_baseline, mine_threads);
        }
        if (sweep_cmd->parsed()) {
            return cmd_sweep(sweep_flags, sweep_out, sweep_thetas, sweep_lambdas,
                             sweep_granularities, sweep_window);
        }
        if (segments_cmd->parsed()) {
            return cmd_segments(segments_profiles, segments_out, features_out);
        }
        if (synth_cmd->parsed()) return cmd_synth(synth_spec, synth_out, synth_truth);
        if (bench_cmd->parsed()) {
            return cmd_bench(bench_spec, bench_days, bench_windows, bench_out, bench_config,
                             bench_reps, bench_threads);
        }
        if (eval_cmd->parsed()) {
            return cmd_eval(eval_profiles, eval_truth, eval_tolerance, eval_out);
        }
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
