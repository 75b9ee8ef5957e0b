#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "motiflog/analysis.hpp"
#include "motiflog/harness.hpp"
#include "motiflog/ingest.hpp"
#include "motiflog/location.hpp"
#include "motiflog/mining.hpp"
#include "motiflog/synth.hpp"
#include "motiflog/temporal.hpp"

namespace py = pybind11;
using namespace motiflog;

namespace {

ingest::ParseOptions make_parse_options(const std::string& format, int tz_offset_minutes) {
    ingest::ParseOptions options;
    if (format == "generic") {
        options.format = ingest::SourceFormat::generic;
    } else if (format == "ubiqlog") {
        options.format = ingest::SourceFormat::ubiqlog;
    } else {
        throw ConfigError("format must be 'ubiqlog' or 'generic'");
    }
    options.tz_offset_minutes = tz_offset_minutes;
    return options;
}

location::SignalType signal_from_string(const std::string& signal) {
    if (signal == "wifi" || signal == "wifi_only") return location::SignalType::wifi_only;
    if (signal == "fused") return location::SignalType::fused;
    throw ConfigError("signal must be 'wifi' or 'fused'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Daily behavioral motif mining over mobile sensing lifelogs";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<DataError>(m, "DataError", PyExc_RuntimeError);

    py::enum_<LocationState>(m, "LocationState")
        .value("moving", LocationState::moving)
        .value("stationary", LocationState::stationary)
        .value("unknown", LocationState::unknown);

    py::class_<Entity>(m, "Entity")
        .def(py::init<>())
        .def_readwrite("timestamp", &Entity::timestamp)
        .def_readwrite("sensor", &Entity::sensor)
        .def_readwrite("data", &Entity::data)
        .def_readwrite("granular_time", &Entity::granular_time)
        .def_readwrite("location_state", &Entity::location_state)
        .def("__eq__", [](const Entity& a, const Entity& b) { return a == b; })
        .def("__repr__", [](const Entity& e) {
            return "Entity(" + format_timestamp(e.timestamp) + ", " + e.sensor + ", " + e.data +
                   ")";
        });

    py::class_<DayLog>(m, "DayLog")
        .def(py::init<>())
        .def_readwrite("user_id", &DayLog::user_id)
        .def_readwrite("date", &DayLog::date)
        .def_readwrite("entities", &DayLog::entities)
        .def_readwrite("is_weekend", &DayLog::is_weekend)
        .def_property_readonly("date_text", [](const DayLog& d) { return format_date(d.date); })
        .def("__len__", [](const DayLog& d) { return d.entities.size(); });

    py::class_<mining::MiningConfig>(m, "MiningConfig")
        .def(py::init([](int theta, double lambda_pct, int window_size, int granularity) {
                 mining::MiningConfig config;
                 config.theta = theta;
                 config.lambda_pct = lambda_pct;
                 config.window_size = window_size;
                 config.granularity.precision_minutes = granularity;
                 config.validate();
                 return config;
             }),
             py::arg("theta") = 1, py::arg("lambda_pct") = 0.0, py::arg("window_size") = 3,
             py::arg("granularity") = 60)
        .def_readwrite("theta", &mining::MiningConfig::theta)
        .def_readwrite("lambda_pct", &mining::MiningConfig::lambda_pct)
        .def_readwrite("window_size", &mining::MiningConfig::window_size)
        .def_property(
            "granularity",
            [](const mining::MiningConfig& c) { return c.granularity.precision_minutes; },
            [](mining::MiningConfig& c, int value) { c.granularity.precision_minutes = value; });

    py::class_<mining::Group>(m, "Group")
        .def_readonly("slot", &mining::Group::slot)
        .def_readonly("items", &mining::Group::items)
        .def_readonly("support_days", &mining::Group::support_days)
        .def_readonly("confidence_pct", &mining::Group::confidence_pct)
        .def_property_readonly("slot_text",
                               [](const mining::Group& g) { return format_hhmm(g.slot); });

    py::class_<mining::Behavior>(m, "Behavior")
        .def_readonly("window_start_date", &mining::Behavior::window_start_date)
        .def_readonly("groups", &mining::Behavior::groups);

    py::class_<mining::Profile>(m, "Profile")
        .def_readonly("user_id", &mining::Profile::user_id)
        .def_readonly("motifs", &mining::Profile::motifs)
        .def_readonly("config", &mining::Profile::config)
        .def_readonly("days_mined", &mining::Profile::days_mined)
        .def("to_json", [](const mining::Profile& p) { return mining::profile_to_json(p); });

    py::class_<mining::MiningStats>(m, "MiningStats")
        .def_readonly("day_pair_comparisons", &mining::MiningStats::day_pair_comparisons)
        .def_readonly("group_comparisons", &mining::MiningStats::group_comparisons)
        .def("total", &mining::MiningStats::total);

    py::class_<location::LocationEvent>(m, "LocationEvent")
        .def_readonly("state", &location::LocationEvent::state)
        .def_readonly("start", &location::LocationEvent::start)
        .def_readonly("end", &location::LocationEvent::end)
        .def_readonly("entities", &location::LocationEvent::entities);

    py::class_<synth::PlantedMotif>(m, "PlantedMotif")
        .def_readonly("slot_minute", &synth::PlantedMotif::slot_minute)
        .def_readonly("items", &synth::PlantedMotif::items)
        .def_readonly("repeat_probability", &synth::PlantedMotif::repeat_probability)
        .def_readonly("jitter_minutes", &synth::PlantedMotif::jitter_minutes);

    py::class_<synth::PlantedOutcome>(m, "PlantedOutcome")
        .def_readonly("motif", &synth::PlantedOutcome::motif)
        .def_readonly("fired_days", &synth::PlantedOutcome::fired_days);

    py::class_<synth::SynthSpec>(m, "SynthSpec")
        .def_static("from_json", &synth::spec_from_json, py::arg("text"))
        .def("to_json", &synth::spec_to_json)
        .def_readonly("num_users", &synth::SynthSpec::num_users)
        .def_readonly("num_days", &synth::SynthSpec::num_days)
        .def_readonly("seed", &synth::SynthSpec::seed);

    py::class_<synth::EvalResult>(m, "EvalResult")
        .def_readonly("precision", &synth::EvalResult::precision)
        .def_readonly("recall", &synth::EvalResult::recall)
        .def_readonly("empty_profile", &synth::EvalResult::empty_profile)
        .def_readonly("matched_profile_motifs", &synth::EvalResult::matched_profile_motifs)
        .def_readonly("recovered_planted", &synth::EvalResult::recovered_planted);

    // --- time -----------------------------------------------------------
    m.def("snap_minute",
          [](int minute, int precision) {
              return temporal::snap_minute(minute, temporal::GranularityConfig{precision});
          },
          py::arg("minute_of_day"), py::arg("precision_minutes"),
          "Snap a minute of day onto the human-scale grid");
    m.def("apply_granularity",
          [](const DayLog& day, int precision) {
              return temporal::apply_granularity(day, temporal::GranularityConfig{precision});
          },
          py::arg("day"), py::arg("precision_minutes"));
    m.def("parse_iso8601",
          [](const std::string& text, int tz) {
              auto t = parse_iso8601(text, tz);
              if (!t) throw ConfigError("unparseable timestamp: " + text);
              return *t;
          },
          py::arg("text"), py::arg("tz_offset_minutes") = 0);
    m.def("format_timestamp", &format_timestamp, py::arg("timestamp"));
    m.def("format_date", &format_date, py::arg("date"));

    // --- ingest ---------------------------------------------------------
    m.def("parse_record",
          [](const std::string& line, const std::string& format, int tz_offset_minutes) {
              auto result =
                  ingest::parse_record(line, make_parse_options(format, tz_offset_minutes));
              if (auto* entity = std::get_if<Entity>(&result)) return *entity;
              throw DataError("rejected: " +
                              ingest::to_string(std::get<ingest::Rejection>(result).reason));
          },
          py::arg("line"), py::arg("format") = "ubiqlog", py::arg("tz_offset_minutes") = 0);
    m.def("to_canonical_line", &ingest::to_canonical_line, py::arg("entity"));
    m.def("load_dataset",
          [](const std::string& path, const std::string& format, bool exclude_weekend,
             const std::vector<std::string>& weekend_days, int tz_offset_minutes) {
              ingest::LoadOptions options;
              options.parse = make_parse_options(format, tz_offset_minutes);
              options.exclude_weekend = exclude_weekend;
              options.weekend_days.clear();
              for (const std::string& name : weekend_days) {
                  auto day = weekday_from_name(name);
                  if (!day) throw ConfigError("unknown weekday name: " + name);
                  options.weekend_days.insert(*day);
              }
              return ingest::load_dataset(path, options);
          },
          py::arg("path"), py::arg("format") = "ubiqlog", py::arg("exclude_weekend") = false,
          py::arg("weekend_days") = std::vector<std::string>{"Friday"},
          py::arg("tz_offset_minutes") = 0);

    // --- location -------------------------------------------------------
    m.def("haversine_distance",
          py::overload_cast<double, double, double, double>(&location::haversine_distance),
          py::arg("lat1"), py::arg("lon1"), py::arg("lat2"), py::arg("lon2"),
          "Great-circle distance in meters");
    m.def("estimate_location_states",
          [](const DayLog& day, const std::string& signal) {
              return location::estimate_location_states(day, signal_from_string(signal)).events;
          },
          py::arg("day"), py::arg("signal") = "wifi");
    m.def("attach_location_states",
          [](DayLog day, const std::vector<location::LocationEvent>& events) {
              location::attach_location_states(day, events);
              return day;
          },
          py::arg("day"), py::arg("events"));

    // --- mining ---------------------------------------------------------
    m.def("compare_days",
          [](const DayLog& a, const DayLog& b, int theta) {
              return mining::compare_days(a, b, theta);
          },
          py::arg("a"), py::arg("b"), py::arg("theta") = 1);
    m.def("mine_windows",
          [](const std::vector<DayLog>& days, const mining::MiningConfig& config) {
              return mining::mine_windows(days, config);
          },
          py::arg("days"), py::arg("config"));
    m.def("build_profile",
          [](const std::vector<mining::Behavior>& behaviors,
             const mining::MiningConfig& config, int days_mined, const std::string& user_id) {
              return mining::build_profile(behaviors, config, days_mined, user_id);
          },
          py::arg("behaviors"), py::arg("config"), py::arg("days_mined"),
          py::arg("user_id") = "");
    m.def("mine_profile",
          [](const std::vector<DayLog>& days, const mining::MiningConfig& config,
             const std::string& user_id) {
              return mining::mine_profile(days, config, user_id);
          },
          py::arg("days"), py::arg("config"), py::arg("user_id") = "");
    m.def("baseline_profile",
          [](const std::vector<DayLog>& days, const mining::MiningConfig& config,
             const std::string& user_id) {
              std::vector<DayLog> snapped;
              snapped.reserve(days.size());
              for (const DayLog& day : days) {
                  snapped.push_back(temporal::apply_granularity(day, config.granularity));
              }
              return mining::baseline_profile(snapped, config, user_id);
          },
          py::arg("days"), py::arg("config"), py::arg("user_id") = "");
    m.def("profile_from_json", &mining::profile_from_json, py::arg("text"));

    // --- analysis -------------------------------------------------------
    m.def("segment_distribution",
          [](const mining::Profile& profile) {
              return analysis::segment_distribution(profile, analysis::default_segments());
          },
          py::arg("profile"));
    m.def("user_feature_vector",
          [](const mining::Profile& profile) {
              auto vector = analysis::user_feature_vector(profile);
              return std::vector<int>(vector.counts.begin(), vector.counts.end());
          },
          py::arg("profile"));
    m.def("threshold_sweep",
          [](const ingest::Dataset& dataset, const std::vector<int>& thetas,
             const std::vector<double>& lambdas, const std::vector<int>& granularities,
             int window) {
              std::vector<py::dict> rows;
              for (const auto& cell :
                   analysis::threshold_sweep(dataset, thetas, lambdas, granularities, window)) {
                  py::dict row;
                  row["theta"] = cell.theta;
                  row["lambda"] = cell.lambda_pct;
                  row["granularity"] = cell.granularity;
                  if (cell.total_motifs < 0) {
                      row["motif_count"] = py::none();
                      row["mean_motifs_per_user"] = py::none();
                  } else {
                      row["motif_count"] = cell.total_motifs;
                      row["mean_motifs_per_user"] = cell.mean_motifs_per_user;
                  }
                  rows.push_back(std::move(row));
              }
              return rows;
          },
          py::arg("dataset"), py::arg("thetas"), py::arg("lambdas"), py::arg("granularities"),
          py::arg("window") = 3);

    // --- synth / harness --------------------------------------------------
    m.def("generate_dataset",
          [](const synth::SynthSpec& spec) {
              synth::SynthResult result = synth::generate_dataset(spec);
              return py::make_tuple(result.dataset, result.truth);
          },
          py::arg("spec"));
    m.def("evaluate_profile", &synth::evaluate_profile, py::arg("profile"), py::arg("truth"),
          py::arg("match_tolerance_slots") = 1);
    m.def("benchmark_once",
          [](const ingest::Dataset& dataset, int num_days, std::optional<int> window,
             const mining::MiningConfig& config) {
              harness::BenchRun run = harness::run_once(dataset, num_days, window, config);
              py::dict row;
              row["wall_ms"] = run.wall_ms;
              row["day_pair_comparisons"] = run.stats.day_pair_comparisons;
              row["group_comparisons"] = run.stats.group_comparisons;
              row["comparisons"] = run.stats.total();
              return row;
          },
          py::arg("dataset"), py::arg("num_days"), py::arg("window") = std::nullopt,
          py::arg("config") = mining::MiningConfig{});

#ifdef MOTIFLOG_VERSION
    m.attr("__version__") = MOTIFLOG_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
