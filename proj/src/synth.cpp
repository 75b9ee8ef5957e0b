#include "motiflog/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

using ordered_json = nlohmann::ordered_json;

namespace motiflog::synth {

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Draw helpers built directly on the standardized mt19937_64 output so
// generated datasets are identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

    // Uniform integer in [lo, hi], rejection-sampled to stay unbiased.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
        std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
        std::uint64_t draw;
        do {
            draw = engine_();
        } while (draw >= limit);
        return lo + static_cast<std::int64_t>(draw % range);
    }

private:
    std::mt19937_64 engine_;
};

struct NoiseSensor {
    const char* name;
    int weight;
};

// Loosely mirrors the volume mix of a phone lifelog: WiFi dominates.
constexpr NoiseSensor k_noise_mix[] = {
    {"WiFi", 85}, {"Application", 9}, {"Bluetooth", 3}, {"Call", 2}, {"SMS", 1},
};

constexpr int k_noise_mix_total = 100;

const char* draw_noise_sensor(Rng& rng) {
    std::int64_t ticket = rng.uniform_int(0, k_noise_mix_total - 1);
    for (const NoiseSensor& sensor : k_noise_mix) {
        ticket -= sensor.weight;
        if (ticket < 0) return sensor.name;
    }
    return k_noise_mix[0].name;
}

std::string user_name(int index, int num_users) {
    int width = num_users > 100 ? 3 : 2;
    char buf[24];
    std::snprintf(buf, sizeof(buf), "user%0*d", width, index);
    return buf;
}

ordered_json items_to_json(const std::vector<mining::Item>& items) {
    ordered_json out = ordered_json::array();
    for (const mining::Item& item : items) {
        out.push_back({{"sensor", item.first}, {"data", item.second}});
    }
    return out;
}

std::vector<mining::Item> items_from_json(const ordered_json& in) {
    std::vector<mining::Item> items;
    for (const auto& item : in) {
        items.emplace_back(item.at("sensor").get<std::string>(),
                           item.at("data").get<std::string>());
    }
    return items;
}

}  // namespace

void SynthSpec::validate() const {
    if (num_users < 1) throw ConfigError("num_users must be >= 1");
    if (num_days < 2) throw ConfigError("num_days must be >= 2");
    if (noise_entities_per_day < 0) throw ConfigError("noise_entities_per_day must be >= 0");
    if (dropout_probability < 0 || dropout_probability > 1) {
        throw ConfigError("dropout_probability must be in [0, 1]");
    }
    if (recurrent_noise_pool < 0) throw ConfigError("recurrent_noise_pool must be >= 0");
    for (const PlantedMotif& motif : planted_motifs) {
        if (motif.slot_minute < 0 || motif.slot_minute >= minutes_per_day) {
            throw ConfigError("planted slot_minute out of range");
        }
        if (motif.items.empty()) throw ConfigError("planted motif needs at least one item");
        if (motif.repeat_probability < 0 || motif.repeat_probability > 1) {
            throw ConfigError("repeat_probability must be in [0, 1]");
        }
        if (motif.jitter_minutes < 0) throw ConfigError("jitter_minutes must be >= 0");
        for (const mining::Item& item : motif.items) {
            if (item.first == "Location") {
                // Location items are movement-state labels produced by the
                // estimator, not raw payloads; planting them would never
                // round-trip through mining.
                throw ConfigError("planted motifs cannot use the Location sensor");
            }
        }
    }
}

SynthSpec spec_from_json(const std::string& text) {
    ordered_json in = ordered_json::parse(text);
    SynthSpec spec;
    spec.num_users = in.value("num_users", 1);
    spec.num_days = in.value("num_days", 2);
    if (in.contains("start_date")) {
        auto date = parse_date(in["start_date"].get<std::string>());
        if (!date) throw ConfigError("bad start_date");
        spec.start_date = *date;
    } else {
        spec.start_date = make_date(2014, 1, 6);
    }
    spec.noise_entities_per_day = in.value("noise_entities_per_day", 0);
    spec.dropout_probability = in.value("dropout_probability", 0.0);
    spec.recurrent_noise_pool = in.value("recurrent_noise_pool", 0);
    spec.seed = in.value("seed", 0ULL);
    if (in.contains("planted_motifs")) {
        for (const auto& m : in["planted_motifs"]) {
            PlantedMotif motif;
            motif.slot_minute = m.at("slot_minute").get<int>();
            motif.items = items_from_json(m.at("items"));
            motif.repeat_probability = m.value("repeat_probability", 1.0);
            motif.jitter_minutes = m.value("jitter_minutes", 0);
            spec.planted_motifs.push_back(std::move(motif));
        }
    }
    spec.validate();
    return spec;
}

SynthSpec load_spec(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read spec file " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return spec_from_json(buffer.str());
}

std::string spec_to_json(const SynthSpec& spec) {
    ordered_json out;
    out["num_users"] = spec.num_users;
    out["num_days"] = spec.num_days;
    out["start_date"] = format_date(spec.start_date);
    out["seed"] = spec.seed;
    out["noise_entities_per_day"] = spec.noise_entities_per_day;
    out["dropout_probability"] = spec.dropout_probability;
    out["recurrent_noise_pool"] = spec.recurrent_noise_pool;
    out["planted_motifs"] = ordered_json::array();
    for (const PlantedMotif& motif : spec.planted_motifs) {
        out["planted_motifs"].push_back({{"slot_minute", motif.slot_minute},
                                         {"items", items_to_json(motif.items)},
                                         {"repeat_probability", motif.repeat_probability},
                                         {"jitter_minutes", motif.jitter_minutes}});
    }
    return out.dump(2);
}

SynthResult generate_dataset(const SynthSpec& spec) {
    spec.validate();
    SynthResult result;
    for (int user_index = 0; user_index < spec.num_users; ++user_index) {
        std::string user_id = user_name(user_index, spec.num_users);
        Rng rng(mix64(spec.seed ^ mix64(static_cast<std::uint64_t>(user_index))));
        std::vector<Entity> entities;
        std::vector<PlantedOutcome> outcomes;
        outcomes.reserve(spec.planted_motifs.size());
        for (const PlantedMotif& motif : spec.planted_motifs) outcomes.push_back({motif, {}});

        std::uint64_t fresh_counter = 0;
        for (int day_index = 0; day_index < spec.num_days; ++day_index) {
            Date date = spec.start_date + day_index;
            Timestamp base = day_start(date);

            for (std::size_t m = 0; m < spec.planted_motifs.size(); ++m) {
                const PlantedMotif& motif = spec.planted_motifs[m];
                if (!rng.bernoulli(motif.repeat_probability)) continue;
                outcomes[m].fired_days.push_back(date);
                for (const mining::Item& item : motif.items) {
                    int minute = motif.slot_minute;
                    if (motif.jitter_minutes > 0) {
                        minute += static_cast<int>(
                            rng.uniform_int(-motif.jitter_minutes, motif.jitter_minutes));
                        minute = std::clamp(minute, 0, minutes_per_day - 1);
                    }
                    bool dropped = spec.dropout_probability > 0 &&
                                   rng.bernoulli(spec.dropout_probability);
                    if (dropped) continue;
                    Entity entity;
                    entity.timestamp = base + static_cast<Timestamp>(minute) * 60;
                    entity.sensor = item.first;
                    entity.data = item.second;
                    entities.push_back(std::move(entity));
                }
            }

            for (int n = 0; n < spec.noise_entities_per_day; ++n) {
                Entity entity;
                entity.timestamp =
                    base + static_cast<Timestamp>(rng.uniform_int(0, minutes_per_day - 1)) * 60;
                entity.sensor = draw_noise_sensor(rng);
                char id[48];
                if (spec.recurrent_noise_pool > 0) {
                    std::snprintf(id, sizeof(id), "rn-%lld",
                                  static_cast<long long>(
                                      rng.uniform_int(0, spec.recurrent_noise_pool - 1)));
                } else {
                    std::snprintf(id, sizeof(id), "n-%s-%llu", user_id.c_str(),
                                  static_cast<unsigned long long>(fresh_counter++));
                }
                entity.data = id;
                entities.push_back(std::move(entity));
            }
        }

        result.dataset[user_id] =
            ingest::bucket_by_day(user_id, std::move(entities), ingest::LoadOptions{});
        result.truth[user_id] = std::move(outcomes);
    }
    return result;
}

std::string truth_to_json(const GroundTruth& truth) {
    ordered_json out;
    for (const auto& [user_id, outcomes] : truth) {
        ordered_json list = ordered_json::array();
        for (const PlantedOutcome& outcome : outcomes) {
            ordered_json fired = ordered_json::array();
            for (Date d : outcome.fired_days) fired.push_back(format_date(d));
            list.push_back({{"slot_minute", outcome.motif.slot_minute},
                            {"items", items_to_json(outcome.motif.items)},
                            {"repeat_probability", outcome.motif.repeat_probability},
                            {"jitter_minutes", outcome.motif.jitter_minutes},
                            {"fired_days", std::move(fired)}});
        }
        out[user_id] = std::move(list);
    }
    return out.dump(2);
}

GroundTruth truth_from_json(const std::string& text) {
    ordered_json in = ordered_json::parse(text);
    GroundTruth truth;
    for (auto it = in.begin(); it != in.end(); ++it) {
        std::vector<PlantedOutcome> outcomes;
        for (const auto& o : it.value()) {
            PlantedOutcome outcome;
            outcome.motif.slot_minute = o.at("slot_minute").get<int>();
            outcome.motif.items = items_from_json(o.at("items"));
            outcome.motif.repeat_probability = o.value("repeat_probability", 1.0);
            outcome.motif.jitter_minutes = o.value("jitter_minutes", 0);
            for (const auto& d : o.at("fired_days")) {
                auto date = parse_date(d.get<std::string>());
                if (!date) throw DataError("bad date in ground truth");
                outcome.fired_days.push_back(*date);
            }
            outcomes.push_back(std::move(outcome));
        }
        truth[it.key()] = std::move(outcomes);
    }
    return truth;
}

EvalResult evaluate_profile(const mining::Profile& profile,
                            const std::vector<PlantedOutcome>& truth,
                            int match_tolerance_slots) {
    const int tolerance_minutes =
        match_tolerance_slots * profile.config.granularity.precision_minutes;
    const std::size_t theta = static_cast<std::size_t>(profile.config.theta);

    auto matches = [&](const mining::Group& motif, const PlantedMotif& planted) {
        if (motif.items.size() < theta) return false;
        if (std::abs(motif.slot - planted.slot_minute) > tolerance_minutes) return false;
        return std::includes(planted.items.begin(), planted.items.end(), motif.items.begin(),
                             motif.items.end());
    };

    // Planted items arrive in spec order; subset checks need them sorted.
    std::vector<PlantedMotif> planted;
    planted.reserve(truth.size());
    for (const PlantedOutcome& outcome : truth) {
        planted.push_back(outcome.motif);
        std::sort(planted.back().items.begin(), planted.back().items.end());
    }

    EvalResult result;
    result.profile_motifs = static_cast<int>(profile.motifs.size());
    result.planted = static_cast<int>(planted.size());

    for (const mining::Group& motif : profile.motifs) {
        bool matched = std::any_of(planted.begin(), planted.end(),
                                   [&](const PlantedMotif& p) { return matches(motif, p); });
        if (matched) ++result.matched_profile_motifs;
    }
    for (const PlantedMotif& p : planted) {
        bool recovered =
            std::any_of(profile.motifs.begin(), profile.motifs.end(),
                        [&](const mining::Group& motif) { return matches(motif, p); });
        if (recovered) ++result.recovered_planted;
    }

    if (result.profile_motifs == 0) {
        result.empty_profile = true;
        result.precision = 1.0;  // vacuous
    } else {
        result.precision = static_cast<double>(result.matched_profile_motifs) /
                           static_cast<double>(result.profile_motifs);
    }
    result.recall = result.planted == 0 ? 1.0
                                        : static_cast<double>(result.recovered_planted) /
                                              static_cast<double>(result.planted);
    return result;
}

}  // namespace motiflog::synth
