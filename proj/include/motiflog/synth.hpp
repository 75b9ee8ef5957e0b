#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "motiflog/ingest.hpp"
#include "motiflog/mining.hpp"
#include "motiflog/model.hpp"

namespace motiflog::synth {

struct PlantedMotif {
    int slot_minute = 0;                  // anchor minute of day
    std::vector<mining::Item> items;      // what fires together
    double repeat_probability = 1.0;      // per-day firing chance
    int jitter_minutes = 0;               // each item lands at slot +/- U(jitter)
};

struct SynthSpec {
    int num_users = 1;
    int num_days = 2;
    Date start_date = 0;                  // defaults to 2014-01-06 when loaded
    std::vector<PlantedMotif> planted_motifs;
    int noise_entities_per_day = 0;
    double dropout_probability = 0.0;     // per fired item
    // 0 = every noise identifier is unique; otherwise noise ids are drawn
    // from a per-user pool of this size, so noise can collide into groups.
    int recurrent_noise_pool = 0;
    std::uint64_t seed = 0;

    void validate() const;
};

SynthSpec spec_from_json(const std::string& text);
SynthSpec load_spec(const std::string& path);
std::string spec_to_json(const SynthSpec& spec);

struct PlantedOutcome {
    PlantedMotif motif;
    std::vector<Date> fired_days;
};

// Which motifs actually fired on which days, per user.
using GroundTruth = std::map<std::string, std::vector<PlantedOutcome>>;

struct SynthResult {
    ingest::Dataset dataset;
    GroundTruth truth;
};

// Fully deterministic for a given spec: each user draws from an
// independent stream derived from (seed, user index).
SynthResult generate_dataset(const SynthSpec& spec);

std::string truth_to_json(const GroundTruth& truth);
GroundTruth truth_from_json(const std::string& text);

struct EvalResult {
    double precision = 1.0;
    double recall = 1.0;
    bool empty_profile = false;
    int matched_profile_motifs = 0;
    int profile_motifs = 0;
    int recovered_planted = 0;
    int planted = 0;
};

// A planted motif counts as recovered when some profile motif carries a
// subset of its items of at least theta items, within the slot
// tolerance (in grid cells). Precision of an empty profile is reported
// as 1 with the empty flag set.
EvalResult evaluate_profile(const mining::Profile& profile,
                            const std::vector<PlantedOutcome>& truth,
                            int match_tolerance_slots = 1);

}  // namespace motiflog::synth
