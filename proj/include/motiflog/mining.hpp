#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "motiflog/model.hpp"
#include "motiflog/temporal.hpp"

namespace motiflog::mining {

struct MiningConfig {
    int theta = 1;          // minimum co-occurring matched items per slot
    double lambda_pct = 0;  // minimum motif confidence kept in the profile
    int window_size = 3;    // days per sliding-window position
    temporal::GranularityConfig granularity;

    void validate() const {
        if (theta < 1) throw ConfigError("theta must be >= 1");
        if (window_size < 2) throw ConfigError("window size must be >= 2");
        if (lambda_pct < 0 || lambda_pct > 100) {
            throw ConfigError("lambda must be a percentage in [0, 100]");
        }
        granularity.validate();
    }
};

// Mining never looks inside an item beyond equality. Location entities
// contribute their movement-state label instead of raw coordinates.
using Item = std::pair<std::string, std::string>;  // (sensor, value)

Item item_of(const Entity& entity);

// A set of items recurring at one time slot across days.
struct Group {
    int slot = 0;                     // granular minute-of-day
    std::vector<Item> items;          // sorted, unique
    std::vector<Date> support_days;   // sorted, unique
    double confidence_pct = 0.0;      // filled during profile assembly

    bool same_motif(const Group& other) const {
        return slot == other.slot && items == other.items;
    }
};

// Everything one window position discovered.
struct Behavior {
    Date window_start_date = 0;
    std::vector<Group> groups;
};

struct Profile {
    std::string user_id;
    std::vector<Group> motifs;
    MiningConfig config;
    Timestamp generated_at = 0;
    int days_mined = 0;
};

// Deterministic work counters; the benchmark's `comparisons` column is
// their sum. Group comparisons are the equality tests spent collapsing
// duplicate groups while assembling a profile.
struct MiningStats {
    std::uint64_t day_pair_comparisons = 0;
    std::uint64_t group_comparisons = 0;

    std::uint64_t total() const { return day_pair_comparisons + group_comparisons; }
    MiningStats& operator+=(const MiningStats& other) {
        day_pair_comparisons += other.day_pair_comparisons;
        group_comparisons += other.group_comparisons;
        return *this;
    }
};

// Matches entities of two days on (slot, sensor, value); every slot with
// at least theta distinct matched items becomes one Group supported by
// both dates. Both days must carry the same granularity stamp.
std::vector<Group> compare_days(const DayLog& a, const DayLog& b, int theta,
                                MiningStats* stats = nullptr);

// Slides a window of config.window_size days in steps of one day and
// compares every day pair inside each window, merging equal (slot,
// items) groups by uniting their support days. Window positions that
// found nothing emit no Behavior.
std::vector<Behavior> mine_windows(const std::vector<DayLog>& days, const MiningConfig& config,
                                   MiningStats* stats = nullptr);

// Collapses equal groups across behaviors, scores confidence as the
// percentage of mined days supporting the motif, prunes below lambda and
// sorts by (slot, confidence desc, items).
Profile build_profile(const std::vector<Behavior>& behaviors, const MiningConfig& config,
                      int days_mined, const std::string& user_id = {},
                      MiningStats* stats = nullptr);

// Windowless reference: compares every unordered day pair, then builds
// the profile the same way. Serves as benchmark baseline and oracle.
Profile baseline_profile(const std::vector<DayLog>& days, const MiningConfig& config,
                         const std::string& user_id = {}, MiningStats* stats = nullptr);

// Granularity pass plus mine_windows plus build_profile in one call.
Profile mine_profile(const std::vector<DayLog>& days, const MiningConfig& config,
                     const std::string& user_id = {}, MiningStats* stats = nullptr);

// Stable JSON rendering with fixed key order and sorted motifs, so equal
// profiles serialize to identical bytes.
std::string profile_to_json(const Profile& profile, int indent = 2);
Profile profile_from_json(const std::string& text);

}  // namespace motiflog::mining
