#include "motiflog/mining.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

using ordered_json = nlohmann::ordered_json;

namespace motiflog::mining {

namespace {

void require_comparable(const DayLog& a, const DayLog& b) {
    if (!a.granularity_minutes || !b.granularity_minutes) {
        throw DataError("days must pass through apply_granularity before mining");
    }
    if (*a.granularity_minutes != *b.granularity_minutes) {
        throw DataError("cannot compare days mined at different granularities");
    }
}

// Distinct (slot, item) pairs of one day, sorted.
std::vector<std::pair<int, Item>> slot_items(const DayLog& day) {
    std::vector<std::pair<int, Item>> result;
    result.reserve(day.entities.size());
    for (const Entity& entity : day.entities) {
        if (!entity.granular_time) {
            throw DataError("entity without granular time in " + day.user_id);
        }
        result.emplace_back(*entity.granular_time, item_of(entity));
    }
    std::sort(result.begin(), result.end());
    result.erase(std::unique(result.begin(), result.end()), result.end());
    return result;
}

bool group_less(const Group& a, const Group& b) {
    if (a.slot != b.slot) return a.slot < b.slot;
    if (a.confidence_pct != b.confidence_pct) return a.confidence_pct > b.confidence_pct;
    return a.items < b.items;
}

// Profile assembly: groups are folded into a flat list through linear
// scans, and each equality test is counted. This stage is what shrinks
// when windows grow, so the counter makes the window-size effect on the
// workload observable independently of the clock.
class ProfileAssembler {
public:
    explicit ProfileAssembler(MiningStats* stats) : stats_(stats) {}

    void add(const Group& group) {
        for (Group& existing : groups_) {
            if (stats_) ++stats_->group_comparisons;
            if (existing.same_motif(group)) {
                std::vector<Date> merged;
                std::set_union(existing.support_days.begin(), existing.support_days.end(),
                               group.support_days.begin(), group.support_days.end(),
                               std::back_inserter(merged));
                existing.support_days = std::move(merged);
                return;
            }
        }
        groups_.push_back(group);
    }

    std::vector<Group> finish(const MiningConfig& config, int days_mined) {
        std::vector<Group> motifs;
        for (Group& group : groups_) {
            group.confidence_pct =
                days_mined > 0
                    ? 100.0 * static_cast<double>(group.support_days.size()) / days_mined
                    : 0.0;
            if (group.confidence_pct >= config.lambda_pct) motifs.push_back(std::move(group));
        }
        std::sort(motifs.begin(), motifs.end(), group_less);
        return motifs;
    }

private:
    std::vector<Group> groups_;
    MiningStats* stats_;
};

}  // namespace

Item item_of(const Entity& entity) {
    if (entity.sensor == "Location") {
        return {entity.sensor,
                to_string(entity.location_state.value_or(LocationState::unknown))};
    }
    return {entity.sensor, entity.data};
}

std::vector<Group> compare_days(const DayLog& a, const DayLog& b, int theta,
                                MiningStats* stats) {
    if (theta < 1) throw ConfigError("theta must be >= 1");
    require_comparable(a, b);
    if (stats) ++stats->day_pair_comparisons;

    auto left = slot_items(a);
    auto right = slot_items(b);
    std::vector<std::pair<int, Item>> matched;
    std::set_intersection(left.begin(), left.end(), right.begin(), right.end(),
                          std::back_inserter(matched));

    std::vector<Group> groups;
    std::size_t i = 0;
    while (i < matched.size()) {
        std::size_t j = i;
        while (j < matched.size() && matched[j].first == matched[i].first) ++j;
        if (j - i >= static_cast<std::size_t>(theta)) {
            Group group;
            group.slot = matched[i].first;
            for (std::size_t k = i; k < j; ++k) group.items.push_back(matched[k].second);
            group.support_days = {std::min(a.date, b.date), std::max(a.date, b.date)};
            if (a.date == b.date) group.support_days = {a.date};
            groups.push_back(std::move(group));
        }
        i = j;
    }
    return groups;
}

std::vector<Behavior> mine_windows(const std::vector<DayLog>& days, const MiningConfig& config,
                                   MiningStats* stats) {
    config.validate();
    if (days.size() < 2) throw DataError("insufficient data: mining needs at least two days");

    const std::size_t window = static_cast<std::size_t>(config.window_size);
    std::vector<Behavior> behaviors;
    if (days.size() < window) return behaviors;

    for (std::size_t start = 0; start + window <= days.size(); ++start) {
        // Key = (slot, items); value = union of supporting dates.
        std::map<std::pair<int, std::vector<Item>>, std::set<Date>> merged;
        for (std::size_t i = start; i < start + window; ++i) {
            for (std::size_t j = i + 1; j < start + window; ++j) {
                for (Group& group : compare_days(days[i], days[j], config.theta, stats)) {
                    auto& support = merged[{group.slot, std::move(group.items)}];
                    support.insert(group.support_days.begin(), group.support_days.end());
                }
            }
        }
        if (merged.empty()) continue;
        Behavior behavior;
        behavior.window_start_date = days[start].date;
        for (auto& [key, support] : merged) {
            Group group;
            group.slot = key.first;
            group.items = key.second;
            group.support_days.assign(support.begin(), support.end());
            behavior.groups.push_back(std::move(group));
        }
        behaviors.push_back(std::move(behavior));
    }
    return behaviors;
}

Profile build_profile(const std::vector<Behavior>& behaviors, const MiningConfig& config,
                      int days_mined, const std::string& user_id, MiningStats* stats) {
    config.validate();
    ProfileAssembler assembler(stats);
    for (const Behavior& behavior : behaviors) {
        for (const Group& group : behavior.groups) assembler.add(group);
    }
    Profile profile;
    profile.user_id = user_id;
    profile.config = config;
    profile.days_mined = days_mined;
    profile.motifs = assembler.finish(config, days_mined);
    return profile;
}

Profile baseline_profile(const std::vector<DayLog>& days, const MiningConfig& config,
                         const std::string& user_id, MiningStats* stats) {
    config.validate();
    if (days.size() < 2) throw DataError("insufficient data: mining needs at least two days");

    ProfileAssembler assembler(stats);
    for (std::size_t i = 0; i < days.size(); ++i) {
        for (std::size_t j = i + 1; j < days.size(); ++j) {
            for (const Group& group : compare_days(days[i], days[j], config.theta, stats)) {
                assembler.add(group);
            }
        }
    }
    Profile profile;
    profile.user_id = user_id;
    profile.config = config;
    profile.days_mined = static_cast<int>(days.size());
    profile.motifs = assembler.finish(config, static_cast<int>(days.size()));
    return profile;
}

Profile mine_profile(const std::vector<DayLog>& days, const MiningConfig& config,
                     const std::string& user_id, MiningStats* stats) {
    std::vector<DayLog> snapped;
    snapped.reserve(days.size());
    for (const DayLog& day : days) {
        snapped.push_back(temporal::apply_granularity(day, config.granularity));
    }
    auto behaviors = mine_windows(snapped, config, stats);
    return build_profile(behaviors, config, static_cast<int>(snapped.size()), user_id, stats);
}

std::string profile_to_json(const Profile& profile, int indent) {
    ordered_json out;
    out["user_id"] = profile.user_id;
    out["config"] = {
        {"theta", profile.config.theta},
        {"lambda", profile.config.lambda_pct},
        {"window", profile.config.window_size},
        {"granularity", profile.config.granularity.precision_minutes},
    };
    out["motifs"] = ordered_json::array();
    for (const Group& motif : profile.motifs) {
        ordered_json m;
        m["slot"] = format_hhmm(motif.slot);
        m["items"] = ordered_json::array();
        for (const Item& item : motif.items) {
            m["items"].push_back({{"sensor", item.first}, {"data", item.second}});
        }
        m["confidence_pct"] = motif.confidence_pct;
        m["support_days"] = ordered_json::array();
        for (Date d : motif.support_days) m["support_days"].push_back(format_date(d));
        out["motifs"].push_back(std::move(m));
    }
    return out.dump(indent);
}

Profile profile_from_json(const std::string& text) {
    ordered_json in = ordered_json::parse(text);
    Profile profile;
    profile.user_id = in.at("user_id").get<std::string>();
    profile.config.theta = in.at("config").at("theta").get<int>();
    profile.config.lambda_pct = in.at("config").at("lambda").get<double>();
    profile.config.window_size = in.at("config").at("window").get<int>();
    profile.config.granularity.precision_minutes = in.at("config").at("granularity").get<int>();
    for (const auto& m : in.at("motifs")) {
        Group motif;
        std::string slot = m.at("slot").get<std::string>();
        motif.slot = std::stoi(slot.substr(0, 2)) * 60 + std::stoi(slot.substr(3, 2));
        for (const auto& item : m.at("items")) {
            motif.items.emplace_back(item.at("sensor").get<std::string>(),
                                     item.at("data").get<std::string>());
        }
        motif.confidence_pct = m.at("confidence_pct").get<double>();
        for (const auto& d : m.at("support_days")) {
            auto date = parse_date(d.get<std::string>());
            if (!date) throw DataError("bad date in profile JSON");
            motif.support_days.push_back(*date);
        }
        profile.motifs.push_back(std::move(motif));
    }
    return profile;
}

}  // namespace motiflog::mining
