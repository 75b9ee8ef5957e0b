#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "motiflog/mining.hpp"

using namespace motiflog;
using namespace motiflog::mining;

namespace {

struct Obs {
    int minute;
    std::string sensor;
    std::string data;
};

DayLog make_day(Date date, const std::vector<Obs>& observations,
                const std::string& user = "u") {
    DayLog day;
    day.user_id = user;
    day.date = date;
    for (const Obs& obs : observations) {
        Entity entity;
        entity.timestamp = day_start(date) + obs.minute * 60;
        entity.sensor = obs.sensor;
        entity.data = obs.data;
        day.entities.push_back(entity);
    }
    return day;
}

DayLog snapped(DayLog day, int precision = 60) {
    return temporal::apply_granularity(std::move(day),
                                       temporal::GranularityConfig{precision});
}

MiningConfig config_of(int theta, double lambda, int window, int precision = 60) {
    MiningConfig config;
    config.theta = theta;
    config.lambda_pct = lambda;
    config.window_size = window;
    config.granularity.precision_minutes = precision;
    return config;
}

std::set<std::pair<int, std::vector<Item>>> motif_keys(const Profile& profile) {
    std::set<std::pair<int, std::vector<Item>>> keys;
    for (const Group& motif : profile.motifs) keys.insert({motif.slot, motif.items});
    return keys;
}

// Random small instance over a tiny alphabet so collisions are common.
std::vector<DayLog> random_instance(std::mt19937& rng, int max_days = 8,
                                    int max_entities = 30) {
    int num_days = 2 + static_cast<int>(rng() % (max_days - 1));
    Date start = make_date(2014, 3, 3);
    std::vector<DayLog> days;
    for (int d = 0; d < num_days; ++d) {
        std::vector<Obs> observations;
        int count = static_cast<int>(rng() % (max_entities + 1));
        for (int i = 0; i < count; ++i) {
            static const char* sensors[] = {"WiFi", "Application", "Call"};
            observations.push_back({static_cast<int>(rng() % 1440),
                                    sensors[rng() % 3],
                                    "id" + std::to_string(rng() % 6)});
        }
        days.push_back(snapped(make_day(start + d, observations), 60));
    }
    return days;
}

}  // namespace

TEST_CASE("matching call at the same slot forms a group") {
    DayLog a = snapped(make_day(make_date(2014, 1, 6),
                                {{15 * 60 + 5, "Call", "951603XXXX"},
                                 {15 * 60 + 10, "Location", "48.2,16.3,gps"}}));
    DayLog b = snapped(make_day(make_date(2014, 1, 7),
                                {{15 * 60 + 20, "Call", "951603XXXX"}}));
    auto groups = compare_days(a, b, 1);
    REQUIRE(groups.size() == 1);
    CHECK(groups[0].slot == 15 * 60);
    REQUIRE(groups[0].items.size() == 1);
    CHECK(groups[0].items[0] == Item{"Call", "951603XXXX"});
    CHECK(groups[0].support_days == std::vector<Date>{a.date, b.date});
}

TEST_CASE("theta gates group creation") {
    DayLog a = snapped(make_day(make_date(2014, 1, 6),
                                {{600, "WiFi", "ap1"}, {605, "Application", "mail"}}));
    DayLog b = snapped(make_day(make_date(2014, 1, 7),
                                {{601, "WiFi", "ap1"}, {606, "Application", "mail"}}));
    CHECK(compare_days(a, b, 2).size() == 1);  // two matched items in slot 600
    CHECK(compare_days(a, b, 3).empty());      // threshold not met
}

TEST_CASE("identical days against a brute-force slot enumeration") {
    DayLog day = snapped(make_day(make_date(2014, 1, 6), {{60, "WiFi", "ap1"},
                                                          {65, "WiFi", "ap2"},
                                                          {300, "Call", "42"},
                                                          {300, "Call", "42"},
                                                          {900, "Application", "chat"}}));
    DayLog other = day;
    other.date = make_date(2014, 1, 7);
    for (Entity& entity : other.entities) entity.timestamp += seconds_per_day;

    // independent oracle: bucket the day's distinct items by slot
    std::map<int, std::set<Item>> expected;
    for (const Entity& entity : day.entities) {
        expected[*entity.granular_time].insert(item_of(entity));
    }

    auto groups = compare_days(day, other, 1);
    REQUIRE(groups.size() == expected.size());
    for (const Group& group : groups) {
        REQUIRE(expected.count(group.slot) == 1);
        std::set<Item> items(group.items.begin(), group.items.end());
        CHECK(items == expected[group.slot]);
    }
}

TEST_CASE("location entities match on state labels") {
    DayLog a = make_day(make_date(2014, 1, 6), {{480, "Location", "48.20,16.37,gps"}});
    DayLog b = make_day(make_date(2014, 1, 7), {{482, "Location", "48.99,16.99,gps"}});
    a.entities[0].location_state = LocationState::stationary;
    b.entities[0].location_state = LocationState::stationary;
    auto groups = compare_days(snapped(std::move(a)), snapped(std::move(b)), 1);
    REQUIRE(groups.size() == 1);  // different coordinates, same state
    CHECK(groups[0].items[0] == Item{"Location", "stationary"});

    DayLog c = make_day(make_date(2014, 1, 8), {{481, "Location", "48.20,16.37,gps"}});
    c.entities[0].location_state = LocationState::moving;
    DayLog a2 = make_day(make_date(2014, 1, 6), {{480, "Location", "48.20,16.37,gps"}});
    a2.entities[0].location_state = LocationState::stationary;
    CHECK(compare_days(snapped(std::move(a2)), snapped(std::move(c)), 1).empty());
}

TEST_CASE("compare_days rejects unsnapped or mismatched days") {
    DayLog raw = make_day(make_date(2014, 1, 6), {{600, "WiFi", "ap"}});
    DayLog fine = snapped(raw);
    CHECK_THROWS_AS(compare_days(raw, fine, 1), DataError);
    DayLog coarser = snapped(make_day(make_date(2014, 1, 7), {{600, "WiFi", "ap"}}), 30);
    CHECK_THROWS_AS(compare_days(fine, coarser, 1), DataError);
    CHECK_THROWS_AS(compare_days(fine, fine, 0), ConfigError);
}

TEST_CASE("two shared slots in one window make one behavior with two groups") {
    // window size and theta both two
    Date d1 = make_date(2014, 1, 6);
    std::vector<DayLog> days = {
        snapped(make_day(d1, {{540, "WiFi", "w1"},
                              {545, "Application", "a1"},
                              {1200, "Call", "c1"},
                              {1205, "WiFi", "w2"}})),
        snapped(make_day(d1 + 1, {{542, "WiFi", "w1"},
                                  {548, "Application", "a1"},
                                  {1198, "Call", "c1"},
                                  {1207, "WiFi", "w2"}})),
    };
    auto behaviors = mine_windows(days, config_of(2, 0, 2));
    REQUIRE(behaviors.size() == 1);
    CHECK(behaviors[0].window_start_date == d1);
    REQUIRE(behaviors[0].groups.size() == 2);
    CHECK(behaviors[0].groups[0].slot == 540);
    CHECK(behaviors[0].groups[1].slot == 1200);
    for (const Group& group : behaviors[0].groups) CHECK(group.items.size() == 2);
}

TEST_CASE("days with nothing in common mine nothing") {
    Date d1 = make_date(2014, 1, 6);
    std::vector<DayLog> days = {
        snapped(make_day(d1, {{100, "WiFi", "a"}})),
        snapped(make_day(d1 + 1, {{100, "WiFi", "b"}})),
        snapped(make_day(d1 + 2, {{100, "WiFi", "c"}})),
    };
    CHECK(mine_windows(days, config_of(1, 0, 2)).empty());
    Profile profile = build_profile({}, config_of(1, 0, 2), 3, "u");
    CHECK(profile.motifs.empty());
}

TEST_CASE("four identical days and window two give three equal behaviors") {
    Date d1 = make_date(2014, 1, 6);
    std::vector<DayLog> days;
    for (int i = 0; i < 4; ++i) {
        days.push_back(snapped(make_day(d1 + i, {{540, "WiFi", "w1"}, {900, "Call", "c1"}})));
    }
    auto behaviors = mine_windows(days, config_of(1, 0, 2));
    REQUIRE(behaviors.size() == 3);  // window positions: days - size + 1
    for (const Behavior& behavior : behaviors) {
        REQUIRE(behavior.groups.size() == 2);
        CHECK(behavior.groups[0].slot == 540);
        CHECK(behavior.groups[1].slot == 900);
    }
    CHECK(behaviors[0].window_start_date == d1);
    CHECK(behaviors[2].window_start_date == d1 + 2);
}

TEST_CASE("window arithmetic") {
    Date d1 = make_date(2014, 1, 6);
    std::vector<DayLog> days;
    for (int i = 0; i < 5; ++i) {
        days.push_back(snapped(make_day(d1 + i, {{540, "WiFi", "w"}})));
    }
    CHECK(mine_windows(days, config_of(1, 0, 2)).size() == 4);
    CHECK(mine_windows(days, config_of(1, 0, 5)).size() == 1);
    CHECK(mine_windows(days, config_of(1, 0, 6)).empty());  // window larger than data
    std::vector<DayLog> one = {days[0]};
    CHECK_THROWS_AS(mine_windows(one, config_of(1, 0, 2)), DataError);
    CHECK_THROWS_AS(baseline_profile(one, config_of(1, 0, 2)), DataError);
}

TEST_CASE("profile confidence and pruning") {
    Date d1 = make_date(2014, 1, 6);
    Group group;
    group.slot = 540;
    group.items = {{"WiFi", "w1"}};
    group.support_days = {d1, d1 + 1, d1 + 3};
    Behavior behavior;
    behavior.window_start_date = d1;
    behavior.groups = {group};

    // supported on three of four mined days and lambda 50: kept at 75
    Profile kept = build_profile({behavior}, config_of(1, 50, 2), 4, "u");
    REQUIRE(kept.motifs.size() == 1);
    CHECK(kept.motifs[0].confidence_pct == doctest::Approx(75.0));

    // supported once in ten days and lambda 20: pruned
    Group rare = group;
    rare.support_days = {d1};
    Behavior sparse;
    sparse.window_start_date = d1;
    sparse.groups = {rare};
    Profile pruned = build_profile({sparse}, config_of(1, 20, 2), 10, "u");
    CHECK(pruned.motifs.empty());

    // kept exactly at the threshold
    Profile at_threshold = build_profile({sparse}, config_of(1, 10, 2), 10, "u");
    REQUIRE(at_threshold.motifs.size() == 1);
    CHECK(at_threshold.motifs[0].confidence_pct == doctest::Approx(10.0));

    CHECK(build_profile({}, config_of(1, 0, 2), 0, "u").motifs.empty());
}

TEST_CASE("two days make baseline and windowed mining identical") {
    Date d1 = make_date(2014, 1, 6);
    std::vector<DayLog> days = {
        snapped(make_day(d1, {{540, "WiFi", "w1"}, {900, "Call", "c1"}})),
        snapped(make_day(d1 + 1, {{541, "WiFi", "w1"}, {901, "Call", "c1"}})),
    };
    MiningConfig config = config_of(1, 0, 2);
    Profile windowed = build_profile(mine_windows(days, config), config, 2, "u");
    Profile baseline = baseline_profile(days, config, "u");
    CHECK(profile_to_json(windowed) == profile_to_json(baseline));
}

TEST_CASE("planted six-of-eight motif scores 75 in the baseline") {
    Date d1 = make_date(2014, 1, 6);
    std::vector<DayLog> days;
    for (int i = 0; i < 8; ++i) {
        std::vector<Obs> observations = {{100 + i, "Application", "filler" + std::to_string(i)}};
        if (i != 2 && i != 5) observations.push_back({540, "WiFi", "home"});
        days.push_back(snapped(make_day(d1 + i, observations)));
    }
    Profile profile = baseline_profile(days, config_of(1, 0, 2), "u");
    REQUIRE(profile.motifs.size() == 1);
    CHECK(profile.motifs[0].slot == 540);
    CHECK(profile.motifs[0].support_days.size() == 6);
    CHECK(profile.motifs[0].confidence_pct == doctest::Approx(75.0));
}

TEST_CASE("baseline contains windowed results and matches it at full width") {
    std::mt19937 rng(20140106);
    for (int trial = 0; trial < 200; ++trial) {
        auto days = random_instance(rng);
        int theta = 1 + static_cast<int>(rng() % 3);
        double lambda = std::vector<double>{0, 20, 50}[rng() % 3];
        int window = 2 + static_cast<int>(rng() % days.size());

        MiningConfig config = config_of(theta, lambda, std::min<int>(window, days.size()));
        Profile windowed =
            build_profile(mine_windows(days, config), config, days.size(), "u");
        Profile baseline = baseline_profile(days, config, "u");

        auto window_keys = motif_keys(windowed);
        auto baseline_keys = motif_keys(baseline);
        CHECK(std::includes(baseline_keys.begin(), baseline_keys.end(), window_keys.begin(),
                            window_keys.end()));

        MiningConfig full = config_of(theta, lambda, days.size());
        Profile full_window = build_profile(mine_windows(days, full), full, days.size(), "u");
        CHECK(profile_to_json(full_window) == profile_to_json(baseline_profile(days, full, "u")));
    }
}

TEST_CASE("motif sets shrink as theta and lambda grow") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        auto days = random_instance(rng);
        for (int theta = 1; theta < 3; ++theta) {
            auto narrow = motif_keys(baseline_profile(days, config_of(theta + 1, 0, 2), "u"));
            auto wide = motif_keys(baseline_profile(days, config_of(theta, 0, 2), "u"));
            CHECK(std::includes(wide.begin(), wide.end(), narrow.begin(), narrow.end()));
        }
        for (double lambda : {0.0, 20.0}) {
            auto narrow =
                motif_keys(baseline_profile(days, config_of(1, lambda + 30, 2), "u"));
            auto wide = motif_keys(baseline_profile(days, config_of(1, lambda, 2), "u"));
            CHECK(std::includes(wide.begin(), wide.end(), narrow.begin(), narrow.end()));
        }
    }
}

TEST_CASE("relabeling data is invisible to the miner") {
    std::mt19937 rng(11);
    auto days = random_instance(rng);
    auto relabel = [](const std::string& data) { return "xx-" + data + "-yy"; };
    std::vector<DayLog> renamed = days;
    for (DayLog& day : renamed) {
        for (Entity& entity : day.entities) entity.data = relabel(entity.data);
    }
    Profile original = baseline_profile(days, config_of(2, 20, 2), "u");
    Profile mapped = baseline_profile(renamed, config_of(2, 20, 2), "u");
    REQUIRE(original.motifs.size() == mapped.motifs.size());
    for (std::size_t i = 0; i < original.motifs.size(); ++i) {
        CHECK(original.motifs[i].slot == mapped.motifs[i].slot);
        CHECK(original.motifs[i].confidence_pct == mapped.motifs[i].confidence_pct);
        CHECK(original.motifs[i].support_days == mapped.motifs[i].support_days);
        REQUIRE(original.motifs[i].items.size() == mapped.motifs[i].items.size());
        for (std::size_t k = 0; k < original.motifs[i].items.size(); ++k) {
            CHECK(relabel(original.motifs[i].items[k].second) ==
                  mapped.motifs[i].items[k].second);
        }
    }
}

TEST_CASE("comparison counters are exact") {
    Date d1 = make_date(2014, 1, 6);
    std::vector<DayLog> days;
    for (int i = 0; i < 10; ++i) {
        days.push_back(snapped(make_day(d1 + i, {{540, "WiFi", "w"}, {600, "Call", "c"}})));
    }
    for (int window : {2, 3, 4, 6}) {
        MiningStats stats;
        MiningConfig config = config_of(1, 0, window);
        mine_windows(days, config, &stats);
        std::uint64_t positions = days.size() - window + 1;
        std::uint64_t pairs_per_window =
            static_cast<std::uint64_t>(window) * (window - 1) / 2;
        CHECK(stats.day_pair_comparisons == positions * pairs_per_window);
    }
    MiningStats stats;
    baseline_profile(days, config_of(1, 0, 2), "u", &stats);
    CHECK(stats.day_pair_comparisons == 45);  // 10 * 9 / 2
    CHECK(stats.group_comparisons > 0);
}

TEST_CASE("identical inputs produce byte-identical profiles") {
    std::mt19937 rng(99);
    auto days = random_instance(rng);
    MiningConfig config = config_of(1, 20, 2);
    std::string first = profile_to_json(mine_profile(days, config, "user07"));
    std::string second = profile_to_json(mine_profile(days, config, "user07"));
    CHECK(first == second);
}

TEST_CASE("profile json round-trips") {
    Date d1 = make_date(2014, 1, 6);
    std::vector<DayLog> days = {
        snapped(make_day(d1, {{540, "WiFi", "w1"}, {545, "Call", "c1"}})),
        snapped(make_day(d1 + 1, {{540, "WiFi", "w1"}, {546, "Call", "c1"}})),
    };
    Profile profile = baseline_profile(days, config_of(2, 0, 2), "user01");
    std::string text = profile_to_json(profile);
    Profile back = profile_from_json(text);
    CHECK(back.user_id == profile.user_id);
    CHECK(back.config.theta == profile.config.theta);
    REQUIRE(back.motifs.size() == profile.motifs.size());
    CHECK(back.motifs[0].slot == profile.motifs[0].slot);
    CHECK(back.motifs[0].items == profile.motifs[0].items);
    CHECK(back.motifs[0].support_days == profile.motifs[0].support_days);
    CHECK(profile_to_json(back) == text);
}
