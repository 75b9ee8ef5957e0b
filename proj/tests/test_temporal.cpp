#include <doctest.h>

#include "motiflog/temporal.hpp"

using namespace motiflog;
using temporal::GranularityConfig;
using temporal::snap_minute;

namespace {
int snap(int hh, int mm, int precision) {
    return snap_minute(hh * 60 + mm, GranularityConfig{precision});
}
}  // namespace

TEST_CASE("snap worked examples") {
    CHECK(snap(11, 8, 5) == 11 * 60 + 10);    // 11:08 -> 11:10
    CHECK(snap(14, 0, 60) == 14 * 60);        // already on the grid
    CHECK(snap(11, 8, 60) == 11 * 60);        // floor distance 8 beats 52
    CHECK(snap(11, 15, 30) == 11 * 60 + 30);  // exact tie rounds up
}

TEST_CASE("snap day edges") {
    // The terminal grid point is capped at 23:59 so snapping never
    // crosses into the next day.
    CHECK(snap(23, 59, 5) == 1439);
    CHECK(snap(23, 58, 5) == 1439);
    CHECK(snap(23, 56, 5) == 1435);
    // single-cell grid: early times to 00:00, late ones to the cap
    CHECK(snap(0, 30, 1440) == 0);
    CHECK(snap(23, 0, 1440) == 1439);
    // 90' does not divide the day; the grid still anchors at midnight
    CHECK(snap(2, 0, 90) == 90);
    CHECK(snap(22, 40, 90) == 1350);
}

TEST_CASE("snap property suite over all minutes and precisions") {
    for (int precision : {5, 15, 30, 60, 90, 120}) {
        GranularityConfig config{precision};
        int previous = 0;
        for (int minute = 0; minute < minutes_per_day; ++minute) {
            int snapped = snap_minute(minute, config);
            // idempotence
            CHECK(snap_minute(snapped, config) == snapped);
            // bounded displacement
            CHECK(std::abs(snapped - minute) <= precision / 2);
            // monotonicity
            if (minute > 0) CHECK(previous <= snapped);
            previous = snapped;
        }
    }
}

TEST_CASE("snap rejects bad inputs") {
    CHECK_THROWS_AS(snap_minute(12, GranularityConfig{0}), ConfigError);
    CHECK_THROWS_AS(snap_minute(12, GranularityConfig{2000}), ConfigError);
    CHECK_THROWS_AS(snap_minute(-1, GranularityConfig{5}), DataError);
    CHECK_THROWS_AS(snap_minute(1440, GranularityConfig{5}), DataError);
}

TEST_CASE("apply_granularity stamps slots and nothing else") {
    DayLog day;
    day.user_id = "u";
    day.date = make_date(2014, 1, 6);
    for (int mm : {8, 9, 12}) {
        Entity entity;
        entity.timestamp = make_timestamp(2014, 1, 6, 11, mm, 30);
        entity.sensor = "WiFi";
        entity.data = "ap-" + std::to_string(mm);
        day.entities.push_back(entity);
    }
    DayLog snapped = temporal::apply_granularity(day, GranularityConfig{5});
    REQUIRE(snapped.entities.size() == 3);
    for (const Entity& entity : snapped.entities) {
        CHECK(entity.granular_time == 11 * 60 + 10);  // all three land on 11:10
    }
    CHECK(snapped.granularity_minutes == 5);
    for (std::size_t i = 0; i < day.entities.size(); ++i) {
        CHECK(snapped.entities[i].timestamp == day.entities[i].timestamp);
        CHECK(snapped.entities[i].sensor == day.entities[i].sensor);
        CHECK(snapped.entities[i].data == day.entities[i].data);
    }

    DayLog empty;
    empty.date = day.date;
    CHECK(temporal::apply_granularity(empty, GranularityConfig{60}).entities.empty());
}
