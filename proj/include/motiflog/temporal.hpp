#pragma once

#include "motiflog/model.hpp"

namespace motiflog::temporal {

// Human-scale time grid, in minutes. Typical values are 5, 15, 30, 60,
// 90 and 120; any positive value up to a full day is accepted.
struct GranularityConfig {
    int precision_minutes = 60;

    void validate() const {
        if (precision_minutes <= 0 || precision_minutes > minutes_per_day) {
            throw ConfigError("granularity precision must be in (0, 1440] minutes");
        }
    }
};

// Snaps a minute-of-day to the nearer grid point. The grid anchors at
// midnight and steps by the precision; the last grid point is capped at
// minute 1439 so a snapped time never leaves its calendar day. Exact
// midpoints round up.
int snap_minute(int minute_of_day, const GranularityConfig& config);

// Assigns granular_time to every entity from its wall-clock minute
// (seconds truncated). Timestamps, order and payloads are untouched.
DayLog apply_granularity(DayLog day, const GranularityConfig& config);

}  // namespace motiflog::temporal
