#include "motiflog/temporal.hpp"

#include <algorithm>

namespace motiflog::temporal {

int snap_minute(int minute, const GranularityConfig& config) {
    config.validate();
    if (minute < 0 || minute >= minutes_per_day) {
        throw DataError("minute of day out of range");
    }
    const int p = config.precision_minutes;
    const int floor_point = (minute / p) * p;
    const int ceil_point = std::min(floor_point + p, minutes_per_day - 1);
    const int down = minute - floor_point;
    const int up = ceil_point - minute;
    return (down < up) ? floor_point : ceil_point;
}

DayLog apply_granularity(DayLog day, const GranularityConfig& config) {
    config.validate();
    for (Entity& entity : day.entities) {
        entity.granular_time = snap_minute(minute_of_day(entity.timestamp), config);
    }
    day.granularity_minutes = config.precision_minutes;
    return day;
}

}  // namespace motiflog::temporal
