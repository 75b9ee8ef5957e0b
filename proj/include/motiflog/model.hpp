#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace motiflog {

// Wall-clock seconds since 1970-01-01T00:00:00 in the dataset's fixed
// local offset. Day bucketing and time-of-day math use this value
// directly, so a day is always a wall-clock day.
using Timestamp = std::int64_t;

// Calendar days since 1970-01-01 (same wall-clock frame as Timestamp).
using Date = std::int32_t;

constexpr std::int64_t seconds_per_day = 86400;
constexpr int minutes_per_day = 1440;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class LocationState { moving, stationary, unknown };

std::string to_string(LocationState state);
std::optional<LocationState> location_state_from_string(const std::string& text);

// One timestamped sensor observation. `data` is the sensor's canonical
// identifier; `granular_time` is the minute-of-day slot assigned by the
// temporal grid and is unset until a granularity pass runs.
struct Entity {
    Timestamp timestamp = 0;
    std::string sensor;
    std::string data;
    std::optional<int> granular_time;
    std::optional<LocationState> location_state;

    bool operator==(const Entity&) const = default;
};

// All observations of one user on one wall-clock day, sorted by time.
struct DayLog {
    std::string user_id;
    Date date = 0;
    std::vector<Entity> entities;
    bool is_weekend = false;
    // Set by apply_granularity; compare_days requires it to match.
    std::optional<int> granularity_minutes;
};

// --- civil time helpers -------------------------------------------------

Date date_of(Timestamp t);
int minute_of_day(Timestamp t);
Timestamp day_start(Date d);

// 0 = Sunday .. 6 = Saturday.
int weekday_of(Date d);

Date make_date(int year, int month, int day);
Timestamp make_timestamp(int year, int month, int day, int hour, int minute, int second);

std::string format_date(Date d);                 // YYYY-MM-DD
std::string format_timestamp(Timestamp t);       // YYYY-MM-DDTHH:MM:SS
std::string format_hhmm(int minute_of_day);      // HH:MM

std::optional<Date> parse_date(const std::string& text);
// Accepts "YYYY-MM-DDTHH:MM:SS" with optional fractional seconds and an
// optional trailing "Z" or +/-HH:MM offset. An explicit offset is
// converted into the dataset-local frame given by local_offset_minutes.
std::optional<Timestamp> parse_iso8601(const std::string& text, int local_offset_minutes = 0);
// Accepts the "MMM d, yyyy h:mm:ss AM/PM" layout, e.g. "Jan 1, 2014 2:09:42 PM".
std::optional<Timestamp> parse_us_datetime(const std::string& text);

std::optional<int> weekday_from_name(const std::string& name);
std::string weekday_name(int weekday);

}  // namespace motiflog
