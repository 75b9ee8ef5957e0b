#include "motiflog/model.hpp"

#include <array>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <cstring>

namespace motiflog {

namespace {

std::chrono::year_month_day ymd_of(Date d) {
    return std::chrono::year_month_day{
        std::chrono::sys_days{std::chrono::days{d}}};
}

int to_lower_ascii(int c) {
    return (c >= 'A' && c <= 'Z') ? c - 'A' + 'a' : c;
}

bool iequals(const std::string& a, const char* b) {
    std::size_t n = std::strlen(b);
    if (a.size() != n) return false;
    for (std::size_t i = 0; i < n; ++i) {
        if (to_lower_ascii(a[i]) != to_lower_ascii(b[i])) return false;
    }
    return true;
}

constexpr std::array<const char*, 12> k_month_names = {
    "jan", "feb", "mar", "apr", "may", "jun",
    "jul", "aug", "sep", "oct", "nov", "dec"};

constexpr std::array<const char*, 7> k_weekday_names = {
    "Sunday", "Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday"};

}  // namespace

std::string to_string(LocationState state) {
    switch (state) {
        case LocationState::moving: return "moving";
        case LocationState::stationary: return "stationary";
        case LocationState::unknown: return "unknown";
    }
    return "unknown";
}

std::optional<LocationState> location_state_from_string(const std::string& text) {
    if (iequals(text, "moving")) return LocationState::moving;
    if (iequals(text, "stationary")) return LocationState::stationary;
    if (iequals(text, "unknown")) return LocationState::unknown;
    return std::nullopt;
}

Date date_of(Timestamp t) {
    // Timestamps in this codebase are non-negative (years >= 1970).
    return static_cast<Date>(t / seconds_per_day);
}

int minute_of_day(Timestamp t) {
    return static_cast<int>((t % seconds_per_day) / 60);
}

Timestamp day_start(Date d) {
    return static_cast<Timestamp>(d) * seconds_per_day;
}

int weekday_of(Date d) {
    // 1970-01-01 was a Thursday.
    return static_cast<int>(((d % 7) + 7 + 4) % 7);
}

Date make_date(int year, int month, int day) {
    std::chrono::year_month_day ymd{std::chrono::year{year},
                                    std::chrono::month{static_cast<unsigned>(month)},
                                    std::chrono::day{static_cast<unsigned>(day)}};
    if (!ymd.ok()) throw ConfigError("invalid calendar date");
    return static_cast<Date>(std::chrono::sys_days{ymd}.time_since_epoch().count());
}

Timestamp make_timestamp(int year, int month, int day, int hour, int minute, int second) {
    return day_start(make_date(year, month, day)) + hour * 3600 + minute * 60 + second;
}

std::string format_date(Date d) {
    auto ymd = ymd_of(d);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

std::string format_timestamp(Timestamp t) {
    int secs = static_cast<int>(t % seconds_per_day);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%sT%02d:%02d:%02d", format_date(date_of(t)).c_str(),
                  secs / 3600, (secs / 60) % 60, secs % 60);
    return buf;
}

std::string format_hhmm(int minute) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%02d:%02d", minute / 60, minute % 60);
    return buf;
}

std::optional<Date> parse_date(const std::string& text) {
    int y = 0, m = 0, d = 0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%d-%d-%d%c", &y, &m, &d, &tail) != 3) return std::nullopt;
    std::chrono::year_month_day ymd{std::chrono::year{y},
                                    std::chrono::month{static_cast<unsigned>(m)},
                                    std::chrono::day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) return std::nullopt;
    return static_cast<Date>(std::chrono::sys_days{ymd}.time_since_epoch().count());
}

std::optional<Timestamp> parse_iso8601(const std::string& text, int local_offset_minutes) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
    int consumed = 0;
    if (std::sscanf(text.c_str(), "%4d-%2d-%2d%*1[T ]%2d:%2d:%2d%n",
                    &y, &mo, &d, &h, &mi, &s, &consumed) != 6) {
        return std::nullopt;
    }
    const char* rest = text.c_str() + consumed;
    if (*rest == '.') {  // fractional seconds are truncated
        ++rest;
        while (std::isdigit(static_cast<unsigned char>(*rest))) ++rest;
    }
    // Offset handling: explicit offsets are re-expressed in the
    // dataset-local frame; a bare timestamp is taken as already local.
    long source_offset_minutes = local_offset_minutes;
    if (*rest == 'Z') {
        source_offset_minutes = 0;
        ++rest;
    } else if (*rest == '+' || *rest == '-') {
        int oh = 0, om = 0;
        int sign = (*rest == '-') ? -1 : 1;
        int n = 0;
        if (std::sscanf(rest + 1, "%2d:%2d%n", &oh, &om, &n) == 2 && n > 0) {
            rest += 1 + n;
        } else if (std::sscanf(rest + 1, "%2d%2d%n", &oh, &om, &n) == 2 && n == 4) {
            rest += 5;
        } else {
            return std::nullopt;
        }
        source_offset_minutes = sign * (oh * 60 + om);
    }
    if (*rest != '\0') return std::nullopt;

    std::chrono::year_month_day ymd{std::chrono::year{y},
                                    std::chrono::month{static_cast<unsigned>(mo)},
                                    std::chrono::day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) return std::nullopt;
    if (h > 23 || mi > 59 || s > 60) return std::nullopt;
    Timestamp wall = day_start(static_cast<Date>(
                         std::chrono::sys_days{ymd}.time_since_epoch().count())) +
                     h * 3600 + mi * 60 + s;
    return wall + (local_offset_minutes - source_offset_minutes) * 60;
}

std::optional<Timestamp> parse_us_datetime(const std::string& text) {
    // "MMM d, yyyy h:mm:ss AM/PM", e.g. "Jan 1, 2014 2:09:42 PM"
    char month_text[16] = {0};
    char meridiem[8] = {0};
    int d = 0, y = 0, h = 0, mi = 0, s = 0;
    if (std::sscanf(text.c_str(), " %15[A-Za-z] %d , %d %d:%d:%d %7[APMapm]",
                    month_text, &d, &y, &h, &mi, &s, meridiem) != 7) {
        return std::nullopt;
    }
    int month = 0;
    for (std::size_t i = 0; i < k_month_names.size(); ++i) {
        if (std::strlen(month_text) >= 3 &&
            to_lower_ascii(month_text[0]) == k_month_names[i][0] &&
            to_lower_ascii(month_text[1]) == k_month_names[i][1] &&
            to_lower_ascii(month_text[2]) == k_month_names[i][2]) {
            month = static_cast<int>(i) + 1;
            break;
        }
    }
    if (month == 0 || h < 1 || h > 12 || mi > 59 || s > 60) return std::nullopt;
    bool pm = (to_lower_ascii(meridiem[0]) == 'p');
    int hour24 = (h % 12) + (pm ? 12 : 0);
    std::chrono::year_month_day ymd{std::chrono::year{y},
                                    std::chrono::month{static_cast<unsigned>(month)},
                                    std::chrono::day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) return std::nullopt;
    return day_start(static_cast<Date>(std::chrono::sys_days{ymd}.time_since_epoch().count())) +
           hour24 * 3600 + mi * 60 + s;
}

std::optional<int> weekday_from_name(const std::string& name) {
    for (int i = 0; i < 7; ++i) {
        const char* full = k_weekday_names[i];
        if (iequals(name, full)) return i;
        if (name.size() == 3 && to_lower_ascii(name[0]) == to_lower_ascii(full[0]) &&
            to_lower_ascii(name[1]) == to_lower_ascii(full[1]) &&
            to_lower_ascii(name[2]) == to_lower_ascii(full[2])) {
            return i;
        }
    }
    return std::nullopt;
}

std::string weekday_name(int weekday) {
    if (weekday < 0 || weekday > 6) throw ConfigError("weekday out of range");
    return k_weekday_names[static_cast<std::size_t>(weekday)];
}

}  // namespace motiflog
