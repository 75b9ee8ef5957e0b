#include "motiflog/location.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_set>

namespace motiflog::location {

namespace {

constexpr double k_earth_radius_m = 6371000.0;
constexpr double k_pi = 3.14159265358979323846;

double deg2rad(double deg) { return deg * k_pi / 180.0; }

struct GeoObservation {
    GeoPoint point;
    const Entity* entity;
};

// Splits time-ordered items into runs whose inter-arrival gap stays
// within params.gap_seconds.
template <typename T, typename GetTime>
std::vector<std::pair<std::size_t, std::size_t>> split_sequences(
    const std::vector<T>& items, std::int64_t gap_seconds, GetTime time_of) {
    std::vector<std::pair<std::size_t, std::size_t>> runs;
    std::size_t begin = 0;
    for (std::size_t i = 1; i <= items.size(); ++i) {
        if (i == items.size() || time_of(items[i]) - time_of(items[i - 1]) > gap_seconds) {
            runs.emplace_back(begin, i);
            begin = i;
        }
    }
    if (items.empty()) runs.clear();
    return runs;
}

std::vector<LocationEvent> classify_wifi(const std::vector<const Entity*>& sightings,
                                         const LocationParams& params) {
    std::vector<LocationEvent> events;
    auto runs = split_sequences(sightings, params.gap_seconds,
                                [](const Entity* e) { return e->timestamp; });
    for (auto [begin, end] : runs) {
        LocationEvent event;
        event.start = sightings[begin]->timestamp;
        event.end = sightings[end - 1]->timestamp;
        for (std::size_t i = begin; i < end; ++i) event.entities.push_back(*sightings[i]);
        if (end - begin < 2) {
            // A lone sighting cannot distinguish moving from stationary.
            event.state = LocationState::unknown;
        } else {
            std::unordered_set<std::string> seen;
            bool repeated = false;
            for (std::size_t i = begin; i < end; ++i) {
                if (!seen.insert(sightings[i]->data).second) repeated = true;
            }
            event.state = repeated ? LocationState::stationary : LocationState::moving;
        }
        events.push_back(std::move(event));
    }
    return events;
}

bool is_geographic_pair(GeoSource a, GeoSource b) {
    return a != GeoSource::cellid && b != GeoSource::cellid;
}

// Labels the spans between consecutive geographic fixes. GPS-grade pairs
// use the speed/displacement rule; Cell-ID spans are labeled through
// sliding all-Cell-ID triples where movement evidence wins over
// stationary when overlapping triples disagree.
std::vector<LocationEvent> classify_geo(const std::vector<GeoObservation>& points,
                                        const LocationParams& params,
                                        std::uint64_t& distance_computations) {
    std::vector<LocationEvent> events;
    auto runs = split_sequences(points, params.gap_seconds,
                                [](const GeoObservation& o) { return o.point.timestamp; });
    for (auto [begin, end] : runs) {
        const std::size_t n = end - begin;
        if (n < 2) continue;  // a single fix classifies nothing

        // 0 = unlabeled, otherwise a LocationState per inter-point span.
        std::vector<std::optional<LocationState>> span_state(n - 1);

        for (std::size_t i = begin; i + 1 < end; ++i) {
            const GeoPoint& a = points[i].point;
            const GeoPoint& b = points[i + 1].point;
            if (!is_geographic_pair(a.source, b.source)) continue;
            double meters = haversine_distance(a, b);
            ++distance_computations;
            double dt = static_cast<double>(b.timestamp - a.timestamp);
            bool moving = meters > params.min_moving_displacement_m &&
                          (dt <= 0.0 || meters / dt > params.min_moving_speed_mps);
            span_state[i - begin] = moving ? LocationState::moving : LocationState::stationary;
        }

        for (std::size_t i = begin; i + 2 < end; ++i) {
            if (points[i].point.source != GeoSource::cellid ||
                points[i + 1].point.source != GeoSource::cellid ||
                points[i + 2].point.source != GeoSource::cellid) {
                continue;
            }
            double meters = haversine_distance(points[i].point, points[i + 2].point);
            ++distance_computations;
            LocationState state = meters > params.cell_distance_m ? LocationState::moving
                                                                  : LocationState::stationary;
            for (std::size_t k = i - begin; k <= i - begin + 1; ++k) {
                if (!span_state[k] || state == LocationState::moving) span_state[k] = state;
            }
        }

        // Merge equal consecutive labeled spans into events.
        std::size_t i = 0;
        while (i < n - 1) {
            if (!span_state[i]) {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j + 1 < n - 1 && span_state[j + 1] == span_state[i]) ++j;
            LocationEvent event;
            event.state = *span_state[i];
            event.start = points[begin + i].point.timestamp;
            event.end = points[begin + j + 1].point.timestamp;
            for (std::size_t k = begin + i; k <= begin + j + 1; ++k) {
                event.entities.push_back(*points[k].entity);
            }
            events.push_back(std::move(event));
            i = j + 1;
        }
    }
    return events;
}

}  // namespace

double haversine_distance(double lat1, double lon1, double lat2, double lon2) {
    double phi1 = deg2rad(lat1);
    double phi2 = deg2rad(lat2);
    double dphi = deg2rad(lat2 - lat1);
    double dlambda = deg2rad(lon2 - lon1);
    double a = std::sin(dphi / 2) * std::sin(dphi / 2) +
               std::cos(phi1) * std::cos(phi2) * std::sin(dlambda / 2) * std::sin(dlambda / 2);
    return 2.0 * k_earth_radius_m * std::asin(std::min(1.0, std::sqrt(a)));
}

double haversine_distance(const GeoPoint& a, const GeoPoint& b) {
    return haversine_distance(a.latitude, a.longitude, b.latitude, b.longitude);
}

std::optional<GeoPoint> parse_geo_data(const std::string& data, Timestamp t) {
    double lat = 0.0, lon = 0.0;
    char source_text[16] = {0};
    int fields = std::sscanf(data.c_str(), "%lf,%lf,%15s", &lat, &lon, source_text);
    if (fields < 2) return std::nullopt;
    if (!(lat >= -90.0 && lat <= 90.0) || !(lon >= -180.0 && lon <= 180.0)) return std::nullopt;
    GeoPoint point{lat, lon, t, GeoSource::other};
    std::string source = source_text;
    if (source == "gps") {
        point.source = GeoSource::gps;
    } else if (source == "cellid" || source == "cell" || source == "network") {
        point.source = GeoSource::cellid;
    }
    return point;
}

std::string format_geo_data(double latitude, double longitude, GeoSource source) {
    const char* tag = source == GeoSource::gps      ? "gps"
                      : source == GeoSource::cellid ? "cellid"
                                                    : "other";
    char buf[80];
    std::snprintf(buf, sizeof(buf), "%.6f,%.6f,%s", latitude, longitude, tag);
    return buf;
}

LocationEstimate estimate_location_states(const DayLog& day, SignalType signal_type,
                                          const LocationParams& params) {
    LocationEstimate result;
    if (day.entities.empty()) return result;

    std::vector<const Entity*> wifi;
    std::vector<GeoObservation> geo;
    for (const Entity& entity : day.entities) {
        if (entity.sensor == "WiFi") {
            wifi.push_back(&entity);
        } else if (signal_type == SignalType::fused && entity.sensor == "Location") {
            if (auto point = parse_geo_data(entity.data, entity.timestamp)) {
                geo.push_back({*point, &entity});
            } else {
                ++result.skipped_points;
            }
        }
    }

    std::vector<LocationEvent> events;
    if (signal_type == SignalType::wifi_only) {
        events = classify_wifi(wifi, params);
    } else {
        events = classify_geo(geo, params, result.distance_computations);
        // WiFi fills the spans geography could not classify.
        const Timestamp day_begin = day_start(day.date);
        const Timestamp day_end = day_begin + seconds_per_day - 1;
        Timestamp cursor = day_begin;
        std::vector<LocationEvent> fallback;
        for (std::size_t i = 0; i <= events.size(); ++i) {
            Timestamp hole_end = (i < events.size()) ? events[i].start : day_end;
            std::vector<const Entity*> in_hole;
            for (const Entity* e : wifi) {
                if (e->timestamp >= cursor && e->timestamp <= hole_end) in_hole.push_back(e);
            }
            auto filled = classify_wifi(in_hole, params);
            fallback.insert(fallback.end(), filled.begin(), filled.end());
            if (i < events.size()) cursor = events[i].end;
        }
        events.insert(events.end(), fallback.begin(), fallback.end());
        std::sort(events.begin(), events.end(),
                  [](const LocationEvent& a, const LocationEvent& b) {
                      return a.start < b.start || (a.start == b.start && a.end < b.end);
                  });
    }

    if (events.empty()) {
        LocationEvent whole_day;
        whole_day.state = LocationState::unknown;
        whole_day.start = day_start(day.date);
        whole_day.end = whole_day.start + seconds_per_day - 1;
        result.events.push_back(std::move(whole_day));
        return result;
    }

    // Materialize unknown spans only across gaps wider than the sequence
    // gap, so classified events are not fragmented by routine silence.
    std::vector<LocationEvent> with_gaps;
    for (std::size_t i = 0; i < events.size(); ++i) {
        if (i > 0) {
            Timestamp previous_end = with_gaps.back().end;
            if (events[i].start - previous_end > params.gap_seconds) {
                LocationEvent gap;
                gap.state = LocationState::unknown;
                gap.start = previous_end;
                gap.end = events[i].start;
                with_gaps.push_back(std::move(gap));
            }
        }
        with_gaps.push_back(std::move(events[i]));
    }
    result.events = std::move(with_gaps);
    return result;
}

void attach_location_states(DayLog& day, const std::vector<LocationEvent>& events) {
    for (Entity& entity : day.entities) {
        for (const LocationEvent& event : events) {
            if (entity.timestamp >= event.start && entity.timestamp <= event.end) {
                entity.location_state = event.state;
                break;
            }
            if (event.start > entity.timestamp) break;
        }
    }
}

}  // namespace motiflog::location
