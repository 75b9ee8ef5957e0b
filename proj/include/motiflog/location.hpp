#pragma once

#include <cstdint>
#include <vector>

#include "motiflog/model.hpp"

namespace motiflog::location {

enum class GeoSource { gps, cellid, other };

struct GeoPoint {
    double latitude = 0.0;
    double longitude = 0.0;
    Timestamp timestamp = 0;
    GeoSource source = GeoSource::other;
};

// A contiguous span of one movement state and the observations behind it.
struct LocationEvent {
    LocationState state = LocationState::unknown;
    Timestamp start = 0;
    Timestamp end = 0;
    std::vector<Entity> entities;
};

enum class SignalType { wifi_only, fused };

struct LocationParams {
    // Two sightings belong to one sequence iff their gap is at most this.
    std::int64_t gap_seconds = 12 * 60;
    // Consecutive geographic fixes imply movement only past both bounds,
    // which filters coordinate jitter.
    double min_moving_speed_mps = 1.0;
    double min_moving_displacement_m = 50.0;
    // Cell tower coordinates are only trusted across three consecutive
    // points; first-to-third displacement beyond this means moving.
    double cell_distance_m = 800.0;
};

struct LocationEstimate {
    std::vector<LocationEvent> events;
    std::size_t skipped_points = 0;          // malformed coordinates
    std::uint64_t distance_computations = 0; // stays <= 3n for n signals
};

// Great-circle distance in meters on a 6,371 km sphere.
double haversine_distance(const GeoPoint& a, const GeoPoint& b);
double haversine_distance(double lat1, double lon1, double lat2, double lon2);

// Serialized coordinate payload of a Location entity: "lat,lon,source".
std::optional<GeoPoint> parse_geo_data(const std::string& data, Timestamp t);
std::string format_geo_data(double latitude, double longitude, GeoSource source);

// Estimates moving/stationary/unknown spans for one day.
//
// wifi_only reads WiFi sightings: a gap-bounded run of at least two
// sightings is moving when every BSSID is distinct and stationary when
// any repeats; a lone sighting is unknown. fused classifies geographic
// fixes first (GPS by pairwise speed and displacement, Cell-ID by the
// three-point displacement rule) and falls back to the WiFi rules over
// spans the fixes do not cover. Spans with no usable signal become
// unknown events only when they exceed the sequence gap; a day with
// entities but no signal at all becomes one day-long unknown event.
LocationEstimate estimate_location_states(const DayLog& day, SignalType signal_type,
                                          const LocationParams& params = {});

// Stamps each entity with the state of the event covering its timestamp.
void attach_location_states(DayLog& day, const std::vector<LocationEvent>& events);

}  // namespace motiflog::location
