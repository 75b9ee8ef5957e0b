#include "motiflog/ingest.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "motiflog/location.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace motiflog::ingest {

namespace {

bool is_valid_utf8(const std::string& text) {
    std::size_t i = 0;
    while (i < text.size()) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        std::size_t extra = 0;
        if (c < 0x80) {
            extra = 0;
        } else if ((c >> 5) == 0x6) {
            extra = 1;
        } else if ((c >> 4) == 0xE) {
            extra = 2;
        } else if ((c >> 3) == 0x1E) {
            extra = 3;
        } else {
            return false;
        }
        for (std::size_t k = 1; k <= extra; ++k) {
            if (i + k >= text.size()) return false;
            if ((static_cast<unsigned char>(text[i + k]) >> 6) != 0x2) return false;
        }
        i += extra + 1;
    }
    return true;
}

std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

// Sensors the UbiqLog adapter recognizes, keyed by lowercase name.
const std::map<std::string, std::string>& known_sensors() {
    static const std::map<std::string, std::string> sensors = {
        {"wifi", "WiFi"},       {"bluetooth", "Bluetooth"}, {"location", "Location"},
        {"application", "Application"}, {"call", "Call"},   {"sms", "SMS"},
        {"activity", "Activity"},
    };
    return sensors;
}

std::string json_value_to_text(const json& value) {
    if (value.is_string()) return value.get<std::string>();
    return value.dump();
}

const json* find_key(const json& object, std::initializer_list<const char*> names) {
    for (const char* name : names) {
        for (auto it = object.begin(); it != object.end(); ++it) {
            if (lowercase(it.key()) == name) return &it.value();
        }
    }
    return nullptr;
}

std::string normalize_activity(std::string label) {
    label = lowercase(label);
    std::replace(label.begin(), label.end(), '_', '-');
    std::replace(label.begin(), label.end(), ' ', '-');
    if (label == "on-foot" || label == "onfoot") label = "walking";
    if (label == "invehicle") label = "in-vehicle";
    if (label == "onbicycle") label = "on-bicycle";
    static const std::set<std::string> allowed = {"tilting", "in-vehicle", "on-bicycle",
                                                  "walking",  "still",      "unknown"};
    return allowed.count(label) ? label : "unknown";
}

location::GeoSource geo_source_from_provider(const std::string& provider) {
    std::string p = lowercase(provider);
    if (p == "gps") return location::GeoSource::gps;
    if (p == "network" || p == "cell" || p == "cellid" || p == "cell-id") {
        return location::GeoSource::cellid;
    }
    return location::GeoSource::other;
}

// Extracts the canonical identifier for one UbiqLog sensor payload.
std::optional<std::string> canonical_data(const std::string& sensor, const json& attrs) {
    if (sensor == "WiFi" || sensor == "Bluetooth") {
        if (const json* v = find_key(attrs, {"bssid", "address", "mac"})) {
            return json_value_to_text(*v);
        }
        return std::nullopt;
    }
    if (sensor == "SMS" || sensor == "Call") {
        const json* number = find_key(attrs, {"address", "number"});
        if (!number) return std::nullopt;
        std::string data = json_value_to_text(*number);
        // Direction is behaviorally meaningful, so it folds into the id.
        if (const json* type = find_key(attrs, {"type"})) {
            data += "|" + lowercase(json_value_to_text(*type));
        }
        return data;
    }
    if (sensor == "Application") {
        if (const json* v = find_key(attrs, {"processname", "process_name", "name"})) {
            return json_value_to_text(*v);
        }
        return std::nullopt;
    }
    if (sensor == "Activity") {
        if (const json* v = find_key(attrs, {"state", "name", "activity", "type"})) {
            return normalize_activity(json_value_to_text(*v));
        }
        return std::nullopt;
    }
    if (sensor == "Location") {
        const json* lat = find_key(attrs, {"latitude", "lat"});
        const json* lon = find_key(attrs, {"longitude", "lon", "lng"});
        if (!lat || !lon || !lat->is_number() || !lon->is_number()) return std::nullopt;
        location::GeoSource source = location::GeoSource::other;
        if (const json* provider = find_key(attrs, {"provider", "source"})) {
            source = geo_source_from_provider(json_value_to_text(*provider));
        }
        return location::format_geo_data(lat->get<double>(), lon->get<double>(), source);
    }
    return std::nullopt;
}

ParseResult parse_ubiqlog(const json& record, const ParseOptions& options) {
    if (!record.is_object() || record.empty()) return Rejection{RejectReason::malformed_json};

    std::string sensor;
    const json* attrs = nullptr;
    for (auto it = record.begin(); it != record.end(); ++it) {
        auto found = known_sensors().find(lowercase(it.key()));
        if (found != known_sensors().end() && it.value().is_object()) {
            sensor = found->second;
            attrs = &it.value();
            break;
        }
    }
    if (!attrs) return Rejection{RejectReason::unknown_sensor};

    const json* time_value = find_key(*attrs, {"time", "timestamp"});
    if (!time_value || !time_value->is_string()) return Rejection{RejectReason::bad_timestamp};
    auto timestamp = parse_us_datetime(time_value->get<std::string>());
    if (!timestamp) {
        timestamp = parse_iso8601(time_value->get<std::string>(), options.tz_offset_minutes);
    }
    if (!timestamp) return Rejection{RejectReason::bad_timestamp};

    auto data = canonical_data(sensor, *attrs);
    if (!data || data->empty()) return Rejection{RejectReason::missing_field};

    Entity entity;
    entity.timestamp = *timestamp;
    entity.sensor = sensor;
    entity.data = *data;
    return entity;
}

ParseResult parse_generic(const json& record, const ParseOptions& options) {
    if (!record.is_object()) return Rejection{RejectReason::malformed_json};
    if (!record.contains("sensor") || !record["sensor"].is_string()) {
        return Rejection{RejectReason::missing_field};
    }
    std::string sensor = record["sensor"].get<std::string>();
    if (sensor.empty()) return Rejection{RejectReason::missing_field};
    if (options.deny_list.count(lowercase(sensor))) {
        return Rejection{RejectReason::denied_sensor};
    }
    if (!record.contains("timestamp") || !record["timestamp"].is_string()) {
        return Rejection{RejectReason::bad_timestamp};
    }
    auto timestamp =
        parse_iso8601(record["timestamp"].get<std::string>(), options.tz_offset_minutes);
    if (!timestamp) return Rejection{RejectReason::bad_timestamp};
    if (!record.contains("data")) return Rejection{RejectReason::missing_field};
    std::string data = json_value_to_text(record["data"]);
    if (data.empty()) return Rejection{RejectReason::missing_field};

    Entity entity;
    entity.timestamp = *timestamp;
    entity.sensor = sensor;
    entity.data = data;
    if (record.contains("location_state") && record["location_state"].is_string()) {
        entity.location_state =
            location_state_from_string(record["location_state"].get<std::string>());
    }
    return entity;
}

}  // namespace

std::string to_string(RejectReason reason) {
    switch (reason) {
        case RejectReason::empty: return "empty";
        case RejectReason::corrupt: return "corrupt";
        case RejectReason::malformed_json: return "malformed_json";
        case RejectReason::unknown_sensor: return "unknown_sensor";
        case RejectReason::denied_sensor: return "denied_sensor";
        case RejectReason::missing_field: return "missing_field";
        case RejectReason::bad_timestamp: return "bad_timestamp";
    }
    return "unknown";
}

std::set<std::string> ParseOptions::default_deny_list() {
    return {"battery", "network_usage", "system_process", "cpu", "memory", "screen"};
}

ParseResult parse_record(const std::string& line, const ParseOptions& options) {
    std::string trimmed = line;
    while (!trimmed.empty() && (trimmed.back() == '\r' || trimmed.back() == '\n' ||
                                trimmed.back() == ' ' || trimmed.back() == '\t')) {
        trimmed.pop_back();
    }
    std::size_t start = trimmed.find_first_not_of(" \t");
    if (start == std::string::npos) return Rejection{RejectReason::empty};
    trimmed = trimmed.substr(start);

    if (!is_valid_utf8(trimmed)) return Rejection{RejectReason::corrupt};

    json record = json::parse(trimmed, nullptr, false);
    if (record.is_discarded()) return Rejection{RejectReason::malformed_json};

    return options.format == SourceFormat::ubiqlog ? parse_ubiqlog(record, options)
                                                   : parse_generic(record, options);
}

std::string to_canonical_line(const Entity& entity) {
    ordered_json line;
    line["sensor"] = entity.sensor;
    line["timestamp"] = format_timestamp(entity.timestamp);
    line["data"] = entity.data;
    if (entity.location_state) line["location_state"] = to_string(*entity.location_state);
    return line.dump();
}

std::vector<DayLog> bucket_by_day(const std::string& user_id, std::vector<Entity> entities,
                                  const LoadOptions& options) {
    std::stable_sort(entities.begin(), entities.end(),
                     [](const Entity& a, const Entity& b) { return a.timestamp < b.timestamp; });
    std::vector<DayLog> days;
    for (Entity& entity : entities) {
        Date date = date_of(entity.timestamp);
        if (days.empty() || days.back().date != date) {
            DayLog day;
            day.user_id = user_id;
            day.date = date;
            day.is_weekend = options.weekend_days.count(weekday_of(date)) > 0;
            days.push_back(std::move(day));
        }
        days.back().entities.push_back(std::move(entity));
    }
    if (options.exclude_weekend) {
        std::erase_if(days, [](const DayLog& day) { return day.is_weekend; });
    }
    return days;
}

Dataset load_dataset(const std::string& source, const LoadOptions& options, LoadReport* report) {
    fs::path root(source);
    if (!fs::exists(root)) throw DataError("input path does not exist: " + source);

    // One file or one subdirectory per user, in name order.
    std::vector<std::pair<std::string, std::vector<fs::path>>> users;
    if (fs::is_regular_file(root)) {
        users.push_back({root.stem().string(), {root}});
    } else {
        std::vector<fs::path> entries;
        for (const auto& entry : fs::directory_iterator(root)) entries.push_back(entry.path());
        std::sort(entries.begin(), entries.end());
        for (const fs::path& entry : entries) {
            if (fs::is_directory(entry)) {
                std::vector<fs::path> files;
                for (const auto& f : fs::recursive_directory_iterator(entry)) {
                    if (fs::is_regular_file(f.path())) files.push_back(f.path());
                }
                std::sort(files.begin(), files.end());
                users.push_back({entry.filename().string(), std::move(files)});
            } else if (fs::is_regular_file(entry)) {
                users.push_back({entry.stem().string(), {entry}});
            }
        }
    }

    Dataset dataset;
    for (auto& [user_id, files] : users) {
        std::vector<Entity> entities;
        std::size_t line_no = 0;
        for (const fs::path& file : files) {
            std::ifstream in(file, std::ios::binary);
            if (!in) throw DataError("cannot read " + file.string());
            std::string line;
            while (std::getline(in, line)) {
                ++line_no;
                ParseResult parsed = parse_record(line, options.parse);
                if (auto* entity = std::get_if<Entity>(&parsed)) {
                    entities.push_back(std::move(*entity));
                } else if (report) {
                    report->rejections.push_back(
                        {user_id, line_no, std::get<Rejection>(parsed).reason});
                }
            }
        }
        if (report) report->lines_per_user[user_id] = line_no;
        dataset[user_id] = bucket_by_day(user_id, std::move(entities), options);
    }
    return dataset;
}

void write_canonical_jsonl(const std::string& path, const std::vector<DayLog>& days) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path);
    for (const DayLog& day : days) {
        for (const Entity& entity : day.entities) {
            out << to_canonical_line(entity) << '\n';
        }
    }
}

void write_rejections_csv(const std::string& path,
                          const std::vector<RejectionRecord>& rejections) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path);
    out << "user_id,line_no,reason\n";
    for (const RejectionRecord& r : rejections) {
        out << r.user_id << ',' << r.line_no << ',' << to_string(r.reason) << '\n';
    }
}

}  // namespace motiflog::ingest
