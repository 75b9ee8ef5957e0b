#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "motiflog/model.hpp"

namespace motiflog::ingest {

enum class SourceFormat { ubiqlog, generic };

enum class RejectReason {
    empty,
    corrupt,
    malformed_json,
    unknown_sensor,
    denied_sensor,
    missing_field,
    bad_timestamp,
};

std::string to_string(RejectReason reason);

struct Rejection {
    RejectReason reason = RejectReason::malformed_json;
    std::size_t line_no = 0;  // 1-based, filled by the loader
};

using ParseResult = std::variant<Entity, Rejection>;

struct ParseOptions {
    SourceFormat format = SourceFormat::ubiqlog;
    // Single fixed offset for the whole dataset; applied when a source
    // timestamp carries its own zone, and defines the wall-clock frame.
    int tz_offset_minutes = 0;
    // Hardware-ish sensors dropped by the generic adapter.
    std::set<std::string> deny_list = default_deny_list();

    static std::set<std::string> default_deny_list();
};

// Parses one JSON line into a canonical Entity. Every line yields exactly
// one Entity or one Rejection; nothing is silently dropped.
ParseResult parse_record(const std::string& line, const ParseOptions& options);

// Canonical JSON-lines form: {"sensor":...,"timestamp":"...","data":...}
// plus "location_state" when present. Re-parsing a serialized entity with
// the generic adapter reproduces it exactly.
std::string to_canonical_line(const Entity& entity);

struct LoadOptions {
    ParseOptions parse;
    bool exclude_weekend = false;
    std::set<int> weekend_days = {5};  // Friday; 0 = Sunday .. 6 = Saturday
};

struct RejectionRecord {
    std::string user_id;
    std::size_t line_no = 0;
    RejectReason reason = RejectReason::malformed_json;
};

using Dataset = std::map<std::string, std::vector<DayLog>>;

struct LoadReport {
    std::vector<RejectionRecord> rejections;
    std::map<std::string, std::size_t> lines_per_user;

    std::size_t rejected_count() const { return rejections.size(); }
};

// Reads one file or directory per user from `source` (JSON-lines) and
// buckets entities into per-date DayLogs, ordered by date. Bad lines are
// counted per user; an unreadable source path is fatal.
Dataset load_dataset(const std::string& source, const LoadOptions& options,
                     LoadReport* report = nullptr);

// Buckets already-parsed entities for a single user; the building block
// behind load_dataset and the synthetic generator.
std::vector<DayLog> bucket_by_day(const std::string& user_id, std::vector<Entity> entities,
                                  const LoadOptions& options);

void write_canonical_jsonl(const std::string& path, const std::vector<DayLog>& days);
void write_rejections_csv(const std::string& path, const std::vector<RejectionRecord>& rejections);

}  // namespace motiflog::ingest
