#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "motiflog/mining.hpp"

namespace motiflog::analysis {

// Half-open slice of the day, [start_minute, end_minute).
struct DaySegment {
    std::string label;
    int start_minute = 0;
    int end_minute = 0;
};

// The three eight-hour segments used throughout the analyses.
std::vector<DaySegment> default_segments();

// Counts each motif into the unique segment containing its slot start.
// The segments must partition [0, 1440) exactly.
std::map<std::string, int> segment_distribution(const mining::Profile& profile,
                                                const std::vector<DaySegment>& segments);

// Motif counts per (segment, confidence band). "High" means confidence
// at or above 20 percent. Term order: 0-8 low, 0-8 high, 8-16 low,
// 8-16 high, 16-24 low, 16-24 high.
struct UserFeatureVector {
    std::string user_id;
    std::array<int, 6> counts = {0, 0, 0, 0, 0, 0};
};

constexpr double high_confidence_threshold_pct = 20.0;

UserFeatureVector user_feature_vector(const mining::Profile& profile);

struct SweepCell {
    int theta = 0;
    double lambda_pct = 0;
    int granularity = 0;
    long total_motifs = -1;           // -1 marks a failed cell (NA)
    double mean_motifs_per_user = -1;
};

// Runs the full mining pipeline once per (theta, lambda, granularity)
// combination over every user and records motif counts. Failed cells are
// kept as NA rather than aborting the sweep.
std::vector<SweepCell> threshold_sweep(
    const std::map<std::string, std::vector<DayLog>>& dataset, const std::vector<int>& thetas,
    const std::vector<double>& lambdas, const std::vector<int>& granularities, int window_size);

void write_segments_csv(const std::string& path,
                        const std::map<std::string, std::map<std::string, int>>& per_user,
                        const std::vector<DaySegment>& segment_order);
void write_features_csv(const std::string& path, const std::vector<UserFeatureVector>& vectors);
void write_sweep_csv(const std::string& path, const std::vector<SweepCell>& cells);

}  // namespace motiflog::analysis
