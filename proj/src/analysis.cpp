#include "motiflog/analysis.hpp"

#include <algorithm>
#include <fstream>

namespace motiflog::analysis {

namespace {

void validate_partition(const std::vector<DaySegment>& segments) {
    if (segments.empty()) throw ConfigError("segments must not be empty");
    std::vector<DaySegment> sorted = segments;
    std::sort(sorted.begin(), sorted.end(),
              [](const DaySegment& a, const DaySegment& b) {
                  return a.start_minute < b.start_minute;
              });
    int cursor = 0;
    for (const DaySegment& segment : sorted) {
        if (segment.start_minute != cursor || segment.end_minute <= segment.start_minute) {
            throw ConfigError("segments must partition the day without gaps or overlap");
        }
        cursor = segment.end_minute;
    }
    if (cursor != minutes_per_day) {
        throw ConfigError("segments must cover the full day");
    }
}

}  // namespace

std::vector<DaySegment> default_segments() {
    return {{"0-8", 0, 480}, {"8-16", 480, 960}, {"16-24", 960, 1440}};
}

std::map<std::string, int> segment_distribution(const mining::Profile& profile,
                                                const std::vector<DaySegment>& segments) {
    validate_partition(segments);
    std::map<std::string, int> counts;
    for (const DaySegment& segment : segments) counts[segment.label] = 0;
    for (const mining::Group& motif : profile.motifs) {
        for (const DaySegment& segment : segments) {
            if (motif.slot >= segment.start_minute && motif.slot < segment.end_minute) {
                ++counts[segment.label];
                break;
            }
        }
    }
    return counts;
}

UserFeatureVector user_feature_vector(const mining::Profile& profile) {
    auto segments = default_segments();
    UserFeatureVector vector;
    vector.user_id = profile.user_id;
    for (const mining::Group& motif : profile.motifs) {
        std::size_t segment_index = 0;
        for (std::size_t i = 0; i < segments.size(); ++i) {
            if (motif.slot >= segments[i].start_minute && motif.slot < segments[i].end_minute) {
                segment_index = i;
                break;
            }
        }
        bool high = motif.confidence_pct >= high_confidence_threshold_pct;
        ++vector.counts[segment_index * 2 + (high ? 1 : 0)];
    }
    return vector;
}

std::vector<SweepCell> threshold_sweep(const std::map<std::string, std::vector<DayLog>>& dataset,
                                       const std::vector<int>& thetas,
                                       const std::vector<double>& lambdas,
                                       const std::vector<int>& granularities, int window_size) {
    if (thetas.empty() || lambdas.empty() || granularities.empty()) {
        throw ConfigError("sweep grids must be non-empty");
    }
    std::vector<SweepCell> cells;
    for (int theta : thetas) {
        for (double lambda : lambdas) {
            for (int granularity : granularities) {
                SweepCell cell;
                cell.theta = theta;
                cell.lambda_pct = lambda;
                cell.granularity = granularity;
                try {
                    mining::MiningConfig config;
                    config.theta = theta;
                    config.lambda_pct = lambda;
                    config.window_size = window_size;
                    config.granularity.precision_minutes = granularity;
                    long total = 0;
                    for (const auto& [user_id, days] : dataset) {
                        total += static_cast<long>(
                            mining::mine_profile(days, config, user_id).motifs.size());
                    }
                    cell.total_motifs = total;
                    cell.mean_motifs_per_user =
                        dataset.empty() ? 0.0
                                        : static_cast<double>(total) /
                                              static_cast<double>(dataset.size());
                } catch (const std::exception&) {
                    // leave the cell as NA
                }
                cells.push_back(cell);
            }
        }
    }
    return cells;
}

void write_segments_csv(const std::string& path,
                        const std::map<std::string, std::map<std::string, int>>& per_user,
                        const std::vector<DaySegment>& segment_order) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path);
    out << "user_id,segment,count\n";
    for (const auto& [user_id, counts] : per_user) {
        for (const DaySegment& segment : segment_order) {
            auto it = counts.find(segment.label);
            out << user_id << ',' << segment.label << ','
                << (it == counts.end() ? 0 : it->second) << '\n';
        }
    }
}

void write_features_csv(const std::string& path,
                        const std::vector<UserFeatureVector>& vectors) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path);
    out << "user_id,t1,t2,t3,t4,t5,t6\n";
    for (const UserFeatureVector& v : vectors) {
        out << v.user_id;
        for (int count : v.counts) out << ',' << count;
        out << '\n';
    }
}

void write_sweep_csv(const std::string& path, const std::vector<SweepCell>& cells) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path);
    out << "theta,lambda,granularity,motif_count,mean_motifs_per_user\n";
    for (const SweepCell& cell : cells) {
        out << cell.theta << ',' << cell.lambda_pct << ',' << cell.granularity << ',';
        if (cell.total_motifs < 0) {
            out << "NA,NA\n";
        } else {
            out << cell.total_motifs << ',' << cell.mean_motifs_per_user << '\n';
        }
    }
}

}  // namespace motiflog::analysis
