#pragma once

#include <algorithm>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "topkit/errors.hpp"

// Strong-scaling analysis of per-epoch training times: representative
// seconds-per-epoch per (model, GPU count), speedup and efficiency relative
// to a baseline configuration, total-time projection, and the Pareto front
// of (time per epoch, normalized accuracy) trade-off points.

namespace topkit {

struct TimingRecord {
    std::string model_id;
    int gpus = 1;
    int epoch = 0;
    double seconds = 0.0;  // wall-clock for this epoch

    bool operator==(const TimingRecord&) const = default;
};

/// Representative seconds-per-epoch keyed by GPU count, one per model.
struct ScalingSeries {
    std::string model_id;
    std::map<int, double> points;  // gpus -> seconds per epoch

    bool operator==(const ScalingSeries&) const = default;
};

/// One marker of the accuracy-vs-cost scatter.
struct TradeoffPoint {
    std::string model_id;
    double time_per_epoch = 0.0;  // seconds, at a fixed GPU count
    double auc_norm = 0.0;

    bool operator==(const TradeoffPoint&) const = default;
};

inline void validate(const TimingRecord& r) {
    if (r.model_id.empty()) throw validation_error("timing record: empty model id");
    if (r.gpus < 1)
        throw validation_error("timing record (" + r.model_id + "): gpus must be >= 1, got " +
                               std::to_string(r.gpus));
    if (r.epoch < 0)
        throw validation_error("timing record (" + r.model_id + "): epoch must be >= 0, got " +
                               std::to_string(r.epoch));
    if (!(r.seconds > 0.0))
        throw validation_error("timing record (" + r.model_id + ", g = " + std::to_string(r.gpus) +
                               "): seconds must be positive");
}

/// Aggregate raw per-epoch measurements into one ScalingSeries per model.
/// The representative value is the arithmetic mean over epochs with index
/// >= exclude_first (warmup epochs can distort the mean; default keeps all).
/// Records are averaged in ascending-epoch order so the result does not
/// depend on input ordering. Output is sorted by model id.
inline std::vector<ScalingSeries> epoch_stats(std::span<const TimingRecord> records,
                                              int exclude_first = 0) {
    if (records.empty()) throw validation_error("epoch_stats: no timing records");
    if (exclude_first < 0)
        throw std::out_of_range("epoch_stats: exclude_first must be >= 0, got " +
                                std::to_string(exclude_first));
    for (const TimingRecord& r : records) validate(r);

    std::map<std::string, std::map<int, std::vector<const TimingRecord*>>> groups;
    for (const TimingRecord& r : records) groups[r.model_id][r.gpus].push_back(&r);

    std::vector<ScalingSeries> out;
    for (auto& [model, by_gpus] : groups) {
        ScalingSeries series{model, {}};
        for (auto& [gpus, rows] : by_gpus) {
            std::stable_sort(rows.begin(), rows.end(),
                             [](const TimingRecord* a, const TimingRecord* b) { return a->epoch < b->epoch; });
            double sum = 0.0;
            std::int64_t kept = 0;
            for (const TimingRecord* r : rows) {
                if (r->epoch < exclude_first) continue;
                sum += r->seconds;
                ++kept;
            }
            if (kept == 0)
                throw validation_error("epoch_stats: no epochs left for (" + model + ", g = " +
                                       std::to_string(gpus) + ") after excluding the first " +
                                       std::to_string(exclude_first));
            series.points[gpus] = sum / static_cast<double>(kept);
        }
        out.push_back(std::move(series));
    }
    return out;
}

/// seconds_per_epoch * epochs / 3600.
inline double total_training_time_hours(double seconds_per_epoch, int epochs) {
    if (!(seconds_per_epoch > 0.0))
        throw std::out_of_range("total_training_time_hours: seconds_per_epoch must be positive");
    if (epochs < 1)
        throw std::out_of_range("total_training_time_hours: epochs must be >= 1, got " +
                                std::to_string(epochs));
    return seconds_per_epoch * static_cast<double>(epochs) / 3600.0;
}

inline void validate(const ScalingSeries& series) {
    if (series.points.empty())
        throw validation_error("series '" + series.model_id + "' has no points");
    for (const auto& [gpus, seconds] : series.points) {
        if (gpus < 1)
            throw validation_error("series '" + series.model_id + "': gpus must be >= 1");
        if (!(seconds > 0.0))
            throw validation_error("series '" + series.model_id + "': seconds at g = " +
                                   std::to_string(gpus) + " must be positive");
    }
}

/// speedup(g) = seconds(baseline_g) / seconds(g). Defined only at measured
/// configurations; absent GPU counts are never interpolated.
inline std::map<int, double> speedup_series(const ScalingSeries& series, int baseline_g) {
    validate(series);
    auto base = series.points.find(baseline_g);
    if (base == series.points.end())
        throw validation_error("speedup: series '" + series.model_id +
                               "' has no measurement at baseline g = " + std::to_string(baseline_g));
    std::map<int, double> out;
    for (const auto& [gpus, seconds] : series.points) out[gpus] = base->second / seconds;
    return out;
}

/// efficiency(g) = speedup(g) * baseline_g / g. Values above 1 (super-linear
/// scaling) are reported as-is, not clamped.
inline std::map<int, double> scaling_efficiency(const ScalingSeries& series, int baseline_g) {
    std::map<int, double> out = speedup_series(series, baseline_g);
    for (auto& [gpus, value] : out)
        value = value * static_cast<double>(baseline_g) / static_cast<double>(gpus);
    return out;
}

/// a dominates b when a is no slower and no less accurate, and strictly
/// better on at least one axis.
inline bool dominates(const TradeoffPoint& a, const TradeoffPoint& b) {
    return a.time_per_epoch <= b.time_per_epoch && a.auc_norm >= b.auc_norm &&
           (a.time_per_epoch < b.time_per_epoch || a.auc_norm > b.auc_norm);
}

/// Points not dominated by any other (minimize time, maximize auc_norm).
/// Exactly coincident points are all kept. Ordered by ascending time, then
/// descending auc_norm, then model id.
inline std::vector<TradeoffPoint> pareto_front(std::span<const TradeoffPoint> points) {
    if (points.empty()) throw validation_error("pareto_front: no points");
    for (const TradeoffPoint& p : points) {
        if (!(p.time_per_epoch > 0.0))
            throw validation_error("tradeoff point '" + p.model_id +
                                   "': time_per_epoch must be positive");
        if (!(p.auc_norm > 0.0 && p.auc_norm < 1.0))
            throw validation_error("tradeoff point '" + p.model_id +
                                   "': auc_norm must lie in (0, 1)");
    }
    std::vector<TradeoffPoint> front;
    for (const TradeoffPoint& p : points) {
        bool dominated = false;
        for (const TradeoffPoint& q : points) {
            if (dominates(q, p)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) front.push_back(p);
    }
    std::sort(front.begin(), front.end(), [](const TradeoffPoint& a, const TradeoffPoint& b) {
        if (a.time_per_epoch != b.time_per_epoch) return a.time_per_epoch < b.time_per_epoch;
        if (a.auc_norm != b.auc_norm) return a.auc_norm > b.auc_norm;
        return a.model_id < b.model_id;
    });
    return front;
}

}  // namespace topkit
