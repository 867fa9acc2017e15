#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "topkit/errors.hpp"

// Top-k accuracy curves and the metrics derived from them.
//
// The central object is the curve acc(k) for k = 0..|C|: the fraction of
// samples whose true class appears among the k highest-scored classes.
// Plotting acc(k) against k gives a ROC-like picture of a classifier; the
// area under it (trapezoid rule, unit spacing) and the maximum height above
// the k/|C| chance line summarize it in two numbers. Dividing the area by
// |C| makes it comparable across datasets with different class counts.
//
// Every curve a valid input can produce is an exact ratio hits/denominator,
// so TopKCurve stores integer numerators and performs a single floating
// division on read-out. Integer accumulation keeps results independent of
// sample order and makes the chance-curve fixpoints (AUC_norm = 0.5,
// J_max = 0) hold exactly rather than to rounding error.

namespace topkit {

struct Sample {
    std::string id;
    int true_label = 0;
    std::vector<double> scores;  // one per class, any finite reals

    bool operator==(const Sample&) const = default;
};

struct EvalSet {
    int num_classes = 0;
    std::vector<Sample> samples;

    bool operator==(const EvalSet&) const = default;
};

inline void validate_sample(const Sample& s, int num_classes) {
    if (static_cast<int>(s.scores.size()) != num_classes)
        throw validation_error("sample '" + s.id + "': expected " + std::to_string(num_classes) +
                               " scores, got " + std::to_string(s.scores.size()));
    for (std::size_t i = 0; i < s.scores.size(); ++i)
        if (!std::isfinite(s.scores[i]))
            throw validation_error("sample '" + s.id + "': non-finite score at class index " +
                                   std::to_string(i));
    if (s.true_label < 0 || s.true_label >= num_classes)
        throw validation_error("sample '" + s.id + "': true_label " + std::to_string(s.true_label) +
                               " out of range [0, " + std::to_string(num_classes) + ")");
}

inline void validate(const EvalSet& eval) {
    if (eval.num_classes < 1)
        throw validation_error("EvalSet: num_classes must be positive, got " +
                               std::to_string(eval.num_classes));
    if (eval.samples.empty()) throw validation_error("EvalSet: samples is empty");
    for (const Sample& s : eval.samples) validate_sample(s, eval.num_classes);
}

/// 0-based position of the true class when classes are ordered by score
/// descending, ties broken by ascending class index. The sample is a top-k
/// hit exactly when this rank is < k.
inline int true_class_rank(std::span<const double> scores, int true_label) {
    const double own = scores[static_cast<std::size_t>(true_label)];
    int ahead = 0;
    for (int j = 0; j < static_cast<int>(scores.size()); ++j) {
        if (scores[static_cast<std::size_t>(j)] > own ||
            (scores[static_cast<std::size_t>(j)] == own && j < true_label))
            ++ahead;
    }
    return ahead;
}

/// acc(k) for k = 0..num_classes, stored as exact integer ratios.
class TopKCurve {
public:
    TopKCurve(int num_classes, std::vector<std::int64_t> hits, std::int64_t denom)
        : num_classes_(num_classes), hits_(std::move(hits)), denom_(denom) {
        if (num_classes_ < 1)
            throw validation_error("TopKCurve: num_classes must be positive, got " +
                                   std::to_string(num_classes_));
        if (denom_ < 1)
            throw validation_error("TopKCurve: denominator must be positive, got " +
                                   std::to_string(denom_));
        if (hits_.size() != static_cast<std::size_t>(num_classes_) + 1)
            throw validation_error("TopKCurve: expected " + std::to_string(num_classes_ + 1) +
                                   " curve values, got " + std::to_string(hits_.size()));
        if (hits_.front() != 0) throw validation_error("TopKCurve: acc(0) must be 0");
        for (std::size_t k = 0; k + 1 < hits_.size(); ++k)
            if (hits_[k] > hits_[k + 1])
                throw validation_error("TopKCurve: acc(k) must be non-decreasing, violated at k = " +
                                       std::to_string(k + 1));
        if (hits_.back() > denom_)
            throw validation_error("TopKCurve: acc(k) must not exceed 1");
    }

    int num_classes() const { return num_classes_; }
    std::int64_t denom() const { return denom_; }
    const std::vector<std::int64_t>& hits() const { return hits_; }

    double acc(int k) const { return static_cast<double>(hits_[static_cast<std::size_t>(k)]) /
                                     static_cast<double>(denom_); }

    std::vector<double> acc_values() const {
        std::vector<double> out(hits_.size());
        for (std::size_t k = 0; k < hits_.size(); ++k)
            out[k] = static_cast<double>(hits_[k]) / static_cast<double>(denom_);
        return out;
    }

    bool operator==(const TopKCurve&) const = default;

private:
    int num_classes_;
    std::vector<std::int64_t> hits_;
    std::int64_t denom_;
};

/// Streaming builder: one counter per k plus a sample count, nothing else.
/// Counters are integers, so accumulation commutes: any partitioning of the
/// samples merged in any order yields the identical curve.
class CurveAccumulator {
public:
    explicit CurveAccumulator(int num_classes) : num_classes_(num_classes) {
        if (num_classes_ < 1)
            throw validation_error("CurveAccumulator: num_classes must be positive, got " +
                                   std::to_string(num_classes_));
        first_hit_at_.assign(static_cast<std::size_t>(num_classes_) + 1, 0);
    }

    void add(const Sample& s) {
        validate_sample(s, num_classes_);
        int first_hit_k = true_class_rank(s.scores, s.true_label) + 1;
        ++first_hit_at_[static_cast<std::size_t>(first_hit_k)];
        ++num_samples_;
    }

    void merge(const CurveAccumulator& other) {
        if (other.num_classes_ != num_classes_)
            throw validation_error("CurveAccumulator: cannot merge accumulators for " +
                                   std::to_string(num_classes_) + " and " +
                                   std::to_string(other.num_classes_) + " classes");
        for (std::size_t k = 0; k < first_hit_at_.size(); ++k)
            first_hit_at_[k] += other.first_hit_at_[k];
        num_samples_ += other.num_samples_;
    }

    std::int64_t num_samples() const { return num_samples_; }

    TopKCurve finish() const {
        if (num_samples_ == 0) throw validation_error("EvalSet: samples is empty");
        std::vector<std::int64_t> hits(first_hit_at_.size());
        hits[0] = 0;
        for (std::size_t k = 1; k < hits.size(); ++k) hits[k] = hits[k - 1] + first_hit_at_[k];
        return TopKCurve(num_classes_, std::move(hits), num_samples_);
    }

private:
    int num_classes_;
    std::vector<std::int64_t> first_hit_at_;  // index k in 1..|C|
    std::int64_t num_samples_ = 0;
};

/// Fraction of samples whose true class is in the top k. Exact ratio hits/N.
inline double accuracy_at_k(const EvalSet& eval, int k) {
    validate(eval);
    if (k < 0 || k > eval.num_classes)
        throw std::out_of_range("accuracy_at_k: k = " + std::to_string(k) +
                                " out of range [0, " + std::to_string(eval.num_classes) + "]");
    std::int64_t hits = 0;
    for (const Sample& s : eval.samples)
        if (true_class_rank(s.scores, s.true_label) < k) ++hits;
    return static_cast<double>(hits) / static_cast<double>(eval.samples.size());
}

/// One pass per sample: the true class's rank decides every k at once.
inline TopKCurve accuracy_curve(const EvalSet& eval) {
    validate(eval);
    CurveAccumulator acc(eval.num_classes);
    for (const Sample& s : eval.samples) acc.add(s);
    return acc.finish();
}

/// The uninformed-guesser line acc(k) = k / num_classes.
inline TopKCurve random_chance_curve(int num_classes) {
    if (num_classes < 1)
        throw std::out_of_range("random_chance_curve: num_classes must be >= 1, got " +
                                std::to_string(num_classes));
    std::vector<std::int64_t> hits(static_cast<std::size_t>(num_classes) + 1);
    for (std::size_t k = 0; k < hits.size(); ++k) hits[k] = static_cast<std::int64_t>(k);
    return TopKCurve(num_classes, std::move(hits), num_classes);
}

/// Trapezoid-rule area under acc(k) over k in [0, |C|], unit spacing.
/// The numerator is accumulated in ascending-k order as integers; the one
/// floating division at the end is correctly rounded, so curves that are
/// exact ratios get exact areas (the chance curve yields exactly |C|/2).
inline double auc(const TopKCurve& curve) {
    std::int64_t twice_area_num = 0;
    const auto& hits = curve.hits();
    for (std::size_t k = 0; k + 1 < hits.size(); ++k) twice_area_num += hits[k] + hits[k + 1];
    return static_cast<double>(twice_area_num) / static_cast<double>(2 * curve.denom());
}

/// AUC / |C|: lies in [1/(2|C|), 1 - 1/(2|C|)] and compares across datasets.
inline double auc_norm(const TopKCurve& curve) {
    return auc(curve) / static_cast<double>(curve.num_classes());
}

/// Height of the curve above the chance line at k: acc(k) - k/|C|.
/// Zero at both endpoints for any valid curve with acc(|C|) = 1.
inline std::vector<double> youden_transform(const TopKCurve& curve) {
    const int n = curve.num_classes();
    std::vector<double> out(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k)
        out[static_cast<std::size_t>(k)] =
            curve.acc(k) - static_cast<double>(k) / static_cast<double>(n);
    return out;
}

struct YoudenMax {
    double j_max = 0.0;
    int k_at_jmax = 0;

    bool operator==(const YoudenMax&) const = default;
};

/// Maximum of the Youden transform and the smallest k attaining it.
/// k = 0 contributes exactly 0, so j_max >= 0 always. Uses the identical
/// floating expression as youden_transform, so the two always agree.
inline YoudenMax youden_max(const TopKCurve& curve) {
    const int n = curve.num_classes();
    YoudenMax best{0.0, 0};
    for (int k = 0; k <= n; ++k) {
        double j = curve.acc(k) - static_cast<double>(k) / static_cast<double>(n);
        if (j > best.j_max) best = {j, k};
    }
    return best;
}

/// One accuracy row: Top-1, Top-5 (absent when |C| < 5), AUC, AUC_norm,
/// J_max and its argmax. All fractions in [0, 1]; tables scale to percent.
struct ProcSummary {
    double top1 = 0.0;
    std::optional<double> top5;
    double auc = 0.0;
    double auc_norm = 0.0;
    double j_max = 0.0;
    int k_at_jmax = 0;

    bool operator==(const ProcSummary&) const = default;
};

inline ProcSummary summarize_curve(const TopKCurve& curve) {
    ProcSummary s;
    s.top1 = curve.acc(1);
    if (curve.num_classes() >= 5) s.top5 = curve.acc(5);
    s.auc = auc(curve);
    s.auc_norm = s.auc / static_cast<double>(curve.num_classes());
    YoudenMax ym = youden_max(curve);
    s.j_max = ym.j_max;
    s.k_at_jmax = ym.k_at_jmax;
    return s;
}

inline ProcSummary summarize(const EvalSet& eval) { return summarize_curve(accuracy_curve(eval)); }

}  // namespace topkit
