#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "topkit/detail/text.hpp"
#include "topkit/errors.hpp"
#include "topkit/ingest.hpp"
#include "topkit/metrics.hpp"

// Accuracy tables in CSV or Markdown. Rounding convention: percentages to
// 2 decimals, unit-interval metrics to 3; J_max renders as "0.683 (k = 41)".
// The random-chance row alone trims trailing zeros ("0.5", "0.0") to match
// the usual presentation of the uninformed-guesser baseline.

namespace topkit {

enum class TableFormat { csv, markdown };

/// One table row, already in display units (percent for top-1/top-5).
struct MetricsRow {
    std::string model;
    double top1_pct = 0.0;
    std::optional<double> top5_pct;
    double auc_norm = 0.0;
    double j_max = 0.0;
    std::optional<int> k_at_jmax;
    bool chance_style = false;

    static MetricsRow from_summary(std::string label, const ProcSummary& s) {
        MetricsRow row;
        row.model = std::move(label);
        row.top1_pct = s.top1 * 100.0;
        if (s.top5) row.top5_pct = *s.top5 * 100.0;
        row.auc_norm = s.auc_norm;
        row.j_max = s.j_max;
        row.k_at_jmax = s.k_at_jmax;
        return row;
    }

    static MetricsRow from_fixture(const ModelSummaryFixture& f) {
        MetricsRow row;
        row.model = f.label();
        row.top1_pct = f.top1;
        row.top5_pct = f.top5;
        row.auc_norm = f.auc_norm;
        row.j_max = f.j_max;
        row.k_at_jmax = f.k_at_jmax;
        row.chance_style = f.is_chance();
        return row;
    }

    /// The analytic uninformed-guesser row for a |C|-class problem.
    static MetricsRow chance_row(int num_classes) {
        ProcSummary s = summarize_curve(random_chance_curve(num_classes));
        MetricsRow row = from_summary("random chance", s);
        row.k_at_jmax = std::nullopt;  // J_max 0 needs no argmax annotation
        row.chance_style = true;
        return row;
    }
};

namespace detail {

inline std::string cell(double value, int decimals, bool trim) {
    std::string s = topkit::detail::format_fixed(value, decimals);
    return trim ? topkit::detail::trim_trailing_zeros(std::move(s)) : s;
}

inline std::string jmax_cell(const MetricsRow& row) {
    std::string s = cell(row.j_max, 3, row.chance_style);
    if (row.k_at_jmax) s += " (k = " + std::to_string(*row.k_at_jmax) + ")";
    return s;
}

}  // namespace detail

/// Render rows in input order. When prepend_chance_classes is set, the
/// analytic chance row for that class count is prepended.
inline std::string render_metrics_table(std::span<const MetricsRow> rows, TableFormat format,
                                        std::optional<int> prepend_chance_classes = std::nullopt) {
    if (rows.empty() && !prepend_chance_classes)
        throw validation_error("render_metrics_table: no rows");

    std::vector<MetricsRow> all;
    all.reserve(rows.size() + 1);
    if (prepend_chance_classes) all.push_back(MetricsRow::chance_row(*prepend_chance_classes));
    all.insert(all.end(), rows.begin(), rows.end());

    std::string out;
    const bool md = format == TableFormat::markdown;
    if (md) {
        out += "| Model | Top-1 (%) | Top-5 (%) | AUC_norm | J_max |\n";
        out += "| --- | --- | --- | --- | --- |\n";
    } else {
        out += "model,top1,top5,auc_norm,j_max\n";
    }
    for (const MetricsRow& row : all) {
        const std::string top1 = detail::cell(row.top1_pct, 2, row.chance_style);
        const std::string top5 =
            row.top5_pct ? detail::cell(*row.top5_pct, 2, row.chance_style) : (md ? "n/a" : "");
        const std::string aucn = detail::cell(row.auc_norm, 3, row.chance_style);
        const std::string jmax = detail::jmax_cell(row);
        if (md)
            out += "| " + row.model + " | " + top1 + " | " + top5 + " | " + aucn + " | " + jmax +
                   " |\n";
        else
            out += row.model + "," + top1 + "," + top5 + "," + aucn + "," + jmax + "\n";
    }
    return out;
}

/// Ranked comparison table. Rows must already be sorted best-first; ranks
/// use competition numbering (ties share a rank, the next rank skips).
/// `tied_with_previous[i]` marks row i as tied with row i-1.
inline std::string render_ranking_table(std::span<const MetricsRow> rows,
                                        const std::vector<bool>& tied_with_previous,
                                        TableFormat format) {
    if (rows.empty()) throw validation_error("render_ranking_table: no rows");
    std::string out;
    const bool md = format == TableFormat::markdown;
    if (md) {
        out += "| Rank | Model | Top-1 (%) | Top-5 (%) | AUC_norm | J_max |\n";
        out += "| --- | --- | --- | --- | --- | --- |\n";
    } else {
        out += "rank,model,top1,top5,auc_norm,j_max\n";
    }
    int rank = 1;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i > 0 && !(i < tied_with_previous.size() && tied_with_previous[i]))
            rank = static_cast<int>(i) + 1;
        const MetricsRow& row = rows[i];
        const std::string top1 = detail::cell(row.top1_pct, 2, row.chance_style);
        const std::string top5 =
            row.top5_pct ? detail::cell(*row.top5_pct, 2, row.chance_style) : (md ? "n/a" : "");
        const std::string aucn = detail::cell(row.auc_norm, 3, row.chance_style);
        const std::string jmax = detail::jmax_cell(row);
        if (md)
            out += "| " + std::to_string(rank) + " | " + row.model + " | " + top1 + " | " + top5 +
                   " | " + aucn + " | " + jmax + " |\n";
        else
            out += std::to_string(rank) + "," + row.model + "," + top1 + "," + top5 + "," + aucn +
                   "," + jmax + "\n";
    }
    return out;
}

}  // namespace topkit
