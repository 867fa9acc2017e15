#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "topkit/detail/text.hpp"
#include "topkit/errors.hpp"
#include "topkit/perf.hpp"

// Self-contained SVG 1.1 plots: accuracy curves, Youden transforms, scaling
// lines and the accuracy-vs-cost scatter. No external references, and
// byte-identical output for identical inputs: coordinates are fixed to two
// decimals, colors come from a fixed palette keyed by sorted series label.

namespace topkit {

enum class PlotKind { proc, youden, scaling, tradeoff };

struct PlotSpec {
    PlotKind kind = PlotKind::proc;
    bool log_x = false;
    bool log_y = false;
    int width = 860;
    int height = 520;
    bool include_chance = true;  // proc plots: draw the dashed chance line

    /// Kind-appropriate axes: youden defaults to log x, scaling to log y.
    static PlotSpec defaults(PlotKind kind) {
        PlotSpec spec;
        spec.kind = kind;
        spec.log_x = (kind == PlotKind::youden);
        spec.log_y = (kind == PlotKind::scaling);
        return spec;
    }
};

/// acc(k) values for k = 0..|C| under a display label.
struct LabeledCurve {
    std::string label;
    std::vector<double> acc;
};

/// seconds-per-epoch by GPU count under a display label.
struct LabeledSeries {
    std::string label;
    std::map<int, double> points;
};

namespace svg_detail {

inline constexpr const char* kPalette[] = {
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
};

/// Color by position of the label among the sorted distinct labels.
inline std::string color_for(const std::string& label, std::vector<std::string> all_labels) {
    std::sort(all_labels.begin(), all_labels.end());
    all_labels.erase(std::unique(all_labels.begin(), all_labels.end()), all_labels.end());
    auto it = std::lower_bound(all_labels.begin(), all_labels.end(), label);
    std::size_t idx = static_cast<std::size_t>(it - all_labels.begin());
    return kPalette[idx % std::size(kPalette)];
}

inline std::string num(double v) { return topkit::detail::format_fixed(v, 2); }

inline std::string tick_text(double v) {
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.0f", v);
        return buf;
    }
    return topkit::detail::trim_trailing_zeros(topkit::detail::format_fixed(v, 4));
}

struct Axis {
    double lo = 0.0, hi = 1.0;
    bool log10 = false;

    double frac(double v) const {
        if (log10) return (std::log10(v) - std::log10(lo)) / (std::log10(hi) - std::log10(lo));
        return (v - lo) / (hi - lo);
    }
};

struct Canvas {
    int width, height;
    int left = 66, right = 26, top = 44, bottom = 58;
    Axis x{};
    Axis y{};

    double plot_w() const { return width - left - right; }
    double plot_h() const { return height - top - bottom; }
    double px(double v) const { return left + x.frac(v) * plot_w(); }
    double py(double v) const { return top + plot_h() - y.frac(v) * plot_h(); }
};

inline std::string header(const Canvas& c, const std::string& title) {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(c.width) +
           "\" height=\"" + std::to_string(c.height) + "\" viewBox=\"0 0 " +
           std::to_string(c.width) + " " + std::to_string(c.height) + "\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(c.width) + "\" height=\"" +
           std::to_string(c.height) + "\" fill=\"white\"/>\n";
    out += "<style>.axis{stroke:#000;stroke-width:1;} .grid{stroke:#ddd;stroke-width:1;} "
           ".lbl{font-family:sans-serif;font-size:12px;fill:#000;} "
           ".ttl{font-family:sans-serif;font-size:14px;font-weight:bold;fill:#000;}</style>\n";
    out += "<text class=\"ttl\" x=\"" + std::to_string(c.width / 2) +
           "\" y=\"20\" text-anchor=\"middle\">" + topkit::detail::xml_escape(title) + "</text>\n";
    return out;
}

inline void axes(std::string& out, const Canvas& c, std::span<const double> x_ticks,
                 std::span<const double> y_ticks, const std::string& x_label,
                 const std::string& y_label) {
    for (double t : x_ticks) {
        std::string px = num(c.px(t));
        out += "<line class=\"grid\" x1=\"" + px + "\" y1=\"" + num(c.top) + "\" x2=\"" + px +
               "\" y2=\"" + num(c.top + c.plot_h()) + "\"/>\n";
        out += "<text class=\"lbl\" x=\"" + px + "\" y=\"" + num(c.top + c.plot_h() + 18) +
               "\" text-anchor=\"middle\">" + tick_text(t) + "</text>\n";
    }
    for (double t : y_ticks) {
        std::string py = num(c.py(t));
        out += "<line class=\"grid\" x1=\"" + num(c.left) + "\" y1=\"" + py + "\" x2=\"" +
               num(c.left + c.plot_w()) + "\" y2=\"" + py + "\"/>\n";
        out += "<text class=\"lbl\" x=\"" + num(c.left - 8) + "\" y=\"" + num(c.py(t) + 4) +
               "\" text-anchor=\"end\">" + tick_text(t) + "</text>\n";
    }
    out += "<line class=\"axis\" x1=\"" + num(c.left) + "\" y1=\"" + num(c.top + c.plot_h()) +
           "\" x2=\"" + num(c.left + c.plot_w()) + "\" y2=\"" + num(c.top + c.plot_h()) + "\"/>\n";
    out += "<line class=\"axis\" x1=\"" + num(c.left) + "\" y1=\"" + num(c.top) + "\" x2=\"" +
           num(c.left) + "\" y2=\"" + num(c.top + c.plot_h()) + "\"/>\n";
    out += "<text class=\"lbl\" x=\"" + std::to_string(c.width / 2) + "\" y=\"" +
           num(c.height - 14) + "\" text-anchor=\"middle\">" + topkit::detail::xml_escape(x_label) +
           "</text>\n";
    out += "<text class=\"lbl\" x=\"16\" y=\"" + std::to_string(c.height / 2) +
           "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " + std::to_string(c.height / 2) +
           ")\">" + topkit::detail::xml_escape(y_label) + "</text>\n";
}

inline void polyline(std::string& out, const Canvas& c,
                     std::span<const std::pair<double, double>> pts, const std::string& stroke,
                     double width = 2.0, const std::string& dash = "") {
    out += "<polyline fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" + num(width) + "\"";
    if (!dash.empty()) out += " stroke-dasharray=\"" + dash + "\"";
    out += " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) out += ' ';
        out += num(c.px(pts[i].first)) + "," + num(c.py(pts[i].second));
    }
    out += "\"/>\n";
}

inline void marker(std::string& out, const Canvas& c, double x, double y, const std::string& fill,
                   double r = 3.5, const std::string& stroke = "none", double stroke_w = 0.0) {
    out += "<circle cx=\"" + num(c.px(x)) + "\" cy=\"" + num(c.py(y)) + "\" r=\"" + num(r) +
           "\" fill=\"" + fill + "\"";
    if (stroke != "none") out += " stroke=\"" + stroke + "\" stroke-width=\"" + num(stroke_w) + "\"";
    out += "/>\n";
}

struct LegendEntry {
    std::string label;
    std::string color;
    bool dashed = false;
};

inline void legend(std::string& out, const Canvas& c, std::span<const LegendEntry> entries,
                   std::span<const std::string> notes = {}) {
    int x0 = c.left + 12;
    int y0 = c.top + 14;
    int dy = 17;
    int row = 0;
    for (const LegendEntry& e : entries) {
        int y = y0 + row * dy;
        out += "<line x1=\"" + std::to_string(x0) + "\" y1=\"" + std::to_string(y) + "\" x2=\"" +
               std::to_string(x0 + 22) + "\" y2=\"" + std::to_string(y) + "\" stroke=\"" + e.color +
               "\" stroke-width=\"3\"" + (e.dashed ? " stroke-dasharray=\"6 3\"" : "") + "/>\n";
        out += "<text class=\"lbl\" x=\"" + std::to_string(x0 + 28) + "\" y=\"" +
               std::to_string(y + 4) + "\">" + topkit::detail::xml_escape(e.label) + "</text>\n";
        ++row;
    }
    for (const std::string& note : notes) {
        int y = y0 + row * dy;
        out += "<text class=\"lbl\" x=\"" + std::to_string(x0) + "\" y=\"" + std::to_string(y + 4) +
               "\" fill=\"#555\">" + topkit::detail::xml_escape(note) + "</text>\n";
        ++row;
    }
}

inline std::vector<double> linear_ticks(double lo, double hi, int target = 6) {
    double span = hi - lo;
    double raw = span / target;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (mag * m >= raw) {
            step = mag * m;
            break;
        }
    }
    std::vector<double> ticks;
    double first = std::ceil(lo / step) * step;
    for (double t = first; t <= hi + step * 1e-9; t += step) ticks.push_back(t);
    return ticks;
}

inline std::vector<double> decade_ticks(double lo, double hi) {
    std::vector<double> ticks;
    for (int e = static_cast<int>(std::floor(std::log10(lo)));
         e <= static_cast<int>(std::ceil(std::log10(hi))); ++e) {
        double t = std::pow(10.0, e);
        if (t >= lo * (1 - 1e-12) && t <= hi * (1 + 1e-12)) ticks.push_back(t);
    }
    if (ticks.empty()) ticks = {lo, hi};
    return ticks;
}

inline int curve_classes(std::span<const LabeledCurve> curves) {
    if (curves.empty()) throw validation_error("svg: empty curve set");
    std::size_t size = curves.front().acc.size();
    if (size < 2) throw validation_error("svg: curve '" + curves.front().label + "' is too short");
    for (const LabeledCurve& c : curves)
        if (c.acc.size() != size)
            throw validation_error("svg: curves have mixed class counts ('" +
                                   curves.front().label + "' has " + std::to_string(size - 1) +
                                   ", '" + c.label + "' has " + std::to_string(c.acc.size() - 1) +
                                   ")");
    return static_cast<int>(size) - 1;
}

inline std::vector<std::string> labels_of(std::span<const LabeledCurve> curves) {
    std::vector<std::string> out;
    for (const LabeledCurve& c : curves) out.push_back(c.label);
    return out;
}

}  // namespace svg_detail

/// Top-k accuracy against k, one polyline per curve, plus (by default) the
/// dashed chance line. All curves must share the class count.
inline std::string render_proc_svg(std::span<const LabeledCurve> curves, const PlotSpec& spec) {
    namespace d = svg_detail;
    const int n = d::curve_classes(curves);
    d::Canvas c{spec.width, spec.height};
    c.x = {0.0, static_cast<double>(n), false};
    c.y = {0.0, 1.0, false};

    std::string out = d::header(c, "Top-k accuracy");
    auto x_ticks = d::linear_ticks(0.0, n);
    auto y_ticks = d::linear_ticks(0.0, 1.0, 5);
    d::axes(out, c, x_ticks, y_ticks, "k", "Top-k accuracy");

    const auto labels = d::labels_of(curves);
    std::vector<d::LegendEntry> entries;
    for (const LabeledCurve& curve : curves) {
        std::vector<std::pair<double, double>> pts;
        for (std::size_t k = 0; k < curve.acc.size(); ++k)
            pts.emplace_back(static_cast<double>(k), curve.acc[k]);
        std::string color = d::color_for(curve.label, labels);
        d::polyline(out, c, pts, color);
        entries.push_back({curve.label, color, false});
    }
    if (spec.include_chance) {
        std::vector<std::pair<double, double>> pts;
        for (int k = 0; k <= n; ++k)
            pts.emplace_back(k, static_cast<double>(k) / static_cast<double>(n));
        d::polyline(out, c, pts, "#777777", 1.5, "6 4");
        entries.push_back({"random chance", "#777777", true});
    }
    d::legend(out, c, entries);
    out += "</svg>\n";
    return out;
}

/// acc(k) - k/|C| against k on a log10 x-axis (k = 0 is omitted: it has no
/// log coordinate). Each curve's peak gets a marker; for curves whose peak
/// sits at k = 0 the marker moves to the smallest plotted k.
inline std::string render_youden_svg(std::span<const LabeledCurve> curves, const PlotSpec& spec) {
    namespace d = svg_detail;
    const int n = d::curve_classes(curves);

    std::vector<std::vector<double>> transforms;
    double lo = 0.0, hi = 0.0;
    for (const LabeledCurve& curve : curves) {
        std::vector<double> t(curve.acc.size());
        for (std::size_t k = 0; k < curve.acc.size(); ++k) {
            t[k] = curve.acc[k] - static_cast<double>(k) / static_cast<double>(n);
            lo = std::min(lo, t[k]);
            hi = std::max(hi, t[k]);
        }
        transforms.push_back(std::move(t));
    }
    double pad = (hi - lo < 1e-9) ? 0.05 : (hi - lo) * 0.08;

    d::Canvas c{spec.width, spec.height};
    c.x = {1.0, static_cast<double>(n), spec.log_x};
    if (n == 1) c.x = {0.5, 1.5, false};  // a single plotted k has no log span
    c.y = {lo - pad, hi + pad, false};

    std::string out = d::header(c, "Youden transform");
    auto x_ticks = spec.log_x && n > 1 ? d::decade_ticks(1.0, n)
                                       : d::linear_ticks(c.x.lo, c.x.hi);
    auto y_ticks = d::linear_ticks(c.y.lo, c.y.hi, 5);
    d::axes(out, c, x_ticks, y_ticks, spec.log_x ? "k (log10)" : "k", "acc(k) - k/|C|");

    const auto labels = d::labels_of(curves);
    std::vector<d::LegendEntry> entries;
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const auto& t = transforms[i];
        std::string color = d::color_for(curves[i].label, labels);
        std::vector<std::pair<double, double>> pts;
        for (int k = 1; k <= n; ++k) pts.emplace_back(k, t[static_cast<std::size_t>(k)]);
        d::polyline(out, c, pts, color);

        int k_at = 0;
        double j = t[0];
        for (int k = 0; k <= n; ++k)
            if (t[static_cast<std::size_t>(k)] > j) {
                j = t[static_cast<std::size_t>(k)];
                k_at = k;
            }
        int marker_k = std::max(k_at, 1);
        d::marker(out, c, marker_k, t[static_cast<std::size_t>(marker_k)], color, 4.5, "#000000",
                  1.0);
        entries.push_back({curves[i].label, color, false});
    }
    std::vector<std::string> notes;
    if (spec.log_x) notes.push_back("log10 x-axis; k = 0 omitted");
    d::legend(out, c, entries, notes);
    out += "</svg>\n";
    return out;
}

/// Seconds per epoch against GPU count: markers at measured points only,
/// log2-positioned x ticks at the GPU counts present, log10 y by default.
inline std::string render_scaling_svg(std::span<const LabeledSeries> series, const PlotSpec& spec) {
    namespace d = svg_detail;
    if (series.empty()) throw validation_error("svg: empty series set");
    double y_lo = 0.0, y_hi = 0.0;
    std::vector<int> gpu_ticks;
    bool first = true;
    for (const LabeledSeries& s : series) {
        if (s.points.empty()) throw validation_error("svg: series '" + s.label + "' has no points");
        for (const auto& [g, seconds] : s.points) {
            if (!(seconds > 0.0))
                throw validation_error("svg: series '" + s.label + "' has non-positive seconds");
            if (first) {
                y_lo = y_hi = seconds;
                first = false;
            }
            y_lo = std::min(y_lo, seconds);
            y_hi = std::max(y_hi, seconds);
            gpu_ticks.push_back(g);
        }
    }
    std::sort(gpu_ticks.begin(), gpu_ticks.end());
    gpu_ticks.erase(std::unique(gpu_ticks.begin(), gpu_ticks.end()), gpu_ticks.end());

    d::Canvas c{spec.width, spec.height};
    double g_lo = gpu_ticks.front(), g_hi = gpu_ticks.back();
    if (g_lo == g_hi) {
        g_lo *= 0.5;
        g_hi *= 2.0;
    }
    c.x = {g_lo, g_hi, true};  // log2-spaced positions; log10 mapping is proportional
    if (spec.log_y) {
        c.y = {y_lo * 0.8, y_hi * 1.25, true};
    } else {
        double pad = (y_hi - y_lo < 1e-9) ? y_hi * 0.1 + 1.0 : (y_hi - y_lo) * 0.08;
        c.y = {std::max(0.0, y_lo - pad), y_hi + pad, false};
    }

    std::string out = d::header(c, "Training time per epoch");
    std::vector<double> x_tick_vals(gpu_ticks.begin(), gpu_ticks.end());
    auto y_ticks = spec.log_y ? d::decade_ticks(c.y.lo, c.y.hi) : d::linear_ticks(c.y.lo, c.y.hi);
    d::axes(out, c, x_tick_vals, y_ticks, "GPUs (g)",
            spec.log_y ? "seconds per epoch (log10)" : "seconds per epoch");

    std::vector<std::string> labels;
    for (const LabeledSeries& s : series) labels.push_back(s.label);
    std::vector<d::LegendEntry> entries;
    for (const LabeledSeries& s : series) {
        std::string color = d::color_for(s.label, labels);
        std::vector<std::pair<double, double>> pts;
        for (const auto& [g, seconds] : s.points) pts.emplace_back(g, seconds);
        if (pts.size() > 1) d::polyline(out, c, pts, color);
        for (const auto& [x, y] : pts) d::marker(out, c, x, y, color);
        entries.push_back({s.label, color, false});
    }
    d::legend(out, c, entries);
    out += "</svg>\n";
    return out;
}

/// Accuracy against cost: every point labeled, front points ringed.
inline std::string render_tradeoff_svg(std::span<const TradeoffPoint> points,
                                       std::span<const TradeoffPoint> front,
                                       const PlotSpec& spec) {
    namespace d = svg_detail;
    if (points.empty()) throw validation_error("svg: empty point set");
    double x_lo = points.front().time_per_epoch, x_hi = x_lo;
    double y_lo = points.front().auc_norm, y_hi = y_lo;
    for (const TradeoffPoint& p : points) {
        x_lo = std::min(x_lo, p.time_per_epoch);
        x_hi = std::max(x_hi, p.time_per_epoch);
        y_lo = std::min(y_lo, p.auc_norm);
        y_hi = std::max(y_hi, p.auc_norm);
    }
    auto is_front = [&](const TradeoffPoint& p) {
        for (const TradeoffPoint& f : front)
            if (f.model_id == p.model_id && f.time_per_epoch == p.time_per_epoch &&
                f.auc_norm == p.auc_norm)
                return true;
        return false;
    };

    d::Canvas c{spec.width, spec.height};
    c.right = 120;  // room for marker labels
    double x_pad = (x_hi - x_lo < 1e-9) ? x_hi * 0.1 + 1.0 : (x_hi - x_lo) * 0.08;
    double y_pad = (y_hi - y_lo < 1e-9) ? 0.02 : (y_hi - y_lo) * 0.12;
    if (spec.log_x) {
        c.x = {x_lo * 0.8, (x_hi + x_pad) * 1.05, true};
    } else {
        c.x = {std::max(0.0, x_lo - x_pad), x_hi + x_pad, false};
    }
    c.y = {y_lo - y_pad, y_hi + y_pad, false};

    std::string out = d::header(c, "Accuracy vs training cost");
    auto x_ticks = spec.log_x ? d::decade_ticks(c.x.lo, c.x.hi) : d::linear_ticks(c.x.lo, c.x.hi);
    auto y_ticks = d::linear_ticks(c.y.lo, c.y.hi, 5);
    d::axes(out, c, x_ticks, y_ticks,
            spec.log_x ? "time per epoch (s, log10)" : "time per epoch (s)", "AUC_norm");

    std::vector<std::string> labels;
    for (const TradeoffPoint& p : points) labels.push_back(p.model_id);
    for (const TradeoffPoint& p : points) {
        std::string color = d::color_for(p.model_id, labels);
        if (is_front(p))
            d::marker(out, c, p.time_per_epoch, p.auc_norm, color, 5.5, "#000000", 2.0);
        else
            d::marker(out, c, p.time_per_epoch, p.auc_norm, color, 4.0);
        out += "<text class=\"lbl\" x=\"" + d::num(c.px(p.time_per_epoch) + 8) + "\" y=\"" +
               d::num(c.py(p.auc_norm) + 4) + "\">" + topkit::detail::xml_escape(p.model_id) +
               "</text>\n";
    }
    std::vector<std::string> notes = {"ringed markers: Pareto front"};
    d::legend(out, c, {}, notes);
    out += "</svg>\n";
    return out;
}

}  // namespace topkit
