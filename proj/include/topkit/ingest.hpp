#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "topkit/detail/text.hpp"
#include "topkit/errors.hpp"
#include "topkit/metrics.hpp"
#include "topkit/perf.hpp"

// File formats and their loaders. Every failure names the file, the line
// and the offending field; a malformed record is never silently dropped.
//
//   class manifest    plain text, one class per line, '#' comments
//   predictions       JSON Lines: {"id", "label_index" | "label_name", "scores"}
//   timing log        CSV, header exactly  model,gpus,epoch,seconds
//   summary fixtures  CSV, header exactly  model_type,backbone,top1,top5,
//                     auc_norm,j_max,k_at_jmax,t2,t4,t8,t16,t32,t64

namespace topkit {

/// Ordered class names; position defines the class index everywhere.
struct ClassManifest {
    std::vector<std::string> classes;

    int num_classes() const { return static_cast<int>(classes.size()); }

    std::optional<int> index_of(const std::string& name) const {
        for (std::size_t i = 0; i < classes.size(); ++i)
            if (classes[i] == name) return static_cast<int>(i);
        return std::nullopt;
    }

    bool operator==(const ClassManifest&) const = default;
};

/// One pre-aggregated accuracy + timing row (the bundled results table).
struct ModelSummaryFixture {
    std::string model_type;
    std::string backbone;
    double top1 = 0.0;  // percent
    std::optional<double> top5;
    double auc_norm = 0.0;
    double j_max = 0.0;
    std::optional<int> k_at_jmax;
    std::map<int, double> times;  // gpus -> seconds per epoch

    bool is_chance() const { return model_type == "random chance"; }
    std::string label() const { return backbone.empty() ? model_type : backbone; }

    bool operator==(const ModelSummaryFixture&) const = default;
};

namespace detail {

inline std::ifstream open_or_throw(const std::filesystem::path& path, const char* what) {
    std::ifstream in(path);
    if (!in) throw format_error(std::string("cannot open ") + what + ": " + path.string());
    return in;
}

inline std::string loc(const std::filesystem::path& path, std::size_t line_no) {
    return path.string() + ":" + std::to_string(line_no);
}

}  // namespace detail

inline ClassManifest load_class_manifest(const std::filesystem::path& path) {
    std::ifstream in = detail::open_or_throw(path, "class manifest");
    ClassManifest manifest;
    std::unordered_map<std::string, std::size_t> first_seen;  // name -> line number
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = topkit::detail::trim(topkit::detail::strip_line(raw, line_no == 1));
        if (line.empty() || line.front() == '#') continue;
        std::string name(line);
        auto [it, inserted] = first_seen.emplace(name, line_no);
        if (!inserted)
            throw validation_error(detail::loc(path, line_no) + ": duplicate class '" + name +
                                   "' (first defined at line " + std::to_string(it->second) + ")");
        manifest.classes.push_back(std::move(name));
    }
    if (manifest.classes.empty())
        throw validation_error(path.string() + ": class manifest defines no classes");
    return manifest;
}

/// Parse one predictions line into a Sample. Exposed for the streaming scan.
inline Sample parse_prediction_line(std::string_view line, const ClassManifest& manifest,
                                    const std::filesystem::path& path, std::size_t line_no) {
    nlohmann::json rec;
    try {
        rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw format_error(detail::loc(path, line_no) + ": invalid record: " + e.what());
    }
    if (!rec.is_object()) throw format_error(detail::loc(path, line_no) + ": record is not an object");

    Sample s;
    if (!rec.contains("id") || !rec["id"].is_string())
        throw validation_error(detail::loc(path, line_no) + ": missing string field 'id'");
    s.id = rec["id"].get<std::string>();

    const std::string where = detail::loc(path, line_no) + " (sample '" + s.id + "')";

    std::optional<int> by_index;
    std::optional<int> by_name;
    if (rec.contains("label_index")) {
        if (!rec["label_index"].is_number_integer())
            throw validation_error(where + ": 'label_index' is not an integer");
        by_index = rec["label_index"].get<int>();
    }
    if (rec.contains("label_name")) {
        if (!rec["label_name"].is_string())
            throw validation_error(where + ": 'label_name' is not a string");
        std::string name = rec["label_name"].get<std::string>();
        by_name = manifest.index_of(name);
        if (!by_name) throw validation_error(where + ": unknown label name '" + name + "'");
    }
    if (!by_index && !by_name)
        throw validation_error(where + ": record carries neither 'label_index' nor 'label_name'");
    if (by_index && by_name && *by_index != *by_name)
        throw validation_error(where + ": 'label_index' " + std::to_string(*by_index) +
                               " conflicts with 'label_name' (index " + std::to_string(*by_name) + ")");
    s.true_label = by_index ? *by_index : *by_name;

    if (!rec.contains("scores") || !rec["scores"].is_array())
        throw validation_error(where + ": missing array field 'scores'");
    const auto& arr = rec["scores"];
    s.scores.reserve(arr.size());
    for (const auto& v : arr) {
        if (!v.is_number()) throw validation_error(where + ": non-numeric score");
        s.scores.push_back(v.get<double>());
    }

    try {
        validate_sample(s, manifest.num_classes());
    } catch (const validation_error& e) {
        throw validation_error(detail::loc(path, line_no) + ": " + e.what());
    }
    return s;
}

/// Stream records one at a time; memory stays proportional to one record.
/// Does not check for duplicate ids (that needs the whole id set; the
/// materializing loader below does).
inline std::size_t scan_predictions(const std::filesystem::path& path, const ClassManifest& manifest,
                                    const std::function<void(Sample&&)>& sink) {
    std::ifstream in = detail::open_or_throw(path, "predictions file");
    std::string raw;
    std::size_t line_no = 0;
    std::size_t count = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = topkit::detail::strip_line(raw, line_no == 1);
        if (topkit::detail::trim(line).empty()) continue;
        sink(parse_prediction_line(line, manifest, path, line_no));
        ++count;
    }
    if (count == 0) throw validation_error(path.string() + ": no prediction records");
    return count;
}

inline EvalSet load_predictions(const std::filesystem::path& path, const ClassManifest& manifest) {
    EvalSet eval;
    eval.num_classes = manifest.num_classes();
    std::unordered_set<std::string> seen_ids;
    scan_predictions(path, manifest, [&](Sample&& s) {
        if (!seen_ids.insert(s.id).second)
            throw validation_error(path.string() + ": duplicate sample id '" + s.id + "'");
        eval.samples.push_back(std::move(s));
    });
    return eval;
}

inline constexpr const char* kTimingHeader = "model,gpus,epoch,seconds";

/// Rows with non-positive seconds are rejected. A header-only file yields an
/// empty sequence (callers may warn; it is not an error).
inline std::vector<TimingRecord> load_timing_log(const std::filesystem::path& path) {
    std::ifstream in = detail::open_or_throw(path, "timing log");
    std::string raw;
    if (!std::getline(in, raw)) throw format_error(path.string() + ": empty timing log");
    if (topkit::detail::trim(topkit::detail::strip_line(raw, true)) != kTimingHeader)
        throw format_error(path.string() + ": expected header '" + std::string(kTimingHeader) +
                           "', got '" + std::string(topkit::detail::trim(raw)) + "'");
    std::vector<TimingRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = topkit::detail::strip_line(raw);
        if (topkit::detail::trim(line).empty()) continue;
        auto fields = topkit::detail::split(line, ',');
        if (fields.size() != 4)
            throw format_error(detail::loc(path, line_no) + ": expected 4 fields, got " +
                               std::to_string(fields.size()));
        TimingRecord r;
        r.model_id = std::string(topkit::detail::trim(fields[0]));
        auto gpus = topkit::detail::parse_int(fields[1]);
        auto epoch = topkit::detail::parse_int(fields[2]);
        auto seconds = topkit::detail::parse_double(fields[3]);
        if (r.model_id.empty() || !gpus || !epoch || !seconds)
            throw format_error(detail::loc(path, line_no) + ": malformed row '" +
                               std::string(topkit::detail::trim(line)) + "'");
        r.gpus = static_cast<int>(*gpus);
        r.epoch = static_cast<int>(*epoch);
        r.seconds = *seconds;
        try {
            validate(r);
        } catch (const validation_error& e) {
            throw validation_error(detail::loc(path, line_no) + ": " + e.what());
        }
        records.push_back(std::move(r));
    }
    return records;
}

inline constexpr const char* kFixtureHeader =
    "model_type,backbone,top1,top5,auc_norm,j_max,k_at_jmax,t2,t4,t8,t16,t32,t64";
inline constexpr int kFixtureGpuCounts[] = {2, 4, 8, 16, 32, 64};

inline std::vector<ModelSummaryFixture> load_summary_fixtures(const std::filesystem::path& path) {
    std::ifstream in = detail::open_or_throw(path, "summary fixtures");
    std::string raw;
    if (!std::getline(in, raw)) throw format_error(path.string() + ": empty fixtures file");
    if (topkit::detail::trim(topkit::detail::strip_line(raw, true)) != kFixtureHeader)
        throw format_error(path.string() + ": expected header '" + std::string(kFixtureHeader) +
                           "', got '" + std::string(topkit::detail::trim(raw)) + "'");

    auto need_double = [&](const std::string& cell, const char* field, std::size_t line_no) {
        auto v = topkit::detail::parse_double(cell);
        if (!v)
            throw format_error(detail::loc(path, line_no) + ": field '" + field +
                               "' is not a number: '" + cell + "'");
        return *v;
    };
    auto check_percent = [&](double v, const char* field, std::size_t line_no) {
        if (v < 0.0 || v > 100.0)
            throw validation_error(detail::loc(path, line_no) + ": field '" + field + "' = " +
                                   topkit::detail::format_shortest(v) + " outside [0, 100]");
    };

    std::vector<ModelSummaryFixture> rows;
    std::size_t line_no = 1;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = topkit::detail::strip_line(raw);
        if (topkit::detail::trim(line).empty()) continue;
        auto fields = topkit::detail::split(line, ',');
        if (fields.size() != 13)
            throw format_error(detail::loc(path, line_no) + ": expected 13 fields, got " +
                               std::to_string(fields.size()));

        ModelSummaryFixture f;
        f.model_type = std::string(topkit::detail::trim(fields[0]));
        f.backbone = std::string(topkit::detail::trim(fields[1]));
        if (f.model_type.empty())
            throw validation_error(detail::loc(path, line_no) + ": empty model_type");

        f.top1 = need_double(fields[2], "top1", line_no);
        check_percent(f.top1, "top1", line_no);
        if (!topkit::detail::trim(fields[3]).empty()) {
            f.top5 = need_double(fields[3], "top5", line_no);
            check_percent(*f.top5, "top5", line_no);
        }
        f.auc_norm = need_double(fields[4], "auc_norm", line_no);
        if (!(f.auc_norm > 0.0 && f.auc_norm < 1.0))
            throw validation_error(detail::loc(path, line_no) + ": auc_norm = " +
                                   topkit::detail::format_shortest(f.auc_norm) +
                                   " outside (0, 1)");
        f.j_max = need_double(fields[5], "j_max", line_no);
        if (!topkit::detail::trim(fields[6]).empty()) {
            auto k = topkit::detail::parse_int(fields[6]);
            if (!k || *k < 0)
                throw format_error(detail::loc(path, line_no) + ": bad k_at_jmax '" + fields[6] + "'");
            f.k_at_jmax = static_cast<int>(*k);
        }
        for (std::size_t i = 0; i < std::size(kFixtureGpuCounts); ++i) {
            const std::string& cell = fields[7 + i];
            if (topkit::detail::trim(cell).empty()) continue;
            double seconds = need_double(cell, "time", line_no);
            if (!(seconds > 0.0))
                throw validation_error(detail::loc(path, line_no) + ": time at g = " +
                                       std::to_string(kFixtureGpuCounts[i]) + " must be positive");
            f.times[kFixtureGpuCounts[i]] = seconds;
        }
        rows.push_back(std::move(f));
    }
    if (rows.empty()) throw validation_error(path.string() + ": fixtures file defines no rows");
    return rows;
}

/// Display labels for fixture rows: the backbone, or the model type when the
/// backbone is empty. Labels shared by several rows (e.g. two "n/a (16f)"
/// backbones) get the model type prefixed; a still-duplicated label is an
/// error. Returned in row order.
inline std::vector<std::string> fixture_display_labels(
    std::span<const ModelSummaryFixture> fixtures) {
    std::map<std::string, int> count;
    for (const ModelSummaryFixture& f : fixtures) ++count[f.label()];
    std::vector<std::string> labels;
    std::unordered_set<std::string> seen;
    for (const ModelSummaryFixture& f : fixtures) {
        std::string label = f.label();
        if (count[label] > 1 && !f.backbone.empty()) label = f.model_type + " " + label;
        if (!seen.insert(label).second)
            throw validation_error("fixtures: duplicate model row '" + label + "'");
        labels.push_back(std::move(label));
    }
    return labels;
}

// --- Emitters. Loading what these write yields a value equal to the input.

inline std::string predictions_to_jsonl(const EvalSet& eval) {
    validate(eval);
    std::string out;
    for (const Sample& s : eval.samples) {
        nlohmann::ordered_json rec;
        rec["id"] = s.id;
        rec["label_index"] = s.true_label;
        rec["scores"] = s.scores;
        out += rec.dump();
        out += '\n';
    }
    return out;
}

inline std::string timing_log_to_csv(std::span<const TimingRecord> records) {
    std::string out = std::string(kTimingHeader) + "\n";
    for (const TimingRecord& r : records) {
        validate(r);
        out += r.model_id + "," + std::to_string(r.gpus) + "," + std::to_string(r.epoch) + "," +
               topkit::detail::format_shortest(r.seconds) + "\n";
    }
    return out;
}

}  // namespace topkit
