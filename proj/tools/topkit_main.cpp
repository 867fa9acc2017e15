// topkit command-line tool: evaluate prediction files, analyze timing logs,
// compare runs, and regenerate reports from previously written documents.
//
// Subcommands: evaluate, perf, compare, report. Every run computes all of
// its outputs in memory first and then writes each file atomically (temp +
// rename), so a failed run leaves nothing partially written. Identical
// inputs produce byte-identical output trees.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "topkit/topkit.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr int kSchemaVersion = 1;

struct RunConfig {
    std::string predictions;
    std::string classes;
    std::string timings;
    std::string fixtures;
    std::string out_dir;
    std::string format = "md";
    std::vector<std::string> plots;  // empty = per-command default
    bool plots_given = false;
    int exclude_first = 0;
    int epochs_total = 65;
    int baseline_g = 2;
    bool log_x = false;
    std::vector<std::string> metrics_files;  // compare positionals
};

topkit::TableFormat table_format(const RunConfig& cfg) {
    return cfg.format == "csv" ? topkit::TableFormat::csv : topkit::TableFormat::markdown;
}

std::string table_ext(const RunConfig& cfg) { return cfg.format == "csv" ? ".csv" : ".md"; }

bool wants_plot(const RunConfig& cfg, const std::string& kind, bool default_on) {
    if (!cfg.plots_given) return default_on;
    for (const std::string& p : cfg.plots)
        if (p == kind) return true;
    return false;
}

// --- output staging: everything is rendered before anything is written

struct OutputSet {
    fs::path dir;
    std::vector<std::pair<std::string, std::string>> files;

    void add(const std::string& name, std::string content) {
        files.emplace_back(name, std::move(content));
    }

    void commit() const {
        fs::create_directories(dir);
        for (const auto& [name, content] : files) {
            fs::path target = dir / name;
            fs::path tmp = target;
            tmp += ".tmp";
            {
                std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
                if (!out) throw topkit::format_error("cannot write: " + tmp.string());
                out << content;
                out.flush();
                if (!out) throw topkit::format_error("write failed: " + tmp.string());
            }
            fs::rename(tmp, target);
            std::cout << "wrote " << target.string() << "\n";
        }
    }
};

// --- metrics documents (the machine-readable per-run output)

struct MetricsDoc {
    std::string model;
    int num_classes = 0;
    std::int64_t num_samples = 0;
    topkit::ProcSummary summary;
    std::vector<double> curve;
};

ordered_json to_json(const MetricsDoc& doc) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "metrics";
    j["model"] = doc.model;
    j["num_classes"] = doc.num_classes;
    j["num_samples"] = doc.num_samples;
    j["top1"] = doc.summary.top1;
    if (doc.summary.top5)
        j["top5"] = *doc.summary.top5;
    else
        j["top5"] = nullptr;
    j["auc"] = doc.summary.auc;
    j["auc_norm"] = doc.summary.auc_norm;
    j["j_max"] = doc.summary.j_max;
    j["k_at_jmax"] = doc.summary.k_at_jmax;
    j["curve"] = doc.curve;
    return j;
}

json parse_json_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw topkit::format_error("cannot open metrics document: " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw topkit::format_error(path.string() + ": invalid JSON: " + e.what());
    }
}

MetricsDoc metrics_doc_from_json(const json& j, const fs::path& path) {
    if (!j.is_object() || j.value("kind", "") != "metrics")
        throw topkit::format_error(path.string() + ": not a metrics document");
    if (j.value("schema_version", -1) != kSchemaVersion)
        throw topkit::format_error(path.string() + ": unsupported schema_version");
    MetricsDoc doc;
    try {
        doc.model = j.at("model").get<std::string>();
        doc.num_classes = j.at("num_classes").get<int>();
        doc.num_samples = j.at("num_samples").get<std::int64_t>();
        doc.summary.top1 = j.at("top1").get<double>();
        if (!j.at("top5").is_null()) doc.summary.top5 = j.at("top5").get<double>();
        doc.summary.auc = j.at("auc").get<double>();
        doc.summary.auc_norm = j.at("auc_norm").get<double>();
        doc.summary.j_max = j.at("j_max").get<double>();
        doc.summary.k_at_jmax = j.at("k_at_jmax").get<int>();
        doc.curve = j.at("curve").get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw topkit::format_error(path.string() + ": malformed metrics document: " + e.what());
    }
    if (doc.num_classes < 1 ||
        doc.curve.size() != static_cast<std::size_t>(doc.num_classes) + 1)
        throw topkit::format_error(path.string() + ": curve length does not match num_classes");
    return doc;
}

// --- timing series assembly shared by perf and compare

std::vector<topkit::LabeledSeries> gather_series(const RunConfig& cfg,
                                                 const std::vector<topkit::ModelSummaryFixture>& fixtures,
                                                 const std::vector<std::string>& fixture_labels) {
    std::vector<topkit::LabeledSeries> series;
    if (!cfg.timings.empty()) {
        auto records = topkit::load_timing_log(cfg.timings);
        if (records.empty()) {
            std::cerr << "warning: timing log has no rows: " << cfg.timings << "\n";
        } else {
            for (auto& s : topkit::epoch_stats(records, cfg.exclude_first))
                series.push_back({s.model_id, std::move(s.points)});
        }
    }
    for (std::size_t i = 0; i < fixtures.size(); ++i) {
        if (fixtures[i].times.empty()) continue;  // e.g. the random-chance row
        series.push_back({fixture_labels[i], fixtures[i].times});
    }
    std::set<std::string> seen;
    for (const auto& s : series)
        if (!seen.insert(s.label).second)
            throw topkit::validation_error("duplicate timing series for model '" + s.label + "'");
    std::sort(series.begin(), series.end(),
              [](const auto& a, const auto& b) { return a.label < b.label; });
    return series;
}

ordered_json gpu_map_json(const std::map<int, double>& m) {
    ordered_json j = ordered_json::object();
    for (const auto& [g, v] : m) j[std::to_string(g)] = v;
    return j;
}

// --- evaluate -------------------------------------------------------------

int cmd_evaluate(const RunConfig& cfg) {
    topkit::ClassManifest manifest = topkit::load_class_manifest(cfg.classes);
    topkit::CurveAccumulator acc(manifest.num_classes());
    topkit::scan_predictions(cfg.predictions, manifest,
                             [&](topkit::Sample&& s) { acc.add(s); });
    topkit::TopKCurve curve = acc.finish();

    MetricsDoc doc;
    doc.model = fs::path(cfg.predictions).stem().string();
    doc.num_classes = manifest.num_classes();
    doc.num_samples = acc.num_samples();
    doc.summary = topkit::summarize_curve(curve);
    doc.curve = curve.acc_values();

    OutputSet out{fs::path(cfg.out_dir), {}};
    out.add("metrics.json", to_json(doc).dump(2) + "\n");

    std::vector<topkit::MetricsRow> rows = {topkit::MetricsRow::from_summary(doc.model, doc.summary)};
    out.add("table" + table_ext(cfg),
            topkit::render_metrics_table(rows, table_format(cfg), manifest.num_classes()));

    std::vector<topkit::LabeledCurve> curves = {{doc.model, doc.curve}};
    if (wants_plot(cfg, "proc", false)) {
        auto spec = topkit::PlotSpec::defaults(topkit::PlotKind::proc);
        if (cfg.log_x) spec.log_x = true;
        out.add("proc.svg", topkit::render_proc_svg(curves, spec));
    }
    if (wants_plot(cfg, "youden", false)) {
        auto spec = topkit::PlotSpec::defaults(topkit::PlotKind::youden);
        out.add("youden.svg", topkit::render_youden_svg(curves, spec));
    }
    out.commit();
    return 0;
}

// --- perf -----------------------------------------------------------------

int cmd_perf(const RunConfig& cfg) {
    std::vector<topkit::ModelSummaryFixture> fixtures;
    std::vector<std::string> fixture_labels;
    if (!cfg.fixtures.empty()) {
        fixtures = topkit::load_summary_fixtures(cfg.fixtures);
        fixture_labels = topkit::fixture_display_labels(fixtures);
    }
    std::vector<topkit::LabeledSeries> series = gather_series(cfg, fixtures, fixture_labels);
    if (series.empty()) throw topkit::validation_error("perf: no timing data (give --timings and/or --fixtures)");

    ordered_json models = ordered_json::array();
    std::string table;
    const bool md = table_format(cfg) == topkit::TableFormat::markdown;
    if (md) {
        table += "| Model | g | Seconds/epoch | Speedup | Efficiency | Total (h) |\n";
        table += "| --- | --- | --- | --- | --- | --- |\n";
    } else {
        table += "model,gpus,seconds_per_epoch,speedup,efficiency,total_hours\n";
    }

    for (const auto& s : series) {
        topkit::ScalingSeries scaling{s.label, s.points};
        auto speedup = topkit::speedup_series(scaling, cfg.baseline_g);
        auto efficiency = topkit::scaling_efficiency(scaling, cfg.baseline_g);
        std::map<int, double> hours;
        for (const auto& [g, sec] : s.points)
            hours[g] = topkit::total_training_time_hours(sec, cfg.epochs_total);

        ordered_json m;
        m["model"] = s.label;
        m["seconds_per_epoch"] = gpu_map_json(s.points);
        m["speedup"] = gpu_map_json(speedup);
        m["efficiency"] = gpu_map_json(efficiency);
        m["total_hours"] = gpu_map_json(hours);
        models.push_back(std::move(m));

        for (const auto& [g, sec] : s.points) {
            std::string cells[6] = {s.label,
                                    std::to_string(g),
                                    topkit::detail::format_shortest(sec),
                                    topkit::detail::format_fixed(speedup[g], 2),
                                    topkit::detail::format_fixed(efficiency[g], 2),
                                    topkit::detail::format_fixed(hours[g], 2)};
            if (md)
                table += "| " + cells[0] + " | " + cells[1] + " | " + cells[2] + " | " + cells[3] +
                         " | " + cells[4] + " | " + cells[5] + " |\n";
            else
                table += cells[0] + "," + cells[1] + "," + cells[2] + "," + cells[3] + "," +
                         cells[4] + "," + cells[5] + "\n";
        }
    }

    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["kind"] = "perf";
    doc["baseline_g"] = cfg.baseline_g;
    doc["epochs_total"] = cfg.epochs_total;
    doc["exclude_first"] = cfg.exclude_first;
    doc["models"] = std::move(models);

    OutputSet out{fs::path(cfg.out_dir), {}};
    out.add("perf.json", doc.dump(2) + "\n");
    out.add("perf_table" + table_ext(cfg), table);
    if (wants_plot(cfg, "scaling", true)) {
        auto spec = topkit::PlotSpec::defaults(topkit::PlotKind::scaling);
        out.add("scaling.svg", topkit::render_scaling_svg(series, spec));
    }
    out.commit();
    return 0;
}

// --- compare ----------------------------------------------------------------

struct CompareEntry {
    std::string label;
    std::optional<int> num_classes;
    topkit::MetricsRow row;
    double auc_norm = 0.0;
    double j_max = 0.0;
};

int cmd_compare(const RunConfig& cfg) {
    std::vector<CompareEntry> entries;
    for (const std::string& file : cfg.metrics_files) {
        MetricsDoc doc = metrics_doc_from_json(parse_json_file(file), file);
        CompareEntry e;
        e.label = doc.model;
        e.num_classes = doc.num_classes;
        e.row = topkit::MetricsRow::from_summary(doc.model, doc.summary);
        e.auc_norm = doc.summary.auc_norm;
        e.j_max = doc.summary.j_max;
        entries.push_back(std::move(e));
    }
    std::vector<topkit::ModelSummaryFixture> fixtures;
    std::vector<std::string> fixture_labels;
    if (!cfg.fixtures.empty()) {
        fixtures = topkit::load_summary_fixtures(cfg.fixtures);
        fixture_labels = topkit::fixture_display_labels(fixtures);
        for (std::size_t i = 0; i < fixtures.size(); ++i) {
            CompareEntry e;
            e.label = fixture_labels[i];
            e.row = topkit::MetricsRow::from_fixture(fixtures[i]);
            e.row.model = e.label;
            e.auc_norm = fixtures[i].auc_norm;
            e.j_max = fixtures[i].j_max;
            entries.push_back(std::move(e));
        }
    }
    if (entries.empty())
        throw topkit::validation_error("compare: no inputs (give metrics.json files and/or --fixtures)");
    {
        std::set<std::string> seen;
        for (const auto& e : entries)
            if (!seen.insert(e.label).second)
                throw topkit::validation_error("compare: duplicate model label '" + e.label + "'");
    }

    // Rank by auc_norm descending, j_max as tiebreaker, then stable by label.
    std::sort(entries.begin(), entries.end(), [](const CompareEntry& a, const CompareEntry& b) {
        if (a.auc_norm != b.auc_norm) return a.auc_norm > b.auc_norm;
        if (a.j_max != b.j_max) return a.j_max > b.j_max;
        return a.label < b.label;
    });
    std::vector<topkit::MetricsRow> rows;
    std::vector<bool> tied;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        rows.push_back(entries[i].row);
        tied.push_back(i > 0 && entries[i].auc_norm == entries[i - 1].auc_norm &&
                       entries[i].j_max == entries[i - 1].j_max);
    }

    ordered_json ranking = ordered_json::array();
    {
        int rank = 1;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (i > 0 && !tied[i]) rank = static_cast<int>(i) + 1;
            ordered_json r;
            r["rank"] = rank;
            r["model"] = entries[i].label;
            if (entries[i].num_classes)
                r["num_classes"] = *entries[i].num_classes;
            else
                r["num_classes"] = nullptr;
            r["top1"] = entries[i].row.top1_pct;
            if (entries[i].row.top5_pct)
                r["top5"] = *entries[i].row.top5_pct;
            else
                r["top5"] = nullptr;
            r["auc_norm"] = entries[i].auc_norm;
            r["j_max"] = entries[i].j_max;
            if (entries[i].row.k_at_jmax)
                r["k_at_jmax"] = *entries[i].row.k_at_jmax;
            else
                r["k_at_jmax"] = nullptr;
            r["chance"] = entries[i].row.chance_style;
            ranking.push_back(std::move(r));
        }
    }

    // Trade-off points at the largest GPU count shared by every timed model.
    std::vector<topkit::LabeledSeries> series = gather_series(cfg, fixtures, fixture_labels);
    ordered_json tradeoff = nullptr;
    std::vector<topkit::TradeoffPoint> points;
    std::vector<topkit::TradeoffPoint> front;
    if (!series.empty()) {
        std::map<std::string, const CompareEntry*> by_label;
        for (const auto& e : entries) by_label[e.label] = &e;
        std::optional<std::set<int>> common;
        std::vector<const topkit::LabeledSeries*> timed;
        for (const auto& s : series) {
            auto it = by_label.find(s.label);
            if (it == by_label.end())
                throw topkit::validation_error("compare: timing series '" + s.label +
                                               "' matches no compared model");
            timed.push_back(&s);
            std::set<int> gs;
            for (const auto& [g, sec] : s.points) gs.insert(g);
            if (!common) {
                common = std::move(gs);
            } else {
                std::set<int> inter;
                std::set_intersection(common->begin(), common->end(), gs.begin(), gs.end(),
                                      std::inserter(inter, inter.begin()));
                *common = std::move(inter);
            }
        }
        if (!common || common->empty())
            throw topkit::validation_error("compare: timed models share no GPU count");
        int g_star = *common->rbegin();
        for (const auto* s : timed)
            points.push_back({s->label, s->points.at(g_star), by_label.at(s->label)->auc_norm});
        front = topkit::pareto_front(points);

        tradeoff = ordered_json::object();
        tradeoff["gpus"] = g_star;
        ordered_json pj = ordered_json::array();
        for (const auto& p : points) {
            ordered_json o;
            o["model"] = p.model_id;
            o["time_per_epoch"] = p.time_per_epoch;
            o["auc_norm"] = p.auc_norm;
            pj.push_back(std::move(o));
        }
        tradeoff["points"] = std::move(pj);
        ordered_json fj = ordered_json::array();
        for (const auto& p : front) fj.push_back(p.model_id);
        tradeoff["front"] = std::move(fj);
    }

    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["kind"] = "compare";
    doc["ranking"] = std::move(ranking);
    doc["tradeoff"] = std::move(tradeoff);

    OutputSet out{fs::path(cfg.out_dir), {}};
    out.add("compare.json", doc.dump(2) + "\n");
    out.add("ranking" + table_ext(cfg), topkit::render_ranking_table(rows, tied, table_format(cfg)));
    if (!points.empty() && wants_plot(cfg, "tradeoff", true)) {
        auto spec = topkit::PlotSpec::defaults(topkit::PlotKind::tradeoff);
        if (cfg.log_x) spec.log_x = true;
        out.add("tradeoff.svg", topkit::render_tradeoff_svg(points, front, spec));
    }
    out.commit();
    return 0;
}

// --- report -----------------------------------------------------------------

int cmd_report(const RunConfig& cfg) {
    fs::path dir(cfg.out_dir);
    std::vector<MetricsDoc> metric_docs;
    std::vector<json> perf_docs;
    std::vector<json> compare_docs;
    if (fs::is_directory(dir)) {
        std::vector<fs::path> candidates;
        for (const auto& entry : fs::directory_iterator(dir))
            if (entry.is_regular_file() && entry.path().extension() == ".json")
                candidates.push_back(entry.path());
        std::sort(candidates.begin(), candidates.end());
        for (const fs::path& p : candidates) {
            json j = parse_json_file(p);
            if (!j.is_object()) continue;
            std::string kind = j.value("kind", "");
            if (kind == "metrics")
                metric_docs.push_back(metrics_doc_from_json(j, p));
            else if (kind == "perf")
                perf_docs.push_back(std::move(j));
            else if (kind == "compare")
                compare_docs.push_back(std::move(j));
        }
    }
    std::vector<topkit::ModelSummaryFixture> fixtures;
    std::vector<std::string> fixture_labels;
    if (!cfg.fixtures.empty()) {
        fixtures = topkit::load_summary_fixtures(cfg.fixtures);
        fixture_labels = topkit::fixture_display_labels(fixtures);
    }
    if (metric_docs.empty() && perf_docs.empty() && compare_docs.empty() && fixtures.empty())
        throw topkit::validation_error("report: no metrics found in " + dir.string());

    OutputSet out{dir, {}};

    std::sort(metric_docs.begin(), metric_docs.end(),
              [](const MetricsDoc& a, const MetricsDoc& b) { return a.model < b.model; });
    std::vector<topkit::MetricsRow> rows;
    for (std::size_t i = 0; i < fixtures.size(); ++i) {
        topkit::MetricsRow row = topkit::MetricsRow::from_fixture(fixtures[i]);
        row.model = fixture_labels[i];
        rows.push_back(std::move(row));
    }
    for (const MetricsDoc& doc : metric_docs)
        rows.push_back(topkit::MetricsRow::from_summary(doc.model, doc.summary));
    if (!rows.empty())
        out.add("table" + table_ext(cfg), topkit::render_metrics_table(rows, table_format(cfg)));

    // Curve plots per class count; suffix the file name when counts differ.
    if (!metric_docs.empty()) {
        std::map<int, std::vector<topkit::LabeledCurve>> by_classes;
        for (const MetricsDoc& doc : metric_docs)
            by_classes[doc.num_classes].push_back({doc.model, doc.curve});
        for (const auto& [n, curves] : by_classes) {
            std::string suffix = by_classes.size() == 1 ? "" : "_c" + std::to_string(n);
            if (wants_plot(cfg, "proc", true)) {
                auto spec = topkit::PlotSpec::defaults(topkit::PlotKind::proc);
                if (cfg.log_x) spec.log_x = true;
                out.add("proc" + suffix + ".svg", topkit::render_proc_svg(curves, spec));
            }
            if (wants_plot(cfg, "youden", true))
                out.add("youden" + suffix + ".svg",
                        topkit::render_youden_svg(curves, topkit::PlotSpec::defaults(topkit::PlotKind::youden)));
        }
    }

    if (wants_plot(cfg, "scaling", true)) {
        for (std::size_t i = 0; i < perf_docs.size(); ++i) {
            std::vector<topkit::LabeledSeries> series;
            for (const auto& m : perf_docs[i].at("models")) {
                topkit::LabeledSeries s;
                s.label = m.at("model").get<std::string>();
                for (const auto& [g, sec] : m.at("seconds_per_epoch").items())
                    s.points[std::stoi(g)] = sec.get<double>();
                series.push_back(std::move(s));
            }
            std::string suffix = perf_docs.size() == 1 ? "" : "_" + std::to_string(i + 1);
            out.add("scaling" + suffix + ".svg",
                    topkit::render_scaling_svg(series, topkit::PlotSpec::defaults(topkit::PlotKind::scaling)));
        }
    }
    if (wants_plot(cfg, "tradeoff", true)) {
        for (std::size_t i = 0; i < compare_docs.size(); ++i) {
            const json& t = compare_docs[i].at("tradeoff");
            if (t.is_null()) continue;
            std::vector<topkit::TradeoffPoint> points;
            for (const auto& p : t.at("points"))
                points.push_back({p.at("model").get<std::string>(),
                                  p.at("time_per_epoch").get<double>(),
                                  p.at("auc_norm").get<double>()});
            std::set<std::string> front_labels;
            for (const auto& f : t.at("front")) front_labels.insert(f.get<std::string>());
            std::vector<topkit::TradeoffPoint> front;
            for (const auto& p : points)
                if (front_labels.count(p.model_id)) front.push_back(p);
            std::string suffix = compare_docs.size() == 1 ? "" : "_" + std::to_string(i + 1);
            auto spec = topkit::PlotSpec::defaults(topkit::PlotKind::tradeoff);
            if (cfg.log_x) spec.log_x = true;
            out.add("tradeoff" + suffix + ".svg", topkit::render_tradeoff_svg(points, front, spec));
        }
    }

    if (out.files.empty()) throw topkit::validation_error("report: nothing to render");
    out.commit();
    return 0;
}

void add_common_flags(CLI::App* cmd, RunConfig& cfg, bool with_out_required) {
    auto* out = cmd->add_option("--out", cfg.out_dir, "Output directory");
    if (with_out_required) out->required();
    cmd->add_option("--format", cfg.format, "Table format")
        ->check(CLI::IsMember({"csv", "md"}))
        ->capture_default_str();
    cmd->add_option("--plots", cfg.plots,
                    "Plots to render (proc, youden, scaling, tradeoff; 'none' disables)")
        ->delimiter(',')
        ->check(CLI::IsMember({"proc", "youden", "scaling", "tradeoff", "none"}));
    cmd->add_flag("--log-x", cfg.log_x, "Use a logarithmic x-axis where optional");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"topkit: Top-k accuracy curve metrics and training-scaling analysis"};
    app.require_subcommand(1);

    RunConfig cfg;

    CLI::App* evaluate = app.add_subcommand(
        "evaluate", "Compute Top-k curve metrics from a predictions file");
    evaluate->add_option("--predictions", cfg.predictions, "JSON Lines predictions file")->required();
    evaluate->add_option("--classes", cfg.classes, "Class manifest (one name per line)")->required();
    add_common_flags(evaluate, cfg, true);

    CLI::App* perf = app.add_subcommand("perf", "Analyze per-epoch timing data");
    perf->add_option("--timings", cfg.timings, "CSV timing log (model,gpus,epoch,seconds)");
    perf->add_option("--fixtures", cfg.fixtures, "Pre-aggregated summary fixtures CSV");
    perf->add_option("--exclude-first", cfg.exclude_first, "Skip epochs with index < N when averaging")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    perf->add_option("--epochs-total", cfg.epochs_total, "Epochs for total-time projection")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    perf->add_option("--baseline-g", cfg.baseline_g, "Baseline GPU count for speedup")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_common_flags(perf, cfg, true);

    CLI::App* compare = app.add_subcommand(
        "compare", "Rank runs by AUC_norm and plot the accuracy/cost trade-off");
    compare->add_option("metrics", cfg.metrics_files, "metrics.json files to compare");
    compare->add_option("--fixtures", cfg.fixtures, "Pre-aggregated summary fixtures CSV");
    compare->add_option("--timings", cfg.timings, "CSV timing log (model,gpus,epoch,seconds)");
    compare->add_option("--exclude-first", cfg.exclude_first, "Skip epochs with index < N when averaging")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    add_common_flags(compare, cfg, true);

    CLI::App* report = app.add_subcommand(
        "report", "Regenerate tables and plots from documents in the output directory");
    report->add_option("--fixtures", cfg.fixtures, "Pre-aggregated summary fixtures CSV");
    add_common_flags(report, cfg, true);

    CLI11_PARSE(app, argc, argv);
    cfg.plots_given = (evaluate->count("--plots") || perf->count("--plots") ||
                                          compare->count("--plots") || report->count("--plots"));

    try {
        if (*evaluate) return cmd_evaluate(cfg);
        if (*perf) return cmd_perf(cfg);
        if (*compare) return cmd_compare(cfg);
        if (*report) return cmd_report(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
