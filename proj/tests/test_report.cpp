#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <string>
#include <vector>

#include "support/test_support.hpp"
#include "topkit/ingest.hpp"
#include "topkit/svg.hpp"
#include "topkit/table.hpp"

using namespace topkit;
using Catch::Matchers::ContainsSubstring;
using testsupport::xml_well_formed;

namespace {

const std::filesystem::path kDataDir = TOPKIT_DATA_DIR;

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        out.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return out;
}

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t pos = text.find(needle); pos != std::string::npos;
         pos = text.find(needle, pos + needle.size()))
        ++n;
    return n;
}

std::vector<MetricsRow> fixture_rows() {
    auto fixtures = load_summary_fixtures(kDataDir / "table3_fixtures.csv");
    auto labels = fixture_display_labels(fixtures);
    std::vector<MetricsRow> rows;
    for (std::size_t i = 0; i < fixtures.size(); ++i) {
        MetricsRow row = MetricsRow::from_fixture(fixtures[i]);
        row.model = labels[i];
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

TEST_CASE("metrics table cells match the documented rounding") {
    auto rows = fixture_rows();
    std::string csv = render_metrics_table(rows, TableFormat::csv);
    auto lines = lines_of(csv);
    REQUIRE(lines.size() == 16);
    CHECK(lines[0] == "model,top1,top5,auc_norm,j_max");
    CHECK(lines[1] == "random chance,0.29,1.47,0.5,0.0");
    CHECK(lines[8] == "Inception-ResNet-v2,26.83,50.50,0.919,0.683 (k = 41)");
    CHECK(lines[2] == "VGG19,16.45,36.41,0.891,0.616 (k = 59)");

    std::string md = render_metrics_table(rows, TableFormat::markdown);
    CHECK_THAT(md, ContainsSubstring("| Inception-ResNet-v2 | 26.83 | 50.50 | 0.919 | 0.683 (k = 41) |"));
    CHECK_THAT(md, ContainsSubstring("| random chance | 0.29 | 1.47 | 0.5 | 0.0 |"));
}

TEST_CASE("prepended chance row and summary rows") {
    EvalSet perfect{10, {{"p", 0, {9, 0, 0, 0, 0, 0, 0, 0, 0, 0}}}};
    std::vector<MetricsRow> rows = {MetricsRow::from_summary("perfect", summarize(perfect))};
    std::string csv = render_metrics_table(rows, TableFormat::csv, 10);
    auto lines = lines_of(csv);
    REQUIRE(lines.size() == 3);
    CHECK(lines[1] == "random chance,10.0,50.0,0.5,0.0");  // chance rows trim zeros
    CHECK(lines[2] == "perfect,100.00,100.00,0.950,0.900 (k = 1)");

    // absent top-5 renders as an empty CSV cell / markdown n/a
    std::vector<MetricsRow> small = {MetricsRow::from_summary("tiny", summarize(testsupport::small_example()))};
    CHECK_THAT(render_metrics_table(small, TableFormat::csv), ContainsSubstring("tiny,66.67,,"));
    CHECK_THAT(render_metrics_table(small, TableFormat::markdown), ContainsSubstring("| n/a |"));

    CHECK_THROWS_AS(render_metrics_table({}, TableFormat::csv), validation_error);
    CHECK_NOTHROW(render_metrics_table({}, TableFormat::csv, 339));
}

TEST_CASE("rendered numeric labels round-trip after rounding") {
    auto rows = fixture_rows();
    std::string csv = render_metrics_table(rows, TableFormat::csv);
    auto lines = lines_of(csv);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto cells = topkit::detail::split(lines[i], ',');
        REQUIRE(cells.size() == 5);
        const MetricsRow& row = rows[i - 1];
        CHECK(*topkit::detail::parse_double(cells[1]) ==
              std::stod(topkit::detail::format_fixed(row.top1_pct, 2)));
        CHECK(*topkit::detail::parse_double(cells[3]) ==
              std::stod(topkit::detail::format_fixed(row.auc_norm, 3)));
        std::string jmax = cells[4].substr(0, cells[4].find(' '));
        CHECK(*topkit::detail::parse_double(jmax) ==
              std::stod(topkit::detail::format_fixed(row.j_max, 3)));
    }
}

TEST_CASE("ranking table ranks with ties") {
    std::vector<MetricsRow> rows = {
        MetricsRow{"a", 10.0, std::nullopt, 0.9, 0.5, 3, false},
        MetricsRow{"b", 10.0, std::nullopt, 0.9, 0.5, 3, false},
        MetricsRow{"c", 10.0, std::nullopt, 0.8, 0.4, 2, false},
    };
    std::vector<bool> tied = {false, true, false};
    std::string csv = render_ranking_table(rows, tied, TableFormat::csv);
    auto lines = lines_of(csv);
    REQUIRE(lines.size() == 4);
    CHECK(lines[1].substr(0, 4) == "1,a,");
    CHECK(lines[2].substr(0, 4) == "1,b,");
    CHECK(lines[3].substr(0, 4) == "3,c,");
}

TEST_CASE("table rendering is deterministic") {
    auto rows = fixture_rows();
    CHECK(render_metrics_table(rows, TableFormat::csv) == render_metrics_table(rows, TableFormat::csv));
    CHECK(render_metrics_table(rows, TableFormat::markdown) ==
          render_metrics_table(rows, TableFormat::markdown));
}

TEST_CASE("proc plot structure") {
    TopKCurve chance = random_chance_curve(15);
    std::vector<LabeledCurve> curves;
    for (int m = 0; m < 3; ++m) {
        std::vector<std::int64_t> hits(16);
        for (int k = 0; k <= 15; ++k)
            hits[static_cast<std::size_t>(k)] = std::min<std::int64_t>(15, k == 0 ? 0 : k + m + 1);
        curves.push_back({"model " + std::string(1, char('A' + m)),
                          TopKCurve(15, std::move(hits), 15).acc_values()});
    }
    PlotSpec spec = PlotSpec::defaults(PlotKind::proc);

    SECTION("three curves plus the dashed chance line") {
        std::string svg = render_proc_svg(curves, spec);
        CHECK(xml_well_formed(svg));
        CHECK(count_occurrences(svg, "<polyline") == 4);
        CHECK(count_occurrences(svg, "stroke-dasharray") >= 1);
        CHECK_THAT(svg, ContainsSubstring("random chance"));
        CHECK_THAT(svg, ContainsSubstring("model A"));
        CHECK_THAT(svg, ContainsSubstring(">k</text>"));
        CHECK_THAT(svg, ContainsSubstring("Top-k accuracy"));
        CHECK(svg == render_proc_svg(curves, spec));  // byte determinism
    }
    SECTION("chance line only") {
        PlotSpec no_auto = spec;
        no_auto.include_chance = false;
        std::vector<LabeledCurve> only = {{"random chance", chance.acc_values()}};
        std::string svg = render_proc_svg(only, no_auto);
        CHECK(count_occurrences(svg, "<polyline") == 1);
        CHECK(xml_well_formed(svg));
    }
    SECTION("empty set and mixed class counts are rejected") {
        CHECK_THROWS_AS(render_proc_svg({}, spec), validation_error);
        std::vector<LabeledCurve> mixed = {{"a", random_chance_curve(4).acc_values()},
                                           {"b", random_chance_curve(5).acc_values()}};
        CHECK_THROWS_MATCHES(render_proc_svg(mixed, spec), validation_error,
                         Catch::Matchers::MessageMatches(ContainsSubstring("mixed")));
    }
    SECTION("labels are XML-escaped") {
        std::vector<LabeledCurve> weird = {{"a<b&c>", chance.acc_values()}};
        std::string svg = render_proc_svg(weird, spec);
        CHECK(xml_well_formed(svg));
        CHECK_THAT(svg, ContainsSubstring("a&lt;b&amp;c&gt;"));
    }
}

TEST_CASE("youden plot structure") {
    PlotSpec spec = PlotSpec::defaults(PlotKind::youden);
    CHECK(spec.log_x);

    SECTION("flat chance curve gets a zero marker at the smallest plotted k") {
        std::vector<LabeledCurve> curves = {{"chance", random_chance_curve(15).acc_values()}};
        std::string svg = render_youden_svg(curves, spec);
        CHECK(xml_well_formed(svg));
        CHECK(count_occurrences(svg, "<circle") == 1);
        CHECK_THAT(svg, ContainsSubstring("k = 0 omitted"));
    }
    SECTION("one peak marker per curve") {
        std::vector<LabeledCurve> curves = {
            {"perfect", TopKCurve(4, {0, 1, 1, 1, 1}, 1).acc_values()},
            {"worked", accuracy_curve(testsupport::small_example()).acc_values()},
        };
        std::string svg = render_youden_svg(curves, spec);
        CHECK(count_occurrences(svg, "<circle") == 2);
        CHECK(count_occurrences(svg, "<polyline") == 2);
        CHECK(svg == render_youden_svg(curves, spec));
    }
}

TEST_CASE("scaling plot structure") {
    PlotSpec spec = PlotSpec::defaults(PlotKind::scaling);
    CHECK(spec.log_y);

    SECTION("one marker per measured point, line per model") {
        std::vector<LabeledSeries> series = {{"ResNet50",
                                              {{2, 15261.6}, {4, 9694.5}, {8, 5298.6}, {16, 2594.9}, {32, 660.8}, {64, 335.4}}}};
        std::string svg = render_scaling_svg(series, spec);
        CHECK(xml_well_formed(svg));
        CHECK(count_occurrences(svg, "<circle") == 6);
        CHECK(count_occurrences(svg, "<polyline") == 1);
        CHECK_THAT(svg, ContainsSubstring("seconds per epoch"));
    }
    SECTION("single point draws no line") {
        std::vector<LabeledSeries> series = {{"solo", {{8, 123.0}}}};
        std::string svg = render_scaling_svg(series, spec);
        CHECK(count_occurrences(svg, "<circle") == 1);
        CHECK(count_occurrences(svg, "<polyline") == 0);
    }
    SECTION("two models, two legend entries") {
        std::vector<LabeledSeries> series = {{"a", {{2, 10.0}, {4, 5.0}}}, {"b", {{2, 20.0}, {4, 10.0}}}};
        std::string svg = render_scaling_svg(series, spec);
        CHECK(count_occurrences(svg, "<polyline") == 2);
        CHECK_THAT(svg, ContainsSubstring(">a</text>"));
        CHECK_THAT(svg, ContainsSubstring(">b</text>"));
    }
    SECTION("rejects empty input") {
        CHECK_THROWS_AS(render_scaling_svg({}, spec), validation_error);
        std::vector<LabeledSeries> empty_series = {{"a", {}}};
        CHECK_THROWS_AS(render_scaling_svg(empty_series, spec), validation_error);
    }
}

TEST_CASE("tradeoff plot structure") {
    PlotSpec spec = PlotSpec::defaults(PlotKind::tradeoff);
    std::vector<TradeoffPoint> points = {
        {"ResNet50", 335.4, 0.911},  {"Inception-ResNet-v2", 413.5, 0.919},
        {"MobileNet-v2", 460.7, 0.915}, {"DenseNet201", 478.9, 0.915},
        {"Inception-v3", 493.0, 0.915}, {"Xception", 502.1, 0.919},
        {"VGG19", 580.8, 0.891},     {"MobileNet", 642.5, 0.908},
        {"DenseNet169", 666.6, 0.917},
    };
    auto front = pareto_front(points);

    SECTION("nine markers, two ringed front members") {
        std::string svg = render_tradeoff_svg(points, front, spec);
        CHECK(xml_well_formed(svg));
        CHECK(count_occurrences(svg, "<circle") == 9);
        CHECK(count_occurrences(svg, "stroke=\"#000000\"") == 2);
        CHECK_THAT(svg, ContainsSubstring("Pareto front"));
        CHECK(svg == render_tradeoff_svg(points, front, spec));
    }
    SECTION("single point is highlighted") {
        std::vector<TradeoffPoint> one = {{"only", 10.0, 0.5}};
        std::string svg = render_tradeoff_svg(one, pareto_front(one), spec);
        CHECK(count_occurrences(svg, "<circle") == 1);
        CHECK(count_occurrences(svg, "stroke=\"#000000\"") == 1);
    }
    SECTION("coincident points are both highlighted") {
        std::vector<TradeoffPoint> two = {{"a", 10.0, 0.5}, {"b", 10.0, 0.5}};
        std::string svg = render_tradeoff_svg(two, pareto_front(two), spec);
        CHECK(count_occurrences(svg, "<circle") == 2);
        CHECK(count_occurrences(svg, "stroke=\"#000000\"") == 2);
    }
}
