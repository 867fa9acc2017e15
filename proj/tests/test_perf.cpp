#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "support/test_support.hpp"
#include "topkit/perf.hpp"

using namespace topkit;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

TEST_CASE("epoch_stats aggregates per (model, g)") {
    SECTION("singleton mean") {
        std::vector<TimingRecord> records = {{"m", 2, 0, 100.0}};
        auto series = epoch_stats(records);
        REQUIRE(series.size() == 1);
        CHECK(series[0].model_id == "m");
        CHECK(series[0].points == std::map<int, double>{{2, 100.0}});
    }
    SECTION("arithmetic mean") {
        std::vector<TimingRecord> records = {{"m", 2, 0, 100.0}, {"m", 2, 1, 110.0}, {"m", 2, 2, 90.0}};
        CHECK(epoch_stats(records)[0].points.at(2) == 100.0);
    }
    SECTION("warmup exclusion by epoch index") {
        std::vector<TimingRecord> records = {{"m", 2, 0, 500.0}, {"m", 2, 1, 100.0}, {"m", 2, 2, 100.0}};
        CHECK(epoch_stats(records, 1)[0].points.at(2) == 100.0);
    }
    SECTION("empty group after exclusion names (model, g)") {
        std::vector<TimingRecord> records = {{"m", 2, 0, 500.0}};
        CHECK_THROWS_MATCHES(epoch_stats(records, 1), validation_error,
                         Catch::Matchers::MessageMatches(ContainsSubstring("m") && ContainsSubstring("2")));
    }
    SECTION("input order does not change the mean") {
        std::vector<TimingRecord> a = {{"m", 4, 0, 10.0}, {"m", 4, 1, 0.3}, {"m", 4, 2, 7.7}};
        std::vector<TimingRecord> b = {a[2], a[0], a[1]};
        CHECK(epoch_stats(a) == epoch_stats(b));
    }
    SECTION("models come back sorted") {
        std::vector<TimingRecord> records = {{"zeta", 1, 0, 5.0}, {"alpha", 1, 0, 3.0}};
        auto series = epoch_stats(records);
        REQUIRE(series.size() == 2);
        CHECK(series[0].model_id == "alpha");
        CHECK(series[1].model_id == "zeta");
    }
    SECTION("rejects bad records") {
        CHECK_THROWS_AS(epoch_stats({}), validation_error);
        std::vector<TimingRecord> zero_sec = {{"m", 1, 0, 0.0}};
        CHECK_THROWS_AS(epoch_stats(zero_sec), validation_error);
        std::vector<TimingRecord> bad_g = {{"m", 0, 0, 1.0}};
        CHECK_THROWS_AS(epoch_stats(bad_g), validation_error);
        std::vector<TimingRecord> ok = {{"m", 1, 0, 1.0}};
        CHECK_THROWS_AS(epoch_stats(ok, -1), std::out_of_range);
    }
}

TEST_CASE("total training time") {
    CHECK_THAT(total_training_time_hours(335.4, 65), WithinAbs(6.06, 0.005));
    CHECK_THAT(total_training_time_hours(413.5, 65), WithinAbs(7.47, 0.005));
    CHECK_THAT(total_training_time_hours(460.7, 65), WithinAbs(8.32, 0.005));
    CHECK(total_training_time_hours(3600.0, 1) == 1.0);

    CHECK_THROWS_AS(total_training_time_hours(0.0, 1), std::out_of_range);
    CHECK_THROWS_AS(total_training_time_hours(-5.0, 1), std::out_of_range);
    CHECK_THROWS_AS(total_training_time_hours(10.0, 0), std::out_of_range);
}

TEST_CASE("total training time is linear in both arguments") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> sec(0.5, 5000.0);
    for (int i = 0; i < 50; ++i) {
        double s = sec(rng);
        CHECK_THAT(total_training_time_hours(2.0 * s, 7),
                   WithinAbs(2.0 * total_training_time_hours(s, 7), 1e-9));
        CHECK_THAT(total_training_time_hours(s, 14),
                   WithinAbs(2.0 * total_training_time_hours(s, 7), 1e-9));
    }
}

TEST_CASE("speedup_series") {
    SECTION("ratio of measured values, 1 at the baseline") {
        ScalingSeries series{"R50", {{2, 15261.6}, {64, 335.4}}};
        auto speedup = speedup_series(series, 2);
        CHECK(speedup.at(2) == 1.0);
        // direct-division oracle: 15261.6 / 335.4 = 45.5027 ("45.50" at 2 dp)
        CHECK(speedup.at(64) == 15261.6 / 335.4);
        CHECK_THAT(speedup.at(64), WithinAbs(45.5027, 0.0005));
    }
    SECTION("constant series") {
        ScalingSeries series{"m", {{2, 42.0}, {4, 42.0}}};
        for (auto [g, v] : speedup_series(series, 2)) CHECK(v == 1.0);
    }
    SECTION("perfect halving is ideal strong scaling") {
        ScalingSeries series{"m", {{1, 1000.0}, {2, 500.0}, {4, 250.0}}};
        auto speedup = speedup_series(series, 1);
        CHECK(speedup.at(1) == 1.0);
        CHECK(speedup.at(2) == 2.0);
        CHECK(speedup.at(4) == 4.0);
    }
    SECTION("missing baseline names the model") {
        ScalingSeries series{"lonely", {{64, 10.0}}};
        CHECK_THROWS_MATCHES(speedup_series(series, 2), validation_error,
                         Catch::Matchers::MessageMatches(ContainsSubstring("lonely")));
    }
}

TEST_CASE("scaling_efficiency") {
    SECTION("perfect halving gives efficiency 1 everywhere") {
        ScalingSeries series{"m", {{1, 1000.0}, {2, 500.0}, {4, 250.0}}};
        for (auto [g, v] : scaling_efficiency(series, 1)) CHECK(v == 1.0);
    }
    SECTION("super-linear values are reported as-is") {
        ScalingSeries series{"R50", {{2, 15261.6}, {64, 335.4}}};
        auto eff = scaling_efficiency(series, 2);
        CHECK(eff.at(64) == (15261.6 / 335.4) * 2.0 / 64.0);  // ~1.42, above 1
        CHECK(eff.at(64) > 1.0);
        CHECK_THAT(eff.at(64), WithinAbs(1.42, 0.005));
    }
    SECTION("no speedup on doubled resources halves efficiency") {
        ScalingSeries series{"m", {{1, 100.0}, {2, 100.0}}};
        CHECK(scaling_efficiency(series, 1).at(2) == 0.5);
    }
}

TEST_CASE("property: speedup and efficiency are scale invariant") {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> sec(1.0, 10000.0);
    std::uniform_real_distribution<double> factor(0.25, 8.0);
    for (int iter = 0; iter < 50; ++iter) {
        ScalingSeries series{"m", {}};
        for (int g : {1, 2, 4, 8}) series.points[g] = sec(rng);
        double c = factor(rng);
        ScalingSeries scaled = series;
        for (auto& [g, v] : scaled.points) v *= c;

        auto s1 = speedup_series(series, 2);
        auto s2 = speedup_series(scaled, 2);
        auto e1 = scaling_efficiency(series, 2);
        auto e2 = scaling_efficiency(scaled, 2);
        for (int g : {1, 2, 4, 8}) {
            CHECK_THAT(s2.at(g), WithinAbs(s1.at(g), 1e-9 * s1.at(g)));
            CHECK_THAT(e2.at(g), WithinAbs(e1.at(g), 1e-9));
        }
        CHECK(s2.at(2) == 1.0);
        CHECK(e2.at(2) == 1.0);
    }
}

namespace {

// The nine C2D rows at g = 64: (label, seconds per epoch, AUC_norm).
std::vector<TradeoffPoint> nine_points() {
    return {
        {"ResNet50", 335.4, 0.911},  {"Inception-ResNet-v2", 413.5, 0.919},
        {"MobileNet-v2", 460.7, 0.915}, {"DenseNet201", 478.9, 0.915},
        {"Inception-v3", 493.0, 0.915}, {"Xception", 502.1, 0.919},
        {"VGG19", 580.8, 0.891},     {"MobileNet", 642.5, 0.908},
        {"DenseNet169", 666.6, 0.917},
    };
}

bool oracle_dominates(const TradeoffPoint& a, const TradeoffPoint& b) {
    bool no_worse = a.time_per_epoch <= b.time_per_epoch && a.auc_norm >= b.auc_norm;
    bool strictly_better = a.time_per_epoch < b.time_per_epoch || a.auc_norm > b.auc_norm;
    return no_worse && strictly_better;
}

}  // namespace

TEST_CASE("pareto_front") {
    SECTION("single point is its own front") {
        std::vector<TradeoffPoint> pts = {{"only", 100.0, 0.9}};
        CHECK(pareto_front(pts) == pts);
    }
    SECTION("strict dominance removes the slower, weaker point") {
        std::vector<TradeoffPoint> pts = {{"a", 100.0, 0.9}, {"b", 200.0, 0.8}};
        auto front = pareto_front(pts);
        REQUIRE(front.size() == 1);
        CHECK(front[0].model_id == "a");
    }
    SECTION("nine-point example: front is {ResNet50, Inception-ResNet-v2}") {
        auto front = pareto_front(nine_points());
        REQUIRE(front.size() == 2);
        CHECK(front[0].model_id == "ResNet50");
        CHECK(front[1].model_id == "Inception-ResNet-v2");
        // Xception ties Inception-ResNet-v2's auc_norm but is slower
    }
    SECTION("exactly coincident points are all kept") {
        std::vector<TradeoffPoint> pts = {{"a", 100.0, 0.9}, {"b", 100.0, 0.9}};
        auto front = pareto_front(pts);
        REQUIRE(front.size() == 2);
        CHECK(front[0].model_id == "a");
        CHECK(front[1].model_id == "b");
    }
    SECTION("equal accuracy, slower point is excluded") {
        std::vector<TradeoffPoint> pts = {{"fast", 100.0, 0.9}, {"slow", 150.0, 0.9}};
        auto front = pareto_front(pts);
        REQUIRE(front.size() == 1);
        CHECK(front[0].model_id == "fast");
    }
    SECTION("validation") {
        CHECK_THROWS_AS(pareto_front({}), validation_error);
        std::vector<TradeoffPoint> bad_auc = {{"x", 10.0, 1.2}};
        CHECK_THROWS_AS(pareto_front(bad_auc), validation_error);
        std::vector<TradeoffPoint> bad_time = {{"x", 0.0, 0.5}};
        CHECK_THROWS_AS(pareto_front(bad_time), validation_error);
    }
}

TEST_CASE("property: pareto soundness, completeness, monotonicity") {
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> time_dist(1.0, 100.0);
    std::uniform_int_distribution<int> auc_grid(1, 9);
    std::uniform_int_distribution<int> count(1, 12);
    std::uniform_int_distribution<int> time_grid(1, 10);
    for (int iter = 0; iter < 200; ++iter) {
        std::vector<TradeoffPoint> pts;
        int n = count(rng);
        for (int i = 0; i < n; ++i)  // gridded values make coincidences common
            pts.push_back({"p" + std::to_string(i), time_grid(rng) * 10.0, auc_grid(rng) * 0.1});

        auto front = pareto_front(pts);
        REQUIRE(!front.empty());

        // soundness: nothing on the front is dominated by any input
        for (const auto& f : front)
            for (const auto& p : pts) CHECK_FALSE(oracle_dominates(p, f));

        // completeness: every excluded point is dominated by a front member
        for (const auto& p : pts) {
            bool on_front = false;
            for (const auto& f : front)
                if (f.model_id == p.model_id) on_front = true;
            if (on_front) continue;
            bool covered = false;
            for (const auto& f : front)
                if (oracle_dominates(f, p)) covered = true;
            CHECK(covered);
        }

        // monotonicity: adding a point removes a member only by dominating it
        TradeoffPoint extra{"extra", time_grid(rng) * 10.0, auc_grid(rng) * 0.1};
        auto grown = pts;
        grown.push_back(extra);
        auto new_front = pareto_front(grown);
        for (const auto& f : front) {
            if (oracle_dominates(extra, f)) continue;
            bool still_there = false;
            for (const auto& nf : new_front)
                if (nf.model_id == f.model_id) still_there = true;
            CHECK(still_there);
        }
    }
}
