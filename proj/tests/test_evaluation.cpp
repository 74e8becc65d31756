#include "advnids/error.hpp"
#include "advnids/evaluation.hpp"
#include "advnids/report_io.hpp"
#include "advnids/rng.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace advnids;

namespace {

double pct2(double v) { return std::round(v * 10000.0) / 100.0; }

void check_against_brute(const ClassificationReport& r, const oracle::BruteReport& b) {
    CHECK(r.accuracy == b.accuracy);
    for (int c = 0; c < 2; ++c) {
        CHECK(r.classes[c].precision == b.precision[c]);
        CHECK(r.classes[c].recall == b.recall[c]);
        CHECK(r.classes[c].f1 == b.f1[c]);
        CHECK(static_cast<double>(r.classes[c].support) == b.support[c]);
    }
    CHECK(r.macro.precision == b.macro_p);
    CHECK(r.macro.recall == b.macro_r);
    CHECK(r.macro.f1 == b.macro_f1);
    CHECK(r.weighted.precision == b.weighted_p);
    CHECK(r.weighted.recall == b.weighted_r);
    CHECK(r.weighted.f1 == b.weighted_f1);
}

} // namespace

TEST_CASE("confusion examples") {
    const std::vector<int> a{1, 1, 0};
    CHECK(confusion(a, a) == ConfusionMatrix{2, 0, 1, 0});
    const std::vector<int> y{0, 0}, p{1, 1};
    CHECK(confusion(y, p) == ConfusionMatrix{0, 2, 0, 0});
    CHECK_THROWS_AS(confusion(y, std::vector<int>{1}), DataError);
    CHECK_THROWS_AS(confusion(std::vector<int>{}, std::vector<int>{}), DataError);
    CHECK_THROWS_AS(confusion(std::vector<int>{2}, std::vector<int>{0}), DataError);
}

TEST_CASE("perfect classifier") {
    const auto r = report(ConfusionMatrix{5, 0, 7, 0});
    CHECK(r.accuracy == 1.0);
    CHECK(r.weighted == AveragedMetrics{1.0, 1.0, 1.0});
    CHECK(r.macro == AveragedMetrics{1.0, 1.0, 1.0});
    CHECK_FALSE(r.degenerate);
}

TEST_CASE("target baseline counts reconcile to two decimals") {
    const auto r = report(ConfusionMatrix{47185, 1723, 41470, 482});
    CHECK(pct2(r.accuracy) == 97.57);
    CHECK(pct2(r.weighted.precision) == 97.61);
    CHECK(pct2(r.weighted.recall) == 97.57);
    CHECK(pct2(r.weighted.f1) == 97.57);
    CHECK(r.counts.total() == 90860);
}

TEST_CASE("surrogate baseline counts give 99.01, not the reported 99.05") {
    const auto r = report(ConfusionMatrix{47512, 745, 42448, 155});
    CHECK(pct2(r.accuracy) == 99.01);
    CHECK(pct2(r.weighted.precision) == 99.02);
    CHECK(pct2(r.accuracy) != 99.05);
}

TEST_CASE("zero denominators are flagged, not thrown") {
    // Nothing predicted positive.
    const auto r = report(ConfusionMatrix{0, 0, 3, 2});
    CHECK(r.classes[1].precision == 0.0);
    CHECK(r.classes[1].precision_undefined);
    CHECK_FALSE(r.classes[1].recall_undefined);
    CHECK(r.degenerate);
    // Single class present and always right.
    const auto s = report(ConfusionMatrix{4, 0, 0, 0});
    CHECK(s.classes[0].recall_undefined);
    CHECK(s.classes[0].f1_undefined);
    CHECK(s.accuracy == 1.0);
    CHECK_THROWS_AS(report(ConfusionMatrix{}), DataError);
}

TEST_CASE("report equals the brute-force oracle") {
    RngStream rng(1);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + rng.bounded(50);
        std::vector<int> y(n), p(n);
        const double bias = rng.uniform01();
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = rng.uniform01() < bias;
            p[i] = rng.uniform01() < 0.8 ? y[i] : 1 - y[i];
        }
        const auto r = classification_report(y, p);
        check_against_brute(r, oracle::brute_report(y, p));
        CHECK(r.weighted.recall == doctest::Approx(r.accuracy).epsilon(1e-15));
        for (const auto& c : r.classes)
            if (!c.precision_undefined && !c.recall_undefined) {
                CHECK(c.f1 >= std::min(c.precision, c.recall) - 1e-15);
                CHECK(c.f1 <= std::max(c.precision, c.recall) + 1e-15);
            }
    }
}

TEST_CASE("roc_auc examples") {
    // Both positives (0.4, 0.8) outrank both negatives (0.1, 0.35): 4 of 4 pairs.
    const std::vector<int> y{0, 1, 0, 1};
    const std::vector<double> s{0.1, 0.4, 0.35, 0.8};
    CHECK(roc_auc(y, s) == 1.0);
    CHECK(oracle::brute_auc(y, s) == 1.0);
    // Positives 0.35 and 0.8 against negatives 0.1 and 0.4: 3 of 4 pairs.
    CHECK(roc_auc(std::vector<int>{0, 0, 1, 1}, s) == 0.75);
    CHECK(roc_auc(y, std::vector<double>{0.1, 0.9, 0.2, 0.8}) == 1.0);
    CHECK(roc_auc(y, std::vector<double>{0.3, 0.3, 0.3, 0.3}) == 0.5);
    CHECK_THROWS_AS(roc_auc(std::vector<int>{1, 1}, std::vector<double>{0.1, 0.2}), DataError);
}

TEST_CASE("roc_auc equals the all-pairs statistic") {
    RngStream rng(2);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 2 + rng.bounded(199);
        std::vector<int> y(n);
        std::vector<double> s(n);
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = static_cast<int>(rng.bounded(2));
            s[i] = static_cast<double>(rng.bounded(20)) / 20.0; // plenty of ties
        }
        y[0] = 0;
        y[1] = 1;
        CHECK(roc_auc(y, s) == oracle::brute_auc(y, s));
    }
}

TEST_CASE("report with scores carries AUC") {
    const std::vector<int> y{0, 0, 1, 1}, p{0, 1, 1, 1};
    const std::vector<double> s{0.1, 0.4, 0.35, 0.8};
    const auto r = classification_report(y, p, s);
    REQUIRE(r.roc_auc);
    CHECK(*r.roc_auc == 0.75);
    const std::vector<int> one{1, 1};
    const auto single = classification_report(one, one, std::vector<double>{0.6, 0.7});
    CHECK_FALSE(single.roc_auc);
    CHECK(single.degenerate);
}

TEST_CASE("degradation table") {
    const auto a = report(ConfusionMatrix{5, 1, 3, 1});
    const auto b = report(ConfusionMatrix{3, 3, 1, 3});
    const auto one = degradation_table({{0.1, a}});
    REQUIRE(one.size() == 1);
    CHECK(one[0].accuracy == a.accuracy);
    CHECK(one[0].f1 == a.weighted.f1);
    const auto t = degradation_table({{0.2, b}, {0.1, a}});
    CHECK(t[0].epsilon == 0.1);
    CHECK(t[1].epsilon == 0.2);
    CHECK_THROWS_AS(degradation_table({{0.1, a}, {0.1, b}}), DataError);
}

TEST_CASE("report JSON and CSV") {
    const std::vector<int> y{0, 1, 0, 1}, p{0, 1, 1, 1};
    const auto r = classification_report(y, p, std::vector<double>{0.1, 0.4, 0.35, 0.8});
    json j = r;
    CHECK(j.get<ClassificationReport>() == r);
    const auto table = degradation_table({{0.0001, r}});
    const auto row = json(table[0]).get<DegradationRow>();
    CHECK(row == table[0]);
    CHECK(degradation_csv(table) == "epsilon,accuracy_pct,precision_pct,recall_pct,f1_pct\n"
                                    "0.0001,75.00,83.33,75.00,73.33\n");
    CHECK(degradation_curve_csv({}) == "epsilon,accuracy,f1\n");
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(0.0001) == "0.0001");
    CHECK(format_number(1e-7) == "1e-07");
}
