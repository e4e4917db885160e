#include <gtest/gtest.h>

#include <jordanlab/harness.hpp>

using namespace jordanlab;

TEST(Harness, PrimePowers) {
    for (int q : {2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49, 121, 128}) EXPECT_TRUE(is_prime_power(q)) << q;
    for (int q : {0, 1, 6, 10, 12, 15, 18, 100}) EXPECT_FALSE(is_prime_power(q)) << q;
}

TEST(Harness, LogScale) {
    auto s = log_scale(16384, 2);
    EXPECT_EQ(s.shift, 14);
    EXPECT_DOUBLE_EQ(s.chi, 1.0);
    s = log_scale(3, 2);
    EXPECT_EQ(s.shift, 1);
    EXPECT_DOUBLE_EQ(s.chi, 1.5);
    s = log_scale(10, 3);
    EXPECT_EQ(s.shift, 2);
    EXPECT_DOUBLE_EQ(s.chi, 10.0 / 9.0);
    s = log_scale(243, 3);  // exact power, no float log rounding
    EXPECT_EQ(s.shift, 5);
    EXPECT_DOUBLE_EQ(s.chi, 1.0);
}

TEST(Harness, ConfigTextThenFlags) {
    ExperimentConfig c;
    apply_config_text(c, "# campaign\nn = 64\nq=3\n  k = 2  # two columns\nmethod = dp, prelimit-integral\nno-timing = true\n");
    EXPECT_EQ(c.n, 64);
    EXPECT_EQ(c.q, 3);
    EXPECT_EQ(c.k, 2);
    EXPECT_EQ(c.methods, (std::vector<std::string>{"dp", "prelimit-integral"}));
    EXPECT_FALSE(c.timing);
    set_field(c, "n", "128");  // a flag given later wins
    EXPECT_EQ(c.n, 128);
    EXPECT_THROW(apply_config_text(c, "bogus = 1\n"), std::invalid_argument);
    EXPECT_THROW(apply_config_text(c, "n 3\n"), std::invalid_argument);
    EXPECT_THROW(set_field(c, "n", "3x"), std::invalid_argument);
}

TEST(Harness, ValidationRejectsBadConfigs) {
    ExperimentConfig c;
    c.q = 6;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = {};
    c.k = 0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = {};
    c.format = "xml";
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = {};
    c.command = "exact-dp";
    c.n = 41;
    EXPECT_THROW(run(c), CapExceeded);
}

TEST(Harness, HashTracksResultRelevantFieldsOnly) {
    ExperimentConfig a, b;
    b.threads = 7;
    b.out = "x.json";
    EXPECT_EQ(config_hash(a), config_hash(b));
    b.seed = 2;
    EXPECT_NE(config_hash(a), config_hash(b));
}

TEST(Compare, ExactModeSmallN) {
    ExperimentConfig c;
    c.n = 3;
    c.methods = {"exact"};
    const Report r = cmd_compare(c);
    EXPECT_EQ(r.extra["shift"], 1);
    EXPECT_DOUBLE_EQ(r.extra["chi"].get<double>(), 1.5);
    double sup = 0;
    for (const auto& d : r.extra["deltas"]) {
        const double x = d["delta"].get<double>();
        ASSERT_TRUE(std::isfinite(x));
        sup = std::max(sup, std::fabs(x));
    }
    ASSERT_TRUE(r.dinf.has_value());
    EXPECT_DOUBLE_EQ(*r.dinf, sup);
    // (lambda'_1 - 1) at n = 3 takes values 0, 1, 2 with masses 1/4, 5/8, 1/8
    std::map<int, ExactScalar> dp;
    for (const auto& rec : r.results)
        if (rec.method == "dp") dp[rec.key[0]] = *rec.exact;
    EXPECT_EQ(dp[0], exact_fraction(1, 4));
    EXPECT_EQ(dp[1], exact_fraction(5, 8));
    EXPECT_EQ(dp[2], exact_fraction(1, 8));
}

TEST(Compare, SameSeedSameBytesAnyThreadCount) {
    ExperimentConfig c;
    c.n = 300;
    c.k = 2;
    c.samples = 3000;
    c.seed = 99;
    const std::string one = to_json(cmd_compare(c)).dump();
    c.threads = 3;
    EXPECT_EQ(one, to_json(cmd_compare(c)).dump());
    c.seed = 100;
    EXPECT_NE(one, to_json(cmd_compare(c)).dump());
}

TEST(Compare, MaxDinfFailureIsReported) {
    ExperimentConfig c;
    c.n = 64;
    c.samples = 200;
    c.max_dinf = 1e-9;
    const Report r = cmd_compare(c);
    EXPECT_FALSE(r.ok());
    EXPECT_EQ(r.results.front().method, "matrix");
}

TEST(Tables, DpAgainstPrelimit) {
    ExperimentConfig c;
    c.command = "tables";
    c.n = 10;
    c.methods = {"dp", "prelimit-integral"};
    const Report r = cmd_tables(c);
    EXPECT_TRUE(r.ok());
    ASSERT_TRUE(r.dinf.has_value());
    EXPECT_LE(*r.dinf, 1e-8);
}

TEST(Tables, SeriesAgainstClosedForm) {
    ExperimentConfig c;
    c.command = "tables";
    c.methods = {"series", "k1-explicit"};
    c.tol = 1e-12;
    const Report r = cmd_tables(c);
    EXPECT_TRUE(r.ok());
    EXPECT_LE(*r.dinf, 1e-12);
    EXPECT_NEAR(r.extra["window_mass"]["series"].get<double>(), 1.0, 1e-11);
}

TEST(Tables, SeriesAgainstContourK2) {
    ExperimentConfig c;
    c.command = "tables";
    c.k = 2;
    c.methods = {"series", "contour"};
    c.tol = 1e-6;
    c.lo = 0;
    c.hi = 1;
    const Report r = cmd_tables(c);
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.results.size(), 6u);
    EXPECT_LE(*r.dinf, 1e-6);
}

TEST(Tables, MixedLawsRejected) {
    ExperimentConfig c;
    c.command = "tables";
    c.methods = {"dp", "series"};
    EXPECT_THROW(cmd_tables(c), std::invalid_argument);
    c.methods = {"nonsense"};
    EXPECT_THROW(cmd_tables(c), std::invalid_argument);
}

TEST(SampleFigure, RowLawOfLargeNumbersBand) {
    ExperimentConfig c;
    c.command = "sample-figure";
    c.n = 200;
    c.seed = 5;
    const Report r = cmd_sample_figure(c);
    const auto rows = r.extra["rows"].get<std::vector<int>>();
    int total = 0;
    for (int x : rows) total += x;
    EXPECT_EQ(total, 200);
    EXPECT_NEAR(rows.front(), 100, 30);
    EXPECT_EQ(r.extra["columns"].get<std::vector<int>>(), conjugate(Partition(rows)).parts());
}

TEST(SampleFigure, SizeOne) {
    ExperimentConfig c;
    c.command = "sample-figure";
    c.n = 1;
    EXPECT_EQ(cmd_sample_figure(c).extra["rows"].get<std::vector<int>>(), std::vector<int>{1});
    c.q = 3;
    c.n = 12;
    EXPECT_EQ(cmd_sample_figure(c).extra["size"], 12);
}

TEST(Report, JsonShapeAndCsv) {
    ExperimentConfig c;
    c.command = "exact-dp";
    c.n = 4;
    c.q = 3;
    c.timing = false;
    Report r = run(c);
    const auto j = to_json(r);
    EXPECT_TRUE(j["meta"]["runtime_ms"].is_null());
    EXPECT_TRUE(j["dinf"].is_null());
    EXPECT_EQ(j["meta"]["version"], library_version);
    EXPECT_EQ(j["meta"]["config_hash"].get<std::string>().size(), 16u);
    ExactScalar total(0);
    for (const auto& rec : j["results"]) total += ExactScalar(rec["p_num"].get<std::string>() + "/" + rec["p_den"].get<std::string>());
    EXPECT_EQ(total, 1);
    EXPECT_EQ(j["results"].size(), partitions_of(4).size());
    r.config.format = "csv";
    const std::string csv = render(r);
    EXPECT_EQ(csv.rfind("key,p,p_num,p_den,err,method\n", 0), 0u);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + static_cast<long>(partitions_of(4).size()));
}

TEST(Simulate, ChainAndMatrixAgreeRoughly) {
    ExperimentConfig c;
    c.command = "simulate";
    c.n = 20;
    c.k = 2;
    c.samples = 20000;
    const auto chain = cmd_simulate(c);
    c.methods = {"matrix"};
    const auto matrix = cmd_simulate(c);
    EXPECT_LE(detail::sup_delta(detail::as_map(chain.results, "chain"), detail::as_map(matrix.results, "matrix")), 0.03);
}

TEST(Harness, WindowSurvivesUnderflowOnTheLeft) {
    // masses at -8 and -7 underflow to exactly zero when t = 1/3
    const auto [lo, hi] = limit_window(1.0 / 3, 2.0, 1e-14, std::nullopt, std::nullopt);
    EXPECT_EQ(lo, -8);
    EXPECT_GE(hi, 6);
    LimitSeries<double> series(1.0 / 3, 2.0);
    double mass = 0;
    for (int x = lo; x <= hi; ++x) mass += series(Signature{x}, 1e-16).value;
    EXPECT_NEAR(mass, 1.0, 1e-12);
}
