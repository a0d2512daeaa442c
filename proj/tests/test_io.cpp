#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <sstream>

#include "qws/io.hpp"

using namespace qws;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof(double)) == 0; }

}  // namespace

TEST_CASE("format_double round-trips exactly") {
    const double values[] = {0.0,
                             -0.0,
                             1.0,
                             -1.0,
                             1.0 / 3.0,
                             0.1,
                             pi,
                             1e-300,
                             -1e300,
                             5e-324,               // smallest denormal
                             1.7976931348623157e308,
                             0.0001,
                             123456789.123456789,
                             2.2250738585072014e-308};
    for (double v : values) {
        CAPTURE(v);
        CHECK(same_bits(parse_double(format_double(v)), v));
    }
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.0001) == "1e-04");
    CHECK(format_double(0.25) == "0.25");
    CHECK_THROWS_AS(parse_double("not-a-number"), std::invalid_argument);
    CHECK_THROWS_AS(parse_double("1.5x"), std::invalid_argument);
}

TEST_CASE("success series csv") {
    const std::vector<double> series = {1e-4, 0.25, 1.0 / 3.0, 0.0, 5e-324};
    std::ostringstream out;
    write_series_csv(out, series);

    SUBCASE("shape: header plus one line per step, LF endings") {
        const std::string text = out.str();
        CHECK(std::count(text.begin(), text.end(), '\n') == 6);
        CHECK(text.find('\r') == std::string::npos);
        CHECK(text.rfind("t,p\n", 0) == 0);
    }
    SUBCASE("re-parses to bit-identical data") {
        std::istringstream in(out.str());
        const std::vector<double> back = read_series_csv(in);
        REQUIRE(back.size() == series.size());
        for (std::size_t i = 0; i < series.size(); ++i) REQUIRE(same_bits(back[i], series[i]));
    }
    SUBCASE("malformed input rejected") {
        std::istringstream no_header("0,1\n");
        CHECK_THROWS_AS(read_series_csv(no_header), std::invalid_argument);
        std::istringstream gap("t,p\n0,0.5\n2,0.5\n");
        CHECK_THROWS_AS(read_series_csv(gap), std::invalid_argument);
    }
}

TEST_CASE("series json round-trip with stable key order") {
    const std::vector<double> series = {1e-4, 0.125, 1.0 / 7.0};
    const ordered_json j = series_to_json(series);
    const std::string dumped = j.dump();
    CHECK(dumped.rfind("{\"t\":", 0) == 0);  // t before p, always

    const std::vector<double> back = series_from_json(ordered_json::parse(dumped));
    REQUIRE(back.size() == series.size());
    for (std::size_t i = 0; i < series.size(); ++i) REQUIRE(same_bits(back[i], series[i]));

    // dump -> parse -> dump is byte-stable
    CHECK(ordered_json::parse(dumped).dump() == dumped);
}

TEST_CASE("sweep table round-trips") {
    SweepTable table;
    table.rows.push_back({100, 0.35, 1.0, ModelLabel::Model1, 154, 0.1003931, 1e-4, 0.16198});
    table.rows.push_back({20, 1e4, 0.5, ModelLabel::Model2, 0, 1.0 / 3.0, 2.5e-3, std::nullopt});

    SUBCASE("csv") {
        std::ostringstream out;
        write_table_csv(out, table);
        std::istringstream in(out.str());
        const SweepTable back = read_table_csv(in);
        REQUIRE(back.rows.size() == 2);
        for (std::size_t i = 0; i < 2; ++i) {
            CHECK(back.rows[i].grid_side == table.rows[i].grid_side);
            CHECK(same_bits(back.rows[i].sigma, table.rows[i].sigma));
            CHECK(same_bits(back.rows[i].c, table.rows[i].c));
            CHECK(back.rows[i].model == table.rows[i].model);
            CHECK(back.rows[i].peak_step == table.rows[i].peak_step);
            CHECK(same_bits(back.rows[i].peak_probability, table.rows[i].peak_probability));
            CHECK(same_bits(back.rows[i].p_uniform, table.rows[i].p_uniform));
            CHECK(back.rows[i].p_akr.has_value() == table.rows[i].p_akr.has_value());
        }
        CHECK(same_bits(*back.rows[0].p_akr, *table.rows[0].p_akr));
    }
    SUBCASE("json") {
        const std::string dumped = table_to_json(table).dump(2);
        const SweepTable back = table_from_json(ordered_json::parse(dumped));
        REQUIRE(back.rows.size() == 2);
        CHECK(same_bits(back.rows[0].peak_probability, table.rows[0].peak_probability));
        CHECK_FALSE(back.rows[1].p_akr.has_value());
        CHECK(ordered_json::parse(dumped).dump(2) == dumped);
    }
}

TEST_CASE("threshold csv round-trips") {
    std::vector<ThresholdResult> points(2);
    points[0] = {100, 0.5, ThresholdCriterion::BelowFractionOfAkr, true,
                 0.3646, 0.3615, 0.0712,  0.16198, false};
    points[1] = {20, 0.5, ThresholdCriterion::CloseToUniform, false, 0.0, 0.0, 0.0, 2.5e-3, true};

    std::ostringstream out;
    write_thresholds_csv(out, points);
    std::istringstream in(out.str());
    const auto back = read_thresholds_csv(in);
    REQUIRE(back.size() == 2);
    CHECK(back[0].criterion == ThresholdCriterion::BelowFractionOfAkr);
    CHECK(back[0].found);
    CHECK(same_bits(back[0].sigma_star, points[0].sigma_star));
    CHECK(same_bits(back[0].p_reference, points[0].p_reference));
    CHECK_FALSE(back[1].found);
    CHECK(back[1].non_monotone_warning);
    CHECK(back[1].criterion == ThresholdCriterion::CloseToUniform);
}

TEST_CASE("distribution csv round-trips") {
    PositionDistribution dist;
    dist.side_length = 3;
    dist.probabilities = {0.1, 0.2, 0.0, 0.3, 1.0 / 3.0, 0.0, 0.0, 0.0, 0.06666666666666667};
    dist.time_step = 7;

    std::ostringstream out;
    write_distribution_csv(out, dist);
    std::istringstream in(out.str());
    const PositionDistribution back = read_distribution_csv(in);
    REQUIRE(back.side_length == 3);
    for (std::size_t i = 0; i < dist.probabilities.size(); ++i)
        REQUIRE(same_bits(back.probabilities[i], dist.probabilities[i]));
}

TEST_CASE("save_text_file surfaces the path on failure") {
    const std::filesystem::path bad = "/nonexistent-dir-qws/file.csv";
    try {
        save_text_file(bad, [](std::ostream& os) { os << "x"; });
        FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("/nonexistent-dir-qws/file.csv") != std::string::npos);
    }
}
