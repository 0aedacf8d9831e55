// Copyright 2026 The tqs-coherence Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tqs/io.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"

using namespace tqs;

namespace {

const model::CircuitParams kRef(0.5, 1.5, 1.0);

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);) {
        out.push_back(line);
    }
    return out;
}

std::vector<double> split_numbers(const std::string& line) {
    std::vector<double> out;
    std::istringstream is(line);
    for (std::string cell; std::getline(is, cell, ',');) {
        out.push_back(std::stod(cell));
    }
    return out;
}

}  // namespace

TEST(Format, Parse) {
    EXPECT_EQ(io::parse_format("csv"), io::Format::kCsv);
    EXPECT_EQ(io::parse_format("json"), io::Format::kJson);
    EXPECT_FALSE(io::parse_format("xml").has_value());
}

TEST(Format, NumberText) {
    EXPECT_EQ(io::format_coord(0.0), "0");
    EXPECT_EQ(io::format_coord(0.01), "0.01");
    EXPECT_EQ(io::format_coord(1.7345621947521976), "1.73456219475");
    EXPECT_EQ(io::format_value(1.0), "1.000000000000");
    EXPECT_EQ(io::format_value(2.92), "2.920000000000");
    EXPECT_EQ(io::printed_value(1.0 / 3.0), 0.333333333333);
}

TEST(SeriesCsv, HeaderAndFirstRow) {
    const auto s = scan::time_series(evolution::BellLabel::kPhiPlus, kRef, scan::TimeGrid(0.0, 10.0, 1001));
    std::ostringstream os;
    io::write_series_csv(os, s);
    const auto lines = lines_of(os.str());
    ASSERT_EQ(lines.size(), 1002u);
    EXPECT_EQ(lines[0], "t,c_closed_form,c_numeric,abs_gap");
    EXPECT_EQ(lines[1], "0,1.000000000000,1.000000000000,0.000000000000");
    EXPECT_EQ(os.str().find('\r'), std::string::npos);
}

TEST(SeriesCsv, RoundTripToLastPrintedDigit) {
    const auto s = scan::time_series(evolution::BellLabel::kPsiPlus, {1.2, -0.7, 2.0}, scan::TimeGrid(0.5, 7.0, 77));
    std::ostringstream os;
    io::write_series_csv(os, s);
    const auto lines = lines_of(os.str());
    for (std::size_t k = 0; k < s.times.size(); ++k) {
        const auto cells = split_numbers(lines[k + 1]);
        ASSERT_EQ(cells.size(), 4u);
        EXPECT_EQ(cells[0], io::printed_coord(s.times[k]));
        EXPECT_NEAR(cells[0], s.times[k], 1e-11 * std::max(1.0, std::abs(s.times[k])));
        EXPECT_EQ(cells[1], io::printed_value(s.closed_form[k]));
        EXPECT_NEAR(cells[1], s.closed_form[k], 5e-13);
        EXPECT_NEAR(cells[2], s.numeric[k], 5e-13);
    }
}

TEST(SeriesCsv, MatchesGoldenFile) {
    const auto s = scan::time_series(evolution::BellLabel::kPhiPlus, kRef, scan::TimeGrid(0.0, 10.0, 1001));
    std::ostringstream os;
    io::write_series_csv(os, s);
    std::ifstream golden(std::string(TQS_GOLDEN_DIR) + "/reference_series.csv", std::ios::binary);
    ASSERT_TRUE(golden.good());
    std::stringstream expected;
    expected << golden.rdbuf();
    EXPECT_EQ(os.str(), expected.str());
}

TEST(SeriesJson, Shape) {
    const scan::TimeGrid grid(0.0, 10.0, 11);
    const auto s = scan::time_series(evolution::BellLabel::kPhiPlus, kRef, grid);
    const auto j = io::series_json(s, grid);
    EXPECT_EQ(j["meta"]["state"], "phi+");
    EXPECT_EQ(j["meta"]["params"]["e_j"], 0.5);
    EXPECT_EQ(j["meta"]["grid"]["steps"], 11);
    EXPECT_EQ(j["meta"]["version"], std::string(io::kVersion));
    for (const char* key : {"t", "c_closed_form", "c_numeric", "abs_gap"}) {
        ASSERT_TRUE(j["data"].contains(key)) << key;
        EXPECT_EQ(j["data"][key].size(), 11u);
    }
    EXPECT_EQ(j["data"]["c_closed_form"][0], 1.0);
    // Text round trip keeps every value.
    const auto back = nlohmann::json::parse(j.dump());
    EXPECT_EQ(back, j);
}

TEST(GridCsv, LongFormRowMajor) {
    const auto g = scan::grid_scan(evolution::BellLabel::kPhiPlus, kRef, scan::VaryParam::kEJ, {0.25, 0.5, 2},
                                   scan::TimeGrid(0.0, 10.0, 3));
    std::ostringstream os;
    io::write_grid_csv(os, g);
    const auto lines = lines_of(os.str());
    ASSERT_EQ(lines.size(), 7u);
    EXPECT_EQ(lines[0], "e_j,t,value");
    EXPECT_EQ(lines[1], "0.25,0,1.000000000000");
    EXPECT_EQ(lines[2].substr(0, 7), "0.25,5,");
    EXPECT_EQ(lines[4], "0.5,0,1.000000000000");
    const auto last = split_numbers(lines[6]);
    EXPECT_EQ(last[0], 0.5);
    EXPECT_EQ(last[1], 10.0);
    EXPECT_EQ(last[2], io::printed_value(g.values[1][2]));
}

TEST(GridJson, Shape) {
    const scan::ParamRange range{0.0, 1.5, 4};
    const scan::TimeGrid grid(0.0, 10.0, 5);
    const auto g = scan::grid_scan(evolution::BellLabel::kPhiPlus, kRef, scan::VaryParam::kEM, range, grid);
    const auto j = io::grid_json(g, evolution::BellLabel::kPhiPlus, kRef, range, grid);
    EXPECT_EQ(j["meta"]["vary"], "e_m");
    EXPECT_EQ(j["data"]["e_m"].size(), 20u);
    EXPECT_EQ(j["data"]["t"].size(), 20u);
    EXPECT_EQ(j["data"]["value"].size(), 20u);
    EXPECT_EQ(j["data"]["e_m"][5], 0.5);
    EXPECT_EQ(j["data"]["t"][5], 0.0);
}

TEST(ReportOutput, PassAndFail) {
    const auto good = scan::cross_validate(3, 42);
    const auto j = io::report_json(good);
    EXPECT_EQ(j["meta"]["seed"], 42);
    EXPECT_EQ(j["meta"]["samples"], 3);
    EXPECT_TRUE(j["data"]["passed"].get<bool>());
    EXPECT_FALSE(j["data"].contains("failing_check"));
    std::ostringstream os;
    io::write_report_text(os, good);
    EXPECT_NE(os.str().find("PASS"), std::string::npos);

    scan::ClosedFormRoutes broken;
    broken.coherence = [](evolution::BellLabel, const model::CircuitParams&, double) { return 0.0; };
    const auto bad = scan::cross_validate(3, 42, broken);
    const auto jb = io::report_json(bad);
    EXPECT_FALSE(jb["data"]["passed"].get<bool>());
    EXPECT_EQ(jb["data"]["failing_check"], "coherence");
    EXPECT_TRUE(jb["data"]["failing_draw"].contains("t"));
    std::ostringstream ob;
    io::write_report_text(ob, bad);
    EXPECT_NE(ob.str().find("FAIL: coherence"), std::string::npos);
}

TEST(OperatingPointOutput, Mechanisms) {
    const auto off = scan::find_operating_point(evolution::BellLabel::kPhiPlus, {0.0, 1.5, 1.0}, {0.0, 10.0},
                                                scan::Objective::kStabilize);
    std::ostringstream os;
    io::write_operating_point_text(os, off);
    EXPECT_NE(os.str().find("tunnelling off: C constant 1"), std::string::npos);
    const auto j = io::operating_point_json(off);
    EXPECT_EQ(j["data"]["mechanism"], "tunnelling off");
    EXPECT_TRUE(j["data"]["stationary"].get<bool>());
    EXPECT_EQ(j["meta"]["objective"], "stabilize");
}
