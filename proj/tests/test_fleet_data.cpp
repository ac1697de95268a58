#include <map>
#include <sstream>

#include <doctest.h>

#include "coatplan/fleet_data.hpp"
#include "coatplan/simulator.hpp"

using namespace coatplan::fleet;

namespace {

FleetDataset parse_text(const std::string& text) {
  std::istringstream in(text);
  return parse_inspection_csv(in);
}

constexpr const char* kHeader =
    "ship_id,compartment_id,inspection_time_months,defect_count\n";

}  // namespace

TEST_CASE("minimal one-row file") {
  const auto ds = parse_text(std::string(kHeader) + "S1,C1,12,3\n");
  REQUIRE(ds.compartments.size() == 1);
  const auto& h = ds.compartments[0];
  CHECK(h.ship_id == "S1");
  CHECK(h.compartment_id == "C1");
  CHECK(h.start_time == 0.0);
  REQUIRE(h.entries.size() == 1);
  CHECK(h.entries[0].first == 12.0);
  CHECK(h.entries[0].second == 3);
}

TEST_CASE("empty data section parses to an empty dataset") {
  CHECK(parse_text(kHeader).compartments.empty());
  CHECK(parse_text(std::string("# note\n") + kHeader + "# more\n")
            .compartments.empty());
}

TEST_CASE("comments and CRLF are tolerated") {
  const auto ds = parse_text(std::string("# generated\n") + kHeader +
                             "S1,C1,6,0\r\n# mid comment\nS1,C1,12,2\n");
  REQUIRE(ds.compartments.size() == 1);
  CHECK(ds.compartments[0].entries.size() == 2);
  CHECK(ds.compartments[0].total_defects() == 2);
}

TEST_CASE("validation failures identify the offender") {
  // Out-of-order times name the compartment.
  CHECK_THROWS_WITH_AS(
      parse_text(std::string(kHeader) + "S1,C7,24,1\nS1,C7,12,0\n"),
      doctest::Contains("S1/C7"), ParseError);
  // Duplicate (ship, compartment, time).
  CHECK_THROWS_AS(
      parse_text(std::string(kHeader) + "S1,C1,12,1\nS1,C1,12,0\n"),
      ParseError);
  // Negative count and malformed number carry a line number.
  CHECK_THROWS_WITH_AS(
      parse_text(std::string(kHeader) + "S1,C1,12,-3\n"),
      doctest::Contains("line 2"), ParseError);
  CHECK_THROWS_AS(parse_text(std::string(kHeader) + "S1,C1,oops,3\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_text(std::string(kHeader) + "S1,C1,12\n"), ParseError);
  CHECK_THROWS_AS(parse_text(std::string(kHeader) + ",C1,12,3\n"), ParseError);
  CHECK_THROWS_AS(parse_text("wrong,header\nS1,C1,12,3\n"), ParseError);
}

TEST_CASE("compartments come out sorted and unique") {
  const auto ds = parse_text(std::string(kHeader) +
                             "S2,C1,12,1\nS1,C2,12,0\nS1,C1,12,4\nS1,C2,24,1\n");
  REQUIRE(ds.compartments.size() == 3);
  CHECK(ds.compartments[0].unit_id() == "S1/C1");
  CHECK(ds.compartments[1].unit_id() == "S1/C2");
  CHECK(ds.compartments[2].unit_id() == "S2/C1");
  CHECK(ds.find("S1", "C2") != nullptr);
  CHECK(ds.find("S9", "C2") == nullptr);
  CHECK(ds.n_records() == 4);
}

TEST_CASE("parse-serialize-parse is the identity") {
  const auto synth = coatplan::sim::synthesize_fleet(
      coatplan::sim::SynthConfig{}, 20250809);
  std::ostringstream out;
  write_inspection_csv(synth.dataset, out, {"audit line"});
  const auto reparsed = parse_text(out.str());
  CHECK(reparsed == synth.dataset);
}

TEST_CASE("split by time") {
  const auto ds = parse_text(std::string(kHeader) +
                             "S1,C1,12,1\nS1,C1,24,2\nS1,C1,36,0\n");
  SUBCASE("interior cutoff") {
    const auto [train, test] = split_by_time(ds, 24.0);
    REQUIRE(train.compartments.size() == 1);
    REQUIRE(test.compartments.size() == 1);
    CHECK(train.compartments[0].entries.size() == 2);
    CHECK(test.compartments[0].entries.size() == 1);
    CHECK(test.compartments[0].start_time == 24.0);
    CHECK(test.compartments[0].entries[0].first == 36.0);
  }
  SUBCASE("cutoff beyond all data") {
    const auto [train, test] = split_by_time(ds, 100.0);
    CHECK(train.compartments.size() == 1);
    CHECK(test.compartments.empty());
  }
  SUBCASE("cutoff zero") {
    const auto [train, test] = split_by_time(ds, 0.0);
    CHECK(train.compartments.empty());
    REQUIRE(test.compartments.size() == 1);
    CHECK(test.compartments[0] == ds.compartments[0]);
  }
}

TEST_CASE("split partitions the record multiset") {
  const auto synth = coatplan::sim::synthesize_fleet(
      coatplan::sim::SynthConfig{}, 99);
  const auto [train, test] = split_by_time(synth.dataset, 60.0);
  std::map<std::string, long> counts;
  const auto tally = [&](const FleetDataset& ds, long sign) {
    for (const auto& h : ds.compartments) {
      for (const auto& [t, n] : h.entries) {
        counts[h.unit_id() + "@" + std::to_string(t)] += sign * (n + 1);
      }
    }
  };
  tally(synth.dataset, 1);
  tally(train, -1);
  tally(test, -1);
  for (const auto& [key, v] : counts) CHECK(v == 0);
}

TEST_CASE("defect report histogram") {
  CHECK(defect_report_histogram(FleetDataset{}).empty());

  const auto ds = parse_text(std::string(kHeader) +
                             "S1,C1,12,0\nS1,C2,12,0\nS1,C3,12,2\nS1,C3,24,3\n");
  const auto hist = defect_report_histogram(ds);
  REQUIRE(hist.size() == 2);
  CHECK(hist.at(0) == 2);
  CHECK(hist.at(5) == 1);

  // Independent recount on a synthetic fleet.
  const auto synth = coatplan::sim::synthesize_fleet(
      coatplan::sim::SynthConfig{}, 4711);
  const auto synth_hist = defect_report_histogram(synth.dataset);
  std::map<long, long> recount;
  for (const auto& h : synth.dataset.compartments) {
    long total = 0;
    for (const auto& [t, n] : h.entries) total += n;
    ++recount[total];
  }
  CHECK(synth_hist == recount);
}
