#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace coatplan::fleet {

/// One inspection report row: defects found in (previous inspection, time].
struct InspectionRecord {
  std::string ship_id;
  std::string compartment_id;
  double time_months = 0.0;
  long defect_count = 0;
};

/// Interval-censored inspection history of one compartment. Entries are
/// (inspection time, defects found since the previous inspection), with
/// the first interval opening at start_time (launch, or the split cutoff
/// for held-out data).
struct CompartmentHistory {
  std::string ship_id;
  std::string compartment_id;
  double start_time = 0.0;
  std::vector<std::pair<double, long>> entries;
  std::optional<std::string> group;

  long total_defects() const;
  std::string unit_id() const { return ship_id + "/" + compartment_id; }
  bool operator==(const CompartmentHistory&) const = default;
};

struct FleetDataset {
  /// Sorted by (ship_id, compartment_id); pairs unique.
  std::vector<CompartmentHistory> compartments;

  long n_records() const;
  const CompartmentHistory* find(const std::string& ship_id,
                                 const std::string& compartment_id) const;
  bool operator==(const FleetDataset&) const = default;
};

/// Thrown on malformed rows or invariant violations; carries the 1-based
/// line number when one applies.
struct ParseError : std::runtime_error {
  long line = 0;
  ParseError(std::string message, long line_number);
};

/// CSV format: header `ship_id,compartment_id,inspection_time_months,defect_count`,
/// `#` comment lines ignored, zero-count inspections included.
FleetDataset parse_inspection_csv(std::istream& in);
FleetDataset load_inspection_csv(const std::string& path);
void write_inspection_csv(const FleetDataset& dataset, std::ostream& out,
                          const std::vector<std::string>& comment_lines = {});
void save_inspection_csv(const FleetDataset& dataset, const std::string& path,
                         const std::vector<std::string>& comment_lines = {});

/// Builds a dataset from loose records (validates and sorts).
FleetDataset make_dataset(const std::vector<InspectionRecord>& records);

/// Splits each history at the cutoff: entries with time <= cutoff go to
/// train; the rest to test, whose first interval opens at the compartment's
/// last training inspection time. Compartments left empty on a side are
/// dropped from that side.
std::pair<FleetDataset, FleetDataset> split_by_time(const FleetDataset& dataset,
                                                    double cutoff);

/// Number of compartments per total-reported-defect count.
std::map<long, long> defect_report_histogram(const FleetDataset& dataset);

}  // namespace coatplan::fleet
