#include "coatplan/fleet_data.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "coatplan/io_util.hpp"

namespace coatplan::fleet {

namespace {

constexpr const char* kHeader =
    "ship_id,compartment_id,inspection_time_months,defect_count";

void validate_history(const CompartmentHistory& h) {
  double prev = h.start_time;
  for (const auto& [t, n] : h.entries) {
    if (!(t > prev)) {
      throw ParseError("inspection times not strictly increasing for " +
                           h.unit_id(),
                       0);
    }
    if (n < 0) {
      throw ParseError("negative defect count for " + h.unit_id(), 0);
    }
    prev = t;
  }
}

FleetDataset group_records(std::vector<InspectionRecord> records) {
  // Stable grouping: records keep file order within a compartment, and
  // compartments sort by id so every downstream walk is deterministic.
  std::stable_sort(records.begin(), records.end(),
                   [](const InspectionRecord& a, const InspectionRecord& b) {
                     if (a.ship_id != b.ship_id) return a.ship_id < b.ship_id;
                     return a.compartment_id < b.compartment_id;
                   });
  FleetDataset out;
  for (const auto& r : records) {
    if (out.compartments.empty() ||
        out.compartments.back().ship_id != r.ship_id ||
        out.compartments.back().compartment_id != r.compartment_id) {
      CompartmentHistory h;
      h.ship_id = r.ship_id;
      h.compartment_id = r.compartment_id;
      out.compartments.push_back(std::move(h));
    }
    auto& h = out.compartments.back();
    if (!h.entries.empty() && h.entries.back().first == r.time_months) {
      throw ParseError("duplicate inspection time for " + h.unit_id() + " at " +
                           io::format_double(r.time_months),
                       0);
    }
    h.entries.emplace_back(r.time_months, r.defect_count);
  }
  for (const auto& h : out.compartments) validate_history(h);
  return out;
}

}  // namespace

ParseError::ParseError(std::string message, long line_number)
    : std::runtime_error(line_number > 0
                             ? message + " (line " +
                                   std::to_string(line_number) + ")"
                             : std::move(message)),
      line(line_number) {}

long CompartmentHistory::total_defects() const {
  long total = 0;
  for (const auto& [t, n] : entries) total += n;
  return total;
}

long FleetDataset::n_records() const {
  long total = 0;
  for (const auto& h : compartments) {
    total += static_cast<long>(h.entries.size());
  }
  return total;
}

const CompartmentHistory* FleetDataset::find(
    const std::string& ship_id, const std::string& compartment_id) const {
  for (const auto& h : compartments) {
    if (h.ship_id == ship_id && h.compartment_id == compartment_id) return &h;
  }
  return nullptr;
}

FleetDataset parse_inspection_csv(std::istream& in) {
  std::vector<InspectionRecord> records;
  std::string line;
  long line_number = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_number;
    line = io::strip_cr(line);
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != kHeader) {
        throw ParseError(std::string("expected header '") + kHeader + "'",
                         line_number);
      }
      header_seen = true;
      continue;
    }
    const auto fields = io::split_csv_line(line);
    if (fields.size() != 4) {
      throw ParseError("expected 4 fields, got " +
                           std::to_string(fields.size()),
                       line_number);
    }
    InspectionRecord r;
    r.ship_id = fields[0];
    r.compartment_id = fields[1];
    if (r.ship_id.empty() || r.compartment_id.empty()) {
      throw ParseError("empty ship or compartment id", line_number);
    }
    try {
      r.time_months = io::parse_double(fields[2], "inspection_time_months");
      r.defect_count = io::parse_nonneg_long(fields[3], "defect_count");
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), line_number);
    }
    if (r.time_months < 0.0) {
      throw ParseError("inspection_time_months must be >= 0", line_number);
    }
    records.push_back(std::move(r));
  }
  if (!header_seen && line_number > 0) {
    // Only comments/blank lines seen: treat as empty data section.
  }
  return group_records(std::move(records));
}

FleetDataset load_inspection_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  return parse_inspection_csv(in);
}

void write_inspection_csv(const FleetDataset& dataset, std::ostream& out,
                          const std::vector<std::string>& comment_lines) {
  for (const auto& c : comment_lines) out << "# " << c << "\n";
  out << kHeader << "\n";
  for (const auto& h : dataset.compartments) {
    for (const auto& [t, n] : h.entries) {
      out << h.ship_id << ',' << h.compartment_id << ','
          << io::format_double(t) << ',' << n << "\n";
    }
  }
}

void save_inspection_csv(const FleetDataset& dataset, const std::string& path,
                         const std::vector<std::string>& comment_lines) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  write_inspection_csv(dataset, out, comment_lines);
}

FleetDataset make_dataset(const std::vector<InspectionRecord>& records) {
  return group_records(records);
}

std::pair<FleetDataset, FleetDataset> split_by_time(const FleetDataset& dataset,
                                                    double cutoff) {
  FleetDataset train;
  FleetDataset test;
  for (const auto& h : dataset.compartments) {
    CompartmentHistory tr = h;
    CompartmentHistory te = h;
    tr.entries.clear();
    te.entries.clear();
    double last_train_time = h.start_time;
    for (const auto& e : h.entries) {
      if (e.first <= cutoff) {
        tr.entries.push_back(e);
        last_train_time = e.first;
      } else {
        te.entries.push_back(e);
      }
    }
    te.start_time = last_train_time;
    if (!tr.entries.empty()) train.compartments.push_back(std::move(tr));
    if (!te.entries.empty()) test.compartments.push_back(std::move(te));
  }
  return {std::move(train), std::move(test)};
}

std::map<long, long> defect_report_histogram(const FleetDataset& dataset) {
  std::map<long, long> hist;
  for (const auto& h : dataset.compartments) {
    ++hist[h.total_defects()];
  }
  return hist;
}

}  // namespace coatplan::fleet
