#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "coatplan/inference.hpp"
#include "coatplan/io_util.hpp"

namespace coatplan::infer {

namespace {

constexpr const char* kBaseHeader = "compartment_id,chain,draw,ln_a,ln_b";
constexpr const char* kHierHeader =
    "compartment_id,chain,draw,ln_a,ln_b,mu_ln_a,sigma_ln_a,mu_ln_b,sigma_ln_b";

}  // namespace

void write_samples_csv(const PosteriorSamples& samples, std::ostream& out,
                       const std::vector<std::string>& comment_lines) {
  for (const auto& c : comment_lines) out << "# " << c << "\n";
  out << (samples.hierarchical ? kHierHeader : kBaseHeader) << "\n";
  for (size_t u = 0; u < samples.unit_ids.size(); ++u) {
    for (int c = 0; c < samples.n_chains; ++c) {
      for (int d = 0; d < samples.draws_per_chain; ++d) {
        const size_t idx = static_cast<size_t>(c) *
                               static_cast<size_t>(samples.draws_per_chain) +
                           static_cast<size_t>(d);
        const LogParams& lp = samples.draws[u][idx];
        out << samples.unit_ids[u] << ',' << c << ',' << d << ','
            << io::format_double(lp.ln_a) << ',' << io::format_double(lp.ln_b);
        if (samples.hierarchical) {
          const HyperDraw& h = samples.hyper_draws[idx];
          out << ',' << io::format_double(h.mu_ln_a) << ','
              << io::format_double(h.sigma_ln_a) << ','
              << io::format_double(h.mu_ln_b) << ','
              << io::format_double(h.sigma_ln_b);
        }
        out << "\n";
      }
    }
  }
}

void save_samples_csv(const PosteriorSamples& samples, const std::string& path,
                      const std::vector<std::string>& comment_lines) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  write_samples_csv(samples, out, comment_lines);
}

PosteriorSamples parse_samples_csv(std::istream& in) {
  PosteriorSamples out;
  std::string line;
  long line_number = 0;
  bool header_seen = false;
  bool hierarchical = false;
  int max_chain = -1;
  int max_draw = -1;
  std::vector<std::string> order;
  std::map<std::string, std::vector<std::pair<LogParams, HyperDraw>>> rows;
  while (std::getline(in, line)) {
    ++line_number;
    line = io::strip_cr(line);
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line == kBaseHeader) {
        hierarchical = false;
      } else if (line == kHierHeader) {
        hierarchical = true;
      } else {
        throw fleet::ParseError("unrecognized samples header", line_number);
      }
      header_seen = true;
      continue;
    }
    const auto f = io::split_csv_line(line);
    const size_t expect = hierarchical ? 9 : 5;
    if (f.size() != expect) {
      throw fleet::ParseError("expected " + std::to_string(expect) +
                                  " fields, got " + std::to_string(f.size()),
                              line_number);
    }
    const std::string& unit = f[0];
    const int chain = static_cast<int>(io::parse_nonneg_long(f[1], "chain"));
    const int draw = static_cast<int>(io::parse_nonneg_long(f[2], "draw"));
    LogParams lp{io::parse_double(f[3], "ln_a"), io::parse_double(f[4], "ln_b")};
    HyperDraw h;
    if (hierarchical) {
      h.mu_ln_a = io::parse_double(f[5], "mu_ln_a");
      h.sigma_ln_a = io::parse_double(f[6], "sigma_ln_a");
      h.mu_ln_b = io::parse_double(f[7], "mu_ln_b");
      h.sigma_ln_b = io::parse_double(f[8], "sigma_ln_b");
    }
    if (rows.find(unit) == rows.end()) order.push_back(unit);
    rows[unit].push_back({lp, h});
    max_chain = std::max(max_chain, chain);
    max_draw = std::max(max_draw, draw);
  }
  out.hierarchical = hierarchical;
  out.n_chains = max_chain + 1;
  out.draws_per_chain = max_draw + 1;
  const size_t expected =
      static_cast<size_t>(out.n_chains) * static_cast<size_t>(out.draws_per_chain);
  for (const auto& unit : order) {
    const auto& v = rows[unit];
    if (v.size() != expected) {
      throw fleet::ParseError("unit '" + unit + "' has " +
                                  std::to_string(v.size()) + " rows, expected " +
                                  std::to_string(expected),
                              0);
    }
    out.unit_ids.push_back(unit);
    std::vector<LogParams> draws(expected);
    for (size_t i = 0; i < expected; ++i) draws[i] = v[i].first;
    out.draws.push_back(std::move(draws));
  }
  if (hierarchical && !order.empty()) {
    out.hyper_draws.resize(expected);
    for (size_t i = 0; i < expected; ++i) {
      out.hyper_draws[i] = rows[order[0]][i].second;
    }
  }
  return out;
}

PosteriorSamples load_samples_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw fleet::ParseError("cannot open '" + path + "'", 0);
  return parse_samples_csv(in);
}

std::string diagnostics_json(const PosteriorSamples& samples) {
  nlohmann::json doc;
  doc["n_chains"] = samples.n_chains;
  doc["draws_per_chain"] = samples.draws_per_chain;
  doc["hierarchical"] = samples.hierarchical;
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [name, d] : samples.diagnostics) {
    nlohmann::json entry;
    entry["rhat"] = d.degenerate ? nlohmann::json() : nlohmann::json(d.rhat);
    entry["ess"] = d.degenerate ? nlohmann::json() : nlohmann::json(d.ess);
    entry["degenerate"] = d.degenerate;
    params[name] = entry;
  }
  doc["parameters"] = params;
  doc["warnings"] = samples.warnings;
  return doc.dump(2);
}

}  // namespace coatplan::infer
