#pragma once

// JSON and CSV point lists, and JSON emission of every report type.
//
//   {"points":[{"re":-3.0,"im":0.0,"mult":1}, ...]}
//   re,im,mult
//   -3,0,1

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "zerodist/analysis.hpp"
#include "zerodist/balance.hpp"
#include "zerodist/errors.hpp"
#include "zerodist/logmeasure.hpp"
#include "zerodist/points.hpp"
#include "zerodist/product.hpp"

namespace zerodist {

/// I/O and parse failures (exit code 2 in the CLI).
class IoError : public Error {
 public:
  using Error::Error;
};

namespace io {

using json = nlohmann::ordered_json;

/// 17 significant digits: enough to reproduce any double bit for bit.
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// JSON has no infinities; they are written as the strings "+inf"/"-inf".
inline json number(double x) {
  if (std::isinf(x)) return x > 0 ? json("+inf") : json("-inf");
  return json(x);
}

inline json to_json(const PointDistribution& d) {
  json pts = json::array();
  for (const auto& e : d.entries()) {
    pts.push_back(json{{"re", e.point.re}, {"im", e.point.im}, {"mult", e.mult}});
  }
  return json{{"points", std::move(pts)}};
}

inline PointDistribution points_from_json(const json& j) {
  if (!j.is_object() || !j.contains("points") || !j["points"].is_array()) {
    throw IoError("io.bad-format", "expected an object with a \"points\" array");
  }
  std::vector<Entry> entries;
  for (const auto& p : j["points"]) {
    if (!p.is_object() || !p.contains("re") || !p.contains("im") || !p["re"].is_number() ||
        !p["im"].is_number()) {
      throw IoError("io.bad-format", "each point needs numeric \"re\" and \"im\"");
    }
    Multiplicity mult = 1;
    if (p.contains("mult")) {
      if (!p["mult"].is_number_integer() || p["mult"].get<long long>() < 1) {
        throw IoError("io.bad-format", "\"mult\" must be a positive integer");
      }
      mult = p["mult"].get<Multiplicity>();
    }
    entries.push_back({{p["re"].get<double>(), p["im"].get<double>()}, mult});
  }
  return PointDistribution(std::move(entries));
}

inline void write_json(std::ostream& os, const PointDistribution& d) { os << to_json(d).dump() << '\n'; }

inline PointDistribution read_json(std::istream& is) {
  json j;
  try {
    j = json::parse(is);
  } catch (const json::parse_error& e) {
    throw IoError("io.parse", e.what());
  }
  return points_from_json(j);
}

inline void write_csv(std::ostream& os, const PointDistribution& d) {
  os << "re,im,mult\n";
  for (const auto& e : d.entries()) {
    os << format_double(e.point.re) << ',' << format_double(e.point.im) << ',' << e.mult << '\n';
  }
}

inline PointDistribution read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw IoError("io.bad-format", "empty CSV input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "re,im,mult") throw IoError("io.bad-format", "CSV header must be re,im,mult");
  std::vector<Entry> entries;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string re_s;
    std::string im_s;
    std::string mult_s;
    if (!std::getline(row, re_s, ',') || !std::getline(row, im_s, ',') || !std::getline(row, mult_s)) {
      throw IoError("io.bad-format", "CSV line " + std::to_string(lineno) + " needs three fields");
    }
    try {
      std::size_t used = 0;
      const double re = std::stod(re_s, &used);
      if (used != re_s.size()) throw std::invalid_argument("re");
      const double im = std::stod(im_s, &used);
      if (used != im_s.size()) throw std::invalid_argument("im");
      const long long mult = std::stoll(mult_s, &used);
      if (used != mult_s.size() || mult < 1) throw std::invalid_argument("mult");
      entries.push_back({{re, im}, static_cast<Multiplicity>(mult)});
    } catch (const std::exception&) {
      throw IoError("io.bad-format", "CSV line " + std::to_string(lineno) + " is malformed");
    }
  }
  return PointDistribution(std::move(entries));
}

/// Reads a point list; the format follows the extension (.csv or JSON otherwise).
inline PointDistribution read_points_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("io.open", "cannot open " + path);
  const bool csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  return csv ? read_csv(in) : read_json(in);
}

inline json to_json(const LindelofDiagnostic& d) {
  json samples = json::array();
  for (const auto& [r, s] : d.samples) samples.push_back(json::array({r, s}));
  return json{{"kind", to_string(d.kind)},
              {"sup_abs", d.sup_abs},
              {"witness_radius", d.witness_radius},
              {"samples", std::move(samples)}};
}

inline json to_json(const BlockCertificate& c) {
  return json{{"k", c.k},
              {"interval", json::array({c.r_lo, c.r_hi})},
              {"axis", to_string(c.axis)},
              {"case", to_string(c.block_case)},
              {"N", c.count},
              {"inserted_at", c.inserted_at},
              {"positive_side", c.positive_side},
              {"negative_side", c.negative_side},
              {"slack", c.slack}};
}

inline json to_json(const BalanceResult& b) {
  json certs = json::array();
  for (const auto& c : b.certificates) certs.push_back(to_json(c));
  return json{{"axis", to_string(b.axis)},
              {"compensator", to_json(b.compensator)},
              {"certificates", std::move(certs)},
              {"diagnostic", to_json(b.diagnostic)}};
}

inline json to_json(const JIntegralResult& j) {
  return json{{"value", j.value},
              {"r", j.r},
              {"R", j.R},
              {"estimated_error", j.estimated_error},
              {"subdivisions", j.subdivisions}};
}

inline json to_json(const DiscrepancyReport& d) {
  json rows = json::array();
  for (std::size_t i = 0; i < d.grid.size(); ++i) {
    rows.push_back(json{{"r", d.grid[i].first},
                        {"R", d.grid[i].second},
                        {"J", d.j_values[i]},
                        {"l_rh", d.l_rh_values[i]},
                        {"l_lh", d.l_lh_values[i]}});
  }
  return json{{"pairs", std::move(rows)},
              {"max_abs_rh", d.max_abs_rh},
              {"max_abs_lh", d.max_abs_lh},
              {"quadrature_error", d.quadrature_error}};
}

inline json to_json(const ExcessProfile& p) {
  json d = json::array();
  for (const auto& [x, v] : p.d_samples) d.push_back(json::array({x, v}));
  return json{{"kind", to_string(p.kind)}, {"eps", p.eps}, {"d_samples", std::move(d)}, {"C", p.C}};
}

inline json to_json(const CriterionReport& c) {
  return json{{"theorem", to_string(c.theorem)},
              {"satisfied_constant", c.satisfied_constant},
              {"witness", json::array({c.witness.first, c.witness.second})},
              {"profile", to_json(c.profile)},
              {"grid_spec", c.grid_spec},
              {"quadrature_error", c.quadrature_error}};
}

inline json to_json(const TypeEstimate& t) {
  return json{{"value", t.value}, {"sample_radii", t.sample_radii}, {"max_ratio_radius", t.max_ratio_radius}};
}

inline json to_json(const std::vector<DominanceViolation>& v) {
  json rows = json::array();
  for (const auto& d : v) rows.push_back(json{{"y", d.y}, {"excess", number(d.excess)}});
  return json{{"holds", v.empty()}, {"violations", std::move(rows)}};
}

}  // namespace io
}  // namespace zerodist
