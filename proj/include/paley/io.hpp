#pragma once

#include <cstdint>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "paley/bounds.hpp"
#include "paley/error.hpp"
#include "paley/experiments.hpp"
#include "paley/frame.hpp"

namespace paley::io {

using Json = nlohmann::ordered_json;

/// 17 significant digits; round-trips every double.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

inline Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json frame_to_json(const PaleyFrame& f) {
  return Json{{"p", f.p.value()},
              {"shape", Json::array({f.num_rows(), f.num_cols()})},
              {"rows", f.rows},
              {"entries", matrix_to_json(f.entries)}};
}

inline Json gram_to_json(const GramMatrix& g, const SupportSet& support) {
  return Json{{"p", support.prime().value()},
              {"support", support.indices()},
              {"entries", matrix_to_json(g.entries())}};
}

template <typename T>
Json optional_to_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

inline Json bound_report_to_json(const BoundReport& r, const std::vector<SparsityThreshold>& sparsity) {
  Json bounds{{"gershgorin", r.gershgorin},
              {"skew_cot", r.skew_cot},
              {"skew_linear", r.skew_linear},
              {"dembo_recursive", optional_to_json(r.dembo_recursive)},
              {"generalized_dembo", optional_to_json(r.generalized_dembo)}};
  Json table = Json::array();
  for (const auto& s : sparsity) {
    table.push_back(Json{{"family", std::string(to_string(s.family))},
                         {"largest_even_sparsity", s.largest_even},
                         {"printed_threshold", optional_to_json(s.printed_threshold)}});
  }
  return Json{{"p", r.p},
              {"k", r.k},
              {"paley_prime", r.paley_prime},
              {"bounds", std::move(bounds)},
              {"best", r.best()},
              {"conditional",
               {{"conjectural", optional_to_json(r.conjectural)},
                {"beta", r.beta},
                {"note", "valid only if the quadratic-residue conjecture holds"}}},
              {"max_sparsity", std::move(table)},
              {"empirical_lower", optional_to_json(r.empirical_lower)}};
}

// ripcurve

struct RipCurveRow {
  std::int64_t j;
  double d;
  double gershgorin;
  double skew_linear;
  std::optional<double> dembo_recursive;
  std::optional<double> generalized_dembo;
};

inline constexpr const char* kRipCurveHeader = "j,d,gershgorin,skew_linear,dembo_recursive,generalized_dembo";

inline std::vector<RipCurveRow> ripcurve_rows(const RipEstimate& est) {
  const OddPrime p(est.p);
  std::vector<RipCurveRow> rows;
  for (std::size_t idx = 0; idx < est.d.size(); ++idx) {
    const auto j = static_cast<std::int64_t>(idx + 1);
    rows.push_back({j, est.d[idx], bound_gershgorin(j, p), bound_skew(j, p, false),
                    bound_value(BoundFamily::DemboRecursive, j, p),
                    bound_value(BoundFamily::GeneralizedDembo, j, p)});
  }
  return rows;
}

inline std::string optional_cell(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

inline void write_ripcurve_csv(std::ostream& os, const std::vector<RipCurveRow>& rows) {
  os << kRipCurveHeader << '\n';
  for (const auto& r : rows) {
    os << r.j << ',' << format_double(r.d) << ',' << format_double(r.gershgorin) << ','
       << format_double(r.skew_linear) << ',' << optional_cell(r.dembo_recursive) << ','
       << optional_cell(r.generalized_dembo) << '\n';
  }
}

inline Json ripcurve_to_json(const std::vector<RipCurveRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    out.push_back(Json{{"j", r.j},
                       {"d", r.d},
                       {"gershgorin", r.gershgorin},
                       {"skew_linear", r.skew_linear},
                       {"dembo_recursive", optional_to_json(r.dembo_recursive)},
                       {"generalized_dembo", optional_to_json(r.generalized_dembo)}});
  }
  return out;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

inline double parse_double_cell(const std::string& s, std::size_t line_no) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    fail(ErrorCode::MalformedInput, "line " + std::to_string(line_no) + ": bad number '" + s + "'");
  }
  return v;
}

inline std::optional<double> parse_optional_cell(const std::string& s, std::size_t line_no) {
  if (s.empty()) return std::nullopt;
  return parse_double_cell(s, line_no);
}

/// Reads a ripcurve CSV; rows must carry j = 1, 2, … in order.
inline std::vector<RipCurveRow> read_ripcurve_csv(std::istream& is) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(is, line)) fail(ErrorCode::MalformedInput, "empty ripcurve input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kRipCurveHeader) fail(ErrorCode::MalformedInput, "ripcurve header mismatch");
  std::vector<RipCurveRow> rows;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 6) {
      fail(ErrorCode::MalformedInput, "line " + std::to_string(line_no) + ": expected 6 fields");
    }
    const double j = parse_double_cell(cells[0], line_no);
    if (j != static_cast<double>(rows.size() + 1)) {
      fail(ErrorCode::MalformedInput, "line " + std::to_string(line_no) + ": j out of sequence");
    }
    rows.push_back({static_cast<std::int64_t>(j), parse_double_cell(cells[1], line_no),
                    parse_double_cell(cells[2], line_no), parse_double_cell(cells[3], line_no),
                    parse_optional_cell(cells[4], line_no), parse_optional_cell(cells[5], line_no)});
  }
  if (rows.empty()) fail(ErrorCode::MalformedInput, "ripcurve has no rows");
  return rows;
}

inline std::vector<RipCurveRow> ripcurve_from_json(const Json& doc) {
  std::vector<RipCurveRow> rows;
  auto opt = [](const Json& v) -> std::optional<double> {
    if (v.is_null()) return std::nullopt;
    return v.get<double>();
  };
  try {
    for (const auto& r : doc) {
      rows.push_back({r.at("j").get<std::int64_t>(), r.at("d").get<double>(),
                      r.at("gershgorin").get<double>(), r.at("skew_linear").get<double>(),
                      opt(r.at("dembo_recursive")), opt(r.at("generalized_dembo"))});
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::MalformedInput, std::string("ripcurve JSON: ") + e.what());
  }
  return rows;
}

inline std::vector<double> d_column(const std::vector<RipCurveRow>& rows) {
  std::vector<double> d;
  d.reserve(rows.size());
  for (const auto& r : rows) d.push_back(r.d);
  return d;
}

// demboratio

inline constexpr const char* kDemboRatioHeader =
    "j,lambda_max,dembo_bound,gershgorin_bound,dembo_ratio,gershgorin_ratio";

inline void write_demboratio_csv(std::ostream& os, const std::vector<DemboRatioRow>& rows) {
  os << kDemboRatioHeader << '\n';
  for (const auto& r : rows) {
    os << r.j << ',' << format_double(r.lambda_max) << ',' << format_double(r.dembo_bound) << ','
       << format_double(r.gershgorin_bound) << ',' << format_double(r.dembo_ratio) << ','
       << format_double(r.gershgorin_ratio) << '\n';
  }
}

inline Json demboratio_to_json(const std::vector<DemboRatioRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    out.push_back(Json{{"j", r.j},
                       {"lambda_max", r.lambda_max},
                       {"dembo_bound", r.dembo_bound},
                       {"gershgorin_bound", r.gershgorin_bound},
                       {"dembo_ratio", r.dembo_ratio},
                       {"gershgorin_ratio", r.gershgorin_ratio}});
  }
  return out;
}

// conjecture

inline constexpr const char* kConjectureHeader = "trial,k,best_i,best_j,ratio,satisfied";

inline void write_conjecture_csv(std::ostream& os, const ConjectureScan& scan) {
  os << kConjectureHeader << '\n';
  for (std::size_t t = 0; t < scan.records.size(); ++t) {
    const auto& r = scan.records[t];
    os << t << ',' << r.support.size() << ',' << r.i << ',' << r.j << ',' << format_double(r.ratio)
       << ',' << (r.satisfied ? "true" : "false") << '\n';
  }
}

inline Json record_to_json(const ConjectureRecord& r) {
  return Json{{"p", r.p},
              {"support", r.support},
              {"best_i", r.i},
              {"best_j", r.j},
              {"r_i", r.support.at(r.i)},
              {"r_j", r.support.at(r.j)},
              {"numerator", r.numerator},
              {"denominator", r.support.size() - 2},
              {"ratio", r.ratio},
              {"alpha", r.alpha},
              {"satisfied", r.satisfied},
              {"zero_terms", r.zero_terms}};
}

inline Json scan_summary_to_json(const ConjectureScan& scan) {
  return Json{{"trials", scan.records.size()},
              {"fraction_satisfied", scan.fraction_satisfied},
              {"worst_best_ratio", scan.worst_ratio},
              {"worst_trial", scan.worst_trial},
              {"worst_support", scan.worst_support}};
}

inline Json scan_to_json(const ConjectureScan& scan) {
  Json rows = Json::array();
  for (std::size_t t = 0; t < scan.records.size(); ++t) {
    const auto& r = scan.records[t];
    rows.push_back(Json{{"trial", t},
                        {"k", r.support.size()},
                        {"best_i", r.i},
                        {"best_j", r.j},
                        {"ratio", r.ratio},
                        {"satisfied", r.satisfied}});
  }
  return Json{{"summary", scan_summary_to_json(scan)}, {"rows", std::move(rows)}};
}

}  // namespace paley::io
