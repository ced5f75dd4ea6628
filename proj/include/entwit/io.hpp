#pragma once

// Flat-file formats: state/unitary JSON and the scan CSV.
//
// State JSON:   {"m": 2, "n": 2, "re": [...], "im": [...]}  (row-major)
// Unitary JSON: {"d": 3, "re": [...], "im": [...]}

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "entwit/core.hpp"
#include "entwit/criteria.hpp"
#include "entwit/distill.hpp"
#include "entwit/qstate.hpp"
#include "entwit/search.hpp"
#include "entwit/witness.hpp"

namespace entwit::io {

using nlohmann::json;

// Shortest representation that round-trips, capped at 15 significant digits.
inline std::string format_number(double x) {
  if (x == 0.0) return "0";
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  char buf[64];
  for (int precision = 1; precision <= 15; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, x);
    if (std::strtod(buf, nullptr) == x) return buf;
  }
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

inline json matrix_to_json(const Matrix& a) {
  std::vector<double> re, im;
  re.reserve(a.size());
  im.reserve(a.size());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      re.push_back(a(r, c).real());
      im.push_back(a(r, c).imag());
    }
  return {{"re", re}, {"im", im}};
}

inline Matrix matrix_from_json(const json& j, Eigen::Index rows, Eigen::Index cols) {
  const auto re = j.at("re").get<std::vector<double>>();
  const std::vector<double> im =
      j.contains("im") ? j.at("im").get<std::vector<double>>() : std::vector<double>(re.size(), 0.0);
  const auto expected = static_cast<std::size_t>(rows * cols);
  if (re.size() != expected || im.size() != expected) {
    throw Error(ErrorCode::kDimension, "expected " + std::to_string(expected) +
                                           " entries in re/im, got " + std::to_string(re.size()) +
                                           "/" + std::to_string(im.size()));
  }
  Matrix a(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto k = static_cast<std::size_t>(r * cols + c);
      a(r, c) = Complex(re[k], im[k]);
    }
  return a;
}

inline json state_to_json(const Matrix& rho, const BipartiteDims& dims) {
  json j = matrix_to_json(rho);
  j["m"] = dims.m;
  j["n"] = dims.n;
  return j;
}

struct RawState {
  Matrix rho;
  BipartiteDims dims;
};

// Reads the entries without checking the density-matrix invariants; a
// side-length mismatch is reported as DIMENSION.
inline RawState raw_state_from_json(const json& j) {
  const BipartiteDims dims(j.at("m").get<int>(), j.at("n").get<int>());
  const auto count = j.at("re").size();
  const auto side = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(count))));
  if (static_cast<std::size_t>(side * side) != count) {
    throw Error(ErrorCode::kDimension, "re has " + std::to_string(count) + " entries, not a square");
  }
  return {matrix_from_json(j, side, side), dims};
}

inline json unitary_to_json(const Matrix& u) {
  json j = matrix_to_json(u);
  j["d"] = u.rows();
  return j;
}

inline Matrix unitary_from_json(const json& j) {
  const int d = j.at("d").get<int>();
  Matrix u = matrix_from_json(j, d, d);
  const double defect = unitarity_defect(u);
  if (defect > tol::kUnitary) throw Error(ErrorCode::kUnitarity, "frame is not unitary", defect);
  return u;
}

// ---------------------------------------------------------------------------
// Result serialization

inline json to_json(const WitnessEvaluation& e) {
  return {{"h", e.h_val}, {"p", e.p_val}, {"q", e.q_val}, {"w", e.w_val}, {"violated", e.violated}};
}

inline json to_json(const PptResult& r) {
  return {{"min_eigenvalue", r.min_eigenvalue}, {"npt", r.is_npt}};
}

inline json to_json(const ReductionResult& r) {
  return {{"min_eig_a", r.min_eig_a}, {"min_eig_b", r.min_eig_b}, {"violated", r.violated}};
}

inline json to_json(const ViolationReport& r) {
  return {{"f_value", r.f_value},
          {"best_eval", to_json(r.best_eval)},
          {"best_u", unitary_to_json(r.best_u)},
          {"best_v", unitary_to_json(r.best_v)},
          {"restarts_run", r.restarts_run},
          {"evaluations", r.evaluations},
          {"converged_restarts", r.converged_restarts},
          {"best_restart", r.best_restart},
          {"lower_bound", true}};
}

inline json to_json(const DistillReport& r) {
  json j = {{"n_copies", r.n_copies},
            {"filters_tried", r.filters_tried},
            {"best_filter", r.best_filter},
            {"distillable_evidence", r.distillable_evidence},
            {"verdict", r.distillable_evidence ? "evidence found" : "no evidence found at this budget"}};
  if (r.best_filter >= 0) {
    j["filter_a"] = matrix_to_json(r.filter.a);
    j["filter_b"] = matrix_to_json(r.filter.b);
    j["projected_state"] = state_to_json(r.projected_state->matrix(), r.projected_state->dims());
    j["projected_ppt"] = to_json(ppt_check(*r.projected_state));
    j["search"] = to_json(r.search);
  }
  return j;
}

inline json to_json(const Example4Report& r) {
  return {{"p", r.p},
          {"state_min_eigenvalue", r.state_min_eigenvalue},
          {"state_valid", r.state_valid},
          {"projected_min_eigenvalue", r.projected_min_eigenvalue},
          {"projected_valid", r.projected_valid},
          {"projected_state", state_to_json(r.projected, BipartiteDims(2, 3))},
          {"eval", to_json(r.eval)},
          {"projected_ppt", to_json(r.projected_ppt)},
          {"reduction", to_json(r.reduction)},
          {"distillable_evidence", r.distillable_evidence}};
}

// ---------------------------------------------------------------------------
// Scan CSV

struct ScanRow {
  std::string family;
  int m = 0;
  int n = 0;
  double param = 0.0;
  WitnessEvaluation eval;
  std::optional<double> f_value;  // with --optimize
  PptResult ppt;
  std::optional<Eq8Sides> eq8;    // 3x3 literal inequality, with --eq8
};

inline constexpr const char* kScanHeader =
    "family,m,n,param,h,p,q,w,violation,f_value,ppt_min_eig,violated,npt,eq8_lhs,eq8_rhs,"
    "eq8_violated";

inline std::string to_csv(const ScanRow& row) {
  auto num = [](double x) { return format_number(x); };
  auto flag = [](bool b) { return std::string(b ? "1" : "0"); };
  const bool violated = row.f_value ? *row.f_value > tol::kViolation : row.eval.violated;
  std::string s = row.family + "," + std::to_string(row.m) + "," + std::to_string(row.n) + "," +
                  num(row.param) + "," + num(row.eval.h_val) + "," + num(row.eval.p_val) + "," +
                  num(row.eval.q_val) + "," + num(row.eval.w_val) + "," +
                  num(std::max(-row.eval.w_val, 0.0)) + "," +
                  (row.f_value ? num(*row.f_value) : "") + "," + num(row.ppt.min_eigenvalue) +
                  "," + flag(violated) + "," + flag(row.ppt.is_npt) + ",";
  if (row.eq8) {
    s += num(row.eq8->lhs) + "," + num(row.eq8->rhs) + "," + flag(row.eq8->violated());
  } else {
    s += ",,";
  }
  return s;
}

}  // namespace entwit::io
