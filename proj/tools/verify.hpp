#pragma once

// Consistency report: recomputes every published number the library can
// check and records PASS / FAIL / DISCREPANCY / INFO against an expected
// status table.

#include <cmath>
#include <initializer_list>
#include <utility>
#include <variant>
#include <string>
#include <vector>

#include <json.hpp>

#include "entwit/entwit.hpp"
#include "entwit/io.hpp"

namespace entwit::verify {

enum class Status { kPass, kFail, kDiscrepancy, kInfo };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::kPass: return "PASS";
    case Status::kFail: return "FAIL";
    case Status::kDiscrepancy: return "DISCREPANCY";
    case Status::kInfo: return "INFO";
  }
  return "?";
}

struct Check {
  std::string id;
  std::string description;
  Status status = Status::kFail;
  Status expected = Status::kPass;
  std::string measured;
  std::string reference;

  bool matches() const { return status == expected; }
};

inline std::vector<double> grid(double lo, double hi, double step) {
  std::vector<double> out;
  const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
  for (long k = 0; k < count; ++k) out.push_back(std::round((lo + k * step) * 1e12) / 1e12);
  return out;
}

inline Status pass_if(bool ok) { return ok ? Status::kPass : Status::kFail; }
inline Status discrepancy_if(bool differs) { return differs ? Status::kDiscrepancy : Status::kPass; }

inline std::vector<Check> run(std::uint64_t seed) {
  using io::format_number;
  std::vector<Check> checks;
  auto add = [&](Check c) { checks.push_back(std::move(c)); };

  // --- Horodecki family and the literal 3x3 inequality --------------------
  {
    double lhs_err = 0.0, rhs_err = 0.0, plus_rhs_gap = 0.0, tight_gap = 0.0;
    bool iff = true, ppt_ranges = true;
    for (double alpha : grid(2.0, 5.0, 0.01)) {
      const DensityMatrix s = horodecki_state(alpha);
      const Eq8Sides sides = horodecki_eq8_sides(s);
      lhs_err = std::max(lhs_err, std::abs(sides.lhs - 900.0 / 49.0));
      const double rhs = (36.0 * (2 * alpha - 5) * (2 * alpha - 5) + 576.0) / 49.0;
      rhs_err = std::max(rhs_err, std::abs(sides.rhs - rhs));
      iff = iff && (sides.violated() == (alpha > 4.0 + 1e-9));
      ppt_ranges = ppt_ranges && (ppt_check(s).is_npt == (alpha > 4.0 + 1e-9));

      // Printed "+ mu2 (x) mu2" variant.
      const ObservableBasis b = build_base_observables(3);
      const Matrix plus = tensor_product(b.mu1, b.mu1) + tensor_product(b.mu2, b.mu2);
      const double e = real_expectation(s.matrix(), plus);
      const Matrix nop = tensor_product(b.lambdas[0], b.lambdas[1]) -
                         tensor_product(b.lambdas[1], b.lambdas[0]) -
                         tensor_product(b.lambdas[1], b.lambdas[2]) +
                         tensor_product(b.lambdas[2], b.lambdas[1]);
      const double en = real_expectation(s.matrix(), nop);
      plus_rhs_gap = std::max(plus_rhs_gap, std::abs(36 * en * en + 81 * e * e - rhs));

      const WitnessEvaluation w = evaluate_witness_identity(s, Normalization::kTight);
      tight_gap = std::max(tight_gap, std::abs((sides.lhs - sides.rhs) - 1296.0 * w.w_val));
    }
    add({"horodecki_eq8_lhs", "3x3 inequality LHS = 900/49 on alpha in 2:5:0.01",
         pass_if(lhs_err <= 1e-9), Status::kPass, "max |err| " + format_number(lhs_err),
         "900/49"});
    add({"horodecki_eq8_rhs", "3x3 inequality RHS = (36(2a-5)^2 + 576)/49",
         pass_if(rhs_err <= 1e-9), Status::kPass, "max |err| " + format_number(rhs_err),
         "36(2a-5)^2/49 + 576/49"});
    add({"horodecki_eq8_iff", "3x3 inequality violated iff alpha > 4", pass_if(iff),
         Status::kPass, iff ? "violation set = (4, 5]" : "mismatch", "alpha > 4"});
    add({"horodecki_ppt_ranges", "sigma_alpha PPT for alpha <= 4, NPT above", pass_if(ppt_ranges),
         Status::kPass, ppt_ranges ? "boundary at 4" : "mismatch", "NPT iff alpha > 4"});
    add({"horodecki_eq8_plus_sign",
         "printed '+ mu2(x)mu2' sign reproduces the stated RHS",
         discrepancy_if(plus_rhs_gap > 1e-9), Status::kDiscrepancy,
         "max |rhs(+) - stated| " + format_number(plus_rhs_gap) +
             "; minus sign reproduces it exactly",
         "576/49 term"});
    add({"eq8_equals_tight_witness",
         "literal 3x3 inequality LHS-RHS = 1296 x tight identity-frame witness",
         pass_if(tight_gap <= 1e-9), Status::kPass, "max gap " + format_number(tight_gap),
         "h^2 >= 81 p^2 + 16 q^2"});
  }

  // --- Pure product closed forms -----------------------------------------
  {
    Rng rng = substream(seed, 101);
    double tight_err = 0.0, literal_err = 0.0;
    for (int t = 0; t < 200; ++t) {
      const int m = 2 + t % 3, n = 2 + (t / 3) % 3;
      const Vector a = haar_random_vector(m, rng), b = haar_random_vector(n, rng);
      const DensityMatrix x = DensityMatrix::from_pure(product_pure(a, b));
      const PureProductForm cf = pure_product_closed_form(a, b);
      for (Normalization nm : {Normalization::kTight, Normalization::kLiteral}) {
        const WitnessEvaluation e = evaluate_witness_identity(x, nm);
        const double err =
            std::max(std::abs(e.h_val - cf.h_val), std::abs(e.h_val * e.h_val - e.w_val - cf.pq_sq));
        double& worst = nm == Normalization::kTight ? tight_err : literal_err;
        worst = std::max(worst, err);
      }
    }
    add({"closed_form_tight", "pure-product closed forms vs matrix evaluation (tight)",
         pass_if(tight_err <= 1e-12), Status::kPass, "max |err| " + format_number(tight_err),
         "agreement within 1e-12"});
    add({"closed_form_literal",
         "pure-product closed forms vs matrix evaluation (literal prefactors)",
         discrepancy_if(literal_err > 1e-12), Status::kDiscrepancy,
         "max |err| " + format_number(literal_err), "closed forms need the tight scaling"});
  }

  // --- Isotropic ------------------------------------------------------------
  {
    double h_err = 0.0, derived_err = 0.0;
    std::string published_match;
    bool threshold = true;
    for (int n : {2, 3, 4}) {
      const double d2 = n * n;
      double published_err_n = 0.0;
      for (double f : grid(0.0, 1.0, 0.05)) {
        const DensityMatrix r = isotropic_state(n, f);
        const WitnessEvaluation lit = evaluate_witness_identity(r, Normalization::kLiteral);
        const WitnessEvaluation tight = evaluate_witness_identity(r, Normalization::kTight);
        h_err = std::max(h_err, std::abs(lit.h_val - (1 - f) / (d2 - 1)));
        derived_err = std::max(derived_err, std::abs(lit.q_val - (d2 * f - 1) / (4 * n * (d2 - 1))));
        published_err_n = std::max(published_err_n, std::abs(lit.q_val - (d2 * f - 1) / (d2 * (d2 - 1))));
        threshold = threshold && (tight.violated == (f > 1.0 / n + 1e-9));
      }
      if (published_err_n <= 1e-12) published_match += (published_match.empty() ? "" : ",") + std::to_string(n);
    }
    add({"isotropic_h", "identity-frame <H> = (1-f)/(n^2-1), n=2,3,4", pass_if(h_err <= 1e-12),
         Status::kPass, "max |err| " + format_number(h_err), "(1-f)/(n^2-1)"});
    add({"isotropic_q_derived", "literal identity-frame <Q> = (n^2 f-1)/(4n(n^2-1))",
         pass_if(derived_err <= 1e-12), Status::kPass, "max |err| " + format_number(derived_err),
         "brute-force matrix evaluation"});
    add({"isotropic_q_published", "literal identity-frame <Q> vs published (n^2 f-1)/(n^2(n^2-1))",
         published_match == "4" ? Status::kDiscrepancy : Status::kFail, Status::kDiscrepancy,
         "matches only for n in {" + published_match + "}", "all n"});
    add({"isotropic_threshold", "tight identity-frame witness violated iff f > 1/n",
         pass_if(threshold), Status::kPass, threshold ? "onset at 1/n" : "mismatch", "f > 1/n"});
  }

  // --- Werner ---------------------------------------------------------------
  {
    bool ppt_iff = true;
    double tight_err = 0.0, literal_err = 0.0, overlap_gap = 0.0, overlap_formula = 0.0;
    bool onset = true;
    for (int n : {2, 3, 4, 5, 6}) {
      const Matrix u = werner_swap_frame(n), v = Matrix::Identity(n, n);
      const Vector psi = max_entangled(n).amplitudes();
      for (double f : grid(-1.0, 1.0, 0.01)) {
        const DensityMatrix r = werner_state(n, f);
        if (n <= 3) ppt_iff = ppt_iff && (ppt_check(r).is_npt == (f < -1e-9));
        const double closed = std::pow((n * f - 1) / (n * n * n - n), 2) -
                              std::pow((f + 1) / (n * (n + 1.0)), 2);
        const WitnessEvaluation t = evaluate_witness(r, u, v, Normalization::kTight);
        const WitnessEvaluation l = evaluate_witness(r, u, v, Normalization::kLiteral);
        tight_err = std::max(tight_err, std::abs(-t.w_val - closed));
        literal_err = std::max(literal_err, std::abs(-l.w_val - closed));
        if (n == 3) onset = onset && (t.violated == (f < -0.2 - 1e-9));
        const double overlap = psi.dot(r.matrix() * psi).real();
        overlap_gap = std::max(overlap_gap, std::abs(overlap - f));
        overlap_formula = std::max(overlap_formula, std::abs(overlap - (1 + f) / (n * (n + 1.0))));
      }
    }
    add({"werner_ppt_iff", "Werner PPT iff f >= 0 (n = 2, 3)", pass_if(ppt_iff), Status::kPass,
         ppt_iff ? "boundary at 0" : "mismatch", "f >= 0"});
    add({"werner_closed_form_tight", "swap-frame violation vs closed form (tight)",
         pass_if(tight_err <= 1e-10), Status::kPass, "max |err| " + format_number(tight_err),
         "((nf-1)/(n^3-n))^2 - ((f+1)/(n(n+1)))^2"});
    add({"werner_closed_form_literal", "swap-frame violation vs closed form (literal prefactors)",
         discrepancy_if(literal_err > 1e-10), Status::kDiscrepancy,
         "max |err| " + format_number(literal_err), "matrix value authoritative"});
    add({"werner_onset_n3", "n = 3 swap-frame violation iff f < -0.2", pass_if(onset),
         Status::kPass, onset ? "onset at -0.2" : "mismatch", "f < -0.2"});
    add({"werner_overlap", "<psi+|rho_wer(f)|psi+> vs f", discrepancy_if(overlap_gap > 1e-12),
         Status::kDiscrepancy,
         "equals (1+f)/(n(n+1)) within " + format_number(overlap_formula), "f"});
    Matrix printed = Matrix::Identity(3, 3);
    printed(0, 0) = 0.0;
    printed(1, 1) = 0.0;
    printed(0, 1) = 2.0;  // |0><1| + |0><1|
    add({"werner_printed_frame", "printed first-subsystem frame is unitary",
         discrepancy_if(unitarity_defect(printed) > tol::kUnitary), Status::kDiscrepancy,
         "defect " + format_number(unitarity_defect(printed)) + "; swap |0><1|+|1><0| used",
         "unitary"});
  }

  // --- Distillation example -------------------------------------------------
  {
    double worst_state = 0.0;
    bool reduction_clean = true, iff = true;
    std::string evals;
    for (double p : grid(0.1, 1.0, 0.1)) {
      const Example4Report r = example4_check(p);
      worst_state = std::min(worst_state, r.state_min_eigenvalue);
      reduction_clean = reduction_clean && !r.reduction.violated;
      iff = iff && (r.eval.violated == r.projected_ppt.is_npt);
      if (evals.empty()) evals = "w " + format_number(r.eval.w_val) + ", projected min eig " +
                                 format_number(r.projected_min_eigenvalue);
    }
    add({"example4_state_psd", "4x4 example state is positive semidefinite for p in 0.1:1:0.1",
         pass_if(worst_state >= -tol::kPsd), Status::kPass,
         "min eigenvalue " + format_number(worst_state), ">= 0"});
    add({"example4_reduction", "reduction criterion does not detect the 4x4 example",
         pass_if(reduction_clean), Status::kPass,
         reduction_clean ? "not violated" : "violated", "not violated"});
    add({"example4_violation_iff_npt",
         "filtered 2x3 operator: witness violation iff NPT (tight, printed frame)", pass_if(iff),
         Status::kPass, evals, "PPT oracle"});
    const auto [u, v] = example4_frame();
    add({"example4_frame_unitary", "printed V is unitary",
         pass_if(unitarity_defect(v) <= 1e-12), Status::kPass,
         "defect " + format_number(unitarity_defect(v)), "<= 1e-12"});
  }

  // --- Pure states ----------------------------------------------------------
  {
    Vector psi = Vector::Zero(4);
    psi(1) = 0.6;
    psi(2) = 0.8;
    const double c = concurrence_pure(PureState::checked(psi, BipartiteDims(2, 2)));
    add({"concurrence_2ab", "C(0.6|01> + 0.8|10>) = 2ab", pass_if(std::abs(c - 0.96) <= 1e-12),
         Status::kPass, format_number(c), "0.96"});

    Rng rng = substream(seed, 202);
    int ok = 0, total = 0;
    for (auto [m, n] : std::initializer_list<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 3}, {4, 3}}) {
      for (int t = 0; t < 50; ++t) {
        const PureState phi = random_pure(BipartiteDims(m, n), rng);
        const ConstructiveResult r = constructive_pure_violation(phi);
        const auto* hit = std::get_if<ConstructiveViolation>(&r);
        ++total;
        ok += hit && hit->eval.w_val < -1e-12;
      }
    }
    add({"constructive_frame", "Schmidt frame violates for random entangled pure states",
         pass_if(ok == total), Status::kPass, std::to_string(ok) + "/" + std::to_string(total),
         "all"});
  }

  // --- Open question probe ----------------------------------------------------
  {
    SearchConfig cfg;
    cfg.seed = seed;
    cfg.restarts = 20;
    std::string found;
    for (double alpha : {4.25, 4.5, 4.75, 5.0}) {
      const ViolationReport r = max_violation(horodecki_state(alpha), cfg);
      found += (found.empty() ? "" : "; ") + format_number(alpha) + ": F>=" +
               format_number(r.f_value);
    }
    add({"horodecki_optimized_probe",
         "optimized witness on sigma_alpha, alpha in (4, 5] (20 restarts)", Status::kInfo,
         Status::kInfo, found, "not established"});
  }
  return checks;
}

inline nlohmann::json to_json(const std::vector<Check>& checks) {
  nlohmann::json arr = nlohmann::json::array();
  bool all = true;
  for (const Check& c : checks) {
    all = all && c.matches();
    arr.push_back({{"id", c.id},
                   {"description", c.description},
                   {"status", to_string(c.status)},
                   {"expected", to_string(c.expected)},
                   {"matches_expectation", c.matches()},
                   {"measured", c.measured},
                   {"reference", c.reference}});
  }
  return {{"checks", arr}, {"all_match", all}};
}

inline std::string to_text(const std::vector<Check>& checks) {
  std::string out;
  for (const Check& c : checks) {
    out += std::string(c.matches() ? "  " : "! ") + to_string(c.status) + "  " + c.id + ": " +
           c.description + " [" + c.measured + "]";
    if (!c.matches()) out += " (expected " + std::string(to_string(c.expected)) + ")";
    out += "\n";
  }
  return out;
}

}  // namespace entwit::verify
