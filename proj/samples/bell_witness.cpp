// Evaluates the witness on a Bell state in the identity frame and in the
// Schmidt frame of a random 3x4 pure state, then searches for the maximal
// violation of a noisy Bell state.

#include <cstdio>
#include <variant>

#include "entwit/entwit.hpp"

int main() {
  using namespace entwit;

  const DensityMatrix bell = DensityMatrix::from_pure(max_entangled(2));
  for (Normalization norm : {Normalization::kTight, Normalization::kLiteral}) {
    const WitnessEvaluation e = evaluate_witness_identity(bell, norm);
    std::printf("Bell, identity frame (%s): h=%g p=%g q=%g w=%g violated=%d\n", to_string(norm),
                e.h_val, e.p_val, e.q_val, e.w_val, e.violated);
  }

  Rng rng = substream(7, 0);
  const PureState psi = random_pure(BipartiteDims(3, 4), rng);
  const ConstructiveResult built = constructive_pure_violation(psi);
  if (const auto* hit = std::get_if<ConstructiveViolation>(&built)) {
    std::printf("random 3x4 pure state, Schmidt frame: w=%g (concurrence %g)\n", hit->eval.w_val,
                concurrence_pure(psi));
  }

  SearchConfig cfg;
  cfg.restarts = 10;
  cfg.seed = 1;
  const DensityMatrix noisy = isotropic_state(2, 0.7);
  const ViolationReport report = max_violation(noisy, cfg);
  std::printf("isotropic f=0.7: F >= %g after %ld evaluations\n", report.f_value,
              report.evaluations);
  return 0;
}
