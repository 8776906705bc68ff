#pragma once

#include <chrono>
#include <cstdint>
#include <vector>

#include "eplr/pointset.hpp"
#include "eplr/walsh.hpp"

namespace eplr {

/// Outcome of a generating-vector construction.
struct CriterionReport {
  LatticeRule rule;
  /// B-tilde of the full vector (equals per_dimension.back()).
  double criterion = 0.0;
  /// B-tilde of each prefix (q_1..q_d), d = 1..s.
  std::vector<double> per_dimension;
  /// Difference in B-tilde between the selected candidate and the runner-up,
  /// per dimension (infinity where there was no choice).
  std::vector<double> selection_gap;
  /// cbc_bound(model, s, m, bound_lambda).
  double bound = 0.0;
  double bound_lambda = 1.0;
  std::chrono::duration<double> wall_time{0.0};
};

/// -1 + b^{-m} sum_n prod_j [1 + gamma_j C w_alpha(x_{n,j})], the point-sum
/// form of the criterion.
double criterion_pointwise(const LatticeRule& rule, const WeightModel& model, double tol = 1e-12);

/// Same criterion with general weights gamma_u (s <= 20).
double criterion_pointwise(const LatticeRule& rule, const GeneralWeights& weights, const WeightModel& model);

/// The generating-vector independent part of B-tilde: the contribution of
/// frequencies with b^m | k_j for all j, prod_j (1 + gamma_j C sigma_m) - 1.
double criterion_grid_term(const WeightModel& model, std::size_t s, unsigned m);

struct DualSum {
  double value = 0.0;
  double tail_bound = 0.0;
};

/// Explicit dual-lattice sum: over nonempty u and k_u in the dual with some
/// b^m not dividing k_j, of gamma_u C^|u| b^{-mu_alpha(k_u)}, restricted to
/// k_j < b^digits; tail_bound bounds everything left out.
///
/// Computed as a convolution over the additive group of F_b[x]/p: the dual
/// condition sum_j tr_m(k_j) q_j = 0 only sees k_j mod b^m.
DualSum criterion_dual_oracle(const LatticeRule& rule, const WeightModel& model, unsigned digits);

/// The same sum for every prefix (q_1..q_d), d = 1..s, from one pass.
std::vector<DualSum> criterion_dual_oracle_prefixes(const LatticeRule& rule, const WeightModel& model,
                                                    unsigned digits);

/// Budgets for the dual oracle.
inline constexpr std::uint64_t kDualEnumerationBudget = std::uint64_t{1} << 28;
inline constexpr std::uint64_t kDualConvolutionBudget = std::uint64_t{1} << 33;

/// Component-by-component construction by direct summation of the
/// criterion for every candidate g^z, z = 1..b^m-1 (test oracle).
CriterionReport cbc_slow(unsigned b, unsigned m, std::size_t s, const WeightModel& model);

/// Fast CBC: every candidate evaluated at once by one circulant product of
/// length b^m - 1 per dimension.
CriterionReport cbc_fast(unsigned b, unsigned m, std::size_t s, const WeightModel& model);
CriterionReport cbc_fast(const GFPoly& modulus, std::size_t s, const WeightModel& model);

/// Global minimizer of B-tilde over all (b^m - 1)^s generating vectors.
CriterionReport exhaustive_best(unsigned b, unsigned m, std::size_t s, const WeightModel& model);
CriterionReport exhaustive_best(unsigned b, unsigned m, const GeneralWeights& weights, const WeightModel& model);

inline constexpr std::uint64_t kExhaustiveBudget = 1'000'000;

/// Relative tolerance for "strictly smaller" in candidate scans.
inline constexpr double kTieTolerance = 1e-12;

}  // namespace eplr
