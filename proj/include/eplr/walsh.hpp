#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "eplr/gf_poly.hpp"
#include "eplr/rational.hpp"

namespace eplr {

/// Product weights gamma_1..gamma_s with smoothness alpha, base b, the
/// Walsh-coefficient constant C_alpha and the Hoelder conjugate q'.
struct WeightModel {
  std::vector<double> gamma;
  unsigned alpha = 2;
  unsigned base = 2;
  double c_alpha = 1.0;
  double q_conj = std::numeric_limits<double>::infinity();

  /// Throws UsageError unless alpha >= 2, b prime, all weights >= 0,
  /// c_alpha > 0 and at least `dims` weights are present.
  void validate(std::size_t dims = 0) const;
};

/// Weights gamma_u for every subset u of {1..s}, indexed by bit mask
/// (bit j-1 set iff j in u). Only used at tiny s.
struct GeneralWeights {
  std::size_t s = 0;
  std::vector<double> by_mask;

  static GeneralWeights from_product(std::span<const double> gamma);
  double operator()(std::uint32_t mask) const { return by_mask.at(mask); }
};

/// mu_alpha(k): sum of the alpha largest digit positions of k (1-based).
unsigned mu_alpha(std::uint64_t k, unsigned alpha, unsigned b);

/// b-adic digits xi_1..xi_n of a / b^n.
std::vector<Digit> fraction_digits(std::uint64_t a, unsigned n, unsigned b);

/// k-th Walsh function at the point with b-adic digits x_digits.
std::complex<double> wal(std::uint64_t k, std::span<const Digit> x_digits, unsigned b);

/// Integer exponent e with wal_k(x) = omega_b^e, reduced mod b.
unsigned wal_exponent(std::uint64_t k, std::span<const Digit> x_digits, unsigned b);

/// w_alpha(a / b^m) = sum_{k >= 1} b^{-mu_alpha(k)} wal_k(a / b^m).
///
/// Evaluated in closed form in O(alpha^2 m): Walsh indices are grouped by
/// the set of positions carrying a nonzero digit. Digit values sum to
/// b-1 or -1 per position, and positions beyond m are summed as
/// distinct-part series. The result is exact up to rounding; tol only has
/// to be positive.
double w_alpha_at(std::uint64_t a, unsigned m, unsigned alpha, unsigned b, double tol = 1e-12);
double w_alpha_at(std::uint64_t a, unsigned m, const WeightModel& model, double tol = 1e-12);

/// w_alpha(a / b^m) for all a in [0, b^m).
std::vector<double> w_alpha_grid(unsigned m, unsigned alpha, unsigned b);

/// Closed form of sum_{k >= 1} b^{-lambda mu_alpha(k)}; needs 1/alpha < lambda <= 1.
double E_alpha_lambda(unsigned alpha, double lambda, unsigned b);

/// sum_{0 <= k < b^K} b^{-lambda mu_alpha(k)} via the recursion on the
/// position of the leading digit (so the k = 0 term is included).
long double mu_series_prefix(unsigned alpha, long double lambda, unsigned b, unsigned K);

/// b_tau(x) = B_tau(x) / tau! with exact rational coefficients.
struct BernoulliPoly {
  unsigned degree = 0;
  std::vector<Rational> coeffs;  // low degree first

  Rational constant() const { return coeffs.front(); }
  Rational operator()(const Rational& x) const;
  double operator()(double x) const;
};

BernoulliPoly bernoulli_b(unsigned tau);

/// The Walsh-coefficient constant as given for general prime b.
double C_alpha_default(unsigned alpha, unsigned b);

/// sup_{x in [0,1)} |b_alpha(x)|.
double sup_bernoulli_abs(unsigned alpha);

/// max(|b_1|, ..., |b_{alpha-1}|, sup |b_alpha|); supports 2 <= alpha <= 10.
double D_alpha(unsigned alpha);

/// prod_j (1 + gamma_j (alpha+1)^{1/q'} D_alpha) over the first s weights.
double H_product(const WeightModel& model, std::size_t s);

/// Upper bound on the dual-lattice criterion of a CBC-constructed rule.
double cbc_bound(const WeightModel& model, std::size_t s, unsigned m, double lambda);

/// Existence bound with product weights.
double existence_bound(const WeightModel& model, std::size_t s, unsigned m, double lambda);

/// Existence bound with general weights (alpha, base, c_alpha from model).
double existence_bound(const GeneralWeights& weights, const WeightModel& model, unsigned m, double lambda);

}  // namespace eplr
