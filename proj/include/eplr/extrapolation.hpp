#pragma once

#include <span>
#include <vector>

#include "eplr/rational.hpp"

namespace eplr {

/// a_nu^(tau), nu = 1..tau, as exact rationals: the weights with which
/// I_n, I_{n-1}, ..., I_{n-tau+1} enter the order-tau extrapolated value.
std::vector<Rational> richardson_coeffs(unsigned b, unsigned tau);

/// Richardson extrapolation over geometric sizes b^n.
class ExtrapolationScheme {
 public:
  ExtrapolationScheme(unsigned base, unsigned order);

  unsigned base() const { return base_; }
  unsigned order() const { return order_; }
  /// coeffs()[tau-1] = a_tau^(alpha), applied to the rule of size b^{m-tau+1}.
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  const std::vector<double>& weights() const { return weights_; }
  /// max_tau |a_tau|, i.e. the constant inflation of the error bound.
  double max_abs_weight() const;

  /// per_rule[tau-1] is the estimate from size b^{m-tau+1} (largest first).
  double combine(std::span<const double> per_rule) const;

 private:
  unsigned base_;
  unsigned order_;
  std::vector<Rational> coeffs_;
  std::vector<double> weights_;
};

/// Triangular recursion I^(tau+1)_n = (b^tau I^(tau)_n - I^(tau)_{n-1}) / (b^tau - 1)
/// applied to values I_{m-alpha+1}, ..., I_m (ascending size); returns I^(alpha)_m.
double extrapolate_chain(std::span<const double> values, unsigned b, unsigned alpha);
Rational extrapolate_chain(std::span<const Rational> values, unsigned b, unsigned alpha);

}  // namespace eplr
