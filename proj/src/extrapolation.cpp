#include "eplr/extrapolation.hpp"

#include <cmath>
#include <string>

#include "eplr/errors.hpp"

namespace eplr {

namespace {

template <class T>
T triangular(std::span<const T> values, unsigned b, unsigned alpha) {
  if (alpha < 1) throw UsageError("extrapolation order must be >= 1");
  if (values.size() != alpha)
    throw UsageError("extrapolate_chain expects exactly alpha = " + std::to_string(alpha) + " values, got " +
                     std::to_string(values.size()));
  std::vector<T> level(values.begin(), values.end());
  T btau = T(1);
  for (unsigned tau = 1; tau < alpha; ++tau) {
    btau *= T(b);
    // level[i] holds I^(tau) at index i (only i >= tau-1 meaningful)
    for (unsigned i = alpha - 1; i >= tau; --i) level[i] = (btau * level[i] - level[i - 1]) / (btau - T(1));
  }
  return level.back();
}

}  // namespace

std::vector<Rational> richardson_coeffs(unsigned b, unsigned tau) {
  if (b < 2) throw UsageError("extrapolation base must be > 1");
  if (tau < 1) throw UsageError("extrapolation order must be >= 1");
  std::vector<Rational> a(tau);
  for (unsigned nu = 1; nu <= tau; ++nu) {
    Rational v = 1;
    BigInt bj = 1;
    for (unsigned j = 1; j < nu; ++j) {
      bj *= b;
      v *= Rational(-1, bj - 1);
    }
    bj = 1;
    for (unsigned j = 1; j <= tau - nu; ++j) {
      bj *= b;
      v *= Rational(bj, bj - 1);
    }
    a[nu - 1] = v;
  }
  return a;
}

ExtrapolationScheme::ExtrapolationScheme(unsigned base, unsigned order)
    : base_(base), order_(order), coeffs_(richardson_coeffs(base, order)) {
  weights_.reserve(coeffs_.size());
  for (const auto& c : coeffs_) weights_.push_back(to_double(c));
}

double ExtrapolationScheme::max_abs_weight() const {
  double mx = 0.0;
  for (double w : weights_) mx = std::max(mx, std::abs(w));
  return mx;
}

double ExtrapolationScheme::combine(std::span<const double> per_rule) const {
  if (per_rule.size() != order_)
    throw UsageError("scheme of order " + std::to_string(order_) + " needs that many estimates, got " +
                     std::to_string(per_rule.size()));
  long double acc = 0.0L;
  for (unsigned i = 0; i < order_; ++i) acc += static_cast<long double>(weights_[i]) * per_rule[i];
  return static_cast<double>(acc);
}

double extrapolate_chain(std::span<const double> values, unsigned b, unsigned alpha) {
  std::vector<long double> ext(values.begin(), values.end());
  return static_cast<double>(triangular<long double>(ext, b, alpha));
}

Rational extrapolate_chain(std::span<const Rational> values, unsigned b, unsigned alpha) {
  return triangular<Rational>(values, b, alpha);
}

}  // namespace eplr
