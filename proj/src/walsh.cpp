#include "eplr/walsh.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "eplr/errors.hpp"

namespace eplr {

namespace {

void check_lambda(unsigned alpha, double lambda) {
  if (!(lambda > 1.0 / alpha) || lambda > 1.0)
    throw UsageError("lambda must satisfy 1/alpha < lambda <= 1, got " + std::to_string(lambda));
}

// Sum over subsets of positions {1..m} (a 0/1 digit pattern of x given by
// phi) where the c largest chosen positions carry weight b^{-pos}; every
// chosen position contributes phi(pos).
double low_positions_sum(std::span<const double> phi, unsigned c, unsigned b) {
  const unsigned m = static_cast<unsigned>(phi.size());
  std::vector<double> dp(c + 1, 0.0), next(c + 1);
  dp[c] = 1.0;
  for (unsigned pos = m; pos >= 1; --pos) {
    const double scale = std::pow(static_cast<double>(b), -static_cast<double>(pos));
    const double f = phi[pos - 1];
    std::fill(next.begin(), next.end(), 0.0);
    for (unsigned r = 0; r <= c; ++r) {
      if (dp[r] == 0.0) continue;
      next[r] += dp[r];
      if (r > 0)
        next[r - 1] += dp[r] * f * scale;
      else
        next[0] += dp[0] * f;
    }
    dp.swap(next);
  }
  double total = 0.0;
  for (double v : dp) total += v;
  return total;
}

}  // namespace

void WeightModel::validate(std::size_t dims) const {
  if (alpha < 2) throw UsageError("alpha must be >= 2");
  if (!is_prime(base)) throw UsageError("base must be prime");
  if (!(c_alpha > 0.0)) throw UsageError("c_alpha must be positive");
  if (!(q_conj >= 1.0)) throw UsageError("q' must lie in [1, inf]");
  if (gamma.size() < dims)
    throw UsageError("weight model has " + std::to_string(gamma.size()) + " weights, need " + std::to_string(dims));
  for (double g : gamma)
    if (!(g >= 0.0) || !std::isfinite(g)) throw UsageError("weights must be finite and nonnegative");
}

GeneralWeights GeneralWeights::from_product(std::span<const double> gamma) {
  GeneralWeights w;
  w.s = gamma.size();
  if (w.s > 20) throw ResourceError("general weight table limited to s <= 20");
  w.by_mask.assign(std::size_t{1} << w.s, 1.0);
  for (std::uint32_t mask = 0; mask < w.by_mask.size(); ++mask)
    for (std::size_t j = 0; j < w.s; ++j)
      if (mask & (1U << j)) w.by_mask[mask] *= gamma[j];
  return w;
}

unsigned mu_alpha(std::uint64_t k, unsigned alpha, unsigned b) {
  // collect nonzero digit positions, lowest first
  unsigned positions[64];
  unsigned count = 0;
  for (unsigned pos = 1; k > 0; ++pos, k /= b)
    if (k % b != 0) positions[count++] = pos;
  unsigned sum = 0;
  for (unsigned i = 0; i < std::min(count, alpha); ++i) sum += positions[count - 1 - i];
  return sum;
}

std::vector<Digit> fraction_digits(std::uint64_t a, unsigned n, unsigned b) {
  std::vector<Digit> xi(n, 0);
  for (unsigned i = n; i-- > 0;) {
    xi[i] = static_cast<Digit>(a % b);
    a /= b;
  }
  return xi;
}

unsigned wal_exponent(std::uint64_t k, std::span<const Digit> x_digits, unsigned b) {
  std::uint64_t e = 0;
  for (std::size_t i = 0; k > 0 && i < x_digits.size(); ++i, k /= b) e += (k % b) * x_digits[i];
  return static_cast<unsigned>(e % b);
}

std::complex<double> wal(std::uint64_t k, std::span<const Digit> x_digits, unsigned b) {
  const unsigned e = wal_exponent(k, x_digits, b);
  if (e == 0) return {1.0, 0.0};
  return std::polar(1.0, 2.0 * std::numbers::pi * e / b);
}

double w_alpha_at(std::uint64_t a, unsigned m, unsigned alpha, unsigned b, double tol) {
  if (!(tol > 0.0)) throw UsageError("tolerance must be positive");
  if (alpha < 1) throw UsageError("alpha must be >= 1");
  if (!is_prime(b)) throw UsageError("base must be prime");
  if (m > 0 && a >= checked_pow(b, m)) throw UsageError("w_alpha_at: a must be < b^m");
  if (m == 0 && a != 0) throw UsageError("w_alpha_at: a must be 0 when m = 0");
  const double bd = b;
  const auto xi = fraction_digits(a, m, b);
  std::vector<double> phi(m);
  for (unsigned i = 0; i < m; ++i) phi[i] = xi[i] == 0 ? bd - 1.0 : -1.0;

  // h chosen positions above m: (b-1)^h b^{-hm} prod_{i<=h} 1/(b^i - 1) for h < alpha.
  double total = 0.0;
  double g = 1.0;
  for (unsigned h = 0; h < alpha; ++h) {
    if (h > 0) g *= (bd - 1.0) * std::pow(bd, -static_cast<double>(m)) / (std::pow(bd, h) - 1.0);
    total += g * low_positions_sum(phi, alpha - h, b);
  }
  // h >= alpha: only the alpha largest are weighted; the free positions
  // between m and the alpha-th largest sum to b^{a_alpha - m - 1}.
  if (alpha >= 2) {
    double tail = std::pow(bd - 1.0, alpha) * std::pow(bd, -static_cast<double>(alpha) * m - 1.0);
    for (unsigned i = 1; i < alpha; ++i) tail /= std::pow(bd, i) - 1.0;
    tail /= std::pow(bd, alpha - 1) - 1.0;
    total += tail * low_positions_sum(phi, 0, b);
  } else {
    throw UsageError("w_alpha diverges for alpha = 1");
  }
  return total - 1.0;
}

double w_alpha_at(std::uint64_t a, unsigned m, const WeightModel& model, double tol) {
  return w_alpha_at(a, m, model.alpha, model.base, tol);
}

std::vector<double> w_alpha_grid(unsigned m, unsigned alpha, unsigned b) {
  const std::uint64_t n = checked_pow(b, m);
  std::vector<double> out(n);
  for (std::uint64_t a = 0; a < n; ++a) out[a] = w_alpha_at(a, m, alpha, b);
  return out;
}

double E_alpha_lambda(unsigned alpha, double lambda, unsigned b) {
  if (alpha < 2) throw UsageError("E_alpha_lambda needs alpha >= 2");
  check_lambda(alpha, lambda);
  const double bd = b;
  double sum = 0.0, prod = 1.0;
  for (unsigned w = 1; w < alpha; ++w) {
    prod *= (bd - 1.0) / (std::pow(bd, lambda * w) - 1.0);
    sum += prod;
  }
  prod *= (bd - 1.0) / (std::pow(bd, lambda * alpha) - 1.0);
  const double ba = std::pow(bd, lambda * alpha);
  return sum + (ba - 1.0) / (ba - bd) * prod;
}

long double mu_series_prefix(unsigned alpha, long double lambda, unsigned b, unsigned K) {
  // S[beta] = sum_{0<=k<b^n} b^{-lambda mu_beta(k)}, advanced in n.
  std::vector<long double> S(alpha + 1, 1.0L);
  const long double bl = b;
  for (unsigned n = 1; n <= K; ++n) {
    const long double w = (bl - 1.0L) * std::pow(bl, -lambda * n);
    for (unsigned beta = alpha; beta >= 1; --beta) S[beta] += w * S[beta - 1];
    S[0] *= bl;
  }
  return S[alpha];
}

Rational BernoulliPoly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

double BernoulliPoly::operator()(double x) const {
  double acc = 0.0;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + to_double(coeffs[i]);
  return acc;
}

BernoulliPoly bernoulli_b(unsigned tau) {
  // Bernoulli numbers with B_1 = -1/2.
  std::vector<Rational> B(tau + 1);
  std::vector<std::vector<BigInt>> binom(tau + 2, std::vector<BigInt>(tau + 2, 0));
  for (unsigned n = 0; n <= tau + 1; ++n) {
    binom[n][0] = 1;
    for (unsigned k = 1; k <= n; ++k) binom[n][k] = binom[n - 1][k - 1] + (k <= n - 1 ? binom[n - 1][k] : BigInt(0));
  }
  B[0] = 1;
  for (unsigned n = 1; n <= tau; ++n) {
    Rational s = 0;
    for (unsigned k = 0; k < n; ++k) s += Rational(binom[n + 1][k]) * B[k];
    B[n] = -s / Rational(n + 1);
  }
  BigInt fact = 1;
  for (unsigned i = 2; i <= tau; ++i) fact *= i;
  BernoulliPoly poly;
  poly.degree = tau;
  poly.coeffs.resize(tau + 1);
  for (unsigned j = 0; j <= tau; ++j) poly.coeffs[j] = Rational(binom[tau][j]) * B[tau - j] / Rational(fact);
  return poly;
}

double C_alpha_default(unsigned alpha, unsigned b) {
  if (alpha < 2) throw UsageError("C_alpha needs alpha >= 2");
  if (!is_prime(b)) throw UsageError("base must be prime");
  const double bd = b;
  const double t = 2.0 * std::sin(std::numbers::pi / bd);
  double first = 2.0 / std::pow(t, alpha);
  for (unsigned z = 1; z < alpha; ++z) first = std::max(first, 1.0 / std::pow(t, z));
  const double second = std::pow(1.0 + 1.0 / bd + 1.0 / (bd * (bd + 1.0)), alpha - 2.0);
  const double third = 3.0 + 2.0 / bd + (2.0 * bd + 1.0) / (bd - 1.0);
  return first * second * third;
}

double sup_bernoulli_abs(unsigned alpha) {
  if (alpha < 2 || alpha > 10) throw UsageError("sup |b_alpha| supported for 2 <= alpha <= 10");
  const BernoulliPoly f = bernoulli_b(alpha);
  const BernoulliPoly df = bernoulli_b(alpha - 1);  // b_alpha' = b_{alpha-1}
  double best = std::max(std::abs(f(0.0)), std::abs(f(1.0)));
  constexpr int kGrid = 4096;
  double x0 = 0.0, y0 = df(0.0);
  for (int i = 1; i <= kGrid; ++i) {
    const double x1 = static_cast<double>(i) / kGrid;
    const double y1 = df(x1);
    if (y0 == 0.0) best = std::max(best, std::abs(f(x0)));
    if ((y0 < 0.0) != (y1 < 0.0) && y0 != 0.0 && y1 != 0.0) {
      double lo = x0, hi = x1, flo = y0;
      while (hi - lo > 1e-14) {
        const double mid = 0.5 * (lo + hi);
        const double fm = df(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      best = std::max(best, std::abs(f(0.5 * (lo + hi))));
    }
    x0 = x1;
    y0 = y1;
  }
  return best;
}

double D_alpha(unsigned alpha) {
  double d = sup_bernoulli_abs(alpha);
  for (unsigned tau = 1; tau < alpha; ++tau) d = std::max(d, std::abs(to_double(bernoulli_b(tau).constant())));
  return d;
}

double H_product(const WeightModel& model, std::size_t s) {
  model.validate(s);
  const double exponent = std::isinf(model.q_conj) ? 0.0 : 1.0 / model.q_conj;
  const double factor = std::pow(model.alpha + 1.0, exponent) * D_alpha(model.alpha);
  double h = 1.0;
  for (std::size_t j = 0; j < s; ++j) h *= 1.0 + model.gamma[j] * factor;
  return h;
}

double cbc_bound(const WeightModel& model, std::size_t s, unsigned m, double lambda) {
  model.validate(s);
  check_lambda(model.alpha, lambda);
  const double E = E_alpha_lambda(model.alpha, lambda, model.base);
  const double cl = std::pow(model.c_alpha, lambda);
  double log_prod = 0.0;
  for (std::size_t j = 0; j < s; ++j) log_prod += std::log1p(std::pow(model.gamma[j], lambda) * cl * E) / lambda;
  const double n1 = static_cast<double>(checked_pow(model.base, m) - 1);
  return std::exp(log_prod - std::log(n1) / lambda);
}

double existence_bound(const WeightModel& model, std::size_t s, unsigned m, double lambda) {
  model.validate(s);
  check_lambda(model.alpha, lambda);
  const double E = E_alpha_lambda(model.alpha, lambda, model.base);
  const double cl = std::pow(model.c_alpha, lambda);
  double prod = 1.0;
  for (std::size_t j = 0; j < s; ++j) prod *= 1.0 + std::pow(model.gamma[j], lambda) * cl * E;
  const double bracket = prod - 1.0;
  const double n1 = static_cast<double>(checked_pow(model.base, m) - 1);
  return std::pow(n1, -1.0 / lambda) * std::pow(bracket, 1.0 / lambda);
}

double existence_bound(const GeneralWeights& weights, const WeightModel& model, unsigned m, double lambda) {
  check_lambda(model.alpha, lambda);
  if (weights.by_mask.size() != (std::size_t{1} << weights.s)) throw UsageError("general weight table has wrong size");
  const double E = E_alpha_lambda(model.alpha, lambda, model.base);
  double bracket = 0.0;
  for (std::uint32_t mask = 1; mask < weights.by_mask.size(); ++mask) {
    const int card = std::popcount(mask);
    bracket += std::pow(weights(mask), lambda) * std::pow(model.c_alpha, lambda * card) * std::pow(E, card);
  }
  const double n1 = static_cast<double>(checked_pow(model.base, m) - 1);
  return std::pow(n1, -1.0 / lambda) * std::pow(bracket, 1.0 / lambda);
}

}  // namespace eplr
