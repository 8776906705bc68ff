#include <random>

#include "doctest.h"
#include "eplr/errors.hpp"
#include "eplr/extrapolation.hpp"

using namespace eplr;

TEST_CASE("richardson coefficients") {
  CHECK(richardson_coeffs(2, 1) == std::vector<Rational>{1});
  CHECK(richardson_coeffs(2, 2) == std::vector<Rational>{2, -1});
  CHECK(richardson_coeffs(2, 3) == std::vector<Rational>{Rational(8, 3), -2, Rational(1, 3)});
}

TEST_CASE("moment identities hold exactly") {
  for (unsigned b : {2U, 3U, 5U}) {
    for (unsigned tau = 1; tau <= 6; ++tau) {
      const auto a = richardson_coeffs(b, tau);
      Rational sum = 0;
      for (const auto& v : a) sum += v;
      CHECK(sum == 1);
      for (unsigned w = 1; w < tau; ++w) {
        Rational moment = 0;
        BigInt bw = 1;
        for (unsigned i = 0; i < w; ++i) bw *= b;
        BigInt scale = 1;
        for (const auto& v : a) {
          moment += v * Rational(scale);
          scale *= bw;
        }
        CHECK(moment == 0);
      }
    }
  }
}

TEST_CASE("extrapolation removes polynomial error terms exactly") {
  std::mt19937 rng(17);
  for (unsigned b : {2U, 3U, 5U}) {
    for (unsigned alpha = 1; alpha <= 6; ++alpha) {
      std::vector<Rational> c(alpha);
      for (auto& v : c) v = Rational(static_cast<int>(rng() % 2001) - 1000, 1 + rng() % 97);
      const unsigned m = 8;
      std::vector<Rational> values;  // I_n for n = m-alpha+1..m
      for (unsigned n = m - alpha + 1; n <= m; ++n) {
        Rational v = c[0];
        for (unsigned w = 1; w < alpha; ++w) {
          BigInt bwn = 1;
          for (unsigned i = 0; i < w * n; ++i) bwn *= b;
          v += c[w] / Rational(bwn);
        }
        values.push_back(v);
      }
      CHECK(extrapolate_chain(std::span<const Rational>(values), b, alpha) == c[0]);
      // dot-product form
      const auto a = richardson_coeffs(b, alpha);
      Rational dot = 0;
      for (unsigned t = 1; t <= alpha; ++t) dot += a[t - 1] * values[alpha - t];
      CHECK(dot == c[0]);
      std::vector<double> dv;
      for (const auto& v : values) dv.push_back(to_double(v));
      const double got = extrapolate_chain(std::span<const double>(dv), b, alpha);
      CHECK(std::abs(got - to_double(c[0])) <= 1e-12 * std::max(1.0, std::abs(to_double(c[0]))) * 100);
    }
  }
}

TEST_CASE("triangular recursion equals the dot product") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1, 1);
  for (unsigned b : {2U, 3U}) {
    for (unsigned alpha = 1; alpha <= 5; ++alpha) {
      const ExtrapolationScheme scheme(b, alpha);
      for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> asc(alpha);
        for (auto& v : asc) v = u(rng);
        std::vector<double> desc(asc.rbegin(), asc.rend());
        const double tri = extrapolate_chain(std::span<const double>(asc), b, alpha);
        const double dot = scheme.combine(desc);
        CHECK(std::abs(tri - dot) <= 1e-13 * std::max(1.0, std::abs(dot)) * scheme.max_abs_weight());
      }
    }
  }
}

TEST_CASE("extrapolation edge cases") {
  const std::vector<double> one{0.75};
  CHECK(extrapolate_chain(std::span<const double>(one), 2, 1) == 0.75);
  const std::vector<double> consts(4, 3.25);
  CHECK(extrapolate_chain(std::span<const double>(consts), 2, 4) == doctest::Approx(3.25).epsilon(1e-15));
  CHECK_THROWS_AS(extrapolate_chain(std::span<const double>(consts), 2, 3), UsageError);
  CHECK_THROWS_AS(ExtrapolationScheme(2, 3).combine(consts), UsageError);
  CHECK(ExtrapolationScheme(2, 3).max_abs_weight() == doctest::Approx(8.0 / 3));
}
