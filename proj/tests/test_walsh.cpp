#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "eplr/errors.hpp"
#include "eplr/walsh.hpp"
#include "oracles.hpp"

using namespace eplr;

TEST_CASE("mu_alpha") {
  CHECK(mu_alpha(0, 2, 2) == 0);
  CHECK(mu_alpha(6, 2, 2) == 5);
  CHECK(mu_alpha(6, 1, 2) == 3);
  std::mt19937_64 rng(11);
  for (unsigned b : {2U, 3U, 5U}) {
    for (int i = 0; i < 300; ++i) {
      const std::uint64_t k = rng() % 1000000;
      for (unsigned a = 1; a <= 4; ++a) {
        CHECK(mu_alpha(k, a, b) == oracle::mu(k, a, b));
        const auto d = oracle::digits(k, b);
        const auto nonzero = static_cast<unsigned>(std::count_if(d.begin(), d.end(), [](unsigned x) { return x; }));
        CHECK(mu_alpha(k, a, b) <= mu_alpha(k, a + 1, b));
        CHECK((mu_alpha(k, a, b) == mu_alpha(k, a + 1, b)) == (nonzero <= a));
      }
    }
  }
}

TEST_CASE("walsh functions") {
  const std::vector<Digit> half{1};
  CHECK(wal(0, half, 2) == std::complex<double>(1, 0));
  CHECK(std::abs(wal(1, half, 2) - std::complex<double>(-1, 0)) < 1e-15);
  const std::vector<Digit> zero{0, 0, 0};
  for (std::uint64_t k = 0; k < 50; ++k) CHECK(std::abs(wal(k, zero, 3) - 1.0) < 1e-15);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t k = rng() % 5000, a = rng() % 625;
    const auto d = fraction_digits(a, 4, 5);
    CHECK(std::abs(std::abs(wal(k, d, 5)) - 1.0) < 1e-14);
    CHECK(wal_exponent(k, d, 5) == oracle::wal_exp(k, a, 4, 5));
  }
}

TEST_CASE("E_alpha_lambda closed form") {
  CHECK(E_alpha_lambda(2, 1.0, 2) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK_THROWS_AS(E_alpha_lambda(2, 0.5, 2), UsageError);
  CHECK_THROWS_AS(E_alpha_lambda(3, 1.0 / 3.0, 3), UsageError);
  CHECK_THROWS_AS(E_alpha_lambda(2, 1.01, 2), UsageError);
}

TEST_CASE("E_alpha_lambda against the truncated series and its tail") {
  for (unsigned b : {2U, 3U}) {
    for (unsigned alpha : {2U, 3U}) {
      for (double lambda : {1.0, 0.9, 0.6}) {
        if (lambda <= 1.0 / alpha) continue;
        const unsigned K = b == 2 ? 16 : 10;
        long double series = 0;
        std::uint64_t top = 1;
        for (unsigned i = 0; i < K; ++i) top *= b;
        for (std::uint64_t k = 1; k < top; ++k)
          series += std::pow(static_cast<long double>(b), -lambda * oracle::mu(k, alpha, b));
        const long double E = E_alpha_lambda(alpha, lambda, b);
        CHECK(static_cast<double>(std::abs(mu_series_prefix(alpha, lambda, b, K) - 1.0L - series)) < 1e-12);
        // tail sum over k >= b^K is positive and decreasing in K
        const long double tail = E - series;
        CHECK(tail > 0);
        const long double tail2 = E - (mu_series_prefix(alpha, lambda, b, 2 * K) - 1.0L);
        CHECK(tail2 < tail);
        CHECK(tail2 > -1e-12L);
      }
    }
  }
  // the alpha = 3 closed form agrees with a long prefix to 1e-10
  const long double E3 = E_alpha_lambda(3, 1.0, 2);
  CHECK(static_cast<double>(std::abs(mu_series_prefix(3, 1.0L, 2, 60) - 1.0L - E3)) < 1e-10);
}

TEST_CASE("w_alpha at the origin equals E") {
  for (unsigned b : {2U, 3U}) {
    for (unsigned alpha : {2U, 3U, 4U}) {
      const double E = E_alpha_lambda(alpha, 1.0, b);
      for (unsigned m = 0; m <= 6; ++m) CHECK(std::abs(w_alpha_at(0, m, alpha, b) - E) < 1e-12);
    }
  }
  CHECK(w_alpha_at(0, 3, 2, 2) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(w_alpha_at(1, 1, 2, 2) == doctest::Approx(-0.25).epsilon(1e-14));
  CHECK_THROWS_AS(w_alpha_at(0, 3, 2, 2, 0.0), UsageError);
}

TEST_CASE("w_alpha against the truncated-series oracle") {
  // |w - series_K| <= sum_{k >= b^K} b^{-mu(k)} = E - prefix
  struct Case {
    unsigned b, alpha, m, K;
  };
  for (const auto c : {Case{2, 2, 3, 18}, Case{2, 3, 3, 18}, Case{3, 2, 2, 11}, Case{3, 3, 2, 11}, Case{5, 2, 1, 7}}) {
    const long double tail =
        E_alpha_lambda(c.alpha, 1.0, c.b) - (mu_series_prefix(c.alpha, 1.0L, c.b, c.K) - 1.0L);
    const std::uint64_t N = checked_pow(c.b, c.m);
    for (std::uint64_t a = 0; a < N; ++a) {
      const long double ref = oracle::w_series(a, c.m, c.alpha, c.b, c.K);
      CHECK(static_cast<double>(std::abs(w_alpha_at(a, c.m, c.alpha, c.b) - ref)) <= static_cast<double>(tail) + 1e-12);
    }
  }
}

TEST_CASE("w_alpha grid sums to b^m times the divisible-frequency sum") {
  // sum_a w(a / b^m) = b^m sum_{k >= 1, b^m | k} b^{-mu(k)}
  for (unsigned alpha : {2U, 3U}) {
    for (unsigned m = 1; m <= 6; ++m) {
      const auto W = w_alpha_grid(m, alpha, 2);
      long double sum = 0;
      for (double w : W) sum += w;
      long double ref = 0;
      for (std::uint64_t t = 1; t < (1ULL << 18); ++t)
        ref += std::pow(2.0L, -static_cast<long double>(oracle::mu(t << m, alpha, 2)));
      CHECK(static_cast<double>(std::abs(sum / W.size() - ref)) < 1e-4);
    }
  }
}

TEST_CASE("bernoulli polynomials") {
  CHECK(bernoulli_b(0).constant() == 1);
  const auto b1 = bernoulli_b(1);
  CHECK(b1.constant() == Rational(-1, 2));
  CHECK(b1.coeffs[1] == 1);
  const auto b2 = bernoulli_b(2);
  CHECK(b2.constant() == Rational(1, 12));
  CHECK(b2.coeffs == std::vector<Rational>{Rational(1, 12), Rational(-1, 2), Rational(1, 2)});
  CHECK(bernoulli_b(3).constant() == 0);
  CHECK(bernoulli_b(4).constant() == Rational(-1, 720));
}

TEST_CASE("bernoulli sum identity") {
  for (unsigned tau = 0; tau <= 5; ++tau) {
    const auto bt = bernoulli_b(tau);
    for (unsigned N : {2U, 3U, 8U}) {
      Rational sum = 0;
      for (unsigned n = 0; n < N; ++n) sum += bt(Rational(n, N));
      Rational Ntau = 1;
      for (unsigned i = 0; i < tau; ++i) Ntau *= N;
      CHECK(sum / N == bt.constant() / Ntau);
    }
  }
}

TEST_CASE("Walsh constants") {
  CHECK(C_alpha_default(2, 2) == doctest::Approx(4.5).epsilon(1e-15));
  CHECK(C_alpha_default(3, 2) == doctest::Approx(7.5).epsilon(1e-15));
  CHECK(D_alpha(2) == 0.5);
  CHECK(D_alpha(3) == 0.5);
  CHECK(sup_bernoulli_abs(2) == doctest::Approx(1.0 / 12).epsilon(1e-13));
  // b_4 extremes at 0 and 1/2: 1/720 and 7/5760
  CHECK(sup_bernoulli_abs(4) == doctest::Approx(1.0 / 720).epsilon(1e-12));
  for (unsigned a = 2; a <= 10; ++a) {
    const auto bp = bernoulli_b(a);
    double mx = 0;
    for (int i = 0; i <= 20000; ++i) mx = std::max(mx, std::abs(bp(i / 20000.0)));
    CHECK(sup_bernoulli_abs(a) >= mx - 1e-15);
    CHECK(sup_bernoulli_abs(a) <= mx * (1 + 1e-6));
  }
}

TEST_CASE("H product") {
  WeightModel wm;
  wm.gamma = {0, 0};
  CHECK(H_product(wm, 2) == 1.0);
  wm.gamma = {1};
  CHECK(H_product(wm, 1) == 1.5);
  wm.gamma = {1, 0.25};
  CHECK(H_product(wm, 2) == doctest::Approx(1.5 * 1.125).epsilon(1e-15));
}

TEST_CASE("cbc and existence bounds") {
  WeightModel wm;
  wm.gamma = {1};
  CHECK(cbc_bound(wm, 1, 4, 1.0) == doctest::Approx(2.5 / 15).epsilon(1e-14));
  CHECK(cbc_bound(wm, 0, 4, 1.0) == doctest::Approx(1.0 / 15).epsilon(1e-14));
  CHECK(cbc_bound(wm, 0, 4, 0.75) == doctest::Approx(std::pow(15.0, -1 / 0.75)).epsilon(1e-14));
  CHECK_THROWS_AS(cbc_bound(wm, 1, 4, 0.5), UsageError);
  double prev = 1e300;
  for (unsigned m = 1; m < 20; ++m) {
    const double v = cbc_bound(wm, 1, m, 0.8);
    CHECK(v < prev);
    prev = v;
  }
  const double E = E_alpha_lambda(2, 0.8, 2);
  CHECK(existence_bound(wm, 1, 5, 0.8) == doctest::Approx(std::pow(31.0, -1 / 0.8) * std::pow(E, 1 / 0.8)));
  wm.gamma = {0.7, 0.2};
  const double t1 = std::pow(0.7, 0.8) * E, t2 = std::pow(0.2, 0.8) * E;
  CHECK(existence_bound(wm, 2, 5, 0.8) ==
        doctest::Approx(std::pow(31.0, -1 / 0.8) * std::pow((1 + t1) * (1 + t2) - 1, 1 / 0.8)));
  const auto gw = GeneralWeights::from_product(wm.gamma);
  CHECK(existence_bound(gw, wm, 5, 0.8) == doctest::Approx(existence_bound(wm, 2, 5, 0.8)).epsilon(1e-13));
  wm.gamma = {0, 0};
  CHECK(existence_bound(wm, 2, 5, 1.0) == 0.0);
}
