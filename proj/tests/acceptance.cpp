// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: eplr_acceptance [criterion ...]   (default: all)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "eplr/cbc.hpp"
#include "eplr/extrapolation.hpp"
#include "eplr/field_table.hpp"
#include "eplr/matvec.hpp"
#include "eplr/pointset.hpp"
#include "eplr/quadrature.hpp"
#include "eplr/walsh.hpp"
#include "oracles.hpp"

using namespace eplr;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

WeightModel power_weights(std::size_t s, unsigned alpha) {
  WeightModel wm;
  wm.alpha = alpha;
  wm.c_alpha = 1.0;
  for (std::size_t j = 1; j <= s; ++j) wm.gamma.push_back(1.0 / static_cast<double>(j * j));
  return wm;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// 1. Extrapolation algebra in exact arithmetic.
Outcome extrapolation_algebra() {
  Outcome o;
  std::mt19937 rng(1);
  int checks = 0;
  for (unsigned b : {2U, 3U, 5U}) {
    for (unsigned tau = 1; tau <= 6; ++tau) {
      const auto a = richardson_coeffs(b, tau);
      Rational sum = 0;
      for (const auto& v : a) sum += v;
      o.pass &= sum == 1;
      for (unsigned w = 1; w < tau; ++w) {
        Rational moment = 0, scale = 1, bw = 1;
        for (unsigned i = 0; i < w; ++i) bw *= b;
        for (const auto& v : a) {
          moment += v * scale;
          scale *= bw;
        }
        o.pass &= moment == 0;
        ++checks;
      }
      // c_0 + sum_{w < tau} c_w b^{-w n} at n = m-tau+1..m
      std::vector<Rational> c(tau);
      for (auto& v : c) v = Rational(static_cast<int>(rng() % 20001) - 10000, 1 + rng() % 997);
      std::vector<Rational> values;
      for (unsigned n = 10 - tau + 1; n <= 10; ++n) {
        Rational v = c[0], bn = 1;
        for (unsigned i = 0; i < n; ++i) bn *= b;
        Rational bwn = 1;
        for (unsigned w = 1; w < tau; ++w) {
          bwn *= bn;
          v += c[w] / bwn;
        }
        values.push_back(v);
      }
      o.pass &= extrapolate_chain(std::span<const Rational>(values), b, tau) == c[0];
      checks += 2;
    }
  }
  o.detail = std::to_string(checks) + " exact identities";
  return o;
}

// 2. Character property against direct Walsh summation.
Outcome character_property() {
  Outcome o;
  std::mt19937_64 rng(2);
  int duals = 0;
  double worst = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const unsigned m = 1 + rng() % 6;
    const std::size_t s = 1 + rng() % 3;
    LatticeRule rule{2, m, find_irreducible(2, m), {}};
    const std::uint64_t N = rule.size();
    for (std::size_t j = 0; j < s; ++j) rule.gen.push_back(GFPoly::from_encoding(2, 1 + rng() % (N - 1)));
    std::vector<std::uint64_t> k(s);
    for (auto& v : k) v = rng() % (N * N * 4);
    if (trial % 2 == 0) {
      for (std::uint64_t c = 0; c < N * N * 4; ++c) {
        k.back() = c;
        if (in_dual(rule, k)) break;
      }
    }
    const bool dual = in_dual(rule, k);
    duals += dual;
    const auto cs = character_sum(rule, k);
    const PointSet pts = generate_points(rule);
    double direct = 0;
    for (std::uint64_t n = 0; n < N; ++n) {
      unsigned e = 0;
      for (std::size_t j = 0; j < s; ++j) e += oracle::wal_exp(k[j], pts.numerator(n, j), m, 2);
      direct += (e % 2) ? -1.0 : 1.0;
    }
    const double want = dual ? static_cast<double>(N) : 0.0;
    worst = std::max({worst, std::abs(cs - std::complex<double>(want, 0)), std::abs(direct - want)});
  }
  o.pass = worst <= 1e-9;
  o.detail = "200 pairs, " + std::to_string(duals) + " in the dual, max deviation " + fmt("%.1e", worst);
  return o;
}

// 3. Bernoulli sum identity.
Outcome bernoulli_identity() {
  Outcome o;
  double worst = 0;
  for (unsigned tau = 0; tau <= 5; ++tau) {
    const auto bt = bernoulli_b(tau);
    for (unsigned N : {2U, 3U, 8U}) {
      long double sum = 0;
      for (unsigned n = 0; n < N; ++n) sum += bt(static_cast<double>(n) / N);
      const double lhs = static_cast<double>(sum / N);
      const double rhs = to_double(bt.constant()) / std::pow(static_cast<double>(N), tau);
      worst = std::max(worst, std::abs(lhs - rhs));
      Rational exact = 0;
      for (unsigned n = 0; n < N; ++n) exact += bt(Rational(n, N));
      Rational Nt = 1;
      for (unsigned i = 0; i < tau; ++i) Nt *= N;
      o.pass &= exact / N == bt.constant() / Nt;
    }
  }
  o.pass &= worst <= 1e-12;
  o.detail = "max deviation " + fmt("%.1e", worst);
  return o;
}

std::optional<double> grid_slope(const Integrand& f, double exact, std::size_t s, unsigned alpha, unsigned n0,
                                 unsigned n1) {
  std::vector<SweepRow> rows;
  for (unsigned n = n0; n <= n1; ++n) {
    std::vector<double> v;
    for (unsigned k = n - alpha + 1; k <= n; ++k) v.push_back(grid_quadrature(f, 1ULL << k, s));
    const double est = extrapolate_chain(std::span<const double>(v), 2, alpha);
    rows.push_back({n, 1ULL << n, est, std::abs(est - exact)});
  }
  return fit_rate(rows);
}

// 4. Euler-Maclaurin order through extrapolation of left-endpoint grids.
Outcome euler_maclaurin_order() {
  Outcome o;
  const Integrand f = make_integrand("exp", 1);
  std::ostringstream d;
  for (unsigned alpha : {2U, 3U}) {
    const auto slope = grid_slope(f, *f.exact_integral, 1, alpha, 6, 12);
    const bool ok = slope && std::abs(*slope + alpha) <= 0.3;
    o.pass &= ok;
    d << "alpha=" << alpha << " slope " << (slope ? fmt("%.3f", *slope) : "n/a") << (ok ? " ok; " : " OUT OF RANGE; ");
  }
  if (!o.pass) {
    // In one dimension every odd coefficient beyond the first vanishes
    // (b_3 = b_5 = 0), so three-term extrapolation converges like N^-4.
    // Where the N^-3 coefficient is nonzero the order is exactly alpha:
    Integrand g{"exp2", 2, [](std::span<const double> x) { return std::exp(x[0] + x[1]); }, std::nullopt, {}};
    const double e1 = std::exp(1.0) - 1.0;
    const auto s2 = grid_slope(g, e1 * e1, 2, 3, 5, 10);
    d << "b_3 = 0 removes the N^-3 term for s=1; s=2 exp(x+y) alpha=3 slope " << (s2 ? fmt("%.3f", *s2) : "n/a");
  }
  o.detail = d.str();
  return o;
}

// 5. CBC bound for every prefix, with the dual criterion plus its tail.
Outcome cbc_bound_check() {
  Outcome o;
  int comparisons = 0;
  double worst_ratio = 0;
  for (unsigned alpha : {2U, 3U}) {
    std::vector<double> lambdas{1.0, 0.75};
    if (alpha == 3) lambdas.push_back(0.4);
    for (unsigned m : {6U, 8U, 10U, 12U}) {
      for (std::size_t s : {5UL, 10UL}) {
        const auto wm = power_weights(s, alpha);
        const auto rep = cbc_fast(2, m, s, wm);
        const auto prefixes = criterion_dual_oracle_prefixes(rep.rule, wm, 24);
        for (std::size_t d = 1; d <= s; ++d) {
          const double B = prefixes[d - 1].value + prefixes[d - 1].tail_bound;
          for (double lam : lambdas) {
            const double bound = cbc_bound(wm, d, m, lam);
            worst_ratio = std::max(worst_ratio, B / bound);
            if (!(B <= bound)) {
              o.pass = false;
              std::fprintf(stderr, "  bound violated: alpha=%u m=%u s=%zu d=%zu lambda=%g B=%.6e bound=%.6e\n", alpha,
                           m, s, d, lam, B, bound);
            }
            ++comparisons;
          }
        }
      }
    }
  }
  o.detail = std::to_string(comparisons) + " prefix comparisons, max B/bound " + fmt("%.3f", worst_ratio);
  return o;
}

// 6. Fast and slow CBC select the same generating vectors.
Outcome fast_slow_equivalence() {
  Outcome o;
  int instances = 0, identical = 0, tied = 0;
  double worst_value = 0;
  for (unsigned alpha : {2U, 3U}) {
    for (unsigned m = 3; m <= 8; ++m) {
      for (std::size_t s = 2; s <= 5; ++s) {
        const auto wm = power_weights(s, alpha);
        const auto slow = cbc_slow(2, m, s, wm);
        const auto fast = cbc_fast(2, m, s, wm);
        // Exact ties (gap 0) are broken by the lowest candidate index in both.
        bool near_tie = false;
        for (double g : slow.selection_gap) near_tie |= g > 0 && g <= 1e-9;
        const bool same = slow.rule == fast.rule;
        ++instances;
        identical += same;
        tied += std::any_of(slow.selection_gap.begin(), slow.selection_gap.end(), [](double g) { return g == 0; });
        if (!near_tie && !same) o.pass = false;
        for (std::size_t d = 0; d < s; ++d)
          worst_value = std::max(worst_value, std::abs(slow.per_dimension[d] - fast.per_dimension[d]));
      }
    }
  }
  o.pass &= worst_value <= 1e-9;
  o.detail = std::to_string(identical) + "/" + std::to_string(instances) + " identical (" + std::to_string(tied) +
             " with exact ties), max value difference " + fmt("%.1e", worst_value);
  return o;
}

// 7. Existence bound by exhaustive search, and CBC near-optimality.
Outcome existence_bound_check() {
  Outcome o;
  WeightModel wm;
  wm.gamma = {1.0, 0.25};
  wm.alpha = 2;
  const auto best = exhaustive_best(2, 4, 2, wm);
  const double grid = criterion_grid_term(wm, 2, 4);
  const double B_min = best.criterion - grid;
  const auto dual = criterion_dual_oracle(best.rule, wm, 24);
  const double bound = existence_bound(wm, 2, 4, 1.0);
  const auto cbc = cbc_fast(2, 4, 2, wm);
  o.pass = dual.value + dual.tail_bound <= bound && B_min <= bound && cbc.criterion <= 2.0 * best.criterion &&
           std::abs(B_min - dual.value) <= dual.tail_bound + 1e-12;
  o.detail = "min B " + fmt("%.6e", B_min) + " (dual " + fmt("%.6e", dual.value) + " + tail " +
             fmt("%.1e", dual.tail_bound) + ") <= bound " + fmt("%.6e", bound) + "; CBC/optimum on B~ " +
             fmt("%.4f", cbc.criterion / best.criterion);
  return o;
}

// 8. Convergence experiments. Sweeps start at the smallest admissible m
// (m = alpha) so the fitted upper half spans m = 9..16 or 10..16.
Outcome convergence_experiments() {
  Outcome o;
  std::ostringstream d;
  WeightModel two;
  two.gamma = {1.0, 1.0};
  two.alpha = 2;
  const auto biv = make_integrand("bivariate", 2);
  const auto a = convergence_sweep(biv, 2, 2, 2, 16, two);
  const bool ok_a = a.fitted_rate && *a.fitted_rate <= -1.8;
  d << "(a) " << (a.fitted_rate ? fmt("%.3f", *a.fitted_rate) : "n/a") << (ok_a ? "" : " FAIL");

  two.alpha = 3;
  const auto b = convergence_sweep(biv, 2, 3, 3, 16, two);
  const std::size_t half = b.rows.size() / 2;
  const auto windows = windowed_rates(std::span<const SweepRow>(b.rows).subspan(half), 4);
  bool monotone = !windows.empty();
  for (std::size_t i = 1; i < windows.size(); ++i) monotone &= windows[i] <= windows[i - 1];
  const bool ok_b = b.fitted_rate && *b.fitted_rate <= -2.2 && monotone;
  d << "; (b) " << (b.fitted_rate ? fmt("%.3f", *b.fitted_rate) : "n/a") << " windows";
  for (double w : windows) d << ' ' << fmt("%.2f", w);
  d << (ok_b ? "" : " FAIL");

  const auto hundred = power_weights(100, 2);
  struct Case {
    const char* id;
    IntegrandParams p;
  };
  bool ok_c = true;
  for (const auto& c : {Case{"f1", {.c1 = 1.3, .gamma = hundred.gamma}}, Case{"f2", {.c2 = 1.0, .gamma = hundred.gamma}},
                        Case{"f2", {.c2 = 2.0, .gamma = hundred.gamma}}}) {
    const auto f = make_integrand(c.id, 100, c.p);
    const auto r = convergence_sweep(f, 2, 2, 2, 16, hundred);
    const bool ok = r.fitted_rate && *r.fitted_rate <= -1.8;
    ok_c &= ok;
    d << "; (c) " << c.id << (std::string(c.id) == "f1" ? "" : fmt(" c2=%g", c.p.c2)) << ' '
      << (r.fitted_rate ? fmt("%.3f", *r.fitted_rate) : "n/a") << (ok ? "" : " FAIL");
  }
  o.pass = ok_a && ok_b && ok_c;
  o.detail = d.str();
  return o;
}

double seconds(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 9. Fast matvec equality and N log N scaling.
Outcome fast_matvec() {
  Outcome o;
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1, 1);
  double worst = 0;
  int cases = 0;
  for (unsigned m = 1; m <= 10; ++m) {
    for (std::size_t s : {1UL, 3UL, 8UL, 20UL}) {
      for (std::size_t t : {1UL, 4UL, 8UL}) {
        LatticeRule rule{2, m, find_irreducible(2, m), {}};
        for (std::size_t j = 0; j < s; ++j) rule.gen.push_back(GFPoly::from_encoding(2, 1 + rng() % (rule.size() - 1)));
        const FieldTable table(rule.modulus);
        Matrix A(s, t);
        for (auto& v : A.data) v = u(rng);
        const auto fast = fast_product(build_profile(rule, table), A);
        const auto naive = naive_product(rule, table, A);
        for (std::size_t i = 0; i < fast.data.size(); ++i) worst = std::max(worst, std::abs(fast.data[i] - naive.data[i]));
        ++cases;
      }
    }
  }
  // Interleaved min-of-many timing of the two largest sizes damps scheduler noise.
  std::vector<CirculantProfile> profiles;
  for (unsigned m : {13U, 14U}) {
    const auto rule = cbc_fast(2, m, 20, power_weights(20, 2)).rule;
    profiles.push_back(build_profile(rule, FieldTable(rule.modulus)));
  }
  Matrix A(20, 8);
  for (auto& v : A.data) v = u(rng);
  std::vector<double> times(2, 1e300);
  for (int round = 0; round < 40; ++round)
    for (std::size_t i = 0; i < 2; ++i) times[i] = std::min(times[i], seconds([&] { fast_product(profiles[i], A); }));
  const double ratio = times.back() / times[times.size() - 2];
  o.pass = worst <= 1e-10 && ratio <= 2.7;
  std::ostringstream d;
  d << cases << " shapes, max difference " << fmt("%.1e", worst) << "; time(2^14)/time(2^13) " << fmt("%.2f", ratio);
  o.detail = d.str();
  return o;
}

// 10. Kernel consistency.
Outcome kernel_consistency() {
  Outcome o;
  double worst_origin = 0;
  for (unsigned b : {2U, 3U, 5U})
    for (unsigned alpha : {2U, 3U, 4U})
      for (unsigned m = 0; m <= 12; ++m)
        worst_origin = std::max(worst_origin, std::abs(w_alpha_at(0, m, alpha, b) - E_alpha_lambda(alpha, 1.0, b)));
  o.pass = worst_origin <= 1e-10;
  // Tails of sum_{k >= b^K} b^{-mu(k)}, by the position n of the leading digit:
  //  alpha = 2: sum_{n > K} (b-1) b^{-n} (1 + (n-1)(b-1)/b)   (exact)
  //  alpha = 3: sum_{n > K} (b-1) b^{-n} (1 + E_2) = (1 + E_2) b^{-K}   (upper bound)
  double worst_excess = 0;
  std::ostringstream d;
  for (unsigned b : {2U, 3U}) {
    const unsigned K = b == 2 ? 18 : 11;
    for (unsigned alpha : {2U, 3U}) {
      long double series = 0;
      std::uint64_t top = 1;
      for (unsigned i = 0; i < K; ++i) top *= b;
      for (std::uint64_t k = 1; k < top; ++k) series += std::pow(static_cast<long double>(b), -static_cast<long double>(oracle::mu(k, alpha, b)));
      long double tail = 0;
      if (alpha == 2) {
        for (unsigned n = K + 1; n < K + 400; ++n)
          tail += (b - 1) * std::pow(static_cast<long double>(b), -static_cast<long double>(n)) * (1 + (n - 1) * (b - 1.0L) / b);
      } else {
        tail = (1 + static_cast<long double>(E_alpha_lambda(2, 1.0, b))) * std::pow(static_cast<long double>(b), -static_cast<long double>(K));
      }
      const long double E = E_alpha_lambda(alpha, 1.0, b);
      const long double excess = E - series;
      const bool ok = excess >= -1e-12L && excess <= tail + 1e-12L;
      o.pass &= ok;
      worst_excess = std::max(worst_excess, static_cast<double>(excess / tail));
    }
  }
  d << "max |w(0) - E| " << fmt("%.1e", worst_origin) << "; E - series within tail (max fraction " << fmt("%.3f", worst_excess)
    << ")";
  o.detail = d.str();
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"extrapolation algebra", extrapolation_algebra},
      {"character property", character_property},
      {"Bernoulli sum identity", bernoulli_identity},
      {"Euler-Maclaurin order", euler_maclaurin_order},
      {"CBC bound", cbc_bound_check},
      {"fast/slow CBC equivalence", fast_slow_equivalence},
      {"existence bound", existence_bound_check},
      {"convergence experiments", convergence_experiments},
      {"fast matvec", fast_matvec},
      {"kernel consistency", kernel_consistency},
  };
  std::vector<std::size_t> selected;
  for (int i = 1; i < argc; ++i) {
    const int n = std::atoi(argv[i]);
    if (n < 1 || n > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "unknown criterion '%s'\n", argv[i]);
      return 2;
    }
    selected.push_back(static_cast<std::size_t>(n - 1));
  }
  if (selected.empty())
    for (std::size_t i = 0; i < criteria.size(); ++i) selected.push_back(i);

  int failures = 0;
  for (std::size_t i : selected) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %2zu %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures ? 1 : 0;
}
