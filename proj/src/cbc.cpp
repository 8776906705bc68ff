#include "eplr/cbc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "eplr/errors.hpp"
#include "eplr/fft.hpp"
#include "eplr/field_table.hpp"

namespace eplr {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kInf = std::numeric_limits<double>::infinity();

bool strictly_better(double candidate, double best) {
  if (!std::isfinite(best)) return candidate < best;
  return candidate < best - kTieTolerance * std::max(1.0, std::abs(best));
}

// Tracks the best and runner-up value of a candidate scan.
struct Scan {
  double best = kInf;
  double second = kInf;
  std::uint64_t arg = 0;

  void offer(double value, std::uint64_t z) {
    if (strictly_better(value, best)) {
      second = best;
      best = value;
      arg = z;
    } else {
      second = std::min(second, value);
    }
  }
  double gap() const { return second - best; }
};

void check_construction_args(unsigned b, unsigned m, std::size_t s, const WeightModel& model) {
  if (!is_prime(b)) throw UsageError("base must be prime");
  if (m < 1) throw UsageError("m must be >= 1");
  if (s < 1) throw UsageError("dimension must be >= 1");
  if (model.base != b) throw UsageError("weight model base does not match the construction base");
  model.validate(s);
}

unsigned mu_fast(std::uint64_t k, unsigned alpha, unsigned b) {
  if (b != 2) return mu_alpha(k, alpha, b);
  unsigned sum = 0;
  for (unsigned i = 0; i < alpha && k; ++i) {
    const unsigned pos = 64U - static_cast<unsigned>(std::countl_zero(k));
    sum += pos;
    k ^= std::uint64_t{1} << (pos - 1);
  }
  return sum;
}

long double sum_of(const std::vector<double>& v) {
  long double acc = 0.0L;
  for (double x : v) acc += x;
  return acc;
}

}  // namespace

double criterion_pointwise(const LatticeRule& rule, const WeightModel& model, double tol) {
  if (!(tol > 0.0)) throw UsageError("tolerance must be positive");
  const std::size_t s = rule.dimension();
  model.validate(s);
  if (model.base != rule.base) throw UsageError("weight model base does not match the rule");
  const PointSet pts = generate_points(rule);
  const auto W = w_alpha_grid(rule.m, model.alpha, rule.base);
  long double acc = 0.0L;
  for (std::size_t n = 0; n < pts.size(); ++n) {
    long double prod = 1.0L;
    for (std::size_t j = 0; j < s; ++j) prod *= 1.0L + model.gamma[j] * model.c_alpha * W[pts.numerator(n, j)];
    acc += prod;
  }
  return static_cast<double>(acc / pts.size() - 1.0L);
}

double criterion_pointwise(const LatticeRule& rule, const GeneralWeights& weights, const WeightModel& model) {
  const std::size_t s = rule.dimension();
  if (weights.s != s || weights.by_mask.size() != (std::size_t{1} << s))
    throw UsageError("general weight table does not match the rule dimension");
  if (model.base != rule.base) throw UsageError("weight model base does not match the rule");
  const PointSet pts = generate_points(rule);
  const auto W = w_alpha_grid(rule.m, model.alpha, rule.base);
  long double acc = 0.0L;
  std::vector<long double> term(std::size_t{1} << s);
  for (std::size_t n = 0; n < pts.size(); ++n) {
    term[0] = 1.0L;
    long double row = weights(0);
    for (std::uint32_t mask = 1; mask < term.size(); ++mask) {
      const unsigned j = static_cast<unsigned>(std::countr_zero(mask));
      term[mask] = term[mask & (mask - 1)] * model.c_alpha * W[pts.numerator(n, j)];
      row += weights(mask) * term[mask];
    }
    acc += row;
  }
  return static_cast<double>(acc / pts.size() - 1.0L);
}

double criterion_grid_term(const WeightModel& model, std::size_t s, unsigned m) {
  model.validate(s);
  const auto W = w_alpha_grid(m, model.alpha, model.base);
  const double sigma = static_cast<double>(sum_of(W) / W.size());
  long double prod = 1.0L;
  for (std::size_t j = 0; j < s; ++j) prod *= 1.0L + model.gamma[j] * model.c_alpha * sigma;
  return static_cast<double>(prod - 1.0L);
}

DualSum criterion_dual_oracle(const LatticeRule& rule, const WeightModel& model, unsigned digits) {
  return criterion_dual_oracle_prefixes(rule, model, digits).back();
}

std::vector<DualSum> criterion_dual_oracle_prefixes(const LatticeRule& rule, const WeightModel& model,
                                                    unsigned digits) {
  rule.validate();
  const std::size_t s = rule.dimension();
  model.validate(s);
  if (model.base != rule.base) throw UsageError("weight model base does not match the rule");
  const unsigned b = rule.base, m = rule.m;
  if (digits < m) throw UsageError("dual oracle truncation needs digits >= m");
  const std::uint64_t N = rule.size();
  std::uint64_t total = 1;
  for (unsigned i = 0; i < digits; ++i) {
    if (total > kDualEnumerationBudget / b) throw ResourceError("dual oracle enumeration budget exceeded");
    total *= b;
  }
  if (static_cast<double>(N) * static_cast<double>(N) * static_cast<double>(s) > static_cast<double>(kDualConvolutionBudget))
    throw ResourceError("dual oracle convolution budget exceeded");

  // h[r] = sum over k = r + b^m t < b^digits, k != 0, of b^{-mu_alpha(k)}
  std::vector<long double> h(N, 0.0L);
  const long double bl = b;
  std::vector<long double> weight_of_mu(64 * model.alpha + 1);
  for (std::size_t i = 0; i < weight_of_mu.size(); ++i) weight_of_mu[i] = std::pow(bl, -static_cast<long double>(i));
  for (std::uint64_t k = 1; k < total; ++k) h[k % N] += weight_of_mu[mu_fast(k, model.alpha, b)];

  const ResidueRing ring(rule.modulus);
  const DigitOps& ops = ring.ops();
  const long double E = E_alpha_lambda(model.alpha, 1.0, b);
  const long double prefix = mu_series_prefix(model.alpha, 1.0L, b, digits) - 1.0L;
  const long double tail = std::max(0.0L, E - prefix) + 4.0L * std::numeric_limits<double>::epsilon() * E;
  long double full = 1.0L, trunc = 1.0L;
  std::vector<DualSum> out;

  // zero_state: all r_j = 0 so far; state[sigma]: some r_j != 0, partial sum sigma.
  long double zero_state = 1.0L;
  std::vector<long double> state(N, 0.0L), next(N);
  std::vector<std::uint64_t> image(N);
  for (std::size_t j = 0; j < s; ++j) {
    const long double gc = static_cast<long double>(model.gamma[j]) * model.c_alpha;
    const std::uint64_t q = rule.gen[j].encode();
    for (std::uint64_t r = 0; r < N; ++r) image[r] = ring.mul(r, q);
    const long double f0 = 1.0L + gc * h[0];
    std::fill(next.begin(), next.end(), 0.0L);
    for (std::uint64_t sigma = 0; sigma < N; ++sigma) {
      const long double v = state[sigma];
      if (v == 0.0L) continue;
      next[sigma] += v * f0;
      for (std::uint64_t r = 1; r < N; ++r) next[ops.add(sigma, image[r])] += v * gc * h[r];
    }
    for (std::uint64_t r = 1; r < N; ++r) next[image[r]] += zero_state * gc * h[r];
    zero_state *= f0;
    state.swap(next);

    // Everything with some k_j >= b^digits, dual or not, is bounded by
    // prod_j(1 + g_j E) - prod_j(1 + g_j (E - tail)).
    full *= 1.0L + gc * E;
    trunc *= 1.0L + gc * std::max(0.0L, E - tail);
    out.push_back({static_cast<double>(state[0]), static_cast<double>(full - trunc)});
  }
  return out;
}

CriterionReport cbc_slow(unsigned b, unsigned m, std::size_t s, const WeightModel& model) {
  check_construction_args(b, m, s, model);
  const auto start = Clock::now();
  const GFPoly p = find_irreducible(b, m);
  const FieldTable table(p);
  const ResidueRing ring(p);
  const LaurentMap map(p);
  const auto W = w_alpha_grid(m, model.alpha, b);
  const std::uint64_t N = table.size(), e = table.order();
  const double C = model.c_alpha;

  CriterionReport rep;
  rep.rule.base = b;
  rep.rule.m = m;
  rep.rule.modulus = p;
  rep.rule.gen.push_back(GFPoly::constant(b, 1));
  std::vector<double> P(N);
  for (std::uint64_t n = 0; n < N; ++n) P[n] = 1.0 + model.gamma[0] * C * W[map.numerator(n)];
  rep.per_dimension.push_back(static_cast<double>(sum_of(P) / N - 1.0L));
  rep.selection_gap.push_back(kInf);

  std::vector<double> col(N);
  for (std::size_t d = 1; d < s; ++d) {
    const double gc = model.gamma[d] * C;
    Scan scan;
    for (std::uint64_t z = 1; z <= e; ++z) {
      const std::uint64_t q = table.exp(z % e);
      long double acc = 0.0L;
      for (std::uint64_t n = 0; n < N; ++n) acc += P[n] * (1.0L + gc * W[map.numerator(ring.mul(n, q))]);
      scan.offer(static_cast<double>(acc / N - 1.0L), z);
    }
    const std::uint64_t q = table.exp(scan.arg % e);
    for (std::uint64_t n = 0; n < N; ++n) P[n] *= 1.0 + gc * W[map.numerator(ring.mul(n, q))];
    rep.rule.gen.push_back(GFPoly::from_encoding(b, q));
    rep.per_dimension.push_back(static_cast<double>(sum_of(P) / N - 1.0L));
    rep.selection_gap.push_back(scan.gap());
  }
  rep.criterion = rep.per_dimension.back();
  rep.bound = cbc_bound(model, s, m, rep.bound_lambda);
  rep.wall_time = Clock::now() - start;
  return rep;
}

CriterionReport cbc_fast(unsigned b, unsigned m, std::size_t s, const WeightModel& model) {
  check_construction_args(b, m, s, model);
  return cbc_fast(find_irreducible(b, m), s, model);
}

CriterionReport cbc_fast(const GFPoly& modulus, std::size_t s, const WeightModel& model) {
  const unsigned b = modulus.base();
  if (modulus.degree() < 1) throw UsageError("modulus must have degree >= 1");
  const unsigned m = static_cast<unsigned>(modulus.degree());
  check_construction_args(b, m, s, model);
  const auto start = Clock::now();
  const FieldTable table(modulus);
  const LaurentMap map(modulus);
  const auto W = w_alpha_grid(m, model.alpha, b);
  const std::uint64_t N = table.size(), e = table.order();
  const double C = model.c_alpha;

  // kernel[t] = w_alpha(v_m(g^t / p)); circulant A[z][n] = kernel[z - n].
  std::vector<double> kernel(e);
  for (std::uint64_t t = 0; t < e; ++t) kernel[t] = W[map.numerator(table.exp(t))];
  const CirculantConvolver conv(kernel);

  CriterionReport rep;
  rep.rule.base = b;
  rep.rule.m = m;
  rep.rule.modulus = modulus;
  rep.rule.gen.push_back(GFPoly::constant(b, 1));

  // plog[i] = P at residue g^i; p_zero = P at residue 0.
  std::vector<double> plog(e);
  for (std::uint64_t i = 0; i < e; ++i) plog[i] = 1.0 + model.gamma[0] * C * kernel[i];
  double p_zero = 1.0 + model.gamma[0] * C * W[0];
  auto criterion = [&] { return static_cast<double>((p_zero + sum_of(plog)) / N - 1.0L); };
  rep.per_dimension.push_back(criterion());
  rep.selection_gap.push_back(kInf);

  std::vector<double> reversed(e);
  for (std::size_t d = 1; d < s; ++d) {
    const double gc = model.gamma[d] * C;
    for (std::uint64_t n = 0; n < e; ++n) reversed[n] = plog[(e - n) % e];  // P at g^{-n}
    const auto eta = conv.apply(reversed);
    const long double sum_prev = sum_of(plog);
    const double p_zero_next = p_zero * (1.0 + gc * W[0]);
    Scan scan;
    for (std::uint64_t z = 1; z <= e; ++z) {
      const long double value = (p_zero_next + sum_prev + static_cast<long double>(gc) * eta[z % e]) / N - 1.0L;
      scan.offer(static_cast<double>(value), z);
    }
    const std::uint64_t z0 = scan.arg % e;
    for (std::uint64_t i = 0; i < e; ++i) plog[i] *= 1.0 + gc * kernel[(i + z0) % e];
    p_zero = p_zero_next;
    rep.rule.gen.push_back(table.exp_poly(z0));
    rep.per_dimension.push_back(criterion());
    rep.selection_gap.push_back(scan.gap());
  }
  rep.criterion = rep.per_dimension.back();
  rep.bound = cbc_bound(model, s, m, rep.bound_lambda);
  rep.wall_time = Clock::now() - start;
  return rep;
}

namespace {

// Shared driver: enumerate all vectors in (G*)^s in lexicographic order of
// the candidate index (q encoded 1..b^m-1), keeping the first strict minimizer.
template <class Evaluate>
CriterionReport exhaustive_driver(unsigned b, unsigned m, std::size_t s, Evaluate&& evaluate) {
  const auto start = Clock::now();
  const std::uint64_t N = checked_pow(b, m);
  const std::uint64_t cand = N - 1;
  double count = 1.0;
  for (std::size_t j = 0; j < s; ++j) count *= static_cast<double>(cand);
  if (count > static_cast<double>(kExhaustiveBudget)) throw ResourceError("exhaustive search budget exceeded");

  CriterionReport rep;
  rep.rule.base = b;
  rep.rule.m = m;
  rep.rule.modulus = find_irreducible(b, m);
  std::vector<std::uint64_t> idx(s, 1), best(s, 1);
  Scan scan;
  std::uint64_t serial = 0;
  std::vector<std::uint64_t> best_idx;
  for (;;) {
    const double v = evaluate(rep.rule.modulus, idx);
    const double before = scan.best;
    scan.offer(v, serial++);
    if (scan.best != before) best = idx;
    std::size_t j = s;
    while (j-- > 0) {
      if (++idx[j] < N) break;
      idx[j] = 1;
    }
    if (j == static_cast<std::size_t>(-1)) break;
  }
  for (std::uint64_t q : best) rep.rule.gen.push_back(GFPoly::from_encoding(b, q));
  rep.criterion = scan.best;
  rep.per_dimension.assign(s, kInf);
  rep.per_dimension.back() = scan.best;
  rep.selection_gap.assign(s, kInf);
  rep.selection_gap.back() = scan.gap();
  rep.wall_time = Clock::now() - start;
  return rep;
}

// col[q][n] = w_alpha(v_m(n q / p)) for every candidate q.
std::vector<std::vector<double>> candidate_columns(const GFPoly& p, const std::vector<double>& W) {
  const ResidueRing ring(p);
  const LaurentMap map(p);
  const std::uint64_t N = ring.size();
  std::vector<std::vector<double>> col(N);
  for (std::uint64_t q = 1; q < N; ++q) {
    col[q].resize(N);
    for (std::uint64_t n = 0; n < N; ++n) col[q][n] = W[map.numerator(ring.mul(n, q))];
  }
  return col;
}

}  // namespace

CriterionReport exhaustive_best(unsigned b, unsigned m, std::size_t s, const WeightModel& model) {
  check_construction_args(b, m, s, model);
  const auto W = w_alpha_grid(m, model.alpha, b);
  std::vector<std::vector<double>> col;
  auto rep = exhaustive_driver(b, m, s, [&](const GFPoly& p, const std::vector<std::uint64_t>& idx) {
    if (col.empty()) col = candidate_columns(p, W);
    const std::uint64_t N = W.size();
    long double acc = 0.0L;
    for (std::uint64_t n = 0; n < N; ++n) {
      long double prod = 1.0L;
      for (std::size_t j = 0; j < idx.size(); ++j) prod *= 1.0L + model.gamma[j] * model.c_alpha * col[idx[j]][n];
      acc += prod;
    }
    return static_cast<double>(acc / N - 1.0L);
  });
  rep.bound = cbc_bound(model, s, m, rep.bound_lambda);
  return rep;
}

CriterionReport exhaustive_best(unsigned b, unsigned m, const GeneralWeights& weights, const WeightModel& model) {
  const std::size_t s = weights.s;
  if (s < 1 || weights.by_mask.size() != (std::size_t{1} << s)) throw UsageError("general weight table is malformed");
  if (s > 4) throw ResourceError("general weights are supported for s <= 4 only");
  if (model.base != b) throw UsageError("weight model base does not match the construction base");
  const auto W = w_alpha_grid(m, model.alpha, b);
  std::vector<std::vector<double>> col;
  auto rep = exhaustive_driver(b, m, s, [&](const GFPoly& p, const std::vector<std::uint64_t>& idx) {
    if (col.empty()) col = candidate_columns(p, W);
    const std::uint64_t N = W.size();
    std::vector<long double> term(std::size_t{1} << s);
    long double acc = 0.0L;
    for (std::uint64_t n = 0; n < N; ++n) {
      term[0] = 1.0L;
      long double row = weights(0);
      for (std::uint32_t mask = 1; mask < term.size(); ++mask) {
        const unsigned j = static_cast<unsigned>(std::countr_zero(mask));
        term[mask] = term[mask & (mask - 1)] * model.c_alpha * col[idx[j]][n];
        row += weights(mask) * term[mask];
      }
      acc += row;
    }
    return static_cast<double>(acc / N - 1.0L);
  });
  rep.bound = existence_bound(weights, model, m, rep.bound_lambda);
  return rep;
}

}  // namespace eplr
