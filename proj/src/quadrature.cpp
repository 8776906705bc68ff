#include "eplr/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "eplr/cbc.hpp"
#include "eplr/errors.hpp"

namespace eplr {

namespace {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

std::vector<double> weights_for(const IntegrandParams& params, std::size_t s) {
  if (params.gamma.size() < s) throw UsageError("integrand needs " + std::to_string(s) + " weights");
  std::vector<double> g(params.gamma.begin(), params.gamma.begin() + static_cast<std::ptrdiff_t>(s));
  for (double v : g)
    if (!(v >= 0.0)) throw UsageError("integrand weights must be nonnegative");
  return g;
}

}  // namespace

void Integrand::check_dimension(std::size_t s) const {
  if (dimension && *dimension != s)
    throw UsageError("integrand '" + id + "' has dimension " + std::to_string(*dimension) + ", points have " +
                     std::to_string(s));
}

std::vector<IntegrandInfo> builtin_integrands() {
  return {
      {"constant", "f(x) = value, any s"},
      {"exp", "f(x) = exp(x), s = 1"},
      {"bivariate", "f(x, y) = y exp(xy) / (e - 2), s = 2"},
      {"f1", "prod_j [1 + gamma_j (x_j^c1 - 1/(1 + c1))], any s"},
      {"f2", "prod_j [1 + gamma_j / (1 + gamma_j x_j^c2)], any s; exact for c2 in {1, 2}"},
  };
}

Integrand make_integrand(const std::string& id, std::size_t s, const IntegrandParams& params) {
  if (s < 1) throw UsageError("integrand dimension must be >= 1");
  Integrand f;
  f.id = id;
  if (id == "constant") {
    const double c = params.value;
    f.parameters["value"] = c;
    f.eval = [c](std::span<const double>) { return c; };
    f.exact_integral = c;
  } else if (id == "exp") {
    f.dimension = 1;
    f.eval = [](std::span<const double> x) { return std::exp(x[0]); };
    f.exact_integral = std::numbers::e - 1.0;
  } else if (id == "bivariate") {
    f.dimension = 2;
    const double scale = 1.0 / (std::numbers::e - 2.0);
    f.eval = [scale](std::span<const double> x) { return x[1] * std::exp(x[0] * x[1]) * scale; };
    f.exact_integral = 1.0;
  } else if (id == "f1") {
    const double c1 = params.c1;
    if (!(c1 > 0.0)) throw UsageError("f1 needs c1 > 0");
    const auto g = weights_for(params, s);
    const double mean = 1.0 / (1.0 + c1);
    f.parameters["c1"] = c1;
    f.eval = [g, c1, mean](std::span<const double> x) {
      double prod = 1.0;
      for (std::size_t j = 0; j < g.size(); ++j) prod *= 1.0 + g[j] * (std::pow(x[j], c1) - mean);
      return prod;
    };
    f.exact_integral = 1.0;
  } else if (id == "f2") {
    const double c2 = params.c2;
    if (!(c2 > 0.0)) throw UsageError("f2 needs c2 > 0");
    const auto g = weights_for(params, s);
    f.parameters["c2"] = c2;
    if (c2 == 1.0) {
      f.eval = [g](std::span<const double> x) {
        double prod = 1.0;
        for (std::size_t j = 0; j < g.size(); ++j) prod *= 1.0 + g[j] / (1.0 + g[j] * x[j]);
        return prod;
      };
      double exact = 1.0;
      for (double v : g) exact *= 1.0 + std::log1p(v);
      f.exact_integral = exact;
    } else {
      f.eval = [g, c2](std::span<const double> x) {
        double prod = 1.0;
        for (std::size_t j = 0; j < g.size(); ++j) prod *= 1.0 + g[j] / (1.0 + g[j] * std::pow(x[j], c2));
        return prod;
      };
      if (c2 == 2.0) {
        double exact = 1.0;
        for (double v : g) exact *= 1.0 + std::sqrt(v) * std::atan(std::sqrt(v));
        f.exact_integral = exact;
      }
    }
  } else {
    throw UsageError("unknown integrand '" + id + "'");
  }
  if (f.dimension) {
    f.check_dimension(s);
  } else if (id != "constant") {
    f.dimension = s;
  }
  return f;
}

double qmc_mean(const Integrand& f, const PointSet& pts) {
  f.check_dimension(pts.dimension());
  if (pts.size() == 0) throw UsageError("empty point set");
  CompensatedSum acc;
  std::vector<double> x(pts.dimension());
  for (std::size_t n = 0; n < pts.size(); ++n) {
    pts.row(n, x);
    acc.add(f.eval(x));
  }
  return acc.value() / static_cast<double>(pts.size());
}

QuadratureReport eplr_integrate(const Integrand& f, std::span<const LatticeRule> rules,
                                const ExtrapolationScheme& scheme) {
  if (rules.size() != scheme.order())
    throw UsageError("extrapolation of order " + std::to_string(scheme.order()) + " needs that many rules, got " +
                     std::to_string(rules.size()));
  std::vector<const LatticeRule*> sorted;
  for (const auto& r : rules) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* c) { return a->m > c->m; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const LatticeRule& r = *sorted[i];
    r.validate();
    if (r.base != scheme.base()) throw UsageError("rule base does not match the extrapolation base");
    if (r.base != sorted[0]->base || r.dimension() != sorted[0]->dimension())
      throw UsageError("rules in a chain must share base and dimension");
    if (i > 0 && sorted[i - 1]->m != r.m + 1) throw UsageError("rules in a chain must have consecutive m");
  }
  QuadratureReport rep;
  for (const LatticeRule* r : sorted) {
    rep.per_rule_estimates.push_back(qmc_mean(f, generate_points(*r)));
    rep.total_points += r->size();
  }
  rep.estimate = scheme.combine(rep.per_rule_estimates);
  if (f.exact_integral) rep.error = std::abs(rep.estimate - *f.exact_integral);
  return rep;
}

double grid_quadrature(const Integrand& f, std::uint64_t N, std::size_t s) {
  return qmc_mean(f, regular_grid(N, s));
}

std::optional<double> fit_rate(std::span<const SweepRow> rows) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (const auto& r : rows) {
    if (!(r.abs_error > 0.0) || !std::isfinite(r.abs_error)) continue;
    const double x = std::log(static_cast<double>(r.N));
    const double y = std::log(r.abs_error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) return std::nullopt;
  const double den = n * sxx - sx * sx;
  if (den == 0.0) return std::nullopt;
  return (n * sxy - sx * sy) / den;
}

std::vector<double> windowed_rates(std::span<const SweepRow> rows, std::size_t window) {
  if (window < 2) throw UsageError("window must be >= 2");
  std::vector<double> out;
  for (std::size_t i = 0; i + window <= rows.size(); ++i) {
    const auto r = fit_rate(rows.subspan(i, window));
    out.push_back(r ? *r : std::nan(""));
  }
  return out;
}

SweepResult convergence_sweep(const Integrand& f, unsigned b, unsigned alpha, unsigned m_min, unsigned m_max,
                              const WeightModel& model) {
  if (!f.exact_integral) throw UsageError("convergence sweep needs an integrand with a known integral");
  if (m_min > m_max) throw UsageError("empty m range");
  if (alpha < 1) throw UsageError("alpha must be >= 1");
  if (m_min < alpha) throw UsageError("m must be >= alpha");
  const std::size_t s = f.dimension.value_or(model.gamma.size());
  const ExtrapolationScheme scheme(b, alpha);
  std::map<unsigned, LatticeRule> cache;
  SweepResult out;
  for (unsigned m = m_min; m <= m_max; ++m) {
    std::vector<LatticeRule> chain;
    for (unsigned k = m - alpha + 1; k <= m; ++k) {
      auto it = cache.find(k);
      if (it == cache.end()) it = cache.emplace(k, cbc_fast(b, k, s, model).rule).first;
      chain.push_back(it->second);
    }
    const auto rep = eplr_integrate(f, chain, scheme);
    out.rows.push_back({m, rep.total_points, rep.estimate, *rep.error});
  }
  const std::size_t half = out.rows.size() / 2;
  out.fitted_rate = fit_rate(std::span<const SweepRow>(out.rows).subspan(half));
  return out;
}

}  // namespace eplr
