#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eplr/extrapolation.hpp"
#include "eplr/pointset.hpp"
#include "eplr/walsh.hpp"

namespace eplr {

/// A test function on [0,1)^s.
struct Integrand {
  std::string id;
  /// Fixed dimension, or nullopt when any s is accepted.
  std::optional<std::size_t> dimension;
  std::function<double(std::span<const double>)> eval;
  std::optional<double> exact_integral;
  std::map<std::string, double> parameters;

  void check_dimension(std::size_t s) const;
};

/// Parameters for the built-in integrands; gamma is only read by f1 and f2.
struct IntegrandParams {
  double value = 1.0;  // constant
  double c1 = 1.3;
  double c2 = 1.0;
  std::vector<double> gamma;
};

struct IntegrandInfo {
  std::string id;
  std::string description;
};

/// Ids: constant, exp (s = 1), bivariate (s = 2), f1, f2.
std::vector<IntegrandInfo> builtin_integrands();

/// Builds a built-in integrand in dimension s. Throws UsageError for an
/// unknown id or a dimension the integrand does not support.
Integrand make_integrand(const std::string& id, std::size_t s, const IntegrandParams& params = {});

/// Equal-weight mean of f over the point set, with compensated summation.
double qmc_mean(const Integrand& f, const PointSet& pts);

struct QuadratureReport {
  double estimate = 0.0;
  /// per_rule_estimates[tau-1] is the mean over the rule of size b^{m-tau+1}.
  std::vector<double> per_rule_estimates;
  std::uint64_t total_points = 0;
  std::optional<double> error;
};

/// Extrapolated estimate from alpha rules of consecutive sizes (any order).
QuadratureReport eplr_integrate(const Integrand& f, std::span<const LatticeRule> rules,
                                const ExtrapolationScheme& scheme);

/// Mean of f over regular_grid(N, s).
double grid_quadrature(const Integrand& f, std::uint64_t N, std::size_t s);

struct SweepRow {
  unsigned m = 0;
  std::uint64_t N = 0;
  double estimate = 0.0;
  double abs_error = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  /// Least-squares slope of log error against log N over the upper half of
  /// the rows; nullopt when fewer than two positive errors are available.
  std::optional<double> fitted_rate;
};

/// Builds rules by cbc_fast for every size needed by m in [m_min, m_max]
/// and integrates f with the order-alpha extrapolated rule at each m.
SweepResult convergence_sweep(const Integrand& f, unsigned b, unsigned alpha, unsigned m_min, unsigned m_max,
                              const WeightModel& model);

/// Least-squares slope of log(error) against log(N); rows with zero error
/// are skipped.
std::optional<double> fit_rate(std::span<const SweepRow> rows);

/// Fitted slopes over each run of `window` consecutive rows.
std::vector<double> windowed_rates(std::span<const SweepRow> rows, std::size_t window);

}  // namespace eplr
