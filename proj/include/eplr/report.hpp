#pragma once

#include <string>

#include "eplr/quadrature.hpp"

namespace eplr {

/// CSV with header m,N,estimate,abs_error,fitted_rate; the fitted rate is
/// repeated on every row, "undefined" when it could not be fitted.
std::string sweep_csv(const SweepResult& sweep);

/// Log-log plot of error against N: one data polyline and dotted guides
/// with slopes -alpha and -(alpha-1) through the last data point.
std::string sweep_svg(const SweepResult& sweep, unsigned alpha, const std::string& title);

/// "%.17g" formatting, independent of the locale.
std::string format_real(double v);

}  // namespace eplr
