#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "eplr/fft.hpp"
#include "eplr/field_table.hpp"
#include "eplr/pointset.hpp"

namespace eplr {

/// Dense row-major matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Circulant description of a polynomial lattice rule. Rows are ordered
/// n = 0 first, then n = g^z for z = 0..b^m-2; the row for n = g^z has
/// coordinate j equal to c[(z + z_j) mod (b^m - 1)].
struct CirculantProfile {
  LatticeRule rule;
  std::vector<std::uint64_t> exponents;  // z_j = log_g(q_j)
  std::vector<double> c;                 // c[t] = v_m(g^t / p)
  std::shared_ptr<const CirculantConvolver> convolver;

  std::size_t rows() const { return c.size() + 1; }
};

/// Throws UsageError if a component is zero or the moduli differ.
CirculantProfile build_profile(const LatticeRule& rule, const FieldTable& table);

/// Y = X A with X the point matrix in profile order; A is s x t.
Matrix fast_product(const CirculantProfile& profile, const Matrix& A);

/// Same product from explicitly generated points, same row order.
Matrix naive_product(const LatticeRule& rule, const FieldTable& table, const Matrix& A);
Matrix naive_product(const LatticeRule& rule, const Matrix& A);

}  // namespace eplr
