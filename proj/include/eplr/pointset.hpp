#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "eplr/gf_poly.hpp"

namespace eplr {

/// One polynomial lattice rule: b^m points in dimension s from an
/// irreducible modulus of degree m and nonzero components of degree < m.
struct LatticeRule {
  unsigned base = 2;
  unsigned m = 1;
  GFPoly modulus;
  std::vector<GFPoly> gen;

  std::size_t dimension() const { return gen.size(); }
  std::uint64_t size() const { return checked_pow(base, m); }
  /// Throws UsageError if an invariant is violated.
  void validate() const;

  friend bool operator==(const LatticeRule&, const LatticeRule&) = default;
};

/// Points stored as exact numerators over a common denominator.
class PointSet {
 public:
  PointSet(std::size_t size, std::size_t dim, std::uint64_t denominator);

  std::size_t size() const { return size_; }
  std::size_t dimension() const { return dim_; }
  std::uint64_t denominator() const { return denominator_; }
  std::uint64_t numerator(std::size_t n, std::size_t j) const { return num_[n * dim_ + j]; }
  void set_numerator(std::size_t n, std::size_t j, std::uint64_t v) { num_[n * dim_ + j] = v; }
  double at(std::size_t n, std::size_t j) const {
    return static_cast<double>(numerator(n, j)) / static_cast<double>(denominator_);
  }
  /// Row n as doubles written into out (size >= dimension()).
  void row(std::size_t n, std::span<double> out) const;

  /// One point per line, coordinates space-separated, printed exactly.
  void write_text(std::ostream& os) const;

 private:
  std::size_t size_;
  std::size_t dim_;
  std::uint64_t denominator_;
  std::vector<std::uint64_t> num_;
};

/// Points x_n = (v_m(n q_1 / p), ..., v_m(n q_s / p)), n = 0..b^m-1 in
/// digit-polynomial encoding order.
PointSet generate_points(const LatticeRule& rule);

/// true iff tr_m(k) . q = 0 mod p.
bool in_dual(const LatticeRule& rule, std::span<const std::uint64_t> k);

/// sum over the point set of wal_k(x). Exponents are accumulated exactly
/// and the roots of unity summed at the end.
std::complex<double> character_sum(const LatticeRule& rule, std::span<const std::uint64_t> k);

/// Largest point count accepted by regular_grid.
inline constexpr std::uint64_t kMaxGridPoints = std::uint64_t{1} << 26;

/// Full grid {(n_1/N, ..., n_s/N)} in row-major order (last coordinate fastest).
PointSet regular_grid(std::uint64_t N, std::size_t s);

}  // namespace eplr
