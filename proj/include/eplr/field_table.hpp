#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "eplr/gf_poly.hpp"

namespace eplr {

/// Carry-free digitwise arithmetic on base-b encodings of polynomials of
/// degree < m, i.e. vector arithmetic in F_b^m. For b = 2 this is XOR.
class DigitOps {
 public:
  DigitOps(unsigned b, unsigned m);

  unsigned base() const { return b_; }
  unsigned digits() const { return m_; }
  std::uint64_t add(std::uint64_t a, std::uint64_t c) const;
  std::uint64_t sub(std::uint64_t a, std::uint64_t c) const;
  std::uint64_t neg(std::uint64_t a) const { return sub(0, a); }
  std::uint64_t scale(std::uint64_t a, Digit k) const;
  Digit digit(std::uint64_t a, unsigned i) const { return static_cast<Digit>(a / pow_[i] % b_); }

 private:
  unsigned b_;
  unsigned m_;
  std::vector<std::uint64_t> pow_;
};

/// Multiplication in F_b[x]/p on encoded residues, without tables.
class ResidueRing {
 public:
  explicit ResidueRing(const GFPoly& modulus);

  const DigitOps& ops() const { return ops_; }
  std::uint64_t size() const { return size_; }
  std::uint64_t mul_x(std::uint64_t r) const;
  std::uint64_t mul(std::uint64_t a, std::uint64_t c) const;
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;

 private:
  DigitOps ops_;
  std::uint64_t size_;
  std::uint64_t tail_;  // -(p - x^m) for monic p, encoded
  Digit top_shift_;
};

/// The map r -> b^m v_m(r/p) on residues of degree < m, as an integer in
/// [0, b^m). It is F_b-linear in r, so it is stored through its values on
/// the monomial basis.
class LaurentMap {
 public:
  explicit LaurentMap(const GFPoly& modulus);

  std::uint64_t numerator(std::uint64_t residue) const;
  std::uint64_t denominator() const { return size_; }
  double value(std::uint64_t residue) const {
    return static_cast<double>(numerator(residue)) / static_cast<double>(size_);
  }

 private:
  DigitOps ops_;
  std::uint64_t size_;
  std::vector<std::uint64_t> basis_;
};

/// Discrete logarithm tables of F_b[x]/p for an irreducible modulus p.
///
/// The generator is the primitive element with the smallest encoding;
/// exp(z) = g^z and log is its inverse on the b^m - 1 nonzero residues.
/// Immutable after construction.
class FieldTable {
 public:
  explicit FieldTable(const GFPoly& modulus);

  const GFPoly& modulus() const { return modulus_; }
  const GFPoly& generator() const { return generator_; }
  unsigned base() const { return modulus_.base(); }
  unsigned degree() const { return static_cast<unsigned>(modulus_.degree()); }
  std::uint64_t size() const { return order_ + 1; }
  /// Order of the multiplicative group, b^m - 1.
  std::uint64_t order() const { return order_; }

  std::uint64_t exp(std::uint64_t z) const { return exp_[z % order_]; }
  std::uint64_t log(std::uint64_t residue) const;
  std::uint64_t log(const GFPoly& residue) const;
  GFPoly exp_poly(std::uint64_t z) const { return GFPoly::from_encoding(base(), exp(z)); }

  std::span<const std::uint32_t> exp_table() const { return exp_; }
  std::span<const std::uint32_t> log_table() const { return log_; }

 private:
  GFPoly modulus_;
  GFPoly generator_;
  std::uint64_t order_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;  // log_[0] unused
};

FieldTable build_field_table(const GFPoly& p);

/// Largest field size accepted by FieldTable (tables use 32-bit entries).
inline constexpr std::uint64_t kMaxFieldSize = std::uint64_t{1} << 30;

}  // namespace eplr
