#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace eplr {

using Digit = std::uint32_t;

/// Polynomial over the prime field F_b, coefficients stored low degree first.
///
/// The zero polynomial has an empty coefficient vector and degree
/// kZeroDegree. The base-b integer obtained by reading the coefficients as
/// digits (coefficient of x^i is the digit of b^i) is the polynomial's
/// encoding; it defines the enumeration order used for every deterministic
/// "smallest" choice in the library.
class GFPoly {
 public:
  static constexpr int kZeroDegree = std::numeric_limits<int>::min();

  GFPoly() : base_(2) {}
  explicit GFPoly(unsigned base);
  GFPoly(unsigned base, std::vector<Digit> coeffs);

  static GFPoly from_encoding(unsigned base, std::uint64_t code);
  static GFPoly monomial(unsigned base, unsigned degree, Digit coeff = 1);
  static GFPoly constant(unsigned base, Digit value);

  unsigned base() const { return base_; }
  int degree() const {
    return coeffs_.empty() ? kZeroDegree : static_cast<int>(coeffs_.size()) - 1;
  }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }
  std::span<const Digit> coeffs() const { return coeffs_; }
  Digit coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }
  Digit leading() const { return coeffs_.empty() ? 0 : coeffs_.back(); }

  /// Coefficients read as a base-b integer. Throws if it overflows 64 bits.
  std::uint64_t encode() const;

  /// Human-readable form, e.g. "x^3 + x + 1" (or "2x^2 + 1" for b > 2).
  std::string to_string() const;

  friend bool operator==(const GFPoly&, const GFPoly&) = default;

  friend GFPoly operator+(const GFPoly& a, const GFPoly& c);
  friend GFPoly operator-(const GFPoly& a, const GFPoly& c);
  friend GFPoly operator*(const GFPoly& a, const GFPoly& c);
  GFPoly scaled(Digit factor) const;
  GFPoly shifted(unsigned k) const;  // multiply by x^k

 private:
  void normalize();

  unsigned base_;
  std::vector<Digit> coeffs_;
};

bool is_prime(unsigned n);

/// Multiplicative inverse of a nonzero digit in F_b.
Digit inverse_mod(Digit a, unsigned b);

/// Quotient and remainder of a by nonzero p.
std::pair<GFPoly, GFPoly> poly_divmod(const GFPoly& a, const GFPoly& p);
GFPoly poly_mod(const GFPoly& a, const GFPoly& p);
GFPoly poly_mul_mod(const GFPoly& a, const GFPoly& c, const GFPoly& p);
GFPoly poly_pow_mod(const GFPoly& a, std::uint64_t e, const GFPoly& p);
GFPoly poly_gcd(GFPoly a, GFPoly c);
GFPoly make_monic(const GFPoly& p);

/// Exact irreducibility test (Rabin's criterion). Requires degree >= 1.
bool is_irreducible(const GFPoly& p);

/// Monic irreducible polynomial of degree m with the smallest encoding.
GFPoly find_irreducible(unsigned b, unsigned m);

/// First m coefficients a_1..a_m of the Laurent expansion
/// q/p = sum_i a_i x^{-i}. Requires deg q < deg p.
std::vector<Digit> laurent_digits(const GFPoly& q, const GFPoly& p, unsigned m);

/// sum_{i=1}^m a_i b^{-i} for the digits above.
double v_m(const GFPoly& q, const GFPoly& p, unsigned m);

/// Digits of k in base b, truncated to the first m, as a polynomial.
GFPoly tr_m(std::uint64_t k, unsigned b, unsigned m);

/// b^m, throwing UsageError when it does not fit into 63 bits.
std::uint64_t checked_pow(unsigned b, unsigned m);

}  // namespace eplr
