#include "eplr/pointset.hpp"

#include <bit>
#include <numbers>
#include <ostream>
#include <sstream>

#include "eplr/errors.hpp"
#include "eplr/field_table.hpp"
#include "eplr/walsh.hpp"

namespace eplr {

namespace {

// b^m v_m(x^i q / p) for i < m: the images of the basis of n under n -> v_m(nq/p).
std::vector<std::uint64_t> column_basis(const LatticeRule& rule, const GFPoly& q, const LaurentMap& map) {
  std::vector<std::uint64_t> basis(rule.m);
  for (unsigned i = 0; i < rule.m; ++i) {
    const GFPoly r = poly_mul_mod(GFPoly::monomial(rule.base, i), q, rule.modulus);
    basis[i] = map.numerator(r.encode());
  }
  return basis;
}

// Exact decimal expansion when the denominator is a power of 2 or 5,
// 17 significant digits otherwise.
std::string exact_decimal(std::uint64_t num, std::uint64_t den, unsigned base) {
  if (num == 0) return "0";
  if (base == 2 || base == 5) {
    std::string digits = "0.";
    std::uint64_t rem = num;
    while (rem != 0) {
      // rem * 10 can overflow for huge denominators; they are capped at 2^30 here.
      rem *= 10;
      digits.push_back(static_cast<char>('0' + rem / den));
      rem %= den;
    }
    return digits;
  }
  std::ostringstream os;
  os.precision(17);
  os << static_cast<double>(num) / static_cast<double>(den);
  return os.str();
}

}  // namespace

void LatticeRule::validate() const {
  if (!is_prime(base)) throw UsageError("rule base must be prime");
  if (m < 1) throw UsageError("rule needs m >= 1");
  if (modulus.base() != base || modulus.degree() != static_cast<int>(m))
    throw UsageError("modulus must have base b and degree m");
  if (!is_irreducible(modulus)) throw UsageError("modulus " + modulus.to_string() + " is not irreducible");
  if (gen.empty()) throw UsageError("generating vector is empty");
  for (const auto& q : gen) {
    if (q.base() != base) throw UsageError("generating vector component has the wrong base");
    if (q.is_zero()) throw UsageError("generating vector components must be nonzero");
    if (q.degree() >= static_cast<int>(m)) throw UsageError("generating vector components need degree < m");
  }
}

PointSet::PointSet(std::size_t size, std::size_t dim, std::uint64_t denominator)
    : size_(size), dim_(dim), denominator_(denominator), num_(size * dim, 0) {
  if (denominator == 0) throw UsageError("point set denominator must be positive");
}

void PointSet::row(std::size_t n, std::span<double> out) const {
  const double inv = 1.0 / static_cast<double>(denominator_);
  for (std::size_t j = 0; j < dim_; ++j) out[j] = static_cast<double>(num_[n * dim_ + j]) * inv;
}

void PointSet::write_text(std::ostream& os) const {
  unsigned base = 0;
  for (unsigned b : {2U, 5U}) {
    std::uint64_t d = denominator_;
    while (d % b == 0) d /= b;
    if (d == 1) base = b;
  }
  for (std::size_t n = 0; n < size_; ++n) {
    for (std::size_t j = 0; j < dim_; ++j) {
      if (j) os << ' ';
      os << exact_decimal(numerator(n, j), denominator_, base);
    }
    os << '\n';
  }
}

PointSet generate_points(const LatticeRule& rule) {
  rule.validate();
  const std::uint64_t N = rule.size();
  if (N > kMaxFieldSize) throw ResourceError("point set too large");
  const LaurentMap map(rule.modulus);
  const DigitOps ops(rule.base, rule.m);
  const std::size_t s = rule.dimension();
  PointSet pts(N, s, N);
  for (std::size_t j = 0; j < s; ++j) {
    const auto basis = column_basis(rule, rule.gen[j], map);
    if (rule.base == 2) {
      // Gray-code walk: consecutive codes differ in one bit.
      std::uint64_t value = 0, prev_gray = 0;
      for (std::uint64_t i = 1; i < N; ++i) {
        const std::uint64_t gray = i ^ (i >> 1);
        const unsigned bit = static_cast<unsigned>(std::countr_zero(gray ^ prev_gray));
        value ^= basis[bit];
        pts.set_numerator(gray, j, value);
        prev_gray = gray;
      }
    } else {
      for (std::uint64_t n = 1; n < N; ++n) {
        std::uint64_t acc = 0, t = n;
        for (unsigned i = 0; t > 0; ++i, t /= rule.base) {
          const Digit d = static_cast<Digit>(t % rule.base);
          if (d) acc = ops.add(acc, ops.scale(basis[i], d));
        }
        pts.set_numerator(n, j, acc);
      }
    }
  }
  return pts;
}

bool in_dual(const LatticeRule& rule, std::span<const std::uint64_t> k) {
  if (k.size() != rule.dimension()) throw UsageError("frequency vector has the wrong dimension");
  GFPoly acc(rule.base);
  for (std::size_t j = 0; j < k.size(); ++j) acc = acc + tr_m(k[j], rule.base, rule.m) * rule.gen[j];
  return poly_mod(acc, rule.modulus).is_zero();
}

std::complex<double> character_sum(const LatticeRule& rule, std::span<const std::uint64_t> k) {
  if (k.size() != rule.dimension()) throw UsageError("frequency vector has the wrong dimension");
  const PointSet pts = generate_points(rule);
  const unsigned b = rule.base;
  std::vector<std::uint64_t> counts(b, 0);
  for (std::size_t n = 0; n < pts.size(); ++n) {
    unsigned e = 0;
    for (std::size_t j = 0; j < k.size(); ++j) {
      const auto xi = fraction_digits(pts.numerator(n, j), rule.m, b);
      e = (e + wal_exponent(k[j], xi, b)) % b;
    }
    ++counts[e];
  }
  std::complex<double> sum = 0.0;
  for (unsigned e = 0; e < b; ++e) sum += static_cast<double>(counts[e]) * std::polar(1.0, 2.0 * std::numbers::pi * e / b);
  return sum;
}

PointSet regular_grid(std::uint64_t N, std::size_t s) {
  if (N == 0 || s == 0) throw UsageError("regular grid needs N >= 1 and s >= 1");
  std::uint64_t total = 1;
  for (std::size_t j = 0; j < s; ++j) {
    if (total > kMaxGridPoints / N) throw ResourceError("regular grid N^s exceeds the point budget");
    total *= N;
  }
  PointSet pts(total, s, N);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t t = idx;
    for (std::size_t j = s; j-- > 0;) {
      pts.set_numerator(idx, j, t % N);
      t /= N;
    }
  }
  return pts;
}

}  // namespace eplr
