#include "eplr/field_table.hpp"

#include "eplr/errors.hpp"

namespace eplr {

namespace {

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

DigitOps::DigitOps(unsigned b, unsigned m) : b_(b), m_(m), pow_(m + 1, 1) {
  for (unsigned i = 1; i <= m; ++i) pow_[i] = pow_[i - 1] * b;
}

std::uint64_t DigitOps::add(std::uint64_t a, std::uint64_t c) const {
  if (b_ == 2) return a ^ c;
  std::uint64_t r = 0;
  for (unsigned i = 0; i < m_ && (a | c); ++i) {
    r += ((a % b_ + c % b_) % b_) * pow_[i];
    a /= b_;
    c /= b_;
  }
  return r;
}

std::uint64_t DigitOps::sub(std::uint64_t a, std::uint64_t c) const {
  if (b_ == 2) return a ^ c;
  std::uint64_t r = 0;
  for (unsigned i = 0; i < m_ && (a | c); ++i) {
    r += ((a % b_ + b_ - c % b_) % b_) * pow_[i];
    a /= b_;
    c /= b_;
  }
  return r;
}

std::uint64_t DigitOps::scale(std::uint64_t a, Digit k) const {
  k %= b_;
  if (k == 0) return 0;
  if (k == 1) return a;
  std::uint64_t r = 0;
  for (unsigned i = 0; i < m_ && a; ++i) {
    r += (a % b_ * k % b_) * pow_[i];
    a /= b_;
  }
  return r;
}

ResidueRing::ResidueRing(const GFPoly& modulus)
    : ops_(modulus.base(), static_cast<unsigned>(std::max(modulus.degree(), 1))), size_(0), tail_(0), top_shift_(0) {
  if (modulus.degree() < 1) throw UsageError("modulus must have degree >= 1");
  const GFPoly monic = make_monic(modulus);
  const unsigned m = static_cast<unsigned>(monic.degree());
  size_ = checked_pow(monic.base(), m);
  // x^m = -(p - x^m) mod p
  std::vector<Digit> low(monic.coeffs().begin(), monic.coeffs().end() - 1);
  tail_ = ops_.neg(GFPoly(monic.base(), low).encode());
}

std::uint64_t ResidueRing::mul_x(std::uint64_t r) const {
  const unsigned b = ops_.base();
  const std::uint64_t top = r / (size_ / b);
  const std::uint64_t shifted = (r % (size_ / b)) * b;
  return ops_.add(shifted, ops_.scale(tail_, static_cast<Digit>(top)));
}

std::uint64_t ResidueRing::mul(std::uint64_t a, std::uint64_t c) const {
  // Horner over the digits of c, highest first.
  const unsigned m = ops_.digits();
  std::uint64_t acc = 0;
  for (unsigned i = m; i-- > 0;) {
    acc = mul_x(acc);
    const Digit ci = ops_.digit(c, i);
    if (ci != 0) acc = ops_.add(acc, ops_.scale(a, ci));
  }
  return acc;
}

std::uint64_t ResidueRing::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t result = 1, base = a;
  for (; e > 0; e >>= 1) {
    if (e & 1U) result = mul(result, base);
    if (e > 1) base = mul(base, base);
  }
  return result;
}

LaurentMap::LaurentMap(const GFPoly& modulus)
    : ops_(modulus.base(), static_cast<unsigned>(std::max(modulus.degree(), 1))), size_(0) {
  if (modulus.degree() < 1) throw UsageError("modulus must have degree >= 1");
  const unsigned m = static_cast<unsigned>(modulus.degree());
  const unsigned b = modulus.base();
  size_ = checked_pow(b, m);
  basis_.resize(m);
  for (unsigned i = 0; i < m; ++i) {
    const auto digits = laurent_digits(GFPoly::monomial(b, i), modulus, m);
    std::uint64_t num = 0;
    for (Digit d : digits) num = num * b + d;
    basis_[i] = num;
  }
}

std::uint64_t LaurentMap::numerator(std::uint64_t residue) const {
  std::uint64_t acc = 0;
  for (unsigned i = 0; residue > 0; ++i) {
    const Digit d = static_cast<Digit>(residue % ops_.base());
    residue /= ops_.base();
    if (d != 0) acc = ops_.add(acc, ops_.scale(basis_[i], d));
  }
  return acc;
}

FieldTable::FieldTable(const GFPoly& modulus) : modulus_(modulus), order_(0) {
  if (modulus.is_zero() || modulus.degree() < 1 || !is_irreducible(modulus))
    throw UsageError("field table needs an irreducible modulus, got " + modulus.to_string());
  const unsigned b = modulus.base();
  const unsigned m = static_cast<unsigned>(modulus.degree());
  const std::uint64_t size = checked_pow(b, m);
  if (size > kMaxFieldSize) throw ResourceError("field of size b^m = " + std::to_string(size) + " exceeds table budget");
  order_ = size - 1;
  const ResidueRing ring(modulus);
  const auto factors = distinct_prime_factors(order_);

  std::uint64_t g = 1;
  for (;; ++g) {
    bool primitive = true;
    for (std::uint64_t r : factors) {
      if (ring.pow(g, order_ / r) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) break;
  }
  generator_ = GFPoly::from_encoding(b, g);

  exp_.assign(order_, 0);
  log_.assign(size, 0);
  std::vector<bool> seen(size, false);
  std::uint64_t r = 1;
  for (std::uint64_t z = 0; z < order_; ++z) {
    if (r == 0 || seen[r]) throw UsageError("generator does not enumerate the multiplicative group");
    seen[r] = true;
    exp_[z] = static_cast<std::uint32_t>(r);
    log_[r] = static_cast<std::uint32_t>(z);
    r = ring.mul(r, g);
  }
  if (r != 1) throw UsageError("generator order mismatch");
}

std::uint64_t FieldTable::log(std::uint64_t residue) const {
  if (residue == 0 || residue > order_) throw UsageError("log of zero or out-of-range residue");
  return log_[residue];
}

std::uint64_t FieldTable::log(const GFPoly& residue) const {
  return log(poly_mod(residue, modulus_).encode());
}

FieldTable build_field_table(const GFPoly& p) { return FieldTable(p); }

}  // namespace eplr
