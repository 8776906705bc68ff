#include "eplr/gf_poly.hpp"

#include <algorithm>
#include <sstream>

#include "eplr/errors.hpp"

namespace eplr {

namespace {

void require_base(unsigned b) {
  if (!is_prime(b)) throw UsageError("base must be a prime, got " + std::to_string(b));
}

void require_same_base(const GFPoly& a, const GFPoly& c) {
  if (a.base() != c.base()) {
    throw UsageError("polynomials over different bases (" + std::to_string(a.base()) +
                     " vs " + std::to_string(c.base()) + ")");
  }
}

std::vector<unsigned> prime_factors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// x^(b^k) mod p by k successive b-th powers.
GFPoly frobenius_power(const GFPoly& p, unsigned k) {
  GFPoly r = poly_mod(GFPoly::monomial(p.base(), 1), p);
  for (unsigned i = 0; i < k; ++i) r = poly_pow_mod(r, p.base(), p);
  return r;
}

}  // namespace

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Digit inverse_mod(Digit a, unsigned b) {
  a %= b;
  if (a == 0) throw UsageError("zero has no inverse in F_b");
  // Fermat: a^(b-2)
  std::uint64_t result = 1, base = a;
  for (unsigned e = b - 2; e > 0; e >>= 1) {
    if (e & 1U) result = result * base % b;
    base = base * base % b;
  }
  return static_cast<Digit>(result);
}

std::uint64_t checked_pow(unsigned b, unsigned m) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < m; ++i) {
    if (r > (std::uint64_t{1} << 62) / b) throw UsageError("b^m overflows 63 bits");
    r *= b;
  }
  return r;
}

GFPoly::GFPoly(unsigned base) : base_(base) { require_base(base); }

GFPoly::GFPoly(unsigned base, std::vector<Digit> coeffs) : base_(base), coeffs_(std::move(coeffs)) {
  require_base(base);
  for (Digit c : coeffs_) {
    if (c >= base) throw UsageError("coefficient " + std::to_string(c) + " out of range for base " + std::to_string(base));
  }
  normalize();
}

GFPoly GFPoly::from_encoding(unsigned base, std::uint64_t code) {
  require_base(base);
  std::vector<Digit> c;
  while (code > 0) {
    c.push_back(static_cast<Digit>(code % base));
    code /= base;
  }
  return GFPoly(base, std::move(c));
}

GFPoly GFPoly::monomial(unsigned base, unsigned degree, Digit coeff) {
  std::vector<Digit> c(degree + 1, 0);
  c[degree] = coeff % base;
  return GFPoly(base, std::move(c));
}

GFPoly GFPoly::constant(unsigned base, Digit value) { return GFPoly(base, {value % base}); }

void GFPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::uint64_t GFPoly::encode() const {
  std::uint64_t code = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    if (code > (std::numeric_limits<std::uint64_t>::max() - *it) / base_)
      throw UsageError("polynomial encoding overflows 64 bits");
    code = code * base_ + *it;
  }
  return code;
}

std::string GFPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    Digit c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0) {
      os << c;
      continue;
    }
    if (c != 1) os << c;
    os << 'x';
    if (i > 1) os << '^' << i;
  }
  return os.str();
}

GFPoly operator+(const GFPoly& a, const GFPoly& c) {
  require_same_base(a, c);
  const unsigned b = a.base();
  std::vector<Digit> r(std::max(a.coeffs_.size(), c.coeffs_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = (a.coeff(i) + c.coeff(i)) % b;
  return GFPoly(b, std::move(r));
}

GFPoly operator-(const GFPoly& a, const GFPoly& c) {
  require_same_base(a, c);
  const unsigned b = a.base();
  std::vector<Digit> r(std::max(a.coeffs_.size(), c.coeffs_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = (a.coeff(i) + b - c.coeff(i)) % b;
  return GFPoly(b, std::move(r));
}

GFPoly operator*(const GFPoly& a, const GFPoly& c) {
  require_same_base(a, c);
  const unsigned b = a.base();
  if (a.is_zero() || c.is_zero()) return GFPoly(b);
  std::vector<std::uint64_t> acc(a.coeffs_.size() + c.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < c.coeffs_.size(); ++j) acc[i + j] += std::uint64_t{a.coeffs_[i]} * c.coeffs_[j];
  }
  std::vector<Digit> r(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<Digit>(acc[i] % b);
  return GFPoly(b, std::move(r));
}

GFPoly GFPoly::scaled(Digit factor) const {
  std::vector<Digit> r(coeffs_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = static_cast<Digit>(std::uint64_t{coeffs_[i]} * factor % base_);
  return GFPoly(base_, std::move(r));
}

GFPoly GFPoly::shifted(unsigned k) const {
  if (is_zero()) return *this;
  std::vector<Digit> r(k, 0);
  r.insert(r.end(), coeffs_.begin(), coeffs_.end());
  return GFPoly(base_, std::move(r));
}

std::pair<GFPoly, GFPoly> poly_divmod(const GFPoly& a, const GFPoly& p) {
  require_same_base(a, p);
  if (p.is_zero()) throw UsageError("division by the zero polynomial");
  const unsigned b = a.base();
  if (a.degree() < p.degree()) return {GFPoly(b), a};
  std::vector<Digit> rem(a.coeffs().begin(), a.coeffs().end());
  const auto pc = p.coeffs();
  const std::size_t dp = pc.size() - 1;
  const Digit inv_lead = inverse_mod(pc.back(), b);
  std::vector<Digit> quot(rem.size() - dp, 0);
  for (std::size_t i = rem.size(); i-- > dp;) {
    const Digit t = static_cast<Digit>(std::uint64_t{rem[i]} * inv_lead % b);
    if (t == 0) continue;
    quot[i - dp] = t;
    for (std::size_t j = 0; j <= dp; ++j) {
      const std::uint64_t sub = std::uint64_t{t} * pc[j] % b;
      rem[i - dp + j] = static_cast<Digit>((rem[i - dp + j] + b - sub) % b);
    }
  }
  rem.resize(dp);
  return {GFPoly(b, std::move(quot)), GFPoly(b, std::move(rem))};
}

GFPoly poly_mod(const GFPoly& a, const GFPoly& p) { return poly_divmod(a, p).second; }

GFPoly poly_mul_mod(const GFPoly& a, const GFPoly& c, const GFPoly& p) {
  require_same_base(a, p);
  require_same_base(c, p);
  return poly_mod(a * c, p);
}

GFPoly poly_pow_mod(const GFPoly& a, std::uint64_t e, const GFPoly& p) {
  GFPoly result = poly_mod(GFPoly::constant(p.base(), 1), p);
  GFPoly base = poly_mod(a, p);
  for (; e > 0; e >>= 1) {
    if (e & 1U) result = poly_mul_mod(result, base, p);
    if (e > 1) base = poly_mul_mod(base, base, p);
  }
  return result;
}

GFPoly poly_gcd(GFPoly a, GFPoly c) {
  require_same_base(a, c);
  while (!c.is_zero()) {
    GFPoly r = poly_mod(a, c);
    a = std::move(c);
    c = std::move(r);
  }
  return a.is_zero() ? a : make_monic(a);
}

GFPoly make_monic(const GFPoly& p) {
  if (p.is_zero()) return p;
  return p.scaled(inverse_mod(p.leading(), p.base()));
}

bool is_irreducible(const GFPoly& p) {
  if (p.is_zero() || p.degree() < 1) throw UsageError("irreducibility needs a polynomial of degree >= 1");
  const GFPoly f = make_monic(p);
  const unsigned m = static_cast<unsigned>(f.degree());
  if (m == 1) return true;
  const GFPoly x = GFPoly::monomial(f.base(), 1);
  // x^(b^m) = x mod f, and gcd(x^(b^(m/r)) - x, f) = 1 for each prime r | m.
  if (frobenius_power(f, m) != poly_mod(x, f)) return false;
  for (unsigned r : prime_factors(m)) {
    const GFPoly h = frobenius_power(f, m / r) - x;
    if (poly_gcd(h, f).degree() != 0) return false;
  }
  return true;
}

GFPoly find_irreducible(unsigned b, unsigned m) {
  require_base(b);
  if (m == 0) throw UsageError("find_irreducible needs m >= 1");
  const std::uint64_t lead = checked_pow(b, m);
  for (std::uint64_t low = 0; low < lead; ++low) {
    GFPoly cand = GFPoly::from_encoding(b, lead + low);
    if (is_irreducible(cand)) return cand;
  }
  throw UsageError("no irreducible polynomial found");  // unreachable for prime b
}

std::vector<Digit> laurent_digits(const GFPoly& q, const GFPoly& p, unsigned m) {
  require_same_base(q, p);
  if (p.is_zero()) throw UsageError("laurent_digits: zero modulus");
  if (q.degree() >= p.degree()) throw UsageError("laurent_digits: deg(q) must be < deg(p); reduce mod p first");
  const unsigned b = p.base();
  const auto pc = p.coeffs();
  const std::size_t dp = pc.size() - 1;
  const Digit inv_lead = inverse_mod(pc.back(), b);
  // rem always has degree < dp; multiply by x, peel off the x^dp coefficient.
  std::vector<Digit> rem(dp + 1, 0);
  for (std::size_t i = 0; i < q.coeffs().size(); ++i) rem[i] = q.coeffs()[i];
  std::vector<Digit> digits(m, 0);
  for (unsigned i = 0; i < m; ++i) {
    std::rotate(rem.rbegin(), rem.rbegin() + 1, rem.rend());
    const Digit t = static_cast<Digit>(std::uint64_t{rem[dp]} * inv_lead % b);
    digits[i] = t;
    if (t == 0) continue;
    for (std::size_t j = 0; j <= dp; ++j) {
      const std::uint64_t sub = std::uint64_t{t} * pc[j] % b;
      rem[j] = static_cast<Digit>((rem[j] + b - sub) % b);
    }
  }
  return digits;
}

double v_m(const GFPoly& q, const GFPoly& p, unsigned m) {
  const auto digits = laurent_digits(q, p, m);
  double value = 0.0, scale = 1.0;
  for (Digit d : digits) {
    scale /= p.base();
    value += d * scale;
  }
  return value;
}

GFPoly tr_m(std::uint64_t k, unsigned b, unsigned m) {
  require_base(b);
  std::vector<Digit> c;
  for (unsigned i = 0; i < m && k > 0; ++i) {
    c.push_back(static_cast<Digit>(k % b));
    k /= b;
  }
  return GFPoly(b, std::move(c));
}

}  // namespace eplr
