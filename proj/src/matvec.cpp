#include "eplr/matvec.hpp"

#include <complex>

#include "eplr/errors.hpp"

namespace eplr {

CirculantProfile build_profile(const LatticeRule& rule, const FieldTable& table) {
  rule.validate();
  if (!(rule.modulus == table.modulus())) throw UsageError("rule modulus does not match the field table");
  CirculantProfile prof;
  prof.rule = rule;
  for (const auto& q : rule.gen) {
    if (q.is_zero()) throw UsageError("generating vector component 0 has no logarithm");
    prof.exponents.push_back(table.log(q));
  }
  const LaurentMap map(rule.modulus);
  const std::uint64_t e = table.order();
  prof.c.resize(e);
  for (std::uint64_t t = 0; t < e; ++t) prof.c[t] = map.value(table.exp(t));
  prof.convolver = std::make_shared<const CirculantConvolver>(prof.c);
  return prof;
}

Matrix fast_product(const CirculantProfile& profile, const Matrix& A) {
  const std::size_t s = profile.exponents.size();
  if (A.rows != s) throw UsageError("matrix row count must equal the rule dimension");
  const std::size_t e = profile.c.size();
  Matrix Y(e + 1, A.cols);
  std::vector<double> u1(e), u2(e), y1(e), y2(e);
  std::vector<std::complex<double>> work;
  const auto scatter = [&](std::vector<double>& u, std::size_t l) {
    std::fill(u.begin(), u.end(), 0.0);
    if (l >= A.cols) return;
    for (std::size_t j = 0; j < s; ++j) u[(e - profile.exponents[j] % e) % e] += A(j, l);
  };
  // Columns go through the transform two at a time.
  for (std::size_t l = 0; l < A.cols; l += 2) {
    scatter(u1, l);
    scatter(u2, l + 1);
    profile.convolver->apply_pair(u1, u2, y1, y2, work);
    for (std::size_t z = 0; z < e; ++z) Y(z + 1, l) = y1[z];
    if (l + 1 < A.cols)
      for (std::size_t z = 0; z < e; ++z) Y(z + 1, l + 1) = y2[z];
  }
  return Y;
}

Matrix naive_product(const LatticeRule& rule, const FieldTable& table, const Matrix& A) {
  rule.validate();
  const std::size_t s = rule.dimension();
  if (A.rows != s) throw UsageError("matrix row count must equal the rule dimension");
  const PointSet pts = generate_points(rule);
  const std::uint64_t e = table.order();
  Matrix Y(e + 1, A.cols);
  std::vector<double> x(s);
  for (std::uint64_t row = 0; row <= e; ++row) {
    const std::uint64_t n = row == 0 ? 0 : table.exp(row - 1);
    pts.row(n, x);
    for (std::size_t l = 0; l < A.cols; ++l) {
      double acc = 0.0;
      for (std::size_t j = 0; j < s; ++j) acc += x[j] * A(j, l);
      Y(row, l) = acc;
    }
  }
  return Y;
}

Matrix naive_product(const LatticeRule& rule, const Matrix& A) {
  return naive_product(rule, FieldTable(rule.modulus), A);
}

}  // namespace eplr
