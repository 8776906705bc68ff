#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>


#include "eplr/cbc.hpp"
#include "eplr/errors.hpp"
#include "eplr/extrapolation.hpp"
#include "eplr/matvec.hpp"
#include "eplr/pointset.hpp"
#include "eplr/quadrature.hpp"
#include "eplr/rule_file.hpp"
#include "eplr/walsh.hpp"

namespace py = pybind11;
using namespace eplr;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

WeightModel make_model(std::vector<double> gamma, unsigned alpha, unsigned base, std::optional<double> c_alpha) {
  WeightModel wm;
  wm.gamma = std::move(gamma);
  wm.alpha = alpha;
  wm.base = base;
  wm.c_alpha = c_alpha ? *c_alpha : C_alpha_default(alpha, base);
  wm.validate();
  return wm;
}

Array points_array(const LatticeRule& rule) {
  const PointSet pts = generate_points(rule);
  Array out({pts.size(), pts.dimension()});
  auto view = out.mutable_unchecked<2>();
  for (std::size_t n = 0; n < pts.size(); ++n)
    for (std::size_t j = 0; j < pts.dimension(); ++j) view(n, j) = pts.at(n, j);
  return out;
}

Matrix to_matrix(const Array& a) {
  if (a.ndim() != 2) throw UsageError("expected a 2-D array");
  Matrix m(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
  std::copy(a.data(), a.data() + a.size(), m.data.begin());
  return m;
}

Array from_matrix(const Matrix& m) {
  Array out({m.rows, m.cols});
  std::copy(m.data.begin(), m.data.end(), out.mutable_data());
  return out;
}

Integrand python_integrand(py::function fn, std::size_t s, std::optional<double> exact) {
  Integrand f;
  f.id = "python";
  f.dimension = s;
  f.exact_integral = exact;
  f.eval = [fn](std::span<const double> x) {
    py::array_t<double> arr(static_cast<py::ssize_t>(x.size()), x.data());
    return fn(arr).cast<double>();
  };
  return f;
}

}  // namespace

PYBIND11_MODULE(_eplr, mod) {
  mod.doc() = "Extrapolated polynomial lattice rules";

  py::register_exception<UsageError>(mod, "UsageError", PyExc_ValueError);
  py::register_exception<ResourceError>(mod, "ResourceError", PyExc_RuntimeError);
  py::register_exception<VerificationError>(mod, "VerificationError", PyExc_RuntimeError);

  py::class_<GFPoly>(mod, "GFPoly")
      .def(py::init([](unsigned base, std::vector<Digit> coeffs) { return GFPoly(base, std::move(coeffs)); }),
           py::arg("base"), py::arg("coeffs"))
      .def_static("from_encoding", &GFPoly::from_encoding, py::arg("base"), py::arg("code"))
      .def_property_readonly("base", &GFPoly::base)
      .def_property_readonly("degree", [](const GFPoly& p) { return p.is_zero() ? -1 : p.degree(); })
      .def_property_readonly("coeffs", [](const GFPoly& p) { return std::vector<Digit>(p.coeffs().begin(), p.coeffs().end()); })
      .def("encode", &GFPoly::encode)
      .def("__eq__", [](const GFPoly& a, const GFPoly& c) { return a == c; })
      .def("__str__", &GFPoly::to_string)
      .def("__repr__", [](const GFPoly& p) { return "GFPoly(" + p.to_string() + ")"; });

  mod.def("find_irreducible", &find_irreducible, py::arg("b"), py::arg("m"));
  mod.def("is_irreducible", &is_irreducible, py::arg("p"));

  py::class_<LatticeRule>(mod, "LatticeRule")
      .def(py::init([](const GFPoly& modulus, std::vector<GFPoly> gen) {
             LatticeRule r{modulus.base(), static_cast<unsigned>(modulus.degree()), modulus, std::move(gen)};
             r.validate();
             return r;
           }),
           py::arg("modulus"), py::arg("gen"))
      .def_readonly("base", &LatticeRule::base)
      .def_readonly("m", &LatticeRule::m)
      .def_readonly("modulus", &LatticeRule::modulus)
      .def_readonly("gen", &LatticeRule::gen)
      .def_property_readonly("size", &LatticeRule::size)
      .def_property_readonly("dimension", &LatticeRule::dimension)
      .def("points", &points_array, "Points as an (N, s) array in natural order")
      .def("in_dual", [](const LatticeRule& r, std::vector<std::uint64_t> k) { return in_dual(r, k); })
      .def("character_sum", [](const LatticeRule& r, std::vector<std::uint64_t> k) { return character_sum(r, k); })
      .def("__eq__", [](const LatticeRule& a, const LatticeRule& c) { return a == c; });

  py::class_<WeightModel>(mod, "WeightModel")
      .def(py::init(&make_model), py::arg("gamma"), py::arg("alpha") = 2, py::arg("base") = 2,
           py::arg("c_alpha") = py::none())
      .def_readonly("gamma", &WeightModel::gamma)
      .def_readonly("alpha", &WeightModel::alpha)
      .def_readonly("base", &WeightModel::base)
      .def_readonly("c_alpha", &WeightModel::c_alpha);

  py::class_<CriterionReport>(mod, "CriterionReport")
      .def_readonly("rule", &CriterionReport::rule)
      .def_readonly("criterion", &CriterionReport::criterion)
      .def_readonly("per_dimension", &CriterionReport::per_dimension)
      .def_readonly("selection_gap", &CriterionReport::selection_gap)
      .def_readonly("bound", &CriterionReport::bound)
      .def_property_readonly("wall_time", [](const CriterionReport& r) { return r.wall_time.count(); });

  py::class_<DualSum>(mod, "DualSum")
      .def_readonly("value", &DualSum::value)
      .def_readonly("tail_bound", &DualSum::tail_bound);

  mod.def("cbc_fast", py::overload_cast<unsigned, unsigned, std::size_t, const WeightModel&>(&cbc_fast),
          py::arg("b"), py::arg("m"), py::arg("s"), py::arg("model"));
  mod.def("cbc_slow", &cbc_slow, py::arg("b"), py::arg("m"), py::arg("s"), py::arg("model"));
  mod.def("criterion_pointwise", py::overload_cast<const LatticeRule&, const WeightModel&, double>(&criterion_pointwise),
          py::arg("rule"), py::arg("model"), py::arg("tol") = 1e-12);
  mod.def("criterion_dual_oracle", &criterion_dual_oracle, py::arg("rule"), py::arg("model"), py::arg("digits"));
  mod.def("cbc_bound", &cbc_bound, py::arg("model"), py::arg("s"), py::arg("m"), py::arg("lam") = 1.0);
  mod.def("existence_bound",
          py::overload_cast<const WeightModel&, std::size_t, unsigned, double>(&existence_bound), py::arg("model"),
          py::arg("s"), py::arg("m"), py::arg("lam") = 1.0);

  mod.def("w_alpha_at", py::overload_cast<std::uint64_t, unsigned, unsigned, unsigned, double>(&w_alpha_at),
          py::arg("a"), py::arg("m"), py::arg("alpha"), py::arg("b"), py::arg("tol") = 1e-12);
  mod.def("E_alpha_lambda", &E_alpha_lambda, py::arg("alpha"), py::arg("lam"), py::arg("b"));
  mod.def("mu_alpha", &mu_alpha, py::arg("k"), py::arg("alpha"), py::arg("b"));

  mod.def(
      "richardson_coeffs",
      [](unsigned b, unsigned tau) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& r : richardson_coeffs(b, tau))
          out.emplace_back(numerator(r).str(), denominator(r).str());
        return out;
      },
      py::arg("b"), py::arg("tau"), "Coefficients as (numerator, denominator) decimal strings");
  mod.def(
      "extrapolate_chain",
      [](const std::vector<double>& values, unsigned b, unsigned alpha) {
        return extrapolate_chain(std::span<const double>(values), b, alpha);
      },
      py::arg("values"), py::arg("b"), py::arg("alpha"), "Values ordered by ascending rule size");

  py::class_<QuadratureReport>(mod, "QuadratureReport")
      .def_readonly("estimate", &QuadratureReport::estimate)
      .def_readonly("per_rule_estimates", &QuadratureReport::per_rule_estimates)
      .def_readonly("total_points", &QuadratureReport::total_points)
      .def_readonly("error", &QuadratureReport::error);

  mod.def(
      "integrate",
      [](const std::vector<LatticeRule>& rules, py::function fn, std::optional<double> exact) {
        if (rules.empty()) throw UsageError("no rules given");
        const Integrand f = python_integrand(std::move(fn), rules.front().dimension(), exact);
        return eplr_integrate(f, rules, ExtrapolationScheme(rules.front().base, static_cast<unsigned>(rules.size())));
      },
      py::arg("rules"), py::arg("f"), py::arg("exact") = py::none(),
      "Extrapolated estimate of a Python callable f(x) over rules of consecutive sizes");
  mod.def(
      "integrate_builtin",
      [](const std::vector<LatticeRule>& rules, const std::string& id, std::optional<std::vector<double>> gamma,
         double c1, double c2) {
        if (rules.empty()) throw UsageError("no rules given");
        IntegrandParams p;
        p.c1 = c1;
        p.c2 = c2;
        if (gamma) p.gamma = *gamma;
        const Integrand f = make_integrand(id, rules.front().dimension(), p);
        return eplr_integrate(f, rules, ExtrapolationScheme(rules.front().base, static_cast<unsigned>(rules.size())));
      },
      py::arg("rules"), py::arg("id"), py::arg("gamma") = py::none(), py::arg("c1") = 1.3, py::arg("c2") = 1.0);

  py::class_<SweepRow>(mod, "SweepRow")
      .def_readonly("m", &SweepRow::m)
      .def_readonly("N", &SweepRow::N)
      .def_readonly("estimate", &SweepRow::estimate)
      .def_readonly("abs_error", &SweepRow::abs_error);
  py::class_<SweepResult>(mod, "SweepResult")
      .def_readonly("rows", &SweepResult::rows)
      .def_readonly("fitted_rate", &SweepResult::fitted_rate);
  mod.def(
      "convergence_sweep",
      [](const std::string& id, const WeightModel& model, unsigned alpha, unsigned m_min, unsigned m_max, double c1,
         double c2) {
        IntegrandParams p;
        p.c1 = c1;
        p.c2 = c2;
        p.gamma = model.gamma;
        const Integrand f = make_integrand(id, model.gamma.size(), p);
        return convergence_sweep(f, model.base, alpha, m_min, m_max, model);
      },
      py::arg("id"), py::arg("model"), py::arg("alpha"), py::arg("m_min"), py::arg("m_max"), py::arg("c1") = 1.3,
      py::arg("c2") = 1.0);

  mod.def(
      "fast_product",
      [](const LatticeRule& rule, const Array& A) {
        const FieldTable table(rule.modulus);
        return from_matrix(fast_product(build_profile(rule, table), to_matrix(A)));
      },
      py::arg("rule"), py::arg("A"), "X A with X the points in generator order (row 0 is the origin)");
  mod.def(
      "naive_product",
      [](const LatticeRule& rule, const Array& A) { return from_matrix(naive_product(rule, to_matrix(A))); },
      py::arg("rule"), py::arg("A"));

  mod.def(
      "read_rules",
      [](const std::string& path) { return read_rule_file(path).lattice_rules(); }, py::arg("path"),
      "Rules of a rule file, ascending size");
}
