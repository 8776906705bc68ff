#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "eplr/cbc.hpp"
#include "eplr/errors.hpp"
#include "eplr/matvec.hpp"
#include "eplr/quadrature.hpp"
#include "eplr/report.hpp"
#include "eplr/rule_file.hpp"

using namespace eplr;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitVerification = 3;

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw UsageError("failed writing '" + path + "'");
}

WeightModel make_model(unsigned b, unsigned alpha, std::size_t s, const std::string& weights,
                       const std::string& c_alpha) {
  WeightModel wm;
  wm.gamma = parse_weights(weights, s);
  wm.alpha = alpha;
  wm.base = b;
  wm.c_alpha = parse_c_alpha(c_alpha, alpha, b);
  wm.validate(s);
  return wm;
}

void require_chain(unsigned m, unsigned alpha) {
  if (alpha < 1) throw UsageError("alpha must be >= 1");
  if (m < alpha)
    throw UsageError("m must be >= alpha: the chain uses sizes b^(m-alpha+1), ..., b^m (got m = " +
                     std::to_string(m) + ", alpha = " + std::to_string(alpha) + ")");
}

struct ConstructArgs {
  unsigned b = 2, m = 10, alpha = 2;
  std::size_t s = 2;
  std::string weights = "j^-2", c_alpha, out;
};

int run_construct(const ConstructArgs& a) {
  require_chain(a.m, a.alpha);
  RuleFile file;
  file.alpha = a.alpha;
  const WeightModel wm = make_model(a.b, file.smoothness(), a.s, a.weights, a.c_alpha);
  file.base = a.b;
  file.weights = a.weights;
  file.c_alpha = wm.c_alpha;
  file.dimension = a.s;
  for (unsigned k = a.m - a.alpha + 1; k <= a.m; ++k) {
    const CriterionReport rep = cbc_fast(a.b, k, a.s, wm);
    file.rules.push_back({rep.rule, rep.criterion, rep.bound});
    std::fprintf(stderr, "m=%u N=%llu criterion=%.6e bound(lambda=1)=%.6e time=%.3fs\n", k,
                static_cast<unsigned long long>(rep.rule.size()), rep.criterion, rep.bound, rep.wall_time.count());
  }
  file.validate();
  if (a.out.empty())
    std::cout << serialize(file);
  else
    write_rule_file(file, a.out);
  return 0;
}

struct IntegrandArgs {
  std::string id = "bivariate";
  double c1 = 1.3, c2 = 1.0, value = 1.0;
  std::string weights;
};

IntegrandParams integrand_params(const IntegrandArgs& a, std::size_t s, const std::string& fallback_weights) {
  IntegrandParams p;
  p.value = a.value;
  p.c1 = a.c1;
  p.c2 = a.c2;
  p.gamma = parse_weights(a.weights.empty() ? fallback_weights : a.weights, s);
  return p;
}

int run_integrate(const std::string& path, const IntegrandArgs& ia) {
  const RuleFile file = read_rule_file(path);
  const Integrand f = make_integrand(ia.id, file.dimension, integrand_params(ia, file.dimension, file.weights));
  const ExtrapolationScheme scheme(file.base, file.alpha);
  const auto rules = file.lattice_rules();
  const QuadratureReport rep = eplr_integrate(f, rules, scheme);
  std::printf("integrand %s, s=%zu, alpha=%u\n", f.id.c_str(), file.dimension, file.alpha);
  for (std::size_t t = 0; t < rep.per_rule_estimates.size(); ++t)
    std::printf("rule m=%u weight=%s estimate=%s\n", file.rules[file.rules.size() - 1 - t].rule.m,
                format_real(scheme.weights()[t]).c_str(), format_real(rep.per_rule_estimates[t]).c_str());
  std::printf("estimate %s\n", format_real(rep.estimate).c_str());
  std::printf("total_points %llu\n", static_cast<unsigned long long>(rep.total_points));
  if (f.exact_integral) std::printf("exact %s\n", format_real(*f.exact_integral).c_str());
  if (rep.error) std::printf("abs_error %s\n", format_real(*rep.error).c_str());
  return 0;
}

struct ConvergeArgs {
  unsigned b = 2, alpha = 2, m_min = 4, m_max = 12;
  std::size_t s = 2;
  std::string weights = "j^-2", c_alpha, csv, svg;
};

int run_converge(const ConvergeArgs& a, const IntegrandArgs& ia) {
  if (a.m_min > a.m_max) throw UsageError("empty m range: m-min > m-max");
  require_chain(a.m_min, a.alpha);
  const WeightModel wm = make_model(a.b, std::max(a.alpha, 2U), a.s, a.weights, a.c_alpha);
  const Integrand f = make_integrand(ia.id, a.s, integrand_params(ia, a.s, a.weights));
  const SweepResult sweep = convergence_sweep(f, a.b, a.alpha, a.m_min, a.m_max, wm);
  const std::string csv = sweep_csv(sweep);
  if (a.csv.empty())
    std::cout << csv;
  else
    write_text_file(a.csv, csv);
  if (!a.svg.empty()) {
    std::ostringstream title;
    title << f.id << ", s=" << a.s << ", alpha=" << a.alpha;
    write_text_file(a.svg, sweep_svg(sweep, a.alpha, title.str()));
  }
  if (!a.csv.empty())
    std::printf("fitted_rate %s\n", sweep.fitted_rate ? format_real(*sweep.fitted_rate).c_str() : "undefined");
  return 0;
}

int run_criterion(const std::string& path, const std::vector<double>& lambdas, unsigned digits) {
  const RuleFile file = read_rule_file(path);
  const WeightModel wm = file.model();
  for (const auto& e : file.rules) {
    const LatticeRule& r = e.rule;
    std::printf("rule m=%u N=%llu s=%zu\n", r.m, static_cast<unsigned long long>(r.size()), r.dimension());
    std::printf("  criterion_pointwise %s\n", format_real(criterion_pointwise(r, wm)).c_str());
    const unsigned T = digits ? digits : std::min(r.m + 12, 26U);
    try {
      const DualSum d = criterion_dual_oracle(r, wm, std::max(T, r.m));
      std::printf("  dual_criterion %s tail_bound %s digits %u\n", format_real(d.value).c_str(),
                  format_real(d.tail_bound).c_str(), std::max(T, r.m));
    } catch (const ResourceError& ex) {
      std::printf("  dual_criterion skipped (%s)\n", ex.what());
    }
    for (double lam : lambdas) {
      std::printf("  lambda %s cbc_bound %s existence_bound %s\n", format_real(lam).c_str(),
                  format_real(cbc_bound(wm, r.dimension(), r.m, lam)).c_str(),
                  format_real(existence_bound(wm, r.dimension(), r.m, lam)).c_str());
    }
  }
  std::printf("H %s\n", format_real(H_product(wm, file.dimension)).c_str());
  std::printf("D_alpha %s\n", format_real(D_alpha(file.smoothness())).c_str());
  return 0;
}

struct BenchArgs {
  unsigned b = 2, m_min = 8, m_max = 14, repeats = 5;
  std::size_t s = 20, t = 8;
  std::uint64_t seed = 1;
  std::string csv;
};

double time_min(unsigned repeats, const std::function<void()>& fn) {
  double best = std::numeric_limits<double>::infinity();
  for (unsigned i = 0; i < std::max(1U, repeats); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

int run_matvec_bench(const BenchArgs& a) {
  if (a.m_min > a.m_max) throw UsageError("empty m range: m-min > m-max");
  if (a.s < 1 || a.t < 1) throw UsageError("s and t must be >= 1");
  std::ostringstream os;
  os << "N,s,t,time_fast,time_naive\n";
  std::mt19937_64 rng(a.seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (unsigned m = a.m_min; m <= a.m_max; ++m) {
    WeightModel wm;
    wm.gamma = parse_weights("j^-2", a.s);
    wm.base = a.b;
    const LatticeRule rule = cbc_fast(a.b, m, a.s, wm).rule;
    const FieldTable table(rule.modulus);
    const CirculantProfile prof = build_profile(rule, table);
    Matrix A(a.s, a.t);
    for (double& v : A.data) v = unif(rng);
    const Matrix fast = fast_product(prof, A);
    const Matrix naive = naive_product(rule, table, A);
    double worst = 0.0;
    for (std::size_t i = 0; i < fast.data.size(); ++i) worst = std::max(worst, std::abs(fast.data[i] - naive.data[i]));
    if (!(worst <= 1e-10))
      throw VerificationError("fast and naive products differ by " + format_real(worst) + " at m = " +
                              std::to_string(m));
    const double tf = time_min(a.repeats, [&] { fast_product(prof, A); });
    const double tn = time_min(a.repeats, [&] { naive_product(rule, table, A); });
    os << rule.size() << ',' << a.s << ',' << a.t << ',' << format_real(tf) << ',' << format_real(tn) << '\n';
  }
  if (a.csv.empty())
    std::cout << os.str();
  else
    write_text_file(a.csv, os.str());
  return 0;
}

int run_points(const std::string& path, unsigned m, const std::string& order, const std::string& out) {
  const RuleFile file = read_rule_file(path);
  const RuleEntry* entry = &file.rules.back();
  if (m) {
    entry = nullptr;
    for (const auto& e : file.rules)
      if (e.rule.m == m) entry = &e;
    if (!entry) throw UsageError("rule file has no rule with m = " + std::to_string(m));
  }
  PointSet pts = generate_points(entry->rule);
  if (order == "generator") {
    const FieldTable table(entry->rule.modulus);
    PointSet reordered(pts.size(), pts.dimension(), pts.denominator());
    for (std::uint64_t row = 0; row < pts.size(); ++row) {
      const std::uint64_t n = row == 0 ? 0 : table.exp(row - 1);
      for (std::size_t j = 0; j < pts.dimension(); ++j) reordered.set_numerator(row, j, pts.numerator(n, j));
    }
    pts = std::move(reordered);
  } else if (order != "natural") {
    throw UsageError("order must be 'natural' or 'generator'");
  }
  std::ostringstream os;
  os << "# " << pts.size() << " points, s=" << pts.dimension() << ", order=" << order
     << (order == "generator" ? " (n=0, then n=g^z for z=0..b^m-2)" : " (n by polynomial encoding)") << '\n';
  pts.write_text(os);
  if (out.empty())
    std::cout << os.str();
  else
    write_text_file(out, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extrapolated polynomial lattice rules: construction, quadrature and fast matvec"};
  app.require_subcommand(1);

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "Build an alpha-chain of rules by fast CBC");
  construct->add_option("-b,--base", ca.b, "Prime base")->capture_default_str();
  construct->add_option("-m,--m", ca.m, "Largest rule has b^m points")->required();
  construct->add_option("-s,--dimension", ca.s, "Dimension")->required();
  construct->add_option("-a,--alpha", ca.alpha, "Smoothness / extrapolation order")->capture_default_str();
  construct->add_option("-w,--weights", ca.weights, "j^-a, const:c or a comma list")->capture_default_str();
  construct->add_option("--c-alpha", ca.c_alpha, "Walsh constant: a number or 'general'");
  construct->add_option("-o,--out", ca.out, "Rule file (stdout if omitted)");

  std::string rules_path;
  IntegrandArgs ia;
  auto add_integrand_opts = [&](CLI::App* sub) {
    sub->add_option("-f,--integrand", ia.id, "constant, exp, bivariate, f1, f2")->capture_default_str();
    sub->add_option("--c1", ia.c1, "Exponent of f1")->capture_default_str();
    sub->add_option("--c2", ia.c2, "Exponent of f2")->capture_default_str();
    sub->add_option("--value", ia.value, "Value of the constant integrand")->capture_default_str();
  };
  auto* integrate = app.add_subcommand("integrate", "Integrate a built-in function with a rule file");
  integrate->add_option("-r,--rules", rules_path, "Rule file")->required();
  add_integrand_opts(integrate);
  integrate->add_option("--integrand-weights", ia.weights, "Integrand weights (default: the file's weights)");

  ConvergeArgs cv;
  auto* converge = app.add_subcommand("converge", "Error sweep over m with CSV and optional SVG output");
  converge->add_option("-b,--base", cv.b, "Prime base")->capture_default_str();
  converge->add_option("-a,--alpha", cv.alpha, "Extrapolation order")->capture_default_str();
  converge->add_option("-s,--dimension", cv.s, "Dimension")->capture_default_str();
  converge->add_option("--m-min", cv.m_min, "Smallest m (>= alpha)")->capture_default_str();
  converge->add_option("--m-max", cv.m_max, "Largest m")->capture_default_str();
  converge->add_option("-w,--weights", cv.weights, "Construction weights")->capture_default_str();
  converge->add_option("--c-alpha", cv.c_alpha, "Walsh constant: a number or 'general'");
  converge->add_option("--csv", cv.csv, "CSV output (stdout if omitted)");
  converge->add_option("--svg", cv.svg, "SVG log-log plot");
  add_integrand_opts(converge);
  converge->add_option("--integrand-weights", ia.weights, "Integrand weights (default: construction weights)");

  std::vector<double> lambdas{1.0, 0.75};
  unsigned digits = 0;
  auto* criterion = app.add_subcommand("criterion", "Print criteria and bounds for a rule file");
  criterion->add_option("-r,--rules", rules_path, "Rule file")->required();
  criterion->add_option("-l,--lambda", lambdas, "Bound exponents")->delimiter(',')->capture_default_str();
  criterion->add_option("--digits", digits, "Dual-sum truncation: k_j < b^digits (default min(m+12, 26))");

  BenchArgs ba;
  auto* bench = app.add_subcommand("matvec-bench", "Time the circulant product against the naive one");
  bench->add_option("-b,--base", ba.b, "Prime base")->capture_default_str();
  bench->add_option("--m-min", ba.m_min, "Smallest m")->capture_default_str();
  bench->add_option("--m-max", ba.m_max, "Largest m")->capture_default_str();
  bench->add_option("-s,--dimension", ba.s, "Rows of A (rule dimension)")->capture_default_str();
  bench->add_option("-t,--columns", ba.t, "Columns of A")->capture_default_str();
  bench->add_option("--seed", ba.seed, "Seed for A")->capture_default_str();
  bench->add_option("--repeats", ba.repeats, "Timing repeats (minimum is reported)")->capture_default_str();
  bench->add_option("--csv", ba.csv, "CSV output (stdout if omitted)");

  unsigned points_m = 0;
  std::string order = "natural", points_out;
  auto* points = app.add_subcommand("points", "Dump the points of one rule");
  points->add_option("-r,--rules", rules_path, "Rule file")->required();
  points->add_option("-m,--m", points_m, "Which rule (default: the largest)");
  points->add_option("--order", order, "natural or generator")->capture_default_str();
  points->add_option("-o,--out", points_out, "Output file (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (construct->parsed()) return run_construct(ca);
    if (integrate->parsed()) return run_integrate(rules_path, ia);
    if (converge->parsed()) return run_converge(cv, ia);
    if (criterion->parsed()) return run_criterion(rules_path, lambdas, digits);
    if (bench->parsed()) return run_matvec_bench(ba);
    if (points->parsed()) return run_points(rules_path, points_m, order, points_out);
  } catch (const VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    return kExitVerification;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitUsage;
}
