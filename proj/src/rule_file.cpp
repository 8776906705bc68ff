#include "eplr/rule_file.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "eplr/errors.hpp"

namespace eplr {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double to_real(std::string_view text, std::string_view what) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
    throw UsageError("invalid number for " + std::string(what) + ": '" + t + "'");
  return v;
}

std::uint64_t to_uint(std::string_view text, std::string_view what) {
  const std::string t = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
    throw UsageError("invalid integer for " + std::string(what) + ": '" + t + "'");
  return v;
}

std::string real_text(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string coeff_text(const GFPoly& p) {
  std::string out;
  for (Digit d : p.coeffs()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(d);
  }
  return out.empty() ? "0" : out;
}

GFPoly parse_poly(std::string_view text, unsigned b) {
  std::istringstream in{std::string(text)};
  std::vector<Digit> c;
  std::string tok;
  while (in >> tok) {
    const auto v = to_uint(tok, "coefficient");
    if (v >= b) throw UsageError("coefficient " + tok + " out of range for base " + std::to_string(b));
    c.push_back(static_cast<Digit>(v));
  }
  if (c.empty()) throw UsageError("empty coefficient list");
  return GFPoly(b, std::move(c));
}

}  // namespace

std::vector<double> parse_weights(std::string_view spec_in, std::size_t s) {
  const std::string spec = trim(spec_in);
  std::vector<double> g;
  if (spec.rfind("j^", 0) == 0) {
    const double a = to_real(std::string_view(spec).substr(2), "weight exponent");
    for (std::size_t j = 1; j <= s; ++j) g.push_back(std::pow(static_cast<double>(j), a));
  } else if (spec.rfind("const:", 0) == 0) {
    g.assign(s, to_real(std::string_view(spec).substr(6), "constant weight"));
  } else {
    std::string_view rest = spec;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      g.push_back(to_real(rest.substr(0, comma), "weight"));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (g.size() < s)
      throw UsageError("weight list has " + std::to_string(g.size()) + " entries, need " + std::to_string(s));
    g.resize(s);
  }
  for (double v : g)
    if (!(v >= 0.0) || !std::isfinite(v)) throw UsageError("weights must be finite and nonnegative");
  return g;
}

double parse_c_alpha(std::string_view spec_in, unsigned alpha, unsigned b) {
  const std::string spec = trim(spec_in);
  if (spec.empty()) return b == 2 ? 1.0 : C_alpha_default(alpha, b);
  if (spec == "general") return C_alpha_default(alpha, b);
  const double v = to_real(spec, "c-alpha");
  if (!(v > 0.0) || !std::isfinite(v)) throw UsageError("c-alpha must be positive");
  return v;
}

void RuleFile::validate() const {
  if (version != kVersion) throw UsageError("unsupported rule file version " + std::to_string(version));
  if (!is_prime(base)) throw UsageError("rule file base must be prime");
  if (alpha < 1) throw UsageError("rule file alpha must be >= 1");
  if (rules.size() != alpha) throw UsageError("rule file must hold exactly alpha rules");
  if (!(c_alpha > 0.0)) throw UsageError("rule file c_alpha must be positive");
  parse_weights(weights, dimension);
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const auto& r = rules[i].rule;
    r.validate();
    if (r.base != base) throw UsageError("rule base differs from the file base");
    if (r.dimension() != dimension) throw UsageError("rule dimension differs from the file dimension");
    if (i > 0 && r.m != rules[i - 1].rule.m + 1) throw UsageError("rule sizes must be consecutive");
  }
}

WeightModel RuleFile::model() const {
  WeightModel wm;
  wm.gamma = parse_weights(weights, dimension);
  wm.alpha = smoothness();
  wm.base = base;
  wm.c_alpha = c_alpha;
  return wm;
}

std::vector<LatticeRule> RuleFile::lattice_rules() const {
  std::vector<LatticeRule> out;
  for (const auto& e : rules) out.push_back(e.rule);
  return out;
}

std::string serialize(const RuleFile& f) {
  std::ostringstream os;
  os << "eplr-rules " << f.version << '\n';
  os << "base " << f.base << '\n';
  os << "alpha " << f.alpha << '\n';
  os << "weights " << f.weights << '\n';
  os << "c_alpha " << real_text(f.c_alpha) << '\n';
  os << "dimension " << f.dimension << '\n';
  for (const auto& e : f.rules) {
    os << "rule " << e.rule.m << '\n';
    os << "modulus " << coeff_text(e.rule.modulus) << '\n';
    for (const auto& q : e.rule.gen) os << "q " << coeff_text(q) << '\n';
    os << "criterion " << real_text(e.criterion) << '\n';
    os << "bound " << real_text(e.bound) << '\n';
    os << "end\n";
  }
  return os.str();
}

RuleFile parse_rule_file(std::string_view text) {
  RuleFile f;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header = false, in_rule = false;
  std::size_t lineno = 0;
  RuleEntry cur;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto sp = t.find(' ');
    const std::string key = t.substr(0, sp);
    const std::string val = sp == std::string::npos ? std::string() : trim(std::string_view(t).substr(sp + 1));
    auto fail = [&](const std::string& msg) {
      throw UsageError("rule file line " + std::to_string(lineno) + ": " + msg);
    };
    if (!header) {
      if (key != "eplr-rules") fail("missing 'eplr-rules' header");
      f.version = static_cast<int>(to_uint(val, "version"));
      if (f.version != RuleFile::kVersion) fail("unsupported version " + val);
      header = true;
    } else if (in_rule) {
      if (key == "modulus") {
        cur.rule.modulus = parse_poly(val, f.base);
      } else if (key == "q") {
        cur.rule.gen.push_back(parse_poly(val, f.base));
      } else if (key == "criterion") {
        cur.criterion = to_real(val, "criterion");
      } else if (key == "bound") {
        cur.bound = to_real(val, "bound");
      } else if (key == "end") {
        f.rules.push_back(cur);
        in_rule = false;
      } else {
        fail("unexpected key '" + key + "' inside a rule");
      }
    } else if (key == "base") {
      f.base = static_cast<unsigned>(to_uint(val, "base"));
    } else if (key == "alpha") {
      f.alpha = static_cast<unsigned>(to_uint(val, "alpha"));
    } else if (key == "weights") {
      f.weights = val;
    } else if (key == "c_alpha") {
      f.c_alpha = to_real(val, "c_alpha");
    } else if (key == "dimension") {
      f.dimension = to_uint(val, "dimension");
    } else if (key == "rule") {
      cur = RuleEntry{};
      cur.rule.base = f.base;
      cur.rule.m = static_cast<unsigned>(to_uint(val, "m"));
      in_rule = true;
    } else {
      fail("unexpected key '" + key + "'");
    }
  }
  if (!header) throw UsageError("rule file is empty");
  if (in_rule) throw UsageError("rule file ends inside a rule block");
  f.validate();
  return f;
}

void write_rule_file(const RuleFile& file, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot open '" + path + "' for writing");
  out << serialize(file);
  if (!out) throw UsageError("failed writing '" + path + "'");
}

RuleFile read_rule_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open rule file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_rule_file(ss.str());
}

}  // namespace eplr
