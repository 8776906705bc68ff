#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "eplr/pointset.hpp"
#include "eplr/walsh.hpp"

namespace eplr {

/// Weight sequence from a spec: "j^-a" (gamma_j = j^{-a}), "const:c", or an
/// explicit comma-separated list (which must hold at least s values).
std::vector<double> parse_weights(std::string_view spec, std::size_t s);

/// C_alpha from "general" (the formula valid for every b) or a positive number; empty means the default
/// (1 for b = 2, the general formula otherwise).
double parse_c_alpha(std::string_view spec, unsigned alpha, unsigned b);

struct RuleEntry {
  LatticeRule rule;
  double criterion = 0.0;
  double bound = 0.0;

  friend bool operator==(const RuleEntry&, const RuleEntry&) = default;
};

/// A chain of rules of consecutive sizes sharing base, dimension and weights.
struct RuleFile {
  static constexpr int kVersion = 1;

  int version = kVersion;
  unsigned base = 2;
  unsigned alpha = 1;
  std::string weights;
  double c_alpha = 1.0;
  std::size_t dimension = 0;
  std::vector<RuleEntry> rules;  // ascending m

  /// Throws UsageError on any inconsistency (including a reducible modulus).
  void validate() const;
  /// Smoothness of the construction kernel, max(alpha, 2): a chain of one
  /// rule is still built against the alpha = 2 criterion.
  unsigned smoothness() const { return alpha < 2 ? 2 : alpha; }
  WeightModel model() const;
  std::vector<LatticeRule> lattice_rules() const;

  friend bool operator==(const RuleFile&, const RuleFile&) = default;
};

std::string serialize(const RuleFile& file);
RuleFile parse_rule_file(std::string_view text);

void write_rule_file(const RuleFile& file, const std::string& path);
RuleFile read_rule_file(const std::string& path);

}  // namespace eplr
