#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "securesum/pmf.hpp"

namespace securesum {

/// Exact Shannon quantities (bits) over a JointPmf. Joint entropies are
/// memoised per variable set, so one engine should be reused for all the
/// quantities taken from one pmf.
class InformationEngine {
 public:
  explicit InformationEngine(const JointPmf& pmf) : pmf_(pmf) {}

  double entropy(VariableSet vars);
  double conditional_entropy(VariableSet a, VariableSet given);
  double mutual_information(VariableSet a, VariableSet b);
  /// I(A;B|C) = H(A,C) + H(B,C) - H(A,B,C) - H(C).
  double conditional_mutual_information(VariableSet a, VariableSet b, VariableSet given);

 private:
  double compute_entropy(VariableSet vars) const;

  const JointPmf& pmf_;
  std::array<std::optional<double>, 256> cache_{};
};

double entropy(const JointPmf& pmf, VariableSet vars);
double conditional_mutual_information(const JointPmf& pmf, VariableSet a, VariableSet b, VariableSet given);

/// Name-based form, e.g. ("M13,M12", "Y", "X"). Unknown names are a ConfigError.
double conditional_mutual_information(const JointPmf& pmf, std::string_view a, std::string_view b,
                                      std::string_view given);

}  // namespace securesum
