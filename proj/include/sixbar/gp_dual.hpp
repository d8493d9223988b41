#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sixbar::gp {

/// One monomial term: coefficient * prod(var^exponent) * prod(param^parameter_exponent).
///
/// Parameters are symbols folded into the coefficient (the 3/d of a ratio constraint).
/// They take no orthogonality row, so they do not count towards the degree of
/// difficulty, but they are solved for during primal recovery.
struct GPTerm {
  std::string label;
  double coefficient = 1.0;
  std::map<std::string, double> exponents;
  std::map<std::string, double> parameter_exponents;
};

/// Which terms enter the normality equation (weights summing to one).
enum class NormalityScope {
  ObjectiveTerms,  // classic posynomial dual; constraint terms get their own weights
  AllTerms,        // constraint terms absorbed into the objective as penalty terms
};

struct GPProblem {
  std::vector<GPTerm> objective_terms;
  std::vector<GPTerm> constraint_terms;  // terms of a single "<= 1" posynomial constraint
  std::vector<std::string> variables;    // one orthogonality row each, in this order
  NormalityScope normality = NormalityScope::ObjectiveTerms;

  std::size_t term_count() const { return objective_terms.size() + constraint_terms.size(); }
  /// Objective terms first, then constraint terms.
  const GPTerm& term(std::size_t j) const;
  bool in_normality(std::size_t j) const;
  int degree_of_difficulty() const;
  /// Parameter names in first-appearance order.
  std::vector<std::string> parameters() const;

  /// Rejects non-finite data, unknown variable names and nonzero degree of difficulty.
  void validate() const;
};

/// Dual value split into a numeric prefactor and a symbolic monomial in the parameters:
/// v = prefactor * prod(param^exponent).
struct DualValue {
  double prefactor = 0.0;
  std::map<std::string, double> parameter_exponents;

  bool is_numeric() const;
  /// Throws InvalidInput if a parameter value is missing or non-positive.
  double evaluate(const std::map<std::string, double>& parameter_values = {}) const;
};

struct GPSolution {
  std::vector<double> weights;
  DualValue dual;
  std::map<std::string, double> primal_values;
  double recovery_residual = 0.0;  // max |row residual| of the log-linear system
  std::vector<std::string> diagnostics;
};

/// Normality row followed by one orthogonality row per variable. Exposed so callers can
/// check the residual of a weight vector.
struct WeightSystem {
  std::vector<std::vector<double>> matrix;
  std::vector<double> rhs;

  double residual(const std::vector<double>& weights) const;
};

WeightSystem weight_system(const GPProblem& problem);

/// Solves normality + orthogonality. Throws NonzeroDegreeOfDifficulty when the problem is
/// not square and IndeterminateWeights when the system is singular.
std::vector<double> solve_weights(const GPProblem& problem);

/// v = prod (c_j / w_j)^w_j. A negative base is allowed only with an integer weight and
/// contributes its sign; a zero weight on a nonzero coefficient is rejected.
DualValue dual_value(const GPProblem& problem, const std::vector<double>& weights);

struct RecoveryOptions {
  /// Fixes one unknown (variable or parameter) to a value, for homogeneous objectives.
  std::optional<std::pair<std::string, double>> normalization;
  /// Largest tolerated row residual of the log-linear system.
  double consistency_tolerance = 1e-9;
};

/// Term-balance recovery. Terms inside the normality scope take the value |w_j * v|;
/// remaining constraint terms take w_j / sum(constraint weights), which is 1 for a
/// single-term constraint (tight). Symbolic parts of `v` move to the unknown side.
/// Throws PrimalRecoveryFailed on a rank-deficient or inconsistent system.
GPSolution recover_primal(const GPProblem& problem, const std::vector<double>& weights,
                          const DualValue& v, const RecoveryOptions& options = {});

/// Same, with a purely numeric dual value.
GPSolution recover_primal(const GPProblem& problem, const std::vector<double>& weights,
                          double v, const RecoveryOptions& options = {});

/// Weights, dual value and primal recovery in one call. The diagnostics carry a
/// signomial flag whenever a weight is negative.
GPSolution solve(const GPProblem& problem, const RecoveryOptions& options = {});

/// Value of the normality-scope terms at a point (the function the dual bounds).
double dual_objective(const GPProblem& problem, const std::map<std::string, double>& point);
/// True when the constraint terms outside the normality scope sum to <= 1 (+ slack).
bool is_feasible(const GPProblem& problem, const std::map<std::string, double>& point,
                 double slack = 1e-12);

struct DualityReport {
  bool skipped = false;
  std::size_t checked = 0;
  std::size_t feasible = 0;
  double min_gap = 0.0;            // min over feasible samples of objective - v
  double equality_rel_error = 0.0; // |objective(primal) - v| / |v|
  std::vector<std::string> notes;
};

/// Weak-duality safeguard for pure posynomial problems: v <= objective at every feasible
/// sample, and v == objective at the recovered primal to 1e-6 relative. Skipped (and the
/// signomial flag appended to solution.diagnostics) when any weight is negative.
/// Throws DualityCheckFailed naming the offending point.
DualityReport verify_weak_duality(const GPProblem& problem, GPSolution& solution,
                                  const std::vector<std::map<std::string, double>>& samples);

/// Log-uniform random samples over per-unknown boxes, for verify_weak_duality.
std::vector<std::map<std::string, double>> log_uniform_samples(
    const std::map<std::string, std::pair<double, double>>& boxes, std::size_t count,
    std::uint64_t seed);

inline constexpr const char* kSignomialFlag =
    "signomial: negative dual weight, duality bounds do not apply";

}  // namespace sixbar::gp
