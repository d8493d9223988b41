#include "sixbar/gp_dual.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <sstream>

#include "sixbar/error.hpp"

namespace sixbar::gp {

namespace {

constexpr double kZeroWeight = 1e-14;
constexpr double kIntegerSlack = 1e-12;

std::string describe_point(const std::map<std::string, double>& point) {
  std::ostringstream os;
  os.precision(12);
  os << '{';
  bool first = true;
  for (const auto& [name, value] : point) {
    if (!first) os << ", ";
    os << name << '=' << value;
    first = false;
  }
  os << '}';
  return os.str();
}

double monomial_value(const GPTerm& term, const std::map<std::string, double>& point) {
  double value = term.coefficient;
  const auto apply = [&](const std::map<std::string, double>& exps) {
    for (const auto& [name, exponent] : exps) {
      const auto it = point.find(name);
      SIXBAR_REQUIRE(it != point.end(), ErrorCode::InvalidInput,
                     "point has no value for '" + name + "'");
      SIXBAR_REQUIRE(it->second > 0.0, ErrorCode::InvalidInput,
                     "value of '" + name + "' must be positive");
      value *= std::pow(it->second, exponent);
    }
  };
  apply(term.exponents);
  apply(term.parameter_exponents);
  return value;
}

double rounded_if_integer(double w, bool& is_integer) {
  const double r = std::round(w);
  is_integer = std::abs(w - r) <= kIntegerSlack;
  return r;
}

}  // namespace

const GPTerm& GPProblem::term(std::size_t j) const {
  if (j < objective_terms.size()) return objective_terms[j];
  return constraint_terms.at(j - objective_terms.size());
}

bool GPProblem::in_normality(std::size_t j) const {
  return normality == NormalityScope::AllTerms || j < objective_terms.size();
}

int GPProblem::degree_of_difficulty() const {
  return static_cast<int>(term_count()) - static_cast<int>(variables.size()) - 1;
}

std::vector<std::string> GPProblem::parameters() const {
  std::vector<std::string> out;
  for (std::size_t j = 0; j < term_count(); ++j) {
    for (const auto& [name, exponent] : term(j).parameter_exponents) {
      (void)exponent;
      if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
    }
  }
  return out;
}

void GPProblem::validate() const {
  SIXBAR_REQUIRE(!objective_terms.empty(), ErrorCode::InvalidInput,
                 "problem needs at least one objective term");
  for (std::size_t j = 0; j < term_count(); ++j) {
    const GPTerm& t = term(j);
    SIXBAR_REQUIRE(std::isfinite(t.coefficient), ErrorCode::InvalidInput,
                   "term " + std::to_string(j) + " has a non-finite coefficient");
    for (const auto& [name, exponent] : t.exponents) {
      SIXBAR_REQUIRE(std::find(variables.begin(), variables.end(), name) != variables.end(),
                     ErrorCode::InvalidInput,
                     "term " + std::to_string(j) + " uses undeclared variable '" + name + "'");
      SIXBAR_REQUIRE(std::isfinite(exponent), ErrorCode::InvalidInput, "non-finite exponent");
    }
    for (const auto& [name, exponent] : t.parameter_exponents) {
      SIXBAR_REQUIRE(std::find(variables.begin(), variables.end(), name) == variables.end(),
                     ErrorCode::InvalidInput,
                     "'" + name + "' is declared both as variable and parameter");
      SIXBAR_REQUIRE(std::isfinite(exponent), ErrorCode::InvalidInput, "non-finite exponent");
    }
  }
  SIXBAR_REQUIRE(degree_of_difficulty() == 0, ErrorCode::NonzeroDegreeOfDifficulty,
                 "degree of difficulty is " + std::to_string(degree_of_difficulty()) +
                     ", solver requires 0");
}

bool DualValue::is_numeric() const {
  return std::all_of(parameter_exponents.begin(), parameter_exponents.end(),
                     [](const auto& kv) { return kv.second == 0.0; });
}

double DualValue::evaluate(const std::map<std::string, double>& parameter_values) const {
  double v = prefactor;
  for (const auto& [name, exponent] : parameter_exponents) {
    if (exponent == 0.0) continue;
    const auto it = parameter_values.find(name);
    SIXBAR_REQUIRE(it != parameter_values.end(), ErrorCode::InvalidInput,
                   "dual value needs parameter '" + name + "'");
    SIXBAR_REQUIRE(it->second > 0.0, ErrorCode::InvalidInput,
                   "parameter '" + name + "' must be positive");
    v *= std::pow(it->second, exponent);
  }
  return v;
}

double WeightSystem::residual(const std::vector<double>& weights) const {
  double worst = 0.0;
  for (std::size_t r = 0; r < matrix.size(); ++r) {
    double s = 0.0;
    for (std::size_t j = 0; j < weights.size(); ++j) s += matrix[r][j] * weights[j];
    worst = std::max(worst, std::abs(s - rhs[r]));
  }
  return worst;
}

WeightSystem weight_system(const GPProblem& problem) {
  const std::size_t n = problem.term_count();
  WeightSystem sys;
  sys.matrix.emplace_back(n, 0.0);
  sys.rhs.push_back(1.0);
  for (std::size_t j = 0; j < n; ++j) {
    if (problem.in_normality(j)) sys.matrix[0][j] = 1.0;
  }
  for (const auto& var : problem.variables) {
    std::vector<double> row(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const auto& exps = problem.term(j).exponents;
      if (auto it = exps.find(var); it != exps.end()) row[j] = it->second;
    }
    sys.matrix.push_back(std::move(row));
    sys.rhs.push_back(0.0);
  }
  return sys;
}

std::vector<double> solve_weights(const GPProblem& problem) {
  problem.validate();
  const WeightSystem sys = weight_system(problem);
  const auto n = static_cast<Eigen::Index>(problem.term_count());

  Eigen::MatrixXd m(n, n);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = sys.matrix[r][c];
    rhs(r) = sys.rhs[r];
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  SIXBAR_REQUIRE(lu.isInvertible(), ErrorCode::IndeterminateWeights,
                 "normality/orthogonality system is singular (rank " +
                     std::to_string(lu.rank()) + " of " + std::to_string(n) + ")");
  const Eigen::VectorXd w = lu.solve(rhs);
  std::vector<double> out(w.data(), w.data() + w.size());

  // Snap near-integers so exact weights like (-1, 2, 1) come out exact.
  for (double& x : out) {
    const double r = std::round(x);
    if (std::abs(x - r) < 1e-13) x = r;
  }
  return out;
}

DualValue dual_value(const GPProblem& problem, const std::vector<double>& weights) {
  SIXBAR_REQUIRE(weights.size() == problem.term_count(), ErrorCode::InvalidInput,
                 "weight count does not match term count");
  // Constraint terms outside the normality scope carry the multiplier
  // lambda = sum of their weights: (c_j * lambda / w_j)^w_j. With a single-term
  // constraint lambda equals the term weight and the product reduces to (c_j / w_j)^w_j
  // only when that weight is 1.
  double lambda = 0.0;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (!problem.in_normality(j)) lambda += weights[j];
  }
  DualValue v;
  v.prefactor = 1.0;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    const GPTerm& t = problem.term(j);
    const double w = weights[j];
    if (std::abs(w) <= kZeroWeight) {
      SIXBAR_REQUIRE(t.coefficient == 0.0, ErrorCode::IndeterminateDualTerm,
                     "term " + std::to_string(j) + " (" + t.label +
                         ") has zero weight and nonzero coefficient");
      continue;
    }
    const double base = (problem.in_normality(j) ? 1.0 : lambda) * t.coefficient / w;
    SIXBAR_REQUIRE(base != 0.0, ErrorCode::IndeterminateDualTerm,
                   "term " + std::to_string(j) + " has zero coefficient");
    double sign = 1.0;
    if (base < 0.0) {
      bool is_integer = false;
      const double k = rounded_if_integer(w, is_integer);
      SIXBAR_REQUIRE(is_integer, ErrorCode::IndeterminateDualTerm,
                     "negative base with non-integer weight on term " + std::to_string(j));
      sign = std::fmod(std::abs(k), 2.0) == 1.0 ? -1.0 : 1.0;
    }
    v.prefactor *= sign * std::pow(std::abs(base), w);
    // (param^e)^w folds into the symbolic monomial.
    for (const auto& [name, exponent] : t.parameter_exponents) {
      v.parameter_exponents[name] += exponent * w;
    }
  }
  return v;
}

GPSolution recover_primal(const GPProblem& problem, const std::vector<double>& weights,
                          const DualValue& v, const RecoveryOptions& options) {
  SIXBAR_REQUIRE(weights.size() == problem.term_count(), ErrorCode::InvalidInput,
                 "weight count does not match term count");
  SIXBAR_REQUIRE(v.prefactor != 0.0 && std::isfinite(v.prefactor),
                 ErrorCode::PrimalRecoveryFailed, "dual value must be finite and nonzero");

  std::vector<std::string> unknowns = problem.variables;
  for (const auto& p : problem.parameters()) unknowns.push_back(p);
  const auto index_of = [&](const std::string& name) {
    const auto it = std::find(unknowns.begin(), unknowns.end(), name);
    SIXBAR_REQUIRE(it != unknowns.end(), ErrorCode::PrimalRecoveryFailed,
                   "unknown '" + name + "' cannot be recovered");
    return static_cast<Eigen::Index>(it - unknowns.begin());
  };

  double constraint_weight = 0.0;
  for (std::size_t j = 0; j < problem.term_count(); ++j) {
    if (!problem.in_normality(j)) constraint_weight += weights[j];
  }

  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  const auto n_unknowns = unknowns.size();
  for (std::size_t j = 0; j < problem.term_count(); ++j) {
    const GPTerm& t = problem.term(j);
    const double w = weights[j];
    if (std::abs(w) <= kZeroWeight) continue;
    SIXBAR_REQUIRE(t.coefficient != 0.0, ErrorCode::PrimalRecoveryFailed,
                   "term " + std::to_string(j) + " has zero coefficient");

    std::vector<double> row(n_unknowns, 0.0);
    for (const auto& [name, e] : t.exponents) row[index_of(name)] += e;
    for (const auto& [name, e] : t.parameter_exponents) row[index_of(name)] += e;
    double target = 0.0;
    if (problem.in_normality(j)) {
      target = std::log(std::abs(w)) + std::log(std::abs(v.prefactor));
      for (const auto& [name, e] : v.parameter_exponents) {
        if (e != 0.0) row[index_of(name)] -= e;
      }
    } else {
      SIXBAR_REQUIRE(w > 0.0 && constraint_weight > 0.0, ErrorCode::PrimalRecoveryFailed,
                     "constraint term " + std::to_string(j) + " has non-positive weight");
      target = std::log(w / constraint_weight);
    }
    rows.push_back(std::move(row));
    rhs.push_back(target - std::log(std::abs(t.coefficient)));
  }
  GPSolution sol;
  sol.weights = weights;
  sol.dual = v;

  // A normalized unknown is substituted out so that it keeps its exact value.
  std::optional<Eigen::Index> fixed;
  if (options.normalization) {
    const auto& [name, value] = *options.normalization;
    SIXBAR_REQUIRE(value > 0.0, ErrorCode::InvalidInput, "normalization value must be positive");
    fixed = index_of(name);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      rhs[r] -= rows[r][*fixed] * std::log(value);
      rows[r][*fixed] = 0.0;
    }
    sol.primal_values[name] = value;
  }
  std::vector<Eigen::Index> free_cols;
  for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(n_unknowns); ++k) {
    if (k != fixed) free_cols.push_back(k);
  }
  if (free_cols.empty()) return sol;

  const auto n_rows = static_cast<Eigen::Index>(rows.size());
  const auto n_cols = static_cast<Eigen::Index>(free_cols.size());
  SIXBAR_REQUIRE(n_rows >= n_cols, ErrorCode::PrimalRecoveryFailed,
                 "rank-deficient log-linear system: " + std::to_string(n_rows) +
                     " equations for " + std::to_string(n_cols) + " unknowns");
  Eigen::MatrixXd m(n_rows, n_cols);
  Eigen::VectorXd b(n_rows);
  for (Eigen::Index r = 0; r < n_rows; ++r) {
    for (Eigen::Index c = 0; c < n_cols; ++c) m(r, c) = rows[r][free_cols[c]];
    b(r) = rhs[r];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
  SIXBAR_REQUIRE(qr.rank() == n_cols, ErrorCode::PrimalRecoveryFailed,
                 "rank-deficient log-linear system (rank " + std::to_string(qr.rank()) +
                     " of " + std::to_string(n_cols) + "); supply a normalization");
  const Eigen::VectorXd logs = qr.solve(b);
  sol.recovery_residual = (m * logs - b).cwiseAbs().maxCoeff();
  if (sol.recovery_residual > options.consistency_tolerance) {
    std::ostringstream os;
    os << "inconsistent term balances, residual " << sol.recovery_residual << " exceeds "
       << options.consistency_tolerance;
    throw Error(ErrorCode::PrimalRecoveryFailed, os.str());
  }
  for (Eigen::Index c = 0; c < n_cols; ++c) {
    sol.primal_values[unknowns[free_cols[c]]] = std::exp(logs(c));
  }
  return sol;
}

GPSolution recover_primal(const GPProblem& problem, const std::vector<double>& weights,
                          double v, const RecoveryOptions& options) {
  return recover_primal(problem, weights, DualValue{v, {}}, options);
}

GPSolution solve(const GPProblem& problem, const RecoveryOptions& options) {
  const auto weights = solve_weights(problem);
  const DualValue v = dual_value(problem, weights);
  GPSolution sol = recover_primal(problem, weights, v, options);
  if (std::any_of(weights.begin(), weights.end(), [](double w) { return w < 0.0; })) {
    sol.diagnostics.emplace_back(kSignomialFlag);
  }
  return sol;
}

double dual_objective(const GPProblem& problem, const std::map<std::string, double>& point) {
  double sum = 0.0;
  for (std::size_t j = 0; j < problem.term_count(); ++j) {
    if (problem.in_normality(j)) sum += monomial_value(problem.term(j), point);
  }
  return sum;
}

bool is_feasible(const GPProblem& problem, const std::map<std::string, double>& point,
                 double slack) {
  double lhs = 0.0;
  bool any = false;
  for (std::size_t j = 0; j < problem.term_count(); ++j) {
    if (problem.in_normality(j)) continue;
    lhs += monomial_value(problem.term(j), point);
    any = true;
  }
  return !any || lhs <= 1.0 + slack;
}

DualityReport verify_weak_duality(const GPProblem& problem, GPSolution& solution,
                                  const std::vector<std::map<std::string, double>>& samples) {
  DualityReport report;
  const bool signomial = std::any_of(solution.weights.begin(), solution.weights.end(),
                                     [](double w) { return w < 0.0; });
  if (signomial) {
    report.skipped = true;
    report.notes.emplace_back(kSignomialFlag);
    if (std::find(solution.diagnostics.begin(), solution.diagnostics.end(), kSignomialFlag) ==
        solution.diagnostics.end()) {
      solution.diagnostics.emplace_back(kSignomialFlag);
    }
    return report;
  }

  report.min_gap = std::numeric_limits<double>::infinity();
  for (const auto& point : samples) {
    ++report.checked;
    if (!is_feasible(problem, point)) continue;
    ++report.feasible;
    const double v = solution.dual.evaluate(point);
    const double f = dual_objective(problem, point);
    const double gap = f - v;
    report.min_gap = std::min(report.min_gap, gap);
    if (gap < -1e-9 * std::abs(v)) {
      std::ostringstream os;
      os.precision(12);
      os << "objective " << f << " below dual value " << v << " at " << describe_point(point);
      throw Error(ErrorCode::DualityCheckFailed, os.str());
    }
  }

  const double v_star = solution.dual.evaluate(solution.primal_values);
  const double f_star = dual_objective(problem, solution.primal_values);
  report.equality_rel_error = std::abs(f_star - v_star) / std::abs(v_star);
  if (report.equality_rel_error > 1e-6) {
    std::ostringstream os;
    os.precision(12);
    os << "objective " << f_star << " differs from dual value " << v_star
       << " at recovered primal " << describe_point(solution.primal_values);
    throw Error(ErrorCode::DualityCheckFailed, os.str());
  }
  return report;
}

std::vector<std::map<std::string, double>> log_uniform_samples(
    const std::map<std::string, std::pair<double, double>>& boxes, std::size_t count,
    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::map<std::string, double>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::map<std::string, double> point;
    for (const auto& [name, box] : boxes) {
      SIXBAR_REQUIRE(box.first > 0.0 && box.second >= box.first, ErrorCode::InvalidInput,
                     "sample box for '" + name + "' must be positive and ordered");
      std::uniform_real_distribution<double> u(std::log(box.first), std::log(box.second));
      point[name] = std::exp(u(rng));
    }
    out.push_back(std::move(point));
  }
  return out;
}

}  // namespace sixbar::gp
