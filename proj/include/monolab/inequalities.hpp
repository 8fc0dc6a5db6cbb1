#pragma once

// Parameterized monogamy and polygamy bounds.
//
// Monogamy (measure E, base exponent gamma, 0 <= alpha <= gamma):
//   E_{A|BC}^alpha >= E_AB^alpha + [(u+h)^r - h^r] E_AC^alpha,   r = alpha/gamma
// under h E_AC^gamma >= E_AB^gamma and E_{A|BC}^gamma >= E_AB^gamma + u E_AC^gamma.
// Polygamy (assisted measure E_a, beta >= delta) reverses every inequality.
// split_on_b swaps the roles of the two marginals.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "monolab/measures.hpp"

namespace monolab::inequalities {

using measures::Mode;

/// Tolerance for hypothesis slacks and for the holds flag.
inline constexpr double kConditionTol = 1e-9;
/// Marginal measures at or below this are treated as zero divisors.
inline constexpr double kZeroTol = 1e-12;

enum class SplitCase { split_on_c, split_on_b };

std::string_view to_string(SplitCase c) noexcept;

/// x^r with 0^0 = 1.
double power(double x, double r);

/// (1+s)^m - s^m.
double f_lemma1(double s, double m);
/// (u+h)^r - h^r.
double bound_factor(double u, double h, double r);
/// ((1+k)^r - 1) / k^r.
double k_form_factor(double k, double r);
/// 2^r - 1.
double baseline_factor(double r);

/// E_{A|BC}, E_AB, E_AC (or their assisted counterparts).
struct Triple {
  double whole = 0.0;
  double ab = 0.0;
  double ac = 0.0;
};

struct BoundSpec {
  double exponent = 0.0;       // alpha or beta
  double base_exponent = 0.0;  // gamma or delta
  double h = 1.0;
  double u = 1.0;
  SplitCase split = SplitCase::split_on_c;
};

struct Condition {
  std::string name;
  bool satisfied = false;
  double slack = 0.0;
};

struct StepAdmissible {
  std::optional<double> h_min;
  std::optional<double> u_extreme;  // u_max (monogamy) or u_min (polygamy)
};

struct InequalityReport {
  Mode mode = Mode::monogamy;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // lhs - rhs (monogamy) or rhs - lhs (polygamy)
  bool holds = false;
  bool hypotheses_met = false;
  bool degenerate = false;  // every marginal is zero; rhs taken as 0
  std::vector<Condition> conditions;
  StepAdmissible admissible;
  std::vector<StepAdmissible> step_admissible;  // chains only
  std::vector<double> coefficients;             // weight of each pair term
};

struct MonogamyAdmissible {
  double u_max = 0.0;
  double h_min = 0.0;
};

struct PolygamyAdmissible {
  double u_min = 0.0;
  double h_min = 0.0;
};

/// Throws ZeroDivisor when the divisor marginal vanishes and
/// BaseMonogamyViolated when u_max < 1 beyond tolerance (u_max is clamped
/// to 1 inside the tolerance band).
MonogamyAdmissible admissible_monogamy(const Triple& e, double gamma,
                                       SplitCase split = SplitCase::split_on_c);
/// u_min is clamped to [0, 1]; throws ZeroDivisor or BaseMonogamyViolated
/// (base polygamy fails, u_min > 1 beyond tolerance).
PolygamyAdmissible admissible_polygamy(const Triple& e, double delta,
                                       SplitCase split = SplitCase::split_on_c);

/// Reports without throwing on failed hypotheses (see hypotheses_met);
/// still throws ExponentOutOfRange or DomainError for an invalid spec.
InequalityReport evaluate_monogamy(const Triple& e, const BoundSpec& spec);
InequalityReport evaluate_polygamy(const Triple& e, const BoundSpec& spec);

/// As evaluate_*, but failed hypotheses throw: ConditionViolated for the h
/// condition, SlackTooLarge (monogamy) or SlackTooSmall (polygamy) for u.
InequalityReport check_monogamy_tripartite(const Triple& e, const BoundSpec& spec);
InequalityReport check_polygamy_tripartite(const Triple& e, const BoundSpec& spec);

struct ChainStep {
  double h = 1.0;
  double u = 1.0;
};

/// Steps 1..split_index use the split_on_c conditions, the remaining steps
/// the split_on_b ones; split_index = n - 2 is the uniform chain.
struct ChainSpec {
  std::vector<ChainStep> steps;  // n - 2 entries
  std::size_t split_index = 0;
  Mode mode = Mode::monogamy;
};

/// global = E_{A|B1...B_{n-1}}, pairs[i] = E_{A B_{i+1}},
/// tails[i] = E_{A|B_{i+2}...B_{n-1}} for the n - 3 intermediate tails.
struct ChainInputs {
  double global = 0.0;
  std::vector<double> pairs;
  std::vector<double> tails;
};

/// Coefficient of each pair term given the per-step factors.
std::vector<double> chain_coefficients(std::span<const double> factors, std::size_t split_index);

InequalityReport evaluate_chain(const ChainInputs& in, const ChainSpec& chain, double exponent,
                                double base_exponent);
/// Throwing variants; the error message names the failing step.
InequalityReport chain_monogamy(const ChainInputs& in, const ChainSpec& chain, double alpha,
                                double gamma);
InequalityReport chain_polygamy(const ChainInputs& in, const ChainSpec& chain, double beta,
                                double delta);

/// split_on_c when E_AB <= E_AC, otherwise split_on_b.
SplitCase natural_split(const Triple& e);

/// Extreme admissible (h, u) of one step head -> (pair, rest): h_min and
/// u_max (monogamy) or u_min (polygamy), pulled into the valid parameter
/// ranges. A zero divisor gives (1, 1). forced_h replaces h_min.
ChainStep extreme_parameters(Mode mode, SplitCase split, double head, double pair, double rest,
                             double base_exponent, std::optional<double> forced_h = std::nullopt);

/// Chain with natural splits and extreme parameters at every step.
/// ordered is false when a split_on_c step follows a split_on_b one, which
/// no chain layout covers; split_index is then meaningless.
struct ExtremeChain {
  ChainSpec spec;
  bool ordered = true;
};

ExtremeChain extreme_chain(const ChainInputs& in, Mode mode, double base_exponent,
                           std::optional<double> forced_h = std::nullopt);

struct BoundComparison {
  double new_factor = 0.0;
  std::optional<double> k_form;  // absent for h = 0
  double baseline = 0.0;
  bool new_vs_k_form = true;
  bool k_form_vs_baseline = true;
  bool new_vs_baseline = true;
};

/// Monogamy ordering new >= k-form >= baseline; polygamy reverses it.
BoundComparison compare_bounds(double u, double h, double r, Mode mode);

enum class Figure { fig1, fig2, fig3 };

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

Table figure_grid(Figure which);
std::string format_number(double x);  // %.12g
std::string to_csv(const Table& t);

}  // namespace monolab::inequalities
