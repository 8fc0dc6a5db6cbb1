#include "monolab/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "monolab/errors.hpp"
#include "monolab/qstate.hpp"

namespace monolab::inequalities {

namespace {

std::string num(double x) { return format_number(x); }

void validate_spec(const BoundSpec& s, Mode mode) {
  if (!(s.base_exponent > 0.0) || !std::isfinite(s.base_exponent)) {
    throw Error(Errc::exponent_out_of_range, "base exponent must be positive, got " + num(s.base_exponent));
  }
  if (!(s.h >= 0.0 && s.h <= 1.0)) throw Error(Errc::domain_error, "h must lie in [0, 1], got " + num(s.h));
  if (mode == Mode::monogamy) {
    if (!(s.exponent >= 0.0 && s.exponent <= s.base_exponent)) {
      throw Error(Errc::exponent_out_of_range,
                  "alpha must lie in [0, gamma], got alpha=" + num(s.exponent) +
                      " gamma=" + num(s.base_exponent));
    }
    if (!(s.u >= 1.0) || !std::isfinite(s.u)) throw Error(Errc::domain_error, "u must be >= 1, got " + num(s.u));
  } else {
    if (!(s.exponent >= s.base_exponent) || !std::isfinite(s.exponent)) {
      throw Error(Errc::exponent_out_of_range,
                  "beta must be >= delta, got beta=" + num(s.exponent) +
                      " delta=" + num(s.base_exponent));
    }
    if (!(s.u >= 0.0 && s.u <= 1.0)) throw Error(Errc::domain_error, "u must lie in [0, 1], got " + num(s.u));
  }
}

void require_nonnegative(const Triple& e) {
  if (!(e.whole >= 0.0 && e.ab >= 0.0 && e.ac >= 0.0)) {
    throw Error(Errc::negative_input, "measure values must be nonnegative");
  }
}

Condition make_condition(std::string name, double slack) {
  return Condition{std::move(name), slack >= -kConditionTol, slack};
}

// One step head -> (pair, rest) of a chain, or the whole tripartite relation.
struct StepValues {
  Condition h_cond;
  Condition u_cond;
  StepAdmissible admissible;
};

StepValues step_conditions(Mode mode, SplitCase split, double head, double pair, double rest,
                           double h, double u, double g, const std::string& suffix) {
  // divisor carries the h condition; other is the term it bounds.
  const double divisor = split == SplitCase::split_on_c ? rest : pair;
  const double other = split == SplitCase::split_on_c ? pair : rest;
  const double hx = power(head, g), dx = power(divisor, g), ox = power(other, g);
  StepValues out;
  out.h_cond = make_condition("h_condition" + suffix, h * dx - ox);
  const double u_slack = mode == Mode::monogamy ? hx - ox - u * dx : ox + u * dx - hx;
  out.u_cond = make_condition("u_condition" + suffix, u_slack);
  if (divisor > kZeroTol) {
    out.admissible.h_min = ox / dx;
    const double u_ext = (hx - ox) / dx;
    out.admissible.u_extreme = mode == Mode::monogamy ? u_ext : std::max(0.0, u_ext);
  }
  return out;
}

InequalityReport evaluate_tripartite(const Triple& e, const BoundSpec& spec, Mode mode) {
  validate_spec(spec, mode);
  require_nonnegative(e);
  const double g = spec.base_exponent;
  const double a = spec.exponent;
  InequalityReport rep;
  rep.mode = mode;

  auto sv = step_conditions(mode, spec.split, e.whole, e.ab, e.ac, spec.h, spec.u, g, "");
  const double divisor = spec.split == SplitCase::split_on_c ? e.ac : e.ab;
  const double other = spec.split == SplitCase::split_on_c ? e.ab : e.ac;
  const double base = mode == Mode::monogamy
                          ? power(e.whole, g) - power(other, g) - power(divisor, g)
                          : power(other, g) + power(divisor, g) - power(e.whole, g);
  rep.conditions.push_back(sv.h_cond);
  rep.conditions.push_back(sv.u_cond);
  rep.conditions.push_back(
      make_condition(mode == Mode::monogamy ? "base_monogamy" : "base_polygamy", base));
  rep.hypotheses_met = std::all_of(rep.conditions.begin(), rep.conditions.end(),
                                   [](const Condition& c) { return c.satisfied; });
  rep.admissible = sv.admissible;

  const double factor = bound_factor(spec.u, spec.h, a / g);
  rep.degenerate = e.ab <= kZeroTol && e.ac <= kZeroTol;
  rep.lhs = power(e.whole, a);
  if (spec.split == SplitCase::split_on_c) {
    rep.coefficients = {1.0, factor};
    rep.rhs = power(e.ab, a) + factor * power(e.ac, a);
  } else {
    rep.coefficients = {factor, 1.0};
    rep.rhs = factor * power(e.ab, a) + power(e.ac, a);
  }
  if (rep.degenerate) rep.rhs = 0.0;
  rep.margin = mode == Mode::monogamy ? rep.lhs - rep.rhs : rep.rhs - rep.lhs;
  rep.holds = rep.margin >= -kConditionTol;
  return rep;
}

void throw_on_failed(const InequalityReport& rep, Mode mode) {
  for (const auto& c : rep.conditions) {
    if (c.satisfied) continue;
    const std::string detail = c.name + " slack " + num(c.slack);
    if (c.name.rfind("u_condition", 0) == 0) {
      throw Error(mode == Mode::monogamy ? Errc::slack_too_large : Errc::slack_too_small, detail);
    }
    if (c.name.rfind("base_", 0) == 0) throw Error(Errc::base_monogamy_violated, detail);
    throw Error(Errc::condition_violated, detail);
  }
}

}  // namespace

std::string_view to_string(SplitCase c) noexcept {
  return c == SplitCase::split_on_c ? "split_on_c" : "split_on_b";
}

double power(double x, double r) {
  if (r == 0.0) return 1.0;
  return std::pow(x, r);
}

double f_lemma1(double s, double m) {
  if (s < 0.0 || m < 0.0) throw Error(Errc::negative_input, "f(s, m) needs s, m >= 0");
  return power(1.0 + s, m) - power(s, m);
}

double bound_factor(double u, double h, double r) {
  if (h < 0.0 || u + h < 0.0) throw Error(Errc::domain_error, "bound factor needs h >= 0 and u + h >= 0");
  return power(u + h, r) - power(h, r);
}

double k_form_factor(double k, double r) {
  if (!(k > 0.0)) throw Error(Errc::domain_error, "k-form needs k > 0");
  return (power(1.0 + k, r) - 1.0) / power(k, r);
}

double baseline_factor(double r) { return power(2.0, r) - 1.0; }

MonogamyAdmissible admissible_monogamy(const Triple& e, double gamma, SplitCase split) {
  require_nonnegative(e);
  const double divisor = split == SplitCase::split_on_c ? e.ac : e.ab;
  const double other = split == SplitCase::split_on_c ? e.ab : e.ac;
  if (divisor <= kZeroTol) {
    throw Error(Errc::zero_divisor, "divisor marginal is zero; the bound degenerates to 0");
  }
  const double dx = power(divisor, gamma), ox = power(other, gamma);
  MonogamyAdmissible out{(power(e.whole, gamma) - ox) / dx, ox / dx};
  if (out.u_max < 1.0) {
    if (out.u_max < 1.0 - kConditionTol) {
      throw Error(Errc::base_monogamy_violated, "u_max = " + num(out.u_max) + " < 1");
    }
    out.u_max = 1.0;
  }
  return out;
}

PolygamyAdmissible admissible_polygamy(const Triple& e, double delta, SplitCase split) {
  require_nonnegative(e);
  const double divisor = split == SplitCase::split_on_c ? e.ac : e.ab;
  const double other = split == SplitCase::split_on_c ? e.ab : e.ac;
  if (divisor <= kZeroTol) {
    throw Error(Errc::zero_divisor, "divisor marginal is zero; the bound degenerates to 0");
  }
  const double dx = power(divisor, delta), ox = power(other, delta);
  PolygamyAdmissible out{(power(e.whole, delta) - ox) / dx, ox / dx};
  if (out.u_min > 1.0) {
    if (out.u_min > 1.0 + kConditionTol) {
      throw Error(Errc::base_monogamy_violated, "u_min = " + num(out.u_min) + " > 1");
    }
    out.u_min = 1.0;
  }
  out.u_min = std::max(0.0, out.u_min);
  return out;
}

InequalityReport evaluate_monogamy(const Triple& e, const BoundSpec& spec) {
  return evaluate_tripartite(e, spec, Mode::monogamy);
}

InequalityReport evaluate_polygamy(const Triple& e, const BoundSpec& spec) {
  return evaluate_tripartite(e, spec, Mode::polygamy);
}

InequalityReport check_monogamy_tripartite(const Triple& e, const BoundSpec& spec) {
  auto rep = evaluate_monogamy(e, spec);
  throw_on_failed(rep, Mode::monogamy);
  return rep;
}

InequalityReport check_polygamy_tripartite(const Triple& e, const BoundSpec& spec) {
  auto rep = evaluate_polygamy(e, spec);
  throw_on_failed(rep, Mode::polygamy);
  return rep;
}

std::vector<double> chain_coefficients(std::span<const double> factors, std::size_t split_index) {
  if (split_index > factors.size()) {
    throw Error(Errc::length_mismatch, "split index exceeds the number of steps");
  }
  std::vector<double> coef(factors.size() + 1);
  double c = 1.0;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i < split_index) {
      coef[i] = c;
      c *= factors[i];
    } else {
      coef[i] = c * factors[i];
    }
  }
  coef.back() = c;
  return coef;
}

InequalityReport evaluate_chain(const ChainInputs& in, const ChainSpec& chain, double exponent,
                                double base_exponent) {
  const std::size_t n_pairs = in.pairs.size();
  if (n_pairs < 2) throw Error(Errc::length_mismatch, "a chain needs at least two partners");
  if (in.tails.size() != n_pairs - 2) {
    throw Error(Errc::length_mismatch, "expected " + std::to_string(n_pairs - 2) + " tail values, got " +
                                           std::to_string(in.tails.size()));
  }
  if (chain.steps.size() != n_pairs - 1) {
    throw Error(Errc::length_mismatch, "expected " + std::to_string(n_pairs - 1) + " steps, got " +
                                           std::to_string(chain.steps.size()));
  }
  if (chain.split_index > chain.steps.size()) {
    throw Error(Errc::length_mismatch, "split index exceeds the number of steps");
  }
  const Mode mode = chain.mode;
  for (const auto& st : chain.steps) {
    validate_spec(BoundSpec{exponent, base_exponent, st.h, st.u, SplitCase::split_on_c}, mode);
  }
  if (!(in.global >= 0.0)) throw Error(Errc::negative_input, "measure values must be nonnegative");
  for (double x : in.pairs)
    if (!(x >= 0.0)) throw Error(Errc::negative_input, "measure values must be nonnegative");
  for (double x : in.tails)
    if (!(x >= 0.0)) throw Error(Errc::negative_input, "measure values must be nonnegative");

  // heads[i] is the measure across A | B_{i+1}...B_{n-1}; the last rest is the final pair.
  std::vector<double> heads;
  heads.reserve(n_pairs);
  heads.push_back(in.global);
  heads.insert(heads.end(), in.tails.begin(), in.tails.end());
  heads.push_back(in.pairs.back());

  InequalityReport rep;
  rep.mode = mode;
  const double r = exponent / base_exponent;
  std::vector<double> factors;
  for (std::size_t i = 0; i < chain.steps.size(); ++i) {
    const SplitCase split = i < chain.split_index ? SplitCase::split_on_c : SplitCase::split_on_b;
    const std::string suffix = "_" + std::to_string(i + 1);
    auto sv = step_conditions(mode, split, heads[i], in.pairs[i], heads[i + 1], chain.steps[i].h,
                              chain.steps[i].u, base_exponent, suffix);
    rep.conditions.push_back(sv.h_cond);
    rep.conditions.push_back(sv.u_cond);
    if (i + 1 < chain.steps.size() && heads[i + 1] <= kZeroTol) {
      rep.conditions.push_back(Condition{"degenerate_tail" + suffix, false, heads[i + 1]});
    }
    rep.step_admissible.push_back(sv.admissible);
    factors.push_back(bound_factor(chain.steps[i].u, chain.steps[i].h, r));
  }
  rep.admissible = rep.step_admissible.front();
  rep.hypotheses_met = std::all_of(rep.conditions.begin(), rep.conditions.end(),
                                   [](const Condition& c) { return c.satisfied; });

  rep.coefficients = chain_coefficients(factors, chain.split_index);
  rep.degenerate = std::all_of(in.pairs.begin(), in.pairs.end(), [](double x) { return x <= kZeroTol; });
  rep.lhs = power(in.global, exponent);
  double rhs = 0.0;
  for (std::size_t i = 0; i < n_pairs; ++i) rhs += rep.coefficients[i] * power(in.pairs[i], exponent);
  rep.rhs = rep.degenerate ? 0.0 : rhs;
  rep.margin = mode == Mode::monogamy ? rep.lhs - rep.rhs : rep.rhs - rep.lhs;
  rep.holds = rep.margin >= -kConditionTol;
  return rep;
}

namespace {

InequalityReport checked_chain(const ChainInputs& in, ChainSpec chain, Mode mode, double x, double g) {
  chain.mode = mode;
  auto rep = evaluate_chain(in, chain, x, g);
  for (const auto& c : rep.conditions) {
    if (c.satisfied) continue;
    const std::string detail = "step " + c.name.substr(c.name.rfind('_') + 1) + ": " + c.name +
                               " slack " + num(c.slack);
    if (c.name.rfind("u_condition", 0) == 0) {
      throw Error(mode == Mode::monogamy ? Errc::slack_too_large : Errc::slack_too_small, detail);
    }
    throw Error(Errc::condition_violated, detail);
  }
  return rep;
}

}  // namespace

InequalityReport chain_monogamy(const ChainInputs& in, const ChainSpec& chain, double alpha, double gamma) {
  return checked_chain(in, chain, Mode::monogamy, alpha, gamma);
}

InequalityReport chain_polygamy(const ChainInputs& in, const ChainSpec& chain, double beta, double delta) {
  return checked_chain(in, chain, Mode::polygamy, beta, delta);
}

SplitCase natural_split(const Triple& e) {
  return e.ab <= e.ac ? SplitCase::split_on_c : SplitCase::split_on_b;
}

ChainStep extreme_parameters(Mode mode, SplitCase split, double head, double pair, double rest,
                             double base_exponent, std::optional<double> forced_h) {
  const double divisor = split == SplitCase::split_on_c ? rest : pair;
  const double other = split == SplitCase::split_on_c ? pair : rest;
  ChainStep st{forced_h.value_or(1.0), 1.0};
  if (divisor <= kZeroTol) return st;
  const double dx = power(divisor, base_exponent), ox = power(other, base_exponent);
  if (!forced_h) st.h = std::clamp(ox / dx, 0.0, 1.0);
  const double raw = (power(head, base_exponent) - ox) / dx;
  st.u = mode == Mode::monogamy ? std::max(1.0, raw) : std::clamp(raw, 0.0, 1.0);
  return st;
}

ExtremeChain extreme_chain(const ChainInputs& in, Mode mode, double base_exponent,
                           std::optional<double> forced_h) {
  if (in.pairs.size() < 2 || in.tails.size() + 2 != in.pairs.size()) {
    throw Error(Errc::length_mismatch, "chain inputs need n - 1 pairs and n - 3 tails");
  }
  std::vector<double> heads{in.global};
  heads.insert(heads.end(), in.tails.begin(), in.tails.end());
  heads.push_back(in.pairs.back());

  ExtremeChain out;
  out.spec.mode = mode;
  bool seen_b = false;
  for (std::size_t i = 0; i + 1 < in.pairs.size(); ++i) {
    const bool on_c = in.pairs[i] <= heads[i + 1];
    if (on_c) {
      if (seen_b) out.ordered = false;
      ++out.spec.split_index;
    } else {
      seen_b = true;
    }
    out.spec.steps.push_back(extreme_parameters(mode, on_c ? SplitCase::split_on_c : SplitCase::split_on_b,
                                                heads[i], in.pairs[i], heads[i + 1], base_exponent,
                                                forced_h));
  }
  return out;
}

BoundComparison compare_bounds(double u, double h, double r, Mode mode) {
  if (!(h >= 0.0 && h <= 1.0)) throw Error(Errc::domain_error, "h must lie in [0, 1]");
  if (mode == Mode::monogamy) {
    if (!(u >= 1.0)) throw Error(Errc::domain_error, "monogamy needs u >= 1");
    if (!(r >= 0.0 && r <= 1.0)) throw Error(Errc::domain_error, "monogamy needs r in [0, 1]");
  } else {
    if (!(u >= 0.0 && u <= 1.0)) throw Error(Errc::domain_error, "polygamy needs u in [0, 1]");
    if (!(r >= 1.0)) throw Error(Errc::domain_error, "polygamy needs r >= 1");
  }
  constexpr double tol = 1e-12;
  BoundComparison out;
  out.new_factor = bound_factor(u, h, r);
  out.baseline = baseline_factor(r);
  if (h > 0.0) out.k_form = k_form_factor(1.0 / h, r);
  // ge(a, b): a >= b in the direction the mode prefers.
  auto ge = [&](double a, double b) { return mode == Mode::monogamy ? a >= b - tol : a <= b + tol; };
  out.new_vs_baseline = ge(out.new_factor, out.baseline);
  if (out.k_form) {
    out.new_vs_k_form = ge(out.new_factor, *out.k_form);
    out.k_form_vs_baseline = ge(*out.k_form, out.baseline);
  }
  return out;
}

namespace {

Triple pipeline_triple(const qstate::GenSchmidtParams& p, measures::MeasureKind kind) {
  const auto psi = qstate::gen_schmidt_state(p);
  const auto rho = qstate::density_from_pure(psi);
  const std::size_t a[] = {0};
  const std::size_t ab[] = {0, 1};
  const std::size_t ac[] = {0, 2};
  Triple t;
  t.whole = measures::evaluate(kind, psi, a);
  t.ab = measures::evaluate(kind, qstate::partial_trace(rho, ab), a);
  t.ac = measures::evaluate(kind, qstate::partial_trace(rho, ac), a);
  return t;
}

Table fig1() {
  const Triple e = pipeline_triple(qstate::example1_params(), measures::MeasureKind::concurrence);
  Table t{{"alpha", "gamma", "z1", "z2", "z3"}, {}};
  for (int j = 40; j <= 100; ++j) {
    const double gamma = j / 20.0;
    for (int i = 0; i <= j; ++i) {
      const double alpha = i / 20.0;
      const double r = alpha / gamma;
      const double lhs = power(e.whole, alpha);
      const double ab = power(e.ab, alpha);
      const double ac = power(e.ac, alpha);
      const double z1 = lhs - ab - baseline_factor(r) * ac;
      const double z2 = lhs - ab - k_form_factor(2.0, r) * ac;
      const double z3 = lhs - ab - bound_factor(1.5, 0.5, r) * ac;
      t.rows.push_back({alpha, gamma, z1, z2, z3});
    }
  }
  return t;
}

Table fig2() {
  const Triple e = pipeline_triple(qstate::example2_params(), measures::MeasureKind::crenoa);
  Table t{{"beta", "delta", "lhs", "rhs_prior", "rhs_new"}, {}};
  for (int j = 20; j <= 40; ++j) {
    const double delta = j / 20.0;
    for (int i = j; i <= 160; ++i) {
      const double beta = i / 20.0;
      const double r = beta / delta;
      const double ab = power(e.ab, beta);
      const double ac = power(e.ac, beta);
      t.rows.push_back({beta, delta, power(e.whole, beta), ab + k_form_factor(1.25, r) * ac,
                        ab + bound_factor(0.8, 0.8, r) * ac});
    }
  }
  return t;
}

Table fig3() {
  const Triple e = pipeline_triple(qstate::example2_params(), measures::MeasureKind::crenoa);
  Table t{{"beta", "y1", "y2"}, {}};
  for (int i = 40; i <= 160; ++i) {
    const double beta = i / 20.0;
    const double r = beta / 2.0;
    const double lhs = power(e.whole, beta);
    const double ab = power(e.ab, beta);
    const double ac = power(e.ac, beta);
    t.rows.push_back({beta, ab + baseline_factor(r) * ac - lhs, ab + bound_factor(0.8, 0.8, r) * ac - lhs});
  }
  return t;
}

}  // namespace

Table figure_grid(Figure which) {
  switch (which) {
    case Figure::fig1: return fig1();
    case Figure::fig2: return fig2();
    case Figure::fig3: return fig3();
  }
  return {};
}

std::string format_number(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string to_csv(const Table& t) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
    os << '\n';
  }
  return os.str();
}

}  // namespace monolab::inequalities
