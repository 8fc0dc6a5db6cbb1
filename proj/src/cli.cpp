#include "monolab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "monolab/errors.hpp"
#include "monolab/inequalities.hpp"
#include "monolab/io.hpp"
#include "monolab/measures.hpp"
#include "monolab/qstate.hpp"
#include "monolab/verify.hpp"

namespace monolab::cli {

namespace {

using inequalities::format_number;
using io::Json;
using measures::MeasureKind;
using measures::Mode;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

double parse_double(const std::string& s, const std::string& flag) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return x;
  } catch (const std::exception&) {
    throw UsageError(flag + ": not a number: '" + s + "'");
  }
}

std::uint64_t parse_uint(const std::string& s, const std::string& flag) {
  try {
    std::size_t pos = 0;
    if (!s.empty() && s.front() == '-') throw std::invalid_argument(s);
    const auto x = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return x;
  } catch (const std::exception&) {
    throw UsageError(flag + ": not a nonnegative integer: '" + s + "'");
  }
}

std::vector<double> parse_doubles(const std::string& s, const std::string& flag) {
  std::vector<double> out;
  for (const auto& item : split_commas(s)) out.push_back(parse_double(item, flag));
  if (out.empty()) throw UsageError(flag + ": empty list");
  return out;
}

MeasureKind parse_kind(const std::string& name) {
  if (auto k = measures::parse_measure(name)) return *k;
  throw UsageError("--measure: unknown measure '" + name + "'");
}

std::string letters(std::span<const std::size_t> idx) {
  std::string s;
  for (auto i : idx) s += static_cast<char>('A' + i);
  return s;
}

// ---------------------------------------------------------------- states

struct StateSource {
  std::string gen_schmidt;
  std::size_t ghz = 0;
  std::size_t w = 0;
  std::string random;
  std::string file;
  std::vector<CLI::Option*> options;

  void attach(CLI::App* app) {
    options = {
        app->add_option("--gen-schmidt", gen_schmidt, "l0,l1,l2,l3,l4[,phi] generalized Schmidt state"),
        app->add_option("--ghz", ghz, "n-qubit GHZ state"),
        app->add_option("--w", w, "n-qubit W state"),
        app->add_option("--random", random, "d1,d2,...,seed Haar-random pure state"),
        app->add_option("--state-file", file, "JSON state file"),
    };
    for (auto* a : options)
      for (auto* b : options)
        if (a != b) a->excludes(b);
  }

  bool given() const {
    return std::any_of(options.begin(), options.end(), [](CLI::Option* o) { return o->count() > 0; });
  }

  io::AnyState load() const {
    if (options[0]->count()) {
      const auto v = parse_doubles(gen_schmidt, "--gen-schmidt");
      if (v.size() != 5 && v.size() != 6) throw UsageError("--gen-schmidt: expected 5 or 6 values");
      qstate::GenSchmidtParams p;
      std::copy_n(v.begin(), 5, p.lambda.begin());
      if (v.size() == 6) p.phi = v[5];
      return qstate::gen_schmidt_state(p);
    }
    if (options[1]->count()) return qstate::ghz(ghz);
    if (options[2]->count()) return qstate::w_state(w);
    if (options[3]->count()) {
      const auto items = split_commas(random);
      if (items.size() < 3) throw UsageError("--random: expected d1,d2,...,seed with at least two dims");
      qstate::Dims dims;
      for (std::size_t i = 0; i + 1 < items.size(); ++i) dims.push_back(parse_uint(items[i], "--random"));
      return qstate::haar_random_pure(dims, parse_uint(items.back(), "--random"));
    }
    if (options[4]->count()) return io::load_state_file(file);
    throw UsageError("a state source is required (--gen-schmidt, --ghz, --w, --random or --state-file)");
  }
};

const qstate::Dims& dims_of(const io::AnyState& s) {
  return std::visit([](const auto& x) -> const qstate::Dims& { return x.dims; }, s);
}

qstate::DensityMatrix density_of(const io::AnyState& s) {
  if (const auto* p = std::get_if<qstate::PureState>(&s)) return qstate::density_from_pure(*p);
  return std::get<qstate::DensityMatrix>(s);
}

double measure_across(MeasureKind k, const io::AnyState& s, std::span<const std::size_t> part_a) {
  if (const auto* p = std::get_if<qstate::PureState>(&s)) return measures::evaluate(k, *p, part_a);
  return measures::evaluate(k, std::get<qstate::DensityMatrix>(s), part_a);
}

double marginal(MeasureKind k, const qstate::DensityMatrix& rho, std::span<const std::size_t> keep) {
  const std::size_t a[] = {0};
  return measures::evaluate(k, qstate::partial_trace(rho, keep), a);
}

// ---------------------------------------------------------------- measures

struct MeasuresCmd {
  CLI::App* app = nullptr;
  StateSource src;
  std::string measure;
  std::string split = "0";
  bool json = false;

  void attach(CLI::App& root) {
    app = root.add_subcommand("measures", "Entanglement measures of a state");
    src.attach(app);
    app->add_option("--measure", measure, "Restrict to one measure");
    app->add_option("--split", split, "Comma-separated subsystems on the A side (default 0)");
    app->add_flag("--json", json, "JSON output");
  }

  int run(std::ostream& out) const {
    const auto state = src.load();
    const auto& dims = dims_of(state);
    std::vector<std::size_t> part;
    for (const auto& s : split_commas(split)) part.push_back(parse_uint(s, "--split"));
    const auto rest = qstate::complement(part, dims.size());

    std::vector<MeasureKind> kinds;
    if (!measure.empty()) {
      kinds.push_back(parse_kind(measure));
    } else {
      kinds = {MeasureKind::concurrence, MeasureKind::negativity, MeasureKind::cren, MeasureKind::crenoa,
               MeasureKind::concurrence_assist};
    }

    struct Row {
      std::string label;
      std::vector<std::optional<double>> values;
    };
    std::vector<Row> rows;
    auto value_or_null = [](auto&& fn) -> std::optional<double> {
      try {
        return fn();
      } catch (const Error& e) {
        if (e.code() == Errc::unsupported) return std::nullopt;
        throw;
      }
    };

    Row whole{letters(part) + "|" + letters(rest), {}};
    for (auto k : kinds) whole.values.push_back(value_or_null([&] { return measure_across(k, state, part); }));
    rows.push_back(std::move(whole));

    const bool qubits = std::all_of(dims.begin(), dims.end(), [](std::size_t d) { return d == 2; });
    if (part == std::vector<std::size_t>{0} && dims.size() >= 3 && qubits) {
      const auto rho = density_of(state);
      for (std::size_t b = 1; b < dims.size(); ++b) {
        const std::size_t keep[] = {0, b};
        Row r{letters(keep), {}};
        for (auto k : kinds) r.values.push_back(value_or_null([&] { return marginal(k, rho, keep); }));
        rows.push_back(std::move(r));
      }
    }

    if (json) {
      Json jrows = Json::array();
      for (const auto& r : rows) {
        Json vals = Json::object();
        for (std::size_t i = 0; i < kinds.size(); ++i) {
          vals[std::string(measures::to_string(kinds[i]))] = r.values[i] ? Json(*r.values[i]) : Json(nullptr);
        }
        jrows.push_back(Json{{"split", r.label}, {"values", vals}});
      }
      out << Json{{"dims", dims}, {"rows", jrows}}.dump(2) << '\n';
      return 0;
    }
    out << std::left << std::setw(10) << "split";
    for (auto k : kinds) out << std::setw(20) << measures::to_string(k);
    out << '\n';
    for (const auto& r : rows) {
      out << std::setw(10) << r.label;
      for (const auto& v : r.values) out << std::setw(20) << (v ? format_number(*v) : "n/a");
      out << '\n';
    }
    return 0;
  }
};

// ---------------------------------------------------------------- check

void print_report(std::ostream& out, const inequalities::InequalityReport& r) {
  auto line = [&](const std::string& k, const std::string& v) {
    out << std::left << std::setw(22) << k << v << '\n';
  };
  line("mode", std::string(measures::to_string(r.mode)));
  line("lhs", format_number(r.lhs));
  line("rhs", format_number(r.rhs));
  line("margin", format_number(r.margin));
  line("holds", r.holds ? "true" : "false");
  if (r.degenerate) line("degenerate", "true");
  for (const auto& c : r.conditions) {
    line(c.name, (c.satisfied ? "ok    slack " : "FAIL  slack ") + format_number(c.slack));
  }
  auto opt = [](const std::optional<double>& x) { return x ? format_number(*x) : std::string("n/a"); };
  const auto& steps = r.step_admissible.empty() ? std::vector<inequalities::StepAdmissible>{r.admissible}
                                                : r.step_admissible;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::string suffix = r.step_admissible.empty() ? "" : "_" + std::to_string(i + 1);
    line("h_min" + suffix, opt(steps[i].h_min));
    line((r.mode == Mode::monogamy ? "u_max" : "u_min") + suffix, opt(steps[i].u_extreme));
  }
}

struct CheckCmd {
  CLI::App* app = nullptr;
  Mode mode;
  StateSource src;
  std::string values;
  std::string measure;
  double exponent = 0.0;
  double base = 2.0;
  std::optional<double> h;
  std::optional<double> u;
  std::string split_case = "auto";
  std::optional<std::size_t> m;
  bool json = false;

  explicit CheckCmd(Mode md) : mode(md) {}

  void attach(CLI::App* parent) {
    const bool mono = mode == Mode::monogamy;
    app = parent->add_subcommand(mono ? "monogamy" : "polygamy",
                                 mono ? "Parameterized monogamy check" : "Parameterized polygamy check");
    app->set_help_flag("--help", "Print this help message and exit");
    src.attach(app);
    auto* vals = app->add_option("--values", values, "E_A|BC,E_AB,E_AC measure values");
    for (auto* o : src.options) vals->excludes(o);
    app->add_option("--measure", measure, mono ? "Measure (default concurrence)" : "Measure (default crenoa)");
    app->add_option(mono ? "--alpha" : "--beta", exponent, "Exponent")->required();
    app->add_option(mono ? "--gamma" : "--delta", base, "Base exponent (default 2)");
    app->add_option("--h", h, "h parameter (default h_min)");
    app->add_option("--u", u, mono ? "u parameter (default u_max)" : "u parameter (default u_min)");
    app->add_option("--case", split_case, "auto, c (h condition on E_AC) or b")
        ->check(CLI::IsMember({"auto", "c", "b"}));
    app->add_option("--m", m, "Chain split index (default from the state)");
    app->add_flag("--json", json, "JSON output");
  }

  MeasureKind kind() const {
    const MeasureKind k = measure.empty() ? (mode == Mode::monogamy ? MeasureKind::concurrence : MeasureKind::crenoa)
                                          : parse_kind(measure);
    const auto profile = measures::profile_for(k);
    if (profile.mode != mode) {
      throw UsageError("--measure: " + std::string(measures::to_string(k)) + " is a " +
                       std::string(measures::to_string(profile.mode)) + " measure");
    }
    if (!profile.admits(base)) {
      throw Error(Errc::exponent_out_of_range, "base exponent " + format_number(base) +
                                                   " is outside the admissible set of " +
                                                   std::string(measures::to_string(k)));
    }
    return k;
  }

  int run(std::ostream& out) const {
    Json inputs = Json::object();
    inequalities::InequalityReport rep;
    if (!values.empty()) {
      const auto v = parse_doubles(values, "--values");
      if (v.size() != 3) throw UsageError("--values: expected three values E_A|BC,E_AB,E_AC");
      if (!measure.empty()) kind();
      rep = tripartite({v[0], v[1], v[2]}, inputs);
    } else if (src.given()) {
      const MeasureKind k = kind();
      inputs["measure"] = std::string(measures::to_string(k));
      const auto state = src.load();
      const auto& dims = dims_of(state);
      if (dims.size() < 3) throw UsageError("check needs a state with at least three subsystems");
      const auto rho = density_of(state);
      const std::size_t a[] = {0};
      const double global = measure_across(k, state, a);
      if (dims.size() == 3) {
        const std::size_t ab[] = {0, 1};
        const std::size_t ac[] = {0, 2};
        rep = tripartite({global, marginal(k, rho, ab), marginal(k, rho, ac)}, inputs);
      } else {
        inequalities::ChainInputs in;
        in.global = global;
        for (std::size_t b = 1; b < dims.size(); ++b) {
          const std::size_t keep[] = {0, b};
          in.pairs.push_back(marginal(k, rho, keep));
        }
        for (std::size_t first = 2; first + 1 < dims.size(); ++first) {
          std::vector<std::size_t> keep{0};
          for (std::size_t b = first; b < dims.size(); ++b) keep.push_back(b);
          in.tails.push_back(marginal(k, rho, keep));
        }
        rep = chain(in, inputs);
      }
    } else {
      throw UsageError("check needs --values or a state source");
    }

    if (json) {
      Json j = io::to_json(rep);
      j["inputs"] = inputs;
      out << j.dump(2) << '\n';
    } else {
      print_report(out, rep);
    }
    return 0;
  }

  inequalities::InequalityReport tripartite(const inequalities::Triple& e, Json& inputs) const {
    using inequalities::SplitCase;
    const SplitCase split = split_case == "c"   ? SplitCase::split_on_c
                            : split_case == "b" ? SplitCase::split_on_b
                                                : inequalities::natural_split(e);
    const auto ext = inequalities::extreme_parameters(mode, split, e.whole, e.ab, e.ac, base, h);
    const inequalities::BoundSpec spec{exponent, base, ext.h, u.value_or(ext.u), split};
    inputs["e_a_bc"] = e.whole;
    inputs["e_ab"] = e.ab;
    inputs["e_ac"] = e.ac;
    inputs["h"] = spec.h;
    inputs["u"] = spec.u;
    inputs["case"] = std::string(inequalities::to_string(split));
    return mode == Mode::monogamy ? inequalities::check_monogamy_tripartite(e, spec)
                                  : inequalities::check_polygamy_tripartite(e, spec);
  }

  inequalities::InequalityReport chain(const inequalities::ChainInputs& in, Json& inputs) const {
    auto spec = inequalities::extreme_chain(in, mode, base, h).spec;
    if (m) spec.split_index = *m;
    for (auto& st : spec.steps) {
      if (h) st.h = *h;
      if (u) st.u = *u;
    }
    inputs["global"] = in.global;
    inputs["pairs"] = in.pairs;
    inputs["tails"] = in.tails;
    inputs["split_index"] = spec.split_index;
    Json steps = Json::array();
    for (const auto& st : spec.steps) steps.push_back(Json{{"h", st.h}, {"u", st.u}});
    inputs["steps"] = steps;
    return mode == Mode::monogamy ? inequalities::chain_monogamy(in, spec, exponent, base)
                                  : inequalities::chain_polygamy(in, spec, exponent, base);
  }
};

// ---------------------------------------------------------------- sweep

struct SweepCmd {
  CLI::App* app = nullptr;
  std::string system = "tripartite_pure";
  std::string measure = "concurrence";
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  std::string exponents;
  double base = 2.0;
  std::size_t rank = 2;
  std::optional<double> forced_h;
  int threads = 0;
  bool serial = false;
  bool json = false;

  void attach(CLI::App& root) {
    app = root.add_subcommand("sweep", "Randomized verification sweep");
    app->add_option("--system", system, "tripartite_pure, four_qubit_pure or two_qubit_mixed")
        ->check(CLI::IsMember({"tripartite_pure", "four_qubit_pure", "two_qubit_mixed"}));
    app->add_option("--measure", measure, "Measure (default concurrence)");
    app->add_option("--n", n, "Number of states (default 1000)");
    app->add_option("--seed", seed, "Seed (default 0)");
    app->add_option("--exponents", exponents, "Comma-separated alpha or beta grid");
    app->add_option("--base", base, "gamma or delta (default 2)");
    app->add_option("--rank", rank, "Rank of two_qubit_mixed states (default 2)");
    app->add_option("--forced-h", forced_h, "Use this h instead of h_min");
    app->add_option("--threads", threads, "Thread count (default MONOLAB_THREADS or all)");
    app->add_flag("--serial", serial, "Use the serial reference implementation");
    app->add_flag("--json", json, "JSON output");
  }

  int run(std::ostream& out) const {
    verify::SweepConfig cfg;
    cfg.n_states = n;
    cfg.seed = seed;
    cfg.system = *verify::parse_system(system);
    cfg.measure = parse_kind(measure);
    cfg.base_exponent = base;
    cfg.rank = rank;
    cfg.forced_h = forced_h;
    cfg.threads = threads;
    if (!exponents.empty()) {
      cfg.exponents = parse_doubles(exponents, "--exponents");
    } else if (measures::profile_for(cfg.measure).mode == Mode::monogamy) {
      cfg.exponents = {0.5, 1.0, 1.5, 2.0};
    } else {
      cfg.exponents = {2.0, 3.0, 4.0};
    }
    const auto s = serial ? verify::run_sweep_serial(cfg) : verify::run_sweep(cfg);
    if (json) {
      Json j = io::to_json(s);
      j["config"] = Json{{"system", system}, {"measure", measure}, {"n_states", n},        {"seed", seed},
                         {"exponents", cfg.exponents}, {"base_exponent", base}, {"rank", rank}};
      out << j.dump(2) << '\n';
      return 0;
    }
    auto line = [&](const std::string& k, const std::string& v) {
      out << std::left << std::setw(18) << k << std::right << std::setw(20) << v << '\n';
    };
    line("tested", std::to_string(s.tested));
    line("hypothesis_hits", std::to_string(s.hypothesis_hits));
    line("violations", std::to_string(s.violations));
    line("min_margin", format_number(s.min_margin));
    line("mean_margin", format_number(s.mean_margin));
    line("tightness_gain", format_number(s.tightness_gain));
    return 0;
  }
};

// ---------------------------------------------------------------- figure

struct FigureCmd {
  CLI::App* app = nullptr;
  std::string which;
  std::string out_path;

  void attach(CLI::App& root) {
    app = root.add_subcommand("figure", "Write a figure grid as CSV");
    app->add_option("which", which, "fig1, fig2 or fig3")->required()->check(CLI::IsMember({"fig1", "fig2", "fig3"}));
    app->add_option("--out", out_path, "Output path (default standard output)");
  }

  int run(std::ostream& out) const {
    const auto fig = which == "fig1"   ? inequalities::Figure::fig1
                     : which == "fig2" ? inequalities::Figure::fig2
                                       : inequalities::Figure::fig3;
    const std::string csv = inequalities::to_csv(inequalities::figure_grid(fig));
    if (out_path.empty()) {
      out << csv;
      return 0;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f || !(f << csv)) throw Error(Errc::parse_error, "cannot write " + out_path);
    return 0;
  }
};

// ---------------------------------------------------------------- examples

struct ExamplesCmd {
  CLI::App* app = nullptr;
  std::string which;
  bool json = false;

  void attach(CLI::App& root) {
    app = root.add_subcommand("examples", "Reproduce the two worked examples");
    app->add_option("which", which, "ex1 or ex2")->required()->check(CLI::IsMember({"ex1", "ex2"}));
    app->add_flag("--json", json, "JSON output");
  }

  int run(std::ostream& out) const {
    const bool one = which == "ex1";
    const auto params = one ? qstate::example1_params() : qstate::example2_params();
    const MeasureKind k = one ? MeasureKind::concurrence : MeasureKind::crenoa;
    const auto psi = qstate::gen_schmidt_state(params);
    const auto rho = qstate::density_from_pure(psi);
    const std::size_t a[] = {0};
    const std::size_t ab[] = {0, 1};
    const std::size_t ac[] = {0, 2};
    const inequalities::Triple e{measures::evaluate(k, psi, a), marginal(k, rho, ab), marginal(k, rho, ac)};

    std::vector<std::pair<std::string, double>> rows;
    inequalities::InequalityReport rep;
    if (one) {
      const auto adm = inequalities::admissible_monogamy(e, 2.0);
      rows = {{"C_A|BC", e.whole}, {"C_AB", e.ab}, {"C_AC", e.ac}, {"u_max", adm.u_max}, {"h_min", adm.h_min}};
      rep = inequalities::check_monogamy_tripartite(e, {2.0, 2.0, adm.h_min, adm.u_max});
    } else {
      const auto adm = inequalities::admissible_polygamy(e, 2.0);
      rows = {{"Na_A|BC", e.whole}, {"Na_AB", e.ab}, {"Na_AC", e.ac}, {"u_min", adm.u_min}, {"h_min", adm.h_min}};
      rep = inequalities::check_polygamy_tripartite(e, {2.0, 2.0, 0.8, 0.8});
    }
    if (json) {
      Json vals = Json::object();
      for (const auto& [name, v] : rows) vals[name] = v;
      out << Json{{"example", which}, {"values", vals}, {"report", io::to_json(rep)}}.dump(2) << '\n';
      return 0;
    }
    for (const auto& [name, v] : rows) out << std::left << std::setw(10) << name << " = " << format_number(v) << '\n';
    out << std::left << std::setw(10) << "margin" << " = " << format_number(rep.margin)
        << (one ? "   (alpha = gamma = 2, h = h_min, u = u_max)\n" : "   (beta = delta = 2, h = u = 4/5)\n");
    return 0;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement measures and parameterized monogamy/polygamy bounds", "monolab"};
  app.require_subcommand(1);

  MeasuresCmd measures_cmd;
  measures_cmd.attach(app);
  auto* check = app.add_subcommand("check", "Check a monogamy or polygamy relation");
  check->require_subcommand(1);
  CheckCmd mono(Mode::monogamy), poly(Mode::polygamy);
  mono.attach(check);
  poly.attach(check);
  SweepCmd sweep_cmd;
  sweep_cmd.attach(app);
  FigureCmd figure_cmd;
  figure_cmd.attach(app);
  ExamplesCmd examples_cmd;
  examples_cmd.attach(app);

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (measures_cmd.app->parsed()) return measures_cmd.run(out);
    if (mono.app->parsed()) return mono.run(out);
    if (poly.app->parsed()) return poly.run(out);
    if (sweep_cmd.app->parsed()) return sweep_cmd.run(out);
    if (figure_cmd.app->parsed()) return figure_cmd.run(out);
    if (examples_cmd.app->parsed()) return examples_cmd.run(out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  err << "usage error: no command\n";
  return 2;
}

}  // namespace monolab::cli
