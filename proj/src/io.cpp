#include "monolab/io.hpp"

#include <fstream>
#include <sstream>

#include "monolab/errors.hpp"

namespace monolab::io {

using qstate::ComplexMatrix;
using qstate::cplx;

namespace {

Json optional_number(const std::optional<double>& x) { return x ? Json(*x) : Json(nullptr); }

Json admissible_json(const inequalities::StepAdmissible& a) {
  return Json{{"h_min", optional_number(a.h_min)}, {"u_extreme", optional_number(a.u_extreme)}};
}

qstate::Dims read_dims(const nlohmann::json& j) {
  if (!j.contains("dims") || !j["dims"].is_array()) throw Error(Errc::parse_error, "missing \"dims\" array");
  qstate::Dims dims;
  for (const auto& d : j["dims"]) {
    if (!d.is_number_unsigned()) throw Error(Errc::parse_error, "dims must be positive integers");
    dims.push_back(d.get<std::size_t>());
  }
  return dims;
}

std::vector<double> read_vector(const nlohmann::json& j, const char* what) {
  if (!j.is_array()) throw Error(Errc::parse_error, std::string(what) + " must be an array");
  std::vector<double> out;
  for (const auto& x : j) {
    if (!x.is_number()) throw Error(Errc::parse_error, std::string(what) + " entries must be numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace

Json to_json(const qstate::PureState& s) {
  Json re = Json::array(), im = Json::array();
  for (const auto& a : s.amps) {
    re.push_back(a.real());
    im.push_back(a.imag());
  }
  return Json{{"dims", s.dims}, {"re", re}, {"im", im}};
}

Json to_json(const qstate::DensityMatrix& rho) {
  Json re = Json::array(), im = Json::array();
  for (std::size_t r = 0; r < rho.mat.rows(); ++r) {
    Json rr = Json::array(), ir = Json::array();
    for (std::size_t c = 0; c < rho.mat.cols(); ++c) {
      rr.push_back(rho.mat(r, c).real());
      ir.push_back(rho.mat(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ir);
  }
  return Json{{"dims", rho.dims}, {"re", re}, {"im", im}};
}

Json to_json(const inequalities::InequalityReport& r) {
  Json conds = Json::array();
  for (const auto& c : r.conditions) {
    conds.push_back(Json{{"name", c.name}, {"satisfied", c.satisfied}, {"slack", c.slack}});
  }
  Json adm = admissible_json(r.admissible);
  if (!r.step_admissible.empty()) {
    Json steps = Json::array();
    for (const auto& s : r.step_admissible) steps.push_back(admissible_json(s));
    adm["steps"] = steps;
  }
  return Json{{"mode", std::string(measures::to_string(r.mode))},
              {"lhs", r.lhs},
              {"rhs", r.rhs},
              {"margin", r.margin},
              {"holds", r.holds},
              {"hypotheses_met", r.hypotheses_met},
              {"degenerate", r.degenerate},
              {"conditions", conds},
              {"admissible", adm},
              {"coefficients", r.coefficients}};
}

Json to_json(const verify::SweepSummary& s) {
  return Json{{"tested", s.tested},
              {"hypothesis_hits", s.hypothesis_hits},
              {"violations", s.violations},
              {"min_margin", s.min_margin},
              {"mean_margin", s.mean_margin},
              {"tightness_gain", s.tightness_gain}};
}

AnyState state_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(Errc::parse_error, "state must be a JSON object");
  auto dims = read_dims(j);
  if (!j.contains("re")) throw Error(Errc::parse_error, "missing \"re\"");
  const auto& re = j["re"];
  const bool has_im = j.contains("im");
  if (!re.is_array() || re.empty()) throw Error(Errc::parse_error, "\"re\" must be a nonempty array");

  if (!re.front().is_array()) {
    const auto r = read_vector(re, "re");
    const auto i = has_im ? read_vector(j["im"], "im") : std::vector<double>(r.size(), 0.0);
    if (i.size() != r.size()) throw Error(Errc::parse_error, "\"re\" and \"im\" lengths differ");
    std::vector<cplx> amps(r.size());
    for (std::size_t k = 0; k < r.size(); ++k) amps[k] = {r[k], i[k]};
    return qstate::make_pure(std::move(amps), std::move(dims));
  }

  const std::size_t n = re.size();
  ComplexMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto row = read_vector(re[r], "re row");
    if (row.size() != n) throw Error(Errc::parse_error, "density matrix must be square");
    std::vector<double> irow(n, 0.0);
    if (has_im) {
      if (!j["im"].is_array() || j["im"].size() != n) throw Error(Errc::parse_error, "\"im\" shape differs");
      irow = read_vector(j["im"][r], "im row");
      if (irow.size() != n) throw Error(Errc::parse_error, "\"im\" shape differs");
    }
    for (std::size_t c = 0; c < n; ++c) m(r, c) = {row[c], irow[c]};
  }
  return qstate::make_density(std::move(m), std::move(dims));
}

AnyState load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::parse_error, "cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse_error, path + ": " + e.what());
  }
  return state_from_json(j);
}

}  // namespace monolab::io
