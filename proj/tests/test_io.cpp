#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "monolab/errors.hpp"
#include "monolab/io.hpp"

using namespace monolab;

namespace {

Errc parse_code(const char* text) {
  try {
    io::state_from_json(nlohmann::json::parse(text));
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return Errc::domain_error;
}

}  // namespace

TEST_CASE("pure states round-trip through JSON") {
  const auto s = qstate::haar_random_pure({2, 3}, 99);
  const auto back = io::state_from_json(nlohmann::json::parse(io::to_json(s).dump()));
  REQUIRE(std::holds_alternative<qstate::PureState>(back));
  const auto& p = std::get<qstate::PureState>(back);
  CHECK(p.dims == s.dims);
  CHECK(p.amps == s.amps);
}

TEST_CASE("density matrices round-trip through JSON") {
  qstate::Rng rng(4);
  const auto rho = qstate::random_mixed({2, 2}, 3, rng);
  const auto back = io::state_from_json(nlohmann::json::parse(io::to_json(rho).dump()));
  REQUIRE(std::holds_alternative<qstate::DensityMatrix>(back));
  const auto& d = std::get<qstate::DensityMatrix>(back);
  CHECK(d.dims == rho.dims);
  CHECK(d.mat == rho.mat);
}

TEST_CASE("real data without im") {
  const auto s = io::state_from_json(nlohmann::json::parse(R"({"dims":[2,2],"re":[0.6,0,0,0.8]})"));
  const auto& p = std::get<qstate::PureState>(s);
  CHECK(p.amps[3] == qstate::cplx(0.8, 0.0));
  const auto m = io::state_from_json(nlohmann::json::parse(R"({"dims":[2],"re":[[0.5,0],[0,0.5]]})"));
  CHECK(std::holds_alternative<qstate::DensityMatrix>(m));
}

TEST_CASE("malformed state documents") {
  CHECK(parse_code("[1,2]") == Errc::parse_error);
  CHECK(parse_code(R"({"re":[1,0]})") == Errc::parse_error);
  CHECK(parse_code(R"({"dims":[2,-1],"re":[1,0]})") == Errc::parse_error);
  CHECK(parse_code(R"({"dims":[2]})") == Errc::parse_error);
  CHECK(parse_code(R"({"dims":[2],"re":[1,"x"]})") == Errc::parse_error);
  CHECK(parse_code(R"({"dims":[2],"re":[1,0],"im":[0]})") == Errc::parse_error);
  CHECK(parse_code(R"({"dims":[2],"re":[[1,0],[0]]})") == Errc::parse_error);
  CHECK(parse_code(R"({"dims":[2],"re":[1,1]})") == Errc::not_normalized);
  CHECK(parse_code(R"({"dims":[3],"re":[1,0]})") == Errc::dimension_mismatch);
  CHECK(parse_code(R"({"dims":[2],"re":[[0.5,0.2],[0.1,0.5]]})") == Errc::not_hermitian);
}

TEST_CASE("state files") {
  const auto path = std::filesystem::temp_directory_path() / "monolab_io_test.json";
  {
    std::ofstream f(path);
    f << io::to_json(qstate::ghz(3)).dump();
  }
  const auto s = io::load_state_file(path.string());
  CHECK(std::get<qstate::PureState>(s).dims == qstate::Dims{2, 2, 2});
  {
    std::ofstream f(path);
    f << "{not json";
  }
  try {
    io::load_state_file(path.string());
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::parse_error);
  }
  std::filesystem::remove(path);
  try {
    io::load_state_file(path.string());
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::parse_error);
  }
}

TEST_CASE("report and summary encodings") {
  const inequalities::Triple e{2.0 / 3.0, 1.0 / 3.0, std::sqrt(2.0) / 3.0};
  const auto rep = inequalities::check_monogamy_tripartite(e, {1.0, 2.0, 0.5, 1.5});
  const auto j = io::to_json(rep);
  CHECK(j["mode"] == "monogamy");
  CHECK(j["holds"] == true);
  CHECK(j["conditions"].size() == 3);
  CHECK(j["conditions"][0]["name"] == "h_condition");
  CHECK(j["conditions"][0].contains("slack"));
  CHECK(j["admissible"]["u_extreme"].get<double>() == doctest::Approx(1.5));
  CHECK_FALSE(j["admissible"].contains("steps"));

  verify::SweepSummary s;
  s.tested = 3;
  s.min_margin = std::nan("");
  const auto js = io::to_json(s);
  CHECK(js["tested"] == 3);
  CHECK(js.dump().find("\"min_margin\":null") != std::string::npos);
}
