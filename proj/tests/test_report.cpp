#include "doctest.h"
#include "enriques/report.hpp"
#include "json.hpp"

using namespace enriques;

TEST_SUITE("report") {
  TEST_CASE("expectations cover the shipped graphs") {
    const Expectations e = load_expectations(std::string(ENRIQUES_DATA_DIR) + "/expectations.json");
    CHECK(e.graphs.size() == 9);
    CHECK(e.broken.size() == 3);
  }

  TEST_CASE("whole corpus run is deterministic and well formed") {
    SuiteOptions opt;
    opt.data_dir = ENRIQUES_DATA_DIR;
    const RunReport a = verify_all(opt), b = verify_all(opt);
    CHECK(a.text() == b.text());
    CHECK(a.structured() == b.structured());
    const auto j = nlohmann::json::parse(a.structured());
    CHECK(j.at("checks").size() == a.checks.size());
    CHECK(j.at("exit_code").get<int>() == a.exit_code());
    int failed = 0;
    for (const auto& c : a.checks) failed += c.pass ? 0 : 1;
    CHECK(a.exit_code() == (failed ? 1 : 0));
    bool coverage = false;
    for (const auto& c : a.checks)
      if (c.name.rfind("coverage: every shipped graph", 0) == 0) coverage = c.pass;
    CHECK(coverage);
  }

  TEST_CASE("graph checks report census mismatches") {
    const CurveGraph g = load_graph(std::string(ENRIQUES_DATA_DIR) + "/graphs/e8.graph");
    GraphExpectation e;
    e.census = {{"E~8", 2}};
    const auto checks = graph_checks(g, e);
    REQUIRE(checks.size() == 2);
    CHECK(checks[0].pass);
    CHECK_FALSE(checks[1].pass);
  }

  TEST_CASE("census lines carry fiber types") {
    const CurveGraph g = load_graph(std::string(ENRIQUES_DATA_DIR) + "/graphs/d8.graph");
    const auto lines = census_lines(g, 8);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "D~8: 1  fibers (I4*)");
    CHECK(lines[1] == "E~8: 2  fibers (II*)");
  }
}
