#include <doctest.h>

#include <cmath>

#include <json.hpp>

#include "report.hpp"
#include "verify_suite.hpp"

using jacobiflow::tools::Report;

TEST_SUITE("cli") {

TEST_CASE("text report format") {
  Report r;
  r.set("status", "member");
  r.set("residual", 0.5);
  r.set("rank", 3);
  r.set("ok", true);
  r.set("values", std::vector<double>{1, -2});
  r.table("t", {"a", "b"}).rows.push_back({1.0, 2.0});
  CHECK(r.text() ==
        "status: member\n"
        "residual: 5.000000000000e-01\n"
        "rank: 3\n"
        "ok: true\n"
        "values: 1.000000000000e+00 -2.000000000000e+00\n"
        "table t\n# a b\n1.000000000000e+00 2.000000000000e+00\nend\n");
}

TEST_CASE("json report carries the same data") {
  Report r;
  r.set("residual", 0.25);
  r.set("bad", INFINITY);
  r.table("t", {"a"}).rows.push_back({3.0});
  const auto j = nlohmann::json::parse(r.json());
  CHECK(j["residual"].get<double>() == 0.25);
  CHECK(j["bad"].get<std::string>() == "inf");
  CHECK(j["tables"]["t"]["rows"][0][0].get<double>() == 3.0);
}

TEST_CASE("reports are deterministic") {
  auto make = [] {
    Report r;
    r.set("x", 1.0 / 3.0);
    return r.text();
  };
  CHECK(make() == make());
}

TEST_CASE("simple singularity list") {
  const auto g = jacobiflow::verify::simple_singularities();
  CHECK(g.size() == 12);
  CHECK(g.front().name == "A1");
  CHECK(g.back().name == "E8");
}

TEST_CASE("criterion line format") {
  jacobiflow::verify::CriterionResult r{9, "parity", true, 0.0, 0.0, 0.5, "ok"};
  const std::string line = jacobiflow::verify::format_line(r);
  CHECK(line.rfind("[PASS] 9 parity:", 0) == 0);
}

}
