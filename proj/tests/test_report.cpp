#include <catch2/catch_amalgamated.hpp>

#include "koszul/report.hpp"

using namespace koszul;

namespace {

const char* kJordan =
    "gens x, y;\n"
    "rel y*x - x*y - x^2;\n"
    "param a;\nparam b;\n"
    "aut nu { x -> x; y -> 2*x + y; }\n"
    "aut scale { x -> a*x; y -> b*x + a*y; }\n"
    "sigma diag { p = 1; q = 0; S11 = [[1, 0], [2, 1]];"
    " S12 = [[0, 0], [0, 0]]; S21 = [[0, 0], [0, 0]];"
    " S22 = [[1, 0], [0, 1]]; }\n";

report::json run(const char* cmd, const char* src, report::Flags flags = {}) {
  auto doc = dsl::parse(src);
  return report::run(cmd, doc, flags);
}

}  // namespace

TEST_CASE("reports carry the schema version and echo the command") {
  auto j = run("hilbert", kJordan);
  REQUIRE(j["schema"] == 1);
  REQUIRE(j["command"] == "hilbert");
  REQUIRE(j["field"] == "q");
  REQUIRE(j["degree_bound"] == 6);
  REQUIRE(j["result"]["dims"] ==
          report::json::array({1, 2, 3, 4, 5, 6, 7}));
  REQUIRE(j["result"]["dual_dims"][2] == 1);
}

TEST_CASE("nakayama report serializes matrices as rational strings") {
  auto j = run("nakayama", kJordan);
  auto nu = j["result"]["nu"];
  REQUIRE(nu[0] == report::json::array({"1", "0"}));
  REQUIRE(nu[1] == report::json::array({"2", "1"}));
  REQUIRE(j["result"]["lambda"][1] == report::json::array({"-2", "-1"}));
}

TEST_CASE("hdet command uses --aut and --set bindings") {
  report::Flags flags;
  flags.aut = "scale";
  flags.sets = {{"a", Rational(3)}, {"b", Rational(5)}};
  auto j = run("hdet", kJordan, flags);
  REQUIRE(j["result"]["hdet"] == "9");
  flags.sets = {{"a", Rational(1, 2)}, {"b", Rational(0)}};
  REQUIRE(run("hdet", kJordan, flags)["result"]["hdet"] == "1/4");
}

TEST_CASE("unknown names and commands are input errors") {
  report::Flags flags;
  flags.aut = "nope";
  REQUIRE_THROWS_AS(run("hdet", kJordan, flags), report::InputError);
  REQUIRE_THROWS_AS(run("frobnicate", kJordan), report::InputError);
  report::Flags empty;
  // two auts defined, none selected
  REQUIRE_THROWS_AS(run("hdet", kJordan, empty), report::InputError);
}

TEST_CASE("cy commands embed the full verdict") {
  report::Flags flags;
  flags.sigma_name = "diag";
  auto j = run("cy-double-ore", kJordan, flags);
  REQUIRE(j["result"]["verdict"]["status"] == "Yes");
  REQUIRE(j["result"]["verdict"]["reasons"].size() >= 2);
  REQUIRE(j["result"]["wxyz"] ==
          report::json::array({"1", "0", "0", "1"}));
  flags = {};
  flags.aut = "nu";
  auto o = run("cy-ore", kJordan, flags);
  REQUIRE(o["result"]["verdict"]["status"] == "Yes");
}

TEST_CASE("double-ore report includes extension data and Nakayama blocks") {
  report::Flags flags;
  flags.sigma_name = "diag";
  auto j = run("double-ore", kJordan, flags);
  REQUIRE(j["result"]["dims"] ==
          report::json::array({1, 4, 10, 20, 35, 56, 84}));
  REQUIRE(j["result"]["nakayama"]["on_base"] ==
          report::json::array({{"1", "0"}, {"0", "1"}}));
  REQUIRE(j["result"]["extension"]["generators"].size() == 4);
}

TEST_CASE("reports are byte-stable across runs") {
  report::Flags flags;
  flags.sigma_name = "diag";
  auto a = run("double-ore", kJordan, flags).dump(2);
  auto b = run("double-ore", kJordan, flags).dump(2);
  REQUIRE(a == b);
}

TEST_CASE("prime-field evaluation via the field flag") {
  report::Flags flags;
  flags.field = "F101";
  auto j = run("nakayama", kJordan, flags);
  REQUIRE(j["field"] == "F101");
  REQUIRE(j["result"]["nu"][1] == report::json::array({"2", "1"}));
  flags.field = "F4x";
  REQUIRE_THROWS_AS(run("nakayama", kJordan, flags), report::InputError);
  flags.field = "banana";
  REQUIRE_THROWS_AS(run("nakayama", kJordan, flags), report::InputError);
}

TEST_CASE("sweep iterates the declared grids in lexicographic order") {
  const char* src =
      "gens x, y;\nrel y*x - x*y - x^2;\n"
      "param a = {1, 2};\nparam b = {0, 1};\n"
      "aut s { x -> a*x; y -> b*x + a*y; }\n";
  report::Flags flags;
  flags.sub = "hdet";
  flags.aut = "s";
  auto j = run("sweep", src, flags);
  auto rows = j["result"]["rows"];
  REQUIRE(rows.size() == 4);
  REQUIRE(rows[0]["params"] == report::json({{"a", "1"}, {"b", "0"}}));
  REQUIRE(rows[1]["params"] == report::json({{"a", "1"}, {"b", "1"}}));
  REQUIRE(rows[2]["params"] == report::json({{"a", "2"}, {"b", "0"}}));
  REQUIRE(rows[3]["params"] == report::json({{"a", "2"}, {"b", "1"}}));
  REQUIRE(rows[0]["result"]["hdet"] == "1");
  REQUIRE(rows[2]["result"]["hdet"] == "4");
}

TEST_CASE("sweep with no grids yields an empty table") {
  auto j = run("sweep", kJordan, [] {
    report::Flags f;
    f.sub = "hilbert";
    return f;
  }());
  REQUIRE(j["result"]["rows"].empty());
}

TEST_CASE("sweep rows capture engine errors without aborting the table") {
  const char* src =
      "gens x, y;\nrel y*x + x*y;\n"
      "param f = {0, 1};\n"
      "sigma n { p = -1; q = 0; S11 = [[0, -1], [1, 0]];"
      " S12 = [[0, f], [f, 0]]; S21 = [[0, f], [f, 0]];"
      " S22 = [[0, -1], [1, 0]]; }\n";
  report::Flags flags;
  flags.sub = "cy-double-ore";
  flags.sigma_name = "n";
  auto j = run("sweep", src, flags);
  auto rows = j["result"]["rows"];
  REQUIRE(rows.size() == 2);
  REQUIRE(rows[0]["result"]["verdict"]["status"] == "Yes");  // f=0, g=1
  REQUIRE(rows[1].contains("error"));  // f=1 = g: det_r singular
  REQUIRE(rows[1]["error"]["kind"] == "NotAutomorphism");
}

TEST_CASE("text rendering covers nested reports") {
  report::Flags flags;
  flags.sigma_name = "diag";
  auto j = run("cy-double-ore", kJordan, flags);
  auto text = report::render(j, "text");
  REQUIRE(text.find("status: Yes") != std::string::npos);
  REQUIRE(text.find("schema: 1") != std::string::npos);
  REQUIRE_THROWS_AS(report::render(j, "yaml"), report::InputError);
}
