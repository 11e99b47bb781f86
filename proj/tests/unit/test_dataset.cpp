#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "symclust/errors.hpp"
#include "symclust/eval/dataset.hpp"
#include "symclust/lang/parse.hpp"

using namespace symclust;
namespace fs = std::filesystem;

namespace {

std::string fixture_path(const std::string& name) {
  return (fs::path(SYMCLUST_FIXTURE_DIR) / "datasets" / name).string();
}

struct TempJson {
  fs::path path;
  explicit TempJson(const std::string& body) {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("symclust_ds_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++) + ".json");
    std::ofstream out(path);
    out << body;
  }
  ~TempJson() { std::error_code ec; fs::remove(path, ec); }
};

const char* kMinimal = R"({
  "problems": [{
    "id": "p1",
    "entry": {"name": "f", "params": [{"name": "x", "type": "int"}], "return": "int"},
    "responses": [
      {"id": "r1", "source": "fn f(x: int) -> int { return x; }",
       "logprob": -1.5, "tokens": 12},
      {"id": "r2", "source": "fn f(x: int -> int { return x; }",
       "logprob": -2.5, "tokens": 10}
    ],
    "tests": [{"input": [3], "expected": 3}],
    "top_ranked": "r1"
  }]
})";

}  // namespace

TEST_CASE("the bundled fixture dataset loads six problems") {
  auto records = eval::load_dataset(fixture_path("fixture6.json"));
  REQUIRE(records.size() == 6);
  CHECK(records[0].id == "goodarray");
  CHECK(records[0].responses.size() == 3);
  CHECK(records[0].tests.size() == 12);
  CHECK(records[0].signature.name == "is_good");
  CHECK(records[0].signature.params.size() == 1);
  CHECK(records[0].signature.params[0].second == lang::SnipType::IntArray);
  CHECK(records[0].signature.return_type == lang::SnipType::Bool);
  for (const auto& rec : records) {
    CHECK(!rec.responses.empty());
    CHECK(!rec.tests.empty());
    for (const auto& r : rec.responses) CHECK(r.followups.size() == 2);
  }
}

TEST_CASE("unparsable snippets load and are flagged only later") {
  TempJson tmp(kMinimal);
  auto records = eval::load_dataset(tmp.path.string());
  REQUIRE(records.size() == 1);
  REQUIRE(records[0].responses.size() == 2);
  CHECK(lang::parse(records[0].responses[0].snippet).valid());
  CHECK(!lang::parse(records[0].responses[1].snippet).valid());
}

TEST_CASE("duplicate response ids are a load error") {
  std::string body = kMinimal;
  body.replace(body.find("\"r2\""), 4, "\"r1\"");
  TempJson tmp(body);
  CHECK_THROWS_AS(eval::load_dataset(tmp.path.string()), LoadError);
  try {
    eval::load_dataset(tmp.path.string());
  } catch (const LoadError& e) {
    CHECK(std::string(e.what()).find("responses[1].id") != std::string::npos);
  }
}

TEST_CASE("schema violations name the offending path") {
  auto expect_load_error = [](const std::string& body, const std::string& needle) {
    TempJson tmp(body);
    try {
      eval::load_dataset(tmp.path.string());
      FAIL_CHECK("expected LoadError for " << needle);
    } catch (const LoadError& e) {
      CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos, e.what());
    }
  };

  std::string no_tests = kMinimal;
  no_tests.replace(no_tests.find(R"([{"input": [3], "expected": 3}])"),
                   std::string(R"([{"input": [3], "expected": 3}])").size(), "[]");
  expect_load_error(no_tests, "tests");

  std::string bad_arity = kMinimal;
  bad_arity.replace(bad_arity.find(R"("input": [3])"),
                    std::string(R"("input": [3])").size(), R"("input": [3, 4])");
  expect_load_error(bad_arity, "tests[0].input");

  std::string bad_type = kMinimal;
  bad_type.replace(bad_type.find(R"("expected": 3)"),
                   std::string(R"("expected": 3)").size(), R"("expected": true)");
  expect_load_error(bad_type, "tests[0].expected");

  std::string bad_top = kMinimal;
  bad_top.replace(bad_top.find(R"("top_ranked": "r1")"),
                  std::string(R"("top_ranked": "r1")").size(),
                  R"("top_ranked": "zz")");
  expect_load_error(bad_top, "top_ranked");

  std::string bad_decl = kMinimal;
  bad_decl.replace(bad_decl.find(R"("type": "int")"),
                   std::string(R"("type": "int")").size(), R"("type": "float")");
  expect_load_error(bad_decl, "params[0].type");

  expect_load_error("{}", "problems");
  expect_load_error("{\"problems\": [{}]}", "id");
  expect_load_error("not json", "");
}

TEST_CASE("duplicate problem ids are rejected") {
  const char* body = R"({
    "problems": [
      {"id": "p1",
       "entry": {"name": "f", "params": [], "return": "int"},
       "responses": [{"id": "r1", "source": "fn f() -> int { return 1; }",
                      "logprob": -1.0, "tokens": 5}],
       "tests": [{"input": [], "expected": 1}],
       "top_ranked": "r1"},
      {"id": "p1",
       "entry": {"name": "f", "params": [], "return": "int"},
       "responses": [{"id": "r1", "source": "fn f() -> int { return 1; }",
                      "logprob": -1.0, "tokens": 5}],
       "tests": [{"input": [], "expected": 1}],
       "top_ranked": "r1"}
    ]
  })";
  TempJson tmp(body);
  CHECK_THROWS_AS(eval::load_dataset(tmp.path.string()), LoadError);
}

TEST_CASE("missing files are load errors") {
  CHECK_THROWS_AS(eval::load_dataset("/nonexistent/nope.json"), LoadError);
}

TEST_CASE("non-integer numbers in values are rejected") {
  std::string body = kMinimal;
  body.replace(body.find(R"("input": [3])"), std::string(R"("input": [3])").size(),
               R"("input": [3.5])");
  TempJson tmp(body);
  CHECK_THROWS_AS(eval::load_dataset(tmp.path.string()), LoadError);
}

TEST_CASE("token counts below one are rejected") {
  std::string body = kMinimal;
  body.replace(body.find("\"tokens\": 12"), std::string("\"tokens\": 12").size(),
               "\"tokens\": 0");
  TempJson tmp(body);
  CHECK_THROWS_AS(eval::load_dataset(tmp.path.string()), LoadError);
}
