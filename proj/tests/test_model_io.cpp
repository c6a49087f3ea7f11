#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>

#include "lmicenter/model_io.hpp"
#include "test_util.hpp"

using namespace lmicenter;

namespace {

const char* kScalar = R"({
  "time_domain": "continuous",
  "n": 1, "m": 1,
  "A": [[-1.0]], "B": [[1.0]], "C": [[1.0]], "D": [[2.0]]
})";

}  // namespace

TEST_CASE("minimal scalar file") {
  const ModelDocument doc = parse_model(kScalar);
  CHECK(doc.model.n() == 1);
  CHECK(doc.model.m() == 1);
  CHECK(doc.model.time_domain == TimeDomain::continuous);
  CHECK(doc.model.A(0, 0) == std::complex<double>(-1.0, 0.0));
  CHECK_FALSE(doc.weight.has_value());
  CHECK_FALSE(doc.x.has_value());
}

TEST_CASE("schema violations name the offending field") {
  auto expect_error = [](const std::string& text, const std::string& token) {
    try {
      parse_model(text);
      FAIL("expected ParseError for: " << token);
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find(token) != std::string::npos);
    }
  };
  expect_error("not json at all", "invalid JSON");
  expect_error(R"({"time_domain": "weekly"})", "time_domain");
  expect_error(R"({"time_domain": "continuous", "n": 1, "m": 1,
                   "A": [[1, 2]], "B": [[1]], "C": [[1]], "D": [[1]]})",
               "'A'");
  expect_error(R"({"time_domain": "continuous", "n": 1, "m": 1,
                   "B": [[1]], "C": [[1]], "D": [[1]]})",
               "'A'");
  // NaN is not valid JSON; 1e999 overflows double and is rejected at parse
  expect_error(R"({"time_domain": "continuous", "n": 1, "m": 1,
                   "A": [[1e999]], "B": [[1]], "C": [[1]], "D": [[1]]})",
               "overflow");
  // non-Hermitian Q
  expect_error(R"({"time_domain": "continuous", "n": 2, "m": 1,
                   "A": [[-1, 0], [0, -2]], "B": [[1], [1]],
                   "C": [[1, 1]], "D": [[2]],
                   "weight": {"Q": [[0, 1], [0, 0]],
                              "C": [[1, 1]], "R": [[4]]}})",
               "'Q'");
  // rank-deficient B is a model invariant violation
  expect_error(R"({"time_domain": "continuous", "n": 2, "m": 2,
                   "A": [[-1, 0], [0, -2]], "B": [[1, 1], [1, 1]],
                   "C": [[1, 0], [0, 1]], "D": [[2, 0], [0, 2]]})",
               "rank");
}

TEST_CASE("complex entries parse as [re, im] pairs") {
  const ModelDocument doc = parse_model(R"({
    "time_domain": "discrete", "n": 1, "m": 1,
    "A": [[[0.25, 0.5]]], "B": [[1]], "C": [[1]], "D": [[2]]})");
  CHECK(doc.model.A(0, 0) == std::complex<double>(0.25, 0.5));
}

TEST_CASE("round trip is bit-identical") {
  std::mt19937_64 rng(81);
  ModelDocument doc;
  doc.model = random_passive_model(3, 2, 1700, TimeDomain::continuous);
  // inject irrational-ish values and a complex entry
  doc.model.A(0, 1) = std::complex<double>(1.0 / 3.0, -2.0 / 7.0);
  doc.model.A(1, 0) = std::complex<double>(0.1, 0.3);
  doc.weight = GeneralizedWeight::from_model(doc.model);
  doc.x = testutil::random_hermitian(3, rng);

  const std::string once = serialize_model(doc);
  const ModelDocument reread = parse_model(once);
  const std::string twice = serialize_model(reread);
  CHECK(once == twice);
  CHECK((reread.model.A - doc.model.A).norm() == 0.0);
  CHECK((reread.x->mat() - doc.x->mat()).norm() == 0.0);

  // file-level round trip
  const std::string path = "model_io_roundtrip.json";
  write_model(path, doc);
  const ModelDocument from_file = read_model(path);
  CHECK(serialize_model(from_file) == once);
  std::remove(path.c_str());
}

TEST_CASE("missing file") {
  CHECK_THROWS_AS(read_model("definitely/not/here.json"), ParseError);
}
