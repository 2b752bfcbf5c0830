#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <sstream>
#include <string>

#include "ising/errors.hpp"
#include "ising/scan.hpp"
#include "ising/spectral.hpp"

using namespace ising;

namespace {

ScanRequest entropy_request() {
  ScanRequest r;
  r.command = ScanCommand::entropy;
  r.lambdas = {0.5, 1.0};
  r.block_sizes = {1, 3};
  r.distances = {0, 2, 7};
  return r;
}

std::string run(const ScanRequest& r, int expected_code = 0) {
  std::ostringstream out, err;
  CHECK(run_scan(r, out, err) == expected_code);
  return out.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("real lists") {
  CHECK(parse_real_list("0.5") == std::vector<double>{0.5});
  CHECK(parse_real_list("1,2.5,3") == std::vector<double>{1.0, 2.5, 3.0});
  const auto r = parse_real_list("0:2:5");
  REQUIRE(r.size() == 5);
  CHECK(r.front() == 0.0);
  CHECK(r[2] == doctest::Approx(1.0));
  CHECK(r.back() == 2.0);
  CHECK(parse_real_list("0:1:2,7").size() == 3);
  CHECK_THROWS_AS(parse_real_list(""), ValidationError);
  CHECK_THROWS_AS(parse_real_list("0:1:1"), ValidationError);
  CHECK_THROWS_AS(parse_real_list("0:1"), ValidationError);
  CHECK_THROWS_AS(parse_real_list("abc"), ValidationError);
  CHECK_THROWS_AS(parse_real_list("1,,2"), ValidationError);
  CHECK_THROWS_AS(parse_real_list("1.5x"), ValidationError);
}

TEST_CASE("integer lists") {
  CHECK(parse_int_list("4") == std::vector<std::int64_t>{4});
  CHECK(parse_int_list("2:5") == std::vector<std::int64_t>{2, 3, 4, 5});
  CHECK(parse_int_list("0:10:3") == std::vector<std::int64_t>{0, 5, 10});
  CHECK(parse_int_list("1,3,9") == std::vector<std::int64_t>{1, 3, 9});
  CHECK_THROWS_AS(parse_int_list("1.5"), ValidationError);
  CHECK_THROWS_AS(parse_int_list("0:10:4"), ValidationError);
  CHECK_THROWS_AS(parse_int_list("5:2"), ValidationError);
}

TEST_CASE("request validation") {
  auto r = entropy_request();
  CHECK_NOTHROW(r.validate());
  r.lambdas.clear();
  CHECK_THROWS_AS(r.validate(), ValidationError);
  r = entropy_request();
  r.block_sizes = {0};
  CHECK_THROWS_AS(r.validate(), ValidationError);
  r = entropy_request();
  r.distances = {-1};
  CHECK_THROWS_AS(r.validate(), ValidationError);
  r = entropy_request();
  r.threads = 0;
  CHECK_THROWS_AS(r.validate(), ValidationError);
  r = ScanRequest{};
  r.command = ScanCommand::fit_k;
  r.fit_range = {10, 30};
  CHECK_THROWS_AS(r.validate(), ValidationError);
  r = ScanRequest{};
  r.command = ScanCommand::oracle_check;
  r.lambdas = {1.0};
  r.chain_sizes = {20};
  CHECK_THROWS_AS(r.validate(), ValidationError);
}

TEST_CASE("CSV layout and spot checks") {
  const auto req = entropy_request();
  const auto rows = lines(run(req));
  REQUIRE(rows.size() == 1 + 2 * 2 * 3);
  CHECK(rows[0] == "lambda,L,d,S_bits");
  CHECK(rows[1].rfind("0.5,1,0,", 0) == 0);
  const auto table = evaluate_scan(req);
  for (const auto& row : table.rows) {
    CorrelationKernel k;
    k.lambda = std::get<double>(row[0]);
    const auto L = std::get<std::int64_t>(row[1]);
    const auto d = std::get<std::int64_t>(row[2]);
    CHECK(std::get<double>(row[3]) == entropy_two_blocks(k, L, d).bits);
  }
}

TEST_CASE("output is independent of the thread count") {
  auto req = entropy_request();
  req.lambdas = {0.3, 0.7, 1.0, 1.6};
  req.distances = {0, 1, 5, 20};
  const std::string one = run(req);
  req.threads = 4;
  CHECK(run(req) == one);
  CHECK(run(req) == one);

  ScanRequest d;
  d.command = ScanCommand::scan_d;
  d.lambdas = {1.0};
  d.block_sizes = {2};
  d.distances = parse_int_list("0:20");
  const std::string scan_one = run(d);
  d.threads = 3;
  CHECK(run(d) == scan_one);
  CHECK(lines(scan_one)[0] == "lambda,L,d,nu_1,nu_2,nu_3,nu_4,S_bits");
}

TEST_CASE("JSON schema") {
  auto req = entropy_request();
  req.format = OutputFormat::json;
  req.params = {{"lambda", "0.5,1"}, {"L", "1,3"}, {"d", "0,2,7"}};
  const auto doc = nlohmann::json::parse(run(req));
  CHECK(doc["meta"]["command"] == "entropy");
  CHECK(doc["meta"]["version"] == kVersion);
  CHECK(doc["meta"]["params"]["L"] == "1,3");
  REQUIRE(doc["rows"].size() == 12);
  CHECK(doc["rows"][0]["lambda"] == 0.5);
  CHECK(doc["rows"][0]["L"] == 1);
  CHECK(doc["rows"][0]["S_bits"].is_number_float());
}

TEST_CASE("gl scan") {
  ScanRequest r;
  r.command = ScanCommand::gl;
  r.lambdas = {1.0};
  r.l_max = 2;
  const auto rows = lines(run(r));
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == "lambda,l,g_l");
  CHECK(rows[3].rfind("1,0,-0.6366197723675", 0) == 0);
}

TEST_CASE("exit codes") {
  auto bad = entropy_request();
  bad.block_sizes.clear();
  std::ostringstream out, err;
  CHECK(run_scan(bad, out, err) == 2);
  CHECK(out.str().empty());
  CHECK_FALSE(err.str().empty());

  ScanRequest hard;
  hard.command = ScanCommand::gl;
  hard.lambdas = {0.5, 1.0 - 1e-12};
  hard.l_max = 3;
  std::ostringstream out2, err2;
  CHECK(run_scan(hard, out2, err2) == 1);
  CHECK(err2.str().find("grid point") != std::string::npos);
}

TEST_CASE("oracle table leaves d empty for contiguous masks") {
  ScanRequest r;
  r.command = ScanCommand::oracle_check;
  r.lambdas = {1.0};
  r.chain_sizes = {6};
  const auto table = evaluate_scan(r);
  REQUIRE_FALSE(table.rows.empty());
  CHECK(table.columns.size() == 11);
  const auto csv = lines(render_csv(table));
  CHECK(csv[0].rfind("n,lambda,mask,L,d,", 0) == 0);
  CHECK(csv[1].rfind("6,1,\"2\",1,,", 0) == 0);
  CHECK(std::holds_alternative<std::monostate>(table.rows[0][4]));
  CHECK(std::get<std::int64_t>(table.rows.back()[4]) >= 1);
}
