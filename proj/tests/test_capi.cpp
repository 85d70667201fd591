// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "qpskrx.h"

namespace {

std::string slurp(const char* path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

qpskrx_receiver_params ideal(double alpha_sq, int stages) {
  return qpskrx_receiver_params{alpha_sq, stages, 1.0, 1.0, 0.0, 0.0, 200.0};
}

}  // namespace

TEST_CASE("status names and version") {
  CHECK(std::strlen(qpskrx_version()) > 0);
  CHECK(std::string(qpskrx_status_name(QPSKRX_OK)) == "ok");
  CHECK(std::string(qpskrx_status_name(QPSKRX_ERR_CONFIG)) == "configuration error");
}

TEST_CASE("argument checks") {
  CHECK(qpskrx_config_create("sweep", nullptr) == QPSKRX_ERR_INVALID_ARGUMENT);
  qpskrx_config* c = nullptr;
  CHECK(qpskrx_config_create("nonsense", &c) == QPSKRX_ERR_CONFIG);
  CHECK(c == nullptr);
  CHECK(std::strstr(qpskrx_last_error(), "nonsense") != nullptr);
  CHECK(qpskrx_config_validate(nullptr) == QPSKRX_ERR_INVALID_ARGUMENT);
  qpskrx_config_destroy(nullptr);
  qpskrx_table_destroy(nullptr);
  double v = 0;
  CHECK(qpskrx_sql_heterodyne(-1.0, &v) == QPSKRX_ERR_DOMAIN);
  CHECK(qpskrx_sql_heterodyne(1.0, nullptr) == QPSKRX_ERR_INVALID_ARGUMENT);
}

TEST_CASE("scalar entry points") {
  double v = 0;
  REQUIRE(qpskrx_sql_heterodyne(1.0, &v) == QPSKRX_OK);
  CHECK(v == doctest::Approx(0.29213901826285898466).epsilon(1e-13));
  REQUIRE(qpskrx_sql_lossy(2.0, 0.65, &v) == QPSKRX_OK);
  CHECK(v == doctest::Approx(0.23805713284018458167).epsilon(1e-13));
  REQUIRE(qpskrx_helstrom_qpsk(1.0, &v) == QPSKRX_OK);
  CHECK(v == doctest::Approx(0.092421415604458982959).epsilon(1e-12));

  const auto p = ideal(1.0, 4);
  REQUIRE(qpskrx_enumerate_error(&p, 20, &v) == QPSKRX_OK);
  CHECK(v == doctest::Approx(0.2659830385653322987).epsilon(1e-12));
  const auto big = ideal(1.0, 24);
  CHECK(qpskrx_enumerate_error(&big, 20, &v) == QPSKRX_ERR_RESOURCE);

  qpskrx_mc_result r{};
  REQUIRE(qpskrx_estimate_error(&p, 200'000, 1, 0, &r) == QPSKRX_OK);
  CHECK(r.trials == 200'000);
  CHECK(std::abs(r.error_prob - 0.2659830385653322987) <= 4 * r.std_error);
  CHECK(qpskrx_estimate_error(&p, 0, 1, 0, &r) == QPSKRX_ERR_DOMAIN);

  auto bad = ideal(1.0, 4);
  bad.xi = 1.5;
  CHECK(qpskrx_enumerate_error(&bad, 20, &v) == QPSKRX_ERR_DOMAIN);
}

TEST_CASE("config, run and table access") {
  qpskrx_config* c = nullptr;
  REQUIRE(qpskrx_config_create("enumerate", &c) == QPSKRX_OK);
  CHECK(qpskrx_config_set(c, "alpha_sq_grid", "1:2:2") == QPSKRX_OK);
  CHECK(qpskrx_config_set(c, "m", "4") == QPSKRX_OK);
  CHECK(qpskrx_config_set(c, "bogus", "1") == QPSKRX_ERR_CONFIG);
  CHECK(std::strstr(qpskrx_last_error(), "bogus") != nullptr);
  CHECK(qpskrx_config_set(c, "xi", "1.2") == QPSKRX_OK);
  CHECK(qpskrx_config_validate(c) == QPSKRX_ERR_CONFIG);
  CHECK(std::strstr(qpskrx_last_error(), "xi") != nullptr);
  qpskrx_table* t = nullptr;
  CHECK(qpskrx_run(c, &t) == QPSKRX_ERR_CONFIG);
  CHECK(t == nullptr);
  REQUIRE(qpskrx_config_set(c, "xi", "0.996") == QPSKRX_OK);

  size_t needed = 0;
  CHECK(qpskrx_config_to_json(c, nullptr, 0, &needed) == QPSKRX_OK);
  CHECK(needed > 2);
  std::string buf(needed, '\0');
  REQUIRE(qpskrx_config_to_json(c, buf.data(), buf.size(), &needed) == QPSKRX_OK);
  CHECK(buf.find("\"m\":4") != std::string::npos);

  REQUIRE(qpskrx_run(c, &t) == QPSKRX_OK);
  CHECK(qpskrx_table_rows(t) == 2);
  const size_t cols = qpskrx_table_columns(t);
  REQUIRE(cols == 7);
  CHECK(std::string(qpskrx_table_column_name(t, 3)) == "error_prob");
  CHECK(qpskrx_table_column_name(t, cols) == nullptr);
  double v = 0;
  CHECK(qpskrx_table_value(t, 1, 0, &v) == QPSKRX_OK);
  CHECK(v == 2.0);
  CHECK(qpskrx_table_value(t, 2, 0, &v) == QPSKRX_ERR_INVALID_ARGUMENT);

  REQUIRE(qpskrx_table_write_csv(t, "capi_out.csv") == QPSKRX_OK);
  REQUIRE(qpskrx_table_write_json(t, "capi_out.json") == QPSKRX_OK);
  const std::string csv = slurp("capi_out.csv");
  CHECK(csv.rfind("# {\"config\":", 0) == 0);
  CHECK(csv.find("\nalpha_sq,alpha_sq_att,m,error_prob,sql,sql_lossy,helstrom\n") != std::string::npos);
  CHECK(slurp("capi_out.json").find("\"columns\"") != std::string::npos);
  CHECK(qpskrx_table_write_csv(t, "no/such/dir/out.csv") == QPSKRX_ERR_IO);

  qpskrx_config* again = nullptr;
  REQUIRE(qpskrx_config_create("enumerate", &again) == QPSKRX_OK);
  REQUIRE(qpskrx_config_merge_file(again, "capi_out.csv") == QPSKRX_OK);
  size_t n2 = 0;
  qpskrx_config_to_json(again, nullptr, 0, &n2);
  std::string buf2(n2, '\0');
  qpskrx_config_to_json(again, buf2.data(), buf2.size(), &n2);
  CHECK(buf2 == buf);
  CHECK(qpskrx_config_merge_file(again, "missing.json") == QPSKRX_ERR_IO);

  qpskrx_table_destroy(t);
  qpskrx_config_destroy(again);
  qpskrx_config_destroy(c);
}
