// SPDX-License-Identifier: Apache-2.0

#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "pseudoherm/io.hpp"

using namespace pseudoherm;
using nlohmann::json;

TEST_CASE("matrix JSON round trip") {
  Op m(2, 2);
  m << cplx(1, 2), cplx(-0.5, 0), cplx(0, 1e-300), cplx(3.25, -7);
  const Op back = parse_matrix_json(matrix_to_json(m));
  CHECK((back - m).norm() == 0.0);
  const json j = json::parse(matrix_to_json(m, 2));
  CHECK(j["dim"] == 2);
}

TEST_CASE("matrix JSON without imaginary part or dim") {
  const Op m = parse_matrix_json(R"({"re": [[1, 2], [3, 4]]})");
  CHECK(m(1, 0) == cplx(3.0, 0.0));
  CHECK(m.imag().norm() == 0.0);
}

TEST_CASE("matrix JSON errors") {
  CHECK_THROWS_WITH_AS(parse_matrix_json("{\"re\": [[1, 2],\n [3, 4]", "m.json"),
                       doctest::Contains("m.json:2:"), ParseError);
  CHECK_THROWS_WITH_AS(parse_matrix_json(R"({"re": [[1, 2], [3]]})", "m.json"),
                       doctest::Contains("re[1] has 1 entries, expected 2"), ParseError);
  CHECK_THROWS_WITH_AS(parse_matrix_json(R"({"im": [[1]]})"), doctest::Contains("missing field 're'"),
                       ParseError);
  CHECK_THROWS_WITH_AS(parse_matrix_json(R"({"re": [[1, 2, 3], [1, 2, 3]]})"),
                       doctest::Contains("expected square"), ParseError);
  CHECK_THROWS_WITH_AS(parse_matrix_json(R"({"dim": 3, "re": [[1]]})"),
                       doctest::Contains("'dim'"), ParseError);
  CHECK_THROWS_WITH_AS(parse_matrix_json(R"({"re": [[1, 0], [0, 1]], "im": [[1]]})"),
                       doctest::Contains("'im' shape"), ParseError);
  CHECK_THROWS_WITH_AS(parse_matrix_json(R"({"re": [[1, "a"], [0, 1]]})"),
                       doctest::Contains("re[0][1] is not a number"), ParseError);
  CHECK_THROWS_AS(parse_matrix_json("[1, 2]"), ParseError);
  CHECK_THROWS_WITH_AS(read_matrix_file("/nonexistent/m.json"), doctest::Contains("cannot open"),
                       ParseError);
}

TEST_CASE("CSV header and spectrum rows") {
  RunHeader h;
  h.command = "check m.json";
  h.seed = 42;
  h.tolerances["pair"] = 1e-8;
  h.parameters["dim"] = "3";
  Eigen::VectorXcd v(4);
  v << 1.0, cplx(2, 3), cplx(2, -3), cplx(0, 5);
  const SpectrumClass cls = classify_eigenvalues(v, 1e-8);
  std::ostringstream os;
  write_spectrum_csv(os, v, cls, {}, h);
  const std::string s = os.str();
  CHECK(s.find("# version: 0.1.0\n") == 0);
  CHECK(s.find("# seed: 42\n") != std::string::npos);
  CHECK(s.find("# tol.pair: 1e-08\n") != std::string::npos);
  CHECK(s.find("# dim: 3\n") != std::string::npos);
  CHECK(s.find("index,re,im,class,pair_index,multiplicity\n") != std::string::npos);
  CHECK(s.find("\n0,1,0,real,-1,1\n") != std::string::npos);
  CHECK(s.find("\n1,2,3,pair+,2,1\n") != std::string::npos);
  CHECK(s.find("\n2,2,-3,pair-,1,1\n") != std::string::npos);
  CHECK(s.find("\n3,0,5,unpaired,-1,1\n") != std::string::npos);
}

TEST_CASE("certificate JSON") {
  Op h(2, 2);
  h << cplx(0, 1), 0.0, 0.0, cplx(0, -1);
  const Certificate cert = certify_pseudo_hermiticity(h, 1e-8);
  RunHeader hdr;
  hdr.command = "check";
  hdr.seed = 3;
  const json j = json::parse(certificate_to_json(cert, hdr));
  CHECK(j["verdict"] == "pseudo-Hermitian");
  CHECK(j["classification"] == "ConjugatePaired");
  CHECK(j["meta"]["seed"] == 3);
  CHECK(j["residual"].get<double>() <= 1e-12);
  const Op eta = parse_matrix_json(j["eta"].dump());
  CHECK(pseudo_hermiticity_residual(h, Metric(eta)) <= 1e-12);
  CHECK(j["pairs"].size() == 1);

  Op bad(2, 2);
  bad << cplx(0, 1), 0.0, 0.0, cplx(0, 2);
  const json jb = json::parse(certificate_to_json(certify_pseudo_hermiticity(bad, 1e-8), hdr));
  CHECK(jb["verdict"] == "not pseudo-Hermitian");
  CHECK(jb["eta"].is_null());
  CHECK(jb["unpaired"].size() == 2);
}

TEST_CASE("report JSON maps non-finite values to null") {
  RunHeader hdr;
  const json j = json::parse(report_to_json({{"a", 1.5}, {"b", std::nan("")}}, hdr, {{"k", "v"}}));
  CHECK(j["values"]["a"] == 1.5);
  CHECK(j["values"]["b"].is_null());
  CHECK(j["labels"]["k"] == "v");
  CHECK(j["meta"]["version"] == kVersion);
}
