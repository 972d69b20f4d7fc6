// Copyright 2026 The entpower Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "doctest.h"
#include "entpower/cli.hpp"
#include "entpower/closedform.hpp"
#include "entpower/errors.hpp"

using namespace entpower;
using Json = nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "entpower_cli_test";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

std::string save(const BipartiteUnitary& U, const std::string& name) {
  std::string path = temp_file(name);
  std::ofstream(path) << cli::write_matrix(U);
  return path;
}

Json report(const std::vector<std::string>& args) {
  std::vector<std::string> a = args;
  a.push_back("--json");
  Outcome o = call(a);
  REQUIRE_MESSAGE(o.code == 0, o.err);
  return Json::parse(o.out);
}

}  // namespace

TEST_CASE("matrix files round trip bit for bit") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    BipartiteUnitary U = random_instance(RandomKind::HaarLike, 2, 3, std::nullopt, seed);
    BipartiteUnitary V = cli::parse_matrix(cli::write_matrix(U));
    CHECK(V.dA == 2);
    CHECK(V.dB == 3);
    CHECK(V.matrix == U.matrix);
  }
}

TEST_CASE("bad matrix files exit with code 2") {
  std::string path = temp_file("bad.json");
  std::ofstream(path) << R"({"dA":1,"dB":2,"entries":[[1,0],[0,0],[0,0],[2,0]]})";
  Outcome o = call({"ke", "--in", path});
  CHECK(o.code == cli::kBadMatrix);
  CHECK(o.err.find("unitar") != std::string::npos);
  std::ofstream(path) << "{not json";
  CHECK(call({"schmidt", "--in", path}).code == cli::kBadMatrix);
  std::ofstream(path) << R"({"dA":1,"dB":2,"entries":[[1,0]]})";
  CHECK(call({"schmidt", "--in", path}).code == cli::kBadMatrix);
  CHECK(call({"schmidt", "--in", temp_file("missing.json")}).code == cli::kBadMatrix);
}

TEST_CASE("usage errors exit with code 1") {
  CHECK(call({}).code == cli::kUsage);
  CHECK(call({"frobnicate"}).code == cli::kUsage);
  CHECK(call({"ke"}).code == cli::kUsage);
  CHECK(call({"ke", "--restarts", "zero"}).code == cli::kUsage);
  CHECK(call({"gen", "wibble", "2", "2"}).code == cli::kUsage);
}

TEST_CASE("ke on CNOT") {
  std::string path = save(build(spec::Named{"cnot", 2}), "cnot.json");
  Json r = report({"ke", "--in", path, "--seed", "0"});
  CHECK(std::abs(r["results"]["value"].get<double>() - 1.0) < 1e-4);
  CHECK(r["provenance"]["seed"] == 0);
  CHECK(r["inputs"]["dA"] == 2);
  CHECK(r["command"][0] == "ke");
}

TEST_CASE("perm3 rejects SWAP with code 3") {
  std::string path = save(build(spec::Named{"swap", 2}), "swap.json");
  Outcome o = call({"perm3", "--in", path});
  CHECK(o.code == cli::kPrecondition);
  CHECK(o.err.find("Schmidt rank 3") != std::string::npos);
}

TEST_CASE("protocol on SWAP") {
  std::string path = save(build(spec::Named{"swap", 2}), "swap.json");
  Json r = report({"protocol", "--in", path});
  CHECK(std::abs(r["results"]["successProbability"].get<double>() - 0.0625) < 1e-9);
  CHECK(r["results"]["branches"] == 256);
  CHECK(r["warnings"].size() == 1);
}

TEST_CASE("values match direct library calls exactly") {
  BipartiteUnitary U = random_instance(RandomKind::HaarLike, 2, 2, std::nullopt, 3);
  std::string path = save(U, "haar.json");
  PowerOptions o;
  o.restarts = 6;
  o.seed = 9;
  Json r = report({"ke", "--in", path, "--restarts", "6", "--seed", "9"});
  CHECK(r["results"]["value"].get<double>() == entangling_power(U, o).value);
  o.noAncilla = true;
  r = report({"ke", "--in", path, "--restarts", "6", "--seed", "9", "--no-ancilla"});
  CHECK(r["results"]["value"].get<double>() == entangling_power(U, o).value);
  o.noAncilla = false;
  o.ancillaA = 1;
  r = report({"kea", "--in", path, "--restarts", "6", "--seed", "9", "--ancilla-a", "1"});
  CHECK(r["results"]["value"].get<double>() == assisted_entangling_power(U, o).value);
}

TEST_CASE("reports are deterministic and round trip") {
  std::string path = save(random_instance(RandomKind::HaarLike, 2, 3, std::nullopt, 4), "haar23.json");
  Outcome a = call({"bounds", "--in", path, "--restarts", "4", "--json"});
  Outcome b = call({"bounds", "--in", path, "--restarts", "4", "--json"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  Json j = Json::parse(a.out);
  CHECK(Json::parse(j.dump()) == j);
  Outcome t = call({"bounds", "--in", path, "--restarts", "4"});
  CHECK(t.out.find("results.kEa: ") != std::string::npos);
}

TEST_CASE("out flag writes the report") {
  std::string path = save(build(spec::Named{"cnot", 2}), "cnot.json");
  std::string dest = temp_file("schmidt.json");
  Outcome o = call({"schmidt", "--in", path, "--out", dest, "--json"});
  CHECK(o.code == 0);
  CHECK(o.out.empty());
  std::ifstream in(dest);
  Json j = Json::parse(in);
  CHECK(j["results"]["rank"] == 2);
}

TEST_CASE("gen emits reparsable files") {
  std::string dest = temp_file("gen.json");
  REQUIRE(call({"gen", "named", "swap", "2", "2", "--out", dest}).code == 0);
  CHECK(cli::read_matrix_file(dest).matrix == build(spec::Named{"swap", 2}).matrix);
  CHECK(call({"gen", "named", "swap", "2", "3"}).code == cli::kPrecondition);

  REQUIRE(call({"gen", "permutation", "3", "4", "--rank", "3", "--seed", "2", "--out", dest}).code == 0);
  Json r = report({"perm3", "--in", dest, "--restarts", "8"});
  CHECK(r["results"]["agrees"] == true);
  Outcome a = call({"gen", "permutation", "3", "4", "--rank", "3", "--seed", "2"});
  Outcome b = call({"gen", "permutation", "3", "4", "--rank", "3", "--seed", "2"});
  CHECK(a.out == b.out);
  CHECK(call({"gen", "permutation", "2", "2", "--rank", "3"}).code == cli::kPrecondition);

  REQUIRE(call({"gen", "ud1", "--m", "0", "--n", "2", "--q", "2", "--p", "0", "--out", dest}).code == 0);
  r = report({"perm3", "--in", dest, "--restarts", "8"});
  CHECK(r["results"]["value"].get<double>() == doctest::Approx(std::log2(9.0) - 16.0 / 9.0).epsilon(1e-12));
  CHECK(r["results"]["formDetected"]["n"] == 2);

  REQUIRE(call({"gen", "phases", "--thetas", "0,3.141592653589793", "--out", dest}).code == 0);
  CHECK(report({"gcnot", "--in", dest})["results"]["isGCNOT"] == true);
}

TEST_CASE("every analyzer subcommand runs") {
  std::string cnot = save(build(spec::Named{"cnot", 2}), "cnot.json");
  std::string swap = save(build(spec::Named{"swap", 2}), "swap.json");
  std::string cp3 = save(build(spec::Named{"cp3-example", 2}), "cp3.json");
  CMat X(2, 2), Z(2, 2);
  X << 0, 1, 1, 0;
  Z << 1, 0, 0, -1;
  std::string sym = save(build(spec::ControlledTerms{{CMat::Identity(2, 2), X, Z}}), "sym.json");

  CHECK(report({"schmidt", "--in", cnot})["results"]["rank"] == 2);
  CHECK(report({"classify", "--in", cnot})["results"]["isPermutation"] == true);
  CHECK(std::abs(report({"kd", "--in", cnot, "--restarts", "4"})["results"]["value"].get<double>() - 1) < 1e-3);
  CHECK(std::abs(report({"clifford", "--in", swap})["results"]["kE"].get<double>() - 2) < 1e-12);
  CHECK(std::abs(report({"sr4", "--in", swap})["results"]["outputEntanglement"].get<double>() - 2) < 1e-9);
  Json c = report({"cp3", "--in", cp3, "--restarts", "4"});
  CHECK(c["results"]["discrepancyFlag"] == true);
  CHECK(c["warnings"].size() == 1);
  CHECK(report({"symmetrize", "--in", sym})["results"]["symmetricU"]["dB"] == 2);
  CHECK(report({"unital", "--family", "diagonal", "--d", "3"})["results"]["confirmed"] == true);
  CHECK(call({"unital", "--family", "nope"}).code == cli::kUsage);
  Json s = report({"sic", "--d", "2", "--restarts", "4"});
  CHECK(std::abs(s["results"]["entanglingCheck"].get<double>() - 1.0) < 1e-6);
  CHECK(call({"sic", "--d", "5"}).code == cli::kPrecondition);
  CHECK(call({"gcnot", "--in", swap}).code == cli::kPrecondition);
}

TEST_CASE("probe-conjectures labels its data") {
  Json r = report({"probe-conjectures", "--samples", "1", "--restarts", "4"});
  REQUIRE(r["results"]["sr2"].size() == 2);
  for (const auto& row : r["results"]["sr2"]) CHECK(row["label"] == "conjecture, not asserted");
  CHECK(r["results"]["logSchmidtBound"].size() == 3);
}
