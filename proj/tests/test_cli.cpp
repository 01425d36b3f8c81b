// Copyright 2026 The pimeas Authors
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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "pimeas/io.hpp"

namespace fs = std::filesystem;
using pimeas::Json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path log =
      fs::temp_directory_path() / ("pimeas_cli_" + std::to_string(counter++) + ".log");
  const std::string cmd = std::string(PIMEAS_CLI_BIN) + " " + args + " > " +
                          log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult result;
  if (status != -1 && WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  std::ifstream in(log);
  std::ostringstream buf;
  buf << in.rdbuf();
  result.output = buf.str();
  fs::remove(log);
  return result;
}

fs::path work_dir() {
  const fs::path dir = fs::temp_directory_path() / "pimeas_cli_test";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("plan command writes the expected setting counts") {
  const fs::path dir = work_dir();
  const fs::path out = dir / "ghz5.json";
  const RunResult res =
      run_cli("plan --target ghz --n 5 --out " + out.string());
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("settings: 6") != std::string::npos);
  const Json doc = pimeas::read_json(out);
  CHECK(doc.at("settings").size() == 6);

  CHECK(run_cli("plan --target dicke:1 --n 4").output.find("settings: 21") !=
        std::string::npos);
  CHECK(run_cli("plan --target general --n 4").output.find("settings: 15") !=
        std::string::npos);
}

TEST_CASE("plan rerun produces identical bytes") {
  const fs::path dir = work_dir();
  const fs::path a = dir / "a.json", b = dir / "b.json";
  REQUIRE(run_cli("plan --target dicke:2 --n 6 --out " + a.string()).exit_code == 0);
  REQUIRE(run_cli("plan --target dicke:2 --n 6 --out " + b.string()).exit_code == 0);
  std::ifstream fa(a), fb(b);
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  CHECK(sa.str() == sb.str());
}

TEST_CASE("estimate command exact and noisy") {
  const fs::path dir = work_dir();
  const fs::path plan = dir / "ghz3.json";
  REQUIRE(run_cli("plan --target ghz --n 3 --out " + plan.string()).exit_code == 0);

  const fs::path est = dir / "est.json";
  const RunResult self =
      run_cli("estimate --plan " + plan.string() + " --out " + est.string());
  CHECK(self.exit_code == 0);
  const Json doc = pimeas::read_json(est);
  CHECK(doc.at("value").get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(doc.at("mode") == "exact");

  const RunResult noisy =
      run_cli("estimate --plan " + plan.string() + " --noise white:0.2 --out " +
              est.string());
  CHECK(noisy.exit_code == 0);
  CHECK(pimeas::read_json(est).at("value").get<double>() ==
        doctest::Approx(0.825).epsilon(1e-9));

  // W_4 plan against the maximally mixed state: 1/16.
  const fs::path wplan = dir / "w4.json";
  REQUIRE(run_cli("plan --target w --n 4 --out " + wplan.string()).exit_code == 0);
  const RunResult mixed = run_cli("estimate --plan " + wplan.string() +
                                  " --noise white:1.0 --out " + est.string());
  CHECK(mixed.exit_code == 0);
  CHECK(pimeas::read_json(est).at("value").get<double>() ==
        doctest::Approx(1.0 / 16).epsilon(1e-9));
}

TEST_CASE("sampled estimates are reproducible per seed") {
  const fs::path dir = work_dir();
  const fs::path plan = dir / "ghz2.json";
  REQUIRE(run_cli("plan --target ghz --n 2 --out " + plan.string()).exit_code == 0);
  const fs::path e1 = dir / "e1.json", e2 = dir / "e2.json";
  const std::string args = "estimate --plan " + plan.string() +
                           " --mode sampled --shots 2000 --seed 77 --out ";
  REQUIRE(run_cli(args + e1.string()).exit_code == 0);
  REQUIRE(run_cli(args + e2.string()).exit_code == 0);
  const Json d1 = pimeas::read_json(e1), d2 = pimeas::read_json(e2);
  CHECK(d1.at("value").get<double>() == d2.at("value").get<double>());
  CHECK(d1.at("std_error").get<double>() == d2.at("std_error").get<double>());
  CHECK(d1.at("seed").get<std::uint64_t>() == 77);
}

TEST_CASE("audit command verdicts and exit codes") {
  const fs::path dir = work_dir();
  const fs::path plan = dir / "ghz7.json";
  REQUIRE(run_cli("plan --target ghz --n 7 --out " + plan.string()).exit_code == 0);
  const fs::path cert = dir / "cert.json";
  const RunResult ok =
      run_cli("audit --plan " + plan.string() + " --out " + cert.string());
  CHECK(ok.exit_code == 0);
  const Json doc = pimeas::read_json(cert);
  CHECK(doc.at("verdict") == "pass");
  CHECK(doc.at("lower_bound") == 4);

  // Truncate the plan's coefficients: audit must fail with exit 3.
  Json broken = pimeas::read_json(plan);
  Json kept = Json::array();
  for (std::size_t i = 0; i < broken.at("coeffs").size() / 2; ++i)
    kept.push_back(broken.at("coeffs")[i]);
  broken["coeffs"] = kept;
  const fs::path broken_path = dir / "broken.json";
  pimeas::write_json_atomic(broken_path, broken);
  const RunResult bad = run_cli("audit --plan " + broken_path.string());
  CHECK(bad.exit_code == 3);
  CHECK(bad.output.find("fail") != std::string::npos);

  // Dicke audit passes with its rank bound.
  const fs::path dicke = dir / "d92.json";
  REQUIRE(run_cli("plan --target dicke:2 --n 9 --out " + dicke.string()).exit_code == 0);
  const RunResult dres = run_cli("audit --plan " + dicke.string());
  CHECK(dres.exit_code == 0);
  CHECK(dres.output.find("lower bound 6") != std::string::npos);
}

TEST_CASE("validation failures exit with code 2") {
  CHECK(run_cli("plan --target ghz --n 5 --scheme nonsense").exit_code == 2);
  CHECK(run_cli("plan --target unknown-state --n 4").exit_code == 2);
  CHECK(run_cli("estimate --plan /nonexistent/plan.json").exit_code == 2);
  CHECK(run_cli("plan --target dicke:3 --n 4").exit_code == 2);  // m > n/2
}

TEST_CASE("coords-file target plans through the general path") {
  const fs::path dir = work_dir();
  const fs::path coords = dir / "w5coords.json";
  pimeas::write_json_atomic(
      coords, pimeas::to_json(pimeas::pi_target_library(pimeas::TargetKind::kW, 5)));
  const fs::path plan = dir / "w5general.json";
  const RunResult res = run_cli("plan --target coords:" + coords.string() +
                                " --n 5 --out " + plan.string());
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("settings: 21") != std::string::npos);

  // Estimating against the W state itself gives fidelity 1.
  const fs::path est = dir / "est.json";
  const RunResult self = run_cli("estimate --plan " + plan.string() +
                                 " --state w --out " + est.string());
  CHECK(self.exit_code == 0);
  CHECK(pimeas::read_json(est).at("value").get<double>() ==
        doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("state files feed estimates") {
  const fs::path dir = work_dir();
  const fs::path plan = dir / "ghz2plan.json";
  REQUIRE(run_cli("plan --target ghz --n 2 --out " + plan.string()).exit_code == 0);
  const fs::path state = dir / "state.json";
  pimeas::write_json_atomic(
      state, pimeas::to_json(pimeas::DenseOperator(
                 pimeas::projector(pimeas::ghz_state(2)))));
  const fs::path est = dir / "est.json";
  const RunResult res = run_cli("estimate --plan " + plan.string() + " --state file:" +
                                state.string() + " --out " + est.string());
  CHECK(res.exit_code == 0);
  CHECK(pimeas::read_json(est).at("value").get<double>() ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("selftest passes clean and fails under injected faults") {
  const RunResult clean = run_cli("selftest");
  CHECK(clean.exit_code == 0);
  CHECK(clean.output.find("[FAIL]") == std::string::npos);

  const RunResult bad_norm = run_cli("selftest --inject-fault norm-const");
  CHECK(bad_norm.exit_code == 3);
  CHECK(bad_norm.output.find("[FAIL] orthonormal basis normalization") !=
        std::string::npos);

  const RunResult bad_angles = run_cli("selftest --inject-fault ghz-angles");
  CHECK(bad_angles.exit_code == 3);
  CHECK(bad_angles.output.find("[FAIL] GHZ plan reconstructs") != std::string::npos);

  CHECK(run_cli("selftest --inject-fault bogus").exit_code == 2);
}
