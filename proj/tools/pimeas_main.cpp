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

#include <CLI11.hpp>
#include <iostream>

#include "pimeas/bounds.hpp"
#include "pimeas/io.hpp"
#include "pimeas/selftest.hpp"
#include "pimeas/simulator.hpp"
#include "pimeas/sym_core.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct PlanOptions {
  int n = 0;
  std::string target = "general";
  std::string scheme = "integer";
  std::string out;
  double tol_residual = pimeas::tol::kResidual;
};

struct EstimateOptions {
  std::string plan_file;
  std::string state = "";       // target name or file:PATH; default: plan target
  std::string noise = "";       // model:p
  std::string mode = "exact";
  std::uint64_t shots = 10000;
  std::uint64_t seed = pimeas::kDefaultSeed;
  std::string out;
  double tol_residual = pimeas::tol::kResidual;
};

struct BuiltPlan {
  pimeas::MeasurementPlan plan;
  double condition = 0.0;  // of the decomposition system; 0 for closed forms
};

BuiltPlan build_plan(const PlanOptions& opt) {
  using namespace pimeas;
  const Scheme scheme = scheme_from_string(opt.scheme);
  if (opt.target == "ghz") return {plan_ghz(opt.n), 0.0};
  if (opt.target == "w") {
    MeasurementPlan plan = plan_dicke(opt.n, 1, scheme);
    plan.target_id = "w";
    return {std::move(plan), 0.0};
  }
  if (opt.target.rfind("dicke:", 0) == 0)
    return {plan_dicke(opt.n, std::stoi(opt.target.substr(6)), scheme), 0.0};
  SymCoords target(opt.n);
  std::string target_id;
  if (opt.target == "general") {
    // The measurement frame is target-independent; carry the identity as
    // the decomposed observable.
    target = product_op_coords(1.0, 0.0, 0.0, 0.0, opt.n);
    target_id = "general";
  } else if (opt.target.rfind("coords:", 0) == 0) {
    const std::string path = opt.target.substr(7);
    target = sym_coords_from_json(read_json(path));
    if (target.n != opt.n)
      throw ValidationError("coords file is for n=" + std::to_string(target.n));
    target_id = "coords:" + path;
  } else {
    throw ValidationError("unknown target '" + opt.target +
                          "' (ghz|w|dicke:<m>|general|coords:<file>)");
  }
  const Decomposition dec = decompose_cached(target, scheme, opt.tol_residual);
  if (dec.omega_condition > tol::kCondWarn)
    std::cerr << "warning: basis condition number " << dec.omega_condition
              << " above 1e12; coefficients may be unreliable\n";
  return {reduce_to_settings(dec, target_id), dec.omega_condition};
}

pimeas::DenseOperator resolve_state(const EstimateOptions& opt,
                                    const pimeas::MeasurementPlan& plan) {
  using namespace pimeas;
  DenseOperator rho;
  std::string state = opt.state;
  if (state.empty()) state = plan.target_id;
  if (state.rfind("file:", 0) == 0) {
    rho = dense_operator_from_json(read_json(state.substr(5)));
    if (qubit_count(rho) != plan.n)
      throw ValidationError("state file qubit count differs from plan");
  } else if (state.rfind("coords:", 0) == 0 || state == "general") {
    throw ValidationError("estimate needs a physical state: ghz|w|dicke:<m>|file:<path>");
  } else {
    const SymCoords coords = target_coords_from_name(state, plan.n);
    rho = to_dense(coords);
  }
  if (!opt.noise.empty()) {
    const auto colon = opt.noise.find(':');
    if (colon == std::string::npos)
      throw ValidationError("noise spec must be <model>:<p>");
    const std::string model = opt.noise.substr(0, colon);
    const double p = std::stod(opt.noise.substr(colon + 1));
    if (model == "white") rho = white_noise(rho, p);
    else rho = apply_noise(rho, noise_model_from_string(model), p);
  }
  return rho;
}

int run_plan(const PlanOptions& opt) {
  using namespace pimeas;
  const BuiltPlan built = build_plan(opt);
  const MeasurementPlan& plan = built.plan;
  if (!(plan.residual <= opt.tol_residual))
    throw NumericalError("plan residual " + std::to_string(plan.residual) +
                         " above tolerance");
  std::cout << "target " << plan.target_id << "  n=" << plan.n << "\n"
            << "settings: " << plan.setting_count() << "\n"
            << "residual: " << plan.residual << "\n";
  if (built.condition > 0.0) std::cout << "condition: " << built.condition << "\n";
  if (!opt.out.empty()) {
    write_json_atomic(opt.out, to_json(plan));
    std::cout << "wrote " << opt.out << "\n";
  }
  return 0;
}

int run_estimate(const EstimateOptions& opt) {
  using namespace pimeas;
  const MeasurementPlan plan = plan_from_json(read_json(opt.plan_file));
  if (!(plan.residual <= opt.tol_residual))
    throw NumericalError("plan residual " + std::to_string(plan.residual) +
                         " above tolerance; refusing to estimate");
  const DenseOperator rho = resolve_state(opt, plan);
  FidelityEstimate est;
  if (opt.mode == "exact") {
    est = estimate_fidelity(plan, measure_plan_exact(plan, rho));
  } else if (opt.mode == "sampled") {
    est = estimate_fidelity(plan, simulate_plan(plan, rho, opt.shots, opt.seed));
    est.seed = opt.seed;
  } else {
    throw ValidationError("mode must be exact or sampled");
  }
  std::cout << "fidelity " << est.value;
  if (est.mode == "sampled")
    std::cout << " +- " << est.std_error << "  (shots " << opt.shots << ", seed "
              << opt.seed << ")";
  std::cout << "\n";
  if (!opt.out.empty()) {
    write_json_atomic(opt.out, to_json(est));
    std::cout << "wrote " << opt.out << "\n";
  }
  return 0;
}

int run_audit(const std::string& plan_file, const std::string& out) {
  using namespace pimeas;
  const MeasurementPlan plan = plan_from_json(read_json(plan_file));
  const BoundCertificate cert = audit_plan(plan, plan.target_id);
  std::cout << "state " << cert.state_id << "  n=" << cert.n << "\n"
            << "plan size " << cert.plan_size << ", lower bound " << cert.lower_bound
            << "\n"
            << "verdict: " << (cert.pass ? "pass" : "fail") << "\n"
            << "witness: " << cert.witness << "\n";
  if (!out.empty()) {
    write_json_atomic(out, to_json(cert));
    std::cout << "wrote " << out << "\n";
  }
  return cert.pass ? 0 : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local-measurement-setting planning and fidelity estimation for "
               "permutation-invariant observables"};
  app.require_subcommand(1);
  app.set_config("--config");

  PlanOptions plan_opt;
  CLI::App* plan_cmd = app.add_subcommand("plan", "Build a measurement plan");
  plan_cmd->add_option("--n", plan_opt.n, "Qubit count")->required();
  plan_cmd->add_option("--target", plan_opt.target,
                       "ghz | w | dicke:<m> | general | coords:<file>")
      ->capture_default_str();
  plan_cmd->add_option("--scheme", plan_opt.scheme, "integer | tangent")
      ->capture_default_str();
  plan_cmd->add_option("--out", plan_opt.out, "Output plan JSON path");
  plan_cmd->add_option("--tol-residual", plan_opt.tol_residual,
                       "Reconstruction acceptance threshold")
      ->capture_default_str();

  EstimateOptions est_opt;
  CLI::App* est_cmd = app.add_subcommand("estimate", "Estimate fidelity from a plan");
  est_cmd->add_option("--plan", est_opt.plan_file, "Plan JSON path")->required();
  est_cmd->add_option("--state", est_opt.state,
                      "ghz | w | dicke:<m> | file:<dense JSON> (default: plan target)");
  est_cmd->add_option("--noise", est_opt.noise,
                      "Channel <model>:<p>; models white (global mix toward I/2^n), "
                      "depolarizing, dephasing, bitflip (per qubit)");
  est_cmd->add_option("--mode", est_opt.mode, "exact | sampled")->capture_default_str();
  est_cmd->add_option("--shots", est_opt.shots, "Shots per setting (sampled mode)")
      ->capture_default_str();
  est_cmd->add_option("--seed", est_opt.seed, "Master RNG seed (sampled mode)")
      ->capture_default_str();
  est_cmd->add_option("--out", est_opt.out, "Output estimate JSON path");
  est_cmd->add_option("--tol-residual", est_opt.tol_residual,
                      "Plan residual acceptance threshold")
      ->capture_default_str();

  std::string audit_plan_file, audit_out;
  CLI::App* audit_cmd =
      app.add_subcommand("audit", "Check a plan against complexity lower bounds");
  audit_cmd->add_option("--plan", audit_plan_file, "Plan JSON path")->required();
  audit_cmd->add_option("--out", audit_out, "Output certificate JSON path");

  std::string fault;
  CLI::App* selftest_cmd =
      app.add_subcommand("selftest", "Run the oracle-equivalence suite");
  selftest_cmd->add_option("--inject-fault", fault,
                           "norm-const | ghz-angles (demonstrates failure detection)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (plan_cmd->parsed()) return run_plan(plan_opt);
    if (est_cmd->parsed()) return run_estimate(est_opt);
    if (audit_cmd->parsed()) return run_audit(audit_plan_file, audit_out);
    if (selftest_cmd->parsed()) {
      pimeas::FaultInjection faults;
      if (fault == "norm-const") faults.norm_const_scale = 1.01;
      else if (fault == "ghz-angles") faults.ghz_angle_offset = 0.05;
      else if (!fault.empty())
        throw pimeas::ValidationError("unknown fault '" + fault + "'");
      return pimeas::run_selftest(std::cout, faults) ? 0 : kExitNumerical;
    }
  } catch (const pimeas::ValidationError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitValidation;
  } catch (const pimeas::NumericalError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitValidation;
  }
  return 0;
}
