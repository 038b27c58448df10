#include "rrk/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rrk/io.hpp"
#include "rrk/kernels.hpp"
#include "rrk/relative.hpp"
#include "rrk/rkhs.hpp"
#include "rrk/sip_banach.hpp"
#include "rrk/verify.hpp"

namespace rrk::cli {

using nlohmann::json;

namespace {

/// Input problems detected before or during ingestion; mapped to exit 2.
class InputError : public Error {
 public:
  using Error::Error;
};

std::ifstream open_input(const std::string& path, const char* what) {
  if (path.empty()) throw InputError(std::string("missing required --") + what);
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + std::string(what) + " file '" + path + "'");
  return in;
}

KernelEval load_kernel(const RunConfig& c) {
  if (c.kernel_spec_path.empty()) throw InputError("missing required --kernel");
  KernelEval k = build_kernel(load_kernel_spec(c.kernel_spec_path));
  return c.inject_asymmetry ? with_injected_asymmetry(k) : k;
}

void emit(const RunConfig& c, const json& doc, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (c.output_path) {
    std::ofstream f(*c.output_path, std::ios::binary);
    if (!f || !(f << text)) throw InputError("cannot write '" + *c.output_path + "'");
  } else {
    out << text;
  }
}

int cmd_check_psd(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const KernelEval k = load_kernel(c);
  auto in = open_input(c.data_path, "data");
  const auto points = read_points_csv(in);
  if (points.empty()) throw InputError("points file has no rows");

  json report{{"n", points.size()}, {"m", k.output_dim()}};
  try {
    const PsdReport r = check_psd(k, points, c.tol);
    report["is_psd"] = r.is_psd;
    report["min_eigenvalue"] = r.min_eigenvalue;
    report["floor"] = r.floor;
  } catch (const NonHermitianError& e) {
    report["is_psd"] = false;
    report["hermitian_distance"] = e.distance();
    report["note"] = e.what();
  }
  emit(c, report, out);
  if (!report["is_psd"].get<bool>()) {
    err << "kernel is not positive semidefinite on the given points\n";
    return kNotPsd;
  }
  return kOk;
}

int cmd_fit_values(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const KernelEval k = load_kernel(c);
  auto in = open_input(c.data_path, "data");
  const auto constraints = read_value_constraints_csv(in, k.output_dim());
  if (constraints.empty()) throw InputError("value constraints file has no rows");
  try {
    emit(c, model_to_json(fit_values(k, constraints, c.ridge, c.tol)), out);
  } catch (const SingularSystemError& e) {
    err << e.what() << " (residual " << e.residual() << ")\n";
    return kInfeasibleFit;
  }
  return kOk;
}

int cmd_fit_differences(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const KernelEval k = load_kernel(c);
  auto in = open_input(c.data_path, "data");
  const auto constraints = read_difference_constraints_csv(in, k.output_dim());
  if (constraints.empty()) throw InputError("difference constraints file has no rows");
  std::optional<Anchor> anchor;
  if (c.anchor) anchor = parse_anchor(*c.anchor);

  const DifferenceFit fit = fit_differences(k, constraints, c.ridge, anchor, c.tol);
  emit(c, model_to_json(fit), out);
  if (!fit.feasible) {
    err << "difference constraints are inconsistent; least-squares residual " << fit.residual
        << "\n";
    return kInfeasibleFit;
  }
  return kOk;
}

int cmd_eval(const RunConfig& c, std::ostream& out, std::ostream&) {
  if (c.model_path.empty()) throw InputError("missing required --model");
  const FittedModel model = FittedModel::from_json(load_json(c.model_path));
  auto in = open_input(c.data_path, "data");
  const auto points = read_points_csv(in);
  json values = json::array();
  for (const auto& p : points) values.push_back(vector_to_json(model.evaluate(p)));
  emit(c, json{{"n", points.size()}, {"values", std::move(values)}}, out);
  return kOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  VerifyOptions options;
  options.seed = c.seed;
  options.tol = c.tol;
  options.inject_asymmetry = c.inject_asymmetry;
  const VerifyReport report = run_verification(options);
  emit(c, to_json(report), out);
  if (const auto failed = report.first_failure()) {
    err << "verification failed: suite '" << *failed << "'\n";
    return kVerificationFailed;
  }
  return kOk;
}

int cmd_sip_check(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const SipSpace space{c.p, c.dim};
  space.validate();
  if (c.trials < 1) throw InputError("--trials must be >= 1");
  const SipAxiomReport report =
      sip_axiom_report(space, c.trials, c.seed, HomogeneityForm::literal_real, c.tol);
  emit(c, to_json(report), out);
  if (!report.passed(c.tol.abs_tol)) {
    err << "semi-inner-product axioms failed at p = " << c.p << "\n";
    return kVerificationFailed;
  }
  return kOk;
}

}  // namespace

int execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.tol.validate();
    if (!(config.ridge >= 0.0)) throw InputError("--ridge must be >= 0");
    switch (config.command) {
      case Command::check_psd: return cmd_check_psd(config, out, err);
      case Command::fit_values: return cmd_fit_values(config, out, err);
      case Command::fit_differences: return cmd_fit_differences(config, out, err);
      case Command::eval: return cmd_eval(config, out, err);
      case Command::verify: return cmd_verify(config, out, err);
      case Command::sip_check: return cmd_sip_check(config, out, err);
    }
  } catch (const std::exception& e) {
    // Anything escaping a command is an input problem: unreadable files,
    // malformed CSV/JSON, invalid kernel specs or dimension mismatches.
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Vector-valued and relative reproducing kernel toolkit"};
  app.require_subcommand(1);

  RunConfig config;
  std::string anchor;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--abs-tol", config.tol.abs_tol, "Absolute tolerance");
    sub->add_option("--rel-tol", config.tol.rel_tol, "Relative tolerance");
    sub->add_option("--out", config.output_path, "Write the report or model here");
  };
  auto add_kernel_data = [&](CLI::App* sub) {
    sub->add_option("--kernel", config.kernel_spec_path, "Kernel spec JSON");
    sub->add_option("--data", config.data_path, "Input CSV");
  };

  auto* check = app.add_subcommand("check-psd", "Block-Gram PSD certificate on a point set");
  add_kernel_data(check);
  add_common(check);

  auto* fit_v = app.add_subcommand("fit-values", "Minimum-norm fit from point values");
  add_kernel_data(fit_v);
  fit_v->add_option("--ridge", config.ridge, "Ridge parameter (default 1e-10)");
  add_common(fit_v);

  auto* fit_d = app.add_subcommand("fit-differences", "Minimum-norm fit from pairwise differences");
  add_kernel_data(fit_d);
  fit_d->add_option("--ridge", config.ridge, "Ridge parameter (default 1e-10)");
  fit_d->add_option("--anchor", anchor, "Absolute level \"x1,..,xd:v1,..,vm\"");
  add_common(fit_d);

  auto* eval = app.add_subcommand("eval", "Evaluate a fitted model at points");
  eval->add_option("--model", config.model_path, "Model JSON written by a fit command");
  eval->add_option("--data", config.data_path, "Points CSV");
  add_common(eval);

  auto* verify = app.add_subcommand("verify", "Run every property suite");
  verify->add_option("--seed", config.seed, "Random seed");
  add_common(verify);

  auto* sipc = app.add_subcommand("sip-check", "Semi-inner-product axiom report on l^p");
  sipc->add_option("--p", config.p, "Exponent p in (1, inf)");
  sipc->add_option("--dim", config.dim, "Vector dimension");
  sipc->add_option("--trials", config.trials, "Random trials");
  sipc->add_option("--seed", config.seed, "Random seed");
  add_common(sipc);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  if (!anchor.empty()) config.anchor = anchor;
  if (*check) config.command = Command::check_psd;
  else if (*fit_v) config.command = Command::fit_values;
  else if (*fit_d) config.command = Command::fit_differences;
  else if (*eval) config.command = Command::eval;
  else if (*verify) config.command = Command::verify;
  else config.command = Command::sip_check;

  return execute(config, out, err);
}

}  // namespace rrk::cli
