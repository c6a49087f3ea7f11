// Command-line front end for the passivity-LMI analytic-center library.
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "lmicenter/bilinear.hpp"
#include "lmicenter/center.hpp"
#include "lmicenter/model_io.hpp"
#include "lmicenter/radius.hpp"
#include "lmicenter/riccati.hpp"

namespace {

using nlohmann::json;
using namespace lmicenter;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitNotConverged = 4;
constexpr int kExitNumeric = 5;

json entry_to_json(std::complex<double> z) {
  if (z.imag() == 0.0) return json(z.real());
  return json::array({z.real(), z.imag()});
}

json matrix_to_json(const MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      row.push_back(entry_to_json(m(i, k)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json eigs_to_json(const std::vector<std::complex<double>>& eigs) {
  json out = json::array();
  for (const auto& z : eigs) out.push_back(json::array({z.real(), z.imag()}));
  return out;
}

void emit(const json& doc, const std::string& out_path) {
  const std::string text = doc.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw Error("cannot open output file: " + out_path);
  out << text;
}

void write_trace(const std::string& path,
                 const std::vector<IterationRecord>& records) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open trace file: " + path);
  out << "iter,barrier,decrement,residual,alpha,wallclock_seconds\n";
  out << std::setprecision(17);
  for (const auto& r : records) {
    out << r.iter << ',' << r.barrier << ',' << r.decrement << ','
        << r.residual << ',' << r.alpha << ',' << r.wallclock_seconds << '\n';
  }
}

struct CenterArgs {
  std::string input;
  std::string out;
  std::string trace;
  std::string method = "newton";
  std::string init = "geomean";
  double tol = 1e-8;
  int max_iter = 200;
  std::optional<double> xi;
};

int run_center(const CenterArgs& args) {
  const ModelDocument doc = read_model(args.input);

  CenterOptions options;
  options.method =
      args.method == "ascent" ? CenterMethod::ascent : CenterMethod::newton;
  options.tol_residual = args.tol;
  options.max_iter = args.max_iter;
  options.xi = args.xi;
  if (args.init == "geomean") {
    options.init = CenterInit::geometric_mean;
  } else if (args.init == "shifted") {
    options.init = CenterInit::shifted_riccati;
  } else if (args.init == "identity") {
    options.init = CenterInit::identity;
  } else if (args.init == "given") {
    options.init = CenterInit::given;
    if (!doc.x) {
      throw ParseError("--init given requires an 'X' block in the input file");
    }
    options.x0 = doc.x;
  } else {
    throw ParseError("unknown --init value: " + args.init);
  }

  const CenterResult result =
      compute_analytic_center(doc.model, options, doc.weight);
  if (!args.trace.empty()) write_trace(args.trace, result.iterations);

  const CenterSpectrumReport spectrum =
      verify_center_spectrum(doc.model, result.x_center, doc.weight);
  json out;
  out["x_center"] = matrix_to_json(result.x_center.mat());
  out["barrier"] = result.barrier_value;
  out["det_w"] = eval_W(doc.model, result.x_center, doc.weight).det();
  out["converged"] = result.converged;
  out["iterations"] = result.iterations.size();
  out["stationarity_residual"] =
      stationarity_residual(doc.model, result.x_center, doc.weight);
  out["spectrum_measure"] = spectrum.spectrum_measure;
  out["spectrum_pass"] = spectrum.spectrum_pass;
  out["pc_residual"] = spectrum.pc_residual;
  out["closed_loop_eigs"] = eigs_to_json(result.closed_loop_eigs);
  emit(out, args.out);
  return result.converged ? kExitOk : kExitNotConverged;
}

int run_riccati(const std::string& input, const std::string& out_path) {
  const ModelDocument doc = read_model(input);
  const ExtremalPair pair = solve_extremal(doc.model);
  json out;
  out["x_min"] = matrix_to_json(pair.x_min.mat());
  out["x_max"] = matrix_to_json(pair.x_max.mat());
  out["residual_min"] = riccati_residual(doc.model, pair.x_min).mat().norm();
  out["residual_max"] = riccati_residual(doc.model, pair.x_max).mat().norm();
  emit(out, out_path);
  return kExitOk;
}

int run_radius(const std::string& input, const std::string& out_path,
               int samples, double margin, std::uint64_t seed) {
  const ModelDocument doc = read_model(input);
  HermitianMatrix x;
  if (doc.x) {
    x = *doc.x;
  } else {
    const CenterResult center = compute_analytic_center(doc.model);
    if (!center.converged) return kExitNotConverged;
    x = center.x_center;
  }
  const RadiusBound bound =
      doc.model.time_domain == TimeDomain::continuous
          ? x_passivity_bound_continuous(doc.model, x)
          : x_passivity_bound_discrete(doc.model, x);
  json out;
  out["value"] = bound.value;
  out["domain"] = doc.model.time_domain == TimeDomain::continuous
                      ? "continuous"
                      : "discrete";
  out["approximate"] = bound.approximate;
  if (samples > 0) {
    const ProbeReport probe =
        probe_perturbations(doc.model, x, bound, samples, margin, seed);
    json p;
    p["samples"] = probe.samples;
    p["remained_positive"] = probe.remained_positive;
    p["margin"] = probe.margin;
    p["worst_min_eig"] = probe.worst_min_eig;
    out["probe"] = std::move(p);
  }
  emit(out, out_path);
  return kExitOk;
}

int run_transform(const std::string& input, const std::string& out_path) {
  const ModelDocument doc = read_model(input);
  const TransformedModel transformed =
      doc.model.time_domain == TimeDomain::continuous
          ? cayley_c2d(doc.model, doc.weight)
          : cayley_d2c(doc.model, doc.weight);
  ModelDocument out;
  out.model = transformed.model;
  out.weight = transformed.weight;
  out.x = doc.x;
  if (out_path.empty()) {
    std::cout << serialize_model(out);
  } else {
    write_model(out_path, out);
  }
  return kExitOk;
}

int run_gen(int n, int m, std::uint64_t seed, const std::string& domain_str,
            const std::string& out_path) {
  const TimeDomain domain =
      domain_str == "discrete" ? TimeDomain::discrete : TimeDomain::continuous;
  ModelDocument doc;
  doc.model = random_passive_model(n, m, seed, domain);
  if (out_path.empty()) {
    std::cout << serialize_model(doc);
  } else {
    write_model(out_path, doc);
  }
  return kExitOk;
}

int run_check(const std::string& input, const std::string& out_path) {
  const ModelDocument doc = read_model(input);
  if (!doc.x) {
    throw ParseError("check requires an 'X' block in the input file");
  }
  const CenterSpectrumReport report =
      verify_center_spectrum(doc.model, *doc.x, doc.weight);
  json out;
  out["stationarity_residual"] =
      stationarity_residual(doc.model, *doc.x, doc.weight);
  out["spectrum_measure"] = report.spectrum_measure;
  out["spectrum_pass"] = report.spectrum_pass;
  out["pc_residual"] = report.pc_residual;
  out["closed_loop_eigs"] = eigs_to_json(report.closed_loop_eigs);
  out["feasible"] = eval_W(doc.model, *doc.x, doc.weight).feasible_strict;
  emit(out, out_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analytic centers of passivity-LMI solution sets"};
  app.require_subcommand(1);

  CenterArgs center_args;
  auto* center = app.add_subcommand("center", "Compute the analytic center");
  center->add_option("input", center_args.input, "Model file")->required();
  center->add_option("--out", center_args.out, "Result JSON path");
  center->add_option("--trace", center_args.trace, "Iteration trace CSV path");
  center->add_option("--method", center_args.method, "newton|ascent")
      ->check(CLI::IsMember({"newton", "ascent"}));
  center->add_option("--tol", center_args.tol, "Stationarity tolerance");
  center->add_option("--max-iter", center_args.max_iter, "Iteration cap");
  center->add_option("--init", center_args.init,
                     "geomean|shifted|identity|given")
      ->check(CLI::IsMember({"geomean", "shifted", "identity", "given"}));
  double xi_value = 0.0;
  auto* xi_opt = center->add_option("--xi", xi_value, "Shift for --init shifted");

  std::string in_path, out_path;
  auto* riccati = app.add_subcommand("riccati", "Extremal Riccati solutions");
  riccati->add_option("input", in_path, "Model file")->required();
  riccati->add_option("--out", out_path, "Result JSON path");

  int samples = 0;
  double margin = 0.5;
  std::uint64_t seed = 1;
  auto* radius =
      app.add_subcommand("radius", "Passivity-radius lower bound at X");
  radius->add_option("input", in_path, "Model file")->required();
  radius->add_option("--out", out_path, "Result JSON path");
  radius->add_option("--samples", samples, "Perturbation probe count");
  radius->add_option("--margin", margin, "Probe scale relative to the bound");
  radius->add_option("--seed", seed, "Probe RNG seed");

  auto* transform =
      app.add_subcommand("transform", "Cayley transform between domains");
  transform->add_option("input", in_path, "Model file")->required();
  transform->add_option("--out", out_path, "Transformed model path");

  int gen_n = 4, gen_m = 2;
  std::string gen_domain = "continuous";
  auto* gen = app.add_subcommand("gen", "Generate a random passive model");
  gen->add_option("--n", gen_n, "State dimension");
  gen->add_option("--m", gen_m, "Input/output dimension");
  gen->add_option("--seed", seed, "RNG seed");
  gen->add_option("--domain", gen_domain, "continuous|discrete")
      ->check(CLI::IsMember({"continuous", "discrete"}));
  gen->add_option("--out", out_path, "Model file path");

  auto* check = app.add_subcommand("check", "Diagnostics for a (model, X) pair");
  check->add_option("input", in_path, "Model file with an X block")->required();
  check->add_option("--out", out_path, "Result JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitParse;
  }

  try {
    if (center->parsed()) {
      if (xi_opt->count() > 0) center_args.xi = xi_value;
      return run_center(center_args);
    }
    if (riccati->parsed()) return run_riccati(in_path, out_path);
    if (radius->parsed())
      return run_radius(in_path, out_path, samples, margin, seed);
    if (transform->parsed()) return run_transform(in_path, out_path);
    if (gen->parsed())
      return run_gen(gen_n, gen_m, seed, gen_domain, out_path);
    if (check->parsed()) return run_check(in_path, out_path);
  } catch (const ParseError& e) {
    std::cerr << "error (parse): " << e.what() << "\n";
    return kExitParse;
  } catch (const NotStrictlyPassiveError& e) {
    std::cerr << "error (infeasible): " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const BoundaryError& e) {
    std::cerr << "error (infeasible): " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error (numeric): " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitParse;
}
