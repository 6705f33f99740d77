#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <string>

#include "hodgefan/serialization.hpp"
#include "hodgefan/suites.hpp"

namespace {

using namespace hodgefan;

RunConfig load_or_default(const std::string& config_path) {
  if (config_path.empty()) {
    std::istringstream empty;
    return config_parse(empty);
  }
  return config_load(config_path);
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
}

json decompose_report(const ModelPtr& model, const FormField& omega) {
  const DecompositionResult dec = decompose_1form(omega);
  const double scale = norm(omega);
  json parts = json::object();
  const auto add = [&](const char* name, const FormField& part) {
    parts[name] = {{"norm", norm(part)}};
  };
  add("exact", dec.exact);
  add("coclosed10", dec.coclosed10);
  add("coclosed01", dec.coclosed01);
  add("v3plus", dec.v3plus);
  add("v3minus", dec.v3minus);
  return json{{"input_norm", scale},
              {"parts", parts},
              {"residual", dec.residual},
              {"max_cross", dec.max_cross},
              {"symbol_defect", detail::part_symbol_defect(dec, scale)}};
}

int run_verify(const RunConfig& cfg, const std::string& suite_arg, bool no_timing) {
  std::vector<SuiteReport> reports;
  std::vector<std::string> names = suite_arg.empty() ? cfg.suites
                                                     : std::vector<std::string>{suite_arg};
  for (const auto& name : names) {
    auto part = run_suite(name, cfg);
    reports.insert(reports.end(), part.begin(), part.end());
  }
  const std::string text = report_render(reports, cfg.format, !no_timing);
  write_output(text, cfg.out_path);
  if (!cfg.out_path.empty()) {
    for (const auto& r : reports)
      std::cerr << (r.pass ? "[PASS] " : "[FAIL] ") << r.suite << "/" << r.check << "\n";
  }
  return all_pass(reports) ? 0 : 1;
}

MultiplierSpec spec_from_cli(const std::string& name, double t, double u) {
  if (name == "heat") return heat_multiplier(t);
  if (name == "imaginary_power") return imaginary_power_multiplier(u);
  return multiplier_library(name, t);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral verification toolkit for the rank-one Hodge system"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_path, format, suite_arg, form_path, mult_name;
  double t_param = 1.0, u_param = 1.0, tau = 1.0, alpha = 0.0;
  int J = -1;
  long long seed = -1;
  bool no_timing = false;

  app.add_option("--config", config_path, "configuration file (INI)");
  app.add_option("--out", out_path, "output path (default: stdout)");
  app.add_option("--format", format, "report format: json or csv");
  app.add_option("--seed", seed, "random seed override");
  app.add_flag("--no-timing", no_timing, "suppress wall-clock fields for byte-stable output");

  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("suite", suite_arg, "suite name (default: from config)");

  auto* fan = app.add_subcommand("fan", "dump the closed-form eigensystem table as CSV");

  auto* decompose = app.add_subcommand("decompose", "split a 1-form field five ways");
  decompose->add_option("form", form_path, "input form JSON")->required();

  auto* multiplier = app.add_subcommand("multiplier", "apply a spectral multiplier");
  multiplier->add_option("name", mult_name, "multiplier name")->required();
  multiplier->add_option("form", form_path, "input form JSON")->required();
  multiplier->add_option("--t", t_param, "time/scale parameter");
  multiplier->add_option("--u", u_param, "imaginary power parameter");

  auto* mh = app.add_subcommand("mh-norm", "scale-invariant local Sobolev norm");
  mh->add_option("name", mult_name, "multiplier name")->required();
  mh->add_option("--tau", tau, "smoothness index");
  mh->add_option("-J,--J", J, "dyadic range exponent");
  mh->add_option("--t", t_param, "time/scale parameter");
  mh->add_option("--u", u_param, "imaginary power parameter");
  mh->add_option("--alpha", alpha, "unused shift placeholder")->group("");

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg = load_or_default(config_path);
    if (!out_path.empty()) cfg.out_path = out_path;
    if (!format.empty()) cfg.format = format;
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    if (J >= 4) cfg.norms.J = J;

    if (verify->parsed()) return run_verify(cfg, suite_arg, no_timing);

    if (fan->parsed()) {
      write_output(fan_table_csv(cfg), cfg.out_path);
      return 0;
    }

    if (decompose->parsed()) {
      std::ifstream in(form_path);
      if (!in) throw std::runtime_error("cannot open " + form_path);
      json j = json::parse(in);
      ModelPtr model = build_model(cfg.model);
      const FormField omega = form_field_from_json(model, j);
      write_output(decompose_report(model, omega).dump(2) + "\n", cfg.out_path);
      return 0;
    }

    if (multiplier->parsed()) {
      std::ifstream in(form_path);
      if (!in) throw std::runtime_error("cannot open " + form_path);
      json j = json::parse(in);
      ModelPtr model = build_model(cfg.model);
      const FormField omega = form_field_from_json(model, j);
      const MultiplierSpec spec = spec_from_cli(mult_name, t_param, u_param);
      const FormField result = m_delta1_via_decomposition(spec, omega);
      const FormField oracle = m_delta1_oracle(spec, omega);
      const double agreement =
          norm(result - oracle) / std::max(norm(omega), 1e-300);
      json outj{{"multiplier", spec.label},
                {"agreement_vs_oracle", agreement},
                {"result", form_field_to_json(result)}};
      write_output(outj.dump(2) + "\n", cfg.out_path);
      return 0;
    }

    if (mh->parsed()) {
      const MultiplierSpec spec = spec_from_cli(mult_name, t_param, u_param);
      SlocParams p = cfg.norms;
      p.tau = tau;
      json per_r = json::array();
      double sup = 0.0;
      for (int e = -p.J; e <= p.J; ++e) {
        const double r = std::ldexp(1.0, e);
        const auto g = [&](double s) { return spec(r * s) * bump_phi(s); };
        const double v =
            sobolev_norm_1d(sample_1d(g, 0.75, 2.25, p.resolution), p.tau);
        per_r.push_back({{"r", r}, {"norm", v}});
        sup = std::max(sup, v);
      }
      SlocParams fine = p;
      fine.resolution = 2 * p.resolution;
      const double sup_fine = mh_sloc_norm(spec, fine);
      json outj{{"multiplier", spec.label},
                {"tau", tau},
                {"J", p.J},
                {"per_r_norms", per_r},
                {"sup", sup},
                {"stability_ratio", sup_fine / std::max(sup, 1e-300)}};
      write_output(outj.dump(2) + "\n", cfg.out_path);
      return 0;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 0;
}
