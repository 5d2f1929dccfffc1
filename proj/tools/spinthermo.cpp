// spinthermo: command-line front end.
//
// Exit codes: 0 success, 1 usage error, 2 numeric failure.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spinthermo/analysis.hpp"
#include "spinthermo/bures_model.hpp"
#include "spinthermo/io.hpp"
#include "spinthermo/selftest.hpp"
#include "spinthermo/semiclassical.hpp"
#include "spinthermo/specfun.hpp"

namespace st = spinthermo;
using st::io::json;

namespace {

constexpr int kUsage = 1;
constexpr int kNumeric = 2;

class usage_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TolOptions {
  double absolute = 1e-10;
  double relative = 1e-10;
  int max_subdivisions = 2000;

  st::Tolerance get() const {
    st::Tolerance t{absolute, relative, max_subdivisions};
    t.validate();
    return t;
  }
  void add(CLI::App* app) {
    app->add_option("--abs-tol", absolute, "Absolute quadrature tolerance")->capture_default_str();
    app->add_option("--rel-tol", relative, "Relative quadrature tolerance")->capture_default_str();
    app->add_option("--max-subdivisions", max_subdivisions, "Subdivision budget per adaptive integral")
        ->capture_default_str();
  }
  void echo(st::io::RunMetadata& m) const {
    m.parameters.emplace_back("abs_tol", absolute);
    m.parameters.emplace_back("rel_tol", relative);
    m.parameters.emplace_back("max_subdivisions", max_subdivisions);
  }
};

st::BesselOrder parse_order(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return st::BesselOrder(std::stoi(s));
    return st::BesselOrder(std::stoi(s.substr(0, slash)), std::stoi(s.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw usage_error("cannot parse Bessel order '" + s + "' (use e.g. 2 or 1/2)");
  }
}

void print_value(const std::string& label, double v) { std::cout << label << ' ' << st::io::format_display(v) << '\n'; }

std::ofstream open_output(const std::filesystem::path& p) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw usage_error("cannot open output file '" + p.string() + "'");
  return os;
}

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream os = open_output(p);
  os << text;
  if (!os) throw usage_error("failed writing '" + p.string() + "'");
}

std::string csv_string(const st::io::CsvDocument& doc) {
  std::ostringstream os;
  st::io::write_csv(os, doc);
  return os.str();
}

struct EvalOptions {
  std::string function;
  double beta = 0.0, beta1 = 0.0, beta2 = 0.0, beta3 = 0.0, x = 0.0;
  double lambda1 = 0.0, lambda2 = 0.0;
  int dimension = 4;
  std::string order = "1";
  std::string integrand = "direct";
  TolOptions tol;
};

int run_eval(const EvalOptions& o) {
  const std::string& f = o.function;
  if (f == "brillouin") {
    print_value("brillouin", st::brillouin(o.beta));
  } else if (f == "langevin") {
    print_value("langevin", st::langevin(o.beta));
  } else if (f == "alternative") {
    print_value("alternative", st::bures_alternative(o.beta));
  } else if (f == "quaternionic") {
    print_value("quaternionic", st::magnetization(st::ModelDimension(6), o.beta));
  } else if (f == "dvector") {
    print_value("magnetization", st::magnetization(st::ModelDimension(o.dimension), o.beta));
  } else if (f == "slope") {
    print_value("slope", st::magnetization_slope(st::ModelDimension(o.dimension), o.beta));
  } else if (f == "heat-capacity") {
    print_value("heat_capacity", st::heat_capacity(st::ModelDimension(o.dimension), o.beta));
  } else if (f == "bessel-i") {
    print_value("bessel_i", st::bessel_i(parse_order(o.order), o.x));
  } else if (f == "bessel-i-scaled") {
    print_value("bessel_i_scaled", st::bessel_i_scaled(parse_order(o.order), o.x));
  } else if (f == "bessel-ratio") {
    print_value("bessel_ratio", st::bessel_ratio(parse_order(o.order), o.x));
  } else if (f == "bessel-j0") {
    print_value("bessel_j0", st::bessel_j0(o.x));
  } else if (f == "omega") {
    print_value("omega", st::semiclassical::omega({o.lambda1, o.lambda2}));
  } else if (f == "semiclassical-mean") {
    const auto [m1, m2] = st::semiclassical::mean({o.lambda1, o.lambda2});
    print_value("mean1", m1);
    print_value("mean2", m2);
  } else if (f == "semiclassical-moments") {
    const st::SemiclassicalMoments m = st::semiclassical::moments({o.lambda1, o.lambda2});
    print_value("mean1", m.mean1);
    print_value("mean2", m.mean2);
    print_value("var1", m.var1);
    print_value("var2", m.var2);
    print_value("cov", m.cov);
  } else if (f == "bures-partition") {
    const st::QuadResult z = st::bures::partition_2({o.beta1, o.beta2}, o.tol.get());
    print_value("partition", z.value);
    print_value("error_estimate", z.error_estimate);
    if (!z.converged) return kNumeric;
  } else if (f == "bures-moments") {
    const st::EnsembleMoments m = st::bures::moments_2({o.beta1, o.beta2}, o.tol.get());
    print_value("mean1", m.mean1);
    print_value("mean2", m.mean2);
    print_value("var1", m.var1);
    print_value("var2", m.var2);
    print_value("cov", m.cov);
    print_value("partition", m.partition);
    print_value("quadrature_error", m.quadrature_error);
    if (!m.converged) return kNumeric;
  } else if (f == "bures-mean-closed") {
    const auto [m1, m2] = st::bures::closed_mean_2({o.beta1, o.beta2});
    print_value("mean1", m1);
    print_value("mean2", m2);
  } else if (f == "partition3") {
    st::ReducedForm3 choice;
    if (o.integrand == "paper") choice = st::ReducedForm3::paper;
    else if (o.integrand == "direct") choice = st::ReducedForm3::direct;
    else if (o.integrand == "full3d") choice = st::ReducedForm3::full3d;
    else throw usage_error("--integrand must be paper, direct or full3d");
    const st::QuadResult z = st::bures::partition_3({o.beta1, o.beta2, o.beta3}, o.tol.get(), choice);
    print_value("partition", z.value);
    print_value("error_estimate", z.error_estimate);
    if (!z.converged) return kNumeric;
  } else if (f == "mean3") {
    const st::bures::Mean3Result m = st::bures::mean_3({o.beta1, o.beta2, o.beta3}, o.tol.get());
    print_value("mean1", m.mean.s1);
    print_value("mean2", m.mean.s2);
    print_value("mean3", m.mean.s3);
    print_value("partition", m.partition.value);
    if (!m.converged) return kNumeric;
  } else {
    throw usage_error("unknown eval function '" + f + "'");
  }
  return 0;
}

struct SurfaceOptions {
  std::string model = "bures";
  std::string quantity = "mean1";
  st::GridSpec grid;
  std::string format = "csv";
  std::string output;
  bool timing = false;
  TolOptions tol;
};

int run_surface(const SurfaceOptions& o) {
  const auto model = st::parse_model(o.model);
  const auto quantity = st::parse_quantity(o.quantity);
  if (!model) throw usage_error("--model must be bures, semiclassical or difference");
  if (!quantity) throw usage_error("--quantity must be mean1, mean2, var1, var2, cov or partition");
  if (o.format != "csv" && o.format != "json") throw usage_error("surface --format must be csv or json");

  const auto start = std::chrono::steady_clock::now();
  const st::SurfaceGrid g = st::analysis::surface(*model, *quantity, o.grid, o.tol.get());

  st::io::RunMetadata meta;
  meta.command = "surface";
  meta.parameters = {{"model", o.model}, {"quantity", o.quantity}, {"min1", o.grid.min1}, {"max1", o.grid.max1},
                     {"steps1", o.grid.steps1}, {"min2", o.grid.min2}, {"max2", o.grid.max2}, {"steps2", o.grid.steps2},
                     {"format", o.format}};
  o.tol.echo(meta);
  meta.max_quadrature_error = g.max_error();
  meta.failures = g.failures;
  if (o.timing)
    meta.duration_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const std::string text =
      o.format == "csv" ? csv_string(st::io::surface_csv(g, meta)) : st::io::surface_json(g, meta).dump(2) + "\n";
  write_text(o.output, text);
  if (!g.failures.empty()) {
    std::cerr << "spinthermo: " << g.failures.size() << " grid point(s) did not converge (listed in metadata)\n";
    return kNumeric;
  }
  return 0;
}

struct Fig1Options {
  std::string output_dir = ".";
  double beta_min = -5.0;
  double beta_max = 5.0;
  int steps = 201;
};

int run_fig1(const Fig1Options& o) {
  if (!(o.beta_min < o.beta_max) || o.steps < 2) throw usage_error("fig1: require --beta-min < --beta-max and --steps >= 2");
  std::vector<double> betas(static_cast<std::size_t>(o.steps));
  for (int i = 0; i < o.steps; ++i) betas[i] = o.beta_min + (o.beta_max - o.beta_min) * i / (o.steps - 1);
  const auto pts = st::analysis::curve_difference(betas);
  const st::ExtremumReport rep = st::analysis::find_max_difference();

  st::io::RunMetadata meta;
  meta.command = "fig1";
  meta.parameters = {{"beta_min", o.beta_min}, {"beta_max", o.beta_max}, {"steps", o.steps}};

  const std::filesystem::path dir(o.output_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw usage_error("cannot create output directory '" + dir.string() + "'");
  write_text(dir / "fig1_curve.csv", csv_string(st::io::curve_csv(pts, meta)));
  write_text(dir / "fig1_extremum.json", st::io::extremum_json(rep, meta).dump(2) + "\n");
  write_text(dir / "fig1.svg", st::io::curve_svg(pts));
  std::cout << "argmax " << st::io::format_display(rep.argmax) << "\nmax_value " << st::io::format_display(rep.max_value)
            << '\n';
  return 0;
}

struct Eq15Options {
  double beta1 = 1.0, beta2 = 1.0, beta3 = 1.0;
  std::string output;
  TolOptions tol;
};

int run_eq15(const Eq15Options& o) {
  const st::io::Eq15Report r = st::io::eq15_report({o.beta1, o.beta2, o.beta3}, o.tol.get());
  st::io::RunMetadata meta;
  meta.command = "eq15-report";
  meta.parameters = {{"beta1", o.beta1}, {"beta2", o.beta2}, {"beta3", o.beta3}};
  o.tol.echo(meta);
  meta.max_quadrature_error = std::max({r.paper.error_estimate, r.direct.error_estimate, r.full3d.error_estimate});
  const std::string text = st::io::eq15_json(r, meta).dump(2) + "\n";
  if (o.output.empty()) std::cout << text;
  else write_text(o.output, text);
  return r.converged() ? 0 : kNumeric;
}

struct FitOptions {
  std::string model = "bures";
  double target1 = 0.0, target2 = 0.0;
  TolOptions tol;
};

int run_fit(const FitOptions& o) {
  if (o.model == "semiclassical") {
    const st::LagrangeMultipliers l = st::semiclassical::fit(o.target1, o.target2);
    print_value("lambda1", l.lambda1);
    print_value("lambda2", l.lambda2);
  } else if (o.model == "bures") {
    const st::InverseTemps2 b = st::analysis::fit_bures(o.target1, o.target2, o.tol.get());
    print_value("beta1", b.beta1);
    print_value("beta2", b.beta2);
  } else {
    throw usage_error("fit --model must be semiclassical or bures");
  }
  return 0;
}

int run_selftest(double perturbation) {
  const auto results = st::selftest::run({perturbation});
  int failed = 0;
  for (const auto& r : results) {
    std::printf("%-4s  %-42s %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
    if (!r.passed) ++failed;
  }
  std::printf("%zu checks, %d failed\n", results.size(), failed);
  return failed == 0 ? 0 : kNumeric;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semiclassical and Bures-metric thermodynamics of a spin-1/2"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(st::io::kToolVersion));

  EvalOptions eval;
  auto* ev = app.add_subcommand("eval", "Evaluate a scalar function");
  ev->add_option("function", eval.function,
                 "brillouin|langevin|alternative|quaternionic|dvector|slope|heat-capacity|bessel-i|bessel-i-scaled|"
                 "bessel-ratio|bessel-j0|omega|semiclassical-mean|semiclassical-moments|bures-partition|bures-moments|"
                 "bures-mean-closed|partition3|mean3")
      ->required();
  ev->add_option("--beta", eval.beta, "Inverse temperature (one-parameter laws)");
  ev->add_option("--beta1", eval.beta1);
  ev->add_option("--beta2", eval.beta2);
  ev->add_option("--beta3", eval.beta3);
  ev->add_option("--lambda1", eval.lambda1);
  ev->add_option("--lambda2", eval.lambda2);
  ev->add_option("--dimension", eval.dimension, "D of the D-vector family")->capture_default_str();
  ev->add_option("--order", eval.order, "Bessel order, integer or n/2")->capture_default_str();
  ev->add_option("--x", eval.x, "Bessel argument");
  ev->add_option("--integrand", eval.integrand, "paper|direct|full3d (partition3)")->capture_default_str();
  eval.tol.add(ev);

  SurfaceOptions surf;
  auto* su = app.add_subcommand("surface", "Write a surface grid over (beta1, beta2)");
  su->add_option("--model", surf.model, "bures|semiclassical|difference")->capture_default_str();
  su->add_option("--quantity", surf.quantity, "mean1|mean2|var1|var2|cov|partition")->capture_default_str();
  su->add_option("--min1", surf.grid.min1)->capture_default_str();
  su->add_option("--max1", surf.grid.max1)->capture_default_str();
  su->add_option("--steps1", surf.grid.steps1)->capture_default_str();
  su->add_option("--min2", surf.grid.min2)->capture_default_str();
  su->add_option("--max2", surf.grid.max2)->capture_default_str();
  su->add_option("--steps2", surf.grid.steps2)->capture_default_str();
  su->add_option("--format", surf.format, "csv|json")->capture_default_str();
  su->add_option("-o,--output", surf.output, "Output file")->required();
  su->add_flag("--timing", surf.timing, "Embed wall-clock duration (output is then not byte-reproducible)");
  surf.tol.add(su);

  Fig1Options fig;
  auto* f1 = app.add_subcommand("fig1", "Brillouin vs Bures alternative curves, gap extremum and SVG plot");
  f1->add_option("-o,--output-dir", fig.output_dir)->capture_default_str();
  f1->add_option("--beta-min", fig.beta_min)->capture_default_str();
  f1->add_option("--beta-max", fig.beta_max)->capture_default_str();
  f1->add_option("--steps", fig.steps)->capture_default_str();

  Eq15Options eq;
  auto* e15 = app.add_subcommand("eq15-report", "Compare reduced three-observable partition functions with ball quadrature");
  e15->add_option("--beta1", eq.beta1)->capture_default_str();
  e15->add_option("--beta2", eq.beta2)->capture_default_str();
  e15->add_option("--beta3", eq.beta3)->capture_default_str();
  e15->add_option("-o,--output", eq.output, "Output file (stdout when omitted)");
  eq.tol.add(e15);

  FitOptions fit;
  auto* fi = app.add_subcommand("fit", "Inverse temperatures reproducing target expectation values");
  fi->add_option("--model", fit.model, "semiclassical|bures")->capture_default_str();
  fi->add_option("--target1", fit.target1)->required();
  fi->add_option("--target2", fit.target2)->required();
  fit.tol.add(fi);

  double perturbation = 0.0;
  auto* stt = app.add_subcommand("selftest", "Run the invariant suite");
  stt->add_option("--inject-ratio-perturbation", perturbation)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "spinthermo: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*ev) return run_eval(eval);
    if (*su) return run_surface(surf);
    if (*f1) return run_fig1(fig);
    if (*e15) return run_eq15(eq);
    if (*fi) return run_fit(fit);
    if (*stt) return run_selftest(perturbation);
  } catch (const usage_error& e) {
    std::cerr << "spinthermo: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "spinthermo: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "spinthermo: numeric failure: " << e.what() << '\n';
    return kNumeric;
  }
  return kUsage;
}
