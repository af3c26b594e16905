// freemult: densities, convolutions, identity checks and level curves from the command line.
//
// Exit codes: 0 success, 1 verification failed, 2 input error, 3 numerical failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "freemult/convolution.hpp"
#include "freemult/density.hpp"
#include "freemult/errors.hpp"
#include "freemult/measures.hpp"
#include "freemult/output.hpp"
#include "freemult/semigroups.hpp"

using namespace freemult;
using nlohmann::json;
using std::numbers::pi;

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

json num(double x) {
  if (std::isfinite(x)) return x;
  return format_number(x);
}

json cnum(cplx z) { return json::array({num(z.real()), num(z.imag())}); }

json cseries(const TruncatedSeries& s) {
  json a = json::array();
  for (std::size_t n = 0; n <= s.order(); ++n) a.push_back(cnum(s[n]));
  return a;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::InvalidArgument, what);
}

void check_grid(long grid) { require(grid >= 8 && grid <= 1000000, "grid must lie in [8, 1e6]"); }

void check_tol(double tol) { require(tol > 0.0 && tol <= 1e-4, "tol must lie in (0, 1e-4]"); }

CircleMeasure as_circle(const MeasureSpec& m, const std::string& path) {
  if (const auto* c = std::get_if<CircleMeasure>(&m)) return *c;
  throw Error(ErrorKind::InvalidArgument, path + " is not a circle measure");
}

HalfLineMeasure as_halfline(const MeasureSpec& m, const std::string& path) {
  if (const auto* h = std::get_if<HalfLineMeasure>(&m)) return *h;
  throw Error(ErrorKind::InvalidArgument, path + " is not a half-line measure");
}

void emit_error(const std::string& kind, int code, const std::string& message) {
  json e{{"error", kind}, {"exit_code", code}, {"message", message}};
  std::cerr << e.dump() << std::endl;
}

// ---- density ----

struct DensityArgs {
  std::string measure;
  long grid = 512;
  std::string route = "boundary";
  bool graded = false;
  int m0 = 4;
  int m1 = 16;
  std::string format = "csv";
  std::string output = "density.csv";
};

int run_density(const DensityArgs& a) {
  check_grid(a.grid);
  RadialSchedule schedule{a.m0, a.m1, 3};
  schedule.validate();
  const json config{{"command", "density"}, {"measure", a.measure}, {"grid", a.grid}, {"route", a.route},
                    {"graded", a.graded}, {"m0", a.m0}, {"m1", a.m1}, {"format", a.format}, {"output", a.output}};
  const auto spec = load_measure_spec(a.measure);
  const auto n = static_cast<std::size_t>(a.grid);
  DensityTable table;
  std::string abscissa;
  if (const auto* mu = std::get_if<CircleMeasure>(&spec)) {
    abscissa = "theta";
    const auto* normal = std::get_if<circle::Normal>(&mu->variant());
    AngleGrid grid;
    if (a.graded) {
      require(normal != nullptr, "--graded applies to circle-normal measures");
      grid = circle_normal_grid(normal->t, n);
    } else {
      grid = uniform_circle_grid(n);
    }
    if (normal != nullptr)
      table = circle_normal_density(normal->t, grid, a.route == "poisson" ? DensityRoute::Poisson : DensityRoute::Boundary, schedule);
    else
      table = poisson_density(*mu, grid, schedule);
  } else {
    abscissa = "x";
    const auto& h = std::get<HalfLineMeasure>(spec);
    const auto* normal = std::get_if<halfline::Normal>(&h.variant());
    require(normal != nullptr && normal->t == 2.0, "half-line densities are available for the normal law at t = 2");
    table = halfline_normal_density(n);
  }

  std::string content;
  if (a.format == "json") {
    json doc{{"config", config}, {"abscissa", abscissa}, {"mass", num(table.mass)}, {"note", table.note}};
    json xs = json::array();
    json ys = json::array();
    for (std::size_t i = 0; i < table.abscissae.size(); ++i) {
      xs.push_back(num(table.abscissae[i]));
      ys.push_back(num(table.values[i]));
    }
    doc["abscissae"] = xs;
    doc["density"] = ys;
    content = doc.dump(1) + "\n";
  } else {
    content = density_csv(table, abscissa, config.dump());
  }
  write_file_atomic(a.output, content);
  std::cout << "mass " << format_number(table.mass) << "\n";
  if (const auto d = table.divergent_count(); d > 0) std::cout << "divergent " << d << "\n";
  return 0;
}

// ---- convolve ----

struct ConvolveArgs {
  std::vector<std::string> measures;
  int order = 12;
  std::string output = "convolve.json";
};

int run_convolve(const ConvolveArgs& a) {
  require(a.measures.size() == 2, "convolve needs exactly two --measure files");
  require(a.order >= 1 && a.order <= 64, "order must lie in [1, 64]");
  const json config{{"command", "convolve"}, {"measures", a.measures}, {"order", a.order}, {"output", a.output}};
  const auto first = load_measure_spec(a.measures[0]);
  const auto second = load_measure_spec(a.measures[1]);
  json doc{{"config", config}};
  double max_fix = 0.0;
  double max_prod = 0.0;
  json certs = json::array();
  auto record = [&](const SubordinationPoint& p) {
    max_fix = std::max(max_fix, p.r_fix);
    max_prod = std::max(max_prod, p.r_prod);
    certs.push_back({{"z", cnum(p.z)}, {"omega1", cnum(p.omega1)}, {"omega2", cnum(p.omega2)}, {"eta", cnum(p.eta_product)},
                     {"r_fix", num(p.r_fix)}, {"r_prod", num(p.r_prod)}});
  };

  if (std::holds_alternative<CircleMeasure>(first)) {
    const auto mu = std::get<CircleMeasure>(first);
    const auto nu = as_circle(second, a.measures[1]);
    const auto product = free_multiply(mu, nu);
    const auto order = static_cast<std::size_t>(a.order);
    doc["domain"] = "circle";
    doc["eta_series"] = cseries(eta_series(product, order));
    doc["mean"] = cnum(mean(product));
    for (const auto& z : polar_grid({2, 8, 0.9})) record(subordinate(mu, nu, z));
    std::string flag = "not-applicable";
    if (std::abs(mean(mu)) > kMomentThreshold && std::abs(mean(nu)) > kMomentThreshold) {
      const auto lhs = sigma_series(product, order);
      const auto rhs = sigma_series(mu, order) * sigma_series(nu, order);
      double worst = 0.0;
      for (std::size_t n = 0; n <= order; ++n) worst = std::max(worst, std::abs(lhs[n] - rhs[n]) / std::max(1.0, std::abs(rhs[n])));
      flag = worst < 1e-8 ? "pass" : "fail";
      doc["sigma_product_error"] = num(worst);
    }
    doc["sigma_product_check"] = flag;
  } else {
    const auto mu = std::get<HalfLineMeasure>(first);
    const auto nu = as_halfline(second, a.measures[1]);
    doc["domain"] = "half-line";
    doc["mean"] = num(mean(mu) * mean(nu));
    for (const auto& z : halfplane_grid(2, 8, 0.5, 2.0)) record(subordinate_halfline(mu, nu, z));
  }
  doc["certificates"] = certs;
  doc["max_r_fix"] = num(max_fix);
  doc["max_r_prod"] = num(max_prod);
  write_file_atomic(a.output, doc.dump(1) + "\n");
  std::cout << "max_r_fix " << format_number(max_fix) << "\nmax_r_prod " << format_number(max_prod) << "\n";
  return 0;
}

// ---- verify ----

struct VerifyArgs {
  std::string suite;
  std::vector<std::string> measures;
  double t = 1.0;
  double s = 0.5;
  double tol = 1e-10;
  long grid = 128;
  double radius = 0.9;
  int order = 8;
  std::string output = "verify.json";
};

int run_verify(const VerifyArgs& a) {
  check_tol(a.tol);
  check_grid(a.grid);
  require(a.radius > 0.0 && a.radius <= 0.95, "radius must lie in (0, 0.95]");
  const json config{{"command", "verify"}, {"suite", a.suite}, {"measures", a.measures}, {"t", a.t}, {"s", a.s}, {"tol", a.tol},
                    {"grid", a.grid}, {"radius", a.radius}, {"order", a.order}, {"output", a.output}};
  const std::size_t need = a.suite == "cor313" ? 2 : 1;
  require(a.measures.size() == need, "suite " + a.suite + " needs " + std::to_string(need) + " --measure file(s)");
  std::vector<MeasureSpec> specs;
  for (const auto& m : a.measures) specs.push_back(load_measure_spec(m));

  ThmResidualReport rep;
  if (a.suite == "thm11") {
    require(a.t > 0.0, "t must be positive");
    rep = verify_thm11(as_circle(specs[0], a.measures[0]), a.t, GridSpec{4, static_cast<int>(a.grid / 4), a.radius});
  } else if (a.suite == "thm45") {
    require(a.t > 0.0, "t must be positive");
    auto pts = segment_grid(static_cast<int>(a.grid / 2), -4.0, -0.05);
    const auto upper = halfplane_grid(4, static_cast<int>(a.grid / 8), 0.25, 4.0);
    pts.insert(pts.end(), upper.begin(), upper.end());
    rep = verify_thm45(as_halfline(specs[0], a.measures[0]), a.t, pts);
  } else if (a.suite == "semigroup") {
    rep.max_residual = verify_thm_semigroup(as_circle(specs[0], a.measures[0]), a.t, a.s);
    rep.grid = polar_grid({4, 16, 0.9});
    rep.parameters = "t=" + format_number(a.t) + ";s=" + format_number(a.s);
  } else {
    require(a.order >= 1 && a.order <= 32, "order must lie in [1, 32]");
    const auto chk = verify_cor313(as_circle(specs[0], a.measures[0]), as_circle(specs[1], a.measures[1]),
                                   static_cast<std::size_t>(a.order));
    rep.max_residual = chk.max_difference;
    rep.parameters = "k=" + std::to_string(chk.k) + ";order=" + std::to_string(chk.order);
  }
  const bool pass = rep.max_residual < a.tol;
  json grid = json::array();
  for (const auto& z : rep.grid) grid.push_back(cnum(z));
  json residuals = json::array();
  for (double r : rep.residuals) residuals.push_back(num(r));
  const json doc{{"config", config}, {"suite", a.suite},      {"params", rep.parameters}, {"max_residual", num(rep.max_residual)},
                 {"tol", a.tol},     {"pass", pass},          {"grid", grid},             {"residuals", residuals}};
  write_file_atomic(a.output, doc.dump(1) + "\n");
  std::cout << "max_residual " << format_number(rep.max_residual) << (pass ? " pass" : " fail") << "\n";
  return pass ? 0 : kExitVerifyFailed;
}

// ---- levelcurve ----

struct LevelArgs {
  std::string which;
  double t = 2.0;
  std::vector<double> levels;
  double r_min = NAN;
  double r_max = NAN;
  double theta_min = NAN;
  double theta_max = NAN;
  long resolution = 400;
  std::string format = "svg";
  std::string output = "levelcurve.svg";
};

int run_levelcurve(LevelArgs a) {
  require(a.resolution >= 8 && a.resolution <= 1000000, "resolution must lie in [8, 1e6]");
  const bool mod = a.which == "mod-phi";
  if (mod) require(a.t > 0.0, "t must be positive");
  Window w;
  w.r_min = std::isnan(a.r_min) ? 0.0 : a.r_min;
  w.r_max = std::isnan(a.r_max) ? (mod ? 2.0 : 4.0) : a.r_max;
  w.theta_min = std::isnan(a.theta_min) ? (mod ? -pi : 0.0) : a.theta_min;
  w.theta_max = std::isnan(a.theta_max) ? pi : a.theta_max;
  const json config{{"command", "levelcurve"}, {"which", a.which}, {"t", mod ? a.t : 2.0}, {"levels", a.levels},
                    {"r_min", w.r_min}, {"r_max", w.r_max}, {"theta_min", w.theta_min}, {"theta_max", w.theta_max},
                    {"resolution", a.resolution}, {"format", a.format}, {"output", a.output}};
  const auto set = level_curves(mod ? LevelKind::ModulusPhi : LevelKind::ArgPhiLambda, a.t, a.levels, w,
                                static_cast<std::size_t>(a.resolution));
  const std::string cfg = config.dump();
  if (a.format == "csv") {
    write_file_atomic(a.output, level_curves_csv(set, cfg));
  } else {
    std::filesystem::path twin(a.output);
    twin.replace_extension(".csv");
    if (twin == std::filesystem::path(a.output)) twin += ".csv";
    write_file_atomic(a.output, level_curves_svg(set, cfg));
    write_file_atomic(twin.string(), level_curves_csv(set, cfg));
  }
  for (std::size_t l = 0; l < set.levels.size(); ++l) {
    std::size_t vertices = 0;
    for (const auto& p : set.polylines[l]) vertices += p.size();
    std::cout << "level " << format_number(set.levels[l]) << " polylines " << set.polylines[l].size() << " vertices " << vertices
              << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Free multiplicative convolution toolkit"};
  app.require_subcommand(1);
  std::function<int()> action;

  DensityArgs da;
  auto* density = app.add_subcommand("density", "Tabulate a boundary density");
  density->add_option("--measure", da.measure, "Measure JSON file")->required();
  density->add_option("--grid", da.grid, "Number of abscissae")->capture_default_str();
  density->add_option("--route", da.route, "boundary or poisson (circle normal law)")
      ->check(CLI::IsMember({"boundary", "poisson"}))
      ->capture_default_str();
  density->add_flag("--graded", da.graded, "Graded grid on the support arc (circle normal law, t <= 4)");
  density->add_option("--m0", da.m0, "First radius exponent, r = 1 - 2^-m")->capture_default_str();
  density->add_option("--m1", da.m1, "Last radius exponent")->capture_default_str();
  density->add_option("--format", da.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  density->add_option("--output,-o", da.output)->capture_default_str();
  density->callback([&] { action = [&] { return run_density(da); }; });

  ConvolveArgs ca;
  auto* convolve = app.add_subcommand("convolve", "Free multiplicative convolution of two measures");
  convolve->add_option("--measure", ca.measures, "Two measure JSON files")->required();
  convolve->add_option("--order", ca.order, "Highest eta-series power")->capture_default_str();
  convolve->add_option("--output,-o", ca.output)->capture_default_str();
  convolve->callback([&] { action = [&] { return run_convolve(ca); }; });

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Residual check of an identity");
  verify->add_option("--suite", va.suite)->required()->check(CLI::IsMember({"thm11", "thm45", "semigroup", "cor313"}));
  verify->add_option("--measure", va.measures, "Measure file(s); cor313 takes mu then nu");
  verify->add_option("--t", va.t)->capture_default_str();
  verify->add_option("--s", va.s, "Second semigroup parameter")->capture_default_str();
  verify->add_option("--tol", va.tol)->capture_default_str();
  verify->add_option("--grid", va.grid, "Number of grid points")->capture_default_str();
  verify->add_option("--radius", va.radius)->capture_default_str();
  verify->add_option("--order", va.order, "Series order (cor313)")->capture_default_str();
  verify->add_option("--output,-o", va.output)->capture_default_str();
  verify->callback([&] { action = [&] { return run_verify(va); }; });

  LevelArgs la;
  auto* level = app.add_subcommand("levelcurve", "Trace level curves of |Phi_t| or arg Phi_lambda");
  level->add_option("--which", la.which)->required()->check(CLI::IsMember({"mod-phi", "arg-phi"}));
  level->add_option("--t", la.t, "Time parameter (mod-phi)")->capture_default_str();
  level->add_option("--levels", la.levels)->required();
  level->add_option("--r-min", la.r_min);
  level->add_option("--r-max", la.r_max);
  level->add_option("--theta-min", la.theta_min);
  level->add_option("--theta-max", la.theta_max);
  level->add_option("--resolution", la.resolution)->capture_default_str();
  level->add_option("--format", la.format)->check(CLI::IsMember({"svg", "csv"}))->capture_default_str();
  level->add_option("--output,-o", la.output)->capture_default_str();
  level->callback([&] { action = [&] { return run_levelcurve(la); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    emit_error("InvalidArgument", kExitInput, e.what());
    return kExitInput;
  }

  try {
    return action();
  } catch (const Error& e) {
    const int code = is_input_error(e.kind()) ? kExitInput : kExitNumerical;
    emit_error(to_string(e.kind()), code, e.what());
    return code;
  } catch (const std::exception& e) {
    emit_error("Internal", kExitNumerical, e.what());
    return kExitNumerical;
  }
}
