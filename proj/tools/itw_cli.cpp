#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "itw/ensembles.hpp"
#include "itw/formfactors.hpp"
#include "itw/io.hpp"
#include "itw/oracle.hpp"
#include "itw/probes.hpp"
#include "itw/twirl.hpp"
#include "itw/verification.hpp"

namespace {

using itw::Complex;
using itw::EnsembleKind;
using itw::FormFactors;
using itw::Matrix;
using itw::OutputTable;
using itw::SceneParams;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerification = 2;
constexpr int kExitIo = 3;

void warn_if_not_power_of_two(int d) {
  if (d < 2 || (d & (d - 1)) != 0) {
    std::fprintf(stderr,
                 "warning: d=%d is not a power of 2; the source figures use "
                 "power-of-2 dimensions\n",
                 d);
  }
}

std::vector<double> build_grid(double tmin, double tmax, int points) {
  std::vector<double> grid{0.0};
  const std::vector<double> logs = itw::log_time_grid(tmin, tmax, points);
  grid.insert(grid.end(), logs.begin(), logs.end());
  return grid;
}

void write_table(const OutputTable& table, const std::string& path,
                 const std::string& format) {
  if (format == "json") {
    itw::write_json(table, path);
  } else {
    itw::write_csv(table, path);
  }
}

std::string with_suffix(const std::string& path, const std::string& tag) {
  const std::size_t dot = path.find_last_of('.');
  if (dot == std::string::npos || path.find('/', dot) != std::string::npos) {
    return path + "_" + tag;
  }
  return path.substr(0, dot) + "_" + tag + path.substr(dot);
}

int largest_pow2_split(int d) {
  int a = 1;
  while (a * a < d) a *= 2;
  while (d % a != 0) a /= 2;
  return a;
}

struct SceneFlags {
  int dA = 0, dB = 0, dC = 0, dD = 0;
  double purity_psi = 1.0, purity_A = 1.0, purity_B = 1.0, deph_purity = 1.0;
  double h = 1.0;
  double beta_eps = 1.0;
  double eta = 0.5;

  SceneParams resolve(int d) const {
    SceneParams sc;
    sc.d = d;
    sc.dC = dC > 0 ? dC : largest_pow2_split(d);
    sc.dD = dD > 0 ? dD : d / sc.dC;
    sc.dA = dA > 0 ? dA : sc.dC;
    sc.dB = dB > 0 ? dB : d / sc.dA;
    sc.purity_psi = purity_psi;
    sc.purity_A = purity_A;
    sc.purity_B = purity_B;
    sc.deph_purity = deph_purity;
    // Battery convenience scaling: E_HT = 1/2 and unit spectral variance, so
    // that h = 4 E0 E_HT / var = 2 E0.
    sc.E_HT = 0.5;
    sc.trH0sq = d * (1.0 + sc.E_HT * sc.E_HT);
    sc.E0 = h / 2.0;
    sc.beta_eps = beta_eps;
    return sc;
  }
};

struct ProbeEval {
  std::vector<std::string> value_columns;
  std::vector<double> (*eval)(const FormFactors&, const SceneParams&,
                              double eta);
};

std::map<std::string, ProbeEval> probe_catalog() {
  using itw::analytic_form_factors;
  std::map<std::string, ProbeEval> cat;
  cat["frame-potential"] = {{"value", "bound"},
                            [](const FormFactors& ff, const SceneParams& sc,
                               double) -> std::vector<double> {
                              return {itw::frame_potential_k1(ff, sc.d),
                                      itw::frame_potential_k1_bound(ff, sc.d)};
                            }};
  cat["loschmidt1"] = {{"value"},
                       [](const FormFactors& ff, const SceneParams& sc,
                          double) -> std::vector<double> {
                         return {itw::loschmidt1(ff, sc.d)};
                       }};
  cat["loschmidt2"] = {{"value"},
                       [](const FormFactors& ff, const SceneParams& sc,
                          double) -> std::vector<double> {
                         return {itw::loschmidt2_pauli(ff, sc.d)};
                       }};
  cat["otoc2"] = {{"value"},
                  [](const FormFactors& ff, const SceneParams& sc,
                     double) -> std::vector<double> {
                    // Traceless Pauli observable: tr A = 0, ||A||_2^2 = d.
                    return {itw::otoc2(ff, sc.d, Complex{0.0, 0.0},
                                       static_cast<double>(sc.d))};
                  }};
  cat["otoc4"] = {{"value"},
                  [](const FormFactors& ff, const SceneParams& sc,
                     double) -> std::vector<double> {
                    return {itw::otoc4_pauli(ff, sc.d)};
                  }};
  cat["entanglement"] = {{"value"},
                         [](const FormFactors& ff, const SceneParams& sc,
                            double) -> std::vector<double> {
                           return {itw::entanglement_bound(ff, sc)};
                         }};
  cat["tmi"] = {{"value"},
                [](const FormFactors& ff, const SceneParams& sc,
                   double) -> std::vector<double> {
                  return {itw::tmi_bound(ff, sc)};
                }};
  cat["coherence"] = {{"value"},
                      [](const FormFactors& ff, const SceneParams& sc,
                         double) -> std::vector<double> {
                        return {itw::coherence(ff, sc)};
                      }};
  cat["wyd"] = {{"value"},
                [](const FormFactors& ff, const SceneParams& sc,
                   double eta) -> std::vector<double> {
                  // Pauli X on the first qubit in a diagonal Gibbs-like
                  // state; fixed inputs keep reruns byte-identical.
                  const int d = sc.d;
                  Matrix x(2, 2);
                  x << 0, 1, 1, 0;
                  const Matrix obs =
                      itw::kron(x, Matrix::Identity(d / 2, d / 2));
                  Matrix rho = Matrix::Zero(d, d);
                  double z = 0.0;
                  for (int i = 0; i < d; ++i) z += std::exp(-0.5 * i);
                  for (int i = 0; i < d; ++i) rho(i, i) = std::exp(-0.5 * i) / z;
                  return {itw::wyd_skew(ff, d, obs, rho, eta)};
                }};
  cat["convergence"] = {{"value"},
                        [](const FormFactors& ff, const SceneParams& sc,
                           double) -> std::vector<double> {
                          return {itw::convergence_f(ff, sc)};
                        }};
  cat["work"] = {{"value"},
                 [](const FormFactors& ff, const SceneParams& sc,
                    double) -> std::vector<double> {
                   return {itw::work(ff, sc)};
                 }};
  cat["work-fluct"] = {{"value"},
                       [](const FormFactors& ff, const SceneParams& sc,
                          double) -> std::vector<double> {
                         return {itw::work_fluctuations(ff, sc)};
                       }};
  cat["free-energy"] = {{"lower", "upper"},
                        [](const FormFactors& ff, const SceneParams& sc,
                           double) -> std::vector<double> {
                          const auto b = itw::free_energy_bounds(ff, sc);
                          return {b.first, b.second};
                        }};
  return cat;
}

std::vector<EnsembleKind> parse_ensembles(const std::vector<std::string>& names) {
  std::vector<EnsembleKind> kinds;
  for (const std::string& n : names) kinds.push_back(itw::ensemble_from_name(n));
  return kinds;
}

// --- subcommand drivers ---

struct FormFactorArgs {
  std::string ensemble = "gue";
  int d = 64;
  std::string quantity = "c2";
  double tmin = 0.1, tmax = 0.0;
  int points = 200;
  long mc = 0;
  std::uint64_t seed = 1;
  std::string out = "formfactor.csv";
  std::string format = "csv";
  bool plot = false;
};

int run_formfactor(const FormFactorArgs& a) {
  warn_if_not_power_of_two(a.d);
  const EnsembleKind kind = itw::ensemble_from_name(a.ensemble);
  const double tmax = a.tmax > 0.0 ? a.tmax : 10.0 * a.d;
  const std::vector<double> grid = build_grid(a.tmin, tmax, a.points);

  OutputTable table;
  table.meta = {{"command", "formfactor"},
                {"ensemble", a.ensemble},
                {"d", std::to_string(a.d)},
                {"quantity", a.quantity},
                {"points", std::to_string(a.points)},
                {"tmin", itw::format_double(a.tmin)},
                {"tmax", itw::format_double(tmax)},
                {"mc", std::to_string(a.mc)},
                {"seed", std::to_string(a.seed)}};
  table.columns = {"t", a.quantity, a.quantity + "_tilde"};

  itw::McMoments mc;
  if (a.mc > 0) {
    itw::McConfig cfg;
    cfg.d = a.d;
    cfg.n_samples = a.mc;
    cfg.seed = a.seed;
    mc = itw::mc_ensemble_c({kind, a.d}, grid, cfg);
    table.columns.push_back("mc_mean");
    table.columns.push_back("mc_se");
  }

  const double dpow = a.quantity == "c2"
                          ? static_cast<double>(a.d) * a.d
                          : std::pow(static_cast<double>(a.d),
                                     a.quantity == "c3" ? 3.0 : 4.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const FormFactors ff = itw::analytic_form_factors(kind, a.d, grid[i]);
    double value = 0.0;
    double mc_mean = 0.0, mc_se = 0.0;
    if (a.quantity == "c2") {
      value = ff.c2.real();
      if (a.mc > 0) mc_mean = mc.c2_mean[i], mc_se = mc.c2_se[i];
    } else if (a.quantity == "c3") {
      value = ff.c3.real();
      if (a.mc > 0) mc_mean = mc.c3_mean[i], mc_se = mc.c3_se[i];
    } else if (a.quantity == "c4") {
      value = ff.c4.real();
      if (a.mc > 0) mc_mean = mc.c4_mean[i], mc_se = mc.c4_se[i];
    } else {
      std::fprintf(stderr, "error: unknown quantity '%s'\n",
                   a.quantity.c_str());
      return kExitUsage;
    }
    std::vector<double> row{grid[i], value, value / dpow};
    if (a.mc > 0) {
      row.push_back(mc_mean);
      row.push_back(mc_se);
    }
    table.rows.push_back(std::move(row));
  }

  write_table(table, a.out, a.format);
  if (a.plot && a.format == "csv") {
    itw::write_gnuplot_script(a.out + ".gp", a.out,
                              a.ensemble + " " + a.quantity, true, true,
                              {a.quantity + "_tilde"});
  }
  return kExitOk;
}

struct ProbeArgs {
  std::string probe;
  std::vector<std::string> ensembles{"gue"};
  int d = 64;
  double tmin = 0.1, tmax = 0.0;
  int points = 200;
  std::uint64_t seed = 1;
  std::string out = "probe.csv";
  std::string format = "csv";
  bool plot = false;
  SceneFlags scene;
};

int run_probe(const ProbeArgs& a) {
  warn_if_not_power_of_two(a.d);
  const auto catalog = probe_catalog();
  const auto it = catalog.find(a.probe);
  if (it == catalog.end()) {
    std::fprintf(stderr, "error: unknown probe '%s'\n", a.probe.c_str());
    return kExitUsage;
  }
  const std::vector<EnsembleKind> kinds = parse_ensembles(a.ensembles);
  const double tmax = a.tmax > 0.0 ? a.tmax : 10.0 * a.d;
  const std::vector<double> grid = build_grid(a.tmin, tmax, a.points);
  const SceneParams sc = a.scene.resolve(a.d);

  for (std::size_t e = 0; e < kinds.size(); ++e) {
    OutputTable table;
    table.meta = {{"command", "probe"},
                  {"probe", a.probe},
                  {"ensemble", a.ensembles[e]},
                  {"d", std::to_string(a.d)},
                  {"dA", std::to_string(sc.dA)},
                  {"dB", std::to_string(sc.dB)},
                  {"dC", std::to_string(sc.dC)},
                  {"dD", std::to_string(sc.dD)},
                  {"points", std::to_string(a.points)},
                  {"tmin", itw::format_double(a.tmin)},
                  {"tmax", itw::format_double(tmax)},
                  {"seed", std::to_string(a.seed)}};
    table.columns = {"t"};
    for (const std::string& c : it->second.value_columns)
      table.columns.push_back(c);
    for (double t : grid) {
      const FormFactors ff = itw::analytic_form_factors(kinds[e], a.d, t);
      std::vector<double> row{t};
      for (double v : it->second.eval(ff, sc, a.scene.eta)) row.push_back(v);
      table.rows.push_back(std::move(row));
    }
    const std::string path =
        kinds.size() == 1 ? a.out : with_suffix(a.out, a.ensembles[e]);
    write_table(table, path, a.format);
    if (a.plot && a.format == "csv") {
      itw::write_gnuplot_script(path + ".gp", path,
                                a.probe + " " + a.ensembles[e], true, false,
                                it->second.value_columns);
    }
  }
  return kExitOk;
}

struct VerifyArgs {
  std::string suite;
  int d = 0;
  int k = 0;
  long samples = 0;
  std::uint64_t seed = 0;
  std::string out;
};

int run_verify(const VerifyArgs& a) {
  std::vector<itw::CheckResult> checks;
  if (a.suite == "weingarten") {
    checks = itw::verify_weingarten();
  } else if (a.suite == "twirl-mc") {
    checks = itw::verify_twirl_mc(a.samples > 0 ? a.samples : 10000,
                                  a.seed != 0 ? a.seed : 7, a.d, a.k);
  } else if (a.suite == "formfactor-mc") {
    checks = itw::verify_formfactor_mc(a.seed != 0 ? a.seed : 11);
  } else if (a.suite == "probe-oracle") {
    checks = itw::verify_probe_oracle(a.d > 0 ? std::vector<int>{a.d}
                                              : std::vector<int>{4, 8});
  } else if (a.suite == "typicality") {
    checks = itw::verify_typicality(a.samples > 0 ? a.samples : 1000,
                                    a.seed != 0 ? a.seed : 5);
  } else {
    std::fprintf(stderr, "error: unknown suite '%s'\n", a.suite.c_str());
    return kExitUsage;
  }

  for (const auto& c : checks) {
    std::printf("%-48s tolerance=%-12.6g observed=%-12.6g %s\n",
                c.name.c_str(), c.tolerance, c.observed,
                c.pass ? "PASS" : "FAIL");
  }
  const bool ok = itw::all_pass(checks);
  std::printf("%s: %zu checks, %s\n", a.suite.c_str(), checks.size(),
              ok ? "all passed" : "FAILURES PRESENT");

  if (!a.out.empty()) {
    nlohmann::ordered_json report;
    report["suite"] = a.suite;
    report["pass"] = ok;
    report["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
      report["checks"].push_back({{"name", c.name},
                                  {"tolerance", c.tolerance},
                                  {"observed", c.observed},
                                  {"pass", c.pass}});
    }
    std::FILE* f = std::fopen(a.out.c_str(), "w");
    if (f == nullptr) {
      std::fprintf(stderr, "error: cannot open %s\n", a.out.c_str());
      return kExitIo;
    }
    const std::string text = report.dump(2);
    std::fwrite(text.data(), 1, text.size(), f);
    std::fputc('\n', f);
    std::fclose(f);
  }
  return ok ? kExitOk : kExitVerification;
}

struct FitDecayArgs {
  std::string ensemble = "gue";
  std::vector<int> ds;
  double threshold = 0.02;
  int points = 400;
  std::string out;
  std::string format = "csv";
};

int run_fit_decay(const FitDecayArgs& a) {
  if (a.ds.size() < 4) {
    std::fprintf(stderr, "error: fit-decay needs at least 4 d values\n");
    return kExitUsage;
  }
  const EnsembleKind kind = itw::ensemble_from_name(a.ensemble);
  std::vector<double> logd, tfluct;
  for (int d : a.ds) {
    warn_if_not_power_of_two(d);
    SceneFlags flags;
    const SceneParams sc = flags.resolve(d);
    itw::TimeSeries series;
    series.t = itw::log_time_grid(0.1, 10.0 * d, a.points);
    series.value.reserve(series.t.size());
    for (double t : series.t) {
      series.value.push_back(
          itw::tmi_bound(itw::analytic_form_factors(kind, d, t), sc));
    }
    logd.push_back(std::log(static_cast<double>(d)));
    tfluct.push_back(itw::fluctuation_decay_time(series, a.threshold));
  }
  const auto [intercept, b] = itw::linear_fit(logd, tfluct);
  std::printf("fit t_fluct = a + b log d: a = %.6g, b = %.6g\n", intercept, b);

  if (!a.out.empty()) {
    OutputTable table;
    table.meta = {{"command", "fit-decay"},
                  {"ensemble", a.ensemble},
                  {"threshold", itw::format_double(a.threshold)},
                  {"a", itw::format_double(intercept)},
                  {"b", itw::format_double(b)}};
    table.columns = {"log_d", "t_fluct"};
    for (std::size_t i = 0; i < logd.size(); ++i)
      table.rows.push_back({logd[i], tfluct[i]});
    write_table(table, a.out, a.format);
  }
  return kExitOk;
}

struct SampleArgs {
  std::string ensemble = "gue";
  int d = 16;
  long samples = 10;
  std::uint64_t seed = 1;
  std::string out = "spectra.csv";
  std::string format = "csv";
};

int run_sample(const SampleArgs& a) {
  warn_if_not_power_of_two(a.d);
  const EnsembleKind kind = itw::ensemble_from_name(a.ensemble);
  if (kind == EnsembleKind::HAAR) {
    std::fprintf(stderr, "error: the haar kind has no spectrum to sample\n");
    return kExitUsage;
  }
  OutputTable table;
  table.meta = {{"command", "sample"},
                {"ensemble", a.ensemble},
                {"d", std::to_string(a.d)},
                {"samples", std::to_string(a.samples)},
                {"seed", std::to_string(a.seed)}};
  table.columns = {"sample", "level", "energy"};
  for (long s = 0; s < a.samples; ++s) {
    itw::Rng rng = itw::rng_substream(a.seed, static_cast<std::uint64_t>(s));
    const itw::Spectrum sp = itw::sample_spectrum({kind, a.d}, rng);
    for (std::size_t i = 0; i < sp.energies.size(); ++i) {
      table.rows.push_back({static_cast<double>(s), static_cast<double>(i),
                            sp.energies[i]});
    }
  }
  write_table(table, a.out, a.format);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Spectral form factors, symbolic unitary twirls, and quantum-chaos "
      "probes with Monte Carlo cross-checks"};
  app.require_subcommand(1);

  FormFactorArgs ff;
  CLI::App* cff = app.add_subcommand("formfactor",
                                     "Analytic form-factor curves, optionally "
                                     "with Monte Carlo columns");
  cff->add_option("--ensemble", ff.ensemble, "gue|gde|poisson|wd-goe|wd-gue");
  cff->add_option("--d", ff.d, "Hilbert space dimension");
  cff->add_option("--quantity", ff.quantity, "c2|c3|c4");
  cff->add_option("--tmin", ff.tmin, "log-grid start (t=0 always included)");
  cff->add_option("--tmax", ff.tmax, "log-grid end (default 10 d)");
  cff->add_option("--points", ff.points, "grid points");
  cff->add_option("--mc", ff.mc, "Monte Carlo spectra to average");
  cff->add_option("--seed", ff.seed, "RNG seed");
  cff->add_option("--out", ff.out, "output path");
  cff->add_option("--format", ff.format, "csv|json");
  cff->add_flag("--plot", ff.plot, "emit a gnuplot script next to the CSV");

  ProbeArgs pr;
  CLI::App* cpr =
      app.add_subcommand("probe", "Closed-form probe curves per ensemble");
  // --help only: the short -h would shadow the battery parameter --h.
  cpr->set_help_flag("--help", "print help");
  cpr->add_option("name", pr.probe, "probe name")->required();
  cpr->add_option("--ensembles", pr.ensembles, "comma-separated ensembles")
      ->delimiter(',');
  cpr->add_option("--d", pr.d, "Hilbert space dimension");
  cpr->add_option("--tmin", pr.tmin, "log-grid start");
  cpr->add_option("--tmax", pr.tmax, "log-grid end (default 10 d)");
  cpr->add_option("--points", pr.points, "grid points");
  cpr->add_option("--seed", pr.seed, "RNG seed");
  cpr->add_option("--out", pr.out, "output path");
  cpr->add_option("--format", pr.format, "csv|json");
  cpr->add_flag("--plot", pr.plot, "emit a gnuplot script next to the CSV");
  cpr->add_option("--da", pr.scene.dA, "dimension of subsystem A");
  cpr->add_option("--db", pr.scene.dB, "dimension of subsystem B");
  cpr->add_option("--dc", pr.scene.dC, "dimension of output block C");
  cpr->add_option("--dd", pr.scene.dD, "dimension of output block D");
  cpr->add_option("--purity", pr.scene.purity_psi, "purity of the full state");
  cpr->add_option("--purity-a", pr.scene.purity_A, "purity of marginal A");
  cpr->add_option("--purity-b", pr.scene.purity_B, "purity of marginal B");
  cpr->add_option("--deph-purity", pr.scene.deph_purity,
                  "purity of the dephased state");
  cpr->add_option("--h", pr.scene.h,
                  "battery parameter h = 4 E0 E_HT / spectral variance");
  cpr->add_option("--beta-eps", pr.scene.beta_eps,
                  "free-energy trade-off parameter");
  cpr->add_option("--eta", pr.scene.eta, "WYD interpolation exponent");

  VerifyArgs vf;
  CLI::App* cvf = app.add_subcommand("verify", "Run a verification suite");
  cvf->add_option("suite", vf.suite,
                  "weingarten|twirl-mc|formfactor-mc|probe-oracle|typicality")
      ->required();
  cvf->add_option("--d", vf.d, "restrict to one dimension");
  cvf->add_option("--k", vf.k, "restrict twirl order (twirl-mc)");
  cvf->add_option("--samples", vf.samples, "Monte Carlo samples");
  cvf->add_option("--seed", vf.seed, "RNG seed");
  cvf->add_option("--out", vf.out, "JSON report path");

  FitDecayArgs fd;
  CLI::App* cfd = app.add_subcommand(
      "fit-decay", "Fit TMI fluctuation decay times t = a + b log d");
  cfd->add_option("--ensemble", fd.ensemble, "spectral ensemble");
  cfd->add_option("--ds", fd.ds, "comma-separated dimensions (>= 4 values)")
      ->delimiter(',');
  cfd->add_option("--threshold", fd.threshold,
                  "oscillation amplitude cutoff, relative");
  cfd->add_option("--points", fd.points, "grid points per curve");
  cfd->add_option("--out", fd.out, "output path");
  cfd->add_option("--format", fd.format, "csv|json");

  SampleArgs sm;
  CLI::App* csm = app.add_subcommand("sample", "Write sampled spectra");
  csm->add_option("--ensemble", sm.ensemble, "spectral ensemble");
  csm->add_option("--d", sm.d, "Hilbert space dimension");
  csm->add_option("--samples", sm.samples, "number of spectra");
  csm->add_option("--seed", sm.seed, "RNG seed");
  csm->add_option("--out", sm.out, "output path");
  csm->add_option("--format", sm.format, "csv|json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (cff->parsed()) return run_formfactor(ff);
    if (cpr->parsed()) return run_probe(pr);
    if (cvf->parsed()) return run_verify(vf);
    if (cfd->parsed()) return run_fit_decay(fd);
    if (csm->parsed()) return run_sample(sm);
  } catch (const std::runtime_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
