// qws-lab: command-line front end for the waveguide scattering laboratory.
//
// Every subcommand writes its artifacts into --out and finishes with a
// manifest.json recording the inputs, the achieved tolerances and the SHA-256
// of every artifact. Identical inputs give byte-identical artifacts.
//
// Exit codes: 0 success, 2 scenario error, 3 solver error, 4 tolerance
// failure.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include "qws/errors.hpp"
#include "qws/fock.hpp"
#include "qws/gaussian.hpp"
#include "qws/gws.hpp"
#include "qws/io.hpp"
#include "qws/landscape.hpp"
#include "qws/leads.hpp"
#include "qws/manifest.hpp"
#include "qws/manip.hpp"
#include "qws/metrology.hpp"
#include "qws/scattering.hpp"
#include "qws/scenario.hpp"
#include "qws/vacuum.hpp"

namespace {

using namespace qws;
namespace fs = std::filesystem;

ThetaKind parse_theta(const std::string& s) {
  if (s == "x") return ThetaKind::TargetX;
  if (s == "y") return ThetaKind::TargetY;
  if (s == "omega") return ThetaKind::Frequency;
  throw ScenarioError("theta must be one of x, y, omega (got '" + s + "')");
}

std::vector<double> linspace(double a, double b, int n) {
  if (n < 2) throw ScenarioError("band needs at least two samples");
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

// Band syntax "lo:hi:count" in units of pi/W (the same units as the
// scenario's wavenumber parameter).
std::vector<double> parse_band(const std::string& spec, double width) {
  double lo = 0, hi = 0;
  int count = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%d", &lo, &hi, &count) != 3)
    throw ScenarioError("band must be lo:hi:count (in units of pi/W)");
  if (!(lo > 0) || !(hi > lo) || count < 2)
    throw ScenarioError("band must satisfy 0 < lo < hi with count >= 2");
  const double scale = std::numbers::pi / width;
  return linspace(lo * scale, hi * scale, count);
}

struct RunContext {
  RunManifest man;
  fs::path out;
  std::chrono::steady_clock::time_point t0;

  RunContext(const std::string& command, const std::string& out_dir,
             const std::vector<std::string>& args) {
    man.command = command;
    man.arguments = args;
    man.out_dir = out_dir;
    out = out_dir;
    fs::create_directories(out);
    t0 = std::chrono::steady_clock::now();
  }

  void attach_scenario(const std::string& path) {
    man.scenario_path = path;
    man.scenario_sha256 = sha256_file(path);
  }

  std::string file(const std::string& name) const { return (out / name).string(); }

  void add(const std::string& name) { man.add_artifact(file(name)); }

  void finish() {
    man.wall_seconds = std::chrono::duration<double>(
        std::chrono::steady_clock::now() - t0).count();
    man.write(file("manifest.json"));
  }
};

// Options shared by the scenario-consuming subcommands.
struct ScenarioArgs {
  std::string scenario;
  std::string out;
  std::string theta;  // empty keeps the scenario's own kind
  double step = 0.0;
  int resolution = 0;
  bool richardson = false;

  void attach(CLI::App* cmd, bool with_gws = true) {
    cmd->add_option("--scenario", scenario, "scenario JSON file")
        ->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", out, "output directory")->required();
    cmd->add_option("--resolution", resolution,
                    "override the scenario's grid resolution");
    if (with_gws) {
      cmd->add_option("--theta", theta,
                      "parameter: x, y or omega (default: scenario's)");
      cmd->add_option("--step", step,
                      "finite-difference step (0 = kind default)");
      cmd->add_flag("--richardson", richardson,
                    "combine steps h and 2h: (4 Q_h - Q_2h)/3");
    }
  }

  Scenario load() const {
    Scenario sc = load_scenario(scenario);
    if (resolution > 0) sc.grid_resolution = resolution;
    if (!theta.empty()) sc.theta.kind = parse_theta(theta);
    sc.validate();
    return sc;
  }

  GwsOptions gws_options() const {
    GwsOptions opt;
    opt.step = step;
    opt.richardson = richardson;
    return opt;
  }
};

void write_channels_csv(const std::string& path, const LeadBasis& lead,
                        double length) {
  std::vector<double> m, kx, kx_cont, flux, delay;
  for (const auto& mode : lead.modes) {
    if (!mode.open) continue;
    m.push_back(mode.m);
    kx.push_back(mode.kx.real());
    kx_cont.push_back(mode.kx_continuum.real());
    flux.push_back(mode.flux);
    delay.push_back(discrete_group_delay(mode, lead.h, lead.k, length));
  }
  write_columns_csv(path, {"m", "kx", "kx_continuum", "flux", "group_delay"},
                    {m, kx, kx_cont, flux, delay});
}

void run_make_scenario(const std::string& out_dir, const std::string& name,
                       std::uint64_t seed, int resolution, double k,
                       int disks, double width, double length, bool empty,
                       const std::string& theta,
                       const std::vector<std::string>& args) {
  RunContext ctx("make-scenario", out_dir, args);
  Scenario sc = empty
      ? make_empty_scenario(width, length, k, resolution)
      : make_disordered_scenario(seed, resolution, width, length, k, disks);
  if (!theta.empty()) sc.theta.kind = parse_theta(theta);
  ctx.man.seed = empty ? 0 : seed;
  save_scenario(sc, ctx.file(name));
  ctx.add(name);
  ctx.finish();
}

void run_smatrix(const ScenarioArgs& a, double tol,
                 const std::vector<std::string>& args) {
  RunContext ctx("smatrix", a.out, args);
  ctx.attach_scenario(a.scenario);
  const Scenario sc = a.load();
  ctx.man.seed = sc.seed;
  const ScatteringMatrix sm = solve_scenario(sc);
  const LeadBasis lead =
      lead_modes(sc.wavenumber(), sc.width, sc.grid_resolution);

  write_matrix_csv(ctx.file("smatrix.csv"), sm.s);
  write_channels_csv(ctx.file("channels.csv"), lead, sc.length);
  ctx.add("smatrix.csv");
  ctx.add("channels.csv");
  ctx.man.tolerances["unitarity_defect"] = sm.unitarity_defect;
  ctx.man.tolerances["reciprocity_defect"] = sm.reciprocity_defect;
  ctx.man.tolerances["n_open"] = sm.n_open;
  ctx.finish();
  if (sm.unitarity_defect > tol || sm.reciprocity_defect > tol)
    throw ToleranceError("smatrix: defects exceed " + format_g17(tol));
}

void run_gws(const ScenarioArgs& a, const std::vector<std::string>& args) {
  RunContext ctx("gws", a.out, args);
  ctx.attach_scenario(a.scenario);
  const Scenario sc = a.load();
  ctx.man.seed = sc.seed;
  const GwsMatrix q = gws_matrix(sc, a.gws_options());
  const GwsEigenSystem es = eigendecompose(q);

  write_matrix_csv(ctx.file("gws.csv"), q.q);
  write_vector_csv(ctx.file("eigenvalues.csv"), es.eigenvalues, "lambda");
  ctx.add("gws.csv");
  ctx.add("eigenvalues.csv");
  ctx.man.tolerances["hermiticity_defect"] = q.hermiticity_defect;
  ctx.man.tolerances["step"] = q.step;
  ctx.man.tolerances["trace"] = q.q.real().trace();
  ctx.man.tolerances["lambda_max"] = es.eigenvalues(0);
  ctx.man.tolerances["lambda_min"] =
      es.eigenvalues(es.eigenvalues.size() - 1);
  ctx.finish();
}

void write_intensity(RunContext& ctx, const std::string& stem,
                     const Eigen::MatrixXd& grid, bool png) {
  write_grid_csv(ctx.file(stem + ".csv"), grid);
  ctx.add(stem + ".csv");
  if (png) {
    write_grayscale_png(ctx.file(stem + ".png"), grid);
    ctx.add(stem + ".png");
  }
}

void run_eigenstate_maps(const ScenarioArgs& a, const std::string& which,
                         bool png, const std::vector<std::string>& args) {
  RunContext ctx("eigenstate-maps", a.out, args);
  ctx.attach_scenario(a.scenario);
  const Scenario sc = a.load();
  ctx.man.seed = sc.seed;
  const GwsMatrix q = gws_matrix(sc, a.gws_options());
  const GwsEigenSystem es = eigendecompose(q);
  int pick = es.i_max;
  if (which == "min") pick = es.i_min;
  else if (which == "hav") pick = es.i_hav;
  else if (which != "max")
    throw ScenarioError("--which must be max, min or hav");

  const IndexLandscape land = build_landscape(sc);
  const LeadBasis lead =
      lead_modes(sc.wavenumber(), sc.width, sc.grid_resolution);
  const FieldMap f = scattering_field(land, lead, es.w.col(pick));

  write_vector_csv(ctx.file("eigenvalues.csv"), es.eigenvalues, "lambda");
  ctx.add("eigenvalues.csv");
  write_intensity(ctx, "field_" + which, f.psi.cwiseAbs2(), png);
  ctx.man.tolerances["eigenvalue"] = es.eigenvalues(pick);
  ctx.man.tolerances["channel"] = pick;
  ctx.finish();
}

void run_noon_maps(const ScenarioArgs& a, bool png,
                   const std::vector<std::string>& args) {
  RunContext ctx("noon-maps", a.out, args);
  ctx.attach_scenario(a.scenario);
  const Scenario sc = a.load();
  ctx.man.seed = sc.seed;
  const GwsMatrix q = gws_matrix(sc, a.gws_options());
  const GwsEigenSystem es = eigendecompose(q);

  const IndexLandscape land = build_landscape(sc);
  const LeadBasis lead =
      lead_modes(sc.wavenumber(), sc.width, sc.grid_resolution);
  const FieldMap fmax = scattering_field(land, lead, es.w.col(es.i_max));
  const FieldMap fmin = scattering_field(land, lead, es.w.col(es.i_min));

  write_vector_csv(ctx.file("eigenvalues.csv"), es.eigenvalues, "lambda");
  ctx.add("eigenvalues.csv");
  write_intensity(ctx, "field_max", fmax.psi.cwiseAbs2(), png);
  write_intensity(ctx, "field_min", fmin.psi.cwiseAbs2(), png);
  // Balanced superposition of the two extremal eigenstates: the intensity
  // pattern addressed by the two-branch interferometric probe.
  write_intensity(ctx, "field_noon",
                  0.5 * (fmax.psi + fmin.psi).cwiseAbs2(), png);
  ctx.man.tolerances["lambda_max"] = es.eigenvalues(es.i_max);
  ctx.man.tolerances["lambda_min"] = es.eigenvalues(es.i_min);
  ctx.finish();
}

void run_krein(const ScenarioArgs& a, double tol,
               const std::vector<std::string>& args) {
  RunContext ctx("krein", a.out, args);
  ctx.attach_scenario(a.scenario);
  const Scenario sc = a.load();
  ctx.man.seed = sc.seed;
  const KreinCheck kc = krein_check(sc, a.step);
  write_columns_csv(ctx.file("krein.csv"),
                    {"deta_dtheta", "trace_q", "relative_mismatch"},
                    {{kc.deta_dtheta}, {kc.trace_q}, {kc.relative_mismatch}});
  ctx.add("krein.csv");
  ctx.man.tolerances["deta_dtheta"] = kc.deta_dtheta;
  ctx.man.tolerances["trace_q"] = kc.trace_q;
  ctx.man.tolerances["relative_mismatch"] = kc.relative_mismatch;
  ctx.finish();
  if (tol > 0 && !(kc.relative_mismatch <= tol))
    throw ToleranceError("krein: relative mismatch " +
                         format_g17(kc.relative_mismatch) + " above " +
                         format_g17(tol));
}

void run_optimize_manip(const std::string& out_dir, double nu, double nu_max,
                        int count, const std::vector<std::string>& args) {
  RunContext ctx("optimize-manip", out_dir, args);
  const auto grid = log_integer_grid(1.0, nu_max, count);
  std::vector<double> col_nu, col_p, col_db, col_red, col_asym;
  for (double n : grid) {
    const double p = p_opt_closed(n);
    col_nu.push_back(n);
    col_p.push_back(p);
    col_db.push_back(20.0 * p / std::numbers::ln10);
    col_red.push_back(reduction_factor(n));
    col_asym.push_back(p_opt_asymptotic(n));
  }
  write_columns_csv(ctx.file("manip_table.csv"),
                    {"nu", "p_opt", "squeeze_db", "sigma_ratio", "p_asymptotic"},
                    {col_nu, col_p, col_db, col_red, col_asym});
  ctx.add("manip_table.csv");

  const double p = p_opt_closed(nu);
  ctx.man.tolerances["nu"] = nu;
  ctx.man.tolerances["p_opt"] = p;
  ctx.man.tolerances["squeeze_db"] = 20.0 * p / std::numbers::ln10;
  ctx.man.tolerances["sigma_ratio"] = reduction_factor(nu);
  ctx.finish();
}

void run_qfi(const ScenarioArgs& a, double nu, const std::string& probe,
             int repetitions, const std::vector<std::string>& args) {
  RunContext ctx("qfi", a.out, args);
  ctx.attach_scenario(a.scenario);
  const Scenario sc = a.load();
  ctx.man.seed = sc.seed;
  const GwsMatrix q = gws_matrix(sc, a.gws_options());
  const GwsEigenSystem es = eigendecompose(q);

  std::vector<QfiReport> reports;
  if (probe == "all" || probe == "coherent")
    reports.push_back(optimal_coherent_probe(es.eigenvalues, nu, repetitions));
  if (probe == "all" || probe == "gaussian")
    reports.push_back(optimal_gaussian_probe(es.eigenvalues, nu, repetitions));
  if (probe == "all" || probe == "noon")
    reports.push_back(optimal_noon_probe(
        es.eigenvalues, static_cast<int>(std::llround(nu)), repetitions));
  if (reports.empty())
    throw ScenarioError("--probe must be all, coherent, gaussian or noon");

  std::ofstream f(ctx.file("qfi.csv"), std::ios::binary);
  f << "probe,nu,qfi,repetitions,cramer_rao,channel,channel_min\n";
  for (const auto& r : reports) {
    f << r.probe << ',' << format_g17(r.mean_photons) << ','
      << format_g17(r.qfi) << ',' << r.repetitions << ','
      << format_g17(r.cramer_rao) << ',' << r.channel + 1 << ','
      << (r.channel_min >= 0 ? r.channel_min + 1 : 0) << '\n';
    ctx.man.tolerances["qfi_" + r.probe] = r.qfi;
  }
  f.close();
  if (!f) throw ToleranceError("qfi: cannot write qfi.csv");
  ctx.add("qfi.csv");
  write_vector_csv(ctx.file("eigenvalues.csv"), es.eigenvalues, "lambda");
  ctx.add("eigenvalues.csv");
  ctx.man.tolerances["popoviciu_4x"] = 4.0 * popoviciu_bound(es.eigenvalues, nu);
  ctx.finish();
}

void run_scaling(const ScenarioArgs& a, double nu_min, double nu_max,
                 int count, const std::vector<std::string>& args) {
  RunContext ctx("scaling", a.out, args);
  ctx.attach_scenario(a.scenario);
  const Scenario sc = a.load();
  ctx.man.seed = sc.seed;
  const GwsMatrix q = gws_matrix(sc, a.gws_options());
  const GwsEigenSystem es = eigendecompose(q);
  const ScalingTable table =
      scaling_experiment(es.eigenvalues, log_integer_grid(nu_min, nu_max, count));

  std::vector<double> col_nu, col_c, col_g, col_n;
  for (const auto& r : table.rows) {
    col_nu.push_back(r.nu);
    col_c.push_back(r.f_coherent);
    col_g.push_back(r.f_gaussian);
    col_n.push_back(r.f_noon);
  }
  write_columns_csv(ctx.file("scaling.csv"),
                    {"nu", "f_coherent", "f_gaussian", "f_noon"},
                    {col_nu, col_c, col_g, col_n});
  ctx.add("scaling.csv");
  ctx.man.tolerances["slope_coherent"] = table.slope_coherent;
  ctx.man.tolerances["slope_gaussian"] = table.slope_gaussian;
  ctx.man.tolerances["slope_noon"] = table.slope_noon;
  ctx.finish();
}

void run_vacuum_scan(const ScenarioArgs& a, const std::string& band,
                     double kappa, bool mirror,
                     const std::vector<std::string>& args) {
  RunContext ctx("vacuum-scan", a.out, args);
  ctx.attach_scenario(a.scenario);
  const Scenario sc = a.load();
  ctx.man.seed = sc.seed;
  const auto e_grid = parse_band(band, sc.width);

  auto scan_one = [&](const Scenario& s, const std::string& stem,
                      const std::string& suffix) {
    const VacuumScan scan = vacuum_force(s, e_grid, kappa, a.gws_options());
    write_columns_csv(ctx.file(stem + ".csv"),
                      {"e", "tr_q", "eta", "integrand"},
                      {scan.e, scan.tr_q, scan.eta, scan.integrand});
    ctx.add(stem + ".csv");
    ctx.man.tolerances["value" + suffix] = scan.value;
    ctx.man.tolerances["error_bar" + suffix] = scan.error_bar;
    ctx.man.tolerances["extrapolated" + suffix] = scan.extrapolated;
    return scan;
  };

  scan_one(sc, "vacuum", "");
  if (mirror) scan_one(mirror_scenario(sc), "vacuum_mirror", "_mirror");
  ctx.finish();
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  CLI::App app{"numerical laboratory for scattering response operators"};
  app.require_subcommand(1);

  // make-scenario
  auto* mk = app.add_subcommand("make-scenario", "generate a scenario file");
  std::string mk_out, mk_name = "scenario.json", mk_theta = "x";
  std::uint64_t mk_seed = 1;
  int mk_res = 100, mk_disks = 20;
  double mk_k = 20.5, mk_w = 1.0, mk_l = 1.0;
  bool mk_empty = false;
  mk->add_option("--out", mk_out, "output directory")->required();
  mk->add_option("--name", mk_name, "scenario file name");
  mk->add_option("--seed", mk_seed, "disk placement seed");
  mk->add_option("--resolution", mk_res, "grid points per width");
  mk->add_option("--k", mk_k, "wavenumber in units of pi/W");
  mk->add_option("--disks", mk_disks, "number of dielectric disks");
  mk->add_option("--width", mk_w, "waveguide width W");
  mk->add_option("--length", mk_l, "scattering region length L");
  mk->add_flag("--empty", mk_empty, "no scatterers at all");
  mk->add_option("--theta", mk_theta, "parameter kind: x, y or omega");

  // smatrix
  auto* sm = app.add_subcommand("smatrix", "scattering matrix and channels");
  ScenarioArgs sm_args;
  double sm_tol = 1e-8;
  sm_args.attach(sm, /*with_gws=*/false);
  sm->add_option("--tol", sm_tol, "defect threshold (exit 4 above it)");

  // gws
  auto* gw = app.add_subcommand("gws", "response operator and its spectrum");
  ScenarioArgs gw_args;
  gw_args.attach(gw);

  // eigenstate-maps
  auto* em = app.add_subcommand("eigenstate-maps",
                                "intensity map of an extremal eigenstate");
  ScenarioArgs em_args;
  std::string em_which = "max";
  bool em_png = false;
  em_args.attach(em);
  em->add_option("--which", em_which, "max, min or hav");
  em->add_flag("--png", em_png, "also write grayscale PNGs");

  // noon-maps
  auto* nm = app.add_subcommand("noon-maps",
                                "extremal pair and their balanced superposition");
  ScenarioArgs nm_args;
  bool nm_png = false;
  nm_args.attach(nm);
  nm->add_flag("--png", nm_png, "also write grayscale PNGs");

  // krein
  auto* kr = app.add_subcommand("krein",
                                "matched-sample phase-derivative identity");
  ScenarioArgs kr_args;
  double kr_tol = 0.0;
  kr_args.attach(kr);
  kr->add_option("--tol", kr_tol,
                 "relative-mismatch threshold (0 = report only)");

  // optimize-manip
  auto* om = app.add_subcommand("optimize-manip",
                                "variance-minimizing squeezed states");
  std::string om_out;
  double om_nu = 49.0, om_numax = 1e6;
  int om_count = 61;
  om->add_option("--out", om_out, "output directory")->required();
  om->add_option("--nu", om_nu, "photon number highlighted in the manifest");
  om->add_option("--nu-max", om_numax, "table upper end");
  om->add_option("--count", om_count, "table size");

  // qfi
  auto* qf = app.add_subcommand("qfi", "optimal-probe Fisher information");
  ScenarioArgs qf_args;
  double qf_nu = 10.0;
  int qf_reps = 1;
  std::string qf_probe = "all";
  qf_args.attach(qf);
  qf->add_option("--nu", qf_nu, "mean photon number");
  qf->add_option("--probe", qf_probe, "all, coherent, gaussian or noon");
  qf->add_option("--repetitions", qf_reps, "probe repetitions M");

  // scaling
  auto* sl = app.add_subcommand("scaling", "precision scaling with photon number");
  ScenarioArgs sl_args;
  double sl_min = 1.0, sl_max = 1e4;
  int sl_count = 25;
  sl_args.attach(sl);
  sl->add_option("--nu-min", sl_min, "grid lower end");
  sl->add_option("--nu-max", sl_max, "grid upper end");
  sl->add_option("--count", sl_count, "grid size");

  // vacuum-scan
  auto* vs = app.add_subcommand("vacuum-scan", "band-integrated vacuum force");
  ScenarioArgs vs_args;
  std::string vs_band;
  double vs_kappa = 0.1;
  bool vs_mirror = false;
  vs_args.attach(vs);
  vs->add_option("--band", vs_band, "band lo:hi:count in units of pi/W")
      ->required();
  vs->add_option("--kappa", vs_kappa, "spectral damping");
  vs->add_flag("--mirror", vs_mirror, "also scan the mirrored scenario");

  try {
    app.parse(argc, argv);
    if (mk->parsed())
      run_make_scenario(mk_out, mk_name, mk_seed, mk_res, mk_k, mk_disks,
                        mk_w, mk_l, mk_empty, mk_theta, args);
    else if (sm->parsed()) run_smatrix(sm_args, sm_tol, args);
    else if (gw->parsed()) run_gws(gw_args, args);
    else if (em->parsed()) run_eigenstate_maps(em_args, em_which, em_png, args);
    else if (nm->parsed()) run_noon_maps(nm_args, nm_png, args);
    else if (kr->parsed()) run_krein(kr_args, kr_tol, args);
    else if (om->parsed()) run_optimize_manip(om_out, om_nu, om_numax,
                                              om_count, args);
    else if (qf->parsed()) run_qfi(qf_args, qf_nu, qf_probe, qf_reps, args);
    else if (sl->parsed()) run_scaling(sl_args, sl_min, sl_max, sl_count, args);
    else if (vs->parsed()) run_vacuum_scan(vs_args, vs_band, vs_kappa,
                                           vs_mirror, args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ScenarioError& e) {
    std::fprintf(stderr, "scenario error: %s\n", e.what());
    return 2;
  } catch (const SolverError& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return 3;
  } catch (const ToleranceError& e) {
    std::fprintf(stderr, "tolerance failure: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
