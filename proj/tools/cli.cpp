#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "geoch/diagnostics.hpp"
#include "geoch/errors.hpp"
#include "geoch/eulerian.hpp"
#include "geoch/io.hpp"
#include "geoch/lagrangian.hpp"
#include "geoch/peakon.hpp"

namespace geoch::cli {
namespace fs = std::filesystem;

namespace {

struct Settings {
  std::string metric = "h1-right";
  std::size_t n = 256;
  double length = kTwoPi;
  double dt = 1e-3;
  double t_final = 1.0;
  std::string scheme = "rk4";
  std::string ic = "cosine";
  double amp = 1.0;
  int mode = 1;
  double center = 0.0;
  double width = 0.0;
  std::string out;
  std::string run_id;
  std::uint64_t seed = 7;
  bool dealias = true;
  std::size_t snapshots = 10;
  std::string form = "integral";
  double tail_tol = kDefaultTailTolerance;
  double relabel = 0.0;
  std::size_t peakons = 1;
  std::string p_list;
  std::string q_list;
  std::string domain = "line";
  std::size_t trials = 100;
  std::string dts;
  std::string ns;
  std::vector<std::string> inputs;
  double tol = 0.0;
  std::string config;
};

// Options present on the command line or in the config file.
struct Given {
  const CLI::App* sub = nullptr;
  bool has(const std::string& name) const { return sub->count("--" + name) > 0; }
};

void add_common(CLI::App& app, Settings& s) {
  app.add_option("--config", s.config, "key = value file; flags override it");
  app.add_option("--out", s.out, "output root (default $GEOCH_OUT_DIR or .)");
  app.add_option("--run-id", s.run_id, "output subdirectory name");
}

void add_grid(CLI::App& app, Settings& s) {
  app.add_option("--n", s.n, "grid points (power of two >= 8)");
  app.add_option("--L", s.length, "circumference");
}

void add_time(CLI::App& app, Settings& s) {
  app.add_option("--dt", s.dt, "time step");
  app.add_option("--t-final", s.t_final, "final time");
  app.add_option("--scheme", s.scheme, "rk4 | euler");
}

void add_model(CLI::App& app, Settings& s) {
  app.add_option("--metric", s.metric, "h1-right | l2-right | l2-flat");
  app.add_option("--ic", s.ic, "cosine | sine | two-cosine | gaussian | smoothed-peakon");
  app.add_option("--amp", s.amp, "initial amplitude");
  app.add_option("--mode", s.mode, "initial wavenumber multiple");
  app.add_option("--center", s.center, "bump center (default L/2)");
  app.add_option("--width", s.width, "bump width");
  app.add_option("--dealias", s.dealias, "3/2-rule products (true | false)");
  app.add_option("--tail-tol", s.tail_tol, "spectral tail fraction that counts as blow-up");
}

// Strict comma-separated list of numbers.
std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    try {
      out.push_back(io::parse_double(item));
    } catch (const ValidationError&) {
      throw ValidationError(std::string("bad entry '") + item + "' in --" + what);
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

MetricKind metric_of(const Settings& s) {
  const auto k = parse_metric_kind(s.metric);
  if (!k) throw ValidationError("unknown metric '" + s.metric + "' (h1-right, l2-right, l2-flat)");
  return *k;
}

Scheme scheme_of(const Settings& s) {
  const auto k = parse_scheme(s.scheme);
  if (!k) throw ValidationError("unknown scheme '" + s.scheme + "' (rk4, euler)");
  return *k;
}

InitialCondition ic_of(const Settings& s, const Given& g) {
  InitialCondition ic{s.ic, s.amp, s.mode, std::nullopt, std::nullopt};
  if (g.has("center")) ic.center = s.center;
  if (g.has("width")) ic.width = s.width;
  validate(ic);
  return ic;
}

ProductRule rule_of(const Settings& s) { return s.dealias ? ProductRule::dealias_3_2 : ProductRule::pointwise; }

StepOptions steps_of(const Settings& s) {
  StepOptions o{s.dt, s.t_final, scheme_of(s), 1};
  validate(o);
  return o;
}

fs::path run_dir(const Settings& s, const std::string& fallback_id) {
  fs::path root = s.out;
  if (root.empty()) {
    const char* env = std::getenv("GEOCH_OUT_DIR");
    root = env && *env ? fs::path(env) : fs::path(".");
  }
  const fs::path dir = root / (s.run_id.empty() ? fallback_id : s.run_id);
  fs::create_directories(dir);
  return dir;
}

std::string indexed(const char* stem, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s_%04zu.csv", stem, i);
  return buf;
}

// Every stride-th sample plus the last one.
std::vector<std::size_t> snapshot_indices(std::size_t samples, std::size_t wanted) {
  std::vector<std::size_t> idx;
  if (samples == 0) return idx;
  const std::size_t stride = std::max<std::size_t>(1, (samples - 1) / std::max<std::size_t>(wanted, 1));
  for (std::size_t i = 0; i < samples; i += stride) idx.push_back(i);
  if (idx.back() != samples - 1) idx.push_back(samples - 1);
  return idx;
}

void write_report_file(const fs::path& dir, const RunReport& rep) {
  std::ofstream f(dir / "report.txt", std::ios::binary);
  io::write_report(f, rep);
}

int exit_for(const RunStatus& st) {
  switch (st.kind) {
    case Termination::completed:
      return kOk;
    case Termination::blowup:
      return kBlowup;
    case Termination::diffeo_loss:
      return kDiffeoLoss;
  }
  return kInternal;
}

void print_status(std::ostream& out, const RunReport& rep, const fs::path& dir) {
  out << "status: " << to_string(rep.status.kind) << '\n';
  out << "last_valid_time: " << io::format_double(rep.status.last_valid_time) << '\n';
  if (!rep.status.message.empty()) out << "message: " << rep.status.message << '\n';
  out << "energy_relative_drift: " << io::format_double(relative_drift(rep.energy)) << '\n';
  out << "mean_momentum_drift: " << io::format_double(absolute_drift(rep.mean_momentum)) << '\n';
  for (const auto& [k, v] : rep.residuals) out << k << ": " << io::format_double(v) << '\n';
  out << "output: " << dir.string() << '\n';
}

int run_euler(const Settings& s, const Given& g, std::ostream& out) {
  const MetricKind kind = metric_of(s);
  const Grid grid(s.n, s.length);
  const InitialCondition ic = ic_of(s, g);
  const StepOptions opts = steps_of(s);
  EulerianModel model{equation_for(kind), rule_of(s)};
  if (s.form == "explicit") {
    if (kind != MetricKind::H1RightInvariant) throw ValidationError("--form explicit needs --metric h1-right");
    model.equation = EulerianEquation::camassa_holm_explicit;
  } else if (s.form != "integral") {
    throw ValidationError("unknown form '" + s.form + "' (integral, explicit)");
  }

  const auto traj = integrate(make_initial_field(ic, grid), model, opts, s.tail_tol);
  const std::string id = "euler-" + s.metric + "-" + s.ic + "-n" + std::to_string(s.n);
  const RunReport rep = make_report(s.run_id.empty() ? id : s.run_id, kind, s.dt, traj);
  const fs::path dir = run_dir(s, id);
  std::size_t k = 0;
  for (std::size_t i : snapshot_indices(traj.times.size(), s.snapshots)) {
    io::write_snapshot_file(dir / indexed("snap", k++), io::eulerian_snapshot(traj.times[i], traj.states[i]));
  }
  write_report_file(dir, rep);
  print_status(out, rep, dir);
  return exit_for(rep.status);
}

int run_lagrange(const Settings& s, const Given& g, std::ostream& out) {
  const MetricKind kind = metric_of(s);
  const Grid grid(s.n, s.length);
  const InitialCondition ic = ic_of(s, g);
  const StepOptions opts = steps_of(s);
  const double k = kTwoPi / s.length;
  if (!(std::abs(s.relabel) * k < 1.0)) {
    throw ValidationError("--relabel must satisfy |relabel| * 2 pi / L < 1 to stay a diffeomorphism");
  }
  const auto profile = initial_profile(ic, s.length);
  const double eps = s.relabel;
  const DiffeoState s0 =
      eps == 0.0 ? DiffeoState::at_identity(make_initial_field(ic, grid))
                 : DiffeoState::from_functions(grid, [=](double x) { return x + eps * std::sin(k * x); }, profile);

  const auto traj = integrate_geodesic(s0, kind, opts, rule_of(s));
  const auto rec = reconstruct_eulerian(traj);
  const std::string id = "lagrange-" + s.metric + "-" + s.ic + "-n" + std::to_string(s.n);
  RunReport rep = make_report(s.run_id.empty() ? id : s.run_id, kind, s.dt, rec);
  std::vector<double> label_speed;
  double velocity_drift = 0.0;
  for (const auto& st : traj.states) {
    const Field v(grid, st.velocity());
    label_speed.push_back(quadrature(multiply(v, v)));
    for (std::size_t j = 0; j < grid.n(); ++j) {
      velocity_drift = std::max(velocity_drift, std::abs(st.velocity()[j] - s0.velocity()[j]));
    }
  }
  rep.residuals["label_speed_drift"] = relative_drift(label_speed);
  rep.residuals["velocity_drift"] = velocity_drift;

  const fs::path dir = run_dir(s, id);
  std::size_t n = 0;
  for (std::size_t i : snapshot_indices(traj.times.size(), s.snapshots)) {
    io::write_snapshot_file(dir / indexed("lag", n), io::lagrangian_snapshot(traj.times[i], traj.states[i]));
    io::write_snapshot_file(dir / indexed("snap", n), io::eulerian_snapshot(rec.times[i], rec.states[i]));
    ++n;
  }
  write_report_file(dir, rep);
  print_status(out, rep, dir);
  return exit_for(rep.status);
}

int run_peakon(const Settings& s, std::ostream& out) {
  if (s.peakons == 0) throw ValidationError("--N must be at least 1");
  PeakonDomain domain;
  if (s.domain == "circle") {
    domain = PeakonDomain::circle(s.length);
  } else if (s.domain != "line") {
    throw ValidationError("unknown domain '" + s.domain + "' (line, circle)");
  }
  PeakonState st{{}, {}, domain};
  const std::vector<double> p = s.p_list.empty() ? std::vector<double>{1.0} : parse_list(s.p_list, "p");
  if (p.size() != 1 && p.size() != s.peakons) throw ValidationError("--p needs one value or N values");
  st.p = p.size() == 1 ? std::vector<double>(s.peakons, p[0]) : p;
  if (s.q_list.empty()) {
    const double gap = domain.is_circle() ? s.length / static_cast<double>(s.peakons) : 10.0;
    for (std::size_t i = 0; i < s.peakons; ++i) st.q.push_back(gap * static_cast<double>(i));
  } else {
    st.q = parse_list(s.q_list, "q");
    if (st.q.size() != s.peakons) throw ValidationError("--q needs N values");
  }
  validate(st);
  const StepOptions opts = steps_of(s);

  const auto traj = integrate_peakons(st, opts);
  const fs::path dir = run_dir(s, "peakon-" + s.domain + "-N" + std::to_string(s.peakons));
  {
    std::ofstream f(dir / "peakons.csv", std::ios::binary);
    io::write_peakon_csv(f, traj);
  }
  std::vector<double> h;
  for (const auto& x : traj.states) h.push_back(peakon_hamiltonian(x));
  const auto& last = traj.states.back();
  out << "status: " << to_string(traj.status.kind) << '\n';
  out << "t: " << io::format_double(traj.times.back()) << '\n';
  for (std::size_t i = 0; i < last.size(); ++i) {
    out << "q" << i << ": " << io::format_double(last.q[i]) << '\n';
    out << "p" << i << ": " << io::format_double(last.p[i]) << '\n';
  }
  out << "hamiltonian_relative_drift: " << io::format_double(relative_drift(h)) << '\n';
  out << "output: " << dir.string() << '\n';
  return exit_for(traj.status);
}

int run_check(const Settings& s, std::ostream& out) {
  const Grid grid(s.n, s.length);
  struct Limit {
    const char* name;
    double IdentityReport::*field;
    double tol;
  };
  const Limit limits[] = {
      {"adjoint_residual", &IdentityReport::max_adjoint_residual, 1e-10},
      {"form_difference", &IdentityReport::max_form_difference, 1e-11},
      {"helmholtz_roundtrip", &IdentityReport::max_helmholtz_roundtrip, 1e-12},
      {"antisymmetry", &IdentityReport::max_antisymmetry, 1e-12},
      {"jacobi", &IdentityReport::max_jacobi, 1e-10},
  };
  bool pass = true;
  out << "n: " << s.n << "  trials: " << s.trials << "  seed: " << s.seed << '\n';
  for (ProductRule rule : {ProductRule::pointwise, ProductRule::dealias_3_2}) {
    const IdentityReport r = identity_suite(grid, s.trials, s.seed, rule);
    out << (rule == ProductRule::pointwise ? "[pointwise]" : "[dealias]") << '\n';
    for (const auto& l : limits) {
      const double v = r.*(l.field);
      const bool ok = v <= l.tol;
      pass = pass && ok;
      out << "  " << l.name << ": " << io::format_double(v) << " (tol " << io::format_double(l.tol) << ") "
          << (ok ? "ok" : "FAIL") << '\n';
    }
  }
  out << (pass ? "PASS" : "FAIL") << '\n';
  return pass ? kOk : kToleranceFailure;
}

int run_converge(const Settings& s, const Given& g, std::ostream& out) {
  ConvergenceProblem p;
  p.ic = ic_of(s, g);
  p.model = EulerianModel{equation_for(metric_of(s)), rule_of(s)};
  p.n = g.has("n") ? s.n : 64;
  p.length = s.length;
  p.t_final = g.has("t-final") ? s.t_final : 0.5;
  p.scheme = scheme_of(s);
  p.dt = s.dt;
  if (s.dts.empty() == s.ns.empty()) throw ValidationError("converge needs exactly one of --dts and --ns");

  ConvergenceResult r;
  bool pass = false;
  if (!s.dts.empty()) {
    r = temporal_convergence(p, parse_list(s.dts, "dts"));
    const double expected = p.scheme == Scheme::rk4 ? 4.0 : 1.0;
    pass = std::abs(r.observed_order - expected) <= 0.2;
    out << "temporal convergence, reference dt=" << io::format_double(r.reference) << ", expected order "
        << expected << " +- 0.2\n";
    out << "dt,max_error\n";
  } else {
    std::vector<std::size_t> ns;
    for (double v : parse_list(s.ns, "ns")) {
      if (!(v >= 8.0) || v != std::floor(v)) throw ValidationError("--ns entries must be grid sizes");
      ns.push_back(static_cast<std::size_t>(v));
    }
    r = spatial_convergence(p, ns);
    pass = r.errors.back() <= 1e-10;
    out << "spatial convergence, reference n=" << r.reference << ", plateau tolerance 1e-10\n";
    out << "n,max_error\n";
  }
  for (std::size_t i = 0; i < r.errors.size(); ++i) {
    out << io::format_double(r.resolutions[i]) << ',' << io::format_double(r.errors[i]) << '\n';
  }
  out << "observed_order: " << io::format_double(r.observed_order) << '\n';
  if (!r.monotone) out << "warning: errors do not decrease monotonically\n";
  out << (pass ? "PASS" : "FAIL") << '\n';
  return pass ? kOk : kToleranceFailure;
}

std::vector<fs::path> snapshot_files(const fs::path& p) {
  if (fs::is_regular_file(p)) return {p};
  if (!fs::is_directory(p)) throw ValidationError("no such file or directory: " + p.string());
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(p)) {
    const std::string name = e.path().filename().string();
    if (e.is_regular_file() && name.rfind("snap_", 0) == 0 && e.path().extension() == ".csv") {
      files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw ValidationError("no snap_*.csv files in " + p.string());
  return files;
}

EulerianTrajectory load_series(const std::vector<fs::path>& files) {
  EulerianTrajectory t;
  for (const auto& f : files) {
    const auto snap = io::read_snapshot_file(f);
    t.times.push_back(snap.t);
    t.states.push_back(io::field_from_snapshot(snap));
  }
  return t;
}

int run_compare(const Settings& s, const Given& g, std::ostream& out) {
  if (s.inputs.size() != 2) throw ValidationError("compare needs two snapshot files or run directories");
  const auto a = load_series(snapshot_files(s.inputs[0]));
  const auto b = load_series(snapshot_files(s.inputs[1]));
  const ErrorSeries e = compare_trajectories(a, b);
  out << "t,max_error,l2_error\n";
  double worst = 0.0;
  for (std::size_t i = 0; i < e.times.size(); ++i) {
    out << io::format_double(e.times[i]) << ',' << io::format_double(e.max_error[i]) << ','
        << io::format_double(e.l2_error[i]) << '\n';
    worst = std::max(worst, e.max_error[i]);
  }
  if (!g.has("tol")) return kOk;
  const bool pass = worst <= s.tol;
  out << (pass ? "PASS" : "FAIL") << " max_error " << io::format_double(worst) << " vs tol "
      << io::format_double(s.tol) << '\n';
  return pass ? kOk : kToleranceFailure;
}

// Config entries go right after the subcommand so later command-line flags win.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw ValidationError("--config needs a file");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (path.empty()) return rest;
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file " + path);
  std::vector<std::string> injected;
  for (const auto& [key, value] : io::read_config(in)) {
    if (key == "config") throw ValidationError("config files cannot include other config files");
    injected.push_back("--" + key + "=" + value);
  }
  const auto at = rest.empty() || rest.front().rfind('-', 0) == 0 ? rest.begin() : rest.begin() + 1;
  rest.insert(at, injected.begin(), injected.end());
  return rest;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  Settings s;
  Given g;
  CLI::App app{"Geodesic Camassa-Holm solvers on the circle diffeomorphism group", "geoch"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  auto* euler = app.add_subcommand("run-euler", "Eulerian method-of-lines run");
  auto* lagrange = app.add_subcommand("run-lagrange", "geodesic run on the diffeomorphism group");
  auto* peakon = app.add_subcommand("run-peakon", "N-peakon ODE run");
  auto* check = app.add_subcommand("check", "operator identity residuals on random fields");
  auto* converge = app.add_subcommand("converge", "temporal or spatial convergence table");
  auto* compare = app.add_subcommand("compare", "error series between two snapshot sets");

  for (auto* sub : {euler, lagrange}) {
    add_common(*sub, s);
    add_grid(*sub, s);
    add_time(*sub, s);
    add_model(*sub, s);
    sub->add_option("--snapshots", s.snapshots, "snapshot intervals to write");
  }
  euler->add_option("--form", s.form, "integral | explicit CH right-hand side");
  lagrange->add_option("--relabel", s.relabel, "start from (phi, u0 o phi), phi = X + relabel sin(kX)");

  add_common(*peakon, s);
  add_time(*peakon, s);
  peakon->add_option("--N", s.peakons, "number of peakons");
  peakon->add_option("--p", s.p_list, "momenta, one value or N comma-separated");
  peakon->add_option("--q", s.q_list, "positions, N comma-separated");
  peakon->add_option("--domain", s.domain, "line | circle");
  peakon->add_option("--L", s.length, "circumference of the circle domain");

  add_common(*check, s);
  add_grid(*check, s);
  check->add_option("--trials", s.trials, "random triples");
  check->add_option("--seed", s.seed, "random seed");

  add_common(*converge, s);
  add_grid(*converge, s);
  add_time(*converge, s);
  add_model(*converge, s);
  converge->add_option("--dts", s.dts, "comma-separated time steps (temporal study)");
  converge->add_option("--ns", s.ns, "comma-separated grid sizes (spatial study)");

  add_common(*compare, s);
  compare->add_option("inputs", s.inputs, "two snapshot files or run directories")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
      ->expected(2);
  compare->add_option("--tol", s.tol, "fail (exit 5) above this max-norm error");

  try {
    std::vector<std::string> args = expand_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }

  for (const auto* sub : app.get_subcommands()) g.sub = sub;
  try {
    if (*euler) return run_euler(s, g, out);
    if (*lagrange) return run_lagrange(s, g, out);
    if (*peakon) return run_peakon(s, out);
    if (*check) return run_check(s, out);
    if (*converge) return run_converge(s, g, out);
    if (*compare) return run_compare(s, g, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const DiffeoLoss& e) {
    err << "diffeomorphism lost: " << e.what() << '\n';
    return kDiffeoLoss;
  } catch (const NonFiniteValue& e) {
    err << "blow-up: " << e.what() << '\n';
    return kBlowup;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}

}  // namespace geoch::cli
