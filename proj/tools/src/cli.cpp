#include "entgeo/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "entgeo/entgeo.hpp"

#ifndef ENTGEO_VERSION
#define ENTGEO_VERSION "unknown"
#endif

namespace entgeo::cli {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + num(v[i]);
  return s;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Output file with its `#` metadata header.
class Csv {
 public:
  Csv(const RunConfig& c, const std::string& eta, int ensemble_size) {
    body_ << "# entgeo " << ENTGEO_VERSION << " command=" << to_string(c.command) << " seed=" << c.seed
          << " eps=" << num(c.eps) << " eta=" << (eta.empty() ? "-" : eta) << " ensemble_size=" << ensemble_size
          << "\n";
    if (!c.no_timestamp) body_ << "# timestamp " << utc_timestamp() << "\n";
  }

  template <class... T>
  void row(const T&... fields) {
    bool first = true;
    ((body_ << (first ? "" : ",") << fields, first = false), ...);
    body_ << "\n";
  }

  std::string str() const { return body_.str(); }

 private:
  std::ostringstream body_;
};

void emit(const RunConfig& c, const std::string& default_name, const std::string& content, std::ostream& out) {
  if (default_name.empty() && c.output_path.empty()) {
    out << content;
    return;
  }
  write_text_atomic(c.output_path.empty() ? default_name : c.output_path, content);
}

std::string eta_text(const RunConfig& c) { return c.eta_spec.empty() ? join(c.eta_grid) : c.eta_spec; }

int ensemble_size(int d_a, int d_b) {
  return static_cast<int>(local_axis_states(d_a).size() * local_axis_states(d_b).size());
}

int run_fit(const RunConfig& c, std::ostream& out) {
  const SeparableModel model = fit_separable_mvce(c.d_a, c.d_b, c.eta_grid.front(), c.eps);
  const std::string path = c.output_path.empty() ? "ellipsoid.json" : c.output_path;
  write_model(path, model);
  out << "fitted " << c.d_a << "x" << c.d_b << " eta=" << num(model.eta) << " from " << model.ensemble_size
      << " generators, log det A^-1 = " << num(model.ellipsoid.log_det_inverse_shape()) << "\n";
  return kExitOk;
}

int run_classify(const RunConfig& c, std::ostream& out) {
  const DensityOperator rho = read_state(c.state_path);
  SeparableModel model = c.model_path.empty()
                             ? fit_separable_mvce(rho.dims().at(0), rho.dims().size() > 1 ? rho.dims()[1] : 1,
                                                  c.eta_grid.front(), c.eps)
                             : read_model(c.model_path);
  const Classification r = classify(rho, model);
  const PptResult ppt = is_ppt(rho);
  RunConfig meta = c;
  meta.eps = model.eps;
  Csv csv(meta, num(model.eta), model.ensemble_size);
  csv.row("label", "distance", "membership", "ppt");
  csv.row(to_string(r.label), num(r.distance), num(r.membership), ppt.ppt ? "true" : "false");
  emit(c, "", csv.str(), out);
  return kExitOk;
}

int run_benchmark(const RunConfig& c, std::ostream& out) {
  const auto rows = benchmark_fp_fn(c.d_a, c.d_b, c.eta_grid, c.sample_size, c.seed, c.eps);
  Csv csv(c, eta_text(c), ensemble_size(c.d_a, c.d_b));
  csv.row("norm", "false_positives", "false_negatives", "sample_size", "seed");
  for (const auto& r : rows) csv.row(num(r.norm), r.false_positives, r.false_negatives, r.sample_size, r.seed);
  emit(c, "fpfn.csv", csv.str(), out);
  for (const auto& r : rows)
    out << "eta=" << num(r.norm) << " FP=" << r.false_positives << " FN=" << r.false_negatives << "\n";
  return kExitOk;
}

int run_be_sweep(const RunConfig& c, std::ostream& out) {
  const auto rows = bound_entanglement_sweep(c.eta_grid, bound_entanglement_a_grid(c.a_points), c.eps);
  Csv csv(c, eta_text(c), ensemble_size(3, 3));
  csv.row("norm", "a", "distance", "detected");
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.distances.size(); ++i)
      csv.row(num(r.norm), num(r.a_values[i]), num(r.distances[i]), r.distances[i] > kDetectionThreshold ? 1 : 0);
  emit(c, "be_sweep.csv", csv.str(), out);
  for (const auto& r : rows) out << "eta=" << num(r.norm) << " detected=" << r.detected << "/" << r.total << "\n";
  return kExitOk;
}

int run_dist_compare(const RunConfig& c, std::ostream& out) {
  const auto rows = distance_comparison(c.sample_size, c.eta_grid, c.seed, c.eps);
  Csv csv(c, eta_text(c), ensemble_size(2, 2));
  csv.row("state_id", "exact", "eta", "mvce_distance");
  for (const auto& r : rows) csv.row(r.state_id, num(r.exact), num(r.eta), num(r.mvce_distance));
  emit(c, "dist_cmp.csv", csv.str(), out);
  out << "wrote " << rows.size() << " rows\n";
  return kExitOk;
}

int run_capacity(const RunConfig& c, std::ostream& out) {
  Csv csv(c, "", 0);
  if (c.erasure) {
    csv.row("epsilon", "C", "C_E");
    for (double e : c.eps_grid) {
      const ErasureCapacities cap = erasure_capacities(e);
      csv.row(num(e), num(cap.classical), num(cap.entanglement_assisted));
    }
    emit(c, "capacity.csv", csv.str(), out);
    out << "wrote " << c.eps_grid.size() << " rows\n";
    return kExitOk;
  }
  const KrausChannel ch = read_channel(c.channel_path);
  const CapacityResult r = dmc_capacity(induced_transition_matrix(ch), c.tol);
  csv.row("C", "gap", "iterations", "input_distribution");
  std::string p;
  for (int i = 0; i < r.input.size(); ++i) p += (i ? " " : "") + num(r.input[i]);
  csv.row(num(r.capacity), num(r.gap), r.iterations, p);
  emit(c, "capacity.csv", csv.str(), out);
  out << "C=" << num(r.capacity) << "\n";
  return kExitOk;
}

DensityOperator state_or(const RunConfig& c, const DensityOperator& fallback) {
  return c.state_path.empty() ? fallback : read_state(c.state_path);
}

int run_protocol(const RunConfig& c, std::ostream& out) {
  Csv csv(c, "", 0);
  if (c.protocol == "chsh") {
    const DensityOperator rho = state_or(c, bell_state(4));
    csv.row("theta", "value");
    csv.row(num(c.theta), num(chsh_value(rho, c.theta)));
  } else if (c.protocol == "superdense") {
    const SuperdenseReport r = superdense_verify();
    csv.row("message", "outcome", "probability");
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) csv.row(i + 1, j + 1, num(r.probabilities(j, i)));
  } else if (c.protocol == "teleport") {
    CounterRng rng = CounterRng::keyed(c.seed, {0});
    const DensityOperator phi = state_or(c, DensityOperator::from_ket(random_ket(2, rng), Dims{2}));
    const TeleportReport r = teleport_verify(phi);
    csv.row("outcome", "probability", "fidelity");
    for (std::size_t k = 0; k < 4; ++k) csv.row(k + 1, num(r.probabilities[k]), num(r.fidelities[k]));
  } else {
    const DensityOperator phi = state_or(c, bell_state(4));
    csv.row("rate");
    csv.row(num(distillation_rate(phi)));
  }
  emit(c, "", csv.str(), out);
  return kExitOk;
}

DensityOperator named_state(const RunConfig& c) {
  const std::string& name = c.emit;
  if (name == "singlet") return bell_state(4);
  if (name.rfind("bell", 0) == 0 && name.size() == 5 && name[4] >= '1' && name[4] <= '4') return bell_state(name[4] - '0');
  if (name.rfind("horodecki:", 0) == 0) {
    std::size_t used = 0;
    const std::string arg = name.substr(10);
    double a = 0.0;
    try {
      a = std::stod(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != arg.size()) throw ConfigError("bad Horodecki parameter in '" + name + "'");
    return horodecki_state(a);
  }
  if (name.rfind("sample:", 0) == 0) {
    const SampleKind kind = sample_kind_from_string(name.substr(7));
    return sample_state(kind, Dims{c.d_a, c.d_b}, c.seed, 0);
  }
  throw ConfigError("unknown state '" + name + "' (singlet, bell1..bell4, horodecki:<a>, sample:<kind>)");
}

int run_info(const RunConfig& c, std::ostream& out) {
  if (!c.emit.empty()) {
    const DensityOperator rho = named_state(c);
    const std::string path = c.output_path.empty() ? "state.json" : c.output_path;
    write_state(path, rho);
    out << "wrote " << c.emit << " to " << path << "\n";
    return kExitOk;
  }
  const DensityOperator rho = read_state(c.state_path);
  Csv csv(c, "", 0);
  csv.row("dim", "purity", "entropy", "ppt", "min_pt_eigenvalue", "majorization");
  const bool bip = rho.is_bipartite();
  const PptResult ppt = bip ? is_ppt(rho) : PptResult{true, 0.0};
  csv.row(rho.dim(), num(rho.purity()), num(von_neumann_entropy(rho)), bip ? (ppt.ppt ? "true" : "false") : "-",
          bip ? num(ppt.min_eigenvalue) : "-", bip ? (majorization_check(rho) ? "true" : "false") : "-");
  emit(c, "", csv.str(), out);
  return kExitOk;
}

}  // namespace

const char* to_string(Command c) {
  switch (c) {
    case Command::Fit: return "fit";
    case Command::Classify: return "classify";
    case Command::Benchmark: return "benchmark";
    case Command::BeSweep: return "be-sweep";
    case Command::DistCompare: return "dist-compare";
    case Command::Capacity: return "capacity";
    case Command::Protocol: return "protocol";
    case Command::Info: return "info";
  }
  return "unknown";
}

void validate(const RunConfig& c) {
  for (double eta : c.eta_grid)
    if (!(eta > 0.0 && eta <= 1.0)) throw ConfigError("eta values must lie in (0, 1], got " + num(eta));
  if (c.sample_size < 1) throw ConfigError("sample size must be at least 1");
  if (!(c.eps > 0.0 && c.eps <= 0.1)) throw ConfigError("eps must lie in (0, 0.1]");
  const bool needs_eta = c.command == Command::Fit || c.command == Command::Benchmark ||
                         c.command == Command::BeSweep || c.command == Command::DistCompare ||
                         (c.command == Command::Classify && c.model_path.empty());
  if (needs_eta && c.eta_grid.empty()) throw ConfigError(std::string(to_string(c.command)) + " needs --eta");

  switch (c.command) {
    case Command::Fit:
      if (c.eta_grid.size() != 1) throw ConfigError("fit takes a single --eta value");
      break;
    case Command::Classify:
      if (c.state_path.empty()) throw ConfigError("classify needs --state");
      if (c.model_path.empty() && c.eta_grid.size() != 1)
        throw ConfigError("classify needs --model or a single --eta value");
      break;
    case Command::Benchmark: {
      const int lo = std::min(c.d_a, c.d_b);
      const int hi = std::max(c.d_a, c.d_b);
      if (lo != 2 || (hi != 2 && hi != 3)) throw ConfigError("benchmark supports --dims 2x2 and 2x3 only");
      break;
    }
    case Command::BeSweep:
      if (c.a_points < 1) throw ConfigError("--a-grid must be at least 1");
      break;
    case Command::DistCompare:
      if (c.d_a != 2 || c.d_b != 2) throw ConfigError("dist-compare supports --dims 2x2 only");
      break;
    case Command::Capacity:
      if (c.erasure && !c.channel_path.empty()) throw ConfigError("capacity takes either --erasure or --channel");
      if (!c.erasure && c.channel_path.empty()) throw ConfigError("capacity needs --erasure or --channel");
      if (c.erasure) {
        if (c.eps_grid.empty()) throw ConfigError("capacity --erasure needs --eps-grid");
        for (double e : c.eps_grid)
          if (!(e >= 0.0 && e <= 1.0)) throw ConfigError("erasure probabilities must lie in [0, 1]");
      }
      if (!(c.tol > 0.0)) throw ConfigError("--tol must be positive");
      break;
    case Command::Protocol:
      if (c.protocol != "chsh" && c.protocol != "superdense" && c.protocol != "teleport" && c.protocol != "distill")
        throw ConfigError("protocol must be one of chsh, superdense, teleport, distill");
      break;
    case Command::Info:
      if (c.emit.empty() == c.state_path.empty()) throw ConfigError("info needs exactly one of --emit or --state");
      break;
  }
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    validate(c);
    switch (c.command) {
      case Command::Fit: return run_fit(c, out);
      case Command::Classify: return run_classify(c, out);
      case Command::Benchmark: return run_benchmark(c, out);
      case Command::BeSweep: return run_be_sweep(c, out);
      case Command::DistCompare: return run_dist_compare(c, out);
      case Command::Capacity: return run_capacity(c, out);
      case Command::Protocol: return run_protocol(c, out);
      case Command::Info: return run_info(c, out);
    }
  } catch (const ConfigError& e) {
    err << "entgeo: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << "entgeo: " << entgeo::to_string(e.code()) << ": " << e.what() << "\n";
    return e.is_solver_failure() ? kExitSolver : kExitConfig;
  } catch (const std::exception& e) {
    err << "entgeo: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitConfig;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement detection by minimum-volume covering ellipsoids", "entgeo"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ENTGEO_VERSION);

  RunConfig c;
  std::string dims = "2x2";
  std::string eta;
  std::string eps_grid;
  std::map<CLI::App*, std::string> default_etas;
  int bench_n = 1000;
  int dist_n = 100;

  auto common = [&](CLI::App* sub, const std::string& default_eta) {
    sub->add_option("--seed", c.seed, "RNG seed");
    sub->add_option("--dims", dims, "Subsystem dimensions, e.g. 2x3")->default_val("2x2");
    sub->add_option("--eta", eta, "Norm grid: start..end:step, a comma list, or one value (default " +
                                      (default_eta.empty() ? std::string("none") : default_eta) + ")");
    default_etas[sub] = default_eta;
    sub->add_option("--eps", c.eps, "MVCE tolerance")->default_val(1e-6);
    sub->add_option("-o,--out", c.output_path, "Output file");
    sub->add_flag("--no-timestamp", c.no_timestamp, "Omit the timestamp comment");
  };

  struct Entry {
    CLI::App* app;
    Command command;
  };
  std::vector<Entry> subs;
  auto add = [&](const char* name, const char* help, Command cmd, const std::string& default_eta) {
    CLI::App* s = app.add_subcommand(name, help);
    common(s, default_eta);
    subs.push_back({s, cmd});
    return s;
  };

  add("fit", "Fit the separable-model ellipsoid and write it as JSON", Command::Fit, "1.0");
  CLI::App* cls = add("classify", "Classify a state file against an ellipsoid", Command::Classify, "1.0");
  cls->add_option("--state", c.state_path, "State JSON file")->required();
  cls->add_option("--model", c.model_path, "Ellipsoid JSON file from `fit`");
  CLI::App* bench = add("benchmark", "False positives and negatives on seeded samples", Command::Benchmark,
                        "0.1..1.0:0.1");
  bench->add_option("--n", bench_n, "Samples per class")->default_val(1000);
  CLI::App* be = add("be-sweep", "Detect bound-entangled Horodecki states", Command::BeSweep, "0.1..1.0:0.1");
  be->add_option("--a-grid", c.a_points, "Number of a values from 0.001 to 1")->default_val(1000);
  CLI::App* dc = add("dist-compare", "Ellipsoid distance against exact PPT-set distance", Command::DistCompare,
                     "0.5,1.0");
  dc->add_option("--n", dist_n, "Number of entangled samples")->default_val(100);
  CLI::App* cap = add("capacity", "Channel capacities", Command::Capacity, "");
  cap->add_flag("--erasure", c.erasure, "Closed-form erasure capacities over --eps-grid");
  cap->add_option("--eps-grid", eps_grid, "Erasure probability grid");
  cap->add_option("--channel", c.channel_path, "Kraus channel JSON file");
  cap->add_option("--tol", c.tol, "Capacity tolerance")->default_val(1e-10);
  CLI::App* proto = add("protocol", "Protocol checks", Command::Protocol, "");
  proto->add_option("name", c.protocol, "chsh, superdense, teleport or distill")->required();
  proto->add_option("--state", c.state_path, "Input state JSON file");
  proto->add_option("--theta", c.theta, "CHSH angle in radians")->default_val(std::numbers::pi / 4);
  CLI::App* info = add("info", "Inspect a state file or emit a named state", Command::Info, "");
  info->add_option("--state", c.state_path, "State JSON file");
  info->add_option("--emit", c.emit, "singlet, bell1..bell4, horodecki:<a>, sample:<kind>");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }
  for (const Entry& s : subs) {
    if (!s.app->parsed()) continue;
    c.command = s.command;
    if (eta.empty()) eta = default_etas[s.app];
    if (s.command == Command::Benchmark) c.sample_size = bench_n;
    if (s.command == Command::DistCompare) c.sample_size = dist_n;
  }

  try {
    const auto d = parse_dims(dims);
    c.d_a = d.first;
    c.d_b = d.second;
    c.eta_spec = eta;
    c.eta_grid = eta.empty() ? std::vector<double>{} : parse_grid(eta);
    c.eps_grid_spec = eps_grid;
    c.eps_grid = eps_grid.empty() ? std::vector<double>{} : parse_grid(eps_grid);
  } catch (const ConfigError& e) {
    err << "entgeo: " << e.what() << "\n";
    return kExitConfig;
  }
  return run(c, out, err);
}

}  // namespace entgeo::cli
