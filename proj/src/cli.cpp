#include "sshe/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "sshe/bloch.hpp"
#include "sshe/csv.hpp"
#include "sshe/errors.hpp"
#include "sshe/homotopy.hpp"
#include "sshe/parallel.hpp"
#include "sshe/single_well.hpp"
#include "sshe/ssh_chain.hpp"
#include "sshe/svg.hpp"
#include "sshe/tight_binding.hpp"

#ifndef SSHE_VERSION
#define SSHE_VERSION "0.0.0"
#endif

namespace sshe::cli {

namespace {

constexpr const char* kExitCodeHelp =
    "Exit codes: 0 ok, 2 usage, 3 validation, 4 numerical (scan/convergence failure), "
    "5 resource guard.\n"
    "Environment: SSH_EMERGENCE_THREADS caps OpenMP threads; SSH_EMERGENCE_SEED seeds the "
    "randomized property tests.";

struct ParamSpec {
  std::string key;
  std::string default_value;  // empty: unset unless given
  std::string help;
  bool is_flag = false;
  bool is_list = false;
  bool is_integer = false;
};

struct CommandSpec {
  Command command;
  std::string name;
  std::string description;
  std::vector<ParamSpec> params;
  bool svg = false;
};

ParamSpec real(std::string key, double def, std::string help) {
  return {std::move(key), format_exact(def), std::move(help)};
}
ParamSpec optional_real(std::string key, std::string help) {
  return {std::move(key), "", std::move(help)};
}
ParamSpec integer(std::string key, int def, std::string help) {
  return {std::move(key), std::to_string(def), std::move(help), false, false, true};
}
ParamSpec list(std::string key, std::string def, std::string help) {
  return {std::move(key), std::move(def), std::move(help), false, true};
}
ParamSpec flag(std::string key, std::string help) {
  return {std::move(key), "false", std::move(help), true};
}

const std::vector<CommandSpec>& command_table() {
  static const std::vector<CommandSpec> table = [] {
    const HomotopyConfig fig = reference_config();
    std::vector<CommandSpec> t;
    t.push_back({Command::ssh,
                 "ssh",
                 "Discrete SSH chain: Bloch symbol, dispersion, gap, winding, open-chain edge modes",
                 {real("t-in", 1.0, "in-cell hopping"), real("t-out", 0.5, "out-of-cell hopping"),
                  integer("k-points", 65, "momentum samples on [0, 2pi] for the CSV"),
                  integer("samples", 256, "momentum samples for the winding number"),
                  integer("n-cells", 40, "cells of the open chain"),
                  optional_real("tol", "edge-mode threshold |E| < tol (default gap/4)"),
                  flag("winding", "require a winding number (error if the gap is closed)")}});
    t.push_back({Command::single_well,
                 "single-well",
                 "Exact ground state of one square well",
                 {real("lambda", 10.0, "depth parameter (depth lambda^2)"),
                  optional_real("lambda2", "depth lambda^2 (alternative to --lambda)"),
                  real("w", 0.1, "well width"),
                  integer("x-points", 201, "profile samples for the CSV"),
                  optional_real("x-range", "profile half-range (default w/2 + 6/kappa)")}});
    t.push_back({Command::bands,
                 "bands",
                 "Lowest two bands of the periodic crystal via transfer matrices",
                 {real("lambda", 10.0, "depth parameter"),
                  optional_real("lambda2", "depth lambda^2 (alternative to --lambda)"),
                  real("d-in", 0.5, "in-cell spacing"), real("d-out", 0.5, "out-of-cell spacing"),
                  real("w-a", 0.1, "A well width"), real("w-b", 0.1, "B well width"),
                  integer("k-points", 64, "momentum samples on [0, pi]")}});
    t.push_back({Command::reduce,
                 "reduce",
                 "Tight-binding hoppings rho1, rho2 and their SSH limit (d_out = d + alpha/lambda)",
                 {list("lambda", "20,40,80", "comma-separated lambda values"),
                  {"lambda2", "", "comma-separated lambda^2 values (alternative to --lambda)", false, true},
                  real("d", 0.5, "in-cell spacing d"), real("w", 0.1, "well width"),
                  real("alpha", 1.0 / 15.0, "spacing offset: d_out = d + alpha/lambda")}});
    t.push_back({Command::homotopy,
                 "homotopy",
                 "Gap scan along the deformation path eps in [-1, 1]",
                 {real("lambda", fig.lambda, "depth parameter"),
                  optional_real("lambda2", "depth lambda^2 (alternative to --lambda)"),
                  real("d", fig.d, "base spacing"), real("w", fig.w, "base width"),
                  real("alpha", fig.alpha, "spacing offset alpha"),
                  real("beta", fig.beta, "width asymmetry amplitude"),
                  integer("n-eps", fig.n_eps, "eps samples")},
                 true});
    t.push_back({Command::finite_volume,
                 "finite-volume",
                 "Finite-volume spectrum rescaled by the dominant hopping, compared with SSH bands",
                 {list("lambda", "20,40", "comma-separated lambda values"),
                  {"lambda2", "", "comma-separated lambda^2 values (alternative to --lambda)", false, true},
                  real("d", 0.5, "in-cell spacing d"), real("w", 0.1, "well width"),
                  real("alpha", 1.0 / 15.0, "spacing offset: d_out = d + alpha/lambda"),
                  integer("n-cells", 8, "cells in the box"),
                  integer("points-per-cell", 2048, "grid points per period")}});
    return t;
  }();
  return table;
}

const CommandSpec& find_command(const std::string& name) {
  for (const auto& c : command_table())
    if (c.name == name) return c;
  throw UsageError("unknown command '" + name + "' (try --help)");
}

const CommandSpec& find_command(Command command) {
  for (const auto& c : command_table())
    if (c.command == command) return c;
  throw UsageError("unknown command");
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_bool(const std::string& key, const std::string& value) {
  std::string v = value;
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw UsageError("--" + key + ": expected a boolean, got '" + value + "'");
}

double parse_real(const std::string& key, const std::string& value) {
  double x = 0.0;
  if (!parse_number(value, x) || !std::isfinite(x))
    throw UsageError("--" + key + ": expected a number, got '" + value + "'");
  return x;
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::string item;
  std::istringstream is(value);
  while (std::getline(is, item, ',')) out.push_back(parse_real(key, trim(item)));
  if (out.empty()) throw UsageError("--" + key + ": expected at least one value");
  return out;
}

std::string join_exact(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + format_exact(xs[i]);
  return s;
}

std::map<std::string, std::string> read_config_file(const std::filesystem::path& path,
                                                    const CommandSpec& spec) {
  std::ifstream is(path);
  if (!is) throw UsageError("--config: cannot read '" + path.string() + "'");
  std::map<std::string, std::string> values;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(path.string() + ":" + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const bool known = std::any_of(spec.params.begin(), spec.params.end(),
                                   [&](const ParamSpec& p) { return p.key == key; });
    if (!known)
      throw UsageError(path.string() + ":" + std::to_string(line_no) + ": unknown key '" + key +
                       "' for command " + spec.name);
    values[key] = value;
  }
  return values;
}

std::string top_level_help() {
  std::ostringstream os;
  os << "ssh_emergence " << SSHE_VERSION << "\n"
     << "Usage: ssh_emergence <command> [options]\n\nCommands:\n";
  for (const auto& c : command_table()) os << "  " << std::left << std::setw(15) << c.name << c.description << "\n";
  os << "\nRun 'ssh_emergence <command> --help' for the options of a command.\n\n" << kExitCodeHelp << "\n";
  return os.str();
}

// Resolves --lambda2 into lambda and checks the numeric form of every value.
void normalize(const CommandSpec& spec, std::map<std::string, std::string>& params,
               const std::set<std::string>& explicit_keys) {
  const bool has_lambda2 = params.count("lambda2") && !params["lambda2"].empty();
  if (has_lambda2) {
    if (explicit_keys.count("lambda")) throw UsageError("--lambda and --lambda2 are mutually exclusive");
    std::vector<double> depths = parse_list("lambda2", params["lambda2"]);
    for (double& x : depths) {
      if (x < 0.0) throw ValidationError("--lambda2 must be >= 0");
      x = std::sqrt(x);
    }
    params["lambda"] = join_exact(depths);
  }
  params.erase("lambda2");

  for (const ParamSpec& p : spec.params) {
    auto it = params.find(p.key);
    if (it == params.end() || it->second.empty()) continue;
    if (p.is_flag) {
      it->second = parse_bool(p.key, it->second) ? "true" : "false";
    } else if (p.is_list) {
      it->second = join_exact(parse_list(p.key, it->second));
    } else {
      const double x = parse_real(p.key, it->second);
      if (p.is_integer && (x != std::floor(x) || std::abs(x) > 1e9))
        throw UsageError("--" + p.key + ": expected an integer, got '" + it->second + "'");
      it->second = p.is_integer ? std::to_string(static_cast<long long>(x)) : format_exact(x);
    }
  }
}

void require(bool condition, const std::string& message) {
  if (!condition) throw ValidationError(message);
}

void validate(const RunConfig& c) {
  switch (c.command) {
    case Command::ssh: {
      const SshParams p{c.number("t-in"), c.number("t-out")};
      p.validate();
      require(c.integer("k-points") >= 2, "--k-points must be >= 2");
      require(c.integer("samples") >= 16, "--samples must be >= 16");
      require(c.integer("n-cells") >= 1, "--n-cells must be >= 1");
      if (c.has("tol")) require(c.number("tol") >= 0.0, "--tol must be >= 0");
      if (c.flag("winding") && !p.gapped())
        throw GapClosedError("gap closed: t_in == t_out, the winding number is undefined");
      break;
    }
    case Command::single_well:
      WellParams{c.number("lambda"), c.number("w")}.validate();
      require(c.integer("x-points") >= 2, "--x-points must be >= 2");
      if (c.has("x-range")) require(c.number("x-range") > 0.0, "--x-range must be > 0");
      break;
    case Command::bands:
      CrystalSpec{c.number("lambda"), c.number("d-in"), c.number("d-out"), c.number("w-a"), c.number("w-b")}
          .validate();
      require(c.integer("k-points") >= 2, "--k-points must be >= 2");
      break;
    case Command::reduce:
      for (double lambda : c.numbers("lambda"))
        dimerized_crystal(lambda, c.number("d"), c.number("w"), c.number("alpha"));
      break;
    case Command::homotopy:
      HomotopyConfig{c.number("lambda"), c.number("d"), c.number("w"), c.number("alpha"), c.number("beta"),
                     c.integer("n-eps")}
          .validate();
      break;
    case Command::finite_volume: {
      for (double lambda : c.numbers("lambda"))
        dimerized_crystal(lambda, c.number("d"), c.number("w"), c.number("alpha"));
      require(c.integer("n-cells") >= 8, "--n-cells must be >= 8");
      require(c.integer("points-per-cell") >= 256, "--points-per-cell must be >= 256");
      const double dim = static_cast<double>(c.integer("n-cells")) * c.integer("points-per-cell");
      if (dim > static_cast<double>(FiniteVolumeModel::kMaxDimension))
        throw ResourceError("finite-volume matrix dimension exceeds 2^22");
      break;
    }
  }
}

struct Result {
  CsvTable table;
  std::string summary;
  std::optional<std::string> svg;
};

std::string num(double x) { return format_number(x); }

Result run_ssh(const RunConfig& c) {
  const SshParams p{c.number("t-in"), c.number("t-out")};
  Result r;
  r.table.header = {"k", "s_re", "s_im", "E_minus", "E_plus"};
  const int nk = c.integer("k-points");
  for (int i = 0; i < nk; ++i) {
    const double k = 2.0 * std::numbers::pi * i / (nk - 1);
    const auto s = bloch_symbol(p, k);
    const auto e = dispersion(p, k);
    r.table.rows.push_back({k, s.real(), s.imag(), e.minus, e.plus});
  }
  const FiniteChain chain{c.integer("n-cells"), p};
  const double tol = c.has("tol") ? c.number("tol") : spectral_gap(p) / 4.0;
  std::ostringstream os;
  os << "SSH chain: t_in = " << num(p.t_in) << ", t_out = " << num(p.t_out) << "\n"
     << "  spectral gap 2|t_in - t_out| = " << num(spectral_gap(p)) << "\n";
  if (p.gapped()) {
    const int w = winding_number(p, c.integer("samples"));
    os << "  winding number = " << w << (w == 1 ? " (non-trivial)" : " (trivial)") << "\n";
  } else {
    os << "  winding number undefined (gap closed)\n";
  }
  os << "  open chain, " << chain.n_cells << " cells: edge modes with |E| < " << num(tol) << " = "
     << edge_mode_count(chain, tol) << "\n";
  r.summary = os.str();
  return r;
}

Result run_single_well(const RunConfig& c) {
  const WellParams well{c.number("lambda"), c.number("w")};
  const BoundState s = solve_ground_state(well);
  const AsymptoticEnergy a = asymptotic_energy(well);
  Result r;
  r.table.header = {"x", "phi"};
  const double range = c.has("x-range") ? c.number("x-range") : 0.5 * well.width + 6.0 / s.kappa;
  const int nx = c.integer("x-points");
  for (int i = 0; i < nx; ++i) {
    const double x = -range + 2.0 * range * i / (nx - 1);
    r.table.rows.push_back({x, eval_wavefunction(s, well, x)});
  }
  const double residual = s.q * std::tan(0.5 * s.q * well.width) - s.kappa;
  std::ostringstream os;
  os << "Single well: lambda = " << num(well.lambda) << ", w = " << num(well.width) << "\n"
     << "  e0     = " << num(s.e0) << "\n"
     << "  q      = " << num(s.q) << "\n"
     << "  kappa  = " << num(s.kappa) << "\n"
     << "  A      = " << num(s.norm) << "\n"
     << "  matching residual q tan(q w/2) - kappa = " << num(residual) << "\n"
     << "  asymptotic -lambda^2 + pi^2/w^2 = " << num(a.energy)
     << (a.regime_valid ? "" : "  [asymptotic regime invalid: lambda w <= pi]") << "\n";
  r.summary = os.str();
  return r;
}

Result run_bands(const RunConfig& c) {
  const CrystalSpec spec{c.number("lambda"), c.number("d-in"), c.number("d-out"), c.number("w-a"),
                         c.number("w-b")};
  const int nk = c.integer("k-points");
  const auto band1 = dispersion_curve(spec, 1, nk);
  const auto band2 = dispersion_curve(spec, 2, nk);
  Result r;
  r.table.header = {"k", "E_band1", "E_band2"};
  for (int i = 0; i < nk; ++i)
    r.table.rows.push_back({band1[static_cast<std::size_t>(i)].k, band1[static_cast<std::size_t>(i)].energy,
                            band2[static_cast<std::size_t>(i)].energy});
  const LowestBands b = lowest_bands(spec);
  std::ostringstream os;
  os << "Crystal: lambda = " << num(spec.lambda) << ", d_in = " << num(spec.d_in) << ", d_out = "
     << num(spec.d_out) << ", w_a = " << num(spec.w_a) << ", w_b = " << num(spec.w_b)
     << ", period = " << num(spec.period()) << "\n"
     << "  mu1(0) = " << num(b.mu1_0) << "   mu1(pi) = " << num(b.mu1_pi) << "\n"
     << "  mu2(0) = " << num(b.mu2_0) << "   mu2(pi) = " << num(b.mu2_pi) << "\n"
     << "  gap0 = mu2(0) - mu1(0) = " << num(b.gap0()) << "\n"
     << "  gapPi = mu2(pi) - mu1(pi) = " << num(b.gap_pi()) << "\n";
  r.summary = os.str();
  return r;
}

Result run_reduce(const RunConfig& c) {
  const double alpha = c.number("alpha");
  const double target = std::exp(-std::abs(alpha));
  Result r;
  r.table.header = {"lambda", "rho1", "rho2", "ratio", "exp_neg_alpha", "deviation"};
  std::ostringstream os;
  os << "Tight-binding reduction: d = " << num(c.number("d")) << ", w = " << num(c.number("w"))
     << ", alpha = " << num(alpha) << " (d_out = d + alpha/lambda)\n";
  for (double lambda : c.numbers("lambda")) {
    const CrystalSpec spec = dimerized_crystal(lambda, c.number("d"), c.number("w"), alpha);
    const HoppingReport h = hopping_report(spec, alpha);
    const SshParams limit = ssh_limit(h);
    const double small_ratio = std::min(limit.t_in, limit.t_out);
    r.table.rows.push_back({lambda, h.rho1, h.rho2, h.ratio, target, std::abs(small_ratio - target)});
    os << "  lambda = " << num(lambda) << ": rho1 = " << num(h.rho1) << ", rho2 = " << num(h.rho2)
       << ", rho2/rho1 = " << num(h.ratio) << ", |ratio - e^-|alpha|| = "
       << num(std::abs(small_ratio - target)) << "\n"
       << "      SSH limit (t_in, t_out) = (" << num(limit.t_in) << ", " << num(limit.t_out) << "), winding = ";
    if (limit.gapped()) {
      os << winding_number(limit) << "\n";
    } else {
      os << "undefined (gap closed)\n";
    }
  }
  r.summary = os.str();
  return r;
}

Result run_homotopy(const RunConfig& c) {
  const HomotopyConfig cfg{c.number("lambda"), c.number("d"),     c.number("w"),
                           c.number("alpha"),  c.number("beta"), c.integer("n-eps")};
  const GapScan scan = gap_scan(cfg);
  Result r;
  r.table.header = {"eps", "mu1_0", "mu2_0", "mu1_pi", "mu2_pi", "gap0", "gapPi"};
  for (const auto& row : scan.rows)
    r.table.rows.push_back({row.eps, row.mu1_0, row.mu2_0, row.mu1_pi, row.mu2_pi, row.gap0, row.gap_pi});
  std::ostringstream os;
  os << "Homotopy: lambda^2 = " << num(cfg.lambda * cfg.lambda) << ", d = " << num(cfg.d)
     << ", w = " << num(cfg.w) << ", beta = " << num(cfg.beta) << ", alpha = " << num(cfg.alpha)
     << ", " << cfg.n_eps << " eps samples\n"
     << "  min gap c_lambda = " << num(scan.c_lambda) << " at eps = " << num(scan.eps_at_min) << "\n";
  if (cfg.alpha != 0.0) {
    const EndpointTopology t = endpoint_topology(cfg);
    os << "  eps = -1: SSH limit (" << num(t.limit_minus.t_in) << ", " << num(t.limit_minus.t_out)
       << "), winding " << t.index_minus << "\n"
       << "  eps = +1: SSH limit (" << num(t.limit_plus.t_in) << ", " << num(t.limit_plus.t_out)
       << "), winding " << t.index_plus << "\n";
  } else {
    os << "  alpha = 0: both endpoint limits are gapless\n";
  }
  r.summary = os.str();
  r.svg = gap_scan_svg(scan);
  return r;
}

Result run_finite_volume(const RunConfig& c) {
  const double alpha = c.number("alpha");
  Result r;
  r.table.header = {"lambda", "index", "energy", "rescaled", "edge_artifact"};
  std::ostringstream os;
  os << "Finite volume: " << c.integer("n-cells") << " cells, " << c.integer("points-per-cell")
     << " points per cell, Dirichlet ends\n";
  for (double lambda : c.numbers("lambda")) {
    const CrystalSpec spec = dimerized_crystal(lambda, c.number("d"), c.number("w"), alpha);
    const SpectralComparison cmp =
        compare_with_ssh(spec, alpha, c.integer("n-cells"), c.integer("points-per-cell"));
    for (std::size_t i = 0; i < cmp.energies.size(); ++i)
      r.table.rows.push_back({lambda, static_cast<double>(i), cmp.energies[i], cmp.rescaled[i],
                              cmp.edge_artifact[i] ? 1.0 : 0.0});
    os << "  lambda = " << num(lambda) << ": e0 = " << num(cmp.e0_continuum) << " (mesh "
       << num(cmp.e0_discrete) << "), r = " << num(cmp.ratio) << ", distance to SSH bands delta = "
       << num(cmp.delta) << ", edge artifacts = " << cmp.artifact_count
       << ", in-gap states = " << cmp.in_gap_count << "\n";
  }
  r.summary = os.str();
  return r;
}

Result dispatch(const RunConfig& c) {
  switch (c.command) {
    case Command::ssh: return run_ssh(c);
    case Command::single_well: return run_single_well(c);
    case Command::bands: return run_bands(c);
    case Command::reduce: return run_reduce(c);
    case Command::homotopy: return run_homotopy(c);
    case Command::finite_volume: return run_finite_volume(c);
  }
  throw UsageError("unknown command");
}

std::string manifest_text(const RunConfig& c, double seconds, const std::string& csv) {
  std::ostringstream os;
  char checksum[17];
  std::snprintf(checksum, sizeof checksum, "%016llx", static_cast<unsigned long long>(fnv1a64(csv)));
  os << "# ssh_emergence run manifest (loadable with --config)\n"
     << "# command: " << command_name(c.command) << "\n"
     << "# version: " << SSHE_VERSION << "\n"
     << "# duration_seconds: " << format_number(seconds) << "\n"
     << "# output: " << c.output_path->filename().string() << "\n"
     << "# output_fnv1a64: " << checksum << "\n";
  for (const auto& [key, value] : c.parameters) os << key << " = " << value << "\n";
  return os.str();
}

}  // namespace

std::string command_name(Command c) { return find_command(c).name; }

bool RunConfig::has(const std::string& key) const {
  auto it = parameters.find(key);
  return it != parameters.end() && !it->second.empty();
}

double RunConfig::number(const std::string& key) const {
  if (!has(key)) throw UsageError("missing parameter --" + key);
  return parse_real(key, parameters.at(key));
}

int RunConfig::integer(const std::string& key) const { return static_cast<int>(number(key)); }

bool RunConfig::flag(const std::string& key) const { return has(key) && parse_bool(key, parameters.at(key)); }

std::vector<double> RunConfig::numbers(const std::string& key) const {
  if (!has(key)) throw UsageError("missing parameter --" + key);
  return parse_list(key, parameters.at(key));
}

RunConfig parse_config(const std::vector<std::string>& args) {
  if (args.empty() || args[0] == "--help" || args[0] == "-h") {
    if (args.empty()) throw UsageError("missing command\n" + top_level_help());
    throw HelpRequested(top_level_help());
  }
  if (args[0] == "--version") throw HelpRequested(std::string("ssh_emergence ") + SSHE_VERSION + "\n");
  const CommandSpec& spec = find_command(args[0]);

  CLI::App app{spec.description, "ssh_emergence " + spec.name};
  app.footer(kExitCodeHelp);
  std::map<std::string, std::string> flag_values;
  std::map<std::string, CLI::Option*> options;
  for (const ParamSpec& p : spec.params) {
    std::string help = p.help;
    if (!p.default_value.empty() && !p.is_flag) help += " [default " + p.default_value + "]";
    options[p.key] = p.is_flag ? app.add_flag("--" + p.key, help)
                               : app.add_option("--" + p.key, flag_values[p.key], help)
                                     ->type_name(p.is_list ? "LIST" : (p.is_integer ? "INT" : "NUM"));
  }
  std::string config_path;
  std::string output;
  std::string format = "pretty";
  std::string svg;
  app.add_option("--config", config_path, "flat 'key = value' parameter file; flags override it")
      ->type_name("FILE");
  app.add_option("-o,--output", output, "CSV output path (a .manifest is written next to it)")->type_name("FILE");
  app.add_option("--format", format, "stdout format: pretty or csv")->check(CLI::IsMember({"pretty", "csv"}));
  if (spec.svg) app.add_option("--svg", svg, "also write an SVG line chart")->type_name("FILE");

  std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(spec.name + ": " + e.what());
  }

  RunConfig config;
  config.command = spec.command;
  std::set<std::string> explicit_keys;
  for (const ParamSpec& p : spec.params)
    if (!p.default_value.empty()) config.parameters[p.key] = p.default_value;
  if (!config_path.empty()) {
    for (auto& [key, value] : read_config_file(config_path, spec)) {
      config.parameters[key] = value;
      explicit_keys.insert(key);
    }
  }
  for (const ParamSpec& p : spec.params) {
    if (options[p.key]->count() == 0) continue;
    config.parameters[p.key] = p.is_flag ? "true" : flag_values[p.key];
    explicit_keys.insert(p.key);
  }
  normalize(spec, config.parameters, explicit_keys);

  if (!output.empty()) config.output_path = output;
  if (!svg.empty()) config.svg_path = svg;
  config.format = format == "csv" ? OutputFormat::csv : OutputFormat::pretty;
  validate(config);
  return config;
}

int run(const RunConfig& config, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const Result result = dispatch(config);
  const std::string csv = to_csv_string(result.table);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (config.output_path) {
    write_file_atomic(*config.output_path, csv);
    std::filesystem::path manifest = *config.output_path;
    manifest += ".manifest";
    write_file_atomic(manifest, manifest_text(config, seconds, csv));
  }
  if (config.svg_path && result.svg) write_file_atomic(*config.svg_path, *result.svg);
  if (config.format == OutputFormat::csv) {
    out << csv;
  } else {
    out << result.summary;
    if (config.output_path) out << "  wrote " << config.output_path->string() << " (+ .manifest)\n";
  }
  return 0;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  configure_threads_from_env();
  try {
    const RunConfig config = parse_config(args);
    return run(config, out);
  } catch (const HelpRequested& help) {
    out << help.what();
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(e.exit_code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace sshe::cli
