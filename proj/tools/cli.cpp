#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mpfock/bargmann.hpp"
#include "mpfock/error.hpp"
#include "mpfock/metaplectic.hpp"
#include "mpfock/serialize.hpp"
#include "mpfock/verify.hpp"
#include "mpfock/wave_equation.hpp"

namespace mpfock::cli {

namespace {

constexpr const char* kEnvPrefix = "MPFOCK_";

enum class Format { json, csv };

struct RunConfig {
  TruncationConfig trunc;
  std::optional<Format> format;  // unset: command default
  std::optional<std::string> out_path;
};

// Raw global flag values; empty when the flag was not given.
struct GlobalFlags {
  std::optional<std::string> dim, tol, margin, format, out, config;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

int parse_int(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) throw UsageError(key + ": expected an integer, got '" + text + "'");
  return v;
}

double parse_real(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty() || !std::isfinite(v))
    throw UsageError(key + ": expected a finite number, got '" + text + "'");
  return v;
}

// "x" or "x,y" for x + iy.
cplx parse_complex(const std::string& key, const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return {parse_real(key, text), 0.0};
  return {parse_real(key, text.substr(0, comma)), parse_real(key, text.substr(comma + 1))};
}

Format parse_format(const std::string& text) {
  if (text == "json") return Format::json;
  if (text == "csv") return Format::csv;
  throw UsageError("format must be json or csv, got '" + text + "'");
}

// "start..end:steps", steps >= 1 evenly spaced values including both ends.
std::vector<double> parse_range(const std::string& key, const std::string& text) {
  const auto dots = text.find("..");
  const auto colon = text.rfind(':');
  if (dots == std::string::npos || colon == std::string::npos || colon < dots)
    throw UsageError(key + ": expected start..end:steps, got '" + text + "'");
  const double start = parse_real(key, text.substr(0, dots));
  const double end = parse_real(key, text.substr(dots + 2, colon - dots - 2));
  const int steps = parse_int(key, text.substr(colon + 1));
  if (steps < 1) throw UsageError(key + ": steps must be at least 1");
  std::vector<double> out(steps);
  for (int k = 0; k < steps; ++k)
    out[k] = steps == 1 ? start : start + (end - start) * k / (steps - 1);
  return out;
}

std::string json_scalar_text(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

RunConfig resolve_config(const GlobalFlags& flags, const EnvLookup& env) {
  std::optional<std::string> config_path = flags.config;
  if (!config_path) config_path = env(std::string(kEnvPrefix) + "CONFIG");

  nlohmann::json file = nlohmann::json::object();
  if (config_path) {
    std::ifstream in(*config_path);
    if (!in) throw UsageError("cannot open config file '" + *config_path + "'");
    try {
      file = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("config file '" + *config_path + "' is not valid JSON: " + e.what());
    }
    if (!file.is_object()) throw UsageError("config file must hold a JSON object");
    for (const auto& [key, value] : file.items()) {
      if (key != "dim" && key != "tol" && key != "margin" && key != "format" && key != "out")
        throw UsageError("config file: unknown key '" + key + "'");
      (void)value;
    }
  }

  auto pick = [&](const std::optional<std::string>& flag, const std::string& name) {
    if (flag) return flag;
    std::string upper = name;
    for (char& ch : upper) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    if (auto v = env(kEnvPrefix + upper)) return v;
    if (file.contains(name)) return std::optional<std::string>(json_scalar_text(file[name]));
    return std::optional<std::string>();
  };

  RunConfig cfg;
  if (auto v = pick(flags.dim, "dim")) cfg.trunc.dim = parse_int("dim", *v);
  if (auto v = pick(flags.tol, "tol")) cfg.trunc.tol = parse_real("tol", *v);
  if (auto v = pick(flags.margin, "margin")) cfg.trunc.interior_margin = parse_int("margin", *v);
  if (auto v = pick(flags.format, "format")) cfg.format = parse_format(*v);
  cfg.out_path = pick(flags.out, "out");
  try {
    cfg.trunc.validate();
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

// Physics parameters shared by several commands.
struct PhysicsFlags {
  std::string p = "0", m, eps;

  void attach(CLI::App* cmd, bool required) {
    cmd->add_option("--p", p, "momentum p");
    auto* om = cmd->add_option("--m", m, "mass m");
    auto* oe = cmd->add_option("--eps", eps, "energy eps");
    if (required) {
      om->required();
      oe->required();
    }
  }
  bool given() const { return !m.empty() || !eps.empty(); }
  PhysicalParams params() const {
    if (m.empty() || eps.empty()) throw UsageError("--m and --eps must be given together");
    return PhysicalParams::preset(parse_real("p", p), parse_real("m", m), parse_real("eps", eps));
  }
};

std::string csv_bool(bool b) { return b ? "true" : "false"; }

struct Emitter {
  Format format;
  std::ostream& os;

  void json(const ojson& doc) const { os << doc.dump(2) << '\n'; }
};

int cmd_verify(const std::string& suite_name, const RunConfig& cfg, const Emitter& emit) {
  const auto suite = parse_suite(suite_name);
  if (!suite) throw UsageError("unknown suite '" + suite_name + "'");
  const SuiteReport rep = run_suite(*suite, cfg.trunc);

  if (emit.format == Format::csv) {
    emit.os << "suite,name,measured,tolerance,pass,gating\n";
    for (const CheckResult& c : rep.checks)
      emit.os << c.suite << ",\"" << c.name << "\"," << format_double(c.measured) << ','
              << format_double(c.tolerance) << ',' << csv_bool(c.pass) << ',' << csv_bool(c.gating)
              << '\n';
  } else {
    ojson checks = ojson::array();
    std::size_t failed = 0;
    for (const CheckResult& c : rep.checks) {
      if (c.gating && !c.pass) ++failed;
      ojson row;
      row["suite"] = c.suite;
      row["name"] = c.name;
      row["measured"] = c.measured;
      row["tolerance"] = c.tolerance;
      row["pass"] = c.pass;
      row["gating"] = c.gating;
      checks.push_back(std::move(row));
    }
    ojson doc;
    doc["suite"] = to_string(*suite);
    doc["dim"] = cfg.trunc.dim;
    doc["tol"] = cfg.trunc.tol;
    doc["margin"] = cfg.trunc.interior_margin;
    doc["pass"] = rep.ok();
    doc["failed_gating_checks"] = failed;
    doc["checks"] = std::move(checks);
    emit.json(doc);
  }
  return rep.ok() ? kOk : kValidation;
}

int cmd_vacuum(const PhysicalParams& params, const std::string& mode, const RunConfig& cfg,
               const Emitter& emit) {
  FockState state(CVector::Zero(cfg.trunc.dim));
  ojson diag;
  diag["mode"] = mode;
  if (mode == "thermal") {
    if (params.critical())
      throw DomainError(
          "thermal vacuum is singular at m^2 = eps^2; use `vacuum --mode leastsquares` or "
          "approach the edge with `limit-scan`");
    const VacuumCoefficients v = thermal_vacuum_coefficients(params);
    state = thermal_vacuum(params, cfg.trunc);
    diag["A"] = complex_to_json(v.a);
    diag["B"] = complex_to_json(v.b);
  } else if (mode == "leastsquares") {
    state = solve_vacuum_least_squares(params, cfg.trunc).state;
  } else {
    throw UsageError("mode must be thermal or leastsquares, got '" + mode + "'");
  }
  const double residual = apply_wave_operator(params, state, cfg.trunc).residual;
  emit.json(state_envelope(params, state, residual, std::move(diag)));
  return kOk;
}

int cmd_solution(const PhysicalParams& params, const std::string& kind, const std::string& coef_a,
                 const std::string& coef_b, bool normalize, const RunConfig& cfg,
                 const Emitter& emit) {
  ojson diag;
  diag["kind"] = kind;
  diag["alpha"] = complex_to_json(solution_params(params).alpha);
  FockState state(CVector::Zero(cfg.trunc.dim));
  if (kind == "general") {
    VacuumCoefficients v{};
    if (coef_a.empty() && coef_b.empty()) {
      v = thermal_vacuum_coefficients(params);
    } else {
      v.a = coef_a.empty() ? cplx{} : parse_complex("coef-a", coef_a);
      v.b = coef_b.empty() ? cplx{} : parse_complex("coef-b", coef_b);
    }
    const GeneralSolution s = general_solution(params, v, cfg.trunc, normalize);
    diag["A"] = complex_to_json(v.a);
    diag["B"] = complex_to_json(v.b);
    diag["closed_vs_operator_deviation"] = s.closed_vs_operator_deviation;
    state = s.state;
  } else if (kind == "thermal") {
    const ThermalSolution s = thermal_solution(params, cfg.trunc, normalize);
    diag["prefactor"] = complex_to_json(s.prefactor);
    diag["bracket"] = complex_to_json(s.bracket);
    state = s.state;
  } else {
    throw UsageError("kind must be general or thermal, got '" + kind + "'");
  }
  const double residual = apply_wave_operator(params, state, cfg.trunc).residual;
  emit.json(state_envelope(params, state, residual, std::move(diag)));
  return kOk;
}

FockState sector_state(const DiskParam& omega, const std::string& sector,
                       const TruncationConfig& cfg) {
  if (sector == "even") return mp2_even_state(omega, cfg);
  if (sector == "odd") return mp2_odd_state(omega, cfg);
  if (sector == "full") return mp2_full_state(omega, cfg);
  throw UsageError("sector must be even, odd or full, got '" + sector + "'");
}

int emit_scan(const std::vector<DiskParam>& path, int max_level, const RunConfig& cfg,
              const Emitter& emit) {
  if (max_level < 0) throw UsageError("max-level must be non-negative");
  ScanOptions opt;
  opt.max_level = max_level;
  const auto points = edge_limit_scan(path, cfg.trunc, opt);
  if (emit.format == Format::csv)
    write_scan_csv(emit.os, points);
  else
    emit.json(scan_to_json(points));
  return kOk;
}

std::vector<DiskParam> disk_path(const std::vector<double>& radii, double phase) {
  std::vector<DiskParam> path;
  path.reserve(radii.size());
  for (double r : radii) path.emplace_back(std::polar(r, phase));
  return path;
}

int cmd_spectrum(const std::string& omega_text, const PhysicsFlags& phys, const std::string& sector,
                 const std::string& scan, int max_level, const RunConfig& cfg,
                 const Emitter& emit) {
  const bool have_omega = !omega_text.empty();
  if (have_omega == phys.given())
    throw UsageError("give exactly one of --omega or --m/--eps (with optional --p)");
  const DiskParam omega =
      have_omega ? DiskParam(parse_complex("omega", omega_text)) : omega_from_physics(phys.params());

  if (!scan.empty())
    return emit_scan(disk_path(parse_range("scan", scan), std::arg(omega.value())), max_level, cfg,
                     emit);

  const NumberDistribution d = number_distribution(sector_state(omega, sector, cfg.trunc));
  if (emit.format == Format::csv) {
    write_spectrum_csv(emit.os, d);
  } else {
    ojson doc;
    doc["omega"] = complex_to_json(omega.value());
    doc["sector"] = sector;
    doc["dim"] = cfg.trunc.dim;
    doc["probability"] = d.probability;
    doc["summary"] = summary_to_json(d);
    emit.json(doc);
  }
  return kOk;
}

int cmd_bch(const std::string& a, const std::string& b, const std::string& c, const RunConfig& cfg,
            const Emitter& emit) {
  const BchCoefficients coeffs{parse_complex("a", a), parse_complex("b", b), parse_complex("c", c)};
  try {
    emit.json(disentangle_report_to_json(bch_disentangle(coeffs, cfg.trunc)));
    return kOk;
  } catch (const DisentangleError& e) {
    ojson doc = disentangle_report_to_json(e.report());
    doc["error"] = e.what();
    emit.json(doc);
    return kValidation;
  }
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

int cmd_bargmann_eval(const std::string& state_path, const std::string& re_range,
                      const std::string& im_range, const Emitter& emit) {
  nlohmann::json doc = read_json_file(state_path);
  // Accept a bare state document or any envelope that carries one.
  if (doc.is_object() && doc.contains("state")) doc = doc["state"];
  FockState phi(CVector::Zero(2));
  try {
    phi = state_from_json(doc);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  const BargmannFunction f = to_bargmann(phi);
  const auto xs = parse_range("re", re_range);
  const auto ys = parse_range("im", im_range);

  if (emit.format == Format::csv) {
    emit.os << "re,im,abs_f\n";
    for (double y : ys)
      for (double x : xs)
        emit.os << format_double(x) << ',' << format_double(y) << ','
                << format_double(std::abs(f(cplx(x, y)))) << '\n';
  } else {
    ojson rows = ojson::array();
    for (double y : ys)
      for (double x : xs) {
        const cplx v = f(cplx(x, y));
        ojson row;
        row["re"] = x;
        row["im"] = y;
        row["f"] = complex_to_json(v);
        row["abs_f"] = std::abs(v);
        rows.push_back(std::move(row));
      }
    emit.json(rows);
  }
  return kOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const EnvLookup& env) {
  CLI::App app{"Truncated Fock-space toolkit for the metaplectic wave equation", "mpfock"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags flags;
  auto flag = [&](const char* name, std::optional<std::string>& slot, const char* help) {
    app.add_option_function<std::string>(name, [&slot](const std::string& v) { slot = v; }, help);
  };
  flag("--dim", flags.dim, "truncation dimension N");
  flag("--tol", flags.tol, "validation tolerance");
  flag("--margin", flags.margin, "interior margin");
  flag("--format", flags.format, "json or csv");
  flag("--out", flags.out, "write output to this file");
  flag("--config", flags.config, "JSON config file");

  std::string suite;
  auto* verify = app.add_subcommand("verify", "run an invariant suite");
  verify->add_option("--suite", suite, "fock, bch, generators, bargmann, wave or all")->required();

  PhysicsFlags vac_phys;
  std::string vac_mode = "thermal";
  auto* vacuum = app.add_subcommand("vacuum", "vacuum state of the wave operator");
  vac_phys.attach(vacuum, true);
  vacuum->add_option("--mode", vac_mode, "thermal or leastsquares");

  PhysicsFlags sol_phys;
  std::string sol_kind = "general", coef_a, coef_b;
  bool normalize = false;
  auto* solution = app.add_subcommand("solution", "squeezed solution state");
  sol_phys.attach(solution, true);
  solution->add_option("--kind", sol_kind, "general or thermal");
  solution->add_option("--coef-a", coef_a, "fiducial |0> coefficient, x or x,y");
  solution->add_option("--coef-b", coef_b, "fiducial |1> coefficient, x or x,y");
  solution->add_flag("--normalize", normalize, "rescale to unit norm");

  PhysicsFlags spec_phys;
  std::string spec_omega, spec_sector = "full", spec_scan;
  int spec_levels = 10;
  auto* spectrum = app.add_subcommand("spectrum", "photon-number distribution of an Mp(2) state");
  spectrum->add_option("--omega", spec_omega, "disk parameter, x or x,y");
  spec_phys.attach(spectrum, false);
  spectrum->add_option("--sector", spec_sector, "even, odd or full");
  spectrum->add_option("--scan", spec_scan, "|omega| path start..end:steps at the phase of omega");
  spectrum->add_option("--max-level", spec_levels, "largest level m in scans");

  std::string bch_a = "0", bch_b = "0", bch_c = "0";
  auto* bch = app.add_subcommand("bch", "disentangle exp(A(aa+ + a+a) + B a+^2 + C a^2)");
  bch->add_option("--a", bch_a, "A, x or x,y");
  bch->add_option("--b", bch_b, "B, x or x,y");
  bch->add_option("--c", bch_c, "C, x or x,y");

  std::string eval_state, eval_re = "-2..2:41", eval_im = "-2..2:41";
  auto* eval = app.add_subcommand("bargmann-eval", "evaluate a stored state's Bargmann function");
  eval->add_option("--state", eval_state, "state JSON file")->required();
  eval->add_option("--re", eval_re, "real-axis grid start..end:steps");
  eval->add_option("--im", eval_im, "imaginary-axis grid start..end:steps");

  std::string scan_path = "0.9..0.999:4";
  double scan_phase = 0.0;
  int scan_levels = 10;
  auto* limit = app.add_subcommand("limit-scan", "per-level odd/even ratios toward |omega| -> 1");
  limit->add_option("--path", scan_path, "|omega| path start..end:steps");
  limit->add_option("--phase", scan_phase, "arg omega");
  limit->add_option("--max-level", scan_levels, "largest level m");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    const RunConfig cfg = resolve_config(flags, env);
    const bool tabular = spectrum->parsed() || eval->parsed() || limit->parsed();
    const Format format = cfg.format.value_or(tabular ? Format::csv : Format::json);

    // Render into a buffer so a failed command never leaves a partial file.
    std::ostringstream buffer;
    const Emitter emit{format, buffer};
    int code = kOk;
    if (verify->parsed()) code = cmd_verify(suite, cfg, emit);
    if (vacuum->parsed()) code = cmd_vacuum(vac_phys.params(), vac_mode, cfg, emit);
    if (solution->parsed())
      code = cmd_solution(sol_phys.params(), sol_kind, coef_a, coef_b, normalize, cfg, emit);
    if (spectrum->parsed())
      code = cmd_spectrum(spec_omega, spec_phys, spec_sector, spec_scan, spec_levels, cfg, emit);
    if (bch->parsed()) code = cmd_bch(bch_a, bch_b, bch_c, cfg, emit);
    if (eval->parsed()) code = cmd_bargmann_eval(eval_state, eval_re, eval_im, emit);
    if (limit->parsed())
      code = emit_scan(disk_path(parse_range("path", scan_path), scan_phase), scan_levels, cfg, emit);

    if (cfg.out_path) {
      std::ofstream file(*cfg.out_path, std::ios::binary);
      if (!file) throw UsageError("cannot write '" + *cfg.out_path + "'");
      file << buffer.str();
    } else {
      out << buffer.str();
    }
    return code;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConfigError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const TruncationError& e) {
    err << "error: " << e.what() << " (increase --dim)\n";
    return kDomain;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const ValidationError& e) {
    err << "validation failure: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  }
}

}  // namespace

EnvLookup process_env() {
  return [](const std::string& name) -> std::optional<std::string> {
    if (const char* v = std::getenv(name.c_str())) return std::string(v);
    return std::nullopt;
  };
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const EnvLookup& env) {
  return run(args, out, err, env);
}

}  // namespace mpfock::cli
