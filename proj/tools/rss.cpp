// rss: command-line front end for eigenfunctions, resolvent kernels,
// spectral transforms and the verification suites.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rss/rss.hpp"
#include "rss/verify.hpp"

namespace {

using json = nlohmann::json;
using C = std::complex<double>;

enum Exit { kOk = 0, kVerifyFail = 1, kInvalid = 2, kIo = 3, kPole = 4, kNumeric = 5 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int l = 1;
  int xi = 1;
  std::string kappa = "0";
  double lambda = 1.0;
  double z_re = 1.0;
  double z_im = 0.5;
  double r_min = 0.01;
  double r_max = 10.0;
  int n_points = 200;
  double tol = 1e-10;
  std::string out;
  std::string format = "csv";
};

double parse_kappa(const std::string& s) {
  if (s == "inf" || s == "+inf" || s == "infinity" || s == "Inf") return INFINITY;
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw rss::InvalidSpec("kappa: cannot parse '" + s + "'");
  }
  if (pos != s.size() || !std::isfinite(v)) throw rss::InvalidSpec("kappa: cannot parse '" + s + "'");
  return v;
}

rss::ExtensionSpec spec_of(const RunConfig& c) { return rss::make_extension_spec(c.l, c.xi, parse_kappa(c.kappa)); }

std::vector<double> r_grid(const RunConfig& c) {
  if (!(c.r_min > 0) || !(c.r_max > c.r_min)) throw rss::InvalidInput("need 0 < r-min < r-max");
  if (c.n_points < 2) throw rss::InvalidInput("n-points must be >= 2");
  std::vector<double> g(c.n_points);
  for (int i = 0; i < c.n_points; ++i) g[i] = c.r_min + (c.r_max - c.r_min) * i / (c.n_points - 1);
  return g;
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const json& v) {
  if (v.is_number()) return num(v.get<double>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  std::string s = v.get<std::string>();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;

  void add(std::vector<json> row) { rows.push_back(std::move(row)); }
};

std::string render(const Table& t, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    json arr = json::array();
    for (const auto& row : t.rows) {
      json obj = json::object();
      for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = row[i];
      arr.push_back(obj);
    }
    os << arr.dump(1) << '\n';
    return os.str();
  }
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
    os << '\n';
  }
  return os.str();
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw IoError("write to '" + path + "' failed");
}

std::string complex_str(C z) { return num(z.real()) + (z.imag() < 0 ? " - " : " + ") + num(std::abs(z.imag())) + "i"; }

// --------------------------------------------------------------- commands

int cmd_eigfun(const RunConfig& c) {
  const auto spec = spec_of(c);
  if (!(c.lambda > 0)) throw rss::InvalidInput("lambda must be positive");
  const auto u = rss::continuous_eigenfunction(spec, c.lambda);
  Table t{{"r", "u"}, {}};
  for (double r : r_grid(c)) t.add({r, u(r)});
  emit(render(t, c.format), c.out);
  return kOk;
}

int cmd_resolvent(const RunConfig& c, bool split) {
  const auto spec = spec_of(c);
  const rss::SpectralPointZ<double> z(C(c.z_re, c.z_im));
  try {
    const rss::ResolventKernel<double> R(spec, z);
    Table t{{"r", "s", "re", "im"}, {}};
    if (split)
      for (const char* p : {"R0", "R1", "R2", "Rg"}) {
        t.columns.push_back(std::string(p) + "_re");
        t.columns.push_back(std::string(p) + "_im");
      }
    const auto g = r_grid(c);
    for (double r : g)
      for (double s : g) {
        const auto k = R.split(r, s);
        std::vector<json> row = {r, s, k.total.real(), k.total.imag()};
        if (split)
          for (C part : {k.R0, k.R1, k.R2, k.Rg}) {
            row.push_back(part.real());
            row.push_back(part.imag());
          }
        t.add(std::move(row));
      }
    emit(render(t, c.format), c.out);
  } catch (const rss::PoleError& e) {
    std::cerr << "error: " << e.what() << "\nz_p = " << complex_str(rss::pole_location<double>(spec)) << '\n';
    return kPole;
  }
  return kOk;
}

int cmd_verify(const RunConfig& c, const std::vector<std::string>& only, bool inject) {
  rss::VerifyOptions o;
  o.only = only;
  o.inject_table_fault = inject;
  const auto results = rss::run_verify(o);
  Table t{{"suite", "check", "pass", "value", "tolerance", "detail"}, {}};
  for (const auto& r : results) t.add({r.suite, r.name, r.pass, r.value, r.tolerance, r.detail});
  emit(render(t, c.format), c.out);
  const bool ok = rss::all_passed(results);
  std::cerr << (ok ? "verify: all checks passed\n" : "verify: FAILED\n");
  return ok ? kOk : kVerifyFail;
}

rss::SampledFunction<double> read_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open '" + path + "'");
  std::vector<double> r, v;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    try {
      if (comma == std::string::npos) throw std::invalid_argument("no comma");
      std::size_t p1 = 0, p2 = 0;
      const std::string a = line.substr(0, comma), b = line.substr(comma + 1);
      const double x = std::stod(a, &p1), y = std::stod(b, &p2);
      if (p1 != a.size() || (p2 != b.size() && b.find(',', p2) != p2)) throw std::invalid_argument("trailing text");
      r.push_back(x);
      v.push_back(y);
    } catch (const std::exception&) {
      if (lineno == 1) continue;  // header
      throw rss::InvalidInput(path + ":" + std::to_string(lineno) + ": cannot parse '" + line + "'");
    }
  }
  return rss::SampledFunction<double>(r, v);
}

const std::vector<std::vector<double>>& builtin_rates() {
  static const std::vector<std::vector<double>> rates = {
      {1.0, 1.5, 2.0, 2.5}, {0.8, 1.2, 1.7, 2.3}, {1.0, 1.3, 1.9, 2.6, 3.1}, {1.1, 1.6, 2.2, 2.8}, {0.9, 1.4, 2.0, 2.7}};
  return rates;
}

int cmd_transform(const RunConfig& c, int builtin, const std::string& input, const std::string& phi, bool round_trip) {
  const auto spec = spec_of(c);
  const rss::SpectralTransform<double> T(spec);
  rss::SpectralTransform<double>::Vector f;
  if (!input.empty()) {
    const auto s = read_csv(input);
    f = T.sample_callable([&](double r) { return s(r); });
  } else {
    if (builtin < 0 || builtin >= int(builtin_rates().size()))
      throw rss::InvalidInput("builtin must be in [0, " + std::to_string(builtin_rates().size() - 1) + "]");
    f = T.sample(rss::domain_test_function(spec, builtin_rates()[builtin], builtin));
  }
  const auto coeffs = T.forward(f);
  const auto& rn = T.radial_grid().nodes;
  if (!phi.empty()) {
    std::function<C(double)> fn;
    if (phi == "sqrt") {
      fn = [](double x) { return rss::phi_sqrt(x); };
    } else if (phi == "identity") {
      fn = [](double x) { return C(x); };
    } else if (phi == "resolvent") {
      const rss::SpectralPointZ<double> z(C(c.z_re, c.z_im));
      const C z6 = std::pow(z.value(), 6);
      fn = [z6](double x) { return 1.0 / (C(x) - z6); };
    } else {
      throw rss::InvalidInput("phi must be sqrt, identity or resolvent");
    }
    const auto g = T.apply_function(fn, coeffs);
    Table t{{"r", "re", "im"}, {}};
    for (std::size_t j = 0; j < rn.size(); ++j)
      if (rn[j] >= c.r_min && rn[j] <= c.r_max) t.add({rn[j], g(Eigen::Index(j)).real(), g(Eigen::Index(j)).imag()});
    emit(render(t, c.format), c.out);
    return kOk;
  }
  if (round_trip) {
    const auto back = T.inverse(coeffs);
    Table t{{"r", "f", "reconstructed"}, {}};
    for (std::size_t j = 0; j < rn.size(); ++j)
      if (rn[j] >= c.r_min && rn[j] <= c.r_max) t.add({rn[j], f(Eigen::Index(j)), back(Eigen::Index(j))});
    emit(render(t, c.format), c.out);
    std::cerr << "round_trip_error = " << num(T.round_trip_error(f)) << '\n'
              << "parseval_defect = " << num(T.parseval_defect(f)) << '\n';
    return kOk;
  }
  Table t{{"lambda", "weight", "c"}, {}};
  for (std::size_t i = 0; i < coeffs.lambda.size(); ++i) t.add({coeffs.lambda[i], coeffs.weights[i], coeffs.c[i]});
  emit(render(t, c.format), c.out);
  if (coeffs.c_discrete) std::cerr << "c_discrete = " << num(*coeffs.c_discrete) << '\n';
  return kOk;
}

int cmd_spectrum(const RunConfig& c) {
  const auto spec = spec_of(c);
  const auto b = rss::bound_state<double>(spec);
  if (!b) {
    if (c.format == "json") std::cout << json{{"bound_state", false}}.dump() << '\n';
    else std::cout << "no bound state\n";
    return kOk;
  }
  const rss::CompiledRadialFunction<double> v(b->v);
  const double norm =
      std::sqrt(rss::quad_semiaxis([&](double r) { return std::norm(v(r)); }, 2 * b->v.base().decay_rate(), 1e-12));
  char nbuf[32];
  std::snprintf(nbuf, sizeof nbuf, "%.6f", norm);
  if (c.format == "json") {
    std::cout << json{{"bound_state", true},     {"z_p_re", b->z_p.real()}, {"z_p_im", b->z_p.imag()},
                      {"energy", b->energy},     {"norm", norm}}
                     .dump()
              << '\n';
  } else {
    std::cout << "z_p = " << complex_str(b->z_p) << '\n'
              << "energy = " << num(b->energy) << '\n'
              << "norm = " << nbuf << '\n';
  }
  if (!c.out.empty()) {
    Table t{{"r", "v"}, {}};
    for (double r : r_grid(c)) t.add({r, v(r).real()});
    emit(render(t, c.format), c.out);
  }
  return kOk;
}

// Flags from a JSON config file are appended unless given on the command line.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + long(i), args.begin() + long(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + long(i));
      break;
    }
  }
  if (path.empty()) return args;
  std::ifstream f(path);
  if (!f) throw IoError("cannot open config '" + path + "'");
  json cfg;
  try {
    cfg = json::parse(f);
  } catch (const json::exception& e) {
    throw rss::InvalidInput("config '" + path + "': " + e.what());
  }
  if (!cfg.is_object()) throw rss::InvalidInput("config '" + path + "' must be a JSON object");
  for (const auto& [key, val] : cfg.items()) {
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    bool present = false;
    for (const auto& a : args) present = present || a == flag || a.rfind(flag + "=", 0) == 0;
    if (present) continue;
    auto scalar = [&](const json& v) {
      if (v.is_string()) return v.get<std::string>();
      if (v.is_number_integer()) return std::to_string(v.get<long long>());
      if (v.is_number()) return num(v.get<double>());
      throw rss::InvalidInput("config key '" + key + "' has an unsupported type");
    };
    if (val.is_boolean()) {
      if (val.get<bool>()) args.push_back(flag);
    } else if (val.is_array()) {
      for (const auto& x : val) {
        args.push_back(flag);
        args.push_back(scalar(x));
      }
    } else {
      args.push_back(flag);
      args.push_back(scalar(val));
    }
  }
  return args;
}

void add_spec_flags(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--l", c.l, "angular momentum (1 or 2)");
  cmd->add_option("--xi", c.xi, "boundary family (1 or 2)");
  cmd->add_option("--kappa", c.kappa, "extension parameter, real or inf");
  cmd->add_option("--out", c.out, "output file (default stdout)");
  cmd->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

void add_grid_flags(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--r-min", c.r_min, "first grid point");
  cmd->add_option("--r-max", c.r_max, "last grid point");
  cmd->add_option("--n-points", c.n_points, "number of grid points");
}

void add_z_flags(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--z-re", c.z_re, "Re z");
  cmd->add_option("--z-im", c.z_im, "Im z");
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  args = expand_config(std::move(args));

  RunConfig c;
  bool split = false, inject = false, round_trip = false;
  std::vector<std::string> only;
  int builtin = 0;
  std::string input, phi;
  double window_min = 0, window_max = INFINITY;

  CLI::App app{"Self-adjoint extensions of the cubed radial Laplacian"};
  app.require_subcommand(1);

  auto* eig = app.add_subcommand("eigfun", "continuous-spectrum eigenfunction u(r)");
  add_spec_flags(eig, c);
  add_grid_flags(eig, c);
  eig->add_option("--lambda", c.lambda, "spectral parameter (> 0)");

  auto* res = app.add_subcommand("resolvent", "resolvent kernel R(r, s; z) on a square grid");
  add_spec_flags(res, c);
  add_grid_flags(res, c);
  add_z_flags(res, c);
  res->add_flag("--split", split, "also write the four kernel parts");

  auto* ver = app.add_subcommand("verify", "run the verification suites");
  ver->add_option("--only", only, "run only the named suite(s)");
  ver->add_flag("--inject-table-fault", inject, "flip the sign of one tabulated coefficient");
  ver->add_option("--out", c.out, "output file (default stdout)");
  ver->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  ver->add_option("--tol", c.tol, "unused; accepted for config symmetry");

  auto* tr = app.add_subcommand("transform", "forward/inverse spectral transform and functional calculus");
  add_spec_flags(tr, c);
  add_z_flags(tr, c);
  tr->add_option("--r-min", window_min, "smallest r written");
  tr->add_option("--r-max", window_max, "largest r written");
  auto* src = tr->add_option("--builtin", builtin, "built-in test function index (0-4)");
  tr->add_option("--input", input, "CSV file of r,f(r)")->excludes(src);
  tr->add_option("--phi", phi, "sqrt, identity or resolvent")->check(CLI::IsMember({"sqrt", "identity", "resolvent"}));
  tr->add_flag("--round-trip", round_trip, "write f and its reconstruction");

  auto* sp = app.add_subcommand("spectrum", "bound state z_p, energy and v(r)");
  add_spec_flags(sp, c);
  add_grid_flags(sp, c);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  if (*eig) return cmd_eigfun(c);
  if (*res) return cmd_resolvent(c, split);
  if (*ver) return cmd_verify(c, only, inject);
  if (*tr) {
    c.r_min = window_min;
    c.r_max = window_max;
    return cmd_transform(c, builtin, input, phi, round_trip);
  }
  return cmd_spectrum(c);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const rss::PoleError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kPole;
  } catch (const rss::QuadratureFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumeric;
  } catch (const rss::FunctionDomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumeric;
  } catch (const rss::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }
}
