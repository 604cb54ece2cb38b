// mb: command-line front end over the C interface.
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mb/mb.h"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerifyFailed = 2;
constexpr int kExitRuntime = 3;

struct CliError : std::runtime_error {
  CliError(int code, const std::string& msg) : std::runtime_error(msg), code(code) {}
  int code;
};

void check(mb_status s) {
  if (s == MB_OK) return;
  throw CliError(s == MB_ERR_VALIDATION ? kExitUsage : kExitRuntime, mb_last_error());
}

std::string take_string(char* s) {
  std::string out(s ? s : "");
  mb_string_free(s);
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string utc_timestamp() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct ParamFlags {
  std::string family = "laguerre";
  double theta = 1, c = 0, c1 = 0, c2 = 0;
  int n = 1;

  void add(CLI::App* app, bool with_n = true) {
    app->add_option("--family", family, "laguerre | jacobi | theta0")
        ->check(CLI::IsMember({"laguerre", "jacobi", "theta0"}))
        ->capture_default_str();
    app->add_option("--theta", theta, "theta (ignored for theta0)")->capture_default_str();
    app->add_option("--c", c, "Laguerre exponent")->capture_default_str();
    app->add_option("--c1", c1, "Jacobi exponent c1")->capture_default_str();
    app->add_option("--c2", c2, "Jacobi exponent c2")->capture_default_str();
    if (with_n) app->add_option("--n", n, "matrix dimension N")->capture_default_str();
  }

  mb_params get() const {
    mb_params p{};
    p.family = family == "jacobi" ? MB_FAMILY_JACOBI : family == "theta0" ? MB_FAMILY_THETA_ZERO : MB_FAMILY_LAGUERRE;
    p.theta = p.family == MB_FAMILY_THETA_ZERO ? 0.0 : theta;
    p.c = c;
    p.c1 = c1;
    p.c2 = c2;
    p.n = n;
    return p;
  }
};

json params_json(const mb_params& p) {
  char* s = nullptr;
  check(mb_params_to_json(&p, &s));
  return json::parse(take_string(s));
}

// Global-density parameters need only family and theta.
json density_params_json(const mb_params& p) {
  json j{{"family", p.family == MB_FAMILY_JACOBI ? "jacobi" : p.family == MB_FAMILY_THETA_ZERO ? "theta0" : "laguerre"},
         {"theta", p.theta}};
  return j;
}

class Output {
 public:
  explicit Output(const std::string& path) : path_(path) {
    if (!path.empty()) {
      file_.open(path, std::ios::out | std::ios::trunc);
      if (!file_) throw CliError(kExitUsage, "cannot open --out file '" + path + "'");
    }
  }
  std::ostream& os() { return path_.empty() ? std::cout : file_; }
  void finish() {
    os().flush();
    if (!os()) throw CliError(kExitRuntime, "write failed for '" + (path_.empty() ? "stdout" : path_) + "'");
  }

 private:
  std::string path_;
  std::ofstream file_;
};

struct Manifest {
  json j;
  Manifest(const std::string& command, const std::vector<std::string>& argv) {
    j["command"] = command;
    j["argv"] = argv;
    j["timestamp"] = utc_timestamp();
    j["version"] = mb_version();
    j["git_describe"] = mb_git_describe();
  }
  std::string line() const { return "# manifest: " + j.dump(); }
};

// Human-readable logs go to stdout unless stdout carries the data.
std::ostream& log_stream(const std::string& out_path) { return out_path.empty() ? std::cerr : std::cout; }

void write_row(std::ostream& os, const std::vector<double>& row) {
  for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << fmt(row[i]);
  os << '\n';
}

std::vector<std::uint64_t> parse_seeds(const std::string& s) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(tok, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != tok.size() || tok.front() == '-') throw CliError(kExitUsage, "bad seed '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) throw CliError(kExitUsage, "--seeds needs at least one seed");
  return out;
}

template <class T>
std::vector<T> parse_list(const std::string& s, const char* what) {
  std::vector<T> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      size_t pos = 0;
      const double v = std::stod(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      out.push_back(static_cast<T>(v));
    } catch (const std::exception&) {
      throw CliError(kExitUsage, std::string("bad value in ") + what + ": '" + tok + "'");
    }
  }
  return out;
}

// Default kernel window in the unscaled variable: the bulk of the finite-N spectrum.
void kernel_window(const mb_params& p, double& lo, double& hi) {
  if (p.family == MB_FAMILY_JACOBI) {
    lo = 0;
    hi = 1;
    return;
  }
  double slo = 0, shi = 0;
  check(mb_density_support(&p, &slo, &shi));
  lo = 0;
  if (p.family == MB_FAMILY_THETA_ZERO)
    hi = 1.25 * p.n * shi;
  else
    hi = 1.25 * p.n * p.theta * std::pow(shi, 1 / p.theta);
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  CLI::App app{"Muttalib-Borodin ensembles: sampling, densities, kernels, verification"};
  app.set_version_flag("--version", std::string(MB_VERSION_STRING) + " (" + mb_git_describe() + ")");
  app.require_subcommand(1);

  // sample
  ParamFlags sp;
  std::string sample_method = "matrix", sample_out;
  int sample_replicas = 1;
  std::uint64_t sample_seed = 0;
  auto* sample = app.add_subcommand("sample", "draw spectra, one CSV row per replica");
  sp.add(sample);
  sample->add_option("--method", sample_method, "matrix | corner")
      ->check(CLI::IsMember({"matrix", "corner"}))
      ->capture_default_str();
  sample->add_option("--replicas", sample_replicas)->capture_default_str();
  sample->add_option("--seed", sample_seed)->capture_default_str();
  sample->add_option("--out", sample_out, "output CSV (stdout if omitted)");

  // density
  ParamFlags dp;
  int density_grid = 100;
  std::optional<double> density_lo, density_hi;
  std::string density_out;
  auto* density = app.add_subcommand("density", "limiting global density on a grid: x, density");
  dp.add(density, false);
  density->add_option("--grid", density_grid, "number of points x_i = lo + (hi-lo) i / grid")->capture_default_str();
  density->add_option("--lo", density_lo, "left end (default: support start)");
  density->add_option("--hi", density_hi, "right end (default: support end)");
  density->add_option("--out", density_out);

  // moments
  ParamFlags mp;
  unsigned moments_pmax = 6;
  std::string moments_out;
  auto* moments = app.add_subcommand("moments", "moments of the limiting global density: p, moment");
  mp.add(moments, false);
  moments->add_option("--pmax", moments_pmax)->capture_default_str();
  moments->add_option("--out", moments_out);

  // kernel
  ParamFlags kp;
  int kernel_grid = 10;
  std::optional<double> kernel_lo, kernel_hi;
  std::string kernel_out;
  auto* kernel = app.add_subcommand("kernel", "finite-N correlation kernel on a grid: x, y, K");
  kp.add(kernel);
  kernel->add_option("--grid", kernel_grid, "points per axis, x_i = lo + (hi-lo)(i+1/2)/grid")->capture_default_str();
  kernel->add_option("--lo", kernel_lo);
  kernel->add_option("--hi", kernel_hi);
  kernel->add_option("--out", kernel_out);

  // hardedge
  ParamFlags hp;
  int hard_grid = 10;
  double hard_hi = 4;
  std::string hard_out, hard_report, hard_nlist = "25,50,100", hard_points = "0.5:1.5,1:1,2:0.7";
  auto* hard = app.add_subcommand("hardedge", "limiting hard-edge kernel on a grid: x, y, K");
  hp.add(hard, false);
  hard->add_option("--grid", hard_grid, "points per axis, x_i = hi (i+1)/grid")->capture_default_str();
  hard->add_option("--hi", hard_hi)->capture_default_str();
  hard->add_option("--out", hard_out);
  hard->add_option("--report", hard_report, "write the finite-N convergence report (JSON) here");
  hard->add_option("--n-list", hard_nlist, "N ladder for the convergence report")->capture_default_str();
  hard->add_option("--points", hard_points, "x:y pairs for the convergence report")->capture_default_str();

  // verify
  std::string verify_suite = "all", verify_seeds = "1,2,3,4,5", verify_out;
  auto* verify = app.add_subcommand("verify", "run verification suites; JSON array of reports");
  std::vector<std::string> suites{"all"};
  for (int i = 0; i < mb_verify_suite_count(); ++i) suites.push_back(mb_verify_suite_name(i));
  verify->add_option("--suite", verify_suite)->check(CLI::IsMember(suites))->capture_default_str();
  verify->add_option("--seeds", verify_seeds, "comma-separated seeds")->capture_default_str();
  verify->add_option("--out", verify_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (sample->parsed()) {
      const mb_params p = sp.get();
      check(mb_params_validate(&p));
      if (sample_replicas < 0) throw CliError(kExitUsage, "--replicas must be >= 0");
      mb_spectra* raw = nullptr;
      check(mb_sample(&p, sample_method == "corner" ? MB_METHOD_CORNER : MB_METHOD_MATRIX, sample_seed,
                      sample_replicas, 0, &raw));
      std::unique_ptr<mb_spectra, decltype(&mb_spectra_free)> s(raw, mb_spectra_free);
      Manifest m("sample", args);
      m.j["params"] = params_json(p);
      m.j["seed"] = sample_seed;
      m.j["method"] = sample_method;
      m.j["replicas"] = sample_replicas;
      Output out(sample_out);
      out.os() << m.line() << '\n';
      const int dim = mb_spectra_size(s.get());
      for (int r = 0; r < mb_spectra_count(s.get()); ++r) {
        const double* row = mb_spectra_row(s.get(), r);
        write_row(out.os(), std::vector<double>(row, row + dim));
      }
      out.finish();
    } else if (density->parsed()) {
      const mb_params p = dp.get();
      double lo = 0, hi = 0;
      check(mb_density_support(&p, &lo, &hi));
      lo = density_lo.value_or(lo);
      hi = density_hi.value_or(hi);
      if (density_grid < 1 || !(hi > lo)) throw CliError(kExitUsage, "need --grid >= 1 and hi > lo");
      Manifest m("density", args);
      m.j["params"] = density_params_json(p);
      m.j["seed"] = nullptr;
      m.j["columns"] = {"x", "density"};
      m.j["grid"] = {{"lo", lo}, {"hi", hi}, {"points", density_grid}};
      Output out(density_out);
      out.os() << m.line() << '\n';
      for (int i = 0; i < density_grid; ++i) {
        const double x = lo + (hi - lo) * i / density_grid;
        double v = 0;
        check(mb_density(&p, x, &v));
        write_row(out.os(), {x, v});
      }
      out.finish();
    } else if (moments->parsed()) {
      const mb_params p = mp.get();
      Manifest m("moments", args);
      m.j["params"] = density_params_json(p);
      m.j["seed"] = nullptr;
      m.j["columns"] = {"p", "moment"};
      std::vector<std::vector<double>> rows;
      for (unsigned k = 0; k <= moments_pmax; ++k) {
        double v = 0;
        check(mb_moment(&p, k, &v));
        rows.push_back({double(k), v});
      }
      Output out(moments_out);
      out.os() << m.line() << '\n';
      for (const auto& r : rows) write_row(out.os(), r);
      out.finish();
    } else if (kernel->parsed()) {
      const mb_params p = kp.get();
      check(mb_params_validate(&p));
      double lo = 0, hi = 0;
      kernel_window(p, lo, hi);
      lo = kernel_lo.value_or(lo);
      hi = kernel_hi.value_or(hi);
      if (kernel_grid < 1 || !(hi > lo)) throw CliError(kExitUsage, "need --grid >= 1 and hi > lo");
      mb_kernel* raw = nullptr;
      check(mb_kernel_create(&p, &raw));
      std::unique_ptr<mb_kernel, decltype(&mb_kernel_free)> k(raw, mb_kernel_free);
      std::vector<std::vector<double>> rows;
      bool experimental = false;
      double max_err = 0;
      for (int i = 0; i < kernel_grid; ++i)
        for (int j = 0; j < kernel_grid; ++j) {
          const double x = lo + (hi - lo) * (i + 0.5) / kernel_grid;
          const double y = lo + (hi - lo) * (j + 0.5) / kernel_grid;
          double v = 0, err = 0;
          int exp = 0;
          check(mb_kernel_eval(k.get(), x, y, &v, &err, &exp));
          experimental = experimental || exp;
          max_err = std::max(max_err, err);
          rows.push_back({x, y, v});
        }
      Manifest m("kernel", args);
      m.j["params"] = params_json(p);
      m.j["seed"] = nullptr;
      m.j["columns"] = {"x", "y", "K"};
      m.j["grid"] = {{"lo", lo}, {"hi", hi}, {"points", kernel_grid}};
      if (experimental) {
        m.j["experimental"] = true;
        m.j["max_error_estimate"] = max_err;
        log_stream(kernel_out) << "note: non-integer c2 Jacobi kernel; largest error estimate " << fmt(max_err) << "\n";
      }
      Output out(kernel_out);
      out.os() << m.line() << '\n';
      for (const auto& r : rows) write_row(out.os(), r);
      out.finish();
    } else if (hard->parsed()) {
      const mb_params p = hp.get();
      if (p.family == MB_FAMILY_THETA_ZERO) throw CliError(kExitUsage, "hardedge needs theta > 0");
      const double c = p.family == MB_FAMILY_JACOBI ? p.c1 : p.c;
      if (hard_grid < 1 || !(hard_hi > 0)) throw CliError(kExitUsage, "need --grid >= 1 and --hi > 0");
      std::vector<std::vector<double>> rows;
      for (int i = 0; i < hard_grid; ++i)
        for (int j = 0; j < hard_grid; ++j) {
          const double x = hard_hi * (i + 1) / hard_grid, y = hard_hi * (j + 1) / hard_grid;
          double v = 0;
          check(mb_hard_edge_kernel(c, p.theta, x, y, &v));
          rows.push_back({x, y, v});
        }
      Manifest m("hardedge", args);
      json lim{{"c", c}, {"theta", p.theta}};
      m.j["params"] = lim;
      m.j["seed"] = nullptr;
      m.j["columns"] = {"x", "y", "K"};
      m.j["grid"] = {{"hi", hard_hi}, {"points", hard_grid}};
      int exit_code = kExitOk;
      if (!hard_report.empty()) {
        mb_params q = p;
        q.n = 1;
        const auto ns = parse_list<int>(hard_nlist, "--n-list");
        std::vector<double> xs, ys;
        std::stringstream ss(hard_points);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
          const auto colon = tok.find(':');
          if (colon == std::string::npos) throw CliError(kExitUsage, "--points wants x:y pairs");
          const auto xy = parse_list<double>(tok.substr(0, colon) + "," + tok.substr(colon + 1), "--points");
          if (xy.size() != 2) throw CliError(kExitUsage, "--points wants x:y pairs");
          xs.push_back(xy[0]);
          ys.push_back(xy[1]);
        }
        char* rep = nullptr;
        int pass = 0;
        check(mb_hard_edge_convergence(&q, ns.data(), int(ns.size()), xs.data(), ys.data(), int(xs.size()), &rep,
                                       &pass));
        json r = json::parse(take_string(rep));
        Manifest rm("hardedge", args);
        rm.j["params"] = params_json(q);
        rm.j["seed"] = nullptr;
        r["manifest"] = rm.j;
        Output ro(hard_report);
        ro.os() << r.dump(2) << '\n';
        ro.finish();
        log_stream(hard_out) << "convergence: errors " << r["detail"]["errors"].dump() << (pass ? " (decreasing)\n" : " (NOT decreasing)\n");
        if (!pass) exit_code = kExitVerifyFailed;
      }
      Output out(hard_out);
      out.os() << m.line() << '\n';
      for (const auto& r : rows) write_row(out.os(), r);
      out.finish();
      return exit_code;
    } else if (verify->parsed()) {
      const auto seeds = parse_seeds(verify_seeds);
      char* rep = nullptr;
      int failed = 0;
      check(mb_verify(verify_suite.c_str(), seeds.data(), int(seeds.size()), &rep, &failed));
      const std::string body = take_string(rep);
      const json reports = json::parse(body);
      for (const auto& r : reports)
        log_stream(verify_out) << (r["pass"].get<bool>() ? "PASS " : "FAIL ") << r["name"].get<std::string>()
                  << "  statistic=" << fmt(r["statistic"].is_number() ? r["statistic"].get<double>() : NAN)
                  << " " << r["comparison"].get<std::string>() << " " << fmt(r["threshold"].get<double>())
                  << "  seed=" << r["seed"].get<std::uint64_t>() << "\n";
      log_stream(verify_out) << reports.size() - failed << "/" << reports.size() << " reports passed\n";
      Output out(verify_out);
      out.os() << body << '\n';
      out.finish();
      return failed ? kExitVerifyFailed : kExitOk;
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
