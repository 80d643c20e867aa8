#pragma once

// Command-line front end. All logic lives here so tests can drive `run`
// in-process; main.cpp only forwards argv.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ssps/dde.hpp"
#include "ssps/report.hpp"

namespace ssps::cli {

enum ExitCode : int {
  kPass = 0,
  kUsage = 1,
  kNoSolution = 2,
  kVerificationFailed = 3,
  kInstability = 4,
};

/// Fixed 17-significant-digit formatting; identical doubles give identical
/// bytes regardless of locale or stream state.
inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline Model parse_model(const std::string& s) {
  return s == "exp" ? Model::Exp : Model::Sine;
}

/// The closed-form solution for a model together with its summary numbers.
struct Constructed {
  SolutionWithDerivative sol;
  Nonlinearity f = Nonlinearity::linear_unit();
  double modulus = 0.0;
  /// k' = sqrt(1 - k^2); keeps moduli apart where k itself rounds to 1.
  double complementary = 1.0;
  double offset_c = 0.0;
  double period = 2.0;
  double amplitude = 0.0;
  /// Quadrature panels per unit delay window; the profile narrows like 1/K.
  int panels = 1;
};

inline Constructed construct(Model model, double r) {
  if (!std::isfinite(r)) throw UsageError("--r must be finite");
  Constructed c;
  if (model == Model::Sine) {
    const SineSsps s = sine_ssps(r);
    c.sol = as_solution(s);
    c.f = Nonlinearity::sine(r);
    c.modulus = s.m();
    c.complementary = s.modulus.complementary();
    c.period = s.period;
    c.panels = static_cast<int>(std::ceil(0.5 * s.K));
  } else {
    const ExpSsps s = exp_ssps(r);
    c.sol = as_solution(s);
    c.f = Nonlinearity::exp_m1(r);
    c.modulus = s.modulus.k();
    c.complementary = s.modulus.complementary();
    c.offset_c = s.c;
    c.period = s.period;
    c.panels = static_cast<int>(std::ceil(0.5 * s.K));
  }
  // half the peak-to-peak range; the extrema sit at t = 0 and t = 1 for exp
  // and at t = 1/2 and t = 3/2 for sine
  const double shift = model == Model::Sine ? 0.5 : 0.0;
  c.amplitude = 0.5 * std::abs(c.sol.x(shift) - c.sol.x(shift + 1.0));
  return c;
}

/// Writes to --out when given, otherwise to the command's stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      stream_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw UsageError("cannot open output file " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

inline void write_metadata(std::ostream& os, Model model, double r,
                           const Constructed& c) {
  os << "# tool_version=" << kToolVersion << '\n'
     << "# model=" << model_name(model) << '\n'
     << "# r=" << fmt(r) << '\n'
     << "# modulus=" << fmt(c.modulus) << '\n'
     << "# c=" << fmt(c.offset_c) << '\n'
     << "# period=" << fmt(c.period) << '\n';
}

}  // namespace detail

struct ConstructArgs {
  std::string model;
  double r = 0.0;
  int samples = 2001;
  std::string format = "csv";
  std::string out;
};

inline int cmd_construct(const ConstructArgs& a, std::ostream& out) {
  if (a.samples < 2) throw UsageError("--samples must be >= 2");
  const Model model = detail::parse_model(a.model);
  const detail::Constructed c = detail::construct(model, a.r);
  detail::Sink sink(a.out, out);
  std::ostream& os = *sink;
  if (a.format == "csv") {
    detail::write_metadata(os, model, a.r, c);
    os << "t,x,dx\n";
    for (int i = 0; i < a.samples; ++i) {
      const double t = 2.0 * i / (a.samples - 1);
      os << fmt(t) << ',' << fmt(c.sol.x(t)) << ',' << fmt(c.sol.dx(t)) << '\n';
    }
  } else {
    nlohmann::ordered_json j;
    j["model"] = model_name(model);
    j["r"] = a.r;
    j["modulus"] = c.modulus;
    j["offset_c"] = c.offset_c;
    j["period"] = c.period;
    j["tool_version"] = kToolVersion;
    std::vector<double> ts, xs, dxs;
    for (int i = 0; i < a.samples; ++i) {
      const double t = 2.0 * i / (a.samples - 1);
      ts.push_back(t);
      xs.push_back(c.sol.x(t));
      dxs.push_back(c.sol.dx(t));
    }
    j["t"] = ts;
    j["x"] = xs;
    j["dx"] = dxs;
    os << j.dump(2) << '\n';
  }
  return kPass;
}

struct VerifyArgs {
  std::string model;
  double r = 0.0;
  int grid = 2001;
  int quad_order = 32;
  double tol = 1e-8;
  std::string out;
};

inline int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  if (a.grid < 2) throw UsageError("--grid must be >= 2");
  if (a.quad_order < 8 || a.quad_order > 128) {
    throw UsageError("--quad-order must lie in [8, 128]");
  }
  if (!(a.tol > 0.0)) throw UsageError("--tol must be positive");
  const Model model = detail::parse_model(a.model);
  const detail::Constructed c = detail::construct(model, a.r);
  VerificationTolerances tol;
  tol.residual = a.tol;
  const ResidualReport rep = verify_ssps(c.sol, c.f, a.grid, a.quad_order, tol);
  const ReportDocument doc = make_report(model, a.r, c.modulus, c.period, rep);
  const std::string json = to_json(doc).dump(2);
  if (a.out.empty()) {
    out << json << '\n';
  } else {
    detail::Sink sink(a.out, out);
    *sink << json << '\n';
    out << model_name(model) << " r=" << fmt(a.r)
        << " residual_max=" << fmt(rep.residual_max)
        << " antisymmetry_max=" << fmt(rep.antisymmetry_max)
        << " period_defect_max=" << fmt(rep.period_defect_max)
        << (rep.pass ? " PASS" : " FAIL") << '\n';
  }
  return rep.pass ? kPass : kVerificationFailed;
}

struct SweepArgs {
  std::string model;
  double from = 0.0;
  double to = 0.0;
  int points = 20;
  int grid = 201;
  int quad_order = 32;
  std::string out;
};

inline int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  if (a.points < 2) throw UsageError("--points must be >= 2");
  if (!(a.from < a.to)) throw UsageError("--from must be below --to");
  if (a.grid < 2) throw UsageError("--grid must be >= 2");
  const Model model = detail::parse_model(a.model);
  detail::Sink sink(a.out, out);
  std::ostream& os = *sink;
  // Rows are computed in order; the first one already rejects a range that
  // starts at or below the threshold.
  std::ostringstream body;
  body << "# tool_version=" << kToolVersion << '\n'
       << "# model=" << model_name(model) << '\n'
       << "r,modulus,offset_c,amplitude,residual_max,complementary_modulus\n";
  for (int i = 0; i < a.points; ++i) {
    const double r = a.from + (a.to - a.from) * i / (a.points - 1);
    const detail::Constructed c = detail::construct(model, r);
    const double res =
        max_residual(c.sol, c.f, a.grid, a.quad_order, 0.0, 2.0, 1.0, c.panels);
    body << fmt(r) << ',' << fmt(c.modulus) << ',' << fmt(c.offset_c) << ','
         << fmt(c.amplitude) << ',' << fmt(res) << ',' << fmt(c.complementary)
         << '\n';
  }
  os << body.str();
  return kPass;
}

struct SimulateArgs {
  std::string model;
  double r = 0.0;
  double horizon = 6.0;
  double step = 1e-3;
  std::string seed = "closed-form";
  double bound = SimulationOptions{}.bound;
  std::string out;
};

/// Interval count N with step * N == 1, or nothing if 1/step is not an
/// integer.
inline std::optional<int> intervals_for_step(double step) {
  if (!(step > 0.0) || step > 1.0) return std::nullopt;
  const double n = std::round(1.0 / step);
  if (std::abs(n * step - 1.0) > 1e-12) return std::nullopt;
  return static_cast<int>(n);
}

inline int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  const auto n = intervals_for_step(a.step);
  if (!n) throw UsageError("--step: 1/h must be an integer");
  if (*n % 2 != 0 || *n < HistorySegment::kMinIntervals) {
    throw UsageError("--step: 1/h must be an even integer >= 8");
  }
  if (!(a.horizon >= 1.0)) throw UsageError("--horizon must be >= 1");
  if (!(a.bound > 0.0)) throw UsageError("--bound must be positive");
  if (!std::isfinite(a.r) || !(a.r > 0.0)) throw UsageError("--r must be positive");
  const Model model = detail::parse_model(a.model);
  const bool closed = a.seed == "closed-form";

  std::optional<detail::Constructed> c;
  SolutionWithDerivative reference = zero_solution();
  Nonlinearity f = model == Model::Sine ? Nonlinearity::sine(a.r)
                                        : Nonlinearity::exp_m1(a.r);
  if (closed) {
    c = detail::construct(model, a.r);
    reference = c->sol;
  }
  const HistorySegment history = HistorySegment::from_function(reference.x, *n);
  SimulationOptions options;
  options.bound = a.bound;
  const SimulatedTrajectory tr =
      simulate_method_of_steps(f, history, a.horizon, 1.0 / *n, options);

  detail::Sink sink(a.out, out);
  std::ostream& os = *sink;
  os << "# tool_version=" << kToolVersion << '\n'
     << "# model=" << model_name(model) << '\n'
     << "# r=" << fmt(a.r) << '\n'
     << "# seed=" << a.seed << '\n'
     << "# step=" << fmt(tr.step) << '\n'
     << "t,x_sim,x_closed,abs_err\n";
  double worst = 0.0;
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    const double exact = reference.x(tr.t[i]);
    const double err = std::abs(tr.x[i] - exact);
    worst = std::max(worst, err);
    os << fmt(tr.t[i]) << ',' << fmt(tr.x[i]) << ',' << fmt(exact) << ','
       << fmt(err) << '\n';
  }
  os << "# max_abs_err=" << fmt(worst) << '\n';
  if (!a.out.empty()) {
    out << "simulate " << model_name(model) << " r=" << fmt(a.r)
        << " max_abs_err=" << fmt(worst) << '\n';
  }
  return kPass;
}

/// Parses argv-style arguments (args[0] is the program name) and runs one
/// subcommand. Errors are reported on `err` and mapped to exit codes.
inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Closed-form symmetric periodic solutions of distributed delay "
               "equations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  const auto models = CLI::IsMember({"sine", "exp"});

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "sample the closed form over one period");
  construct->add_option("--model", ca.model)->required()->check(models);
  construct->add_option("--r", ca.r)->required();
  construct->add_option("--samples", ca.samples);
  construct->add_option("--format", ca.format)->check(CLI::IsMember({"csv", "json"}));
  construct->add_option("--out", ca.out);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "residual and symmetry report");
  verify->add_option("--model", va.model)->required()->check(models);
  verify->add_option("--r", va.r)->required();
  verify->add_option("--grid", va.grid);
  verify->add_option("--quad-order", va.quad_order);
  verify->add_option("--tol", va.tol);
  verify->add_option("--out", va.out);

  SweepArgs sa;
  auto* sweep = app.add_subcommand("sweep", "modulus and residual over a range of r");
  sweep->add_option("--model", sa.model)->required()->check(models);
  sweep->add_option("--from", sa.from)->required();
  sweep->add_option("--to", sa.to)->required();
  sweep->add_option("--points", sa.points);
  sweep->add_option("--grid", sa.grid);
  sweep->add_option("--quad-order", sa.quad_order);
  sweep->add_option("--out", sa.out);

  SimulateArgs ma;
  auto* simulate = app.add_subcommand("simulate", "method-of-steps run against the closed form");
  simulate->add_option("--model", ma.model)->check(models)->required();
  simulate->add_option("--r", ma.r)->required();
  simulate->add_option("--horizon", ma.horizon);
  simulate->add_option("--step", ma.step);
  simulate->add_option("--seed", ma.seed)->check(CLI::IsMember({"closed-form", "zero"}));
  simulate->add_option("--bound", ma.bound, "divergence guard on |x|");
  simulate->add_option("--out", ma.out);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*construct) return cmd_construct(ca, out);
    if (*verify) return cmd_verify(va, out);
    if (*sweep) return cmd_sweep(sa, out);
    return cmd_simulate(ma, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const NoSolution& e) {
    err << e.what() << '\n';
    return kNoSolution;
  } catch (const StabilityError& e) {
    err << "instability: " << e.what() << '\n';
    return kInstability;
  } catch (const DomainError& e) {
    // inputs are validated above, so a domain error here means the
    // simulated state left D
    err << "instability: " << e.what() << '\n';
    return kInstability;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kVerificationFailed;
  }
}

}  // namespace ssps::cli
