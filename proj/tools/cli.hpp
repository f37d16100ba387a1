#pragma once

// Command-line front end. `run` is separate from main so tests can drive it
// with in-memory streams.
//
// Exit codes: 0 success, 1 domain error, 2 I/O, parse or usage error. Errors
// are reported as one line of JSON on the error stream:
//   {"error":"domain.bad-interval","message":"..."}

#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zerodist/io.hpp"
#include "zerodist/zerodist.hpp"

namespace zerodist::cli {

using io::json;

class UsageError : public IoError {
 public:
  explicit UsageError(const std::string& message) : IoError("cli.usage", message) {}
};

struct GridRange {
  int k_min = 0;
  int k_max = 0;
};

inline GridRange parse_grid(const std::string& s) {
  const auto colon = s.find(':');
  GridRange g;
  try {
    if (colon == std::string::npos) throw std::invalid_argument(s);
    std::size_t used = 0;
    g.k_min = std::stoi(s.substr(0, colon), &used);
    if (used != colon) throw std::invalid_argument(s);
    const std::string hi = s.substr(colon + 1);
    g.k_max = std::stoi(hi, &used);
    if (used != hi.size()) throw std::invalid_argument(s);
  } catch (const std::exception&) {
    throw UsageError("--grid expects kmin:kmax, got \"" + s + "\"");
  }
  if (g.k_max < g.k_min) throw DomainError("domain.bad-grid", "--grid requires kmin <= kmax");
  return g;
}

inline std::vector<double> parse_list(const std::string& s, const std::string& flag) {
  std::vector<double> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(flag + " expects comma-separated numbers, got \"" + s + "\"");
    }
  }
  return out;
}

/// ys from "min,max,count" (evenly spaced) or an explicit list.
inline std::vector<double> parse_y_grid(const std::string& range, const std::string& list) {
  if (!list.empty()) return parse_list(list, "--ys");
  const auto v = parse_list(range, "--y-range");
  if (v.size() != 3 || v[2] < 1 || v[2] != std::floor(v[2])) {
    throw UsageError("--y-range expects min,max,count");
  }
  if (!(v[1] >= v[0])) throw DomainError("domain.bad-interval", "--y-range requires min <= max");
  const auto n = static_cast<std::size_t>(v[2]);
  std::vector<double> ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    ys[i] = n == 1 ? v[0] : v[0] + (v[1] - v[0]) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return ys;
}

/// +-2^((j + 1/2)/64) for j = 0..767: log-spaced over [1, 2^12], 64 per
/// octave, offset by half a step.
inline std::vector<double> default_dominance_grid() {
  std::vector<double> ys;
  for (int j = 12 * 64 - 1; j >= 0; --j) ys.push_back(-std::exp2((j + 0.5) / 64.0));
  for (int j = 0; j < 12 * 64; ++j) ys.push_back(std::exp2((j + 0.5) / 64.0));
  return ys;
}

/// Dyadic exponents from 0 to the first power of two covering the data.
inline GridRange data_grid(double max_modulus) {
  int k = 1;
  while (std::ldexp(1.0, k) < max_modulus && k < 1023) ++k;
  return {0, k};
}

struct ProductFlags {
  unsigned long long origin_mult = 0;
  double exp_re = 0.0;
  double exp_im = 0.0;

  void attach(CLI::App* app) {
    app->add_option("--origin-mult", origin_mult, "Multiplicity m of the z^m factor");
    app->add_option("--exp-re", exp_re, "Real part of c in e^(cz)");
    app->add_option("--exp-im", exp_im, "Imaginary part of c in e^(cz)");
  }
  CanonicalProduct make(const PointDistribution& zeros) const {
    return CanonicalProduct(zeros, origin_mult, {exp_re, exp_im});
  }
};

class Output {
 public:
  explicit Output(std::ostream& fallback) : fallback_(fallback) {}

  void set_path(const std::string& path) { path_ = path; }

  void write(const std::string& text) {
    if (path_.empty()) {
      fallback_ << text;
      return;
    }
    std::ofstream file(path_);
    if (!file) throw IoError("io.open", "cannot write " + path_);
    file << text;
    if (!file) throw IoError("io.write", "failed writing " + path_);
  }

  void write(const json& j) { write(j.dump() + "\n"); }

 private:
  std::ostream& fallback_;
  std::string path_;
};

inline std::string points_text(const PointDistribution& d, const std::string& format) {
  std::ostringstream os;
  if (format == "csv") {
    io::write_csv(os, d);
  } else {
    io::write_json(os, d);
  }
  return os.str();
}

inline void write_points_file(const std::string& path, const PointDistribution& d, const std::string& format) {
  std::ofstream file(path);
  if (!file) throw IoError("io.open", "cannot write " + path);
  file << points_text(d, format);
}

inline void emit_error(std::ostream& err, const std::string& code, const std::string& message) {
  err << json{{"error", code}, {"message", message}}.dump() << '\n';
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Logarithmic characteristics and balancing of zero distributions", "zerodist"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  Output output(out);
  std::string output_path;
  std::string format = "json";
  std::vector<std::string> inputs;
  const auto add_output = [&](CLI::App* s) {
    s->add_option("-o,--output", output_path, "Write the result here instead of stdout");
  };
  const auto add_format = [&](CLI::App* s) {
    s->add_option("--format", format, "Point list format")->check(CLI::IsMember({"json", "csv"}));
  };
  const auto add_inputs = [&](CLI::App* s, std::size_t n, const std::string& what) {
    s->add_option("inputs", inputs, what)->required()->expected(static_cast<int>(n));
  };
  std::function<void()> action;

  // gen
  std::string family = "sector";
  std::size_t count = 100;
  double r_min = 1.0;
  double r_max = 1024.0;
  double half_angle = std::numbers::pi / 4;
  std::uint64_t seed = 1;
  auto* gen = app.add_subcommand("gen", "Generate a seeded point distribution");
  gen->add_option("--family", family, "sector, real, symmetric, lattice or perturbed")
      ->check(CLI::IsMember({"sector", "real", "symmetric", "lattice", "perturbed"}));
  gen->add_option("--count", count, "Number of points")->required();
  gen->add_option("--r-min", r_min, "Smallest modulus");
  gen->add_option("--r-max", r_max, "Largest modulus");
  gen->add_option("--half-angle", half_angle, "Sector half-angle in radians");
  gen->add_option("--seed", seed, "Random seed");
  add_format(gen);
  add_output(gen);
  gen->callback([&] {
    action = [&] {
      const auto d = generate({parse_family(family), count, r_min, r_max, half_angle, seed});
      output.write(points_text(d, format));
    };
  });

  // measures
  double r = 0.0;
  double R = 0.0;
  auto* measures = app.add_subcommand("measures", "One-sided logarithmic measures over (r, R]");
  add_inputs(measures, 1, "Point list");
  measures->add_option("--r", r, "Inner radius")->required();
  measures->add_option("--R", R, "Outer radius")->required();
  add_output(measures);
  measures->callback([&] {
    action = [&] {
      detail::require_interval(r, R);
      const LogMeasureTable t(io::read_points_file(inputs[0]));
      output.write(json{{"r", r},
                        {"R", R},
                        {"l_rh", t.right(r, R)},
                        {"l_lh", t.left(r, R)},
                        {"l", log_submeasure(t, r, R)}});
    };
  });

  // lindelof
  std::string kind = "full";
  double lindelof_rmax = 0.0;
  auto* lindelof = app.add_subcommand("lindelof", "Lindelof partial-sum diagnostic");
  add_inputs(lindelof, 1, "Point list");
  lindelof->add_option("--kind", kind, "full, real or imaginary")
      ->check(CLI::IsMember({"full", "real", "imaginary"}));
  lindelof->add_option("--r-max", lindelof_rmax, "Largest radius (default: data range)");
  add_output(lindelof);
  lindelof->callback([&] {
    action = [&] {
      const auto k = parse_lindelof_kind(kind);
      const auto d = io::read_points_file(inputs[0]);
      const double rm = lindelof_rmax > 0.0 ? lindelof_rmax : std::max(1.0, d.max_modulus());
      output.write(io::to_json(lindelof_diagnostic(d, k, rm)));
    };
  });

  // balance
  std::string axis = "real";
  std::string compensator_path;
  auto* balance = app.add_subcommand("balance", "Dyadic balancing along one axis");
  add_inputs(balance, 1, "Point list");
  balance->add_option("--axis", axis, "real or imaginary")->check(CLI::IsMember({"real", "imaginary"}));
  balance->add_option("--compensator", compensator_path, "Also write the compensating points to this file");
  add_format(balance);
  add_output(balance);
  balance->callback([&] {
    action = [&] {
      const auto d = io::read_points_file(inputs[0]);
      const auto res = axis == "real" ? balance_real(d) : balance_imaginary(d);
      if (!compensator_path.empty()) write_points_file(compensator_path, res.compensator, format);
      output.write(io::to_json(res));
    };
  });

  // complete
  auto* complete = app.add_subcommand("complete", "Balance both axes and emit Z with its compensators");
  add_inputs(complete, 1, "Point list");
  add_format(complete);
  add_output(complete);
  complete->callback([&] {
    action = [&] { output.write(points_text(full_lindelof_completion(io::read_points_file(inputs[0])), format)); };
  });

  // product-trace
  ProductFlags product;
  std::string y_range = "1,100,100";
  std::string y_list;
  auto* trace = app.add_subcommand("product-trace", "ln|f(iy)| of the canonical product over a y grid");
  add_inputs(trace, 1, "Zeros");
  product.attach(trace);
  trace->add_option("--y-range", y_range, "min,max,count");
  trace->add_option("--ys", y_list, "Explicit comma-separated ordinates");
  std::string trace_format = "csv";
  trace->add_option("--format", trace_format, "Output format (csv or json)")->check(CLI::IsMember({"json", "csv"}));
  add_output(trace);
  trace->callback([&] {
    action = [&] {
      const auto ys = parse_y_grid(y_range, y_list);
      const auto f = product.make(io::read_points_file(inputs[0]));
      const auto vals = imag_axis_trace(f, ys);
      if (trace_format == "json") {
        json rows = json::array();
        for (std::size_t i = 0; i < ys.size(); ++i) {
          rows.push_back(json{{"y", ys[i]}, {"log_modulus", io::number(vals[i])}});
        }
        output.write(json{{"trace", std::move(rows)}});
        return;
      }
      std::ostringstream os;
      os << "y,log_modulus\n";
      for (std::size_t i = 0; i < ys.size(); ++i) {
        os << io::format_double(ys[i]) << ',' << io::format_double(vals[i]) << '\n';
      }
      output.write(os.str());
    };
  });

  // type
  std::string grid_spec;
  unsigned angles = 64;
  auto* type = app.add_subcommand("type", "Sampled exponential type max ln|f(re^it)|/r");
  add_inputs(type, 1, "Zeros");
  product.attach(type);
  type->add_option("--grid", grid_spec, "Radii 2^k for kmin:kmax (default 0:10)");
  type->add_option("--angles", angles, "Angles per circle");
  add_output(type);
  type->callback([&] {
    action = [&] {
      const auto g = parse_grid(grid_spec.empty() ? "0:10" : grid_spec);
      const auto f = product.make(io::read_points_file(inputs[0]));
      const auto radii = dyadic_radii(g.k_min, g.k_max);
      output.write(io::to_json(type_estimate(f, radii, angles)));
    };
  });

  // jint
  double tolerance = kDefaultJTolerance;
  auto* jint = app.add_subcommand("jint", "Imaginary-axis logarithmic integral J(r, R)");
  add_inputs(jint, 1, "Zeros");
  product.attach(jint);
  jint->add_option("--r", r, "Inner radius")->required();
  jint->add_option("--R", R, "Outer radius")->required();
  jint->add_option("--tolerance", tolerance, "Absolute quadrature tolerance");
  add_output(jint);
  jint->callback([&] {
    action = [&] {
      detail::require_interval(r, R);
      output.write(io::to_json(j_integral(product.make(io::read_points_file(inputs[0])), r, R, tolerance)));
    };
  });

  // lemma31
  auto* lemma = app.add_subcommand("lemma31", "|J - l| over dyadic pairs");
  add_inputs(lemma, 1, "Zeros");
  product.attach(lemma);
  lemma->add_option("--grid", grid_spec, "kmin:kmax (default 0:8)");
  lemma->add_option("--tolerance", tolerance, "Absolute quadrature tolerance per segment");
  add_output(lemma);
  lemma->callback([&] {
    action = [&] {
      const auto g = parse_grid(grid_spec.empty() ? "0:8" : grid_spec);
      const auto f = product.make(io::read_points_file(inputs[0]));
      output.write(io::to_json(lemma31_discrepancy(f, g.k_min, g.k_max, tolerance)));
    };
  });

  // check
  std::string theorem = "c";
  double eps = 0.0;
  auto* check = app.add_subcommand("check", "Least C in l_Z(r,R) <= l_W(r,R) + excess + C over a dyadic grid");
  add_inputs(check, 2, "Z and W point lists");
  check->add_option("--theorem", theorem, "a (eps ln(R/r)), b (fitted d) or c (no excess)")
      ->check(CLI::IsMember({"a", "b", "c"}));
  check->add_option("--eps", eps, "eps for theorem a");
  check->add_option("--grid", grid_spec, "kmin:kmax (default: 0 to the data range)");
  add_output(check);
  check->callback([&] {
    action = [&] {
      const auto t = parse_theorem(theorem);
      const auto gs = grid_spec;
      if (t != Theorem::A && check->count("--eps") > 0) {
        throw DomainError("domain.bad-eps", "--eps applies to theorem a only");
      }
      const auto profile = t == Theorem::A   ? ExcessProfile::epsilon_linear(eps)
                           : t == Theorem::B ? ExcessProfile::vanishing()
                                             : ExcessProfile::constant();
      const auto z = io::read_points_file(inputs[0]);
      const auto w = io::read_points_file(inputs[1]);
      const auto g = gs.empty() ? data_grid(std::max(z.max_modulus(), w.max_modulus())) : parse_grid(gs);
      output.write(io::to_json(check_criterion(z, w, t, profile, dyadic_radii(g.k_min, g.k_max))));
    };
  });

  // dominance
  ProductFlags g_product;
  auto* dominance = app.add_subcommand("dominance", "Sampled check of ln|f(iy)| <= ln|g(iy)| + eps|y|");
  add_inputs(dominance, 2, "Zeros of f and of g");
  product.attach(dominance);
  dominance->add_option("--g-origin-mult", g_product.origin_mult, "Multiplicity of z^m in g");
  dominance->add_option("--g-exp-re", g_product.exp_re, "Real part of c for g");
  dominance->add_option("--g-exp-im", g_product.exp_im, "Imaginary part of c for g");
  dominance->add_option("--eps", eps, "Allowance eps |y|");
  dominance->add_option("--ys", y_list, "Explicit comma-separated ordinates");
  add_output(dominance);
  dominance->callback([&] {
    action = [&] {
      const auto ys = y_list.empty() ? default_dominance_grid() : parse_list(y_list, "--ys");
      const auto f = product.make(io::read_points_file(inputs[0]));
      const auto g = g_product.make(io::read_points_file(inputs[1]));
      output.write(io::to_json(dominance_check(f, g, ys, eps)));
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    emit_error(err, "cli.usage", e.what());
    return 2;
  }

  try {
    output.set_path(output_path);
    action();
    return 0;
  } catch (const IoError& e) {
    emit_error(err, e.code(), e.what());
    return 2;
  } catch (const Error& e) {
    emit_error(err, e.code(), e.what());
    return 1;
  } catch (const std::exception& e) {
    emit_error(err, "internal", e.what());
    return 2;
  }
}

}  // namespace zerodist::cli
