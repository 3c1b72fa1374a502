// possem - stability certificates for positive linear systems
// Copyright 2026 The possem Authors
// Licensed under the Apache License, Version 2.0
//
// Command-line front end:
//   possem analyze --input F [--cone orthant] [--norm sup] [--seed N] --out F
//   possem orbit   --input F --u SPEC --uprime SPEC --t-max X --steps N --csv F
//   possem batch   --count N --dim D [--seed N] [--stable-fraction F] --report F
//   possem gallery --kind K [params] --out F
//
// Exit codes: 0 stable, 1 unstable, 2 inconclusive/marginal/precondition,
// 3 parse error, 4 dimension mismatch or invalid argument, 5 verdict
// disagreement (bug detector), 6 other runtime failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "possem/certificates.hpp"
#include "possem/collatz_wielandt.hpp"
#include "possem/errors.hpp"
#include "possem/gallery.hpp"
#include "possem/io.hpp"
#include "possem/log_formula.hpp"
#include "possem/rng.hpp"
#include "possem/spectral.hpp"

namespace {

using namespace possem;
using nlohmann::json;

constexpr int kExitStable = 0;
constexpr int kExitUnstable = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitParse = 3;
constexpr int kExitInvalid = 4;
constexpr int kExitMismatch = 5;
constexpr int kExitRuntime = 6;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
}

Cone cone_for(const std::string& tag, int dim) {
  if (tag == "orthant") return Cone::Orthant(dim);
  if (tag == "soc" || tag == "second-order") return Cone::SecondOrder(dim);
  if (tag == "psd") {
    int n = static_cast<int>(std::lround(std::sqrt(double(dim))));
    if (n * n != dim) {
      throw std::invalid_argument(
          "psd cone needs a square ambient dimension, got " +
          std::to_string(dim));
    }
    return Cone::Psd(n);
  }
  throw std::invalid_argument("unknown cone tag: " + tag);
}

// Vector spec: "ones", "eK" (1-based basis vector), "perron", or a
// comma-separated list of numbers.
Vec parse_vector_spec(const std::string& spec, const Mat& A) {
  const int d = static_cast<int>(A.rows());
  if (spec == "ones") return Vec::Ones(d);
  if (spec == "perron") return perron_pair(A, Cone::Orthant(d)).vector;
  if (spec.size() >= 2 && spec[0] == 'e') {
    int k = std::stoi(spec.substr(1));
    if (k < 1 || k > d) {
      throw std::invalid_argument("basis index out of range: " + spec);
    }
    Vec e = Vec::Zero(d);
    e(k - 1) = 1.0;
    return e;
  }
  std::vector<double> vals;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      vals.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw std::invalid_argument("cannot parse vector spec: " + spec);
    }
  }
  if (static_cast<int>(vals.size()) != d) {
    throw std::invalid_argument("vector spec has " +
                                std::to_string(vals.size()) +
                                " entries, operator expects " +
                                std::to_string(d));
  }
  Vec v(d);
  for (int i = 0; i < d; ++i) v(i) = vals[i];
  return v;
}

int run_analyze(const std::string& input, const std::string& cone_tag,
                const std::string& norm_tag, std::uint64_t seed,
                const std::string& out_path) {
  Mat A = parse_operator_spec(read_file(input)).build();
  Cone K = cone_for(cone_tag, static_cast<int>(A.rows()));
  auto norm = norm_from_string(norm_tag);
  if (!norm) throw std::invalid_argument("unknown norm: " + norm_tag);

  auto t0 = std::chrono::steady_clock::now();
  StabilityCertificate cert = assemble_certificate(A, K, *norm, seed);
  auto ms = std::chrono::duration<double, std::milli>(
                std::chrono::steady_clock::now() - t0)
                .count();

  if (!out_path.empty()) write_file(out_path, certificate_to_json(cert));
  std::cout << "verdict: " << to_string(cert.verdict) << "  s(A) = " << cert.s_A
            << "  eta[" << to_string(cert.eta.norm) << "] = " << cert.eta.value
            << "  (" << ms << " ms)\n";

  switch (cert.verdict) {
    case Verdict::kStable: return kExitStable;
    case Verdict::kUnstable: return kExitUnstable;
    case Verdict::kInconclusive: return kExitInconclusive;
  }
  return kExitRuntime;
}

int run_orbit(const std::string& input, const std::string& u_spec,
              const std::string& uprime_spec, double t_max, int steps,
              bool geometric, const std::string& csv_path) {
  if (!(t_max > 0)) throw std::invalid_argument("t-max must be positive");
  if (steps < 2) throw std::invalid_argument("steps must be >= 2");
  Mat A = parse_operator_spec(read_file(input)).build();
  Vec u = parse_vector_spec(u_spec, A);
  Vec uprime = parse_vector_spec(uprime_spec, A);

  OrbitTrace trace = orbit_trace(A, u, uprime, t_max, steps, geometric);
  if (!csv_path.empty()) write_file(csv_path, orbit_csv(trace));

  double s = eigen_report(A).s_A;
  std::cout << "log-formula limit = " << trace.extrapolated_limit
            << "  eigensolver s(A) = " << s << "\n";
  return kExitStable;
}

int run_batch(int count, int dim, std::uint64_t seed, double stable_fraction,
              const std::string& report_path) {
  if (count < 1) throw std::invalid_argument("count must be >= 1");
  if (dim < 1) throw std::invalid_argument("dim must be >= 1");
  if (stable_fraction < 0 || stable_fraction > 1) {
    throw std::invalid_argument("stable-fraction must be in [0, 1]");
  }

  Cone K = Cone::Orthant(dim);
  json members = json::array();
  int agree = 0, marginal = 0;
  std::vector<double> eta_ratios;
  std::vector<double> cw_gaps;

  for (int i = 0; i < count; ++i) {
    std::uint64_t member_seed = derive_seed(seed, "batch-" + std::to_string(i));
    Rng rng(member_seed);
    Mat A = metzler_random(dim, 0.5, 0.0, member_seed);
    bool want_stable = rng.uniform() < stable_fraction;
    double s0 = eigen_report(A).s_A;
    double target = want_stable ? -rng.uniform(0.05, 1.0)
                                : rng.uniform(0.05, 1.0);
    A += (target - s0) * Mat::Identity(dim, dim);

    StabilityCertificate cert =
        assemble_certificate(A, K, NormChoice::kSup, member_seed);
    if (cert.verdict == Verdict::kInconclusive) {
      marginal++;
    } else {
      agree++;  // assemble_certificate throws on any disagreement
    }
    if (cert.stable) eta_ratios.push_back(cert.eta.value / -cert.s_A);

    CwOptimum cw = cw_optimize(A, K, member_seed);
    cw_gaps.push_back(cw.upper - cw.lower);

    json m;
    m["index"] = i;
    m["s_A"] = cert.s_A;
    m["verdict"] = to_string(cert.verdict);
    m["eta"] = cert.eta.value;
    m["cw_gap"] = cw.upper - cw.lower;
    members.push_back(m);
  }

  json report;
  report["schema"] = "possem-batch/1";
  report["count"] = count;
  report["dim"] = dim;
  report["seed"] = seed;
  report["agreement"] = {{"checked", agree},
                         {"marginal", marginal},
                         {"rate", agree == count - marginal ? 1.0 : 0.0}};
  auto summarize = [](const std::vector<double>& v) {
    json s;
    if (v.empty()) {
      s["min"] = nullptr;
      s["max"] = nullptr;
      s["mean"] = nullptr;
      return s;
    }
    double mn = v[0], mx = v[0], acc = 0;
    for (double x : v) {
      mn = std::min(mn, x);
      mx = std::max(mx, x);
      acc += x;
    }
    s["min"] = mn;
    s["max"] = mx;
    s["mean"] = acc / double(v.size());
    return s;
  };
  report["eta_over_abs_sA"] = summarize(eta_ratios);
  report["cw_gap"] = summarize(cw_gaps);
  report["members"] = members;

  if (!report_path.empty()) write_file(report_path, report.dump(2) + "\n");
  std::cout << "batch: " << agree << "/" << (count - marginal)
            << " verdicts agree, " << marginal << " marginal\n";
  return kExitStable;
}

int run_gallery(const std::string& kind, int d, double density,
                double diag_shift, std::uint64_t seed, int n, double a,
                double b, const std::string& potential, double depth,
                const std::string& out_path) {
  GallerySpec spec;
  if (kind == "metzler_random") {
    spec = MetzlerRandomSpec{d, density, diag_shift, seed};
  } else if (kind == "neumann_laplacian") {
    spec = NeumannLaplacianSpec{n, a, b};
  } else if (kind == "laplacian_plus_potential") {
    PotentialSpec p;
    if (potential == "mean_zero_sin") {
      p.kind = PotentialSpec::Kind::kMeanZeroSin;
    } else if (potential == "deep_well") {
      p.kind = PotentialSpec::Kind::kDeepWell;
      p.depth = depth;
    } else {
      throw std::invalid_argument("unknown potential: " + potential);
    }
    spec = LaplacianPlusPotentialSpec{n, a, b, p};
  } else if (kind == "diagonal_decay") {
    spec = DiagonalDecaySpec{n};
  } else {
    throw std::invalid_argument("unknown gallery kind: " + kind);
  }

  build(spec);  // validate parameters before writing
  write_file(out_path, operator_spec_to_json(spec));
  std::cout << "wrote " << out_path << "\n";
  return kExitStable;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stability certificates for positive linear systems"};
  app.require_subcommand(1);

  // analyze
  auto* analyze = app.add_subcommand("analyze", "assemble a stability certificate");
  std::string in_path, out_path, cone_tag = "orthant", norm_tag = "sup";
  std::uint64_t seed = 0;
  analyze->add_option("--input", in_path, "operator spec file")->required();
  analyze->add_option("--cone", cone_tag, "orthant|soc|psd");
  analyze->add_option("--norm", norm_tag, "sup|euclidean|one");
  analyze->add_option("--seed", seed, "root seed");
  analyze->add_option("--out", out_path, "certificate output file");

  // orbit
  auto* orbit = app.add_subcommand("orbit", "log-formula orbit trace");
  std::string u_spec = "ones", uprime_spec = "ones", csv_path;
  double t_max = 50.0;
  int steps = 64;
  bool geometric = false;
  orbit->add_option("--input", in_path, "operator spec file")->required();
  orbit->add_option("--u", u_spec, "ones|eK|perron|v1,v2,...");
  orbit->add_option("--uprime", uprime_spec, "ones|eK|perron|v1,v2,...");
  orbit->add_option("--t-max", t_max, "time horizon");
  orbit->add_option("--steps", steps, "grid points");
  orbit->add_flag("--geometric", geometric, "geometric grid for stiff spectra");
  orbit->add_option("--csv", csv_path, "trace output file");

  // batch
  auto* batch = app.add_subcommand("batch", "random-ensemble equivalence runs");
  int count = 100, dim = 10;
  double stable_fraction = 0.5;
  std::string report_path;
  batch->add_option("--count", count, "ensemble size")->required();
  batch->add_option("--dim", dim, "matrix dimension")->required();
  batch->add_option("--seed", seed, "root seed");
  batch->add_option("--stable-fraction", stable_fraction,
                    "fraction shifted to s(A) < 0");
  batch->add_option("--report", report_path, "report output file");

  // gallery
  auto* gallery = app.add_subcommand("gallery", "emit an operator spec file");
  std::string kind, potential = "mean_zero_sin";
  int d = 5, n = 100;
  double density = 0.5, diag_shift = 0.0;
  double a = -1.5707963267948966, b = 1.5707963267948966;
  double depth = 100.0;
  gallery->add_option("--kind", kind,
                      "metzler_random|neumann_laplacian|"
                      "laplacian_plus_potential|diagonal_decay")
      ->required();
  gallery->add_option("--d", d, "dimension (metzler_random)");
  gallery->add_option("--density", density, "off-diagonal density");
  gallery->add_option("--diag-shift", diag_shift, "diagonal shift");
  gallery->add_option("--seed", seed, "seed (metzler_random)");
  gallery->add_option("--n", n, "grid size / truncation");
  gallery->add_option("--a", a, "interval left endpoint");
  gallery->add_option("--b", b, "interval right endpoint");
  gallery->add_option("--potential", potential, "mean_zero_sin|deep_well");
  gallery->add_option("--depth", depth, "deep-well depth");
  gallery->add_option("--out", out_path, "spec output file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) {
      return run_analyze(in_path, cone_tag, norm_tag, seed, out_path);
    }
    if (*orbit) {
      return run_orbit(in_path, u_spec, uprime_spec, t_max, steps, geometric,
                       csv_path);
    }
    if (*batch) {
      return run_batch(count, dim, seed, stable_fraction, report_path);
    }
    if (*gallery) {
      return run_gallery(kind, d, density, diag_shift, seed, n, a, b,
                         potential, depth, out_path);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failure: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const VerdictMismatchError& e) {
    std::cerr << "verdict disagreement (bug detector): " << e.what() << "\n";
    return kExitMismatch;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitRuntime;
}
