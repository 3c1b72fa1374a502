// possem - stability certificates for positive linear systems
// Copyright 2026 The possem Authors
// Licensed under the Apache License, Version 2.0

#include "possem/io.hpp"

#include <json.hpp>

namespace possem {

namespace {

using nlohmann::json;

json vec_to_json(const Vec& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

Vec vec_from_json(const json& arr) {
  if (!arr.is_array()) throw ParseError("expected a numeric array");
  Vec v(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) throw ParseError("expected a numeric array");
    v(static_cast<Eigen::Index>(i)) = arr[i].get<double>();
  }
  return v;
}

Mat mat_from_json(const json& arr) {
  if (!arr.is_array() || arr.empty()) throw ParseError("expected a matrix");
  const std::size_t rows = arr.size();
  const std::size_t cols = arr[0].is_array() ? arr[0].size() : 0;
  if (cols == 0) throw ParseError("expected a matrix of rows");
  Mat A(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!arr[i].is_array() || arr[i].size() != cols) {
      throw ParseError("matrix rows must have equal length");
    }
    for (std::size_t j = 0; j < cols; ++j) {
      if (!arr[i][j].is_number()) throw ParseError("matrix entries must be numbers");
      A(i, j) = arr[i][j].get<double>();
    }
  }
  return A;
}

json mat_to_json(const Mat& A) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < A.cols(); ++j) row.push_back(A(i, j));
    rows.push_back(row);
  }
  return rows;
}

double get_number(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw ParseError(std::string("missing numeric field '") + key + "'");
  }
  return j[key].get<double>();
}

int get_int(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    throw ParseError(std::string("missing integer field '") + key + "'");
  }
  return j[key].get<int>();
}

PotentialSpec potential_from_json(const json& j) {
  PotentialSpec p;
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    throw ParseError("potential: missing string field 'type'");
  }
  std::string type = j["type"].get<std::string>();
  if (type == "mean_zero_sin") {
    p.kind = PotentialSpec::Kind::kMeanZeroSin;
  } else if (type == "deep_well") {
    p.kind = PotentialSpec::Kind::kDeepWell;
    p.depth = get_number(j, "depth");
  } else if (type == "custom") {
    p.kind = PotentialSpec::Kind::kCustom;
    if (!j.contains("samples")) throw ParseError("custom potential: samples");
    Vec s = vec_from_json(j["samples"]);
    p.samples.assign(s.data(), s.data() + s.size());
  } else {
    throw ParseError("potential: unknown type '" + type + "'");
  }
  return p;
}

json potential_to_json(const PotentialSpec& p) {
  json j;
  switch (p.kind) {
    case PotentialSpec::Kind::kMeanZeroSin:
      j["type"] = "mean_zero_sin";
      break;
    case PotentialSpec::Kind::kDeepWell:
      j["type"] = "deep_well";
      j["depth"] = p.depth;
      break;
    case PotentialSpec::Kind::kCustom: {
      j["type"] = "custom";
      json arr = json::array();
      for (double v : p.samples) arr.push_back(v);
      j["samples"] = arr;
      break;
    }
  }
  return j;
}

}  // namespace

Mat OperatorSpec::build() const {
  if (dense) return *dense;
  if (gallery) return possem::build(*gallery);
  throw ParseError("empty operator spec");
}

OperatorSpec parse_operator_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("operator spec: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw ParseError("operator spec: missing string field 'kind'");
  }
  const std::string kind = j["kind"].get<std::string>();

  OperatorSpec spec;
  try {
    if (kind == "dense") {
      if (!j.contains("matrix")) throw ParseError("dense spec: missing matrix");
      Mat A = mat_from_json(j["matrix"]);
      if (A.rows() != A.cols()) throw ParseError("dense spec: matrix not square");
      spec.dense = A;
    } else if (kind == "metzler_random") {
      MetzlerRandomSpec s;
      s.d = get_int(j, "d");
      s.density = j.contains("density") ? get_number(j, "density") : 0.5;
      s.diag_shift = j.contains("diag_shift") ? get_number(j, "diag_shift") : 0.0;
      s.seed = j.contains("seed") ? j["seed"].get<std::uint64_t>() : 0;
      spec.gallery = s;
    } else if (kind == "neumann_laplacian") {
      NeumannLaplacianSpec s;
      s.n = get_int(j, "n");
      s.a = get_number(j, "a");
      s.b = get_number(j, "b");
      spec.gallery = s;
    } else if (kind == "laplacian_plus_potential") {
      LaplacianPlusPotentialSpec s;
      s.n = get_int(j, "n");
      s.a = get_number(j, "a");
      s.b = get_number(j, "b");
      if (!j.contains("potential")) {
        throw ParseError("laplacian_plus_potential: missing potential");
      }
      s.potential = potential_from_json(j["potential"]);
      spec.gallery = s;
    } else if (kind == "diagonal_decay") {
      DiagonalDecaySpec s;
      s.n = get_int(j, "n");
      spec.gallery = s;
    } else {
      throw ParseError("operator spec: unknown kind '" + kind + "'");
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("operator spec: ") + e.what());
  }
  return spec;
}

std::string operator_spec_to_json(const GallerySpec& spec) {
  json j = std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        json out;
        if constexpr (std::is_same_v<T, MetzlerRandomSpec>) {
          out["kind"] = "metzler_random";
          out["d"] = s.d;
          out["density"] = s.density;
          out["diag_shift"] = s.diag_shift;
          out["seed"] = s.seed;
        } else if constexpr (std::is_same_v<T, NeumannLaplacianSpec>) {
          out["kind"] = "neumann_laplacian";
          out["n"] = s.n;
          out["a"] = s.a;
          out["b"] = s.b;
        } else if constexpr (std::is_same_v<T, LaplacianPlusPotentialSpec>) {
          out["kind"] = "laplacian_plus_potential";
          out["n"] = s.n;
          out["a"] = s.a;
          out["b"] = s.b;
          out["potential"] = potential_to_json(s.potential);
        } else {
          out["kind"] = "diagonal_decay";
          out["n"] = s.n;
        }
        return out;
      },
      spec);
  return j.dump(2) + "\n";
}

std::string operator_spec_to_json(const OperatorSpec& spec) {
  if (spec.gallery) return operator_spec_to_json(*spec.gallery);
  if (!spec.dense) throw ParseError("empty operator spec");
  json j;
  j["kind"] = "dense";
  j["matrix"] = mat_to_json(*spec.dense);
  return j.dump(2) + "\n";
}

std::string certificate_to_json(const StabilityCertificate& cert) {
  json j;
  j["schema"] = "possem-certificate/1";
  j["dimension"] = cert.dimension;
  j["cone"] = cert.cone;
  j["norm"] = to_string(cert.norm);
  j["seed"] = cert.seed;
  j["s_A"] = cert.s_A;
  j["omega_A"] = cert.omega_A;
  j["residual"] = cert.residual;
  j["verdict"] = to_string(cert.verdict);
  j["stable"] = cert.stable;

  json eta;
  eta["norm"] = to_string(cert.eta.norm);
  eta["lower"] = cert.eta.lower;
  eta["upper"] = cert.eta.upper;
  eta["value"] = cert.eta.value;
  eta["exact"] = cert.eta.exact;
  j["eta"] = eta;

  j["c_mbi"] = cert.c_mbi ? json(*cert.c_mbi) : json(nullptr);
  j["eps_robust"] = cert.eps_robust;
  j["decreasing_z"] =
      cert.decreasing_z ? vec_to_json(*cert.decreasing_z) : json(nullptr);
  j["lambda_z"] = cert.lambda_z ? json(*cert.lambda_z) : json(nullptr);
  j["perron_vector"] =
      cert.perron_vector ? vec_to_json(*cert.perron_vector) : json(nullptr);
  j["dual_witness"] =
      cert.dual_witness ? vec_to_json(*cert.dual_witness) : json(nullptr);
  j["unstable_witness"] = cert.unstable_witness
                              ? vec_to_json(*cert.unstable_witness)
                              : json(nullptr);
  j["simplex_skipped"] = cert.simplex_skipped;

  json conds;
  for (const auto& [name, c] : cert.conditions) {
    json jc;
    jc["verdict"] = c.verdict;
    jc["witness"] = c.witness ? vec_to_json(*c.witness) : json(nullptr);
    jc["detail"] = c.detail;
    conds[name] = jc;
  }
  j["conditions"] = conds;
  return j.dump(2) + "\n";
}

StabilityCertificate certificate_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("certificate: ") + e.what());
  }
  try {
    StabilityCertificate cert;
    cert.dimension = get_int(j, "dimension");
    cert.cone = j["cone"].get<std::string>();
    auto norm = norm_from_string(j["norm"].get<std::string>());
    if (!norm) throw ParseError("certificate: bad norm tag");
    cert.norm = *norm;
    cert.seed = j["seed"].get<std::uint64_t>();
    cert.s_A = get_number(j, "s_A");
    cert.omega_A = get_number(j, "omega_A");
    cert.residual = get_number(j, "residual");
    std::string verdict = j["verdict"].get<std::string>();
    cert.verdict = verdict == "stable"     ? Verdict::kStable
                   : verdict == "unstable" ? Verdict::kUnstable
                                           : Verdict::kInconclusive;
    cert.stable = j["stable"].get<bool>();

    const json& eta = j.at("eta");
    auto eta_norm = norm_from_string(eta.at("norm").get<std::string>());
    if (!eta_norm) throw ParseError("certificate: bad eta norm tag");
    cert.eta.norm = *eta_norm;
    cert.eta.lower = eta.at("lower").get<double>();
    cert.eta.upper = eta.at("upper").get<double>();
    cert.eta.value = eta.at("value").get<double>();
    cert.eta.exact = eta.at("exact").get<bool>();

    if (!j["c_mbi"].is_null()) cert.c_mbi = j["c_mbi"].get<double>();
    cert.eps_robust = get_number(j, "eps_robust");
    if (!j["decreasing_z"].is_null())
      cert.decreasing_z = vec_from_json(j["decreasing_z"]);
    if (!j["lambda_z"].is_null()) cert.lambda_z = j["lambda_z"].get<double>();
    if (!j["perron_vector"].is_null())
      cert.perron_vector = vec_from_json(j["perron_vector"]);
    if (!j["dual_witness"].is_null())
      cert.dual_witness = vec_from_json(j["dual_witness"]);
    if (!j["unstable_witness"].is_null())
      cert.unstable_witness = vec_from_json(j["unstable_witness"]);
    cert.simplex_skipped = j["simplex_skipped"].get<bool>();

    for (const auto& [name, jc] : j.at("conditions").items()) {
      ConditionResult c;
      c.verdict = jc.at("verdict").get<bool>();
      if (!jc.at("witness").is_null()) c.witness = vec_from_json(jc["witness"]);
      c.detail = jc.at("detail").get<std::string>();
      cert.conditions[name] = std::move(c);
    }
    return cert;
  } catch (const json::exception& e) {
    throw ParseError(std::string("certificate: ") + e.what());
  }
}

}  // namespace possem
