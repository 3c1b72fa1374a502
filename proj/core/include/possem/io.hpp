// possem - stability certificates for positive linear systems
// Copyright 2026 The possem Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <optional>
#include <string>

#include "possem/certificates.hpp"
#include "possem/gallery.hpp"

namespace possem {

// Raised on malformed operator-spec or certificate documents; the CLI maps
// it to its parse-error exit code.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Operator-spec document: either a gallery constructor
// {"kind": "metzler_random" | "neumann_laplacian" |
//  "laplacian_plus_potential" | "diagonal_decay", ...params}
// or an inline matrix {"kind": "dense", "matrix": [[...], ...]}.
struct OperatorSpec {
  std::optional<GallerySpec> gallery;
  std::optional<Mat> dense;

  Mat build() const;
};

OperatorSpec parse_operator_spec(const std::string& json_text);
std::string operator_spec_to_json(const GallerySpec& spec);
std::string operator_spec_to_json(const OperatorSpec& spec);

// Deterministic serialization: keys are sorted, doubles round-trip
// exactly; two runs with identical inputs produce byte-identical
// documents.
std::string certificate_to_json(const StabilityCertificate& cert);
StabilityCertificate certificate_from_json(const std::string& json_text);

}  // namespace possem
