// possem - stability certificates for positive linear systems
// Copyright 2026 The possem Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace possem {

// Input fails a documented precondition (not-strictly-positive orbit vector,
// non-Metzler matrix where one is required, ...). The CLI maps this to its
// "precondition failure" exit code, distinct from ordinary invalid arguments.
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what)
      : std::invalid_argument(what) {}
};

// A numerical routine could not meet its contract (singular resolvent,
// eigensolver failure, simplex pivot cap).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what)
      : std::runtime_error(what) {}
};

// Two decision procedures that must agree did not. This is a bug detector,
// never an expected runtime outcome; it carries the names of the
// disagreeing conditions so the caller can report all witnesses.
class VerdictMismatchError : public std::runtime_error {
 public:
  VerdictMismatchError(const std::string& what,
                       std::vector<std::string> disagreeing)
      : std::runtime_error(what), disagreeing_(std::move(disagreeing)) {}

  const std::vector<std::string>& disagreeing() const { return disagreeing_; }

 private:
  std::vector<std::string> disagreeing_;
};

}  // namespace possem
