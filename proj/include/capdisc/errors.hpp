#pragma once

#include <stdexcept>
#include <string>

namespace capdisc {

/// Invalid argument for a mathematical operation (bad radius, unsupported
/// space, non-coprime fraction, ...). Maps to CLI exit code 3 unless the
/// CLI can attribute it to flag parsing.
class domain_error : public std::invalid_argument {
 public:
  explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Numeric failure at runtime: overflow of exact integer arithmetic,
/// quadrature tolerance not reached, non-finite intermediate. CLI exit 3.
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

/// File / serialization failure. CLI exit 4.
class io_error : public std::runtime_error {
 public:
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace capdisc
