#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qwalk {

enum class ErrorKind {
  NotNormalized,
  BadDeterminant,
  UnknownName,
  ParseError,
  BadParameter,
  PoleInC,
  DomainError,
  DivergentScale,
  CoinDegenerate,
  BadOrder,
  VariantDomain,
  DivergentIntegral,
  NonConvergedQuadrature,
  InvalidDensity,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the ErrorKind tags so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qwalk
