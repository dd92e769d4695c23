#include "qwalk/error.hpp"

namespace qwalk {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::BadDeterminant: return "BadDeterminant";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::BadParameter: return "BadParameter";
    case ErrorKind::PoleInC: return "PoleInC";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::DivergentScale: return "DivergentScale";
    case ErrorKind::CoinDegenerate: return "CoinDegenerate";
    case ErrorKind::BadOrder: return "BadOrder";
    case ErrorKind::VariantDomain: return "VariantDomain";
    case ErrorKind::DivergentIntegral: return "DivergentIntegral";
    case ErrorKind::NonConvergedQuadrature: return "NonConvergedQuadrature";
    case ErrorKind::InvalidDensity: return "InvalidDensity";
  }
  return "Unknown";
}

}  // namespace qwalk
