#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace carto {

enum class ErrorKind {
  invalid_input,           // malformed value handed to a constructor
  domain,                  // argument outside a function's mathematical domain
  out_of_domain,           // coordinate outside a projection's valid region
  at_infinity,             // coordinate maps to the point at infinity
  out_of_hemisphere,       // coordinate on the hidden side of a hemispheric map
  no_preimage,             // plane point outside the image region
  inconsistent_triangle,   // side lengths violate the spherical triangle inequality
  ambiguous_geodesic,      // antipodal endpoints
  parameter,               // invalid projection or algorithm parameters
  convergence,             // iteration cap reached
  empty_result,            // nothing of the request lies in the domain
  parse,                   // malformed text input
  usage,                   // malformed command line
};

constexpr std::string_view to_string(ErrorKind k) noexcept {
  switch (k) {
    case ErrorKind::invalid_input: return "invalid input";
    case ErrorKind::domain: return "domain error";
    case ErrorKind::out_of_domain: return "out of domain";
    case ErrorKind::at_infinity: return "at infinity";
    case ErrorKind::out_of_hemisphere: return "out of hemisphere";
    case ErrorKind::no_preimage: return "no preimage";
    case ErrorKind::inconsistent_triangle: return "inconsistent triangle";
    case ErrorKind::ambiguous_geodesic: return "ambiguous geodesic";
    case ErrorKind::parameter: return "parameter error";
    case ErrorKind::convergence: return "convergence error";
    case ErrorKind::empty_result: return "empty result";
    case ErrorKind::parse: return "parse error";
    case ErrorKind::usage: return "usage error";
  }
  return "error";
}

/// Every failure in the library is reported as an Error carrying a kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace carto
