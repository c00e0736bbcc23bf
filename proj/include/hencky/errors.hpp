#pragma once

#include <stdexcept>
#include <string>

namespace hencky {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// malformed arguments: non-finite entries, non-unit axis, zero quadrature nodes, ...
struct InvalidInputError : Error {
  using Error::Error;
};

// spectral function evaluated outside its domain; carries the offending eigenvalue
struct SpectralDomainError : Error {
  SpectralDomainError(const std::string& what, double eigenvalue)
      : Error(what), eigenvalue(eigenvalue) {}
  double eigenvalue;
};

// polar decomposition met a stretch eigenvalue below the configured floor
struct DegenerateDeformationError : Error {
  using Error::Error;
};

// h(B)B and B^1/2 h(B) B^1/2 disagree, i.e. the law is not behaving isotropically
struct CoaxialityViolationError : Error {
  using Error::Error;
};

// the conjugate's objective keeps increasing past the search bound
struct UnboundedConjugateError : Error {
  using Error::Error;
};

// an internal identity that holds in exact arithmetic failed numerically
struct InternalConsistencyError : Error {
  using Error::Error;
};

// malformed input file
struct ParseError : Error {
  using Error::Error;
};

}  // namespace hencky
