#ifndef ISOFOCAL_CORE_HPP
#define ISOFOCAL_CORE_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace isofocal {

using cplx = std::complex<double>;
using VectorXc = Eigen::VectorXcd;
using MatrixXc = Eigen::MatrixXcd;
using Vector3c = Eigen::Vector3cd;

/// Default numerical tolerance; every operation taking a `tol` accepts an override.
inline constexpr double kDefaultTol = 1e-8;

/// Coarse classification used by callers (and the CLI exit codes).
enum class ErrorKind {
  InvalidInput,  ///< precondition violated by the caller
  Numerical,     ///< iteration failed or a decision could not be made
  Collision,     ///< two positions coincide (singular mass system)
  Ambiguous,     ///< a rank or multiplicity decision sits on the tolerance boundary
  Degenerate,    ///< the input is a degenerate instance (base point, split chain, ...)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, double residual = 0.0)
      : std::runtime_error(what), kind_(kind), residual_(residual) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// Residual or diagnostic magnitude attached to numerical failures (0 if none).
  double residual() const noexcept { return residual_; }

 private:
  ErrorKind kind_;
  double residual_;
};

class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& what) : Error(ErrorKind::InvalidInput, what) {}
};

class NumericalFailure : public Error {
 public:
  explicit NumericalFailure(const std::string& what, double residual = 0.0)
      : Error(ErrorKind::Numerical, what, residual) {}

 protected:
  NumericalFailure(ErrorKind kind, const std::string& what, double residual)
      : Error(kind, what, residual) {}
};

class CollisionError : public NumericalFailure {
 public:
  explicit CollisionError(const std::string& what, double residual = 0.0)
      : NumericalFailure(ErrorKind::Collision, what, residual) {}
};

class AmbiguityError : public NumericalFailure {
 public:
  explicit AmbiguityError(const std::string& what, double residual = 0.0)
      : NumericalFailure(ErrorKind::Ambiguous, what, residual) {}
};

class DegenerateError : public NumericalFailure {
 public:
  explicit DegenerateError(const std::string& what, double residual = 0.0)
      : NumericalFailure(ErrorKind::Degenerate, what, residual) {}
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid_input";
    case ErrorKind::Numerical: return "numerical";
    case ErrorKind::Collision: return "collision";
    case ErrorKind::Ambiguous: return "ambiguous";
    case ErrorKind::Degenerate: return "degenerate";
  }
  return "unknown";
}

}  // namespace isofocal

#endif  // ISOFOCAL_CORE_HPP
