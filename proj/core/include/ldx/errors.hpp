#pragma once

#include <stdexcept>
#include <string>

namespace ldx {

/// Coarse classification used by the CLI to pick an exit code.
enum class ErrorKind {
  Validation,   ///< inputs outside the domain where the maths applies
  Convergence,  ///< a numerical procedure failed to converge
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define LDX_DEFINE_ERROR(Name, Kind)                          \
  class Name : public Error {                                 \
   public:                                                    \
    explicit Name(const std::string& what)                    \
        : Error(ErrorKind::Kind, #Name ": " + what) {}        \
  }

LDX_DEFINE_ERROR(DomainError, Validation);
LDX_DEFINE_ERROR(NoInteriorMinimum, Validation);
LDX_DEFINE_ERROR(NonConvexAtMinimum, Validation);
LDX_DEFINE_ERROR(DegenerateCurvature, Validation);
LDX_DEFINE_ERROR(BracketFailure, Validation);
LDX_DEFINE_ERROR(WindowError, Validation);
LDX_DEFINE_ERROR(GapVanishes, Validation);
LDX_DEFINE_ERROR(ExplosionRegion, Validation);
LDX_DEFINE_ERROR(BranchFault, Validation);
LDX_DEFINE_ERROR(QuadratureNonConvergent, Convergence);
LDX_DEFINE_ERROR(FitIllConditioned, Convergence);
LDX_DEFINE_ERROR(StepUnderflow, Convergence);

#undef LDX_DEFINE_ERROR

/// Riccati solution left every bounded region before the requested horizon.
class BlowUp : public Error {
 public:
  BlowUp(double time, const std::string& what)
      : Error(ErrorKind::Convergence, "BlowUp: " + what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace ldx
