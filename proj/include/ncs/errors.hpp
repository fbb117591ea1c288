// errors.hpp - error taxonomy shared by all ncs modules.
#pragma once

#include <stdexcept>
#include <string>

namespace ncs {

// Base class; every library error carries a stable machine-readable code
// (used by the CLI to emit error JSON) plus a human message.
class Error : public std::runtime_error {
  public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code))
    {
    }
    const std::string& code() const noexcept { return code_; }

  private:
    std::string code_;
};

#define NCS_DEFINE_ERROR(NAME)                                                \
    class NAME : public Error {                                               \
      public:                                                                 \
        explicit NAME(const std::string& what) : Error(#NAME, what) {}        \
    }

// galois
NCS_DEFINE_ERROR(ReduciblePolynomial);
NCS_DEFINE_ERROR(DegreeMismatch);
NCS_DEFINE_ERROR(DivisionByZero);

// linalg
NCS_DEFINE_ERROR(DimensionMismatch);
NCS_DEFINE_ERROR(SingularMatrix);
NCS_DEFINE_ERROR(DuplicatePoint);

// mdscodes
NCS_DEFINE_ERROR(TooLong);
NCS_DEFINE_ERROR(NotMds);
NCS_DEFINE_ERROR(BadPivotSet);
NCS_DEFINE_ERROR(TooManySubsets);
NCS_DEFINE_ERROR(KTooLarge);
NCS_DEFINE_ERROR(Unsupported);
NCS_DEFINE_ERROR(MdsRetryExhausted);
NCS_DEFINE_ERROR(NotConstructible);

// storage
NCS_DEFINE_ERROR(SingularSelection);

// repair
NCS_DEFINE_ERROR(InsufficientSurvivors);
NCS_DEFINE_ERROR(Disconnected);
NCS_DEFINE_ERROR(NoUnusedVector);
NCS_DEFINE_ERROR(MissingShare);
NCS_DEFINE_ERROR(TooManyFailures);
NCS_DEFINE_ERROR(InsufficientShares);

// simnet
NCS_DEFINE_ERROR(Unreachable);
NCS_DEFINE_ERROR(ConnectivityRetryExhausted);

// cli / io
NCS_DEFINE_ERROR(ParseError);

#undef NCS_DEFINE_ERROR

} // namespace ncs
