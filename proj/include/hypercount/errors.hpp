#pragma once

#include <stdexcept>
#include <string>

namespace hypercount {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ffield
struct NotAPrimePower : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };
struct DivisionByZero : Error { using Error::Error; };

// graphcore
struct Disconnected : Error { using Error::Error; };
struct SelfLoop : Error { using Error::Error; };
struct NoCycles : Error { using Error::Error; };
struct TooManyEdges : Error { using Error::Error; };

// matteval
struct MissingVariable : Error { using Error::Error; };

// counting
struct BudgetExceeded : Error { using Error::Error; };
struct CorruptCheckpoint : Error { using Error::Error; };
struct SchemeMismatch : Error { using Error::Error; };
struct NotACone : Error { using Error::Error; };
struct InvariantViolation : Error { using Error::Error; };

// rationalfit
struct DuplicateAbscissa : Error { using Error::Error; };
struct DivisibilityViolation : Error { using Error::Error; };
struct TooFewPoints : Error { using Error::Error; };

// cli
struct UsageError : Error { using Error::Error; };

}  // namespace hypercount
