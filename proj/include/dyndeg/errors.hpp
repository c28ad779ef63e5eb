#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace dyndeg {

// Root of every error raised by the library. `kind()` is the stable name used
// in reports and CLI diagnostics.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string &what,
        std::optional<std::size_t> column = std::nullopt)
      : std::runtime_error(what), kind_(std::move(kind)), column_(column) {}
  const std::string &kind() const noexcept { return kind_; }
  // 1-based column inside the offending expression, when known.
  std::optional<std::size_t> column() const noexcept { return column_; }

private:
  std::string kind_;
  std::optional<std::size_t> column_;
};

#define DYNDEG_ERROR(Name)                                                     \
  class Name : public Error {                                                  \
  public:                                                                      \
    explicit Name(const std::string &what,                                     \
                  std::optional<std::size_t> column = std::nullopt)            \
        : Error(#Name, what, column) {}                                        \
  }

// Input errors.
DYNDEG_ERROR(SyntaxError);
DYNDEG_ERROR(HomogeneityError);
DYNDEG_ERROR(UnknownVariable);
DYNDEG_ERROR(ParseError);
DYNDEG_ERROR(ValidationError);
DYNDEG_ERROR(UnknownSuite);

// Structural errors.
DYNDEG_ERROR(SpaceMismatch);
DYNDEG_ERROR(DimensionMismatch);
DYNDEG_ERROR(ZeroMap);
DYNDEG_ERROR(SingularMatrix);
DYNDEG_ERROR(NotInvariant);
DYNDEG_ERROR(NotTriangular);
DYNDEG_ERROR(WitnessFailed);
DYNDEG_ERROR(ShapeMismatch);
DYNDEG_ERROR(Unsupported);

// Computation errors.
DYNDEG_ERROR(ResourceLimit);
DYNDEG_ERROR(EmptySequence);
DYNDEG_ERROR(NonConvergence);
DYNDEG_ERROR(Infeasible);
DYNDEG_ERROR(ConeNotPreserved);
DYNDEG_ERROR(DegenerateFibers);

#undef DYNDEG_ERROR

} // namespace dyndeg
