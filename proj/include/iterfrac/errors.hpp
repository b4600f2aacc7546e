#ifndef ITERFRAC_ERRORS_HPP
#define ITERFRAC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace iterfrac {

// Base class for all recoverable domain errors. `name()` is the stable
// identifier printed by the CLI on stderr (exit code 1); what() carries it
// as a prefix.
class DomainError : public std::runtime_error {
 public:
  DomainError(std::string name, const std::string& what)
      : std::runtime_error(what.empty() ? name : name + ": " + what),
        name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

#define ITERFRAC_DEFINE_ERROR(Type)                          \
  class Type : public DomainError {                          \
   public:                                                   \
    explicit Type(const std::string& what = "")              \
        : DomainError(#Type, what) {}                        \
  }

ITERFRAC_DEFINE_ERROR(ModeMismatch);
ITERFRAC_DEFINE_ERROR(ExactInfeasible);
ITERFRAC_DEFINE_ERROR(ZeroBase);
ITERFRAC_DEFINE_ERROR(DivisionByZero);
ITERFRAC_DEFINE_ERROR(QDegenerate);
ITERFRAC_DEFINE_ERROR(UnitaryRequired);
ITERFRAC_DEFINE_ERROR(NotInvertible);
ITERFRAC_DEFINE_ERROR(ConstantTermNonzero);
ITERFRAC_DEFINE_ERROR(NotFixedPoint);
ITERFRAC_DEFINE_ERROR(DerivativeZero);
ITERFRAC_DEFINE_ERROR(SizeMismatch);
ITERFRAC_DEFINE_ERROR(NegativeExponent);
ITERFRAC_DEFINE_ERROR(ExtractedPole);
ITERFRAC_DEFINE_ERROR(BadRange);
ITERFRAC_DEFINE_ERROR(ParseError);

#undef ITERFRAC_DEFINE_ERROR

}  // namespace iterfrac

#endif  // ITERFRAC_ERRORS_HPP
