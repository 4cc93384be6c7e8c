#ifndef MLN_ERROR_HPP
#define MLN_ERROR_HPP

#include <optional>
#include <stdexcept>
#include <string>

namespace mln {

struct SourceSpan {
  int line = 1;    // 1-based
  int column = 1;  // 1-based
};

enum class ErrorCode {
  UndeclaredDomain,
  UndeclaredPredicate,
  ArityMismatch,
  DomainMismatch,
  DuplicateName,
  SyntaxError,
  NotEvidencePredicate,
  NotGround,
  Unsatisfiable,
  TooLarge,
  ConditionImpossible,
  NumericalFailure,
  MissingMarginal,
  IdMismatch,
  BadInput,
  IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message,
        std::optional<SourceSpan> span = std::nullopt);

  ErrorCode code() const { return code_; }
  const std::optional<SourceSpan>& span() const { return span_; }

 private:
  ErrorCode code_;
  std::optional<SourceSpan> span_;
};

}  // namespace mln

#endif
