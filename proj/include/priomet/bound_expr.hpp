// Tiny arithmetic expressions over j, n, k for audit bounds, e.g.
// "2*ceil(k*log2(j)/log2(n))-1" or "1024*alpha(j)". Evaluation is exact:
// log2 produces a certified rational enclosure and ceil/floor collapse it
// back to a point when both endpoints agree, so closed-form bounds come
// out as exact rationals.
#pragma once

#include <memory>
#include <string>

#include "priomet/priority.hpp"
#include "priomet/scalar.hpp"

namespace priomet {

struct Enclosure {
  Scalar lo, hi;
  bool exact() const { return lo == hi; }
};

struct EvalContext {
  Scalar j;
  Scalar n;
  Scalar k;
  const PriorityFunction* alpha = nullptr;  // required when the expr uses alpha(...)
};

class BoundExpr {
 public:
  static BoundExpr parse(const std::string& text);  // throws ValidationError(ParseError)
  Enclosure eval(const EvalContext& ctx) const;
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

/// Outcome of comparing a measured value against a bound enclosure.
enum class BoundCheck { Pass, Fail, Indeterminate };

/// Pass when value <= lo; Fail when value > hi; Indeterminate when the
/// enclosure straddles the value (only possible for non-collapsing
/// expressions such as raw log2 bounds).
BoundCheck check_bound(const Scalar& value, const Enclosure& bound);

}  // namespace priomet
