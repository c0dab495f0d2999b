#include "priomet/priority.hpp"

#include <mpfr.h>

#include "priomet/errors.hpp"

namespace priomet {

PriorityFunction validate_priority_function(std::vector<Scalar> values, int n) {
  if (n < 1 || static_cast<int>(values.size()) < n)
    throw ValidationError(ErrorKind::InvalidParams, "need alpha values for 1..n");
  values.resize(n);
  Scalar sum = 0;
  for (int j = 1; j <= n; ++j) {
    const Scalar& a = values[j - 1];
    if (a <= 0)
      throw ValidationError(ErrorKind::InvalidParams, "alpha(" + std::to_string(j) + ") <= 0",
                            {j, -1, -1});
    if (j > 1 && a < values[j - 2])
      throw ValidationError(ErrorKind::NotMonotone,
                            "alpha(" + std::to_string(j) + ") < alpha(" + std::to_string(j - 1) + ")",
                            {j - 1, j, -1});
    sum += Scalar(1) / a;
  }
  if (sum >= 1)
    throw ValidationError(ErrorKind::SumAtLeastOne,
                          "sum of 1/alpha over 1.." + std::to_string(n) + " is " +
                              format_scalar(sum) + " >= 1");
  PriorityFunction pf;
  pf.alpha = std::move(values);
  pf.partial_sum = sum;
  return pf;
}

namespace {

// base(j) = j * log2(j+1) * (log2 log2 (j+3))^1.1 rounded up at 128 bits.
// Every step is weakly monotone in j and rounded in a fixed direction, so
// the resulting rational sequence is non-decreasing.
Scalar alpha_base(long j) {
  const mpfr_prec_t prec = 128;
  mpfr_t v, f, e;
  mpfr_init2(v, prec);
  mpfr_init2(f, prec);
  mpfr_init2(e, prec);

  mpfr_set_si(f, j + 1, MPFR_RNDU);
  mpfr_log2(f, f, MPFR_RNDU);  // log2(j+1)
  mpfr_mul_si(v, f, j, MPFR_RNDU);

  mpfr_set_si(f, j + 3, MPFR_RNDU);
  mpfr_log2(f, f, MPFR_RNDU);
  mpfr_log2(f, f, MPFR_RNDU);  // log2 log2 (j+3), >= 1 for j >= 1
  mpfr_set_si(e, 11, MPFR_RNDU);
  mpfr_div_si(e, e, 10, MPFR_RNDU);
  mpfr_pow(f, f, e, MPFR_RNDU);
  mpfr_mul(v, v, f, MPFR_RNDU);

  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), v);
  mpfr_clear(v);
  mpfr_clear(f);
  mpfr_clear(e);
  return Scalar(q);
}

}  // namespace

PriorityFunction default_alpha(int n) {
  if (n < 1) throw ValidationError(ErrorKind::InvalidParams, "default_alpha needs n >= 1");
  std::vector<Scalar> base(n);
  Scalar sum = 0;
  for (int j = 1; j <= n; ++j) {
    base[j - 1] = alpha_base(j);
    sum += Scalar(1) / base[j - 1];
  }
  // smallest power of two c with sum/c < 1
  Scalar c = 1;
  while (sum / c >= 1) c *= 2;
  for (auto& a : base) a *= c;
  return validate_priority_function(std::move(base), n);
}

}  // namespace priomet
