#include "priomet/scalar.hpp"

#include <mpfr.h>

#include <cctype>
#include <stdexcept>

namespace priomet {

Scalar parse_scalar(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty scalar");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    mpq_class q;
    if (q.set_str(text, 10) != 0) throw std::invalid_argument("bad rational: " + text);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    q.canonicalize();
    return q;
  }
  auto dot = text.find('.');
  if (dot == std::string::npos) {
    mpq_class q;
    if (q.set_str(text, 10) != 0) throw std::invalid_argument("bad integer: " + text);
    q.canonicalize();
    return q;
  }
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  size_t frac_len = text.size() - dot - 1;
  if (frac_len == 0) throw std::invalid_argument("trailing dot: " + text);
  for (size_t i = 0; i < digits.size(); ++i) {
    char ch = digits[i];
    if (i == 0 && (ch == '-' || ch == '+')) continue;
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      throw std::invalid_argument("bad decimal: " + text);
  }
  mpz_class num(digits, 10);
  mpz_class den = ipow(BigInt(10), frac_len);
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

std::string format_scalar(const Scalar& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

double to_double(const Scalar& value) { return value.get_d(); }

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

BigInt floor_scalar(const Scalar& value) {
  return floor_div(value.get_num(), value.get_den());
}

BigInt ceil_scalar(const Scalar& value) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), value.get_num().get_mpz_t(), value.get_den().get_mpz_t());
  return q;
}

Scalar abs_scalar(const Scalar& value) { return value < 0 ? Scalar(-value) : value; }

BigInt iroot_floor(const BigInt& value, unsigned k) {
  if (value < 0) throw std::invalid_argument("iroot of negative");
  BigInt r;
  mpz_root(r.get_mpz_t(), value.get_mpz_t(), k);
  return r;
}

BigInt iroot_ceil(const BigInt& value, unsigned k) {
  BigInt r = iroot_floor(value, k);
  BigInt p;
  mpz_pow_ui(p.get_mpz_t(), r.get_mpz_t(), k);
  if (p < value) ++r;
  return r;
}

BigInt ipow(const BigInt& base, unsigned long exp) {
  BigInt p;
  mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), exp);
  return p;
}

namespace {

// Evaluates expr under both rounding directions until the ceilings agree.
template <typename Fn>
long certified_ceil(Fn&& eval) {
  for (mpfr_prec_t prec = 128; prec <= 2048; prec *= 2) {
    mpfr_t lo, hi;
    mpfr_init2(lo, prec);
    mpfr_init2(hi, prec);
    eval(lo, MPFR_RNDD);
    eval(hi, MPFR_RNDU);
    mpz_class clo, chi;
    mpfr_get_z(clo.get_mpz_t(), lo, MPFR_RNDU);
    mpfr_get_z(chi.get_mpz_t(), hi, MPFR_RNDU);
    mpfr_clear(lo);
    mpfr_clear(hi);
    if (clo == chi) {
      if (!clo.fits_slong_p()) throw std::overflow_error("certified_ceil overflow");
      return clo.get_si();
    }
  }
  throw std::runtime_error("certified_ceil failed to converge");
}

}  // namespace

long ceil_c_root_ln(long c, const BigInt& n, unsigned k) {
  if (n <= 1) return 0;  // ln(1) = 0
  return certified_ceil([&](mpfr_t out, mpfr_rnd_t rnd) {
    mpfr_t root, ln;
    mpfr_prec_t prec = mpfr_get_prec(out);
    mpfr_init2(root, prec);
    mpfr_init2(ln, prec);
    mpfr_set_z(root, n.get_mpz_t(), rnd);
    mpfr_rootn_ui(root, root, k, rnd);
    mpfr_set_z(ln, n.get_mpz_t(), rnd);
    mpfr_log(ln, ln, rnd);
    mpfr_mul(out, root, ln, rnd);
    mpfr_mul_si(out, out, c, rnd);
    mpfr_clear(root);
    mpfr_clear(ln);
  });
}

long ceil_c_pow2_ln(long c, long num, long den, const BigInt& n) {
  if (n <= 1) return 0;
  return certified_ceil([&](mpfr_t out, mpfr_rnd_t rnd) {
    mpfr_t pw, ln, ex;
    mpfr_prec_t prec = mpfr_get_prec(out);
    mpfr_init2(pw, prec);
    mpfr_init2(ln, prec);
    mpfr_init2(ex, prec);
    mpfr_set_si(ex, num, rnd);
    mpfr_div_si(ex, ex, den, rnd);
    mpfr_ui_pow(pw, 2, ex, rnd);
    mpfr_set_z(ln, n.get_mpz_t(), rnd);
    mpfr_log(ln, ln, rnd);
    mpfr_mul(out, pw, ln, rnd);
    mpfr_mul_si(out, out, c, rnd);
    mpfr_clear(pw);
    mpfr_clear(ln);
    mpfr_clear(ex);
  });
}

long ceil_c_ln(long c, const BigInt& n) {
  if (n <= 1) return 0;
  return certified_ceil([&](mpfr_t out, mpfr_rnd_t rnd) {
    mpfr_set_z(out, n.get_mpz_t(), rnd);
    mpfr_log(out, out, rnd);
    mpfr_mul_si(out, out, c, rnd);
  });
}

std::pair<Scalar, Scalar> log2_interval(const Scalar& x) {
  if (x <= 0) throw std::domain_error("log2 of non-positive value");
  const mpfr_prec_t prec = 192;
  mpfr_t v;
  mpfr_init2(v, prec);
  mpq_class lo_q, hi_q;

  mpfr_set_q(v, x.get_mpq_t(), MPFR_RNDD);
  mpfr_log2(v, v, MPFR_RNDD);
  mpfr_get_q(lo_q.get_mpq_t(), v);

  mpfr_set_q(v, x.get_mpq_t(), MPFR_RNDU);
  mpfr_log2(v, v, MPFR_RNDU);
  mpfr_get_q(hi_q.get_mpq_t(), v);

  mpfr_clear(v);
  return {Scalar(lo_q), Scalar(hi_q)};
}

namespace {

const BigInt kTwo64 = ipow(BigInt(2), 64);

SampleThreshold clamp_threshold(const BigInt& t) {
  SampleThreshold st;
  if (t >= kTwo64) {
    st.always = true;
  } else if (t > 0) {
    st.threshold = static_cast<std::uint64_t>(mpz_get_ui(t.get_mpz_t()));
  }
  return st;
}

}  // namespace

SampleThreshold threshold_root_inverse(const BigInt& n, unsigned i, unsigned k) {
  // largest t with t^k * n^i <= 2^(64k), i.e. t/2^64 <= n^(-i/k)
  BigInt ni = BigInt(1);
  for (unsigned x = 0; x < i; ++x) ni *= n;
  BigInt budget = ipow(BigInt(2), 64ul * k);
  BigInt t = iroot_floor(floor_div(budget, ni), k);
  return clamp_threshold(t);
}

SampleThreshold threshold_pow2_ratio(long a, unsigned k, const BigInt& s2, const BigInt& n) {
  // largest t with (t*n)^k <= 2^(64k + a) * s2^k, i.e. t/2^64 <= 2^(a/k)*s2/n
  long shift = 64l * static_cast<long>(k) + a;
  if (shift < 0) return SampleThreshold{};
  BigInt m = ipow(s2, k) * ipow(BigInt(2), static_cast<unsigned long>(shift));
  BigInt t = floor_div(iroot_floor(m, k), n);
  return clamp_threshold(t);
}

SampleThreshold threshold_reciprocal(const BigInt& n) {
  return clamp_threshold(floor_div(kTwo64, n));
}

}  // namespace priomet
