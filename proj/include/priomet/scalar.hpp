// Exact rational scalar type and the arbitrary-precision helpers built on it.
// All distances, radii, labels and embedding coordinates in this library are
// exact rationals; nothing in the core algorithms ever touches floating point.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>

namespace priomet {

using Scalar = mpq_class;
using BigInt = mpz_class;

/// mpz_class lacks a long long constructor; all our counts fit in long.
inline BigInt big(long long v) { return BigInt(static_cast<long>(v)); }

/// Parses "p/q", plain integers, or decimal strings like "-3.25".
Scalar parse_scalar(const std::string& text);

/// Canonical form: integers as "n", everything else as "p/q".
std::string format_scalar(const Scalar& value);

double to_double(const Scalar& value);

BigInt floor_div(const BigInt& a, const BigInt& b);
BigInt floor_scalar(const Scalar& value);
BigInt ceil_scalar(const Scalar& value);
Scalar abs_scalar(const Scalar& value);

/// Largest r with r^k <= value (value >= 0).
BigInt iroot_floor(const BigInt& value, unsigned k);
/// Smallest r with r^k >= value.
BigInt iroot_ceil(const BigInt& value, unsigned k);

/// pow with BigInt exponent >= 0.
BigInt ipow(const BigInt& base, unsigned long exp);

// Certified integer ceilings of transcendental expressions. Each helper
// evaluates the expression twice under directed rounding (down, then up)
// at increasing precision until both roundings agree on the ceiling, so
// the returned integer is exactly ceil(expression).
long ceil_c_root_ln(long c, const BigInt& n, unsigned k);      // ceil(c * n^(1/k) * ln n)
long ceil_c_pow2_ln(long c, long num, long den, const BigInt& n); // ceil(c * 2^(num/den) * ln n)
long ceil_c_ln(long c, const BigInt& n);                       // ceil(c * ln n)

/// Certified enclosure of log2(x) for rational x > 0: returns lo <= log2(x) <= hi.
std::pair<Scalar, Scalar> log2_interval(const Scalar& x);

// 64-bit Bernoulli acceptance threshold: an element is included when
// draw < threshold (or unconditionally when always is set). Thresholds are
// computed exactly from integer k-th roots, so sampling is bit-reproducible
// across platforms.
struct SampleThreshold {
  bool always = false;
  std::uint64_t threshold = 0;

  bool accepts(std::uint64_t draw) const { return always || draw < threshold; }
};

/// Threshold for probability n^(-i/k) over population size n (floor quantization).
SampleThreshold threshold_root_inverse(const BigInt& n, unsigned i, unsigned k);
/// Threshold for probability min(2^(a/k) * s2 / n, 1) with integer a (may be negative).
SampleThreshold threshold_pow2_ratio(long a, unsigned k, const BigInt& s2, const BigInt& n);
/// Threshold for probability 1/n.
SampleThreshold threshold_reciprocal(const BigInt& n);

}  // namespace priomet
