#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace oweb {

/// Ground field selector: Q, Q(i), F_p, or F_p with sqrt(-1) adjoined.
/// Characteristic 2 is rejected everywhere.
struct FieldSpec {
  int64_t characteristic = 0;  // 0 or an odd prime
  bool adjoin_i = false;

  bool operator==(const FieldSpec&) const = default;

  static FieldSpec rationals() { return {0, false}; }
  static FieldSpec gaussian_rationals() { return {0, true}; }
  static FieldSpec prime(int64_t p, bool with_i = false) { return {p, with_i}; }

  void validate() const;
  /// True when i already lives in the base field (p = 1 mod 4) or was adjoined.
  bool has_i() const;
  /// True when elements are residue pairs re + im*x with x^2 = -1.
  bool is_quadratic_extension() const {
    return characteristic != 0 && adjoin_i && characteristic % 4 == 3;
  }
  std::string name() const;
  static FieldSpec parse(const std::string& text);
};

/// Exact field element. Over characteristic 0 this is a Gaussian rational
/// re + im*i (im stays 0 unless the field has i); over F_p a residue, or a
/// residue pair for F_p[x]/(x^2+1).
class Scalar {
 public:
  Scalar() = default;
  explicit Scalar(const FieldSpec& spec) : spec_(spec) { spec.validate(); }
  Scalar(const FieldSpec& spec, long value);
  Scalar(const FieldSpec& spec, const mpz_class& value);
  Scalar(const FieldSpec& spec, const mpq_class& value);

  static Scalar zero(const FieldSpec& spec) { return Scalar(spec); }
  static Scalar one(const FieldSpec& spec) { return Scalar(spec, 1); }
  /// re + im*i where i is the field's square root of -1 (requires has_i()
  /// unless im = 0).
  static Scalar gaussian(const FieldSpec& spec, const mpq_class& re, const mpq_class& im);

  const FieldSpec& spec() const { return spec_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  Scalar inverse() const;
  Scalar operator/(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  /// Decimal string form: "3/4", "5", "2+3i", "-i", ...
  std::string str() const;

  // Components, exposed for hashing and serialization.
  const mpq_class& rat_re() const { return re_q_; }
  const mpq_class& rat_im() const { return im_q_; }
  int64_t mod_re() const { return re_p_; }
  int64_t mod_im() const { return im_p_; }

 private:
  friend Scalar sqrt_minus_one(const FieldSpec& spec);
  void check_same(const Scalar& o) const;

  FieldSpec spec_{};
  mpq_class re_q_{0};
  mpq_class im_q_{0};
  int64_t re_p_ = 0;
  int64_t im_p_ = 0;
};

/// A scalar s with s*s = -1. Rejects characteristic-0 requests without
/// adjoin_i and any characteristic-2 spec.
Scalar sqrt_minus_one(const FieldSpec& spec);

/// Integer binomial reduced into the field; n may be any integer
/// (generalized binomial), k < 0 gives zero.
Scalar binom(const mpz_class& n, long k, const FieldSpec& spec);
Scalar binom(long n, long k, const FieldSpec& spec);

/// Exact integer binomial for nonnegative n.
mpz_class binom_z(long n, long k);
/// Generalized integer binomial: n(n-1)...(n-k+1)/k! for any integer n.
mpz_class binom_z_general(const mpz_class& n, long k);
mpz_class factorial_z(long n);

}  // namespace oweb
