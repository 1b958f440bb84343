#include "oweb/field.hpp"

#include <sstream>

namespace oweb {

namespace {

bool is_odd_prime(int64_t p) {
  if (p < 3 || p % 2 == 0) return false;
  for (int64_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

int64_t mod_norm(int64_t x, int64_t p) {
  int64_t r = x % p;
  return r < 0 ? r + p : r;
}

int64_t mul_mod(int64_t a, int64_t b, int64_t p) {
  return static_cast<int64_t>((__int128)a * b % p);
}

int64_t pow_mod(int64_t a, int64_t e, int64_t p) {
  int64_t r = 1;
  a = mod_norm(a, p);
  while (e > 0) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

int64_t inv_mod(int64_t a, int64_t p) {
  a = mod_norm(a, p);
  if (a == 0) throw std::domain_error("division by zero in F_p");
  return pow_mod(a, p - 2, p);
}

mpz_class mpz_from(int64_t v) {
  mpz_class z;
  mpz_set_si(z.get_mpz_t(), v);
  return z;
}

int64_t reduce_mpz(const mpz_class& z, int64_t p) {
  mpz_class r = z % mpz_from(p);
  long v = r.get_si();
  return mod_norm(v, p);
}

}  // namespace

void FieldSpec::validate() const {
  if (characteristic == 0) return;
  if (characteristic == 2) throw std::invalid_argument("characteristic 2 is not supported");
  if (!is_odd_prime(characteristic))
    throw std::invalid_argument("characteristic must be 0 or an odd prime");
}

bool FieldSpec::has_i() const {
  if (characteristic == 0) return adjoin_i;
  if (characteristic % 4 == 1) return true;
  return adjoin_i;
}

std::string FieldSpec::name() const {
  std::string base = characteristic == 0 ? "q" : std::to_string(characteristic);
  if (adjoin_i) base += "(i)";
  return base;
}

FieldSpec FieldSpec::parse(const std::string& text) {
  std::string s = text;
  bool with_i = false;
  if (s.size() >= 3 && s.substr(s.size() - 3) == "(i)") {
    with_i = true;
    s = s.substr(0, s.size() - 3);
  }
  FieldSpec spec;
  if (s == "q" || s == "Q" || s == "0") {
    spec = {0, with_i};
  } else {
    spec = {std::stoll(s), with_i};
  }
  spec.validate();
  return spec;
}

Scalar::Scalar(const FieldSpec& spec, long value) : spec_(spec) {
  spec.validate();
  if (spec_.characteristic == 0)
    re_q_ = value;
  else
    re_p_ = mod_norm(value, spec_.characteristic);
}

Scalar::Scalar(const FieldSpec& spec, const mpz_class& value) : spec_(spec) {
  spec.validate();
  if (spec_.characteristic == 0)
    re_q_ = value;
  else
    re_p_ = reduce_mpz(value, spec_.characteristic);
}

Scalar::Scalar(const FieldSpec& spec, const mpq_class& value) : spec_(spec) {
  spec.validate();
  if (spec_.characteristic == 0) {
    re_q_ = value;
    re_q_.canonicalize();
  } else {
    int64_t num = reduce_mpz(value.get_num(), spec_.characteristic);
    int64_t den = reduce_mpz(value.get_den(), spec_.characteristic);
    re_p_ = mul_mod(num, inv_mod(den, spec_.characteristic), spec_.characteristic);
  }
}

bool Scalar::is_zero() const {
  if (spec_.characteristic == 0) return re_q_ == 0 && im_q_ == 0;
  return re_p_ == 0 && im_p_ == 0;
}

bool Scalar::is_one() const {
  if (spec_.characteristic == 0) return re_q_ == 1 && im_q_ == 0;
  return re_p_ == 1 && im_p_ == 0;
}

void Scalar::check_same(const Scalar& o) const {
  if (!(spec_ == o.spec_)) throw std::invalid_argument("scalars from different fields");
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same(o);
  Scalar r(spec_);
  if (spec_.characteristic == 0) {
    r.re_q_ = re_q_ + o.re_q_;
    r.im_q_ = im_q_ + o.im_q_;
  } else {
    int64_t p = spec_.characteristic;
    r.re_p_ = mod_norm(re_p_ + o.re_p_, p);
    r.im_p_ = mod_norm(im_p_ + o.im_p_, p);
  }
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator-() const {
  Scalar r(spec_);
  if (spec_.characteristic == 0) {
    r.re_q_ = -re_q_;
    r.im_q_ = -im_q_;
  } else {
    int64_t p = spec_.characteristic;
    r.re_p_ = mod_norm(-re_p_, p);
    r.im_p_ = mod_norm(-im_p_, p);
  }
  return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_same(o);
  Scalar r(spec_);
  if (spec_.characteristic == 0) {
    r.re_q_ = re_q_ * o.re_q_ - im_q_ * o.im_q_;
    r.im_q_ = re_q_ * o.im_q_ + im_q_ * o.re_q_;
  } else {
    int64_t p = spec_.characteristic;
    r.re_p_ = mod_norm(mul_mod(re_p_, o.re_p_, p) - mul_mod(im_p_, o.im_p_, p), p);
    r.im_p_ = mod_norm(mul_mod(re_p_, o.im_p_, p) + mul_mod(im_p_, o.re_p_, p), p);
  }
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  Scalar r(spec_);
  if (spec_.characteristic == 0) {
    mpq_class norm = re_q_ * re_q_ + im_q_ * im_q_;
    r.re_q_ = re_q_ / norm;
    r.im_q_ = -im_q_ / norm;
  } else {
    int64_t p = spec_.characteristic;
    // norm = re^2 + im^2 is invertible: for im != 0 we are in F_p[x]/(x^2+1)
    // with -1 a non-residue, so re^2 = -im^2 has no solution.
    int64_t norm = mod_norm(mul_mod(re_p_, re_p_, p) + mul_mod(im_p_, im_p_, p), p);
    int64_t ninv = inv_mod(norm, p);
    r.re_p_ = mul_mod(re_p_, ninv, p);
    r.im_p_ = mod_norm(-mul_mod(im_p_, ninv, p), p);
  }
  return r;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

bool Scalar::operator==(const Scalar& o) const {
  check_same(o);
  if (spec_.characteristic == 0) return re_q_ == o.re_q_ && im_q_ == o.im_q_;
  return re_p_ == o.re_p_ && im_p_ == o.im_p_;
}

std::string Scalar::str() const {
  std::ostringstream out;
  if (spec_.characteristic == 0) {
    if (im_q_ == 0) {
      out << re_q_;
    } else {
      if (re_q_ != 0) {
        out << re_q_;
        if (im_q_ > 0) out << "+";
      }
      if (im_q_ == 1)
        out << "i";
      else if (im_q_ == -1)
        out << "-i";
      else
        out << im_q_ << "i";
    }
  } else {
    if (im_p_ == 0) {
      out << re_p_;
    } else {
      if (re_p_ != 0) out << re_p_ << "+";
      if (im_p_ == 1)
        out << "i";
      else
        out << im_p_ << "i";
    }
  }
  return out.str();
}

Scalar Scalar::gaussian(const FieldSpec& spec, const mpq_class& re, const mpq_class& im) {
  if (im != 0 && !spec.has_i())
    throw std::domain_error("field has no sqrt(-1)");
  Scalar r(spec, re);
  if (im == 0) return r;
  return r + Scalar(spec, im) * sqrt_minus_one(spec);
}

Scalar sqrt_minus_one(const FieldSpec& spec) {
  spec.validate();
  Scalar r(spec);
  if (spec.characteristic == 0) {
    if (!spec.adjoin_i)
      throw std::domain_error("sqrt(-1) requested over Q without adjoining i");
    r.im_q_ = 1;
    return r;
  }
  int64_t p = spec.characteristic;
  if (p % 4 == 1) {
    // -1 is a residue: g^((p-1)/4) squares to -1 for a non-residue g.
    for (int64_t g = 2; g < p; ++g) {
      if (pow_mod(g, (p - 1) / 2, p) == p - 1) {
        r.re_p_ = pow_mod(g, (p - 1) / 4, p);
        return r;
      }
    }
    throw std::logic_error("no quadratic non-residue found");
  }
  if (!spec.adjoin_i)
    throw std::domain_error("sqrt(-1) requested over F_p with p = 3 mod 4 and no adjoined i");
  r.im_p_ = 1;  // the generator x of F_p[x]/(x^2+1)
  return r;
}

mpz_class factorial_z(long n) {
  mpz_class r = 1;
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

mpz_class binom_z(long n, long k) {
  if (k < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

mpz_class binom_z_general(const mpz_class& n, long k) {
  if (k < 0) return 0;
  mpz_class num = 1;
  for (long j = 0; j < k; ++j) num *= (n - j);
  mpz_class r = num / factorial_z(k);
  return r;
}

Scalar binom(const mpz_class& n, long k, const FieldSpec& spec) {
  return Scalar(spec, binom_z_general(n, k));
}

Scalar binom(long n, long k, const FieldSpec& spec) {
  return binom(mpz_class(n), k, spec);
}

}  // namespace oweb
