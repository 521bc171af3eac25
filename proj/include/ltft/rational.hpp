#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace ltft {

// Exact scalar over Q, backed by GMP rationals. Always kept in canonical
// form: positive denominator, gcd(|num|, den) = 1.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}
  Rational(int n) : v_(n) {}
  Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  // Parses "p/q" or "p".
  static Rational parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("Rational: empty string");
    mpq_class q;
    if (q.set_str(s, 10) != 0)
      throw std::invalid_argument("Rational: cannot parse '" + s + "'");
    if (q.get_den() == 0) throw std::domain_error("Rational: zero denominator");
    q.canonicalize();
    return Rational(q);
  }

  std::string str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class v_;
};

inline Rational inverse(const Rational& r) { return Rational(1) / r; }

// Prime field F_p behind the same scalar interface. The modulus travels with
// the value; a default-constructed scalar has modulus 0 and binds to the
// modulus of the other operand (needed for Scalar(0)/Scalar(1) literals).
class Fp {
 public:
  Fp() : v_(0), p_(0) {}
  Fp(long n) : v_(n), p_(0) {}
  Fp(int n) : v_(n), p_(0) {}
  Fp(long n, long p) : v_(n), p_(p) { reduce(); }

  static Fp in_field(long n, long p) { return Fp(n, p); }

  long value() const { return v_; }
  long modulus() const { return p_; }

  static Fp parse(const std::string& s, long p) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Fp(std::stol(s), p);
    Fp num(std::stol(s.substr(0, slash)), p);
    Fp den(std::stol(s.substr(slash + 1)), p);
    return num / den;
  }

  std::string str() const { return std::to_string(v_); }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return p_ == 0 ? v_ == 1 : v_ % p_ == 1; }

  Fp operator-() const { return p_ == 0 ? Fp(-v_) : Fp(p_ - v_, p_); }
  Fp& operator+=(const Fp& o) { bind(o); v_ += o.v_; reduce(); return *this; }
  Fp& operator-=(const Fp& o) { bind(o); v_ -= o.v_; reduce(); return *this; }
  Fp& operator*=(const Fp& o) { bind(o); v_ *= o.v_; reduce(); return *this; }
  Fp& operator/=(const Fp& o) { return *this *= o.inv(); }

  Fp inv() const {
    if (p_ == 0) {
      if (v_ == 1) return Fp(1);
      if (v_ == -1) return Fp(-1);
      throw std::domain_error("Fp: inverse of unbound scalar");
    }
    if (v_ % p_ == 0) throw std::domain_error("Fp: division by zero");
    long t = 0, nt = 1, r = p_, nr = v_ % p_;
    while (nr != 0) {
      long q = r / nr;
      t -= q * nt; std::swap(t, nt);
      r -= q * nr; std::swap(r, nr);
    }
    return Fp(t, p_);
  }

  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
  friend bool operator==(const Fp& a, const Fp& b) {
    long p = a.p_ ? a.p_ : b.p_;
    if (p == 0) return a.v_ == b.v_;
    return ((a.v_ - b.v_) % p + p) % p == 0;
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }
  friend std::ostream& operator<<(std::ostream& os, const Fp& x) { return os << x.v_; }

 private:
  void bind(const Fp& o) {
    if (p_ == 0) p_ = o.p_;
    else if (o.p_ != 0 && o.p_ != p_) throw std::domain_error("Fp: modulus mismatch");
    reduce();
  }
  void reduce() {
    if (p_ != 0) v_ = (v_ % p_ + p_) % p_;
  }

  long v_;
  long p_;
};

inline Fp inverse(const Fp& x) { return x.inv(); }

template <class S>
std::string scalar_str(const S& s) { return s.str(); }

}  // namespace ltft
