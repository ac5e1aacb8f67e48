#pragma once

// Exact rationals with an inline int64 representation and a GMP fallback.
// The value is held small whenever numerator and denominator fit in int64,
// so the representation is canonical and equality is structural.

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>

namespace smakit {

class Rational {
 public:
  Rational() = default;
  Rational(long value) : num_(value) {  // NOLINT(google-explicit-constructor)
    if (value == std::numeric_limits<long>::min()) set_big(mpq_class(value));
  }
  Rational(long num, long den) {
    if (den == 0) throw std::domain_error("division by zero");
    *this = Rational(mpq_class(mpz_class(num), mpz_class(den)));
  }
  explicit Rational(mpq_class q) {
    q.canonicalize();
    set_from_mpq(q);
  }

  Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
  }
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& o) {
    if (this != &o) {
      num_ = o.num_;
      den_ = o.den_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Rational& operator=(Rational&&) noexcept = default;

  bool is_small() const { return !big_; }
  int sgn() const { return big_ ? ::sgn(*big_) : (num_ > 0) - (num_ < 0); }
  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  bool is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

  mpq_class to_mpq() const {
    if (big_) return *big_;
    return mpq_class(mpz_class(num_), mpz_class(den_));
  }
  mpz_class numerator() const { return to_mpq().get_num(); }
  mpz_class denominator() const { return to_mpq().get_den(); }

  std::string get_str() const {
    if (big_) return big_->get_str();
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

  Rational operator-() const {
    if (big_) return Rational(mpq_class(-*big_));
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  Rational inverse() const {
    if (big_) return Rational(mpq_class(1 / *big_));
    Rational r;
    r.num_ = num_ < 0 ? -den_ : den_;
    r.den_ = num_ < 0 ? -num_ : num_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (a.big_ || b.big_) return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
    if (a.num_ == 0) return b;
    if (b.num_ == 0) return a;
    const auto g = std::gcd(a.den_, b.den_);
    if (g == 1) return from_wide(I128(a.num_) * b.den_ + I128(b.num_) * a.den_, I128(a.den_) * b.den_);
    const std::int64_t da = a.den_ / g;
    const I128 t = I128(a.num_) * (b.den_ / g) + I128(b.num_) * da;
    if (t == 0) return Rational();
    const U128 t_abs = t < 0 ? U128(-t) : U128(t);
    const auto g2 = static_cast<std::int64_t>(std::gcd(static_cast<std::uint64_t>(t_abs % static_cast<std::uint64_t>(g)),
                                                       static_cast<std::uint64_t>(g)));
    return from_wide(t / g2, I128(da) * (b.den_ / g2));
  }

  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

  friend Rational operator*(const Rational& a, const Rational& b) {
    if (a.big_ || b.big_) return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
    if (a.num_ == 0 || b.num_ == 0) return Rational();
    const auto g1 = std::gcd(a.num_ < 0 ? -a.num_ : a.num_, b.den_);
    const auto g2 = std::gcd(b.num_ < 0 ? -b.num_ : b.num_, a.den_);
    return from_wide(I128(a.num_ / g1) * (b.num_ / g2), I128(a.den_ / g2) * (b.den_ / g1));
  }

  friend Rational operator/(const Rational& a, const Rational& b) { return a * b.inverse(); }

  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    if (a.big_ || b.big_) return a.big_ && b.big_ && *a.big_ == *b.big_;
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  using I128 = __int128;
  using U128 = unsigned __int128;
  static constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

  static mpz_class to_mpz(I128 v) {
    const bool negative = v < 0;
    U128 m = negative ? U128(-v) : U128(v);
    mpz_class hi(static_cast<unsigned long>(m >> 64));
    mpz_class out = hi << 64;
    out += mpz_class(static_cast<unsigned long>(m & ~std::uint64_t{0}));
    return negative ? mpz_class(-out) : out;
  }

  /// num/den with den > 0 and gcd(num, den) = 1.
  static Rational from_wide(I128 num, I128 den) {
    Rational r;
    if (num >= -kMax && num <= kMax && den <= kMax) {
      r.num_ = static_cast<std::int64_t>(num);
      r.den_ = static_cast<std::int64_t>(den);
    } else {
      r.set_big(mpq_class(to_mpz(num), to_mpz(den)));
    }
    return r;
  }

  /// q must be canonical.
  void set_from_mpq(const mpq_class& q) {
    if (mpz_fits_slong_p(q.get_num_mpz_t()) && mpz_fits_slong_p(q.get_den_mpz_t()) &&
        q.get_num() != std::numeric_limits<long>::min()) {
      num_ = q.get_num().get_si();
      den_ = q.get_den().get_si();
      big_.reset();
    } else {
      set_big(q);
    }
  }

  void set_big(const mpq_class& q) {
    num_ = 0;
    den_ = 1;
    big_ = std::make_unique<mpq_class>(q);
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

}  // namespace smakit
