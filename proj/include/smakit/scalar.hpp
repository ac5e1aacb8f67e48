#pragma once

// Exact scalars over Q, Q(i) and odd prime fields F_p.

#include <smakit/rational.hpp>

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace smakit {

enum class FieldKind { Rational, GaussianRational, Prime };

/// Raised when operands live in different fields, or a field-specific
/// operation is requested outside its field.
class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("division by zero") {}
};

namespace detail {

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace detail

class FieldDescriptor {
 public:
  static FieldDescriptor rational() { return FieldDescriptor(FieldKind::Rational, 0); }
  static FieldDescriptor gaussian() { return FieldDescriptor(FieldKind::GaussianRational, 0); }

  /// F_p for an odd prime p < 2^31 (characteristic 2 is excluded because the
  /// normalized Jordan product divides by 2).
  static FieldDescriptor prime(std::uint64_t p) {
    if (p == 2) throw FieldError("characteristic 2 is not supported");
    if (p >= (std::uint64_t{1} << 31) || !detail::is_prime(p))
      throw FieldError("modulus " + std::to_string(p) + " is not an odd prime below 2^31");
    return FieldDescriptor(FieldKind::Prime, p);
  }

  /// Parses a field tag: `Q`, `Qi` or `F<p>`.
  static FieldDescriptor parse(std::string_view tag) {
    if (tag == "Q") return rational();
    if (tag == "Qi") return gaussian();
    if (tag.size() >= 2 && tag[0] == 'F') {
      std::uint64_t p = 0;
      for (char c : tag.substr(1)) {
        if (c < '0' || c > '9' || p > (std::uint64_t{1} << 40))
          throw FieldError("bad field tag '" + std::string(tag) + "'");
        p = p * 10 + static_cast<std::uint64_t>(c - '0');
      }
      return prime(p);
    }
    throw FieldError("bad field tag '" + std::string(tag) + "'");
  }

  FieldKind kind() const { return kind_; }
  std::uint64_t modulus() const { return modulus_; }
  bool has_characteristic_zero() const { return kind_ != FieldKind::Prime; }

  std::string tag() const {
    switch (kind_) {
      case FieldKind::Rational: return "Q";
      case FieldKind::GaussianRational: return "Qi";
      case FieldKind::Prime: return "F" + std::to_string(modulus_);
    }
    return {};
  }

  friend bool operator==(const FieldDescriptor&, const FieldDescriptor&) = default;

 private:
  friend class Scalar;

  FieldDescriptor(FieldKind kind, std::uint64_t modulus) : kind_(kind), modulus_(modulus) {}

  FieldKind kind_;
  std::uint64_t modulus_;
};

struct GaussianRational {
  Rational re;
  Rational im;
};

struct Residue {
  std::uint64_t value;
  std::uint64_t modulus;
};

/// An element of one of the supported fields, always held in canonical form
/// (reduced fractions with positive denominators, residues in [0, p-1]).
class Scalar {
 public:
  static Scalar zero(const FieldDescriptor& f) { return from_int(f, 0); }
  static Scalar one(const FieldDescriptor& f) { return from_int(f, 1); }

  static Scalar from_int(const FieldDescriptor& f, long value) {
    switch (f.kind()) {
      case FieldKind::Rational: return Scalar(Rational(value));
      case FieldKind::GaussianRational: return Scalar(GaussianRational{Rational(value), Rational(0)});
      case FieldKind::Prime: {
        const auto p = static_cast<long long>(f.modulus());
        long long r = static_cast<long long>(value) % p;
        if (r < 0) r += p;
        return Scalar(Residue{static_cast<std::uint64_t>(r), f.modulus()});
      }
    }
    throw FieldError("unknown field");
  }

  /// num/den embedded in f; over F_p the denominator must be invertible.
  static Scalar from_fraction(const FieldDescriptor& f, long num, long den) {
    if (den == 0) throw DivisionByZero();
    return from_int(f, num) / from_int(f, den);
  }

  static Scalar rational(const mpq_class& q) { return Scalar(Rational(q)); }
  static Scalar rational(Rational q) { return Scalar(std::move(q)); }

  static Scalar gaussian(const mpq_class& re, const mpq_class& im) {
    return Scalar(GaussianRational{Rational(re), Rational(im)});
  }
  static Scalar gaussian(Rational re, Rational im) { return Scalar(GaussianRational{std::move(re), std::move(im)}); }
  static Scalar gaussian(long re, long im) { return gaussian(Rational(re), Rational(im)); }

  static Scalar residue(const FieldDescriptor& f, std::uint64_t value) {
    if (f.kind() != FieldKind::Prime) throw FieldError("residue requested outside a prime field");
    return Scalar(Residue{value % f.modulus(), f.modulus()});
  }

  FieldDescriptor field() const {
    switch (value_.index()) {
      case 0: return FieldDescriptor::rational();
      case 1: return FieldDescriptor::gaussian();
      default: return FieldDescriptor(FieldKind::Prime, std::get<Residue>(value_).modulus);
    }
  }

  bool same_field(const Scalar& other) const {
    if (value_.index() != other.value_.index()) return false;
    if (const auto* r = std::get_if<Residue>(&value_))
      return r->modulus == std::get<Residue>(other.value_).modulus;
    return true;
  }

  bool is_zero() const {
    switch (value_.index()) {
      case 0: return std::get<0>(value_).is_zero();
      case 1: {
        const auto& g = std::get<1>(value_);
        return g.re.is_zero() && g.im.is_zero();
      }
      default: return std::get<2>(value_).value == 0;
    }
  }

  bool is_one() const {
    switch (value_.index()) {
      case 0: return std::get<0>(value_).is_one();
      case 1: {
        const auto& g = std::get<1>(value_);
        return g.re.is_one() && g.im.is_zero();
      }
      default: return std::get<2>(value_).value == 1;
    }
  }

  const Rational* as_rational() const { return std::get_if<Rational>(&value_); }
  const GaussianRational* as_gaussian() const { return std::get_if<GaussianRational>(&value_); }
  const Residue* as_residue() const { return std::get_if<Residue>(&value_); }

  /// True when the value lies in the prime subfield Q (only meaningful for
  /// characteristic zero; residues always count as rational).
  bool is_rational_valued() const {
    if (const auto* g = as_gaussian()) return g->im.is_zero();
    return true;
  }

  Scalar operator-() const {
    switch (value_.index()) {
      case 0: return Scalar(-std::get<0>(value_));
      case 1: {
        const auto& g = std::get<1>(value_);
        return Scalar(GaussianRational{-g.re, -g.im});
      }
      default: {
        const auto& r = std::get<2>(value_);
        return Scalar(Residue{r.value == 0 ? 0 : r.modulus - r.value, r.modulus});
      }
    }
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    a.require_same(b);
    switch (a.value_.index()) {
      case 0: return Scalar(std::get<0>(a.value_) + std::get<0>(b.value_));
      case 1: {
        const auto& x = std::get<1>(a.value_);
        const auto& y = std::get<1>(b.value_);
        return Scalar(GaussianRational{x.re + y.re, x.im + y.im});
      }
      default: {
        const auto& x = std::get<2>(a.value_);
        const auto& y = std::get<2>(b.value_);
        return Scalar(Residue{(x.value + y.value) % x.modulus, x.modulus});
      }
    }
  }

  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    a.require_same(b);
    switch (a.value_.index()) {
      case 0: return Scalar(std::get<0>(a.value_) * std::get<0>(b.value_));
      case 1: {
        const auto& x = std::get<1>(a.value_);
        const auto& y = std::get<1>(b.value_);
        return Scalar(GaussianRational{x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re});
      }
      default: {
        const auto& x = std::get<2>(a.value_);
        const auto& y = std::get<2>(b.value_);
        return Scalar(Residue{(x.value * y.value) % x.modulus, x.modulus});
      }
    }
  }

  Scalar inverse() const {
    if (is_zero()) throw DivisionByZero();
    switch (value_.index()) {
      case 0: return Scalar(std::get<0>(value_).inverse());
      case 1: {
        const auto& g = std::get<1>(value_);
        const Rational norm = g.re * g.re + g.im * g.im;
        return Scalar(GaussianRational{g.re / norm, -g.im / norm});
      }
      default: {
        const auto& r = std::get<2>(value_);
        // Fermat: a^(p-2) = a^-1
        std::uint64_t result = 1, base = r.value, e = r.modulus - 2;
        while (e > 0) {
          if (e & 1) result = result * base % r.modulus;
          base = base * base % r.modulus;
          e >>= 1;
        }
        return Scalar(Residue{result, r.modulus});
      }
    }
  }

  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    a.require_same(b);
    return a * b.inverse();
  }

  Scalar& operator+=(const Scalar& b) {
    require_same(b);
    switch (value_.index()) {
      case 0: std::get<0>(value_) += std::get<0>(b.value_); break;
      case 1: {
        auto& x = std::get<1>(value_);
        const auto& y = std::get<1>(b.value_);
        x.re += y.re;
        x.im += y.im;
        break;
      }
      default: {
        auto& x = std::get<2>(value_);
        x.value = (x.value + std::get<2>(b.value_).value) % x.modulus;
      }
    }
    return *this;
  }
  Scalar& operator-=(const Scalar& b) { return *this += -b; }

  /// *this += a * b without building the product as a Scalar.
  Scalar& add_product(const Scalar& a, const Scalar& b) {
    require_same(a);
    a.require_same(b);
    switch (value_.index()) {
      case 0: std::get<0>(value_) += std::get<0>(a.value_) * std::get<0>(b.value_); break;
      case 1: {
        auto& z = std::get<1>(value_);
        const auto& x = std::get<1>(a.value_);
        const auto& y = std::get<1>(b.value_);
        z.re += x.re * y.re - x.im * y.im;
        z.im += x.re * y.im + x.im * y.re;
        break;
      }
      default: {
        auto& z = std::get<2>(value_);
        z.value = (z.value + std::get<2>(a.value_).value * std::get<2>(b.value_).value) % z.modulus;
      }
    }
    return *this;
  }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

  /// Complex conjugate; only defined on Q(i).
  Scalar conjugate() const {
    const auto* g = as_gaussian();
    if (!g) throw FieldError("conjugation is only defined on Qi");
    return Scalar(GaussianRational{g->re, -g->im});
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (!a.same_field(b)) return false;
    switch (a.value_.index()) {
      case 0: return std::get<0>(a.value_) == std::get<0>(b.value_);
      case 1: {
        const auto& x = std::get<1>(a.value_);
        const auto& y = std::get<1>(b.value_);
        return x.re == y.re && x.im == y.im;
      }
      default: return std::get<2>(a.value_).value == std::get<2>(b.value_).value;
    }
  }

  /// Canonical text form in the scalar grammar (`-3/4`, `1/2+2/3i`, `-1i`, `4`).
  std::string to_string() const {
    switch (value_.index()) {
      case 0: return std::get<0>(value_).get_str();
      case 1: {
        const auto& g = std::get<1>(value_);
        if (g.im.is_zero()) return g.re.get_str();
        if (g.re.is_zero()) return g.im.get_str() + "i";
        std::string out = g.re.get_str();
        if (g.im.sgn() > 0) out += '+';
        return out + g.im.get_str() + "i";
      }
      default: return std::to_string(std::get<2>(value_).value);
    }
  }

 private:
  using Value = std::variant<Rational, GaussianRational, Residue>;

  explicit Scalar(Rational q) : value_(std::move(q)) {}
  explicit Scalar(GaussianRational g) : value_(std::move(g)) {}
  explicit Scalar(Residue r) : value_(r) {}

  void require_same(const Scalar& other) const {
    if (!same_field(other))
      throw FieldError("field mismatch: " + field().tag() + " vs " + other.field().tag());
  }

  Value value_;
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

enum class ScalarOp { Add, Sub, Mul, Div };

inline Scalar scalar_arith(const Scalar& a, const Scalar& b, ScalarOp op) {
  switch (op) {
    case ScalarOp::Add: return a + b;
    case ScalarOp::Sub: return a - b;
    case ScalarOp::Mul: return a * b;
    case ScalarOp::Div: return a / b;
  }
  throw std::logic_error("unknown scalar op");
}

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::string normalize_minus(std::string_view text) {
  // Accept U+2212 MINUS SIGN alongside ASCII '-'.
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
        static_cast<unsigned char>(text[i + 1]) == 0x88 &&
        static_cast<unsigned char>(text[i + 2]) == 0x92) {
      out += '-';
      i += 2;
    } else {
      out += text[i];
    }
  }
  return out;
}

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

inline mpq_class parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    negative = body[0] == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) throw ParseError("malformed rational '" + std::string(text) + "'");
  mpz_class d(std::string(den), 10);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  mpq_class q{mpz_class(std::string(num), 10), d};
  q.canonicalize();
  return negative ? mpq_class(-q) : q;
}

}  // namespace detail

/// Parses one scalar of field f from the text grammar.
inline Scalar parse_scalar(std::string_view raw, const FieldDescriptor& f) {
  const std::string text = detail::normalize_minus(raw);
  if (text.empty()) throw ParseError("empty scalar");
  switch (f.kind()) {
    case FieldKind::Rational: return Scalar::rational(detail::parse_rational(text));
    case FieldKind::GaussianRational: {
      if (text.back() != 'i') return Scalar::gaussian(detail::parse_rational(text), mpq_class(0));
      const std::string_view body = std::string_view(text).substr(0, text.size() - 1);
      const auto split = body.find_last_of("+-");
      std::string_view re_part, im_part = body;
      if (split != std::string_view::npos && split > 0) {
        re_part = body.substr(0, split);
        im_part = body.substr(split);
      }
      mpq_class im;
      if (im_part.empty() || im_part == "+") {
        im = 1;
      } else if (im_part == "-") {
        im = -1;
      } else {
        im = detail::parse_rational(im_part);
      }
      mpq_class re = re_part.empty() ? mpq_class(0) : detail::parse_rational(re_part);
      return Scalar::gaussian(re, im);
    }
    case FieldKind::Prime: {
      std::string_view body = text;
      bool negative = false;
      if (body[0] == '-') {
        negative = true;
        body.remove_prefix(1);
      }
      if (!detail::all_digits(body) || body.size() > 18) throw ParseError("malformed residue '" + text + "'");
      const std::uint64_t v = std::stoull(std::string(body)) % f.modulus();
      const Scalar s = Scalar::residue(f, v);
      return negative ? -s : s;
    }
  }
  throw ParseError("unknown field");
}

enum class ScalarMapKind { Identity, Conjugation, Cube };

/// A multiplicative injective self-map of a field, applied entrywise as the
/// scalar part of a canonical map. Identity and Conjugation are ring
/// endomorphisms; Cube is multiplicative but not additive in characteristic 0.
class ScalarMap {
 public:
  ScalarMap(ScalarMapKind kind, FieldDescriptor domain) : kind_(kind), domain_(domain) {
    if (kind == ScalarMapKind::Conjugation && domain.kind() != FieldKind::GaussianRational)
      throw FieldError("conjugation is only defined on Qi");
  }

  ScalarMapKind kind() const { return kind_; }
  const FieldDescriptor& domain() const { return domain_; }
  bool is_ring_endomorphism() const { return kind_ != ScalarMapKind::Cube; }
  bool is_additive() const { return is_ring_endomorphism(); }

  Scalar operator()(const Scalar& a) const {
    if (a.field() != domain_)
      throw FieldError("scalar in " + a.field().tag() + " outside the map domain " + domain_.tag());
    switch (kind_) {
      case ScalarMapKind::Identity: return a;
      case ScalarMapKind::Conjugation: return a.conjugate();
      case ScalarMapKind::Cube: return a * a * a;
    }
    throw std::logic_error("unknown scalar map");
  }

  /// File-format short names: id, conj, cube.
  std::string name() const {
    switch (kind_) {
      case ScalarMapKind::Identity: return "id";
      case ScalarMapKind::Conjugation: return "conj";
      case ScalarMapKind::Cube: return "cube";
    }
    return {};
  }

  static ScalarMapKind parse_kind(std::string_view name) {
    if (name == "id") return ScalarMapKind::Identity;
    if (name == "conj") return ScalarMapKind::Conjugation;
    if (name == "cube") return ScalarMapKind::Cube;
    throw ParseError("unknown scalar map '" + std::string(name) + "'");
  }

  friend bool operator==(const ScalarMap&, const ScalarMap&) = default;

 private:
  ScalarMapKind kind_;
  FieldDescriptor domain_;
};

inline Scalar apply_scalar_map(const ScalarMap& m, const Scalar& a) { return m(a); }

}  // namespace smakit
