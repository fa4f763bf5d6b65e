#ifndef VOA_SCALARS_HPP
#define VOA_SCALARS_HPP

// Exact coefficient arithmetic: rationals, polynomials in the formal level k
// and the rational-function field Q(k).

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

namespace voa {

/// Reduced fraction with positive denominator, backed by GMP.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(const mpq_class& q) : value_(q) { value_.canonicalize(); }

  /// Parses "a", "-a" or "a/b".
  static Rational parse(std::string_view text);

  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }
  const mpq_class& raw() const noexcept { return value_; }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }
  Rational abs() const { return Rational(::abs(value_)); }
  Rational inverse() const;

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const { return Rational(mpq_class(-value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// "a" for integers, "a/b" otherwise.
  std::string str() const { return value_.get_str(); }

 private:
  mpq_class value_;
};

Rational binomial(long n, long k);  // generalized: n may be negative
Rational factorial(long n);

void to_json(nlohmann::json& j, const Rational& r);
void from_json(const nlohmann::json& j, Rational& r);

/// Polynomial in k with rational coefficients, ascending powers, no trailing
/// zeros. The zero polynomial has no coefficients.
class LevelPolynomial {
 public:
  LevelPolynomial() = default;
  explicit LevelPolynomial(std::vector<Rational> coeffs);
  LevelPolynomial(const Rational& c);  // NOLINT(google-explicit-constructor)

  static LevelPolynomial k();
  static LevelPolynomial monomial(const Rational& c, int power);

  const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_constant() const noexcept { return coeffs_.size() <= 1; }
  bool is_one() const;
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  Rational coefficient(int power) const;
  Rational leading() const;

  Rational evaluate(const Rational& k0) const;
  LevelPolynomial scaled(const Rational& c) const;
  LevelPolynomial monic() const;

  LevelPolynomial& operator+=(const LevelPolynomial& o);
  LevelPolynomial& operator-=(const LevelPolynomial& o);
  friend LevelPolynomial operator+(LevelPolynomial a, const LevelPolynomial& b) { return a += b; }
  friend LevelPolynomial operator-(LevelPolynomial a, const LevelPolynomial& b) { return a -= b; }
  friend LevelPolynomial operator*(const LevelPolynomial& a, const LevelPolynomial& b);
  LevelPolynomial operator-() const;

  /// Euclidean division; throws DivisionByZero on a zero divisor.
  static void divmod(const LevelPolynomial& a, const LevelPolynomial& b, LevelPolynomial& quot,
                     LevelPolynomial& rem);
  /// Monic gcd (zero if both are zero).
  static LevelPolynomial gcd(LevelPolynomial a, LevelPolynomial b);

  /// Distinct rational roots in increasing order.
  std::vector<Rational> rational_roots() const;

  friend bool operator==(const LevelPolynomial&, const LevelPolynomial&) = default;

  std::string str() const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// k-degree of a LevelScalar: deg(num) - deg(den), or -infinity for zero.
class KDegree {
 public:
  static KDegree neg_infinity() { return KDegree(); }
  static KDegree finite(int d) { return KDegree(d); }

  bool is_neg_infinity() const noexcept { return !value_.has_value(); }
  int value() const { return value_.value(); }

  friend KDegree operator+(const KDegree& a, const KDegree& b);
  friend bool operator==(const KDegree&, const KDegree&) = default;
  friend std::strong_ordering operator<=>(const KDegree& a, const KDegree& b);

  std::string str() const;

 private:
  KDegree() = default;
  explicit KDegree(int d) : value_(d) {}
  std::optional<int> value_;
};

/// Element of Q(k): reduced fraction with monic denominator.
class LevelScalar {
 public:
  LevelScalar() : den_(Rational(1)) {}
  LevelScalar(long c) : LevelScalar(Rational(c)) {}               // NOLINT
  LevelScalar(const Rational& c) : num_(c), den_(Rational(1)) {}  // NOLINT
  LevelScalar(const LevelPolynomial& p) : num_(p), den_(Rational(1)) {}  // NOLINT
  LevelScalar(LevelPolynomial num, LevelPolynomial den);

  static LevelScalar k() { return LevelScalar(LevelPolynomial::k()); }

  const LevelPolynomial& numerator() const noexcept { return num_; }
  const LevelPolynomial& denominator() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return den_.is_one() && num_.is_constant(); }
  /// Only meaningful when is_constant().
  Rational constant() const { return num_.coefficient(0); }

  KDegree k_degree() const;
  /// Throws PoleAtLevel when the denominator vanishes at k0.
  Rational evaluate_at(const Rational& k0) const;
  LevelScalar inverse() const;

  LevelScalar& operator+=(const LevelScalar& o);
  LevelScalar& operator-=(const LevelScalar& o);
  LevelScalar& operator*=(const LevelScalar& o);
  LevelScalar& operator/=(const LevelScalar& o);
  friend LevelScalar operator+(LevelScalar a, const LevelScalar& b) { return a += b; }
  friend LevelScalar operator-(LevelScalar a, const LevelScalar& b) { return a -= b; }
  friend LevelScalar operator*(LevelScalar a, const LevelScalar& b) { return a *= b; }
  friend LevelScalar operator/(LevelScalar a, const LevelScalar& b) { return a /= b; }
  LevelScalar operator-() const;

  friend bool operator==(const LevelScalar&, const LevelScalar&) = default;

  /// "p(k)" or "(p(k))/(q(k))" with ascending powers.
  std::string str() const;

 private:
  void normalize();
  LevelPolynomial num_;
  LevelPolynomial den_;
};

enum class ArithOp { add, sub, mul, div };
LevelScalar arith(const LevelScalar& a, const LevelScalar& b, ArithOp op);

void to_json(nlohmann::json& j, const LevelPolynomial& p);
void to_json(nlohmann::json& j, const LevelScalar& s);
void from_json(const nlohmann::json& j, LevelScalar& s);

/// Parses the text rendering produced by LevelScalar::str() (and plain
/// rationals such as "3/2").
LevelScalar parse_level_scalar(std::string_view text);

}  // namespace voa

#endif  // VOA_SCALARS_HPP
