#include "voa/scalars.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "voa/errors.hpp"

namespace voa {

// ---------------------------------------------------------------- Rational

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw ParseError("empty rational");
  auto valid_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    return std::all_of(t.begin() + static_cast<long>(i), t.end(),
                       [](unsigned char c) { return std::isdigit(c); });
  };
  const auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  if (!valid_int(num) || !valid_int(den)) throw ParseError("malformed rational '" + s + "'");
  return Rational(mpz_class(num), mpz_class(den));
}

Rational Rational::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of rational zero");
  return Rational(mpq_class(1 / value_));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DivisionByZero("rational division by zero");
  value_ /= o.value_;
  return *this;
}

Rational binomial(long n, long k) {
  if (k < 0) return Rational(0);
  mpq_class r = 1;
  for (long t = 0; t < k; ++t) {
    r *= (n - t);
    r /= (t + 1);
  }
  return Rational(r);
}

Rational factorial(long n) {
  mpz_class r = 1;
  for (long t = 2; t <= n; ++t) r *= t;
  return Rational(r, 1);
}

void to_json(nlohmann::json& j, const Rational& r) { j = r.str(); }

void from_json(const nlohmann::json& j, Rational& r) {
  if (j.is_number_integer()) {
    r = Rational(j.get<long>());
  } else {
    r = Rational::parse(j.get<std::string>());
  }
}

// ---------------------------------------------------------- LevelPolynomial

LevelPolynomial::LevelPolynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  trim();
}

LevelPolynomial::LevelPolynomial(const Rational& c) {
  if (!c.is_zero()) coeffs_.push_back(c);
}

LevelPolynomial LevelPolynomial::k() { return monomial(Rational(1), 1); }

LevelPolynomial LevelPolynomial::monomial(const Rational& c, int power) {
  if (c.is_zero()) return {};
  std::vector<Rational> v(static_cast<std::size_t>(power) + 1);
  v.back() = c;
  return LevelPolynomial(std::move(v));
}

void LevelPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

bool LevelPolynomial::is_one() const { return coeffs_.size() == 1 && coeffs_[0] == Rational(1); }

Rational LevelPolynomial::coefficient(int power) const {
  if (power < 0 || power >= static_cast<int>(coeffs_.size())) return Rational(0);
  return coeffs_[static_cast<std::size_t>(power)];
}

Rational LevelPolynomial::leading() const {
  return coeffs_.empty() ? Rational(0) : coeffs_.back();
}

Rational LevelPolynomial::evaluate(const Rational& k0) const {
  Rational acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * k0 + *it;
  return acc;
}

LevelPolynomial LevelPolynomial::scaled(const Rational& c) const {
  if (c.is_zero()) return {};
  LevelPolynomial r = *this;
  for (auto& x : r.coeffs_) x *= c;
  return r;
}

LevelPolynomial LevelPolynomial::monic() const {
  if (is_zero()) return {};
  return scaled(leading().inverse());
}

LevelPolynomial& LevelPolynomial::operator+=(const LevelPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

LevelPolynomial& LevelPolynomial::operator-=(const LevelPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

LevelPolynomial operator*(const LevelPolynomial& a, const LevelPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return LevelPolynomial(std::move(out));
}

LevelPolynomial LevelPolynomial::operator-() const { return scaled(Rational(-1)); }

void LevelPolynomial::divmod(const LevelPolynomial& a, const LevelPolynomial& b,
                             LevelPolynomial& quot, LevelPolynomial& rem) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  rem = a;
  std::vector<Rational> q(a.degree() >= b.degree() ? a.degree() - b.degree() + 1 : 0);
  const Rational lead_inv = b.leading().inverse();
  while (!rem.is_zero() && rem.degree() >= b.degree()) {
    const int shift = rem.degree() - b.degree();
    const Rational c = rem.leading() * lead_inv;
    q[static_cast<std::size_t>(shift)] = c;
    for (int i = 0; i <= b.degree(); ++i) {
      rem.coeffs_[static_cast<std::size_t>(i + shift)] -= c * b.coeffs_[static_cast<std::size_t>(i)];
    }
    rem.trim();
  }
  quot = LevelPolynomial(std::move(q));
}

LevelPolynomial LevelPolynomial::gcd(LevelPolynomial a, LevelPolynomial b) {
  while (!b.is_zero()) {
    LevelPolynomial q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

namespace {

std::vector<mpz_class> positive_divisors(mpz_class n) {
  // Trial division; any cofactor left above the bound is treated as a single
  // factor, which can only hide candidates, never produce a false root.
  n = abs(n);
  std::map<mpz_class, int> primes;
  for (mpz_class p = 2; p * p <= n && p < 1000000; ++p) {
    while (n % p == 0) {
      ++primes[p];
      n /= p;
    }
  }
  if (n > 1) ++primes[n];
  std::vector<mpz_class> divs{1};
  for (const auto& [p, e] : primes) {
    const std::size_t base = divs.size();
    mpz_class pk = 1;
    for (int t = 0; t < e; ++t) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  return divs;
}

}  // namespace

std::vector<Rational> LevelPolynomial::rational_roots() const {
  std::vector<Rational> roots;
  if (degree() < 1) return roots;
  // Integer polynomial with the same roots.
  mpz_class lcm_den = 1;
  for (const auto& c : coeffs_) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.denominator().get_mpz_t());
  std::vector<mpz_class> ints;
  for (const auto& c : coeffs_) ints.push_back(c.numerator() * (lcm_den / c.denominator()));
  std::size_t low = 0;
  while (ints[low] == 0) ++low;
  if (low > 0) roots.emplace_back(0);
  if (low + 1 < ints.size()) {
    const auto ps = positive_divisors(ints[low]);
    const auto qs = positive_divisors(ints.back());
    LevelPolynomial stripped(std::vector<Rational>(coeffs_.begin() + static_cast<long>(low), coeffs_.end()));
    for (const auto& p : ps) {
      for (const auto& q : qs) {
        for (int s : {1, -1}) {
          Rational cand(s * p, q);
          if (stripped.evaluate(cand).is_zero() &&
              std::find(roots.begin(), roots.end(), cand) == roots.end()) {
            roots.push_back(cand);
          }
        }
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

namespace {

std::string coefficient_prefix(const Rational& c, bool first) {
  // Renders the signed coefficient of a k^p term with p >= 1.
  std::string sign;
  Rational a = c;
  if (c.sign() < 0) {
    sign = first ? "-" : " - ";
    a = -c;
  } else if (!first) {
    sign = " + ";
  }
  if (a == Rational(1)) return sign;
  if (a.is_integer()) return sign + a.str();
  return sign + "(" + a.str() + ")";
}

}  // namespace

std::string LevelPolynomial::str() const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (std::size_t p = 0; p < coeffs_.size(); ++p) {
    const Rational& c = coeffs_[p];
    if (c.is_zero()) continue;
    if (p == 0) {
      out += c.str();
    } else {
      out += coefficient_prefix(c, first);
      out += p == 1 ? "k" : "k^" + std::to_string(p);
    }
    first = false;
  }
  return out;
}

// ------------------------------------------------------------------ KDegree

KDegree operator+(const KDegree& a, const KDegree& b) {
  if (a.is_neg_infinity() || b.is_neg_infinity()) return KDegree::neg_infinity();
  return KDegree::finite(a.value() + b.value());
}

std::strong_ordering operator<=>(const KDegree& a, const KDegree& b) {
  if (a.is_neg_infinity() || b.is_neg_infinity()) {
    return b.is_neg_infinity() <=> a.is_neg_infinity();
  }
  return a.value() <=> b.value();
}

std::string KDegree::str() const { return is_neg_infinity() ? "-inf" : std::to_string(*value_); }

// -------------------------------------------------------------- LevelScalar

LevelScalar::LevelScalar(LevelPolynomial num, LevelPolynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DivisionByZero("level scalar with zero denominator");
  normalize();
}

void LevelScalar::normalize() {
  if (num_.is_zero()) {
    den_ = LevelPolynomial(Rational(1));
    return;
  }
  if (!den_.is_constant()) {
    const LevelPolynomial g = LevelPolynomial::gcd(num_, den_);
    if (!g.is_one()) {
      LevelPolynomial q, r;
      LevelPolynomial::divmod(num_, g, q, r);
      num_ = std::move(q);
      LevelPolynomial::divmod(den_, g, q, r);
      den_ = std::move(q);
    }
  }
  const Rational lead = den_.leading();
  if (lead != Rational(1)) {
    const Rational inv = lead.inverse();
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

KDegree LevelScalar::k_degree() const {
  if (is_zero()) return KDegree::neg_infinity();
  return KDegree::finite(num_.degree() - den_.degree());
}

Rational LevelScalar::evaluate_at(const Rational& k0) const {
  const Rational d = den_.evaluate(k0);
  if (d.is_zero()) {
    throw PoleAtLevel(k0.str(), "pole at level k = " + k0.str() + " in " + str());
  }
  return num_.evaluate(k0) / d;
}

LevelScalar LevelScalar::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero level scalar");
  return LevelScalar(den_, num_);
}

LevelScalar& LevelScalar::operator+=(const LevelScalar& o) {
  if (o.is_zero()) return *this;
  if (den_.is_one() && o.den_.is_one()) {
    num_ += o.num_;
    return *this;
  }
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  normalize();
  return *this;
}

LevelScalar& LevelScalar::operator-=(const LevelScalar& o) { return *this += -o; }

LevelScalar& LevelScalar::operator*=(const LevelScalar& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = LevelScalar();
  if (den_.is_one() && o.den_.is_one()) {
    num_ = num_ * o.num_;
    return *this;
  }
  if (o.is_constant()) {
    num_ = num_.scaled(o.constant());
    return *this;
  }
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

LevelScalar& LevelScalar::operator/=(const LevelScalar& o) {
  if (o.is_zero()) throw DivisionByZero("division by zero level scalar");
  if (o.is_constant()) {
    num_ = num_.scaled(o.constant().inverse());
    return *this;
  }
  return *this *= o.inverse();
}

LevelScalar LevelScalar::operator-() const {
  LevelScalar r = *this;
  r.num_ = -r.num_;
  return r;
}

std::string LevelScalar::str() const {
  if (den_.is_one()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

LevelScalar arith(const LevelScalar& a, const LevelScalar& b, ArithOp op) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::div: return a / b;
  }
  return {};
}

void to_json(nlohmann::json& j, const LevelPolynomial& p) {
  j = nlohmann::json::array();
  for (const auto& c : p.coefficients()) j.push_back(c.str());
}

void to_json(nlohmann::json& j, const LevelScalar& s) {
  nlohmann::json num, den;
  to_json(num, s.numerator());
  to_json(den, s.denominator());
  j = nlohmann::json{{"num", num}, {"den", den}};
}

void from_json(const nlohmann::json& j, LevelScalar& s) {
  auto read = [](const nlohmann::json& arr) {
    std::vector<Rational> v;
    for (const auto& c : arr) v.push_back(c.get<Rational>());
    return LevelPolynomial(std::move(v));
  };
  s = LevelScalar(read(j.at("num")), read(j.at("den")));
}

namespace {

// Recursive-descent parser for sums of terms "c", "ck", "(c)k^p", optionally
// wrapped as "(p)/(q)".
class ScalarParser {
 public:
  explicit ScalarParser(std::string_view t) : text_(t) {}

  LevelScalar parse() {
    LevelScalar value = expression();
    skip();
    if (pos_ != text_.size()) fail();
    return value;
  }

 private:
  LevelScalar expression() {
    LevelScalar acc = term();
    for (;;) {
      skip();
      if (peek('+')) {
        ++pos_;
        acc += term();
      } else if (peek('-')) {
        ++pos_;
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  LevelScalar term() {
    LevelScalar acc = factor();
    for (;;) {
      skip();
      if (peek('*')) {
        ++pos_;
        acc *= factor();
      } else if (peek('/')) {
        ++pos_;
        acc /= factor();
      } else if (peek('k') || peek('(')) {
        acc *= factor();  // implicit product such as "3k" or "(1/2)k"
      } else {
        return acc;
      }
    }
  }

  LevelScalar factor() {
    skip();
    if (peek('-')) {
      ++pos_;
      return -factor();
    }
    LevelScalar base;
    if (peek('(')) {
      ++pos_;
      base = expression();
      skip();
      if (!peek(')')) fail();
      ++pos_;
    } else if (peek('k')) {
      ++pos_;
      base = LevelScalar::k();
    } else {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail();
      base = LevelScalar(Rational::parse(text_.substr(start, pos_ - start)));
    }
    skip();
    if (peek('^')) {
      ++pos_;
      skip();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail();
      const int e = std::stoi(std::string(text_.substr(start, pos_ - start)));
      LevelScalar p(1);
      for (int i = 0; i < e; ++i) p *= base;
      base = p;
    }
    return base;
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }
  [[noreturn]] void fail() const {
    throw ParseError("malformed level scalar '" + std::string(text_) + "' at offset " +
                     std::to_string(pos_));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

LevelScalar parse_level_scalar(std::string_view text) { return ScalarParser(text).parse(); }

}  // namespace voa
