#pragma once

// Exact scalars: the rational function field Q(u) with u = q^(1/D),
// plus the q-integers, q-factorials and q-binomials.

#include <gmpxx.h>

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qboson {

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class math_error : public error {
 public:
  using error::error;
};

/// Laurent polynomial in one variable u with integer coefficients.
class Poly {
 public:
  Poly() = default;
  Poly(long c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) coef_.emplace_back(c);
  }
  explicit Poly(const mpz_class& c) {
    if (c != 0) coef_.push_back(c);
  }

  static Poly monomial(const mpz_class& c, int e) {
    Poly p(c);
    p.low_ = c == 0 ? 0 : e;
    return p;
  }

  bool is_zero() const noexcept { return coef_.empty(); }
  bool is_one() const noexcept { return low_ == 0 && coef_.size() == 1 && coef_[0] == 1; }
  bool is_monomial() const noexcept { return coef_.size() == 1; }
  int low() const noexcept { return low_; }
  int high() const noexcept { return low_ + static_cast<int>(coef_.size()) - 1; }
  std::size_t span() const noexcept { return coef_.size(); }
  const mpz_class& lead() const { return coef_.back(); }
  const mpz_class& trail() const { return coef_.front(); }
  const std::vector<mpz_class>& coefficients() const noexcept { return coef_; }

  mpz_class coeff(int e) const {
    if (is_zero() || e < low_ || e > high()) return 0;
    return coef_[static_cast<std::size_t>(e - low_)];
  }

  Poly& operator+=(const Poly& o) { return accumulate(o, false); }
  Poly& operator-=(const Poly& o) { return accumulate(o, true); }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  Poly operator-() const {
    Poly r = *this;
    for (auto& c : r.coef_) c = -c;
    return r;
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    if (a.is_zero() || b.is_zero()) return r;
    r.low_ = a.low_ + b.low_;
    r.coef_.assign(a.coef_.size() + b.coef_.size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < a.coef_.size(); ++i) {
      if (a.coef_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coef_.size(); ++j) r.coef_[i + j] += a.coef_[i] * b.coef_[j];
    }
    r.trim();
    return r;
  }

  Poly scaled(const mpz_class& c) const {
    if (c == 0) return {};
    Poly r = *this;
    for (auto& x : r.coef_) x *= c;
    return r;
  }

  Poly shifted(int s) const {
    Poly r = *this;
    if (!r.is_zero()) r.low_ += s;
    return r;
  }

  /// Substitutes u -> u^k.
  Poly stretched(int k) const {
    if (k == 1 || is_zero()) return *this;
    Poly r;
    r.low_ = low_ * k;
    r.coef_.assign((coef_.size() - 1) * static_cast<std::size_t>(k) + 1, mpz_class(0));
    for (std::size_t i = 0; i < coef_.size(); ++i) r.coef_[i * static_cast<std::size_t>(k)] = coef_[i];
    return r;
  }

  /// gcd of all exponents carrying a nonzero coefficient (0 for a constant or zero).
  int exponent_gcd() const {
    int g = 0;
    for (std::size_t i = 0; i < coef_.size(); ++i)
      if (coef_[i] != 0) g = std::gcd(g, std::abs(low_ + static_cast<int>(i)));
    return g;
  }

  /// Substitutes u^k -> u; requires every exponent to be a multiple of k.
  Poly compressed(int k) const {
    if (k == 1 || is_zero()) return *this;
    Poly r;
    r.low_ = low_ / k;
    r.coef_.assign((coef_.size() - 1) / static_cast<std::size_t>(k) + 1, mpz_class(0));
    for (std::size_t i = 0; i < coef_.size(); ++i)
      if (coef_[i] != 0) r.coef_[i / static_cast<std::size_t>(k)] = coef_[i];
    return r;
  }

  mpz_class content() const {
    mpz_class g = 0;
    for (const auto& c : coef_) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
      if (g == 1) break;
    }
    return g;
  }

  Poly divided_exact(const mpz_class& c) const {
    Poly r = *this;
    for (auto& x : r.coef_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
    return r;
  }

  mpq_class eval(const mpq_class& u) const {
    mpq_class acc = 0;
    for (std::size_t i = coef_.size(); i-- > 0;) acc = acc * u + mpq_class(coef_[i]);
    if (low_ != 0) {
      mpq_class p = 1;
      const mpq_class base = low_ > 0 ? u : mpq_class(1) / u;
      for (int k = 0; k < std::abs(low_); ++k) p *= base;
      acc *= p;
    }
    return acc;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.low_ == b.low_ && a.coef_ == b.coef_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

 private:
  Poly& accumulate(const Poly& o, bool negate) {
    if (o.is_zero()) return *this;
    if (is_zero()) {
      *this = negate ? -o : o;
      return *this;
    }
    const int lo = std::min(low_, o.low_);
    const int hi = std::max(high(), o.high());
    if (lo < low_) coef_.insert(coef_.begin(), static_cast<std::size_t>(low_ - lo), mpz_class(0));
    low_ = lo;
    if (static_cast<int>(coef_.size()) < hi - lo + 1) coef_.resize(static_cast<std::size_t>(hi - lo + 1), mpz_class(0));
    for (std::size_t i = 0; i < o.coef_.size(); ++i) {
      auto& dst = coef_[static_cast<std::size_t>(o.low_ - lo) + i];
      if (negate)
        dst -= o.coef_[i];
      else
        dst += o.coef_[i];
    }
    trim();
    return *this;
  }

  void trim() {
    while (!coef_.empty() && coef_.back() == 0) coef_.pop_back();
    std::size_t k = 0;
    while (k < coef_.size() && coef_[k] == 0) ++k;
    if (k > 0) {
      coef_.erase(coef_.begin(), coef_.begin() + static_cast<std::ptrdiff_t>(k));
      low_ += static_cast<int>(k);
    }
    if (coef_.empty()) low_ = 0;
  }

  int low_ = 0;
  std::vector<mpz_class> coef_;  // coef_[k] multiplies u^(low_ + k)
};

namespace detail {

// Pseudo-remainder of ordinary polynomials (low() == 0 assumed for b).
inline Poly pseudo_rem(Poly a, const Poly& b) {
  const int db = b.high();
  while (!a.is_zero() && a.high() >= db) {
    const mpz_class la = a.lead();
    const int shift = a.high() - db;
    a = a.scaled(b.lead()) - b.scaled(la).shifted(shift);
  }
  return a;
}

inline Poly primitive(const Poly& p) {
  if (p.is_zero()) return p;
  mpz_class c = p.content();
  if (p.lead() < 0) c = -c;
  return p.divided_exact(c);
}

// gcd in Q[u] of two polynomials without negative powers, returned primitive with positive lead.
inline Poly poly_gcd(Poly a, Poly b) {
  if (a.is_zero()) return primitive(b);
  if (b.is_zero()) return primitive(a);
  a = primitive(a.shifted(-a.low()));
  b = primitive(b.shifted(-b.low()));
  if (a.high() < b.high()) std::swap(a, b);
  while (!b.is_zero()) {
    if (b.high() == 0) return Poly(1);
    Poly r = pseudo_rem(a, b);
    a = std::move(b);
    b = primitive(r);
  }
  return primitive(a);
}

// Exact division of a by b in Z[u^{+-1}]; b must divide a with an integral quotient.
inline Poly divide_exact(Poly a, const Poly& b) {
  Poly quot;
  const int db = b.high();
  while (!a.is_zero()) {
    if (a.high() - db < a.low() - b.low()) throw math_error("inexact polynomial division");
    mpz_class c;
    mpz_class r;
    mpz_tdiv_qr(c.get_mpz_t(), r.get_mpz_t(), a.lead().get_mpz_t(), b.lead().get_mpz_t());
    if (r != 0) throw math_error("inexact polynomial division");
    const int shift = a.high() - db;
    Poly t = Poly::monomial(c, shift);
    quot += t;
    a -= b * t;
  }
  return quot;
}

}  // namespace detail

/// Element of Q(q^(1/D)) in canonical reduced form.
///
/// num/den with den(0) != 0, lead(den) > 0, gcd(num, den) = 1 over Q[u],
/// contents of num and den coprime, and D minimal. Structural equality is
/// therefore mathematical equality.
class QRat {
 public:
  QRat() : den_(1) {}
  QRat(long n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  explicit QRat(const mpz_class& n) : num_(n), den_(1) {}
  explicit QRat(const mpq_class& r) : num_(r.get_num()), den_(r.get_den()) {}

  static QRat from_parts(Poly num, Poly den, int D = 1) {
    QRat r;
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    r.D_ = D;
    r.normalize();
    return r;
  }

  /// q^e for an integer e.
  static QRat q_pow(long e) {
    QRat r;
    r.num_ = Poly::monomial(1, static_cast<int>(e));
    return r;
  }

  /// q^e for a rational e.
  static QRat q_pow(const mpq_class& e) {
    mpq_class c = e;
    c.canonicalize();
    QRat r;
    r.num_ = Poly::monomial(1, static_cast<int>(c.get_num().get_si()));
    r.D_ = static_cast<int>(c.get_den().get_si());
    r.reduce_D();
    return r;
  }

  static QRat q() { return q_pow(1L); }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_one() const noexcept { return num_.is_one() && den_.is_one(); }
  /// True when the value is a Laurent polynomial in q^(1/D).
  bool is_laurent() const noexcept { return den_.is_one(); }
  int exp_denominator() const noexcept { return D_; }
  const Poly& num() const noexcept { return num_; }
  const Poly& den() const noexcept { return den_; }

  QRat operator-() const {
    QRat r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend QRat operator+(const QRat& a, const QRat& b) { return add(a, b, false); }
  friend QRat operator-(const QRat& a, const QRat& b) { return add(a, b, true); }

  friend QRat operator*(const QRat& a, const QRat& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.is_one()) return b;
    if (b.is_one()) return a;
    const int L = std::lcm(a.D_, b.D_);
    QRat r;
    r.D_ = L;
    r.num_ = a.num_.stretched(L / a.D_) * b.num_.stretched(L / b.D_);
    if (a.is_laurent() && b.is_laurent()) {
      r.reduce_D();
      return r;
    }
    r.den_ = a.den_.stretched(L / a.D_) * b.den_.stretched(L / b.D_);
    r.normalize();
    return r;
  }

  QRat inverse() const {
    if (is_zero()) throw math_error("division by zero");
    return from_parts(den_, num_, D_);
  }

  friend QRat operator/(const QRat& a, const QRat& b) {
    if (b.is_zero()) throw math_error("division by zero");
    return a * b.inverse();
  }

  QRat& operator+=(const QRat& o) { return *this = *this + o; }
  QRat& operator-=(const QRat& o) { return *this = *this - o; }
  QRat& operator*=(const QRat& o) { return *this = *this * o; }
  QRat& operator/=(const QRat& o) { return *this = *this / o; }

  QRat pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    QRat result(1);
    QRat base = *this;
    while (e > 0) {
      if (e & 1) result *= base;
      base *= base;
      e >>= 1;
    }
    return result;
  }

  /// Value at q = r^L (so u = r^(L/D)); L must be a multiple of D.
  mpq_class eval_at(const mpq_class& r, int L) const {
    if (L % D_ != 0) throw math_error("evaluation root order not a multiple of the exponent denominator");
    mpq_class u = 1;
    for (int k = 0; k < L / D_; ++k) u *= r;
    const mpq_class d = den_.eval(u);
    if (d == 0) throw math_error("evaluation at a pole");
    return num_.eval(u) / d;
  }

  friend bool operator==(const QRat& a, const QRat& b) {
    return a.D_ == b.D_ && a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const QRat& a, const QRat& b) { return !(a == b); }

  std::string str() const;

 private:
  static QRat add(const QRat& a, const QRat& b, bool negate) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return negate ? -b : b;
    const int L = std::lcm(a.D_, b.D_);
    QRat r;
    r.D_ = L;
    if (a.is_laurent() && b.is_laurent()) {
      r.num_ = a.num_.stretched(L / a.D_);
      if (negate)
        r.num_ -= b.num_.stretched(L / b.D_);
      else
        r.num_ += b.num_.stretched(L / b.D_);
      r.reduce_D();
      return r;
    }
    const Poly ad = a.den_.stretched(L / a.D_);
    const Poly bd = b.den_.stretched(L / b.D_);
    const bool same = ad == bd;
    Poly left = a.num_.stretched(L / a.D_);
    Poly right = b.num_.stretched(L / b.D_);
    if (!same) {
      left = left * bd;
      right = right * ad;
    }
    r.num_ = negate ? left - right : left + right;
    r.den_ = same ? ad : ad * bd;
    r.normalize();
    return r;
  }

  void normalize() {
    if (den_.is_zero()) throw math_error("division by zero");
    if (num_.is_zero()) {
      den_ = Poly(1);
      D_ = 1;
      return;
    }
    if (den_.low() != 0) {
      const int s = den_.low();
      num_ = num_.shifted(-s);
      den_ = den_.shifted(-s);
    }
    if (den_.high() > 0) {
      const Poly g = detail::poly_gcd(num_.shifted(-num_.low()), den_);
      if (g.high() > 0) {
        num_ = detail::divide_exact(num_, g);
        den_ = detail::divide_exact(den_, g);
      }
    }
    mpz_class cn = num_.content();
    mpz_class cd = den_.content();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
    if (den_.lead() < 0) g = -g;
    if (g != 1) {
      num_ = num_.divided_exact(g);
      den_ = den_.divided_exact(g);
    }
    reduce_D();
  }

  void reduce_D() {
    if (num_.is_zero()) {
      D_ = 1;
      return;
    }
    if (D_ == 1) return;
    int g = std::gcd(D_, num_.exponent_gcd());
    g = std::gcd(g, den_.exponent_gcd());
    if (g > 1) {
      num_ = num_.compressed(g);
      den_ = den_.compressed(g);
      D_ /= g;
    }
  }

  Poly num_;
  Poly den_;
  int D_ = 1;
};

namespace detail {

inline std::string q_exponent(int e, int D) {
  int g = std::gcd(std::abs(e), D);
  const int n = e / g;
  const int d = D / g;
  if (d == 1) return n == 1 ? "q" : "q^" + std::to_string(n);
  return "q^(" + std::to_string(n) + "/" + std::to_string(d) + ")";
}

// Prints a Laurent polynomial in q^(1/D) with descending exponents.
inline std::string laurent_str(const Poly& p, int D) {
  if (p.is_zero()) return "0";
  std::string out;
  const auto& c = p.coefficients();
  bool first = true;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    const int e = p.low() + static_cast<int>(i);
    const bool neg = c[i] < 0;
    const mpz_class mag = neg ? mpz_class(-c[i]) : c[i];
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    first = false;
    if (e == 0) {
      out += mag.get_str();
    } else {
      if (mag != 1) out += mag.get_str() + "*";
      out += q_exponent(e, D);
    }
  }
  return out;
}

inline std::size_t term_count(const Poly& p) {
  return static_cast<std::size_t>(
      std::count_if(p.coefficients().begin(), p.coefficients().end(), [](const mpz_class& c) { return c != 0; }));
}

}  // namespace detail

/// Numerator/denominator pair with the denominator shifted to be as close to
/// symmetric in q as possible and with positive leading coefficient.
struct BalancedFraction {
  Poly num;
  Poly den;
  int D = 1;
};

inline BalancedFraction balanced(const QRat& x) {
  BalancedFraction b{x.num(), x.den(), x.exp_denominator()};
  const int s = b.den.high() / 2;
  b.num = b.num.shifted(-s);
  b.den = b.den.shifted(-s);
  return b;
}

inline std::string QRat::str() const {
  if (is_laurent()) return detail::laurent_str(num_, D_);
  const BalancedFraction b = balanced(*this);
  std::string n = detail::laurent_str(b.num, b.D);
  std::string d = detail::laurent_str(b.den, b.D);
  if (detail::term_count(b.num) > 1) n = "(" + n + ")";
  if (detail::term_count(b.den) > 1 || b.den.low() != 0) d = "(" + d + ")";
  return n + "/" + d;
}

inline std::ostream& operator<<(std::ostream& os, const QRat& x) { return os << x.str(); }

/// [n] = (q^n - q^-n)/(q - q^-1).
inline QRat q_int(long n) {
  if (n < 0) return -q_int(-n);
  Poly p;
  for (long k = 0; k < n; ++k) p += Poly::monomial(1, static_cast<int>(n - 1 - 2 * k));
  return QRat::from_parts(p, Poly(1));
}

/// [n]! = [1][2]...[n].
inline QRat q_fact(long n) {
  if (n < 0) throw math_error("q_fact: negative argument");
  QRat r(1);
  for (long i = 2; i <= n; ++i) r *= q_int(i);
  return r;
}

/// Gaussian binomial [n]!/([k]![n-k]!).
inline QRat q_binom(long n, long k) {
  if (n < 0 || k < 0 || k > n) throw math_error("q_binom: need 0 <= k <= n");
  return q_fact(n) / (q_fact(k) * q_fact(n - k));
}

}  // namespace qboson
