#pragma once

// Cartan data, weights and the symmetric bilinear form (.,.).

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <compare>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "scalars.hpp"

namespace qboson {

/// Integer vector; used both for weights (fundamental-weight coordinates)
/// and for root-lattice degrees (simple-root coordinates).
struct Weight {
  std::vector<int> c;

  Weight() = default;
  explicit Weight(std::size_t rank) : c(rank, 0) {}
  explicit Weight(std::vector<int> v) : c(std::move(v)) {}
  /// Weight from explicit coordinates; Weight({2}) would mean rank 2.
  static Weight of(std::initializer_list<int> v) { return Weight(std::vector<int>(v)); }

  std::size_t rank() const noexcept { return c.size(); }
  int operator[](std::size_t i) const { return c[i]; }
  int& operator[](std::size_t i) { return c[i]; }
  bool is_zero() const {
    return std::all_of(c.begin(), c.end(), [](int x) { return x == 0; });
  }

  Weight& operator+=(const Weight& o) {
    if (c.size() != o.c.size()) throw error("weight rank mismatch");
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
    return *this;
  }
  Weight& operator-=(const Weight& o) {
    if (c.size() != o.c.size()) throw error("weight rank mismatch");
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
    return *this;
  }
  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
  Weight operator-() const {
    Weight r = *this;
    for (auto& x : r.c) x = -x;
    return r;
  }
  friend Weight operator*(int k, Weight a) {
    for (auto& x : a.c) x *= k;
    return a;
  }

  friend bool operator==(const Weight&, const Weight&) = default;
  friend auto operator<=>(const Weight& a, const Weight& b) { return a.c <=> b.c; }

  /// Comma-separated coordinates, e.g. "1,0".
  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(c[i]);
    }
    return s;
  }

  static Weight parse(const std::string& text, std::size_t rank) {
    Weight w;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t pos = 0;
        const int v = std::stoi(item, &pos);
        while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
        if (pos != item.size()) throw error("bad weight coordinate '" + item + "'");
        w.c.push_back(v);
      } catch (const std::logic_error&) {
        throw error("bad weight coordinate '" + item + "'");
      }
    }
    if (w.c.size() != rank)
      throw error("weight '" + text + "' has " + std::to_string(w.c.size()) + " coordinates, expected " +
                  std::to_string(rank));
    return w;
  }
};

/// Symmetrizable Cartan matrix with symmetrizers.
///
/// The form is (alpha_i, alpha_j) = d_i a_ij; weights are stored in the basis
/// of fundamental weights, where (omega_i, omega_j) = (A^-1)_ij d_i.
class CartanData {
 public:
  CartanData() = default;

  /// Validates the data; throws qboson::error with a description on failure.
  CartanData(std::vector<std::vector<int>> a, std::vector<int> d, std::string name = "custom")
      : name_(std::move(name)), a_(std::move(a)), d_(std::move(d)) {
    const std::size_t n = a_.size();
    if (n == 0) throw error("Cartan matrix is empty");
    if (d_.size() != n) throw error("symmetrizer count does not match Cartan rank");
    for (std::size_t i = 0; i < n; ++i) {
      if (a_[i].size() != n) throw error("Cartan matrix is not square");
      if (d_[i] <= 0) throw error("symmetrizer d_" + std::to_string(i + 1) + " must be positive");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (a_[i][i] != 2) throw error("diagonal entry a_" + idx(i, i) + " must be 2");
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        if (a_[i][j] > 0) throw error("off-diagonal entry a_" + idx(i, j) + " is positive");
        if ((a_[i][j] == 0) != (a_[j][i] == 0))
          throw error("a_" + idx(i, j) + " and a_" + idx(j, i) + " must vanish together");
        if (d_[i] * a_[i][j] != d_[j] * a_[j][i])
          throw error("d_i a_ij is not symmetric at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      }
    }
    // omega Gram matrix via exact inversion of A.
    std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m[i][j] = a_[i][j];
      m[i][n + i] = 1;
    }
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t piv = col;
      while (piv < n && m[piv][col] == 0) ++piv;
      if (piv == n) throw error("Cartan matrix is singular");
      std::swap(m[piv], m[col]);
      const mpq_class inv = 1 / m[col][col];
      for (auto& x : m[col]) x *= inv;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == col || m[r][col] == 0) continue;
        const mpq_class f = m[r][col];
        for (std::size_t k = 0; k < 2 * n; ++k) m[r][k] -= f * m[col][k];
      }
    }
    ainv_.assign(n, std::vector<mpq_class>(n));
    omega_.assign(n, std::vector<mpq_class>(n));
    D_ = 1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        ainv_[i][j] = m[i][n + j];
        omega_[i][j] = ainv_[i][j] * d_[i];
        const long den = omega_[i][j].get_den().get_si();
        D_ = static_cast<int>(std::lcm(static_cast<long>(D_), den));
      }
  }

  static CartanData preset(const std::string& name) {
    if (name == "A1") return CartanData({{2}}, {1}, "A1");
    if (name == "A2") return CartanData({{2, -1}, {-1, 2}}, {1, 1}, "A2");
    if (name == "B2") return CartanData({{2, -2}, {-1, 2}}, {1, 2}, "B2");
    if (name == "A3") return CartanData({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}, {1, 1, 1}, "A3");
    throw error("unknown Cartan preset '" + name + "' (known: A1, A2, B2, A3)");
  }

  const std::string& name() const noexcept { return name_; }
  std::size_t rank() const noexcept { return a_.size(); }
  int a(std::size_t i, std::size_t j) const { return a_[i][j]; }
  int d(std::size_t i) const { return d_[i]; }
  const std::vector<std::vector<int>>& matrix() const noexcept { return a_; }
  const std::vector<int>& symmetrizers() const noexcept { return d_; }
  /// Least common denominator of all (omega_i, omega_j).
  int exp_denominator() const noexcept { return D_; }

  /// (alpha_i, alpha_j) = d_i a_ij.
  int root_form(std::size_t i, std::size_t j) const { return d_[i] * a_[i][j]; }

  /// Simple root alpha_i in fundamental-weight coordinates (column i of A).
  Weight simple_root(std::size_t i) const {
    Weight w(rank());
    for (std::size_t j = 0; j < rank(); ++j) w[j] = a_[j][i];
    return w;
  }

  Weight zero() const { return Weight(rank()); }

  Weight fundamental(std::size_t i) const {
    Weight w(rank());
    w[i] = 1;
    return w;
  }

  /// Converts simple-root coordinates to fundamental-weight coordinates.
  Weight from_roots(const Weight& beta) const {
    check(beta);
    Weight w(rank());
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t j = 0; j < rank(); ++j) w[j] += beta[i] * a_[j][i];
    return w;
  }

  /// Simple-root coordinates of a weight, if it lies in the root lattice.
  std::optional<Weight> to_roots(const Weight& lambda) const {
    check(lambda);
    Weight r(rank());
    for (std::size_t i = 0; i < rank(); ++i) {
      mpq_class s = 0;
      for (std::size_t j = 0; j < rank(); ++j) s += ainv_[i][j] * lambda[j];
      if (s.get_den() != 1) return std::nullopt;
      r[i] = static_cast<int>(s.get_num().get_si());
    }
    return r;
  }

  /// (lambda, mu) for weights in fundamental coordinates.
  mpq_class inner(const Weight& lambda, const Weight& mu) const {
    check(lambda);
    check(mu);
    mpq_class s = 0;
    for (std::size_t i = 0; i < rank(); ++i) {
      if (lambda[i] == 0) continue;
      for (std::size_t j = 0; j < rank(); ++j)
        if (mu[j] != 0) s += omega_[i][j] * (lambda[i] * mu[j]);
    }
    return s;
  }

  /// (beta, lambda) with beta in root coordinates and lambda a weight; always an integer.
  long root_weight_form(const Weight& beta, const Weight& lambda) const {
    long s = 0;
    for (std::size_t i = 0; i < rank(); ++i) s += static_cast<long>(beta[i]) * d_[i] * lambda[i];
    return s;
  }

  /// (beta, gamma) for two root-coordinate vectors.
  long root_root_form(const Weight& beta, const Weight& gamma) const {
    long s = 0;
    for (std::size_t i = 0; i < rank(); ++i) {
      if (beta[i] == 0) continue;
      for (std::size_t j = 0; j < rank(); ++j) s += static_cast<long>(beta[i]) * gamma[j] * root_form(i, j);
    }
    return s;
  }

  /// q_i = q^{(alpha_i, alpha_i)/2} = q^{d_i}.
  QRat q_i(std::size_t i) const { return QRat::q_pow(static_cast<long>(d_[i])); }

  void check(const Weight& w) const {
    if (w.rank() != rank())
      throw error("weight rank " + std::to_string(w.rank()) + " does not match Cartan rank " + std::to_string(rank()));
  }

  friend bool operator==(const CartanData& x, const CartanData& y) { return x.a_ == y.a_ && x.d_ == y.d_; }

 private:
  static std::string idx(std::size_t i, std::size_t j) {
    return "{" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "}";
  }

  std::string name_;
  std::vector<std::vector<int>> a_;
  std::vector<int> d_;
  std::vector<std::vector<mpq_class>> ainv_;
  std::vector<std::vector<mpq_class>> omega_;
  int D_ = 1;
};

/// Height of a root-coordinate vector.
inline int height(const Weight& beta) { return std::accumulate(beta.c.begin(), beta.c.end(), 0); }

inline bool is_nonnegative(const Weight& beta) {
  return std::all_of(beta.c.begin(), beta.c.end(), [](int x) { return x >= 0; });
}

}  // namespace qboson
