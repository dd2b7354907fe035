#pragma once

// The generalized Hopf pairing between a positive and a negative brick,
// evaluated recursively from its axioms, plus per-weight Gram blocks.

#include <map>
#include <memory>
#include <optional>
#include <tuple>
#include <vector>

#include "algebra.hpp"
#include "linalg.hpp"

namespace qboson {

/// Words of a given nonnegative root-lattice degree, in lexicographic order.
inline std::vector<Word> words_of_degree(const Weight& beta) {
  std::vector<Word> out;
  Weight left = beta;
  Word cur;
  const int n = height(beta);
  std::function<void()> rec = [&]() {
    if (static_cast<int>(cur.size()) == n) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = 0; i < left.rank(); ++i) {
      if (left[i] == 0) continue;
      --left[i];
      cur.push_back(static_cast<int>(i));
      rec();
      cur.pop_back();
      ++left[i];
    }
  };
  if (!is_nonnegative(beta)) return out;
  rec();
  return out;
}

/// Gram data of the pairing restricted to degree beta.
///
/// Rows are positive words, columns negative words (the same list of index
/// sequences). The pivot rows R and columns C are chosen greedily in
/// lexicographic order; e_i = word R_i and f_i = sum_c (G_RC^-1)_{c,i} word C_c
/// satisfy pair(e_i, f_j) = delta_ij.
struct WeightBlock {
  Weight beta;
  std::vector<Word> words;
  Matrix gram;
  std::vector<std::size_t> pivot_rows, pivot_cols;
  Matrix dual;  // |words| x rank; column i holds the coordinates of f_i

  std::size_t rank() const noexcept { return pivot_rows.size(); }

  WordElem dual_element(std::size_t i) const {
    WordElem f;
    for (std::size_t w = 0; w < words.size(); ++w) f.add(words[w], dual(w, i));
    return f;
  }

  /// Coordinates of the positive combination x (indexed like words) in the
  /// quotient basis e_1..e_r, i.e. a_i = pair(x, f_i).
  std::vector<QRat> reduce(const std::vector<QRat>& x) const {
    std::vector<QRat> a(rank());
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t w = 0; w < words.size(); ++w)
        if (!x[w].is_zero())
          for (std::size_t v = 0; v < words.size(); ++v)
            if (!dual(v, i).is_zero()) a[i] += x[w] * gram(w, v) * dual(v, i);
    return a;
  }
};

class PairingSession {
 public:
  explicit PairingSession(CartanData c, bool memoize = true) : c_(std::move(c)), memoize_(memoize) {}

  const CartanData& cartan() const noexcept { return c_; }
  bool memoizing() const noexcept { return memoize_; }
  std::size_t cache_size() const noexcept { return memo_.size(); }

  /// phi(a, b) for monomials of a positive brick and a negative brick.
  /// The negative bricks (F, K') and (f, t') are identified.
  QRat pair(Brick pos, const BrickMono& a, const BrickMono& b) {
    if (!is_positive(pos)) throw error("first pairing argument must lie in a positive brick");
    if (a.word.size() != b.word.size()) return 0;
    if (b.word.empty()) return QRat::q_pow(-c_.inner(a.torus, b.torus));
    {
      std::vector<int> x = a.word, y = b.word;
      std::sort(x.begin(), x.end());
      std::sort(y.begin(), y.end());
      if (x != y) return 0;
    }
    const auto key = std::make_tuple(pos, a, b);
    if (memoize_)
      if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    // phi(a, y rest) = sum over a_(1) carrying exactly the letter matching y.
    const int y = b.word.front();
    const BrickMono rest{std::vector<int>(b.word.begin() + 1, b.word.end()), b.torus};
    const Weight hy = c_.simple_root(static_cast<std::size_t>(y));
    const QRat cy = letter_constant(pos, y);
    QRat total;
    Weight all_h(c_.rank());
    for (int x : a.word) all_h += letter_h(c_, pos, x);
    Weight before(c_.rank());  // sum of h over letters left of position j
    for (std::size_t j = 0; j < a.word.size(); ++j) {
      const int xj = a.word[j];
      if (xj == y) {
        // a_(1) = q^{(wt x_j, before)} x_j T_H, every other letter contributing its h
        const Weight H = all_h - letter_h(c_, pos, xj) + a.torus;
        long e = letter_pairing(c_, pos, xj, before);
        e -= static_cast<long>(c_.d(static_cast<std::size_t>(y))) * H[static_cast<std::size_t>(y)];
        // a_(2) = x_1..x_{j-1} T_{g_j} x_{j+1}..x_n T_torus
        MonoBuilder mb(c_, pos);
        for (std::size_t p = 0; p < j; ++p) mb.letter(a.word[p]);
        mb.torus(letter_g(c_, pos, xj));
        for (std::size_t p = j + 1; p < a.word.size(); ++p) mb.letter(a.word[p]);
        mb.torus(a.torus);
        e += mb.exponent();
        const QRat sub = pair(pos, mb.result(), rest);
        if (!sub.is_zero()) total += cy * QRat::q_pow(e) * sub;
      }
      before += letter_h(c_, pos, xj);
    }
    if (memoize_) memo_.emplace(key, total);
    return total;
  }

  QRat pair(Brick pos, const BrickElem& a, const BrickElem& b) {
    QRat r;
    for (const auto& [ma, ca] : a)
      for (const auto& [mb, cb] : b) {
        const QRat v = pair(pos, ma, mb);
        if (!v.is_zero()) r += ca * cb * v;
      }
    return r;
  }

  /// Pairing of elements: a in uq+, b+ or bq++; b in uq-, b- or bq--.
  QRat pair(const Element& a, const Element& b) {
    const Brick pa = layout(a.alg)[0];
    const Brick pb = layout(b.alg)[0];
    if (layout(a.alg).size() != 1 || !is_positive(pa))
      throw error("pair: first argument must lie in a positive brick, got " + alg_name(a.alg));
    if (layout(b.alg).size() != 1 || is_positive(pb))
      throw error("pair: second argument must lie in a negative brick, got " + alg_name(b.alg));
    return pair(pa, a.to_brick(), b.to_brick());
  }

  /// phi(x_i, y_i): 1/(q_i^-1 - q_i) for E/F, 1 for e'/f.
  QRat letter_constant(Brick pos, int i) const {
    return pos == Brick::UPlus ? kappa(c_, static_cast<std::size_t>(i)).inverse() : QRat(1);
  }

  const WeightBlock& weight_block(Brick pos, const Weight& beta) {
    c_.check(beta);
    if (!is_nonnegative(beta)) throw error("weight block degree must be a nonnegative root combination");
    const auto key = std::make_pair(pos, beta);
    if (auto it = blocks_.find(key); it != blocks_.end()) return it->second;
    WeightBlock blk;
    blk.beta = beta;
    blk.words = words_of_degree(beta);
    const std::size_t n = blk.words.size();
    blk.gram = Matrix(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        blk.gram(r, c) = pair(pos, BrickMono{blk.words[r], c_.zero()}, BrickMono{blk.words[c], c_.zero()});
    blk.pivot_cols = blk.gram.pivot_columns();
    blk.pivot_rows = blk.gram.transposed().pivot_columns();
    const Matrix inv = blk.gram.submatrix(blk.pivot_rows, blk.pivot_cols).inverse();
    blk.dual = Matrix(n, blk.rank());
    for (std::size_t c = 0; c < blk.pivot_cols.size(); ++c)
      for (std::size_t i = 0; i < blk.rank(); ++i) blk.dual(blk.pivot_cols[c], i) = inv(c, i);
    return blocks_.emplace(key, std::move(blk)).first->second;
  }

  /// True iff the homogeneous positive element x pairs to zero with every
  /// negative word of the opposite degree.
  bool in_radical(const Element& x) {
    const auto& lay = layout(x.alg);
    if (lay.size() != 1) throw error("in_radical expects a brick element");
    const Brick b = lay[0];
    if (x.is_zero()) return true;
    const auto deg = degree(c_, x);
    if (!deg) throw error("in_radical: element is not homogeneous");
    const Weight beta = is_positive(b) ? *deg : -*deg;
    for (const auto& w : words_of_degree(beta)) {
      QRat s;
      for (const auto& [m, cm] : x.terms) {
        const BrickMono other{w, c_.zero()};
        s += cm * (is_positive(b) ? pair(b, m[0], other) : pair(b == Brick::UMinus ? Brick::UPlus : Brick::BPlus, other, m[0]));
      }
      if (!s.is_zero()) return false;
    }
    return true;
  }

  /// Radical test on the negative side against positive words of a given brick.
  bool in_radical(const Element& x, Brick pos) {
    if (layout(x.alg).size() != 1 || is_positive(layout(x.alg)[0])) return in_radical(x);
    if (x.is_zero()) return true;
    const auto deg = degree(c_, x);
    if (!deg) throw error("in_radical: element is not homogeneous");
    for (const auto& w : words_of_degree(-*deg)) {
      QRat s;
      for (const auto& [m, cm] : x.terms) s += cm * pair(pos, BrickMono{w, c_.zero()}, m[0]);
      if (!s.is_zero()) return false;
    }
    return true;
  }

  void clear_cache() {
    memo_.clear();
    blocks_.clear();
  }

 private:
  CartanData c_;
  bool memoize_;
  std::map<std::tuple<Brick, BrickMono, BrickMono>, QRat> memo_;
  std::map<std::pair<Brick, Weight>, WeightBlock> blocks_;
};

}  // namespace qboson
