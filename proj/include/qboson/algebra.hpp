#pragma once

// Brick Hopf algebras, presented algebras and their normal forms.
//
// Four bricks share one shape: a free algebra on letters x_i of weight
// +-alpha_i adjoined with a torus T_lambda (lambda in the weight lattice).
// Every letter is skew-primitive, Delta(x) = x (x) T_g + T_h (x) x, and the
// torus conjugates letters by T_lambda x = q^{(wt x, lambda)} x T_lambda.
//
//   brick    letters  torus  wt x        h       g
//   UPlus    E_i      K      +alpha_i    0       -alpha_i
//   UMinus   F_i      K'     -alpha_i    alpha_i 0
//   BPlus    e'_i     t      +alpha_i    alpha_i 0
//   BMinus   f_i      t'     -alpha_i    alpha_i 0

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lattice.hpp"
#include "scalars.hpp"

namespace qboson {

enum class Brick : std::uint8_t { UPlus, UMinus, BPlus, BMinus };

inline bool is_positive(Brick b) noexcept { return b == Brick::UPlus || b == Brick::BPlus; }

/// The brick of the other family with the same sign (UPlus <-> BPlus, UMinus <-> BMinus).
inline Brick partner(Brick b) noexcept {
  switch (b) {
    case Brick::UPlus: return Brick::BPlus;
    case Brick::BPlus: return Brick::UPlus;
    case Brick::UMinus: return Brick::BMinus;
    case Brick::BMinus: return Brick::UMinus;
  }
  return b;
}

/// word * T_torus, the normal-ordered monomial of a brick.
struct BrickMono {
  std::vector<int> word;
  Weight torus;

  static BrickMono unit(std::size_t rank) { return BrickMono{{}, Weight(rank)}; }
  static BrickMono letter(std::size_t rank, int i) { return BrickMono{{i}, Weight(rank)}; }
  static BrickMono torus_only(const Weight& w) { return BrickMono{{}, w}; }

  bool is_unit() const { return word.empty() && torus.is_zero(); }

  friend bool operator==(const BrickMono&, const BrickMono&) = default;
  friend auto operator<=>(const BrickMono& a, const BrickMono& b) {
    if (auto c = a.word <=> b.word; c != 0) return c;
    return a.torus <=> b.torus;
  }
};

/// Finite linear combination with QRat coefficients; zero terms are never stored.
template <class Key>
class LinComb {
 public:
  using Map = std::map<Key, QRat>;

  LinComb() = default;
  LinComb(const Key& k, const QRat& c) { add(k, c); }

  void add(const Key& k, const QRat& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  LinComb& operator+=(const LinComb& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  LinComb& operator-=(const LinComb& o) {
    for (const auto& [k, c] : o.terms_) add(k, -c);
    return *this;
  }
  friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
  friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }

  LinComb scaled(const QRat& s) const {
    LinComb r;
    if (s.is_zero()) return r;
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, c * s);
    return r;
  }

  QRat coeff(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? QRat(0) : it->second;
  }

  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  const Map& terms() const noexcept { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  friend bool operator==(const LinComb& a, const LinComb& b) { return a.terms_ == b.terms_; }

 private:
  Map terms_;
};

using BrickElem = LinComb<BrickMono>;
using BrickTensor = LinComb<std::vector<BrickMono>>;

// ---------------------------------------------------------------------------
// Letter data and normal ordering.

inline Weight letter_weight(const CartanData& c, Brick b, int i) {
  Weight w = c.simple_root(static_cast<std::size_t>(i));
  return is_positive(b) ? w : -w;
}

inline Weight letter_h(const CartanData& c, Brick b, int i) {
  return b == Brick::UPlus ? c.zero() : c.simple_root(static_cast<std::size_t>(i));
}

inline Weight letter_g(const CartanData& c, Brick b, int i) {
  return b == Brick::UPlus ? -c.simple_root(static_cast<std::size_t>(i)) : c.zero();
}

/// (wt x_i, lambda), always an integer.
inline long letter_pairing(const CartanData& c, Brick b, int i, const Weight& lambda) {
  const long v = static_cast<long>(c.d(static_cast<std::size_t>(i))) * lambda[static_cast<std::size_t>(i)];
  return is_positive(b) ? v : -v;
}

/// Accumulates a product of letters and tori, keeping tori to the right.
class MonoBuilder {
 public:
  MonoBuilder(const CartanData& c, Brick b) : c_(&c), b_(b), m_(BrickMono::unit(c.rank())) {}

  void letter(int i) {
    if (!m_.torus.is_zero()) exp_ += letter_pairing(*c_, b_, i, m_.torus);
    m_.word.push_back(i);
  }
  void torus(const Weight& w) { m_.torus += w; }
  void mono(const BrickMono& o) {
    for (int i : o.word) letter(i);
    torus(o.torus);
  }

  long exponent() const noexcept { return exp_; }
  const BrickMono& result() const noexcept { return m_; }

 private:
  const CartanData* c_;
  Brick b_;
  BrickMono m_;
  long exp_ = 0;
};

inline std::pair<long, BrickMono> brick_mul(const CartanData& c, Brick b, const BrickMono& x, const BrickMono& y) {
  MonoBuilder mb(c, b);
  mb.mono(x);
  mb.mono(y);
  return {mb.exponent(), mb.result()};
}

inline BrickElem brick_mul(const CartanData& c, Brick b, const BrickElem& x, const BrickElem& y) {
  BrickElem r;
  for (const auto& [mx, cx] : x)
    for (const auto& [my, cy] : y) {
      auto [e, m] = brick_mul(c, b, mx, my);
      r.add(m, cx * cy * QRat::q_pow(e));
    }
  return r;
}

inline BrickElem brick_unit(const CartanData& c) { return BrickElem(BrickMono::unit(c.rank()), 1); }

/// Root-lattice degree of a word: letter counts per index, signed by the brick.
inline Weight word_degree(const CartanData& c, Brick b, const std::vector<int>& word) {
  Weight d(c.rank());
  const int s = is_positive(b) ? 1 : -1;
  for (int i : word) d[static_cast<std::size_t>(i)] += s;
  return d;
}

// ---------------------------------------------------------------------------
// Hopf structure of the bricks.

/// Iterated coproduct into k >= 1 legs.
inline BrickTensor delta_iter(const CartanData& c, Brick b, const BrickMono& m, int k) {
  if (k < 1) throw error("delta_iter needs at least one leg");
  BrickTensor out;
  const std::size_t n = m.word.size();
  std::vector<int> leg(n, 0);
  std::vector<Weight> hs, gs;
  for (int i : m.word) {
    hs.push_back(letter_h(c, b, i));
    gs.push_back(letter_g(c, b, i));
  }
  while (true) {
    std::vector<MonoBuilder> builders(static_cast<std::size_t>(k), MonoBuilder(c, b));
    for (std::size_t p = 0; p < n; ++p) {
      const int j = leg[p];
      for (int l = 0; l < k; ++l) {
        auto& bl = builders[static_cast<std::size_t>(l)];
        if (l < j)
          bl.torus(hs[p]);
        else if (l == j)
          bl.letter(m.word[p]);
        else
          bl.torus(gs[p]);
      }
    }
    long e = 0;
    std::vector<BrickMono> key;
    key.reserve(static_cast<std::size_t>(k));
    for (auto& bl : builders) {
      bl.torus(m.torus);
      e += bl.exponent();
      key.push_back(bl.result());
    }
    out.add(key, QRat::q_pow(e));
    std::size_t p = 0;
    while (p < n && ++leg[p] == k) leg[p++] = 0;
    if (p == n) break;
  }
  return out;
}

inline BrickTensor delta_iter(const CartanData& c, Brick b, const BrickElem& x, int k) {
  BrickTensor r;
  for (const auto& [m, cm] : x) r += delta_iter(c, b, m, k).scaled(cm);
  return r;
}

inline QRat counit(const BrickMono& m) { return m.word.empty() ? QRat(1) : QRat(0); }

inline QRat counit(const BrickElem& x) {
  QRat r;
  for (const auto& [m, cm] : x) r += cm * counit(m);
  return r;
}

/// S(x) = -T_h^-1 x T_g^-1, extended anti-multiplicatively.
inline BrickElem antipode(const CartanData& c, Brick b, const BrickMono& m) {
  MonoBuilder mb(c, b);
  mb.torus(-m.torus);
  for (auto it = m.word.rbegin(); it != m.word.rend(); ++it) {
    mb.torus(-letter_h(c, b, *it));
    mb.letter(*it);
    mb.torus(-letter_g(c, b, *it));
  }
  QRat coef = QRat::q_pow(mb.exponent());
  if (m.word.size() % 2) coef = -coef;
  return BrickElem(mb.result(), coef);
}

/// S^-1(x) = -T_g^-1 x T_h^-1, extended anti-multiplicatively.
inline BrickElem antipode_inv(const CartanData& c, Brick b, const BrickMono& m) {
  MonoBuilder mb(c, b);
  mb.torus(-m.torus);
  for (auto it = m.word.rbegin(); it != m.word.rend(); ++it) {
    mb.torus(-letter_g(c, b, *it));
    mb.letter(*it);
    mb.torus(-letter_h(c, b, *it));
  }
  QRat coef = QRat::q_pow(mb.exponent());
  if (m.word.size() % 2) coef = -coef;
  return BrickElem(mb.result(), coef);
}

template <class F>
BrickElem brick_linear(const BrickElem& x, F&& f) {
  BrickElem r;
  for (const auto& [m, cm] : x) r += f(m).scaled(cm);
  return r;
}

inline BrickElem antipode(const CartanData& c, Brick b, const BrickElem& x) {
  return brick_linear(x, [&](const BrickMono& m) { return antipode(c, b, m); });
}
inline BrickElem antipode_inv(const CartanData& c, Brick b, const BrickElem& x) {
  return brick_linear(x, [&](const BrickMono& m) { return antipode_inv(c, b, m); });
}

/// kappa_i = q_i^-1 - q_i.
inline QRat kappa(const CartanData& c, std::size_t i) {
  return QRat::q_pow(-static_cast<long>(c.d(i))) - QRat::q_pow(static_cast<long>(c.d(i)));
}

/// Rewrites an element of one brick in the generators of its partner:
/// e'_i = kappa_i K_i E_i and f_i = F_i, with t = K and t' = K'.
inline BrickElem convert_brick(const CartanData& c, Brick from, const BrickElem& x) {
  const Brick to = partner(from);
  std::vector<BrickElem> image(c.rank());
  for (std::size_t i = 0; i < c.rank(); ++i) {
    const BrickElem letter(BrickMono::letter(c.rank(), static_cast<int>(i)), 1);
    if (from == Brick::BPlus) {
      const BrickElem ki(BrickMono::torus_only(c.simple_root(i)), kappa(c, i));
      image[i] = brick_mul(c, to, ki, letter);
    } else if (from == Brick::UPlus) {
      const BrickElem ti(BrickMono::torus_only(-c.simple_root(i)), kappa(c, i).inverse());
      image[i] = brick_mul(c, to, ti, letter);
    } else {
      image[i] = letter;
    }
  }
  return brick_linear(x, [&](const BrickMono& m) {
    BrickElem r = brick_unit(c);
    for (int i : m.word) r = brick_mul(c, to, r, image[static_cast<std::size_t>(i)]);
    return brick_mul(c, to, r, BrickElem(BrickMono::torus_only(m.torus), 1));
  });
}

// ---------------------------------------------------------------------------
// Quantized Weyl algebra straightening.

using WordPair = std::pair<std::vector<int>, std::vector<int>>;  // (f-word, e'-word)

/// Normal form of (e'-word)(f-word) as a combination of (f-word, e'-word) pairs,
/// using e'_i f_j = q^{-(alpha_i, alpha_j)} f_j e'_i + delta_ij.
inline LinComb<WordPair> weyl_reorder(const CartanData& c, const std::vector<int>& eword,
                                      const std::vector<int>& fword) {
  LinComb<WordPair> cur(WordPair{fword, {}}, 1);
  for (auto it = eword.rbegin(); it != eword.rend(); ++it) {
    const auto i = static_cast<std::size_t>(*it);
    LinComb<WordPair> next;
    for (const auto& [wp, coef] : cur) {
      const auto& [fw, ew] = wp;
      long acc = 0;
      for (std::size_t k = 0; k < fw.size(); ++k) {
        const auto j = static_cast<std::size_t>(fw[k]);
        if (j == i) {
          std::vector<int> shorter = fw;
          shorter.erase(shorter.begin() + static_cast<std::ptrdiff_t>(k));
          next.add(WordPair{shorter, ew}, coef * QRat::q_pow(-acc));
        }
        acc += c.root_form(i, j);
      }
      std::vector<int> longer{*it};
      longer.insert(longer.end(), ew.begin(), ew.end());
      next.add(WordPair{fw, longer}, coef * QRat::q_pow(-acc));
    }
    cur = std::move(next);
  }
  return cur;
}

// ---------------------------------------------------------------------------
// Braided Hopf structure on the free f-algebra B_q^{--}.

using Word = std::vector<int>;
using WordElem = LinComb<Word>;
using WordTensor = LinComb<std::vector<Word>>;

inline Word concat(Word a, const Word& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

/// (beta, gamma) between two f-words, both of negative degree.
inline long fword_form(const CartanData& c, const Word& a, const Word& b) {
  long s = 0;
  for (int i : a)
    for (int j : b) s += c.root_form(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  return s;
}

/// Delta_0 as an algebra map into the braided tensor square, where
/// (a (x) b)(c (x) d) = q^{-(deg b, deg c)} ac (x) bd.
inline WordTensor braided_delta0(const CartanData& c, const Word& w) {
  WordTensor cur(std::vector<Word>{{}, {}}, 1);
  for (int i : w) {
    WordTensor next;
    for (const auto& [legs, coef] : cur) {
      next.add({concat(legs[0], {i}), legs[1]}, coef * QRat::q_pow(-fword_form(c, legs[1], {i})));
      next.add({legs[0], concat(legs[1], {i})}, coef);
    }
    cur = std::move(next);
  }
  return cur;
}

inline WordTensor braided_delta0(const CartanData& c, const WordElem& x) {
  WordTensor r;
  for (const auto& [w, cw] : x) r += braided_delta0(c, w).scaled(cw);
  return r;
}

/// Delta_0 through the brick coproduct: (pi (x) id) Delta, where pi drops tori.
inline WordTensor projected_delta(const CartanData& c, const Word& w) {
  WordTensor r;
  for (const auto& [legs, coef] : delta_iter(c, Brick::BMinus, BrickMono{w, c.zero()}, 2)) {
    if (!legs[1].torus.is_zero()) throw error("projected_delta: unexpected torus on the right leg");
    r.add({legs[0].word, legs[1].word}, coef);
  }
  return r;
}

/// Braided antipode: the convolution inverse of the identity for Delta_0.
class BraidedAntipode {
 public:
  explicit BraidedAntipode(const CartanData& c) : c_(&c) {}

  const WordElem& operator()(const Word& w) {
    if (auto it = memo_.find(w); it != memo_.end()) return it->second;
    WordElem r;
    if (w.empty()) {
      r.add({}, 1);
    } else {
      for (const auto& [legs, coef] : braided_delta0(*c_, w)) {
        if (legs[1].empty()) continue;
        const WordElem s = (*this)(legs[0]);
        for (const auto& [sw, sc] : s) r.add(concat(sw, legs[1]), -coef * sc);
      }
    }
    return memo_.emplace(w, std::move(r)).first->second;
  }

  WordElem operator()(const WordElem& x) {
    WordElem r;
    for (const auto& [w, cw] : x) r += (*this)(w).scaled(cw);
    return r;
  }

 private:
  const CartanData* c_;
  std::map<Word, WordElem> memo_;
};

// ---------------------------------------------------------------------------
// Presented algebras: tags, monomial layouts, elements.

enum class Alg : std::uint8_t {
  UPlus,        // tilde U_q^+ : E_i, K
  UMinus,       // tilde U_q^- : F_i, K'
  BPlus,        // q-Boson positive brick: e'_i, t
  BMinus,       // q-Boson negative brick: f_i, t'
  BPlusPlus,    // B_q^{++}: e'-words
  BMinusMinus,  // B_q^{--}: f-words
  DPhi,         // quantum double a (x) b over (UPlus, UMinus)
  DPhiBoson,    // quantum double over (BPlus, BMinus)
  HPhi,         // Heisenberg double b # a over (BMinus, BPlus)
  Uq,           // U_q: E-word F-word K_lambda
  Bq,           // B_q: f-word t_lambda e'-word
  Wq,           // W_q: f-word e'-word
};

inline const std::vector<Brick>& layout(Alg a) {
  static const std::vector<Brick> up{Brick::UPlus}, um{Brick::UMinus}, bp{Brick::BPlus}, bm{Brick::BMinus},
      uu{Brick::UPlus, Brick::UMinus}, bb{Brick::BPlus, Brick::BMinus}, hb{Brick::BMinus, Brick::BPlus};
  switch (a) {
    case Alg::UPlus: return up;
    case Alg::UMinus: return um;
    case Alg::BPlus:
    case Alg::BPlusPlus: return bp;
    case Alg::BMinus:
    case Alg::BMinusMinus: return bm;
    case Alg::DPhi:
    case Alg::Uq: return uu;
    case Alg::DPhiBoson: return bb;
    case Alg::HPhi:
    case Alg::Bq:
    case Alg::Wq: return hb;
  }
  return up;
}

/// Whether component k of the layout must carry the trivial torus.
inline bool torus_free(Alg a, std::size_t k) {
  switch (a) {
    case Alg::BPlusPlus:
    case Alg::BMinusMinus:
    case Alg::Wq: return true;
    case Alg::Uq: return k == 0;
    case Alg::Bq: return k == 1;
    default: return false;
  }
}

inline bool is_brick(Alg a) {
  return a == Alg::UPlus || a == Alg::UMinus || a == Alg::BPlus || a == Alg::BMinus;
}

inline Brick brick_of(Alg a) {
  if (!is_brick(a)) throw error("algebra is not a Hopf brick");
  return layout(a)[0];
}

inline Alg alg_of(Brick b) {
  switch (b) {
    case Brick::UPlus: return Alg::UPlus;
    case Brick::UMinus: return Alg::UMinus;
    case Brick::BPlus: return Alg::BPlus;
    case Brick::BMinus: return Alg::BMinus;
  }
  return Alg::UPlus;
}

inline std::string alg_name(Alg a) {
  switch (a) {
    case Alg::UPlus: return "uq+";
    case Alg::UMinus: return "uq-";
    case Alg::BPlus: return "b+";
    case Alg::BMinus: return "b-";
    case Alg::BPlusPlus: return "bq++";
    case Alg::BMinusMinus: return "bq--";
    case Alg::DPhi: return "dphi";
    case Alg::DPhiBoson: return "dphi-b";
    case Alg::HPhi: return "hphi";
    case Alg::Uq: return "uq";
    case Alg::Bq: return "bq";
    case Alg::Wq: return "wq";
  }
  return "?";
}

inline std::optional<Alg> parse_alg(const std::string& s) {
  for (Alg a : {Alg::UPlus, Alg::UMinus, Alg::BPlus, Alg::BMinus, Alg::BPlusPlus, Alg::BMinusMinus, Alg::DPhi,
                Alg::DPhiBoson, Alg::HPhi, Alg::Uq, Alg::Bq, Alg::Wq})
    if (alg_name(a) == s) return a;
  return std::nullopt;
}

using Mono = std::vector<BrickMono>;

struct Element {
  Alg alg = Alg::UPlus;
  LinComb<Mono> terms;

  static Mono unit_mono(const CartanData& c, Alg a) { return Mono(layout(a).size(), BrickMono::unit(c.rank())); }
  static Element zero(Alg a) { return Element{a, {}}; }
  static Element scalar(const CartanData& c, Alg a, const QRat& s) {
    return Element{a, LinComb<Mono>(unit_mono(c, a), s)};
  }
  static Element one(const CartanData& c, Alg a) { return scalar(c, a, 1); }

  /// Single-brick element viewed in a one-component algebra.
  static Element from_brick(Alg a, const BrickElem& x) {
    Element e{a, {}};
    for (const auto& [m, cm] : x) e.terms.add(Mono{m}, cm);
    return e;
  }
  BrickElem to_brick() const {
    BrickElem r;
    for (const auto& [m, cm] : terms) {
      if (m.size() != 1) throw error("element has more than one component");
      r.add(m[0], cm);
    }
    return r;
  }

  bool is_zero() const noexcept { return terms.is_zero(); }

  Element& operator+=(const Element& o) {
    require_same(o);
    terms += o.terms;
    return *this;
  }
  Element& operator-=(const Element& o) {
    require_same(o);
    terms -= o.terms;
    return *this;
  }
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  Element operator-() const { return Element{alg, terms.scaled(-1)}; }
  Element scaled(const QRat& s) const { return Element{alg, terms.scaled(s)}; }
  friend Element operator*(const QRat& s, const Element& x) { return x.scaled(s); }

  friend bool operator==(const Element& a, const Element& b) { return a.alg == b.alg && a.terms == b.terms; }

  void require_same(const Element& o) const {
    if (alg != o.alg) throw error("algebra tag mismatch: " + alg_name(alg) + " vs " + alg_name(o.alg));
  }
};

/// k-fold tensor of elements, one algebra tag per leg.
struct Tensor {
  std::vector<Alg> legs;
  LinComb<std::vector<Mono>> terms;

  bool is_zero() const noexcept { return terms.is_zero(); }
  Tensor& operator+=(const Tensor& o) {
    if (legs != o.legs) throw error("tensor leg mismatch");
    terms += o.terms;
    return *this;
  }
  Tensor& operator-=(const Tensor& o) {
    if (legs != o.legs) throw error("tensor leg mismatch");
    terms -= o.terms;
    return *this;
  }
  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  Tensor scaled(const QRat& s) const { return Tensor{legs, terms.scaled(s)}; }
  friend bool operator==(const Tensor& a, const Tensor& b) { return a.legs == b.legs && a.terms == b.terms; }
};

inline Tensor tensor_product(const Element& x, const Element& y) {
  Tensor t{{x.alg, y.alg}, {}};
  for (const auto& [mx, cx] : x.terms)
    for (const auto& [my, cy] : y.terms) t.terms.add({mx, my}, cx * cy);
  return t;
}

inline Tensor tensor_product(const Tensor& x, const Element& y) {
  Tensor t{x.legs, {}};
  t.legs.push_back(y.alg);
  for (const auto& [mx, cx] : x.terms)
    for (const auto& [my, cy] : y.terms) {
      auto key = mx;
      key.push_back(my);
      t.terms.add(key, cx * cy);
    }
  return t;
}

/// Extracts leg k of a pure-tensor key as an element.
inline Element leg_element(const Tensor& t, const std::vector<Mono>& key, std::size_t k) {
  return Element{t.legs[k], LinComb<Mono>(key[k], 1)};
}

/// Validates layout and torus constraints of a monomial in algebra a.
inline void check_mono(const CartanData& c, Alg a, const Mono& m) {
  const auto& lay = layout(a);
  if (m.size() != lay.size()) throw error("monomial does not match the layout of " + alg_name(a));
  for (std::size_t k = 0; k < m.size(); ++k) {
    c.check(m[k].torus);
    if (torus_free(a, k) && !m[k].torus.is_zero()) throw error("torus letters are not allowed in " + alg_name(a));
    for (int i : m[k].word)
      if (i < 0 || static_cast<std::size_t>(i) >= c.rank()) throw error("generator index out of range");
  }
}

/// Root-lattice degree of a homogeneous element; nullopt if inhomogeneous.
inline std::optional<Weight> degree(const CartanData& c, const Element& x) {
  std::optional<Weight> d;
  const auto& lay = layout(x.alg);
  for (const auto& [m, cm] : x.terms) {
    Weight w(c.rank());
    for (std::size_t k = 0; k < m.size(); ++k) w += word_degree(c, lay[k], m[k].word);
    if (d && *d != w) return std::nullopt;
    d = w;
  }
  return d ? d : std::optional<Weight>(Weight(c.rank()));
}

// ---------------------------------------------------------------------------
// Multiplication in the single-brick algebras and in W_q.

inline Element brick_algebra_mul(const CartanData& c, const Element& x, const Element& y) {
  x.require_same(y);
  Element r{x.alg, {}};
  switch (x.alg) {
    case Alg::UPlus:
    case Alg::UMinus:
    case Alg::BPlus:
    case Alg::BMinus:
    case Alg::BPlusPlus:
    case Alg::BMinusMinus: {
      const Brick b = layout(x.alg)[0];
      for (const auto& [mx, cx] : x.terms)
        for (const auto& [my, cy] : y.terms) {
          auto [e, m] = brick_mul(c, b, mx[0], my[0]);
          r.terms.add(Mono{m}, cx * cy * QRat::q_pow(e));
        }
      return r;
    }
    case Alg::Wq: {
      for (const auto& [mx, cx] : x.terms)
        for (const auto& [my, cy] : y.terms)
          for (const auto& [wp, cw] : weyl_reorder(c, mx[1].word, my[0].word)) {
            Mono m{BrickMono{concat(mx[0].word, wp.first), c.zero()},
                   BrickMono{concat(wp.second, my[1].word), c.zero()}};
            r.terms.add(m, cx * cy * cw);
          }
      return r;
    }
    default: throw error("multiplication in " + alg_name(x.alg) + " needs a pairing session");
  }
}

/// Coproduct of a brick element as a two-leg tensor.
inline Tensor delta(const CartanData& c, const Element& x, int k = 2) {
  if (!is_brick(x.alg)) throw error("coproduct is defined on Hopf bricks only, not on " + alg_name(x.alg));
  const Brick b = brick_of(x.alg);
  Tensor t{std::vector<Alg>(static_cast<std::size_t>(k), x.alg), {}};
  for (const auto& [m, cm] : x.terms)
    for (const auto& [legs, cl] : delta_iter(c, b, m[0], k)) {
      std::vector<Mono> key;
      for (const auto& l : legs) key.push_back(Mono{l});
      t.terms.add(key, cm * cl);
    }
  return t;
}

inline Element antipode(const CartanData& c, const Element& x) {
  return Element::from_brick(x.alg, antipode(c, brick_of(x.alg), x.to_brick()));
}
inline Element antipode_inv(const CartanData& c, const Element& x) {
  return Element::from_brick(x.alg, antipode_inv(c, brick_of(x.alg), x.to_brick()));
}
inline QRat counit(const Element& x) {
  brick_of(x.alg);
  return counit(x.to_brick());
}

// ---------------------------------------------------------------------------
// Text rendering.

namespace detail {

inline std::string letter_symbol(Brick b) {
  switch (b) {
    case Brick::UPlus: return "E";
    case Brick::UMinus: return "F";
    case Brick::BPlus: return "e";
    case Brick::BMinus: return "f";
  }
  return "?";
}

inline std::string torus_symbol(Alg a, std::size_t k) {
  switch (a) {
    case Alg::UPlus: return "K";
    case Alg::UMinus: return "K'";
    case Alg::BPlus: return "t";
    case Alg::BMinus: return "t'";
    case Alg::DPhi: return k == 0 ? "K" : "K'";
    case Alg::DPhiBoson: return k == 0 ? "t" : "t'";
    case Alg::HPhi: return k == 0 ? "t'" : "t";
    case Alg::Uq: return "K";
    case Alg::Bq: return "t";
    default: return "?";
  }
}

inline std::string power(const std::string& base, long e) {
  if (e == 1) return base;
  return base + "^" + std::to_string(e);
}

inline std::string torus_str(const CartanData& c, const std::string& sym, const Weight& w) {
  if (w.is_zero()) return "";
  if (auto r = c.to_roots(w)) {
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < c.rank(); ++i) {
      if ((*r)[i] == 0) continue;
      const std::string base = c.rank() == 1 ? sym : (sym.back() == '\'' ? sym.substr(0, sym.size() - 1) + std::to_string(i + 1) + "'"
                                                                      : sym + std::to_string(i + 1));
      parts.push_back(power(base, (*r)[i]));
    }
    std::string s;
    for (const auto& p : parts) s += (s.empty() ? "" : "*") + p;
    return s;
  }
  return sym + "{" + w.str() + "}";
}

inline std::string word_str(Brick b, const std::vector<int>& w) {
  std::string s;
  for (std::size_t p = 0; p < w.size();) {
    std::size_t q = p;
    while (q < w.size() && w[q] == w[p]) ++q;
    if (!s.empty()) s += "*";
    s += power(letter_symbol(b) + std::to_string(w[p] + 1), static_cast<long>(q - p));
    p = q;
  }
  return s;
}

inline long mono_length(const Mono& m) {
  long n = 0;
  for (const auto& b : m) n += static_cast<long>(b.word.size());
  return n;
}

/// Coefficient printed in front of a monomial: returns (sign, text) where text is empty for 1.
inline std::pair<bool, std::string> coef_text(const QRat& c, bool has_mono) {
  QRat a = c;
  bool neg = false;
  const std::size_t terms = term_count(c.num());
  if (c.is_laurent() && (terms == 1 || has_mono) && c.num().lead() < 0) {
    a = -c;
    neg = true;
  }
  if (a.is_one()) return {neg, has_mono ? "" : "1"};
  std::string s = a.str();
  if (has_mono && a.is_laurent() && term_count(a.num()) > 1) s = "(" + s + ")";
  if (has_mono && !a.is_laurent()) s = "(" + s + ")";
  return {neg, s};
}

/// Joins (monomial text, coefficient) pairs, factoring out a common denominator.
inline std::string format_sum(std::vector<std::pair<std::string, QRat>> items) {
  if (items.empty()) return "0";
  QRat common(1);
  for (const auto& [s, c] : items) {
    const QRat r = c * common;
    if (!r.is_laurent()) common *= QRat::from_parts(r.den(), Poly(1), r.exp_denominator());
  }
  std::string den_text;
  if (!common.is_one()) {
    const BalancedFraction b = balanced(common.inverse());
    const QRat bal = QRat::from_parts(b.den, Poly(1), b.D);
    den_text = bal.str();
    if (term_count(bal.num()) > 1) den_text = "(" + den_text + ")";
    for (auto& item : items) item.second *= bal;
  }
  std::string out;
  for (std::size_t k = 0; k < items.size(); ++k) {
    const auto& [mono, c] = items[k];
    auto [neg, ct] = coef_text(c, !mono.empty());
    std::string term = ct;
    if (!mono.empty()) term += (ct.empty() ? "" : " * ") + mono;
    if (k == 0)
      out += (neg ? "-" : "") + term;
    else if (!neg && term.front() == '-')
      out += " - " + term.substr(1);
    else
      out += (neg ? " - " : " + ") + term;
  }
  if (den_text.empty()) return out;
  if (items.size() > 1 || out.find(' ') != std::string::npos) out = "(" + out + ")";
  return out + "/" + den_text;
}

}  // namespace detail

inline std::string mono_str(const CartanData& c, Alg a, const Mono& m) {
  const auto& lay = layout(a);
  std::vector<std::string> parts;
  auto push = [&](const std::string& s) {
    if (!s.empty()) parts.push_back(s);
  };
  if (a == Alg::Uq) {
    push(detail::word_str(lay[0], m[0].word));
    push(detail::word_str(lay[1], m[1].word));
    push(detail::torus_str(c, "K", m[1].torus));
  } else {
    for (std::size_t k = 0; k < m.size(); ++k) {
      push(detail::word_str(lay[k], m[k].word));
      push(detail::torus_str(c, detail::torus_symbol(a, k), m[k].torus));
    }
  }
  std::string s;
  for (const auto& p : parts) s += (s.empty() ? "" : "*") + p;
  return s;
}

namespace detail {

template <class Key, class Str>
std::string format_lincomb(const LinComb<Key>& x, Str&& str_of, std::function<long(const Key&)> len) {
  std::vector<std::pair<const Key*, QRat>> sorted;
  for (const auto& [k, c] : x) sorted.emplace_back(&k, c);
  std::stable_sort(sorted.begin(), sorted.end(), [&](const auto& p, const auto& q) {
    const long lp = len(*p.first), lq = len(*q.first);
    if (lp != lq) return lp > lq;
    return *q.first < *p.first;
  });
  std::vector<std::pair<std::string, QRat>> items;
  for (const auto& [k, c] : sorted) items.emplace_back(str_of(*k), c);
  return format_sum(std::move(items));
}

}  // namespace detail

inline std::string to_string(const CartanData& c, const Element& x) {
  return detail::format_lincomb<Mono>(
      x.terms, [&](const Mono& m) { return mono_str(c, x.alg, m); }, [](const Mono& m) { return detail::mono_length(m); });
}

inline std::string to_string(const CartanData& c, const Tensor& t) {
  return detail::format_lincomb<std::vector<Mono>>(
      t.terms,
      [&](const std::vector<Mono>& key) {
        std::string s;
        for (std::size_t k = 0; k < key.size(); ++k) {
          const std::string leg = mono_str(c, t.legs[k], key[k]);
          s += (k ? " ⊗ " : "") + (leg.empty() ? std::string("1") : leg);
        }
        return s;
      },
      [](const std::vector<Mono>& key) {
        long n = 0;
        for (const auto& m : key) n += detail::mono_length(m);
        return n;
      });
}

}  // namespace qboson
