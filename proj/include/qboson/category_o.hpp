#pragma once

// Weight modules over B_q in the category O: raw action-table modules and
// standard modules B_q^{--} (x) V, the comodule map rho, maximal vectors, the
// extremal projector and the decomposition into H(lambda) blocks.

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "linalg.hpp"
#include "pairing.hpp"

namespace qboson {

/// Raised when an f-action leaves the finite window of a raw module.
class truncation_error : public error {
 public:
  using error::error;
};

/// Raised when a module violates a defining relation.
class relation_error : public error {
 public:
  using error::error;
};

using Vec = std::vector<QRat>;

inline bool is_zero_vec(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

/// A module vector: dense coordinates per weight space; zero blocks are dropped.
struct ModVec {
  std::map<Weight, Vec> parts;

  static ModVec unit(const Weight& w, std::size_t dim, std::size_t k) {
    if (k >= dim) throw error("basis index out of range at weight " + w.str());
    ModVec m;
    Vec v(dim);
    v[k] = 1;
    m.parts.emplace(w, std::move(v));
    return m;
  }
  static ModVec single(const Weight& w, Vec v) {
    ModVec m;
    m.add(w, v, 1);
    return m;
  }

  void add(const Weight& w, const Vec& v, const QRat& c) {
    if (c.is_zero() || is_zero_vec(v)) return;
    auto [it, inserted] = parts.try_emplace(w, Vec(v.size()));
    Vec& dst = it->second;
    if (dst.size() != v.size()) throw error("module vector dimension mismatch at weight " + w.str());
    for (std::size_t k = 0; k < v.size(); ++k)
      if (!v[k].is_zero()) dst[k] += c * v[k];
    if (is_zero_vec(dst)) parts.erase(it);
  }

  ModVec& operator+=(const ModVec& o) {
    for (const auto& [w, v] : o.parts) add(w, v, 1);
    return *this;
  }
  ModVec& operator-=(const ModVec& o) {
    for (const auto& [w, v] : o.parts) add(w, v, -1);
    return *this;
  }
  friend ModVec operator+(ModVec a, const ModVec& b) { return a += b; }
  friend ModVec operator-(ModVec a, const ModVec& b) { return a -= b; }
  ModVec scaled(const QRat& c) const {
    ModVec r;
    for (const auto& [w, v] : parts) r.add(w, v, c);
    return r;
  }
  bool is_zero() const noexcept { return parts.empty(); }
  friend bool operator==(const ModVec& a, const ModVec& b) { return a.parts == b.parts; }
};

// ---------------------------------------------------------------------------

class WeightModule {
 public:
  virtual ~WeightModule() = default;

  virtual const CartanData& cartan() const = 0;
  /// Dimension of M_w; nullopt when w lies outside the known window.
  virtual std::optional<std::size_t> dim(const Weight& w) const = 0;
  /// e'_i : M_w -> M_{w + alpha_i}; an empty result means the target space is zero.
  virtual Vec act_e(std::size_t i, const Weight& w, const Vec& v) const = 0;
  /// f_i : M_w -> M_{w - alpha_i}; throws truncation_error outside the window.
  virtual Vec act_f(std::size_t i, const Weight& w, const Vec& v) const = 0;
  /// Every e'-word longer than this kills M_w.
  virtual int nilpotence_bound(const Weight& w) const = 0;

  ModVec e(std::size_t i, const ModVec& m) const {
    ModVec r;
    const Weight a = cartan().simple_root(i);
    for (const auto& [w, v] : m.parts) {
      Vec out = act_e(i, w, v);
      if (!out.empty()) r.add(w + a, out, 1);
    }
    return r;
  }

  ModVec f(std::size_t i, const ModVec& m) const {
    ModVec r;
    const Weight a = cartan().simple_root(i);
    for (const auto& [w, v] : m.parts) {
      Vec out = act_f(i, w, v);
      if (!out.empty()) r.add(w - a, out, 1);
    }
    return r;
  }

  /// Applies the e'-word x_1 ... x_k (rightmost letter first).
  ModVec apply_eword(const Word& w, ModVec m) const {
    for (auto it = w.rbegin(); it != w.rend() && !m.is_zero(); ++it) m = e(static_cast<std::size_t>(*it), m);
    return m;
  }
  ModVec apply_fword(const Word& w, ModVec m) const {
    for (auto it = w.rbegin(); it != w.rend() && !m.is_zero(); ++it) m = f(static_cast<std::size_t>(*it), m);
    return m;
  }
  ModVec apply_f(const WordElem& x, const ModVec& m) const {
    ModVec r;
    for (const auto& [w, c] : x) r += apply_fword(w, m).scaled(c);
    return r;
  }

  /// Matrix of e'_i on M_w (rows: M_{w+alpha_i}); zero rows when the target is zero.
  Matrix e_matrix(std::size_t i, const Weight& w) const {
    const std::size_t n = dim(w).value_or(0);
    const auto tgt = dim(w + cartan().simple_root(i));
    const std::size_t m = tgt.value_or(0);
    Matrix r(m, n);
    for (std::size_t k = 0; k < n; ++k) {
      Vec u(n);
      u[k] = 1;
      const Vec out = act_e(i, w, u);
      for (std::size_t j = 0; j < out.size() && j < m; ++j) r(j, k) = out[j];
    }
    return r;
  }
};

// ---------------------------------------------------------------------------
// Raw modules: explicit action tables on a finite window of weights.

/// A finite window of a module given by matrices.
///
/// Weights that are not declared are treated as zero when reached by some e'_i
/// and as unknown when reached by some f_i; computations that would need an
/// unknown space raise truncation_error.
class RawModule : public WeightModule {
 public:
  enum class Mode { Weights, TorusMatrices };

  RawModule() = default;
  explicit RawModule(CartanData c, Mode mode = Mode::Weights) : c_(std::move(c)), mode_(mode) {}

  const CartanData& cartan() const override { return c_; }
  Mode mode() const noexcept { return mode_; }

  void declare(const Weight& w, std::size_t d) {
    c_.check(w);
    dims_[w] = d;
    bound_.clear();
  }

  /// Sets the matrix of e'_i (kind 'e'), f_i ('f') or t_i ('t') from weight w.
  void set_block(char kind, std::size_t i, const Weight& from, Matrix m) {
    if (i >= c_.rank()) throw error("generator index out of range");
    const Weight to = target(kind, i, from);
    const auto df = dims_.find(from);
    const auto dt = dims_.find(to);
    if (df == dims_.end()) throw error("block source weight " + from.str() + " is not declared");
    if (dt == dims_.end()) throw error("block target weight " + to.str() + " is not declared");
    if (m.rows() != dt->second || m.cols() != df->second)
      throw error(std::string(1, kind) + std::to_string(i + 1) + " block " + from.str() + " -> " + to.str() +
                  " has shape " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " +
                  std::to_string(dt->second) + "x" + std::to_string(df->second));
    if (kind == 't' && mode_ != Mode::TorusMatrices) throw error("torus blocks require mode torus-matrices");
    blocks_[{kind, i, from}] = std::move(m);
  }

  const Matrix* block(char kind, std::size_t i, const Weight& from) const {
    auto it = blocks_.find({kind, i, from});
    return it == blocks_.end() ? nullptr : &it->second;
  }

  std::vector<Weight> weights() const {
    std::vector<Weight> w;
    for (const auto& [k, d] : dims_) w.push_back(k);
    return w;
  }
  std::size_t total_dim() const {
    std::size_t s = 0;
    for (const auto& [k, d] : dims_) s += d;
    return s;
  }

  std::optional<std::size_t> dim(const Weight& w) const override {
    auto it = dims_.find(w);
    if (it == dims_.end()) return std::nullopt;
    return it->second;
  }

  Vec act_e(std::size_t i, const Weight& w, const Vec& v) const override {
    const Weight to = w + c_.simple_root(i);
    auto it = dims_.find(to);
    if (it == dims_.end()) return {};
    if (const Matrix* m = block('e', i, w)) return m->apply(v);
    return Vec(it->second);
  }

  Vec act_f(std::size_t i, const Weight& w, const Vec& v) const override {
    const Weight to = w - c_.simple_root(i);
    auto it = dims_.find(to);
    if (it == dims_.end()) {
      if (is_zero_vec(v)) return {};
      throw truncation_error("f" + std::to_string(i + 1) + " leaves the module window below weight " + w.str());
    }
    if (const Matrix* m = block('f', i, w)) return m->apply(v);
    return Vec(it->second);
  }

  /// Torus generator t_i on M_w: the given matrix, or q^{(alpha_i, w)} in weights mode.
  Matrix torus_matrix(std::size_t i, const Weight& w) const {
    const std::size_t d = dim(w).value_or(0);
    if (mode_ == Mode::Weights)
      return Matrix::identity(d).scaled(QRat::q_pow(static_cast<long>(c_.d(i)) * w[i]));
    if (const Matrix* m = block('t', i, w)) return *m;
    return Matrix::identity(d);
  }

  int nilpotence_bound(const Weight& w) const override {
    if (auto it = bound_.find(w); it != bound_.end()) return it->second;
    int best = 0;
    for (std::size_t i = 0; i < c_.rank(); ++i) {
      const Weight up = w + c_.simple_root(i);
      if (dims_.count(up)) best = std::max(best, 1 + nilpotence_bound(up));
    }
    bound_[w] = best;
    return best;
  }

  /// Checks the W_q / B_q relations wherever they are computable; throws relation_error.
  void validate(PairingSession& s) const;

 private:
  Weight target(char kind, std::size_t i, const Weight& from) const {
    switch (kind) {
      case 'e': return from + c_.simple_root(i);
      case 'f': return from - c_.simple_root(i);
      case 't': return from;
      default: throw error(std::string("unknown block kind '") + kind + "'");
    }
  }

  template <class Fail>
  void check_torus(const Weight& w, std::size_t d, Fail fail) const {
    for (std::size_t i = 0; i < c_.rank(); ++i) {
      const Matrix ti = torus_matrix(i, w);
      if (d > 0 && ti.rank() < d) fail("t" + std::to_string(i + 1) + " invertible", w);
      for (std::size_t k = i + 1; k < c_.rank(); ++k) {
        const Matrix tk = torus_matrix(k, w);
        if (!(ti * tk == tk * ti)) fail("t" + std::to_string(i + 1) + " t" + std::to_string(k + 1) + " = t" +
                                            std::to_string(k + 1) + " t" + std::to_string(i + 1), w);
      }
      for (std::size_t j = 0; j < c_.rank(); ++j) {
        const long ex = c_.root_form(j, i);
        const std::string name = std::to_string(j + 1);
        const Weight up = w + c_.simple_root(j), down = w - c_.simple_root(j);
        if (dims_.count(up)) {
          const Matrix e = e_matrix(j, w);
          if (!(torus_matrix(i, up) * e == (e * ti).scaled(QRat::q_pow(ex))))
            fail("t" + std::to_string(i + 1) + " e" + name + " = q^" + std::to_string(ex) + " e" + name + " t" +
                     std::to_string(i + 1),
                 w);
        }
        if (dims_.count(down)) {
          const Matrix* f = block('f', j, w);
          if (f && !(torus_matrix(i, down) * *f == (*f * ti).scaled(QRat::q_pow(-ex))))
            fail("t" + std::to_string(i + 1) + " f" + name + " = q^" + std::to_string(-ex) + " f" + name + " t" +
                     std::to_string(i + 1),
                 w);
        }
      }
    }
  }

  CartanData c_;
  Mode mode_ = Mode::Weights;
  std::map<Weight, std::size_t> dims_;
  std::map<std::tuple<char, std::size_t, Weight>, Matrix> blocks_;
  mutable std::map<Weight, int> bound_;
};

// ---------------------------------------------------------------------------
// Standard modules B_q^{--} (x) V.

/// B_q^{--} (x) V for a weight-graded seed space V.
///
/// The basis of M_nu consists of pairs (seed s, pivot f-word of degree
/// -beta) with lambda_s - beta = nu. f acts by left multiplication and e'_i by
/// the q-derivation e'_i.(x (x) v) = sum phi(e'_i, x_(1)) x_(2) (x) v, both
/// reduced modulo the radical of the pairing.
class StandardModule : public WeightModule {
 public:
  StandardModule(PairingSession& s, std::vector<Weight> seeds) : s_(&s), seeds_(std::move(seeds)) {
    for (const auto& w : seeds_) s.cartan().check(w);
  }

  const CartanData& cartan() const override { return s_->cartan(); }
  const std::vector<Weight>& seeds() const noexcept { return seeds_; }

  struct BasisEntry {
    std::size_t seed;
    Weight beta;      // root coordinates
    std::size_t col;  // index into the pivot columns of the block of beta
  };

  const std::vector<BasisEntry>& basis(const Weight& nu) const {
    if (auto it = basis_.find(nu); it != basis_.end()) return it->second;
    std::vector<BasisEntry> b;
    for (std::size_t s = 0; s < seeds_.size(); ++s) {
      const auto beta = cartan().to_roots(seeds_[s] - nu);
      if (!beta || !is_nonnegative(*beta)) continue;
      const WeightBlock& blk = s_->weight_block(Brick::BPlus, *beta);
      for (std::size_t k = 0; k < blk.rank(); ++k) b.push_back({s, *beta, k});
    }
    return basis_.emplace(nu, std::move(b)).first->second;
  }

  std::optional<std::size_t> dim(const Weight& w) const override { return basis(w).size(); }

  /// Pivot f-word of a basis entry.
  const Word& word_of(const BasisEntry& e) const {
    const WeightBlock& blk = s_->weight_block(Brick::BPlus, e.beta);
    return blk.words[blk.pivot_cols[e.col]];
  }

  /// Coordinates of x (x) v_s in M_nu for an f-word combination x of degree -beta.
  Vec embed(const Weight& nu, std::size_t seed, const Weight& beta, const WordElem& x) const {
    const auto& b = basis(nu);
    Vec out(b.size());
    const WeightBlock& blk = s_->weight_block(Brick::BPlus, beta);
    const Matrix& red = reduction(beta);
    std::map<Word, std::size_t> index;
    for (std::size_t w = 0; w < blk.words.size(); ++w) index[blk.words[w]] = w;
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (b[k].seed != seed || b[k].beta != beta) continue;
      QRat acc;
      for (const auto& [w, c] : x) {
        auto it = index.find(w);
        if (it == index.end()) throw error("internal: word of unexpected degree");
        acc += c * red(b[k].col, it->second);
      }
      out[k] = acc;
    }
    return out;
  }

  Vec act_f(std::size_t i, const Weight& w, const Vec& v) const override {
    const Weight to = w - cartan().simple_root(i);
    Vec out(basis(to).size());
    const auto& b = basis(w);
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (v[k].is_zero()) continue;
      Weight beta = b[k].beta;
      beta[i] += 1;
      const Vec img = embed(to, b[k].seed, beta, WordElem(concat({static_cast<int>(i)}, word_of(b[k])), 1));
      for (std::size_t j = 0; j < out.size(); ++j)
        if (!img[j].is_zero()) out[j] += v[k] * img[j];
    }
    return out;
  }

  Vec act_e(std::size_t i, const Weight& w, const Vec& v) const override {
    const Weight to = w + cartan().simple_root(i);
    Vec out(basis(to).size());
    if (out.empty()) return {};
    const auto& b = basis(w);
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (v[k].is_zero()) continue;
      const Word& x = word_of(b[k]);
      WordElem d;
      long acc = 0;
      for (std::size_t p = 0; p < x.size(); ++p) {
        const auto j = static_cast<std::size_t>(x[p]);
        if (j == i) {
          Word rest = x;
          rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(p));
          d.add(rest, QRat::q_pow(-acc));
        }
        acc += cartan().root_form(i, j);
      }
      if (d.is_zero()) continue;
      Weight beta = b[k].beta;
      beta[i] -= 1;
      const Vec img = embed(to, b[k].seed, beta, d);
      for (std::size_t j = 0; j < out.size(); ++j)
        if (!img[j].is_zero()) out[j] += v[k] * img[j];
    }
    return out;
  }

  int nilpotence_bound(const Weight& w) const override {
    int best = 0;
    for (const auto& s : seeds_) {
      const auto beta = cartan().to_roots(s - w);
      if (beta && is_nonnegative(*beta)) best = std::max(best, height(*beta));
    }
    return best;
  }

  /// The window {nu : every seed above nu lies within height depth} as a raw module.
  RawModule materialize(int depth) const {
    const CartanData& c = cartan();
    RawModule raw(c);
    std::set<Weight> window;
    for (const auto& s : seeds_) {
      std::vector<Weight> frontier{s};
      std::set<Weight> seen{s};
      for (int h = 0; h < depth; ++h) {
        std::vector<Weight> next;
        for (const auto& w : frontier)
          for (std::size_t i = 0; i < c.rank(); ++i) {
            Weight d = w - c.simple_root(i);
            if (seen.insert(d).second) next.push_back(d);
          }
        frontier = std::move(next);
      }
      window.insert(seen.begin(), seen.end());
    }
    std::vector<Weight> kept;
    for (const auto& nu : window) {
      bool ok = true;
      for (const auto& s : seeds_) {
        const auto beta = c.to_roots(s - nu);
        if (beta && is_nonnegative(*beta) && height(*beta) > depth) ok = false;
      }
      if (ok && dim(nu).value_or(0) > 0) kept.push_back(nu);
    }
    for (const auto& nu : kept) raw.declare(nu, *dim(nu));
    for (const auto& nu : kept)
      for (std::size_t i = 0; i < c.rank(); ++i) {
        const std::size_t n = *dim(nu);
        for (char kind : {'e', 'f'}) {
          const Weight to = kind == 'e' ? nu + c.simple_root(i) : nu - c.simple_root(i);
          const auto dt = raw.dim(to);
          if (!dt) continue;
          Matrix m(*dt, n);
          for (std::size_t k = 0; k < n; ++k) {
            Vec u(n);
            u[k] = 1;
            const Vec img = kind == 'e' ? act_e(i, nu, u) : act_f(i, nu, u);
            for (std::size_t j = 0; j < img.size(); ++j) m(j, k) = img[j];
          }
          raw.set_block(kind, i, nu, std::move(m));
        }
      }
    return raw;
  }

 private:
  /// G_RC^-1 G[R, :], mapping word coordinates to pivot-column coordinates.
  const Matrix& reduction(const Weight& beta) const {
    if (auto it = red_.find(beta); it != red_.end()) return it->second;
    const WeightBlock& blk = s_->weight_block(Brick::BPlus, beta);
    std::vector<std::size_t> all(blk.words.size());
    for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
    const Matrix inv = blk.gram.submatrix(blk.pivot_rows, blk.pivot_cols).inverse();
    return red_.emplace(beta, inv * blk.gram.submatrix(blk.pivot_rows, all)).first->second;
  }

  PairingSession* s_;
  std::vector<Weight> seeds_;
  mutable std::map<Weight, std::vector<BasisEntry>> basis_;
  mutable std::map<Weight, Matrix> red_;
};

/// B_q^{--} (x) V for a U_q^0-module V given by commuting invertible matrices
/// t_1..t_n. The window is graded by degree: weight labels are -beta.
inline RawModule standard_torus_module(PairingSession& s, const std::vector<Matrix>& torus, int depth) {
  const CartanData& c = s.cartan();
  if (torus.size() != c.rank()) throw error("need one torus matrix per simple root");
  const std::size_t n = torus.empty() ? 0 : torus[0].rows();
  for (const auto& t : torus)
    if (t.rows() != n || t.cols() != n) throw error("torus matrices must be square of equal size");
  StandardModule st(s, std::vector<Weight>(n, c.zero()));
  const RawModule flat = st.materialize(depth);
  RawModule M(c, RawModule::Mode::TorusMatrices);
  for (const auto& w : flat.weights()) M.declare(w, *flat.dim(w));
  for (const auto& w : flat.weights()) {
    for (std::size_t i = 0; i < c.rank(); ++i)
      for (char kind : {'e', 'f'})
        if (const Matrix* m = flat.block(kind, i, w)) M.set_block(kind, i, w, *m);
    const auto& basis = st.basis(w);
    for (std::size_t i = 0; i < c.rank(); ++i) {
      Matrix t(basis.size(), basis.size());
      for (std::size_t a = 0; a < basis.size(); ++a)
        for (std::size_t b = 0; b < basis.size(); ++b) {
          if (basis[a].beta != basis[b].beta || basis[a].col != basis[b].col) continue;
          long e = 0;
          for (std::size_t j = 0; j < c.rank(); ++j) e += static_cast<long>(basis[b].beta[j]) * c.root_form(j, i);
          t(a, b) = QRat::q_pow(-e) * torus[i](basis[a].seed, basis[b].seed);
        }
      M.set_block('t', i, w, std::move(t));
    }
  }
  return M;
}

/// Rewrites M in new bases: column k of g.at(w) is the k-th new basis vector of M_w.
inline RawModule change_basis(const RawModule& M, const std::map<Weight, Matrix>& g) {
  const CartanData& c = M.cartan();
  RawModule R(c, M.mode());
  std::map<Weight, Matrix> inv;
  for (const auto& w : M.weights()) {
    const std::size_t d = *M.dim(w);
    R.declare(w, d);
    auto it = g.find(w);
    if (it == g.end()) {
      inv.emplace(w, Matrix::identity(d));
      continue;
    }
    if (it->second.rows() != d || it->second.cols() != d) throw error("basis change at " + w.str() + " has wrong shape");
    inv.emplace(w, it->second.inverse());
  }
  auto fwd = [&](const Weight& w) { return g.count(w) ? g.at(w) : Matrix::identity(*M.dim(w)); };
  for (const auto& w : M.weights())
    for (std::size_t i = 0; i < c.rank(); ++i)
      for (char kind : {'e', 'f', 't'}) {
        const Matrix* m = M.block(kind, i, w);
        if (!m) continue;
        const Weight to = kind == 'e' ? w + c.simple_root(i) : kind == 'f' ? w - c.simple_root(i) : w;
        R.set_block(kind, i, w, inv.at(to) * *m * fwd(w));
      }
  return R;
}

/// Random invertible g_w = permutation * diag(+-q^k) * unit upper triangular,
/// with off-diagonal entries in Q(q).
inline std::map<Weight, Matrix> random_basis_change(const RawModule& M, std::mt19937& rng) {
  std::uniform_int_distribution<int> small(-2, 2), coin(0, 2);
  std::map<Weight, Matrix> g;
  for (const auto& w : M.weights()) {
    const std::size_t d = *M.dim(w);
    std::vector<std::size_t> perm(d);
    for (std::size_t k = 0; k < d; ++k) perm[k] = k;
    std::shuffle(perm.begin(), perm.end(), rng);
    Matrix p(d, d), diag(d, d), u = Matrix::identity(d);
    for (std::size_t k = 0; k < d; ++k) {
      p(perm[k], k) = 1;
      diag(k, k) = QRat::q_pow(small(rng)) * (coin(rng) == 0 ? -1 : 1);
      for (std::size_t j = k + 1; j < d; ++j) {
        const QRat a = QRat(small(rng)) * QRat::q_pow(small(rng)) + QRat(small(rng));
        u(k, j) = coin(rng) == 0 ? a / (QRat::q_pow(2) + QRat(1)) : a;
      }
    }
    g.emplace(w, p * diag * u);
  }
  return g;
}

inline RawModule scramble(const RawModule& M, std::mt19937& rng) { return change_basis(M, random_basis_change(M, rng)); }

// ---------------------------------------------------------------------------
// rho, the projector and maximal vectors.

/// Nonnegative root-lattice vectors of height at most n.
inline std::vector<Weight> degrees_up_to(std::size_t rank, int n) {
  std::vector<Weight> out;
  Weight cur(rank);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == rank) {
      out.push_back(cur);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      cur[i] = k;
      rec(i + 1, left - k);
    }
    cur[i] = 0;
  };
  rec(0, n);
  std::sort(out.begin(), out.end(), [](const Weight& a, const Weight& b) {
    if (height(a) != height(b)) return height(a) < height(b);
    return a < b;
  });
  return out;
}

/// One summand f_{beta,i} (x) e_{beta,i}.m of rho(m).
struct RhoTerm {
  Weight beta;
  std::size_t index;
  WordElem f;  // dual element f_{beta,i}
  ModVec m;    // e_{beta,i}.m
};

class ModuleTools {
 public:
  ModuleTools(PairingSession& s, const WeightModule& M) : s_(&s), M_(&M), S_(s.cartan()) {}

  const CartanData& cartan() const { return s_->cartan(); }

  int bound(const ModVec& m) const {
    int b = 0;
    for (const auto& [w, v] : m.parts) b = std::max(b, M_->nilpotence_bound(w));
    return b;
  }

  /// rho(m) = sum_{beta, i} f_{beta,i} (x) e_{beta,i}.m, exact by nilpotence.
  std::vector<RhoTerm> rho(const ModVec& m) const {
    std::vector<RhoTerm> out;
    for (const auto& beta : degrees_up_to(cartan().rank(), bound(m))) {
      const WeightBlock& blk = s_->weight_block(Brick::BPlus, beta);
      for (std::size_t i = 0; i < blk.rank(); ++i) {
        ModVec em = M_->apply_eword(blk.words[blk.pivot_rows[i]], m);
        if (em.is_zero()) continue;
        out.push_back({beta, i, blk.dual_element(i), std::move(em)});
      }
    }
    return out;
  }

  /// P(m) = sum S(m_(-1)) m_(0) with the braided antipode.
  ModVec project(const ModVec& m) const {
    ModVec r;
    for (const auto& t : rho(m)) r += M_->apply_f(S_(t.f), t.m);
    return r;
  }

  /// Basis of the maximal vectors at weight w (columns).
  Matrix maximal_basis(const Weight& w) const {
    const std::size_t n = M_->dim(w).value_or(0);
    std::vector<Matrix> blocks;
    std::size_t rows = 0;
    for (std::size_t i = 0; i < cartan().rank(); ++i) {
      blocks.push_back(M_->e_matrix(i, w));
      rows += blocks.back().rows();
    }
    Matrix stacked(rows, n);
    std::size_t r0 = 0;
    for (const auto& b : blocks) {
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < n; ++c) stacked(r0 + r, c) = b(r, c);
      r0 += b.rows();
    }
    return stacked.kernel();
  }

  /// Canonical coordinates of a tensor sum_w w (x) m_w in B_q^{--} (x) M:
  /// key (beta, j) holds sum_w phi(e_{R_j}, w) m_w.
  std::map<std::pair<Weight, std::size_t>, ModVec> canonical(const std::map<Word, ModVec>& t) const {
    std::map<std::pair<Weight, std::size_t>, ModVec> out;
    const CartanData& c = cartan();
    for (const auto& [w, mv] : t) {
      if (mv.is_zero()) continue;
      const Weight beta = word_degree(c, Brick::BPlus, w);
      const WeightBlock& blk = s_->weight_block(Brick::BPlus, beta);
      for (std::size_t j = 0; j < blk.rank(); ++j) {
        const QRat g = s_->pair(Brick::BPlus, BrickMono{blk.words[blk.pivot_rows[j]], c.zero()}, BrickMono{w, c.zero()});
        if (g.is_zero()) continue;
        auto& slot = out[{beta, j}];
        slot += mv.scaled(g);
        if (slot.is_zero()) out.erase({beta, j});
      }
    }
    return out;
  }

  std::map<Word, ModVec> rho_tensor(const ModVec& m) const {
    std::map<Word, ModVec> t;
    for (const auto& term : rho(m))
      for (const auto& [w, c] : term.f) t[w] += term.m.scaled(c);
    return t;
  }

  struct Compatibility {
    bool ok = false;
    std::map<Word, ModVec> rho_fm, projected, braided;
  };

  /// rho(f.m) = sum pi(f_1 m_-1) (x) f_2.m_0 = Delta_0(f) rho(m).
  Compatibility compatibility(const WordElem& f, const ModVec& m) const {
    const CartanData& c = cartan();
    Compatibility out;
    out.rho_fm = rho_tensor(M_->apply_f(f, m));
    const auto r = rho(m);
    for (const auto& [w, cw] : f) {
      for (const auto& [legs, cl] : delta_iter(c, Brick::BMinus, BrickMono{w, c.zero()}, 2)) {
        for (const auto& term : r)
          for (const auto& [x, cx] : term.f) {
            long e = 0;
            for (int i : x) e += letter_pairing(c, Brick::BMinus, i, legs[0].torus);
            const ModVec fm = M_->apply_fword(legs[1].word, term.m);
            out.projected[concat(legs[0].word, x)] += fm.scaled(cw * cl * cx * QRat::q_pow(e));
          }
      }
      for (const auto& [legs, cl] : braided_delta0(c, w))
        for (const auto& term : r)
          for (const auto& [x, cx] : term.f) {
            const ModVec ym = M_->apply_fword(legs[1], term.m);
            const QRat k = cw * cl * cx * QRat::q_pow(-fword_form(c, legs[1], x));
            out.braided[concat(legs[0], x)] += ym.scaled(k);
          }
    }
    const auto a = canonical(out.rho_fm);
    out.ok = a == canonical(out.projected) && a == canonical(out.braided);
    return out;
  }

  /// (Delta_0 (x) id) rho(m) == (id (x) rho) rho(m), in canonical coordinates.
  bool coaction_law(const ModVec& m) const {
    const CartanData& c = cartan();
    std::map<std::pair<Word, Word>, ModVec> lhs, rhs;
    for (const auto& term : rho(m)) {
      for (const auto& [legs, cl] : braided_delta0(c, term.f)) lhs[{legs[0], legs[1]}] += term.m.scaled(cl);
      for (const auto& inner : rho(term.m))
        for (const auto& [w1, c1] : term.f)
          for (const auto& [w2, c2] : inner.f) rhs[{w1, w2}] += inner.m.scaled(c1 * c2);
    }
    return canonical2(lhs) == canonical2(rhs);
  }

 private:
  std::map<std::tuple<Weight, std::size_t, Weight, std::size_t>, ModVec> canonical2(
      const std::map<std::pair<Word, Word>, ModVec>& t) const {
    const CartanData& c = cartan();
    std::map<std::tuple<Weight, std::size_t, Weight, std::size_t>, ModVec> out;
    for (const auto& [ws, mv] : t) {
      if (mv.is_zero()) continue;
      const Weight b1 = word_degree(c, Brick::BPlus, ws.first);
      const Weight b2 = word_degree(c, Brick::BPlus, ws.second);
      const WeightBlock& k1 = s_->weight_block(Brick::BPlus, b1);
      const WeightBlock& k2 = s_->weight_block(Brick::BPlus, b2);
      for (std::size_t j1 = 0; j1 < k1.rank(); ++j1) {
        const QRat g1 = s_->pair(Brick::BPlus, BrickMono{k1.words[k1.pivot_rows[j1]], c.zero()}, BrickMono{ws.first, c.zero()});
        if (g1.is_zero()) continue;
        for (std::size_t j2 = 0; j2 < k2.rank(); ++j2) {
          const QRat g2 =
              s_->pair(Brick::BPlus, BrickMono{k2.words[k2.pivot_rows[j2]], c.zero()}, BrickMono{ws.second, c.zero()});
          if (g2.is_zero()) continue;
          auto key = std::make_tuple(b1, j1, b2, j2);
          out[key] += mv.scaled(g1 * g2);
          if (out[key].is_zero()) out.erase(key);
        }
      }
    }
    return out;
  }

  PairingSession* s_;
  const WeightModule* M_;
  mutable BraidedAntipode S_;
};

// ---------------------------------------------------------------------------
// Validation of raw modules.

inline void RawModule::validate(PairingSession& s) const {
  const CartanData& c = c_;
  auto fail = [](const std::string& what, const Weight& w) {
    throw relation_error("relation " + what + " fails on weight space " + w.str());
  };
  for (const auto& [w, d] : dims_) {
    for (std::size_t k = 0; k < d; ++k) {
      const ModVec v = ModVec::unit(w, d, k);
      for (std::size_t i = 0; i < c.rank(); ++i)
        for (std::size_t j = 0; j < c.rank(); ++j) {
          try {
            ModVec lhs = e(i, f(j, v));
            lhs -= f(j, e(i, v)).scaled(QRat::q_pow(-static_cast<long>(c.root_form(i, j))));
            if (i == j) lhs -= v;
            if (!lhs.is_zero())
              fail("e" + std::to_string(i + 1) + " f" + std::to_string(j + 1) + " - q^" +
                       std::to_string(-c.root_form(i, j)) + " f" + std::to_string(j + 1) + " e" + std::to_string(i + 1) +
                       (i == j ? " = 1" : " = 0"),
                   w);
          } catch (const truncation_error&) {
          }
        }
    }
    if (mode_ == Mode::TorusMatrices) check_torus(w, d, fail);
  }
  // Serre-type relations: radical elements of the pairing must act as zero.
  std::set<Weight> degs;
  for (std::size_t i = 0; i < c.rank(); ++i)
    for (std::size_t j = 0; j < c.rank(); ++j) {
      if (i == j) continue;
      Weight beta(c.rank());
      beta[i] = 1 - c.a(i, j);
      beta[j] += 1;
      degs.insert(beta);
    }
  for (const auto& beta : degs) {
    const WeightBlock& blk = s.weight_block(Brick::BPlus, beta);
    const Matrix left = blk.gram.transposed().kernel();  // positive radical
    const Matrix right = blk.gram.kernel();              // negative radical
    for (const auto& [w, d] : dims_)
      for (std::size_t k = 0; k < d; ++k) {
        const ModVec v = ModVec::unit(w, d, k);
        for (std::size_t col = 0; col < left.cols(); ++col) {
          ModVec acc;
          for (std::size_t r = 0; r < blk.words.size(); ++r)
            if (!left(r, col).is_zero()) acc += apply_eword(blk.words[r], v).scaled(left(r, col));
          if (!acc.is_zero()) fail("quantized Serre (e' side) in degree " + beta.str(), w);
        }
        for (std::size_t col = 0; col < right.cols(); ++col) {
          try {
            ModVec acc;
            for (std::size_t r = 0; r < blk.words.size(); ++r)
              if (!right(r, col).is_zero()) acc += apply_fword(blk.words[r], v).scaled(right(r, col));
            if (!acc.is_zero()) fail("quantized Serre (f side) in degree " + beta.str(), w);
          } catch (const truncation_error&) {
          }
        }
      }
  }
}

// ---------------------------------------------------------------------------
// Decomposition.

struct Decomposition {
  std::map<Weight, std::size_t> multiplicities;  // lambda -> dim K(M)_lambda
  std::map<Weight, Matrix> maximal;              // basis of K(M)_lambda (columns, M coordinates)
  /// Phi on M_nu: rows indexed by (lambda, beta, j, k) = coordinate j of the
  /// B^{--} leg in degree beta tensored with maximal vector k at lambda.
  struct Row {
    Weight lambda, beta;
    std::size_t j, k;
  };
  std::map<Weight, std::vector<Row>> rows;
  std::map<Weight, Matrix> phi;
  std::map<Weight, Matrix> psi;  // inverse map, columns indexed like rows
  /// Torus generators restricted to K(M) (torus-matrices mode only).
  std::map<Weight, std::vector<Matrix>> torus;
  bool verified = false;
};

/// Decomposes a raw module window; verifies Psi o Phi = id and Phi o Psi = id.
inline Decomposition decompose(PairingSession& s, const RawModule& M) {
  M.validate(s);
  const CartanData& c = s.cartan();
  ModuleTools tools(s, M);
  Decomposition out;
  for (const auto& w : M.weights()) {
    Matrix k = tools.maximal_basis(w);
    if (k.cols() == 0) continue;
    out.multiplicities[w] = k.cols();
    out.maximal[w] = std::move(k);
  }
  // Coordinates of a vector of K(M)_lambda in the chosen basis.
  auto coords = [&](const Weight& lam, const Vec& v) {
    const Matrix& K = out.maximal.at(lam);
    Matrix aug(K.rows(), K.cols() + 1);
    for (std::size_t r = 0; r < K.rows(); ++r) {
      for (std::size_t cc = 0; cc < K.cols(); ++cc) aug(r, cc) = K(r, cc);
      aug(r, K.cols()) = v[r];
    }
    const auto piv = aug.rref();
    if (!piv.empty() && piv.back() == K.cols()) throw error("internal: projector image is not maximal");
    Vec x(K.cols());
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(r, K.cols());
    return x;
  };
  if (M.mode() == RawModule::Mode::TorusMatrices)
    for (const auto& [lam, K] : out.maximal)
      for (std::size_t i = 0; i < c.rank(); ++i) {
        const Matrix TK = M.torus_matrix(i, lam) * K;
        Matrix X(K.cols(), K.cols());
        for (std::size_t col = 0; col < K.cols(); ++col) {
          Vec v(K.rows());
          for (std::size_t r = 0; r < K.rows(); ++r) v[r] = TK(r, col);
          const Vec x = coords(lam, v);
          for (std::size_t r = 0; r < K.cols(); ++r) X(r, col) = x[r];
        }
        out.torus[lam].push_back(std::move(X));
      }
  bool ok = true;
  for (const auto& nu : M.weights()) {
    const std::size_t n = *M.dim(nu);
    std::vector<Decomposition::Row> rows;
    for (const auto& [lam, K] : out.maximal) {
      const auto beta = c.to_roots(lam - nu);
      if (!beta || !is_nonnegative(*beta)) continue;
      const WeightBlock& blk = s.weight_block(Brick::BPlus, *beta);
      for (std::size_t j = 0; j < blk.rank(); ++j)
        for (std::size_t k = 0; k < K.cols(); ++k) rows.push_back({lam, *beta, j, k});
    }
    Matrix phi(rows.size(), n);
    for (std::size_t col = 0; col < n; ++col) {
      const ModVec m = ModVec::unit(nu, n, col);
      for (const auto& t : tools.rho(m)) {
        const ModVec pm = tools.project(t.m);
        for (const auto& [lam, v] : pm.parts) {
          const Vec x = coords(lam, v);
          for (std::size_t r = 0; r < rows.size(); ++r)
            if (rows[r].lambda == lam && rows[r].beta == t.beta && rows[r].j == t.index) phi(r, col) += x[rows[r].k];
        }
      }
    }
    Matrix psi(n, rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const WeightBlock& blk = s.weight_block(Brick::BPlus, rows[r].beta);
      const Matrix& K = out.maximal.at(rows[r].lambda);
      Vec kv(K.rows());
      for (std::size_t i = 0; i < K.rows(); ++i) kv[i] = K(i, rows[r].k);
      const ModVec img = M.apply_f(blk.dual_element(rows[r].j), ModVec::single(rows[r].lambda, kv));
      if (auto it = img.parts.find(nu); it != img.parts.end())
        for (std::size_t i = 0; i < n; ++i) psi(i, r) = it->second[i];
    }
    if (!(psi * phi == Matrix::identity(n)) || !(phi * psi == Matrix::identity(rows.size()))) ok = false;
    out.rows[nu] = std::move(rows);
    out.phi[nu] = std::move(phi);
    out.psi[nu] = std::move(psi);
  }
  out.verified = ok;
  return out;
}

}  // namespace qboson
