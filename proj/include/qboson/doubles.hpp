#pragma once

// Quantum double D(A,B) = A (x) B and Heisenberg double H(A,B) = B # A built
// from a pairing session, their quotients U_q and B_q, and the cocycle-twisted
// products on the tensor product Hopf algebra B (x) A.

#include <vector>

#include "algebra.hpp"
#include "pairing.hpp"

namespace qboson {

/// The pair of bricks a double is built from.
struct DoubleCtx {
  Brick pos = Brick::UPlus;
  Brick neg = Brick::UMinus;

  static DoubleCtx u() { return {Brick::UPlus, Brick::UMinus}; }
  static DoubleCtx b() { return {Brick::BPlus, Brick::BMinus}; }
};

/// Two-component combinations: [a, b] in a quantum double, [b, a] in a Heisenberg double.
using PairElem = LinComb<Mono>;

namespace detail {

inline BrickElem single(const BrickMono& m, const QRat& c = 1) { return BrickElem(m, c); }

/// Delta of a two-component monomial in the tensor-product coalgebra, k legs.
inline LinComb<std::vector<Mono>> pair_delta(const CartanData& c, Brick first, Brick second, const Mono& m, int k) {
  LinComb<std::vector<Mono>> out;
  const auto d0 = delta_iter(c, first, m[0], k);
  const auto d1 = delta_iter(c, second, m[1], k);
  for (const auto& [l0, c0] : d0)
    for (const auto& [l1, c1] : d1) {
      std::vector<Mono> key;
      for (int j = 0; j < k; ++j) key.push_back(Mono{l0[static_cast<std::size_t>(j)], l1[static_cast<std::size_t>(j)]});
      out.add(key, c0 * c1);
    }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Quantum double.

/// (a (x) b)(a' (x) b') = sum phi(S^-1(a'_1), b_1) phi(a'_3, b_3) a a'_2 (x) b_2 b'.
inline PairElem dphi_mul(PairingSession& s, DoubleCtx ctx, const PairElem& x, const PairElem& y) {
  const CartanData& c = s.cartan();
  PairElem r;
  for (const auto& [mx, cx] : x)
    for (const auto& [my, cy] : y) {
      const auto da = delta_iter(c, ctx.pos, my[0], 3);
      const auto db = delta_iter(c, ctx.neg, mx[1], 3);
      for (const auto& [al, ac] : da) {
        const BrickElem sinv = antipode_inv(c, ctx.pos, al[0]);
        for (const auto& [bl, bc] : db) {
          const QRat p3 = s.pair(ctx.pos, al[2], bl[2]);
          if (p3.is_zero()) continue;
          const QRat p1 = s.pair(ctx.pos, sinv, detail::single(bl[0]));
          if (p1.is_zero()) continue;
          auto [ea, ma] = brick_mul(c, ctx.pos, mx[0], al[1]);
          auto [eb, mb] = brick_mul(c, ctx.neg, bl[1], my[1]);
          r.add(Mono{ma, mb}, cx * cy * ac * bc * p1 * p3 * QRat::q_pow(ea + eb));
        }
      }
    }
  return r;
}

/// Tensor-product coproduct of a double element; legs are again [a, b].
inline LinComb<std::vector<Mono>> dphi_delta(const CartanData& c, DoubleCtx ctx, const PairElem& x) {
  LinComb<std::vector<Mono>> r;
  for (const auto& [m, cm] : x) r += detail::pair_delta(c, ctx.pos, ctx.neg, m, 2).scaled(cm);
  return r;
}

/// Identifies K' with K: [E-word K_l, F-word K'_m] -> q^{(wt F-word, l)} [E-word, F-word K_{l+m}].
inline PairElem uq_identify(const CartanData& c, const PairElem& x) {
  PairElem r;
  for (const auto& [m, cm] : x) {
    long e = 0;
    for (int i : m[1].word) e += letter_pairing(c, Brick::UMinus, i, m[0].torus);
    r.add(Mono{BrickMono{m[0].word, c.zero()}, BrickMono{m[1].word, m[0].torus + m[1].torus}}, cm * QRat::q_pow(e));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Heisenberg double.

/// (b # a)(b' # a') = sum phi(a_1, b'_1) b b'_2 # a_2 a'.
inline PairElem hphi_mul(PairingSession& s, DoubleCtx ctx, const PairElem& x, const PairElem& y) {
  const CartanData& c = s.cartan();
  PairElem r;
  for (const auto& [mx, cx] : x)
    for (const auto& [my, cy] : y) {
      const auto da = delta_iter(c, ctx.pos, mx[1], 2);
      const auto db = delta_iter(c, ctx.neg, my[0], 2);
      for (const auto& [al, ac] : da)
        for (const auto& [bl, bc] : db) {
          const QRat p = s.pair(ctx.pos, al[0], bl[0]);
          if (p.is_zero()) continue;
          auto [eb, mb] = brick_mul(c, ctx.neg, mx[0], bl[1]);
          auto [ea, ma] = brick_mul(c, ctx.pos, al[1], my[1]);
          r.add(Mono{mb, ma}, cx * cy * ac * bc * p * QRat::q_pow(ea + eb));
        }
    }
  return r;
}

/// Identifies t' with t: [f-word t'_n, e-word t_l] -> q^{-(wt e-word, l)} [f-word t_{n+l}, e-word].
inline PairElem bq_identify(const CartanData& c, const PairElem& x) {
  PairElem r;
  for (const auto& [m, cm] : x) {
    long e = 0;
    for (int i : m[1].word) e -= letter_pairing(c, Brick::BPlus, i, m[1].torus);
    r.add(Mono{BrickMono{m[0].word, m[0].torus + m[1].torus}, BrickMono{m[1].word, c.zero()}}, cm * QRat::q_pow(e));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Element-level dispatch.

inline Element multiply(PairingSession& s, const Element& x, const Element& y) {
  x.require_same(y);
  const CartanData& c = s.cartan();
  switch (x.alg) {
    case Alg::DPhi: return Element{x.alg, dphi_mul(s, DoubleCtx::u(), x.terms, y.terms)};
    case Alg::DPhiBoson: return Element{x.alg, dphi_mul(s, DoubleCtx::b(), x.terms, y.terms)};
    case Alg::HPhi: return Element{x.alg, hphi_mul(s, DoubleCtx::b(), x.terms, y.terms)};
    case Alg::Uq: return Element{x.alg, uq_identify(c, dphi_mul(s, DoubleCtx::u(), x.terms, y.terms))};
    case Alg::Bq: return Element{x.alg, bq_identify(c, hphi_mul(s, DoubleCtx::b(), x.terms, y.terms))};
    default: return brick_algebra_mul(c, x, y);
  }
}

inline Element power(PairingSession& s, const Element& x, long n) {
  if (n < 0) throw error("negative powers of algebra elements are only defined for torus letters");
  Element r = Element::one(s.cartan(), x.alg);
  for (long k = 0; k < n; ++k) r = multiply(s, r, x);
  return r;
}

/// Normal form in U_q of a quantum-double element (K' replaced by K).
inline Element uq_normal_form(const CartanData& c, const Element& x) {
  if (x.alg != Alg::DPhi) throw error("uq_normal_form expects a dphi element");
  return Element{Alg::Uq, uq_identify(c, x.terms)};
}

/// Normal form in B_q of a Heisenberg-double element (t' replaced by t).
inline Element bq_normal_form(const CartanData& c, const Element& x) {
  if (x.alg != Alg::HPhi) throw error("bq_normal_form expects an hphi element");
  return Element{Alg::Bq, bq_identify(c, x.terms)};
}

/// Coproduct for bricks, quantum doubles and U_q.
inline Tensor coproduct(const CartanData& c, const Element& x) {
  if (is_brick(x.alg)) return delta(c, x);
  if (x.alg == Alg::DPhi || x.alg == Alg::DPhiBoson || x.alg == Alg::Uq) {
    const DoubleCtx ctx = x.alg == Alg::DPhiBoson ? DoubleCtx::b() : DoubleCtx::u();
    const auto d = dphi_delta(c, ctx, x.terms);
    Tensor t{{x.alg, x.alg}, {}};
    if (x.alg != Alg::Uq) {
      t.terms = d;
      return t;
    }
    // Uq monomials are dphi monomials with the torus on the b side; identify each leg.
    for (const auto& [legs, cl] : d) {
      const auto l0 = uq_identify(c, PairElem(legs[0], 1));
      const auto l1 = uq_identify(c, PairElem(legs[1], 1));
      for (const auto& [m0, c0] : l0)
        for (const auto& [m1, c1] : l1) t.terms.add({m0, m1}, cl * c0 * c1);
    }
    return t;
  }
  throw error("no coproduct on " + alg_name(x.alg));
}

// ---------------------------------------------------------------------------
// Cocycle twists on H = B (x) A (monomials [b, a]).

class Twisted {
 public:
  Twisted(PairingSession& s, DoubleCtx ctx) : s_(&s), ctx_(ctx) {}

  const CartanData& cartan() const { return s_->cartan(); }

  /// sigma(b (x) a, b' (x) a') = eps(b) phi(a, b') eps(a').
  QRat sigma(const Mono& x, const Mono& y) const {
    if (!x[0].word.empty() || !y[1].word.empty()) return 0;
    return s_->pair(ctx_.pos, x[1], y[0]);
  }

  /// sigma^-1(b (x) a, b' (x) a') = eps(b) phi(a, S(b')) eps(a').
  QRat sigma_inv(const Mono& x, const Mono& y) const {
    if (!x[0].word.empty() || !y[1].word.empty()) return 0;
    return s_->pair(ctx_.pos, detail::single(x[1]), antipode(cartan(), ctx_.neg, y[0]));
  }

  /// Plain product in the tensor product algebra B (x) A.
  PairElem plain_mul(const PairElem& x, const PairElem& y) const {
    PairElem r;
    for (const auto& [mx, cx] : x)
      for (const auto& [my, cy] : y) {
        auto [eb, mb] = brick_mul(cartan(), ctx_.neg, mx[0], my[0]);
        auto [ea, ma] = brick_mul(cartan(), ctx_.pos, mx[1], my[1]);
        r.add(Mono{mb, ma}, cx * cy * QRat::q_pow(ea + eb));
      }
    return r;
  }

  LinComb<std::vector<Mono>> delta(const Mono& m, int k) const {
    return detail::pair_delta(cartan(), ctx_.neg, ctx_.pos, m, k);
  }

  /// x . y = sum sigma(x_1, y_1) x_2 y_2 sigma^-1(x_3, y_3).
  PairElem bullet(const PairElem& x, const PairElem& y) const {
    PairElem r;
    for (const auto& [mx, cx] : x)
      for (const auto& [my, cy] : y) {
        const auto dx = delta(mx, 3);
        const auto dy = delta(my, 3);
        for (const auto& [lx, clx] : dx)
          for (const auto& [ly, cly] : dy) {
            const QRat s1 = sigma(lx[0], ly[0]);
            if (s1.is_zero()) continue;
            const QRat s3 = sigma_inv(lx[2], ly[2]);
            if (s3.is_zero()) continue;
            r += plain_mul(PairElem(lx[1], 1), PairElem(ly[1], 1)).scaled(cx * cy * clx * cly * s1 * s3);
          }
      }
    return r;
  }

  /// x o y = sum sigma(x_1, y_1) x_2 y_2.
  PairElem circ(const PairElem& x, const PairElem& y) const {
    PairElem r;
    for (const auto& [mx, cx] : x)
      for (const auto& [my, cy] : y) {
        const auto dx = delta(mx, 2);
        const auto dy = delta(my, 2);
        for (const auto& [lx, clx] : dx)
          for (const auto& [ly, cly] : dy) {
            const QRat s1 = sigma(lx[0], ly[0]);
            if (s1.is_zero()) continue;
            r += plain_mul(PairElem(lx[1], 1), PairElem(ly[1], 1)).scaled(cx * cy * clx * cly * s1);
          }
      }
    return r;
  }

  /// Psi(a (x) b) = (1 (x) a) . (b (x) 1), from the quantum double to H^sigma.
  PairElem psi(const PairElem& d) const {
    PairElem r;
    const BrickMono ua = BrickMono::unit(cartan().rank());
    for (const auto& [m, cm] : d)
      r += bullet(PairElem(Mono{ua, m[0]}, 1), PairElem(Mono{m[1], ua}, 1)).scaled(cm);
    return r;
  }

  /// gamma^-1(b (x) a) = (1 (x) S(a)) o (S(b) (x) 1).
  PairElem gamma_inv(const Mono& m) const {
    const BrickMono u = BrickMono::unit(cartan().rank());
    PairElem left, right;
    for (const auto& [a, ca] : antipode(cartan(), ctx_.pos, m[1])) left.add(Mono{u, a}, ca);
    for (const auto& [b, cb] : antipode(cartan(), ctx_.neg, m[0])) right.add(Mono{b, u}, cb);
    return circ(left, right);
  }

  /// Miyashita-Ulbrich action of a quantum-double element d on y in the
  /// Heisenberg double: sum gamma(Psi(d)_1) o y o gamma^-1(Psi(d)_2).
  PairElem mu_action(const PairElem& d, const PairElem& y) const {
    PairElem r;
    for (const auto& [m, cm] : psi(d))
      for (const auto& [legs, cl] : delta(m, 2))
        r += circ(circ(PairElem(legs[0], 1), y), gamma_inv(legs[1])).scaled(cm * cl);
    return r;
  }

 private:
  PairingSession* s_;
  DoubleCtx ctx_;
};

}  // namespace qboson
