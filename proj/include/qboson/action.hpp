#pragma once

// Schroedinger representations of the quantum double on A, B and on the
// Heisenberg double, the comodule structure, Yetter-Drinfel'd checks and the
// braiding, including the braided construction of W_q.

#include <vector>

#include "doubles.hpp"

namespace qboson {

using PairTensor = LinComb<std::vector<Mono>>;

/// Action of D(A,B) (monomials [a, b]) on A, B and H(A,B) (monomials [b, a]).
class DoubleAction {
 public:
  DoubleAction(PairingSession& s, DoubleCtx ctx = DoubleCtx::u()) : s_(&s), ctx_(ctx) {}

  const CartanData& cartan() const { return s_->cartan(); }
  DoubleCtx ctx() const noexcept { return ctx_; }
  PairingSession& session() const { return *s_; }

  // -- on A ----------------------------------------------------------------

  /// (a (x) 1).x = sum a_1 x S(a_2).
  BrickElem ad_a(const BrickMono& a, const BrickElem& x) const {
    const CartanData& c = cartan();
    BrickElem r;
    for (const auto& [legs, cl] : delta_iter(c, ctx_.pos, a, 2)) {
      const BrickElem left = brick_mul(c, ctx_.pos, BrickElem(legs[0], cl), x);
      r += brick_mul(c, ctx_.pos, left, antipode(c, ctx_.pos, legs[1]));
    }
    return r;
  }

  /// (1 (x) b).x = sum phi(x_1, S(b)) x_2.
  BrickElem coad_a(const BrickMono& b, const BrickElem& x) const {
    const CartanData& c = cartan();
    const BrickElem sb = antipode(c, ctx_.neg, b);
    BrickElem r;
    for (const auto& [m, cm] : x)
      for (const auto& [legs, cl] : delta_iter(c, ctx_.pos, m, 2)) {
        const QRat p = s_->pair(ctx_.pos, BrickElem(legs[0], 1), sb);
        if (!p.is_zero()) r.add(legs[1], cm * cl * p);
      }
    return r;
  }

  BrickElem act_a(const PairElem& d, const BrickElem& x) const {
    BrickElem r;
    for (const auto& [m, cm] : d) r += ad_a(m[0], coad_a(m[1], x)).scaled(cm);
    return r;
  }

  // -- on B ----------------------------------------------------------------

  /// (a (x) 1).y = sum phi(a, y_1) y_2.
  BrickElem coad_b(const BrickMono& a, const BrickElem& y) const {
    const CartanData& c = cartan();
    BrickElem r;
    for (const auto& [m, cm] : y)
      for (const auto& [legs, cl] : delta_iter(c, ctx_.neg, m, 2)) {
        const QRat p = s_->pair(ctx_.pos, a, legs[0]);
        if (!p.is_zero()) r.add(legs[1], cm * cl * p);
      }
    return r;
  }

  /// (1 (x) b).y = sum b_1 y S(b_2).
  BrickElem ad_b(const BrickMono& b, const BrickElem& y) const {
    const CartanData& c = cartan();
    BrickElem r;
    for (const auto& [legs, cl] : delta_iter(c, ctx_.neg, b, 2)) {
      const BrickElem left = brick_mul(c, ctx_.neg, BrickElem(legs[0], cl), y);
      r += brick_mul(c, ctx_.neg, left, antipode(c, ctx_.neg, legs[1]));
    }
    return r;
  }

  BrickElem act_b(const PairElem& d, const BrickElem& y) const {
    BrickElem r;
    for (const auto& [m, cm] : d) r += coad_b(m[0], ad_b(m[1], y)).scaled(cm);
    return r;
  }

  // -- on H ----------------------------------------------------------------

  /// Diagonal action (a (x) b).(b' # a') = sum (a_1 (x) b_1).b' # (a_2 (x) b_2).a'.
  PairElem act_h(const PairElem& d, const PairElem& h) const {
    const CartanData& c = cartan();
    PairElem r;
    for (const auto& [m, cm] : d)
      for (const auto& [legs, cl] : dphi_delta(c, ctx_, PairElem(m, 1)))
        for (const auto& [hm, ch] : h) {
          const BrickElem yb = act_b(PairElem(legs[0], 1), BrickElem(hm[0], 1));
          if (yb.is_zero()) continue;
          const BrickElem xa = act_a(PairElem(legs[1], 1), BrickElem(hm[1], 1));
          for (const auto& [bm, bc] : yb)
            for (const auto& [am, ac] : xa) r.add(Mono{bm, am}, cm * cl * ch * bc * ac);
        }
    return r;
  }

  /// delta(b # a) = sum ((1 (x) b_1)(a_1 (x) 1)) (x) (b_2 # a_2); legs [D, H].
  PairTensor coaction(const PairElem& h) const {
    const CartanData& c = cartan();
    const BrickMono u = BrickMono::unit(c.rank());
    PairTensor r;
    for (const auto& [m, cm] : h)
      for (const auto& [bl, cb] : delta_iter(c, ctx_.neg, m[0], 2))
        for (const auto& [al, ca] : delta_iter(c, ctx_.pos, m[1], 2)) {
          const PairElem d = dphi_mul(*s_, ctx_, PairElem(Mono{u, bl[0]}, 1), PairElem(Mono{al[0], u}, 1));
          for (const auto& [dm, dc] : d) r.add({dm, Mono{bl[1], al[1]}}, cm * cb * ca * dc);
        }
    return r;
  }

  /// Yetter-Drinfel'd compatibility for d in D and v in H.
  bool yd_check(const PairElem& d, const PairElem& v) const {
    const CartanData& c = cartan();
    PairTensor lhs, rhs;
    for (const auto& [dm, dc] : d)
      for (const auto& [legs, cl] : dphi_delta(c, ctx_, PairElem(dm, 1))) {
        const QRat k = dc * cl;
        for (const auto& [vl, cv] : coaction(v)) {
          const PairElem left = dphi_mul(*s_, ctx_, PairElem(legs[0], 1), PairElem(vl[0], 1));
          const PairElem right = act_h(PairElem(legs[1], 1), PairElem(vl[1], 1));
          for (const auto& [x, cx] : left)
            for (const auto& [y, cy] : right) lhs.add({x, y}, k * cv * cx * cy);
        }
        const PairElem w = act_h(PairElem(legs[0], 1), v);
        for (const auto& [wl, cw] : coaction(w)) {
          const PairElem left = dphi_mul(*s_, ctx_, PairElem(wl[0], 1), PairElem(legs[1], 1));
          for (const auto& [x, cx] : left) rhs.add({x, wl[1]}, k * cw * cx);
        }
      }
    return lhs == rhs;
  }

  /// sigma(v (x) w) = sum v_(-1).w (x) v_(0).
  PairTensor braiding(const Mono& v, const Mono& w) const {
    PairTensor r;
    for (const auto& [vl, cv] : coaction(PairElem(v, 1)))
      for (const auto& [x, cx] : act_h(PairElem(vl[0], 1), PairElem(w, 1))) r.add({x, vl[1]}, cv * cx);
    return r;
  }

  /// Applies sigma to legs (i, i+1) of a tensor of H elements.
  PairTensor braid_at(const PairTensor& t, std::size_t i) const {
    PairTensor r;
    for (const auto& [key, ck] : t)
      for (const auto& [pair, cp] : braiding(key[i], key[i + 1])) {
        auto nk = key;
        nk[i] = pair[0];
        nk[i + 1] = pair[1];
        r.add(nk, ck * cp);
      }
    return r;
  }

 private:
  PairingSession* s_;
  DoubleCtx ctx_;
};

// ---------------------------------------------------------------------------
// Conversions between the boson bricks and the U bricks.

/// Rewrites a Heisenberg-double element between brick families, componentwise.
inline PairElem convert_pair(const CartanData& c, Brick first, Brick second, const PairElem& x) {
  PairElem r;
  for (const auto& [m, cm] : x) {
    const BrickElem a = convert_brick(c, first, BrickElem(m[0], 1));
    const BrickElem b = convert_brick(c, second, BrickElem(m[1], 1));
    for (const auto& [ma, ca] : a)
      for (const auto& [mb, cb] : b) r.add(Mono{ma, mb}, cm * ca * cb);
  }
  return r;
}

/// Lifts a U_q element to the quantum double over the U bricks (torus on K').
inline PairElem lift_uq(const Element& u) {
  if (u.alg == Alg::DPhi) return u.terms;
  if (u.alg != Alg::Uq) throw error("expected a uq or dphi element, got " + alg_name(u.alg));
  return u.terms;
}

/// U_q(g) acting on W_q(g) through the diagonal action on the Heisenberg double.
inline Element uq_act_on_wq(PairingSession& s, const Element& u, const Element& w) {
  if (w.alg != Alg::Wq) throw error("uq_act_on_wq expects a wq element");
  const CartanData& c = s.cartan();
  DoubleAction act(s, DoubleCtx::u());
  const PairElem hu = convert_pair(c, Brick::BMinus, Brick::BPlus, w.terms);
  const PairElem res = act.act_h(lift_uq(u), hu);
  Element out{Alg::Wq, convert_pair(c, Brick::UMinus, Brick::UPlus, res)};
  for (const auto& [m, cm] : out.terms)
    if (!m[0].torus.is_zero() || !m[1].torus.is_zero()) throw error("internal: action left W_q");
  return out;
}

/// Product in B_q^{--} (x) B_q^{++} twisted by the braiding:
/// (f (x) e)(f' (x) e') = f sigma(e (x) f') e'. Keys are (f-word, e'-word).
inline LinComb<WordPair> braided_weyl_mul(PairingSession& s, const LinComb<WordPair>& x,
                                          const LinComb<WordPair>& y) {
  const CartanData& c = s.cartan();
  DoubleAction act(s, DoubleCtx::u());
  const BrickMono u = BrickMono::unit(c.rank());
  LinComb<WordPair> r;
  for (const auto& [px, cx] : x)
    for (const auto& [py, cy] : y) {
      const BrickElem e = convert_brick(c, Brick::BPlus, BrickElem(BrickMono{px.second, c.zero()}, 1));
      const BrickElem f = convert_brick(c, Brick::BMinus, BrickElem(BrickMono{py.first, c.zero()}, 1));
      for (const auto& [em, ec] : e)
        for (const auto& [fm, fc] : f)
          for (const auto& [legs, cl] : act.braiding(Mono{u, em}, Mono{fm, u})) {
            // legs[0] lies in B, legs[1] in A; return to boson letters.
            const BrickElem bb = convert_brick(c, Brick::UMinus, BrickElem(legs[0][0], 1));
            const BrickElem aa = convert_brick(c, Brick::UPlus, BrickElem(legs[1][1], 1));
            if (!legs[0][1].is_unit() || !legs[1][0].is_unit()) throw error("internal: braiding left B (x) A");
            for (const auto& [bm, bc] : bb)
              for (const auto& [am, ac] : aa) {
                if (!bm.torus.is_zero() || !am.torus.is_zero()) throw error("internal: braiding produced a torus");
                r.add(WordPair{concat(px.first, bm.word), concat(am.word, py.second)}, cx * cy * ec * fc * cl * bc * ac);
              }
          }
    }
  return r;
}

/// The isomorphism B_q^{--} (x) B_q^{++} -> W_q, f (x) e |-> f e; identical on normal forms.
inline Element weyl_iso(const CartanData& c, const LinComb<WordPair>& x) {
  Element r{Alg::Wq, {}};
  for (const auto& [p, cp] : x) r.terms.add(Mono{BrickMono{p.first, c.zero()}, BrickMono{p.second, c.zero()}}, cp);
  return r;
}

inline LinComb<WordPair> weyl_iso_inv(const Element& w) {
  if (w.alg != Alg::Wq) throw error("weyl_iso_inv expects a wq element");
  LinComb<WordPair> r;
  for (const auto& [m, cm] : w.terms) r.add(WordPair{m[0].word, m[1].word}, cm);
  return r;
}

}  // namespace qboson
