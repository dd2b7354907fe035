#include <gtest/gtest.h>

#include "support.hpp"

using namespace qt;

namespace {

/// Random product of k generator tokens.
std::string random_word(std::mt19937& rng, const std::vector<std::string>& gens, int k) {
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::string w = gens[pick(rng)];
  for (int j = 1; j < k; ++j) w += "*" + gens[pick(rng)];
  return w;
}

struct Case {
  Alg alg;
  std::vector<std::string> gens;
};

std::vector<Case> cases() {
  return {
      {Alg::DPhi, {"E1", "E2", "F1", "F2", "K1", "K2'^-1", "K1'"}},
      {Alg::Uq, {"E1", "E2", "F1", "F2", "K1", "K2^-1"}},
      {Alg::DPhiBoson, {"e1", "e2", "f1", "f2", "t1", "t2'"}},
      {Alg::HPhi, {"e1", "e2", "f1", "f2", "t1^-1", "t2'"}},
      {Alg::Bq, {"e1", "e2", "f1", "f2", "t1", "t2^-1"}},
      {Alg::Wq, {"e1", "e2", "f1", "f2"}},
  };
}

/// H-side generators [b, a] of the Heisenberg double over the U bricks.
std::vector<PairElem> h_generators(const CartanData& c) {
  std::vector<PairElem> g;
  const BrickMono u = BrickMono::unit(c.rank());
  for (std::size_t i = 0; i < c.rank(); ++i) {
    const int k = static_cast<int>(i);
    g.emplace_back(Mono{BrickMono::letter(c.rank(), k), u}, 1);
    g.emplace_back(Mono{u, BrickMono::letter(c.rank(), k)}, 1);
    g.emplace_back(Mono{BrickMono::torus_only(c.simple_root(i)), u}, 1);
    g.emplace_back(Mono{u, BrickMono::torus_only(-c.simple_root(i))}, 1);
  }
  return g;
}

}  // namespace

TEST(Doubles, ProductsAreAssociative) {
  PairingSession s(CartanData::preset("A2"));
  std::mt19937 rng(2024);
  for (const auto& cs : cases())
    for (int it = 0; it < 12; ++it) {
      const Element x = el(s, random_word(rng, cs.gens, 2), cs.alg);
      const Element y = el(s, random_word(rng, cs.gens, 2), cs.alg);
      const Element z = el(s, random_word(rng, cs.gens, 1), cs.alg);
      EXPECT_EQ(multiply(s, multiply(s, x, y), z), multiply(s, x, multiply(s, y, z))) << alg_name(cs.alg);
    }
}

TEST(Doubles, UnitAndLinearity) {
  PairingSession s(CartanData::preset("A1"));
  for (const auto& cs : cases()) {
    std::vector<std::string> gens;
    for (const auto& g : cs.gens)
      if (g.find('2') == std::string::npos) gens.push_back(g);
    std::mt19937 rng(9);
    const Element x = el(s, random_word(rng, gens, 3), cs.alg);
    const Element one = Element::one(s.cartan(), cs.alg);
    EXPECT_EQ(multiply(s, one, x), x);
    EXPECT_EQ(multiply(s, x, one), x);
    const Element y = el(s, random_word(rng, gens, 2), cs.alg);
    EXPECT_EQ(multiply(s, x + y, x), multiply(s, x, x) + multiply(s, y, x));
  }
}

TEST(Doubles, DriftOfKAndKPrimeInDphi) {
  PairingSession s(CartanData::preset("A1"));
  EXPECT_EQ(el(s, "K1'*E1*K1'^-1", Alg::DPhi), el(s, "q^2*E1", Alg::DPhi));
  EXPECT_EQ(el(s, "K1*F1*K1^-1", Alg::DPhi), el(s, "q^-2*F1", Alg::DPhi));
  // the two tori commute and K K'^-1 is central
  EXPECT_EQ(el(s, "K1*K1'", Alg::DPhi), el(s, "K1'*K1", Alg::DPhi));
  for (const char* g : {"E1", "F1"})
    EXPECT_EQ(el(s, std::string("K1*K1'^-1*") + g, Alg::DPhi), el(s, std::string(g) + "*K1*K1'^-1", Alg::DPhi));
}

TEST(Doubles, QuotientMatchesIdentificationOfTori) {
  PairingSession s(CartanData::preset("A2"));
  std::mt19937 rng(77);
  const std::vector<std::string> gens{"E1", "E2", "F1", "F2", "K1", "K2'"};
  for (int it = 0; it < 20; ++it) {
    const std::string w = random_word(rng, gens, 3);
    EXPECT_EQ(uq_normal_form(s.cartan(), el(s, w, Alg::DPhi)), el(s, w, Alg::Uq)) << w;
  }
  const std::vector<std::string> bgens{"e1", "e2", "f1", "f2", "t1", "t2'"};
  for (int it = 0; it < 20; ++it) {
    const std::string w = random_word(rng, bgens, 3);
    EXPECT_EQ(bq_normal_form(s.cartan(), el(s, w, Alg::HPhi)), el(s, w, Alg::Bq)) << w;
  }
}

TEST(Twist, DoubleEmbedsIntoTwistedTensorProduct) {
  for (const char* type : {"A1", "A2"}) {
    PairingSession s(CartanData::preset(type));
    const CartanData& c = s.cartan();
    const DoubleCtx ctx = DoubleCtx::u();
    const Twisted tw(s, ctx);
    const auto gens = detail::double_generators(c, ctx);
    for (const auto& [nx, x] : gens)
      for (const auto& [ny, y] : gens)
        EXPECT_EQ(tw.psi(dphi_mul(s, ctx, x, y)), tw.bullet(tw.psi(x), tw.psi(y))) << type << " " << nx << " " << ny;
    // psi is a coalgebra map into the tensor-product coalgebra B (x) A
    for (const auto& [nx, x] : gens) {
      LinComb<std::vector<Mono>> lhs, rhs;
      for (const auto& [m, cm] : tw.psi(x)) lhs += tw.delta(m, 2).scaled(cm);
      for (const auto& [legs, cl] : dphi_delta(c, ctx, x))
        for (const auto& [m0, c0] : tw.psi(PairElem(legs[0], 1)))
          for (const auto& [m1, c1] : tw.psi(PairElem(legs[1], 1))) rhs.add({m0, m1}, cl * c0 * c1);
      EXPECT_EQ(lhs, rhs) << type << " " << nx;
    }
  }
}

TEST(Twist, HeisenbergDoubleIsTheTwistedAlgebra) {
  for (const char* type : {"A1", "A2"}) {
    PairingSession s(CartanData::preset(type));
    const Twisted tw(s, DoubleCtx::u());
    const auto gens = h_generators(s.cartan());
    for (const auto& x : gens)
      for (const auto& y : gens) EXPECT_EQ(tw.circ(x, y), hphi_mul(s, DoubleCtx::u(), x, y)) << type;
  }
}
