#include <gtest/gtest.h>

#include "support.hpp"

using namespace qt;

namespace {

PairingSession& a1() {
  static PairingSession s(CartanData::preset("A1"));
  return s;
}
PairingSession& a2() {
  static PairingSession s(CartanData::preset("A2"));
  return s;
}

}  // namespace

TEST(Cartan, PresetsAreSymmetrizable) {
  for (const char* name : {"A1", "A2", "B2", "A3"}) {
    const CartanData c = CartanData::preset(name);
    for (std::size_t i = 0; i < c.rank(); ++i)
      for (std::size_t j = 0; j < c.rank(); ++j) EXPECT_EQ(c.root_form(i, j), c.root_form(j, i)) << name;
  }
  EXPECT_THROW(CartanData::preset("G7"), error);
  EXPECT_THROW(CartanData({{2, -1}, {-1, 3}}, {1, 1}), error);
  EXPECT_THROW(CartanData({{2, -2}, {-1, 2}}, {1, 1}), error);
}

TEST(Cartan, InnerProductInFundamentalCoordinates) {
  const CartanData b2 = CartanData::preset("B2");
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(b2.inner(b2.simple_root(i), b2.fundamental(i)), mpq_class(b2.d(i)));
    for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(b2.inner(b2.simple_root(i), b2.simple_root(j)), mpq_class(b2.root_form(i, j)));
  }
  const CartanData a2c = CartanData::preset("A2");
  EXPECT_EQ(a2c.inner(a2c.fundamental(0), a2c.fundamental(0)), mpq_class(2, 3));
  EXPECT_EQ(a2c.to_roots(a2c.fundamental(0)), std::nullopt);
  EXPECT_EQ(*a2c.to_roots(Weight::of({1, 1})), Weight::of({1, 1}));
  EXPECT_EQ(a2c.from_roots(Weight::of({1, 0})), Weight::of({2, -1}));
}

TEST(Weights, ParseAndPrint) {
  EXPECT_EQ(Weight::parse("1,-2", 2), Weight::of({1, -2}));
  EXPECT_EQ(Weight::of({3, 0, -1}).str(), "3,0,-1");
  EXPECT_THROW(Weight::parse("1", 2), error);
  EXPECT_THROW(Weight::parse("x,1", 2), error);
}

TEST(Relations, CommutatorInUqSl2) {
  auto& s = a1();
  EXPECT_EQ(el(s, "E1*F1-F1*E1", Alg::Uq), el(s, "(K1-K1^-1)/(q-q^-1)", Alg::Uq));
  EXPECT_EQ(show(s, el(s, "E1*F1-F1*E1", Alg::Uq)), "(K - K^-1)/(q - q^-1)");
}

TEST(Relations, CommutatorsInUqSl3) {
  auto& s = a2();
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) {
      const std::string E = "E" + std::to_string(i), F = "F" + std::to_string(j);
      const Element lhs = el(s, E + "*" + F + "-" + F + "*" + E, Alg::Uq);
      const std::string K = "K" + std::to_string(i);
      const Element rhs = i == j ? el(s, "(" + K + "-" + K + "^-1)/(q-q^-1)", Alg::Uq) : Element::zero(Alg::Uq);
      EXPECT_EQ(lhs, rhs) << i << j;
    }
}

TEST(Relations, TorusConjugation) {
  auto& s = a2();
  // K_i E_j K_i^-1 = q^{(alpha_i, alpha_j)} E_j
  const CartanData& c = s.cartan();
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      const std::string K = "K" + std::to_string(i + 1), E = "E" + std::to_string(j + 1), F = "F" + std::to_string(j + 1);
      EXPECT_EQ(el(s, K + "*" + E + "*" + K + "^-1", Alg::Uq), el(s, E, Alg::Uq).scaled(QRat::q_pow(c.root_form(i, j))));
      EXPECT_EQ(el(s, K + "*" + F + "*" + K + "^-1", Alg::Uq), el(s, F, Alg::Uq).scaled(QRat::q_pow(-c.root_form(i, j))));
    }
}

TEST(Relations, QBosonSl2) {
  auto& s = a1();
  EXPECT_EQ(el(s, "e1*f1 - q^-2*f1*e1", Alg::Bq), Element::one(s.cartan(), Alg::Bq));
  EXPECT_EQ(el(s, "e1*f1 - q^-2*f1*e1", Alg::Wq), Element::one(s.cartan(), Alg::Wq));
  EXPECT_EQ(show(s, el(s, "e1*f1*e1", Alg::Wq)), "q^-2 * f1*e1^2 + e1");
}

TEST(Relations, QBosonSl3) {
  auto& s = a2();
  const CartanData& c = s.cartan();
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (Alg a : {Alg::Wq, Alg::Bq}) {
        const std::string e = "e" + std::to_string(i + 1), f = "f" + std::to_string(j + 1);
        const Element lhs = el(s, e + "*" + f, a) - el(s, f + "*" + e, a).scaled(QRat::q_pow(-c.root_form(i, j)));
        EXPECT_EQ(lhs, i == j ? Element::one(c, a) : Element::zero(a)) << i << j;
      }
}

TEST(Relations, BosonTorus) {
  auto& s = a1();
  EXPECT_EQ(el(s, "t1*e1*t1^-1", Alg::Bq), el(s, "q^2*e1", Alg::Bq));
  EXPECT_EQ(el(s, "t1*f1*t1^-1", Alg::Bq), el(s, "q^-2*f1", Alg::Bq));
}

TEST(Hopf, CoproductsOfGenerators) {
  auto& s = a1();
  EXPECT_EQ(show(s, eval(s, "delta(E1)")), "E1 ⊗ K^-1 + 1 ⊗ E1");
  EXPECT_EQ(show(s, eval(s, "delta(F1)")), "F1 ⊗ 1 + K' ⊗ F1");
  EXPECT_EQ(show(s, eval(s, "delta(e1)")), "e1 ⊗ 1 + t ⊗ e1");
  EXPECT_EQ(show(s, eval(s, "delta(f1)")), "f1 ⊗ 1 + t' ⊗ f1");
  EXPECT_EQ(show(s, eval(s, "delta(E1^2)")), "E1^2 ⊗ K^-2 + (1 + q^-2) * E1 ⊗ E1*K^-1 + 1 ⊗ E1^2");
}

TEST(Hopf, AntipodesOfGenerators) {
  auto& s = a1();
  EXPECT_EQ(show(s, eval(s, "S(E1)")), "-E1*K");
  EXPECT_EQ(show(s, eval(s, "Sinv(E1)")), "-q^2 * E1*K");
  EXPECT_EQ(eval(s, "S(Sinv(F1*F1*K1'))"), eval(s, "F1*F1*K1'"));
  EXPECT_EQ(eval(s, "eps(E1*K1 + 3*K1)"), Value(QRat(3)));
}

TEST(Hopf, AxiomsOnWordsUpToThree) {
  for (const char* type : {"A1", "A2", "B2"}) {
    PairingSession s(CartanData::preset(type));
    const SuiteReport r = run_suite(s, "hopf-axioms", 3);
    EXPECT_TRUE(r.ok()) << type << ": " << (r.failures.empty() ? "" : r.failures.front());
    EXPECT_GT(r.passed, 100);
  }
}

TEST(Hopf, CoproductIsMultiplicativeOnRandomElements) {
  auto& s = a2();
  std::mt19937 rng(5);
  const std::vector<std::string> letters{"E1", "E2", "K1", "K2^-1"};
  std::uniform_int_distribution<std::size_t> pick(0, letters.size() - 1);
  auto word = [&]() {
    std::string w = letters[pick(rng)];
    for (int k = 0; k < 2; ++k) w += "*" + letters[pick(rng)];
    return w;
  };
  for (int it = 0; it < 20; ++it) {
    const std::string x = word(), y = word();
    const Tensor lhs = std::get<Tensor>(eval(s, "delta(" + x + "*" + y + ")"));
    // product of coproducts, computed leg by leg
    const Tensor dx = std::get<Tensor>(eval(s, "delta(" + x + ")"));
    const Tensor dy = std::get<Tensor>(eval(s, "delta(" + y + ")"));
    Tensor rhs{dx.legs, {}};
    for (const auto& [kx, cx] : dx.terms)
      for (const auto& [ky, cy] : dy.terms) {
        const Element l = multiply(s, Element{Alg::UPlus, LinComb<Mono>(kx[0], 1)}, Element{Alg::UPlus, LinComb<Mono>(ky[0], 1)});
        const Element r = multiply(s, Element{Alg::UPlus, LinComb<Mono>(kx[1], 1)}, Element{Alg::UPlus, LinComb<Mono>(ky[1], 1)});
        for (const auto& [ml, cl] : l.terms)
          for (const auto& [mr, cr] : r.terms) rhs.terms.add({ml, mr}, cx * cy * cl * cr);
      }
    EXPECT_EQ(lhs, rhs) << x << " " << y;
  }
}

TEST(Elements, AlgebraMismatchIsRejected) {
  auto& s = a1();
  EXPECT_THROW(eval(s, "E1 + e1"), error);
  EXPECT_THROW(el(s, "e1", Alg::UPlus), error);
}
