#include <gtest/gtest.h>

#include "support.hpp"

using namespace qt;

namespace {

PairingSession& a1() {
  static PairingSession s(CartanData::preset("A1"));
  return s;
}

Element act_text(PairingSession& s, const std::string& u, const std::string& x) {
  return std::get<Element>(eval(s, "act(" + u + "; " + x + ")"));
}

Element h(PairingSession& s, const std::string& text) { return el(s, text, Alg::HPhi); }

std::string pw(const std::string& x, int n) { return x + "^" + std::to_string(n); }

QRat ratio(long top, long bottom) { return q_fact(top) / q_fact(bottom); }

}  // namespace

// Closed forms for the sl2 quantum double acting on the Heisenberg double.
TEST(ActionFamilies, EOnEPrime) {
  auto& s = a1();
  for (int n = 1; n <= 5; ++n)
    for (int m = 1; m <= n; ++m) {
      const QRat c = ratio(n + m - 1, n - 1) * QRat::q_pow(mpq_class(-(2 * n + 3 + m) * m, 2));
      EXPECT_EQ(act_text(s, pw("E1", m), pw("e1", n)), h(s, pw("e1", n + m)).scaled(c)) << m << " " << n;
    }
}

TEST(ActionFamilies, EOnF) {
  auto& s = a1();
  const QRat k = (QRat::q_pow(-1) - QRat::q()).inverse();
  for (int n = 1; n <= 5; ++n)
    for (int m = 1; m <= n; ++m) {
      const QRat c = k.pow(m) * ratio(n, n - m) * QRat::q_pow(mpq_class((2 * n - m - 1) * m, 2));
      const Element expect = m == n ? Element::one(s.cartan(), Alg::HPhi).scaled(c) : h(s, pw("f1", n - m)).scaled(c);
      EXPECT_EQ(act_text(s, pw("E1", m), pw("f1", n)), expect) << m << " " << n;
    }
}

TEST(ActionFamilies, FOnEPrime) {
  auto& s = a1();
  for (int n = 1; n <= 5; ++n)
    for (int m = 1; m <= n; ++m) {
      const QRat c = QRat(m % 2 ? -1 : 1) * ratio(n, n - m) * QRat::q_pow(mpq_class((2 * n + 3 - m) * m, 2));
      const Element expect = m == n ? Element::one(s.cartan(), Alg::HPhi).scaled(c) : h(s, pw("e1", n - m)).scaled(c);
      EXPECT_EQ(act_text(s, pw("F1", m), pw("e1", n)), expect) << m << " " << n;
    }
}

TEST(ActionFamilies, FOnF) {
  auto& s = a1();
  for (int n = 1; n <= 5; ++n)
    for (int m = 1; m <= n; ++m) {
      QRat c(1);
      for (int i = 0; i < m; ++i) c *= QRat(1) - QRat::q_pow(-2 * (n + i));
      EXPECT_EQ(act_text(s, pw("F1", m), pw("f1", n)), h(s, pw("f1", n + m)).scaled(c)) << m << " " << n;
    }
}

TEST(ActionFamilies, TorusActsByWeight) {
  auto& s = a1();
  EXPECT_EQ(act_text(s, "K1", "e1"), h(s, "q^2*e1"));
  EXPECT_EQ(act_text(s, "K1'", "e1"), h(s, "q^2*e1"));
  EXPECT_EQ(act_text(s, "K1", "f1"), h(s, "q^-2*f1"));
  EXPECT_EQ(act_text(s, "K1'", "f1"), h(s, "q^-2*f1"));
}

TEST(Obstruction, ActionDoesNotDescendToBq) {
  auto& s = a1();
  // E.t = (1 - q^2) e t^2 with e = t^-1 e' / (q^-1 - q)
  const Element expect = h(s, "(1 - q^2)/(q^-1 - q) * t1^-1*e1*t1^2");
  EXPECT_EQ(act_text(s, "E1", "t1"), expect);
  EXPECT_EQ(show(s, expect), "q^-1 * e1*t");
  EXPECT_TRUE(act_text(s, "E1", "t1'").is_zero());
}

TEST(Schroedinger, MiyashitaUlbrichAgreesOnGeneratorPairs) {
  for (const char* type : {"A1", "A2"}) {
    PairingSession s(CartanData::preset(type));
    const CartanData& c = s.cartan();
    const DoubleCtx ctx = DoubleCtx::u();
    const Twisted tw(s, ctx);
    DoubleAction act(s, ctx);
    const BrickMono u = BrickMono::unit(c.rank());
    std::vector<PairElem> hs;
    for (std::size_t i = 0; i < c.rank(); ++i) {
      const int k = static_cast<int>(i);
      hs.emplace_back(Mono{BrickMono::letter(c.rank(), k), u}, 1);
      hs.emplace_back(Mono{u, BrickMono::letter(c.rank(), k)}, 1);
      hs.emplace_back(Mono{BrickMono::torus_only(c.simple_root(i)), u}, 1);
      hs.emplace_back(Mono{u, BrickMono::torus_only(c.simple_root(i))}, 1);
    }
    for (const auto& [name, d] : detail::double_generators(c, ctx))
      for (const auto& y : hs) EXPECT_EQ(tw.mu_action(d, y), act.act_h(d, y)) << type << " " << name;
  }
}

TEST(YetterDrinfeld, SuitesPass) {
  for (const char* type : {"A1", "A2"}) {
    PairingSession s(CartanData::preset(type));
    for (const char* suite : {"yd", "braiding", "module-algebra"}) {
      const SuiteReport r = run_suite(s, suite, type[1] == '1' ? 4 : 3);
      EXPECT_TRUE(r.ok()) << type << " " << suite << ": " << (r.failures.empty() ? "" : r.failures.front());
    }
  }
}

TEST(Braiding, WeylRelationsFromTheBraiding) {
  PairingSession s(CartanData::preset("A2"));
  const CartanData& c = s.cartan();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const LinComb<WordPair> e(WordPair{{}, {i}}, 1), f(WordPair{{j}, {}}, 1);
      LinComb<WordPair> expect(WordPair{{j}, {i}}, QRat::q_pow(-c.root_form(static_cast<std::size_t>(i), static_cast<std::size_t>(j))));
      if (i == j) expect.add(WordPair{{}, {}}, 1);
      EXPECT_EQ(braided_weyl_mul(s, e, f), expect) << i << j;
      EXPECT_EQ(weyl_iso(c, braided_weyl_mul(s, e, f)), multiply(s, weyl_iso(c, e), weyl_iso(c, f)));
    }
}

TEST(ModuleAlgebra, UqActsOnWq) {
  auto& s = a1();
  const Element x = el(s, "f1*e1^2", Alg::Wq);
  const Element y = el(s, "e1*f1", Alg::Wq);
  // E.(xy) = sum (E_1.x)(E_2.y) with Delta(E) = E (x) K^-1 + 1 (x) E
  const Element lhs = uq_act_on_wq(s, el(s, "E1", Alg::Uq), multiply(s, x, y));
  const Element rhs = multiply(s, uq_act_on_wq(s, el(s, "E1", Alg::Uq), x), uq_act_on_wq(s, el(s, "K1^-1", Alg::Uq), y)) +
                      multiply(s, x, uq_act_on_wq(s, el(s, "E1", Alg::Uq), y));
  EXPECT_EQ(lhs, rhs);
  EXPECT_EQ(show(s, eval(s, "act(E1; e1)", Alg::Wq)), "q^-3 * e1^2");
}
