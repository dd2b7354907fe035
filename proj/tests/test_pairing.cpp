#include <gtest/gtest.h>

#include "support.hpp"

using namespace qt;

namespace {

QRat pair_text(PairingSession& s, const std::string& a, const std::string& b) {
  return std::get<QRat>(eval(s, "pair(" + a + ", " + b + ")"));
}

std::string power_word(const std::string& letter, int n) {
  std::string w = letter;
  for (int k = 1; k < n; ++k) w += "*" + letter;
  return w;
}

}  // namespace

TEST(Pairing, Sl2PowersMatchClosedForms) {
  PairingSession s(CartanData::preset("A1"));
  const QRat q = QRat::q();
  for (int n = 1; n <= 6; ++n) {
    // boson letters: q^{-n(n-1)/2} [n]!, quantum group letters: q^{n(n-1)/2} [n]! / (q^-1 - q)^n
    EXPECT_EQ(pair_text(s, power_word("e1", n), power_word("f1", n)), q.pow(-n * (n - 1) / 2) * q_fact(n)) << n;
    EXPECT_EQ(pair_text(s, power_word("E1", n), power_word("F1", n)),
              q.pow(n * (n - 1) / 2) * q_fact(n) / (q.inverse() - q).pow(n))
        << n;
  }
  EXPECT_EQ(pair_text(s, "e1^2", "f1^2").str(), "1 + q^-2");
}

TEST(Pairing, TorusAndOrthogonality) {
  PairingSession s(CartanData::preset("A2"));
  EXPECT_EQ(pair_text(s, "K1", "K2'"), QRat::q_pow(1));
  EXPECT_EQ(pair_text(s, "K1", "K1'"), QRat::q_pow(-2));
  EXPECT_EQ(pair_text(s, "t{1,0}", "t'{1,0}"), QRat::q_pow(mpq_class(-2, 3)));
  EXPECT_TRUE(pair_text(s, "E1", "F2").is_zero());
  EXPECT_TRUE(pair_text(s, "E1*E2", "F1").is_zero());
  EXPECT_TRUE(pair_text(s, "E1*K1", "F1*K2'").is_zero() == false);
}

TEST(Pairing, AntipodeAdjointness) {
  PairingSession s(CartanData::preset("A1"));
  const std::vector<std::string> pos{"1", "E1", "K1", "E1*K1^-1", "E1^2", "E1^2*K1", "E1^3"};
  const std::vector<std::string> neg{"1", "F1", "K1'", "F1*K1'", "F1^2", "F1^2*K1'^-1", "F1^3"};
  for (const auto& a : pos)
    for (const auto& b : neg) {
      const Element ea = el(s, a, Alg::UPlus), eb = el(s, b, Alg::UMinus);
      EXPECT_EQ(s.pair(antipode(s.cartan(), ea), eb), s.pair(ea, antipode_inv(s.cartan(), eb))) << a << " " << b;
    }
}

TEST(Pairing, SuiteOnSmallTypes) {
  for (const char* type : {"A1", "A2", "B2"}) {
    PairingSession s(CartanData::preset(type));
    const SuiteReport r = run_suite(s, "pairing", 3);
    EXPECT_TRUE(r.ok()) << type << ": " << (r.failures.empty() ? "" : r.failures.front());
  }
}

TEST(Radical, QuantumSerreElementA2) {
  PairingSession s(CartanData::preset("A2"));
  for (const char* letters : {"EF", "ef"}) {
    const std::string E(1, letters[0]);
    const std::string serre = E + "1^2*" + E + "2 - (q+q^-1)*" + E + "1*" + E + "2*" + E + "1 + " + E + "2*" + E + "1^2";
    const Alg a = letters[0] == 'E' ? Alg::UPlus : Alg::BPlus;
    EXPECT_TRUE(s.in_radical(el(s, serre, a))) << serre;
    EXPECT_FALSE(s.in_radical(el(s, E + "1^2*" + E + "2", a)));
    const std::string F(1, letters[1]);
    const Alg b = letters[0] == 'E' ? Alg::UMinus : Alg::BMinus;
    const std::string fserre = F + "1^2*" + F + "2 - (q+q^-1)*" + F + "1*" + F + "2*" + F + "1 + " + F + "2*" + F + "1^2";
    EXPECT_TRUE(s.in_radical(el(s, fserre, b))) << fserre;
  }
}

TEST(Radical, GramRanks) {
  PairingSession s(CartanData::preset("A2"));
  const WeightBlock& blk = s.weight_block(Brick::UPlus, Weight::of({2, 1}));
  EXPECT_EQ(blk.words.size(), 3u);
  EXPECT_EQ(blk.rank(), 2u);
  EXPECT_EQ(s.weight_block(Brick::BPlus, Weight::of({2, 1})).rank(), 2u);
  EXPECT_EQ(s.weight_block(Brick::UPlus, Weight::of({1, 1})).rank(), 2u);
  // B2: (1 - a_12) alpha_1 + alpha_2 = 3 alpha_1 + alpha_2 has 4 words and rank 3
  PairingSession b2(CartanData::preset("B2"));
  const WeightBlock& bb = b2.weight_block(Brick::UPlus, Weight::of({3, 1}));
  EXPECT_EQ(bb.words.size(), 4u);
  EXPECT_EQ(bb.rank(), 3u);
}

TEST(Radical, DualBasisIsDual) {
  PairingSession s(CartanData::preset("A2"));
  for (const auto& beta : {Weight::of({1, 1}), Weight::of({2, 1}), Weight::of({2, 2})}) {
    const WeightBlock& blk = s.weight_block(Brick::BPlus, beta);
    for (std::size_t i = 0; i < blk.rank(); ++i)
      for (std::size_t j = 0; j < blk.rank(); ++j) {
        const BrickMono e{blk.words[blk.pivot_rows[j]], s.cartan().zero()};
        BrickElem f;
        for (const auto& [w, c] : blk.dual_element(i)) f.add(BrickMono{w, s.cartan().zero()}, c);
        EXPECT_EQ(s.pair(Brick::BPlus, BrickElem(e, 1), f), QRat(i == j ? 1 : 0)) << beta.str();
      }
  }
}

TEST(Pairing, CacheIsTransparent) {
  PairingSession cached(CartanData::preset("B2"));
  PairingSession plain(CartanData::preset("B2"), false);
  for (const auto& beta : {Weight::of({2, 1}), Weight::of({1, 2})}) {
    const auto words = words_of_degree(beta);
    for (const auto& a : words)
      for (const auto& b : words) {
        const BrickMono x{a, cached.cartan().zero()}, y{b, cached.cartan().zero()};
        EXPECT_EQ(cached.pair(Brick::UPlus, x, y), plain.pair(Brick::UPlus, x, y));
      }
  }
}
