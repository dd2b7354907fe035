#include <gtest/gtest.h>

#include "support.hpp"

using namespace qt;

namespace {

/// Random expression text over the grammar; depth-limited.
std::string random_expr(std::mt19937& rng, int depth) {
  static const std::vector<std::string> atoms{"E1", "F2", "e1", "f1", "K", "K1", "K1'", "K{1,0}", "K'{0,1}", "t",
                                              "t1", "t'", "t{1,-1}", "q", "3", "17", "v{1,0}[2]", "v{0,0}"};
  static const std::vector<std::string> calls{"pair", "delta", "delta0", "S", "Sinv", "eps", "P", "rho"};
  std::uniform_int_distribution<int> kind(0, depth <= 0 ? 0 : 8);
  std::uniform_int_distribution<std::size_t> atom(0, atoms.size() - 1), call(0, calls.size() - 1);
  std::uniform_int_distribution<int> ex(-3, 3);
  switch (kind(rng)) {
    case 0: return atoms[atom(rng)];
    case 1: return random_expr(rng, depth - 1) + " + " + random_expr(rng, depth - 1);
    case 2: return random_expr(rng, depth - 1) + " - " + random_expr(rng, depth - 1);
    case 3: return random_expr(rng, depth - 1) + "*" + random_expr(rng, depth - 1);
    case 4: return random_expr(rng, depth - 1) + " @ " + random_expr(rng, depth - 1);
    case 5: return "-" + random_expr(rng, depth - 1);
    case 6: {
      const int e = ex(rng);
      return "(" + random_expr(rng, depth - 1) + ")^" + (e == 0 ? "(1/2)" : std::to_string(e));
    }
    case 7: {
      const std::string c = calls[call(rng)];
      if (c == "pair") return "pair(" + random_expr(rng, depth - 1) + ", " + random_expr(rng, depth - 1) + ")";
      return c + "(" + random_expr(rng, depth - 1) + ")";
    }
    default: return "act(" + random_expr(rng, depth - 1) + "; " + random_expr(rng, depth - 1) + ")";
  }
}

std::size_t error_column(const std::string& text) {
  try {
    parse_expr(text);
  } catch (const parse_error& e) {
    return e.column();
  }
  return 0;
}

}  // namespace

TEST(Parser, RoundTripOnGeneratedExpressions) {
  std::mt19937 rng(12345);
  for (int it = 0; it < 200; ++it) {
    const std::string text = random_expr(rng, 4);
    const Node n = parse_expr(text);
    const std::string printed = print_expr(n);
    EXPECT_EQ(parse_expr(printed), n) << text << " -> " << printed;
    EXPECT_EQ(print_expr(parse_expr(printed)), printed);
  }
}

TEST(Parser, Precedence) {
  EXPECT_EQ(print_expr(parse_expr("E1 + F1*E1^2")), "E1 + F1*E1^2");
  EXPECT_EQ(print_expr(parse_expr("(E1 + F1)*E1")), "(E1 + F1)*E1");
  EXPECT_EQ(print_expr(parse_expr("E1 @ F1 + 1")), "E1 ⊗ F1 + 1");
  EXPECT_EQ(print_expr(parse_expr("-E1^2")), "-E1^2");
  EXPECT_EQ(print_expr(parse_expr("(-E1)^2")), "(-E1)^2");
  EXPECT_EQ(print_expr(parse_expr("q^(1/2) * K{1,0}")), "q^(1/2)*K{1,0}");
  EXPECT_EQ(print_expr(parse_expr("E1 - (F1 - K)")), "E1 - (F1 - K)");
  EXPECT_EQ(print_expr(parse_expr("act(E1; e1)")), "act(E1; e1)");
}

TEST(Parser, ErrorsCarryPositions) {
  EXPECT_EQ(error_column("E1 *"), 5u);
  EXPECT_EQ(error_column("E1 + G2"), 6u);
  EXPECT_EQ(error_column("E0"), 3u);
  EXPECT_GT(error_column("pair(E1)"), 0u);
  EXPECT_GT(error_column("E1^x"), 0u);
  EXPECT_GT(error_column("v{1,0"), 0u);
  EXPECT_EQ(error_column("E1 )"), 4u);
}

TEST(Evaluator, InfersTheAlgebra) {
  PairingSession s(CartanData::preset("A1"));
  EXPECT_EQ(std::get<Element>(eval(s, "E1*K1")).alg, Alg::UPlus);
  EXPECT_EQ(std::get<Element>(eval(s, "F1*K1'")).alg, Alg::UMinus);
  EXPECT_EQ(std::get<Element>(eval(s, "E1*F1")).alg, Alg::Uq);
  EXPECT_EQ(std::get<Element>(eval(s, "e1*f1")).alg, Alg::Wq);
  EXPECT_EQ(std::get<Element>(eval(s, "e1*f1*t1")).alg, Alg::Bq);
  EXPECT_EQ(std::get<Element>(eval(s, "f1^2")).alg, Alg::BMinus);
  EXPECT_THROW(eval(s, "E1*e1"), error);
  EXPECT_EQ(std::get<QRat>(eval(s, "(q^2 - q^-2)/(q - q^-1)")), QRat::q() + QRat::q_pow(-1));
}

TEST(Evaluator, PrintedElementsReparse) {
  PairingSession s(CartanData::preset("A2"));
  std::mt19937 rng(31);
  const std::vector<std::string> gens{"E1", "E2", "F1", "F2", "K1", "K2^-1"};
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  for (int it = 0; it < 30; ++it) {
    std::string w = gens[pick(rng)] + "*" + gens[pick(rng)] + "*" + gens[pick(rng)];
    w += " + (q - 2)/(q^2 + 1) * " + gens[pick(rng)];
    const Element x = el(s, w, Alg::Uq);
    EXPECT_EQ(el(s, show(s, x), Alg::Uq), x) << w << " -> " << show(s, x);
  }
}

TEST(Evaluator, ModuleVectors) {
  PairingSession s(CartanData::preset("A1"));
  const RawModule M = StandardModule(s, {Weight::of({2}), Weight::of({0})}).materialize(3);
  EXPECT_EQ(show(s, eval(s, "rho(v{0}[1])", std::nullopt, &M)), "f1 ⊗ v{2}[1] + 1 ⊗ v{0}[1]");
  EXPECT_EQ(show(s, eval(s, "P(v{0}[1])", std::nullopt, &M)), "0");
  EXPECT_EQ(show(s, eval(s, "P(v{0}[2])", std::nullopt, &M)), "v{0}[2]");
  EXPECT_EQ(show(s, eval(s, "act(f1; v{2})", std::nullopt, &M)), "v{0}[1]");
  EXPECT_THROW(eval(s, "v{0}[3]", std::nullopt, &M), error);
  EXPECT_THROW(eval(s, "v{0}[1]"), error);
}
