#include <gtest/gtest.h>

#include "support.hpp"

using namespace qt;

namespace {

PairingSession& a1() {
  static PairingSession s(CartanData::preset("A1"));
  return s;
}

using Tensor2 = std::map<Word, ModVec>;

Tensor2 cleaned(Tensor2 t) {
  for (auto it = t.begin(); it != t.end();) it = it->second.is_zero() ? t.erase(it) : std::next(it);
  return t;
}

ModVec random_vector(std::mt19937& rng, const Weight& top, int depth, const WeightModule& M) {
  ModVec m;
  std::uniform_int_distribution<int> coin(0, 2);
  for (int k = 0; k <= depth; ++k) {
    if (coin(rng) == 0) continue;
    const Weight w = top - (2 * k) * Weight::of({1});
    Vec v(*M.dim(w));
    for (auto& x : v) x = random_laurent(rng, 2, 2);
    m.add(w, v, 1);
  }
  return m;
}

RawModule h2_plus_h0() { return StandardModule(a1(), {Weight::of({2}), Weight::of({0})}).materialize(3); }

}  // namespace

TEST(Comodule, WorkedExampleInSl2) {
  auto& s = a1();
  // m = f.v in H(lambda): e'm = v != 0 and e'^2 m = 0
  for (int lambda : {0, 1, 3}) {
    const StandardModule H(s, {Weight::of({lambda})});
    const ModVec v = ModVec::unit(Weight::of({lambda}), 1, 0);
    const ModVec m = H.f(0, v) + H.f(0, v).scaled(QRat::q());
    ModuleTools tools(s, H);
    const ModVec em = H.e(0, m);
    ASSERT_FALSE(em.is_zero());
    ASSERT_TRUE(H.e(0, em).is_zero());
    // 1 (x) fm + f (x) q^-2 fem + f (x) m + f^2 (x) em
    Tensor2 expect;
    expect[{}] += H.f(0, m);
    expect[{0}] += H.f(0, em).scaled(QRat::q_pow(-2));
    expect[{0}] += m;
    expect[{0, 0}] += em;
    const auto cmp = tools.compatibility(WordElem(Word{0}, 1), m);
    EXPECT_TRUE(cmp.ok);
    EXPECT_EQ(cleaned(cmp.rho_fm), cleaned(expect)) << lambda;
    EXPECT_EQ(cleaned(cmp.projected), cleaned(expect)) << lambda;
    EXPECT_EQ(cleaned(cmp.braided), cleaned(expect)) << lambda;
  }
}

TEST(Comodule, RhoMatchesTheSl2Series) {
  auto& s = a1();
  const StandardModule H(s, {Weight::of({2})});
  ModuleTools tools(s, H);
  std::mt19937 rng(4);
  for (int it = 0; it < 10; ++it) {
    const ModVec m = random_vector(rng, Weight::of({2}), 5, H);
    // rho(m) = sum_n q^{n(n-1)/2} f^n/[n]! (x) e^n m
    Tensor2 expect;
    ModVec en = m;
    for (int n = 0; !en.is_zero(); ++n) {
      expect[Word(static_cast<std::size_t>(n), 0)] += en.scaled(QRat::q_pow(n * (n - 1) / 2) / q_fact(n));
      en = H.e(0, en);
    }
    EXPECT_EQ(cleaned(tools.rho_tensor(m)), cleaned(expect));
    EXPECT_TRUE(tools.coaction_law(m));
  }
}

TEST(Projector, Sl2HighestWeightModules) {
  auto& s = a1();
  std::mt19937 rng(99);
  for (int lambda : {0, 1, 2, 5}) {
    const Weight top = Weight::of({lambda});
    const StandardModule H(s, {top});
    ModuleTools tools(s, H);
    ModVec v = ModVec::unit(top, 1, 0);
    EXPECT_EQ(tools.project(v), v);
    ModVec fv = v;
    for (int n = 1; n <= 6; ++n) {
      fv = H.f(0, fv);
      EXPECT_TRUE(tools.project(fv).is_zero()) << lambda << " " << n;
    }
    for (int it = 0; it < 20; ++it) {
      const ModVec m = random_vector(rng, top, 6, H);
      const ModVec pm = tools.project(m);
      EXPECT_EQ(tools.project(pm), pm);
      // P(m) = sum_n (-1)^n q^{-n(n-1)/2} f^n e^n m / [n]!, term by term
      ModVec en = m, series;
      std::vector<ModVec> terms;
      for (int n = 0; !en.is_zero(); ++n) {
        ModVec t = en;
        for (int k = 0; k < n; ++k) t = H.f(0, t);
        terms.push_back(t.scaled(QRat(n % 2 ? -1 : 1) * QRat::q_pow(-n * (n - 1) / 2) / q_fact(n)));
        series += terms.back();
        en = H.e(0, en);
      }
      EXPECT_EQ(pm, series);
      BraidedAntipode S(s.cartan());
      for (const auto& t : tools.rho(m)) {
        const std::size_t n = static_cast<std::size_t>(t.beta[0]);
        ASSERT_LT(n, terms.size());
        EXPECT_EQ(H.apply_f(S(t.f), t.m), terms[n]) << "degree " << n;
      }
    }
  }
}

TEST(Projector, SuiteOnSmallTypes) {
  for (const char* type : {"A1", "A2"}) {
    PairingSession s(CartanData::preset(type));
    const SuiteReport r = run_suite(s, "projector", type[1] == '1' ? 5 : 3);
    EXPECT_TRUE(r.ok()) << type << ": " << (r.failures.empty() ? "" : r.failures.front());
  }
}

TEST(Decompose, DirectSumOfTwoStandardModules) {
  auto& s = a1();
  const Decomposition d = decompose(s, h2_plus_h0());
  EXPECT_TRUE(d.verified);
  EXPECT_EQ(d.multiplicities, (std::map<Weight, std::size_t>{{Weight::of({0}), 1}, {Weight::of({2}), 1}}));
  EXPECT_EQ(multiplicities_text(d.multiplicities), "{ \"2\": 1, \"0\": 1 }");
}

TEST(Decompose, RecoversScrambledModules) {
  auto& s = a1();
  const RawModule M = h2_plus_h0();
  for (unsigned seed : {1u, 2u, 3u, 4u, 5u}) {
    std::mt19937 rng(seed);
    const RawModule X = scramble(M, rng);
    const Decomposition d = decompose(s, X);
    EXPECT_TRUE(d.verified) << seed;
    EXPECT_EQ(multiplicities_text(d.multiplicities), "{ \"2\": 1, \"0\": 1 }") << seed;
  }
}

TEST(Decompose, A2StandardModuleRoundTrip) {
  PairingSession s(CartanData::preset("A2"));
  const RawModule M = StandardModule(s, {Weight::of({1, 1}), Weight::of({0, 0})}).materialize(4);
  const Decomposition d = decompose(s, M);
  EXPECT_TRUE(d.verified);
  EXPECT_EQ(multiplicities_text(d.multiplicities), "{ \"1,1\": 1, \"0,0\": 1 }");
  // and again after a random change of basis, through the JSON format
  std::mt19937 rng(8);
  const RawModule X = module_from_json(json::parse(module_to_json(scramble(M, rng)).dump()));
  const Decomposition dx = decompose(s, X);
  EXPECT_TRUE(dx.verified);
  EXPECT_EQ(dx.multiplicities, d.multiplicities);
}

TEST(Decompose, TorusMatricesMode) {
  auto& s = a1();
  Matrix t(2, 2);
  t(0, 0) = QRat::q();
  t(0, 1) = 1;
  t(1, 1) = QRat::q();
  const RawModule M = standard_torus_module(s, {t}, 3);
  const Decomposition d = decompose(s, M);
  EXPECT_TRUE(d.verified);
  EXPECT_EQ(multiplicities_text(d.multiplicities), "{ \"0\": 2 }");
  ASSERT_EQ(d.torus.at(Weight::of({0})).size(), 1u);
  // the torus on the maximal vectors is conjugate to the Jordan block
  const Matrix& T = d.torus.at(Weight::of({0}))[0];
  EXPECT_FALSE(T == Matrix::identity(2).scaled(QRat::q()));
  EXPECT_EQ((T - Matrix::identity(2).scaled(QRat::q())).rank(), 1u);
}

TEST(Decompose, ZeroModule) {
  auto& s = a1();
  RawModule M(s.cartan());
  const Decomposition d = decompose(s, M);
  EXPECT_TRUE(d.verified);
  EXPECT_TRUE(d.multiplicities.empty());
  EXPECT_EQ(multiplicities_text(d.multiplicities), "{}");
}

TEST(Validate, InconsistentModuleIsRejected) {
  auto& s = a1();
  RawModule M = h2_plus_h0();
  Matrix bad = *M.block('e', 0, Weight::of({-2}));
  bad(0, 0) += 1;
  M.set_block('e', 0, Weight::of({-2}), bad);
  EXPECT_THROW(M.validate(s), relation_error);
  EXPECT_THROW(decompose(s, M), relation_error);
}

TEST(Validate, CorruptedRankTwoBlockIsRejected) {
  PairingSession s(CartanData::preset("A2"));
  RawModule M = StandardModule(s, {Weight::of({0, 0})}).materialize(3);
  EXPECT_NO_THROW(M.validate(s));
  const Weight w = Weight::of({0, 0}) - s.cartan().simple_root(0) - s.cartan().simple_root(1);
  const Matrix* f = M.block('f', 0, w);
  ASSERT_NE(f, nullptr);
  Matrix g = *f;
  for (std::size_t r = 0; r < g.rows(); ++r)
    for (std::size_t c = 0; c < g.cols(); ++c) g(r, c) = g(r, c) * QRat(2);
  M.set_block('f', 0, w, g);
  EXPECT_THROW(M.validate(s), relation_error);
}

TEST(Validate, BlockShapesAreChecked) {
  RawModule M(CartanData::preset("A1"));
  M.declare(Weight::of({0}), 1);
  M.declare(Weight::of({-2}), 2);
  EXPECT_THROW(M.set_block('f', 0, Weight::of({0}), Matrix(1, 1)), error);
  EXPECT_THROW(M.set_block('e', 0, Weight::of({0}), Matrix(1, 1)), error);
  EXPECT_THROW(M.set_block('t', 0, Weight::of({0}), Matrix(1, 1)), error);
}

TEST(ModuleFiles, JsonRoundTrip) {
  const RawModule M = h2_plus_h0();
  const json j = module_to_json(M);
  const RawModule R = module_from_json(j);
  EXPECT_EQ(module_to_json(R).dump(), j.dump());
  json broken = j;
  broken["actions"]["e1"][0]["to"] = "7";
  EXPECT_THROW(module_from_json(broken), error);
  json bad_gen = j;
  bad_gen["actions"]["x1"] = json::array();
  EXPECT_THROW(module_from_json(bad_gen), error);
}
