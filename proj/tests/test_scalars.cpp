#include <gtest/gtest.h>

#include "support.hpp"

using namespace qt;

namespace {

QRat q() { return QRat::q(); }

/// Gaussian binomial at a rational point from the product formula in q^2.
mpq_class numeric_binom(long n, long k, const mpq_class& x) {
  // [n choose k] = q^{-k(n-k)} prod_{i=1..k} (1 - q^{2(n-k+i)})/(1 - q^{2i})
  auto pw = [](mpq_class b, long e) {
    mpq_class r = 1;
    if (e < 0) {
      b = 1 / b;
      e = -e;
    }
    while (e-- > 0) r *= b;
    return r;
  };
  mpq_class r = pw(x, -k * (n - k));
  for (long i = 1; i <= k; ++i) r *= (1 - pw(x, 2 * (n - k + i))) / (1 - pw(x, 2 * i));
  return r;
}

}  // namespace

TEST(QRat, NormalFormAndPrinting) {
  EXPECT_EQ((q() + q().inverse()).str(), "q + q^-1");
  EXPECT_EQ((q() * q() + 1 + q().pow(-2)).str(), "q^2 + 1 + q^-2");
  EXPECT_EQ((QRat(-1) / (q() - q().inverse())).str(), "-1/(q - q^-1)");
  EXPECT_EQ(QRat(0).str(), "0");
  EXPECT_EQ(QRat::q_pow(mpq_class(1, 2)).str(), "q^(1/2)");
  EXPECT_TRUE(((q() * q() - 1) / (q() - 1) - (q() + 1)).is_zero());
}

TEST(QRat, FractionalExponentsShareARoot) {
  const QRat h = QRat::q_pow(mpq_class(1, 2));
  EXPECT_EQ(h * h, q());
  const QRat t = QRat::q_pow(mpq_class(1, 3));
  EXPECT_EQ((h * t).pow(6), q().pow(5));
  EXPECT_EQ((h * h).exp_denominator(), 1);
}

TEST(QRat, InverseOfZeroThrows) { EXPECT_THROW(QRat(0).inverse(), math_error); }

TEST(QRat, FieldAxiomsOnRandomValues) {
  std::mt19937 rng(7);
  for (int it = 0; it < 200; ++it) {
    const QRat a = random_rational(rng), b = random_rational(rng), c = random_rational(rng);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    if (!b.is_zero()) EXPECT_EQ((a / b) * b, a);
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(QRat, NumericEvaluationAgreesWithSymbolic) {
  std::mt19937 rng(11);
  const std::vector<mpq_class> points{mpq_class(2), mpq_class(3, 2), mpq_class(-5, 7), mpq_class(11, 3)};
  for (int it = 0; it < 100; ++it) {
    const QRat a = random_rational(rng), b = random_rational(rng);
    for (const auto& x : points) {
      mpq_class va, vb;
      try {
        va = a.eval_at(x, 1);
        vb = b.eval_at(x, 1);
      } catch (const math_error&) {
        continue;
      }
      EXPECT_EQ((a + b).eval_at(x, 1), va + vb);
      EXPECT_EQ((a * b).eval_at(x, 1), va * vb);
      if (vb != 0 && !b.is_zero()) EXPECT_EQ((a / b).eval_at(x, 1), va / vb);
    }
  }
}

TEST(QRat, QBinomialMatchesProductFormula) {
  const std::vector<mpq_class> points{mpq_class(2), mpq_class(-3, 2), mpq_class(5, 7)};
  for (long n = 0; n <= 12; ++n)
    for (long k = 0; k <= n; ++k)
      for (const auto& x : points) EXPECT_EQ(q_binom(n, k).eval_at(x, 1), numeric_binom(n, k, x)) << n << " " << k;
}

TEST(QRat, QIntegersAndFactorials) {
  EXPECT_EQ(q_int(0), QRat(0));
  EXPECT_EQ(q_int(1), QRat(1));
  EXPECT_EQ(q_int(3).str(), "q^2 + 1 + q^-2");
  EXPECT_EQ(q_int(-2), -q_int(2));
  for (long n = 1; n <= 10; ++n) {
    EXPECT_EQ(q_int(n) * (q() - q().inverse()), q().pow(n) - q().pow(-n));
    EXPECT_EQ(q_fact(n), q_fact(n - 1) * q_int(n));
  }
}

TEST(QBinomial, PascalRuleForTheCoproduct) {
  // [n+1, p+1] = q^{p+1} [n, p+1] + q^{p-n} [n, p]
  for (long n = 0; n <= 12; ++n)
    for (long p = 0; p <= n; ++p) {
      const QRat rhs = q().pow(p + 1) * (p + 1 <= n ? q_binom(n, p + 1) : QRat(0)) + q().pow(p - n) * q_binom(n, p);
      EXPECT_EQ(q_binom(n + 1, p + 1), rhs) << n << " " << p;
    }
}

TEST(QBinomial, AlternatingSumForTheAntipode) {
  // sum_i (-1)^i q^{-i(r-1)} [r, i] = 0 for r >= 1
  for (long r = 1; r <= 12; ++r) {
    QRat sum;
    for (long i = 0; i <= r; ++i) sum += QRat(i % 2 ? -1 : 1) * q().pow(-i * (r - 1)) * q_binom(r, i);
    EXPECT_TRUE(sum.is_zero()) << r;
  }
}

TEST(ParseScalar, ReadsPrintedForms) {
  std::mt19937 rng(3);
  for (int it = 0; it < 100; ++it) {
    const QRat a = random_rational(rng);
    EXPECT_EQ(parse_scalar(a.str()), a) << a.str();
  }
  EXPECT_EQ(parse_scalar("q^(1/2)*q^(1/2)"), q());
  EXPECT_THROW(parse_scalar("E1"), error);
}
