#pragma once

#include <optional>
#include <random>
#include <string>

#include <qboson/qboson.hpp>

namespace qt {

using namespace qboson;

inline Value eval(PairingSession& s, const std::string& text, std::optional<Alg> alg = std::nullopt,
                  const WeightModule* M = nullptr) {
  Evaluator ev(s, alg, M);
  return ev.eval(parse_expr(text));
}

inline Element el(PairingSession& s, const std::string& text, std::optional<Alg> alg = std::nullopt) {
  Evaluator ev(s, alg);
  return ev.eval_element(parse_expr(text), alg);
}

inline std::string show(PairingSession& s, const Value& v) { return to_string(s.cartan(), v); }

/// Small random Laurent polynomial with integer coefficients.
inline QRat random_laurent(std::mt19937& rng, int terms = 3, int spread = 3) {
  std::uniform_int_distribution<int> coef(-4, 4), ex(-spread, spread);
  QRat r;
  for (int k = 0; k < terms; ++k) r += QRat(coef(rng)) * QRat::q_pow(ex(rng));
  return r;
}

/// Random element of Q(q): a ratio of random Laurent polynomials.
inline QRat random_rational(std::mt19937& rng) {
  QRat d;
  while (d.is_zero()) d = random_laurent(rng, 2, 2);
  return random_laurent(rng) / d;
}

}  // namespace qt
