#pragma once

// Expression language shared by the command line and module files:
// parsing, printing of parse trees, and evaluation against a session.

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "action.hpp"
#include "category_o.hpp"
#include "doubles.hpp"

namespace qboson {

/// Lexical or syntax error; carries a 1-based line and column.
class parse_error : public error {
 public:
  parse_error(const std::string& msg, std::size_t line, std::size_t col)
      : error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg), line_(line), col_(col) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return col_; }

 private:
  std::size_t line_, col_;
};

struct Node {
  enum class Kind { Num, Q, Gen, Vec, Neg, Add, Sub, Mul, Div, Pow, Tensor, Call };
  Kind kind = Kind::Num;
  std::string text;  // digits, generator token, vector token or call name
  long exp_num = 1, exp_den = 1;
  std::vector<Node> kids;
  std::size_t col = 1;

  friend bool operator==(const Node& a, const Node& b) {
    return a.kind == b.kind && a.text == b.text && a.exp_num == b.exp_num && a.exp_den == b.exp_den &&
           a.kids == b.kids;
  }
};

namespace detail {

inline const std::set<std::string>& call_names() {
  static const std::set<std::string> names{"pair", "delta", "delta0", "S", "Sinv", "eps", "act", "P", "rho"};
  return names;
}

class Parser {
 public:
  explicit Parser(std::string text) : s_(std::move(text)) {}

  Node parse() {
    Node n = expr();
    skip();
    if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < s_.size(); ++i) {
      if (s_[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(s_[i]) & 0xC0) != 0x80) {
        ++col;
      }
    }
    throw parse_error(msg, line, col);
  }

  std::size_t column() const {
    std::size_t col = 1;
    for (std::size_t i = 0; i < pos_; ++i) {
      if (s_[i] == '\n') col = 1;
      else if ((static_cast<unsigned char>(s_[i]) & 0xC0) != 0x80) ++col;
    }
    return col;
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(const std::string& tok) {
    skip();
    return s_.compare(pos_, tok.size(), tok) == 0;
  }
  bool accept(const std::string& tok) {
    if (!peek(tok)) return false;
    pos_ += tok.size();
    return true;
  }
  void expect(const std::string& tok) {
    if (!accept(tok)) fail("expected '" + tok + "'");
  }

  static Node make(Node::Kind k, std::vector<Node> kids, std::size_t col) {
    Node n;
    n.kind = k;
    n.kids = std::move(kids);
    n.col = col;
    return n;
  }

  Node expr() {
    Node left = tensor();
    while (true) {
      const std::size_t c = column();
      if (accept("+")) left = make(Node::Kind::Add, {std::move(left), tensor()}, c);
      else if (accept("-")) left = make(Node::Kind::Sub, {std::move(left), tensor()}, c);
      else return left;
    }
  }

  Node tensor() {
    Node left = product();
    while (true) {
      const std::size_t c = column();
      if (accept("⊗") || accept("@")) left = make(Node::Kind::Tensor, {std::move(left), product()}, c);
      else return left;
    }
  }

  Node product() {
    Node left = unary();
    while (true) {
      const std::size_t c = column();
      if (accept("*")) left = make(Node::Kind::Mul, {std::move(left), unary()}, c);
      else if (accept("/")) left = make(Node::Kind::Div, {std::move(left), unary()}, c);
      else return left;
    }
  }

  Node unary() {
    const std::size_t c = column();
    if (accept("-")) return make(Node::Kind::Neg, {unary()}, c);
    return power();
  }

  long integer() {
    skip();
    bool neg = false;
    if (pos_ < s_.size() && s_[pos_] == '-') {
      neg = true;
      ++pos_;
    }
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    if (pos_ - start > 9) fail("integer too large");
    const long v = std::stol(s_.substr(start, pos_ - start));
    return neg ? -v : v;
  }

  Node power() {
    Node base = atom();
    const std::size_t c = column();
    if (!accept("^")) return base;
    Node n = make(Node::Kind::Pow, {std::move(base)}, c);
    if (accept("(")) {
      n.exp_num = integer();
      if (accept("/")) {
        n.exp_den = integer();
        if (n.exp_den <= 0) fail("exponent denominator must be positive");
      }
      expect(")");
    } else {
      n.exp_num = integer();
    }
    return n;
  }

  std::string weight_braces() {
    const std::size_t start = pos_;
    if (s_[pos_] != '{') fail("expected '{'");
    ++pos_;
    while (pos_ < s_.size() && s_[pos_] != '}') {
      const char ch = s_[pos_];
      if (!std::isdigit(static_cast<unsigned char>(ch)) && ch != ',' && ch != '-' && ch != ' ')
        fail("invalid character in weight");
      ++pos_;
    }
    if (pos_ >= s_.size()) fail("unterminated weight");
    ++pos_;
    std::string w = s_.substr(start, pos_ - start);
    w.erase(std::remove(w.begin(), w.end(), ' '), w.end());
    return w;
  }

  Node atom() {
    skip();
    const std::size_t c = column();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char ch = s_[pos_];
    if (ch == '(') {
      ++pos_;
      Node n = expr();
      expect(")");
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      Node n = make(Node::Kind::Num, {}, c);
      n.text = s_.substr(start, pos_ - start);
      n.text.erase(0, std::min(n.text.find_first_not_of('0'), n.text.size() - 1));
      return n;
    }
    if (!std::isalpha(static_cast<unsigned char>(ch))) fail("unexpected '" + std::string(1, ch) + "'");
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string name = s_.substr(start, pos_ - start);
    if (name == "delta" && pos_ < s_.size() && s_[pos_] == '0') {
      ++pos_;
      name = "delta0";
    }
    if (call_names().count(name) && peek("(")) return call(name, c);
    if (name == "q") return make(Node::Kind::Q, {}, c);
    if (name == "v") {
      Node n = make(Node::Kind::Vec, {}, c);
      if (pos_ >= s_.size() || s_[pos_] != '{') fail("expected '{' after v");
      n.text = "v" + weight_braces();
      if (pos_ < s_.size() && s_[pos_] == '[') {
        ++pos_;
        const long k = integer();
        if (k < 1) fail("vector index must be positive");
        if (pos_ >= s_.size() || s_[pos_] != ']') fail("expected ']'");
        ++pos_;
        n.text += "[" + std::to_string(k) + "]";
      } else {
        n.text += "[1]";
      }
      return n;
    }
    Node n = make(Node::Kind::Gen, {}, c);
    if (name == "E" || name == "F" || name == "e" || name == "f") {
      const std::size_t d0 = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (d0 == pos_) fail("generator " + name + " needs an index");
      const long idx = std::stol(s_.substr(d0, pos_ - d0));
      if (idx < 1) fail("generator indices start at 1");
      n.text = name + std::to_string(idx);
      return n;
    }
    if (name == "K" || name == "t") {
      std::string tok = name;
      if (pos_ < s_.size() && s_[pos_] == '\'') {
        ++pos_;
        tok += "'";
        if (pos_ < s_.size() && s_[pos_] == '{') tok += weight_braces();
      } else if (pos_ < s_.size() && s_[pos_] == '{') {
        tok += weight_braces();
      } else if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        const std::size_t d0 = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        const long idx = std::stol(s_.substr(d0, pos_ - d0));
        if (idx < 1) fail("generator indices start at 1");
        tok += std::to_string(idx);
        if (pos_ < s_.size() && s_[pos_] == '\'') {
          ++pos_;
          tok += "'";
        }
      }
      n.text = tok;
      return n;
    }
    pos_ = start;
    fail("unknown identifier '" + name + "'");
  }

  Node call(const std::string& name, std::size_t c) {
    expect("(");
    Node n = make(Node::Kind::Call, {}, c);
    n.text = name;
    n.kids.push_back(expr());
    const std::string sep = name == "act" ? ";" : ",";
    while (accept(sep)) n.kids.push_back(expr());
    expect(")");
    const std::size_t want = (name == "pair" || name == "act") ? 2 : 1;
    if (n.kids.size() != want) fail(name + " takes " + std::to_string(want) + " argument(s)");
    return n;
  }

  std::string s_;
  std::size_t pos_ = 0;
};

inline int precedence(const Node& n) {
  switch (n.kind) {
    case Node::Kind::Add:
    case Node::Kind::Sub: return 1;
    case Node::Kind::Tensor: return 2;
    case Node::Kind::Mul:
    case Node::Kind::Div: return 3;
    case Node::Kind::Neg: return 4;
    case Node::Kind::Pow: return 5;
    default: return 6;
  }
}

inline std::string print_at(const Node& n, int min_prec);

inline std::string print_node(const Node& n) {
  switch (n.kind) {
    case Node::Kind::Num:
    case Node::Kind::Gen:
    case Node::Kind::Vec: return n.text;
    case Node::Kind::Q: return "q";
    case Node::Kind::Neg: return "-" + print_at(n.kids[0], 4);
    case Node::Kind::Add: return print_at(n.kids[0], 1) + " + " + print_at(n.kids[1], 2);
    case Node::Kind::Sub: return print_at(n.kids[0], 1) + " - " + print_at(n.kids[1], 2);
    case Node::Kind::Tensor: return print_at(n.kids[0], 2) + " ⊗ " + print_at(n.kids[1], 3);
    case Node::Kind::Mul: return print_at(n.kids[0], 3) + "*" + print_at(n.kids[1], 4);
    case Node::Kind::Div: return print_at(n.kids[0], 3) + "/" + print_at(n.kids[1], 4);
    case Node::Kind::Pow: {
      std::string e = n.exp_den == 1 ? std::to_string(n.exp_num)
                                     : "(" + std::to_string(n.exp_num) + "/" + std::to_string(n.exp_den) + ")";
      return print_at(n.kids[0], 6) + "^" + e;
    }
    case Node::Kind::Call: {
      std::string s = n.text + "(";
      for (std::size_t k = 0; k < n.kids.size(); ++k) s += (k ? (n.text == "act" ? "; " : ", ") : "") + print_node(n.kids[k]);
      return s + ")";
    }
  }
  return "?";
}

inline std::string print_at(const Node& n, int min_prec) {
  const std::string s = print_node(n);
  return precedence(n) < min_prec ? "(" + s + ")" : s;
}

}  // namespace detail

inline Node parse_expr(const std::string& text) { return detail::Parser(text).parse(); }
inline std::string print_expr(const Node& n) { return detail::print_node(n); }

// ---------------------------------------------------------------------------
// Values.

/// B_q^{--} (x) M, keyed by f-word.
struct ModTensor {
  std::map<Word, ModVec> terms;
  friend bool operator==(const ModTensor& a, const ModTensor& b) { return a.terms == b.terms; }
};

using Value = std::variant<QRat, Element, Tensor, ModVec, ModTensor>;

inline std::string vec_str(const ModVec& m) {
  std::vector<std::pair<std::string, QRat>> items;
  for (auto it = m.parts.rbegin(); it != m.parts.rend(); ++it)
    for (std::size_t k = 0; k < it->second.size(); ++k)
      if (!it->second[k].is_zero())
        items.emplace_back("v{" + it->first.str() + "}[" + std::to_string(k + 1) + "]", it->second[k]);
  return detail::format_sum(std::move(items));
}

inline std::string modtensor_str(const ModTensor& t) {
  std::vector<std::pair<std::string, QRat>> items;
  std::vector<std::pair<Word, const ModVec*>> order;
  for (const auto& [w, m] : t.terms) order.emplace_back(w, &m);
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() > b.first.size();
    return b.first < a.first;
  });
  for (const auto& [w, m] : order) {
    const std::string left = w.empty() ? "1" : detail::word_str(Brick::BMinus, w);
    for (auto it = m->parts.rbegin(); it != m->parts.rend(); ++it)
      for (std::size_t k = 0; k < it->second.size(); ++k)
        if (!it->second[k].is_zero())
          items.emplace_back(left + " ⊗ v{" + it->first.str() + "}[" + std::to_string(k + 1) + "]", it->second[k]);
  }
  return detail::format_sum(std::move(items));
}

inline std::string value_kind(const Value& v) {
  switch (v.index()) {
    case 0: return "scalar";
    case 1: return "element";
    case 2: return "tensor";
    case 3: return "vector";
    default: return "comodule";
  }
}

inline std::string to_string(const CartanData& c, const Value& v) {
  switch (v.index()) {
    case 0: return std::get<QRat>(v).str();
    case 1: return to_string(c, std::get<Element>(v));
    case 2: return to_string(c, std::get<Tensor>(v));
    case 3: return vec_str(std::get<ModVec>(v));
    default: return modtensor_str(std::get<ModTensor>(v));
  }
}

// ---------------------------------------------------------------------------
// Evaluation.

namespace detail {

struct GenInfo {
  bool torus = false;
  Brick brick = Brick::UPlus;
  int index = 0;          // letters
  std::string weight;     // tori: braces content, or empty for root-indexed
  int root = -1;          // tori written K / K1: root index (0 for rank one)
};

inline GenInfo gen_info(const std::string& tok) {
  GenInfo g;
  const char h = tok[0];
  if (h == 'E' || h == 'F' || h == 'e' || h == 'f') {
    g.brick = h == 'E' ? Brick::UPlus : h == 'F' ? Brick::UMinus : h == 'e' ? Brick::BPlus : Brick::BMinus;
    g.index = std::stoi(tok.substr(1)) - 1;
    return g;
  }
  g.torus = true;
  const bool prime = tok.find('\'') != std::string::npos;
  g.brick = h == 'K' ? (prime ? Brick::UMinus : Brick::UPlus) : (prime ? Brick::BMinus : Brick::BPlus);
  if (auto b = tok.find('{'); b != std::string::npos) {
    g.weight = tok.substr(b + 1, tok.size() - b - 2);
  } else {
    std::string digits;
    for (char ch : tok)
      if (std::isdigit(static_cast<unsigned char>(ch))) digits += ch;
    g.root = digits.empty() ? -1 : std::stoi(digits) - 1;
  }
  return g;
}

/// Letters and tori appearing outside call arguments.
inline void collect(const Node& n, std::set<std::pair<Brick, bool>>& out) {
  if (n.kind == Node::Kind::Call) return;
  if (n.kind == Node::Kind::Gen) {
    const GenInfo g = gen_info(n.text);
    out.insert({g.brick, g.torus});
  }
  for (const auto& k : n.kids) collect(k, out);
}

}  // namespace detail

/// Smallest standard algebra containing the generators of an expression.
inline std::optional<Alg> infer_alg(const Node& n) {
  std::set<std::pair<Brick, bool>> seen;
  detail::collect(n, seen);
  if (seen.empty()) return std::nullopt;
  bool u = false, b = false, plus = false, minus = false, torus = false;
  for (const auto& [br, t] : seen) {
    (br == Brick::UPlus || br == Brick::UMinus ? u : b) = true;
    (is_positive(br) ? plus : minus) = true;
    torus = torus || t;
  }
  if (u && b) throw error("cannot infer the algebra of '" + print_expr(n) + "'; pass --algebra");
  if (u) return plus && minus ? Alg::Uq : plus ? Alg::UPlus : Alg::UMinus;
  if (plus && minus) return torus ? Alg::Bq : Alg::Wq;
  return plus ? Alg::BPlus : Alg::BMinus;
}

/// Acts with an element of a boson-side algebra on a module vector.
inline ModVec act_on_module(const WeightModule& M, const Element& x, const ModVec& m) {
  const CartanData& c = M.cartan();
  const auto& lay = layout(x.alg);
  for (Brick b : lay)
    if (b != Brick::BPlus && b != Brick::BMinus)
      throw error("only q-Boson elements act on modules, got " + alg_name(x.alg));
  const auto* raw = dynamic_cast<const RawModule*>(&M);
  auto torus = [&](const Weight& lam, const ModVec& v) {
    if (lam.is_zero()) return v;
    if (raw && raw->mode() == RawModule::Mode::TorusMatrices) {
      const auto r = c.to_roots(lam);
      if (!r) throw error("torus weight " + lam.str() + " is not in the root lattice");
      ModVec out;
      for (const auto& [w, vec] : v.parts) {
        Matrix t = Matrix::identity(vec.size());
        for (std::size_t i = 0; i < c.rank(); ++i) {
          Matrix ti = raw->torus_matrix(i, w);
          if ((*r)[i] < 0) ti = ti.inverse();
          for (int k = 0; k < std::abs((*r)[i]); ++k) t = t * ti;
        }
        out.add(w, t.apply(vec), 1);
      }
      return out;
    }
    ModVec out;
    for (const auto& [w, vec] : v.parts) out.add(w, vec, QRat::q_pow(c.inner(lam, w)));
    return out;
  };
  ModVec r;
  for (const auto& [mono, cm] : x.terms) {
    ModVec v = m;
    for (std::size_t k = mono.size(); k-- > 0 && !v.is_zero();) {
      v = torus(mono[k].torus, v);
      v = lay[k] == Brick::BPlus ? M.apply_eword(mono[k].word, v) : M.apply_fword(mono[k].word, v);
    }
    r += v.scaled(cm);
  }
  return r;
}

class Evaluator {
 public:
  /// alg fixes the algebra of generator tokens; otherwise it is inferred per subexpression.
  Evaluator(PairingSession& s, std::optional<Alg> alg = std::nullopt, const WeightModule* module = nullptr)
      : s_(&s), alg_(alg), module_(module) {}

  Value eval(const Node& n) { return eval(n, context(n)); }

  Element eval_element(const Node& n, std::optional<Alg> alg = std::nullopt) {
    const std::optional<Alg> a = alg ? alg : context(n);
    Value v = eval(n, a);
    if (auto* e = std::get_if<Element>(&v)) return *e;
    if (auto* q = std::get_if<QRat>(&v)) {
      if (!a) throw error("cannot infer the algebra of scalar '" + print_expr(n) + "'; pass --algebra");
      return Element::scalar(cartan(), *a, *q);
    }
    throw error("'" + print_expr(n) + "' is not an algebra element");
  }

  const CartanData& cartan() const { return s_->cartan(); }

 private:
  std::optional<Alg> context(const Node& n) const { return alg_ ? alg_ : infer_alg(n); }

  [[noreturn]] static void fail(const Node& n, const std::string& msg) {
    throw error("in '" + print_expr(n) + "': " + msg);
  }

  Element generator(const Node& n, std::optional<Alg> alg) {
    const CartanData& c = cartan();
    if (!alg) fail(n, "no algebra context");
    const detail::GenInfo g = detail::gen_info(n.text);
    const auto& lay = layout(*alg);
    Mono m = Element::unit_mono(c, *alg);
    std::optional<std::size_t> slot;
    if (g.torus && (*alg == Alg::Uq || *alg == Alg::Bq)) {
      const bool ok = *alg == Alg::Uq ? (g.brick == Brick::UPlus || g.brick == Brick::UMinus)
                                      : (g.brick == Brick::BPlus || g.brick == Brick::BMinus);
      if (ok) slot = *alg == Alg::Uq ? 1 : 0;
    } else {
      for (std::size_t k = 0; k < lay.size(); ++k)
        if (lay[k] == g.brick) slot = k;
    }
    if (!slot) fail(n, "generator " + n.text + " does not belong to " + alg_name(*alg));
    if (g.torus) {
      if (torus_free(*alg, *slot)) fail(n, alg_name(*alg) + " has no torus");
      Weight w(c.rank());
      if (!g.weight.empty()) {
        w = Weight::parse(g.weight, c.rank());
      } else {
        const int r = g.root < 0 ? 0 : g.root;
        if (g.root < 0 && c.rank() != 1) fail(n, "torus generators need an index in rank " + std::to_string(c.rank()));
        if (static_cast<std::size_t>(r) >= c.rank()) fail(n, "index out of range");
        w = c.simple_root(static_cast<std::size_t>(r));
      }
      m[*slot].torus = w;
    } else {
      if (static_cast<std::size_t>(g.index) >= c.rank()) fail(n, "index out of range for rank " + std::to_string(c.rank()));
      m[*slot].word = {g.index};
    }
    return Element{*alg, LinComb<Mono>(m, 1)};
  }

  ModVec vector(const Node& n) {
    if (!module_) fail(n, "module vectors need a module (--module)");
    const auto open = n.text.find('{'), close = n.text.find('}');
    const Weight w = Weight::parse(n.text.substr(open + 1, close - open - 1), cartan().rank());
    const std::size_t k = std::stoul(n.text.substr(n.text.find('[') + 1)) - 1;
    const auto d = module_->dim(w);
    if (!d || *d == 0) fail(n, "weight " + w.str() + " is not a weight of the module");
    if (k >= *d) fail(n, "index out of range; dim = " + std::to_string(*d));
    return ModVec::unit(w, *d, k);
  }

  Value add(const Node& n, Value a, Value b, bool sub) {
    if (sub) b = negate(n, std::move(b));
    if (a.index() == 0 && b.index() == 0) return std::get<QRat>(a) + std::get<QRat>(b);
    if (a.index() == 0 && b.index() == 1) std::swap(a, b);
    if (a.index() == 1 && b.index() == 0) {
      Element x = std::get<Element>(a);
      x += Element::scalar(cartan(), x.alg, std::get<QRat>(b));
      return x;
    }
    if (a.index() != b.index()) fail(n, "cannot add a " + value_kind(a) + " and a " + value_kind(b));
    switch (a.index()) {
      case 1: {
        auto& x = std::get<Element>(a);
        const auto& y = std::get<Element>(b);
        if (x.alg != y.alg) fail(n, "cannot add elements of " + alg_name(x.alg) + " and " + alg_name(y.alg));
        x += y;
        return a;
      }
      case 2: {
        auto& x = std::get<Tensor>(a);
        const auto& y = std::get<Tensor>(b);
        if (x.legs != y.legs) fail(n, "tensor legs differ");
        x += y;
        return a;
      }
      case 3: return std::get<ModVec>(a) + std::get<ModVec>(b);
      default: {
        ModTensor t = std::get<ModTensor>(a);
        for (const auto& [w, m] : std::get<ModTensor>(b).terms) {
          t.terms[w] += m;
          if (t.terms[w].is_zero()) t.terms.erase(w);
        }
        return t;
      }
    }
  }

  Value scale(Value v, const QRat& c) {
    switch (v.index()) {
      case 0: return std::get<QRat>(v) * c;
      case 1: return std::get<Element>(v).scaled(c);
      case 2: {
        Tensor t = std::get<Tensor>(v);
        t.terms = t.terms.scaled(c);
        return t;
      }
      case 3: return std::get<ModVec>(v).scaled(c);
      default: {
        ModTensor t;
        for (const auto& [w, m] : std::get<ModTensor>(v).terms)
          if (!c.is_zero()) t.terms[w] = m.scaled(c);
        return t;
      }
    }
  }

  Value negate(const Node&, Value v) { return scale(std::move(v), -1); }

  Value mul(const Node& n, const Value& a, const Value& b) {
    if (a.index() == 0) return scale(b, std::get<QRat>(a));
    if (b.index() == 0) return scale(a, std::get<QRat>(b));
    if (a.index() == 1 && b.index() == 1) {
      const auto& x = std::get<Element>(a);
      const auto& y = std::get<Element>(b);
      if (x.alg != y.alg) fail(n, "cannot multiply " + alg_name(x.alg) + " by " + alg_name(y.alg));
      return multiply(*s_, x, y);
    }
    if (a.index() == 1 && b.index() == 3) {
      if (!module_) fail(n, "no module");
      return act_on_module(*module_, std::get<Element>(a), std::get<ModVec>(b));
    }
    if (a.index() == 2 && b.index() == 2) {
      const auto& x = std::get<Tensor>(a);
      const auto& y = std::get<Tensor>(b);
      if (x.legs != y.legs) fail(n, "tensor legs differ");
      Tensor r{x.legs, {}};
      for (const auto& [kx, cx] : x.terms)
        for (const auto& [ky, cy] : y.terms) {
          LinComb<std::vector<Mono>> acc(std::vector<Mono>{}, cx * cy);
          for (std::size_t l = 0; l < x.legs.size(); ++l) {
            const Element p = multiply(*s_, Element{x.legs[l], LinComb<Mono>(kx[l], 1)},
                                       Element{x.legs[l], LinComb<Mono>(ky[l], 1)});
            LinComb<std::vector<Mono>> next;
            for (const auto& [key, ck] : acc)
              for (const auto& [m, cm] : p.terms) {
                auto nk = key;
                nk.push_back(m);
                next.add(nk, ck * cm);
              }
            acc = std::move(next);
          }
          r.terms += acc;
        }
      return r;
    }
    fail(n, "cannot multiply a " + value_kind(a) + " by a " + value_kind(b));
  }

  Value tensor(const Node& n, const Value& a, const Value& b, std::optional<Alg> alg) {
    auto as_element = [&](const Value& v, const Value& other) -> Element {
      if (auto* e = std::get_if<Element>(&v)) return *e;
      if (auto* q = std::get_if<QRat>(&v)) {
        std::optional<Alg> la = alg;
        if (auto* oe = std::get_if<Element>(&other)) la = oe->alg;
        if (auto* ot = std::get_if<Tensor>(&other)) la = ot->legs.front();
        if (!la) fail(n, "cannot infer the algebra of a scalar tensor leg");
        return Element::scalar(cartan(), *la, *q);
      }
      fail(n, "cannot form a tensor with a " + value_kind(v));
    };
    if (b.index() == 3) {
      const Element x = as_element(a, Value(Element{Alg::BMinusMinus, {}}));
      ModTensor t;
      for (const auto& [m, cm] : x.terms) {
        for (std::size_t k = 0; k < m.size(); ++k)
          if (!m[k].torus.is_zero() || (layout(x.alg)[k] != Brick::BMinus && !m[k].word.empty()))
            fail(n, "the left leg of a comodule tensor must be a B_q^{--} element");
        Word w;
        for (const auto& part : m) w = concat(w, part.word);
        t.terms[w] += std::get<ModVec>(b).scaled(cm);
        if (t.terms[w].is_zero()) t.terms.erase(w);
      }
      return t;
    }
    if (a.index() == 2) {
      Tensor t = std::get<Tensor>(a);
      return tensor_product(t, as_element(b, a));
    }
    if (b.index() == 2) {
      const Element x = as_element(a, b);
      const Tensor& y = std::get<Tensor>(b);
      Tensor r{{x.alg}, {}};
      r.legs.insert(r.legs.end(), y.legs.begin(), y.legs.end());
      for (const auto& [m, cm] : x.terms)
        for (const auto& [k, ck] : y.terms) {
          std::vector<Mono> key{m};
          key.insert(key.end(), k.begin(), k.end());
          r.terms.add(key, cm * ck);
        }
      return r;
    }
    return tensor_product(as_element(a, b), as_element(b, a));
  }

  Value power(const Node& n, const Value& base) {
    if (auto* q = std::get_if<QRat>(&base)) {
      if (n.exp_den != 1) {
        if (*q != QRat::q()) fail(n, "fractional exponents apply to q only");
        return QRat::q_pow(mpq_class(n.exp_num, n.exp_den));
      }
      if (n.exp_num < 0 && q->is_zero()) fail(n, "division by zero");
      return q->pow(n.exp_num);
    }
    if (n.exp_den != 1) fail(n, "fractional exponent on an algebra element");
    if (auto* e = std::get_if<Element>(&base)) {
      if (n.exp_num >= 0) return qboson::power(*s_, *e, n.exp_num);
      if (e->terms.size() != 1) fail(n, "negative powers need a single torus monomial");
      const auto& [m, cm] = *e->terms.begin();
      Mono inv = m;
      for (std::size_t k = 0; k < inv.size(); ++k) {
        if (!inv[k].word.empty()) fail(n, "negative powers need a single torus monomial");
        inv[k].torus = -inv[k].torus;
      }
      return qboson::power(*s_, Element{e->alg, LinComb<Mono>(inv, cm.inverse())}, -n.exp_num);
    }
    fail(n, "cannot raise a " + value_kind(base) + " to a power");
  }

  Value call(const Node& n, std::optional<Alg> alg) {
    const CartanData& c = cartan();
    const std::string& f = n.text;
    if (f == "pair") {
      const Element a = eval_element(n.kids[0], infer_alg(n.kids[0]));
      const Element b = eval_element(n.kids[1], infer_alg(n.kids[1]));
      try {
        return s_->pair(a, b);
      } catch (const error& e) {
        fail(n, e.what());
      }
    }
    if (f == "act") {
      const Element u = eval_element(n.kids[0], infer_alg(n.kids[0]));
      const Value xv = eval(n.kids[1], alg_ ? alg_ : infer_alg(n.kids[1]));
      if (auto* m = std::get_if<ModVec>(&xv)) {
        if (!module_) fail(n, "no module");
        return act_on_module(*module_, u, *m);
      }
      Element x = std::get_if<Element>(&xv) ? std::get<Element>(xv) : eval_element(n.kids[1]);
      try {
        return act(u, x);
      } catch (const error& e) {
        fail(n, e.what());
      }
    }
    if (f == "P" || f == "rho") {
      if (!module_) fail(n, f + " needs a module (--module)");
      const Value mv = eval(n.kids[0], alg);
      const auto* m = std::get_if<ModVec>(&mv);
      if (!m) fail(n, f + " expects a module vector");
      ModuleTools tools(*s_, *module_);
      try {
        if (f == "P") return tools.project(*m);
        ModTensor t;
        t.terms = tools.rho_tensor(*m);
        for (auto it = t.terms.begin(); it != t.terms.end();)
          it = it->second.is_zero() ? t.terms.erase(it) : std::next(it);
        return t;
      } catch (const truncation_error& e) {
        fail(n, e.what());
      }
    }
    const Element x = eval_element(n.kids[0], alg ? alg : infer_alg(n.kids[0]));
    try {
      if (f == "eps") {
        QRat r;
        for (const auto& [m, cm] : x.terms) {
          bool words = false;
          for (const auto& part : m) words = words || !part.word.empty();
          if (!words) r += cm;
        }
        return r;
      }
      if (f == "delta0" || (f == "delta" && x.alg == Alg::BMinusMinus)) return braided_delta(x);
      if (f == "delta") {
        if (is_brick(x.alg)) return delta(c, x, 2);
        return coproduct(c, x);
      }
      if (f == "S" && x.alg == Alg::BMinusMinus) {
        BraidedAntipode S(c);
        return from_words(Alg::BMinusMinus, S(to_words(x)));
      }
      if (f == "S") return antipode(c, x);
      if (f == "Sinv") return antipode_inv(c, x);
    } catch (const error& e) {
      fail(n, e.what());
    }
    fail(n, "unknown function " + f);
  }

  static WordElem to_words(const Element& x) {
    WordElem w;
    for (const auto& [m, cm] : x.terms) {
      if (m.size() != 1 || !m[0].torus.is_zero()) throw error("expected a torus-free f-word combination");
      w.add(m[0].word, cm);
    }
    return w;
  }
  Element from_words(Alg a, const WordElem& w) const {
    Element r{a, {}};
    for (const auto& [word, cw] : w) r.terms.add(Mono{BrickMono{word, cartan().zero()}}, cw);
    return r;
  }

  Tensor braided_delta(Element x) const {
    if (x.alg == Alg::BMinus) x.alg = Alg::BMinusMinus;
    if (x.alg != Alg::BMinusMinus) throw error("the braided coproduct is defined on bq--");
    Tensor t{{Alg::BMinusMinus, Alg::BMinusMinus}, {}};
    for (const auto& [legs, cl] : braided_delta0(cartan(), to_words(x)))
      t.terms.add({Mono{BrickMono{legs[0], cartan().zero()}}, Mono{BrickMono{legs[1], cartan().zero()}}}, cl);
    return t;
  }

  /// Schroedinger-type actions: u in a double (or one of its halves) on A, B, H or W_q.
  Value act(const Element& u, const Element& x) {
    const CartanData& c = cartan();
    const bool ub = u.alg == Alg::BPlus || u.alg == Alg::BMinus || u.alg == Alg::DPhiBoson;
    const DoubleCtx ctx = ub ? DoubleCtx::b() : DoubleCtx::u();
    PairElem d;
    switch (u.alg) {
      case Alg::UPlus:
      case Alg::BPlus:
        for (const auto& [m, cm] : u.terms) d.add(Mono{m[0], BrickMono::unit(c.rank())}, cm);
        break;
      case Alg::UMinus:
      case Alg::BMinus:
        for (const auto& [m, cm] : u.terms) d.add(Mono{BrickMono::unit(c.rank()), m[0]}, cm);
        break;
      case Alg::DPhi:
      case Alg::DPhiBoson:
      case Alg::Uq: d = lift_uq(Element{u.alg == Alg::DPhiBoson ? Alg::DPhi : u.alg, u.terms}); break;
      default: throw error("cannot act with an element of " + alg_name(u.alg));
    }
    DoubleAction A(*s_, ctx);
    if (x.alg == Alg::Wq) {
      if (ub) throw error("W_q is acted on by U_q");
      return uq_act_on_wq(*s_, Element{Alg::DPhi, d}, x);
    }
    if (is_brick(x.alg)) {
      const Brick b = brick_of(x.alg);
      if (b == ctx.pos) return Element::from_brick(x.alg, A.act_a(d, x.to_brick()));
      if (b == ctx.neg) return Element::from_brick(x.alg, A.act_b(d, x.to_brick()));
    }
    Element h = x;
    if (x.alg == Alg::BPlus || x.alg == Alg::BMinus) {
      h = Element{Alg::HPhi, {}};
      const BrickMono one = BrickMono::unit(c.rank());
      for (const auto& [m, cm] : x.terms)
        h.terms.add(x.alg == Alg::BPlus ? Mono{one, m[0]} : Mono{m[0], one}, cm);
    }
    if (h.alg == Alg::HPhi) {
      if (ub) return Element{Alg::HPhi, A.act_h(d, h.terms)};
      // U_q letters act on the boson letters through the U-brick copy of H
      const PairElem hu = convert_pair(c, Brick::BMinus, Brick::BPlus, h.terms);
      return Element{Alg::HPhi, convert_pair(c, Brick::UMinus, Brick::UPlus, A.act_h(d, hu))};
    }
    throw error("no action of " + alg_name(u.alg) + " on " + alg_name(x.alg));
  }

  Value eval(const Node& n, std::optional<Alg> alg) {
    switch (n.kind) {
      case Node::Kind::Num: return QRat(mpz_class(n.text));
      case Node::Kind::Q: return QRat::q();
      case Node::Kind::Gen: return generator(n, alg);
      case Node::Kind::Vec: return vector(n);
      case Node::Kind::Neg: return negate(n, eval(n.kids[0], alg));
      case Node::Kind::Add:
      case Node::Kind::Sub:
        return add(n, eval(n.kids[0], alg), eval(n.kids[1], alg), n.kind == Node::Kind::Sub);
      case Node::Kind::Mul: return mul(n, eval(n.kids[0], alg), eval(n.kids[1], alg));
      case Node::Kind::Div: {
        const Value d = eval(n.kids[1], alg);
        const auto* q = std::get_if<QRat>(&d);
        if (!q) fail(n, "division by a non-scalar");
        if (q->is_zero()) fail(n, "division by zero");
        return scale(eval(n.kids[0], alg), q->inverse());
      }
      case Node::Kind::Pow: return power(n, eval(n.kids[0], alg));
      case Node::Kind::Tensor: {
        // each leg may live in its own algebra when none is fixed
        const Value a = eval(n.kids[0], alg_ ? alg_ : infer_or(n.kids[0], alg));
        const Value b = eval(n.kids[1], alg_ ? alg_ : infer_or(n.kids[1], alg));
        return tensor(n, a, b, alg);
      }
      case Node::Kind::Call: return call(n, alg);
    }
    fail(n, "unsupported expression");
  }

  static std::optional<Alg> infer_or(const Node& n, std::optional<Alg> fallback) {
    auto a = infer_alg(n);
    return a ? a : fallback;
  }

  PairingSession* s_;
  std::optional<Alg> alg_;
  const WeightModule* module_;
};

/// Parses a scalar in the text grammar; rejects generators.
inline QRat parse_scalar(const std::string& text) {
  const Node n = parse_expr(text);
  std::set<std::pair<Brick, bool>> seen;
  detail::collect(n, seen);
  if (!seen.empty()) throw error("'" + text + "' is not a scalar");
  static PairingSession dummy(CartanData::preset("A1"));
  const Value v = Evaluator(dummy).eval(n);
  if (const auto* q = std::get_if<QRat>(&v)) return *q;
  throw error("'" + text + "' is not a scalar");
}

}  // namespace qboson
