#pragma once

// JSON module files and decomposition reports.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "category_o.hpp"
#include "expr.hpp"

namespace qboson {

using json = nlohmann::ordered_json;

inline CartanData cartan_from_json(const json& j) {
  if (j.contains("type")) {
    if (j.contains("cartan")) throw error("give either 'type' or 'cartan', not both");
    return CartanData::preset(j.at("type").get<std::string>());
  }
  if (!j.contains("cartan")) throw error("module file needs 'cartan' or 'type'");
  const auto a = j.at("cartan").get<std::vector<std::vector<int>>>();
  std::vector<int> d(a.size(), 1);
  if (j.contains("symmetrizers")) d = j.at("symmetrizers").get<std::vector<int>>();
  return CartanData(a, d);
}

inline Matrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw error("matrix must be an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows ? j[0].size() : 0;
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw error("matrix rows have unequal lengths");
    for (std::size_t c = 0; c < cols; ++c) {
      const json& x = j[r][c];
      if (x.is_number_integer()) m(r, c) = QRat(x.get<long>());
      else if (x.is_string()) m(r, c) = parse_scalar(x.get<std::string>());
      else throw error("matrix entries must be scalar strings or integers");
    }
  }
  return m;
}

inline json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).str());
    rows.push_back(row);
  }
  return rows;
}

/// Reads a module file; relations are not checked here (see RawModule::validate).
inline RawModule module_from_json(const json& j) {
  const CartanData c = cartan_from_json(j);
  const std::string mode = j.value("mode", std::string("weights"));
  RawModule::Mode m;
  if (mode == "weights") m = RawModule::Mode::Weights;
  else if (mode == "torus-matrices") m = RawModule::Mode::TorusMatrices;
  else throw error("unknown mode '" + mode + "'");
  RawModule M(c, m);
  if (!j.contains("spaces") || !j.at("spaces").is_object()) throw error("module file needs an object 'spaces'");
  for (const auto& [w, d] : j.at("spaces").items()) {
    const long n = d.get<long>();
    if (n < 0) throw error("negative dimension at weight " + w);
    M.declare(Weight::parse(w, c.rank()), static_cast<std::size_t>(n));
  }
  if (j.contains("actions"))
    for (const auto& [gen, blocks] : j.at("actions").items()) {
      if (gen.size() < 2 || (gen[0] != 'e' && gen[0] != 'f' && gen[0] != 't'))
        throw error("unknown generator '" + gen + "' (expected e<i>, f<i> or t<i>)");
      std::size_t idx = 0;
      try {
        idx = std::stoul(gen.substr(1));
      } catch (const std::exception&) {
        throw error("unknown generator '" + gen + "'");
      }
      if (idx < 1 || idx > c.rank()) throw error("generator '" + gen + "' out of range");
      for (const auto& b : blocks) {
        const Weight from = Weight::parse(b.at("from").get<std::string>(), c.rank());
        const Weight to = Weight::parse(b.at("to").get<std::string>(), c.rank());
        const Weight expect = gen[0] == 'e'   ? from + c.simple_root(idx - 1)
                              : gen[0] == 'f' ? from - c.simple_root(idx - 1)
                                              : from;
        if (to != expect)
          throw error(gen + " block from " + from.str() + " must end at " + expect.str() + ", not " + to.str());
        M.set_block(gen[0], idx - 1, from, matrix_from_json(b.at("matrix")));
      }
    }
  return M;
}

inline RawModule load_module(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw error(path + ": " + e.what());
  }
  try {
    return module_from_json(j);
  } catch (const json::exception& e) {
    throw error(path + ": " + e.what());
  }
}

inline json module_to_json(const RawModule& M) {
  const CartanData& c = M.cartan();
  json j;
  j["cartan"] = c.matrix();
  j["symmetrizers"] = c.symmetrizers();
  j["mode"] = M.mode() == RawModule::Mode::Weights ? "weights" : "torus-matrices";
  json spaces = json::object();
  const auto ws = M.weights();
  for (auto it = ws.rbegin(); it != ws.rend(); ++it) spaces[it->str()] = *M.dim(*it);
  j["spaces"] = spaces;
  json actions = json::object();
  const std::vector<char> kinds = M.mode() == RawModule::Mode::Weights ? std::vector<char>{'e', 'f'}
                                                                       : std::vector<char>{'e', 'f', 't'};
  for (char kind : kinds)
    for (std::size_t i = 0; i < c.rank(); ++i) {
      json blocks = json::array();
      for (auto it = ws.rbegin(); it != ws.rend(); ++it) {
        const Matrix* m = M.block(kind, i, *it);
        if (!m || m->is_zero()) continue;
        const Weight to = kind == 'e' ? *it + c.simple_root(i) : kind == 'f' ? *it - c.simple_root(i) : *it;
        blocks.push_back({{"from", it->str()}, {"to", to.str()}, {"matrix", matrix_to_json(*m)}});
      }
      if (!blocks.empty()) actions[std::string(1, kind) + std::to_string(i + 1)] = blocks;
    }
  j["actions"] = actions;
  return j;
}

/// `{ "2": 1, "0": 1 }`, highest weights first.
inline std::string multiplicities_text(const std::map<Weight, std::size_t>& m) {
  if (m.empty()) return "{}";
  std::string s = "{ ";
  bool first = true;
  for (auto it = m.rbegin(); it != m.rend(); ++it) {
    s += (first ? "" : ", ") + std::string("\"") + it->first.str() + "\": " + std::to_string(it->second);
    first = false;
  }
  return s + " }";
}

inline json multiplicities_json(const std::map<Weight, std::size_t>& m) {
  json j = json::object();
  for (auto it = m.rbegin(); it != m.rend(); ++it) j[it->first.str()] = it->second;
  return j;
}

/// Maximal vectors and the matrices of Phi and Psi per weight space.
inline json decomposition_json(const Decomposition& d) {
  json j;
  j["multiplicities"] = multiplicities_json(d.multiplicities);
  j["verified"] = d.verified;
  json maxv = json::object();
  for (auto it = d.maximal.rbegin(); it != d.maximal.rend(); ++it)
    maxv[it->first.str()] = matrix_to_json(it->second.transposed());
  j["maximal_vectors"] = maxv;
  json blocks = json::object();
  for (auto it = d.phi.rbegin(); it != d.phi.rend(); ++it) {
    json rows = json::array();
    for (const auto& r : d.rows.at(it->first))
      rows.push_back({{"highest_weight", r.lambda.str()}, {"degree", r.beta.c}, {"dual_index", r.j}, {"maximal_index", r.k}});
    blocks[it->first.str()] = {{"rows", rows}, {"phi", matrix_to_json(it->second)}, {"psi", matrix_to_json(d.psi.at(it->first))}};
  }
  j["isomorphism"] = blocks;
  if (!d.torus.empty()) {
    json t = json::object();
    for (auto it = d.torus.rbegin(); it != d.torus.rend(); ++it) {
      json ms = json::array();
      for (const auto& m : it->second) ms.push_back(matrix_to_json(m));
      t[it->first.str()] = ms;
    }
    j["torus_on_maximal"] = t;
  }
  return j;
}

}  // namespace qboson
