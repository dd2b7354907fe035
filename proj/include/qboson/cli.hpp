#pragma once

// Command-line front end. run_command is the whole program; the executable
// only forwards argv and the standard streams.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "expr.hpp"
#include "module_io.hpp"
#include "verify.hpp"

namespace qboson {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kInputError = 2 };

namespace detail {

/// Degree cap from QBOSON_MAX_DEGREE (default 12).
inline int degree_cap() {
  if (const char* env = std::getenv("QBOSON_MAX_DEGREE")) {
    try {
      const int v = std::stoi(env);
      if (v >= 0) return v;
    } catch (const std::exception&) {
    }
    throw error(std::string("QBOSON_MAX_DEGREE must be a nonnegative integer, got '") + env + "'");
  }
  return 12;
}

struct CliOptions {
  std::string type = "A1";
  std::string cartan, symmetrizers, algebra, format = "text", module;
};

inline CartanData cartan_of(const CliOptions& o) {
  if (o.cartan.empty()) {
    if (!o.symmetrizers.empty()) throw error("--symmetrizers requires --cartan");
    return CartanData::preset(o.type);
  }
  json j;
  j["cartan"] = json::parse(o.cartan);
  if (!o.symmetrizers.empty()) j["symmetrizers"] = json::parse(o.symmetrizers);
  return cartan_from_json(j);
}

inline std::optional<Alg> algebra_of(const CliOptions& o) {
  if (o.algebra.empty()) return std::nullopt;
  if (auto a = parse_alg(o.algebra)) return a;
  throw error("unknown algebra tag '" + o.algebra +
              "' (known: uq+, uq-, b+, b-, bq++, bq--, dphi, dphi-b, hphi, uq, bq, wq)");
}

inline void check_module_depth(const WeightModule& M, const std::vector<Weight>& weights) {
  const int cap = degree_cap();
  for (const auto& w : weights)
    if (M.nilpotence_bound(w) > cap)
      throw error("module nilpotence degree " + std::to_string(M.nilpotence_bound(w)) +
                  " exceeds the QBOSON_MAX_DEGREE cap " + std::to_string(cap));
}

}  // namespace detail

/// Runs one command line (argv[0] is the program name) and returns the exit code.
inline int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations in quantum doubles, q-Boson algebras and their modules", "qboson"};
  app.require_subcommand(1);
  detail::CliOptions o;
  app.add_option("--type", o.type, "Cartan preset: A1, A2, B2, A3")->capture_default_str();
  app.add_option("--cartan", o.cartan, "Cartan matrix as JSON, e.g. [[2,-1],[-1,2]]");
  app.add_option("--symmetrizers", o.symmetrizers, "Symmetrizers as JSON, e.g. [1,1]");
  app.add_option("--algebra", o.algebra, "Algebra tag: uq+ uq- b+ b- bq++ bq-- dphi dphi-b hphi uq bq wq");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  app.add_option("--module", o.module, "Module file (JSON) for module vectors v{weight}[k]");

  std::string expr, expr2, file, iso_out, suite;
  bool braided = false, inverse = false;
  int max_degree = 3;
  auto sub = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };
  CLI::App* normalize = sub("normalize", "Evaluate an expression to normal form");
  normalize->add_option("expr", expr, "Expression")->required();
  CLI::App* pair = sub("pair", "Evaluate the pairing of a positive and a negative element");
  pair->add_option("a", expr, "Positive element")->required();
  pair->add_option("b", expr2, "Negative element")->required();
  CLI::App* act = sub("act", "Schroedinger action of a double element");
  act->add_option("u", expr, "Acting element")->required();
  act->add_option("x", expr2, "Element acted on")->required();
  CLI::App* delta = sub("delta", "Coproduct");
  delta->add_option("x", expr, "Element")->required();
  delta->add_flag("--braided", braided, "Braided coproduct of B_q^{--}");
  CLI::App* antipode_cmd = sub("antipode", "Antipode");
  antipode_cmd->add_option("x", expr, "Element")->required();
  antipode_cmd->add_flag("--inverse", inverse, "Inverse antipode");
  CLI::App* project = sub("project", "Extremal projector P on a module vector");
  project->add_option("vector", expr, "Module vector expression")->required();
  CLI::App* rho = sub("rho", "Comodule map rho on a module vector");
  rho->add_option("vector", expr, "Module vector expression")->required();
  CLI::App* decompose_cmd = sub("decompose", "Decompose a module file into H(lambda) blocks");
  decompose_cmd->add_option("file", file, "Module file")->required();
  decompose_cmd->add_option("--iso-out", iso_out, "Write isomorphism data (JSON) to this path");
  CLI::App* verify = sub("verify", "Run an invariant suite");
  verify->add_option("--suite", suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
  verify->add_option("--max-degree", max_degree, "Degree bound")->capture_default_str()->check(CLI::NonNegativeNumber);

  std::vector<const char*> args;
  for (const auto& a : argv) args.push_back(a.c_str());
  if (args.empty()) args.push_back("qboson");
  try {
    app.parse(static_cast<int>(args.size()), args.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  const bool as_json = o.format == "json";
  auto emit = [&](const std::string& command, const CartanData& c, const Value& v) {
    if (as_json) {
      json j;
      j["command"] = command;
      j["cartan"] = c.name();
      j["kind"] = value_kind(v);
      if (const auto* e = std::get_if<Element>(&v)) j["algebra"] = alg_name(e->alg);
      if (const auto* t = std::get_if<Tensor>(&v)) {
        json legs = json::array();
        for (Alg a : t->legs) legs.push_back(alg_name(a));
        j["legs"] = legs;
      }
      j["result"] = to_string(c, v);
      out << j.dump(2) << "\n";
    } else {
      out << to_string(c, v) << "\n";
    }
  };

  try {
    if (verify->parsed()) {
      const int cap = detail::degree_cap();
      if (max_degree > cap)
        throw error("--max-degree " + std::to_string(max_degree) + " exceeds the QBOSON_MAX_DEGREE cap " +
                    std::to_string(cap));
      PairingSession s(detail::cartan_of(o));
      const SuiteReport r = run_suite(s, suite, max_degree);
      if (as_json) {
        json j;
        j["command"] = "verify";
        j["suite"] = suite;
        j["cartan"] = s.cartan().name();
        j["max_degree"] = max_degree;
        j["passed"] = r.passed;
        j["failed"] = r.failed;
        j["failures"] = r.failures;
        out << j.dump(2) << "\n";
      } else {
        out << "suite " << suite << " (" << s.cartan().name() << ", max degree " << max_degree << "): " << r.passed
            << " passed, " << r.failed << " failed\n";
        for (const auto& f : r.failures) out << "  FAIL " << f << "\n";
      }
      return r.ok() ? kOk : kVerificationFailed;
    }

    if (decompose_cmd->parsed()) {
      const RawModule M = load_module(file);
      detail::check_module_depth(M, M.weights());
      PairingSession s(M.cartan());
      Decomposition d;
      try {
        d = decompose(s, M);
      } catch (const relation_error& e) {
        err << "error: " << e.what() << "\n";
        return kVerificationFailed;
      }
      const json report = decomposition_json(d);
      if (!iso_out.empty()) {
        std::ofstream f(iso_out);
        if (!f) throw error("cannot write " + iso_out);
        f << report.dump(2) << "\n";
      }
      if (as_json) out << report.dump(2) << "\n";
      else out << multiplicities_text(d.multiplicities) << "\n";
      if (!d.verified) {
        err << "error: the decomposition maps are not mutually inverse\n";
        return kVerificationFailed;
      }
      return kOk;
    }

    std::optional<RawModule> module;
    if (!o.module.empty()) module = load_module(o.module);
    const CartanData c = module ? module->cartan() : detail::cartan_of(o);
    if (module && !o.cartan.empty()) throw error("--cartan conflicts with the module's own Cartan data");
    PairingSession s(c);
    if (module) {
      module->validate(s);
      detail::check_module_depth(*module, module->weights());
    }
    const std::optional<Alg> alg = detail::algebra_of(o);
    Evaluator ev(s, alg, module ? &*module : nullptr);
    auto call = [&](const std::string& fn, const std::vector<std::string>& parts) {
      std::string text = fn + "(";
      for (std::size_t k = 0; k < parts.size(); ++k)
        text += (k ? (fn == "act" ? "; " : ", ") : "") + std::string("(") + parts[k] + ")";
      return text + ")";
    };
    // validate each argument on its own first so syntax errors point into it
    auto checked = [&](const std::string& text) {
      parse_expr(text);
      return text;
    };
    if (normalize->parsed()) {
      emit("normalize", c, ev.eval(parse_expr(expr)));
    } else if (pair->parsed()) {
      emit("pair", c, ev.eval(parse_expr(call("pair", {checked(expr), checked(expr2)}))));
    } else if (act->parsed()) {
      emit("act", c, ev.eval(parse_expr(call("act", {checked(expr), checked(expr2)}))));
    } else if (delta->parsed()) {
      emit("delta", c, ev.eval(parse_expr(call(braided ? "delta0" : "delta", {checked(expr)}))));
    } else if (antipode_cmd->parsed()) {
      emit("antipode", c, ev.eval(parse_expr(call(inverse ? "Sinv" : "S", {checked(expr)}))));
    } else if (project->parsed() || rho->parsed()) {
      if (!module) throw error("--module is required");
      emit(project->parsed() ? "project" : "rho", c,
           ev.eval(parse_expr(call(project->parsed() ? "P" : "rho", {checked(expr)}))));
    }
    return kOk;
  } catch (const relation_error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace qboson
