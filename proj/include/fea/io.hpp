#pragma once

// JSON documents for automata, pair costs and linear-length specs, and the
// machine-readable report format of the command-line tool.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fea/core/automaton.hpp"
#include "fea/energy.hpp"
#include "fea/error.hpp"
#include "fea/lang_cost.hpp"
#include "fea/linlen.hpp"
#include "fea/nondet.hpp"
#include "fea/oracle.hpp"
#include "fea/pair_cost.hpp"
#include "fea/similarity.hpp"

namespace fea::io {

using json = nlohmann::json;

namespace detail {

inline const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw InvalidInput(where + " must be a JSON object");
  auto it = obj.find(key);
  if (it == obj.end()) throw InvalidInput(where + ": missing field '" + key + "'");
  return *it;
}

inline std::string text(const json& v, const std::string& where) {
  if (!v.is_string()) throw InvalidInput(where + " must be a string");
  return v.get<std::string>();
}

inline double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw InvalidInput(where + " must be a number");
  return v.get<double>();
}

inline std::vector<std::string> text_list(const json& v, const std::string& where) {
  if (!v.is_array()) throw InvalidInput(where + " must be a list");
  std::vector<std::string> out;
  for (const auto& x : v) out.push_back(text(x, where + " entry"));
  return out;
}

inline std::int64_t integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw InvalidInput(where + " must be an integer");
  return v.get<std::int64_t>();
}

inline void write(std::ostream& os, const json& v, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  switch (v.type()) {
    case json::value_t::object: {
      if (v.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << json(it.key()).dump() << ": ";
        write(os, it.value(), indent, depth + 1);
      }
      os << "\n" << close_pad << "}";
      return;
    }
    case json::value_t::array: {
      if (v.empty()) {
        os << "[]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",\n";
        os << pad;
        write(os, v[i], indent, depth + 1);
      }
      os << "\n" << close_pad << "]";
      return;
    }
    case json::value_t::number_float: {
      const double x = v.get<double>();
      if (!std::isfinite(x)) {
        os << "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      os << buf;
      return;
    }
    default:
      os << v.dump();
  }
}

}  // namespace detail

/// Pretty JSON with every floating-point number at 17 significant digits.
inline std::string dump(const json& v) {
  std::ostringstream os;
  detail::write(os, v, 2, 0);
  os << "\n";
  return os.str();
}

inline json parse_text(const std::string& text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(where + ": malformed JSON (" + e.what() + ")");
  }
}

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), path);
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << content;
  if (!out) throw InvalidInput("cannot write '" + path + "'");
}

// ---- automata -------------------------------------------------------------

/// Parses and validates an automaton document.
inline CostAutomaton automaton_from_json(const json& doc, const std::string& where = "automaton") {
  CostAutomaton a;
  a.alphabet = detail::text_list(detail::field(doc, "alphabet", where), where + ".alphabet");
  a.states = detail::text_list(detail::field(doc, "states", where), where + ".states");
  if (doc.contains("initial") && !doc["initial"].is_null())
    a.initial = detail::text(doc["initial"], where + ".initial");
  else if (!a.states.empty())
    throw InvalidInput(where + ": missing field 'initial'");
  if (doc.contains("accepting")) a.accepting = detail::text_list(doc["accepting"], where + ".accepting");
  if (doc.contains("transitions")) {
    const auto& ts = doc["transitions"];
    if (!ts.is_array()) throw InvalidInput(where + ".transitions must be a list");
    for (const auto& t : ts) {
      const std::string w = where + ".transitions entry";
      Transition tr;
      tr.from = detail::text(detail::field(t, "from", w), w + ".from");
      tr.symbol = detail::text(detail::field(t, "symbol", w), w + ".symbol");
      tr.to = detail::text(detail::field(t, "to", w), w + ".to");
      if (t.contains("cost")) tr.cost = detail::number(t["cost"], w + ".cost");
      a.transitions.push_back(std::move(tr));
    }
  }
  require_valid(a);
  return a;
}

inline CostAutomaton load_automaton(const std::string& path) { return automaton_from_json(read_file(path), path); }

/// Alphabet, states and accepting states sorted; transitions sorted by
/// (from, symbol, to).
inline CostAutomaton canonical(CostAutomaton a) {
  std::sort(a.alphabet.begin(), a.alphabet.end());
  std::sort(a.states.begin(), a.states.end());
  std::sort(a.accepting.begin(), a.accepting.end());
  std::sort(a.transitions.begin(), a.transitions.end(), [](const Transition& x, const Transition& y) {
    return std::tie(x.from, x.symbol, x.to) < std::tie(y.from, y.symbol, y.to);
  });
  return a;
}

inline json to_json(const CostAutomaton& source) {
  const auto a = canonical(source);
  json doc = json::object();
  doc["alphabet"] = a.alphabet;
  doc["states"] = a.states;
  doc["initial"] = a.empty() ? json(nullptr) : json(a.initial);
  doc["accepting"] = a.accepting;
  doc["transitions"] = json::array();
  for (const auto& t : a.transitions)
    doc["transitions"].push_back({{"from", t.from}, {"symbol", t.symbol}, {"to", t.to}, {"cost", t.cost}});
  return doc;
}

// ---- pair costs -----------------------------------------------------------

/// Pair costs over `alphabet`; a pair naming another symbol is an error.
inline PairCostFunction pair_cost_from_json(const json& doc, const std::vector<Symbol>& alphabet,
                                            const std::string& where = "pair costs") {
  double fallback = 0.0;
  if (!doc.is_object()) throw InvalidInput(where + " must be a JSON object");
  if (doc.contains("default")) fallback = detail::number(doc["default"], where + ".default");
  PairCostFunction u(alphabet, fallback);
  if (doc.contains("pairs")) {
    const auto& ps = doc["pairs"];
    if (!ps.is_array()) throw InvalidInput(where + ".pairs must be a list");
    for (const auto& p : ps) {
      const std::string w = where + ".pairs entry";
      u.set(detail::text(detail::field(p, "first", w), w + ".first"),
            detail::text(detail::field(p, "second", w), w + ".second"),
            detail::number(detail::field(p, "cost", w), w + ".cost"));
    }
  }
  return u;
}

inline PairCostFunction load_pair_costs(const std::string& path, const std::vector<Symbol>& alphabet) {
  return pair_cost_from_json(read_file(path), alphabet, path);
}

inline json to_json(const PairCostFunction& u) {
  json doc = json::object();
  doc["default"] = u.fallback();
  doc["pairs"] = json::array();
  for (const auto& [k, v] : u.entries()) doc["pairs"].push_back({{"first", k.first}, {"second", k.second}, {"cost", v}});
  return doc;
}

// ---- linear-length specs --------------------------------------------------

inline LinearSet linear_set_from_json(const json& doc, const std::string& where) {
  LinearSet d;
  const auto& off = detail::field(doc, "offset", where);
  if (!off.is_array()) throw InvalidInput(where + ".offset must be a list");
  for (const auto& x : off) {
    const auto v = detail::integer(x, where + ".offset entry");
    if (v <= 0) throw InvalidInput("offset must be positive");
    d.offset.push_back(static_cast<std::size_t>(v));
  }
  if (doc.contains("periods")) {
    const auto& ps = doc["periods"];
    if (!ps.is_array()) throw InvalidInput(where + ".periods must be a list");
    for (const auto& p : ps) {
      if (!p.is_array()) throw InvalidInput(where + ".periods entry must be a list");
      std::vector<std::size_t> period;
      for (const auto& x : p) {
        const auto v = detail::integer(x, where + ".periods entry");
        if (v < 0) throw InvalidInput("period entries must be nonnegative");
        period.push_back(static_cast<std::size_t>(v));
      }
      d.periods.push_back(std::move(period));
    }
  }
  require_valid(d);
  return d;
}

inline LinearLengthSpec linlen_spec_from_json(const json& doc, const std::string& where = "spec") {
  LinearLengthSpec s;
  s.base = automaton_from_json(detail::field(doc, "base", where), where + ".base");
  const auto& parts = detail::field(doc, "parts", where);
  if (!parts.is_array()) throw InvalidInput(where + ".parts must be a list");
  for (std::size_t i = 0; i < parts.size(); ++i)
    s.parts.push_back(automaton_from_json(parts[i], where + ".parts[" + std::to_string(i) + "]"));
  s.lengths = linear_set_from_json(detail::field(doc, "lengths", where), where + ".lengths");
  s.pair_cost = doc.contains("pair_costs") ? pair_cost_from_json(doc["pair_costs"], s.base.alphabet, where + ".pair_costs")
                                           : PairCostFunction(s.base.alphabet);
  require_valid(s);
  return s;
}

/// One spec, or a finite union when the document has a "union" list.
inline std::vector<LinearLengthSpec> linlen_specs_from_json(const json& doc, const std::string& where = "spec") {
  std::vector<LinearLengthSpec> out;
  if (doc.is_object() && doc.contains("union")) {
    const auto& members = doc["union"];
    if (!members.is_array() || members.empty()) throw InvalidInput(where + ".union must be a nonempty list");
    for (std::size_t i = 0; i < members.size(); ++i)
      out.push_back(linlen_spec_from_json(members[i], where + ".union[" + std::to_string(i) + "]"));
  } else {
    out.push_back(linlen_spec_from_json(doc, where));
  }
  return out;
}

// ---- reports --------------------------------------------------------------

inline json to_json(const SpectralResult& r) {
  return {{"radius", r.radius}, {"iterations", r.iterations}, {"residual", r.residual}, {"converged", r.converged}};
}

inline json to_json(const EnergyReport& r) {
  json doc = json::object();
  doc["energy"] = r.energy;
  doc["form_used"] = to_string(r.form_used);
  doc["trimmed"] = r.trimmed;
  doc["maximizing_component"] = r.maximizing_component ? json(*r.maximizing_component) : json(nullptr);
  doc["per_component"] = json::array();
  for (const auto& c : r.per_component) {
    json cj = {{"states", c.states}, {"energy", c.energy}, {"singleton_without_loop", c.singleton_without_loop}};
    cj["solver"] = c.solver ? to_json(*c.solver) : json(nullptr);
    doc["per_component"].push_back(std::move(cj));
  }
  return doc;
}

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

inline json to_json(const NondetReport& r) {
  return {{"lambda_plus", r.lambda_plus},
          {"lambda_plus_raw", r.lambda_plus_raw},
          {"energy_v", r.energy_v},
          {"energy_zero", r.energy_zero},
          {"lambda_exact", optional_json(r.lambda_exact)},
          {"lambda_exact_raw", optional_json(r.lambda_exact_raw)},
          {"energy_dfa", optional_json(r.energy_dfa)},
          {"dfa_states", optional_json(r.dfa_states)}};
}

inline json to_json(const SimilarityReport& r) {
  return {{"delta", r.delta},
          {"energy_1", r.energy_1},
          {"energy_2", r.energy_2},
          {"product_states", r.product_states},
          {"normalized", optional_json(r.normalized)}};
}

inline json to_json(const PartitionSeries& s) {
  json doc = json::object();
  doc["kind"] = to_string(s.kind);
  doc["values"] = json::array();
  doc["rates"] = json::array();
  for (const auto& e : s.entries) {
    doc["values"].push_back({{"n", e.n}, {"nonzero", e.nonzero}, {"log_value", e.nonzero ? json(e.log_value) : json(nullptr)}});
    doc["rates"].push_back({{"n", e.n}, {"rate", e.rate}});
  }
  return doc;
}

inline json to_json(const ImplementsReport& r) {
  json doc = {{"holds", r.holds}, {"checked_up_to", r.checked_up_to}};
  if (r.counterexample) {
    const auto& c = *r.counterexample;
    doc["counterexample"] = {{"word", c.word},
                             {"run", c.run},
                             {"word_cost", c.word_cost},
                             {"run_cost", c.run_cost},
                             {"reason", c.reason}};
  } else {
    doc["counterexample"] = nullptr;
  }
  return doc;
}

}  // namespace fea::io
