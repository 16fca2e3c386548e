#pragma once

#include <nlohmann/json.hpp>

#include <chrono>
#include <future>
#include <iomanip>
#include <sstream>

#include "catalog.hpp"
#include "classify.hpp"
#include "types.hpp"

namespace dpcox {

struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TypeVerdict {
  SurfaceType type;
  Classification result;
};

// Classifies in parallel; results come back in input order.
inline std::vector<TypeVerdict> classify_all(const std::vector<SurfaceType>& types, Classifier& classifier,
                                             std::optional<double> budget_seconds = std::nullopt) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::future<Classification>> jobs;
  for (auto& t : types) jobs.push_back(std::async(std::launch::async, [&classifier, &t] { return classifier.classify(t); }));
  std::vector<TypeVerdict> out;
  for (size_t i = 0; i < types.size(); ++i) {
    if (budget_seconds) {
      const auto limit = start + std::chrono::duration<double>(*budget_seconds);
      if (jobs[i].wait_until(limit) != std::future_status::ready) {
        for (auto& j : jobs) j.wait();
        throw budget_error("time budget of " + std::to_string(*budget_seconds) + " s exceeded");
      }
    }
    out.push_back({types[i], jobs[i].get()});
  }
  return out;
}

// "A3" or "A3:5"
inline std::pair<Ade, std::optional<int>> parse_type_name(const std::string& s) {
  auto colon = s.find(':');
  std::optional<int> lines;
  std::string ade = s.substr(0, colon);
  if (colon != std::string::npos) {
    const std::string n = s.substr(colon + 1);
    if (n.empty() || !std::all_of(n.begin(), n.end(), ::isdigit)) throw std::invalid_argument("bad line count in " + s);
    lines = std::stoi(n);
  }
  return {Ade::parse(ade), lines};
}

// Display name: the line count is added only when the ADE label alone is ambiguous in that degree.
inline std::string display_name(const SurfaceType& t, const std::vector<SurfaceType>& all) {
  int same = 0;
  for (auto& u : all) same += u.ade == t.ade;
  return same > 1 ? t.name() : t.ade.str();
}

struct Table2Row {
  int degree = 0;
  int toric = 0;
  int one = 0;
  std::optional<int> multi;  // unknown when only catalog inputs were classified
  std::string source;
  bool assumption_dependent = false;
};

inline void tally(Table2Row& row, const std::vector<TypeVerdict>& vs) {
  row.multi = row.multi.value_or(0);
  for (auto& v : vs) {
    if (v.result.verdict == Verdict::Toric) ++row.toric;
    if (v.result.verdict == Verdict::OneRelation) ++row.one;
    if (v.result.verdict == Verdict::MultiRelation) ++*row.multi;
  }
}

// Degrees 9 and 8 are not covered by the root-system enumeration. The blow-ups of P2 are classified;
// P1xP1 and the Hirzebruch surface F2 are toric and added directly.
inline Table2Row table2_small_degree(int d, Classifier& classifier) {
  Table2Row row{d, 0, 0, 0, "classification", false};
  tally(row, classify_all({make_type(d, {})}, classifier));
  if (d == 8) row.toric += 2;
  return row;
}

inline Table2Row table2_enumerated(int d, Classifier& classifier, std::optional<double> budget = std::nullopt) {
  Table2Row row{d, 0, 0, 0, "enumeration", d == 1};
  tally(row, classify_all(enumerate_types(d), classifier, budget));
  return row;
}

// One representative root basis per catalog type of degree d.
inline std::vector<SurfaceType> catalog_inputs(const Catalog& cat, int d) {
  std::vector<SurfaceType> out;
  std::set<std::string> seen;
  for (auto& c : cat.cases) {
    if (c.degree != d || !seen.insert(c.type_name()).second) continue;
    out.push_back(make_type(d, c.roots()));
  }
  return out;
}

inline Table2Row table2_from_catalog(int d, const Catalog& cat, Classifier& classifier) {
  Table2Row row{d, 0, 0, std::nullopt, "catalog inputs", d == 1};
  auto vs = classify_all(catalog_inputs(cat, d), classifier);
  for (auto& v : vs) {
    if (v.result.verdict == Verdict::OneRelation) ++row.one;
    if (v.result.verdict == Verdict::Toric) ++row.toric;
  }
  return row;
}

inline nlohmann::json to_json(const DivisorClass& D) { return D.coeffs(); }

inline nlohmann::json to_json(const TypeVerdict& v, const std::string& name) {
  nlohmann::json j;
  j["degree"] = v.type.degree;
  j["type"] = name;
  j["ade"] = v.type.ade.str();
  j["lines"] = v.type.num_lines;
  j["verdict"] = to_string(v.result.verdict);
  j["reason"] = to_string(v.result.reason);
  j["assumption_dependent"] = v.result.assumption_dependent;
  nlohmann::json g = nlohmann::json::array();
  for (auto& D : v.result.generators) g.push_back(D.str());
  j["generators"] = g;
  j["negative_curves"] = v.result.negative_count;
  j["relation_degree"] = v.result.relation_degree ? nlohmann::json(v.result.relation_degree->str()) : nlohmann::json(nullptr);
  j["detail"] = v.result.detail;
  return j;
}

inline nlohmann::json to_json(const Table2Row& r) {
  nlohmann::json j;
  j["degree"] = r.degree;
  j["toric"] = r.toric;
  j["one_relation"] = r.one;
  j["multi_relation"] = r.multi ? nlohmann::json(*r.multi) : nlohmann::json(nullptr);
  j["source"] = r.source;
  j["assumption_dependent"] = r.assumption_dependent;
  return j;
}

inline nlohmann::json to_json(const CaseReport& r) {
  nlohmann::json j;
  j["id"] = r.id;
  j["ok"] = r.ok();
  j["checks"] = nlohmann::json::array();
  for (auto& c : r.checks) j["checks"].push_back({{"check", c.number}, {"name", c.name}, {"ok", c.ok}, {"message", c.message}});
  return j;
}

inline std::string table2_text(const std::vector<Table2Row>& rows) {
  std::ostringstream os;
  os << "degree  toric  1 relation  >=2 relations  source\n";
  bool footnote = false;
  for (auto& r : rows) {
    os << std::setw(6) << r.degree << std::setw(7) << r.toric << std::setw(12) << r.one << std::setw(15)
       << (r.multi ? std::to_string(*r.multi) : std::string("?")) << "  " << r.source << (r.assumption_dependent ? " *" : "")
       << "\n";
    footnote |= r.assumption_dependent;
  }
  if (footnote) os << "* assumption-dependent: the one-relation criterion is not proven in degree 1\n";
  if (std::any_of(rows.begin(), rows.end(), [](auto& r) { return !r.multi; }))
    os << "? not computed from catalog inputs; use --deep-enum-degree for the full row\n";
  return os.str();
}

}  // namespace dpcox
