#include <CLI11.hpp>

#include <chrono>
#include <iostream>

#include "dpcox/report.hpp"

using namespace dpcox;
using nlohmann::json;

namespace {

struct Options {
  std::string format = "table";
  std::string catalog;
  bool timings = false;
};

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Timer {
 public:
  explicit Timer(bool on, std::string what) : on_(on), what_(std::move(what)), t0_(std::chrono::steady_clock::now()) {}
  ~Timer() {
    if (on_)
      std::cerr << what_ << ": " << std::fixed << std::setprecision(2)
                << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count() << " s\n";
  }

 private:
  bool on_;
  std::string what_;
  std::chrono::steady_clock::time_point t0_;
};

Catalog open_catalog(const Options& o) {
  return load_catalog_file(o.catalog.empty() ? default_catalog_path() : o.catalog);
}

void check_degree(int d) {
  if (d < 1 || d > 7) throw Usage("--degree must lie in 1..7");
}

void print_type_table(const std::vector<TypeVerdict>& vs, const std::vector<SurfaceType>& all) {
  for (auto& v : vs) {
    auto& c = v.result;
    std::cout << "degree " << v.type.degree << "  " << display_name(v.type, all) << "  (" << v.type.num_lines
              << " lines): " << to_string(c.verdict);
    if (c.reason != MultiReason::None) std::cout << " [" << to_string(c.reason) << "]";
    if (c.assumption_dependent) std::cout << " (assumption-dependent)";
    std::cout << "\n";
    std::cout << "  generators:";
    for (size_t i = 0; i < c.generators.size(); ++i) std::cout << (i == c.negative_count ? " |" : "") << " " << c.generators[i];
    std::cout << "\n";
    if (c.relation_degree) std::cout << "  relation degree: " << *c.relation_degree << "\n";
    if (!c.detail.empty()) std::cout << "  " << c.detail << "\n";
  }
}

int cmd_enumerate(const Options& o, int d) {
  check_degree(d);
  Timer timer(o.timings, "enumerate");
  auto types = enumerate_types(d);
  if (o.format == "json") {
    json out = json::array();
    for (auto& t : types) {
      json j;
      j["degree"] = d;
      j["type"] = display_name(t, types);
      j["ade"] = t.ade.str();
      j["lines"] = t.num_lines;
      auto g = build_ext_dynkin(t);
      j["curves"] = json::array();
      for (auto& D : g.classes) j["curves"].push_back(D.str());
      j["diagram"] = g.m;
      out.push_back(j);
    }
    std::cout << out.dump(1) << "\n";
    return 0;
  }
  for (auto& t : types) {
    auto g = build_ext_dynkin(t);
    std::cout << "degree " << d << "  " << display_name(t, types) << "  (" << t.num_lines << " lines)\n";
    for (int v = 0; v < g.size(); ++v) {
      std::cout << "  E" << v + 1 << " = " << g.classes[v] << " (" << g.self(v) << ")";
      bool first = true;
      for (int w = 0; w < g.size(); ++w)
        if (w != v && g.edge(v, w) != 0) {
          std::cout << (first ? "  meets" : ",") << " E" << w + 1;
          if (g.edge(v, w) > 1) std::cout << "x" << g.edge(v, w);
          first = false;
        }
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_classify(const Options& o, int d, const std::string& type) {
  check_degree(d);
  Timer timer(o.timings, "classify");
  auto all = enumerate_types(d);
  std::vector<SurfaceType> todo = all;
  if (!type.empty()) {
    std::pair<Ade, std::optional<int>> want;
    try {
      want = parse_type_name(type);
    } catch (const std::exception& e) {
      throw Usage(std::string("--type: ") + e.what());
    }
    std::optional<SurfaceType> hit;
    try {
      hit = find_type(all, want.first, want.second);
    } catch (const std::invalid_argument& e) {
      throw Usage(e.what());
    }
    if (!hit) throw Usage("no type " + type + " in degree " + std::to_string(d));
    todo = {*hit};
  }
  Classifier classifier;
  auto vs = classify_all(todo, classifier);
  if (o.format == "json") {
    json out = json::array();
    for (auto& v : vs) out.push_back(to_json(v, display_name(v.type, all)));
    std::cout << out.dump(1) << "\n";
  } else {
    print_type_table(vs, all);
  }
  return 0;
}

int cmd_verify(const Options& o, const std::vector<std::string>& ids, bool all, std::optional<int> lambda) {
  if (ids.empty() && !all) throw Usage("verify needs --case ID or --all");
  if (lambda && *lambda != 0 && *lambda != 1) throw Usage("--lambda must be 0 or 1");
  auto cat = open_catalog(o);
  Timer timer(o.timings, "verify");
  std::vector<const CatalogCase*> sel;
  if (all) {
    for (auto& c : cat.cases) sel.push_back(&c);
  } else {
    for (auto& id : ids) {
      auto* c = cat.find(id);
      if (!c) throw Usage("no catalog case " + id);
      sel.push_back(c);
    }
  }
  if (lambda) std::erase_if(sel, [&](const CatalogCase* c) { return c->lambda && *c->lambda != *lambda; });
  auto reps = verify_cases(sel);
  int passed = 0;
  for (auto& r : reps) passed += r.ok();
  if (o.format == "json") {
    json out;
    out["cases"] = json::array();
    for (auto& r : reps) out["cases"].push_back(to_json(r));
    out["passed"] = passed;
    out["total"] = reps.size();
    std::cout << out.dump(1) << "\n";
  } else {
    for (auto& r : reps) {
      std::cout << (r.ok() ? "PASS " : "FAIL ") << r.id << "\n";
      for (auto& c : r.checks)
        if (!c.ok) std::cout << "  check " << c.number << " (" << c.name << "): " << c.message << "\n";
    }
    std::cout << passed << "/" << reps.size() << " cases pass\n";
  }
  return passed == static_cast<int>(reps.size()) ? 0 : 1;
}

int cmd_report(const Options& o, bool table2, const std::vector<int>& deep, double budget) {
  if (!table2) throw Usage("report needs --table2");
  for (int d : deep)
    if (d != 1 && d != 2) throw Usage("--deep-enum-degree takes 2 or 1");
  Timer timer(o.timings, "report");
  Classifier classifier;
  std::vector<Table2Row> rows;
  for (int d = 9; d >= 8; --d) rows.push_back(table2_small_degree(d, classifier));
  for (int d = 7; d >= 3; --d) rows.push_back(table2_enumerated(d, classifier));
  std::optional<Catalog> cat;
  for (int d = 2; d >= 1; --d) {
    if (std::find(deep.begin(), deep.end(), d) != deep.end()) {
      rows.push_back(table2_enumerated(d, classifier, budget));
    } else {
      if (!cat) cat = open_catalog(o);
      rows.push_back(table2_from_catalog(d, *cat, classifier));
    }
  }
  if (o.format == "json") {
    json out;
    out["table2"] = json::array();
    for (auto& r : rows) out["table2"].push_back(to_json(r));
    std::cout << out.dump(1) << "\n";
  } else {
    std::cout << table2_text(rows);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cox rings of generalized del Pezzo surfaces: type enumeration, classification and catalog checks"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"table", "json"}));
  app.add_option("--catalog", o.catalog, "Catalog file (default: $DPCOX_CATALOG or the bundled one)");
  app.add_flag("--timings", o.timings, "Print elapsed times to stderr");

  int degree = 0;
  auto* en = app.add_subcommand("enumerate", "List the types of one degree with their negative curves");
  en->add_option("--degree", degree, "Degree 1..7")->required();

  std::string type;
  int cdegree = 0;
  auto* cl = app.add_subcommand("classify", "Decide toric / one relation / more relations");
  cl->add_option("--degree", cdegree, "Degree 1..7")->required();
  cl->add_option("--type", type, "ADE label, with :lines when ambiguous");

  std::vector<std::string> ids;
  bool all = false;
  std::optional<int> lambda;
  auto* ve = app.add_subcommand("verify", "Run the check battery on catalog entries");
  ve->add_option("--case", ids, "Catalog id (repeatable)");
  ve->add_flag("--all", all, "Every catalog entry");
  ve->add_option("--lambda", lambda, "Only this variant of parameterized entries");

  bool table2 = false;
  std::vector<int> deep;
  double budget = 600;
  auto* re = app.add_subcommand("report", "Summary tables");
  re->add_flag("--table2", table2, "Counts of toric / one-relation / other types per degree");
  re->add_option("--deep-enum-degree", deep, "Fully enumerate degree 2 and/or 1 instead of using catalog inputs");
  re->add_option("--time-budget", budget, "Seconds allowed per deep enumeration")->check(CLI::PositiveNumber);

  for (auto* s : {en, cl, ve, re}) {
    s->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"table", "json"}));
    s->add_option("--catalog", o.catalog, "Catalog file");
    s->add_flag("--timings", o.timings, "Print elapsed times to stderr");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*en) return cmd_enumerate(o, degree);
    if (*cl) return cmd_classify(o, cdegree, type);
    if (*ve) return cmd_verify(o, ids, all, lambda);
    if (*re) return cmd_report(o, table2, deep, budget);
  } catch (const Usage& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const catalog_error& e) {
    std::cerr << "catalog error: " << e.what() << "\n";
    return 2;
  } catch (const budget_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
