#pragma once

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <future>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include "classify.hpp"
#include "counting.hpp"
#include "geometry.hpp"
#include "poly.hpp"
#include "types.hpp"

#ifndef DPCOX_DEFAULT_CATALOG
#define DPCOX_DEFAULT_CATALOG "data/catalog.json"
#endif

namespace dpcox {

struct catalog_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CatalogCurve {
  int index = 0;
  std::optional<std::vector<mpq_class>> point;  // image is a singular point
  std::vector<Poly> locus;                      // otherwise its equations
  std::optional<std::vector<mpq_class>> plane_point;
  std::optional<Poly> plane_curve;
};

struct CatalogSingularPoint {
  std::string ade;
  std::vector<mpq_class> point;
  std::vector<int> curves;
};

struct CatalogTriplePoint {
  std::vector<int> curves;
  std::vector<mpq_class> image;
};

struct CatalogIdentity {
  Poly x, e;
};

struct CatalogCase {
  std::string id;
  int degree = 0;
  std::string ade;
  int lines = 0;
  std::optional<int> lambda;
  std::vector<int> weights;
  std::vector<DivisorClass> generators;
  std::vector<std::array<int, 3>> edges;  // 1-based
  DivisorClass relation_degree;
  Poly relation;
  std::vector<Poly> equations, pullbacks, projection;
  std::optional<std::vector<Poly>> inverse;
  std::vector<CatalogSingularPoint> singular_points;
  std::vector<CatalogCurve> curves;
  std::vector<CatalogTriplePoint> triple_points;
  std::vector<CatalogIdentity> identities;

  int num_generators() const { return static_cast<int>(generators.size()); }
  AmbientSpace ambient() const { return {weights}; }
  std::vector<DivisorClass> roots() const {
    std::vector<DivisorClass> r;
    for (auto& g : generators)
      if (intersect(g, g) == -2) r.push_back(g);
    return r;
  }
  std::string type_name() const { return ade + ":" + std::to_string(lines); }
};

struct ToricType {
  int degree = 0;
  std::string name;
  std::string ade;
  int lines = 0;
  std::vector<int> cycle;
};

struct Catalog {
  std::vector<CatalogCase> cases;
  std::vector<ToricType> toric_types;

  const CatalogCase* find(const std::string& id) const {
    for (auto& c : cases)
      if (c.id == id) return &c;
    return nullptr;
  }
};

namespace detail {

using nlohmann::json;

struct Reader {
  std::string path;

  [[noreturn]] void fail(const std::string& what) const { throw catalog_error((path.empty() ? "/" : path) + ": " + what); }
  Reader at(const std::string& key) const { return {path + "/" + key}; }
  Reader at(size_t i) const { return {path + "/" + std::to_string(i)}; }

  void fields(const json& j, const std::set<std::string>& required, const std::set<std::string>& optional = {}) const {
    if (!j.is_object()) fail("expected an object");
    for (auto& [k, v] : j.items())
      if (!required.count(k) && !optional.count(k)) at(k).fail("unknown field");
    for (auto& k : required)
      if (!j.contains(k)) at(k).fail("missing field");
  }
  const json& array(const json& j, std::optional<size_t> size = std::nullopt) const {
    if (!j.is_array()) fail("expected an array");
    if (size && j.size() != *size) fail("expected " + std::to_string(*size) + " entries, got " + std::to_string(j.size()));
    return j;
  }
  int integer(const json& j) const {
    if (!j.is_number_integer()) fail("expected an integer");
    return j.get<int>();
  }
  std::string string(const json& j) const {
    if (!j.is_string()) fail("expected a string");
    return j.get<std::string>();
  }
  mpq_class rational(const json& j) const {
    auto s = string(j);
    try {
      mpq_class q(s);
      q.canonicalize();
      return q;
    } catch (const std::invalid_argument&) {
      fail("not a rational number: " + s);
    }
  }
  std::vector<int> ints(const json& j, std::optional<size_t> size = std::nullopt) const {
    array(j, size);
    std::vector<int> v;
    for (size_t i = 0; i < j.size(); ++i) v.push_back(at(i).integer(j[i]));
    return v;
  }
  std::vector<mpq_class> point(const json& j, size_t size) const {
    array(j, size);
    std::vector<mpq_class> v;
    for (size_t i = 0; i < j.size(); ++i) v.push_back(at(i).rational(j[i]));
    if (std::all_of(v.begin(), v.end(), [](const mpq_class& q) { return q == 0; })) fail("point with all coordinates zero");
    return v;
  }
  Poly poly(const json& j, int nvars) const {
    array(j);
    Poly p(nvars);
    for (size_t i = 0; i < j.size(); ++i) {
      auto t = at(i);
      t.array(j[i], 2);
      auto c = t.at(0).rational(j[i][0]);
      auto e = t.at(1).ints(j[i][1], nvars);
      for (size_t k = 0; k < e.size(); ++k)
        if (e[k] < 0) t.at(1).at(k).fail("negative exponent");
      if (p.coeff(e) != 0) t.fail("repeated monomial");
      p.add_term(e, c);
    }
    return p;
  }
  std::vector<Poly> polys(const json& j, int nvars, std::optional<size_t> size = std::nullopt) const {
    array(j, size);
    std::vector<Poly> v;
    for (size_t i = 0; i < j.size(); ++i) v.push_back(at(i).poly(j[i], nvars));
    return v;
  }
  DivisorClass divisor(const json& j, int degree) const {
    auto v = ints(j, static_cast<size_t>(10 - degree));
    return {degree, std::vector<Coeff>(v.begin(), v.end())};
  }
};

inline CatalogCase parse_case(const json& j, const Reader& r) {
  r.fields(j, {"id", "degree", "ade", "lines", "lambda", "weights", "generators", "edges", "relation_degree", "relation",
               "equations", "pullbacks", "projection", "singular_points", "curves", "triple_points"},
           {"inverse", "identities"});
  CatalogCase c;
  c.id = r.at("id").string(j["id"]);
  c.degree = r.at("degree").integer(j["degree"]);
  if (c.degree < 1 || c.degree > 6) r.at("degree").fail("degree must lie in 1..6");
  c.ade = r.at("ade").string(j["ade"]);
  try {
    Ade::parse(c.ade);
  } catch (const std::exception& e) {
    r.at("ade").fail(e.what());
  }
  c.lines = r.at("lines").integer(j["lines"]);
  if (!j["lambda"].is_null()) {
    c.lambda = r.at("lambda").integer(j["lambda"]);
    if (*c.lambda != 0 && *c.lambda != 1) r.at("lambda").fail("lambda must be 0 or 1");
  }
  const int d = c.degree, ng = 13 - d;
  c.weights = r.at("weights").ints(j["weights"]);
  if (c.weights != AmbientSpace::for_degree(d).weights) r.at("weights").fail("weights do not match the degree");
  const int nx = static_cast<int>(c.weights.size());

  auto rg = r.at("generators");
  rg.array(j["generators"], ng);
  for (size_t i = 0; i < j["generators"].size(); ++i) c.generators.push_back(rg.at(i).divisor(j["generators"][i], d));

  auto re = r.at("edges");
  re.array(j["edges"]);
  for (size_t i = 0; i < j["edges"].size(); ++i) {
    auto v = re.at(i).ints(j["edges"][i], 3);
    if (v[0] < 1 || v[0] > ng || v[1] < 1 || v[1] > ng || v[0] == v[1]) re.at(i).fail("edge endpoint out of range");
    c.edges.push_back({v[0], v[1], v[2]});
  }
  c.relation_degree = r.at("relation_degree").divisor(j["relation_degree"], d);
  c.relation = r.at("relation").poly(j["relation"], ng);
  if (c.relation.is_zero()) r.at("relation").fail("empty relation");
  c.equations = r.at("equations").polys(j["equations"], nx);
  c.pullbacks = r.at("pullbacks").polys(j["pullbacks"], ng, nx);
  c.projection = r.at("projection").polys(j["projection"], nx, 3);
  if (j.contains("inverse")) c.inverse = r.at("inverse").polys(j["inverse"], 3, nx);

  auto rs = r.at("singular_points");
  rs.array(j["singular_points"]);
  for (size_t i = 0; i < j["singular_points"].size(); ++i) {
    auto& s = j["singular_points"][i];
    auto ri = rs.at(i);
    ri.fields(s, {"ade", "point", "curves"});
    c.singular_points.push_back({ri.at("ade").string(s["ade"]), ri.at("point").point(s["point"], nx),
                                 ri.at("curves").ints(s["curves"])});
  }

  auto rc = r.at("curves");
  rc.array(j["curves"], ng);
  for (size_t i = 0; i < j["curves"].size(); ++i) {
    auto& s = j["curves"][i];
    auto ri = rc.at(i);
    ri.fields(s, {"index"}, {"point", "locus", "plane_point", "plane_curve"});
    CatalogCurve cv;
    cv.index = ri.at("index").integer(s["index"]);
    if (cv.index != static_cast<int>(i) + 1) ri.at("index").fail("curves must be listed in generator order");
    if (s.contains("point") == s.contains("locus")) ri.fail("exactly one of point and locus is required");
    if (s.contains("plane_point") == s.contains("plane_curve")) ri.fail("exactly one of plane_point and plane_curve is required");
    if (s.contains("point")) cv.point = ri.at("point").point(s["point"], nx);
    if (s.contains("locus")) cv.locus = ri.at("locus").polys(s["locus"], nx);
    if (s.contains("plane_point")) cv.plane_point = ri.at("plane_point").point(s["plane_point"], 3);
    if (s.contains("plane_curve")) cv.plane_curve = ri.at("plane_curve").poly(s["plane_curve"], 3);
    c.curves.push_back(std::move(cv));
  }

  auto rt = r.at("triple_points");
  rt.array(j["triple_points"]);
  for (size_t i = 0; i < j["triple_points"].size(); ++i) {
    auto& s = j["triple_points"][i];
    auto ri = rt.at(i);
    ri.fields(s, {"curves", "image"});
    c.triple_points.push_back({ri.at("curves").ints(s["curves"], 3), ri.at("image").point(s["image"], nx)});
  }

  if (j.contains("identities")) {
    auto ri = r.at("identities");
    ri.array(j["identities"]);
    for (size_t i = 0; i < j["identities"].size(); ++i) {
      auto& s = j["identities"][i];
      auto rk = ri.at(i);
      rk.fields(s, {"x", "e"});
      c.identities.push_back({rk.at("x").poly(s["x"], nx), rk.at("e").poly(s["e"], ng)});
    }
  }
  return c;
}

inline ToricType parse_toric(const json& j, const Reader& r) {
  r.fields(j, {"degree", "ade", "lines", "cycle"}, {"name"});
  ToricType t;
  t.degree = r.at("degree").integer(j["degree"]);
  if (t.degree < 3 || t.degree > 9) r.at("degree").fail("toric types live in degrees 3..9");
  if (j.contains("name")) t.name = r.at("name").string(j["name"]);
  t.ade = r.at("ade").string(j["ade"]);
  t.lines = r.at("lines").integer(j["lines"]);
  t.cycle = r.at("cycle").ints(j["cycle"]);
  return t;
}

}  // namespace detail

inline Catalog load_catalog(std::istream& in) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw catalog_error(std::string("/: parse error: ") + e.what());
  }
  detail::Reader r;
  r.fields(j, {"schema", "cases", "toric_types"});
  if (r.at("schema").integer(j["schema"]) != 1) r.at("schema").fail("unsupported schema version");
  Catalog cat;
  auto rc = r.at("cases");
  rc.array(j["cases"]);
  std::set<std::string> ids;
  for (size_t i = 0; i < j["cases"].size(); ++i) {
    cat.cases.push_back(detail::parse_case(j["cases"][i], rc.at(i)));
    if (!ids.insert(cat.cases.back().id).second) rc.at(i).at("id").fail("duplicate id " + cat.cases.back().id);
  }
  std::stable_sort(cat.cases.begin(), cat.cases.end(), [](const CatalogCase& a, const CatalogCase& b) { return a.id < b.id; });
  auto rt = r.at("toric_types");
  rt.array(j["toric_types"]);
  for (size_t i = 0; i < j["toric_types"].size(); ++i) cat.toric_types.push_back(detail::parse_toric(j["toric_types"][i], rt.at(i)));
  return cat;
}

inline std::string default_catalog_path() {
  if (const char* p = std::getenv("DPCOX_CATALOG"); p && *p) return p;
  return DPCOX_DEFAULT_CATALOG;
}

inline Catalog load_catalog_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw catalog_error("cannot open catalog " + path);
  return load_catalog(f);
}

// ---- verification battery

struct CheckOutcome {
  int number = 0;
  std::string name;
  bool ok = false;
  std::string message;
};

struct CaseReport {
  std::string id;
  std::vector<CheckOutcome> checks;

  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckOutcome& c) { return c.ok; });
  }
  const CheckOutcome& check(int n) const { return checks.at(n - 1); }
};

inline const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{
      "relation homogeneous of the stated degree",
      "monomials of the relation degree",
      "generators reproduce the diagram",
      "pullbacks homogeneous of degree -w*K",
      "equations divisible by the relation",
      "identities hold modulo the relation",
      "singular and triple points",
      "curve loci lie on the surface",
      "phi/psi round trip",
      "lattice classification"};
  return names;
}

// plane curves of the non-contracted generators substituted into the pullbacks
inline std::vector<Poly> derived_psi(const CatalogCase& c) {
  std::vector<std::optional<Poly>> pc;
  for (auto& cv : c.curves) pc.push_back(cv.plane_curve);
  return psi_from_pullbacks(c.pullbacks, pc);
}

namespace detail {

inline CheckResult check_relation_degree(const CatalogCase& c) {
  auto deg = graded_degree(c.relation, c.generators);
  if (!deg) return CheckResult::fail("relation is not homogeneous");
  if (!(*deg == c.relation_degree)) return CheckResult::fail("relation has degree " + deg->str());
  return {};
}

inline CheckResult check_monomial_count(const CatalogCase& c) {
  Counter counter(c.generators);
  auto mons = counter.monomials(c.relation_degree);
  const long long want = euler_char(c.relation_degree) + 1;
  if (static_cast<long long>(mons.size()) != want)
    return CheckResult::fail(std::to_string(mons.size()) + " monomials of degree " + c.relation_degree.str() + ", expected " +
                             std::to_string(want));
  std::set<std::vector<int>> all(mons.begin(), mons.end());
  for (auto& [e, k] : c.relation.terms())
    if (!all.count(e)) return CheckResult::fail("relation term outside the degree");
  if (c.relation.size() < 2) return CheckResult::fail("relation has fewer than two terms");
  return {};
}

inline CheckResult check_diagram(const CatalogCase& c) {
  const int n = c.num_generators();
  std::map<std::pair<int, int>, int> listed;
  for (auto& e : c.edges) {
    auto key = std::minmax(e[0], e[1]);
    if (listed.count(key)) return CheckResult::fail("edge listed twice");
    listed[key] = e[2];
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Coeff v = intersect(c.generators[i], c.generators[j]);
      auto it = listed.find({i + 1, j + 1});
      Coeff want = it == listed.end() ? 0 : it->second;
      if (v != want)
        return CheckResult::fail("E" + std::to_string(i + 1) + ".E" + std::to_string(j + 1) + " = " + std::to_string(v) +
                                 ", diagram says " + std::to_string(want));
    }
  for (auto& g : c.generators)
    if (intersect(g, g) >= 0 && anticanonical_degree(g) <= 0) return CheckResult::fail("generator " + g.str() + " is not effective");
  return {};
}

inline CheckResult check_pullbacks(const CatalogCase& c) {
  const auto K = anticanonical(c.degree);
  for (size_t i = 0; i < c.pullbacks.size(); ++i) {
    auto& p = c.pullbacks[i];
    if (p.is_zero()) return CheckResult::fail("pullback of x" + std::to_string(i) + " is zero");
    auto deg = graded_degree(p, c.generators);
    if (!deg || !(*deg == static_cast<Coeff>(c.weights[i]) * K))
      return CheckResult::fail("pullback of x" + std::to_string(i) + " has the wrong degree");
  }
  return {};
}

inline CheckResult check_equations(const CatalogCase& c) {
  if (c.equations.empty()) return CheckResult::fail("no equations");
  for (size_t i = 0; i < c.equations.size(); ++i) {
    Poly F = c.equations[i].substitute(c.pullbacks);
    if (F.is_zero()) continue;
    if (!exact_divide(F, c.relation)) return CheckResult::fail("equation " + std::to_string(i + 1) + " is not a multiple of the relation");
  }
  return {};
}

inline CheckResult check_identities(const CatalogCase& c) {
  for (size_t i = 0; i < c.identities.size(); ++i) {
    Poly diff = c.identities[i].x.substitute(c.pullbacks) - c.identities[i].e;
    if (diff.is_zero()) continue;
    if (!exact_divide(diff, c.relation)) return CheckResult::fail("identity " + std::to_string(i + 1) + " fails");
  }
  return {};
}

inline CheckResult check_points(const CatalogCase& c) {
  const auto A = c.ambient();
  for (auto& s : c.singular_points) {
    PointStatus st;
    try {
      st = singular_point_check(c.equations, s.point, A);
    } catch (const unsupported_chart_error& e) {
      return CheckResult::fail(e.what());
    }
    if (st != PointStatus::Singular) return CheckResult::fail(s.ade + " point is " + to_string(st));
    for (int k : s.curves)
      if (k < 1 || k > c.num_generators() || intersect(c.generators[k - 1], c.generators[k - 1]) != -2)
        return CheckResult::fail("singular point lists a curve that is not a (-2)-curve");
  }
  for (auto& t : c.triple_points)
    for (auto& f : c.equations)
      if (f.evaluate(t.image) != 0) return CheckResult::fail("triple point image is not on the surface");
  return {};
}

inline CheckResult check_loci(const CatalogCase& c) {
  for (auto& cv : c.curves) {
    if (cv.point) {
      for (auto& f : c.equations)
        if (f.evaluate(*cv.point) != 0) return CheckResult::fail("image point of E" + std::to_string(cv.index) + " is not on the surface");
      continue;
    }
    try {
      if (!locus_contained(c.equations, cv.locus))
        return CheckResult::fail("locus of E" + std::to_string(cv.index) + " is not contained in the surface");
    } catch (const resource_error& e) {
      return CheckResult::fail(e.what());
    }
  }
  return {};
}

inline CheckResult check_roundtrip(const CatalogCase& c) {
  return roundtrip_check(c.equations, c.projection, c.inverse ? *c.inverse : derived_psi(c), c.ambient());
}

inline CheckResult check_classification(const CatalogCase& c, Classifier& classifier) {
  SurfaceType t;
  try {
    t = make_type(c.degree, c.roots());
  } catch (const std::exception& e) {
    return CheckResult::fail(e.what());
  }
  if (t.ade.str() != c.ade || t.num_lines != c.lines)
    return CheckResult::fail("roots give type " + t.name() + ", catalog says " + c.type_name());
  Classification k;
  try {
    k = classifier.classify(t);
  } catch (const std::exception& e) {
    return CheckResult::fail(e.what());
  }
  if (k.verdict != Verdict::OneRelation) return CheckResult::fail("classified as " + to_string(k.verdict));
  auto a = k.generators, b = c.generators;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) return CheckResult::fail("generator degrees differ");
  if (!(*k.relation_degree == c.relation_degree))
    return CheckResult::fail("relation degree " + k.relation_degree->str() + " differs");
  return {};
}

}  // namespace detail

inline CaseReport verify_case(const CatalogCase& c, Classifier& classifier) {
  CaseReport rep{c.id, {}};
  auto run = [&](int n, auto&& f) {
    CheckOutcome o{n, check_names()[n - 1], false, {}};
    try {
      auto r = f();
      o.ok = r.ok;
      o.message = r.message;
    } catch (const std::exception& e) {
      o.message = e.what();
    }
    rep.checks.push_back(std::move(o));
  };
  run(1, [&] { return detail::check_relation_degree(c); });
  run(2, [&] { return detail::check_monomial_count(c); });
  run(3, [&] { return detail::check_diagram(c); });
  run(4, [&] { return detail::check_pullbacks(c); });
  run(5, [&] { return detail::check_equations(c); });
  run(6, [&] { return detail::check_identities(c); });
  run(7, [&] { return detail::check_points(c); });
  run(8, [&] { return detail::check_loci(c); });
  run(9, [&] { return detail::check_roundtrip(c); });
  run(10, [&] { return detail::check_classification(c, classifier); });
  return rep;
}

inline CaseReport verify_case(const CatalogCase& c) {
  Classifier classifier;
  return verify_case(c, classifier);
}

// one task per case, reports in input order
inline std::vector<CaseReport> verify_cases(const std::vector<const CatalogCase*>& cases) {
  Classifier classifier;
  std::vector<std::future<CaseReport>> jobs;
  for (auto* c : cases) jobs.push_back(std::async(std::launch::async, [c, &classifier] { return verify_case(*c, classifier); }));
  std::vector<CaseReport> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

// copy of c with the k-th relation coefficient changed
inline CatalogCase mutate_relation(const CatalogCase& c, size_t k) {
  CatalogCase m = c;
  if (k >= c.relation.size()) throw std::out_of_range("mutate_relation: no such term");
  auto it = c.relation.terms().begin();
  std::advance(it, static_cast<long>(k));
  m.relation.add_term(it->first, 1);  // +1 -> 2, -1 -> 0
  if (m.relation.coeff(it->first) == 0) m.relation.add_term(it->first, -2);
  return m;
}

}  // namespace dpcox
