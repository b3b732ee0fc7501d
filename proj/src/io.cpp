#include "logbm/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace logbm {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t dim_field(const Json& j) {
  const Json& d = field(j, "dim");
  if (!d.is_number_integer() || d.get<long>() < 1) throw ParseError("'dim' must be a positive integer");
  return d.get<std::size_t>();
}

void expect_size(const Vec& v, std::size_t n, const char* what) {
  if (v.size() != n) throw ParseError(std::string(what) + " has length " + std::to_string(v.size()) + ", expected " + std::to_string(n));
}

Verdict verdict_from_name(const std::string& s) {
  for (Verdict v : {Verdict::kHolds, Verdict::kEquality, Verdict::kViolated, Verdict::kUndetermined})
    if (s == verdict_name(v)) return v;
  throw ParseError("unknown verdict '" + s + "'");
}

}  // namespace

Json to_json(const Scalar& s) {
  if (s.is_exact()) return s.str();
  const double d = s.to_double();
  if (std::isnan(d)) return nullptr;
  return d;
}

Scalar scalar_from_json(const Json& j) {
  if (j.is_null()) return Scalar::from_double(std::numeric_limits<double>::quiet_NaN());
  if (j.is_number_integer()) return Scalar(j.get<long>());
  if (j.is_number_float()) return Scalar::from_double(j.get<double>());
  if (j.is_string()) {
    try {
      return Scalar::parse(j.get<std::string>());
    } catch (const std::exception&) {
      throw ParseError("not a number: '" + j.get<std::string>() + "'");
    }
  }
  throw ParseError("expected a number or a \"p/q\" string, got " + j.dump());
}

Json to_json(const Vec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

Vec vec_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array, got " + j.dump());
  Vec v;
  for (const auto& x : j) v.push_back(scalar_from_json(x));
  return v;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected a matrix, got " + j.dump());
  Matrix m;
  for (const auto& row : j) m.push_back(vec_from_json(row));
  return m;
}

Json to_json(const Body& b) {
  return std::visit(Overloaded{[](const Zonotope& z) {
                                 Json gens = Json::array();
                                 for (const auto& g : z.generators())
                                   gens.push_back({{"u", to_json(g.direction)}, {"lambda", to_json(g.weight)}});
                                 return Json{{"kind", "zonotope"}, {"dim", z.dim()}, {"generators", gens}};
                               },
                               [](const SymmetricPolytope& p) {
                                 Json vs = Json::array();
                                 for (const auto& v : p.vertex_pairs()) vs.push_back(to_json(v));
                                 return Json{{"kind", "polytope"}, {"dim", p.dim()}, {"vertices", vs}};
                               },
                               [](const SmoothBody& s) {
                                 Json ms = Json::array();
                                 for (const auto& m : s.matrices()) {
                                   Json rows = Json::array();
                                   for (const auto& r : m) rows.push_back(to_json(r));
                                   ms.push_back(rows);
                                 }
                                 return Json{{"kind", "smooth"}, {"dim", s.dim()}, {"matrices", ms}};
                               }},
                    b);
}

Body body_from_json(const Json& j) {
  const Json& kind = field(j, "kind");
  if (!kind.is_string()) throw ParseError("'kind' must be a string");
  const std::string k = kind.get<std::string>();
  const std::size_t n = dim_field(j);
  try {
    if (k == "zonotope") {
      std::vector<Generator> gens;
      for (const auto& g : field(j, "generators")) {
        Vec u = vec_from_json(field(g, "u"));
        expect_size(u, n, "generator");
        Scalar w = g.contains("lambda") ? scalar_from_json(g.at("lambda")) : Scalar(1);
        if (w.sign() <= 0) throw ParseError("generator weights must be positive");
        gens.push_back({std::move(u), std::move(w)});
      }
      return Zonotope(n, std::move(gens));
    }
    if (k == "polytope") {
      std::vector<Vec> vs;
      for (const auto& v : field(j, "vertices")) {
        vs.push_back(vec_from_json(v));
        expect_size(vs.back(), n, "vertex");
      }
      return SymmetricPolytope(n, std::move(vs));
    }
    if (k == "smooth") {
      std::vector<Matrix> ms;
      for (const auto& m : field(j, "matrices")) ms.push_back(matrix_from_json(m));
      return SmoothBody(n, std::move(ms));
    }
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid ") + k + ": " + e.what());
  }
  throw ParseError("unknown body kind '" + k + "'");
}

Json to_json(const AtomicSphericalMeasure& m) {
  Json atoms = Json::array();
  for (const auto& a : m.atoms()) atoms.push_back({{"w", to_json(a.w)}, {"c", to_json(a.c)}});
  return Json{{"dim", m.dim()},
              {"encoding", m.encoding() == MassEncoding::kScaled ? "scaled" : "direct"},
              {"atoms", atoms}};
}

Json to_json(const InequalityReport& r) {
  Json details = Json::object();
  for (const auto& [key, value] : r.details) details[key] = value;
  return Json{{"name", r.name},
              {"n", r.n},
              {"form", r.form},
              {"lhs", to_json(r.lhs)},
              {"rhs", to_json(r.rhs)},
              {"deficit", to_json(r.deficit)},
              {"error_bound", r.error_bound},
              {"verdict", verdict_name(r.verdict)},
              {"details", details}};
}

InequalityReport report_from_json(const Json& j) {
  InequalityReport r;
  try {
    r.name = field(j, "name").get<std::string>();
    r.n = field(j, "n").get<std::size_t>();
    r.form = field(j, "form").get<std::string>();
    r.lhs = scalar_from_json(field(j, "lhs"));
    r.rhs = scalar_from_json(field(j, "rhs"));
    r.deficit = scalar_from_json(field(j, "deficit"));
    r.error_bound = field(j, "error_bound").get<double>();
    r.verdict = verdict_from_name(field(j, "verdict").get<std::string>());
    for (const auto& [key, value] : field(j, "details").items()) r.details[key] = value.get<std::string>();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
  return r;
}

Json to_json(const DecompositionCertificate& c) {
  Json witness = Json::array();
  for (const auto& w : c.witness_atoms) witness.push_back(to_json(w));
  Json scales = Json::array();
  for (const auto& s : c.scales) scales.push_back(to_json(s));
  Json j{{"valid", c.valid}, {"components", c.components}, {"dims", c.dims}, {"scales", scales}};
  if (!c.valid) {
    j["reason"] = c.reason;
    j["witness_atoms"] = witness;
  }
  return j;
}

Json to_json(const MeasureEqualityReport& r) {
  return Json{{"matched", r.matched},
              {"a", to_json(r.a)},
              {"max_discrepancy", to_json(r.max_discrepancy)},
              {"lhs", to_json(r.lhs)},
              {"rhs", to_json(r.rhs)}};
}

std::string report_csv_header() { return "name,n,verdict,deficit,deficit_exact"; }

std::string report_csv_row(const InequalityReport& r) {
  std::ostringstream out;
  out.precision(17);
  out << r.name << ',' << r.n << ',' << verdict_name(r.verdict) << ',' << r.deficit.to_double() << ','
      << r.deficit.str();
  return out.str();
}

const Body& BodiesFile::get(const std::string& name) const {
  auto it = bodies.find(name);
  if (it == bodies.end()) throw ParseError("task refers to unknown body '" + name + "'");
  return it->second;
}

BodiesFile bodies_file_from_json(const Json& j) {
  BodiesFile f;
  const Json& bodies = field(j, "bodies");
  if (!bodies.is_object()) throw ParseError("'bodies' must be an object of named bodies");
  for (const auto& [name, b] : bodies.items()) {
    try {
      f.bodies.emplace(name, body_from_json(b));
    } catch (const ParseError& e) {
      throw ParseError("body '" + name + "': " + e.what());
    }
  }
  const Json& task = field(j, "task");
  try {
    f.task.k = field(task, "K").get<std::string>();
    if (task.contains("L")) f.task.l = task.at("L").get<std::string>();
    if (task.contains("M")) f.task.m = task.at("M").get<std::string>();
    if (task.contains("level")) f.task.level = task.at("level").get<int>();
    if (task.contains("grid")) f.task.grid = task.at("grid").get<std::size_t>();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed task: ") + e.what());
  }
  if (task.contains("t")) f.task.t = scalar_from_json(task.at("t"));
  if (task.contains("u")) f.task.u = vec_from_json(task.at("u"));
  f.get(f.task.k);
  if (!f.task.l.empty()) f.get(f.task.l);
  if (f.task.m) f.get(*f.task.m);
  return f;
}

Json to_json(const BodiesFile& f) {
  Json bodies = Json::object();
  for (const auto& [name, b] : f.bodies) bodies[name] = to_json(b);
  Json task{{"K", f.task.k}};
  if (!f.task.l.empty()) task["L"] = f.task.l;
  if (f.task.m) task["M"] = *f.task.m;
  if (f.task.t) task["t"] = to_json(*f.task.t);
  if (f.task.u) task["u"] = to_json(*f.task.u);
  if (f.task.level) task["level"] = *f.task.level;
  if (f.task.grid) task["grid"] = *f.task.grid;
  return Json{{"bodies", bodies}, {"task", task}};
}

BodiesFile load_bodies_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return bodies_file_from_json(j);
}

BodiesFile bodies_file_for(const CheckInstance& inst) {
  BodiesFile f;
  f.bodies.emplace("K", inst.k);
  f.bodies.emplace("L", inst.l);
  f.task.k = "K";
  f.task.l = "L";
  if (inst.check == "bm") f.task.t = inst.t;
  if (inst.check == "indstep") f.task.u = inst.u;
  return f;
}

}  // namespace logbm
