#ifndef QHA_PROBLEM_HPP
#define QHA_PROBLEM_HPP

// Problem files: JSON descriptions of algebras, modules, bimodules,
// endomorphisms, complexes and requested checks.
//
// Schema (all scalars are exact "p/q" strings; bare JSON integers are also
// accepted on input):
//
//   {
//     "field": "Q" | {"Fp": p},
//     "algebras":  { name: { "vertices": n,
//                            "arrows": [ {"name","source","target"}… ],
//                            "relations": [ [ {"coeff","path": [arrow…]}… ]… ] } },
//     "modules":   { name: { "algebra", "dims": [d…],
//                            "actions": { arrow: [[row-major strings]…] } } },
//     "bimodules": { name: { "left_algebra", "right_algebra", "dims", "actions" } },
//     "endos":     { name: { "on", "blocks": [matrix per vertex] }            // modules
//                  | name: { "on", "maps": [blocks per degree] } },           // complexes
//     "complexes": { name: { "lo", "components": [names], "differentials": […] } },
//     "checks":    [ {"identity": "level/version/flavor", "operands": […],
//                     "endos": […]} | {"suite": name}… ]
//   }
//
// Bimodules are stored in their canonical right-module form over the product
// algebra: "dims" lists the product-quiver vertices in layout order and
// "actions" is keyed by the derived arrow names "l:<arrow>:<i>" / "r:<j>:<arrow>".
//
// parse_problem produces a fully validated object graph or throws a
// ValidationError whose message starts with the JSON path of the offending
// field.  emit_problem is canonical: parse → emit → parse is the identity on
// object graphs, and emit is a pure function of the graph.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qha/algebra.hpp"
#include "qha/bimodule.hpp"
#include "qha/complex.hpp"
#include "qha/errors.hpp"
#include "qha/matrix.hpp"
#include "qha/module.hpp"
#include "qha/quiver.hpp"
#include "qha/scalar.hpp"
#include "qha/verify.hpp"

namespace qha {

using Json = nlohmann::ordered_json;

// Raised for problem files that are well-formed JSON but violate the schema:
// bad shapes, dangling references, non-intertwining endomorphisms, modules
// that break a defining relation.  Messages begin with the JSON path.
struct ValidationError : InputError {
  explicit ValidationError(const std::string& what) : InputError(what) {}
};

// --- identity id strings ----------------------------------------------------

inline Level level_from_string(const std::string& s) {
  if (s == "module") return Level::module_level;
  if (s == "bimodule") return Level::bimodule_level;
  if (s == "complex") return Level::complex_level;
  if (s == "bimodule-complex") return Level::bimodule_complex_level;
  throw ValidationError("unknown level '" + s +
                        "' (expected module, bimodule, complex or bimodule-complex)");
}

inline Version version_from_string(const std::string& s) {
  if (s == "cohomological") return Version::cohomological;
  if (s == "homological") return Version::homological;
  if (s == "hochschild-cohomological") return Version::hochschild_cohomological;
  if (s == "hochschild-homological") return Version::hochschild_homological;
  throw ValidationError("unknown version '" + s +
                        "' (expected cohomological, homological, hochschild-cohomological or "
                        "hochschild-homological)");
}

inline Flavor flavor_from_string(const std::string& s) {
  if (s == "HRR") return Flavor::hrr;
  if (s == "Lefschetz") return Flavor::lefschetz;
  throw ValidationError("unknown flavor '" + s + "' (expected HRR or Lefschetz)");
}

// Parses "level/version/flavor" and rejects combinations that do not name an
// identity (the Hochschild versions only exist at module and complex level).
inline IdentityId identity_from_string(const std::string& s) {
  auto first = s.find('/');
  auto last = s.rfind('/');
  if (first == std::string::npos || first == last)
    throw ValidationError("identity '" + s + "' is not of the form level/version/flavor");
  IdentityId id;
  id.level = level_from_string(s.substr(0, first));
  id.version = version_from_string(s.substr(first + 1, last - first - 1));
  id.flavor = flavor_from_string(s.substr(last + 1));
  try {
    check_identity(id);
  } catch (const InvariantViolation& e) {
    throw ValidationError(e.what());
  }
  return id;
}

// The operand kind and count an identity consumes.
enum class OperandKind { module, bimodule, module_complex, bimodule_complex };

inline std::pair<OperandKind, int> identity_operands(const IdentityId& id) {
  const bool hochschild = id.version == Version::hochschild_cohomological ||
                          id.version == Version::hochschild_homological;
  switch (id.level) {
    case Level::module_level:
      return hochschild ? std::pair{OperandKind::bimodule, 1} : std::pair{OperandKind::module, 2};
    case Level::bimodule_level:
      return {OperandKind::bimodule, 2};
    case Level::complex_level:
      return hochschild ? std::pair{OperandKind::bimodule_complex, 1}
                        : std::pair{OperandKind::module_complex, 2};
    case Level::bimodule_complex_level:
      return {OperandKind::bimodule_complex, 2};
  }
  throw InvariantViolation("identity_operands: bad level");
}

// --- the validated object graph ---------------------------------------------

struct CheckRequest {
  std::optional<IdentityId> identity;  // exactly one of identity / suite is set
  std::optional<std::string> suite;
  std::vector<std::string> operands;
  std::vector<std::string> endos;  // empty means identity endomorphisms
};

inline bool operator==(const CheckRequest& a, const CheckRequest& b) {
  return a.identity == b.identity && a.suite == b.suite && a.operands == b.operands &&
         a.endos == b.endos;
}

template <class K>
struct NamedModule {
  std::string algebra;  // algebra name
  RepPtr<K> rep;
};

template <class K>
struct NamedBimodule {
  std::string left, right;  // algebra names
  BimoduleHandle<K> handle;
};

template <class K>
struct NamedComplex {
  bool bimodule = false;
  std::string left, right;              // algebra names ("left" alone for module complexes)
  std::vector<std::string> components;  // module or bimodule names
  BoundedComplex<K> cx;                 // for bimodule complexes: the product-algebra complex
  std::optional<BimoduleComplex<K>> bcx;
};

template <class K>
struct NamedEndo {
  enum class Kind { module, bimodule, complex };
  Kind kind = Kind::module;
  std::string on;
  ModuleMorphism<K> morphism;  // module / bimodule endomorphisms
  ChainMap<K> chain;           // complex endomorphisms
};

template <class K>
struct ProblemFile {
  FieldSpec field;
  K proto{};
  std::map<std::string, typename Algebra<K>::Ptr> algebras;
  std::map<std::string, NamedModule<K>> modules;
  std::map<std::string, NamedBimodule<K>> bimodules;
  std::map<std::string, NamedEndo<K>> endos;
  std::map<std::string, NamedComplex<K>> complexes;
  std::vector<CheckRequest> checks;
};

// --- parsing helpers ----------------------------------------------------------

namespace detail {

inline void expect_object(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ValidationError(path + ": expected an object");
}

inline void expect_array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ValidationError(path + ": expected an array");
}

inline void expect_keys(const Json& j, const std::string& path,
                        std::initializer_list<const char*> allowed) {
  expect_object(j, path);
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || it.key() == k;
    if (!ok) throw ValidationError(path + ": unknown key '" + it.key() + "'");
  }
}

inline const Json& member(const Json& j, const std::string& path, const char* key) {
  expect_object(j, path);
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError(path + ": missing key '" + key + "'");
  return *it;
}

inline const Json* member_opt(const Json& j, const std::string& path, const char* key) {
  expect_object(j, path);
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

inline long long get_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ValidationError(path + ": expected an integer");
  return j.get<long long>();
}

inline std::size_t get_size(const Json& j, const std::string& path) {
  long long v = get_int(j, path);
  if (v < 0) throw ValidationError(path + ": expected a nonnegative integer");
  return static_cast<std::size_t>(v);
}

inline std::string get_string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw ValidationError(path + ": expected a string");
  return j.get<std::string>();
}

// A scalar literal: an exact "p/q" string, or a bare JSON integer.
template <class K>
K get_scalar(const Json& j, const std::string& path, const K& proto) {
  std::string text;
  if (j.is_string())
    text = j.get<std::string>();
  else if (j.is_number_integer())
    text = std::to_string(j.get<long long>());
  else
    throw ValidationError(path + ": expected a rational string or an integer");
  try {
    return scalar_parse(text, proto);
  } catch (const FieldError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

// A matrix literal: an array of `rows` rows, each an array of `cols` scalars.
template <class K>
Matrix<K> get_matrix(const Json& j, const std::string& path, std::size_t rows, std::size_t cols,
                     const K& proto) {
  expect_array(j, path);
  if (j.size() != rows)
    throw ValidationError(path + ": expected " + std::to_string(rows) + " row(s), got " +
                          std::to_string(j.size()));
  Matrix<K> m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const Json& row = j[r];
    const std::string rpath = path + "[" + std::to_string(r) + "]";
    expect_array(row, rpath);
    if (row.size() != cols)
      throw ValidationError(rpath + ": expected " + std::to_string(cols) + " column(s), got " +
                            std::to_string(row.size()));
    for (std::size_t c = 0; c < cols; ++c)
      m(r, c) = get_scalar(row[c], rpath + "[" + std::to_string(c) + "]", proto);
  }
  return m;
}

template <class K>
Json emit_scalar(const K& x) {
  return Json(scalar_to_string(x));
}

template <class K>
Json emit_matrix(const Matrix<K>& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(emit_scalar(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

// If some defining relation fails to act by zero on `m`, returns its index.
template <class K>
std::optional<std::size_t> violated_relation(const Representation<K>& m) {
  const Quiver& q = m.alg->quiver();
  const auto& rels = m.alg->presentation().relations;
  for (std::size_t i = 0; i < rels.size(); ++i) {
    const Path& first = rels[i].terms.front().path;
    Matrix<K> sum(m.dim_at(first.source), m.dim_at(first.target(q)));
    for (const auto& term : rels[i].terms) sum = sum + scale(m.path_action(term.path), term.coeff);
    if (sum.any_nonzero()) return i;
  }
  return std::nullopt;
}

// Builds and fully validates a representation; diagnostics carry `path` and
// name the violated relation when there is one.
template <class K>
RepPtr<K> parse_representation(const Json& dims_j, const Json& actions_j, const std::string& path,
                               typename Algebra<K>::Ptr alg, const std::string& alg_label) {
  const Quiver& q = alg->quiver();
  auto rep = std::make_shared<Representation<K>>();
  rep->alg = alg;

  expect_array(dims_j, path + "/dims");
  if (dims_j.size() != static_cast<std::size_t>(q.num_vertices))
    throw ValidationError(path + "/dims: expected " + std::to_string(q.num_vertices) +
                          " entries, got " + std::to_string(dims_j.size()));
  for (std::size_t v = 0; v < dims_j.size(); ++v)
    rep->dims.push_back(get_size(dims_j[v], path + "/dims[" + std::to_string(v) + "]"));

  expect_object(actions_j, path + "/actions");
  for (auto it = actions_j.begin(); it != actions_j.end(); ++it) {
    bool known = false;
    for (const Arrow& a : q.arrows) known = known || a.name == it.key();
    if (!known) throw ValidationError(path + "/actions: unknown arrow '" + it.key() + "'");
  }
  rep->act.reserve(q.arrows.size());
  for (const Arrow& a : q.arrows) {
    const Json* mj = member_opt(actions_j, path + "/actions", a.name.c_str());
    if (!mj) throw ValidationError(path + "/actions: missing arrow '" + a.name + "'");
    rep->act.push_back(get_matrix(*mj, path + "/actions/" + a.name,
                                  rep->dim_at(a.source), rep->dim_at(a.target), alg->proto()));
  }

  if (auto bad = violated_relation(*rep))
    throw ValidationError(path + ": relation #" + std::to_string(*bad + 1) + " of " + alg_label +
                          " does not act by zero");
  check_representation(*rep);
  return rep;
}

// Per-vertex blocks of a morphism between fixed source and target.
template <class K>
ModuleMorphism<K> parse_morphism_blocks(const Json& j, const std::string& path, RepPtr<K> src,
                                        RepPtr<K> tgt) {
  const Quiver& q = src->alg->quiver();
  expect_array(j, path);
  if (j.size() != static_cast<std::size_t>(q.num_vertices))
    throw ValidationError(path + ": expected " + std::to_string(q.num_vertices) +
                          " block(s), got " + std::to_string(j.size()));
  ModuleMorphism<K> f;
  f.src = std::move(src);
  f.tgt = std::move(tgt);
  for (int v = 1; v <= q.num_vertices; ++v)
    f.blocks.push_back(get_matrix(j[static_cast<std::size_t>(v - 1)],
                                  path + "[" + std::to_string(v - 1) + "]", f.src->dim_at(v),
                                  f.tgt->dim_at(v), f.src->alg->proto()));
  return f;
}

template <class K>
Json emit_morphism_blocks(const ModuleMorphism<K>& f) {
  Json blocks = Json::array();
  for (const auto& b : f.blocks) blocks.push_back(emit_matrix(b));
  return blocks;
}

}  // namespace detail

// --- field spec ---------------------------------------------------------------

// Reads the top-level "field" key: "Q" or {"Fp": p}.
inline FieldSpec problem_field_spec(const Json& j) {
  const Json& f = detail::member(j, "/", "field");
  if (f.is_string()) {
    if (f.get<std::string>() == "Q") return FieldSpec::make_rationals();
    throw ValidationError("/field: unknown field '" + f.get<std::string>() +
                          "' (expected \"Q\" or {\"Fp\": p})");
  }
  if (f.is_object()) {
    detail::expect_keys(f, "/field", {"Fp"});
    long long p = detail::get_int(detail::member(f, "/field", "Fp"), "/field/Fp");
    try {
      return FieldSpec::make_prime(p);
    } catch (const FieldError& e) {
      throw ValidationError("/field/Fp: " + std::string(e.what()));
    }
  }
  throw ValidationError("/field: expected \"Q\" or {\"Fp\": p}");
}

// Parses the command-line form of a field spec: "Q" or "F_<p>".
inline FieldSpec parse_field_string(const std::string& s) {
  if (s == "Q") return FieldSpec::make_rationals();
  if (s.size() > 2 && s.rfind("F_", 0) == 0) {
    long long p = 0;
    for (char c : s.substr(2)) {
      if (c < '0' || c > '9') throw ValidationError("bad field '" + s + "' (expected Q or F_<p>)");
      p = p * 10 + (c - '0');
      if (p > (1LL << 40)) break;
    }
    try {
      return FieldSpec::make_prime(p);
    } catch (const FieldError& e) {
      throw ValidationError("bad field '" + s + "': " + e.what());
    }
  }
  throw ValidationError("bad field '" + s + "' (expected Q or F_<p>)");
}

inline Json emit_field_spec(const FieldSpec& f) {
  if (f.kind == FieldSpec::Kind::rationals) return Json("Q");
  Json j = Json::object();
  j["Fp"] = f.p;
  return j;
}

// --- parse --------------------------------------------------------------------

// Parses a problem file against an already-decided field (normally
// problem_field_spec(j), possibly overridden).  K must match `spec`.
template <class K>
ProblemFile<K> parse_problem(const Json& j, const FieldSpec& spec) {
  detail::expect_keys(j, "/", {"field", "algebras", "modules", "bimodules", "endos", "complexes",
                               "checks"});
  detail::member(j, "/", "field");  // required even when overridden

  ProblemFile<K> p;
  p.field = spec;
  p.proto = field_prototype(spec, K{});

  // Product algebras are shared per (left, right) pair so that bimodules over
  // the same pair can be assembled into complexes.
  std::map<std::pair<std::string, std::string>, typename Algebra<K>::Ptr> envs;
  auto env_for = [&](const std::string& l, const std::string& r) {
    auto key = std::make_pair(l, r);
    auto it = envs.find(key);
    if (it == envs.end())
      it = envs.emplace(key, bimodule_env(*p.algebras.at(l), *p.algebras.at(r))).first;
    return it->second;
  };

  // algebras
  if (const Json* algs = detail::member_opt(j, "/", "algebras")) {
    detail::expect_object(*algs, "/algebras");
    for (auto it = algs->begin(); it != algs->end(); ++it) {
      const std::string path = "/algebras/" + it.key();
      const Json& aj = *it;
      detail::expect_keys(aj, path, {"vertices", "arrows", "relations"});
      Presentation<K> pres;
      pres.proto = p.proto;
      pres.quiver.num_vertices =
          static_cast<int>(detail::get_int(detail::member(aj, path, "vertices"),
                                           path + "/vertices"));
      const Json& arrows = detail::member(aj, path, "arrows");
      detail::expect_array(arrows, path + "/arrows");
      for (std::size_t a = 0; a < arrows.size(); ++a) {
        const std::string apath = path + "/arrows[" + std::to_string(a) + "]";
        detail::expect_keys(arrows[a], apath, {"name", "source", "target"});
        Arrow ar;
        ar.name = detail::get_string(detail::member(arrows[a], apath, "name"), apath + "/name");
        ar.source = static_cast<int>(
            detail::get_int(detail::member(arrows[a], apath, "source"), apath + "/source"));
        ar.target = static_cast<int>(
            detail::get_int(detail::member(arrows[a], apath, "target"), apath + "/target"));
        pres.quiver.arrows.push_back(std::move(ar));
      }
      try {
        pres.quiver.validate();
      } catch (const InputError& e) {
        throw ValidationError(path + ": " + e.what());
      }
      const Json& rels = detail::member(aj, path, "relations");
      detail::expect_array(rels, path + "/relations");
      for (std::size_t r = 0; r < rels.size(); ++r) {
        const std::string rpath = path + "/relations[" + std::to_string(r) + "]";
        detail::expect_array(rels[r], rpath);
        Relation<K> rel;
        for (std::size_t t = 0; t < rels[r].size(); ++t) {
          const std::string tpath = rpath + "[" + std::to_string(t) + "]";
          detail::expect_keys(rels[r][t], tpath, {"coeff", "path"});
          RelationTerm<K> term;
          term.coeff = detail::get_scalar(detail::member(rels[r][t], tpath, "coeff"),
                                          tpath + "/coeff", p.proto);
          const Json& pj = detail::member(rels[r][t], tpath, "path");
          detail::expect_array(pj, tpath + "/path");
          if (pj.empty()) throw ValidationError(tpath + "/path: empty path");
          for (std::size_t s = 0; s < pj.size(); ++s) {
            std::string an =
                detail::get_string(pj[s], tpath + "/path[" + std::to_string(s) + "]");
            try {
              term.path.arrows.push_back(pres.quiver.arrow_index(an));
            } catch (const InputError& e) {
              throw ValidationError(tpath + "/path[" + std::to_string(s) + "]: " + e.what());
            }
          }
          term.path.source = pres.quiver.arrows[static_cast<std::size_t>(term.path.arrows[0])]
                                 .source;
          rel.terms.push_back(std::move(term));
        }
        pres.relations.push_back(std::move(rel));
      }
      try {
        p.algebras.emplace(it.key(), Algebra<K>::build(std::move(pres)));
      } catch (const NonAdmissibleError& e) {
        throw NonAdmissibleError(path + ": " + e.diagnosis);
      } catch (const InputError& e) {
        throw ValidationError(path + ": " + e.what());
      }
    }
  }

  auto algebra_at = [&](const std::string& name, const std::string& path) {
    auto it = p.algebras.find(name);
    if (it == p.algebras.end()) throw ValidationError(path + ": unknown algebra '" + name + "'");
    return it->second;
  };

  // modules
  if (const Json* mods = detail::member_opt(j, "/", "modules")) {
    detail::expect_object(*mods, "/modules");
    for (auto it = mods->begin(); it != mods->end(); ++it) {
      const std::string path = "/modules/" + it.key();
      detail::expect_keys(*it, path, {"algebra", "dims", "actions"});
      NamedModule<K> m;
      m.algebra = detail::get_string(detail::member(*it, path, "algebra"), path + "/algebra");
      auto alg = algebra_at(m.algebra, path + "/algebra");
      m.rep = detail::parse_representation<K>(detail::member(*it, path, "dims"),
                                              detail::member(*it, path, "actions"), path, alg,
                                              "algebra '" + m.algebra + "'");
      p.modules.emplace(it.key(), std::move(m));
    }
  }

  // bimodules
  if (const Json* bims = detail::member_opt(j, "/", "bimodules")) {
    detail::expect_object(*bims, "/bimodules");
    for (auto it = bims->begin(); it != bims->end(); ++it) {
      const std::string path = "/bimodules/" + it.key();
      detail::expect_keys(*it, path, {"left_algebra", "right_algebra", "dims", "actions"});
      NamedBimodule<K> b;
      b.left = detail::get_string(detail::member(*it, path, "left_algebra"),
                                  path + "/left_algebra");
      b.right = detail::get_string(detail::member(*it, path, "right_algebra"),
                                   path + "/right_algebra");
      auto left = algebra_at(b.left, path + "/left_algebra");
      auto right = algebra_at(b.right, path + "/right_algebra");
      auto env = env_for(b.left, b.right);
      RepPtr<K> rep = detail::parse_representation<K>(
          detail::member(*it, path, "dims"), detail::member(*it, path, "actions"), path, env,
          "the product algebra '" + b.left + "'^op (x) '" + b.right + "'");
      b.handle = make_bimodule<K>(left, right, env, std::move(rep));
      p.bimodules.emplace(it.key(), std::move(b));
    }
  }

  // complexes
  if (const Json* cxs = detail::member_opt(j, "/", "complexes")) {
    detail::expect_object(*cxs, "/complexes");
    for (auto it = cxs->begin(); it != cxs->end(); ++it) {
      const std::string path = "/complexes/" + it.key();
      detail::expect_keys(*it, path, {"lo", "components", "differentials"});
      NamedComplex<K> c;
      c.cx.lo = static_cast<int>(detail::get_int(detail::member(*it, path, "lo"), path + "/lo"));
      const Json& comps = detail::member(*it, path, "components");
      detail::expect_array(comps, path + "/components");
      if (comps.empty()) throw ValidationError(path + "/components: a complex needs at least one component");
      for (std::size_t t = 0; t < comps.size(); ++t) {
        const std::string cpath = path + "/components[" + std::to_string(t) + "]";
        std::string name = detail::get_string(comps[t], cpath);
        const bool is_mod = p.modules.count(name) > 0;
        const bool is_bim = p.bimodules.count(name) > 0;
        if (!is_mod && !is_bim)
          throw ValidationError(cpath + ": unknown module or bimodule '" + name + "'");
        if (is_mod && is_bim)
          throw ValidationError(cpath + ": '" + name + "' names both a module and a bimodule");
        if (t == 0) {
          c.bimodule = is_bim;
        } else if (c.bimodule != is_bim) {
          throw ValidationError(cpath + ": mixes module and bimodule components");
        }
        if (c.bimodule) {
          const NamedBimodule<K>& b = p.bimodules.at(name);
          if (t == 0) {
            c.left = b.left;
            c.right = b.right;
            c.cx.alg = b.handle.env;
          } else if (b.left != c.left || b.right != c.right) {
            throw ValidationError(cpath + ": component is a '" + b.left + "'-'" + b.right +
                                  "' bimodule, expected '" + c.left + "'-'" + c.right + "'");
          }
          c.cx.comps.push_back(b.handle.rep);
        } else {
          const NamedModule<K>& m = p.modules.at(name);
          if (t == 0) {
            c.left = m.algebra;
            c.cx.alg = m.rep->alg;
          } else if (m.algebra != c.left) {
            throw ValidationError(cpath + ": component is over algebra '" + m.algebra +
                                  "', expected '" + c.left + "'");
          }
          c.cx.comps.push_back(m.rep);
        }
        c.components.push_back(std::move(name));
      }
      const Json& diffs = detail::member(*it, path, "differentials");
      detail::expect_array(diffs, path + "/differentials");
      if (diffs.size() + 1 != c.cx.comps.size())
        throw ValidationError(path + "/differentials: expected " +
                              std::to_string(c.cx.comps.size() - 1) + " differential(s), got " +
                              std::to_string(diffs.size()));
      for (std::size_t t = 0; t + 1 < c.cx.comps.size(); ++t)
        c.cx.diffs.push_back(detail::parse_morphism_blocks<K>(
            diffs[t], path + "/differentials[" + std::to_string(t) + "]", c.cx.comps[t],
            c.cx.comps[t + 1]));
      try {
        validate_complex(c.cx);
      } catch (const InvariantViolation& e) {
        throw ValidationError(path + ": " + e.what());
      }
      if (c.bimodule)
        c.bcx = make_bimodule_complex<K>(p.algebras.at(c.left), p.algebras.at(c.right),
                                         c.cx.alg, c.cx);
      p.complexes.emplace(it.key(), std::move(c));
    }
  }

  // endomorphisms
  if (const Json* ends = detail::member_opt(j, "/", "endos")) {
    detail::expect_object(*ends, "/endos");
    for (auto it = ends->begin(); it != ends->end(); ++it) {
      const std::string path = "/endos/" + it.key();
      NamedEndo<K> e;
      e.on = detail::get_string(detail::member(*it, path, "on"), path + "/on");
      const int hits = (p.modules.count(e.on) > 0) + (p.bimodules.count(e.on) > 0) +
                       (p.complexes.count(e.on) > 0);
      if (hits == 0)
        throw ValidationError(path + "/on: unknown module, bimodule or complex '" + e.on + "'");
      if (hits > 1)
        throw ValidationError(path + "/on: '" + e.on + "' names more than one object");
      if (p.complexes.count(e.on)) {
        e.kind = NamedEndo<K>::Kind::complex;
        detail::expect_keys(*it, path, {"on", "maps"});
        const NamedComplex<K>& c = p.complexes.at(e.on);
        const Json& maps = detail::member(*it, path, "maps");
        detail::expect_array(maps, path + "/maps");
        if (maps.size() != c.cx.comps.size())
          throw ValidationError(path + "/maps: expected " + std::to_string(c.cx.comps.size()) +
                                " map(s), got " + std::to_string(maps.size()));
        e.chain.lo = c.cx.lo;
        for (std::size_t t = 0; t < maps.size(); ++t)
          e.chain.comps.push_back(detail::parse_morphism_blocks<K>(
              maps[t], path + "/maps[" + std::to_string(t) + "]", c.cx.comps[t], c.cx.comps[t]));
        try {
          check_chain_map(e.chain, c.cx, c.cx);
        } catch (const InvariantViolation& ex) {
          throw ValidationError(path + ": " + ex.what());
        }
      } else {
        e.kind = p.modules.count(e.on) ? NamedEndo<K>::Kind::module : NamedEndo<K>::Kind::bimodule;
        detail::expect_keys(*it, path, {"on", "blocks"});
        RepPtr<K> rep = e.kind == NamedEndo<K>::Kind::module ? p.modules.at(e.on).rep
                                                             : p.bimodules.at(e.on).handle.rep;
        e.morphism = detail::parse_morphism_blocks<K>(detail::member(*it, path, "blocks"),
                                                      path + "/blocks", rep, rep);
        try {
          check_morphism(e.morphism);
        } catch (const InvariantViolation& ex) {
          throw ValidationError(path + ": " + ex.what());
        }
      }
      p.endos.emplace(it.key(), std::move(e));
    }
  }

  // checks
  if (const Json* checks = detail::member_opt(j, "/", "checks")) {
    detail::expect_array(*checks, "/checks");
    for (std::size_t i = 0; i < checks->size(); ++i) {
      const std::string path = "/checks[" + std::to_string(i) + "]";
      const Json& cj = (*checks)[i];
      detail::expect_object(cj, path);
      CheckRequest req;
      if (const Json* suite = detail::member_opt(cj, path, "suite")) {
        detail::expect_keys(cj, path, {"suite"});
        std::string s = detail::get_string(*suite, path + "/suite");
        if (s != "all" && s != "hrr" && s != "lefschetz" && s != "corollaries" && s != "lemmas")
          throw ValidationError(path + "/suite: unknown suite '" + s +
                                "' (expected all, hrr, lefschetz, corollaries or lemmas)");
        req.suite = std::move(s);
        p.checks.push_back(std::move(req));
        continue;
      }
      detail::expect_keys(cj, path, {"identity", "operands", "endos"});
      std::string ident = detail::get_string(detail::member(cj, path, "identity"),
                                             path + "/identity");
      try {
        req.identity = identity_from_string(ident);
      } catch (const ValidationError& e) {
        throw ValidationError(path + "/identity: " + e.what());
      }
      auto [kind, count] = identity_operands(*req.identity);
      const Json& ops = detail::member(cj, path, "operands");
      detail::expect_array(ops, path + "/operands");
      if (static_cast<int>(ops.size()) != count)
        throw ValidationError(path + "/operands: identity '" + ident + "' takes " +
                              std::to_string(count) + " operand(s), got " +
                              std::to_string(ops.size()));
      for (std::size_t o = 0; o < ops.size(); ++o) {
        const std::string opath = path + "/operands[" + std::to_string(o) + "]";
        std::string name = detail::get_string(ops[o], opath);
        switch (kind) {
          case OperandKind::module:
            if (!p.modules.count(name))
              throw ValidationError(opath + ": unknown module '" + name + "'");
            break;
          case OperandKind::bimodule:
            if (!p.bimodules.count(name))
              throw ValidationError(opath + ": unknown bimodule '" + name + "'");
            break;
          case OperandKind::module_complex:
            if (!p.complexes.count(name))
              throw ValidationError(opath + ": unknown complex '" + name + "'");
            if (p.complexes.at(name).bimodule)
              throw ValidationError(opath + ": '" + name + "' is a bimodule complex, but '" +
                                    ident + "' takes module complexes");
            break;
          case OperandKind::bimodule_complex:
            if (!p.complexes.count(name))
              throw ValidationError(opath + ": unknown complex '" + name + "'");
            if (!p.complexes.at(name).bimodule)
              throw ValidationError(opath + ": '" + name + "' is a module complex, but '" +
                                    ident + "' takes bimodule complexes");
            break;
        }
        req.operands.push_back(std::move(name));
      }
      if (const Json* ej = detail::member_opt(cj, path, "endos")) {
        detail::expect_array(*ej, path + "/endos");
        if (!ej->empty() && ej->size() != ops.size())
          throw ValidationError(path + "/endos: expected " + std::to_string(ops.size()) +
                                " endomorphism(s) (or none), got " + std::to_string(ej->size()));
        for (std::size_t o = 0; o < ej->size(); ++o) {
          const std::string epath = path + "/endos[" + std::to_string(o) + "]";
          std::string name = detail::get_string((*ej)[o], epath);
          auto eit = p.endos.find(name);
          if (eit == p.endos.end())
            throw ValidationError(epath + ": unknown endomorphism '" + name + "'");
          if (eit->second.on != req.operands[o])
            throw ValidationError(epath + ": endomorphism '" + name + "' is on '" +
                                  eit->second.on + "', expected the operand '" +
                                  req.operands[o] + "'");
          req.endos.push_back(std::move(name));
        }
      }
      p.checks.push_back(std::move(req));
    }
  }

  return p;
}

// Parses raw text: JSON syntax errors are reported with their byte position.
template <class K>
ProblemFile<K> parse_problem_text(const std::string& text, const FieldSpec& spec) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("not valid JSON: ") + e.what());
  }
  return parse_problem<K>(j, spec);
}

// --- canonical emit -------------------------------------------------------------

template <class K>
Json emit_problem(const ProblemFile<K>& p) {
  Json j = Json::object();
  j["field"] = emit_field_spec(p.field);

  Json algs = Json::object();
  for (const auto& [name, alg] : p.algebras) {
    const Presentation<K>& pres = alg->presentation();
    Json aj = Json::object();
    aj["vertices"] = pres.quiver.num_vertices;
    Json arrows = Json::array();
    for (const Arrow& a : pres.quiver.arrows) {
      Json ar = Json::object();
      ar["name"] = a.name;
      ar["source"] = a.source;
      ar["target"] = a.target;
      arrows.push_back(std::move(ar));
    }
    aj["arrows"] = std::move(arrows);
    Json rels = Json::array();
    for (const Relation<K>& rel : pres.relations) {
      Json rj = Json::array();
      for (const RelationTerm<K>& t : rel.terms) {
        Json tj = Json::object();
        tj["coeff"] = detail::emit_scalar(t.coeff);
        Json pj = Json::array();
        for (int a : t.path.arrows)
          pj.push_back(pres.quiver.arrows[static_cast<std::size_t>(a)].name);
        tj["path"] = std::move(pj);
        rj.push_back(std::move(tj));
      }
      rels.push_back(std::move(rj));
    }
    aj["relations"] = std::move(rels);
    algs[name] = std::move(aj);
  }
  j["algebras"] = std::move(algs);

  auto emit_rep_into = [&](Json& out, const Representation<K>& rep) {
    Json dims = Json::array();
    for (std::size_t d : rep.dims) dims.push_back(d);
    out["dims"] = std::move(dims);
    Json actions = Json::object();
    const Quiver& q = rep.alg->quiver();
    for (std::size_t a = 0; a < q.arrows.size(); ++a)
      actions[q.arrows[a].name] = detail::emit_matrix(rep.act[a]);
    out["actions"] = std::move(actions);
  };

  Json mods = Json::object();
  for (const auto& [name, m] : p.modules) {
    Json mj = Json::object();
    mj["algebra"] = m.algebra;
    emit_rep_into(mj, *m.rep);
    mods[name] = std::move(mj);
  }
  j["modules"] = std::move(mods);

  Json bims = Json::object();
  for (const auto& [name, b] : p.bimodules) {
    Json bj = Json::object();
    bj["left_algebra"] = b.left;
    bj["right_algebra"] = b.right;
    emit_rep_into(bj, *b.handle.rep);
    bims[name] = std::move(bj);
  }
  j["bimodules"] = std::move(bims);

  Json ends = Json::object();
  for (const auto& [name, e] : p.endos) {
    Json ej = Json::object();
    ej["on"] = e.on;
    if (e.kind == NamedEndo<K>::Kind::complex) {
      Json maps = Json::array();
      for (const auto& f : e.chain.comps) maps.push_back(detail::emit_morphism_blocks(f));
      ej["maps"] = std::move(maps);
    } else {
      ej["blocks"] = detail::emit_morphism_blocks(e.morphism);
    }
    ends[name] = std::move(ej);
  }
  j["endos"] = std::move(ends);

  Json cxs = Json::object();
  for (const auto& [name, c] : p.complexes) {
    Json cj = Json::object();
    cj["lo"] = c.cx.lo;
    Json comps = Json::array();
    for (const std::string& cn : c.components) comps.push_back(cn);
    cj["components"] = std::move(comps);
    Json diffs = Json::array();
    for (const auto& d : c.cx.diffs) diffs.push_back(detail::emit_morphism_blocks(d));
    cj["differentials"] = std::move(diffs);
    cxs[name] = std::move(cj);
  }
  j["complexes"] = std::move(cxs);

  Json checks = Json::array();
  for (const CheckRequest& c : p.checks) {
    Json cj = Json::object();
    if (c.suite) {
      cj["suite"] = *c.suite;
    } else {
      cj["identity"] = to_string(*c.identity);
      Json ops = Json::array();
      for (const std::string& o : c.operands) ops.push_back(o);
      cj["operands"] = std::move(ops);
      Json ends_j = Json::array();
      for (const std::string& e : c.endos) ends_j.push_back(e);
      cj["endos"] = std::move(ends_j);
    }
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);

  return j;
}

template <class K>
std::string emit_problem_text(const ProblemFile<K>& p) {
  return emit_problem(p).dump(2) + "\n";
}

// --- object-graph equality --------------------------------------------------------

namespace detail {

template <class K>
bool morphism_blocks_equal(const ModuleMorphism<K>& a, const ModuleMorphism<K>& b) {
  return a.blocks == b.blocks;
}

}  // namespace detail

template <class K>
bool problem_equal(const ProblemFile<K>& a, const ProblemFile<K>& b) {
  if (a.field != b.field) return false;
  if (a.algebras.size() != b.algebras.size() || a.modules.size() != b.modules.size() ||
      a.bimodules.size() != b.bimodules.size() || a.endos.size() != b.endos.size() ||
      a.complexes.size() != b.complexes.size() || a.checks.size() != b.checks.size())
    return false;
  for (const auto& [name, alg] : a.algebras) {
    auto it = b.algebras.find(name);
    if (it == b.algebras.end() || !(alg->presentation() == it->second->presentation()))
      return false;
  }
  for (const auto& [name, m] : a.modules) {
    auto it = b.modules.find(name);
    if (it == b.modules.end() || m.algebra != it->second.algebra ||
        m.rep->dims != it->second.rep->dims || m.rep->act != it->second.rep->act)
      return false;
  }
  for (const auto& [name, bm] : a.bimodules) {
    auto it = b.bimodules.find(name);
    if (it == b.bimodules.end() || bm.left != it->second.left || bm.right != it->second.right ||
        bm.handle.rep->dims != it->second.handle.rep->dims ||
        bm.handle.rep->act != it->second.handle.rep->act)
      return false;
  }
  for (const auto& [name, e] : a.endos) {
    auto it = b.endos.find(name);
    if (it == b.endos.end() || e.kind != it->second.kind || e.on != it->second.on) return false;
    if (e.kind == NamedEndo<K>::Kind::complex) {
      if (e.chain.lo != it->second.chain.lo ||
          e.chain.comps.size() != it->second.chain.comps.size())
        return false;
      for (std::size_t t = 0; t < e.chain.comps.size(); ++t)
        if (!detail::morphism_blocks_equal(e.chain.comps[t], it->second.chain.comps[t]))
          return false;
    } else if (!detail::morphism_blocks_equal(e.morphism, it->second.morphism)) {
      return false;
    }
  }
  for (const auto& [name, c] : a.complexes) {
    auto it = b.complexes.find(name);
    if (it == b.complexes.end() || c.bimodule != it->second.bimodule ||
        c.components != it->second.components || c.cx.lo != it->second.cx.lo ||
        c.cx.diffs.size() != it->second.cx.diffs.size())
      return false;
    for (std::size_t t = 0; t < c.cx.diffs.size(); ++t)
      if (!detail::morphism_blocks_equal(c.cx.diffs[t], it->second.cx.diffs[t])) return false;
  }
  return a.checks == b.checks;
}

}  // namespace qha

#endif  // QHA_PROBLEM_HPP
