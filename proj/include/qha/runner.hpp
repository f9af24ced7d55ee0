#ifndef QHA_RUNNER_HPP
#define QHA_RUNNER_HPP

// Suite runner: expands a problem file plus options into a deterministic list
// of checks, executes them on a worker pool, and renders text or JSON
// reports.  Report order is canonical (sorted by check id) and independent of
// completion order; for a fixed problem, options and seed the rendered JSON
// is byte-identical across runs except for the timing fields.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "qha/bimodule.hpp"
#include "qha/complex.hpp"
#include "qha/errors.hpp"
#include "qha/int_matrix.hpp"
#include "qha/module.hpp"
#include "qha/problem.hpp"
#include "qha/resolution.hpp"
#include "qha/verify.hpp"

namespace qha {

enum class ReportFormat { text, json };

struct RunOptions {
  std::string suite = "all";  // all | hrr | lefschetz | corollaries | lemmas | random
  std::optional<Level> level;
  std::uint64_t seed = 0;
  std::size_t samples = 5;
  std::size_t cap = kDefaultResolutionCap;
  ReportFormat format = ReportFormat::text;
};

// One executed check: a canonical sort key plus the verifier's report.
struct ExecutedReport {
  std::string key;
  VerificationReport body;
  bool fatal = false;  // an engine cap or unimodularity failure
};

struct RunResult {
  std::vector<ExecutedReport> reports;  // sorted by key
  std::size_t failed = 0;
  int exit_code = 0;  // 0 all pass, 1 verification failure, 3 engine cap/unimodularity
};

namespace detail {

// --- deterministic seeding ----------------------------------------------------

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::string pad_index(std::size_t i, int width) {
  std::string s = std::to_string(i);
  while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
  return s;
}

// --- per-algebra scaffolding -----------------------------------------------------

template <class K>
struct AlgebraScaffold {
  std::string name;
  typename Algebra<K>::Ptr alg;
  AlgebraCheckContext<K> ctx;
  typename Algebra<K>::Ptr op;   // the opposite algebra
  typename Algebra<K>::Ptr env;  // the enveloping product algebra
};

// The twelve identities, in canonical catalog order.
inline const std::vector<IdentityId>& identity_catalog() {
  static const std::vector<IdentityId> catalog = [] {
    std::vector<IdentityId> v;
    const Version all[] = {Version::cohomological, Version::homological,
                           Version::hochschild_cohomological, Version::hochschild_homological};
    const Version euler_only[] = {Version::cohomological, Version::homological};
    for (Version ver : all) v.push_back({Level::module_level, ver, Flavor::hrr});
    for (Version ver : euler_only) v.push_back({Level::bimodule_level, ver, Flavor::hrr});
    for (Version ver : all) v.push_back({Level::complex_level, ver, Flavor::hrr});
    for (Version ver : euler_only) v.push_back({Level::bimodule_complex_level, ver, Flavor::hrr});
    return v;
  }();
  return catalog;
}

// Generates a seeded random instance of `id` over the scaffold and verifies it.
template <class K>
VerificationReport run_random_instance(const AlgebraScaffold<K>& sc, IdentityId id,
                                       std::uint64_t sd) {
  const bool lef = id.flavor == Flavor::lefschetz;
  constexpr std::size_t kModuleDim = 12;
  constexpr std::size_t kComponentDim = 8;
  const int lo = static_cast<int>(mix64(sd + 7) % 2) - 1;  // -1 or 0

  switch (id.level) {
    case Level::module_level: {
      if (id.version == Version::cohomological || id.version == Version::homological) {
        auto m = random_module<K>(sc.alg, mix64(sd + 1), kModuleDim);
        auto n = random_module<K>(id.version == Version::cohomological ? sc.alg : sc.op,
                                  mix64(sd + 2), kModuleDim);
        auto phi = lef ? random_endomorphism(m, mix64(sd + 3)) : identity_morphism(m);
        auto psi = lef ? random_endomorphism(n, mix64(sd + 4)) : identity_morphism(n);
        return verify(sc.ctx, id, m, n, phi, psi);
      }
      auto h = random_bimodule<K>(sc.alg, sc.alg, sc.env, mix64(sd + 1), kModuleDim);
      auto f = lef ? random_endomorphism(h.rep, mix64(sd + 2)) : identity_morphism(h.rep);
      return verify(sc.ctx, id, h, f);
    }
    case Level::bimodule_level: {
      auto m = random_bimodule<K>(sc.alg, sc.alg, sc.env, mix64(sd + 1), kModuleDim);
      auto n = random_bimodule<K>(sc.alg, sc.alg, sc.env, mix64(sd + 2), kModuleDim);
      auto phi = lef ? random_endomorphism(m.rep, mix64(sd + 3)) : identity_morphism(m.rep);
      auto psi = lef ? random_endomorphism(n.rep, mix64(sd + 4)) : identity_morphism(n.rep);
      return verify(sc.ctx, id, m, n, phi, psi);
    }
    case Level::complex_level: {
      if (id.version == Version::cohomological || id.version == Version::homological) {
        auto x = random_complex<K>(sc.alg, mix64(sd + 1), lo, kComponentDim);
        auto y = random_complex<K>(id.version == Version::cohomological ? sc.alg : sc.op,
                                   mix64(sd + 2), lo, kComponentDim);
        auto phi = lef ? random_chain_endomorphism(x, mix64(sd + 3)) : identity_chain_map(x);
        auto psi = lef ? random_chain_endomorphism(y, mix64(sd + 4)) : identity_chain_map(y);
        return verify(sc.ctx, id, x, y, phi, psi);
      }
      auto m = make_bimodule_complex<K>(sc.alg, sc.alg, sc.env,
                                        random_complex<K>(sc.env, mix64(sd + 1), lo,
                                                          kComponentDim));
      auto f = lef ? random_chain_endomorphism(m.cx, mix64(sd + 2)) : identity_chain_map(m.cx);
      return verify(sc.ctx, id, m, f);
    }
    case Level::bimodule_complex_level: {
      auto m = make_bimodule_complex<K>(sc.alg, sc.alg, sc.env,
                                        random_complex<K>(sc.env, mix64(sd + 1), lo,
                                                          kComponentDim));
      auto n = make_bimodule_complex<K>(sc.alg, sc.alg, sc.env,
                                        random_complex<K>(sc.env, mix64(sd + 2), lo,
                                                          kComponentDim));
      auto phi = lef ? random_chain_endomorphism(m.cx, mix64(sd + 3)) : identity_chain_map(m.cx);
      auto psi = lef ? random_chain_endomorphism(n.cx, mix64(sd + 4)) : identity_chain_map(n.cx);
      return verify(sc.ctx, id, m, n, phi, psi);
    }
  }
  throw InvariantViolation("run_random_instance: bad level");
}

// Runs a named check from the problem file's checks list.
template <class K>
VerificationReport run_named_check(
    const ProblemFile<K>& p,
    const std::map<std::string, std::optional<AlgebraScaffold<K>>>& scaffolds,
    const CheckRequest& req) {
  const IdentityId id = *req.identity;
  auto [kind, count] = identity_operands(id);
  (void)count;

  // The context algebra the identity is anchored to.
  auto anchor = [&]() -> std::string {
    const std::string& first = req.operands[0];
    switch (kind) {
      case OperandKind::module:
        return p.modules.at(first).algebra;
      case OperandKind::bimodule:
        return id.level == Level::module_level ? p.bimodules.at(first).left
                                               : p.bimodules.at(first).right;
      case OperandKind::module_complex:
        return p.complexes.at(first).left;
      case OperandKind::bimodule_complex:
        return id.level == Level::complex_level ? p.complexes.at(first).left
                                                : p.complexes.at(first).right;
    }
    throw InvariantViolation("run_named_check: bad operand kind");
  }();
  const auto& slot = scaffolds.at(anchor);
  if (!slot)
    throw InputError("context for algebra '" + anchor + "' is unavailable");
  const AlgebraCheckContext<K>& ctx = slot->ctx;

  auto module_endo = [&](std::size_t i, RepPtr<K> rep) {
    if (req.endos.empty()) return identity_morphism(rep);
    return p.endos.at(req.endos[i]).morphism;
  };
  auto chain_endo = [&](std::size_t i, const BoundedComplex<K>& cx) {
    if (req.endos.empty()) return identity_chain_map(cx);
    return p.endos.at(req.endos[i]).chain;
  };

  switch (kind) {
    case OperandKind::module: {
      RepPtr<K> m = p.modules.at(req.operands[0]).rep;
      RepPtr<K> n = p.modules.at(req.operands[1]).rep;
      return verify(ctx, id, m, n, module_endo(0, m), module_endo(1, n));
    }
    case OperandKind::bimodule: {
      const BimoduleHandle<K>& m = p.bimodules.at(req.operands[0]).handle;
      if (id.level == Level::module_level) return verify(ctx, id, m, module_endo(0, m.rep));
      const BimoduleHandle<K>& n = p.bimodules.at(req.operands[1]).handle;
      return verify(ctx, id, m, n, module_endo(0, m.rep), module_endo(1, n.rep));
    }
    case OperandKind::module_complex: {
      const BoundedComplex<K>& x = p.complexes.at(req.operands[0]).cx;
      const BoundedComplex<K>& y = p.complexes.at(req.operands[1]).cx;
      return verify(ctx, id, x, y, chain_endo(0, x), chain_endo(1, y));
    }
    case OperandKind::bimodule_complex: {
      const BimoduleComplex<K>& m = *p.complexes.at(req.operands[0]).bcx;
      if (id.level == Level::complex_level) return verify(ctx, id, m, chain_endo(0, m.cx));
      const BimoduleComplex<K>& n = *p.complexes.at(req.operands[1]).bcx;
      return verify(ctx, id, m, n, chain_endo(0, m.cx), chain_endo(1, n.cx));
    }
  }
  throw InvariantViolation("run_named_check: bad operand kind");
}

// --- job list -----------------------------------------------------------------

template <class K>
struct CheckJob {
  std::string prefix;  // unique; the canonical sort key
  std::function<std::vector<VerificationReport>()> run;
};

template <class K>
void expand_suite(const std::map<std::string, std::optional<AlgebraScaffold<K>>>& scaffolds,
                  const RunOptions& opts, const std::string& suite, const std::string& key_root,
                  std::vector<CheckJob<K>>& jobs) {
  std::vector<const AlgebraScaffold<K>*> live;
  for (const auto& [name, slot] : scaffolds)
    if (slot) live.push_back(&*slot);

  if (suite == "corollaries" || suite == "all") {
    for (const AlgebraScaffold<K>* sc : live)
      jobs.push_back(CheckJob<K>{key_root + "corollaries/" + sc->name,
                                 [sc, cap = opts.cap] {
                                   return verify_corollaries<K>(sc->alg, cap);
                                 }});
  }

  if (suite == "lemmas" || suite == "all") {
    // Partner each algebra with the next one (cyclically, in name order) for
    // the two-algebra Cartan lemmas.
    std::map<std::string, const AlgebraScaffold<K>*> by_name;
    for (const AlgebraScaffold<K>* sc : live) by_name[sc->name] = sc;
    std::vector<const AlgebraScaffold<K>*> order;
    for (const auto& [name, sc] : by_name) order.push_back(sc);
    for (std::size_t i = 0; i < order.size(); ++i) {
      const AlgebraScaffold<K>* sc = order[i];
      const AlgebraScaffold<K>* partner = order[(i + 1) % order.size()];
      const std::uint64_t sd = mix64(opts.seed ^ fnv1a("lemmas/" + sc->name));
      jobs.push_back(CheckJob<K>{key_root + "lemmas/" + sc->name + "/suite",
                                 [sc, partner, samples = opts.samples, sd] {
                                   return verify_lemma_suite<K>(sc->alg, partner->alg, samples,
                                                                sd);
                                 }});
      jobs.push_back(CheckJob<K>{key_root + "lemmas/" + sc->name + "/device",
                                 [sc, cap = opts.cap] {
                                   return std::vector<VerificationReport>{
                                       verify_resolution_multiplicities<K>(sc->alg, cap)};
                                 }});
    }
  }

  const bool want_hrr = suite == "hrr" || suite == "all";
  const bool want_lefschetz = suite == "lefschetz" || suite == "all";
  if (want_hrr || want_lefschetz) {
    for (const AlgebraScaffold<K>* sc : live)
      for (std::size_t c = 0; c < identity_catalog().size(); ++c) {
        IdentityId id = identity_catalog()[c];
        if (opts.level && id.level != *opts.level) continue;
        for (int fl = 0; fl < 2; ++fl) {
          id.flavor = fl == 0 ? Flavor::hrr : Flavor::lefschetz;
          const bool wanted = id.flavor == Flavor::hrr ? want_hrr : want_lefschetz;
          if (!wanted) continue;
          const std::string flavor_suite = id.flavor == Flavor::hrr ? "hrr" : "lefschetz";
          for (std::size_t s = 0; s < opts.samples; ++s) {
            const std::uint64_t sd =
                mix64(opts.seed ^ fnv1a(sc->name + "/" + to_string(id)) ^ (0x51ed2700ull + s));
            jobs.push_back(CheckJob<K>{key_root + flavor_suite + "/" + sc->name + "/" +
                                           to_string(id) + "/s" + pad_index(s, 4),
                                       [sc, id, sd] {
                                         return std::vector<VerificationReport>{
                                             run_random_instance<K>(*sc, id, sd)};
                                       }});
          }
        }
      }
  }

  if (suite == "random") {
    // A mixed stream: `samples` reports per algebra, cycling through the
    // catalog with alternating flavors.
    std::vector<IdentityId> cycle;
    for (const IdentityId& base : identity_catalog()) {
      if (opts.level && base.level != *opts.level) continue;
      IdentityId id = base;
      id.flavor = Flavor::hrr;
      cycle.push_back(id);
      id.flavor = Flavor::lefschetz;
      cycle.push_back(id);
    }
    if (!cycle.empty())
      for (const AlgebraScaffold<K>* sc : live)
        for (std::size_t s = 0; s < opts.samples; ++s) {
          const IdentityId id = cycle[s % cycle.size()];
          const std::uint64_t sd = mix64(opts.seed ^ fnv1a("random/" + sc->name) ^ s);
          jobs.push_back(CheckJob<K>{key_root + "random/" + sc->name + "/s" + pad_index(s, 4) +
                                         "/" + to_string(id),
                                     [sc, id, sd] {
                                       return std::vector<VerificationReport>{
                                           run_random_instance<K>(*sc, id, sd)};
                                     }});
        }
  }
}

}  // namespace detail

// --- execution -----------------------------------------------------------------

template <class K>
RunResult run_problem(const ProblemFile<K>& p, const RunOptions& opts) {
  RunResult result;

  // Per-algebra scaffolding (Cartan data, global dimension, opposite and
  // enveloping algebras).  Failures here poison the algebra, not the run.
  std::map<std::string, std::optional<detail::AlgebraScaffold<K>>> scaffolds;
  for (const auto& [name, alg] : p.algebras) {
    try {
      detail::AlgebraScaffold<K> sc;
      sc.name = name;
      sc.alg = alg;
      sc.ctx = make_check_context<K>(alg, opts.cap);
      sc.op = opposite_algebra(*alg);
      sc.env = bimodule_env(*alg, *alg);
      scaffolds.emplace(name, std::move(sc));
    } catch (const std::exception& e) {
      scaffolds.emplace(name, std::nullopt);
      ExecutedReport r;
      r.key = "context/" + name;
      r.body.name = "context";
      r.body.inputs = "algebra=" + name + " field=" + p.field.to_string();
      r.body.lhs = e.what();
      r.body.pass = false;
      r.body.lhs_path = "engine: Cartan and global dimension prechecks";
      r.fatal = dynamic_cast<const UnimodularityError*>(&e) != nullptr ||
                dynamic_cast<const CapExceeded*>(&e) != nullptr;
      result.reports.push_back(std::move(r));
    }
  }

  // Job list, in canonical key order.
  std::vector<detail::CheckJob<K>> jobs;
  if (opts.suite == "all") {
    for (std::size_t i = 0; i < p.checks.size(); ++i) {
      const CheckRequest& req = p.checks[i];
      const std::string root = "checks/" + detail::pad_index(i, 3) + "/";
      if (req.suite) {
        const std::string sub = *req.suite == "all" ? "all" : *req.suite;
        detail::expand_suite<K>(scaffolds, opts, sub, root, jobs);
        continue;
      }
      if (opts.level && req.identity->level != *opts.level) continue;
      jobs.push_back(detail::CheckJob<K>{root + to_string(*req.identity),
                                         [&p, &scaffolds, &req] {
                                           return std::vector<VerificationReport>{
                                               detail::run_named_check<K>(p, scaffolds, req)};
                                         }});
    }
  }
  detail::expand_suite<K>(scaffolds, opts, opts.suite, "", jobs);
  std::sort(jobs.begin(), jobs.end(),
            [](const auto& a, const auto& b) { return a.prefix < b.prefix; });
  for (std::size_t i = 0; i + 1 < jobs.size(); ++i)
    if (jobs[i].prefix == jobs[i + 1].prefix)
      throw InvariantViolation("run_problem: duplicate check id '" + jobs[i].prefix + "'");

  // Execute on a worker pool; results land in job order, so the report list
  // is sorted by key regardless of completion order.
  struct JobResult {
    std::vector<VerificationReport> reports;
    bool fatal = false;
  };
  std::vector<JobResult> slots(jobs.size());
  auto run_one = [&](std::size_t i) {
    try {
      slots[i].reports = jobs[i].run();
    } catch (const std::exception& e) {
      VerificationReport r;
      r.name = "error";
      r.inputs = "check=" + jobs[i].prefix;
      r.lhs = e.what();
      r.pass = false;
      r.lhs_path = "engine: exception during verification";
      slots[i].fatal = dynamic_cast<const UnimodularityError*>(&e) != nullptr ||
                       dynamic_cast<const CapExceeded*>(&e) != nullptr;
      slots[i].reports.push_back(std::move(r));
    }
  };
  const std::size_t workers =
      std::min<std::size_t>(jobs.size(),
                            std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1))
          run_one(i);
      });
    for (auto& t : pool) t.join();
  }

  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const bool single = slots[i].reports.size() == 1;
    for (std::size_t r = 0; r < slots[i].reports.size(); ++r) {
      ExecutedReport er;
      er.key = single ? jobs[i].prefix
                      : jobs[i].prefix + "/" + detail::pad_index(r, 3) + ":" +
                            slots[i].reports[r].name;
      er.body = std::move(slots[i].reports[r]);
      er.fatal = slots[i].fatal;
      result.reports.push_back(std::move(er));
    }
  }

  std::sort(result.reports.begin(), result.reports.end(),
            [](const ExecutedReport& a, const ExecutedReport& b) { return a.key < b.key; });

  bool fatal = false;
  for (const ExecutedReport& r : result.reports) {
    if (!r.body.pass) ++result.failed;
    fatal = fatal || r.fatal;
  }
  result.exit_code = fatal ? 3 : (result.failed > 0 ? 1 : 0);
  return result;
}

// --- rendering -----------------------------------------------------------------

inline Json report_json(const ExecutedReport& r) {
  Json j = Json::object();
  j["id"] = r.key;
  j["name"] = r.body.name;
  j["inputs"] = r.body.inputs;
  j["lhs"] = r.body.lhs;
  j["rhs"] = r.body.rhs;
  j["pass"] = r.body.pass;
  j["lhs_path"] = r.body.lhs_path;
  j["rhs_path"] = r.body.rhs_path;
  j["millis"] = r.body.millis;  // timing; excluded from determinism guarantees
  return j;
}

inline Json run_result_json(const FieldSpec& field, const RunOptions& opts,
                            const RunResult& result) {
  Json j = Json::object();
  j["field"] = emit_field_spec(field);
  j["suite"] = opts.suite;
  j["seed"] = opts.seed;
  j["samples"] = opts.samples;
  j["max_resolution_length"] = opts.cap;
  Json reports = Json::array();
  for (const ExecutedReport& r : result.reports) reports.push_back(report_json(r));
  j["reports"] = std::move(reports);
  j["total"] = result.reports.size();
  j["failed"] = result.failed;
  j["ok"] = result.failed == 0;
  j["exit_code"] = result.exit_code;
  return j;
}

inline std::string run_result_text(const FieldSpec& field, const RunOptions& opts,
                                   const RunResult& result) {
  std::string out;
  for (const ExecutedReport& r : result.reports) {
    out += r.body.pass ? "[PASS] " : "[FAIL] ";
    out += r.key;
    if (!r.body.pass) {
      out += "\n  name:   " + r.body.name;
      out += "\n  inputs: " + r.body.inputs;
      out += "\n  lhs:    " + r.body.lhs + "  (" + r.body.lhs_path + ")";
      out += "\n  rhs:    " + r.body.rhs + "  (" + r.body.rhs_path + ")";
    }
    out += "\n";
  }
  out += "summary: " + std::to_string(result.reports.size()) + " check(s), " +
         std::to_string(result.failed) + " failed; field " + field.to_string() + ", suite " +
         opts.suite + ", seed " + std::to_string(opts.seed) + ", samples " +
         std::to_string(opts.samples) + "\n";
  return out;
}

}  // namespace qha

#endif  // QHA_RUNNER_HPP
