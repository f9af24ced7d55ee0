#ifndef QHA_DERIVED_HPP
#define QHA_DERIVED_HPP

// Derived functors on modules: Ext and Tor computed from minimal projective
// resolutions, together with the maps induced on them by a pair of module
// endomorphisms. Hom and tensor spaces against a projective term are modelled
// on flat coordinate spaces through the canonical isomorphisms
//   Hom(e_v A, N) = N_v   and   e_v A (x)_A L = L_v,
// one slot per summand of the term.

#include <cstddef>
#include <memory>
#include <utility>
#include <vector>

#include "qha/algebra.hpp"
#include "qha/bimodule.hpp"
#include "qha/complex.hpp"
#include "qha/errors.hpp"
#include "qha/homology.hpp"
#include "qha/matrix.hpp"
#include "qha/module.hpp"
#include "qha/resolution.hpp"

namespace qha {

// ---------------------------------------------------------------------------
// Flat models of Hom(P, N) and P (x) L for a projective sum P.

struct FlatSpace {
  std::vector<int> slot_vertex;       // generator vertex of each summand
  std::vector<std::size_t> slot_dim;  // coefficient dimension at that vertex
  std::vector<std::size_t> offset;    // start of each slot in the flat space
  std::size_t total = 0;
};

template <class K>
FlatSpace flat_slots(const ProjectiveModule<K>& p, const Representation<K>& coeff) {
  FlatSpace f;
  for (std::size_t s = 0; s < p.num_summands(); ++s) {
    const int v = p.summands[s];
    f.slot_vertex.push_back(v);
    f.offset.push_back(f.total);
    f.slot_dim.push_back(coeff.dim_at(v));
    f.total += coeff.dim_at(v);
  }
  return f;
}

namespace detail {

template <class K>
void add_block(Matrix<K>& out, std::size_t r0, std::size_t c0, const Matrix<K>& blk,
               const K& coeff) {
  for (std::size_t r = 0; r < blk.rows(); ++r)
    for (std::size_t c = 0; c < blk.cols(); ++c)
      out(r0 + r, c0 + c) = out(r0 + r, c0 + c) + coeff * blk(r, c);
}

}  // namespace detail

// Precomposition Hom(Q, N) -> Hom(P, N) along h: P -> Q, in flat coordinates
// (rows act from the left: x |-> x * result).
template <class K>
Matrix<K> hom_precompose(const ProjectiveModule<K>& p, const ProjectiveModule<K>& q,
                         const ModuleMorphism<K>& h, const Representation<K>& n) {
  if (h.src.get() != p.rep.get() || h.tgt.get() != q.rep.get())
    throw InvariantViolation("hom_precompose: morphism endpoints mismatch");
  if (n.alg.get() != p.rep->alg.get())
    throw InvariantViolation("hom_precompose: coefficient module over a different algebra");
  const Algebra<K>& alg = *p.rep->alg;
  FlatSpace fp = flat_slots(p, n);
  FlatSpace fq = flat_slots(q, n);
  Matrix<K> out(fq.total, fp.total);
  for (std::size_t s = 0; s < p.num_summands(); ++s) {
    const int v = p.summands[s];
    const std::size_t gr = p.generator_coord(s);
    const Matrix<K>& blk = h.at(v);
    const auto& labels = q.labels[static_cast<std::size_t>(v - 1)];
    for (std::size_t c = 0; c < blk.cols(); ++c) {
      const K& coeff = blk(gr, c);
      if (qha::is_zero(coeff)) continue;
      auto [t, b] = labels[c];
      Matrix<K> pa = n.path_action(alg.basis_path(b));
      detail::add_block(out, fq.offset[t], fp.offset[s], pa, coeff);
    }
  }
  return out;
}

// Slotwise coefficient map: the flat matrix of Hom(P, g): Hom(P, N) -> Hom(P, N')
// for g: N -> N', or equally of id_P (x) g on tensor slots. Block diagonal.
template <class K>
Matrix<K> flat_coefficient_map(const ProjectiveModule<K>& p, const ModuleMorphism<K>& g) {
  if (g.src->dims.size() != p.rep->dims.size())
    throw InvariantViolation("flat_coefficient_map: vertex count mismatch");
  FlatSpace fs = flat_slots(p, *g.src);
  FlatSpace ft = flat_slots(p, *g.tgt);
  Matrix<K> out(fs.total, ft.total);
  for (std::size_t s = 0; s < p.num_summands(); ++s) {
    const int v = p.summands[s];
    const Matrix<K>& blk = g.at(v);
    for (std::size_t r = 0; r < blk.rows(); ++r)
      for (std::size_t c = 0; c < blk.cols(); ++c)
        out(fs.offset[s] + r, ft.offset[s] + c) = blk(r, c);
  }
  return out;
}

// Structural check that `aop` presents the opposite algebra of `a`: the same
// vertex set and arrow list with every arrow flipped.
template <class K>
void require_opposite(const Algebra<K>& a, const Algebra<K>& aop) {
  const Quiver& q = a.quiver();
  const Quiver& r = aop.quiver();
  bool ok = q.num_vertices == r.num_vertices && q.arrows.size() == r.arrows.size() &&
            a.dim() == aop.dim();
  if (ok)
    for (std::size_t i = 0; i < q.arrows.size(); ++i)
      if (q.arrows[i].name != r.arrows[i].name || q.arrows[i].source != r.arrows[i].target ||
          q.arrows[i].target != r.arrows[i].source)
        ok = false;
  if (!ok) throw InvariantViolation("expected the opposite algebra presentation");
}

// The map P (x) L -> Q (x) L induced by h: P -> Q, in flat coordinates. The
// left module L is presented as a representation of the opposite algebra, so
// a basis path acts through its reversal.
template <class K>
Matrix<K> tensor_map(const ProjectiveModule<K>& p, const ProjectiveModule<K>& q,
                     const ModuleMorphism<K>& h, const Representation<K>& lmod) {
  if (h.src.get() != p.rep.get() || h.tgt.get() != q.rep.get())
    throw InvariantViolation("tensor_map: morphism endpoints mismatch");
  require_opposite(*p.rep->alg, *lmod.alg);
  const Algebra<K>& alg = *p.rep->alg;
  FlatSpace fp = flat_slots(p, lmod);
  FlatSpace fq = flat_slots(q, lmod);
  Matrix<K> out(fp.total, fq.total);
  for (std::size_t s = 0; s < p.num_summands(); ++s) {
    const int v = p.summands[s];
    const std::size_t gr = p.generator_coord(s);
    const Matrix<K>& blk = h.at(v);
    const auto& labels = q.labels[static_cast<std::size_t>(v - 1)];
    for (std::size_t c = 0; c < blk.cols(); ++c) {
      const K& coeff = blk(gr, c);
      if (qha::is_zero(coeff)) continue;
      auto [t, b] = labels[c];
      Matrix<K> pa = lmod.path_action(alg.basis_path(b).reversed(alg.quiver()));
      detail::add_block(out, fp.offset[s], fq.offset[t], pa, coeff);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Chain lifts of module endomorphisms through a resolution.

// Lifts g: P -> Z through e: Y -> Z, i.e. finds u: P -> Y with u then e == g.
// Solvable whenever the generator images of g lie in the image of e.
template <class K>
ModuleMorphism<K> lift_through(const ProjectiveModule<K>& p, const ModuleMorphism<K>& e,
                               const ModuleMorphism<K>& g) {
  if (g.src.get() != p.rep.get() || g.tgt.get() != e.tgt.get())
    throw InvariantViolation("lift_through: endpoints mismatch");
  std::vector<Matrix<K>> images;
  for (std::size_t s = 0; s < p.num_summands(); ++s) {
    const int v = p.summands[s];
    const std::size_t gr = p.generator_coord(s);
    Matrix<K> rhs(1, g.tgt->dim_at(v));
    for (std::size_t c = 0; c < rhs.cols(); ++c) rhs(0, c) = g.at(v)(gr, c);
    auto sol = solve_linear(transpose(e.at(v)), transpose(rhs));
    if (!sol) throw InvariantViolation("lift_through: generator image is not liftable");
    images.push_back(transpose(*sol));
  }
  ModuleMorphism<K> u = morphism_from_generators(p, e.src, images);
  check_morphism(u);
  if (!add(compose(u, e), negate(g)).is_zero())
    throw InvariantViolation("lift_through: lifted map does not factor the given one");
  return u;
}

// A chain lift of phi: M -> M through the resolution: maps f[l]: P_l -> P_l
// with f[0] then aug == aug then phi and f[l] then d_l == d_l then f[l-1].
template <class K>
std::vector<ModuleMorphism<K>> lift_endomorphism(const Resolution<K>& r,
                                                 const ModuleMorphism<K>& phi) {
  if (phi.src.get() != r.module.get() || phi.tgt.get() != r.module.get())
    throw InvariantViolation("lift_endomorphism: not an endomorphism of the resolved module");
  std::vector<ModuleMorphism<K>> fs;
  fs.reserve(r.terms.size());
  fs.push_back(lift_through(r.terms[0], r.aug, compose(r.aug, phi)));
  for (std::size_t l = 1; l < r.terms.size(); ++l)
    fs.push_back(lift_through(r.terms[l], r.maps[l - 1], compose(r.maps[l - 1], fs[l - 1])));
  return fs;
}

// Perturbs a chain lift by a homotopy h (h[l]: P_l -> P_{l+1}); the result is
// another chain lift of the same endomorphism and must induce the same maps
// on Ext and Tor.
template <class K>
std::vector<ModuleMorphism<K>> perturb_lift(const Resolution<K>& r,
                                            const std::vector<ModuleMorphism<K>>& f,
                                            const std::vector<ModuleMorphism<K>>& h) {
  if (f.size() != r.terms.size() || h.size() + 1 != r.terms.size())
    throw InvariantViolation("perturb_lift: length mismatch");
  std::vector<ModuleMorphism<K>> out;
  out.reserve(f.size());
  for (std::size_t l = 0; l < f.size(); ++l) {
    ModuleMorphism<K> g = f[l];
    if (l < h.size()) g = add(g, compose(h[l], r.maps[l]));
    if (l >= 1) g = add(g, compose(r.maps[l - 1], h[l - 1]));
    out.push_back(std::move(g));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Ext and Tor trace data.

// Cohomology dimensions together with the traces of an induced endomorphism,
// indexed cohomologically from `lo`.
template <class K>
struct DerivedTraceData {
  int lo = 0;
  std::vector<std::size_t> dims;
  std::vector<K> traces;

  Integer euler_dim() const {
    Integer e = 0;
    for (std::size_t i = 0; i < dims.size(); ++i) {
      Integer d(static_cast<unsigned long>(dims[i]));
      if (degree_sign(lo + static_cast<int>(i)) > 0)
        e += d;
      else
        e -= d;
    }
    return e;
  }

  K euler_trace(const K& proto) const {
    K e = scalar_from_int(0, proto);
    for (std::size_t i = 0; i < traces.size(); ++i) {
      if (degree_sign(lo + static_cast<int>(i)) > 0)
        e = e + traces[i];
      else
        e = e - traces[i];
    }
    return e;
  }
};

// Checks that the endomorphisms commute with the differentials, then reads
// off cohomology dimensions and induced traces.
template <class K>
DerivedTraceData<K> derived_trace_data(const LinearComplex<K>& c,
                                       const std::vector<Matrix<K>>& endos, const K& proto) {
  c.validate();
  if (endos.size() != c.dims.size())
    throw InvariantViolation("derived_trace_data: endo count mismatch");
  for (std::size_t t = 0; t < c.diffs.size(); ++t)
    if (!(endos[t] * c.diffs[t] - c.diffs[t] * endos[t + 1]).is_zero())
      throw InvariantViolation("derived_trace_data: endo does not commute with the differential");
  LinearCohomology<K> h = linear_cohomology(c, proto);
  DerivedTraceData<K> out;
  out.lo = c.lo;
  out.dims = h.dims();
  out.traces = induced_traces(h, endos, proto);
  return out;
}

// The flat Hom complex Hom(P_*, N) of a resolution, concentrated in
// cohomological degrees 0..length.
template <class K>
LinearComplex<K> hom_complex(const Resolution<K>& r, const Representation<K>& n) {
  LinearComplex<K> c;
  c.lo = 0;
  for (std::size_t l = 0; l < r.terms.size(); ++l)
    c.dims.push_back(flat_slots(r.terms[l], n).total);
  for (std::size_t l = 0; l + 1 < r.terms.size(); ++l)
    c.diffs.push_back(hom_precompose(r.terms[l + 1], r.terms[l], r.maps[l], n));
  c.validate();
  return c;
}

// Flat endomorphisms of the Hom complex induced by a chain lift f of phi and
// a coefficient endomorphism psi: N -> N (g |-> psi after g after f).
template <class K>
std::vector<Matrix<K>> hom_endos(const Resolution<K>& r,
                                 const std::vector<ModuleMorphism<K>>& f,
                                 const ModuleMorphism<K>& psi, const Representation<K>& n) {
  if (psi.src->dims != n.dims || psi.src.get() != psi.tgt.get())
    throw InvariantViolation("hom_endos: coefficient map is not an endomorphism of N");
  std::vector<Matrix<K>> endos;
  for (std::size_t l = 0; l < r.terms.size(); ++l)
    endos.push_back(hom_precompose(r.terms[l], r.terms[l], f[l], n) *
                    flat_coefficient_map(r.terms[l], psi));
  return endos;
}

// The flat tensor complex P_* (x) L as a cochain complex in degrees
// -length..0 (degree -l holds P_l (x) L).
template <class K>
LinearComplex<K> tensor_complex(const Resolution<K>& r, const Representation<K>& lmod) {
  const std::size_t len = r.terms.size() - 1;
  LinearComplex<K> c;
  c.lo = -static_cast<int>(len);
  for (std::size_t idx = 0; idx <= len; ++idx)
    c.dims.push_back(flat_slots(r.terms[len - idx], lmod).total);
  for (std::size_t idx = 0; idx < len; ++idx) {
    const std::size_t l = len - idx;  // boundary P_l -> P_{l-1}
    c.diffs.push_back(tensor_map(r.terms[l], r.terms[l - 1], r.maps[l - 1], lmod));
  }
  c.validate();
  return c;
}

template <class K>
std::vector<Matrix<K>> tensor_endos(const Resolution<K>& r,
                                    const std::vector<ModuleMorphism<K>>& f,
                                    const ModuleMorphism<K>& psi_left,
                                    const Representation<K>& lmod) {
  if (psi_left.src->dims != lmod.dims || psi_left.src.get() != psi_left.tgt.get())
    throw InvariantViolation("tensor_endos: coefficient map is not an endomorphism of L");
  const std::size_t len = r.terms.size() - 1;
  std::vector<Matrix<K>> endos;
  for (std::size_t idx = 0; idx <= len; ++idx) {
    const std::size_t l = len - idx;
    endos.push_back(tensor_map(r.terms[l], r.terms[l], f[l], lmod) *
                    flat_coefficient_map(r.terms[l], psi_left));
  }
  return endos;
}

// Ext^l(M, N) dimensions and the traces of Ext^l(phi, psi), indexed from 0.
template <class K>
DerivedTraceData<K> ext_data(RepPtr<K> m, RepPtr<K> n, const ModuleMorphism<K>& phi,
                             const ModuleMorphism<K>& psi,
                             std::size_t cap = kDefaultResolutionCap) {
  if (m->alg.get() != n->alg.get())
    throw InvariantViolation("ext_data: modules over different algebras");
  Resolution<K> r = minimal_projective_resolution(m, cap);
  std::vector<ModuleMorphism<K>> f = lift_endomorphism(r, phi);
  const K proto = m->alg->proto();
  return derived_trace_data(hom_complex(r, *n), hom_endos(r, f, psi, *n), proto);
}

// Tor_l(M, L) dimensions and traces of Tor_l(phi, psi), indexed homologically
// from 0 (entry l reports Tor_l). L is a left module given over the opposite
// algebra.
template <class K>
DerivedTraceData<K> tor_data(RepPtr<K> m, RepPtr<K> lmod, const ModuleMorphism<K>& phi,
                             const ModuleMorphism<K>& psi_left,
                             std::size_t cap = kDefaultResolutionCap) {
  require_opposite(*m->alg, *lmod->alg);
  Resolution<K> r = minimal_projective_resolution(m, cap);
  std::vector<ModuleMorphism<K>> f = lift_endomorphism(r, phi);
  const K proto = m->alg->proto();
  DerivedTraceData<K> cochain =
      derived_trace_data(tensor_complex(r, *lmod), tensor_endos(r, f, psi_left, *lmod), proto);
  // Re-index so that entry l reports Tor_l = H^{-l}.
  DerivedTraceData<K> out;
  out.lo = 0;
  out.dims.assign(cochain.dims.rbegin(), cochain.dims.rend());
  out.traces.assign(cochain.traces.rbegin(), cochain.traces.rend());
  return out;
}

// ---------------------------------------------------------------------------
// Hochschild (co)homology of an algebra with coefficients in a bimodule over
// itself, as Ext/Tor over the enveloping algebra.

template <class K>
DerivedTraceData<K> hochschild_cohomology_data(const BimoduleHandle<K>& m,
                                               const ModuleMorphism<K>& f,
                                               std::size_t cap = kDefaultResolutionCap) {
  if (m.left_alg.get() != m.right_alg.get())
    throw InvariantViolation("hochschild cohomology needs a bimodule over one algebra");
  BimoduleHandle<K> reg = regular_bimodule<K>(m.right_alg, m.env);
  return ext_data(reg.rep, m.rep, identity_morphism(reg.rep), f, cap);
}

template <class K>
DerivedTraceData<K> hochschild_homology_data(const BimoduleHandle<K>& m,
                                             const ModuleMorphism<K>& f,
                                             std::size_t cap = kDefaultResolutionCap) {
  if (m.left_alg.get() != m.right_alg.get())
    throw InvariantViolation("hochschild homology needs a bimodule over one algebra");
  BimoduleHandle<K> reg = regular_bimodule<K>(m.right_alg, m.env);
  LeftModuleForm<K> lf = left_module_form(reg);
  ModuleMorphism<K> id_lf = identity_morphism(lf.rep);
  // Resolve the coefficient bimodule and tensor against the algebra itself.
  return tor_data(m.rep, lf.rep, f, id_lf, cap);
}

// ---------------------------------------------------------------------------
// Direct (resolution-free) computations used as independent cross-checks.

// dim (M (x)_A L): the coordinate space sum_v M_v (x) L_v modulo the relations
// (x . alpha) (x) y = x (x) (alpha . y) for every arrow alpha.
template <class K>
std::size_t tensor_product_dim(const Representation<K>& m, const Representation<K>& lmod) {
  require_opposite(*m.alg, *lmod.alg);
  const Quiver& q = m.alg->quiver();
  const int n = m.alg->num_vertices();
  std::vector<std::size_t> offset(static_cast<std::size_t>(n), 0);
  std::size_t total = 0;
  for (int v = 1; v <= n; ++v) {
    offset[static_cast<std::size_t>(v - 1)] = total;
    total += m.dim_at(v) * lmod.dim_at(v);
  }
  std::vector<Matrix<K>> rel_rows;
  std::size_t rel_count = 0;
  for (std::size_t a = 0; a < q.arrows.size(); ++a)
    rel_count += m.dim_at(q.arrows[a].source) * lmod.dim_at(q.arrows[a].target);
  Matrix<K> rels(rel_count, total);
  std::size_t at = 0;
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    const int s = q.arrows[a].source, t = q.arrows[a].target;
    const Matrix<K>& ma = m.act[a];            // M_s x M_t
    const Matrix<K>& la = lmod.act[a];         // L_t x L_s (opposite action)
    for (std::size_t i = 0; i < m.dim_at(s); ++i)
      for (std::size_t j = 0; j < lmod.dim_at(t); ++j, ++at) {
        // (e_i . alpha) (x) f_j at vertex t, minus e_i (x) (alpha . f_j) at s.
        for (std::size_t c = 0; c < m.dim_at(t); ++c)
          rels(at, offset[static_cast<std::size_t>(t - 1)] + c * lmod.dim_at(t) + j) =
              ma(i, c);
        for (std::size_t c = 0; c < lmod.dim_at(s); ++c)
          rels(at, offset[static_cast<std::size_t>(s - 1)] + i * lmod.dim_at(s) + c) =
              rels(at, offset[static_cast<std::size_t>(s - 1)] + i * lmod.dim_at(s) + c) -
              la(j, c);
      }
  }
  return total - rank(rels);
}

// dim of the centre of the algebra: elements commuting with every basis
// element, computed by plain linear algebra on the multiplication tables.
template <class K>
std::size_t centre_dim(const Algebra<K>& a) {
  const std::size_t d = a.dim();
  Matrix<K> sys(d, d * d);
  for (std::size_t z = 0; z < d; ++z)
    for (std::size_t b = 0; b < d; ++b) {
      std::vector<K> zb = a.multiply_basis(z, b);
      std::vector<K> bz = a.multiply_basis(b, z);
      for (std::size_t c = 0; c < d; ++c) sys(z, b * d + c) = zb[c] - bz[c];
    }
  return d - rank(sys);
}

// dim of A / [A, A]: the quotient by the span of all basis commutators.
template <class K>
std::size_t zeroth_trace_space_dim(const Algebra<K>& a) {
  const std::size_t d = a.dim();
  Matrix<K> comms(d * d, d);
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y) {
      std::vector<K> xy = a.multiply_basis(x, y);
      std::vector<K> yx = a.multiply_basis(y, x);
      for (std::size_t c = 0; c < d; ++c) comms(x * d + y, c) = xy[c] - yx[c];
    }
  return d - rank(comms);
}

}  // namespace qha

#endif  // QHA_DERIVED_HPP
