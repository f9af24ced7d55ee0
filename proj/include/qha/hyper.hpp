#ifndef QHA_HYPER_HPP
#define QHA_HYPER_HPP

// Hyper Ext and Tor of bounded complexes: a degreewise surjective
// quasi-isomorphism from a bounded complex of projectives is built by
// resolving the lowest component and gluing onto the replacement of the rest
// along a strictly lifted chain map; total Hom and tensor complexes against a
// second bounded complex then carry the maps induced by chain endomorphisms.

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "qha/algebra.hpp"
#include "qha/complex.hpp"
#include "qha/derived.hpp"
#include "qha/errors.hpp"
#include "qha/homology.hpp"
#include "qha/matrix.hpp"
#include "qha/module.hpp"
#include "qha/resolution.hpp"

namespace qha {

// A bounded cochain complex whose components carry projective-sum structure.
template <class K>
struct ProjectiveComplex {
  typename Algebra<K>::Ptr alg;
  int lo = 0;
  std::vector<ProjectiveModule<K>> terms;  // degrees lo .. lo+terms.size()-1
  BoundedComplex<K> cx;                    // cx.comps[i] == terms[i].rep

  int hi() const { return lo + static_cast<int>(terms.size()) - 1; }
  bool has_degree(int t) const { return t >= lo && t <= hi(); }
  const ProjectiveModule<K>& term_at(int t) const {
    return terms[static_cast<std::size_t>(t - lo)];
  }
};

template <class K>
struct ProjectiveReplacement {
  ProjectiveComplex<K> prj;
  BoundedComplex<K> target;  // the original complex padded to prj's range
  ChainMap<K> eps;           // prj.cx -> target, degreewise surjective quasi-iso
};

namespace detail {

// Rebuilds the complex attached to a list of projective terms.
template <class K>
void attach_complex(ProjectiveComplex<K>& p, std::vector<ModuleMorphism<K>> diffs) {
  p.cx.alg = p.alg;
  p.cx.lo = p.lo;
  p.cx.comps.clear();
  for (const auto& t : p.terms) p.cx.comps.push_back(t.rep);
  p.cx.diffs = std::move(diffs);
  validate_complex(p.cx);
}

// Extends a projective complex to a wider degree range with empty terms.
template <class K>
ProjectiveComplex<K> extend_projective(const ProjectiveComplex<K>& p, int new_lo, int new_hi) {
  if (new_lo > p.lo || new_hi < p.hi())
    throw InvariantViolation("extend_projective: range shrinks");
  ProjectiveComplex<K> q;
  q.alg = p.alg;
  q.lo = new_lo;
  for (int t = new_lo; t <= new_hi; ++t)
    q.terms.push_back(p.has_degree(t) ? p.term_at(t) : projective_sum<K>(p.alg, {}));
  std::vector<ModuleMorphism<K>> diffs;
  for (int t = new_lo; t < new_hi; ++t) {
    if (p.has_degree(t) && p.has_degree(t + 1))
      diffs.push_back(p.cx.diff_at(t));
    else
      diffs.push_back(zero_morphism(q.terms[static_cast<std::size_t>(t - new_lo)].rep,
                                    q.terms[static_cast<std::size_t>(t - new_lo + 1)].rep));
  }
  attach_complex(q, std::move(diffs));
  return q;
}

// Extends a chain map e: b -> z to a wider aligned range by zero components.
template <class K>
ChainMap<K> extend_chain_map(const ChainMap<K>& e, const BoundedComplex<K>& b,
                             const BoundedComplex<K>& z, const BoundedComplex<K>& bx,
                             const BoundedComplex<K>& zx) {
  ChainMap<K> out;
  out.lo = bx.lo;
  for (int t = bx.lo; t <= bx.hi(); ++t) {
    if (t >= b.lo && t - b.lo < static_cast<int>(e.comps.size()) &&
        b.at(t).get() == bx.at(t).get() && z.at(t).get() == zx.at(t).get())
      out.comps.push_back(e.comps[static_cast<std::size_t>(t - e.lo)]);
    else
      out.comps.push_back(zero_morphism(bx.at(t), zx.at(t)));
  }
  return out;
}

}  // namespace detail

// Composition of aligned chain maps (apply f, then g).
template <class K>
ChainMap<K> compose_chain(const ChainMap<K>& f, const ChainMap<K>& g) {
  if (f.lo != g.lo || f.comps.size() != g.comps.size())
    throw InvariantViolation("compose_chain: ranges not aligned");
  ChainMap<K> out;
  out.lo = f.lo;
  for (std::size_t t = 0; t < f.comps.size(); ++t)
    out.comps.push_back(compose(f.comps[t], g.comps[t]));
  return out;
}

// Strictly lifts a chain map g: R -> Z through a degreewise surjective
// quasi-isomorphism e: B -> Z, where R is a bounded complex of projectives.
// All four complexes share one degree range. The result fhat: R -> B
// satisfies fhat then e == g degreewise and commutes with the differentials;
// both properties are verified exactly.
template <class K>
ChainMap<K> lift_chain_map(const ProjectiveComplex<K>& r, const ChainMap<K>& e,
                           const BoundedComplex<K>& b, const BoundedComplex<K>& z,
                           const ChainMap<K>& g) {
  if (r.lo != b.lo || r.lo != z.lo || r.lo != e.lo || r.lo != g.lo ||
      r.terms.size() != b.comps.size() || b.comps.size() != z.comps.size() ||
      e.comps.size() != b.comps.size() || g.comps.size() != r.terms.size())
    throw InvariantViolation("lift_chain_map: ranges not aligned");
  const int lo = r.lo, hi = r.hi();
  std::vector<ModuleMorphism<K>> comps(r.terms.size());
  for (int t = hi; t >= lo; --t) {
    const ProjectiveModule<K>& rt = r.term_at(t);
    std::vector<Matrix<K>> images;
    for (std::size_t s = 0; s < rt.num_summands(); ++s) {
      const int v = rt.summands[s];
      const std::size_t gr = rt.generator_coord(s);
      // Factorization constraint through e, and the commuting square with
      // the differential into degree t+1 (zero row when at the top).
      const Matrix<K>& ev = e.comps[static_cast<std::size_t>(t - lo)].at(v);
      Matrix<K> rhs_a(1, ev.cols());
      {
        const Matrix<K>& gv = g.comps[static_cast<std::size_t>(t - lo)].at(v);
        for (std::size_t c = 0; c < rhs_a.cols(); ++c) rhs_a(0, c) = gv(gr, c);
      }
      Matrix<K> dv(b.at(t)->dim_at(v), t < hi ? b.at(t + 1)->dim_at(v) : 0);
      Matrix<K> rhs_b(1, dv.cols());
      if (t < hi) {
        dv = b.diff_at(t).at(v);
        ModuleMorphism<K> step = compose(r.cx.diff_at(t), comps[static_cast<std::size_t>(t + 1 - lo)]);
        for (std::size_t c = 0; c < rhs_b.cols(); ++c) rhs_b(0, c) = step.at(v)(gr, c);
      }
      auto sol = solve_linear(transpose(hstack(ev, dv)), transpose(hstack(rhs_a, rhs_b)));
      if (!sol) throw InvariantViolation("lift_chain_map: generator system is unsolvable");
      images.push_back(transpose(*sol));
    }
    comps[static_cast<std::size_t>(t - lo)] = morphism_from_generators(rt, b.at(t), images);
    check_morphism(comps[static_cast<std::size_t>(t - lo)]);
  }
  ChainMap<K> fhat;
  fhat.lo = lo;
  fhat.comps = std::move(comps);
  check_chain_map(fhat, r.cx, b);
  for (int t = lo; t <= hi; ++t)
    if (!add(compose(fhat.comps[static_cast<std::size_t>(t - lo)],
                     e.comps[static_cast<std::size_t>(t - lo)]),
             negate(g.comps[static_cast<std::size_t>(t - lo)]))
             .is_zero())
      throw InvariantViolation("lift_chain_map: lifted map does not factor the given one");
  return fhat;
}

// ---------------------------------------------------------------------------
// Projective replacement of a bounded complex.

template <class K>
ProjectiveReplacement<K> projective_replacement(const BoundedComplex<K>& x,
                                                std::size_t cap = kDefaultResolutionCap);

namespace detail {

template <class K>
void verify_replacement(const ProjectiveReplacement<K>& rep) {
  check_chain_map(rep.eps, rep.prj.cx, rep.target);
  const int nv = rep.prj.alg->num_vertices();
  for (std::size_t t = 0; t < rep.eps.comps.size(); ++t)
    for (int v = 1; v <= nv; ++v)
      if (rank(rep.eps.comps[t].at(v)) != rep.target.comps[t]->dim_at(v))
        throw InvariantViolation("projective replacement: not degreewise surjective");
  BoundedComplex<K> cone = mapping_cone(rep.eps, rep.prj.cx, rep.target);
  for (int t = cone.lo; t <= cone.hi(); ++t)
    if (cohomology(cone, t).rep->total_dim() != 0)
      throw InvariantViolation("projective replacement: not a quasi-isomorphism");
}

// Base case: a single module at one degree, replaced by its resolution.
template <class K>
ProjectiveReplacement<K> replace_single(const BoundedComplex<K>& x, std::size_t cap) {
  Resolution<K> r = minimal_projective_resolution(x.comps[0], cap);
  const std::size_t len = r.terms.size() - 1;
  ProjectiveReplacement<K> out;
  out.prj.alg = x.alg;
  out.prj.lo = x.lo - static_cast<int>(len);
  std::vector<ModuleMorphism<K>> diffs;
  for (std::size_t idx = 0; idx <= len; ++idx) out.prj.terms.push_back(r.terms[len - idx]);
  for (std::size_t idx = 0; idx < len; ++idx) diffs.push_back(r.maps[len - idx - 1]);
  attach_complex(out.prj, std::move(diffs));
  out.target = pad_complex(x, out.prj.lo, x.lo);
  out.eps.lo = out.prj.lo;
  for (std::size_t idx = 0; idx <= len; ++idx)
    out.eps.comps.push_back(idx == len ? r.aug
                                       : zero_morphism(out.prj.terms[idx].rep,
                                                       out.target.comps[idx]));
  verify_replacement(out);
  return out;
}

}  // namespace detail

template <class K>
ProjectiveReplacement<K> projective_replacement(const BoundedComplex<K>& x, std::size_t cap) {
  validate_complex(x);
  if (x.empty()) throw InvariantViolation("projective_replacement: empty complex");
  if (x.comps.size() == 1) return detail::replace_single(x, cap);

  // Split off the lowest component: x is the cone of the chain map sending
  // the lowest component (placed one degree up) into the tail via the lowest
  // differential.
  RepPtr<K> m0 = x.comps[0];
  const ModuleMorphism<K>& d0 = x.diffs[0];
  BoundedComplex<K> tail;
  tail.alg = x.alg;
  tail.lo = x.lo + 1;
  tail.comps.assign(x.comps.begin() + 1, x.comps.end());
  tail.diffs.assign(x.diffs.begin() + 1, x.diffs.end());

  ProjectiveReplacement<K> b = projective_replacement(tail, cap);
  Resolution<K> ra = minimal_projective_resolution(m0, cap);
  const std::size_t len0 = ra.terms.size() - 1;

  // Working range for the lift: the resolution of m0 ends at degree x.lo+1.
  const int rlo = x.lo + 1 - static_cast<int>(len0);
  const int wlo = std::min(rlo, b.prj.lo);
  const int whi = x.hi();

  ProjectiveComplex<K> rbase;
  rbase.alg = x.alg;
  rbase.lo = rlo;
  {
    std::vector<ModuleMorphism<K>> diffs;
    for (std::size_t idx = 0; idx <= len0; ++idx) rbase.terms.push_back(ra.terms[len0 - idx]);
    for (std::size_t idx = 0; idx < len0; ++idx) diffs.push_back(ra.maps[len0 - idx - 1]);
    detail::attach_complex(rbase, std::move(diffs));
  }
  ProjectiveComplex<K> r = detail::extend_projective(rbase, wlo, whi);
  ProjectiveComplex<K> bp = detail::extend_projective(b.prj, wlo, whi);
  BoundedComplex<K> z = pad_complex(tail, wlo, whi);
  ChainMap<K> eps_b = detail::extend_chain_map(b.eps, b.prj.cx, b.target, bp.cx, z);

  // g: r -> z is supported in degree x.lo+1, where it sends the resolution
  // augmentation into the tail through the lowest differential of x.
  ChainMap<K> g = zero_chain_map(r.cx, z);
  g.comps[static_cast<std::size_t>(x.lo + 1 - wlo)] = compose(ra.aug, d0);
  check_chain_map(g, r.cx, z);

  ChainMap<K> fhat = lift_chain_map(r, eps_b, bp.cx, z, g);

  // Assemble the cone: P^t = R^{t+1} (+) B^t with differential
  // [[-d_R, fhat], [0, d_B]], and the augmentation built from the resolution
  // augmentation (degree x.lo) and the tail replacement.
  ProjectiveReplacement<K> out;
  out.prj.alg = x.alg;
  out.prj.lo = std::min(rlo - 1, b.prj.lo);
  const int clo = out.prj.lo, chi = whi;
  const int nv = x.alg->num_vertices();

  auto rterm = [&](int t) -> const ProjectiveModule<K>& { return r.term_at(t); };
  auto bterm = [&](int t) -> const ProjectiveModule<K>& { return bp.term_at(t); };
  auto rdim = [&](int t, int v) -> std::size_t {
    return t >= wlo && t <= whi ? rterm(t).rep->dim_at(v) : 0;
  };
  auto bdim = [&](int t, int v) -> std::size_t {
    return t >= wlo && t <= whi ? bterm(t).rep->dim_at(v) : 0;
  };

  for (int t = clo; t <= chi; ++t) {
    std::vector<int> verts;
    if (t + 1 >= wlo && t + 1 <= whi)
      verts.insert(verts.end(), rterm(t + 1).summands.begin(), rterm(t + 1).summands.end());
    if (t >= wlo && t <= whi)
      verts.insert(verts.end(), bterm(t).summands.begin(), bterm(t).summands.end());
    out.prj.terms.push_back(projective_sum<K>(x.alg, verts));
  }

  std::vector<ModuleMorphism<K>> cone_diffs;
  for (int t = clo; t < chi; ++t) {
    ModuleMorphism<K> d;
    d.src = out.prj.terms[static_cast<std::size_t>(t - clo)].rep;
    d.tgt = out.prj.terms[static_cast<std::size_t>(t + 1 - clo)].rep;
    for (int v = 1; v <= nv; ++v) {
      const std::size_t xr = rdim(t + 1, v), yr = bdim(t, v);
      const std::size_t xc = rdim(t + 2, v), yc = bdim(t + 1, v);
      Matrix<K> blk(xr + yr, xc + yc);
      if (xr > 0 && xc > 0) {
        const Matrix<K>& dr = r.cx.diff_at(t + 1).at(v);
        for (std::size_t rr = 0; rr < xr; ++rr)
          for (std::size_t cc = 0; cc < xc; ++cc) blk(rr, cc) = -dr(rr, cc);
      }
      if (xr > 0 && yc > 0) {
        const Matrix<K>& fv = fhat.comps[static_cast<std::size_t>(t + 1 - wlo)].at(v);
        for (std::size_t rr = 0; rr < xr; ++rr)
          for (std::size_t cc = 0; cc < yc; ++cc) blk(rr, xc + cc) = fv(rr, cc);
      }
      if (yr > 0 && yc > 0) {
        const Matrix<K>& db = bp.cx.diff_at(t).at(v);
        for (std::size_t rr = 0; rr < yr; ++rr)
          for (std::size_t cc = 0; cc < yc; ++cc) blk(xr + rr, xc + cc) = db(rr, cc);
      }
      d.blocks.push_back(std::move(blk));
    }
    cone_diffs.push_back(std::move(d));
  }
  detail::attach_complex(out.prj, std::move(cone_diffs));

  out.target = pad_complex(x, clo, chi);
  out.eps.lo = clo;
  for (int t = clo; t <= chi; ++t) {
    ModuleMorphism<K> e;
    e.src = out.prj.terms[static_cast<std::size_t>(t - clo)].rep;
    e.tgt = out.target.comps[static_cast<std::size_t>(t - clo)];
    for (int v = 1; v <= nv; ++v) {
      const std::size_t xr = rdim(t + 1, v), yr = bdim(t, v);
      const std::size_t cols = e.tgt->dim_at(v);
      Matrix<K> blk(xr + yr, cols);
      if (t == x.lo && xr > 0) {
        const Matrix<K>& av = ra.aug.at(v);
        for (std::size_t rr = 0; rr < xr; ++rr)
          for (std::size_t cc = 0; cc < cols; ++cc) blk(rr, cc) = av(rr, cc);
      }
      if (t >= x.lo + 1 && t <= whi && yr > 0) {
        const Matrix<K>& bv = eps_b.comps[static_cast<std::size_t>(t - wlo)].at(v);
        for (std::size_t rr = 0; rr < yr; ++rr)
          for (std::size_t cc = 0; cc < cols; ++cc) blk(xr + rr, cc) = bv(rr, cc);
      }
      e.blocks.push_back(std::move(blk));
    }
    out.eps.comps.push_back(std::move(e));
  }
  detail::verify_replacement(out);
  return out;
}

// Lifts a chain endomorphism of the replaced complex to the replacement:
// F: P -> P with F then eps == eps then phi, where phi is given on the
// original (unpadded) complex.
template <class K>
ChainMap<K> lift_replacement_endomorphism(const ProjectiveReplacement<K>& rep,
                                          const ChainMap<K>& phi) {
  ChainMap<K> phi_pad;
  phi_pad.lo = rep.target.lo;
  for (int t = rep.target.lo; t <= rep.target.hi(); ++t) {
    if (t >= phi.lo && t - phi.lo < static_cast<int>(phi.comps.size()))
      phi_pad.comps.push_back(phi.comps[static_cast<std::size_t>(t - phi.lo)]);
    else
      phi_pad.comps.push_back(zero_morphism(rep.target.comps[static_cast<std::size_t>(t - rep.target.lo)],
                                            rep.target.comps[static_cast<std::size_t>(t - rep.target.lo)]));
  }
  check_chain_map(phi_pad, rep.target, rep.target);
  ChainMap<K> g = compose_chain(rep.eps, phi_pad);
  return lift_chain_map(rep.prj, rep.eps, rep.prj.cx, rep.target, g);
}

// ---------------------------------------------------------------------------
// Total Hom and tensor complexes.

namespace detail {

struct SlotTable {
  std::vector<int> is;                // the P-degree of each slot
  std::vector<std::size_t> offset;
  std::size_t total = 0;

  int find(int i) const {
    for (std::size_t k = 0; k < is.size(); ++k)
      if (is[k] == i) return static_cast<int>(k);
    return -1;
  }
};

template <class K>
void paste(Matrix<K>& out, std::size_t r0, std::size_t c0, const Matrix<K>& blk, int sign) {
  for (std::size_t r = 0; r < blk.rows(); ++r)
    for (std::size_t c = 0; c < blk.cols(); ++c)
      out(r0 + r, c0 + c) = sign > 0 ? blk(r, c) : -blk(r, c);
}

}  // namespace detail

// The total Hom complex Hom(P, Y) with slots Hom(P^i, Y^{i+t}) in total
// degree t, differential D(f) = d_Y f - (-1)^t f d_P, together with the
// endomorphisms induced by a chain endomorphism F of P and psi of Y.
template <class K>
std::pair<LinearComplex<K>, std::vector<Matrix<K>>> total_hom_data(
    const ProjectiveComplex<K>& p, const BoundedComplex<K>& y, const ChainMap<K>& bigf,
    const ChainMap<K>& psi) {
  if (bigf.lo != p.lo || bigf.comps.size() != p.terms.size())
    throw InvariantViolation("total_hom_data: endo of P not aligned");
  if (psi.lo != y.lo || psi.comps.size() != y.comps.size())
    throw InvariantViolation("total_hom_data: endo of Y not aligned");
  const int tlo = y.lo - p.hi();
  const int thi = y.hi() - p.lo;

  std::vector<detail::SlotTable> tables;
  for (int t = tlo; t <= thi; ++t) {
    detail::SlotTable tab;
    for (int i = std::max(p.lo, y.lo - t); i <= std::min(p.hi(), y.hi() - t); ++i) {
      tab.is.push_back(i);
      tab.offset.push_back(tab.total);
      tab.total += flat_slots(p.term_at(i), *y.at(i + t)).total;
    }
    tables.push_back(std::move(tab));
  }

  LinearComplex<K> c;
  c.lo = tlo;
  for (const auto& tab : tables) c.dims.push_back(tab.total);
  for (int t = tlo; t < thi; ++t) {
    const auto& src = tables[static_cast<std::size_t>(t - tlo)];
    const auto& tgt = tables[static_cast<std::size_t>(t + 1 - tlo)];
    Matrix<K> d(src.total, tgt.total);
    for (std::size_t k = 0; k < src.is.size(); ++k) {
      const int i = src.is[k];
      // Postcomposition with d_Y^{i+t} lands in the slot of the same i.
      if (int kk = tgt.find(i); kk >= 0 && i + t < y.hi()) {
        Matrix<K> blk = flat_coefficient_map(p.term_at(i), y.diff_at(i + t));
        detail::paste(d, src.offset[k], tgt.offset[static_cast<std::size_t>(kk)], blk, 1);
      }
      // Precomposition with d_P^{i-1} lands in the slot of i-1, with the
      // Koszul sign -(-1)^t.
      if (int kk = tgt.find(i - 1); kk >= 0 && i > p.lo) {
        Matrix<K> blk = hom_precompose(p.term_at(i - 1), p.term_at(i), p.cx.diff_at(i - 1),
                                       *y.at(i + t));
        detail::paste(d, src.offset[k], tgt.offset[static_cast<std::size_t>(kk)], blk,
                      -degree_sign(t));
      }
    }
    c.diffs.push_back(std::move(d));
  }
  c.validate();

  std::vector<Matrix<K>> endos;
  for (int t = tlo; t <= thi; ++t) {
    const auto& tab = tables[static_cast<std::size_t>(t - tlo)];
    Matrix<K> e(tab.total, tab.total);
    for (std::size_t k = 0; k < tab.is.size(); ++k) {
      const int i = tab.is[k];
      Matrix<K> blk =
          hom_precompose(p.term_at(i), p.term_at(i), bigf.comps[static_cast<std::size_t>(i - p.lo)],
                         *y.at(i + t)) *
          flat_coefficient_map(p.term_at(i), psi.comps[static_cast<std::size_t>(i + t - y.lo)]);
      detail::paste(e, tab.offset[k], tab.offset[k], blk, 1);
    }
    endos.push_back(std::move(e));
  }
  return {std::move(c), std::move(endos)};
}

// The total tensor complex P (x) Y with slots P^i (x) Y^{t-i} in total degree
// t, differential D(x (x) y) = d_P x (x) y + (-1)^i x (x) d_Y y. Y is a
// complex of left modules presented over the opposite algebra.
template <class K>
std::pair<LinearComplex<K>, std::vector<Matrix<K>>> total_tensor_data(
    const ProjectiveComplex<K>& p, const BoundedComplex<K>& yl, const ChainMap<K>& bigf,
    const ChainMap<K>& psil) {
  if (bigf.lo != p.lo || bigf.comps.size() != p.terms.size())
    throw InvariantViolation("total_tensor_data: endo of P not aligned");
  if (psil.lo != yl.lo || psil.comps.size() != yl.comps.size())
    throw InvariantViolation("total_tensor_data: endo of Y not aligned");
  const int tlo = p.lo + yl.lo;
  const int thi = p.hi() + yl.hi();

  std::vector<detail::SlotTable> tables;
  for (int t = tlo; t <= thi; ++t) {
    detail::SlotTable tab;
    for (int i = std::max(p.lo, t - yl.hi()); i <= std::min(p.hi(), t - yl.lo); ++i) {
      tab.is.push_back(i);
      tab.offset.push_back(tab.total);
      tab.total += flat_slots(p.term_at(i), *yl.at(t - i)).total;
    }
    tables.push_back(std::move(tab));
  }

  LinearComplex<K> c;
  c.lo = tlo;
  for (const auto& tab : tables) c.dims.push_back(tab.total);
  for (int t = tlo; t < thi; ++t) {
    const auto& src = tables[static_cast<std::size_t>(t - tlo)];
    const auto& tgt = tables[static_cast<std::size_t>(t + 1 - tlo)];
    Matrix<K> d(src.total, tgt.total);
    for (std::size_t k = 0; k < src.is.size(); ++k) {
      const int i = src.is[k];
      const int j = t - i;
      if (int kk = tgt.find(i + 1); kk >= 0 && i < p.hi()) {
        Matrix<K> blk = tensor_map(p.term_at(i), p.term_at(i + 1), p.cx.diff_at(i), *yl.at(j));
        detail::paste(d, src.offset[k], tgt.offset[static_cast<std::size_t>(kk)], blk, 1);
      }
      if (int kk = tgt.find(i); kk >= 0 && j < yl.hi()) {
        Matrix<K> blk = flat_coefficient_map(p.term_at(i), yl.diff_at(j));
        detail::paste(d, src.offset[k], tgt.offset[static_cast<std::size_t>(kk)], blk,
                      degree_sign(i));
      }
    }
    c.diffs.push_back(std::move(d));
  }
  c.validate();

  std::vector<Matrix<K>> endos;
  for (int t = tlo; t <= thi; ++t) {
    const auto& tab = tables[static_cast<std::size_t>(t - tlo)];
    Matrix<K> e(tab.total, tab.total);
    for (std::size_t k = 0; k < tab.is.size(); ++k) {
      const int i = tab.is[k];
      const int j = t - i;
      Matrix<K> blk =
          tensor_map(p.term_at(i), p.term_at(i), bigf.comps[static_cast<std::size_t>(i - p.lo)],
                     *yl.at(j)) *
          flat_coefficient_map(p.term_at(i), psil.comps[static_cast<std::size_t>(j - yl.lo)]);
      detail::paste(e, tab.offset[k], tab.offset[k], blk, 1);
    }
    endos.push_back(std::move(e));
  }
  return {std::move(c), std::move(endos)};
}

// ---------------------------------------------------------------------------
// Hyper Ext and Tor with induced endomorphism traces.

template <class K>
DerivedTraceData<K> hyper_ext_data(const BoundedComplex<K>& x, const BoundedComplex<K>& y,
                                   const ChainMap<K>& phi, const ChainMap<K>& psi,
                                   std::size_t cap = kDefaultResolutionCap) {
  if (x.alg.get() != y.alg.get())
    throw InvariantViolation("hyper_ext_data: complexes over different algebras");
  ProjectiveReplacement<K> rep = projective_replacement(x, cap);
  ChainMap<K> bigf = lift_replacement_endomorphism(rep, phi);
  auto [c, endos] = total_hom_data(rep.prj, y, bigf, psi);
  return derived_trace_data(c, endos, x.alg->proto());
}

template <class K>
DerivedTraceData<K> hyper_tor_data(const BoundedComplex<K>& x, const BoundedComplex<K>& yl,
                                   const ChainMap<K>& phi, const ChainMap<K>& psil,
                                   std::size_t cap = kDefaultResolutionCap) {
  require_opposite(*x.alg, *yl.alg);
  ProjectiveReplacement<K> rep = projective_replacement(x, cap);
  ChainMap<K> bigf = lift_replacement_endomorphism(rep, phi);
  auto [c, endos] = total_tensor_data(rep.prj, yl, bigf, psil);
  return derived_trace_data(c, endos, x.alg->proto());
}

}  // namespace qha

#endif  // QHA_HYPER_HPP
