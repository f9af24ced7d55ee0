#ifndef QHA_COMPLEX_HPP
#define QHA_COMPLEX_HPP

// Bounded cochain complexes of modules, chain maps and endomorphisms, mapping
// cones, and cohomology with its induced actions. Alternating sums over a
// complex are always computed twice, once from the components and once from
// cohomology, and the two must agree exactly.

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "qha/algebra.hpp"
#include "qha/bimodule.hpp"
#include "qha/errors.hpp"
#include "qha/homology.hpp"
#include "qha/int_matrix.hpp"
#include "qha/matrix.hpp"
#include "qha/module.hpp"
#include "qha/scalar.hpp"

namespace qha {

inline int degree_sign(int t) { return ((t % 2) + 2) % 2 == 0 ? 1 : -1; }

template <class K>
struct BoundedComplex {
  typename Algebra<K>::Ptr alg;
  int lo = 0;
  std::vector<RepPtr<K>> comps;            // degrees lo .. lo+comps.size()-1
  std::vector<ModuleMorphism<K>> diffs;    // diffs[t]: comps[t] -> comps[t+1]

  bool empty() const { return comps.empty(); }
  int hi() const { return lo + static_cast<int>(comps.size()) - 1; }
  bool has_degree(int t) const { return t >= lo && t <= hi(); }
  const RepPtr<K>& at(int t) const { return comps[static_cast<std::size_t>(t - lo)]; }
  const ModuleMorphism<K>& diff_at(int t) const {
    return diffs[static_cast<std::size_t>(t - lo)];
  }
};

template <class K>
void validate_complex(const BoundedComplex<K>& c) {
  if (c.empty()) return;
  if (c.diffs.size() + 1 != c.comps.size())
    throw InvariantViolation("complex: differential count mismatch");
  for (std::size_t t = 0; t < c.comps.size(); ++t)
    if (c.comps[t]->alg.get() != c.alg.get())
      throw InvariantViolation("complex: component over a different algebra");
  for (std::size_t t = 0; t + 1 < c.comps.size(); ++t) {
    const auto& d = c.diffs[t];
    if (d.src.get() != c.comps[t].get() || d.tgt.get() != c.comps[t + 1].get())
      throw InvariantViolation("complex: differential endpoints mismatch");
    check_morphism(d);
  }
  for (std::size_t t = 0; t + 2 < c.comps.size(); ++t)
    if (!compose(c.diffs[t], c.diffs[t + 1]).is_zero())
      throw InvariantViolation("complex: d \xE2\x88\x98 d != 0");
}

template <class K>
BoundedComplex<K> single_complex(RepPtr<K> m, int degree = 0) {
  BoundedComplex<K> c;
  c.alg = m->alg;
  c.lo = degree;
  c.comps.push_back(std::move(m));
  return c;
}

// Extends the degree range with zero components (and zero differentials).
template <class K>
BoundedComplex<K> pad_complex(const BoundedComplex<K>& c, int new_lo, int new_hi) {
  if (c.empty()) throw InvariantViolation("pad_complex: empty complex");
  if (new_lo > c.lo || new_hi < c.hi()) throw InvariantViolation("pad_complex: range shrinks");
  BoundedComplex<K> p;
  p.alg = c.alg;
  p.lo = new_lo;
  for (int t = new_lo; t <= new_hi; ++t)
    p.comps.push_back(c.has_degree(t) ? c.at(t) : zero_module<K>(c.alg));
  for (int t = new_lo; t < new_hi; ++t) {
    if (c.has_degree(t) && c.has_degree(t + 1))
      p.diffs.push_back(c.diff_at(t));
    else
      p.diffs.push_back(zero_morphism(p.comps[static_cast<std::size_t>(t - new_lo)],
                                      p.comps[static_cast<std::size_t>(t - new_lo + 1)]));
  }
  return p;
}

// The shift M[k] with M[k]^t = M^{t+k} and differential (-1)^k d.
template <class K>
BoundedComplex<K> shift_complex(const BoundedComplex<K>& c, int k) {
  BoundedComplex<K> s = c;
  s.lo = c.lo - k;
  if (degree_sign(k) < 0)
    for (auto& d : s.diffs) d = negate(d);
  return s;
}

// A chain map between complexes on the same (aligned) degree range.
template <class K>
struct ChainMap {
  int lo = 0;
  std::vector<ModuleMorphism<K>> comps;
};

template <class K>
void check_chain_map(const ChainMap<K>& f, const BoundedComplex<K>& x,
                     const BoundedComplex<K>& y) {
  if (f.lo != x.lo || f.lo != y.lo || f.comps.size() != x.comps.size() ||
      x.comps.size() != y.comps.size())
    throw InvariantViolation("chain map: degree ranges not aligned");
  for (std::size_t t = 0; t < f.comps.size(); ++t) {
    if (f.comps[t].src.get() != x.comps[t].get() || f.comps[t].tgt.get() != y.comps[t].get())
      throw InvariantViolation("chain map: component endpoints mismatch");
    check_morphism(f.comps[t]);
  }
  for (std::size_t t = 0; t + 1 < f.comps.size(); ++t)
    if (compose(f.comps[t], y.diffs[t]).blocks !=
        compose(x.diffs[t], f.comps[t + 1]).blocks)
      throw InvariantViolation("chain map: squares do not commute");
}

template <class K>
ChainMap<K> identity_chain_map(const BoundedComplex<K>& c) {
  ChainMap<K> f;
  f.lo = c.lo;
  for (const auto& m : c.comps) f.comps.push_back(identity_morphism(m));
  return f;
}

template <class K>
ChainMap<K> zero_chain_map(const BoundedComplex<K>& x, const BoundedComplex<K>& y) {
  ChainMap<K> f;
  f.lo = x.lo;
  for (std::size_t t = 0; t < x.comps.size(); ++t)
    f.comps.push_back(zero_morphism(x.comps[t], y.comps[t]));
  return f;
}

// The mapping cone of f: X -> Y: cone^t = X^{t+1} (+) Y^t with differential
// (x, y) |-> (-d x, f x + d y).
template <class K>
BoundedComplex<K> mapping_cone(const ChainMap<K>& f, const BoundedComplex<K>& x,
                               const BoundedComplex<K>& y) {
  check_chain_map(f, x, y);
  BoundedComplex<K> c;
  c.alg = x.alg;
  c.lo = x.lo - 1;
  const int hi = x.hi();
  auto xpart = [&](int t) -> RepPtr<K> {
    return x.has_degree(t + 1) ? x.at(t + 1) : zero_module<K>(x.alg);
  };
  auto ypart = [&](int t) -> RepPtr<K> {
    return y.has_degree(t) ? y.at(t) : zero_module<K>(x.alg);
  };
  for (int t = c.lo; t <= hi; ++t) c.comps.push_back(direct_sum(*xpart(t), *ypart(t)));
  for (int t = c.lo; t < hi; ++t) {
    RepPtr<K> src = c.comps[static_cast<std::size_t>(t - c.lo)];
    RepPtr<K> tgt = c.comps[static_cast<std::size_t>(t - c.lo + 1)];
    ModuleMorphism<K> d;
    d.src = src;
    d.tgt = tgt;
    for (int v = 1; v <= x.alg->num_vertices(); ++v) {
      const std::size_t xr = xpart(t)->dim_at(v), yr = ypart(t)->dim_at(v);
      const std::size_t xc = xpart(t + 1)->dim_at(v), yc = ypart(t + 1)->dim_at(v);
      Matrix<K> blk(xr + yr, xc + yc);
      if (x.has_degree(t + 2)) {
        const Matrix<K>& dx = x.diff_at(t + 1).at(v);
        for (std::size_t r = 0; r < xr; ++r)
          for (std::size_t cc = 0; cc < xc; ++cc) blk(r, cc) = -dx(r, cc);
      }
      if (x.has_degree(t + 1) && y.has_degree(t + 1)) {
        const Matrix<K>& fv = f.comps[static_cast<std::size_t>(t + 1 - x.lo)].at(v);
        for (std::size_t r = 0; r < xr; ++r)
          for (std::size_t cc = 0; cc < yc; ++cc) blk(r, xc + cc) = fv(r, cc);
      }
      if (y.has_degree(t) && y.has_degree(t + 1)) {
        const Matrix<K>& dy = y.diff_at(t).at(v);
        for (std::size_t r = 0; r < yr; ++r)
          for (std::size_t cc = 0; cc < yc; ++cc) blk(xr + r, xc + cc) = dy(r, cc);
      }
      d.blocks.push_back(std::move(blk));
    }
    c.diffs.push_back(std::move(d));
  }
  validate_complex(c);
  return c;
}

// ---------------------------------------------------------------------------
// Cohomology.

template <class K>
struct ComplexCohomology {
  int degree = 0;
  RepPtr<K> rep;
  std::vector<Subquotient<K>> coords;  // per vertex
};

template <class K>
ComplexCohomology<K> cohomology(const BoundedComplex<K>& c, int l) {
  ComplexCohomology<K> h;
  h.degree = l;
  if (!c.has_degree(l)) {
    h.rep = zero_module<K>(c.alg);
    for (int v = 1; v <= c.alg->num_vertices(); ++v) h.coords.push_back(Subquotient<K>{});
    return h;
  }
  const K one = scalar_one(c.alg->proto());
  const RepPtr<K>& m = c.at(l);
  std::vector<Matrix<K>> z, b;
  for (int v = 1; v <= c.alg->num_vertices(); ++v) {
    if (l < c.hi())
      z.push_back(transpose(kernel_basis(transpose(c.diff_at(l).at(v)))));
    else
      z.push_back(Matrix<K>::identity(m->dim_at(v), one));
    if (l > c.lo)
      b.push_back(c.diff_at(l - 1).at(v));
    else
      b.emplace_back(0, m->dim_at(v));
  }
  SubquotientRep<K> s = subquotient_rep(m, z, b);
  h.rep = s.rep;
  h.coords = std::move(s.coords);
  return h;
}

// The endomorphism induced on H^l by a chain endomorphism.
template <class K>
ModuleMorphism<K> induced_endo(const BoundedComplex<K>& c, const ComplexCohomology<K>& h,
                               const ChainMap<K>& f) {
  ModuleMorphism<K> g;
  g.src = h.rep;
  g.tgt = h.rep;
  if (!c.has_degree(h.degree)) {
    g = zero_morphism(h.rep, h.rep);
    return g;
  }
  const ModuleMorphism<K>& ft = f.comps[static_cast<std::size_t>(h.degree - f.lo)];
  for (int v = 1; v <= c.alg->num_vertices(); ++v) {
    const auto& sq = h.coords[static_cast<std::size_t>(v - 1)];
    g.blocks.push_back(sq.project(sq.basis * ft.at(v)));
  }
  check_morphism(g);
  return g;
}

// ---------------------------------------------------------------------------
// Alternating sums, computed from both the components and the cohomology.

template <class K>
IntMatrix complex_dim_vector(const BoundedComplex<K>& c) {
  const int n = c.alg->num_vertices();
  IntMatrix from_comps(static_cast<std::size_t>(n), 1);
  IntMatrix from_cohom(static_cast<std::size_t>(n), 1);
  for (int t = c.lo; t <= c.hi(); ++t) {
    IntMatrix dc = dim_vector(*c.at(t));
    IntMatrix dh = dim_vector(*cohomology(c, t).rep);
    if (degree_sign(t) > 0) {
      from_comps = from_comps + dc;
      from_cohom = from_cohom + dh;
    } else {
      from_comps = from_comps - dc;
      from_cohom = from_cohom - dh;
    }
  }
  if (!(from_comps == from_cohom))
    throw InvariantViolation("complex dimension vector: components and cohomology disagree");
  return from_comps;
}

template <class K>
Matrix<K> complex_trace_vector(const BoundedComplex<K>& c, const ChainMap<K>& f) {
  check_chain_map(f, c, c);
  const int n = c.alg->num_vertices();
  Matrix<K> from_comps(static_cast<std::size_t>(n), 1);
  Matrix<K> from_cohom(static_cast<std::size_t>(n), 1);
  const K minus_one = scalar_from_int(-1, c.alg->proto());
  for (int t = c.lo; t <= c.hi(); ++t) {
    const auto& ft = f.comps[static_cast<std::size_t>(t - f.lo)];
    Matrix<K> tc = trace_vector(ft);
    auto h = cohomology(c, t);
    Matrix<K> th = trace_vector(induced_endo(c, h, f));
    if (degree_sign(t) < 0) {
      tc = scale(tc, minus_one);
      th = scale(th, minus_one);
    }
    from_comps = from_comps + tc;
    from_cohom = from_cohom + th;
  }
  if (!(from_comps == from_cohom))
    throw InvariantViolation("complex trace vector: components and cohomology disagree");
  return from_comps;
}

// ---------------------------------------------------------------------------
// Chain endomorphisms as the kernel of a linear system.

template <class K>
std::vector<ChainMap<K>> chain_endomorphism_basis(const BoundedComplex<K>& c) {
  const Quiver& q = c.alg->quiver();
  const int n = q.num_vertices;

  // Unknowns: blocks f^t_v, flattened in (t, v) order.
  std::vector<std::vector<std::size_t>> offset(c.comps.size());
  std::size_t unknowns = 0;
  for (std::size_t t = 0; t < c.comps.size(); ++t) {
    offset[t].resize(static_cast<std::size_t>(n));
    for (int v = 1; v <= n; ++v) {
      offset[t][static_cast<std::size_t>(v - 1)] = unknowns;
      unknowns += c.comps[t]->dim_at(v) * c.comps[t]->dim_at(v);
    }
  }
  auto idx = [&](std::size_t t, int v, std::size_t r, std::size_t cc) {
    return offset[t][static_cast<std::size_t>(v - 1)] + r * c.comps[t]->dim_at(v) + cc;
  };

  std::size_t rows = 0;
  for (std::size_t t = 0; t < c.comps.size(); ++t)
    for (const Arrow& ar : q.arrows)
      rows += c.comps[t]->dim_at(ar.source) * c.comps[t]->dim_at(ar.target);
  for (std::size_t t = 0; t + 1 < c.comps.size(); ++t)
    for (int v = 1; v <= n; ++v) rows += c.comps[t]->dim_at(v) * c.comps[t + 1]->dim_at(v);

  Matrix<K> sys(rows, unknowns);
  std::size_t row = 0;
  // Intertwining at each degree: X_a f_j - f_i X_a = 0.
  for (std::size_t t = 0; t < c.comps.size(); ++t) {
    const auto& m = *c.comps[t];
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
      const Arrow& ar = q.arrows[a];
      const Matrix<K>& xa = m.act[a];
      const std::size_t di = m.dim_at(ar.source), dj = m.dim_at(ar.target);
      for (std::size_t r = 0; r < di; ++r)
        for (std::size_t cc = 0; cc < dj; ++cc) {
          for (std::size_t k = 0; k < dj; ++k)
            sys(row, idx(t, ar.target, k, cc)) = sys(row, idx(t, ar.target, k, cc)) + xa(r, k);
          for (std::size_t k = 0; k < di; ++k)
            sys(row, idx(t, ar.source, r, k)) = sys(row, idx(t, ar.source, r, k)) - xa(k, cc);
          ++row;
        }
    }
  }
  // Commuting squares: f^t d^t - d^t f^{t+1} = 0 at each vertex.
  for (std::size_t t = 0; t + 1 < c.comps.size(); ++t) {
    const auto& d = c.diffs[t];
    for (int v = 1; v <= n; ++v) {
      const Matrix<K>& dv = d.at(v);
      const std::size_t di = c.comps[t]->dim_at(v), dj = c.comps[t + 1]->dim_at(v);
      for (std::size_t r = 0; r < di; ++r)
        for (std::size_t cc = 0; cc < dj; ++cc) {
          for (std::size_t k = 0; k < di; ++k)
            sys(row, idx(t, v, r, k)) = sys(row, idx(t, v, r, k)) + dv(k, cc);
          for (std::size_t k = 0; k < dj; ++k)
            sys(row, idx(t + 1, v, k, cc)) = sys(row, idx(t + 1, v, k, cc)) - dv(r, k);
          ++row;
        }
    }
  }

  Matrix<K> ker = kernel_basis(sys);
  std::vector<ChainMap<K>> out;
  for (std::size_t col = 0; col < ker.cols(); ++col) {
    ChainMap<K> f;
    f.lo = c.lo;
    for (std::size_t t = 0; t < c.comps.size(); ++t) {
      ModuleMorphism<K> ft = zero_morphism(c.comps[t], c.comps[t]);
      for (int v = 1; v <= n; ++v)
        for (std::size_t r = 0; r < c.comps[t]->dim_at(v); ++r)
          for (std::size_t cc = 0; cc < c.comps[t]->dim_at(v); ++cc)
            ft.at(v)(r, cc) = ker(idx(t, v, r, cc), col);
      f.comps.push_back(std::move(ft));
    }
    check_chain_map(f, c, c);
    out.push_back(std::move(f));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Seeded random complexes.

template <class K>
ChainMap<K> random_chain_endomorphism(const BoundedComplex<K>& c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto basis = chain_endomorphism_basis(c);
  ChainMap<K> f = zero_chain_map(c, c);
  for (const auto& b : basis) {
    K s = random_scalar(rng, c.alg->proto());
    for (std::size_t t = 0; t < f.comps.size(); ++t)
      f.comps[t] = add(f.comps[t], scale(b.comps[t], s));
  }
  return f;
}

// A random three-term complex of random modules. The first differential is a
// random morphism, the second a random element of its right annihilator.
template <class K>
BoundedComplex<K> random_complex(typename Algebra<K>::Ptr a, std::uint64_t seed, int lo = 0,
                                 std::size_t max_component_dim = 12) {
  std::mt19937_64 rng(seed);
  BoundedComplex<K> c;
  c.alg = a;
  c.lo = lo;
  std::uniform_int_distribution<int> len_d(1, 3);
  const int len = len_d(rng);
  for (int t = 0; t < len; ++t)
    c.comps.push_back(random_module<K>(a, rng(), max_component_dim));
  if (len >= 2) {
    c.diffs.push_back(random_morphism(c.comps[0], c.comps[1], rng()));
  }
  if (len >= 3) {
    // Solve for g with d0 g = 0 inside Hom(C1, C2).
    auto basis = hom_basis(c.comps[1], c.comps[2]);
    std::vector<std::size_t> good;
    ModuleMorphism<K> g = zero_morphism(c.comps[1], c.comps[2]);
    if (!basis.empty()) {
      // Coordinates of h |-> d0 h in the flattened Hom(C0, C2) space.
      std::size_t flat = 0;
      for (int v = 1; v <= a->num_vertices(); ++v)
        flat += c.comps[0]->dim_at(v) * c.comps[2]->dim_at(v);
      Matrix<K> sys(basis.size(), flat);
      for (std::size_t i = 0; i < basis.size(); ++i) {
        auto comp = compose(c.diffs[0], basis[i]);
        std::size_t pos = 0;
        for (int v = 1; v <= a->num_vertices(); ++v)
          for (std::size_t r = 0; r < comp.at(v).rows(); ++r)
            for (std::size_t cc = 0; cc < comp.at(v).cols(); ++cc)
              sys(i, pos++) = comp.at(v)(r, cc);
      }
      Matrix<K> ker = kernel_basis(transpose(sys));
      for (std::size_t col = 0; col < ker.cols(); ++col) {
        K s = random_scalar(rng, a->proto());
        for (std::size_t i = 0; i < basis.size(); ++i) {
          K coeff = s * ker(i, col);
          if (!qha::is_zero(coeff)) g = add(g, scale(basis[i], coeff));
        }
      }
    }
    c.diffs.push_back(std::move(g));
  }
  validate_complex(c);
  return c;
}

// ---------------------------------------------------------------------------
// Complexes of bimodules: a complex over the product algebra together with
// the two factor algebras.

template <class K>
struct BimoduleComplex {
  typename Algebra<K>::Ptr left_alg, right_alg, env;
  TensorLayout layout;
  BoundedComplex<K> cx;
};

template <class K>
BimoduleComplex<K> make_bimodule_complex(typename Algebra<K>::Ptr left,
                                         typename Algebra<K>::Ptr right,
                                         typename Algebra<K>::Ptr env, BoundedComplex<K> cx) {
  BimoduleComplex<K> b;
  b.left_alg = std::move(left);
  b.right_alg = std::move(right);
  b.env = std::move(env);
  b.cx = std::move(cx);
  for (const auto& m : b.cx.comps)
    b.layout = make_bimodule<K>(b.left_alg, b.right_alg, b.env, m).layout;
  return b;
}

template <class K>
BimoduleHandle<K> component_handle(const BimoduleComplex<K>& b, int t) {
  return make_bimodule<K>(b.left_alg, b.right_alg, b.env, b.cx.at(t));
}

template <class K>
IntMatrix complex_dim_matrix(const BimoduleComplex<K>& b) {
  IntMatrix from_comps(static_cast<std::size_t>(b.layout.na),
                       static_cast<std::size_t>(b.layout.nb));
  IntMatrix from_cohom = from_comps;
  for (int t = b.cx.lo; t <= b.cx.hi(); ++t) {
    IntMatrix dc = dim_matrix(component_handle(b, t));
    auto h = cohomology(b.cx, t);
    IntMatrix dh = dim_matrix(make_bimodule<K>(b.left_alg, b.right_alg, b.env, h.rep));
    if (degree_sign(t) > 0) {
      from_comps = from_comps + dc;
      from_cohom = from_cohom + dh;
    } else {
      from_comps = from_comps - dc;
      from_cohom = from_cohom - dh;
    }
  }
  if (!(from_comps == from_cohom))
    throw InvariantViolation("complex dimension matrix: components and cohomology disagree");
  return from_comps;
}

template <class K>
Matrix<K> complex_trace_matrix(const BimoduleComplex<K>& b, const ChainMap<K>& f) {
  check_chain_map(f, b.cx, b.cx);
  Matrix<K> from_comps(static_cast<std::size_t>(b.layout.na),
                       static_cast<std::size_t>(b.layout.nb));
  Matrix<K> from_cohom = from_comps;
  const K minus_one = scalar_from_int(-1, b.env->proto());
  for (int t = b.cx.lo; t <= b.cx.hi(); ++t) {
    auto handle = component_handle(b, t);
    Matrix<K> tc = trace_matrix(handle, f.comps[static_cast<std::size_t>(t - f.lo)]);
    auto h = cohomology(b.cx, t);
    auto hh = make_bimodule<K>(b.left_alg, b.right_alg, b.env, h.rep);
    Matrix<K> th = trace_matrix(hh, induced_endo(b.cx, h, f));
    if (degree_sign(t) < 0) {
      tc = scale(tc, minus_one);
      th = scale(th, minus_one);
    }
    from_comps = from_comps + tc;
    from_cohom = from_cohom + th;
  }
  if (!(from_comps == from_cohom))
    throw InvariantViolation("complex trace matrix: components and cohomology disagree");
  return from_comps;
}

// Degreewise Peirce slices of a bimodule complex.
template <class K>
std::pair<BoundedComplex<K>, ChainMap<K>> slice_right_complex(const BimoduleComplex<K>& b,
                                                              const ChainMap<K>& f, int j) {
  BoundedComplex<K> c;
  c.alg = b.right_alg;
  c.lo = b.cx.lo;
  std::vector<BimoduleHandle<K>> handles;
  for (int t = b.cx.lo; t <= b.cx.hi(); ++t) {
    handles.push_back(component_handle(b, t));
    c.comps.push_back(slice_right(handles.back(), j));
  }
  for (int t = b.cx.lo; t < b.cx.hi(); ++t) {
    const auto& d = b.cx.diff_at(t);
    ModuleMorphism<K> dj;
    dj.src = c.at(t);
    dj.tgt = c.at(t + 1);
    for (int i = 1; i <= b.layout.na; ++i)
      dj.blocks.push_back(d.blocks[b.layout.vertex_id(j, i)]);
    c.diffs.push_back(std::move(dj));
  }
  validate_complex(c);
  ChainMap<K> g;
  g.lo = b.cx.lo;
  for (int t = b.cx.lo; t <= b.cx.hi(); ++t)
    g.comps.push_back(
        slice_right_endo(handles[static_cast<std::size_t>(t - b.cx.lo)], c.at(t),
                         f.comps[static_cast<std::size_t>(t - f.lo)], j));
  check_chain_map(g, c, c);
  return {std::move(c), std::move(g)};
}

template <class K>
std::pair<BoundedComplex<K>, ChainMap<K>> slice_left_complex(const BimoduleComplex<K>& b,
                                                             const ChainMap<K>& f, int i,
                                                             typename Algebra<K>::Ptr op_left) {
  BoundedComplex<K> c;
  c.alg = op_left;
  c.lo = b.cx.lo;
  std::vector<BimoduleHandle<K>> handles;
  for (int t = b.cx.lo; t <= b.cx.hi(); ++t) {
    handles.push_back(component_handle(b, t));
    c.comps.push_back(slice_left(handles.back(), i, op_left));
  }
  for (int t = b.cx.lo; t < b.cx.hi(); ++t) {
    const auto& d = b.cx.diff_at(t);
    ModuleMorphism<K> di;
    di.src = c.at(t);
    di.tgt = c.at(t + 1);
    for (int j = 1; j <= b.layout.nb; ++j)
      di.blocks.push_back(d.blocks[b.layout.vertex_id(j, i)]);
    c.diffs.push_back(std::move(di));
  }
  validate_complex(c);
  ChainMap<K> g;
  g.lo = b.cx.lo;
  for (int t = b.cx.lo; t <= b.cx.hi(); ++t)
    g.comps.push_back(slice_left_endo(handles[static_cast<std::size_t>(t - b.cx.lo)], c.at(t),
                                      f.comps[static_cast<std::size_t>(t - f.lo)], i));
  check_chain_map(g, c, c);
  return {std::move(c), std::move(g)};
}

}  // namespace qha

#endif  // QHA_COMPLEX_HPP
