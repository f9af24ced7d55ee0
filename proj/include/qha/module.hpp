#ifndef QHA_MODULE_HPP
#define QHA_MODULE_HPP

// Finite dimensional right modules over a bound quiver algebra, presented as
// representations: a dimension per vertex and a row-acting matrix per arrow.
// Row convention throughout: elements of the vertex-i space are row vectors,
// and the action of an arrow a: i -> j maps x to x * act[a].

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qha/algebra.hpp"
#include "qha/errors.hpp"
#include "qha/homology.hpp"
#include "qha/int_matrix.hpp"
#include "qha/matrix.hpp"
#include "qha/quiver.hpp"
#include "qha/scalar.hpp"

namespace qha {

template <class K>
struct Representation {
  using AlgPtr = typename Algebra<K>::Ptr;

  AlgPtr alg;
  std::vector<std::size_t> dims;   // indexed by vertex - 1
  std::vector<Matrix<K>> act;      // indexed like quiver arrows

  std::size_t dim_at(int v) const { return dims[static_cast<std::size_t>(v - 1)]; }
  std::size_t total_dim() const {
    std::size_t s = 0;
    for (std::size_t d : dims) s += d;
    return s;
  }
  bool is_zero() const { return total_dim() == 0; }

  // Row-acting matrix of a path: the ordered product of its arrow matrices.
  Matrix<K> path_action(const Path& p) const {
    const Quiver& q = alg->quiver();
    int at = p.source;
    Matrix<K> m = Matrix<K>::identity(dim_at(at), scalar_one(alg->proto()));
    for (int a : p.arrows) {
      const Arrow& ar = q.arrows[static_cast<std::size_t>(a)];
      if (ar.source != at) throw InvariantViolation("path_action: arrows do not compose");
      m = m * act[static_cast<std::size_t>(a)];
      at = ar.target;
    }
    return m;
  }

  // Row-acting matrices, one per vertex pair, of a general algebra element
  // are never needed; relation checking goes through path_action.
};

template <class K>
using RepPtr = std::shared_ptr<const Representation<K>>;

// Returns a description of the first structural problem, or nullopt if the
// data is a well-formed representation of the algebra (shapes match and every
// defining relation acts by zero).
template <class K>
std::optional<std::string> representation_problem(const Representation<K>& m) {
  if (!m.alg) return "representation has no algebra";
  const Quiver& q = m.alg->quiver();
  if (m.dims.size() != static_cast<std::size_t>(q.num_vertices))
    return "dimension vector length does not match the number of vertices";
  if (m.act.size() != q.arrows.size())
    return "number of action matrices does not match the number of arrows";
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    const Arrow& ar = q.arrows[a];
    if (m.act[a].rows() != m.dim_at(ar.source) || m.act[a].cols() != m.dim_at(ar.target))
      return "action matrix for arrow '" + ar.name + "' has wrong shape";
  }
  for (const auto& rel : m.alg->presentation().relations) {
    const Path& first = rel.terms.front().path;
    Matrix<K> sum(m.dim_at(first.source), m.dim_at(first.target(q)));
    for (const auto& term : rel.terms) sum = sum + scale(m.path_action(term.path), term.coeff);
    if (sum.any_nonzero()) return "a defining relation does not act by zero";
  }
  return std::nullopt;
}

template <class K>
void check_representation(const Representation<K>& m) {
  if (auto p = representation_problem(m)) throw InvariantViolation("bad representation: " + *p);
}

// ---------------------------------------------------------------------------
// Morphisms.

template <class K>
struct ModuleMorphism {
  RepPtr<K> src, tgt;
  std::vector<Matrix<K>> blocks;   // blocks[v-1]: src dim x tgt dim at vertex v

  const Matrix<K>& at(int v) const { return blocks[static_cast<std::size_t>(v - 1)]; }
  Matrix<K>& at(int v) { return blocks[static_cast<std::size_t>(v - 1)]; }

  bool is_zero() const {
    for (const auto& b : blocks)
      if (b.any_nonzero()) return false;
    return true;
  }
};

template <class K>
std::optional<std::string> morphism_problem(const ModuleMorphism<K>& f) {
  if (!f.src || !f.tgt) return "morphism without source or target";
  if (f.src->alg.get() != f.tgt->alg.get()) return "source and target over different algebras";
  const Quiver& q = f.src->alg->quiver();
  if (f.blocks.size() != static_cast<std::size_t>(q.num_vertices))
    return "block count does not match the number of vertices";
  for (int v = 1; v <= q.num_vertices; ++v)
    if (f.at(v).rows() != f.src->dim_at(v) || f.at(v).cols() != f.tgt->dim_at(v))
      return "block at vertex " + std::to_string(v) + " has wrong shape";
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    const Arrow& ar = q.arrows[a];
    Matrix<K> lhs = f.src->act[a] * f.at(ar.target);
    Matrix<K> rhs = f.at(ar.source) * f.tgt->act[a];
    if (lhs != rhs) return "block does not intertwine arrow '" + ar.name + "'";
  }
  return std::nullopt;
}

template <class K>
void check_morphism(const ModuleMorphism<K>& f) {
  if (auto p = morphism_problem(f)) throw InvariantViolation("bad morphism: " + *p);
}

template <class K>
ModuleMorphism<K> zero_morphism(RepPtr<K> src, RepPtr<K> tgt) {
  ModuleMorphism<K> f;
  f.src = std::move(src);
  f.tgt = std::move(tgt);
  for (int v = 1; v <= f.src->alg->num_vertices(); ++v)
    f.blocks.emplace_back(f.src->dim_at(v), f.tgt->dim_at(v));
  return f;
}

template <class K>
ModuleMorphism<K> identity_morphism(RepPtr<K> m) {
  ModuleMorphism<K> f;
  f.src = m;
  f.tgt = m;
  const K one = scalar_one(m->alg->proto());
  for (std::size_t d : m->dims) f.blocks.push_back(Matrix<K>::identity(d, one));
  return f;
}

// Composition in diagrammatic order: (f then g), defined when f.tgt == g.src.
template <class K>
ModuleMorphism<K> compose(const ModuleMorphism<K>& f, const ModuleMorphism<K>& g) {
  if (f.tgt.get() != g.src.get()) throw InvariantViolation("compose: middle modules differ");
  ModuleMorphism<K> h;
  h.src = f.src;
  h.tgt = g.tgt;
  for (std::size_t v = 0; v < f.blocks.size(); ++v) h.blocks.push_back(f.blocks[v] * g.blocks[v]);
  return h;
}

template <class K>
ModuleMorphism<K> add(const ModuleMorphism<K>& f, const ModuleMorphism<K>& g) {
  if (f.src.get() != g.src.get() || f.tgt.get() != g.tgt.get())
    throw InvariantViolation("add: morphism shapes differ");
  ModuleMorphism<K> h = f;
  for (std::size_t v = 0; v < h.blocks.size(); ++v) h.blocks[v] = h.blocks[v] + g.blocks[v];
  return h;
}

template <class K>
ModuleMorphism<K> scale(const ModuleMorphism<K>& f, const K& c) {
  ModuleMorphism<K> h = f;
  for (auto& b : h.blocks) b = scale(b, c);
  return h;
}

template <class K>
ModuleMorphism<K> negate(const ModuleMorphism<K>& f) {
  return scale(f, scalar_from_int(-1, f.src->alg->proto()));
}

// ---------------------------------------------------------------------------
// Basic constructions.

template <class K>
RepPtr<K> zero_module(typename Algebra<K>::Ptr a) {
  auto m = std::make_shared<Representation<K>>();
  m->alg = std::move(a);
  m->dims.assign(static_cast<std::size_t>(m->alg->num_vertices()), 0);
  for (const Arrow& ar : m->alg->quiver().arrows)
    m->act.emplace_back(m->dim_at(ar.source), m->dim_at(ar.target));
  return m;
}

template <class K>
RepPtr<K> simple_module(typename Algebra<K>::Ptr a, int vertex) {
  auto m = std::make_shared<Representation<K>>();
  m->alg = std::move(a);
  m->dims.assign(static_cast<std::size_t>(m->alg->num_vertices()), 0);
  m->dims[static_cast<std::size_t>(vertex - 1)] = 1;
  for (const Arrow& ar : m->alg->quiver().arrows)
    m->act.emplace_back(m->dim_at(ar.source), m->dim_at(ar.target));
  return m;
}

// A finite direct sum of indecomposable projectives e_{v_1}A + ... + e_{v_r}A,
// with the canonical basis labelled by (summand, algebra basis path): the
// vertex-v coordinates of summand s enumerate the basis paths from v_s to v.
template <class K>
struct ProjectiveModule {
  RepPtr<K> rep;
  std::vector<int> summands;  // generator vertex of each summand
  // labels[v-1][c] = (summand, algebra basis id) of the c-th vertex-v coordinate
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> labels;
  // position[v-1] maps (summand, basis id) -> coordinate index at vertex v
  std::vector<std::map<std::pair<std::size_t, std::size_t>, std::size_t>> position;

  std::size_t num_summands() const { return summands.size(); }
  std::size_t total_dim() const { return rep->total_dim(); }

  // Coordinate of the generator of summand s (the trivial path) at its vertex.
  std::size_t generator_coord(std::size_t s) const {
    const auto& alg = *rep->alg;
    std::size_t tid = alg.trivial_index(summands[s]);
    return position[static_cast<std::size_t>(summands[s] - 1)].at({s, tid});
  }
};

template <class K>
ProjectiveModule<K> projective_sum(typename Algebra<K>::Ptr a, std::vector<int> vertices) {
  ProjectiveModule<K> p;
  p.summands = std::move(vertices);
  const Algebra<K>& alg = *a;
  const Quiver& q = alg.quiver();
  const int n = alg.num_vertices();

  auto rep = std::make_shared<Representation<K>>();
  rep->alg = a;
  rep->dims.assign(static_cast<std::size_t>(n), 0);
  p.labels.assign(static_cast<std::size_t>(n), {});
  p.position.assign(static_cast<std::size_t>(n), {});
  for (int v = 1; v <= n; ++v) {
    auto& lab = p.labels[static_cast<std::size_t>(v - 1)];
    auto& pos = p.position[static_cast<std::size_t>(v - 1)];
    for (std::size_t s = 0; s < p.summands.size(); ++s)
      for (std::size_t b : alg.peirce_ids(p.summands[s], v)) {
        pos[{s, b}] = lab.size();
        lab.emplace_back(s, b);
      }
    rep->dims[static_cast<std::size_t>(v - 1)] = lab.size();
  }

  for (std::size_t ai = 0; ai < q.arrows.size(); ++ai) {
    const Arrow& ar = q.arrows[ai];
    const auto& lab_s = p.labels[static_cast<std::size_t>(ar.source - 1)];
    const auto& pos_t = p.position[static_cast<std::size_t>(ar.target - 1)];
    Matrix<K> m(lab_s.size(), p.labels[static_cast<std::size_t>(ar.target - 1)].size());
    for (std::size_t r = 0; r < lab_s.size(); ++r) {
      auto [s, b] = lab_s[r];
      const auto& nf = alg.right_mul_arrow(b, ai);
      for (std::size_t c = 0; c < nf.size(); ++c) {
        if (qha::is_zero(nf[c])) continue;
        m(r, pos_t.at({s, c})) = nf[c];
      }
    }
    rep->act.push_back(std::move(m));
  }
  p.rep = rep;
  return p;
}

template <class K>
ProjectiveModule<K> indecomposable_projective(typename Algebra<K>::Ptr a, int vertex) {
  return projective_sum<K>(std::move(a), {vertex});
}

// The morphism from a projective sum determined by generator images:
// images[s] is a row vector in the vertex-v_s space of the target.
template <class K>
ModuleMorphism<K> morphism_from_generators(const ProjectiveModule<K>& p, RepPtr<K> tgt,
                                           const std::vector<Matrix<K>>& images) {
  if (images.size() != p.num_summands())
    throw InvariantViolation("morphism_from_generators: image count mismatch");
  ModuleMorphism<K> f = zero_morphism<K>(p.rep, std::move(tgt));
  const Algebra<K>& alg = *p.rep->alg;
  for (int v = 1; v <= alg.num_vertices(); ++v) {
    const auto& lab = p.labels[static_cast<std::size_t>(v - 1)];
    Matrix<K>& blk = f.at(v);
    for (std::size_t r = 0; r < lab.size(); ++r) {
      auto [s, b] = lab[r];
      if (images[s].rows() != 1 || images[s].cols() != f.tgt->dim_at(p.summands[s]))
        throw InvariantViolation("morphism_from_generators: image row has wrong shape");
      Matrix<K> row = images[s] * f.tgt->path_action(alg.basis_path(b));
      for (std::size_t c = 0; c < blk.cols(); ++c) blk(r, c) = row(0, c);
    }
  }
  return f;
}

// Expands a morphism out of a projective sum into its generator images.
template <class K>
std::vector<Matrix<K>> generator_images(const ProjectiveModule<K>& p,
                                        const ModuleMorphism<K>& f) {
  std::vector<Matrix<K>> images;
  for (std::size_t s = 0; s < p.num_summands(); ++s) {
    int v = p.summands[s];
    std::size_t r = p.generator_coord(s);
    Matrix<K> row(1, f.tgt->dim_at(v));
    for (std::size_t c = 0; c < row.cols(); ++c) row(0, c) = f.at(v)(r, c);
    images.push_back(std::move(row));
  }
  return images;
}

// ---------------------------------------------------------------------------
// Dimension and trace data.

// Column vector of vertexwise dimensions.
template <class K>
IntMatrix dim_vector(const Representation<K>& m) {
  IntMatrix d(m.dims.size(), 1);
  for (std::size_t v = 0; v < m.dims.size(); ++v) d(v, 0) = static_cast<long>(m.dims[v]);
  return d;
}

// Column vector of vertexwise traces of an endomorphism.
template <class K>
Matrix<K> trace_vector(const ModuleMorphism<K>& f) {
  if (f.src.get() != f.tgt.get()) throw InvariantViolation("trace_vector: not an endomorphism");
  Matrix<K> t(f.blocks.size(), 1);
  for (std::size_t v = 0; v < f.blocks.size(); ++v) t(v, 0) = trace(f.blocks[v]);
  return t;
}

// ---------------------------------------------------------------------------
// Hom spaces.

// A basis of the space of module morphisms m -> n, found as the kernel of the
// intertwining system.
template <class K>
std::vector<ModuleMorphism<K>> hom_basis(RepPtr<K> m, RepPtr<K> n) {
  if (m->alg.get() != n->alg.get()) throw InvariantViolation("hom_basis: different algebras");
  const Quiver& q = m->alg->quiver();
  const int nv = q.num_vertices;

  std::vector<std::size_t> offset(static_cast<std::size_t>(nv) + 1, 0);
  for (int v = 1; v <= nv; ++v)
    offset[static_cast<std::size_t>(v)] =
        offset[static_cast<std::size_t>(v - 1)] + m->dim_at(v) * n->dim_at(v);
  const std::size_t unknowns = offset.back();

  std::size_t rows = 0;
  for (const Arrow& ar : q.arrows) rows += m->dim_at(ar.source) * n->dim_at(ar.target);
  Matrix<K> sys(rows, unknowns);
  std::size_t next_row = 0;
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    const Arrow& ar = q.arrows[a];
    const Matrix<K>& xm = m->act[a];
    const Matrix<K>& xn = n->act[a];
    const std::size_t di = m->dim_at(ar.source), dj = m->dim_at(ar.target);
    const std::size_t ei = n->dim_at(ar.source), ej = n->dim_at(ar.target);
    const std::size_t off_i = offset[static_cast<std::size_t>(ar.source - 1)];
    const std::size_t off_j = offset[static_cast<std::size_t>(ar.target - 1)];
    for (std::size_t r = 0; r < di; ++r)
      for (std::size_t c = 0; c < ej; ++c) {
        // sum_k xm(r,k) f_j(k,c) - sum_k f_i(r,k) xn(k,c) = 0
        for (std::size_t k = 0; k < dj; ++k)
          sys(next_row, off_j + k * ej + c) = sys(next_row, off_j + k * ej + c) + xm(r, k);
        for (std::size_t k = 0; k < ei; ++k)
          sys(next_row, off_i + r * ei + k) = sys(next_row, off_i + r * ei + k) - xn(k, c);
        ++next_row;
      }
  }

  Matrix<K> ker = kernel_basis(sys);
  std::vector<ModuleMorphism<K>> out;
  for (std::size_t col = 0; col < ker.cols(); ++col) {
    ModuleMorphism<K> f = zero_morphism(m, n);
    for (int v = 1; v <= nv; ++v) {
      const std::size_t ei = n->dim_at(v);
      for (std::size_t r = 0; r < m->dim_at(v); ++r)
        for (std::size_t c = 0; c < ei; ++c)
          f.at(v)(r, c) = ker(offset[static_cast<std::size_t>(v - 1)] + r * ei + c, col);
    }
    out.push_back(std::move(f));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Subrepresentations and quotients. A vertexwise family of row spaces that is
// closed under all arrow actions determines a subrepresentation; closure is
// verified, not assumed.

template <class K>
struct SubquotientRep {
  RepPtr<K> rep;                       // the subquotient as a representation
  std::vector<Subquotient<K>> coords;  // per-vertex ambient bookkeeping
};

// Builds the representation on the family of subquotients Z_v / B_v and
// verifies that the arrow actions descend.
template <class K>
SubquotientRep<K> subquotient_rep(RepPtr<K> m, const std::vector<Matrix<K>>& z_rows,
                                  const std::vector<Matrix<K>>& b_rows) {
  const Quiver& q = m->alg->quiver();
  SubquotientRep<K> out;
  auto rep = std::make_shared<Representation<K>>();
  rep->alg = m->alg;
  for (int v = 1; v <= q.num_vertices; ++v) {
    out.coords.push_back(make_subquotient(z_rows[static_cast<std::size_t>(v - 1)],
                                          b_rows[static_cast<std::size_t>(v - 1)]));
    rep->dims.push_back(out.coords.back().dim());
  }
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    const Arrow& ar = q.arrows[a];
    const auto& src = out.coords[static_cast<std::size_t>(ar.source - 1)];
    const auto& tgt = out.coords[static_cast<std::size_t>(ar.target - 1)];
    // Closure checks: numerator rows map into the target numerator span plus
    // denominator, denominator rows map into the target denominator span.
    Matrix<K> bimg = reduce_mod(b_rows[static_cast<std::size_t>(ar.source - 1)] * m->act[a],
                                tgt.denom);
    if (bimg.any_nonzero())
      throw InvariantViolation("subquotient_rep: denominator not action-closed");
    rep->act.push_back(tgt.project(src.basis * m->act[a]));
  }
  out.rep = rep;
  check_representation(*out.rep);
  return out;
}

// Kernel of a morphism, with its inclusion into the source.
template <class K>
std::pair<RepPtr<K>, ModuleMorphism<K>> kernel_rep(const ModuleMorphism<K>& f) {
  const Quiver& q = f.src->alg->quiver();
  std::vector<Matrix<K>> z, b;
  for (int v = 1; v <= q.num_vertices; ++v) {
    z.push_back(transpose(kernel_basis(transpose(f.at(v)))));
    b.emplace_back(0, f.src->dim_at(v));
  }
  SubquotientRep<K> s = subquotient_rep(f.src, z, b);
  ModuleMorphism<K> inc;
  inc.src = s.rep;
  inc.tgt = f.src;
  for (int v = 1; v <= q.num_vertices; ++v)
    inc.blocks.push_back(s.coords[static_cast<std::size_t>(v - 1)].basis);
  check_morphism(inc);
  return {s.rep, std::move(inc)};
}

// Image of a morphism, with its inclusion into the target.
template <class K>
std::pair<RepPtr<K>, ModuleMorphism<K>> image_rep(const ModuleMorphism<K>& f) {
  const Quiver& q = f.src->alg->quiver();
  std::vector<Matrix<K>> z, b;
  for (int v = 1; v <= q.num_vertices; ++v) {
    z.push_back(row_space_basis(f.at(v)));
    b.emplace_back(0, f.tgt->dim_at(v));
  }
  SubquotientRep<K> s = subquotient_rep(f.tgt, z, b);
  ModuleMorphism<K> inc;
  inc.src = s.rep;
  inc.tgt = f.tgt;
  for (int v = 1; v <= q.num_vertices; ++v)
    inc.blocks.push_back(s.coords[static_cast<std::size_t>(v - 1)].basis);
  check_morphism(inc);
  return {s.rep, std::move(inc)};
}

// Cokernel of a morphism, with the projection from the target.
template <class K>
std::pair<RepPtr<K>, ModuleMorphism<K>> cokernel_rep(const ModuleMorphism<K>& f) {
  const Quiver& q = f.tgt->alg->quiver();
  const K one = scalar_one(f.tgt->alg->proto());
  std::vector<Matrix<K>> z, b;
  for (int v = 1; v <= q.num_vertices; ++v) {
    z.push_back(Matrix<K>::identity(f.tgt->dim_at(v), one));
    b.push_back(f.at(v));
  }
  SubquotientRep<K> s = subquotient_rep(f.tgt, z, b);
  ModuleMorphism<K> pr;
  pr.src = f.tgt;
  pr.tgt = s.rep;
  for (int v = 1; v <= q.num_vertices; ++v) {
    const auto& c = s.coords[static_cast<std::size_t>(v - 1)];
    pr.blocks.push_back(c.project(Matrix<K>::identity(f.tgt->dim_at(v), one)));
  }
  check_morphism(pr);
  return {s.rep, std::move(pr)};
}

// ---------------------------------------------------------------------------
// Duality: the k-linear dual of a right module is a right module over the
// opposite algebra, with transposed arrow actions.

template <class K>
RepPtr<K> dual_module(const Representation<K>& m, typename Algebra<K>::Ptr op) {
  auto d = std::make_shared<Representation<K>>();
  d->alg = std::move(op);
  d->dims = m.dims;
  d->act.resize(m.act.size());
  for (std::size_t a = 0; a < m.act.size(); ++a) d->act[a] = transpose(m.act[a]);
  check_representation(*d);
  return d;
}

// The dual of a morphism f: M -> N is f*: N* -> M* with transposed blocks.
template <class K>
ModuleMorphism<K> dual_morphism(const ModuleMorphism<K>& f, RepPtr<K> dual_tgt,
                                RepPtr<K> dual_src) {
  ModuleMorphism<K> g;
  g.src = std::move(dual_tgt);
  g.tgt = std::move(dual_src);
  for (const auto& b : f.blocks) g.blocks.push_back(transpose(b));
  check_morphism(g);
  return g;
}

// ---------------------------------------------------------------------------
// Direct sums.

template <class K>
RepPtr<K> direct_sum(const Representation<K>& a, const Representation<K>& b) {
  if (a.alg.get() != b.alg.get()) throw InvariantViolation("direct_sum: different algebras");
  auto m = std::make_shared<Representation<K>>();
  m->alg = a.alg;
  for (std::size_t v = 0; v < a.dims.size(); ++v) m->dims.push_back(a.dims[v] + b.dims[v]);
  const Quiver& q = a.alg->quiver();
  for (std::size_t ar = 0; ar < q.arrows.size(); ++ar) {
    const Arrow& arr = q.arrows[ar];
    Matrix<K> blk(m->dim_at(arr.source), m->dim_at(arr.target));
    for (std::size_t r = 0; r < a.act[ar].rows(); ++r)
      for (std::size_t c = 0; c < a.act[ar].cols(); ++c) blk(r, c) = a.act[ar](r, c);
    const std::size_t ro = a.dim_at(arr.source), co = a.dim_at(arr.target);
    for (std::size_t r = 0; r < b.act[ar].rows(); ++r)
      for (std::size_t c = 0; c < b.act[ar].cols(); ++c) blk(ro + r, co + c) = b.act[ar](r, c);
    m->act.push_back(std::move(blk));
  }
  return m;
}

// ---------------------------------------------------------------------------
// Seeded random constructions. All derive from std::mt19937_64 so identical
// seeds give identical objects on every platform.

template <class K>
K random_scalar(std::mt19937_64& rng, const K& proto) {
  std::uniform_int_distribution<int> d(-2, 2);
  return scalar_from_int(d(rng), proto);
}

// A random module: the cokernel of a random morphism between projective sums.
// Every finite dimensional module arises this way from a presentation.
template <class K>
RepPtr<K> random_module(typename Algebra<K>::Ptr a, std::uint64_t seed,
                        std::size_t max_total_dim = 24) {
  std::mt19937_64 rng(seed);
  const int n = a->num_vertices();
  std::uniform_int_distribution<int> pick_vertex(1, n);
  std::uniform_int_distribution<int> pick_count(1, 3);

  std::vector<int> gens;
  std::size_t used = 0;
  int want = pick_count(rng);
  for (int i = 0; i < want; ++i) {
    int v = pick_vertex(rng);
    std::size_t d = a->projective_dim(v);
    if (!gens.empty() && used + d > max_total_dim) break;
    gens.push_back(v);
    used += d;
  }
  ProjectiveModule<K> p = projective_sum<K>(a, gens);

  std::uniform_int_distribution<int> pick_rel(0, static_cast<int>(gens.size()));
  std::vector<int> rel_gens;
  int rels = pick_rel(rng);
  for (int i = 0; i < rels; ++i) rel_gens.push_back(pick_vertex(rng));
  if (rel_gens.empty()) {
    // still exercise the cokernel path with an empty presentation matrix
    ProjectiveModule<K> r = projective_sum<K>(a, {});
    return cokernel_rep(zero_morphism<K>(r.rep, p.rep)).first;
  }
  ProjectiveModule<K> r = projective_sum<K>(a, rel_gens);
  std::vector<Matrix<K>> images;
  for (std::size_t s = 0; s < r.num_summands(); ++s) {
    Matrix<K> row(1, p.rep->dim_at(r.summands[s]));
    for (std::size_t c = 0; c < row.cols(); ++c) row(0, c) = random_scalar(rng, a->proto());
    images.push_back(std::move(row));
  }
  ModuleMorphism<K> f = morphism_from_generators(r, p.rep, images);
  check_morphism(f);
  return cokernel_rep(f).first;
}

// A random endomorphism: a random combination of a basis of End(m).
template <class K>
ModuleMorphism<K> random_endomorphism(RepPtr<K> m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto basis = hom_basis(m, m);
  ModuleMorphism<K> f = zero_morphism(m, m);
  for (const auto& b : basis) f = add(f, scale(b, random_scalar(rng, m->alg->proto())));
  return f;
}

// A random morphism m -> n: a random combination of a basis of Hom(m, n).
template <class K>
ModuleMorphism<K> random_morphism(RepPtr<K> m, RepPtr<K> n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto basis = hom_basis(m, n);
  ModuleMorphism<K> f = zero_morphism(m, n);
  for (const auto& b : basis) f = add(f, scale(b, random_scalar(rng, m->alg->proto())));
  return f;
}

}  // namespace qha

#endif  // QHA_MODULE_HPP
