#ifndef QHA_BIMODULE_HPP
#define QHA_BIMODULE_HPP

// B-A-bimodules in their canonical form: right modules over the product
// algebra B^op (x) A, with b.m.a = m * (b (x) a). The Peirce component
// f_j M e_i sits at the product-quiver vertex (j, i).

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qha/algebra.hpp"
#include "qha/errors.hpp"
#include "qha/int_matrix.hpp"
#include "qha/matrix.hpp"
#include "qha/module.hpp"
#include "qha/scalar.hpp"

namespace qha {

// The product algebra over which B-A-bimodules live.
template <class K>
typename Algebra<K>::Ptr bimodule_env(const Algebra<K>& left, const Algebra<K>& right) {
  auto op = opposite_algebra(left);
  return tensor_algebra(*op, right);
}

template <class K>
struct BimoduleHandle {
  typename Algebra<K>::Ptr left_alg, right_alg, env;
  TensorLayout layout;
  RepPtr<K> rep;  // right module over env

  std::size_t comp_dim(int j, int i) const { return rep->dims[layout.vertex_id(j, i)]; }
};

template <class K>
BimoduleHandle<K> make_bimodule(typename Algebra<K>::Ptr left, typename Algebra<K>::Ptr right,
                                typename Algebra<K>::Ptr env, RepPtr<K> rep) {
  BimoduleHandle<K> h;
  h.left_alg = std::move(left);
  h.right_alg = std::move(right);
  h.env = std::move(env);
  h.rep = std::move(rep);
  h.layout = TensorLayout{h.left_alg->num_vertices(), h.right_alg->num_vertices(),
                          h.left_alg->num_arrows(), h.right_alg->num_arrows()};
  if (h.rep->alg.get() != h.env.get())
    throw InvariantViolation("bimodule: representation is not over the product algebra");
  if (h.env->num_vertices() != h.layout.nb * h.layout.na ||
      h.env->num_arrows() !=
          h.layout.b_arrows * static_cast<std::size_t>(h.layout.na) +
              static_cast<std::size_t>(h.layout.nb) * h.layout.a_arrows)
    throw InvariantViolation("bimodule: product algebra shape mismatch");
  // Cross-check the arrow layout against the tagged names.
  const auto& arrows = h.env->quiver().arrows;
  for (std::size_t bi = 0; bi < h.layout.b_arrows; ++bi) {
    const std::string& name = h.left_alg->quiver().arrows[bi].name;
    for (int i = 1; i <= h.layout.na; ++i)
      if (arrows[h.layout.left_arrow(bi, i)].name != "l:" + name + ":" + std::to_string(i))
        throw InvariantViolation("bimodule: left arrow layout mismatch");
  }
  for (int j = 1; j <= h.layout.nb; ++j)
    for (std::size_t ai = 0; ai < h.layout.a_arrows; ++ai) {
      const std::string& name = h.right_alg->quiver().arrows[ai].name;
      if (arrows[h.layout.right_arrow(j, ai)].name != "r:" + std::to_string(j) + ":" + name)
        throw InvariantViolation("bimodule: right arrow layout mismatch");
    }
  return h;
}

// The regular bimodule: component (j, i) is e_j A e_i with its path basis,
// left arrows act by left multiplication and right arrows by right
// multiplication. Its dimension matrix is the Cartan matrix.
template <class K>
BimoduleHandle<K> regular_bimodule(typename Algebra<K>::Ptr a, typename Algebra<K>::Ptr env) {
  const Algebra<K>& alg = *a;
  const int n = alg.num_vertices();
  auto rep = std::make_shared<Representation<K>>();
  rep->alg = env;
  TensorLayout layout{n, n, alg.num_arrows(), alg.num_arrows()};

  rep->dims.assign(static_cast<std::size_t>(n) * n, 0);
  for (int j = 1; j <= n; ++j)
    for (int i = 1; i <= n; ++i)
      rep->dims[layout.vertex_id(j, i)] = alg.peirce_ids(j, i).size();

  rep->act.resize(env->num_arrows());
  // Left arrows: for the A-arrow alpha: u -> v (as an arrow of A^op it runs
  // v -> u), the product arrow at A-vertex i maps e_v A e_i to e_u A e_i by
  // p |-> alpha * p.
  for (std::size_t bi = 0; bi < layout.b_arrows; ++bi) {
    const Arrow& alpha = alg.quiver().arrows[bi];
    for (int i = 1; i <= n; ++i) {
      const auto& src_ids = alg.peirce_ids(alpha.target, i);
      const auto& tgt_ids = alg.peirce_ids(alpha.source, i);
      Matrix<K> m(src_ids.size(), tgt_ids.size());
      for (std::size_t r = 0; r < src_ids.size(); ++r) {
        const auto& nf = alg.left_mul_arrow(bi, src_ids[r]);
        for (std::size_t c = 0; c < tgt_ids.size(); ++c) m(r, c) = nf[tgt_ids[c]];
      }
      rep->act[layout.left_arrow(bi, i)] = std::move(m);
    }
  }
  // Right arrows: at B-vertex j, alpha: u -> v maps e_j A e_u to e_j A e_v by
  // p |-> p * alpha.
  for (int j = 1; j <= n; ++j)
    for (std::size_t ai = 0; ai < layout.a_arrows; ++ai) {
      const Arrow& alpha = alg.quiver().arrows[ai];
      const auto& src_ids = alg.peirce_ids(j, alpha.source);
      const auto& tgt_ids = alg.peirce_ids(j, alpha.target);
      Matrix<K> m(src_ids.size(), tgt_ids.size());
      for (std::size_t r = 0; r < src_ids.size(); ++r) {
        const auto& nf = alg.right_mul_arrow(src_ids[r], ai);
        for (std::size_t c = 0; c < tgt_ids.size(); ++c) m(r, c) = nf[tgt_ids[c]];
      }
      rep->act[layout.right_arrow(j, ai)] = std::move(m);
    }

  check_representation(*rep);
  return make_bimodule<K>(a, a, env, rep);
}

// Outer tensor product N (x)_k M of a left B-module (a representation of
// B^op) and a right A-module: component (j, i) is N_j (x) M_i with the
// N index major.
template <class K>
BimoduleHandle<K> outer_tensor_bimodule(typename Algebra<K>::Ptr left,
                                        typename Algebra<K>::Ptr right,
                                        typename Algebra<K>::Ptr env, const Representation<K>& n,
                                        const Representation<K>& m) {
  if (n.alg->num_vertices() != left->num_vertices() || m.alg.get() != right.get())
    throw InvariantViolation("outer_tensor_bimodule: factor algebra mismatch");
  TensorLayout layout{left->num_vertices(), right->num_vertices(), left->num_arrows(),
                      right->num_arrows()};
  const K one = scalar_one(right->proto());
  auto rep = std::make_shared<Representation<K>>();
  rep->alg = env;
  rep->dims.assign(static_cast<std::size_t>(layout.nb) * layout.na, 0);
  for (int j = 1; j <= layout.nb; ++j)
    for (int i = 1; i <= layout.na; ++i)
      rep->dims[layout.vertex_id(j, i)] = n.dim_at(j) * m.dim_at(i);
  rep->act.resize(env->num_arrows());
  for (std::size_t bi = 0; bi < layout.b_arrows; ++bi)
    for (int i = 1; i <= layout.na; ++i)
      rep->act[layout.left_arrow(bi, i)] =
          kronecker(n.act[bi], Matrix<K>::identity(m.dim_at(i), one));
  for (int j = 1; j <= layout.nb; ++j)
    for (std::size_t ai = 0; ai < layout.a_arrows; ++ai)
      rep->act[layout.right_arrow(j, ai)] =
          kronecker(Matrix<K>::identity(n.dim_at(j), one), m.act[ai]);
  check_representation(*rep);
  return make_bimodule<K>(std::move(left), std::move(right), std::move(env), rep);
}

// Dimension matrix: rows indexed by right (A) vertices, columns by left (B)
// vertices, entry (i, j) = dim f_j M e_i. For the regular bimodule this is
// the Cartan matrix.
template <class K>
IntMatrix dim_matrix(const BimoduleHandle<K>& h) {
  IntMatrix d(static_cast<std::size_t>(h.layout.na), static_cast<std::size_t>(h.layout.nb));
  for (int i = 1; i <= h.layout.na; ++i)
    for (int j = 1; j <= h.layout.nb; ++j)
      d(i - 1, j - 1) = static_cast<long>(h.comp_dim(j, i));
  return d;
}

// Trace matrix of a bimodule endomorphism, laid out like dim_matrix.
template <class K>
Matrix<K> trace_matrix(const BimoduleHandle<K>& h, const ModuleMorphism<K>& f) {
  if (f.src.get() != h.rep.get() || f.tgt.get() != h.rep.get())
    throw InvariantViolation("trace_matrix: endomorphism of a different bimodule");
  Matrix<K> t(static_cast<std::size_t>(h.layout.na), static_cast<std::size_t>(h.layout.nb));
  for (int i = 1; i <= h.layout.na; ++i)
    for (int j = 1; j <= h.layout.nb; ++j)
      t(i - 1, j - 1) = trace(f.blocks[h.layout.vertex_id(j, i)]);
  return t;
}

// The right A-module f_j M.
template <class K>
RepPtr<K> slice_right(const BimoduleHandle<K>& h, int j) {
  auto m = std::make_shared<Representation<K>>();
  m->alg = h.right_alg;
  for (int i = 1; i <= h.layout.na; ++i) m->dims.push_back(h.comp_dim(j, i));
  for (std::size_t ai = 0; ai < h.layout.a_arrows; ++ai)
    m->act.push_back(h.rep->act[h.layout.right_arrow(j, ai)]);
  check_representation(*m);
  return m;
}

// The left B-module M e_i, as a representation of B^op (which the caller
// supplies so repeated slices share one algebra object).
template <class K>
RepPtr<K> slice_left(const BimoduleHandle<K>& h, int i, typename Algebra<K>::Ptr op_left) {
  auto m = std::make_shared<Representation<K>>();
  m->alg = std::move(op_left);
  if (m->alg->num_vertices() != h.layout.nb || m->alg->num_arrows() != h.layout.b_arrows)
    throw InvariantViolation("slice_left: opposite algebra shape mismatch");
  for (int j = 1; j <= h.layout.nb; ++j) m->dims.push_back(h.comp_dim(j, i));
  for (std::size_t bi = 0; bi < h.layout.b_arrows; ++bi)
    m->act.push_back(h.rep->act[h.layout.left_arrow(bi, i)]);
  check_representation(*m);
  return m;
}

// Restriction of a bimodule endomorphism to a slice.
template <class K>
ModuleMorphism<K> slice_right_endo(const BimoduleHandle<K>& h, RepPtr<K> srep,
                                   const ModuleMorphism<K>& f, int j) {
  ModuleMorphism<K> g;
  g.src = srep;
  g.tgt = srep;
  for (int i = 1; i <= h.layout.na; ++i) g.blocks.push_back(f.blocks[h.layout.vertex_id(j, i)]);
  check_morphism(g);
  return g;
}

template <class K>
ModuleMorphism<K> slice_left_endo(const BimoduleHandle<K>& h, RepPtr<K> srep,
                                  const ModuleMorphism<K>& f, int i) {
  ModuleMorphism<K> g;
  g.src = srep;
  g.tgt = srep;
  for (int j = 1; j <= h.layout.nb; ++j) g.blocks.push_back(f.blocks[h.layout.vertex_id(j, i)]);
  check_morphism(g);
  return g;
}

// An A-A-bimodule viewed as a left module over the enveloping algebra, i.e. a
// right module over its opposite, via the flip anti-automorphism
// a^op (x) b |-> b^op (x) a of A^e.
template <class K>
struct LeftModuleForm {
  typename Algebra<K>::Ptr op_env;
  RepPtr<K> rep;
  TensorLayout layout;  // layout of the original product algebra
};

template <class K>
LeftModuleForm<K> left_module_form(const BimoduleHandle<K>& h) {
  if (h.layout.nb != h.layout.na || h.layout.b_arrows != h.layout.a_arrows)
    throw InvariantViolation("left_module_form: not a bimodule over one algebra");
  LeftModuleForm<K> out;
  out.op_env = opposite_algebra(*h.env);
  out.layout = h.layout;
  auto rep = std::make_shared<Representation<K>>();
  rep->alg = out.op_env;
  rep->dims.assign(h.rep->dims.size(), 0);
  for (int j = 1; j <= h.layout.nb; ++j)
    for (int i = 1; i <= h.layout.na; ++i)
      rep->dims[h.layout.vertex_id(j, i)] = h.comp_dim(i, j);
  rep->act.resize(h.rep->act.size());
  // The reversed left arrow at (alpha, i) acts as the original right arrow at
  // (i, alpha); the reversed right arrow at (j, alpha) acts as the original
  // left arrow at (alpha, j).
  for (std::size_t bi = 0; bi < h.layout.b_arrows; ++bi)
    for (int i = 1; i <= h.layout.na; ++i)
      rep->act[h.layout.left_arrow(bi, i)] = h.rep->act[h.layout.right_arrow(i, bi)];
  for (int j = 1; j <= h.layout.nb; ++j)
    for (std::size_t ai = 0; ai < h.layout.a_arrows; ++ai)
      rep->act[h.layout.right_arrow(j, ai)] = h.rep->act[h.layout.left_arrow(ai, j)];
  check_representation(*rep);
  out.rep = rep;
  return out;
}

template <class K>
ModuleMorphism<K> left_form_endo(const LeftModuleForm<K>& form, const BimoduleHandle<K>& h,
                                 const ModuleMorphism<K>& f) {
  ModuleMorphism<K> g;
  g.src = form.rep;
  g.tgt = form.rep;
  g.blocks.resize(f.blocks.size());
  for (int j = 1; j <= h.layout.nb; ++j)
    for (int i = 1; i <= h.layout.na; ++i)
      g.blocks[h.layout.vertex_id(j, i)] = f.blocks[h.layout.vertex_id(i, j)];
  check_morphism(g);
  return g;
}

// The k-linear dual of a B-A-bimodule is an A-B-bimodule with transposed
// component actions.
template <class K>
BimoduleHandle<K> dual_bimodule(const BimoduleHandle<K>& h, typename Algebra<K>::Ptr dual_env) {
  TensorLayout layout{h.layout.na, h.layout.nb, h.layout.a_arrows, h.layout.b_arrows};
  auto rep = std::make_shared<Representation<K>>();
  rep->alg = dual_env;
  rep->dims.assign(h.rep->dims.size(), 0);
  for (int i = 1; i <= layout.nb; ++i)
    for (int j = 1; j <= layout.na; ++j)
      rep->dims[layout.vertex_id(i, j)] = h.comp_dim(j, i);
  rep->act.resize(dual_env->num_arrows());
  for (std::size_t ai = 0; ai < layout.b_arrows; ++ai)
    for (int j = 1; j <= layout.na; ++j)
      rep->act[layout.left_arrow(ai, j)] = transpose(h.rep->act[h.layout.right_arrow(j, ai)]);
  for (int i = 1; i <= layout.nb; ++i)
    for (std::size_t bi = 0; bi < layout.a_arrows; ++bi)
      rep->act[layout.right_arrow(i, bi)] = transpose(h.rep->act[h.layout.left_arrow(bi, i)]);
  check_representation(*rep);
  return make_bimodule<K>(h.right_alg, h.left_alg, std::move(dual_env), rep);
}

// Dual of a bimodule endomorphism: transposed component blocks.
template <class K>
ModuleMorphism<K> dual_bimodule_endo(const BimoduleHandle<K>& h, const BimoduleHandle<K>& dual,
                                     const ModuleMorphism<K>& f) {
  ModuleMorphism<K> g;
  g.src = dual.rep;
  g.tgt = dual.rep;
  g.blocks.resize(f.blocks.size());
  for (int j = 1; j <= h.layout.nb; ++j)
    for (int i = 1; i <= h.layout.na; ++i)
      g.blocks[dual.layout.vertex_id(i, j)] = transpose(f.blocks[h.layout.vertex_id(j, i)]);
  check_morphism(g);
  return g;
}

// A random bimodule is a random module over the product algebra.
template <class K>
BimoduleHandle<K> random_bimodule(typename Algebra<K>::Ptr left, typename Algebra<K>::Ptr right,
                                  typename Algebra<K>::Ptr env, std::uint64_t seed,
                                  std::size_t max_total_dim = 24) {
  return make_bimodule<K>(std::move(left), std::move(right), env,
                          random_module<K>(env, seed, max_total_dim));
}

}  // namespace qha

#endif  // QHA_BIMODULE_HPP
