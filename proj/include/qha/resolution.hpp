#ifndef QHA_RESOLUTION_HPP
#define QHA_RESOLUTION_HPP

// Projective covers and minimal projective resolutions. Minimality (the
// differentials land in the radical) and exactness are verified on every
// computed resolution, never assumed.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qha/algebra.hpp"
#include "qha/errors.hpp"
#include "qha/matrix.hpp"
#include "qha/module.hpp"

namespace qha {

struct CapExceeded : std::runtime_error {
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr std::size_t kDefaultResolutionCap = 32;

// The projective cover P(M) -> M, constructed from a basis of the top
// M / M.rad: the radical subspace at vertex v is the sum of the images of all
// arrow actions into v.
template <class K>
std::pair<ProjectiveModule<K>, ModuleMorphism<K>> projective_cover(RepPtr<K> m) {
  const Algebra<K>& alg = *m->alg;
  const Quiver& q = alg.quiver();
  const int n = q.num_vertices;

  std::vector<int> gen_vertices;
  std::vector<Matrix<K>> gen_rows;
  for (int v = 1; v <= n; ++v) {
    std::size_t rad_rows = 0;
    for (std::size_t a = 0; a < q.arrows.size(); ++a)
      if (q.arrows[a].target == v) rad_rows += m->dim_at(q.arrows[a].source);
    Matrix<K> rad(rad_rows, m->dim_at(v));
    std::size_t at = 0;
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
      if (q.arrows[a].target != v) continue;
      const Matrix<K>& x = m->act[a];
      for (std::size_t r = 0; r < x.rows(); ++r, ++at)
        for (std::size_t c = 0; c < x.cols(); ++c) rad(at, c) = x(r, c);
    }
    RrefResult<K> rr = rref(rad);
    // The unit vectors at non-pivot coordinates complement the radical.
    std::vector<bool> is_pivot(m->dim_at(v), false);
    for (std::size_t p : rr.pivots) is_pivot[p] = true;
    for (std::size_t c = 0; c < m->dim_at(v); ++c) {
      if (is_pivot[c]) continue;
      Matrix<K> row(1, m->dim_at(v));
      row(0, c) = scalar_one(alg.proto());
      gen_vertices.push_back(v);
      gen_rows.push_back(std::move(row));
    }
  }

  ProjectiveModule<K> p = projective_sum<K>(m->alg, gen_vertices);
  ModuleMorphism<K> pi = morphism_from_generators(p, m, gen_rows);
  check_morphism(pi);
  for (int v = 1; v <= n; ++v)
    if (rank(pi.at(v)) != m->dim_at(v))
      throw InvariantViolation("projective cover is not surjective");
  return {std::move(p), std::move(pi)};
}

template <class K>
struct Resolution {
  RepPtr<K> module;
  std::vector<ProjectiveModule<K>> terms;  // homological degrees 0..length()
  std::vector<ModuleMorphism<K>> maps;     // maps[l]: terms[l] -> terms[l-1], l >= 1
  ModuleMorphism<K> aug;                   // terms[0] -> module

  std::size_t length() const { return terms.size() - 1; }
};

namespace detail {

// Verifies that a differential out of a projective sum lands in the radical:
// no image row may have a nonzero coordinate at a generator position.
template <class K>
bool lands_in_radical(const ProjectiveModule<K>& tgt, const ModuleMorphism<K>& d) {
  for (std::size_t s = 0; s < tgt.num_summands(); ++s) {
    const int v = tgt.summands[s];
    const std::size_t col = tgt.generator_coord(s);
    const Matrix<K>& blk = d.at(v);
    for (std::size_t r = 0; r < blk.rows(); ++r)
      if (!qha::is_zero(blk(r, col))) return false;
  }
  return true;
}

}  // namespace detail

template <class K>
Resolution<K> minimal_projective_resolution(RepPtr<K> m,
                                            std::size_t cap = kDefaultResolutionCap) {
  Resolution<K> res;
  res.module = m;

  auto [p0, aug] = projective_cover(m);
  res.terms.push_back(std::move(p0));
  res.aug = std::move(aug);

  // Kernel of the latest map, with its inclusion into the latest term.
  auto [ker, inc] = kernel_rep(res.aug);
  while (!ker->is_zero()) {
    if (res.terms.size() > cap)
      throw CapExceeded("projective resolution exceeded " + std::to_string(cap) + " terms");
    auto [pl, cover] = projective_cover(ker);
    ModuleMorphism<K> d = compose(cover, inc);
    if (!detail::lands_in_radical(res.terms.back(), d))
      throw InvariantViolation("resolution differential does not land in the radical");
    res.terms.push_back(std::move(pl));
    res.maps.push_back(std::move(d));
    // ker(d) = ker(cover) because the inclusion is injective, and kernel_rep
    // of the cover embeds the next syzygy directly into the new term.
    std::tie(ker, inc) = kernel_rep(cover);
  }

  // Exactness check: at every vertex, nullity of each map equals the rank of
  // the next one, and the last map is injective.
  const int n = m->alg->num_vertices();
  for (std::size_t l = 0; l + 1 <= res.length(); ++l) {
    const ModuleMorphism<K>& dl = (l == 0) ? res.aug : res.maps[l - 1];
    const ModuleMorphism<K>& dn = res.maps[l];
    if (!compose(dn, dl).is_zero())
      throw InvariantViolation("resolution: consecutive maps do not compose to zero");
    for (int v = 1; v <= n; ++v) {
      std::size_t dim_v = res.terms[l].rep->dim_at(v);
      if (dim_v - rank(dl.at(v)) != rank(dn.at(v)))
        throw InvariantViolation("resolution: not exact at term " + std::to_string(l));
    }
  }
  for (int v = 1; v <= n; ++v) {
    const ModuleMorphism<K>& last = res.length() == 0 ? res.aug : res.maps.back();
    if (rank(last.at(v)) != res.terms.back().rep->dim_at(v))
      throw InvariantViolation("resolution: last term is not embedded");
  }
  return res;
}

// Projective dimension of a module: the length of its minimal resolution.
template <class K>
std::size_t projective_dimension(RepPtr<K> m, std::size_t cap = kDefaultResolutionCap) {
  return minimal_projective_resolution(m, cap).length();
}

// Global dimension: the maximum projective dimension of the simple modules.
template <class K>
std::size_t global_dimension(std::shared_ptr<const Algebra<K>> a,
                             std::size_t cap = kDefaultResolutionCap) {
  std::size_t g = 0;
  for (int v = 1; v <= a->num_vertices(); ++v)
    g = std::max(g, projective_dimension(simple_module<K>(a, v), cap));
  return g;
}

}  // namespace qha

#endif  // QHA_RESOLUTION_HPP
