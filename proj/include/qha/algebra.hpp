#pragma once

// Finite dimensional elementary algebras kQ/I from bound quiver presentations.
//
// Normal forms are computed by iterative linear closure: all shifts p*rho*q of
// the relations are spanned degree by degree over the deglex path order, and the
// construction stops at the first degree D in which every path of length D lies
// in the span (so J^D is inside the ideal). Length-homogeneous relation sets are
// computed exactly this way. Mixed-length relation sets additionally run a
// stabilisation margin past D and an associativity self-check; if the closure
// does not stabilise the presentation is rejected rather than miscomputed.

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qha/errors.hpp"
#include "qha/int_matrix.hpp"
#include "qha/matrix.hpp"
#include "qha/quiver.hpp"
#include "qha/scalar.hpp"

namespace qha {

// Raised when the relation ideal cannot be certified admissible within the caps.
struct NonAdmissibleError : std::runtime_error {
  explicit NonAdmissibleError(std::string what)
      : std::runtime_error("presentation not admissible: " + what), diagnosis(std::move(what)) {}
  std::string diagnosis;
};

namespace detail {

using PathKey = std::vector<int>;

inline PathKey path_key(const Path& p) {
  PathKey k;
  k.reserve(p.arrows.size() + 1);
  k.push_back(p.source);
  k.insert(k.end(), p.arrows.begin(), p.arrows.end());
  return k;
}

struct PathKeyHash {
  std::size_t operator()(const PathKey& k) const {
    std::size_t h = 1469598103934665603ull;
    for (int v : k) {
      h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace detail

template <class K>
class Algebra {
 public:
  using Ptr = std::shared_ptr<const Algebra<K>>;
  using Dense = std::vector<K>;  // coordinates over the normal-form basis

  static constexpr std::size_t kDefaultDegreeCap = 64;
  static constexpr std::size_t kPathCountCap = 200000;

  static Ptr build(Presentation<K> pres, std::size_t degree_cap = kDefaultDegreeCap);

  const Presentation<K>& presentation() const { return pres_; }
  const Quiver& quiver() const { return pres_.quiver; }
  int num_vertices() const { return pres_.quiver.num_vertices; }
  std::size_t num_arrows() const { return pres_.quiver.arrows.size(); }
  const K& proto() const { return pres_.proto; }
  FieldSpec field() const { return field_spec_of(scalar_one(pres_.proto)); }

  std::size_t dim() const { return basis_.size(); }
  const std::vector<Path>& basis() const { return basis_; }
  const Path& basis_path(std::size_t i) const { return basis_[i]; }
  int basis_source(std::size_t i) const { return basis_src_[i]; }
  int basis_target(std::size_t i) const { return basis_tgt_[i]; }
  std::size_t basis_length(std::size_t i) const { return basis_[i].length(); }
  bool in_radical(std::size_t i) const { return basis_length(i) >= 1; }

  // Smallest D with J^D contained in the relation ideal.
  std::size_t loewy_bound() const { return loewy_; }

  std::size_t trivial_index(int vertex) const { return static_cast<std::size_t>(vertex - 1); }

  // Basis indices of e_i A e_j (paths from i to j); with Cartan entries
  // c_uv = dim e_v A e_u this is the (j,i) block count.
  const std::vector<std::size_t>& peirce_ids(int i, int j) const {
    return peirce_[static_cast<std::size_t>(i - 1) * num_vertices() + (j - 1)];
  }

  // Cartan matrix: c_ij = dim e_j A e_i, the number of basis paths j -> i.
  const IntMatrix& cartan() const { return cartan_; }

  // Dimension of the indecomposable right projective e_v A.
  std::size_t projective_dim(int v) const {
    std::size_t s = 0;
    for (int u = 1; u <= num_vertices(); ++u) s += peirce_ids(v, u).size();
    return s;
  }

  // Normal form of an arbitrary composable path of the quiver.
  Dense normal_form(const Path& p) const {
    Dense out(dim());
    if (p.length() >= loewy_) return out;
    auto it = nf_.find(detail::path_key(p));
    if (it == nf_.end()) throw InvariantViolation("path missing from normal-form table");
    return it->second;
  }

  Dense multiply_basis(std::size_t a, std::size_t b) const {
    if (basis_tgt_[a] != basis_src_[b]) return Dense(dim());
    return normal_form(basis_[a] * basis_[b]);
  }

  Dense multiply(const Dense& x, const Dense& y) const {
    if (x.size() != dim() || y.size() != dim())
      throw InvariantViolation("element coordinate length mismatch");
    Dense out(dim());
    for (std::size_t a = 0; a < dim(); ++a) {
      if (qha::is_zero(x[a])) continue;
      for (std::size_t b = 0; b < dim(); ++b) {
        if (qha::is_zero(y[b]) || basis_tgt_[a] != basis_src_[b]) continue;
        Dense prod = multiply_basis(a, b);
        for (std::size_t c = 0; c < dim(); ++c)
          if (!qha::is_zero(prod[c])) out[c] += x[a] * y[b] * prod[c];
      }
    }
    return out;
  }

  Dense identity_element() const {
    Dense e(dim());
    for (int v = 1; v <= num_vertices(); ++v) e[trivial_index(v)] = scalar_one(pres_.proto);
    return e;
  }

  // Normal form of (basis element) * (arrow) and (arrow) * (basis element);
  // zero when the endpoints do not match.
  const Dense& right_mul_arrow(std::size_t basis_id, int arrow) const {
    return right_mul_[arrow][basis_id];
  }
  const Dense& left_mul_arrow(int arrow, std::size_t basis_id) const {
    return left_mul_[arrow][basis_id];
  }

 private:
  Algebra() = default;

  Presentation<K> pres_;
  std::vector<int> name_rank_;
  std::vector<Path> basis_;
  std::vector<int> basis_src_, basis_tgt_;
  std::size_t loewy_ = 0;
  std::unordered_map<detail::PathKey, Dense, detail::PathKeyHash> nf_;
  std::vector<std::vector<Dense>> right_mul_, left_mul_;  // [arrow][basis]
  std::vector<std::vector<std::size_t>> peirce_;
  IntMatrix cartan_;
};

template <class K>
typename Algebra<K>::Ptr Algebra<K>::build(Presentation<K> pres, std::size_t degree_cap) {
  pres.validate();
  const Quiver& q = pres.quiver;
  const int n = q.num_vertices;
  const K one = scalar_one(pres.proto);

  auto alg = std::shared_ptr<Algebra<K>>(new Algebra<K>());
  alg->pres_ = pres;

  // Arrow name ranks for the deglex order.
  std::vector<int> by_name(q.arrows.size());
  std::iota(by_name.begin(), by_name.end(), 0);
  std::sort(by_name.begin(), by_name.end(),
            [&](int a, int b) { return q.arrows[a].name < q.arrows[b].name; });
  alg->name_rank_.assign(q.arrows.size(), 0);
  for (std::size_t r = 0; r < by_name.size(); ++r) alg->name_rank_[by_name[r]] = static_cast<int>(r);
  const std::vector<int>& rank = alg->name_rank_;

  bool homogeneous = true;
  std::size_t max_span = 0;
  for (const auto& rel : pres.relations) {
    std::size_t lo = rel.terms.front().path.length(), hi = lo;
    for (const auto& t : rel.terms) {
      lo = std::min(lo, t.path.length());
      hi = std::max(hi, t.path.length());
    }
    if (lo != hi) homogeneous = false;
    max_span = std::max(max_span, hi - lo);
  }

  // Path enumeration state. Ids ascend with the deglex order.
  std::vector<Path> all_paths;
  std::unordered_map<detail::PathKey, std::size_t, detail::PathKeyHash> id_of;
  std::vector<std::vector<std::size_t>> by_degree;
  auto add_path = [&](const Path& p) {
    std::size_t id = all_paths.size();
    all_paths.push_back(p);
    id_of.emplace(detail::path_key(p), id);
    return id;
  };
  by_degree.emplace_back();
  for (int v = 1; v <= n; ++v) by_degree[0].push_back(add_path(Path::trivial(v)));

  std::vector<int> path_tgt;  // target vertex per path id
  for (int v = 1; v <= n; ++v) path_tgt.push_back(v);

  // All shifts generated so far, sparse over path ids.
  std::vector<std::map<std::size_t, K>> shifts;

  std::size_t death = 0;        // first degree whose paths all lie in the span
  std::size_t stop_degree = 0;  // last degree to process (set once death is known)

  // Data of the final reduction, refreshed each degree.
  RrefResult<K> red;
  std::vector<std::size_t> pivot_row_of_col;

  auto run_rref = [&]() {
    const std::size_t P = all_paths.size();
    Matrix<K> m(shifts.size(), P);
    for (std::size_t r = 0; r < shifts.size(); ++r)
      for (const auto& [id, c] : shifts[r]) m(r, P - 1 - id) = c;  // descending deglex columns
    red = rref(std::move(m));
    pivot_row_of_col.assign(P, SIZE_MAX);
    for (std::size_t r = 0; r < red.rank; ++r) pivot_row_of_col[red.pivots[r]] = r;
  };

  auto path_dead = [&](std::size_t id) {
    const std::size_t P = all_paths.size();
    std::size_t col = P - 1 - id;
    if (col >= pivot_row_of_col.size() || pivot_row_of_col[col] == SIZE_MAX) return false;
    std::size_t r = pivot_row_of_col[col];
    for (std::size_t c = 0; c < P; ++c)
      if (c != col && !qha::is_zero(red.reduced(r, c))) return false;
    return true;
  };

  for (std::size_t d = 1; d <= degree_cap; ++d) {
    // Enumerate degree-d paths in deglex order.
    std::vector<Path> fresh;
    for (std::size_t pid : by_degree[d - 1]) {
      const Path& p = all_paths[pid];
      for (std::size_t a = 0; a < q.arrows.size(); ++a)
        if (q.arrows[a].source == path_tgt[pid]) {
          Path ext = p;
          ext.arrows.push_back(static_cast<int>(a));
          fresh.push_back(std::move(ext));
        }
    }
    std::sort(fresh.begin(), fresh.end(),
              [&](const Path& a, const Path& b) { return deglex_less(a, b, rank); });
    by_degree.emplace_back();
    for (const Path& p : fresh) {
      std::size_t id = add_path(p);
      by_degree[d].push_back(id);
      path_tgt.push_back(p.target(q));
    }
    if (all_paths.size() > kPathCountCap)
      throw NonAdmissibleError("path closure exceeded " + std::to_string(kPathCountCap) +
                               " paths before terminating");

    // New shifts whose longest term has total length exactly d.
    if (d >= 2) {
      for (const auto& rel : pres.relations) {
        std::size_t m = 0;
        for (const auto& t : rel.terms) m = std::max(m, t.path.length());
        if (m > d) continue;
        int rsrc = rel.terms.front().path.source;
        int rtgt = rel.terms.front().path.target(q);
        std::size_t outer = d - m;
        for (std::size_t lp = 0; lp <= outer; ++lp) {
          std::size_t lq = outer - lp;
          if (lp >= by_degree.size() || lq >= by_degree.size()) continue;
          for (std::size_t pid : by_degree[lp]) {
            if (path_tgt[pid] != rsrc) continue;
            for (std::size_t qid : by_degree[lq]) {
              if (all_paths[qid].source != rtgt) continue;
              std::map<std::size_t, K> s;
              for (const auto& t : rel.terms) {
                Path w = all_paths[pid] * t.path * all_paths[qid];
                auto it = id_of.find(detail::path_key(w));
                if (it == id_of.end())
                  throw InvariantViolation("shifted relation term not enumerated");
                K& slot = s[it->second];
                slot += t.coeff;
                if (qha::is_zero(slot)) s.erase(it->second);
              }
              if (!s.empty()) shifts.push_back(std::move(s));
            }
          }
        }
      }
    }

    run_rref();

    bool all_dead = true;
    for (std::size_t id : by_degree[d])
      if (!path_dead(id)) {
        all_dead = false;
        break;
      }
    if (all_dead && death == 0) {
      death = d;
      stop_degree = homogeneous ? d : std::min(degree_cap, d + max_span + 2);
    }
    if (death != 0 && d >= stop_degree) break;
  }

  if (death == 0)
    throw NonAdmissibleError("no power of the arrow ideal entered the relation span by degree " +
                             std::to_string(degree_cap) +
                             "; the quiver has unbounded surviving paths");

  // Assemble the basis from non-pivot columns (all of length < death).
  const std::size_t P = all_paths.size();
  std::vector<bool> is_pivot_col(P, false);
  for (std::size_t c : red.pivots) is_pivot_col[c] = true;
  std::vector<std::size_t> basis_of_id(P, SIZE_MAX);
  for (std::size_t id = 0; id < P; ++id) {
    if (all_paths[id].length() >= death) continue;
    if (!is_pivot_col[P - 1 - id]) {
      basis_of_id[id] = alg->basis_.size();
      alg->basis_.push_back(all_paths[id]);
      alg->basis_src_.push_back(all_paths[id].source);
      alg->basis_tgt_.push_back(path_tgt[id]);
    }
  }
  alg->loewy_ = death;
  const std::size_t dim = alg->basis_.size();

  // Normal-form table for every enumerated path of length < death.
  for (std::size_t id = 0; id < P; ++id) {
    if (all_paths[id].length() >= death) continue;
    Dense v(dim);
    if (basis_of_id[id] != SIZE_MAX) {
      v[basis_of_id[id]] = one;
    } else {
      std::size_t r = pivot_row_of_col[P - 1 - id];
      if (r == SIZE_MAX) throw InvariantViolation("surviving path neither basis nor pivot");
      for (std::size_t c = 0; c < P; ++c) {
        if (c == P - 1 - id || qha::is_zero(red.reduced(r, c))) continue;
        std::size_t oid = P - 1 - c;
        if (basis_of_id[oid] == SIZE_MAX)
          throw InvariantViolation("rewrite entry is not in normal form");
        v[basis_of_id[oid]] = -red.reduced(r, c);
      }
    }
    alg->nf_.emplace(detail::path_key(all_paths[id]), std::move(v));
  }

  // Minimise the nilpotency bound: the smallest L such that every path of
  // length L has zero normal form already bounds the radical's nilpotency
  // degree, and may be smaller than the closure's termination degree.
  {
    std::size_t max_basis_len = 0;
    for (const Path& b : alg->basis_) max_basis_len = std::max(max_basis_len, b.length());
    for (std::size_t L = max_basis_len + 1; L < death; ++L) {
      bool all_zero = true;
      for (std::size_t id : by_degree[L]) {
        const Dense& nf = alg->nf_.at(detail::path_key(all_paths[id]));
        for (const K& x : nf)
          if (!qha::is_zero(x)) {
            all_zero = false;
            break;
          }
        if (!all_zero) break;
      }
      if (all_zero) {
        alg->loewy_ = L;
        break;
      }
    }
  }

  // Peirce blocks and Cartan matrix.
  alg->peirce_.assign(static_cast<std::size_t>(n) * n, {});
  for (std::size_t b = 0; b < dim; ++b)
    alg->peirce_[static_cast<std::size_t>(alg->basis_src_[b] - 1) * n + (alg->basis_tgt_[b] - 1)]
        .push_back(b);
  alg->cartan_ = IntMatrix(n, n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      alg->cartan_(i - 1, j - 1) = static_cast<long>(alg->peirce_ids(j, i).size());

  // Arrow multiplication tables.
  alg->right_mul_.assign(q.arrows.size(), std::vector<Dense>(dim));
  alg->left_mul_.assign(q.arrows.size(), std::vector<Dense>(dim));
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    for (std::size_t b = 0; b < dim; ++b) {
      if (q.arrows[a].source == alg->basis_tgt_[b]) {
        Path w = alg->basis_[b];
        w.arrows.push_back(static_cast<int>(a));
        alg->right_mul_[a][b] = alg->normal_form(w);
      } else {
        alg->right_mul_[a][b] = Dense(dim);
      }
      if (q.arrows[a].target == alg->basis_src_[b]) {
        Path w;
        w.source = q.arrows[a].source;
        w.arrows.push_back(static_cast<int>(a));
        w.arrows.insert(w.arrows.end(), alg->basis_[b].arrows.begin(),
                        alg->basis_[b].arrows.end());
        alg->left_mul_[a][b] = alg->normal_form(w);
      } else {
        alg->left_mul_[a][b] = Dense(dim);
      }
    }
  }

  // Mixed-length relation sets: verify that multiplication is associative on the
  // computed basis; failure means the truncated closure was insufficient.
  if (!homogeneous) {
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t b = 0; b < dim; ++b) {
        if (alg->basis_tgt_[a] != alg->basis_src_[b]) continue;
        Dense ab = alg->multiply_basis(a, b);
        for (std::size_t c = 0; c < dim; ++c) {
          if (alg->basis_tgt_[b] != alg->basis_src_[c]) continue;
          Dense bc = alg->multiply_basis(b, c);
          Dense unit_a(dim), unit_c(dim);
          unit_a[a] = one;
          unit_c[c] = one;
          if (alg->multiply(ab, unit_c) != alg->multiply(unit_a, bc))
            throw NonAdmissibleError(
                "normal-form closure did not stabilise (non-associative products); "
                "mixed-length relation ideal could not be certified");
        }
      }
  }

  return alg;
}

// The opposite algebra: arrows and relation paths reversed, names kept.
template <class K>
typename Algebra<K>::Ptr opposite_algebra(const Algebra<K>& a) {
  Presentation<K> p;
  p.proto = a.proto();
  p.quiver.num_vertices = a.num_vertices();
  for (const Arrow& ar : a.quiver().arrows)
    p.quiver.arrows.push_back(Arrow{ar.name, ar.target, ar.source});
  for (const auto& rel : a.presentation().relations) {
    Relation<K> r;
    for (const auto& t : rel.terms)
      r.terms.push_back(RelationTerm<K>{t.coeff, t.path.reversed(a.quiver())});
    p.relations.push_back(std::move(r));
  }
  return Algebra<K>::build(std::move(p));
}

// Tensor product B (x) A as a bound quiver algebra on the product quiver.
// Vertices are ordered with the B factor major: (f_j, e_i) at (j-1)*n + i.
// Arrow names are tagged "l:<b>:<i>" / "r:<j>:<a>" so they can never collide.
// Relations: both lifted ideals plus the commutativity squares
//   (beta,s)(v,alpha) - (u,alpha)(beta,t)  for beta: u->v in B, alpha: s->t in A.
template <class K>
typename Algebra<K>::Ptr tensor_algebra(const Algebra<K>& b, const Algebra<K>& a) {
  const int nb = b.num_vertices(), na = a.num_vertices();
  const K one = scalar_one(a.proto());
  Presentation<K> p;
  p.proto = a.proto();
  p.quiver.num_vertices = nb * na;
  auto vx = [&](int j, int i) { return (j - 1) * na + i; };

  std::vector<std::vector<int>> left_arrow(b.num_arrows(), std::vector<int>(na + 1));
  std::vector<std::vector<int>> right_arrow(nb + 1, std::vector<int>(a.num_arrows()));
  for (std::size_t bi = 0; bi < b.num_arrows(); ++bi) {
    const Arrow& beta = b.quiver().arrows[bi];
    for (int i = 1; i <= na; ++i) {
      left_arrow[bi][i] = static_cast<int>(p.quiver.arrows.size());
      p.quiver.arrows.push_back(Arrow{"l:" + beta.name + ":" + std::to_string(i),
                                      vx(beta.source, i), vx(beta.target, i)});
    }
  }
  for (int j = 1; j <= nb; ++j)
    for (std::size_t ai = 0; ai < a.num_arrows(); ++ai) {
      const Arrow& alpha = a.quiver().arrows[ai];
      right_arrow[j][ai] = static_cast<int>(p.quiver.arrows.size());
      p.quiver.arrows.push_back(Arrow{"r:" + std::to_string(j) + ":" + alpha.name,
                                      vx(j, alpha.source), vx(j, alpha.target)});
    }

  // Lift the B relations at every A vertex.
  for (const auto& rel : b.presentation().relations)
    for (int i = 1; i <= na; ++i) {
      Relation<K> r;
      for (const auto& t : rel.terms) {
        Path w;
        w.source = vx(t.path.source, i);
        for (int ar : t.path.arrows) w.arrows.push_back(left_arrow[ar][i]);
        r.terms.push_back(RelationTerm<K>{t.coeff, std::move(w)});
      }
      p.relations.push_back(std::move(r));
    }
  // Lift the A relations at every B vertex.
  for (const auto& rel : a.presentation().relations)
    for (int j = 1; j <= nb; ++j) {
      Relation<K> r;
      for (const auto& t : rel.terms) {
        Path w;
        w.source = vx(j, t.path.source);
        for (int ar : t.path.arrows) w.arrows.push_back(right_arrow[j][ar]);
        r.terms.push_back(RelationTerm<K>{t.coeff, std::move(w)});
      }
      p.relations.push_back(std::move(r));
    }
  // Commutativity squares.
  for (std::size_t bi = 0; bi < b.num_arrows(); ++bi) {
    const Arrow& beta = b.quiver().arrows[bi];
    for (std::size_t ai = 0; ai < a.num_arrows(); ++ai) {
      const Arrow& alpha = a.quiver().arrows[ai];
      Relation<K> r;
      Path w1;
      w1.source = vx(beta.source, alpha.source);
      w1.arrows = {left_arrow[bi][alpha.source], right_arrow[beta.target][ai]};
      Path w2;
      w2.source = vx(beta.source, alpha.source);
      w2.arrows = {right_arrow[beta.source][ai], left_arrow[bi][alpha.target]};
      r.terms.push_back(RelationTerm<K>{one, std::move(w1)});
      r.terms.push_back(RelationTerm<K>{-one, std::move(w2)});
      p.relations.push_back(std::move(r));
    }
  }

  auto t = Algebra<K>::build(std::move(p));
  if (t->dim() != b.dim() * a.dim())
    throw InvariantViolation("tensor algebra dimension is not the product of the factors");
  return t;
}

// Enveloping algebra A^e = A^op (x) A; its right modules are A-A-bimodules.
template <class K>
typename Algebra<K>::Ptr enveloping_algebra(const Algebra<K>& a) {
  auto op = opposite_algebra(a);
  return tensor_algebra(*op, a);
}

// Index bookkeeping for the product quiver built by tensor_algebra(b, a):
// vertices are B-major, left arrows come first in (B-arrow, A-vertex) order,
// right arrows follow in (B-vertex, A-arrow) order.
struct TensorLayout {
  int nb = 0, na = 0;
  std::size_t b_arrows = 0, a_arrows = 0;

  int vertex(int j, int i) const { return (j - 1) * na + i; }
  std::size_t vertex_id(int j, int i) const { return static_cast<std::size_t>(vertex(j, i) - 1); }
  std::size_t left_arrow(std::size_t bi, int i) const {
    return bi * static_cast<std::size_t>(na) + static_cast<std::size_t>(i - 1);
  }
  std::size_t right_arrow(int j, std::size_t ai) const {
    return b_arrows * static_cast<std::size_t>(na) +
           static_cast<std::size_t>(j - 1) * a_arrows + ai;
  }
};

template <class K>
TensorLayout tensor_layout(const Algebra<K>& b, const Algebra<K>& a) {
  return TensorLayout{b.num_vertices(), a.num_vertices(), b.num_arrows(), a.num_arrows()};
}

// Cartan data for the Euler forms: C, C^-1 and the Coxeter matrix -C^-T C.
struct RingelFormData {
  IntMatrix cartan;
  IntMatrix cartan_inverse;
  IntMatrix coxeter;
};

template <class K>
RingelFormData ringel_data(const Algebra<K>& a) {
  RingelFormData d;
  d.cartan = a.cartan();
  d.cartan_inverse = int_inverse(d.cartan);
  d.coxeter = -(transpose(d.cartan_inverse) * d.cartan);
  return d;
}

}  // namespace qha
