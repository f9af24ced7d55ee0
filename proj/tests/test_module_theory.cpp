#include <catch2/catch_amalgamated.hpp>

#include "qha/algebra.hpp"
#include "qha/bimodule.hpp"
#include "qha/module.hpp"

using namespace qha;

namespace {

using RAlg = Algebra<Rational>;

typename RAlg::Ptr a2() {
  Presentation<Rational> p;
  p.proto = Rational(0);
  p.quiver.num_vertices = 2;
  p.quiver.arrows = {{"a", 1, 2}};
  return RAlg::build(std::move(p));
}

typename RAlg::Ptr a3_rel() {
  Presentation<Rational> p;
  p.proto = Rational(0);
  p.quiver.num_vertices = 3;
  p.quiver.arrows = {{"a", 1, 2}, {"b", 2, 3}};
  Relation<Rational> r;
  r.terms.push_back({Rational(1), Path{1, {0, 1}}});
  p.relations.push_back(r);
  return RAlg::build(std::move(p));
}

typename RAlg::Ptr kron() {
  Presentation<Rational> p;
  p.proto = Rational(0);
  p.quiver.num_vertices = 2;
  p.quiver.arrows = {{"a", 1, 2}, {"b", 1, 2}};
  return RAlg::build(std::move(p));
}

IntMatrix col(std::vector<long> v) { return IntMatrix(v.size(), 1, v); }

}  // namespace

TEST_CASE("projective and simple dimension vectors") {
  auto a = a2();
  auto p1 = indecomposable_projective<Rational>(a, 1);
  auto p2 = indecomposable_projective<Rational>(a, 2);
  CHECK(dim_vector(*p1.rep) == col({1, 1}));
  CHECK(dim_vector(*p2.rep) == col({0, 1}));
  CHECK(dim_vector(*simple_module<Rational>(a, 1)) == col({1, 0}));
  CHECK(!representation_problem(*p1.rep));

  // dv(e_j A) is the j-th column of the Cartan matrix.
  auto a3 = a3_rel();
  for (int j = 1; j <= 3; ++j) {
    auto pj = indecomposable_projective<Rational>(a3, j);
    for (int v = 1; v <= 3; ++v)
      CHECK(dim_vector(*pj.rep)(v - 1, 0) == a3->cartan()(v - 1, j - 1));
  }
}

TEST_CASE("representation validation catches a broken relation") {
  auto a = a3_rel();
  auto m = std::make_shared<Representation<Rational>>();
  m->alg = a;
  m->dims = {1, 1, 1};
  m->act = {Matrix<Rational>(1, 1, {Rational(1)}), Matrix<Rational>(1, 1, {Rational(1)})};
  CHECK(representation_problem(*m).has_value());
  m->act[1] = Matrix<Rational>(1, 1, {Rational(0)});
  CHECK(!representation_problem(*m).has_value());
}

TEST_CASE("hom spaces between projectives realize Cartan entries") {
  for (auto a : {a2(), a3_rel(), kron()}) {
    const int n = a->num_vertices();
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        auto pi = indecomposable_projective<Rational>(a, i);
        auto pj = indecomposable_projective<Rational>(a, j);
        auto basis = hom_basis(pi.rep, pj.rep);
        // Hom(e_i A, e_j A) = e_j A e_i has dimension c_ij.
        CHECK(basis.size() ==
              static_cast<std::size_t>(mpz_get_si(a->cartan()(i - 1, j - 1).get_mpz_t())));
        for (const auto& f : basis) CHECK(!morphism_problem(f));
      }
  }
}

TEST_CASE("hom spaces between simples") {
  auto a = a2();
  auto s1 = simple_module<Rational>(a, 1);
  auto s2 = simple_module<Rational>(a, 2);
  CHECK(hom_basis(s1, s1).size() == 1);
  CHECK(hom_basis(s1, s2).empty());
  CHECK(hom_basis(s2, s1).empty());
}

TEST_CASE("generator images round-trip") {
  auto a = a3_rel();
  auto p = projective_sum<Rational>(a, {1, 2});
  auto q = projective_sum<Rational>(a, {2});
  std::vector<Matrix<Rational>> images;
  images.push_back(Matrix<Rational>(1, q.rep->dim_at(1)));  // vertex 1 of e_2A is zero
  auto f = morphism_from_generators(p, q.rep, {images[0], Matrix<Rational>(1, 1, {Rational(3)})});
  CHECK(!morphism_problem(f));
  auto back = generator_images(p, f);
  CHECK(back[1] == Matrix<Rational>(1, 1, {Rational(3)}));
}

TEST_CASE("kernel, image and cokernel of the cover of a simple") {
  auto a = a2();
  auto p1 = indecomposable_projective<Rational>(a, 1);
  auto s1 = simple_module<Rational>(a, 1);
  auto f = morphism_from_generators(p1, s1, {Matrix<Rational>(1, 1, {Rational(1)})});
  CHECK(!morphism_problem(f));

  auto [ker, inc] = kernel_rep(f);
  CHECK(dim_vector(*ker) == col({0, 1}));
  CHECK(compose(inc, f).is_zero());

  auto [img, jinc] = image_rep(f);
  CHECK(dim_vector(*img) == col({1, 0}));

  auto [cok, pr] = cokernel_rep(f);
  CHECK(cok->is_zero());
  CHECK(pr.blocks[0].cols() == 0);

  // Rank-nullity per vertex.
  for (int v = 1; v <= 2; ++v)
    CHECK(ker->dim_at(v) + img->dim_at(v) == p1.rep->dim_at(v));
}

TEST_CASE("duality is exact and involutive on actions") {
  auto a = kron();
  auto op = opposite_algebra(*a);
  auto m = random_module<Rational>(a, 17);
  auto d = dual_module(*m, op);
  CHECK(dim_vector(*d) == dim_vector(*m));
  auto opop = opposite_algebra(*op);
  auto dd = dual_module(*d, opop);
  for (std::size_t i = 0; i < m->act.size(); ++i) CHECK(dd->act[i] == m->act[i]);
}

TEST_CASE("direct sums add dimensions and hom spaces") {
  auto a = a3_rel();
  auto m = random_module<Rational>(a, 5);
  auto n = random_module<Rational>(a, 6);
  auto s = direct_sum(*m, *n);
  CHECK(dim_vector(*s) == dim_vector(*m) + dim_vector(*n));
  auto t = random_module<Rational>(a, 7);
  CHECK(hom_basis(s, t).size() == hom_basis(m, t).size() + hom_basis(n, t).size());
}

TEST_CASE("random modules are deterministic and respect the budget") {
  auto a = kron();
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto m1 = random_module<Rational>(a, seed);
    auto m2 = random_module<Rational>(a, seed);
    CHECK(dim_vector(*m1) == dim_vector(*m2));
    for (std::size_t i = 0; i < m1->act.size(); ++i) CHECK(m1->act[i] == m2->act[i]);
    CHECK(!representation_problem(*m1));
  }
}

TEST_CASE("random endomorphisms intertwine") {
  auto a = a3_rel();
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto m = random_module<Rational>(a, seed);
    auto f = random_endomorphism(m, seed * 31 + 1);
    CHECK(!morphism_problem(f));
    auto tv = trace_vector(identity_morphism(m));
    for (int v = 1; v <= 3; ++v)
      CHECK(tv(v - 1, 0) == Rational(static_cast<long>(m->dim_at(v))));
  }
}

TEST_CASE("regular bimodule has the Cartan dimension matrix") {
  for (auto a : {a2(), a3_rel(), kron()}) {
    auto env = enveloping_algebra(*a);
    auto reg = regular_bimodule<Rational>(a, env);
    CHECK(dim_matrix(reg) == a->cartan());

    // Slices of the regular bimodule are the indecomposable projectives.
    for (int j = 1; j <= a->num_vertices(); ++j) {
      auto s = slice_right(reg, j);
      auto pj = indecomposable_projective<Rational>(a, j);
      CHECK(dim_vector(*s) == dim_vector(*pj.rep));
      for (std::size_t i = 0; i < s->act.size(); ++i) CHECK(s->act[i] == pj.rep->act[i]);
    }

    // Trace matrix of the identity is the Cartan matrix over k.
    auto tm = trace_matrix(reg, identity_morphism(reg.rep));
    for (int i = 0; i < a->num_vertices(); ++i)
      for (int j = 0; j < a->num_vertices(); ++j)
        CHECK(tm(i, j) == Rational(mpz_class(reg.left_alg->cartan()(i, j))));
  }
}

TEST_CASE("left slices of the regular bimodule are the left projectives") {
  auto a = a3_rel();
  auto env = enveloping_algebra(*a);
  auto op = opposite_algebra(*a);
  auto reg = regular_bimodule<Rational>(a, env);
  for (int i = 1; i <= 3; ++i) {
    auto s = slice_left(reg, i, op);
    // A e_i = e_i A^op has the dimension vector of the i-th opposite projective.
    auto pi = indecomposable_projective<Rational>(op, i);
    CHECK(dim_vector(*s) == dim_vector(*pi.rep));
  }
}

TEST_CASE("outer tensor bimodule dimensions multiply") {
  auto a = a2();
  auto b = a3_rel();
  auto opb = opposite_algebra(*b);
  auto env = bimodule_env(*b, *a);
  auto nl = random_module<Rational>(opb, 3);
  auto m = random_module<Rational>(a, 4);
  auto h = outer_tensor_bimodule<Rational>(b, a, env, *nl, *m);
  CHECK(dim_matrix(h) == dim_vector(*m) * transpose(dim_vector(*nl)));
}

TEST_CASE("bimodule dual transposes the dimension matrix") {
  auto a = a2();
  auto env = enveloping_algebra(*a);
  auto reg = regular_bimodule<Rational>(a, env);
  auto dual_env = bimodule_env(*reg.right_alg, *reg.left_alg);
  auto d = dual_bimodule(reg, dual_env);
  CHECK(dim_matrix(d) == transpose(dim_matrix(reg)));
  auto tm = trace_matrix(d, dual_bimodule_endo(reg, d, identity_morphism(reg.rep)));
  CHECK(tm == transpose(trace_matrix(reg, identity_morphism(reg.rep))));
}

TEST_CASE("left module form of a bimodule") {
  auto a = a3_rel();
  auto env = enveloping_algebra(*a);
  auto reg = regular_bimodule<Rational>(a, env);
  auto form = left_module_form(reg);
  CHECK(form.rep->total_dim() == reg.rep->total_dim());
  for (int j = 1; j <= 3; ++j)
    for (int i = 1; i <= 3; ++i)
      CHECK(form.rep->dims[reg.layout.vertex_id(j, i)] == reg.comp_dim(i, j));
  auto e = left_form_endo(form, reg, identity_morphism(reg.rep));
  CHECK(!morphism_problem(e));

  auto rnd = random_bimodule<Rational>(a, a, env, 11);
  auto form2 = left_module_form(rnd);
  CHECK(form2.rep->total_dim() == rnd.rep->total_dim());
}
