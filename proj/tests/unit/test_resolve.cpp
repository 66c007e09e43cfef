#include <doctest.h>

#include "cyclo/derham.hpp"
#include "cyclo/resolve.hpp"

using namespace cyclo;

namespace {

FpAlgebra weighted(std::vector<std::string> vars, std::vector<std::string> rel, std::vector<int> w) {
  auto a = FpAlgebra::parse(std::move(vars), rel);
  a.set_weights(std::move(w));
  return a;
}

}  // namespace

TEST_CASE("graded-commutative signs") {
  GcAlgebra a({{"x", 0, 1, 1, 0}, {"e", 1, 1, 1, 0}, {"f", 1, 1, 1, 0}});
  auto e = a.gen(1), f = a.gen(2), x = a.gen(0);
  CHECK(a.mul(e, f) == gc_scale(a.mul(f, e), -1));
  CHECK(a.mul(e, e).empty());
  CHECK(a.mul(x, e) == a.mul(e, x));
  // d(x) = e, d(e) = 0, d(f) = x: d(e f) = -e x.
  std::vector<GcPoly> d{e, {}, x};
  CHECK(a.derive(d, a.mul(e, f)) == gc_scale(a.mul(e, x), -1));
  CHECK(a.derive(d, a.mul(x, x)) == gc_scale(a.mul(x, e), 2));
}

TEST_CASE("Koszul complexes") {
  auto line = weighted({"x"}, {}, {1});
  CHECK(koszul_cdga(line, {}).algebra().size() == 1);

  auto k = koszul_cdga(line, {line.parse_element("x^2")});
  CHECK(k.differential_squares_to_zero());
  auto dual = weighted({"x"}, {"x^2"}, {1});
  SemifreeCDGA kd = koszul_cdga(dual, dual.relations());
  auto cert = certify_resolution(kd, 3, 6);
  CHECK(cert.h0_matches);
  CHECK(cert.acyclic);

  // (x, x) is not regular: H_1 survives.
  auto kk = koszul_cdga(dual, {line.parse_element("x"), line.parse_element("x")});
  auto bad = certify_resolution(kk, 2, 4);
  CHECK_FALSE(bad.acyclic);
  CHECK(bad.failing_degree == 1);
}

TEST_CASE("Tate resolutions") {
  auto plane = weighted({"x", "y"}, {}, {1, 1});
  CHECK(tate_resolution(plane, 3, 5).algebra().size() == 2);

  auto dual = weighted({"x"}, {"x^2"}, {1});
  auto t = tate_resolution(dual, 3, 6);
  CHECK(t.generators_in_degree(1) == 1);
  CHECK(t.generators_in_degree(2) == 0);
  CHECK(t.max_generator_degree() == 1);

  auto nonlci = weighted({"x", "y"}, {"x*y", "x^2"}, {1, 1});
  auto r = tate_resolution(nonlci, 2, 4);
  CHECK(r.generators_in_degree(2) > 0);
  CHECK(r.differential_squares_to_zero());
  auto cert = certify_resolution(r, 2, 4);
  CHECK(cert.h0_matches);
  CHECK(cert.acyclic);
}

TEST_CASE("derived de Rham algebra") {
  auto cusp = weighted({"x", "y"}, {"y^2 - x^3"}, {2, 3});
  DerivedDeRham dr(koszul_cdga(cusp, cusp.relations()));
  for (std::size_t i = 0; i < dr.algebra().size(); ++i) CHECK(dr.apply(dr.apply(dr.algebra().gen(i))).empty());
  // Level 0 is the resolution itself: H_0 = R in each weight.
  for (int w = 0; w <= 8; ++w) {
    GcTruncation t;
    t.weight = w;
    t.deg_lo = -1;
    t.deg_hi = 2;
    auto c = dr.level(0, t);
    CHECK(validate(c).ok);
    Index expect = 0;
    for (const auto& m : cusp.monomial_basis(w).monomials)
      if (cusp.weight(m) == w) ++expect;
    CHECK(homology(c, 0).dim == expect);
    CHECK(homology(c, 1).dim == 0);
  }
}

TEST_CASE("smooth collapse: derived levels match the stupid truncations") {
  auto plane = weighted({"x", "y"}, {}, {1, 1});
  DerivedDeRham dr{SemifreeCDGA(plane)};
  for (int w = 0; w <= 3; ++w) {
    auto classical = de_rham_complex(plane, {0, w});
    for (int m = 0; m <= 2; ++m) {
      GcTruncation t;
      t.weight = w;
      t.deg_lo = -3;
      t.deg_hi = 1;
      auto lvl = dr.level(m, t);
      auto q = classical.hodge_quotient(m);
      for (int n = -2; n <= 0; ++n) {
        CHECK(lvl.dim(n) == q.dim(n));
        CHECK(homology(lvl, n).dim == homology(q, n).dim);
      }
    }
  }
}

TEST_CASE("completed derived de Rham") {
  auto line = weighted({"x"}, {}, {1});
  for (int w = 0; w <= 3; ++w) {
    auto r = completed_derham_homotopy(line, w, -2, 1, 2, 0);
    CHECK(r.hodge_stable);
    for (int n = -2; n <= 1; ++n) CHECK(r.dims[n] == (w == 0 && n == 0 ? 1 : 0));
  }
  auto dual = weighted({"x"}, {"x^2"}, {1});
  for (int w = 0; w <= 4; ++w) {
    auto r = completed_derham_homotopy(dual, w, -2, 2, 2, 0);
    CHECK(r.hodge_stable);
    for (int n = -2; n <= 2; ++n) CHECK(r.dims[n] == (w == 0 && n == 0 ? 1 : 0));
  }
  auto torus = weighted({"x", "t"}, {"t*x - 1"}, {1, -1});
  auto r = completed_derham_homotopy(torus, 0, -2, 1, 2, 4);
  CHECK(r.trunc_stable);
  CHECK(r.hodge_stable);
  CHECK(r.dims[0] == 1);
  CHECK(r.dims[-1] == 1);
  CHECK(r.dims[-2] == 0);
  CHECK(r.dims[1] == 0);
  CHECK(r.top_degree == 0);
}

TEST_CASE("resolution independence on a non-lci algebra") {
  auto nonlci = weighted({"x", "y"}, {"x*y", "x^2"}, {1, 1});
  for (int w = 0; w <= 3; ++w) {
    auto a = completed_derham_homotopy(nonlci, w, -2, 2, 2, 0);
    auto b = infinitesimal_cohomology(nonlci, w, -2, 0);
    for (int n = -2; n <= 0; ++n) CHECK(a.dims[n] == b.dims[n]);
  }
}
