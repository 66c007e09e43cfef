#include <doctest.h>

#include "cyclo/scheme.hpp"

using namespace cyclo;

namespace {

FpAlgebra weighted(FpAlgebra a, std::vector<int> w) {
  a.set_weights(std::move(w));
  return a;
}

// P^1 = Spec Q[s] ∪ Spec Q[r], r = 1/s on the overlap Q[x, t]/(xt - 1).
AffineCover projective_line() {
  auto a = weighted(FpAlgebra::parse({"s"}, {}), {1});
  auto b = weighted(FpAlgebra::parse({"r"}, {}), {-1});
  auto c = weighted(FpAlgebra::parse({"x", "t"}, {"x*t - 1"}), {1, -1});
  return two_patch_cover("U", a, "V", b, c, {{c.var(0)}}, {{c.var(1)}});
}

std::vector<std::optional<int>> weights_upto(int W) {
  std::vector<std::optional<int>> ws;
  for (int w = -W; w <= W; ++w) ws.push_back(w);
  return ws;
}

CechOptions small_unweighted(bool augmented = false) {
  CechOptions o;
  o.trunc = 2;
  o.bar_cap = 3;
  o.augmented = augmented;
  return o;
}

}  // namespace

TEST_CASE("algebra maps substitute images") {
  auto c = FpAlgebra::parse({"x", "t"}, {"x*t - 1"});
  AlgebraMap f{{c.var(0) * c.var(0), c.var(1)}};
  auto p = parse_polynomial("u^2 + 3*u*v - 1", {"u", "v"});
  CHECK(f.apply(p, 2) == parse_polynomial("x^4 + 3*x^2*t - 1", {"x", "t"}));
  CHECK(f.degree_bound() == 2);
}

TEST_CASE("incoherent covers are rejected") {
  auto a = weighted(FpAlgebra::parse({"s"}, {}), {1});
  auto b = weighted(FpAlgebra::parse({"r"}, {}), {-1});
  auto c = weighted(FpAlgebra::parse({"x", "t"}, {"x*t - 1"}), {1, -1});
  // s -> x^2 changes the weight
  CHECK_THROWS_AS(two_patch_cover("U", a, "V", b, c, {{c.var(0) * c.var(0)}}, {{c.var(1)}}), std::invalid_argument);
  // a relation that does not die: Q[x]/(x^2) -> Q[x, t]/(xt - 1)
  auto dual = FpAlgebra::parse({"y"}, {"y^2"});
  auto cu = FpAlgebra::parse({"x", "t"}, {"x*t - 1"});
  CHECK_THROWS_AS(two_patch_cover("U", dual, "V", FpAlgebra::parse({"r"}, {}), cu, {{cu.var(0)}}, {{cu.var(1)}}),
                  std::invalid_argument);
  // D(x) and D(x) do not cover the line
  auto line = FpAlgebra::parse({"x"}, {});
  CHECK_THROWS_AS(principal_cover(line, {line.var(0), line.var(0)}), std::invalid_argument);
  // a missing intersection
  AffineCover broken;
  broken.names = {"U", "V"};
  broken.sections.emplace(Subset{0}, a);
  broken.sections.emplace(Subset{1}, b);
  CHECK_FALSE(check_cover(broken).ok);
}

TEST_CASE("principal covers: intersections and restriction maps") {
  auto line = FpAlgebra::parse({"x"}, {});
  auto cov = principal_cover(line, {line.var(0), line.var(0) - line.one()}, {"Dx", "Dx1"});
  CHECK(cov.size() == 2);
  const auto& both = cov.section({0, 1});
  CHECK(both.nvars() == 3);
  // 1/(x(x-1)) = 1/(x-1) - 1/x: t0 t1 = t1 - t0
  auto t0 = both.var(1), t1 = both.var(2);
  CHECK(both.normal_form(t0 * t1 - t1 + t0).is_zero());
  CHECK(check_cover(cov).ok);
  // a relation of D(x) pulled back along the restriction still vanishes
  const auto& f = cov.map({0}, {0, 1});
  const auto& dx = cov.section({0});
  for (const auto& g : dx.groebner_basis()) CHECK(both.normal_form(f.apply(g, both.nvars())).is_zero());
}

TEST_CASE("Čech total complexes are valid") {
  auto p1 = projective_line();
  for (auto inv : {Invariant::HH, Invariant::HP, Invariant::DeRham}) {
    CechOptions o;
    o.weight = 0;
    auto x = cech_complex(p1, inv, -2, 2, 4, o);
    auto rep = validate(x);
    CHECK_MESSAGE(rep.ok, rep.message);
  }
  auto line = FpAlgebra::parse({"x"}, {});
  auto a1 = principal_cover(line, {line.var(0), line.var(0) - line.one()});
  for (auto inv : {Invariant::HH, Invariant::HP, Invariant::DeRham}) {
    auto x = cech_complex(a1, inv, -1, 1, 3, small_unweighted(true));
    auto rep = validate(x);
    CHECK_MESSAGE(rep.ok, rep.message);
  }
}

TEST_CASE("projective line: periodic homology by both routes") {
  auto g = glued_hp(projective_line(), weights_upto(2), -3, 3);
  CHECK(g.certified);
  CHECK(g.agree());
  for (int d = -3; d <= 3; ++d) CHECK(g.bar[d] == (d % 2 == 0 ? 2 : 0));
  // H^0 and H^2
  for (const auto& [e, n] : g.derham_cohomology) CHECK(n == ((e == 0 || e == -2) ? 1 : 0));
}

TEST_CASE("projective line: HH_0 = H^0(O) + H^1(Ω^1) in weight zero, nothing in other weights") {
  auto p1 = projective_line();
  for (int w = -2; w <= 2; ++w) {
    CechOptions o;
    o.weight = w;
    auto r = cech_sections(p1, Invariant::HH, 0, 2, o);
    CHECK(r.certified);
    CHECK(r.dims[0] == (w == 0 ? 2 : 0));
    CHECK(r.dims[1] == 0);
    CHECK(r.dims[2] == 0);
  }
}

TEST_CASE("patch order does not matter") {
  auto p1 = projective_line();
  auto q1 = permute_patches(p1, {1, 0});
  CHECK(q1.names[0] == "V");
  auto g = glued_hp(p1, weights_upto(1), -2, 2);
  auto h = glued_hp(q1, weights_upto(1), -2, 2);
  CHECK(g.bar == h.bar);
  CHECK(g.derham_cohomology == h.derham_cohomology);
}

TEST_CASE("a single patch gives back the affine invariants") {
  auto plane = weighted(FpAlgebra::parse({"x", "y"}, {}), {1, 1});
  AffineCover one;
  one.names = {"X"};
  one.sections.emplace(Subset{0}, plane);
  one = build_cover(one);
  for (int w = 0; w <= 2; ++w) {
    CechOptions o;
    o.weight = w;
    auto hh = cech_sections(one, Invariant::HH, 0, 2, o);
    auto direct = hochschild_homology(plane, w, 0, 2);
    for (int n = 0; n <= 2; ++n) CHECK(hh.dims[n] == direct.dims[n]);
    auto hp = cech_sections(one, Invariant::HP, -2, 2, o);
    auto c = cyclic_dims(plane, w, TatePiece::Periodic, 0, -2, 2);
    CHECK(hp.dims == c.dims);
  }
}

TEST_CASE("affine line covered by D(x) and D(x-1)") {
  auto line = FpAlgebra::parse({"x"}, {});
  auto a1 = principal_cover(line, {line.var(0), line.var(0) - line.one()});
  // the augmented Čech complexes are acyclic: the cover computes the affine answer
  for (auto inv : {Invariant::HH, Invariant::HP, Invariant::DeRham}) {
    auto r = cech_sections(a1, inv, -2, 2, small_unweighted(true));
    CHECK(r.certified);
    for (int d = -2; d <= 2; ++d) CHECK(r.dims[d] == 0);
  }
  auto hp = cech_sections(a1, Invariant::HP, -2, 2, small_unweighted());
  CHECK(hp.certified);
  auto graded = weighted(line, {1});
  auto affine = hp_via_bar(graded, default_weights(graded, 3), -2, 2);
  CHECK(hp.dims == affine.dims);
}

TEST_CASE("refining the cover of the line does not change de Rham cohomology") {
  auto line = FpAlgebra::parse({"x"}, {});
  auto two = principal_cover(line, {line.var(0), line.var(0) - line.one()});
  auto three = principal_cover(line, {line.var(0), line.var(0) - line.one(), line.var(0) + line.one()});
  auto r2 = cech_sections(two, Invariant::DeRham, -2, 1, small_unweighted());
  auto r3 = cech_sections(three, Invariant::DeRham, -2, 1, small_unweighted());
  CHECK(r2.certified);
  CHECK(r3.certified);
  CHECK(r2.dims == r3.dims);
  CHECK(r3.dims[0] == 1);
  auto aug = cech_sections(three, Invariant::DeRham, -3, 1, small_unweighted(true));
  for (const auto& [d, n] : aug.dims) CHECK(n == 0);
}
