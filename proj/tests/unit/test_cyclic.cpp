#include <doctest.h>

#include "cyclo/cyclic.hpp"


using namespace cyclo;

namespace {

FpAlgebra weighted(FpAlgebra a, std::vector<int> w) {
  a.set_weights(std::move(w));
  return a;
}

FpAlgebra rationals() { return weighted(FpAlgebra({}, {}), {}); }
FpAlgebra line() { return weighted(FpAlgebra::parse({"x"}, {}), {1}); }
FpAlgebra dual() { return weighted(FpAlgebra::parse({"x"}, {"x^2"}), {1}); }
FpAlgebra torus() { return weighted(FpAlgebra::parse({"x", "t"}, {"x*t - 1"}), {1, -1}); }

// Mixed complex with chosen chains and B = 0: one basis vector per listed degree.
MixedComplex trivial_mixed(const std::vector<int>& degrees, int top) {
  MixedComplex m;
  m.chains = ChainComplex(0, top);
  int i = 0;
  for (int d : degrees) m.chains.basis(d).add({d, i++});
  for (int n = 0; n <= top; ++n) {
    m.chains.set_boundary(n, std::vector<SparseVec>(static_cast<std::size_t>(m.chains.dim(n))));
    if (n < top) m.connes[n] = std::vector<SparseVec>(static_cast<std::size_t>(m.chains.dim(n)));
  }
  m.chains.set_certified(0, top);
  return m;
}

}  // namespace

TEST_CASE("Tate construction on Q") {
  BarComplex bar = bar_complex(rationals(), {2, 0, 0});
  auto hp = periodic(bar.mixed(), -5, 5);
  auto hc = negative_cyclic(bar.mixed(), -5, 5);
  for (int d = -5; d <= 5; ++d) {
    CHECK(hp.dims[d] == (d % 2 == 0 ? 1 : 0));
    CHECK(hc.dims[d] == ((d % 2 == 0 && d <= 0) ? 1 : 0));
  }
  // u-range for degree d: j with 0 <= d + 2j <= top
  CHECK(hp.u_range[-4].lo == 2);
  CHECK(hp.u_range[4].lo == -2);
}

TEST_CASE("with B = 0 negative cyclic homology is a product of shifted copies") {
  auto m = trivial_mixed({0, 1, 1, 3}, 3);
  auto hc = negative_cyclic(m, -6, 3);
  for (int d = -6; d <= 3; ++d) {
    Index expect = 0;
    for (int j = 0; d + 2 * j <= 3; ++j) {
      int n = d + 2 * j;
      if (n == 0) expect += 1;
      if (n == 1) expect += 2;
      if (n == 3) expect += 1;
    }
    CHECK(hc.dims[d] == expect);
  }
}

TEST_CASE("Tate complexes are valid, also under a bar cap") {
  BarComplex bar = bar_complex(torus(), {3, 4, 0});
  auto t = tate_complex(bar.mixed(), -3, 3);
  CHECK(validate(t.complex).ok);
  auto f = tate_complex(bar.mixed(), -3, 3, 1);
  CHECK(validate(f.complex).ok);
  auto g = tate_complex(bar.mixed(), -3, 3, 1, 1);
  CHECK(validate(g.complex).ok);
}

TEST_CASE("graded pieces of the u-adic filtration are shifted HH") {
  for (auto a : {line(), dual()})
    for (int w = 0; w <= 4; ++w) {
      BarComplex bar = bar_complex(a, {0, 0, w});
      // HH of weight w sits in degrees <= w, so Fil^m leaves the window once w - 2m < -4.
      auto r = tate_filtration(bar.mixed(), -4, 4, -2, 5);
      CHECK(r.graded_matches);
      REQUIRE(r.vanishing_from);
      CHECK(*r.vanishing_from <= (w + 6) / 2);
    }
  BarComplex bar = bar_complex(torus(), {3, 4, 0});
  auto r = tate_filtration(bar.mixed(), -3, 3, -1, 1);
  CHECK(r.graded_matches);
}

TEST_CASE("periodic homology of the dual numbers lives in weight zero") {
  auto a = dual();
  for (int w = 0; w <= 5; ++w) {
    auto c = cyclic_dims(a, w, TatePiece::Periodic, 0, -3, 3);
    for (int d = -3; d <= 3; ++d) CHECK(c.dims[d] == ((w == 0 && d % 2 == 0) ? 1 : 0));
  }
}

TEST_CASE("both routes agree on small fixtures") {
  for (auto a : {rationals(), line(), dual(), weighted(FpAlgebra::parse({"x", "y"}, {"x^3 - y^2"}), {2, 3})}) {
    auto c = compare_routes(a, default_weights(a, 3), -3, 3);
    CHECK(c.verdict == "AGREE");
    for (int d = -3; d <= 3; ++d) CHECK(c.bar.dims[d] == (d % 2 == 0 ? 1 : 0));
  }
}

TEST_CASE("torus: HP has one class in each degree, HC- injects in degrees <= 1") {
  auto a = torus();
  auto c = cyclic_dims(a, 0, TatePiece::Periodic, 0, -2, 2);
  CHECK(c.certified);
  for (int d = -2; d <= 2; ++d) CHECK(c.dims[d] == 1);
  BarComplex bar = bar_complex(a, {4, 6, 0});
  auto hc = negative_cyclic(bar.mixed(), -2, 2);
  auto rk = negative_to_periodic_rank(bar.mixed(), -2, 2);
  for (int d = -2; d <= 1; ++d) {
    CHECK(hc.dims[d] == 1);
    CHECK(rk[d] == 1);
  }
  CHECK(hc.dims[2] == 0);
}

TEST_CASE("u-adic filtration splits along the Hodge filtration for Q[x]") {
  auto a = line();
  auto s = tate_splitting(a, default_weights(a, 3), -3, 3, -1, 1);
  CHECK(s.ok);
  // Fil^0 in degree -1 ... only weight pieces w >= 1 contribute x^{w-1}dx u^0 in degree 1.
  CHECK(s.tate[0][1] == 3);
  CHECK(s.tate[0][0] == 1);
}

TEST_CASE("HKR filtration: partial products and the exhaustiveness verdict") {
  auto a = line();
  auto h = hkr_filtration(a, default_weights(a, 2), -4, 4, -2, 2);
  CHECK(h.graded_matches);
  CHECK(h.verdict == "EXHAUSTIVE-IN-WINDOW");
  for (int d = -4; d <= 4; ++d) {
    CHECK(h.fil[-2][d] == h.total[d]);
    CHECK(h.fil[2][d] == ((d % 2 == 0 && d >= 4) ? 1 : 0));
  }
  // Cutting the partial products too early is reported.
  auto narrow = hkr_filtration(a, default_weights(a, 2), -4, 4, 0, 1);
  CHECK(narrow.verdict == "NOT-EXHAUSTIVE-IN-WINDOW");
}

TEST_CASE("HP ring: unit, commutativity, associativity, tower compatibility") {
  auto a = weighted(FpAlgebra::parse({"x", "y"}, {"x^3 - y^2"}), {2, 3});
  WeightList ws;
  for (int w = 0; w <= 6; ++w) ws.push_back(w);
  std::uint32_t seed = 11;
  for (int level = 1; level <= 2; ++level) {
    HPRing ring(a, level, 3, 12);
    HPRing lower(a, level - 1, 3, 12);
    for (int trial = 0; trial < 20; ++trial) {
      auto p = ring.sample(0, ws, seed++);
      // only level 1 has classes in degree -1 (Ω^1 modulo exact forms)
      auto q = ring.sample(level == 1 ? -1 : 2, ws, seed++);
      auto r = ring.sample(0, ws, seed++);
      CHECK(ring.is_cycle(p));
      CHECK(ring.is_cycle(q));
      CHECK(ring.equal(hp_ring_mul(ring, ring.one(), p), p));
      CHECK(ring.equal(hp_ring_mul(ring, p, q), hp_ring_mul(ring, q, p)));
      CHECK(ring.equal(hp_ring_mul(ring, hp_ring_mul(ring, p, q), r), hp_ring_mul(ring, p, hp_ring_mul(ring, q, r))));
      auto down = lower.equal(ring.reduce(hp_ring_mul(ring, p, q), level - 1),
                              hp_ring_mul(lower, ring.reduce(p, level - 1), ring.reduce(q, level - 1)));
      CHECK(down);
    }
    CHECK_FALSE(ring.sample(level == 1 ? -1 : 2, ws, 99).coeffs.empty());
  }
}

TEST_CASE("torus: x times its inverse is one at every level") {
  auto a = torus();
  HPRing base(a, 0);
  for (int level = 0; level <= 2; ++level) {
    HPRing ring(a, level);
    auto prod = hp_ring_mul(ring, ring.from_polynomial(a.var(0)), ring.from_polynomial(a.var(1)));
    CHECK(base.equal(ring.reduce(prod, 0), base.one()));
    CHECK_FALSE(base.equal(ring.reduce(ring.from_polynomial(a.var(0)), 0), base.one()));
  }
  HPRing ring(a, 1);
  CHECK_THROWS_AS(hp_ring_mul(ring, base.one(), ring.one()), std::logic_error);
}
