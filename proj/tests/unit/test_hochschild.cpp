#include "cyclo/hochschild.hpp"

#include <doctest.h>

using namespace cyclo;

namespace {

FpAlgebra weighted(FpAlgebra a, std::vector<int> w) {
  a.set_weights(std::move(w));
  return a;
}

// HH of k[x]/(x^N) from the 2-periodic resolution A <-0- A <-f'- A <-0- ...
// P_{2i} is shifted by weight iN, P_{2i+1} by iN + 1. A has basis 1..x^{N-1}.
Index truncated_poly_hh(int N, int n, int w) {
  int shift = (n / 2) * N + (n % 2);
  int e = w - shift;  // exponent of x in the generator's coefficient
  if (e < 0 || e >= N) return 0;
  // d_n : P_n -> P_{n-1} is 0 for n odd, f' = N x^{N-1} for n even (n >= 2).
  bool out_zero = (n % 2 == 1) || n == 0;
  bool in_zero = (n % 2 == 0);  // d_{n+1}
  // cycles: kernel of the outgoing map
  bool cycle = out_zero || e + (N - 1) >= N;
  // boundaries: image of x^{N-1} * (coefficient x^{e-(N-1)})
  bool boundary = !in_zero && e >= N - 1;
  return (cycle && !boundary) ? 1 : 0;
}

Index binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  Index r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("mixed complex identities hold as exact matrices") {
  for (auto a : {FpAlgebra::parse({"x"}, {}), FpAlgebra::parse({"x"}, {"x^2"}), FpAlgebra::parse({"x", "y"}, {"x^3 - y^2"}),
                 FpAlgebra::parse({"x", "t"}, {"x*t - 1"})}) {
    BarComplex bar(a, {4, 5, std::nullopt});
    auto rep = check_mixed_identities(bar.mixed());
    CHECK_MESSAGE(rep.ok(), rep.message);
    CHECK(validate(bar.chains()).ok);
  }
}

TEST_CASE("a corrupted B is detected") {
  BarComplex bar(FpAlgebra::parse({"x"}, {}), {3, 3, std::nullopt});
  MixedComplex m = bar.mixed();
  REQUIRE(!m.connes[1].empty());
  m.connes[1] = std::vector<SparseVec>(m.connes[1].size(), SparseVec{{0, Rational(1)}});
  CHECK_FALSE(check_mixed_identities(m).ok());
}

TEST_CASE("b and B on small tensors") {
  auto a = FpAlgebra::parse({"x"}, {});
  BarComplex bar(a, {3, 4, std::nullopt});
  auto id = [&](int e) { return *bar.monomial_id(Monomial{e}); };
  // b(x ⊗ x) = x^2 - x^2 = 0 ; b(1 ⊗ x ⊗ x) = x ⊗ x - 1 ⊗ x^2 + x ⊗ x
  CHECK(bar.b_of({id(1), id(1)}).empty());
  auto bb = bar.b_of({id(0), id(1), id(1)});
  CHECK(bb.size() == 2);
  CHECK(bb[Key{id(1), id(1)}] == 2);
  CHECK(bb[Key{id(0), id(2)}] == -1);
  // B(x) = 1 ⊗ x ; B(1 ⊗ x) = 0
  auto B = bar.B_of({id(1)});
  CHECK(B.size() == 1);
  CHECK(B[Key{id(0), id(1)}] == 1);
  CHECK(bar.B_of({id(0), id(1)}).empty());
}

TEST_CASE("HH of Q is Q in degree zero") {
  FpAlgebra q({}, {});
  BarComplex bar(q, {3, 2, std::nullopt});
  CHECK(homology(bar.chains(), 0).dim == 1);
  CHECK(homology(bar.chains(), 1).dim == 0);
  CHECK(homology(bar.chains(), 2).dim == 0);
}

TEST_CASE("HH of truncated polynomial rings matches the periodic resolution") {
  for (int N : {2, 3}) {
    std::string rel = "x^" + std::to_string(N);
    auto a = weighted(FpAlgebra::parse({"x"}, {rel}), {1});
    for (int w = 0; w <= 7; ++w) {
      auto hh = hochschild_homology(a, w, 0, 6);
      for (int n = 0; n <= 6; ++n) {
        INFO("N=" << N << " w=" << w << " n=" << n);
        CHECK(hh.dims[n] == truncated_poly_hh(N, n, w));
      }
    }
  }
}

TEST_CASE("HH of polynomial rings has HKR dimensions per weight") {
  auto line = weighted(FpAlgebra::parse({"x"}, {}), {1});
  auto plane = weighted(FpAlgebra::parse({"x", "y"}, {}), {1, 1});
  for (int w = 0; w <= 4; ++w) {
    auto h1 = hochschild_homology(line, w, 0, 3);
    auto h2 = hochschild_homology(plane, w, 0, 3);
    for (int n = 0; n <= 3; ++n) {
      // forms f dx_I of weight w: monomials of degree w - n times binom(vars, n)
      Index o1 = (w - n >= 0) ? binom(1, n) : 0;
      Index o2 = (w - n >= 0) ? binom(2, n) * (w - n + 1) : 0;
      CHECK(h1.dims[n] == o1);
      CHECK(h2.dims[n] == o2);
    }
  }
}

TEST_CASE("HH of the torus, two presentations") {
  auto torus = weighted(FpAlgebra::parse({"x", "t"}, {"x*t - 1"}), {1, -1});
  auto h = hochschild_homology(torus, 0, 0, 2, 2);
  CHECK(h.all_stable());
  CHECK(h.dims[0] == 1);
  CHECK(h.dims[1] == 1);
  CHECK(h.dims[2] == 0);
  auto h1 = hochschild_homology(torus, 1, 0, 2, 2);
  CHECK(h1.dims[0] == 1);
  CHECK(h1.dims[1] == 1);
  CHECK(h1.dims[2] == 0);

  // x and x^{-1} with a redundant square generator s = x^2.
  auto other = weighted(FpAlgebra::parse({"x", "t", "s"}, {"x*t - 1", "s - x^2"}), {1, -1, 2});
  auto g = hochschild_homology(other, 0, 0, 2, 2);
  CHECK(g.all_stable());
  CHECK(g.dims == h.dims);

  // same ring with the variables listed the other way round
  auto swapped = weighted(FpAlgebra::parse({"t", "x"}, {"x*t - 1"}), {-1, 1});
  for (int w : {0, 1, -1}) {
    auto a = hochschild_homology(torus, w, 0, 2, 2);
    auto b = hochschild_homology(swapped, w, 0, 2, 2);
    CHECK(a.dims == b.dims);
  }
}

TEST_CASE("smoothness by presentation") {
  CHECK(smooth_by_presentation(FpAlgebra::parse({"x", "y"}, {})));
  CHECK(smooth_by_presentation(FpAlgebra::parse({"x", "t"}, {"x*t - 1"})));
  CHECK(smooth_by_presentation(FpAlgebra::parse({"x", "t"}, {"t*x^2 + t*x - 1"})));
  CHECK_FALSE(smooth_by_presentation(FpAlgebra::parse({"x"}, {"x^2"})));
  CHECK_FALSE(smooth_by_presentation(FpAlgebra::parse({"x", "y"}, {"x^3 - y^2"})));
  CHECK_FALSE(smooth_by_presentation(FpAlgebra::parse({"x", "t"}, {"x*t - 1", "t^2 - 1"})));
  BarComplex bar(FpAlgebra::parse({"x"}, {"x^2"}), {2, 2, std::nullopt});
  CHECK_THROWS_AS(hkr_map(bar), std::invalid_argument);
}

TEST_CASE("HKR is an isomorphism on homology and intertwines d with B") {
  for (auto a : {weighted(FpAlgebra::parse({"x"}, {}), {1}), weighted(FpAlgebra::parse({"x", "y"}, {}), {1, 1})}) {
    for (int w = 0; w <= 4; ++w) {
      BarComplex bar = bar_complex(a, {5, 0, w});
      HkrMap h = hkr_map(bar);
      CHECK(validate_map(h.map, h.source, bar.chains()).ok);
      for (int n = 0; n <= h.source.hi(); ++n) {
        Index src = homology(h.source, n).dim;
        CHECK(induced_rank(h.map, h.source, bar.chains(), n) == src);
        CHECK(homology(bar.chains(), n).dim == src);
      }
    }
    for (int w = 1; w <= 3; ++w) {
      BarComplex bar = bar_complex(a, {5, 0, w});
      DeRhamComplex dr = de_rham_complex(a, {0, w});
      for (int n = 0; n + 1 <= std::min<int>(static_cast<int>(a.nvars()), bar.certified_top()); ++n) {
        HomologyCoordinates hc(bar.chains(), n + 1);
        for (const auto& k : dr.complex().basis(-n).keys()) {
          Form wform{{form_index(k), Rational(1)}};
          SparseVec lhs;
          for (const auto& [t, x] : hkr_chain(bar, wform)) axpy(lhs, x, bar.encode(bar.B_of(t)));
          SparseVec rhs = bar.encode(hkr_chain(bar, form_d(wform)));
          auto cl = hc.coordinates(lhs);
          auto cr = hc.coordinates(rhs);
          REQUIRE(cl);
          REQUIRE(cr);
          CHECK(*cl == *cr);
        }
      }
    }
  }
}

TEST_CASE("HKR on the torus") {
  auto torus = weighted(FpAlgebra::parse({"x", "t"}, {"x*t - 1"}), {1, -1});
  BarComplex bar = bar_complex(torus, {3, 3, 0});
  HkrMap h = hkr_map(bar);
  CHECK(induced_rank(h.map, h.source, bar.chains(), 1) == 1);
  CHECK(induced_rank(h.map, h.source, bar.chains(), 0) == 1);
}
