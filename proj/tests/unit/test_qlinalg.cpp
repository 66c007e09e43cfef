#include <doctest.h>

#include "cyclo/qlinalg.hpp"

#include <random>

using namespace cyclo;

namespace {

// Fraction-free Bareiss elimination on a dense copy: independent rank oracle.
Index bareiss_rank(std::vector<std::vector<mpz_class>> a) {
  std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  Index r = 0;
  mpz_class prev = 1;
  for (std::size_t c = 0; c < cols && static_cast<std::size_t>(r) < rows; ++c) {
    std::size_t p = static_cast<std::size_t>(r);
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[static_cast<std::size_t>(r)]);
    auto& pr = a[static_cast<std::size_t>(r)];
    for (std::size_t i = static_cast<std::size_t>(r) + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) a[i][j] = (pr[c] * a[i][j] - a[i][c] * pr[j]) / prev;
      a[i][c] = 0;
    }
    prev = pr[c];
    ++r;
  }
  return r;
}

std::vector<std::vector<mpz_class>> random_int_matrix(std::mt19937& g, int rows, int cols, int density) {
  std::uniform_int_distribution<int> val(-3, 3), pct(0, 99);
  std::vector<std::vector<mpz_class>> m(static_cast<std::size_t>(rows), std::vector<mpz_class>(static_cast<std::size_t>(cols)));
  for (auto& row : m)
    for (auto& x : row)
      if (pct(g) < density) x = val(g);
  return m;
}

SparseMatrix to_sparse(const std::vector<std::vector<mpz_class>>& m) {
  std::vector<std::vector<Rational>> d;
  for (const auto& row : m) {
    std::vector<Rational> r;
    for (const auto& x : row) r.emplace_back(x);
    d.push_back(r);
  }
  return SparseMatrix::from_dense(d);
}

}  // namespace

TEST_CASE("kernel of a rank one 2x2 matrix") {
  auto m = SparseMatrix::from_dense({{1, 1}, {2, 2}});
  CHECK(rank(m) == 1);
  auto k = kernel_basis(m);
  REQUIRE(k.size() == 1);
  CHECK(m.apply(k[0]).empty());
}

TEST_CASE("rank agrees with fraction-free elimination") {
  std::mt19937 g(7);
  for (int trial = 0; trial < 60; ++trial) {
    int rows = 1 + trial % 9, cols = 1 + (trial * 5) % 11;
    auto m = random_int_matrix(g, rows, cols, 20 + (trial % 4) * 20);
    auto s = to_sparse(m);
    Index r = bareiss_rank(m);
    CHECK(rank(s) == r);
    CHECK(rank(s.transpose()) == r);
    CHECK(static_cast<Index>(kernel_basis(s).size()) == cols - r);
    CHECK(static_cast<Index>(image_basis(s).size()) == r);
    for (const auto& v : kernel_basis(s)) CHECK(s.apply(v).empty());
  }
}

TEST_CASE("rref has unit pivots and clean pivot columns") {
  auto m = SparseMatrix::from_dense({{0, 2, 4}, {1, 1, 1}, {1, 3, 5}});
  auto r = rref(m);
  CHECK(r.rank == 2);
  for (std::size_t i = 0; i < r.pivots.size(); ++i) {
    CHECK(r.matrix.at(static_cast<Index>(i), r.pivots[i]) == 1);
    for (Index j = 0; j < r.matrix.rows(); ++j)
      if (j != static_cast<Index>(i)) CHECK(r.matrix.at(j, r.pivots[i]) == 0);
  }
}

TEST_CASE("solve") {
  auto m = SparseMatrix::from_dense({{1, 2}, {3, 4}, {5, 6}});
  auto x = solve(m, make_sparse({{0, 5}, {1, 11}, {2, 17}}), 3);
  REQUIRE(x);
  CHECK(m.apply(*x) == make_sparse({{0, 5}, {1, 11}, {2, 17}}));
  CHECK_FALSE(solve(m, make_sparse({{0, 1}}), 3));
  CHECK_THROWS_AS(solve(m, {}, 2), std::invalid_argument);
}

TEST_CASE("relations_among and span_rank") {
  std::vector<SparseVec> vs = {make_sparse({{0, 1}, {1, 1}}), make_sparse({{1, 1}}), make_sparse({{0, 2}})};
  CHECK(span_rank(vs) == 2);
  auto rel = relations_among(vs);
  REQUIRE(rel.size() == 1);
  SparseVec sum;
  for (const auto& [i, c] : rel[0]) axpy(sum, c, vs[static_cast<std::size_t>(i)]);
  CHECK(sum.empty());
}

TEST_CASE("matrix product and transpose") {
  auto a = SparseMatrix::from_dense({{1, 2}, {0, 1}});
  auto b = SparseMatrix::from_dense({{1, -2}, {0, 1}});
  CHECK(a * b == SparseMatrix::identity(2));
  CHECK((a * b).transpose() == b.transpose() * a.transpose());
  CHECK(to_string(Rational(3, 6)) == "1/2");
}
