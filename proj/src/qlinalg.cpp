#include "cyclo/qlinalg.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <stdexcept>

namespace cyclo {

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

SparseVec make_sparse(std::vector<std::pair<Index, Rational>> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec out;
  out.reserve(entries.size());
  for (auto& [i, v] : entries) {
    if (!out.empty() && out.back().first == i) {
      out.back().second += v;
      if (out.back().second == 0) out.pop_back();
    } else if (v != 0) {
      out.emplace_back(i, std::move(v));
    }
  }
  return out;
}

void axpy(SparseVec& y, const Rational& c, const SparseVec& x) {
  if (c == 0 || x.empty()) return;
  SparseVec out;
  out.reserve(y.size() + x.size());
  std::size_t i = 0, j = 0;
  while (i < y.size() || j < x.size()) {
    if (j == x.size() || (i < y.size() && y[i].first < x[j].first)) {
      out.push_back(std::move(y[i++]));
    } else if (i == y.size() || x[j].first < y[i].first) {
      out.emplace_back(x[j].first, c * x[j].second);
      ++j;
    } else {
      Rational s = y[i].second + c * x[j].second;
      if (s != 0) out.emplace_back(y[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  y = std::move(out);
}

SparseVec add(const SparseVec& a, const SparseVec& b) {
  SparseVec r = a;
  axpy(r, Rational(1), b);
  return r;
}

SparseVec scaled(const SparseVec& a, const Rational& c) {
  if (c == 0) return {};
  SparseVec r = a;
  for (auto& e : r) e.second *= c;
  return r;
}

SparseVec dense_to_sparse(const std::vector<Rational>& dense) {
  SparseVec out;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (dense[i] != 0) out.emplace_back(static_cast<Index>(i), dense[i]);
  return out;
}

std::vector<Rational> sparse_to_dense(const SparseVec& v, Index n) {
  std::vector<Rational> out(static_cast<std::size_t>(n), Rational(0));
  for (const auto& [i, x] : v) out.at(static_cast<std::size_t>(i)) = x;
  return out;
}

// ---------------------------------------------------------------------------

SparseMatrix::SparseMatrix(Index rows, Index cols)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows)) {}

SparseMatrix SparseMatrix::identity(Index n) {
  SparseMatrix m(n, n);
  for (Index i = 0; i < n; ++i) m.data_[static_cast<std::size_t>(i)] = {{i, Rational(1)}};
  return m;
}

SparseMatrix SparseMatrix::from_rows(Index cols, std::vector<SparseVec> rows) {
  SparseMatrix m;
  m.rows_ = static_cast<Index>(rows.size());
  m.cols_ = cols;
  for (const auto& r : rows)
    for (const auto& [c, v] : r)
      if (c < 0 || c >= cols) throw std::out_of_range("SparseMatrix::from_rows: column index");
  m.data_ = std::move(rows);
  return m;
}

SparseMatrix SparseMatrix::from_columns(Index rows, const std::vector<SparseVec>& cols) {
  std::vector<std::vector<std::pair<Index, Rational>>> buckets(static_cast<std::size_t>(rows));
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (const auto& [r, v] : cols[c]) {
      if (r < 0 || r >= rows) throw std::out_of_range("SparseMatrix::from_columns: row index");
      buckets[static_cast<std::size_t>(r)].emplace_back(static_cast<Index>(c), v);
    }
  SparseMatrix m(rows, static_cast<Index>(cols.size()));
  for (Index r = 0; r < rows; ++r)
    m.data_[static_cast<std::size_t>(r)] = make_sparse(std::move(buckets[static_cast<std::size_t>(r)]));
  return m;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<Rational>>& dense) {
  Index cols = dense.empty() ? 0 : static_cast<Index>(dense.front().size());
  std::vector<SparseVec> rows;
  for (const auto& r : dense) {
    if (static_cast<Index>(r.size()) != cols) throw std::invalid_argument("ragged dense matrix");
    rows.push_back(dense_to_sparse(r));
  }
  return from_rows(cols, std::move(rows));
}

Rational SparseMatrix::at(Index r, Index c) const {
  const auto& row = data_.at(static_cast<std::size_t>(r));
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const auto& e, Index k) { return e.first < k; });
  if (it != row.end() && it->first == c) return it->second;
  return Rational(0);
}

void SparseMatrix::set(Index r, Index c, const Rational& v) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::out_of_range("SparseMatrix::set");
  auto& row = data_[static_cast<std::size_t>(r)];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const auto& e, Index k) { return e.first < k; });
  if (it != row.end() && it->first == c) {
    if (v == 0)
      row.erase(it);
    else
      it->second = v;
  } else if (v != 0) {
    row.insert(it, {c, v});
  }
}

Index SparseMatrix::nonzeros() const {
  Index n = 0;
  for (const auto& r : data_) n += static_cast<Index>(r.size());
  return n;
}

bool SparseMatrix::is_zero() const { return nonzeros() == 0; }

SparseMatrix SparseMatrix::transpose() const { return from_columns(cols_, data_); }

std::vector<SparseVec> SparseMatrix::columns() const { return transpose().data_; }

SparseVec SparseMatrix::apply(const SparseVec& v) const {
  std::vector<std::pair<Index, Rational>> out;
  for (Index r = 0; r < rows_; ++r) {
    const auto& row = data_[static_cast<std::size_t>(r)];
    Rational s = 0;
    std::size_t i = 0, j = 0;
    while (i < row.size() && j < v.size()) {
      if (row[i].first < v[j].first)
        ++i;
      else if (v[j].first < row[i].first)
        ++j;
      else
        s += row[i++].second * v[j++].second;
    }
    if (s != 0) out.emplace_back(r, s);
  }
  return out;
}

std::vector<std::vector<Rational>> SparseMatrix::to_dense() const {
  std::vector<std::vector<Rational>> out;
  for (const auto& r : data_) out.push_back(sparse_to_dense(r, cols_));
  return out;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
  SparseMatrix out(a.rows_, b.cols_);
  for (Index r = 0; r < a.rows_; ++r) {
    SparseVec acc;
    for (const auto& [k, v] : a.data_[static_cast<std::size_t>(r)])
      axpy(acc, v, b.data_[static_cast<std::size_t>(k)]);
    out.data_[static_cast<std::size_t>(r)] = std::move(acc);
  }
  return out;
}

SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum: shape mismatch");
  SparseMatrix out(a.rows_, a.cols_);
  for (Index r = 0; r < a.rows_; ++r)
    out.data_[static_cast<std::size_t>(r)] =
        add(a.data_[static_cast<std::size_t>(r)], b.data_[static_cast<std::size_t>(r)]);
  return out;
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

// ---------------------------------------------------------------------------

RrefResult rref(const SparseMatrix& m) {
  std::vector<SparseVec> rows = m.row_data();
  std::vector<bool> used(rows.size(), false);
  std::vector<std::size_t> order;  // rows chosen as pivots, in pivot order
  std::vector<Index> pivots;

  // Column-to-rows incidence is rebuilt lazily: for desk-scale matrices a
  // scan per column is cheap compared to the rational arithmetic.
  for (Index c = 0; c < m.cols(); ++c) {
    std::size_t best = rows.size();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (used[r] || rows[r].empty() || rows[r].front().first != c) continue;
      if (best == rows.size() || rows[r].size() < rows[best].size()) best = r;
    }
    if (best == rows.size()) continue;
    used[best] = true;
    Rational inv = 1 / rows[best].front().second;
    for (auto& e : rows[best]) e.second *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == best || rows[r].empty()) continue;
      auto it = std::lower_bound(rows[r].begin(), rows[r].end(), c,
                                 [](const auto& e, Index k) { return e.first < k; });
      if (it == rows[r].end() || it->first != c) continue;
      Rational f = -it->second;
      axpy(rows[r], f, rows[best]);
    }
    order.push_back(best);
    pivots.push_back(c);
  }

  RrefResult res;
  std::vector<SparseVec> out;
  for (auto r : order) out.push_back(rows[r]);
  res.rank = static_cast<Index>(out.size());
  out.resize(static_cast<std::size_t>(m.rows()));
  res.matrix = SparseMatrix::from_rows(m.cols(), std::move(out));
  res.pivots = std::move(pivots);
  return res;
}

Index rank(const SparseMatrix& m) {
  if (m.rows() <= m.cols()) return span_rank(m.row_data());
  return span_rank(m.columns());
}

std::vector<SparseVec> kernel_basis(const SparseMatrix& m) {
  auto r = rref(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (auto p : r.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<SparseVec> out;
  for (Index f = 0; f < m.cols(); ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    std::vector<std::pair<Index, Rational>> v{{f, Rational(1)}};
    for (Index i = 0; i < r.rank; ++i) {
      Rational x = r.matrix.at(i, f);
      if (x != 0) v.emplace_back(r.pivots[static_cast<std::size_t>(i)], -x);
    }
    out.push_back(make_sparse(std::move(v)));
  }
  return out;
}

std::vector<SparseVec> image_basis(const SparseMatrix& m) {
  auto cols = m.columns();
  std::vector<SparseVec> out;
  EchelonBasis eb;
  for (auto& c : cols)
    if (eb.insert(c)) out.push_back(c);
  return out;
}

std::optional<SparseVec> solve(const SparseMatrix& m, const SparseVec& v, Index v_len) {
  if (v_len != m.rows()) throw std::invalid_argument("solve: right-hand side length does not match rows");
  auto cols = m.columns();
  cols.push_back(v);
  auto aug = SparseMatrix::from_columns(m.rows(), cols);
  auto r = rref(aug);
  if (!r.pivots.empty() && r.pivots.back() == m.cols()) return std::nullopt;
  std::vector<std::pair<Index, Rational>> x;
  for (Index i = 0; i < r.rank; ++i) {
    Rational val = r.matrix.at(i, m.cols());
    if (val != 0) x.emplace_back(r.pivots[static_cast<std::size_t>(i)], val);
  }
  return make_sparse(std::move(x));
}

// ---------------------------------------------------------------------------

SparseVec EchelonBasis::reduce(SparseVec v) const {
  while (!v.empty()) {
    auto it = pivots_.find(v.front().first);
    if (it == pivots_.end()) break;
    Rational f = -v.front().second;
    axpy(v, f, it->second);
  }
  // Leading entry is now a non-pivot column (or v is zero).
  return v;
}

bool EchelonBasis::insert(SparseVec v) {
  v = reduce(std::move(v));
  if (v.empty()) return false;
  Rational inv = 1 / v.front().second;
  for (auto& e : v) e.second *= inv;
  pivots_.emplace(v.front().first, std::move(v));
  return true;
}

namespace {

// Sparse elimination choosing the column with fewest entries, then the
// shortest row in it, to keep fill-in down.
Index markowitz_rank(std::vector<SparseVec> rows) {
  std::unordered_map<Index, std::unordered_set<std::size_t>> col_rows;
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [c, x] : rows[r]) col_rows[c].insert(r);
  std::set<std::pair<std::size_t, Index>> queue;
  for (const auto& [c, rs] : col_rows) queue.emplace(rs.size(), c);
  auto recount = [&](Index c, std::size_t before) {
    queue.erase({before, c});
    std::size_t now = col_rows[c].size();
    if (now > 0) queue.emplace(now, c);
  };
  Index rank = 0;
  while (!queue.empty()) {
    auto [cnt, c] = *queue.begin();
    queue.erase(queue.begin());
    auto& rs = col_rows[c];
    std::size_t piv = *rs.begin();
    for (std::size_t r : rs)
      if (rows[r].size() < rows[piv].size() || (rows[r].size() == rows[piv].size() && r < piv)) piv = r;
    ++rank;
    SparseVec p = std::move(rows[piv]);
    rows[piv].clear();
    for (const auto& [cc, x] : p) {
      if (cc == c) continue;
      std::size_t before = col_rows[cc].size();
      col_rows[cc].erase(piv);
      recount(cc, before);
    }
    Rational pc;
    for (const auto& [cc, x] : p)
      if (cc == c) pc = x;
    std::vector<std::size_t> others(rs.begin(), rs.end());
    rs.clear();
    for (std::size_t r : others) {
      if (r == piv) continue;
      SparseVec& v = rows[r];
      Rational f;
      for (const auto& [cc, x] : v)
        if (cc == c) f = -x / pc;
      // merge, tracking entries that appear or cancel
      SparseVec out;
      out.reserve(v.size() + p.size());
      std::size_t i = 0, j = 0;
      while (i < v.size() || j < p.size()) {
        if (j == p.size() || (i < v.size() && v[i].first < p[j].first)) {
          out.push_back(std::move(v[i++]));
        } else if (i == v.size() || p[j].first < v[i].first) {
          Index cc = p[j].first;
          out.emplace_back(cc, f * p[j].second);
          ++j;
          std::size_t before = col_rows[cc].size();
          col_rows[cc].insert(r);
          recount(cc, before);
        } else {
          Index cc = v[i].first;
          Rational y = v[i].second + f * p[j].second;
          ++i;
          ++j;
          if (y != 0) {
            out.emplace_back(cc, std::move(y));
          } else if (cc != c) {
            std::size_t before = col_rows[cc].size();
            col_rows[cc].erase(r);
            recount(cc, before);
          }
        }
      }
      v = std::move(out);
    }
  }
  return rank;
}

}  // namespace

Index span_rank(const std::vector<SparseVec>& vs) { return markowitz_rank(vs); }

Index span_rank(const std::vector<SparseVec>& a, const std::vector<SparseVec>& b) {
  std::vector<SparseVec> all = a;
  all.insert(all.end(), b.begin(), b.end());
  return markowitz_rank(std::move(all));
}

std::vector<SparseVec> relations_among(const std::vector<SparseVec>& vs) {
  // Tracked elimination: each stored row carries the combination producing it.
  std::map<Index, std::pair<SparseVec, SparseVec>> piv;
  std::vector<SparseVec> rels;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    SparseVec v = vs[i];
    SparseVec comb{{static_cast<Index>(i), Rational(1)}};
    while (!v.empty()) {
      auto it = piv.find(v.front().first);
      if (it == piv.end()) break;
      Rational f = -v.front().second;
      axpy(v, f, it->second.first);
      axpy(comb, f, it->second.second);
    }
    if (v.empty()) {
      rels.push_back(std::move(comb));
      continue;
    }
    Rational inv = 1 / v.front().second;
    for (auto& e : v) e.second *= inv;
    for (auto& e : comb) e.second *= inv;
    Index lead = v.front().first;
    piv.emplace(lead, std::make_pair(std::move(v), std::move(comb)));
  }
  return rels;
}

}  // namespace cyclo
