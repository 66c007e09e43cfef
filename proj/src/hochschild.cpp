#include "cyclo/hochschild.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace cyclo {

namespace {

void add_to(std::map<Key, Rational>& out, const Key& k, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = out.emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) out.erase(it);
  }
}

// Columns of A applied after columns of B: images of (A∘B) on the basis.
std::vector<SparseVec> compose_columns(const std::vector<SparseVec>& a, const std::vector<SparseVec>& b) {
  std::vector<SparseVec> out;
  out.reserve(b.size());
  for (const auto& col : b) {
    SparseVec acc;
    for (const auto& [i, x] : col) axpy(acc, x, a[static_cast<std::size_t>(i)]);
    out.push_back(std::move(acc));
  }
  return out;
}

bool all_zero(const std::vector<SparseVec>& cols) {
  return std::all_of(cols.begin(), cols.end(), [](const SparseVec& v) { return v.empty(); });
}

int sign(int e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace

const std::vector<SparseVec>& MixedComplex::B(int n) const {
  static const std::vector<SparseVec> empty;
  auto it = connes.find(n);
  return it == connes.end() ? empty : it->second;
}

MixedIdentityReport check_mixed_identities(const MixedComplex& m) {
  MixedIdentityReport r;
  const ChainComplex& c = m.chains;
  std::ostringstream msg;
  for (int n = c.lo(); n <= c.hi(); ++n) {
    if (n - 2 >= c.lo() && !all_zero(compose_columns(c.boundary(n - 1), c.boundary(n)))) {
      r.b_squared = false;
      msg << "b^2 != 0 on C_" << n << "; ";
    }
    if (n + 2 <= c.hi() && m.connes.count(n) && m.connes.count(n + 1) &&
        !all_zero(compose_columns(m.B(n + 1), m.B(n)))) {
      r.B_squared = false;
      msg << "B^2 != 0 on C_" << n << "; ";
    }
    if (n + 1 <= c.hi() && m.connes.count(n)) {
      auto bB = compose_columns(c.boundary(n + 1), m.B(n));
      if (n - 1 >= c.lo()) {
        auto Bb = compose_columns(m.B(n - 1), c.boundary(n));
        for (std::size_t i = 0; i < bB.size(); ++i) bB[i] = add(bB[i], Bb[i]);
      }
      if (!all_zero(bB)) {
        r.anticommute = false;
        msg << "bB + Bb != 0 on C_" << n << "; ";
      }
    }
  }
  r.message = msg.str();
  return r;
}

// ---------------------------------------------------------------------------

BarComplex::BarComplex(const FpAlgebra& a, const BarOptions& opt)
    : alg_(std::make_shared<const FpAlgebra>(a)), opt_(opt) {
  if (opt_.max_degree < 0) throw std::invalid_argument("bar degree cap must be nonnegative");
  if (opt_.weight && !a.weights()) throw std::invalid_argument("weight filter requires algebra weights");
  complete_ = opt_.weight && positively_graded(a);
  if (complete_) {
    // Every nonconstant factor has weight >= its degree >= 1.
    opt_.trunc = std::max(0, *opt_.weight);
    opt_.max_degree = std::max(opt_.max_degree, opt_.trunc);
  }
  if (opt_.trunc < 0) throw std::invalid_argument("truncation must be nonnegative");

  monomials_ = a.monomial_basis(opt_.trunc).monomials;
  for (std::size_t i = 0; i < monomials_.size(); ++i) ids_.emplace(monomials_[i], static_cast<int>(i));
  std::vector<int> deg(monomials_.size()), wt(monomials_.size(), 0);
  for (std::size_t i = 0; i < monomials_.size(); ++i) {
    deg[i] = total_degree(monomials_[i]);
    if (a.weights()) wt[i] = a.weight(monomials_[i]);
  }
  if (monomials_.empty() || deg[0] != 0) throw std::invalid_argument("zero ring has no bar complex");

  int k = opt_.max_degree;
  ChainComplex c(0, k);
  Key cur;
  std::function<void(int, int, int)> rec = [&](int n, int budget, int w) {
    if (static_cast<int>(cur.size()) == n + 1) {
      if (!opt_.weight || w == *opt_.weight) c.basis(n).add(cur);
      return;
    }
    std::size_t first = cur.empty() ? 0 : 1;
    for (std::size_t i = first; i < monomials_.size() && deg[i] <= budget; ++i) {
      cur.push_back(static_cast<int>(i));
      rec(n, budget - deg[i], w + wt[i]);
      cur.pop_back();
    }
  };
  for (int n = 0; n <= k; ++n) rec(n, opt_.trunc, 0);

  for (int n = 0; n <= k; ++n) {
    std::vector<SparseVec> bimgs, Bimgs;
    for (const auto& key : std::as_const(c).basis(n).keys()) {
      if (n < k) {
        std::vector<std::pair<Index, Rational>> e;
        for (const auto& [t, x] : B_of(key)) {
          auto j = std::as_const(c).basis(n + 1).find(t);
          if (!j) throw std::logic_error("B left the truncation");
          e.emplace_back(*j, x);
        }
        Bimgs.push_back(make_sparse(std::move(e)));
      }
    }
    if (n > 0) {
      for (const auto& key : std::as_const(c).basis(n).keys()) {
        std::vector<std::pair<Index, Rational>> e;
        for (const auto& [t, x] : b_of(key)) {
          auto j = std::as_const(c).basis(n - 1).find(t);
          if (!j) throw std::logic_error("b left the truncation");
          e.emplace_back(*j, x);
        }
        bimgs.push_back(make_sparse(std::move(e)));
      }
      c.set_boundary(n, std::move(bimgs));
    }
    if (n < k) mixed_.connes[n] = std::move(Bimgs);
  }
  if (complete_)
    c.set_certified(0, k);
  else
    c.set_certified(0, k - 1);
  mixed_.chains = std::move(c);
}

std::optional<int> BarComplex::monomial_id(const Monomial& m) const {
  auto it = ids_.find(m);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

int BarComplex::certified_top() const { return complete_ ? opt_.max_degree : opt_.max_degree - 1; }

std::map<Key, Rational> BarComplex::b_of(const Key& k) const {
  std::map<Key, Rational> out;
  int n = static_cast<int>(k.size()) - 1;
  auto merge = [&](int i, int j, int pos, const Key& rest_before, const Key& rest_after, int s) {
    const Polynomial& prod = alg_->mul_standard(monomials_[static_cast<std::size_t>(k[i])],
                                                monomials_[static_cast<std::size_t>(k[j])]);
    for (const auto& [m, x] : prod.terms()) {
      if (pos > 0 && total_degree(m) == 0) continue;
      auto id = monomial_id(m);
      if (!id) throw std::logic_error("product left the monomial list");
      Key t = rest_before;
      t.push_back(*id);
      t.insert(t.end(), rest_after.begin(), rest_after.end());
      add_to(out, t, x * s);
    }
  };
  for (int i = 0; i < n; ++i) {
    Key before(k.begin(), k.begin() + i);
    Key after(k.begin() + i + 2, k.end());
    merge(i, i + 1, i, before, after, sign(i));
  }
  if (n > 0) {
    Key after(k.begin() + 1, k.begin() + n);
    merge(n, 0, 0, Key{}, after, sign(n));
  }
  return out;
}

std::map<Key, Rational> BarComplex::B_of(const Key& k) const {
  std::map<Key, Rational> out;
  if (k.empty() || total_degree(monomials_[static_cast<std::size_t>(k[0])]) == 0) return out;
  int n = static_cast<int>(k.size()) - 1;
  for (int i = 0; i <= n; ++i) {
    Key t{0};
    t.insert(t.end(), k.begin() + i, k.end());
    t.insert(t.end(), k.begin(), k.begin() + i);
    add_to(out, t, Rational(sign(n * i)));
  }
  return out;
}

SparseVec BarComplex::encode(const std::map<Key, Rational>& chain) const {
  std::vector<std::pair<Index, Rational>> e;
  for (const auto& [t, x] : chain) {
    int n = static_cast<int>(t.size()) - 1;
    if (!chains().in_window(n)) throw std::out_of_range("chain outside the bar degree window");
    auto j = chains().basis(n).find(t);
    if (!j) throw std::out_of_range("chain outside the truncation: " + format(t));
    e.emplace_back(*j, x);
  }
  return make_sparse(std::move(e));
}

std::map<Key, Rational> BarComplex::tensor(const std::vector<Polynomial>& factors) const {
  std::map<Key, Rational> out;
  if (factors.empty()) return out;
  std::vector<Polynomial> nf;
  for (const auto& f : factors) nf.push_back(alg_->normal_form(f));
  Key cur;
  std::function<void(std::size_t, Rational)> rec = [&](std::size_t i, Rational c) {
    if (i == nf.size()) {
      add_to(out, cur, c);
      return;
    }
    for (const auto& [m, x] : nf[i].terms()) {
      if (i > 0 && total_degree(m) == 0) continue;
      auto id = monomial_id(m);
      if (!id) throw std::out_of_range("factor above the truncation");
      cur.push_back(*id);
      rec(i + 1, c * x);
      cur.pop_back();
    }
  };
  rec(0, Rational(1));
  return out;
}

std::string BarComplex::format(const Key& k) const {
  std::string s;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (i) s += " (x) ";
    s += alg_->format(Polynomial::monomial(monomials_[static_cast<std::size_t>(k[i])]).extended(alg_->nvars()));
  }
  return s;
}

BarComplex bar_complex(const FpAlgebra& a, const BarOptions& opt) {
  BarComplex bar(a, opt);
  auto rep = check_mixed_identities(bar.mixed());
  if (!rep.ok()) throw std::logic_error("mixed complex identities fail: " + rep.message);
  return bar;
}

StableDims hochschild_homology(const FpAlgebra& a, std::optional<int> weight, int lo, int hi, int trunc,
                               int persistence) {
  if (weight && positively_graded(a)) {
    BarComplex bar(a, {std::max(hi, 0), 0, weight});
    StableDims s;
    for (int n = lo; n <= hi; ++n) {
      s.dims[n] = bar.chains().in_window(n) ? homology(bar.chains(), n).dim : 0;
      s.stable[n] = true;
    }
    return s;
  }
  int k = std::max(hi, 0) + 1;
  return stable_homology([&](int t) { return BarComplex(a, {k, t, weight}).chains(); }, trunc, 2, lo, hi,
                         persistence);
}

// ---------------------------------------------------------------------------

bool smooth_by_presentation(const FpAlgebra& a) {
  const auto& rels = a.relations();
  std::size_t n = a.nvars();
  auto uses = [&](const Polynomial& p, std::size_t v) {
    for (const auto& [m, x] : p.terms())
      if (m[v] > 0) return true;
    return false;
  };
  for (std::size_t r = 0; r < rels.size(); ++r) {
    Polynomial p = rels[r] + Polynomial::constant(n, 1);
    if (p.is_zero()) return false;
    bool found = false;
    for (std::size_t v = 0; v < n && !found; ++v) {
      bool linear = std::all_of(p.terms().begin(), p.terms().end(), [&](const auto& t) { return t.first[v] == 1; });
      if (!linear) continue;
      bool elsewhere = false;
      for (std::size_t o = 0; o < rels.size(); ++o)
        if (o != r && uses(rels[o], v)) elsewhere = true;
      found = !elsewhere;
    }
    if (!found) return false;
  }
  return true;
}

std::map<Key, Rational> hkr_chain(const BarComplex& bar, const Form& w) {
  std::map<Key, Rational> out;
  std::size_t nv = bar.algebra().nvars();
  for (const auto& [idx, c] : w) {
    std::vector<std::size_t> vars;
    for (std::size_t i = 0; i < nv; ++i)
      if (idx.second & (1u << i)) vars.push_back(i);
    std::vector<std::size_t> perm(vars.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    do {
      int inv = 0;
      for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
          if (perm[i] > perm[j]) ++inv;
      std::vector<Polynomial> factors{Polynomial::monomial(idx.first).extended(nv)};
      for (auto p : perm) factors.push_back(Polynomial::variable(nv, vars[p]));
      for (const auto& [t, x] : bar.tensor(factors)) add_to(out, t, x * c * sign(inv));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

HkrMap hkr_map(const BarComplex& bar) {
  const FpAlgebra& a = bar.algebra();
  if (!smooth_by_presentation(a))
    throw std::invalid_argument("HKR map needs a smooth presentation (polynomial ring or Rabinowitsch localization)");
  const BarOptions& o = bar.options();
  DeRhamComplex dr = de_rham_complex(a, {o.trunc, o.weight});
  const ChainComplex& src = dr.complex();
  int top = std::min<int>(static_cast<int>(a.nvars()), o.max_degree);
  HkrMap h;
  h.source = ChainComplex(0, top);
  for (int p = 0; p <= top; ++p) {
    for (const auto& k : src.basis(-p).keys()) h.source.basis(p).add(k);
    h.source.set_boundary(p, std::vector<SparseVec>(static_cast<std::size_t>(h.source.dim(p))));
    h.source.set_relations(p, src.relations(-p));
    std::vector<SparseVec> imgs;
    for (const auto& k : src.basis(-p).keys()) imgs.push_back(bar.encode(hkr_chain(bar, {{form_index(k), Rational(1)}})));
    h.map.components[p] = std::move(imgs);
  }
  h.source.set_certified(0, std::min(top, bar.certified_top()));
  return h;
}

}  // namespace cyclo
