#include "cyclo/fpalgebra.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cyclo {

int total_degree(const Monomial& m) {
  int d = 0;
  for (int e : m) d += e;
  return d;
}

bool divides(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Monomial mono_div(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Monomial mono_lcm(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

bool DegRevLexGreater::operator()(const Monomial& a, const Monomial& b) const {
  int da = total_degree(a), db = total_degree(b);
  if (da != db) return da > db;
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

// ---------------------------------------------------------------------------

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Monomial(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t i) {
  Monomial m(nvars, 0);
  m.at(i) = 1;
  return monomial(m);
}

Polynomial Polynomial::monomial(const Monomial& m, const Rational& c) {
  Polynomial p(m.size());
  p.add_term(m, c);
  return p;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, total_degree(m));
  return d;
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  if (m.size() != nvars_) throw std::invalid_argument("Polynomial: monomial arity mismatch");
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (nvars_ == 0 && terms_.empty()) nvars_ = o.nvars_;
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (nvars_ == 0 && terms_.empty()) nvars_ = o.nvars_;
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, x] : terms_) x *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial r(std::max(a.nvars_, b.nvars_));
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(mono_mul(ma, mb), ca * cb);
  return r;
}

Polynomial Polynomial::times_monomial(const Monomial& m, const Rational& c) const {
  Polynomial r(nvars_);
  if (c == 0) return r;
  for (const auto& [t, x] : terms_) r.terms_.emplace_hint(r.terms_.end(), mono_mul(t, m), x * c);
  return r;
}

Polynomial Polynomial::extended(std::size_t nvars) const {
  Polynomial r(nvars);
  for (const auto& [m, c] : terms_) {
    Monomial e = m;
    e.resize(nvars, 0);
    r.add_term(e, c);
  }
  return r;
}

Polynomial Polynomial::pow(int e) const {
  if (e < 0) throw std::invalid_argument("Polynomial::pow: negative exponent");
  Polynomial r = constant(nvars_, 1);
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

bool Polynomial::is_homogeneous(const std::vector<int>& weights) const {
  std::optional<int> w;
  for (const auto& [m, c] : terms_) {
    int x = 0;
    for (std::size_t i = 0; i < m.size(); ++i) x += weights.at(i) * m[i];
    if (w && *w != x) return false;
    w = x;
  }
  return true;
}

// --- Parsing and printing ----------------------------------------------------

namespace {

class Parser {
public:
  Parser(const std::string& s, const std::vector<std::string>& vars) : s_(s), vars_(vars) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

private:
  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream os;
    os << "polynomial parse error at position " << pos_ << ": " << what << " in '" << s_ << "'";
    throw std::invalid_argument(os.str());
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::string digits() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return s_.substr(start, pos_ - start);
  }
  int exponent() {
    auto d = digits();
    if (d.size() > 6) fail("exponent too large");
    return std::stoi(d);
  }
  Polynomial expr() {
    Polynomial p(vars_.size());
    bool neg = false;
    if (eat('-')) neg = true;
    else eat('+');
    Polynomial t = term();
    if (neg) t *= Rational(-1);
    p += t;
    for (;;) {
      if (eat('+')) p += term();
      else if (eat('-')) p -= term();
      else break;
    }
    return p;
  }
  Polynomial term() {
    Polynomial p = factor();
    while (eat('*')) p = p * factor();
    skip();
    if (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '('))
      fail("juxtaposition is not multiplication; use '*'");
    return p;
  }
  Polynomial factor() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    Polynomial base(vars_.size());
    if (c == '(') {
      ++pos_;
      base = expr();
      if (!eat(')')) fail("expected ')'");
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num(digits());
      mpz_class den = 1;
      if (eat('/')) {
        den = mpz_class(digits());
        if (den == 0) fail("zero denominator");
      }
      Rational q(num, den);
      q.canonicalize();
      return Polynomial::constant(vars_.size(), q);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      auto it = std::find(vars_.begin(), vars_.end(), name);
      if (it == vars_.end()) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      base = Polynomial::variable(vars_.size(), static_cast<std::size_t>(it - vars_.begin()));
    } else {
      fail(std::string("unexpected '") + c + "'");
    }
    if (eat('^')) return base.pow(exponent());
    return base;
  }

  const std::string& s_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& vars) {
  return Parser(text, vars).parse();
}

std::string to_string(const Polynomial& p, const std::vector<std::string>& vars) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Rational a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool constant = total_degree(m) == 0;
    bool wrote = false;
    if (a != 1 || constant) {
      os << to_string(a);
      wrote = true;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (wrote) os << "*";
      os << vars.at(i);
      if (m[i] > 1) os << "^" << m[i];
      wrote = true;
    }
  }
  return os.str();
}

// --- Gröbner bases -----------------------------------------------------------

Polynomial reduce(const Polynomial& p, const std::vector<Polynomial>& g) {
  Polynomial rest = p, out(p.nvars());
  while (!rest.is_zero()) {
    const Monomial lm = rest.leading_monomial();
    const Rational lc = rest.leading_coefficient();
    const Polynomial* div = nullptr;
    for (const auto& h : g)
      if (divides(h.leading_monomial(), lm)) {
        div = &h;
        break;
      }
    if (div) {
      rest -= div->times_monomial(mono_div(lm, div->leading_monomial()), lc / div->leading_coefficient());
    } else {
      out.add_term(lm, lc);
      rest.add_term(lm, -lc);
    }
  }
  return out;
}

namespace {

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
  Monomial l = mono_lcm(f.leading_monomial(), g.leading_monomial());
  return f.times_monomial(mono_div(l, f.leading_monomial()), 1 / f.leading_coefficient()) -
         g.times_monomial(mono_div(l, g.leading_monomial()), 1 / g.leading_coefficient());
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] > 0) return false;
  return true;
}

Polynomial monic(Polynomial p) {
  if (p.is_zero()) return p;
  Rational inv = 1 / p.leading_coefficient();
  return p *= inv;
}

}  // namespace

bool buchberger_criterion(const std::vector<Polynomial>& g) {
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j)
      if (!reduce(s_polynomial(g[i], g[j]), g).is_zero()) return false;
  return true;
}

std::vector<Polynomial> groebner(const std::vector<Polynomial>& relations, MonomialOrder) {
  std::vector<Polynomial> g;
  for (const auto& r : relations) {
    auto h = reduce(r, g);
    if (!h.is_zero()) g.push_back(monic(h));
  }
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) pairs.emplace(i, j);
  while (!pairs.empty()) {
    // Normal selection strategy: smallest lcm first.
    auto best = pairs.begin();
    Monomial best_lcm = mono_lcm(g[best->first].leading_monomial(), g[best->second].leading_monomial());
    for (auto it = std::next(pairs.begin()); it != pairs.end(); ++it) {
      Monomial l = mono_lcm(g[it->first].leading_monomial(), g[it->second].leading_monomial());
      if (DegRevLexGreater{}(best_lcm, l)) {
        best = it;
        best_lcm = l;
      }
    }
    auto [i, j] = *best;
    pairs.erase(best);
    if (coprime(g[i].leading_monomial(), g[j].leading_monomial())) continue;
    auto h = reduce(s_polynomial(g[i], g[j]), g);
    if (h.is_zero()) continue;
    g.push_back(monic(h));
    for (std::size_t k = 0; k + 1 < g.size(); ++k) pairs.emplace(k, g.size() - 1);
  }
  // Minimize, then interreduce.
  std::vector<Polynomial> minimal;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
      if (i == j) continue;
      if (divides(g[j].leading_monomial(), g[i].leading_monomial()) &&
          (g[j].leading_monomial() != g[i].leading_monomial() || j < i))
        redundant = true;
    }
    if (!redundant) minimal.push_back(g[i]);
  }
  std::vector<Polynomial> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Polynomial> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    reduced.push_back(monic(reduce(minimal[i], others)));
  }
  std::sort(reduced.begin(), reduced.end(), [](const Polynomial& a, const Polynomial& b) {
    return DegRevLexGreater{}(b.leading_monomial(), a.leading_monomial());
  });
  return reduced;
}

// --- FpAlgebra -----------------------------------------------------------------

FpAlgebra::FpAlgebra(std::vector<std::string> variables, std::vector<Polynomial> relations, MonomialOrder order)
    : variables_(std::move(variables)), order_(order) {
  for (auto& r : relations) {
    if (r.nvars() != variables_.size()) r = r.extended(variables_.size());
    if (!r.is_zero()) relations_.push_back(std::move(r));
  }
  groebner_ = groebner(relations_, order_);
}

FpAlgebra::FpAlgebra(const FpAlgebra& o)
    : variables_(o.variables_),
      relations_(o.relations_),
      groebner_(o.groebner_),
      order_(o.order_),
      weights_(o.weights_) {}

FpAlgebra& FpAlgebra::operator=(const FpAlgebra& o) {
  if (this == &o) return *this;
  variables_ = o.variables_;
  relations_ = o.relations_;
  groebner_ = o.groebner_;
  order_ = o.order_;
  weights_ = o.weights_;
  std::lock_guard lock(cache_mutex_);
  mul_cache_.clear();
  return *this;
}

FpAlgebra FpAlgebra::parse(std::vector<std::string> variables, const std::vector<std::string>& relations) {
  std::vector<Polynomial> rel;
  for (const auto& r : relations) rel.push_back(parse_polynomial(r, variables));
  return FpAlgebra(std::move(variables), std::move(rel));
}

Polynomial FpAlgebra::normal_form(const Polynomial& p) const {
  if (p.nvars() != nvars() && !p.is_zero()) throw std::invalid_argument("normal_form: variable count mismatch");
  if (p.is_zero()) return zero();
  return reduce(p, groebner_);
}

Polynomial FpAlgebra::multiply(const Polynomial& a, const Polynomial& b) const {
  Polynomial r = zero();
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      if (is_standard(ma) && is_standard(mb)) {
        const Polynomial& m = mul_standard(ma, mb);
        for (const auto& [m2, c2] : m.terms()) r.add_term(m2, ca * cb * c2);
      } else {
        r += normal_form(Polynomial::monomial(mono_mul(ma, mb), ca * cb));
      }
    }
  return r;
}

bool FpAlgebra::is_standard(const Monomial& m) const {
  for (const auto& g : groebner_)
    if (divides(g.leading_monomial(), m)) return false;
  return true;
}

const Polynomial& FpAlgebra::mul_standard(const Monomial& a, const Monomial& b) const {
  std::lock_guard lock(cache_mutex_);
  auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
  auto it = mul_cache_.find(key);
  if (it != mul_cache_.end()) return it->second;
  Polynomial nf = reduce(Polynomial::monomial(mono_mul(a, b)), groebner_);
  return mul_cache_.emplace(std::move(key), std::move(nf)).first->second;
}

Polynomial FpAlgebra::parse_element(const std::string& text) const { return parse_polynomial(text, variables_); }

bool FpAlgebra::is_zero_ring() const { return normal_form(one()).is_zero(); }

bool FpAlgebra::is_finite_dimensional() const {
  for (std::size_t i = 0; i < nvars(); ++i) {
    bool found = false;
    for (const auto& g : groebner_) {
      const auto& m = g.leading_monomial();
      if (m[i] > 0 && total_degree(m) == m[i]) found = true;
    }
    if (!found) return false;
  }
  return true;
}

void FpAlgebra::set_weights(std::vector<int> w) {
  if (w.size() != nvars()) throw std::invalid_argument("set_weights: one weight per variable required");
  if (!relations_homogeneous(w)) throw std::invalid_argument("set_weights: relations are not weight-homogeneous");
  weights_ = std::move(w);
}

bool FpAlgebra::relations_homogeneous(const std::vector<int>& w) const {
  for (const auto& g : groebner_)
    if (!g.is_homogeneous(w)) return false;
  return true;
}

int FpAlgebra::weight(const Monomial& m) const {
  if (!weights_) throw std::logic_error("FpAlgebra::weight: no weights set");
  int x = 0;
  for (std::size_t i = 0; i < m.size(); ++i) x += (*weights_)[i] * m[i];
  return x;
}

std::vector<Monomial> monomials_of_degree(std::size_t n, int d) {
  std::vector<Monomial> out;
  if (n == 0) {
    if (d == 0) out.push_back({});
    return out;
  }
  Monomial m(n, 0);
  // Enumerate compositions of d into n parts.
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == n) {
      m[i] = left;
      out.push_back(m);
      return;
    }
    for (int e = left; e >= 0; --e) {
      m[i] = e;
      self(self, i + 1, left - e);
    }
  };
  rec(rec, 0, d);
  return out;
}

TruncatedBasis FpAlgebra::monomial_basis(int maxdeg) const {
  TruncatedBasis tb;
  tb.max_degree = maxdeg;
  for (int d = 0; d <= maxdeg; ++d) {
    auto ms = monomials_of_degree(nvars(), d);
    std::sort(ms.begin(), ms.end(), [](const Monomial& a, const Monomial& b) { return DegRevLexGreater{}(b, a); });
    for (auto& m : ms)
      if (is_standard(m)) tb.monomials.push_back(std::move(m));
  }
  return tb;
}

FpAlgebra localization(const FpAlgebra& r, const Polynomial& f, const std::string& tname) {
  std::size_t n = r.nvars();
  auto vars = r.variables();
  std::string name = tname;
  if (name.empty()) {
    name = "t";
    int k = 0;
    while (std::find(vars.begin(), vars.end(), name) != vars.end()) name = "t" + std::to_string(++k);
  }
  if (std::find(vars.begin(), vars.end(), name) != vars.end())
    throw std::invalid_argument("localization: variable name already in use");
  vars.push_back(name);
  std::vector<Polynomial> rel;
  for (const auto& g : r.relations()) rel.push_back(g.extended(n + 1));
  Polynomial t = Polynomial::variable(n + 1, n);
  rel.push_back(t * f.extended(n + 1) - Polynomial::constant(n + 1, 1));
  FpAlgebra out(std::move(vars), std::move(rel), r.order());
  if (r.weights() && !f.is_zero() && f.is_homogeneous(*r.weights())) {
    auto w = *r.weights();
    int wf = r.weight(f.leading_monomial());
    w.push_back(-wf);
    if (out.relations_homogeneous(w)) out.set_weights(std::move(w));
  }
  return out;
}

}  // namespace cyclo
