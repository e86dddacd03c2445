#include "wm/multipoly.hpp"

#include <algorithm>
#include <numeric>

#include "wm/linalg.hpp"

namespace wm {

namespace {

int degree_of(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

void check_same_vars(const MultiPoly& a, const MultiPoly& b) {
  if (a.vars() != b.vars()) throw std::invalid_argument("polynomials over different variable lists");
}

}  // namespace

bool GradedLex::operator()(const Exponent& a, const Exponent& b) const {
  int da = degree_of(a), db = degree_of(b);
  if (da != db) return da < db;
  return a > b;
}

MultiPoly::MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

MultiPoly MultiPoly::constant(const std::vector<std::string>& vars, const Rat& c) {
  MultiPoly p(vars);
  p.add_term(Exponent(vars.size(), 0), c);
  return p;
}

MultiPoly MultiPoly::variable(const std::vector<std::string>& vars, std::size_t i) {
  MultiPoly p(vars);
  Exponent e(vars.size(), 0);
  e.at(i) = 1;
  p.add_term(e, 1);
  return p;
}

MultiPoly MultiPoly::linear(const std::vector<std::string>& vars, const RatVec& coeffs, const Rat& c0) {
  if (coeffs.size() != vars.size()) throw std::invalid_argument("linear: coefficient count mismatch");
  MultiPoly p = constant(vars, c0);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    Exponent e(vars.size(), 0);
    e[i] = 1;
    p.add_term(e, coeffs[i]);
  }
  return p;
}

void MultiPoly::add_term(const Exponent& e, const Rat& c) {
  if (e.size() != vars_.size()) throw std::invalid_argument("exponent length mismatch");
  if (sgn(c) == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (sgn(it->second) == 0) terms_.erase(it);
}

Rat MultiPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rat(0) : it->second;
}

bool MultiPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && degree_of(terms_.begin()->first) == 0); }

int MultiPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, degree_of(e));
  return d;
}

int MultiPoly::degree_in(const std::vector<int>& var_idx) const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int i : var_idx) s += e.at(static_cast<std::size_t>(i));
    d = std::max(d, s);
  }
  return d;
}

Rat MultiPoly::eval(const RatVec& x) const {
  if (x.size() != vars_.size()) throw std::invalid_argument("eval: point dimension mismatch");
  Rat s = 0;
  for (const auto& [e, c] : terms_) {
    Rat t = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int p = 0; p < e[i]; ++p) t *= x[i];
    s += t;
  }
  return s;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  check_same_vars(*this, o);
  MultiPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  check_same_vars(*this, o);
  MultiPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(vars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  check_same_vars(*this, o);
  MultiPoly r(vars_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      Exponent e(e1.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
      r.add_term(e, c1 * c2);
    }
  return r;
}

MultiPoly MultiPoly::operator*(const Rat& c) const {
  MultiPoly r(vars_);
  if (sgn(c) == 0) return r;
  for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
  return r;
}

MultiPoly MultiPoly::pow(int n) const {
  MultiPoly r = constant(vars_, 1);
  for (int i = 0; i < n; ++i) r = r * *this;
  return r;
}

bool MultiPoly::operator==(const MultiPoly& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }

bool MultiPoly::operator<(const MultiPoly& o) const {
  if (vars_ != o.vars_) return vars_ < o.vars_;
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  for (; a != terms_.end() && b != o.terms_.end(); ++a, ++b) {
    if (a->first != b->first) return GradedLex()(a->first, b->first);
    if (a->second != b->second) return a->second < b->second;
  }
  return a == terms_.end() && b != o.terms_.end();
}

MultiPoly MultiPoly::substitute(const std::vector<MultiPoly>& images) const {
  if (images.size() != vars_.size()) throw std::invalid_argument("substitute: image count mismatch");
  if (images.empty()) return *this;
  const auto& nv = images[0].vars();
  std::vector<std::vector<MultiPoly>> powers(images.size());
  MultiPoly r(nv);
  for (const auto& [e, c] : terms_) {
    MultiPoly t = constant(nv, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(constant(nv, 1));
      while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(pw.back() * images[i]);
      t = t * pw[static_cast<std::size_t>(e[i])];
    }
    r = r + t;
  }
  return r;
}

MultiPoly MultiPoly::partial_eval(const std::vector<std::optional<Rat>>& values) const {
  if (values.size() != vars_.size()) throw std::invalid_argument("partial_eval: size mismatch");
  MultiPoly r(vars_);
  for (const auto& [e, c] : terms_) {
    Rat t = c;
    Exponent ne = e;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!values[i]) continue;
      for (int p = 0; p < e[i]; ++p) t *= *values[i];
      ne[i] = 0;
    }
    r.add_term(ne, t);
  }
  return r;
}

std::optional<MultiPoly> MultiPoly::divide_linear(const MultiPoly& lin) const {
  check_same_vars(*this, lin);
  if (lin.total_degree() != 1) throw std::invalid_argument("divide_linear: divisor is not of degree 1");
  std::size_t v = vars_.size();
  for (std::size_t i = 0; i < vars_.size() && v == vars_.size(); ++i) {
    Exponent e(vars_.size(), 0);
    e[i] = 1;
    if (sgn(lin.coefficient(e)) != 0) v = i;
  }
  Exponent ev(vars_.size(), 0);
  ev[v] = 1;
  const Rat lead = lin.coefficient(ev);
  MultiPoly rest = lin;
  rest.add_term(ev, -lead);
  MultiPoly rem = *this;
  MultiPoly quot(vars_);
  while (true) {
    const Exponent* pick = nullptr;
    for (const auto& [e, c] : rem.terms_)
      if (e[v] > 0 && (!pick || e[v] > (*pick)[v])) pick = &e;
    if (!pick) break;
    Exponent m = *pick;
    Rat q = rem.coefficient(m) / lead;
    m[v] -= 1;
    quot.add_term(m, q);
    MultiPoly mono(vars_);
    mono.add_term(m, q);
    rem = rem - mono * lin;
  }
  if (!rem.is_zero()) return std::nullopt;
  return quot;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rat a = abs(c);
    bool neg = sgn(c) < 0;
    if (first)
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    std::string coef = is_integral(a) ? a.get_str() : "(" + a.get_str() + ")";
    if (mono.empty())
      s += coef;
    else if (a == 1)
      s += mono;
    else
      s += coef + "*" + mono;
  }
  return s;
}

nlohmann::json MultiPoly::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : terms_) terms.push_back({{"exp", e}, {"coef", c.get_str()}});
  return {{"vars", vars_}, {"terms", terms}, {"text", to_string()}};
}

MultiPoly MultiPoly::from_json(const nlohmann::json& j) {
  MultiPoly p(j.at("vars").get<std::vector<std::string>>());
  for (const auto& t : j.at("terms")) p.add_term(t.at("exp").get<Exponent>(), parse_rat(t.at("coef").get<std::string>()));
  return p;
}

std::vector<std::string> indexed_vars(const std::string& stem, int n) {
  std::vector<std::string> v;
  for (int i = 1; i <= n; ++i) v.push_back(stem + std::to_string(i));
  return v;
}

std::vector<std::string> lb_vars(int k) {
  auto v = indexed_vars("l", k - 1);
  auto b = indexed_vars("b", k - 1);
  v.insert(v.end(), b.begin(), b.end());
  return v;
}

std::vector<Exponent> monomials_within(std::size_t n, const DegreeBounds& bounds) {
  std::vector<int> cap(n, -1);
  for (std::size_t g = 0; g < bounds.groups.size(); ++g)
    for (int i : bounds.groups[g]) cap.at(static_cast<std::size_t>(i)) = bounds.group_max.at(g);
  for (auto& c : cap) {
    if (bounds.total_max >= 0) c = c < 0 ? bounds.total_max : std::min(c, bounds.total_max);
    if (c < 0) throw std::invalid_argument("monomials_within: unbounded variable");
  }
  std::vector<Exponent> out;
  Exponent e(n, 0);
  auto ok = [&]() {
    if (bounds.total_max >= 0 && degree_of(e) > bounds.total_max) return false;
    for (std::size_t g = 0; g < bounds.groups.size(); ++g) {
      int s = 0;
      for (int i : bounds.groups[g]) s += e[static_cast<std::size_t>(i)];
      if (s > bounds.group_max[g]) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      if (ok()) out.push_back(e);
      return;
    }
    for (int d = 0; d <= cap[i]; ++d) {
      e[i] = d;
      if (bounds.total_max >= 0 && degree_of(e) > bounds.total_max) break;
      self(self, i + 1);
    }
    e[i] = 0;
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(), GradedLex());
  return out;
}

MultiPoly fit_polynomial(const std::vector<std::string>& vars, const std::vector<Sample>& samples,
                         const DegreeBounds& bounds) {
  auto monos = monomials_within(vars.size(), bounds);
  if (samples.size() < monos.size())
    throw FitError(FitError::Kind::Underdetermined, "fit_polynomial: " + std::to_string(samples.size()) +
                                                        " samples for " + std::to_string(monos.size()) + " monomials");
  RatMat a(samples.size(), monos.size());
  RatVec b(samples.size());
  for (std::size_t r = 0; r < samples.size(); ++r) {
    const auto& x = samples[r].point;
    if (x.size() != vars.size()) throw std::invalid_argument("fit_polynomial: sample dimension mismatch");
    for (std::size_t c = 0; c < monos.size(); ++c) {
      Rat t = 1;
      for (std::size_t i = 0; i < x.size(); ++i)
        for (int p = 0; p < monos[c][i]; ++p) t *= x[i];
      a(r, c) = t;
    }
    b[r] = samples[r].value;
  }
  auto sol = solve_linear(a, b);
  if (!sol.feasible) throw FitError(FitError::Kind::Inconsistent, "fit_polynomial: samples admit no polynomial within bounds");
  if (!sol.kernel.empty())
    throw FitError(FitError::Kind::Underdetermined,
                   "fit_polynomial: fit is ambiguous (" + std::to_string(sol.kernel.size()) + " free directions)");
  MultiPoly p(vars);
  for (std::size_t c = 0; c < monos.size(); ++c) p.add_term(monos[c], sol.particular[c]);
  return p;
}

}  // namespace wm
