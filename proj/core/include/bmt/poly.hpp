#ifndef BMT_POLY_HPP
#define BMT_POLY_HPP

#include <algorithm>
#include <cctype>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bmt/monomial.hpp"

namespace bmt {

/// Sparse multivariate polynomial: terms sorted descending in grevlex,
/// no zero coefficients stored.
template <class F>
struct Poly {
  using Elem = typename F::Elem;
  struct Term {
    Monomial m;
    Elem c;
  };

  std::vector<Term> t;

  bool is_zero() const { return t.empty(); }
  const Term& lt() const {
    if (t.empty()) throw std::domain_error("leading term of zero polynomial");
    return t.front();
  }
  const Monomial& lm() const { return lt().m; }
  std::uint32_t degree() const { return t.empty() ? 0 : t.front().m.deg; }
};

/// Sorts, merges equal monomials, and drops zeros.
template <class F>
Poly<F> make_poly(std::vector<typename Poly<F>::Term> terms, const F& f) {
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    return grevlex_less(b.m, a.m);  // descending
  });
  Poly<F> p;
  for (auto& term : terms) {
    if (!p.t.empty() && p.t.back().m == term.m) {
      p.t.back().c = f.add(p.t.back().c, term.c);
      if (f.is_zero(p.t.back().c)) p.t.pop_back();
    } else if (!f.is_zero(term.c)) {
      p.t.push_back(std::move(term));
    }
  }
  return p;
}

template <class F>
Poly<F> poly_const(const typename F::Elem& c, int nvars, const F& f) {
  Poly<F> p;
  if (!f.is_zero(c)) p.t.push_back({Monomial(nvars), c});
  return p;
}

template <class F>
Poly<F> poly_var(int nvars, int i, const F& f) {
  Poly<F> p;
  p.t.push_back({Monomial::var(nvars, i), f.one()});
  return p;
}

/// f + (c * x^m) * g, the workhorse of division and S-polynomials.
template <class F>
Poly<F> poly_axpy(const Poly<F>& a, const typename F::Elem& c, const Monomial& m,
                  const Poly<F>& g, const F& f) {
  Poly<F> out;
  out.t.reserve(a.t.size() + g.t.size());
  size_t i = 0, j = 0;
  while (i < a.t.size() || j < g.t.size()) {
    if (j == g.t.size()) {
      out.t.push_back(a.t[i++]);
      continue;
    }
    Monomial gm = mono_mul(g.t[j].m, m);
    if (i == a.t.size()) {
      auto coeff = f.mul(c, g.t[j].c);
      if (!f.is_zero(coeff)) out.t.push_back({std::move(gm), coeff});
      ++j;
      continue;
    }
    if (a.t[i].m == gm) {
      auto coeff = f.add(a.t[i].c, f.mul(c, g.t[j].c));
      if (!f.is_zero(coeff)) out.t.push_back({std::move(gm), coeff});
      ++i;
      ++j;
    } else if (grevlex_less(gm, a.t[i].m)) {
      out.t.push_back(a.t[i++]);
    } else {
      auto coeff = f.mul(c, g.t[j].c);
      if (!f.is_zero(coeff)) out.t.push_back({std::move(gm), coeff});
      ++j;
    }
  }
  return out;
}

template <class F>
Poly<F> poly_add(const Poly<F>& a, const Poly<F>& b, const F& f) {
  if (b.is_zero()) return a;
  return poly_axpy(a, f.one(), Monomial(b.t.front().m.nvars()), b, f);
}

template <class F>
Poly<F> poly_sub(const Poly<F>& a, const Poly<F>& b, const F& f) {
  if (b.is_zero()) return a;
  return poly_axpy(a, f.neg(f.one()), Monomial(b.t.front().m.nvars()), b, f);
}

template <class F>
Poly<F> poly_scale(Poly<F> a, const typename F::Elem& c, const F& f) {
  if (f.is_zero(c)) return Poly<F>{};
  for (auto& term : a.t) term.c = f.mul(term.c, c);
  return a;
}

template <class F>
Poly<F> poly_mul(const Poly<F>& a, const Poly<F>& b, const F& f) {
  Poly<F> acc;
  for (const auto& term : a.t) acc = poly_axpy(acc, term.c, term.m, b, f);
  return acc;
}

template <class F>
Poly<F> poly_monic(Poly<F> a, const F& f) {
  if (a.is_zero() || f.is_one(a.lt().c)) return a;
  const auto inv = f.inv(a.lt().c);
  return poly_scale(std::move(a), inv, f);
}

template <class F>
bool poly_equal(const Poly<F>& a, const Poly<F>& b, const F& f) {
  if (a.t.size() != b.t.size()) return false;
  for (size_t i = 0; i < a.t.size(); ++i)
    if (!(a.t[i].m == b.t[i].m) || !f.eq(a.t[i].c, b.t[i].c)) return false;
  return true;
}

/// Remainder of multivariate division by `basis`: no remaining term is
/// divisible by any basis leading monomial. Divisors are scanned in order.
template <class F>
Poly<F> normal_form(Poly<F> h, std::span<const Poly<F>> basis, const F& f) {
  Poly<F> rem;
  while (!h.is_zero()) {
    bool reduced = false;
    for (const auto& g : basis) {
      if (g.is_zero()) continue;
      if (divides(g.lm(), h.lm())) {
        const auto c = f.neg(f.div(h.lt().c, g.lt().c));
        h = poly_axpy(h, c, mono_div(h.lm(), g.lm()), g, f);
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      rem.t.push_back(h.t.front());
      h.t.erase(h.t.begin());
    }
  }
  return rem;
}

template <class F>
Poly<F> normal_form(const Poly<F>& h, const std::vector<Poly<F>>& basis, const F& f) {
  return normal_form(h, std::span<const Poly<F>>(basis), f);
}

/// S-polynomial: the leading terms cancel against their lcm.
template <class F>
Poly<F> spoly(const Poly<F>& a, const Poly<F>& b, const F& f) {
  const Monomial l = mono_lcm(a.lm(), b.lm());
  Poly<F> lhs = poly_axpy(Poly<F>{}, f.inv(a.lt().c), mono_div(l, a.lm()), a, f);
  return poly_axpy(lhs, f.neg(f.inv(b.lt().c)), mono_div(l, b.lm()), b, f);
}

// --- canonical text form -----------------------------------------------

template <class F>
std::string poly_to_string(const Poly<F>& p, const VarTable& vars, const F& f) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& term : p.t) {
    std::string c = f.str(term.c);
    bool negative = !c.empty() && c[0] == '-';
    if (negative) c = c.substr(1);
    if (first) {
      if (negative) os << "-";
      first = false;
    } else {
      os << (negative ? " - " : " + ");
    }
    std::string mono;
    for (int i = 0; i < term.m.nvars(); ++i) {
      if (!term.m.e[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += vars.names[i];
      if (term.m.e[i] > 1) mono += "^" + std::to_string(term.m.e[i]);
    }
    if (mono.empty()) {
      os << c;
    } else if (c == "1") {
      os << mono;
    } else {
      os << c << "*" << mono;
    }
  }
  return os.str();
}

/// Parses the canonical form: signed integer coefficients, '*' products,
/// '^' powers, variable names from the table.
template <class F>
Poly<F> poly_parse(const std::string& text, const VarTable& vars, const F& f) {
  std::vector<typename Poly<F>::Term> terms;
  size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& why) -> void {
    throw std::invalid_argument("polynomial parse error at " + std::to_string(pos) + ": " + why);
  };

  skip();
  bool first = true;
  while (pos < text.size()) {
    long long sign = 1;
    skip();
    bool saw_sign = false;
    while (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      if (text[pos] == '-') sign = -sign;
      saw_sign = true;
      ++pos;
      skip();
    }
    if (!first && !saw_sign) fail("expected '+' or '-'");
    typename F::Elem coeff = f.from_int(sign);
    Monomial m(vars.size());
    bool saw_factor = false;
    while (true) {
      skip();
      if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        coeff = f.mul(coeff, f.from_int(std::stoll(text.substr(start, pos - start))));
        saw_factor = true;
      } else if (pos < text.size() &&
                 (std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
        size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
          ++pos;
        const std::string name = text.substr(start, pos - start);
        const int vi = vars.find(name);
        if (vi < 0) fail("unknown variable '" + name + "'");
        std::uint32_t power = 1;
        if (pos < text.size() && text[pos] == '^') {
          ++pos;
          size_t ps = pos;
          while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
          if (ps == pos) fail("expected exponent");
          power = static_cast<std::uint32_t>(std::stoul(text.substr(ps, pos - ps)));
        }
        m.e[vi] += power;
        saw_factor = true;
      } else {
        break;
      }
      skip();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        continue;
      }
      break;
    }
    if (!saw_factor) fail("empty term");
    m.recompute_deg();
    terms.push_back({std::move(m), coeff});
    first = false;
    skip();
  }
  if (terms.empty()) fail("empty polynomial");
  return make_poly<F>(std::move(terms), f);
}

}  // namespace bmt

#endif
