#ifndef BMT_GROEBNER_HPP
#define BMT_GROEBNER_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "bmt/poly.hpp"

namespace bmt {

struct ResourceCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BuchbergerOptions {
  std::uint64_t max_pair_reductions = 200000;
};

/// Reduced Groebner basis in grevlex plus the quotient-dimension data the
/// degree counts rely on. standard_monomials is set only when the leading
/// ideal contains a pure power of every variable.
template <class F>
struct GroebnerBasis {
  std::vector<Poly<F>> g;  // reduced: monic, leading terms an antichain
  int nvars = 0;
  bool zero_dimensional = false;
  std::optional<std::uint64_t> standard_monomials;
  std::uint64_t pair_reductions = 0;
};

namespace detail {

// Pure-power degree bound per variable from the leading terms, or nullopt.
template <class F>
std::optional<std::vector<std::uint32_t>> pure_power_bounds(const std::vector<Poly<F>>& g,
                                                            int nvars) {
  std::vector<std::uint32_t> bound(nvars, 0);
  for (const auto& p : g) {
    if (p.is_zero()) continue;
    const auto& m = p.lm();
    if (m.is_one()) return std::vector<std::uint32_t>(nvars, 0);  // unit ideal
    int var = -1;
    for (int i = 0; i < nvars; ++i)
      if (m.e[i]) {
        if (var >= 0) {
          var = -2;
          break;
        }
        var = i;
      }
    if (var >= 0 && (bound[var] == 0 || m.e[var] < bound[var])) bound[var] = m.e[var];
  }
  for (int i = 0; i < nvars; ++i)
    if (bound[i] == 0) return std::nullopt;
  return bound;
}

template <class F>
std::uint64_t count_standard_monomials(const std::vector<Poly<F>>& g,
                                       const std::vector<std::uint32_t>& bound) {
  const int nvars = static_cast<int>(bound.size());
  std::vector<Monomial> lts;
  for (const auto& p : g)
    if (!p.is_zero()) lts.push_back(p.lm());

  std::uint64_t count = 0;
  Monomial cur(nvars);
  // depth-first over exponents below the pure-power box, pruning on the
  // first divisor hit (larger exponents stay divisible)
  auto rec = [&](auto&& self, int var) -> void {
    if (var == nvars) {
      ++count;
      return;
    }
    for (std::uint32_t e = 0; e < bound[var]; ++e) {
      cur.e[var] = e;
      cur.recompute_deg();
      bool divisible = false;
      for (const auto& lt : lts) {
        bool d = true;
        for (int i = 0; i <= var; ++i)
          if (lt.e[i] > cur.e[i]) {
            d = false;
            break;
          }
        for (int i = var + 1; i < nvars; ++i)
          if (lt.e[i] > 0) {
            d = false;
            break;
          }
        if (d) {
          divisible = true;
          break;
        }
      }
      if (divisible) break;  // e only grows from here
      self(self, var + 1);
    }
    cur.e[var] = 0;
  };
  rec(rec, 0);
  return count;
}

}  // namespace detail

/// Buchberger with the normal (smallest-lcm) selection strategy, the coprime
/// criterion, lcm-divisibility pruning among fresh pairs, and the chain
/// criterion against queued pairs. Throws ResourceCapExceeded past the
/// configured number of pair reductions.
template <class F>
GroebnerBasis<F> buchberger(std::vector<Poly<F>> gens, const F& f,
                            const BuchbergerOptions& opt = {}) {
  if (gens.empty()) throw std::invalid_argument("buchberger: empty generator list");
  int nvars = 0;
  for (const auto& p : gens)
    if (!p.is_zero()) {
      if (nvars && p.t.front().m.nvars() != nvars)
        throw std::invalid_argument("buchberger: inconsistent variable tables");
      nvars = p.t.front().m.nvars();
    }

  GroebnerBasis<F> out;
  out.nvars = nvars;

  // interreduce the input: substitutes linear relations into the rest and
  // discards dependent generators before any pairs form
  std::vector<Poly<F>> basis;
  for (auto& p : gens)
    if (!p.is_zero()) basis.push_back(poly_monic(std::move(p), f));
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < basis.size(); ++i) {
      Poly<F> self = std::move(basis[i]);
      basis[i] = Poly<F>{};
      Poly<F> r = normal_form(self, basis, f);
      if (!poly_equal(r, self, f)) changed = true;
      basis[i] = poly_monic(std::move(r), f);
    }
    basis.erase(std::remove_if(basis.begin(), basis.end(),
                               [](const Poly<F>& p) { return p.is_zero(); }),
                basis.end());
    if (basis.empty()) break;
  }

  struct Pair {
    Monomial lcm;
    int i, j;
  };
  auto pair_less = [](const Pair& a, const Pair& b) {
    if (!(a.lcm == b.lcm)) return grevlex_less(a.lcm, b.lcm);
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  };
  std::vector<Pair> queue;  // kept as a heap keyed by pair_less (min first)
  auto heap_cmp = [&](const Pair& a, const Pair& b) { return pair_less(b, a); };

  auto add_pairs_for = [&](int h) {
    const Monomial& lh = basis[h].lm();
    std::vector<Pair> fresh;
    for (int i = 0; i < h; ++i) {
      if (basis[i].is_zero()) continue;
      fresh.push_back({mono_lcm(basis[i].lm(), lh), i, h});
    }
    // coprime leading terms reduce to zero
    std::erase_if(fresh, [&](const Pair& p) { return coprime(basis[p.i].lm(), lh); });
    // among the fresh pairs keep lcm-minimal representatives only
    std::sort(fresh.begin(), fresh.end(), pair_less);
    std::vector<Pair> kept;
    for (auto& p : fresh) {
      bool redundant = false;
      for (const auto& q : kept) {
        if (divides(q.lcm, p.lcm)) {  // equal lcm also prunes
          redundant = true;
          break;
        }
      }
      if (!redundant) kept.push_back(std::move(p));
    }
    // chain criterion: drop queued (i,j) strictly refined by h
    std::erase_if(queue, [&](const Pair& p) {
      return divides(lh, p.lcm) && !(mono_lcm(basis[p.i].lm(), lh) == p.lcm) &&
             !(mono_lcm(basis[p.j].lm(), lh) == p.lcm);
    });
    for (auto& p : kept) queue.push_back(std::move(p));
    std::make_heap(queue.begin(), queue.end(), heap_cmp);
  };

  for (int h = 1; h < static_cast<int>(basis.size()); ++h) add_pairs_for(h);

  while (!queue.empty()) {
    std::pop_heap(queue.begin(), queue.end(), heap_cmp);
    Pair p = std::move(queue.back());
    queue.pop_back();
    if (basis[p.i].is_zero() || basis[p.j].is_zero()) continue;

    if (++out.pair_reductions > opt.max_pair_reductions)
      throw ResourceCapExceeded("buchberger pair-reduction cap exceeded");

    Poly<F> s = spoly(basis[p.i], basis[p.j], f);
    Poly<F> r = normal_form(std::move(s), basis, f);
    if (r.is_zero()) continue;
    basis.push_back(poly_monic(std::move(r), f));
    add_pairs_for(static_cast<int>(basis.size()) - 1);
  }

  // minimalize and tail-reduce into the reduced basis
  std::vector<Poly<F>> minimal;
  for (size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].is_zero()) continue;
    bool redundant = false;
    for (size_t j = 0; j < basis.size(); ++j) {
      if (i == j || basis[j].is_zero()) continue;
      if (divides(basis[j].lm(), basis[i].lm()) &&
          (!(basis[j].lm() == basis[i].lm()) || j < i)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  std::vector<Poly<F>> reduced(minimal.size());
  for (size_t i = 0; i < minimal.size(); ++i) {
    Poly<F> self = std::move(minimal[i]);
    minimal[i] = Poly<F>{};
    reduced[i] = poly_monic(normal_form(self, minimal, f), f);
    minimal[i] = reduced[i];
  }
  std::sort(reduced.begin(), reduced.end(),
            [](const Poly<F>& a, const Poly<F>& b) { return grevlex_less(b.lm(), a.lm()); });
  out.g = std::move(reduced);

  if (out.g.size() == 1 && out.g[0].lm().is_one()) {
    // unit ideal: empty variety
    out.zero_dimensional = true;
    out.standard_monomials = 0;
    return out;
  }
  if (auto bounds = detail::pure_power_bounds(out.g, nvars)) {
    out.zero_dimensional = true;
    out.standard_monomials = detail::count_standard_monomials(out.g, *bounds);
  }
  return out;
}

/// Standard-monomial count of a zero-dimensional basis; the solution count
/// with multiplicity.
template <class F>
std::uint64_t quotient_degree(const GroebnerBasis<F>& gb) {
  if (!gb.zero_dimensional || !gb.standard_monomials)
    throw std::domain_error("quotient_degree: ideal is not zero-dimensional");
  return *gb.standard_monomials;
}

/// Mutual ideal membership through both reduced bases.
template <class F>
bool ideal_equal(const std::vector<Poly<F>>& a, const std::vector<Poly<F>>& b, const F& f,
                 const BuchbergerOptions& opt = {}) {
  const auto ga = buchberger(a, f, opt);
  for (const auto& p : b)
    if (!normal_form(p, ga.g, f).is_zero()) return false;
  const auto gb = buchberger(b, f, opt);
  for (const auto& p : a)
    if (!normal_form(p, gb.g, f).is_zero()) return false;
  return true;
}

}  // namespace bmt

#endif
