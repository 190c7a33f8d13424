#include "bmt/toric.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "bmt/field.hpp"

namespace bmt {

Binomial::Binomial(Monomial p, Monomial m) : plus(std::move(p)), minus(std::move(m)) {
  if (plus.nvars() != minus.nvars())
    throw std::invalid_argument("binomial: variable count mismatch");
  if (plus == minus) throw std::invalid_argument("binomial: monomials must differ");
}

namespace {

Monomial pair_product(const PairTable& pt, int a, int b, int c, int d) {
  Monomial m(pt.count());
  m.e[pt.index(a, b)] += 1;
  m.e[pt.index(c, d)] += 1;
  m.deg = 2;
  return m;
}

}  // namespace

std::vector<Binomial> tree_binomials(const RootedTree& t) {
  const int n = t.max_leaf();
  std::vector<Binomial> out;
  if (n + 1 < 4) return out;
  PairTable pt(n);
  for (int a = 0; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      for (int c = b + 1; c <= n; ++c)
        for (int d = c + 1; d <= n; ++d) {
          const auto q = quartet_topology(t, {a, b, c, d});
          // the three pairings of {a,b,c,d} as monomials
          const Monomial m1 = pair_product(pt, a, b, c, d);
          const Monomial m2 = pair_product(pt, a, c, b, d);
          const Monomial m3 = pair_product(pt, a, d, b, c);
          if (!q.resolved) {
            out.emplace_back(m1, m2);
            out.emplace_back(m2, m3);
            continue;
          }
          // cross pairings through the split agree; the split pairing is free
          const auto [x, y] = q.cherries[0];
          if ((x == a && y == b) || (x == b && y == a))
            out.emplace_back(m2, m3);
          else if ((x == a && y == c) || (x == c && y == a))
            out.emplace_back(m1, m3);
          else
            out.emplace_back(m1, m2);
        }
  return out;
}

std::vector<Binomial> hypersimplex_generators(int n) {
  std::vector<Binomial> out;
  PairTable pt(n);
  for (int a = 0; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      for (int c = b + 1; c <= n; ++c)
        for (int d = c + 1; d <= n; ++d) {
          const Monomial m1 = pair_product(pt, a, b, c, d);
          const Monomial m2 = pair_product(pt, a, c, b, d);
          const Monomial m3 = pair_product(pt, a, d, b, c);
          out.emplace_back(m1, m2);
          out.emplace_back(m2, m3);
          out.emplace_back(m1, m3);
        }
  return out;
}

bool lattice_member(const Binomial& b, const IntMat& design) {
  if (b.plus.nvars() != design.cols)
    throw std::invalid_argument("lattice_member: monomial length != design columns");
  for (int r = 0; r < design.rows; ++r) {
    mpz_class acc = 0;
    for (int c = 0; c < design.cols; ++c)
      acc += design.at(r, c) * (static_cast<long>(b.plus.e[c]) - static_cast<long>(b.minus.e[c]));
    if (acc != 0) return false;
  }
  return true;
}

VarTable pair_vars(int n) {
  PairTable pt(n);
  VarTable v;
  for (int i = 0; i < pt.count(); ++i) v.names.push_back(pt.var_name(i));
  return v;
}

TfpGluing::TfpGluing(RootedTree tp, int ell_, int m_)
    : t_prime(std::move(tp)), ell(ell_), m(m_), glued(glue_trees_detailed(t_prime, ell, m)) {}

namespace {

// T' vertices -> glued-tree vertices, matched through descendant leaf sets.
std::vector<int> vertex_correspondence(const TfpGluing& g) {
  const RootedTree& t = g.glued.tree;
  std::map<std::vector<int>, int> by_leafset;
  for (int v = 1; v < t.vertex_count(); ++v) by_leafset[t.leaves_below(v)] = v;

  std::vector<int> corr(g.t_prime.vertex_count(), -1);
  for (int v = 1; v < g.t_prime.vertex_count(); ++v) {
    std::vector<int> image;
    for (int leaf : g.t_prime.leaves_below(v)) {
      if (leaf == g.ell)
        image.insert(image.end(), g.glued.new_leaves.begin(), g.glued.new_leaves.end());
      else
        image.push_back(g.glued.old_leaf_to_new[leaf]);
    }
    std::sort(image.begin(), image.end());
    const auto it = by_leafset.find(image);
    if (it == by_leafset.end()) throw std::logic_error("gluing lost a vertex");
    corr[v] = it->second;
  }
  return corr;
}

}  // namespace

TfpReport tfp_kernel_check(const TfpGluing& g, int ideal_leaf_cap,
                           const BuchbergerOptions& opt) {
  const RootedTree& t = g.glued.tree;
  const int n = t.max_leaf();
  PairTable pt(n);
  const RootedTree star = star_tree(g.m);
  const auto corr = vertex_correspondence(g);  // T' vertex -> T vertex

  // star-tree vertices -> T: leaf k -> k-th fresh leaf, center -> center,
  // root leaf 0 plays the shared ancestor and never names an edge of T
  auto star_edge_in_t = [&](int v) {
    return star.is_leaf(v) ? g.glued.new_leaves[v - 1] : g.glued.center;
  };

  const int params = t.vertex_count();  // row 0: the homogenizing parameter, then edges
  IntMat psi(params, pt.count());
  const int t_side_max = t.max_leaf() - g.m;  // labels 0..t_side_max are T'-side
  std::vector<int> back(n + 1, -1);           // glued leaf -> T' leaf
  for (int x = 0; x <= g.t_prime.max_leaf(); ++x)
    if (x != g.ell) back[g.glued.old_leaf_to_new[x]] = x;
  std::vector<int> star_back(n + 1, -1);  // glued leaf -> star leaf
  for (int k = 1; k <= g.m; ++k) star_back[g.glued.new_leaves[k - 1]] = k;

  for (int col = 0; col < pt.count(); ++col) {
    const auto [i, j] = pt.pair(col);
    psi.at(0, col) = 2;  // each image carries both homogenizing factors
    if (j <= t_side_max) {
      for (int e : g.t_prime.path_edges(back[i], back[j])) psi.at(corr[e], col) += 1;
    } else if (i > t_side_max) {
      for (int e : star.path_edges(star_back[i], star_back[j]))
        psi.at(star_edge_in_t(e), col) += 1;
    } else {
      for (int e : g.t_prime.path_edges(back[i], g.ell)) psi.at(corr[e], col) += 1;
      for (int e : star.path_edges(0, star_back[j])) psi.at(star_edge_in_t(e), col) += 1;
    }
  }

  // the homogenizing row and the shared-edge row occur squared; halve them
  for (int col = 0; col < pt.count(); ++col) {
    for (int r : {0, g.glued.center}) {
      if (psi.at(r, col) % 2 != 0)
        throw std::logic_error("glued parametrization row not even");
      psi.at(r, col) /= 2;
    }
  }

  const IntMat b = path_matrix(t);
  const auto ker_psi = integer_kernel(psi);
  const auto ker_b = integer_kernel(b);

  TfpReport rep;
  rep.kernel_rank_psi = static_cast<int>(ker_psi.size());
  rep.kernel_rank_b = static_cast<int>(ker_b.size());
  rep.kernels_equal = rep.kernel_rank_psi == rep.kernel_rank_b;
  if (rep.kernels_equal) {
    for (const auto& v : ker_psi)
      if (!in_saturated_span(ker_b, v)) rep.kernels_equal = false;
    for (const auto& v : ker_b)
      if (!in_saturated_span(ker_psi, v)) rep.kernels_equal = false;
  }

  if (t.leaf_count() <= ideal_leaf_cap) {
    // generators pulled through the gluing: lifted factor binomials plus the
    // mixed quadratic relations, against the glued tree's own generators.
    // A generator touching the identified leaf has one lift per choice of
    // stand-in on the other side (both monomials get the same stand-in).
    const Fp64 f(kPrimeA);

    auto lift_monomial = [&](const Monomial& m, const PairTable& from, auto&& leaf_map) {
      Monomial out(pt.count());
      for (int idx = 0; idx < from.count(); ++idx) {
        if (!m.e[idx]) continue;
        const auto [a, b2] = from.pair(idx);
        out.e[pt.index(leaf_map(a), leaf_map(b2))] += m.e[idx];
      }
      out.recompute_deg();
      return out;
    };

    std::vector<Poly<Fp64>> pulled;
    const PairTable pt_prime(g.t_prime.max_leaf());
    for (const auto& bi : tree_binomials(g.t_prime)) {
      for (int stand_in : g.glued.new_leaves) {
        auto lift = [&](int leaf) {
          return leaf == g.ell ? stand_in : g.glued.old_leaf_to_new[leaf];
        };
        Monomial plus = lift_monomial(bi.plus, pt_prime, lift);
        Monomial minus = lift_monomial(bi.minus, pt_prime, lift);
        if (plus == minus) continue;
        pulled.push_back(Binomial(std::move(plus), std::move(minus)).poly(f));
        if (stand_in == g.glued.new_leaves[0]) {
          // generators away from the identified leaf lift uniquely
          bool touches = false;
          PairTable check = pt_prime;
          for (int idx = 0; idx < check.count(); ++idx)
            if (bi.plus.e[idx] || bi.minus.e[idx]) {
              const auto [a, b2] = check.pair(idx);
              touches = touches || a == g.ell || b2 == g.ell;
            }
          if (!touches) break;
        }
      }
    }
    const PairTable pt_star(g.m);
    for (const auto& bi : tree_binomials(star)) {
      for (int stand_in = 0; stand_in <= t_side_max; ++stand_in) {
        auto lift = [&](int leaf) {
          return leaf == 0 ? stand_in : g.glued.new_leaves[leaf - 1];
        };
        Monomial plus = lift_monomial(bi.plus, pt_star, lift);
        Monomial minus = lift_monomial(bi.minus, pt_star, lift);
        if (plus == minus) continue;
        pulled.push_back(Binomial(std::move(plus), std::move(minus)).poly(f));
        if (stand_in == 0) {
          bool touches = false;
          for (int idx = 0; idx < pt_star.count(); ++idx)
            if (bi.plus.e[idx] || bi.minus.e[idx]) {
              const auto [a, b2] = pt_star.pair(idx);
              touches = touches || a == 0 || b2 == 0;
            }
          if (!touches) break;
        }
      }
    }
    for (int i = 0; i <= t_side_max; ++i)
      for (int k = i + 1; k <= t_side_max; ++k)
        for (int j = t_side_max + 1; j <= n; ++j)
          for (int l = j + 1; l <= n; ++l) {
            Monomial plus = pair_product(pt, i, j, k, l);
            Monomial minus = pair_product(pt, i, l, k, j);
            pulled.push_back(Binomial(std::move(plus), std::move(minus)).poly(f));
          }

    std::vector<Poly<Fp64>> direct;
    for (const auto& bi : tree_binomials(t)) direct.push_back(bi.poly(f));

    if (direct.empty() || pulled.empty())
      rep.ideals_equal = direct.empty() && pulled.empty();
    else
      rep.ideals_equal = ideal_equal(pulled, direct, f, opt);
  }
  return rep;
}

nlohmann::json TfpReport::to_json() const {
  nlohmann::json j;
  j["kernel_rank_psi"] = kernel_rank_psi;
  j["kernel_rank_B"] = kernel_rank_b;
  j["equal"] = kernels_equal;
  if (ideals_equal)
    j["ideal_equal"] = *ideals_equal;
  else
    j["ideal_equal"] = nullptr;
  return j;
}

}  // namespace bmt
