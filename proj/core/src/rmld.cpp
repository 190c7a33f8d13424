#include "bmt/rmld.hpp"

#include <chrono>
#include <random>
#include <stdexcept>

#include "bmt/toric.hpp"

namespace bmt {

mpz_class rmld_formula(const RootedTree& t) {
  mpz_class acc = 1;
  for (int v : t.internal_vertices()) {
    mpz_class factor = 1;
    factor <<= t.outdeg(v);  // 2^outdeg
    factor -= t.outdeg(v) + 1;
    acc *= factor;
  }
  return acc;
}

namespace {

std::mt19937_64 seeded_rng(std::uint64_t seed, std::uint64_t salt, int attempt) {
  std::seed_seq seq{seed, salt, static_cast<std::uint64_t>(attempt)};
  return std::mt19937_64(seq);
}

template <class F>
std::vector<typename F::Elem> draw_nonzero(int count, const F& f, std::mt19937_64& rng);

template <>
std::vector<Fp64::Elem> draw_nonzero(int count, const Fp64& f, std::mt19937_64& rng) {
  std::vector<Fp64::Elem> u(count);
  for (auto& x : u) x = 1 + rng() % (f.p - 1);
  return u;
}

template <>
std::vector<RationalField::Elem> draw_nonzero(int count, const RationalField& f,
                                              std::mt19937_64& rng) {
  std::vector<RationalField::Elem> u(count);
  for (auto& x : u) x = f.from_int(1 + static_cast<long long>(rng() % 9973));
  return u;
}

// affine forms `design row . x - (design row . u)`, one per row
template <class F>
std::vector<Poly<F>> affine_slice(const IntMat& design,
                                  const std::vector<typename F::Elem>& u, const F& f) {
  std::vector<Poly<F>> out;
  for (int r = 0; r < design.rows; ++r) {
    std::vector<typename Poly<F>::Term> terms;
    auto rhs = f.zero();
    for (int c = 0; c < design.cols; ++c) {
      if (design.at(r, c) == 0) continue;
      const auto coeff = f.from_mpz(design.at(r, c));
      terms.push_back({Monomial::var(design.cols, c), coeff});
      rhs = f.add(rhs, f.mul(coeff, u[c]));
    }
    if (!f.is_zero(rhs)) terms.push_back({Monomial(design.cols), f.neg(rhs)});
    auto p = make_poly<F>(std::move(terms), f);
    if (!p.is_zero()) out.push_back(std::move(p));
  }
  return out;
}

struct SliceOutcome {
  std::uint64_t degree = 0;
  int resamples = 0;
  std::uint64_t pair_reductions = 0;
};

// Runs the sliced system at seeded data, resampling on a degenerate draw.
template <class F>
SliceOutcome sliced_degree(const std::vector<Poly<F>>& gens, const IntMat& design,
                           std::uint64_t seed, std::uint64_t salt, const F& f,
                           int resample_limit, const BuchbergerOptions& buch) {
  SliceOutcome out;
  for (int attempt = 0; attempt < resample_limit; ++attempt) {
    auto rng = seeded_rng(seed, salt, attempt);
    const auto u = draw_nonzero<F>(design.cols, f, rng);
    std::vector<Poly<F>> system = gens;
    auto forms = affine_slice(design, u, f);
    system.insert(system.end(), forms.begin(), forms.end());
    const auto gb = buchberger(std::move(system), f, buch);
    out.pair_reductions += gb.pair_reductions;
    if (gb.zero_dimensional) {
      out.degree = quotient_degree(gb);
      out.resamples = attempt;
      return out;
    }
  }
  throw std::runtime_error("slice stayed positive-dimensional after resampling");
}

template <class F>
CertRun timed_run(const std::vector<Poly<F>>& gens, const IntMat& design, std::uint64_t prime,
                  std::uint64_t seed, const F& f, const CertifyOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto res =
      sliced_degree(gens, design, seed, prime, f, opt.resample_limit, opt.buch);
  const auto t1 = std::chrono::steady_clock::now();
  CertRun run;
  run.prime = prime;
  run.seed = seed;
  run.resamples = res.resamples;
  run.degree = res.degree;
  run.pair_reductions = res.pair_reductions;
  run.millis = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return run;
}

}  // namespace

CertificationReport rmld_certify(const RootedTree& t, const CertifyOptions& opt) {
  if (t.leaf_count() > opt.leaf_cap)
    throw std::invalid_argument("tree exceeds the certification leaf cap");

  CertificationReport rep;
  rep.newick = t.newick();
  rep.formula = rmld_formula(t);

  const IntMat design = design_matrix(t);
  const std::array<std::uint64_t, 2> seeds = {opt.seed, opt.seed + 1};

  if (opt.rational) {
    RationalField f;
    std::vector<Poly<RationalField>> gens;
    for (const auto& b : tree_binomials(t)) gens.push_back(b.poly(f));
    rep.runs.push_back(timed_run(gens, design, 0, opt.seed, f, opt));
  } else {
    for (std::uint64_t prime : opt.primes) {
      const Fp64 f(prime);
      std::vector<Poly<Fp64>> gens;
      for (const auto& b : tree_binomials(t)) gens.push_back(b.poly(f));
      for (std::uint64_t seed : seeds)
        rep.runs.push_back(timed_run(gens, design, prime, seed, f, opt));
    }
  }

  rep.certified_degree = rep.runs.front().degree;
  rep.degrees_agree = true;
  for (const auto& r : rep.runs)
    if (r.degree != rep.certified_degree) rep.degrees_agree = false;
  rep.match = rep.degrees_agree && mpz_class(static_cast<unsigned long>(rep.certified_degree)) == rep.formula;
  return rep;
}

std::uint64_t toric_mld_given_gens(const std::vector<Poly<Fp64>>& gens, const IntMat& design,
                                   std::uint64_t seed, const CertifyOptions& opt) {
  const Fp64 f(opt.primes[0]);
  // binomial generators must lie in the design's lattice
  for (const auto& g : gens) {
    if (!g.is_zero() && g.t.front().m.nvars() != design.cols)
      throw std::invalid_argument("generator variable count != design columns");
    if (g.t.size() != 2) continue;
    const bool unit_coeffs = f.is_one(g.t[0].c) && f.eq(g.t[1].c, f.neg(f.one()));
    if (!unit_coeffs) continue;
    if (!lattice_member(Binomial(g.t[0].m, g.t[1].m), design))
      throw std::invalid_argument("binomial generator outside the design lattice");
  }
  return sliced_degree(gens, design, seed, design.cols + 1, f, opt.resample_limit, opt.buch)
      .degree;
}

std::uint64_t linear_rmld(const std::vector<IntMat>& lspace_basis, std::uint64_t seed,
                          const CertifyOptions& opt) {
  if (lspace_basis.empty()) throw std::invalid_argument("linear_rmld: empty basis");
  const int n = lspace_basis.front().rows;
  if (n > 4) throw std::invalid_argument("linear_rmld: guarded to n <= 4");
  for (const auto& b : lspace_basis) {
    if (b.rows != n || b.cols != n) throw std::invalid_argument("linear_rmld: basis not square");
    for (int r = 0; r < n; ++r)
      for (int c = r + 1; c < n; ++c)
        if (b.at(r, c) != b.at(c, r))
          throw std::invalid_argument("linear_rmld: basis matrix not symmetric");
  }

  const int d = static_cast<int>(lspace_basis.size());
  const int nk = n * (n + 1) / 2;  // symmetric entries k_{ij}, i <= j
  const int nvars = d + nk;
  const Fp64 f(opt.primes[0]);

  auto kvar = [&](int r, int c) {
    if (r > c) std::swap(r, c);
    // offset of (r,c) among upper-triangle entries, after the d L-coordinates
    return d + r * n - r * (r - 1) / 2 + (c - r);
  };

  for (int attempt = 0; attempt < opt.resample_limit; ++attempt) {
    auto rng = seeded_rng(seed, 0x5eedULL, attempt);
    // W: generic symmetric stand-in for the sample concentration matrix
    std::vector<std::vector<Fp64::Elem>> w(n, std::vector<Fp64::Elem>(n, 0));
    for (int r = 0; r < n; ++r)
      for (int c = r; c < n; ++c) w[r][c] = w[c][r] = 1 + rng() % (f.p - 1);

    std::vector<Poly<Fp64>> system;
    // Sigma K = Id, entrywise over the full grid
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        std::vector<Poly<Fp64>::Term> terms;
        for (int tdx = 0; tdx < d; ++tdx)
          for (int s = 0; s < n; ++s) {
            if (lspace_basis[tdx].at(r, s) == 0) continue;
            Monomial m(nvars);
            m.e[tdx] += 1;
            m.e[kvar(s, c)] += 1;
            m.deg = 2;
            terms.push_back({std::move(m), f.from_mpz(lspace_basis[tdx].at(r, s))});
          }
        if (r == c) terms.push_back({Monomial(nvars), f.neg(f.one())});
        auto p = make_poly<Fp64>(std::move(terms), f);
        if (!p.is_zero()) system.push_back(std::move(p));
      }
    // <K - W, B_t> = 0 for each basis element
    for (int tdx = 0; tdx < d; ++tdx) {
      std::vector<Poly<Fp64>::Term> terms;
      auto rhs = f.zero();
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
          if (lspace_basis[tdx].at(r, c) == 0) continue;
          const auto coeff = f.from_mpz(lspace_basis[tdx].at(r, c));
          terms.push_back({Monomial::var(nvars, kvar(r, c)), coeff});
          rhs = f.add(rhs, f.mul(coeff, w[r][c]));
        }
      if (!f.is_zero(rhs)) terms.push_back({Monomial(nvars), f.neg(rhs)});
      auto p = make_poly<Fp64>(std::move(terms), f);
      if (!p.is_zero()) system.push_back(std::move(p));
    }

    const auto gb = buchberger(std::move(system), f, opt.buch);
    if (gb.zero_dimensional) return quotient_degree(gb);
  }
  throw std::runtime_error("linear_rmld: system stayed positive-dimensional after resampling");
}

bool star_origin_check(int n, const CertifyOptions& opt) {
  if (n < 2 || n > 5) throw std::invalid_argument("star_origin_check: guarded to 2 <= n <= 5");
  const Fp64 f(opt.primes[0]);
  const RootedTree star = star_tree(n);
  const IntMat design = design_matrix(star);

  std::vector<Poly<Fp64>> system;
  for (const auto& b : hypersimplex_generators(n)) system.push_back(b.poly(f));
  const std::vector<Fp64::Elem> zero(design.cols, 0);
  for (auto& p : affine_slice(design, zero, f)) system.push_back(std::move(p));

  const auto gb = buchberger(std::move(system), f, opt.buch);
  return gb.zero_dimensional;
}

nlohmann::json CertificationReport::to_json(bool with_timing) const {
  nlohmann::json j;
  j["tree"] = newick;
  j["formula"] = formula.get_str();
  j["certified_degree"] = certified_degree;
  j["degrees_agree"] = degrees_agree;
  j["match"] = match;
  nlohmann::json runs_json = nlohmann::json::array();
  for (const auto& r : runs) {
    nlohmann::json rj;
    rj["prime"] = r.prime == 0 ? nlohmann::json("rational") : nlohmann::json(r.prime);
    rj["seed"] = r.seed;
    rj["resamples"] = r.resamples;
    rj["degree"] = r.degree;
    rj["pair_reductions"] = r.pair_reductions;
    if (with_timing) rj["millis"] = r.millis;
    runs_json.push_back(std::move(rj));
  }
  j["runs"] = std::move(runs_json);
  return j;
}

}  // namespace bmt
