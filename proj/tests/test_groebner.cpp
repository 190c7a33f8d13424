#include <doctest.h>

#include <random>

#include "bmt/field.hpp"
#include "bmt/groebner.hpp"
#include "bmt/model_matrices.hpp"
#include "bmt/rmld.hpp"
#include "bmt/toric.hpp"
#include "bmt/tree.hpp"

using namespace bmt;

namespace {

const VarTable kXyz{{"x", "y", "z"}};

template <class F>
Poly<F> P(const std::string& s, const F& f, const VarTable& vars = kXyz) {
  return poly_parse(s, vars, f);
}

// brute-force Buchberger test: every S-polynomial reduces to zero
template <class F>
bool is_groebner(const std::vector<Poly<F>>& g, const F& f) {
  for (size_t i = 0; i < g.size(); ++i)
    for (size_t j = i + 1; j < g.size(); ++j)
      if (!normal_form(spoly(g[i], g[j], f), g, f).is_zero()) return false;
  return true;
}

}  // namespace

TEST_CASE("grevlex order on the degree-two monomials") {
  const RationalField f;
  // x^2 > xy > y^2 > xz > yz > z^2
  const char* seq[] = {"x^2", "x*y", "y^2", "x*z", "y*z", "z^2"};
  for (int i = 0; i + 1 < 6; ++i) {
    const auto a = P(seq[i], f).lm();
    const auto b = P(seq[i + 1], f).lm();
    CHECK(grevlex_less(b, a));
    CHECK_FALSE(grevlex_less(a, b));
  }
}

TEST_CASE("normal form") {
  const RationalField f;
  SUBCASE("power reduces to zero") {
    CHECK(normal_form(P("x^2", f), {P("x", f)}, f).is_zero());
  }
  SUBCASE("one reduction step") {
    const auto r = normal_form(P("x^2 + y", f), {P("x^2 - y", f)}, f);
    CHECK(poly_equal(r, P("2*y", f), f));
  }
  SUBCASE("generators reduce to zero modulo their own basis") {
    const std::vector<Poly<RationalField>> gens = {P("x^2 - y", f), P("x*y - z", f),
                                                   P("y^2 - x*z", f)};
    const auto gb = buchberger(gens, f);
    for (const auto& g : gens) CHECK(normal_form(g, gb.g, f).is_zero());
  }
  SUBCASE("difference lies in the ideal") {
    const std::vector<Poly<RationalField>> basis = {P("x^2 - y", f), P("y^2 - 1", f)};
    const auto gb = buchberger(basis, f);
    const auto orig = P("x^4 + x*y + 3", f);
    const auto r = normal_form(orig, basis, f);
    CHECK(normal_form(poly_sub(orig, r, f), gb.g, f).is_zero());
  }
}

TEST_CASE("buchberger on simple ideals") {
  const RationalField f;
  SUBCASE("linear variables") {
    const auto gb = buchberger<RationalField>({P("x", f), P("y", f), P("z", f)}, f);
    CHECK(gb.g.size() == 3);
    CHECK(gb.zero_dimensional);
    CHECK(quotient_degree(gb) == 1);
  }
  SUBCASE("monomial ideal with a box of standard monomials") {
    const VarTable xy{{"x", "y"}};
    const auto gb = buchberger<RationalField>({P("x^2", f, xy), P("y^2", f, xy)}, f);
    CHECK(gb.g.size() == 2);
    CHECK(quotient_degree(gb) == 4);  // 1, x, y, xy
  }
  SUBCASE("mixed powers") {
    const VarTable xy{{"x", "y"}};
    const auto gb = buchberger<RationalField>({P("x^2", f, xy), P("y^3", f, xy)}, f);
    CHECK(quotient_degree(gb) == 6);
  }
  SUBCASE("unit ideal") {
    const auto gb = buchberger<RationalField>({P("x", f), P("x - 1", f)}, f);
    CHECK(gb.zero_dimensional);
    CHECK(quotient_degree(gb) == 0);
  }
  SUBCASE("hypersimplex quadrics on six variables stay positive-dimensional") {
    const Fp64 fp(kPrimeA);
    std::vector<Poly<Fp64>> gens;
    for (const auto& b : tree_binomials(star_tree(3))) gens.push_back(b.poly(fp));
    REQUIRE(gens.size() == 2);
    const auto gb = buchberger(gens, fp);
    CHECK_FALSE(gb.zero_dimensional);
    CHECK_FALSE(gb.standard_monomials.has_value());
    CHECK_THROWS_AS(quotient_degree(gb), std::domain_error);
  }
  SUBCASE("empty generator list is rejected") {
    CHECK_THROWS_AS(buchberger(std::vector<Poly<RationalField>>{}, f),
                    std::invalid_argument);
  }
}

TEST_CASE("reduced basis invariants") {
  const RationalField f;
  const std::vector<Poly<RationalField>> gens = {P("x^2 + y^2 + z^2 - 1", f),
                                                 P("x - y + z", f), P("x*y - z^2", f)};
  const auto gb = buchberger(gens, f);
  SUBCASE("all S-polynomials reduce to zero") { CHECK(is_groebner(gb.g, f)); }
  SUBCASE("leading terms form an antichain and are monic") {
    for (size_t i = 0; i < gb.g.size(); ++i) {
      CHECK(f.is_one(gb.g[i].lt().c));
      for (size_t j = 0; j < gb.g.size(); ++j)
        if (i != j) CHECK_FALSE(divides(gb.g[i].lm(), gb.g[j].lm()));
    }
  }
  SUBCASE("tails are fully reduced") {
    for (size_t i = 0; i < gb.g.size(); ++i)
      for (size_t k = 1; k < gb.g[i].t.size(); ++k)
        for (const auto& other : gb.g) CHECK_FALSE(divides(other.lm(), gb.g[i].t[k].m));
  }
}

TEST_CASE("random zero-dimensional systems stay consistent over the rationals") {
  const Fp64 fp(kPrimeA);
  const RationalField fq;
  std::mt19937_64 rng(99);
  const VarTable xy{{"x", "y"}};
  for (int rep = 0; rep < 8; ++rep) {
    auto coef = [&]() { return static_cast<long long>(rng() % 11) - 5; };
    std::string g1 = std::to_string(coef()) + "*x^2 + " + std::to_string(coef()) +
                     "*x*y + " + std::to_string(coef()) + "*y + 1";
    std::string g2 = std::to_string(coef()) + "*y^2 + " + std::to_string(coef()) +
                     "*x + " + std::to_string(coef());
    std::vector<Poly<Fp64>> mod_gens = {P(g1, fp, xy), P(g2, fp, xy)};
    std::vector<Poly<RationalField>> rat_gens = {P(g1, fq, xy), P(g2, fq, xy)};
    const auto gb_p = buchberger(mod_gens, fp);
    const auto gb_q = buchberger(rat_gens, fq);
    if (gb_p.zero_dimensional && gb_q.zero_dimensional)
      CHECK(quotient_degree(gb_p) == quotient_degree(gb_q));
    CHECK(is_groebner(gb_q.g, fq));
  }
}

TEST_CASE("star-tree slice degree") {
  // the n = 4 star: ten pair variables, five affine forms, degree 2^4 - 4 - 1
  const Fp64 fp(kPrimeA);
  const auto star = star_tree(4);
  const auto design = design_matrix(star);
  std::vector<Poly<Fp64>> gens;
  for (const auto& b : tree_binomials(star)) gens.push_back(b.poly(fp));
  std::mt19937_64 rng(2024);
  PairTable pt(4);
  std::vector<Fp64::Elem> u(pt.count());
  for (auto& x : u) x = 1 + rng() % (fp.p - 1);
  for (int r = 0; r < design.rows; ++r) {
    std::vector<Poly<Fp64>::Term> terms;
    Fp64::Elem rhs = 0;
    for (int c = 0; c < design.cols; ++c) {
      if (design.at(r, c) == 0) continue;
      terms.push_back({Monomial::var(design.cols, c), 1});
      rhs = fp.add(rhs, u[c]);
    }
    terms.push_back({Monomial(design.cols), fp.neg(rhs)});
    gens.push_back(make_poly<Fp64>(std::move(terms), fp));
  }
  const auto gb = buchberger(gens, fp);
  REQUIRE(gb.zero_dimensional);
  CHECK(quotient_degree(gb) == 11);
}

TEST_CASE("quotient degree is independent of the presentation") {
  const RationalField f;
  const std::vector<Poly<RationalField>> a = {P("x^2 - y", f), P("y^2 - 1", f), P("z - x", f)};
  // same ideal, messier presentation
  const std::vector<Poly<RationalField>> b = {
      P("x^2 - y + y^2 - 1", f), P("y^2 - 1", f), P("3*z - 3*x", f),
      P("x^2 - y + z - x", f)};
  const auto da = quotient_degree(buchberger(a, f));
  const auto db = quotient_degree(buchberger(b, f));
  CHECK(da == db);
  CHECK(ideal_equal(a, b, f));
}

TEST_CASE("ideal equality") {
  const RationalField f;
  CHECK(ideal_equal<RationalField>({P("x", f)}, {P("2*x", f)}, f));
  CHECK_FALSE(ideal_equal<RationalField>({P("x", f)}, {P("x^2", f)}, f));
  SUBCASE("quartet generators match the full hypersimplex set on stars") {
    const Fp64 fp(kPrimeA);
    for (int n : {3, 4, 5}) {
      std::vector<Poly<Fp64>> quartet, hyper;
      for (const auto& b : tree_binomials(star_tree(n))) quartet.push_back(b.poly(fp));
      for (const auto& b : hypersimplex_generators(n)) hyper.push_back(b.poly(fp));
      CHECK(ideal_equal(quartet, hyper, fp));
    }
  }
}

TEST_CASE("pair reduction cap") {
  const Fp64 fp(kPrimeA);
  std::vector<Poly<Fp64>> gens;
  for (const auto& b : hypersimplex_generators(5)) gens.push_back(b.poly(fp));
  BuchbergerOptions opt;
  opt.max_pair_reductions = 3;
  CHECK_THROWS_AS(buchberger(gens, fp, opt), ResourceCapExceeded);
}
