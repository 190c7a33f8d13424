#include <doctest.h>

#include <random>

#include "bmt/field.hpp"
#include "bmt/lattice.hpp"
#include "bmt/model_matrices.hpp"
#include "bmt/poly.hpp"
#include "bmt/toric.hpp"
#include "bmt/tree.hpp"

using namespace bmt;

TEST_CASE("canonical polynomial text form") {
  const RationalField f;
  const auto vars = pair_vars(3);  // p01 .. p23
  SUBCASE("binomials print with bare unit coefficients, leading term first") {
    const auto gens = tree_binomials(star_tree(3));
    REQUIRE(gens.size() == 2);
    // grevlex puts p02*p13 above p01*p23; monic orientation leads positive
    const auto s = poly_to_string(poly_monic(gens[0].poly(f), f), vars, f);
    CHECK(s == "p02*p13 - p01*p23");
  }
  SUBCASE("coefficients, powers, and constants") {
    const auto p = poly_parse("2*p01^2 - 3*p12 + 1", vars, f);
    CHECK(poly_to_string(p, vars, f) == "2*p01^2 - 3*p12 + 1");
  }
  SUBCASE("leading minus and collapsing terms") {
    const auto p = poly_parse("-p01 + 2*p01 - p01", vars, f);
    CHECK(p.is_zero());
    CHECK(poly_to_string(p, vars, f) == "0");
  }
  SUBCASE("star variable participates") {
    VarTable with_star = vars;
    with_star.names.push_back("p_star");
    const auto p = poly_parse("p_star^2 - p01*p23", with_star, f);
    CHECK(poly_to_string(p, with_star, f) == "-p01*p23 + p_star^2");
    CHECK(poly_equal(poly_parse(poly_to_string(p, with_star, f), with_star, f), p, f));
  }
  SUBCASE("unknown variables are rejected") {
    CHECK_THROWS_AS(poly_parse("p99 + 1", vars, f), std::invalid_argument);
    CHECK_THROWS_AS(poly_parse("", vars, f), std::invalid_argument);
    CHECK_THROWS_AS(poly_parse("p01 +", vars, f), std::invalid_argument);
  }
}

TEST_CASE("print-parse round trip on random polynomials") {
  const RationalField f;
  const VarTable vars{{"x", "y", "z"}};
  std::mt19937_64 rng(123);
  for (int rep = 0; rep < 40; ++rep) {
    std::vector<Poly<RationalField>::Term> terms;
    const int nterms = 1 + static_cast<int>(rng() % 5);
    for (int k = 0; k < nterms; ++k) {
      Monomial m(3);
      for (int v = 0; v < 3; ++v) m.e[v] = rng() % 3;
      m.recompute_deg();
      long c = static_cast<long>(rng() % 9) - 4;
      terms.push_back({m, mpq_class(c)});
    }
    const auto p = make_poly<RationalField>(std::move(terms), f);
    const auto back = poly_parse(poly_to_string(p, vars, f), vars, f);
    CHECK(poly_equal(p, back, f));
  }
}

TEST_CASE("prime-field polynomials print reduced representatives") {
  const Fp64 f(7);
  const VarTable vars{{"x"}};
  const auto p = poly_parse("10*x - 3", vars, f);
  CHECK(poly_to_string(p, vars, f) == "3*x + 4");
}

TEST_CASE("newick and json serializations agree") {
  for (const char* nwk : {"(1,2,3);", "(1,2,(3,4,5));", "((1,2),(3,4));",
                          "(1,(2,3,(4,5)),(6,7));"}) {
    const auto t = parse_newick(nwk);
    const auto j = t.to_json();
    CHECK(j["newick"] == t.newick());
    CHECK(parse_newick(j["newick"].get<std::string>()).same_topology(t));
    // parent map closes over every non-root vertex
    CHECK(j["parent"].size() == static_cast<size_t>(t.vertex_count() - 1));
  }
}

TEST_CASE("integer matrix csv round trip") {
  const auto a = design_matrix(parse_newick("(1,2,(3,4,5));"));
  const auto back = int_mat_from_csv(to_csv(a));
  CHECK(back.rows == a.rows);
  CHECK(back.cols == a.cols);
  CHECK(back.a == a.a);
  CHECK(back.row_labels == a.row_labels);
  CHECK(back.col_labels == a.col_labels);

  SUBCASE("bare matrices without labels") {
    const auto m = int_mat_from_csv("1,2,3\n4,5,-6\n");
    CHECK(m.rows == 2);
    CHECK(m.cols == 3);
    CHECK(m.at(1, 2) == -6);
    CHECK(m.row_labels.empty());
  }
  CHECK_THROWS_AS(int_mat_from_csv(""), std::invalid_argument);
  CHECK_THROWS_AS(int_mat_from_csv("1,2\n3\n"), std::invalid_argument);
}
