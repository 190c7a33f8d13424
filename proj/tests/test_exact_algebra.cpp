#include <doctest.h>

#include <random>

#include "bmt/field.hpp"
#include "bmt/lattice.hpp"
#include "bmt/matrix.hpp"
#include "bmt/model_matrices.hpp"
#include "bmt/tree.hpp"

using namespace bmt;

namespace {

RatMat rat(int rows, int cols, const std::vector<long>& entries) {
  RationalField f;
  RatMat m(rows, cols, f.zero());
  for (size_t i = 0; i < entries.size(); ++i) m.a[i] = mpq_class(entries[i]);
  return m;
}

IntMat ints(int rows, int cols, const std::vector<long>& entries) {
  IntMat m(rows, cols);
  for (size_t i = 0; i < entries.size(); ++i) m.a[i] = entries[i];
  return m;
}

}  // namespace

TEST_CASE("prime field arithmetic") {
  const Fp64 f(kPrimeA);
  const auto a = f.from_int(-5);
  CHECK(a == kPrimeA - 5);
  CHECK(f.add(a, f.from_int(5)) == 0);
  CHECK(f.mul(f.inv(12345), 12345) == 1);
  CHECK(f.mul(f.from_int(kPrimeA - 1), f.from_int(kPrimeA - 1)) == 1);  // (-1)^2
  CHECK_THROWS_AS(f.inv(0), std::domain_error);

  const Fp64 g(kPrimeB);
  for (std::uint64_t x : {2ull, 3ull, 99999999ull}) CHECK(g.mul(g.inv(x), x) == 1);
}

TEST_CASE("rank and rref") {
  const RationalField f;
  SUBCASE("identity") {
    CHECK(rank_rref(RatMat::identity(3, f), f).rank == 3);
  }
  SUBCASE("zero matrix") {
    CHECK(rank_rref(RatMat(4, 2, f.zero()), f).rank == 0);
  }
  SUBCASE("design matrix of the running example has corank one") {
    const auto t = parse_newick("(1,2,(3,4,5));");
    const auto a = design_matrix(t).over(f);
    CHECK(rank_rref(a, f).rank == 7);  // #Vert(T) - 1
  }
  SUBCASE("idempotence and transpose invariance on random matrices") {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 20; ++rep) {
      RatMat m(3 + rep % 3, 4, f.zero());
      for (auto& x : m.a) x = mpq_class(static_cast<long>(rng() % 7) - 3);
      const auto r1 = rank_rref(m, f);
      const auto r2 = rank_rref(r1.rref, f);
      for (size_t i = 0; i < r1.rref.a.size(); ++i) CHECK(r1.rref.a[i] == r2.rref.a[i]);
      CHECK(r1.rank == rank_rref(m.transposed(), f).rank);
    }
  }
}

TEST_CASE("rowspan equality") {
  const RationalField f;
  const auto t = parse_newick("(1,2,(3,4,5));");
  const auto a = design_matrix(t).over(f);
  const auto b = path_matrix(t).over(f);
  CHECK(rowspan_equal(a, b, f));
  CHECK(rowspan_equal(a, a, f));
  CHECK_FALSE(rowspan_equal(rat(1, 2, {1, 0}), rat(1, 2, {0, 1}), f));
  CHECK_THROWS_AS(rowspan_equal(rat(1, 2, {1, 0}), rat(1, 3, {1, 0, 0}), f),
                  std::invalid_argument);
}

TEST_CASE("integer kernels") {
  SUBCASE("one-dimensional kernel") {
    const auto basis = integer_kernel(ints(2, 3, {1, 1, 0, 0, 1, 1}));
    REQUIRE(basis.size() == 1);
    const bool plus = basis[0] == std::vector<mpz_class>{1, -1, 1};
    const bool minus = basis[0] == std::vector<mpz_class>{-1, 1, -1};
    CHECK((plus || minus));
  }
  SUBCASE("identity has trivial kernel") {
    IntMat id(3, 3);
    for (int i = 0; i < 3; ++i) id.at(i, i) = 1;
    CHECK(integer_kernel(id).empty());
  }
  SUBCASE("star path matrix nullity") {
    const auto b = path_matrix(star_tree(3));  // columns e_i + e_j over 4 vertices
    CHECK(integer_rank(b) == 4);
    CHECK(integer_kernel(b).size() == 2);
  }
  SUBCASE("kernel vectors annihilate and are independent") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 25; ++rep) {
      IntMat m(3, 6);
      for (auto& x : m.a) x = static_cast<long>(rng() % 9) - 4;
      const auto basis = integer_kernel(m);
      for (const auto& v : basis)
        for (int r = 0; r < m.rows; ++r) {
          mpz_class acc = 0;
          for (int c = 0; c < m.cols; ++c) acc += m.at(r, c) * v[c];
          CHECK(acc == 0);
        }
      // rank of the basis rows equals their number
      IntMat bm(static_cast<int>(basis.size()), m.cols);
      for (size_t i = 0; i < basis.size(); ++i)
        for (int c = 0; c < m.cols; ++c) bm.at(static_cast<int>(i), c) = basis[i][c];
      CHECK(integer_rank(bm) == static_cast<int>(basis.size()));
      CHECK(static_cast<int>(basis.size()) == m.cols - integer_rank(m));
    }
  }
  SUBCASE("saturation: scaled matrix keeps the primitive kernel") {
    const auto basis = integer_kernel(ints(1, 2, {2, -4}));
    REQUIRE(basis.size() == 1);
    CHECK((basis[0] == std::vector<mpz_class>{2, 1} ||
           basis[0] == std::vector<mpz_class>{-2, -1}));
  }
}

TEST_CASE("solve and invert") {
  const RationalField f;
  SUBCASE("diagonal inverse") {
    const auto inv = solve_or_invert(rat(2, 2, {2, 0, 0, 3}), f);
    CHECK(inv.at(0, 0) == mpq_class(1, 2));
    CHECK(inv.at(1, 1) == mpq_class(1, 3));
    CHECK(inv.at(0, 1) == 0);
  }
  SUBCASE("identity system returns the rhs") {
    const auto b = rat(3, 1, {5, -7, 2});
    const auto x = solve_or_invert(RatMat::identity(3, f), std::optional(b), f);
    for (int i = 0; i < 3; ++i) CHECK(x.at(i, 0) == b.at(i, 0));
  }
  SUBCASE("covariance from the two-leaf star") {
    // t = (2,2,1): sigma has diagonal 2, off-diagonal 1
    const auto inv = solve_or_invert(rat(2, 2, {2, 1, 1, 2}), f);
    CHECK(inv.at(0, 0) == mpq_class(2, 3));
    CHECK(inv.at(0, 1) == mpq_class(-1, 3));
    CHECK(inv.at(1, 0) == mpq_class(-1, 3));
    CHECK(inv.at(1, 1) == mpq_class(2, 3));
  }
  SUBCASE("singular and inconsistent inputs throw") {
    CHECK_THROWS_AS(solve_or_invert(rat(2, 2, {1, 1, 1, 1}), f),
                    std::domain_error);
    const auto bad = rat(2, 1, {1, 2});
    CHECK_THROWS_AS(solve_or_invert(rat(2, 2, {1, 1, 1, 1}), std::optional(bad), f),
                    std::domain_error);
  }
  SUBCASE("random inverses certify exactly") {
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 10; ++rep) {
      RatMat m(4, 4, f.zero());
      for (auto& x : m.a) x = mpq_class(static_cast<long>(rng() % 19) - 9);
      if (rank_rref(m, f).rank < 4) continue;
      const auto inv = solve_or_invert(m, f);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          mpq_class acc = 0;
          for (int k = 0; k < 4; ++k) acc += inv.at(i, k) * m.at(k, j);
          CHECK(acc == (i == j ? 1 : 0));
        }
    }
  }
}

TEST_CASE("csv export carries labels") {
  const auto a = design_matrix(star_tree(2));
  const auto csv = to_csv(a);
  CHECK(csv.find(",01,02,12\n") != std::string::npos);
  CHECK(csv.find("3,0,0,1\n") != std::string::npos);  // internal vertex row
}
