#include <catch2/catch_amalgamated.hpp>

#include <limits>

#include "oracles.hpp"
#include "rado/coloring.hpp"
#include "rado/core.hpp"
#include "rado/solutions.hpp"

using namespace rado;

TEST_CASE("canonicalize derives (a,b,v,m)", "[equation]") {
  CHECK(canonicalize({1, 1}) == CanonicalForm{1, 1, 2, 2});
  CHECK(canonicalize({3, 2, 5}) == CanonicalForm{2, 8, 10, 3});
  CHECK(canonicalize({2, 2}) == CanonicalForm{2, 2, 4, 2});
}

TEST_CASE("canonical forms satisfy a <= b and v >= 2", "[equation]") {
  for (Int a1 = 1; a1 <= 6; ++a1) {
    for (Int a2 = 1; a2 <= 6; ++a2) {
      for (Int a3 = 0; a3 <= 6; ++a3) {  // 0 means "two coefficients only"
        std::vector<Int> coeffs{a1, a2};
        if (a3 > 0) coeffs.push_back(a3);
        const CanonicalForm cf = canonicalize(EquationSpec{coeffs});
        CHECK(cf.a <= cf.b);
        CHECK(cf.v >= 2);
        CHECK(cf.v == cf.a + cf.b);
      }
    }
  }
}

TEST_CASE("canonicalize rejects invalid specs", "[equation]") {
  CHECK_THROWS_AS(canonicalize(EquationSpec{{1}}), ValidationError);
  CHECK_THROWS_AS(canonicalize(EquationSpec{}), ValidationError);
  CHECK_THROWS_AS(canonicalize({1, 0}), ValidationError);
  CHECK_THROWS_AS(canonicalize({2, -3}), ValidationError);
}

TEST_CASE("canonicalize checks the coefficient sum for overflow", "[equation]") {
  const Int big = std::numeric_limits<Int>::max() / 2 + 1;
  CHECK_THROWS_AS(canonicalize({big, big}), OverflowError);
}

TEST_CASE("enumerate_solutions on the worked examples", "[equation]") {
  const auto tiny = enumerate_solutions({1, 1}, 2);
  CHECK(tiny.constraints == std::vector<std::vector<Int>>{{1, 2}});

  const auto schur4 = enumerate_solutions({1, 1}, 4);
  CHECK(schur4.constraints ==
        std::vector<std::vector<Int>>{{1, 2}, {1, 2, 3}, {1, 3, 4}, {2, 4}});

  const auto sparse = enumerate_solutions({2, 3}, 5);
  CHECK(sparse.constraints == std::vector<std::vector<Int>>{{1, 5}});

  // below the coefficient sum nothing fits
  CHECK(enumerate_solutions({2, 3}, 4).constraints.empty());
  CHECK(enumerate_solutions({1, 1}, 1).constraints.empty());
}

TEST_CASE("enumerate_solutions matches the odometer oracle", "[equation]") {
  for (const auto& coeffs :
       std::vector<std::vector<Int>>{{1, 1}, {1, 2}, {2, 2}, {2, 3}, {3, 3}, {1, 1, 1}, {1, 2, 2}}) {
    for (Int n : {1, 3, 7, 12}) {
      const auto got = enumerate_solutions(EquationSpec{coeffs}, n);
      const auto want = oracle::constraint_sets(coeffs, n);
      REQUIRE(got.constraints.size() == want.size());
      CHECK(std::set<std::vector<Int>>(got.constraints.begin(), got.constraints.end()) == want);
    }
  }
}

TEST_CASE("constraint sets are well formed", "[equation]") {
  for (const auto& coeffs : std::vector<std::vector<Int>>{{1, 1}, {2, 3}, {1, 1, 2}}) {
    for (Int n = 1; n <= 20; ++n) {
      const auto cs = enumerate_solutions(EquationSpec{coeffs}, n);
      for (std::size_t i = 0; i < cs.constraints.size(); ++i) {
        const auto& s = cs.constraints[i];
        REQUIRE(s.size() >= 2);  // size-1 sets are impossible
        CHECK(std::is_sorted(s.begin(), s.end()));
        CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
        CHECK(s.front() >= 1);
        CHECK(s.back() <= n);
        if (i > 0) CHECK(cs.constraints[i - 1] < s);  // strict lexicographic order
      }
    }
  }
}

TEST_CASE("enumeration grows monotonically with n", "[equation]") {
  for (const auto& coeffs : std::vector<std::vector<Int>>{{1, 1}, {1, 2}, {2, 3}, {1, 1, 1}}) {
    for (Int n = 1; n <= 15; ++n) {
      const auto small = enumerate_solutions(EquationSpec{coeffs}, n);
      const auto large = enumerate_solutions(EquationSpec{coeffs}, n + 1);
      const std::set<std::vector<Int>> big(large.constraints.begin(), large.constraints.end());
      for (const auto& s : small.constraints) CHECK(big.count(s) == 1);
    }
  }
}

TEST_CASE("find_monochromatic on the worked examples", "[equation]") {
  const EquationSpec schur{1, 1};

  const Coloring all_zero(5, 0);
  const auto hit = find_monochromatic(all_zero, schur);
  REQUIRE(hit.has_value());
  CHECK(*hit == SolutionTuple{{1, 1}, 2});

  Coloring witness(4, 0);
  witness.set(2, 1);
  witness.set(3, 1);
  CHECK_FALSE(find_monochromatic(witness, schur).has_value());

  Coloring broken(5, 0);
  broken.set(2, 1);
  broken.set(3, 1);
  const auto five = find_monochromatic(broken, schur);
  REQUIRE(five.has_value());
  CHECK(*five == SolutionTuple{{1, 4}, 5});  // lexicographically least
}

TEST_CASE("checker agrees with constraint bicoloring on all colorings", "[equation]") {
  for (const auto& coeffs : std::vector<std::vector<Int>>{{1, 1}, {1, 2}, {2, 3}}) {
    const EquationSpec spec{coeffs};
    for (Int n : {5, 8, 12}) {
      const auto masks = oracle::constraint_masks(coeffs, n);
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        const bool checker_clean =
            !find_monochromatic(oracle::coloring_from_bits(n, bits), spec).has_value();
        CHECK(checker_clean == oracle::coloring_valid(bits, masks));
      }
    }
  }
}

TEST_CASE("color swap preserves the verdict of the checker", "[equation]") {
  auto gen = oracle::rng();
  const EquationSpec spec{1, 2};
  for (int trial = 0; trial < 500; ++trial) {
    const Int n = 1 + static_cast<Int>(gen() % 16);
    const Coloring c = oracle::coloring_from_bits(n, gen());
    CHECK(find_monochromatic(c, spec).has_value() ==
          find_monochromatic(c.flipped(), spec).has_value());
  }
}

TEST_CASE("solution tuples may repeat values", "[equation]") {
  // 1+1=2 is a legitimate solution; x1 = x2 is allowed
  const auto cs = enumerate_solutions({1, 1}, 2);
  REQUIRE(cs.constraints.size() == 1);
  CHECK(cs.constraints.front() == std::vector<Int>{1, 2});
}
