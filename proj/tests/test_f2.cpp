#include <doctest.h>

#include <random>

#include "mss/f2.hpp"
#include "oracles.hpp"

using namespace mss;

namespace {

BitMatrix matrix(std::initializer_list<const char*> rows) {
  std::vector<BitVector> rs;
  std::size_t cols = 0;
  for (const char* r : rows) {
    rs.push_back(BitVector::from_string(r));
    cols = rs.back().size();
  }
  return BitMatrix::from_rows(cols, std::move(rs));
}

BitMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, double density) {
  std::bernoulli_distribution bit(density);
  BitMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, bit(rng));
  }
  return m;
}

std::vector<std::vector<int>> dense(const BitMatrix& m) {
  std::vector<std::vector<int>> d(m.rows(), std::vector<int>(m.cols(), 0));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) d[r][c] = m.get(r, c);
  }
  return d;
}

}  // namespace

TEST_SUITE("f2") {
  TEST_CASE("bit vectors") {
    BitVector v(130);
    CHECK(v.none());
    v.set(0);
    v.set(129);
    CHECK(v.popcount() == 2);
    CHECK(v.first_set() == 0);
    v.flip(0);
    CHECK(v.first_set() == 129);
    CHECK(BitVector::from_string("0110").to_string() == "0110");
    CHECK((BitVector::from_string("0110") ^ BitVector::from_string("0101")).to_string() == "0011");
    CHECK(BitVector::from_string("0111").dot(BitVector::from_string("0101")) == false);
    CHECK_THROWS_AS(BitVector::from_string("012"), std::invalid_argument);
    CHECK_THROWS_AS(BitVector(3) ^= BitVector(4), std::invalid_argument);
  }

  TEST_CASE("identical rows have rank one") {
    const auto red = row_reduce(matrix({"11", "11"}));
    CHECK(red.rank == 1);
    REQUIRE(red.kernel_basis.size() == 1);
    CHECK(red.kernel_basis[0].to_string() == "11");
  }

  TEST_CASE("identity has trivial kernel") {
    const auto red = row_reduce(BitMatrix::identity(3));
    CHECK(red.rank == 3);
    CHECK(red.kernel_basis.empty());
    CHECK(red.pivot_columns == std::vector<std::size_t>{0, 1, 2});
  }

  TEST_CASE("both degree-one generators hitting the same class leave a + b") {
    // d_2 on {a, b} into the one-dimensional t^2 (x) 1.
    const auto red = row_reduce(matrix({"11"}));
    CHECK(red.rank == 1);
    REQUIRE(red.kernel_basis.size() == 1);
    CHECK(red.kernel_basis[0].to_string() == "11");
  }

  TEST_CASE("empty matrices") {
    const auto red = row_reduce(BitMatrix(0, 4));
    CHECK(red.rank == 0);
    CHECK(red.kernel_basis.size() == 4);
    CHECK(row_reduce(BitMatrix(3, 0)).rank == 0);
  }

  TEST_CASE("pivot rule is leftmost column, first available row") {
    const auto red = row_reduce(matrix({"0011", "0110", "0101"}));
    CHECK(red.rank == 2);
    CHECK(red.pivot_columns == std::vector<std::size_t>{1, 2});
    CHECK(red.echelon.row(0).to_string() == "0101");
    CHECK(red.echelon.row(1).to_string() == "0011");
  }

  TEST_CASE("binomial parity examples") {
    CHECK(binom_mod2(5, 2) == 0);
    CHECK(binom_mod2(5, 4) == 1);
    CHECK(binom_mod2(7, 3) == 1);
    CHECK(binom_mod2(3, 5) == 0);
    for (std::uint64_t n = 0; n < 40; ++n) CHECK(binom_mod2(n, 0) == 1);
  }

  TEST_CASE("binomial parity agrees with exact binomials") {
    for (std::uint64_t n = 0; n <= 20; ++n) {
      for (std::uint64_t k = 0; k <= n; ++k) {
        CHECK(binom_mod2(n, k) == oracle::binom_parity(n, k));
        CHECK(binom_mod2(n, k) == binom_mod2(n, n - k));
      }
    }
  }

  TEST_CASE("random matrices: rank, nullity, kernel and transpose") {
    std::mt19937 rng(20240611);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t rows = rng() % 20, cols = 1 + rng() % 90;
      const auto m = random_matrix(rng, rows, cols, trial % 2 ? 0.5 : 0.1);
      const auto red = row_reduce_serial(m);
      CHECK(red.rank + red.kernel_basis.size() == cols);
      CHECK(red.rank == rank(m.transpose()));
      CHECK(static_cast<int>(red.rank) == oracle::dense_rank(dense(m)));
      for (const auto& k : red.kernel_basis) CHECK(m.apply(k).none());
      CHECK(row_reduce_serial(BitMatrix::from_rows(cols, red.kernel_basis)).rank == red.kernel_basis.size());
      for (std::size_t r = 0; r < rows; ++r) CHECK(red.in_row_space(m.row(r)));
    }
  }

  TEST_CASE("parallel elimination matches the serial reference") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      const auto m = random_matrix(rng, 50 + rng() % 100, 64 + rng() % 200, 0.3);
      const auto a = row_reduce_serial(m);
      const auto b = row_reduce(m, Exec::parallel);
      CHECK(a.rank == b.rank);
      CHECK(a.pivot_columns == b.pivot_columns);
      CHECK(a.kernel_basis == b.kernel_basis);
      CHECK(a.echelon == b.echelon);
    }
  }

  TEST_CASE("matrix product and transpose") {
    const auto a = matrix({"110", "011"});
    const auto b = matrix({"10", "01", "11"});
    CHECK((a * b) == matrix({"11", "10"}));
    CHECK(a.transpose().transpose() == a);
    CHECK_THROWS_AS(a * a, std::invalid_argument);
  }
}
