#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "pnet/combinatorics.hpp"

using namespace pnet;

namespace {

std::uint64_t binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

TEST_CASE("single-row class sizes follow the composition count") {
    for (int k = 1; k <= 8; ++k)
        for (int l = 1; l <= k; ++l)
            CHECK(enumerate_matrices({k}, l).size() == binom(k - 1, l - 1));
}

TEST_CASE("small classes by hand") {
    const auto& m21 = enumerate_matrices({2}, 1);
    REQUIRE(m21.size() == 1);
    CHECK(m21[0].entries == std::vector<int>{2});
    CHECK(multiplicity(m21[0]) == 1);

    const auto& m22 = enumerate_matrices({2}, 2);
    REQUIRE(m22.size() == 1);
    CHECK(m22[0].entries == std::vector<int>{1, 1});
    CHECK(multiplicity(m22[0]) == 2);

    // column permutations are distinct members
    const auto& m32 = enumerate_matrices({3}, 2);
    REQUIRE(m32.size() == 2);
    CHECK(m32[0].entries == std::vector<int>{1, 2});
    CHECK(m32[1].entries == std::vector<int>{2, 1});
    CHECK(multiplicity(m32[0]) == 3);
    CHECK(multiplicity(m32[1]) == 3);
}

TEST_CASE("two-row classes: row sums, positive columns, multiplicities") {
    const auto& ms = enumerate_matrices({2, 1}, 2);
    // row sums 2 and 1 over 2 columns, no zero column
    for (const auto& m : ms) {
        REQUIRE(m.rows == 2);
        REQUIRE(m.cols == 2);
        CHECK(m.at(0, 0) + m.at(0, 1) == 2);
        CHECK(m.at(1, 0) + m.at(1, 1) == 1);
        CHECK(m.at(0, 0) + m.at(1, 0) > 0);
        CHECK(m.at(0, 1) + m.at(1, 1) > 0);
    }
    CHECK(ms.size() == 4);  // (02|10),(11|01),(11|10),(20|01)
}

TEST_CASE("a zero row sum is allowed when the other rows cover the columns") {
    const auto& ms = enumerate_matrices({2, 0}, 2);
    REQUIRE(ms.size() == 1);
    CHECK(ms[0].entries == std::vector<int>{1, 1, 0, 0});
}

TEST_CASE("multiplicity is invariant under column permutation") {
    std::mt19937_64 rng(42);
    for (const auto& m : enumerate_matrices({3, 2}, 3)) {
        ExponentMatrix perm = m;
        std::vector<int> cols{0, 1, 2};
        std::shuffle(cols.begin(), cols.end(), rng);
        for (int i = 0; i < m.rows; ++i)
            for (int j = 0; j < m.cols; ++j)
                perm.entries[size_t(i) * m.cols + j] = m.at(i, cols[j]);
        CHECK(multiplicity(perm) == multiplicity(m));
    }
}

TEST_CASE("expansion equals the direct multi-sum on random instances") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> qd(1, 3), ud(1, 6);
    std::uniform_real_distribution<double> vd(-1.0, 2.0);
    for (int trial = 0; trial < 500; ++trial) {
        const int q = qd(rng);
        const size_t n = size_t(ud(rng));
        ExponentVector p(q);
        int total = 0;
        for (int i = 0; i < q; ++i) {
            std::uniform_int_distribution<int> pd(i == 0 ? 1 : 0, 6 - total);
            p[i] = pd(rng);
            total += p[i];
        }
        std::vector<FunctionTable> f(q, FunctionTable(n));
        for (auto& fi : f)
            for (auto& v : fi) v = vd(rng);
        double lhs = sum_product_direct(f, p);
        double rhs = matrix_expansion_rhs(f, p);
        CHECK(rhs == doctest::Approx(lhs).epsilon(1e-12));
    }
}

TEST_CASE("constant functions give |U|^{||p||_1}") {
    std::vector<FunctionTable> f(2, FunctionTable(5, 1.0));
    CHECK(matrix_expansion_rhs(f, {2, 3}) == doctest::Approx(std::pow(5.0, 5)).epsilon(1e-12));
    CHECK(sum_product_direct(f, {2, 3}) == doctest::Approx(std::pow(5.0, 5)).epsilon(1e-12));
}

TEST_CASE("brute force product form agrees with the direct sum for g == 1") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> vd(0.0, 1.0);
    std::vector<FunctionTable> f(2, FunctionTable(4));
    for (auto& fi : f)
        for (auto& v : fi) v = vd(rng);
    FunctionTable g(4, 1.0);
    CHECK(sum_product_brute_force(f, g, {2, 1}) ==
          doctest::Approx(sum_product_direct(f, {2, 1})).epsilon(1e-12));
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(enumerate_matrices({0, 0}, 1), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_matrices({2}, 0), std::out_of_range);
    CHECK_THROWS_AS(enumerate_matrices({2}, 3), std::out_of_range);
    CHECK_THROWS_AS(norm1({1, -1}), std::invalid_argument);
}
