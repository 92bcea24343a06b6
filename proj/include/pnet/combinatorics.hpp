#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace pnet {

// Vector of non-negative integer exponents p = (p_1,...,p_q), ||p||_1 > 0.
using ExponentVector = std::vector<int>;

int norm1(const ExponentVector& p);

// q x l matrix of non-negative integers with positive column sums and row i
// summing to p_i. Stored row-major.
struct ExponentMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<int> entries;  // rows*cols, row-major

    int at(int i, int j) const { return entries[static_cast<size_t>(i) * cols + j]; }
    std::vector<int> column(int j) const;
};

// C_M = prod_i p_i! / prod_ij m_ij!, exact. Throws std::overflow_error if the
// value does not fit in 64 bits (does not happen for ||p||_1 <= 20).
std::uint64_t multiplicity(const ExponentMatrix& m);

// All matrices of the class with row sums p and l columns, each column sum
// positive. Deterministic order (lexicographic by rows, each row a
// lexicographically ordered composition). Column permutations are distinct
// members. Memoized; the returned reference stays valid for the process
// lifetime and is safe to share across threads.
// Throws std::invalid_argument for ||p||_1 == 0, std::out_of_range for l
// outside [1, ||p||_1].
const std::vector<ExponentMatrix>& enumerate_matrices(const ExponentVector& p, int l);

// Point function table: value of f_i at each element of a finite ground set U.
using FunctionTable = std::vector<double>;

// prod_i (sum_u f_i(u))^{p_i} * prod_u g(u), evaluated directly.
double sum_product_brute_force(const std::vector<FunctionTable>& f_list,
                               const FunctionTable& g, const ExponentVector& p);

// The matrix-class expansion of the multi-sum: sum over l, matrices M, and
// size-l subsets V of U of C_M * prod_ij f_i^{m_ij}(v_j). Equals the direct
// ||p||_1-fold sum over U^{||p||_1} of prod f_i(u_j^{(i)}).
double matrix_expansion_rhs(const std::vector<FunctionTable>& f_list, const ExponentVector& p);

// Direct ||p||_1-fold summation of the left-hand side (independent oracle).
double sum_product_direct(const std::vector<FunctionTable>& f_list, const ExponentVector& p);

}  // namespace pnet
