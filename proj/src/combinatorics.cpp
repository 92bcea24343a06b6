#include "pnet/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace pnet {

int norm1(const ExponentVector& p) {
    int s = 0;
    for (int v : p) {
        if (v < 0) throw std::invalid_argument("exponents must be non-negative");
        s += v;
    }
    return s;
}

std::vector<int> ExponentMatrix::column(int j) const {
    std::vector<int> c(rows);
    for (int i = 0; i < rows; ++i) c[i] = at(i, j);
    return c;
}

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("multiplicity coefficient exceeds 64 bits");
    return r;
}

std::uint64_t factorial_u64(int n) {
    if (n > 20) throw std::overflow_error("factorial exceeds 64 bits");
    std::uint64_t r = 1;
    for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
    return r;
}

// Compositions of n into k non-negative parts, part j >= lower[j], in
// lexicographic order.
void compositions(int n, int k, const std::vector<int>& lower, std::vector<int>& cur,
                  int pos, const std::function<void(const std::vector<int>&)>& emit) {
    if (pos == k - 1) {
        if (n >= lower[pos]) {
            cur[pos] = n;
            emit(cur);
        }
        return;
    }
    int reserved = 0;
    for (int j = pos + 1; j < k; ++j) reserved += lower[j];
    for (int v = lower[pos]; v <= n - reserved; ++v) {
        cur[pos] = v;
        compositions(n - v, k, lower, cur, pos + 1, emit);
    }
}

void enumerate_rows(const ExponentVector& p, int l, int row, std::vector<int>& colsum,
                    std::vector<std::vector<int>>& picked, std::vector<ExponentMatrix>& out) {
    const int q = static_cast<int>(p.size());
    std::vector<int> lower(l, 0);
    if (row == q - 1) {
        // Last row must cover every still-empty column.
        for (int j = 0; j < l; ++j) lower[j] = colsum[j] == 0 ? 1 : 0;
    }
    std::vector<int> cur(l);
    compositions(p[row], l, lower, cur, 0, [&](const std::vector<int>& comp) {
        if (row == q - 1) {
            ExponentMatrix m;
            m.rows = q;
            m.cols = l;
            m.entries.reserve(static_cast<size_t>(q) * l);
            for (int i = 0; i < q - 1; ++i)
                m.entries.insert(m.entries.end(), picked[i].begin(), picked[i].end());
            m.entries.insert(m.entries.end(), comp.begin(), comp.end());
            out.push_back(std::move(m));
        } else {
            picked[row] = comp;
            for (int j = 0; j < l; ++j) colsum[j] += comp[j];
            enumerate_rows(p, l, row + 1, colsum, picked, out);
            for (int j = 0; j < l; ++j) colsum[j] -= comp[j];
        }
    });
}

}  // namespace

std::uint64_t multiplicity(const ExponentMatrix& m) {
    std::uint64_t num = 1, den = 1;
    for (int i = 0; i < m.rows; ++i) {
        int rowsum = 0;
        for (int j = 0; j < m.cols; ++j) {
            rowsum += m.at(i, j);
            den = checked_mul(den, factorial_u64(m.at(i, j)));
        }
        num = checked_mul(num, factorial_u64(rowsum));
    }
    return num / den;  // exact: C_M is an integer (multinomial product)
}

const std::vector<ExponentMatrix>& enumerate_matrices(const ExponentVector& p, int l) {
    const int total = norm1(p);
    if (total == 0) throw std::invalid_argument("||p||_1 must be positive");
    if (l < 1 || l > total) throw std::out_of_range("column count l outside [1, ||p||_1]");

    static std::map<std::pair<ExponentVector, int>, std::vector<ExponentMatrix>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(p, l);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::vector<ExponentMatrix> out;
    std::vector<int> colsum(l, 0);
    std::vector<std::vector<int>> picked(p.size());
    enumerate_rows(p, l, 0, colsum, picked, out);
    return cache.emplace(std::move(key), std::move(out)).first->second;
}

double sum_product_brute_force(const std::vector<FunctionTable>& f_list,
                               const FunctionTable& g, const ExponentVector& p) {
    if (f_list.size() != p.size()) throw std::invalid_argument("f_list/p size mismatch");
    double prod = 1.0;
    for (size_t i = 0; i < p.size(); ++i) {
        double s = std::accumulate(f_list[i].begin(), f_list[i].end(), 0.0);
        prod *= std::pow(s, p[i]);
    }
    for (double gv : g) prod *= gv;
    return prod;
}

double matrix_expansion_rhs(const std::vector<FunctionTable>& f_list, const ExponentVector& p) {
    const int total = norm1(p);
    if (total == 0) throw std::invalid_argument("||p||_1 must be positive");
    const size_t n = f_list.empty() ? 0 : f_list[0].size();
    const int q = static_cast<int>(p.size());
    const int lmax = std::min<int>(total, static_cast<int>(n));

    double acc = 0.0;
    for (int l = 1; l <= lmax; ++l) {
        // subsets V of U with |V| = l
        std::vector<int> idx(l);
        std::iota(idx.begin(), idx.end(), 0);
        for (const ExponentMatrix& m : enumerate_matrices(p, l)) {
            const double cm = static_cast<double>(multiplicity(m));
            // iterate l-subsets of {0..n-1}
            std::vector<int> sel(l);
            std::iota(sel.begin(), sel.end(), 0);
            while (true) {
                double term = 1.0;
                for (int i = 0; i < q; ++i)
                    for (int j = 0; j < l; ++j)
                        term *= std::pow(f_list[i][sel[j]], m.at(i, j));
                acc += cm * term;
                int k = l - 1;
                while (k >= 0 && sel[k] == static_cast<int>(n) - l + k) --k;
                if (k < 0) break;
                ++sel[k];
                for (int j = k + 1; j < l; ++j) sel[j] = sel[j - 1] + 1;
            }
        }
    }
    return acc;
}

double sum_product_direct(const std::vector<FunctionTable>& f_list, const ExponentVector& p) {
    const int total = norm1(p);
    const size_t n = f_list.empty() ? 0 : f_list[0].size();
    if (n == 0) return 0.0;
    // which f_i owns slot t of the flattened ||p||_1-tuple
    std::vector<int> owner;
    for (size_t i = 0; i < p.size(); ++i)
        for (int j = 0; j < p[i]; ++j) owner.push_back(static_cast<int>(i));

    double acc = 0.0;
    std::vector<size_t> u(total, 0);
    while (true) {
        double term = 1.0;
        for (int t = 0; t < total; ++t) term *= f_list[owner[t]][u[t]];
        acc += term;
        int t = total - 1;
        while (t >= 0 && u[t] == n - 1) u[t--] = 0;
        if (t < 0) break;
        ++u[t];
    }
    return acc;
}

}  // namespace pnet
