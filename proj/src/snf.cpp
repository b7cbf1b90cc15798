#include "rostforge/snf.hpp"

#include <stdexcept>

namespace rostforge {

IntMatrix identity_matrix(size_t n) {
    IntMatrix m(n, std::vector<BigInt>(n, BigInt(0)));
    for (size_t i = 0; i < n; ++i) m[i][i] = BigInt(1);
    return m;
}

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
    size_t n = a.size(), k = b.size(), p = k ? b[0].size() : 0;
    IntMatrix r(n, std::vector<BigInt>(p, BigInt(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < k; ++j) {
            if (a[i][j].is_zero()) continue;
            for (size_t l = 0; l < p; ++l) r[i][l] += a[i][j] * b[j][l];
        }
    return r;
}

bool mat_equal(const IntMatrix& a, const IntMatrix& b) { return a == b; }

namespace {

struct Worker {
    IntMatrix A, U, Ui, V, Vi;  // invariant: original = U.A.V, A = Ui.orig.Vi
    size_t rows, cols;

    explicit Worker(const IntMatrix& m) : A(m) {
        rows = m.size();
        cols = rows ? m[0].size() : 0;
        U = identity_matrix(rows);
        Ui = identity_matrix(rows);
        V = identity_matrix(cols);
        Vi = identity_matrix(cols);
    }

    void swap_rows(size_t a, size_t b) {
        if (a == b) return;
        std::swap(A[a], A[b]);
        std::swap(Ui[a], Ui[b]);
        for (size_t i = 0; i < rows; ++i) std::swap(U[i][a], U[i][b]);
    }
    void swap_cols(size_t a, size_t b) {
        if (a == b) return;
        for (size_t i = 0; i < rows; ++i) std::swap(A[i][a], A[i][b]);
        for (size_t i = 0; i < cols; ++i) std::swap(Vi[i][a], Vi[i][b]);
        std::swap(V[a], V[b]);
    }
    // row[a] += c * row[b]
    void add_row(size_t a, size_t b, const BigInt& c) {
        for (size_t j = 0; j < cols; ++j) A[a][j] += c * A[b][j];
        for (size_t j = 0; j < rows; ++j) Ui[a][j] += c * Ui[b][j];
        for (size_t i = 0; i < rows; ++i) U[i][b] -= c * U[i][a];
    }
    // col[a] += c * col[b]
    void add_col(size_t a, size_t b, const BigInt& c) {
        for (size_t i = 0; i < rows; ++i) A[i][a] += c * A[i][b];
        for (size_t i = 0; i < cols; ++i) Vi[i][a] += c * Vi[i][b];
        for (size_t j = 0; j < cols; ++j) V[b][j] -= c * V[a][j];
    }
    void negate_row(size_t a) {
        for (size_t j = 0; j < cols; ++j) A[a][j] = -A[a][j];
        for (size_t j = 0; j < rows; ++j) Ui[a][j] = -Ui[a][j];
        for (size_t i = 0; i < rows; ++i) U[i][a] = -U[i][a];
    }
};

}  // namespace

SmithResult smith_normal_form(const IntMatrix& m) {
    Worker w(m);
    size_t t = 0;
    size_t limit = std::min(w.rows, w.cols);
    while (t < limit) {
        // find the pivot of least absolute value in the remaining block
        size_t pi = t, pj = t;
        bool found = false;
        BigInt best;
        for (size_t i = t; i < w.rows; ++i)
            for (size_t j = t; j < w.cols; ++j) {
                if (w.A[i][j].is_zero()) continue;
                BigInt v = w.A[i][j].abs();
                if (!found || v < best) {
                    best = v;
                    pi = i;
                    pj = j;
                    found = true;
                }
            }
        if (!found) break;
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        if (w.A[t][t].is_negative()) w.negate_row(t);
        bool clean = true;
        for (size_t i = t + 1; i < w.rows; ++i) {
            if (w.A[i][t].is_zero()) continue;
            BigInt q = w.A[i][t] / w.A[t][t];
            w.add_row(i, t, -q);
            if (!w.A[i][t].is_zero()) clean = false;
        }
        for (size_t j = t + 1; j < w.cols; ++j) {
            if (w.A[t][j].is_zero()) continue;
            BigInt q = w.A[t][j] / w.A[t][t];
            w.add_col(j, t, -q);
            if (!w.A[t][j].is_zero()) clean = false;
        }
        if (!clean) continue;  // smaller remainders appeared; repick pivot
        // divisibility fix-up: the pivot must divide the rest of the block
        bool divides = true;
        for (size_t i = t + 1; i < w.rows && divides; ++i)
            for (size_t j = t + 1; j < w.cols && divides; ++j)
                if (!(w.A[i][j] % w.A[t][t]).is_zero()) {
                    w.add_row(t, i, BigInt(1));
                    divides = false;
                }
        if (!divides) continue;
        ++t;
    }
    SmithResult res;
    res.rows = w.rows;
    res.cols = w.cols;
    res.U = w.U;
    res.V = w.V;
    res.U_inv = w.Ui;
    res.V_inv = w.Vi;
    for (size_t i = 0; i < limit; ++i)
        if (!w.A[i][i].is_zero()) res.diag.push_back(w.A[i][i]);
    return res;
}

std::vector<std::vector<BigInt>> integer_kernel(const IntMatrix& m) {
    SmithResult s = smith_normal_form(m);
    size_t r = s.diag.size();
    // m x = 0 iff x = V^{-1} y with y supported past the rank
    std::vector<std::vector<BigInt>> basis;
    for (size_t j = r; j < s.cols; ++j) {
        std::vector<BigInt> col(s.cols);
        for (size_t i = 0; i < s.cols; ++i) col[i] = s.V_inv[i][j];
        basis.push_back(std::move(col));
    }
    return basis;
}

CokernelShape cokernel_shape(const IntMatrix& m) {
    CokernelShape out;
    if (m.empty()) return out;
    SmithResult s = smith_normal_form(m);
    for (const auto& d : s.diag)
        if (!(d == BigInt(1))) out.invariant_factors.push_back(d);
    out.free_rank = static_cast<int>(s.rows - s.diag.size());
    return out;
}

CokernelShape subquotient_shape(const IntMatrix& m, const IntMatrix& relations) {
    SmithResult s = smith_normal_form(m);
    size_t r = s.diag.size();
    size_t dim = s.cols - r;  // kernel dimension
    CokernelShape out;
    if (dim == 0) return out;
    size_t n = m.empty() ? 0 : m[0].size();
    size_t rel_count = relations.empty() ? 0 : relations[0].size();
    // kernel basis = trailing columns of V^{-1}; the coordinates of a
    // relation x are the trailing entries of V.x, the leading ones vanish
    IntMatrix coords(dim, std::vector<BigInt>(rel_count, BigInt(0)));
    for (size_t c = 0; c < rel_count; ++c) {
        for (size_t i = 0; i < r; ++i) {
            BigInt acc(0);
            for (size_t k = 0; k < n; ++k) acc += s.V[i][k] * relations[k][c];
            if (!acc.is_zero()) throw std::logic_error("subquotient_shape: relation not in kernel");
        }
        for (size_t i = 0; i < dim; ++i) {
            BigInt acc(0);
            for (size_t k = 0; k < n; ++k) acc += s.V[r + i][k] * relations[k][c];
            coords[i][c] = acc;
        }
    }
    return cokernel_shape(coords);
}

}  // namespace rostforge
