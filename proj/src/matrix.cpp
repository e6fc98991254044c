#include "lcbc/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace lcbc {

namespace {

void check_same_field(const Mat& A, const Mat& B) {
    if (!A.f || !B.f || !A.f->same_as(*B.f)) throw std::invalid_argument("field mismatch");
}

// in-place reduced row echelon form; returns pivot column indices
std::vector<int> rref(Mat& M) {
    const FieldSpec& f = *M.f;
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < M.cols && r < M.rows; ++c) {
        int sel = -1;
        for (int i = r; i < M.rows; ++i)
            if (M.at(i, c) != 0) { sel = i; break; }
        if (sel < 0) continue;
        if (sel != r)
            for (int j = 0; j < M.cols; ++j) std::swap(M.at(sel, j), M.at(r, j));
        std::uint64_t inv = f.inv(M.at(r, c));
        for (int j = c; j < M.cols; ++j) M.at(r, j) = f.mul(M.at(r, j), inv);
        for (int i = 0; i < M.rows; ++i) {
            if (i == r || M.at(i, c) == 0) continue;
            std::uint64_t factor = M.at(i, c);
            for (int j = c; j < M.cols; ++j)
                M.at(i, j) = f.sub(M.at(i, j), f.mul(factor, M.at(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

Mat mat_identity(const Field& f, int n) {
    Mat I(f, n, n);
    for (int i = 0; i < n; ++i) I.at(i, i) = 1;
    return I;
}

Mat hcat(const Mat& A, const Mat& B) {
    if (A.cols == 0 && A.rows == 0) return B;
    if (B.cols == 0 && B.rows == 0) return A;
    check_same_field(A, B);
    if (A.rows != B.rows) throw std::invalid_argument("row mismatch in hcat");
    Mat C(A.f, A.rows, A.cols + B.cols);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
        for (int j = 0; j < B.cols; ++j) C.at(i, A.cols + j) = B.at(i, j);
    }
    return C;
}

Mat hcat(const std::vector<Mat>& parts) {
    Mat acc;
    for (const Mat& p : parts) acc = hcat(acc, p);
    return acc;
}

Mat column(const Mat& A, int j) {
    Mat c(A.f, A.rows, 1);
    for (int i = 0; i < A.rows; ++i) c.at(i, 0) = A.at(i, j);
    return c;
}

Mat mat_mul(const Mat& A, const Mat& B) {
    check_same_field(A, B);
    if (A.cols != B.rows) throw std::invalid_argument("shape mismatch in mul");
    const FieldSpec& f = *A.f;
    Mat C(A.f, A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            std::uint64_t v = A.at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < B.cols; ++j)
                if (B.at(k, j) != 0) C.at(i, j) = f.add(C.at(i, j), f.mul(v, B.at(k, j)));
        }
    return C;
}

Mat mat_add(const Mat& A, const Mat& B) {
    check_same_field(A, B);
    if (A.rows != B.rows || A.cols != B.cols) throw std::invalid_argument("shape mismatch in add");
    Mat C(A.f, A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = A.f->add(A.a[i], B.a[i]);
    return C;
}

Mat mat_neg(const Mat& A) {
    Mat C(A.f, A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = A.f->neg(A.a[i]);
    return C;
}

Mat transpose(const Mat& A) {
    Mat T(A.f, A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
    return T;
}

bool is_zero(const Mat& A) {
    return std::all_of(A.a.begin(), A.a.end(), [](std::uint64_t v) { return v == 0; });
}

Mat embed_matrix(const Mat& A, const Embedding& e) {
    Mat C(e.dst(), A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = e(A.a[i]);
    return C;
}

int rank(const Mat& A) {
    if (A.rows == 0 || A.cols == 0) return 0;
    Mat M = A;
    return static_cast<int>(rref(M).size());
}

int conditional_rank(const Mat& M1, const Mat& M2) {
    return rank(hcat(M1, M2)) - rank(M2);
}

Mat col_basis(const Mat& A) {
    if (A.cols == 0 || A.rows == 0) return Mat(A.f, A.rows, 0);
    Mat T = transpose(A);
    std::vector<int> piv = rref(T);
    Mat B(A.f, A.rows, static_cast<int>(piv.size()));
    for (int j = 0; j < B.cols; ++j)
        for (int i = 0; i < A.rows; ++i) B.at(i, j) = T.at(j, i);
    return B;
}

Mat kernel(const Mat& A) {
    if (A.cols == 0) return Mat(A.f, 0, 0);
    if (A.rows == 0) return mat_identity(A.f, A.cols);
    Mat M = A;
    std::vector<int> piv = rref(M);
    std::vector<bool> is_piv(static_cast<size_t>(A.cols), false);
    for (int c : piv) is_piv[static_cast<size_t>(c)] = true;
    const FieldSpec& f = *A.f;
    std::vector<int> free_cols;
    for (int c = 0; c < A.cols; ++c)
        if (!is_piv[static_cast<size_t>(c)]) free_cols.push_back(c);
    Mat K(A.f, A.cols, static_cast<int>(free_cols.size()));
    for (size_t jf = 0; jf < free_cols.size(); ++jf) {
        int fc = free_cols[jf];
        K.at(fc, static_cast<int>(jf)) = 1;
        for (size_t r = 0; r < piv.size(); ++r)
            K.at(piv[r], static_cast<int>(jf)) = f.neg(M.at(static_cast<int>(r), fc));
    }
    return col_basis(K);
}

Mat span_union(const std::vector<Mat>& parts) {
    return col_basis(hcat(parts));
}

Mat span_intersect(const Mat& A, const Mat& B) {
    if (A.cols == 0) return col_basis(A);
    if (B.cols == 0) return col_basis(B);
    Mat K = kernel(hcat(A, mat_neg(B)));
    // top block of each kernel vector recombines A's columns
    Mat X(A.f, A.cols, K.cols);
    for (int i = 0; i < A.cols; ++i)
        for (int j = 0; j < K.cols; ++j) X.at(i, j) = K.at(i, j);
    return col_basis(mat_mul(A, X));
}

std::optional<std::vector<std::uint64_t>> solve(const Mat& A, const std::vector<std::uint64_t>& b) {
    if (static_cast<int>(b.size()) != A.rows) throw std::invalid_argument("rhs size mismatch");
    Mat M(A.f, A.rows, A.cols + 1);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) M.at(i, j) = A.at(i, j);
        M.at(i, A.cols) = b[static_cast<size_t>(i)];
    }
    std::vector<int> piv = rref(M);
    if (!piv.empty() && piv.back() == A.cols) return std::nullopt;
    std::vector<std::uint64_t> x(static_cast<size_t>(A.cols), 0);
    for (size_t r = 0; r < piv.size(); ++r) x[static_cast<size_t>(piv[r])] = M.at(static_cast<int>(r), A.cols);
    return x;
}

std::optional<Mat> solve_many(const Mat& A, const Mat& B) {
    if (A.rows != B.rows) throw std::invalid_argument("rhs rows mismatch");
    Mat X(A.f, A.cols, B.cols);
    for (int j = 0; j < B.cols; ++j) {
        std::vector<std::uint64_t> b(static_cast<size_t>(B.rows));
        for (int i = 0; i < B.rows; ++i) b[static_cast<size_t>(i)] = B.at(i, j);
        auto x = solve(A, b);
        if (!x) return std::nullopt;
        for (int i = 0; i < A.cols; ++i) X.at(i, j) = (*x)[static_cast<size_t>(i)];
    }
    return X;
}

std::uint64_t det(const Mat& A) {
    if (A.rows != A.cols) throw std::invalid_argument("determinant of non-square matrix");
    const FieldSpec& f = *A.f;
    Mat M = A;
    std::uint64_t d = 1;
    for (int c = 0; c < M.cols; ++c) {
        int sel = -1;
        for (int i = c; i < M.rows; ++i)
            if (M.at(i, c) != 0) { sel = i; break; }
        if (sel < 0) return 0;
        if (sel != c) {
            for (int j = 0; j < M.cols; ++j) std::swap(M.at(sel, j), M.at(c, j));
            d = f.neg(d);
        }
        d = f.mul(d, M.at(c, c));
        std::uint64_t inv = f.inv(M.at(c, c));
        for (int i = c + 1; i < M.rows; ++i) {
            if (M.at(i, c) == 0) continue;
            std::uint64_t factor = f.mul(M.at(i, c), inv);
            for (int j = c; j < M.cols; ++j)
                M.at(i, j) = f.sub(M.at(i, j), f.mul(factor, M.at(c, j)));
        }
    }
    return d;
}

namespace {

// remaining system solvable: every candidate subset from position i on fits
// inside its joint fresh rank over the current anchor
bool residual_feasible(const Mat& current, const std::vector<Mat>& candidates,
                       const std::vector<int>& remaining, size_t from,
                       std::vector<int>* violating) {
    size_t t = candidates.size();
    int span = static_cast<int>(t - from);
    for (int mask = 1; mask < (1 << span); ++mask) {
        std::vector<Mat> sel;
        int need = 0;
        for (int b = 0; b < span; ++b)
            if (mask & (1 << b)) {
                sel.push_back(candidates[from + static_cast<size_t>(b)]);
                need += remaining[from + static_cast<size_t>(b)];
            }
        if (need > conditional_rank(hcat(sel), current)) {
            if (violating)
                for (int b = 0; b < span; ++b)
                    if (mask & (1 << b)) violating->push_back(static_cast<int>(from) + b);
            return false;
        }
    }
    return true;
}

}  // namespace

ExtendResult extend_basis(const Mat& anchor, const std::vector<Mat>& candidates,
                          const std::vector<int>& targets) {
    if (candidates.size() != targets.size()) throw std::invalid_argument("targets size mismatch");
    ExtendResult res;
    size_t t = candidates.size();
    std::vector<int> remaining = targets;
    if (!residual_feasible(anchor, candidates, remaining, 0, &res.violating_subset)) return res;
    Mat current = anchor;
    int cur_rank = rank(anchor);
    for (size_t i = 0; i < t; ++i) {
        Mat pick(anchor.f, anchor.rows, 0);
        const Mat cb = col_basis(candidates[i]);
        const FieldSpec& f = *anchor.f;
        std::uint64_t q = f.order();
        while (remaining[i] > 0) {
            // enumerate span vectors: canonical columns first, then all
            // mixtures in integer encoding order; accept the first one that
            // grows the rank and keeps the remaining system feasible
            bool accepted = false;
            std::uint64_t total = 1;
            for (int j = 0; j < cb.cols; ++j) total *= q;
            for (std::uint64_t step = 0; step < static_cast<std::uint64_t>(cb.cols) + total && !accepted; ++step) {
                Mat cand(anchor.f, anchor.rows, 1);
                if (step < static_cast<std::uint64_t>(cb.cols)) {
                    cand = column(cb, static_cast<int>(step));
                } else {
                    std::uint64_t e = step - static_cast<std::uint64_t>(cb.cols);
                    for (int j = 0; j < cb.cols; ++j) {
                        std::uint64_t cj = e % q; e /= q;
                        if (cj == 0) continue;
                        for (int r = 0; r < anchor.rows; ++r)
                            cand.at(r, 0) = f.add(cand.at(r, 0), f.mul(cj, cb.at(r, j)));
                    }
                }
                Mat next = hcat(current, cand);
                if (rank(next) != cur_rank + 1) continue;
                remaining[i] -= 1;
                if (residual_feasible(next, candidates, remaining, i, nullptr)) {
                    pick = hcat(pick, cand);
                    current = std::move(next);
                    ++cur_rank;
                    accepted = true;
                } else {
                    remaining[i] += 1;
                }
            }
            if (!accepted) throw std::logic_error("extend_basis exchange argument violated");
        }
        res.picks.push_back(pick);
    }
    res.ok = true;
    return res;
}

Mat random_matrix(const Field& f, int r, int c, Rng& rng) {
    Mat M(f, r, c);
    for (auto& v : M.a) v = sample_uniform(*f, rng);
    return M;
}

}  // namespace lcbc
