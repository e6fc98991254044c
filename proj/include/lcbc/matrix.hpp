#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lcbc/field.hpp"

namespace lcbc {

/// Dense matrix over a finite field, row-major, entries as integer encodings.
/// Width-0 and height-0 matrices are legal everywhere and act as identities
/// for concatenation and union.
struct Mat {
    Field f;
    int rows = 0;
    int cols = 0;
    std::vector<std::uint64_t> a;

    Mat() = default;
    Mat(Field fld, int r, int c) : f(std::move(fld)), rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

    std::uint64_t& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    std::uint64_t at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

    bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

Mat mat_identity(const Field& f, int n);
Mat hcat(const Mat& A, const Mat& B);
Mat hcat(const std::vector<Mat>& parts);
Mat column(const Mat& A, int j);
Mat mat_mul(const Mat& A, const Mat& B);
Mat mat_add(const Mat& A, const Mat& B);
Mat mat_neg(const Mat& A);
Mat transpose(const Mat& A);
bool is_zero(const Mat& A);

/// Re-encodes every entry of a base-field matrix into the extension field.
Mat embed_matrix(const Mat& A, const Embedding& e);

int rank(const Mat& A);

/// rank([M1, M2]) - rank(M2): the fresh dimensions M1 adds given M2.
int conditional_rank(const Mat& M1, const Mat& M2);

/// Canonical subspace representative: reduced column echelon form with
/// strictly increasing pivot rows, unit pivots, zeros elsewhere in pivot
/// rows. Equal subspaces yield entry-wise identical bases.
Mat col_basis(const Mat& A);

/// Columns span the right null space; always in canonical form.
Mat kernel(const Mat& A);

/// Canonical basis of the sum of the column spans.
Mat span_union(const std::vector<Mat>& parts);

/// Canonical basis of the intersection, via the kernel of [A | -B].
Mat span_intersect(const Mat& A, const Mat& B);

/// Any solution of A x = b with free variables zeroed in pivot order,
/// or nullopt when inconsistent.
std::optional<std::vector<std::uint64_t>> solve(const Mat& A, const std::vector<std::uint64_t>& b);

/// Solves A X = B columnwise; nullopt if any column is inconsistent.
std::optional<Mat> solve_many(const Mat& A, const Mat& B);

std::uint64_t det(const Mat& A);  // square input

/// Greedy basis extension: per-candidate column selections of the requested
/// widths so that [anchor, picks...] has full column rank. Feasible exactly
/// when every candidate subset L satisfies
///   sum targets[L] <= conditional_rank(candidates[L], anchor);
/// the first violating subset is reported otherwise. Column search tries the
/// candidate's canonical basis columns first, then all mixtures in integer
/// encoding order.
struct ExtendResult {
    bool ok = false;
    std::vector<Mat> picks;
    std::vector<int> violating_subset;  // candidate indices, empty when ok
};
ExtendResult extend_basis(const Mat& anchor, const std::vector<Mat>& candidates,
                          const std::vector<int>& targets);

/// Uniformly random r x c matrix.
Mat random_matrix(const Field& f, int r, int c, Rng& rng);

}  // namespace lcbc
