#pragma once

// Householder QR with optional ascending-norm column pivoting, plus the
// Givens helpers used to re-triangularize R after column permutations.

#include "ila/core.hpp"

#include <Eigen/Householder>
#include <Eigen/Jacobi>

#include <numeric>
#include <vector>

namespace ila {

enum class ColumnPivoting {
    none,
    /// At step i, bring forward the remaining column whose component
    /// orthogonal to the already-factored columns has the smallest norm.
    min_norm,
};

template <typename Scalar>
struct QrFactorization {
    Matrix<Scalar> q;            // m x n, orthonormal columns
    Matrix<Scalar> r;            // n x n, upper triangular
    std::vector<Index> columns;  // column i of Q*R is column columns[i] of H
};

/// Thin QR of a tall matrix, H(:, columns) = Q * R.
///
/// Throws RankDeficientError when some |r_ii| <= tol * ||H||_F.
template <typename Derived>
QrFactorization<typename Derived::Scalar> householder_qr(const Eigen::MatrixBase<Derived>& h,
                                                          ColumnPivoting pivoting = ColumnPivoting::none,
                                                          typename Derived::Scalar tol = 1e-10)
{
    using Scalar = typename Derived::Scalar;
    const Index m = h.rows();
    const Index n = h.cols();
    if (n == 0)
        throw std::invalid_argument("householder_qr: matrix has no columns");
    if (m < n)
        throw RankDeficientError("householder_qr: fewer rows than columns");
    if (!h.allFinite())
        throw std::invalid_argument("householder_qr: non-finite entry");

    Matrix<Scalar> a = h;
    const Scalar threshold = tol * a.norm();
    std::vector<Index> columns(static_cast<std::size_t>(n));
    std::iota(columns.begin(), columns.end(), Index{0});

    std::vector<Vector<Scalar>> essentials;
    std::vector<Scalar> taus;
    essentials.reserve(static_cast<std::size_t>(n));
    taus.reserve(static_cast<std::size_t>(n));
    Vector<Scalar> workspace(n);

    for (Index i = 0; i < n; ++i) {
        if (pivoting == ColumnPivoting::min_norm) {
            Index best = i;
            Scalar best_norm = a.col(i).tail(m - i).squaredNorm();
            for (Index j = i + 1; j < n; ++j) {
                const Scalar norm = a.col(j).tail(m - i).squaredNorm();
                if (norm < best_norm) {
                    best_norm = norm;
                    best = j;
                }
            }
            if (best != i) {
                a.col(i).swap(a.col(best));
                std::swap(columns[std::size_t(i)], columns[std::size_t(best)]);
            }
        }

        Vector<Scalar> essential(m - i - 1);
        Scalar tau;
        Scalar beta;
        a.col(i).tail(m - i).makeHouseholder(essential, tau, beta);
        if (i + 1 < n)
            a.bottomRightCorner(m - i, n - i - 1).applyHouseholderOnTheLeft(essential, tau, workspace.data());
        a(i, i) = beta;
        a.col(i).tail(m - i - 1).setZero();
        if (!(std::abs(beta) > threshold))
            throw RankDeficientError("matrix is not of full column rank (|r_" + std::to_string(i + 1) + "," +
                                     std::to_string(i + 1) + "| below tolerance)");
        essentials.push_back(std::move(essential));
        taus.push_back(tau);
    }

    QrFactorization<Scalar> out;
    out.r = a.topRows(n).template triangularView<Eigen::Upper>();
    out.q = Matrix<Scalar>::Identity(m, n);
    for (Index i = n - 1; i >= 0; --i)
        out.q.bottomRows(m - i).applyHouseholderOnTheLeft(essentials[std::size_t(i)], taus[std::size_t(i)],
                                                           workspace.data());
    out.columns = std::move(columns);
    return out;
}

/// Rotate rows (row, row + 1) of `r` so that r(row + 1, col) becomes zero;
/// the same rotation is applied to each extra matrix or vector given.
template <typename Scalar, typename... Extra>
void zero_below(Matrix<Scalar>& r, Index row, Index col, Extra&... extra)
{
    Eigen::JacobiRotation<Scalar> g;
    g.makeGivens(r(row, col), r(row + 1, col));
    r.applyOnTheLeft(row, row + 1, g.adjoint());
    r(row + 1, col) = Scalar(0);
    (extra.applyOnTheLeft(row, row + 1, g.adjoint()), ...);
}

} // namespace ila
