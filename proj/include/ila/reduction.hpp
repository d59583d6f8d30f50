#pragma once

// Lattice reductions for integer least squares: the QRZ factorization
// Q^T H Z = [R; 0] with unimodular Z, computed either by LLL (size reduce on
// every visit) or by partial LLL (size reduce only ahead of a permutation).

#include "ila/core.hpp"
#include "ila/qr.hpp"

namespace ila {

/// min_z ||y_hat - R z||^2 + offset, equivalent to min_x ||y - H x||^2 under
/// x = Z z.
template <typename Scalar>
struct ReducedProblem {
    Matrix<Scalar> r;       // n x n upper triangular, nonzero diagonal
    IntMatrix z;            // n x n unimodular
    Vector<Scalar> y_hat;   // length n
    Scalar offset{0};       // ||y - Q1 Q1^T y||^2, untouched by the choice of z

    Index size() const { return r.cols(); }
};

// Swaps need a strict gain beyond rounding noise; without it a near-tie can
// swap back and forth forever.
template <typename Scalar>
inline constexpr Scalar swap_margin = Scalar(1) + Scalar(64) * std::numeric_limits<Scalar>::epsilon();

namespace detail {

template <typename Scalar>
ReducedProblem<Scalar> start_reduction(const QrFactorization<Scalar>& qr, const Vector<Scalar>& y)
{
    if (y.size() != qr.q.rows())
        throw std::invalid_argument("reduction: y length does not match the rows of H");
    ReducedProblem<Scalar> rp;
    rp.r = qr.r;
    rp.y_hat = qr.q.transpose() * y;
    rp.offset = std::max(Scalar(0), (y - qr.q * rp.y_hat).squaredNorm());
    const Index n = qr.r.cols();
    rp.z = IntMatrix::Zero(n, n);
    for (Index i = 0; i < n; ++i)
        rp.z(qr.columns[std::size_t(i)], i) = 1;
    return rp;
}

// Swap columns k-1 and k, then restore triangularity with one rotation.
template <typename Scalar>
void permute_adjacent(ReducedProblem<Scalar>& rp, Index k)
{
    rp.r.col(k - 1).swap(rp.r.col(k));
    rp.z.col(k - 1).swap(rp.z.col(k));
    zero_below(rp.r, k - 1, k - 1, rp.y_hat);
}

} // namespace detail

/// Apply the integer Gauss transformation Z_ij = I - zeta e_i e_j^T (i < j)
/// with zeta = round(r_ij / r_ii), so that afterwards |r_ij| <= |r_ii| / 2.
/// Returns zeta; zeta == 0 leaves R and Z untouched.
template <typename Scalar>
std::int64_t integer_gauss_transform(Matrix<Scalar>& r, IntMatrix& z, Index i, Index j)
{
    if (!(i < j))
        throw std::invalid_argument("integer_gauss_transform: requires i < j");
    const std::int64_t zeta = round_to_int(r(i, j) / r(i, i));
    if (zeta == 0)
        return 0;
    r.col(j).head(i + 1) -= Scalar(zeta) * r.col(i).head(i + 1);
    for (Index row = 0; row < z.rows(); ++row)
        z(row, j) = checked_sub(z(row, j), checked_mul(zeta, z(row, i)));
    return zeta;
}

/// LLL reduction. On return R is size reduced and satisfies
/// delta * r_{k-1,k-1}^2 <= r_{k-1,k}^2 + r_{k,k}^2 for every k.
template <typename DerivedH, typename DerivedY>
ReducedProblem<typename DerivedH::Scalar> lll_reduce(const Eigen::MatrixBase<DerivedH>& h,
                                                     const Eigen::MatrixBase<DerivedY>& y,
                                                     typename DerivedH::Scalar delta = 1)
{
    using Scalar = typename DerivedH::Scalar;
    if (!(delta > Scalar(0.25) && delta <= Scalar(1)))
        throw std::invalid_argument("lll_reduce: delta must lie in (1/4, 1]");
    auto rp = detail::start_reduction(householder_qr(h), Vector<Scalar>(y));
    auto& r = rp.r;
    const Index n = rp.size();

    Index k = 1;
    while (k < n) {
        for (Index i = k - 1; i >= 0; --i)
            integer_gauss_transform(r, rp.z, i, k);
        const Scalar lhs = delta * r(k - 1, k - 1) * r(k - 1, k - 1);
        if (lhs > swap_margin<Scalar> * (r(k - 1, k) * r(k - 1, k) + r(k, k) * r(k, k))) {
            detail::permute_adjacent(rp, k);
            if (k > 1)
                --k;
        } else {
            ++k;
        }
    }
    return rp;
}

/// Partial LLL reduction: starts from a minimum-norm pivoted QR and applies
/// integer Gauss transformations only to columns about to be permuted.
/// Guarantees the Lovasz-type condition (delta = 1) on adjacent diagonal
/// pairs; full size reduction is not guaranteed.
template <typename DerivedH, typename DerivedY>
ReducedProblem<typename DerivedH::Scalar> plll_reduce(const Eigen::MatrixBase<DerivedH>& h,
                                                      const Eigen::MatrixBase<DerivedY>& y)
{
    using Scalar = typename DerivedH::Scalar;
    auto rp = detail::start_reduction(householder_qr(h, ColumnPivoting::min_norm), Vector<Scalar>(y));
    auto& r = rp.r;
    const Index n = rp.size();

    Index k = 1;
    while (k < n) {
        const std::int64_t zeta = round_to_int(r(k - 1, k) / r(k - 1, k - 1));
        const Scalar alpha = r(k - 1, k) - Scalar(zeta) * r(k - 1, k - 1);
        if (r(k - 1, k - 1) * r(k - 1, k - 1) > swap_margin<Scalar> * (alpha * alpha + r(k, k) * r(k, k))) {
            if (zeta != 0) {
                integer_gauss_transform(r, rp.z, k - 1, k);
                for (Index i = k - 2; i >= 0; --i)
                    integer_gauss_transform(r, rp.z, i, k);
            }
            detail::permute_adjacent(rp, k);
            if (k > 1)
                --k;
        } else {
            ++k;
        }
    }
    return rp;
}

} // namespace ila
