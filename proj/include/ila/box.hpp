#pragma once

// Box-constrained integer least squares: min ||y - H x||^2 subject to
// lower <= x <= upper componentwise. Column reordering uses both H and the
// box; the search adds a per-level lower bound from the box to its pruning.

#include "ila/ils.hpp"
#include "ila/qr.hpp"
#include "ila/search.hpp"

#include <optional>
#include <utility>

namespace ila {

/// Integer interval [lower, upper].
struct Interval {
    std::int64_t lower = 0;
    std::int64_t upper = 0;

    bool empty() const { return lower > upper; }
    bool contains(std::int64_t v) const { return lower <= v && v <= upper; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// B = B_1 x ... x B_n with B_i = {x_i : lower_i <= x_i <= upper_i}.
struct BoxConstraint {
    IntVector lower;
    IntVector upper;

    static BoxConstraint uniform(Index n, Interval range)
    {
        return {IntVector::Constant(n, range.lower), IntVector::Constant(n, range.upper)};
    }

    Index size() const { return lower.size(); }
    Interval operator[](Index i) const { return {lower(i), upper(i)}; }
    bool empty() const { return (lower.array() > upper.array()).any(); }

    bool contains(const IntVector& x) const
    {
        return x.size() == size() && (x.array() >= lower.array()).all() && (x.array() <= upper.array()).all();
    }

    void validate(Index n) const
    {
        if (lower.size() != n || upper.size() != n)
            throw std::invalid_argument("box dimension does not match the problem");
        if (empty())
            throw EmptyBoxError("box constraint has an empty interval");
    }
};

struct InBoxRounding {
    std::int64_t nearest;
    std::optional<std::int64_t> second;
};

/// Closest and second-closest integers of `range` to `c`.
template <typename Scalar>
InBoxRounding in_box_rounding(Scalar c, Interval range)
{
    if (range.empty())
        throw EmptyBoxError("in_box_rounding: empty interval");
    InBoxRounding out{};
    if (c <= Scalar(range.lower))
        out.nearest = range.lower;
    else if (c >= Scalar(range.upper))
        out.nearest = range.upper;
    else
        out.nearest = std::clamp(round_to_int(c), range.lower, range.upper);
    if (range.lower == range.upper)
        return out;
    const bool has_below = out.nearest > range.lower;
    const bool has_above = out.nearest < range.upper;
    if (has_below && has_above)
        out.second = c > Scalar(out.nearest) ? out.nearest + 1 : out.nearest - 1;
    else
        out.second = has_above ? out.nearest + 1 : out.nearest - 1;
    return out;
}

template <typename Scalar>
struct BoxReduction {
    ReducedProblem<Scalar> problem;  // z is a permutation matrix
    BoxConstraint box;               // box in reduced coordinates, box_k = B_{perm(k)}
};

/// Column-reordering reduction for the boxed problem.
///
/// Levels are fixed from the last (k = n-1) down to 1. At each level every
/// remaining column i is scored by the gap between the conditional center it
/// would get at level k and its second-nearest in-box integer, scaled by
/// 1 / ||R^{-T} e_i||; the column with the largest score is rotated to position
/// k (the columns after it shift left) and R is restored to triangular form.
/// S = R^{-T} is updated alongside R so that scoring needs no triangular solves.
template <typename DerivedH, typename DerivedY>
BoxReduction<typename DerivedH::Scalar> mch_reduce(const Eigen::MatrixBase<DerivedH>& h,
                                                   const Eigen::MatrixBase<DerivedY>& y, const BoxConstraint& box)
{
    using Scalar = typename DerivedH::Scalar;
    const Index n = h.cols();
    box.validate(n);
    auto rp = detail::start_reduction(householder_qr(h), Vector<Scalar>(y));
    BoxReduction<Scalar> out;
    out.box = box;

    Matrix<Scalar>& r = rp.r;
    Matrix<Scalar> s = r.template triangularView<Eigen::Upper>()
                           .solve(Matrix<Scalar>::Identity(n, n))
                           .transpose();
    Vector<Scalar> y_work = rp.y_hat;

    for (Index k = n - 1; k >= 1; --k) {
        const Index len = k + 1;
        Scalar max_gap = -1;
        Index j = 0;
        std::int64_t fixed_value = 0;
        for (Index i = 0; i < len; ++i) {
            const auto column = s.col(i).segment(i, len - i);
            const Scalar alpha = y_work.segment(i, len - i).dot(column);
            const auto rounded = in_box_rounding(alpha, out.box[i]);
            // A singleton interval admits no alternative, so it is always
            // the most decisive column.
            const Scalar gap = rounded.second
                                   ? std::abs(alpha - Scalar(*rounded.second)) / column.norm()
                                   : std::numeric_limits<Scalar>::infinity();
            if (gap > max_gap) {
                max_gap = gap;
                j = i;
                fixed_value = rounded.nearest;
            }
        }

        y_work.head(len) -= r.col(j).head(len) * Scalar(fixed_value);
        if (j != k) {
            // Rotate column j to position k; columns j+1..k shift left.
            for (Index c = j; c < k; ++c) {
                r.col(c).swap(r.col(c + 1));
                s.col(c).swap(s.col(c + 1));
                rp.z.col(c).swap(rp.z.col(c + 1));
                std::swap(out.box.lower(c), out.box.lower(c + 1));
                std::swap(out.box.upper(c), out.box.upper(c + 1));
            }
            for (Index p = j; p < k; ++p) {
                Eigen::JacobiRotation<Scalar> g;
                g.makeGivens(r(p, p), r(p + 1, p));
                r.applyOnTheLeft(p, p + 1, g.adjoint());
                r(p + 1, p) = Scalar(0);
                s.applyOnTheLeft(p, p + 1, g.adjoint());
                y_work.applyOnTheLeft(p, p + 1, g.adjoint());
                rp.y_hat.applyOnTheLeft(p, p + 1, g.adjoint());
            }
        }
    }
    out.problem = std::move(rp);
    return out;
}

/// Per-level lower bounds on the residual contribution of the levels below:
/// for every feasible z, sum_{i<k} (y_hat_i - sum_{j>=i} r_ij z_j)^2 >= gamma(k).
template <typename Scalar>
struct BoundTable {
    Vector<Scalar> delta;
    Vector<Scalar> gamma;
};

template <typename Scalar>
BoundTable<Scalar> compute_bound_table(const Matrix<Scalar>& r, const Vector<Scalar>& y_hat, const BoxConstraint& box)
{
    const Index n = r.cols();
    constexpr Scalar straddle_tol = Scalar(1e-12);
    BoundTable<Scalar> out{Vector<Scalar>::Zero(n), Vector<Scalar>::Zero(n)};
    for (Index k = 0; k < n; ++k) {
        Scalar hi_sum = 0;
        Scalar lo_sum = 0;
        for (Index i = k; i < n; ++i) {
            const Scalar a = r(k, i) * Scalar(box.lower(i));
            const Scalar b = r(k, i) * Scalar(box.upper(i));
            hi_sum += std::max(a, b);
            lo_sum += std::min(a, b);
        }
        const Scalar low_end = y_hat(k) - hi_sum;
        const Scalar high_end = y_hat(k) - lo_sum;
        const bool same_sign = (low_end > straddle_tol && high_end > straddle_tol) ||
                               (low_end < -straddle_tol && high_end < -straddle_tol);
        if (same_sign)
            out.delta(k) = std::min(low_end * low_end, high_end * high_end);
    }
    for (Index k = 1; k < n; ++k)
        out.gamma(k) = out.gamma(k - 1) + out.delta(k - 1);
    return out;
}

/// Global minimizer of ||y_hat - R z||^2 over z in `box`, or empty when the
/// box is empty or nothing lies strictly inside beta0.
template <typename Scalar>
std::optional<IntVector> boxed_search(const ReducedProblem<Scalar>& rp, const BoxConstraint& box,
                                      const BoundTable<Scalar>& bounds,
                                      Scalar beta0 = std::numeric_limits<Scalar>::infinity(),
                                      SearchStats* stats = nullptr)
{
    if (box.size() != rp.size())
        throw std::invalid_argument("boxed_search: box dimension mismatch");
    if (box.empty())
        return std::nullopt;
    return detail::enumerate<Scalar>(rp.r, rp.y_hat, &box.lower, &box.upper, &bounds.gamma, beta0, stats);
}

template <typename DerivedH, typename DerivedY>
IlsSolution<typename DerivedH::Scalar> solve_ilsb(const Eigen::MatrixBase<DerivedH>& h,
                                                  const Eigen::MatrixBase<DerivedY>& y, const BoxConstraint& box,
                                                  SearchStats* stats = nullptr)
{
    using Scalar = typename DerivedH::Scalar;
    const auto reduced = mch_reduce(h, y, box);
    const auto bounds = compute_bound_table(reduced.problem.r, reduced.problem.y_hat, reduced.box);
    const auto z = boxed_search(reduced.problem, reduced.box, bounds, std::numeric_limits<Scalar>::infinity(), stats);
    IlsSolution<Scalar> out;
    out.x = recover(reduced.problem.z, *z);
    out.residual_sq = residual_sq(h, y, out.x);
    return out;
}

} // namespace ila
