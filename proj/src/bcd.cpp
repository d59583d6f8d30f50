#include "ila/bcd.hpp"

#include "ila/parallel.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace ila {

std::int64_t residual(const IntMatrix& a, const IntMatrix& u, const IntMatrix& v)
{
    if (u.rows() != a.rows() || v.cols() != a.cols() || u.cols() != v.rows())
        throw std::invalid_argument("residual: dimensions do not conform");
    const IntMatrix uv = multiply_checked(u, v);
    std::int64_t total = 0;
    for (Index j = 0; j < a.cols(); ++j)
        for (Index i = 0; i < a.rows(); ++i) {
            const std::int64_t d = checked_sub(a(i, j), uv(i, j));
            total = checked_add(total, checked_mul(d, d));
        }
    return total;
}

namespace {

bool has_orthonormal_rows(const IntMatrix& v)
{
    return multiply_checked(v, IntMatrix(v.transpose())) == IntMatrix::Identity(v.rows(), v.rows());
}

// Rows below this count are solved sequentially; thread start-up dominates.
constexpr std::size_t min_parallel_rows = 64;

} // namespace

IntMatrix round_project_orthonormal(const IntMatrix& a, const IntMatrix& v)
{
    if (a.cols() != v.cols())
        throw std::invalid_argument("round_project_orthonormal: dimensions do not conform");
    if (!has_orthonormal_rows(v))
        throw NotOrthonormalError("round_project_orthonormal: V V^T is not the identity");
    // A and V are integral, so A V^T needs no rounding.
    return multiply_checked(a, IntMatrix(v.transpose()));
}

IntVector rounded_real_ls(const RealMatrix& h, const RealVector& y, const std::optional<BoxConstraint>& box)
{
    const auto qr = householder_qr(h);
    const RealVector rhs = qr.q.transpose() * y;
    const RealVector solution = qr.r.triangularView<Eigen::Upper>().solve(rhs);
    IntVector x(h.cols());
    for (Index i = 0; i < x.size(); ++i)
        x(i) = round_to_int(solution(i));
    if (box) {
        box->validate(h.cols());
        x = x.cwiseMax(box->lower).cwiseMin(box->upper);
    }
    return x;
}

FactorUpdate update_u(const IntMatrix& a, const IntMatrix& v, const std::optional<Interval>& box,
                      SubproblemMethod method)
{
    if (a.cols() != v.cols())
        throw std::invalid_argument("update_u: A and V have different column counts");
    const Index m = a.rows();
    const Index k = v.rows();
    FactorUpdate out{IntMatrix(m, k), std::vector<std::uint64_t>(std::size_t(m), 0)};

    if (method == SubproblemMethod::integer_ls && !box && has_orthonormal_rows(v)) {
        out.factor = round_project_orthonormal(a, v);
        return out;
    }

    const RealMatrix h = v.transpose().cast<double>();
    std::optional<BoxConstraint> row_box;
    if (box)
        row_box = BoxConstraint::uniform(k, *box);
    if (row_box && row_box->empty())
        throw EmptyBoxError("update_u: empty factor box");

    parallel_for(
        std::size_t(m),
        [&](std::size_t i) {
            const RealVector y = a.row(Index(i)).transpose().cast<double>();
            SearchStats stats;
            IntVector x;
            if (method == SubproblemMethod::rounded_real_ls)
                x = rounded_real_ls(h, y, row_box);
            else if (row_box)
                x = solve_ilsb(h, y, *row_box, &stats).x;
            else
                x = solve_ils(h, y, &stats).x;
            out.factor.row(Index(i)) = x.transpose();
            out.nodes[i] = stats.nodes;
        },
        min_parallel_rows);
    return out;
}

FactorUpdate update_v(const IntMatrix& a, const IntMatrix& u, const std::optional<Interval>& box,
                      SubproblemMethod method)
{
    auto t = update_u(IntMatrix(a.transpose()), IntMatrix(u.transpose()), box, method);
    t.factor.transposeInPlace();
    return t;
}

IntMatrix init_most_frequent(const IntMatrix& a, Index k)
{
    if (k < 1)
        throw std::invalid_argument("init_most_frequent: k must be positive");
    const Index m = a.rows();
    IntMatrix v(k, a.cols());
    for (Index j = 0; j < a.cols(); ++j) {
        std::map<std::int64_t, Index> counts;
        for (Index i = 0; i < m; ++i)
            ++counts[a(i, j)];
        std::vector<std::pair<std::int64_t, Index>> ranked(counts.begin(), counts.end());
        std::stable_sort(ranked.begin(), ranked.end(),
                         [](const auto& x, const auto& y) { return x.second > y.second; });

        std::vector<std::int64_t> sorted(a.col(j).begin(), a.col(j).end());
        std::sort(sorted.begin(), sorted.end());
        const std::int64_t median = sorted[std::size_t((m - 1) / 2)];
        auto closest = ranked.begin();
        for (auto it = ranked.begin(); it != ranked.end() && it->second == ranked.front().second; ++it) {
            const auto d = [&](std::int64_t x) { return x > median ? x - median : median - x; };
            if (d(it->first) < d(closest->first))
                closest = it;
        }
        std::rotate(ranked.begin(), closest, closest + 1);

        for (Index r = 0; r < k; ++r)
            v(r, j) = r < Index(ranked.size()) ? ranked[std::size_t(r)].first
                                               : checked_add(ranked.front().first, r);
    }
    return v;
}

IntMatrix init_random(Index rows, Index cols, Interval range, std::uint64_t seed)
{
    if (range.empty())
        throw EmptyBoxError("init_random: empty range");
    std::mt19937_64 gen(seed);
    std::uniform_int_distribution<std::int64_t> dist(range.lower, range.upper);
    IntMatrix out(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j)
            out(i, j) = dist(gen);
    return out;
}

std::string to_string(FactorizationStatus status)
{
    switch (status) {
    case FactorizationStatus::converged:
        return "converged";
    case FactorizationStatus::max_sweeps:
        return "max_sweeps";
    case FactorizationStatus::rank_deficient_failure:
        return "rank_deficient_failure";
    }
    return "unknown";
}

namespace {

IntMatrix initial_v(const IntMatrix& a, const FactorizationConfig& config)
{
    const Index k = config.rank;
    return std::visit(
        [&](const auto& init) -> IntMatrix {
            using T = std::decay_t<decltype(init)>;
            if constexpr (std::is_same_v<T, InitMostFrequent>) {
                return init_most_frequent(a, k);
            } else if constexpr (std::is_same_v<T, InitRandom>) {
                Interval range{std::min<std::int64_t>(a.minCoeff(), 0), std::max<std::int64_t>(a.maxCoeff(), 1)};
                if (init.range)
                    range = *init.range;
                else if (config.box_v)
                    range = *config.box_v;
                return init_random(k, a.cols(), range, init.seed);
            } else {
                if (init.factor.rows() != k || init.factor.cols() != a.cols())
                    throw std::invalid_argument("explicit initial factor has the wrong shape");
                return init.factor;
            }
        },
        config.init);
}

FactorizationResult factorize_u_first(const IntMatrix& a, const FactorizationConfig& config)
{
    FactorizationResult result;
    result.v = initial_v(a, config);
    result.u = IntMatrix::Zero(a.rows(), config.rank);

    auto finish = [&](FactorizationStatus status) {
        result.status = status;
        result.final_residual = residual(a, result.u, result.v);
        return result;
    };

    IntMatrix prev_u;
    IntMatrix prev_v;
    for (int sweep = 1; sweep <= config.max_sweeps; ++sweep) {
        result.sweeps = sweep;
        try {
            auto upd = update_u(a, result.v, config.box_u, config.method);
            result.u = std::move(upd.factor);
            result.nodes.push_back(std::move(upd.nodes));
        } catch (const RankDeficientError&) {
            return finish(FactorizationStatus::rank_deficient_failure);
        }
        result.residual_history.push_back(residual(a, result.u, result.v));
        if (result.residual_history.back() == 0)
            return finish(FactorizationStatus::converged);

        try {
            auto upd = update_v(a, result.u, config.box_v, config.method);
            result.v = std::move(upd.factor);
            result.nodes.push_back(std::move(upd.nodes));
        } catch (const RankDeficientError&) {
            return finish(FactorizationStatus::rank_deficient_failure);
        }
        result.residual_history.push_back(residual(a, result.u, result.v));
        if (result.residual_history.back() == 0)
            return finish(FactorizationStatus::converged);

        if (sweep > 1 && result.u == prev_u && result.v == prev_v)
            return finish(FactorizationStatus::converged);
        prev_u = result.u;
        prev_v = result.v;
    }
    return finish(FactorizationStatus::max_sweeps);
}

} // namespace

FactorizationResult bcd_factorize(const IntMatrix& a, const FactorizationConfig& config)
{
    if (config.rank < 1 || config.rank >= std::min(a.rows(), a.cols()))
        throw std::invalid_argument("rank must satisfy 1 <= k < min(m, n)");
    if (config.max_sweeps < 1)
        throw std::invalid_argument("max_sweeps must be positive");
    for (const auto& box : {config.box_u, config.box_v})
        if (box && box->empty())
            throw EmptyBoxError("factor box is empty");

    if (config.order == UpdateOrder::u_first)
        return factorize_u_first(a, config);

    // Updating V first on A is updating U first on A^T.
    FactorizationConfig flipped = config;
    flipped.order = UpdateOrder::u_first;
    std::swap(flipped.box_u, flipped.box_v);
    if (auto* init = std::get_if<InitExplicit>(&flipped.init))
        init->factor.transposeInPlace();
    auto t = factorize_u_first(IntMatrix(a.transpose()), flipped);
    FactorizationResult out;
    out.u = t.v.transpose();
    out.v = t.u.transpose();
    out.residual_history = std::move(t.residual_history);
    out.status = t.status;
    out.sweeps = t.sweeps;
    out.nodes = std::move(t.nodes);
    out.final_residual = t.final_residual;
    return out;
}

} // namespace ila
