// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance [--expect-fail ID]...
//
// Exits 0 when the set of failing criteria equals the expected set, 1
// otherwise. Without --expect-fail any failure is fatal.

#include "fixtures.hpp"
#include "oracle.hpp"

#include "ila/bcd.hpp"
#include "ila/experiments.hpp"
#include "ila/ils.hpp"
#include "ila/reduction.hpp"

#include <Eigen/LU>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

using namespace ila;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Every exact-solver factorization run made by this binary.
struct DescentLog {
    int runs = 0;
    int violations = 0;

    FactorizationResult operator()(const IntMatrix& a, const FactorizationConfig& config)
    {
        auto result = bcd_factorize(a, config);
        if (config.method == SubproblemMethod::integer_ls) {
            ++runs;
            if (!fixtures::non_increasing(result.residual_history))
                ++violations;
        }
        return result;
    }
};

DescentLog descent;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

Outcome rounding_counterexample()
{
    Outcome o;
    const RealMatrix h = fixtures::rounding_h();
    const RealVector y = fixtures::rounding_y();
    const auto start = Clock::now();
    const auto sol = solve_ils(h, y);
    const IntVector rounded = rounded_real_ls(h, y);
    const double ms = ms_since(start);
    const double rounded_res = std::sqrt(oracle::residual_sq(h, y, rounded));
    o.detail << "x=(" << sol.x(0) << "," << sol.x(1) << ") residual^2=" << sol.residual_sq << " rounded=("
             << rounded(0) << "," << rounded(1) << ") residual=" << rounded_res << " time=" << ms << "ms";
    o.require(sol.x(0) == 2 && sol.x(1) == 0, "x == (2,0)");
    o.require(sol.residual_sq == 1, "residual exactly 1");
    o.require(std::abs(rounded_res - std::sqrt(2.0)) <= 1e-10, "rounded residual sqrt(2)");
    o.require(ms < 1, "runtime < 1 ms");
    return o;
}

Outcome transaction_recovery()
{
    Outcome o;
    const IntMatrix a = fixtures::transaction_weights() * fixtures::transaction_patterns();
    FactorizationConfig config;
    config.rank = 2;
    config.init = InitExplicit{fixtures::transaction_patterns()};
    const auto start = Clock::now();
    const auto result = descent(a, config);
    const double ms = ms_since(start);
    const auto raw = descent(fixtures::transactions(), config);
    o.detail << "A=WP: residual=" << result.final_residual << " half-sweeps=" << result.residual_history.size()
             << " time=" << ms << "ms; raw transactions from the same V: first half-sweep residual="
             << raw.residual_history.front();
    o.require(result.final_residual == 0, "residual 0");
    o.require(result.residual_history.size() == 1, "one half-sweep");
    o.require(ms < 10, "runtime < 10 ms");
    return o;
}

Outcome transaction_runs()
{
    Outcome o;
    const IntMatrix a = fixtures::transactions();
    const auto start = Clock::now();
    const IntMatrix v0 = init_most_frequent(a, 2);
    FactorizationConfig config;
    config.rank = 2;
    config.init = InitExplicit{v0};
    config.box_u = Interval{0, 2};
    config.box_v = Interval{0, 4};
    const auto boxed = descent(a, config);
    config.box_u.reset();
    config.box_v.reset();
    const auto free = descent(a, config);
    const double ms = ms_since(start);
    o.detail << "V0 match=" << (v0 == fixtures::transaction_v0()) << " boxed residual=" << boxed.final_residual
             << " (" << boxed.sweeps << " sweeps) unconstrained residual=" << free.final_residual << " ("
             << free.sweeps << " sweeps) time=" << ms << "ms";
    o.require(v0 == fixtures::transaction_v0(), "V0 equals the printed start");
    o.require(boxed.final_residual == 1, "boxed residual exactly 1");
    o.require(free.final_residual <= 9, "unconstrained residual <= 9");
    o.require(ms < 100, "runtime < 100 ms");
    return o;
}

Outcome rank3_runs()
{
    Outcome o;
    const IntMatrix a = fixtures::rank3();
    const auto ra = residual(a, fixtures::rank3_u_a(), fixtures::rank3_v_a());
    const auto rb = residual(a, fixtures::rank3_u_b(), fixtures::rank3_v_b());
    FactorizationConfig config;
    config.rank = 3;
    config.box_u = Interval{1, 4};
    config.box_v = Interval{1, 4};
    config.init = InitExplicit{fixtures::rank3_start_a()};
    const auto run_a = descent(a, config);
    config.init = InitExplicit{fixtures::rank3_start_b()};
    const auto run_b = descent(a, config);
    o.detail << "printed factors: " << ra << ", " << rb << "; BCD from the two starts: " << run_a.final_residual
             << ", " << run_b.final_residual;
    o.require(ra == 23 && rb == 7, "printed residuals 23 and 7");
    o.require(run_a.final_residual <= 23, "first run <= 23");
    o.require(run_b.final_residual <= 7, "second run <= 7");
    return o;
}

Outcome oracle_equivalence()
{
    Outcome o;
    const auto start = Clock::now();
    std::mt19937_64 gen(101);
    int ils_checked = 0;
    int ils_match = 0;
    int resampled = 0;
    while (ils_checked < 500) {
        const Index n = 1 + ils_checked % 6;
        const Index m = n + ils_checked % 3;
        const RealMatrix h = oracle::random_full_rank(gen, m, n, 9);
        const RealVector y = oracle::random_real_vector(gen, m, 40);
        const auto best = oracle::enumerate_unconstrained(h, y);
        if (!best) {
            ++resampled;
            continue;
        }
        const auto sol = solve_ils(h, y);
        if (std::abs(sol.residual_sq - best->residual_sq) <= 1e-9 * std::max(1.0, best->residual_sq))
            ++ils_match;
        ++ils_checked;
    }
    int box_match = 0;
    std::uniform_int_distribution<std::int64_t> lo(-4, 4);
    std::uniform_int_distribution<std::int64_t> width(0, 5);
    for (int t = 0; t < 500; ++t) {
        const Index n = 1 + t % 5;
        const Index m = n + t % 3;
        const RealMatrix h = oracle::random_full_rank(gen, m, n, 9);
        const RealVector y = oracle::random_real_vector(gen, m, 40);
        BoxConstraint box{IntVector(n), IntVector(n)};
        for (Index i = 0; i < n; ++i) {
            box.lower(i) = lo(gen);
            box.upper(i) = box.lower(i) + width(gen);
        }
        const auto best = oracle::enumerate_box(h, y, box.lower, box.upper);
        const auto sol = solve_ilsb(h, y, box);
        if (box.contains(sol.x) &&
            std::abs(sol.residual_sq - best.residual_sq) <= 1e-9 * std::max(1.0, best.residual_sq))
            ++box_match;
    }
    const double ms = ms_since(start);
    o.detail << "ILS " << ils_match << "/500 (" << resampled << " oversized instances redrawn), ILSb " << box_match
             << "/500, time=" << ms / 1000 << "s";
    o.require(ils_match == 500, "all ILS instances match");
    o.require(box_match == 500, "all ILSb instances match");
    o.require(ms < 60000, "runtime < 60 s");
    return o;
}

Outcome reduction_invariants()
{
    Outcome o;
    std::mt19937_64 gen(102);
    int size_ok = 0, lovasz_ok = 0, unimodular = 0, preserved = 0, equal_opt = 0;
    constexpr int instances = 200;
    for (int t = 0; t < instances; ++t) {
        const Index n = 2 + t % 5;
        const Index m = n + t % 3;
        const RealMatrix h = oracle::random_full_rank(gen, m, n, 9);
        const RealVector y = oracle::random_real_vector(gen, m, 30);
        const auto rp = lll_reduce(h, y);
        const RealMatrix& r = rp.r;
        const double scale = r.cwiseAbs().maxCoeff();
        bool s = true, l = true;
        for (Index i = 0; i < n; ++i)
            for (Index j = i + 1; j < n; ++j)
                s = s && std::abs(r(i, j)) <= std::abs(r(i, i)) / 2 + 1e-9 * scale;
        for (Index k = 1; k < n; ++k)
            l = l && r(k - 1, k - 1) * r(k - 1, k - 1) <=
                         r(k - 1, k) * r(k - 1, k) + r(k, k) * r(k, k) + 1e-9 * scale * scale;
        size_ok += s;
        lovasz_ok += l;
        const auto det = oracle::determinant(rp.z);
        unimodular += (det == 1 || det == -1);
        bool p = true;
        for (int q = 0; q < 20; ++q) {
            const IntVector z = oracle::random_int_vector(gen, n, -5, 5);
            const double full = oracle::residual_sq(h, y, IntVector(rp.z * z));
            const double reduced = (rp.y_hat - r * z.cast<double>()).squaredNorm() + rp.offset;
            p = p && std::abs(full - reduced) <= 1e-8 * std::max(1.0, full);
        }
        preserved += p;
        const auto pl = plll_reduce(h, y);
        const double res_lll = oracle::residual_sq(h, y, IntVector(rp.z * *se_search(rp)));
        const double res_plll = oracle::residual_sq(h, y, IntVector(pl.z * *se_search(pl)));
        equal_opt += std::abs(res_lll - res_plll) <= 1e-9 * std::max(1.0, res_lll);
    }
    o.detail << instances << " instances: size-reduced " << size_ok << ", Lovasz " << lovasz_ok << ", |det Z|=1 "
             << unimodular << ", residual preserved " << preserved << ", LLL/PLLL optimum equal " << equal_opt;
    o.require(size_ok == instances && lovasz_ok == instances, "LLL conditions");
    o.require(unimodular == instances, "unimodular Z");
    o.require(preserved == instances, "residual preservation");
    o.require(equal_opt == instances, "equal optimal residuals");
    return o;
}

Outcome baseline_comparison()
{
    Outcome o;
    CompareOptions opts;
    opts.n = 20;
    opts.rank = 4;
    opts.box = {1, 4};
    opts.trials = 20;
    opts.seed = 1;
    const auto start = Clock::now();
    const auto report = run_compare_experiment(opts);
    const double ms = ms_since(start);
    for (const auto& t : report.trials)
        descent(report.a, trial_config(report.rank, opts.box, t.seed, opts.max_sweeps));
    const double ratio = report.ilsb.average > 0 ? report.baseline.average / report.ilsb.average
                                                 : std::numeric_limits<double>::infinity();
    o.detail << "ILSb average " << report.ilsb.average << " [" << report.ilsb.min_residual << ","
             << report.ilsb.max_residual << "] fail " << report.ilsb.failures << "; baseline average "
             << report.baseline.average << " [" << report.baseline.min_residual << "," << report.baseline.max_residual
             << "] fail " << report.baseline.failures << "; strictly superior " << report.percent_superior
             << "%; ratio " << ratio << "x; time=" << ms / 1000 << "s";
    o.require(report.percent_superior == 100, "strictly superior in 100% of trials");
    o.require(report.ilsb.average * 10 <= report.baseline.average, "ILSb average at least 10x smaller");
    o.require(ms < 300000, "runtime < 5 min");
    return o;
}

Outcome residual_distribution()
{
    Outcome o;
    DistributionOptions opts;
    opts.matrix = fixtures::rank3();
    opts.rank = 3;
    opts.box = {1, 4};
    opts.trials = 100;
    opts.seed = 1;
    const auto report = run_distribution_experiment(opts);
    int zeros = 0;
    int replay_mismatch = 0;
    std::map<std::int64_t, int> hist;
    for (const auto& t : report.trials) {
        if (!t.outcome.failed()) {
            ++hist[t.outcome.residual];
            zeros += t.outcome.residual == 0;
        }
        const auto replay = descent(report.a, trial_config(opts.rank, opts.box, t.seed, opts.max_sweeps));
        const auto r = outcome_of(replay);
        if (r.status != t.outcome.status || r.residual != t.outcome.residual || r.sweeps != t.outcome.sweeps)
            ++replay_mismatch;
    }
    // Most populated window of 16 consecutive residual values.
    constexpr std::int64_t band = 16;
    std::int64_t band_lo = 0;
    int band_count = 0;
    for (const auto& [lo, unused] : hist) {
        int c = 0;
        for (auto it = hist.lower_bound(lo); it != hist.end() && it->first < lo + band; ++it)
            c += it->second;
        if (c > band_count) {
            band_count = c;
            band_lo = lo;
        }
    }
    o.detail << "zero-residual trials " << zeros << ", failures " << report.failures() << ", modal band ["
             << band_lo << "," << band_lo + band - 1 << "] holds " << band_count << " trials, replay mismatches "
             << replay_mismatch;
    o.require(zeros > 0 || report.failures() > 0, "a zero-residual or failed trial");
    o.require(band_count > 0, "nonempty modal band");
    o.require(replay_mismatch == 0, "replay determinism");
    return o;
}

Outcome monotone_descent()
{
    Outcome o;
    std::mt19937_64 gen(103);
    int recovered = 0;
    int constructions = 0;
    int rank_deficient_draws = 0;
    while (constructions < 50) {
        const Index m = 4 + constructions % 5;
        const Index n = 4 + (constructions / 5) % 5;
        const Index k = 1 + constructions % std::min<Index>(3, std::min(m, n) - 1);
        const IntMatrix u = init_random(m, k, {1, 4}, gen());
        const IntMatrix v = init_random(k, n, {1, 4}, gen());
        // A true factor without full rank is not a valid starting point.
        if (Eigen::FullPivLU<RealMatrix>(v.cast<double>()).rank() < k) {
            ++rank_deficient_draws;
            continue;
        }
        FactorizationConfig config;
        config.rank = k;
        config.init = InitExplicit{v};
        if (constructions % 2 == 0) {
            config.box_u = Interval{1, 4};
            config.box_v = Interval{1, 4};
        }
        const auto result = descent(u * v, config);
        recovered += result.final_residual == 0 && result.residual_history.size() == 1;
        ++constructions;
    }
    o.detail << descent.violations << " violations over " << descent.runs << " exact-solver runs; exact recovery "
             << recovered << "/50 (" << rank_deficient_draws << " rank-deficient draws redrawn)";
    o.require(descent.violations == 0, "no monotonicity violations");
    o.require(recovered == 50, "exact recovery on all 50");
    return o;
}

} // namespace

int main(int argc, char** argv)
{
    std::set<std::string> expected_failures;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--expect-fail" && i + 1 < argc) {
            expected_failures.insert(argv[++i]);
        } else {
            std::cerr << "usage: acceptance [--expect-fail ID]...\n";
            return 2;
        }
    }

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"rounding-counterexample", rounding_counterexample},
        {"transaction-recovery", transaction_recovery},
        {"transaction-runs", transaction_runs},
        {"rank3-runs", rank3_runs},
        {"oracle-equivalence", oracle_equivalence},
        {"reduction-invariants", reduction_invariants},
        {"baseline-comparison", baseline_comparison},
        {"residual-distribution", residual_distribution},
        // Last, so that it sees every factorization run above.
        {"monotone-descent", monotone_descent},
    };

    std::set<std::string> failed;
    for (const auto& [id, check] : criteria) {
        const Outcome o = check();
        if (!o.pass)
            failed.insert(id);
        std::cout << (o.pass ? "PASS " : "FAIL ") << id << ": " << o.detail.str() << std::endl;
    }
    std::cout << (criteria.size() - failed.size()) << "/" << criteria.size() << " criteria passed\n";
    for (const auto& id : expected_failures)
        if (!failed.count(id))
            std::cout << "note: " << id << " was expected to fail but passed\n";
    return failed == expected_failures ? 0 : 1;
}
