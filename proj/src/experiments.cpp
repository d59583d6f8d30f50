#include "ila/experiments.hpp"

#include "ila/parallel.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <ostream>

namespace ila {

IntMatrix random_low_rank(Index m, Index n, Index rank, Interval box, std::uint64_t seed)
{
    const IntMatrix u = init_random(m, rank, box, seed);
    const IntMatrix v = init_random(rank, n, box, seed ^ 0x9e3779b97f4a7c15ULL);
    return multiply_checked(u, v);
}

std::uint64_t trial_seed(std::uint64_t base_seed, int trial) { return base_seed + 1 + std::uint64_t(trial); }

FactorizationConfig trial_config(Index rank, Interval box, std::uint64_t seed, int max_sweeps,
                                 SubproblemMethod method)
{
    FactorizationConfig config;
    config.rank = rank;
    config.max_sweeps = max_sweeps;
    config.box_u = box;
    config.box_v = box;
    config.init = InitRandom{seed, box};
    config.method = method;
    return config;
}

TrialOutcome outcome_of(const FactorizationResult& result)
{
    return {result.status, result.final_residual, result.sweeps};
}

int DistributionReport::failures() const
{
    return int(std::count_if(trials.begin(), trials.end(), [](const auto& t) { return t.outcome.failed(); }));
}

DistributionReport run_distribution_experiment(const DistributionOptions& options)
{
    if (options.trials < 1)
        throw std::invalid_argument("trials must be positive");
    DistributionReport report;
    report.options = options;
    report.a = options.matrix ? *options.matrix
                              : random_low_rank(options.n, options.n, options.rank, options.box, options.seed);
    report.trials.resize(std::size_t(options.trials));
    parallel_for(report.trials.size(), [&](std::size_t t) {
        auto& trial = report.trials[t];
        trial.trial = int(t);
        trial.seed = trial_seed(options.seed, int(t));
        const auto result =
            bcd_factorize(report.a, trial_config(options.rank, options.box, trial.seed, options.max_sweeps));
        trial.outcome = outcome_of(result);
    });
    return report;
}

void write_distribution_csv(std::ostream& out, const DistributionReport& report)
{
    out << "# ila-distribution v1\n";
    out << "trial,seed,residual,sweeps,status\n";
    for (const auto& t : report.trials) {
        out << t.trial << ',' << t.seed << ',';
        if (t.outcome.failed())
            out << "FAIL";
        else
            out << t.outcome.residual;
        out << ',' << t.outcome.sweeps << ',' << to_string(t.outcome.status) << '\n';
    }
    out << "# failures," << report.failures() << '\n';
}

namespace {

MethodSummary summarize(const std::vector<CompareTrial>& trials, TrialOutcome CompareTrial::*which)
{
    MethodSummary s;
    s.min_residual = std::numeric_limits<std::int64_t>::max();
    s.max_residual = std::numeric_limits<std::int64_t>::min();
    int ok = 0;
    double sweeps = 0;
    double total = 0;
    for (const auto& t : trials) {
        const TrialOutcome& o = t.*which;
        if (o.failed()) {
            ++s.failures;
            continue;
        }
        ++ok;
        sweeps += o.sweeps;
        total += double(o.residual);
        s.min_residual = std::min(s.min_residual, o.residual);
        s.max_residual = std::max(s.max_residual, o.residual);
    }
    if (ok == 0) {
        s.min_residual = s.max_residual = 0;
        return s;
    }
    s.mean_sweeps = sweeps / ok;
    s.average = total / ok;
    return s;
}

// A failed run counts as an infinitely large residual.
double comparable(const TrialOutcome& o)
{
    return o.failed() ? std::numeric_limits<double>::infinity() : double(o.residual);
}

} // namespace

CompareReport run_compare_experiment(const CompareOptions& options)
{
    if (options.trials < 1)
        throw std::invalid_argument("trials must be positive");
    CompareReport report;
    report.options = options;
    report.rank = options.rank.value_or(options.n / 5);
    if (report.rank < 1)
        throw std::invalid_argument("rank must be positive (n / 5 is zero for n < 5)");
    report.a = random_low_rank(options.n, options.n, report.rank, options.box, options.seed);
    report.trials.resize(std::size_t(options.trials));
    parallel_for(report.trials.size(), [&](std::size_t t) {
        auto& trial = report.trials[t];
        trial.trial = int(t);
        trial.seed = trial_seed(options.seed, int(t));
        trial.ilsb = outcome_of(bcd_factorize(
            report.a, trial_config(report.rank, options.box, trial.seed, options.max_sweeps,
                                   SubproblemMethod::integer_ls)));
        auto baseline = trial_config(report.rank, options.box, trial.seed, options.max_sweeps,
                                     SubproblemMethod::rounded_real_ls);
        if (!options.clamp_baseline) {
            baseline.box_u.reset();
            baseline.box_v.reset();
        }
        trial.baseline = outcome_of(bcd_factorize(report.a, baseline));
    });

    report.ilsb = summarize(report.trials, &CompareTrial::ilsb);
    report.baseline = summarize(report.trials, &CompareTrial::baseline);
    int better = 0;
    int better_or_equal = 0;
    for (const auto& t : report.trials) {
        const double a = comparable(t.ilsb);
        const double b = comparable(t.baseline);
        better += a < b;
        better_or_equal += a <= b;
    }
    report.percent_superior = 100.0 * better / options.trials;
    report.percent_superior_or_equal = 100.0 * better_or_equal / options.trials;
    return report;
}

void write_compare_csv(std::ostream& out, const CompareReport& report)
{
    auto residual_field = [](const TrialOutcome& o) { return o.failed() ? std::string("FAIL") : std::to_string(o.residual); };
    out << "# ila-compare v1\n";
    out << "# options,n=" << report.options.n << ",rank=" << report.rank << ",box=[" << report.options.box.lower << ';'
        << report.options.box.upper << "],max_sweeps=" << report.options.max_sweeps
        << ",clamp_baseline=" << (report.options.clamp_baseline ? 1 : 0) << '\n';
    out << "trial,seed,ilsb_residual,ilsb_sweeps,baseline_residual,baseline_sweeps,ilsb_superior\n";
    for (const auto& t : report.trials) {
        out << t.trial << ',' << t.seed << ',' << residual_field(t.ilsb) << ',' << t.ilsb.sweeps << ','
            << residual_field(t.baseline) << ',' << t.baseline.sweeps << ','
            << (comparable(t.ilsb) < comparable(t.baseline) ? 1 : 0) << '\n';
    }
    auto summary = [&](const char* name, const MethodSummary& s) {
        char buf[256];
        std::snprintf(buf, sizeof buf, "# summary,%s,it=%.2f,interval=[%lld;%lld],average=%.2f,fail=%d\n", name,
                      s.mean_sweeps, static_cast<long long>(s.min_residual), static_cast<long long>(s.max_residual),
                      s.average, s.failures);
        out << buf;
    };
    summary("ilsb", report.ilsb);
    summary("baseline", report.baseline);
    char buf[128];
    std::snprintf(buf, sizeof buf, "# percent,superior=%.1f,superior_or_equal=%.1f\n", report.percent_superior,
                  report.percent_superior_or_equal);
    out << buf;
}

} // namespace ila
