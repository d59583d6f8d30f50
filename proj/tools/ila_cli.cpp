// ila: integer least squares and integer low-rank approximation from the
// command line.
//
//   ila ils H.txt y.txt [--box L U]
//   ila factorize A.txt --rank K [--box-u L U] [--box-v L U] [--init ...]
//   ila experiment-distribution --n N --rank R --box L U --trials T --seed S --out CSV
//   ila experiment-compare --n N --rank R --trials T --seed S --out CSV
//
// Exit codes: 0 success, 2 parse or parameter error, 3 rank-deficient input,
// 4 empty box, 1 anything else.

#include "ila/bcd.hpp"
#include "ila/box.hpp"
#include "ila/experiments.hpp"
#include "ila/ils.hpp"
#include "ila/io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace {

using ila::Index;
using ila::Interval;

constexpr int exit_parse = 2;
constexpr int exit_rank_deficient = 3;
constexpr int exit_empty_box = 4;

std::optional<Interval> to_interval(const std::vector<std::int64_t>& v)
{
    if (v.empty())
        return std::nullopt;
    return Interval{v[0], v[1]};
}

std::string format_real(double v)
{
    std::ostringstream ss;
    ss.precision(17);
    ss << v;
    return ss.str();
}

int run_ils(const std::string& h_path, const std::string& y_path, const std::vector<std::int64_t>& box)
{
    const ila::RealMatrix h = ila::io::read_real_matrix(h_path);
    const ila::RealVector y = ila::io::read_real_vector(y_path);
    if (y.size() != h.rows())
        throw ila::io::ParseError("y has " + std::to_string(y.size()) + " entries but H has " +
                                  std::to_string(h.rows()) + " rows");
    ila::SearchStats stats;
    ila::IlsSolution<double> sol;
    if (const auto range = to_interval(box))
        sol = ila::solve_ilsb(h, y, ila::BoxConstraint::uniform(h.cols(), *range), &stats);
    else
        sol = ila::solve_ils(h, y, &stats);

    std::cout << "x:";
    for (Index i = 0; i < sol.x.size(); ++i)
        std::cout << ' ' << sol.x(i);
    std::cout << "\nresidual_sq: " << format_real(sol.residual_sq) << "\nresidual: "
              << format_real(std::sqrt(sol.residual_sq)) << "\nnodes: " << stats.nodes << '\n';
    return 0;
}

struct FactorizeArgs {
    std::string a_path;
    Index rank = 0;
    std::vector<std::int64_t> box_u;
    std::vector<std::int64_t> box_v;
    std::string init = "most-frequent";
    std::uint64_t seed = 0;
    int max_sweeps = 100;
    std::string order = "u-first";
    std::string out_prefix = "ila_";
};

int run_factorize(const FactorizeArgs& args)
{
    const auto start = std::chrono::steady_clock::now();
    const std::string bytes = ila::io::read_file(args.a_path);
    const ila::IntMatrix a = ila::io::parse_int_matrix(bytes);

    ila::FactorizationConfig config;
    config.rank = args.rank;
    config.max_sweeps = args.max_sweeps;
    config.box_u = to_interval(args.box_u);
    config.box_v = to_interval(args.box_v);
    config.order = args.order == "v-first" ? ila::UpdateOrder::v_first : ila::UpdateOrder::u_first;
    if (args.init == "most-frequent")
        config.init = ila::InitMostFrequent{};
    else if (args.init == "random")
        config.init = ila::InitRandom{args.seed, std::nullopt};
    else
        config.init = ila::InitExplicit{ila::io::read_int_matrix(args.init)};

    const auto result = ila::bcd_factorize(a, config);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const std::string u_path = args.out_prefix + "U.txt";
    const std::string v_path = args.out_prefix + "V.txt";
    const std::string report_path = args.out_prefix + "report.json";
    ila::io::write_matrix_file(u_path, result.u);
    ila::io::write_matrix_file(v_path, result.v);

    auto interval_json = [](const std::optional<Interval>& b) -> nlohmann::json {
        if (!b)
            return nullptr;
        return {b->lower, b->upper};
    };
    nlohmann::json report;
    report["input"] = {{"path", args.a_path}, {"fnv1a64", ila::io::fnv1a_hex(bytes)},
                       {"rows", a.rows()}, {"cols", a.cols()}};
    report["config"] = {{"rank", args.rank},           {"max_sweeps", args.max_sweeps},
                        {"box_u", interval_json(config.box_u)}, {"box_v", interval_json(config.box_v)},
                        {"init", args.init},           {"seed", args.seed},
                        {"order", args.order}};
    report["residual_history"] = result.residual_history;
    report["final_residual"] = result.final_residual;
    report["status"] = ila::to_string(result.status);
    report["sweeps"] = result.sweeps;
    report["wall_time_seconds"] = wall;
    report["search_nodes"] = result.nodes;
    report["outputs"] = {{"U", u_path}, {"V", v_path}};
    std::ofstream(report_path) << report.dump(2) << '\n';

    std::cout << "status: " << ila::to_string(result.status) << "\nsweeps: " << result.sweeps
              << "\nfinal_residual: " << result.final_residual << "\nU: " << u_path << "\nV: " << v_path
              << "\nreport: " << report_path << '\n';
    return 0;
}

void emit(const std::string& path, const std::string& body)
{
    if (path == "-") {
        std::cout << body;
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << body;
}

int run_distribution(const ila::DistributionOptions& options, const std::string& out_path)
{
    const auto report = ila::run_distribution_experiment(options);
    std::ostringstream csv;
    ila::write_distribution_csv(csv, report);
    emit(out_path, csv.str());

    std::map<std::int64_t, int> histogram;
    for (const auto& t : report.trials)
        if (!t.outcome.failed())
            ++histogram[t.outcome.residual];
    std::cerr << "trials: " << report.trials.size() << "  failures: " << report.failures() << '\n';
    for (const auto& [res, count] : histogram)
        std::cerr << "  residual " << res << ": " << count << '\n';
    return 0;
}

int run_compare(const ila::CompareOptions& options, const std::string& out_path)
{
    const auto report = ila::run_compare_experiment(options);
    std::ostringstream csv;
    ila::write_compare_csv(csv, report);
    emit(out_path, csv.str());
    std::cerr << "n=" << options.n << " rank=" << report.rank << "  ILSb average " << report.ilsb.average
              << " (fail " << report.ilsb.failures << ")  baseline average " << report.baseline.average
              << " (fail " << report.baseline.failures << ")  superior " << report.percent_superior << "%\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Integer least squares and integer low-rank approximation"};
    app.require_subcommand(1);

    auto* ils = app.add_subcommand("ils", "Solve min ||y - Hx||^2 over integer (optionally boxed) x");
    std::string h_path;
    std::string y_path;
    std::vector<std::int64_t> ils_box;
    ils->add_option("H", h_path, "Matrix file for H")->required()->check(CLI::ExistingFile);
    ils->add_option("y", y_path, "Vector file for y")->required()->check(CLI::ExistingFile);
    ils->add_option("--box", ils_box, "Interval L U applied to every coordinate")->expected(2);

    auto* fact = app.add_subcommand("factorize", "Integer low-rank approximation A ~ UV");
    FactorizeArgs fargs;
    fact->add_option("A", fargs.a_path, "Integer matrix file")->required()->check(CLI::ExistingFile);
    fact->add_option("--rank,-k", fargs.rank, "Rank k")->required();
    fact->add_option("--box-u", fargs.box_u, "Entrywise bounds L U for U")->expected(2);
    fact->add_option("--box-v", fargs.box_v, "Entrywise bounds L U for V")->expected(2);
    fact->add_option("--init", fargs.init, "most-frequent | random | path to the initial factor")
        ->capture_default_str();
    fact->add_option("--seed", fargs.seed, "Seed for --init random")->capture_default_str();
    fact->add_option("--max-sweeps", fargs.max_sweeps)->capture_default_str()->check(CLI::PositiveNumber);
    fact->add_option("--order", fargs.order, "u-first (initialize V) or v-first (initialize U)")
        ->check(CLI::IsMember({"u-first", "v-first"}))
        ->capture_default_str();
    fact->add_option("--out-prefix", fargs.out_prefix, "Prefix for U.txt, V.txt and report.json")
        ->capture_default_str();

    auto* dist = app.add_subcommand("experiment-distribution", "Residual distribution over random initial factors");
    ila::DistributionOptions dopts;
    std::vector<std::int64_t> dbox{1, 4};
    std::string dmatrix;
    std::string dout = "-";
    dist->add_option("--n", dopts.n, "Size of the random square matrix")->check(CLI::PositiveNumber);
    dist->add_option("--rank", dopts.rank)->check(CLI::PositiveNumber);
    dist->add_option("--box", dbox, "Entrywise bounds L U for both factors")->expected(2);
    dist->add_option("--trials", dopts.trials)->check(CLI::PositiveNumber);
    dist->add_option("--seed", dopts.seed);
    dist->add_option("--max-sweeps", dopts.max_sweeps)->check(CLI::PositiveNumber);
    dist->add_option("--matrix", dmatrix, "Use this matrix instead of a random one")->check(CLI::ExistingFile);
    dist->add_option("--out", dout, "CSV output path ('-' for stdout)");

    auto* cmp = app.add_subcommand("experiment-compare", "Exact ILSb BCD against rounded real least squares");
    ila::CompareOptions copts;
    Index crank = 0;
    std::vector<std::int64_t> cbox{1, 4};
    std::string cout_path = "-";
    cmp->add_option("--n", copts.n)->check(CLI::PositiveNumber);
    cmp->add_option("--rank", crank, "Defaults to n / 5");
    cmp->add_option("--box", cbox, "Entrywise bounds L U for both factors")->expected(2);
    cmp->add_option("--trials", copts.trials)->check(CLI::PositiveNumber);
    cmp->add_option("--seed", copts.seed);
    cmp->add_option("--max-sweeps", copts.max_sweeps)->check(CLI::PositiveNumber);
    cmp->add_flag("--clamp-baseline", copts.clamp_baseline, "Clamp the baseline's rounded solutions to the box");
    cmp->add_option("--out", cout_path, "CSV output path ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_parse;
    }

    try {
        if (*ils)
            return run_ils(h_path, y_path, ils_box);
        if (*fact)
            return run_factorize(fargs);
        if (*dist) {
            dopts.box = *to_interval(dbox);
            if (!dmatrix.empty())
                dopts.matrix = ila::io::read_int_matrix(dmatrix);
            return run_distribution(dopts, dout);
        }
        if (*cmp) {
            copts.box = *to_interval(cbox);
            if (crank > 0)
                copts.rank = crank;
            return run_compare(copts, cout_path);
        }
    } catch (const ila::io::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_parse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_parse;
    } catch (const ila::RankDeficientError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_rank_deficient;
    } catch (const ila::EmptyBoxError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_empty_box;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
