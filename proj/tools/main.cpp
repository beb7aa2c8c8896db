#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eberlein/eberlein.hpp"

namespace {

enum ExitCode : int { kOk = 0, kUsage = 1, kNumerical = 2, kIo = 3 };

struct SolveArgs {
    std::string input;
    std::size_t n = 0;
    std::size_t block_size = 0;
    std::vector<std::size_t> partition;
    std::vector<std::size_t> mult;
    std::string ordering = "row";
    double tol = 1e-10;
    int max_cycles = 100;
    bool precondition = false;
    bool no_ubc = false;
    bool absolute_tol = false;
    std::uint64_t seed = 0;
    std::string out;
    std::string trace;
    bool quiet = false;
};

struct GenArgs {
    std::string kind;
    std::size_t n = 0;
    std::vector<std::size_t> mult;
    std::uint64_t seed = 0;
    std::string out;
};

struct OrderingArgs {
    std::size_t m = 0;
    std::string kind = "row";
    std::uint64_t seed = 0;
    bool pairs = false;
};

int run_solve(const SolveArgs& args, bool seed_given) {
    using namespace eberlein;
    RunConfig cfg;
    cfg.input.seed = seed_given ? args.seed : default_seed();
    if (args.input.starts_with("gen:")) {
        cfg.input.kind = parse_matrix_kind(args.input.substr(4));
        if (cfg.input.kind == MatrixKind::from_file) throw InvalidArgument("--input gen: needs a0, a1 or a2");
        if (args.n == 0) throw InvalidArgument("--n is required with a generated input");
        cfg.input.n = args.n;
        if (!args.mult.empty()) cfg.input.multiplicities = args.mult;
    } else {
        cfg.input.kind = MatrixKind::from_file;
        cfg.input.file = args.input;
    }
    if (args.partition.empty() && args.block_size == 0) throw InvalidArgument("one of --block-size or --partition is required");
    cfg.block_size = args.block_size;
    if (!args.partition.empty()) cfg.partition = args.partition;
    cfg.ordering = args.ordering;
    cfg.tolerance = args.tol;
    cfg.max_cycles = args.max_cycles;
    cfg.precondition = args.precondition;
    if (!args.out.empty()) cfg.result_path = args.out;
    if (!args.trace.empty()) cfg.trace_path = args.trace;

    const auto gen = gen_test_matrix(cfg.input);
    cfg.input.n = gen.a.dim();
    const BlockPartition partition = cfg.make_partition(gen.a.dim());

    SolveOptions opts;
    opts.tolerance = cfg.tolerance;
    opts.max_cycles = cfg.max_cycles;
    opts.precondition = cfg.precondition;
    opts.seed = cfg.input.seed;
    opts.enforce_ubc = !args.no_ubc;
    opts.absolute_tolerance = args.absolute_tol;
    if (partition.m() >= 2) opts.ordering = ordering_from_spec(cfg.ordering, partition.m());
    if (!args.quiet) {
        opts.progress = [](const CycleRecord& c) {
            std::fprintf(stderr, "cycle %3d  off(A) %.3e  off(B) %.3e  ||C|| %.3e\n", c.cycle, c.off_a, c.off_b,
                         c.norm_c);
        };
    }

    const auto t0 = std::chrono::steady_clock::now();
    const EberleinResult result = eberlein_solve(gen.a, partition, opts);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    write_outputs(result, cfg, wall);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
    std::cout << "status " << to_string(result.status) << ", " << result.cycles << " cycles, "
              << result.block_structure.size() << " components, " << wall << " s\n";
    if (cfg.result_path == std::nullopt) {
        for (const auto& ep : result.eigenpairs) {
            std::printf("%.17g %+.17gi  residual %.3e\n", ep.value.real(), ep.value.imag(), ep.residual);
        }
    }
    return kOk;
}

int run_gen(const GenArgs& args, bool seed_given) {
    using namespace eberlein;
    TestMatrixSpec spec;
    spec.kind = parse_matrix_kind(args.kind);
    if (spec.kind == MatrixKind::from_file) throw InvalidArgument("--kind must be a0, a1 or a2");
    spec.n = args.n;
    spec.seed = seed_given ? args.seed : default_seed();
    if (!args.mult.empty()) spec.multiplicities = args.mult;
    const auto gen = gen_test_matrix(spec);
    write_matrix_market(std::filesystem::path(args.out), gen.a);
    if (gen.spectrum) {
        std::filesystem::path side(args.out);
        side.replace_extension(".spectrum.json");
        write_spectrum_sidecar(side, *gen.spectrum);
    }
    return kOk;
}

int run_orderings(const OrderingArgs& args) {
    using namespace eberlein;
    const std::string spec = args.kind == "serial-perm" ? "serial-perm:" + std::to_string(args.seed) : args.kind;
    if (args.kind != "row" && args.kind != "col" && args.kind != "serial-perm") {
        throw InvalidArgument("--kind must be row, col or serial-perm");
    }
    const PivotOrdering o = ordering_from_spec(spec, args.m);
    if (args.pairs) {
        write_ordering(std::cout, o);
    } else {
        std::cout << format_ordering_table(o);
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Block Eberlein eigensolver for general complex matrices"};
    app.require_subcommand(1);

    SolveArgs solve;
    auto* sc = app.add_subcommand("solve", "Run the block iteration on a matrix");
    sc->add_option("--input", solve.input, "Matrix Market file or gen:a0|gen:a1|gen:a2")->required();
    sc->add_option("--n", solve.n, "Dimension for generated inputs");
    sc->add_option("--block-size", solve.block_size, "Uniform block size (last block may be smaller)");
    sc->add_option("--partition", solve.partition, "Explicit block sizes n1,n2,...")->delimiter(',');
    sc->add_option("--mult", solve.mult, "Multiplicities m1,...,m5 for gen:a2")->delimiter(',');
    sc->add_option("--ordering", solve.ordering, "row | col | serial-perm:SEED | file:PATH")->capture_default_str();
    sc->add_option("--tol", solve.tol, "Stopping tolerance")->capture_default_str();
    sc->add_option("--max-cycles", solve.max_cycles, "Cycle limit")->capture_default_str();
    sc->add_flag("--precondition", solve.precondition, "Solve for d*A with a random complex d");
    auto* solve_seed = sc->add_option("--seed", solve.seed, "RNG seed (default: EBERLEIN_SEED or OS entropy)");
    sc->add_flag("--no-ubc", solve.no_ubc, "Skip the UBC column permutation");
    sc->add_flag("--absolute-tol", solve.absolute_tol, "Use the tolerance as an absolute threshold");
    sc->add_option("--out", solve.out, "Result JSON path");
    sc->add_option("--trace", solve.trace, "Per-cycle trace CSV path");
    sc->add_flag("-q,--quiet", solve.quiet, "No per-cycle progress on stderr");

    GenArgs gen;
    auto* gc = app.add_subcommand("gen", "Write a test matrix in Matrix Market format");
    gc->add_option("--kind", gen.kind, "a0 | a1 | a2")->required();
    gc->add_option("--n", gen.n, "Dimension")->required();
    gc->add_option("--mult", gen.mult, "Multiplicities m1,...,m5 for a2")->delimiter(',');
    auto* gen_seed = gc->add_option("--seed", gen.seed, "RNG seed");
    gc->add_option("--out", gen.out, "Output .mtx path")->required();

    OrderingArgs ord;
    auto* oc = app.add_subcommand("orderings", "Print a pivot ordering as an upper-triangular table");
    oc->add_option("--m", ord.m, "Number of blocks")->required();
    oc->add_option("--kind", ord.kind, "row | col | serial-perm")->capture_default_str();
    oc->add_option("--seed", ord.seed, "Seed for serial-perm");
    oc->add_flag("--pairs", ord.pairs, "Print 1-based pairs instead of the table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*sc) return run_solve(solve, solve_seed->count() > 0);
        if (*gc) return run_gen(gen, gen_seed->count() > 0);
        if (*oc) return run_orderings(ord);
    } catch (const eberlein::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\nRun with --help for usage.\n";
        return kUsage;
    } catch (const eberlein::IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return kIo;
    } catch (const eberlein::NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    } catch (const eberlein::ConvergenceFailure& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    }
    return kUsage;
}
