#include "eberlein/report.hpp"

#include <charconv>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "atomic_write.hpp"
#include "eberlein/error.hpp"

namespace eberlein {

using nlohmann::json;

BlockPartition RunConfig::make_partition(std::size_t n) const {
    if (partition) {
        BlockPartition bp(*partition);
        if (bp.n() != n) {
            throw InvalidArgument("partition sums to " + std::to_string(bp.n()) + ", matrix has n = " +
                                  std::to_string(n));
        }
        return bp;
    }
    return BlockPartition::uniform(n, block_size);
}

namespace {

std::string shortest(double x) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return {buf, r.ptr};
}

json complex_list(const std::vector<cplx>& v) {
    json out = json::array();
    for (const auto& z : v) out.push_back({{"re", z.real()}, {"im", z.imag()}});
    return out;
}

}  // namespace

void write_trace_csv(std::ostream& out, const ConvergenceLog& log) {
    out << "cycle,off_A,off_B,normC,frob_A,cum_delta\n";
    for (const auto& c : log.cycles) {
        out << c.cycle << ',' << shortest(c.off_a) << ',' << shortest(c.off_b) << ',' << shortest(c.norm_c) << ','
            << shortest(c.frob_a) << ',' << shortest(c.cum_delta) << '\n';
    }
}

std::string result_json(const EberleinResult& result, const RunConfig& config, double wall_seconds) {
    std::vector<cplx> values;
    json residuals = json::array();
    json ok = json::array();
    for (const auto& ep : result.eigenpairs) {
        values.push_back(ep.value);
        residuals.push_back(ep.residual);
        ok.push_back(ep.ok);
    }
    json blocks = json::array();
    for (const auto& comp : result.block_structure) {
        json c = json::array();
        for (std::size_t i : comp) c.push_back(i + 1);
        blocks.push_back(std::move(c));
    }
    json cfg = {
        {"input", config.input.file ? config.input.file->string() : "gen:" + to_string(config.input.kind)},
        {"n", config.input.n},
        {"seed", config.input.seed},
        {"block_size", config.block_size},
        {"ordering", config.ordering},
        {"tolerance", config.tolerance},
        {"max_cycles", config.max_cycles},
        {"precondition", config.precondition},
    };
    if (config.partition) cfg["partition"] = *config.partition;
    json doc = {
        {"status", to_string(result.status)},
        {"cycles", result.cycles},
        {"n", result.lambda.dim()},
        {"eigenvalues", complex_list(values)},
        {"residuals", residuals},
        {"eigenpair_ok", ok},
        {"real_parts", result.real_parts},
        {"block_structure", blocks},
        {"scale", {{"re", result.scale.real()}, {"im", result.scale.imag()}}},
        {"warnings", result.warnings},
        {"config", cfg},
        {"wall_time_s", wall_seconds},
    };
    return doc.dump(2) + "\n";
}

void write_outputs(const EberleinResult& result, const RunConfig& config, double wall_seconds) {
    if (config.result_path) {
        const std::string text = result_json(result, config, wall_seconds);
        detail::atomic_write(*config.result_path, [&](std::ostream& out) { out << text; });
    }
    if (config.trace_path) {
        detail::atomic_write(*config.trace_path, [&](std::ostream& out) { write_trace_csv(out, result.log); });
    }
}

void write_spectrum_sidecar(const std::filesystem::path& path, const std::vector<cplx>& spectrum) {
    const json doc = {{"n", spectrum.size()}, {"eigenvalues", complex_list(spectrum)}};
    detail::atomic_write(path, [&](std::ostream& out) { out << doc.dump(2) << '\n'; });
}

std::vector<cplx> read_spectrum_sidecar(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<cplx> out;
    try {
        const json doc = json::parse(in);
        for (const auto& e : doc.at("eigenvalues")) out.emplace_back(e.at("re").get<double>(), e.at("im").get<double>());
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what(), 0);
    }
    return out;
}

}  // namespace eberlein
