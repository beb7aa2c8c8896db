#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eberlein/driver.hpp"
#include "eberlein/generators.hpp"

namespace eberlein {

struct RunConfig {
    TestMatrixSpec input;
    std::size_t block_size = 0;
    /// Explicit block sizes; overrides block_size when set.
    std::optional<std::vector<std::size_t>> partition;
    std::string ordering = "row";
    double tolerance = 1e-10;
    int max_cycles = 100;
    bool precondition = false;
    std::optional<std::filesystem::path> result_path;
    std::optional<std::filesystem::path> trace_path;

    /// Partition of n from `partition` or `block_size`.
    BlockPartition make_partition(std::size_t n) const;
};

/// Header `cycle,off_A,off_B,normC,frob_A,cum_delta`, one row per cycle.
void write_trace_csv(std::ostream& out, const ConvergenceLog& log);

/// Result document: eigenvalues, residuals, real_parts, status, block
/// structure (1-based), config echo, wall time.
std::string result_json(const EberleinResult& result, const RunConfig& config, double wall_seconds);

/// Writes whichever of the result and trace paths are set. Throws IoError.
void write_outputs(const EberleinResult& result, const RunConfig& config, double wall_seconds);

/// {"n": .., "eigenvalues": [{"re": .., "im": ..}, ...]}
void write_spectrum_sidecar(const std::filesystem::path& path, const std::vector<cplx>& spectrum);
std::vector<cplx> read_spectrum_sidecar(const std::filesystem::path& path);

}  // namespace eberlein
