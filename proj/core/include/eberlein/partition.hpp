#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace eberlein {

/// Composition n = n_1 + ... + n_m of the matrix dimension into diagonal blocks.
/// Block indices are 0-based; block i covers rows [offset(i), offset(i) + size(i)).
class BlockPartition {
public:
    explicit BlockPartition(std::vector<std::size_t> sizes);

    /// Blocks of `block_size`, the last one possibly smaller.
    static BlockPartition uniform(std::size_t n, std::size_t block_size);
    /// One block per row: the element-wise case.
    static BlockPartition unit(std::size_t n);

    std::size_t n() const noexcept { return n_; }
    std::size_t m() const noexcept { return sizes_.size(); }
    std::size_t size(std::size_t block) const { return sizes_.at(block); }
    std::size_t offset(std::size_t block) const { return offsets_.at(block); }
    std::span<const std::size_t> sizes() const noexcept { return sizes_; }
    std::span<const std::size_t> offsets() const noexcept { return offsets_; }

    /// Block that contains global row `i`.
    std::size_t block_of(std::size_t i) const;

    friend bool operator==(const BlockPartition&, const BlockPartition&) = default;

private:
    std::vector<std::size_t> sizes_;
    std::vector<std::size_t> offsets_;
    std::size_t n_ = 0;
};

}  // namespace eberlein
