#include "eberlein/partition.hpp"

#include <algorithm>
#include <string>

#include "eberlein/error.hpp"

namespace eberlein {

BlockPartition::BlockPartition(std::vector<std::size_t> sizes) : sizes_(std::move(sizes)) {
    if (sizes_.empty()) throw InvalidArgument("BlockPartition: at least one block required");
    offsets_.reserve(sizes_.size());
    for (std::size_t s : sizes_) {
        if (s == 0) throw InvalidArgument("BlockPartition: block sizes must be positive");
        offsets_.push_back(n_);
        n_ += s;
    }
}

BlockPartition BlockPartition::uniform(std::size_t n, std::size_t block_size) {
    if (n == 0) throw InvalidArgument("BlockPartition::uniform: n must be positive");
    if (block_size == 0 || block_size > n) {
        throw InvalidArgument("BlockPartition::uniform: block size " + std::to_string(block_size) +
                              " must be in [1, " + std::to_string(n) + "]");
    }
    std::vector<std::size_t> sizes(n / block_size, block_size);
    if (n % block_size) sizes.push_back(n % block_size);
    return BlockPartition(std::move(sizes));
}

BlockPartition BlockPartition::unit(std::size_t n) { return uniform(n, 1); }

std::size_t BlockPartition::block_of(std::size_t i) const {
    if (i >= n_) throw InvalidArgument("BlockPartition::block_of: index out of range");
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), i);
    return static_cast<std::size_t>(it - offsets_.begin()) - 1;
}

}  // namespace eberlein
