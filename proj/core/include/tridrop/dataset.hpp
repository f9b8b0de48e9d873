#pragma once

#include <string>

#include "tridrop/matrix.hpp"
#include "tridrop/rng.hpp"

namespace tridrop {

struct Dataset {
    Matrix inputs;   // N x d_in
    Matrix targets;  // N x d_out
    std::string name;
    std::string provenance;

    std::size_t size() const { return inputs.rows(); }

    void validate() const {
        if (inputs.rows() != targets.rows()) {
            throw DimensionError("dataset '" + name + "': " + std::to_string(inputs.rows()) +
                                 " inputs vs " + std::to_string(targets.rows()) + " targets");
        }
    }
};

// Deterministic minibatch access. Epoch e uses the permutation drawn from
// fork(seed, e), so any (epoch, batch) pair can be regenerated independently.
// With drop_last the trailing short batch is skipped; training with
// deterministic triangular masks uses that so every batch has the configured
// size B and the per-row width pattern stays as designed.
class BatchIterator {
public:
    BatchIterator(const Dataset& ds, std::size_t batch_size, bool shuffle, bool drop_last,
                  std::uint64_t seed);

    std::size_t batches_per_epoch() const { return batches_per_epoch_; }
    std::size_t batch_size() const { return batch_size_; }

    struct Batch {
        Matrix x;
        Matrix y;
    };

    Batch get(std::size_t epoch, std::size_t batch_index) const;

    // Index order for one epoch (exposed for tests).
    std::vector<std::size_t> epoch_order(std::size_t epoch) const;

private:
    const Dataset& ds_;
    std::size_t batch_size_;
    bool shuffle_;
    bool drop_last_;
    std::uint64_t seed_;
    std::size_t batches_per_epoch_;
};

}  // namespace tridrop
