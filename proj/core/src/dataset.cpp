#include "tridrop/dataset.hpp"

#include <numeric>

#include "tridrop/errors.hpp"

namespace tridrop {

BatchIterator::BatchIterator(const Dataset& ds, std::size_t batch_size, bool shuffle,
                             bool drop_last, std::uint64_t seed)
    : ds_(ds), batch_size_(batch_size), shuffle_(shuffle), drop_last_(drop_last), seed_(seed) {
    ds_.validate();
    if (batch_size_ < 1) {
        throw ConfigError("batch size must be >= 1");
    }
    if (ds_.size() < 1) {
        throw ConfigError("dataset '" + ds.name + "' is empty");
    }
    const std::size_t n = ds_.size();
    batches_per_epoch_ = drop_last_ ? n / batch_size_ : (n + batch_size_ - 1) / batch_size_;
    if (batches_per_epoch_ == 0) {
        throw ConfigError("batch size " + std::to_string(batch_size_) +
                          " exceeds dataset size " + std::to_string(n) +
                          " with drop_last enabled");
    }
}

std::vector<std::size_t> BatchIterator::epoch_order(std::size_t epoch) const {
    std::vector<std::size_t> order(ds_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (shuffle_) {
        Rng rng = Rng(seed_).fork(epoch);
        rng.shuffle(order);
    }
    return order;
}

BatchIterator::Batch BatchIterator::get(std::size_t epoch, std::size_t batch_index) const {
    if (batch_index >= batches_per_epoch_) {
        throw RangeError("batch index " + std::to_string(batch_index) + " out of range");
    }
    const auto order = epoch_order(epoch);
    const std::size_t begin = batch_index * batch_size_;
    const std::size_t end = std::min(begin + batch_size_, ds_.size());
    Batch b{Matrix(end - begin, ds_.inputs.cols()), Matrix(end - begin, ds_.targets.cols())};
    for (std::size_t r = 0; r < end - begin; ++r) {
        const std::size_t src = order[begin + r];
        std::copy(ds_.inputs.row(src), ds_.inputs.row(src) + ds_.inputs.cols(), b.x.row(r));
        std::copy(ds_.targets.row(src), ds_.targets.row(src) + ds_.targets.cols(), b.y.row(r));
    }
    return b;
}

}  // namespace tridrop
