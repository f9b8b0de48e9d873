#include <benchmark/benchmark.h>

#include "tridrop/loss.hpp"
#include "tridrop/mask.hpp"
#include "tridrop/net.hpp"
#include "tridrop/rng.hpp"

using namespace tridrop;

namespace {

Matrix random_matrix(std::size_t r, std::size_t c, Rng& rng) {
    Matrix m(r, c);
    for (float& v : m.flat()) {
        v = rng.uniform_float(-1.0f, 1.0f);
    }
    return m;
}

void BM_matmul(benchmark::State& state) {
    const auto m = static_cast<std::size_t>(state.range(0));
    const auto k = static_cast<std::size_t>(state.range(1));
    const auto n = static_cast<std::size_t>(state.range(2));
    Rng rng(1);
    const Matrix a = random_matrix(m, k, rng);
    const Matrix b = random_matrix(k, n, rng);
    Matrix out(m, n);
    for (auto _ : state) {
        out.fill(0.0f);
        matmul_acc(out, a, b);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * 2 * m * k * n);
}

void BM_build_mask(benchmark::State& state) {
    const auto batch = static_cast<std::size_t>(state.range(0));
    const auto width = static_cast<std::size_t>(state.range(1));
    for (auto _ : state) {
        auto mask = build_mask(batch, width, MaskMode::DeterministicPrefix);
        benchmark::DoNotOptimize(mask.widths().data());
    }
}

void BM_tridrop_forward_train(benchmark::State& state) {
    const auto batch = static_cast<std::size_t>(state.range(0));
    const auto width = static_cast<std::size_t>(state.range(1));
    Rng rng(1);
    Layer layer;
    layer.kind = LayerKind::TriDrop;
    layer.activation = ActivationKind::Relu;
    layer.dense = init_dense(256, width, ActivationKind::Relu, rng);
    const Matrix x = random_matrix(batch, 256, rng);
    const auto mask = build_mask(batch, width, MaskMode::DeterministicPrefix);
    for (auto _ : state) {
        Matrix y = tridrop_forward_train(layer, x, mask);
        benchmark::DoNotOptimize(y.data());
    }
}

void BM_tridrop_train_step(benchmark::State& state) {
    // forward + backward of the z=32 autoencoder shape at batch 1024
    Rng rng(1);
    NetT<float> net;
    const std::vector<std::tuple<LayerKind, std::size_t, std::size_t, ActivationKind>> arch = {
        {LayerKind::Dense, 784, 256, ActivationKind::Relu},
        {LayerKind::TriDrop, 256, 32, ActivationKind::Identity},
        {LayerKind::Dense, 32, 256, ActivationKind::Relu},
        {LayerKind::Dense, 256, 784, ActivationKind::Sigmoid},
    };
    for (const auto& [kind, in, out, act] : arch) {
        Layer l;
        l.kind = kind;
        l.activation = act;
        l.dense = init_dense(in, out, act, rng);
        net.layers.push_back(std::move(l));
    }
    const Matrix x = random_matrix(1024, 784, rng);
    std::vector<LayerCacheT<float>> caches;
    for (auto _ : state) {
        const auto masks = net.make_train_masks(x.rows());
        const Matrix pred = net.forward_train(x, masks, &caches);
        auto lg = loss_and_grad(LossKind::BinaryCrossEntropy, pred, x);
        auto grads = net.backward(caches, lg.grad);
        benchmark::DoNotOptimize(grads.layers.data());
    }
}

}  // namespace

BENCHMARK(BM_matmul)->Args({1024, 784, 256})->Args({1024, 256, 32})->Args({512, 256, 256});
BENCHMARK(BM_build_mask)->Args({1024, 32})->Args({64, 4096});
BENCHMARK(BM_tridrop_forward_train)->Args({1024, 32})->Args({512, 256});
BENCHMARK(BM_tridrop_train_step);
