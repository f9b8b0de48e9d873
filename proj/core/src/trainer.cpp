#include "tridrop/trainer.hpp"

#include <cmath>
#include <optional>

#include "tridrop/errors.hpp"

namespace tridrop {

TrainResult train(Model& m, const Dataset& data, const TrainConfig& cfg) {
    data.validate();
    if (data.inputs.cols() != m.input_dim()) {
        throw DimensionError("train: dataset has " + std::to_string(data.inputs.cols()) +
                             " features, model expects " + std::to_string(m.input_dim()));
    }
    if (data.targets.cols() != m.output_dim()) {
        throw DimensionError("train: dataset targets have " +
                             std::to_string(data.targets.cols()) + " columns, model outputs " +
                             std::to_string(m.output_dim()));
    }

    BatchIterator batches(data, cfg.batch_size, cfg.shuffle, cfg.drop_last, cfg.seed);
    ModelAdam adam(m, cfg.adam);
    Rng mask_rng = Rng(cfg.seed).fork(0x6d61736bull);  // only consumed by RandomPrefix layers

    std::optional<PlateauScheduler> plateau;
    std::optional<StepScheduler> step;
    if (cfg.schedule == LrSchedule::Plateau) {
        auto pc = cfg.plateau;
        pc.initial_lr = cfg.lr;
        plateau.emplace(pc);
    } else if (cfg.schedule == LrSchedule::Step) {
        step.emplace(cfg.lr, cfg.step_period, cfg.step_factor);
    }

    TrainResult result;
    double lr = cfg.lr;
    std::vector<LayerCacheT<float>> caches;
    for (std::size_t epoch = 0; epoch < cfg.max_epochs; ++epoch) {
        if (step.has_value()) {
            lr = step->lr_for_epoch(epoch);
        }
        double epoch_loss = 0.0;
        for (std::size_t b = 0; b < batches.batches_per_epoch(); ++b) {
            const auto batch = batches.get(epoch, b);
            const auto masks = m.net.make_train_masks(batch.x.rows(), &mask_rng);
            const Matrix pred = m.net.forward_train(batch.x, masks, &caches);
            auto lr_result = loss_and_grad(m.loss, pred, batch.y);
            if (!std::isfinite(lr_result.value)) {
                throw NumericError("training loss became non-finite at epoch " +
                                   std::to_string(epoch) + ", batch " + std::to_string(b));
            }
            epoch_loss += lr_result.value;
            const auto grads = m.net.backward(caches, lr_result.grad);
            adam.step(m, grads, lr);
        }
        epoch_loss /= static_cast<double>(batches.batches_per_epoch());
        result.epoch_losses.push_back(epoch_loss);
        result.final_loss = epoch_loss;
        result.epochs_run = epoch + 1;
        if (cfg.log != nullptr) {
            *cfg.log << "epoch " << epoch << " loss " << epoch_loss << " lr " << lr << "\n";
            cfg.log->flush();
        }
        if (plateau.has_value()) {
            const auto update = plateau->observe(epoch_loss);
            lr = update.lr;
            if (update.stop) {
                result.stopped_by_scheduler = true;
                break;
            }
        }
    }
    return result;
}

}  // namespace tridrop
