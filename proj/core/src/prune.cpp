#include "tridrop/prune.hpp"

#include "tridrop/errors.hpp"

namespace tridrop {

Model prune_model(const Model& m, const std::vector<std::size_t>& widths) {
    const auto td_indices = tridrop_layer_indices(m);
    if (widths.size() != td_indices.size()) {
        throw ConfigError("prune_model: " + std::to_string(widths.size()) + " widths for " +
                          std::to_string(td_indices.size()) + " TriDrop layers");
    }
    Model out = m;
    out.meta.name = m.meta.name.empty() ? "pruned" : m.meta.name + "-pruned";
    std::size_t wi = 0;
    for (std::size_t li = 0; li < out.net.layers.size(); ++li) {
        auto& layer = out.net.layers[li];
        if (layer.kind != LayerKind::TriDrop) {
            continue;
        }
        const std::size_t k = widths[wi] == kFullWidth ? layer.out_dim() : widths[wi];
        ++wi;
        if (k < 1 || k > layer.out_dim()) {
            throw RangeError("prune_model: width " + std::to_string(k) +
                             " out of range for layer " + std::to_string(li));
        }
        if (li + 1 >= out.net.layers.size()) {
            throw ConfigError("prune_model: TriDrop layer " + std::to_string(li) +
                              " has no following layer to trim");
        }
        auto pair = prune_layer(layer, out.net.layers[li + 1].dense, k);
        layer.kind = LayerKind::Dense;
        layer.dense = std::move(pair.small);
        layer.eval_width = kFullWidth;
        out.net.layers[li + 1].dense = std::move(pair.next_trimmed);
    }
    return out;
}

}  // namespace tridrop
