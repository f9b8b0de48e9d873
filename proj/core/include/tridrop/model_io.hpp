#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tridrop/model.hpp"

namespace tridrop {

// Model file layout, version 1 (documented with a hex example in
// docs/model-format.md):
//   bytes 0..3   magic "TDRP"
//   byte  4      format version (1)
//   bytes 5..12  header length in bytes, little-endian u64
//   ...          header: UTF-8 "key = value" lines describing the spec
//   ...          weight blob: all parameters in layer order, weights then
//                bias per layer, little-endian IEEE-754 float32
inline constexpr char kModelMagic[4] = {'T', 'D', 'R', 'P'};
inline constexpr std::uint8_t kModelFormatVersion = 1;

// Sum over layers of in_dim*out_dim + out_dim.
std::size_t param_count(const ModelSpec& spec);
std::size_t param_count(const Model& m);

struct ParamCountRow {
    std::string label;
    std::size_t count;
};

struct ParamCountReport {
    std::vector<ParamCountRow> per_layer;
    std::size_t total = 0;
};

ParamCountReport param_count_report(const ModelSpec& spec);

// Parameter count of the reference two-hidden-layer image classifier head
// (25088 -> w -> w -> 1000) at hidden width w:
//   25088*w + w + w^2 + w + 1000*w + 1000.
std::size_t vgg_classifier_param_count(std::size_t width);

// 1 - count(width) / count(4096).
double vgg_classifier_param_reduction(std::size_t width);

void save_model(const Model& m, const std::filesystem::path& path);
Model load_model(const std::filesystem::path& path);

// Human-readable per-layer table (kind, dims, activation, parameter count,
// eval width when reduced) plus the total.
std::string summarize(const Model& m);

}  // namespace tridrop
