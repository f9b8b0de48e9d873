#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "tridrop/matrix.hpp"

namespace tridrop {

// IDX container header: two zero bytes, a type code, a rank byte, then one
// big-endian u32 per axis.
struct IdxHeader {
    std::uint8_t type_code = 0;
    std::uint8_t rank = 0;
    std::vector<std::uint32_t> dims;
};

IdxHeader read_idx_header(std::istream& in, const std::string& path);

// Loads a rank-3 unsigned-byte IDX image file as an N x (rows*cols) matrix,
// pixels scaled to [0,1] by /255, images flattened row-major.
Matrix load_idx_images(const std::filesystem::path& path);

// Loads a rank-1 unsigned-byte IDX label file.
std::vector<std::uint8_t> load_idx_labels(const std::filesystem::path& path);

// One-hot encodes labels; throws if any label >= classes.
Matrix one_hot(const std::vector<std::uint8_t>& labels, std::size_t classes);

}  // namespace tridrop
