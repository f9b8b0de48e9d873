#include "tridrop/idx.hpp"

#include <fstream>

#include "tridrop/errors.hpp"

namespace tridrop {

namespace {

constexpr std::uint8_t kTypeUnsignedByte = 0x08;

std::uint32_t read_u32_be(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    return (std::uint32_t(b[0]) << 24) | (std::uint32_t(b[1]) << 16) | (std::uint32_t(b[2]) << 8) |
           std::uint32_t(b[3]);
}

}  // namespace

IdxHeader read_idx_header(std::istream& in, const std::string& path) {
    unsigned char magic[4];
    if (!in.read(reinterpret_cast<char*>(magic), 4)) {
        throw FormatError(path + ": truncated at byte 0 (magic)");
    }
    if (magic[0] != 0 || magic[1] != 0) {
        throw FormatError(path + ": bad magic at byte 0; not an IDX file");
    }
    IdxHeader h;
    h.type_code = magic[2];
    h.rank = magic[3];
    if (h.rank == 0) {
        throw FormatError(path + ": rank 0 at byte 3");
    }
    for (std::uint8_t i = 0; i < h.rank; ++i) {
        const std::uint32_t d = read_u32_be(in);
        if (!in) {
            throw FormatError(path + ": truncated at byte " + std::to_string(4 + 4 * i) +
                              " (dimension " + std::to_string(i) + ")");
        }
        h.dims.push_back(d);
    }
    return h;
}

Matrix load_idx_images(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw IoError("cannot open: " + path.string());
    }
    const IdxHeader h = read_idx_header(f, path.string());
    if (h.type_code != kTypeUnsignedByte) {
        throw FormatError(path.string() + ": type code " + std::to_string(h.type_code) +
                          " at byte 2; expected unsigned byte (0x08)");
    }
    if (h.rank != 3) {
        throw FormatError(path.string() + ": rank " + std::to_string(h.rank) +
                          " at byte 3; image files have rank 3");
    }
    const std::size_t n = h.dims[0];
    const std::size_t pixels = static_cast<std::size_t>(h.dims[1]) * h.dims[2];
    const std::size_t header_bytes = 4 + 4 * h.rank;
    std::vector<unsigned char> buf(n * pixels);
    if (!f.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()))) {
        throw FormatError(path.string() + ": truncated at byte " +
                          std::to_string(header_bytes + static_cast<std::size_t>(f.gcount())) +
                          "; expected " + std::to_string(header_bytes + buf.size()) + " bytes");
    }
    Matrix m(n, pixels);
    float* dst = m.data();
    for (std::size_t i = 0; i < buf.size(); ++i) {
        dst[i] = static_cast<float>(buf[i]) / 255.0f;
    }
    return m;
}

std::vector<std::uint8_t> load_idx_labels(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw IoError("cannot open: " + path.string());
    }
    const IdxHeader h = read_idx_header(f, path.string());
    if (h.type_code != kTypeUnsignedByte) {
        throw FormatError(path.string() + ": type code " + std::to_string(h.type_code) +
                          " at byte 2; expected unsigned byte (0x08)");
    }
    if (h.rank != 1) {
        throw FormatError(path.string() + ": rank " + std::to_string(h.rank) +
                          " at byte 3; label files have rank 1");
    }
    std::vector<std::uint8_t> labels(h.dims[0]);
    if (!f.read(reinterpret_cast<char*>(labels.data()),
                static_cast<std::streamsize>(labels.size()))) {
        throw FormatError(path.string() + ": truncated at byte " +
                          std::to_string(8 + static_cast<std::size_t>(f.gcount())) + "; expected " +
                          std::to_string(8 + labels.size()) + " bytes");
    }
    return labels;
}

Matrix one_hot(const std::vector<std::uint8_t>& labels, std::size_t classes) {
    Matrix m(labels.size(), classes);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] >= classes) {
            throw RangeError("one_hot: label " + std::to_string(labels[i]) + " at index " +
                             std::to_string(i) + " is out of range for " +
                             std::to_string(classes) + " classes");
        }
        m(i, labels[i]) = 1.0f;
    }
    return m;
}

}  // namespace tridrop
