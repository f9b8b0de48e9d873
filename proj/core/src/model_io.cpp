#include "tridrop/model_io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include "tridrop/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "model files are little-endian; byte swapping is not implemented");
static_assert(sizeof(float) == 4 && std::numeric_limits<float>::is_iec559,
              "model files require 32-bit IEEE-754 floats");

namespace tridrop {

std::size_t param_count(const ModelSpec& spec) {
    std::size_t total = 0;
    for (const auto& l : spec.layers) {
        total += l.in_dim * l.out_dim + l.out_dim;
    }
    return total;
}

std::size_t param_count(const Model& m) {
    return param_count(m.spec());
}

ParamCountReport param_count_report(const ModelSpec& spec) {
    ParamCountReport report;
    for (std::size_t i = 0; i < spec.layers.size(); ++i) {
        const auto& l = spec.layers[i];
        const std::size_t count = l.in_dim * l.out_dim + l.out_dim;
        report.per_layer.push_back({"layer " + std::to_string(i) + " (" + to_string(l.kind) +
                                        " " + std::to_string(l.in_dim) + "->" +
                                        std::to_string(l.out_dim) + ")",
                                    count});
        report.total += count;
    }
    return report;
}

std::size_t vgg_classifier_param_count(std::size_t width) {
    if (width < 1 || width > 4096) {
        throw RangeError("vgg_classifier_param_count: width must be in [1, 4096]");
    }
    return 25088 * width + width + width * width + width + 1000 * width + 1000;
}

double vgg_classifier_param_reduction(std::size_t width) {
    const double full = static_cast<double>(vgg_classifier_param_count(4096));
    return 1.0 - static_cast<double>(vgg_classifier_param_count(width)) / full;
}

namespace {

std::string sanitize_line(const std::string& s) {
    std::string out = s;
    for (char& c : out) {
        if (c == '\n' || c == '\r') {
            c = ' ';
        }
    }
    return out;
}

std::string spec_header_text(const ModelSpec& spec) {
    std::ostringstream os;
    os << "name = " << sanitize_line(spec.meta.name) << "\n";
    os << "seed = " << spec.meta.seed << "\n";
    os << "provenance = " << sanitize_line(spec.meta.provenance) << "\n";
    os << "input_dim = " << spec.input_dim << "\n";
    os << "loss = " << to_string(spec.loss) << "\n";
    os << "layers = " << spec.layers.size() << "\n";
    for (std::size_t i = 0; i < spec.layers.size(); ++i) {
        const auto& l = spec.layers[i];
        os << "layer." << i << " = " << to_string(l.kind) << " " << l.in_dim << " " << l.out_dim
           << " " << to_string(l.activation) << "\n";
    }
    return os.str();
}

// "key = value" split; returns false for blank lines.
bool split_kv(const std::string& line, std::string& key, std::string& value) {
    const auto pos = line.find(" = ");
    if (pos == std::string::npos) {
        return false;
    }
    key = line.substr(0, pos);
    value = line.substr(pos + 3);
    return true;
}

ModelSpec parse_header_text(const std::string& text, const std::string& path) {
    ModelSpec spec;
    std::istringstream is(text);
    std::string line, key, value;
    std::size_t declared_layers = 0;
    while (std::getline(is, line)) {
        if (line.empty()) {
            continue;
        }
        if (!split_kv(line, key, value)) {
            throw FormatError(path + ": malformed header line: '" + line + "'");
        }
        if (key == "name") {
            spec.meta.name = value;
        } else if (key == "seed") {
            spec.meta.seed = std::stoull(value);
        } else if (key == "provenance") {
            spec.meta.provenance = value;
        } else if (key == "input_dim") {
            spec.input_dim = std::stoull(value);
        } else if (key == "loss") {
            spec.loss = parse_loss(value);
        } else if (key == "layers") {
            declared_layers = std::stoull(value);
        } else if (key.rfind("layer.", 0) == 0) {
            std::istringstream ls(value);
            std::string kind_s, act_s;
            std::size_t in_dim = 0, out_dim = 0;
            if (!(ls >> kind_s >> in_dim >> out_dim >> act_s)) {
                throw FormatError(path + ": malformed layer line: '" + line + "'");
            }
            LayerSpec l;
            l.kind = parse_layer_kind(kind_s);
            l.in_dim = in_dim;
            l.out_dim = out_dim;
            l.activation = parse_activation(act_s);
            spec.layers.push_back(l);
        } else {
            throw FormatError(path + ": unknown header key: '" + key + "'");
        }
    }
    if (spec.layers.size() != declared_layers) {
        throw FormatError(path + ": header declares " + std::to_string(declared_layers) +
                          " layers but lists " + std::to_string(spec.layers.size()));
    }
    try {
        spec.validate();
    } catch (const ConfigError& e) {
        throw FormatError(path + ": invalid model spec in header: " + e.what());
    }
    return spec;
}

}  // namespace

void save_model(const Model& m, const std::filesystem::path& path) {
    const ModelSpec spec = m.spec();
    const std::string header = spec_header_text(spec);

    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw IoError("cannot open for writing: " + path.string());
    }
    f.write(kModelMagic, 4);
    f.put(static_cast<char>(kModelFormatVersion));
    const std::uint64_t header_len = header.size();
    f.write(reinterpret_cast<const char*>(&header_len), 8);
    f.write(header.data(), static_cast<std::streamsize>(header.size()));
    for (const auto& l : m.net.layers) {
        const auto& w = l.dense.weights;
        f.write(reinterpret_cast<const char*>(w.data()),
                static_cast<std::streamsize>(w.size() * sizeof(float)));
        f.write(reinterpret_cast<const char*>(l.dense.bias.data()),
                static_cast<std::streamsize>(l.dense.bias.size() * sizeof(float)));
    }
    f.flush();
    if (!f) {
        throw IoError("write failed: " + path.string());
    }
}

Model load_model(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw IoError("cannot open for reading: " + path.string());
    }
    char magic[4];
    if (!f.read(magic, 4)) {
        throw FormatError(path.string() + ": truncated at byte 0 (magic)");
    }
    if (std::memcmp(magic, kModelMagic, 4) != 0) {
        throw FormatError(path.string() + ": bad magic at byte 0; not a model file");
    }
    const int version = f.get();
    if (version == EOF) {
        throw FormatError(path.string() + ": truncated at byte 4 (version)");
    }
    if (version != kModelFormatVersion) {
        throw FormatError(path.string() + ": unsupported format version " +
                          std::to_string(version) + " (expected " +
                          std::to_string(kModelFormatVersion) + ")");
    }
    std::uint64_t header_len = 0;
    if (!f.read(reinterpret_cast<char*>(&header_len), 8)) {
        throw FormatError(path.string() + ": truncated at byte 5 (header length)");
    }
    std::string header(header_len, '\0');
    if (!f.read(header.data(), static_cast<std::streamsize>(header_len))) {
        throw FormatError(path.string() + ": truncated at byte 13 (header of " +
                          std::to_string(header_len) + " bytes)");
    }
    const ModelSpec spec = parse_header_text(header, path.string());

    Model m;
    m.loss = spec.loss;
    m.meta = spec.meta;
    std::uint64_t offset = 13 + header_len;
    for (const auto& ls : spec.layers) {
        Layer layer;
        layer.kind = ls.kind;
        layer.activation = ls.activation;
        layer.dense = DenseParams(ls.in_dim, ls.out_dim);
        auto& w = layer.dense.weights;
        if (!f.read(reinterpret_cast<char*>(w.data()),
                    static_cast<std::streamsize>(w.size() * sizeof(float)))) {
            const std::uint64_t got = offset + static_cast<std::uint64_t>(f.gcount());
            throw FormatError(path.string() + ": weight blob truncated at byte " +
                              std::to_string(got) + "; expected " +
                              std::to_string(13 + header_len + 4 * param_count(spec)) +
                              " bytes total");
        }
        offset += w.size() * sizeof(float);
        if (!f.read(reinterpret_cast<char*>(layer.dense.bias.data()),
                    static_cast<std::streamsize>(layer.dense.bias.size() * sizeof(float)))) {
            const std::uint64_t got = offset + static_cast<std::uint64_t>(f.gcount());
            throw FormatError(path.string() + ": weight blob truncated at byte " +
                              std::to_string(got) + "; expected " +
                              std::to_string(13 + header_len + 4 * param_count(spec)) +
                              " bytes total");
        }
        offset += layer.dense.bias.size() * sizeof(float);
        m.net.layers.push_back(std::move(layer));
    }
    // Trailing bytes mean the file does not match its own header.
    f.peek();
    if (!f.eof()) {
        throw FormatError(path.string() + ": trailing data after byte " + std::to_string(offset));
    }
    return m;
}

std::string summarize(const Model& m) {
    const ModelSpec spec = m.spec();
    std::ostringstream os;
    os << "model: " << (spec.meta.name.empty() ? "(unnamed)" : spec.meta.name)
       << "  loss: " << to_string(spec.loss) << "  input_dim: " << spec.input_dim << "\n";
    char buf[160];
    std::size_t total = 0;
    for (std::size_t i = 0; i < spec.layers.size(); ++i) {
        const auto& l = spec.layers[i];
        const std::size_t count = l.in_dim * l.out_dim + l.out_dim;
        total += count;
        const auto& layer = m.net.layers[i];
        std::string width_note;
        if (layer.eval_width != kFullWidth && layer.eval_width < l.out_dim) {
            width_note = "  eval_width=" + std::to_string(layer.eval_width);
        }
        std::snprintf(buf, sizeof(buf), "  %2zu  %-8s %5zu -> %-5zu %-9s %10zu params%s\n", i,
                      to_string(l.kind).c_str(), l.in_dim, l.out_dim,
                      to_string(l.activation).c_str(), count, width_note.c_str());
        os << buf;
    }
    os << "  total: " << total << " params\n";
    return os.str();
}

}  // namespace tridrop
