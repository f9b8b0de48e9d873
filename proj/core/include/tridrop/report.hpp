#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace tridrop {

struct AblationRow {
    std::size_t width;
    double metric;
    std::size_t params;
};

// Width-sweep result: one row per evaluated width, strictly increasing.
struct AblationReport {
    std::string metric_name;  // "bce" | "accuracy" | "score" | "mse"
    std::string provenance;   // config hash, seed, model path
    std::vector<AblationRow> rows;

    void validate() const;
};

// CSV layout: one '#' provenance comment line, a header row
// "width,metric,params", then the rows. Metric values are printed with %.9g
// so reruns are byte-identical.
void write_csv(const AblationReport& report, const std::filesystem::path& path);
AblationReport read_csv(const std::filesystem::path& path);

// FNV-1a 64-bit, used to fingerprint resolved configs in provenance lines.
std::uint64_t fnv1a64(std::string_view s);
std::string hex64(std::uint64_t v);

std::string format_metric(double value);

}  // namespace tridrop
