#include "tridrop/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "tridrop/errors.hpp"

namespace tridrop {

void AblationReport::validate() const {
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].width <= rows[i - 1].width) {
            throw InternalError("ablation report widths are not strictly increasing at row " +
                                std::to_string(i));
        }
    }
}

std::string format_metric(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

void write_csv(const AblationReport& report, const std::filesystem::path& path) {
    report.validate();
    std::ofstream f(path, std::ios::trunc);
    if (!f) {
        throw IoError("cannot open for writing: " + path.string());
    }
    f << "# " << report.provenance << " metric=" << report.metric_name << "\n";
    f << "width,metric,params\n";
    for (const auto& row : report.rows) {
        f << row.width << "," << format_metric(row.metric) << "," << row.params << "\n";
    }
    f.flush();
    if (!f) {
        throw IoError("write failed: " + path.string());
    }
}

AblationReport read_csv(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) {
        throw IoError("cannot open: " + path.string());
    }
    AblationReport report;
    std::string line;
    bool header_seen = false;
    std::size_t lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        if (line[0] == '#') {
            report.provenance = line.substr(line.size() > 2 ? 2 : 1);
            const auto pos = report.provenance.rfind(" metric=");
            if (pos != std::string::npos) {
                report.metric_name = report.provenance.substr(pos + 8);
                report.provenance.resize(pos);
            }
            continue;
        }
        if (!header_seen) {
            if (line != "width,metric,params") {
                throw FormatError(path.string() + ":" + std::to_string(lineno) +
                                  ": expected header 'width,metric,params'");
            }
            header_seen = true;
            continue;
        }
        AblationRow row{};
        char comma1 = 0, comma2 = 0;
        std::istringstream is(line);
        if (!(is >> row.width >> comma1 >> row.metric >> comma2 >> row.params) || comma1 != ',' ||
            comma2 != ',') {
            throw FormatError(path.string() + ":" + std::to_string(lineno) + ": malformed row '" +
                              line + "'");
        }
        report.rows.push_back(row);
    }
    if (!header_seen) {
        throw FormatError(path.string() + ": missing header row");
    }
    report.validate();
    return report;
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace tridrop
