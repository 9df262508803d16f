#include "mhq/app/output.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace mhq::app {

std::string format_number(double v) {
    if (v == 0.0) return "0";  // folds -0
    return fmt::format("{:.17g}", v);
}

void write_series_csv(const std::filesystem::path &path, const std::vector<SeriesRow> &rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "t_us,series,value,stderr\n";
    for (const auto &r : rows) {
        if (!std::isfinite(r.value)) throw std::runtime_error("non-finite value in series " + r.series);
        out << format_number(r.t_us) << ',' << r.series << ',' << format_number(r.value) << ',';
        if (r.error) out << format_number(*r.error);
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_json(const std::filesystem::path &path, const nlohmann::ordered_json &doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << doc.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

void ensure_directory(const std::filesystem::path &dir) {
    if (!dir.empty()) std::filesystem::create_directories(dir);
}

}  // namespace mhq::app
