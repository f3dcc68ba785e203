#include "grs/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace grs::io {

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

void ensure_directory(const std::string& path) {
    if (!path.empty()) std::filesystem::create_directories(path);
}

namespace {

std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file '" + path + "'");
    return out;
}

}  // namespace

void write_csv(const std::string& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out = open_for_write(path);
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out << (i == 0 ? "" : ",") << columns[i];
    }
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i == 0 ? "" : ",") << format_double(row[i]);
        }
        out << "\n";
    }
}

void write_cloud_csv(const std::string& path, const ReachCloud& cloud) {
    std::ofstream out = open_for_write(path);
    const Index n = cloud.points.empty() ? 0 : cloud.points.front().x.size();
    out << "t";
    for (Index i = 0; i < n; ++i) out << ",x" << (i + 1);
    out << "\n";
    for (const TimedState& point : cloud.points) {
        out << format_double(point.t);
        for (Index i = 0; i < point.x.size(); ++i) out << "," << format_double(point.x(i));
        out << "\n";
    }
}

void write_cloud_json(const std::string& path, const ReachCloud& cloud) {
    nlohmann::json j;
    j["meta"] = {{"system", cloud.system},
                 {"horizon", cloud.horizon},
                 {"seed", cloud.seed},
                 {"n_points", cloud.points.size()}};
    nlohmann::json points = nlohmann::json::array();
    for (const TimedState& point : cloud.points) {
        nlohmann::json row = nlohmann::json::array();
        row.push_back(point.t);
        for (Index i = 0; i < point.x.size(); ++i) row.push_back(point.x(i));
        points.push_back(std::move(row));
    }
    j["points"] = std::move(points);
    write_text_file(path, j.dump());
}

void write_hull_csv(const std::string& path, const std::vector<Eigen::Vector2d>& hull) {
    std::vector<std::vector<double>> rows;
    rows.reserve(hull.size());
    for (const auto& v : hull) rows.push_back({v.x(), v.y()});
    write_csv(path, {"x", "y"}, rows);
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out = open_for_write(path);
    out << text;
    if (!text.empty() && text.back() != '\n') out << "\n";
}

}  // namespace grs::io
