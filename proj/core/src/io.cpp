#include "charges/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "charges/errors.hpp"

namespace charges::io {

using nlohmann::json;

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw IoError(path + ": " + e.what());
    }
}

namespace {

std::vector<std::vector<double>> parse_point_list(const json& j, const char* what) {
    if (!j.is_array()) throw IoError(std::string(what) + " must be an array");
    std::vector<std::vector<double>> out;
    for (const auto& row : j) out.push_back(row.get<std::vector<double>>());
    return out;
}

} // namespace

std::shared_ptr<const FiniteMetricSpace> parse_space(const json& j, bool from_coords) {
    if (!j.is_object()) throw IoError("space must be a JSON object");
    bool has_points = j.contains("points") && !j["points"].is_null();
    bool has_dist = j.contains("dist") && !j["dist"].is_null();
    if (!j.contains("bound") || !j["bound"].is_number())
        throw IoError("space needs a numeric bound");
    double bound = j["bound"].get<double>();

    if (has_dist && !from_coords) {
        auto dist = parse_point_list(j["dist"], "dist");
        auto space = FiniteMetricSpace::from_matrix(std::move(dist), bound);
        return std::make_shared<FiniteMetricSpace>(std::move(space));
    }
    if (!has_points) throw IoError("space needs points or dist");
    auto points = parse_point_list(j["points"], "points");
    return std::make_shared<FiniteMetricSpace>(
        FiniteMetricSpace::from_points(std::move(points), bound));
}

std::shared_ptr<const FiniteMetricSpace> load_space(const std::string& path,
                                                    bool from_coords) {
    return parse_space(load_json(path), from_coords);
}

DiscreteMeasure load_measure(const std::string& path, bool from_coords) {
    json j = load_json(path);
    if (!j.is_object() || !j.contains("weights"))
        throw IoError(path + ": measure needs weights");
    std::shared_ptr<const FiniteMetricSpace> space;
    if (j.contains("space") && j["space"].is_string()) {
        std::filesystem::path ref = j["space"].get<std::string>();
        if (ref.is_relative()) ref = std::filesystem::path(path).parent_path() / ref;
        space = load_space(ref.string(), from_coords);
    } else if (j.contains("space") && j["space"].is_object()) {
        space = parse_space(j["space"], from_coords);
    } else {
        throw IoError(path + ": measure needs a space path or object");
    }
    return DiscreteMeasure(space, j["weights"].get<std::vector<double>>());
}

MeasureFamily parse_family(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw IoError("family needs a kind");
    std::string kind = j["kind"].get<std::string>();
    if (kind == "point_at") {
        if (!j.contains("loc")) throw IoError("point_at needs loc");
        if (j["loc"].is_string()) {
            std::string loc = j["loc"].get<std::string>();
            if (loc == "1/(2N)") return family_point_at_half_inv();
            if (loc == "1/N") return family_point_at_inv();
            throw IoError("unknown point_at loc: " + loc);
        }
        return family_point_const(j["loc"].get<double>());
    }
    if (kind == "uniform_grid") return family_uniform_grid();
    if (kind == "constant") {
        Atoms atoms;
        atoms.coords = parse_point_list(j.at("coords"), "coords");
        atoms.weights = j.at("weights").get<std::vector<double>>();
        if (atoms.coords.size() != atoms.weights.size())
            throw IoError("constant family: coords and weights disagree");
        return family_constant(std::move(atoms));
    }
    if (kind == "alternating") {
        auto points = parse_point_list(j.at("points"), "points");
        if (points.empty()) throw IoError("alternating family needs points");
        return {[points](int n) {
            if (n < 1) throw DomainError("resolution index must be positive");
            return Atoms{{points[(n - 1) % points.size()]}, {1.0}};
        }};
    }
    throw IoError("unknown family kind: " + kind);
}

MeasureFamily load_family(const std::string& path) {
    return parse_family(load_json(path));
}

DiscreteSeq parse_discrete_seq(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw IoError("sequence needs a kind");
    std::string kind = j["kind"].get<std::string>();
    if (kind == "alternating") {
        int k = static_cast<int>(j.at("points").size());
        if (k < 1) throw IoError("alternating sequence needs points");
        return {[k](int n) {
            if (n < 1) throw DomainError("sequence index must be positive");
            return std::vector<std::pair<int, double>>{{(n - 1) % k, 1.0}};
        }};
    }
    if (kind == "moving_atom") {
        return {[](int n) {
            if (n < 1) throw DomainError("sequence index must be positive");
            return std::vector<std::pair<int, double>>{{n - 1, 1.0}};
        }};
    }
    throw IoError("unknown sequence kind: " + kind);
}

DiscreteSeq load_discrete_seq(const std::string& path) {
    return parse_discrete_seq(load_json(path));
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    auto line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    line(header);
    for (const auto& row : rows) {
        if (row.size() != header.size()) throw StructuralError("ragged CSV row");
        line(row);
    }
    return out;
}

void atomic_write(const std::string& path, const std::string& content) {
    std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out.flush()) throw IoError("write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) throw IoError("rename to " + path + " failed: " + ec.message());
}

} // namespace charges::io
