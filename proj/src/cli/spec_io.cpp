// SPDX-License-Identifier: Apache-2.0
#include "mvhull/cli.hpp"

#include "json.hpp"

#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace mvhull::cli {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::Domain, "cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

}  // namespace

AlgebraSpec parse_algebra_spec(std::string_view json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorCode::Parse, std::string("algebra file: ") + e.what());
    }
    AlgebraSpec spec;
    try {
        spec.points = j.at("points").get<std::vector<std::string>>();
        spec.den = j.at("den").get<std::int64_t>();
        if (j.contains("generators")) {
            for (const auto& g : j.at("generators")) {
                std::vector<std::string> row;
                for (const auto& x : g) row.push_back(x.is_string() ? x.get<std::string>() : x.dump());
                spec.generators.push_back(std::move(row));
            }
        }
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::Parse, std::string("algebra file: ") + e.what());
    }
    return spec;
}

mv::GridAlgebra build_algebra(const AlgebraSpec& spec) {
    std::vector<QVector> gens;
    for (const auto& row : spec.generators) {
        std::vector<Rat> entries;
        for (const auto& x : row) entries.push_back(Rat::parse(x));
        gens.emplace_back(std::move(entries));
    }
    return mv::GridAlgebra::generate(mv::PointSet(spec.points), spec.den, std::move(gens));
}

mv::GridAlgebra load_algebra_file(const std::string& path) { return build_algebra(parse_algebra_spec(read_file(path))); }

std::string serialize_algebra(const mv::GridAlgebra& a) {
    auto strings = [](const QVector& v) {
        std::vector<std::string> out;
        for (const auto& x : v) out.push_back(x.str());
        return out;
    };
    nlohmann::ordered_json j;
    j["points"] = a.points().labels();
    j["den"] = a.den();
    nlohmann::ordered_json gens = nlohmann::ordered_json::array();
    for (const auto& g : a.generators()) gens.push_back(strings(g));
    j["generators"] = gens;
    nlohmann::ordered_json elems = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < a.size(); ++i) elems.push_back(strings(a.element(i)));
    j["elements"] = elems;
    return j.dump();
}

std::vector<std::size_t> parse_point_map(std::string_view text, const mv::GridAlgebra& source,
                                         const mv::PointSet& target) {
    std::vector<std::optional<std::size_t>> assigned(target.size());
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view l = line;
        if (const auto hash = l.find('#'); hash != std::string_view::npos) l = l.substr(0, hash);
        l = trim(l);
        if (l.empty()) continue;
        const auto eq = l.find('=');
        if (eq == std::string_view::npos) {
            fail(ErrorCode::Parse, "map line " + std::to_string(lineno) + ": expected target=source");
        }
        const std::string tgt(trim(l.substr(0, eq)));
        const std::string src(trim(l.substr(eq + 1)));
        const auto ti = target.index_of(tgt);
        if (!ti) fail(ErrorCode::NotHom, "map line " + std::to_string(lineno) + ": unknown target point '" + tgt + "'");
        const auto si = source.points().index_of(src);
        if (!si) fail(ErrorCode::NotHom, "map line " + std::to_string(lineno) + ": unknown source point '" + src + "'");
        if (assigned[*ti]) fail(ErrorCode::NotHom, "target point '" + tgt + "' is mapped twice");
        assigned[*ti] = source.classes().class_of[*si];
    }
    std::vector<std::size_t> map;
    for (std::size_t y = 0; y < assigned.size(); ++y) {
        if (!assigned[y]) fail(ErrorCode::NotHom, "target point '" + target.label(y) + "' is not mapped");
        map.push_back(*assigned[y]);
    }
    return map;
}

}  // namespace mvhull::cli
