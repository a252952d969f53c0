#include "netmatch/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

#include "json.hpp"

namespace netmatch {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
}

std::string_view next_token(std::string_view& rest) {
    std::size_t i = 0;
    while (i < rest.size() && is_space(rest[i])) ++i;
    std::size_t j = i;
    while (j < rest.size() && !is_space(rest[j])) ++j;
    const auto token = rest.substr(i, j - i);
    rest.remove_prefix(j);
    return token;
}

std::int64_t parse_id(std::string_view token, std::size_t line) {
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ParseError(line, "expected an integer node id, got '" + std::string(token) + "'");
    }
    return value;
}

}  // namespace

LoadedGraph load_edge_list(std::istream& in) {
    std::vector<std::pair<std::int64_t, std::int64_t>> raw;
    LoadedGraph out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view rest(line);
        const auto first = next_token(rest);
        if (first.empty() || first.front() == '#') continue;
        const auto second = next_token(rest);
        if (second.empty()) throw ParseError(line_no, "expected two node ids, got one");
        if (!next_token(rest).empty()) throw ParseError(line_no, "expected two node ids, got more");
        ++out.stats.data_lines;
        const auto u = parse_id(first, line_no);
        const auto v = parse_id(second, line_no);
        if (u == v) {
            ++out.stats.self_loops_dropped;
            // The node still exists even if its only line is a self-loop.
            raw.emplace_back(u, u);
            continue;
        }
        raw.emplace_back(u, v);
    }

    for (const auto& [u, v] : raw) {
        out.id_map.push_back(u);
        out.id_map.push_back(v);
    }
    std::sort(out.id_map.begin(), out.id_map.end());
    out.id_map.erase(std::unique(out.id_map.begin(), out.id_map.end()), out.id_map.end());
    auto dense = [&](std::int64_t id) {
        return static_cast<NodeId>(std::lower_bound(out.id_map.begin(), out.id_map.end(), id) -
                                   out.id_map.begin());
    };

    out.graph = Graph(out.id_map.size());
    for (const auto& [u, v] : raw) {
        if (u == v) continue;
        if (!out.graph.add_edge(dense(u), dense(v))) ++out.stats.duplicates_collapsed;
    }
    out.stats.nodes = out.graph.node_count();
    out.stats.edges = out.graph.edge_count();
    return out;
}

LoadedGraph load_edge_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open edge list '" + path.string() + "'");
    }
    return load_edge_list(in);
}

void save_edge_list(std::ostream& out, const Graph& g, const std::vector<std::int64_t>* id_map) {
    if (id_map != nullptr && id_map->size() != g.node_count()) {
        throw std::invalid_argument("save_edge_list: id map size does not match the graph");
    }
    out << "# Undirected graph: each edge saved once\n";
    out << "# Nodes: " << g.node_count() << " Edges: " << g.edge_count() << '\n';
    out << "# FromNodeId\tToNodeId\n";
    for (const auto& e : g.edges()) {
        if (id_map != nullptr) {
            out << (*id_map)[e.u] << '\t' << (*id_map)[e.v] << '\n';
        } else {
            out << e.u << '\t' << e.v << '\n';
        }
    }
}

std::string save_edge_list(const Graph& g, const std::vector<std::int64_t>* id_map) {
    std::ostringstream out;
    save_edge_list(out, g, id_map);
    return out.str();
}

std::string stats_json(const LoadStats& stats) {
    nlohmann::ordered_json j;
    j["nodes"] = stats.nodes;
    j["edges"] = stats.edges;
    j["self_loops_dropped"] = stats.self_loops_dropped;
    j["duplicates_collapsed"] = stats.duplicates_collapsed;
    return j.dump();
}

std::optional<std::filesystem::path> find_route_views(const std::filesystem::path& fallback_dir) {
    std::vector<std::filesystem::path> dirs;
    if (const char* env = std::getenv("NETMATCH_DATA_DIR"); env != nullptr && *env != '\0') {
        dirs.emplace_back(env);
    }
    if (!fallback_dir.empty()) dirs.push_back(fallback_dir);
    for (const auto& dir : dirs) {
        auto candidate = dir / kRouteViewsFile;
        std::error_code ec;
        if (std::filesystem::is_regular_file(candidate, ec)) return candidate;
    }
    return std::nullopt;
}

}  // namespace netmatch
