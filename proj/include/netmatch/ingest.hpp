#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "netmatch/graph.hpp"

namespace netmatch {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct LoadStats {
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::size_t self_loops_dropped = 0;
    std::size_t duplicates_collapsed = 0;
    std::size_t data_lines = 0;
};

/// A parsed edge list. Dense id i corresponds to original id id_map[i]; dense
/// ids follow ascending original ids.
struct LoadedGraph {
    Graph graph;
    std::vector<std::int64_t> id_map;
    LoadStats stats;
};

/// Reads a SNAP-style edge list: `#` comment lines and `u v` data lines
/// separated by any whitespace, LF or CRLF. Self-loops are dropped and
/// repeated or reversed edges collapse to one.
LoadedGraph load_edge_list(std::istream& in);
LoadedGraph load_edge_list(const std::filesystem::path& path);

/// Writes `# ...` header lines then one `u<TAB>v` line per edge (u < v). With
/// an id map, original ids are written instead of dense ones.
void save_edge_list(std::ostream& out, const Graph& g,
                    const std::vector<std::int64_t>* id_map = nullptr);
std::string save_edge_list(const Graph& g, const std::vector<std::int64_t>* id_map = nullptr);

/// {"nodes", "edges", "self_loops_dropped", "duplicates_collapsed"}.
std::string stats_json(const LoadStats& stats);

/// Route-views (AS-733, 2000-01-02 snapshot) location: $NETMATCH_DATA_DIR or
/// the given fallback directory, file as20000102.txt. Nullopt if absent.
inline constexpr const char* kRouteViewsFile = "as20000102.txt";
inline constexpr std::size_t kRouteViewsNodes = 6474;
inline constexpr std::size_t kRouteViewsEdges = 13895;
std::optional<std::filesystem::path> find_route_views(const std::filesystem::path& fallback_dir = {});

}  // namespace netmatch
