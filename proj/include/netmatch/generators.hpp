#pragma once

#include <cstdint>
#include <string_view>

#include "netmatch/graph.hpp"

namespace netmatch {

enum class Model { BA, HK };
enum class SeedGraph { Path, Cycle, Complete };

/// How the HK triad step picks among the neighbors of the node just attached.
/// Uniform is the original Holme-Kim rule; Degree weights each neighbor by its
/// current degree.
enum class TriadRule { Uniform, Degree };

std::string_view to_string(Model model);
std::string_view to_string(SeedGraph kind);
std::string_view to_string(TriadRule rule);
Model parse_model(std::string_view text);
SeedGraph parse_seed_graph(std::string_view text);
TriadRule parse_triad_rule(std::string_view text);

/// Configuration for the scale-free generators.
///
/// BA: every new node attaches `links` edges by preferential attachment.
/// HK: every new node makes `attach_links` preferential attachments, each
/// followed by `triad_links` links to neighbors of the node
/// just attached to (see TriadRule).
struct GeneratorParams {
    Model model = Model::BA;
    std::size_t n = 0;
    std::size_t m = 5;
    SeedGraph seed_graph = SeedGraph::Path;
    std::size_t links = 2;
    std::size_t attach_links = 1;
    std::size_t triad_links = 1;
    TriadRule triad_rule = TriadRule::Uniform;
    std::uint64_t rng_seed = 0;

    /// Links added per new node: L for BA, L1 + L1*L2 for HK.
    std::size_t links_per_node() const;

    /// Throws std::invalid_argument describing the first violated constraint.
    void validate() const;
};

struct GeneratorStats {
    /// HK triad steps that found no eligible neighbor and fell back to a
    /// preferential-attachment draw.
    std::size_t triad_fallbacks = 0;
    /// Links that could not be placed because every old node was already
    /// linked to the new node.
    std::size_t exhausted_links = 0;
};

Graph make_seed_graph(SeedGraph kind, std::size_t m);

Graph generate_ba(const GeneratorParams& params, GeneratorStats* stats = nullptr);
Graph generate_hk(const GeneratorParams& params, GeneratorStats* stats = nullptr);

/// Dispatches on params.model.
Graph generate(const GeneratorParams& params, GeneratorStats* stats = nullptr);

}  // namespace netmatch
