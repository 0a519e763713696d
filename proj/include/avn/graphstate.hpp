#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "avn/pauli.hpp"
#include "avn/subgroup.hpp"
#include "avn/triples.hpp"

namespace avn {

constexpr uint32_t kOrbitCap = 8;

/// Simple undirected graph on vertices 0..n-1, adjacency bitset per vertex.
class Graph {
  public:
    explicit Graph(uint32_t n);

    /// Accepts either
    ///   n=<int>
    ///   edges=u-v,u-w,...        (the edges line may be empty)
    /// or a square block of 0/1 rows (an adjacency matrix).
    static Graph parse(std::string_view text);

    uint32_t n() const { return n_; }
    uint64_t neighbors(uint32_t v) const { return adj_[v]; }
    uint32_t degree(uint32_t v) const;
    uint32_t max_degree() const;
    bool has_edge(uint32_t u, uint32_t v) const;
    void add_edge(uint32_t u, uint32_t v);
    std::vector<std::pair<uint32_t, uint32_t>> edges() const;
    std::string str() const;

    static Graph complete(uint32_t n);
    static Graph star(uint32_t n, uint32_t center);
    static Graph cycle(uint32_t n);

    /// Complements the subgraph induced by the neighborhood of v.
    Graph local_complement(uint32_t v) const;

    bool operator==(const Graph&) const = default;

  private:
    uint32_t n_;
    std::vector<uint64_t> adj_;
};

/// Breadth-first closure of g under local complementation at every vertex,
/// on labelled graphs, in deterministic BFS order. Contains g.
std::vector<Graph> lc_orbit(const Graph& g, uint32_t cap = kOrbitCap);

/// The generators g^(u): X on u, Z on its neighbors, identity elsewhere.
std::vector<PauliElement> graph_generators(const Graph& g);

StabiliserGroup graph_group(const Graph& g);

/// True iff some vertex has degree >= 2.
bool has_avn(const Graph& g);

struct ExtractedTriple {
    uint32_t u, v, w;
    int triangle_case;  // 1: edge vw present, 2: absent
    AvnTriple triple;
};

/// Constructive triple extraction: smallest vertex u of degree >= 2 and its
/// two smallest neighbors v, w give either <g^u, g^v, g^w> (edge vw) or
/// <g^u, g^u g^v, g^u g^w> (no edge vw). None iff max degree <= 1.
std::optional<ExtractedTriple> extract_avn_triple(const Graph& g);

/// Every extraction witness (u, v < w) over all vertices of degree >= 2.
std::vector<ExtractedTriple> extract_all_avn_triples(const Graph& g);

/// A per-qubit signed-letter permutation: the images of X and Z under
/// conjugation by a single-qubit Clifford. The image of Y is derived from
/// Y = iXZ and never stored.
class LocalCliffordFrame {
  public:
    struct SignedLetter {
        PauliLetter letter = PauliLetter::I;
        bool negative = false;
    };
    struct Site {
        SignedLetter x_image;
        SignedLetter z_image;
    };

    /// Validates every site: images must be non-identity and anticommute
    /// (distinct letters); 24 valid frames per site.
    explicit LocalCliffordFrame(std::vector<Site> sites);

    static LocalCliffordFrame identity(uint32_t n);
    /// X -> Z, Z -> X at the given site.
    static Site hadamard_site();
    /// X -> Y, Z -> Z.
    static Site phase_site();
    /// All 24 valid single-site frames, deterministic order.
    static std::vector<Site> all_sites();

    uint32_t n() const { return uint32_t(sites_.size()); }
    const Site& site(uint32_t i) const { return sites_[i]; }

  private:
    std::vector<Site> sites_;
};

/// Applies the frame's signed permutation letterwise; letter signs accumulate
/// into the global phase. A group homomorphism in p.
PauliElement conjugate(const LocalCliffordFrame& frame, const PauliElement& p);

}  // namespace avn
