#pragma once

#include "stabrw/circuit.hpp"
#include "stabrw/matrix.hpp"

#include <string>
#include <vector>

namespace stabrw {

enum class ZxKind { Input, Output, ZSpider, XSpider, HBox };

struct ZxVertex {
    ZxKind kind = ZxKind::ZSpider;
    int phase = 0;      // quarter turns mod 4 (spiders only)
    int boundary = -1;  // input/output index (boundaries only)
    bool alive = true;
};

struct ZxEdge {
    int u = -1;
    int v = -1;
    bool alive = true;
};

/// Open multigraph of Z/X spiders, H boxes and boundary vertices. Parallel
/// edges and self-loops are representable; only the topology is meaningful.
class ZxDiagram {
public:
    int add_vertex(ZxKind kind, int phase = 0, int boundary = -1);
    int add_edge(int u, int v);
    void remove_edge(int eid);
    void remove_vertex(int vid); // removes incident edges too

    const std::vector<ZxVertex>& vertices() const noexcept { return verts_; }
    const std::vector<ZxEdge>& edges() const noexcept { return edges_; }
    const ZxVertex& vertex(int vid) const { return verts_.at(static_cast<std::size_t>(vid)); }
    ZxVertex& vertex(int vid) { return verts_.at(static_cast<std::size_t>(vid)); }
    const ZxEdge& edge(int eid) const { return edges_.at(static_cast<std::size_t>(eid)); }

    std::vector<int> alive_vertices() const;
    std::vector<int> alive_edges() const;
    std::vector<int> incident_edges(int vid) const; // self-loops listed twice
    int degree(int vid) const;

    int num_inputs() const;
    int num_outputs() const;

    /// Drops dead slots and renumbers densely (stable order).
    ZxDiagram compacted() const;

private:
    std::vector<ZxVertex> verts_;
    std::vector<ZxEdge> edges_;
};

ZxDiagram parse_zx(const std::string& text);
std::string print_zx(const ZxDiagram& d);

/// Checks boundary/HBox degree invariants and removes spider self-loops.
/// Idempotent and matrix-preserving.
ZxDiagram zx_normalize(const ZxDiagram& d);

/// Gate-wise image of a circuit as a ZX diagram.
ZxDiagram circuit_to_zx(const Circuit& c);

enum class ContractionOrder { Greedy, Sequential };

/// Exact 2^|outputs| x 2^|inputs| interpretation. Z spiders are diagonal in
/// the computational basis (1 at the all-zero index, i^phase at the all-one
/// index), X spiders are H-conjugated Z spiders, H boxes are the unnormalized
/// [[1,1],[1,-1]]. Intermediates are capped at 2^12 entries.
ExactMatrix zx_to_matrix(const ZxDiagram& d, ContractionOrder order = ContractionOrder::Greedy);

/// Boundary-index-preserving multigraph isomorphism respecting kinds/phases.
bool zx_iso(const ZxDiagram& d1, const ZxDiagram& d2);

} // namespace stabrw
