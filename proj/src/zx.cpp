#include "stabrw/zx.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace stabrw {

int ZxDiagram::add_vertex(ZxKind kind, int phase, int boundary) {
    if ((kind == ZxKind::Input || kind == ZxKind::Output) && boundary < 0) {
        throw Error("boundary vertex needs an index");
    }
    if (kind == ZxKind::HBox && phase != 0) {
        throw Error("H box carries no phase");
    }
    ZxVertex v;
    v.kind = kind;
    v.phase = ((phase % 4) + 4) % 4;
    v.boundary = boundary;
    verts_.push_back(v);
    return static_cast<int>(verts_.size()) - 1;
}

int ZxDiagram::add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= static_cast<int>(verts_.size()) ||
        v >= static_cast<int>(verts_.size()) || !verts_[u].alive || !verts_[v].alive) {
        throw Error("edge endpoint out of range");
    }
    edges_.push_back(ZxEdge{u, v, true});
    return static_cast<int>(edges_.size()) - 1;
}

void ZxDiagram::remove_edge(int eid) { edges_.at(static_cast<std::size_t>(eid)).alive = false; }

void ZxDiagram::remove_vertex(int vid) {
    auto& v = verts_.at(static_cast<std::size_t>(vid));
    v.alive = false;
    for (auto& e : edges_) {
        if (e.alive && (e.u == vid || e.v == vid)) {
            e.alive = false;
        }
    }
}

std::vector<int> ZxDiagram::alive_vertices() const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(verts_.size()); ++i) {
        if (verts_[i].alive) {
            out.push_back(i);
        }
    }
    return out;
}

std::vector<int> ZxDiagram::alive_edges() const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
        if (edges_[i].alive) {
            out.push_back(i);
        }
    }
    return out;
}

std::vector<int> ZxDiagram::incident_edges(int vid) const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
        if (!edges_[i].alive) {
            continue;
        }
        if (edges_[i].u == vid) {
            out.push_back(i);
        }
        if (edges_[i].v == vid) {
            out.push_back(i);
        }
    }
    return out;
}

int ZxDiagram::degree(int vid) const { return static_cast<int>(incident_edges(vid).size()); }

int ZxDiagram::num_inputs() const {
    int n = 0;
    for (const auto& v : verts_) {
        if (v.alive && v.kind == ZxKind::Input) {
            ++n;
        }
    }
    return n;
}

int ZxDiagram::num_outputs() const {
    int n = 0;
    for (const auto& v : verts_) {
        if (v.alive && v.kind == ZxKind::Output) {
            ++n;
        }
    }
    return n;
}

ZxDiagram ZxDiagram::compacted() const {
    ZxDiagram d;
    std::vector<int> remap(verts_.size(), -1);
    for (int i = 0; i < static_cast<int>(verts_.size()); ++i) {
        if (verts_[i].alive) {
            remap[i] = d.add_vertex(verts_[i].kind, verts_[i].phase, verts_[i].boundary);
        }
    }
    for (const auto& e : edges_) {
        if (e.alive) {
            d.add_edge(remap[e.u], remap[e.v]);
        }
    }
    return d;
}

ZxDiagram parse_zx(const std::string& text) {
    ZxDiagram d;
    std::unordered_map<long, int> ids;
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (const auto hash = raw.find('#'); hash != std::string::npos) {
            raw.erase(hash);
        }
        std::istringstream ls(raw);
        std::vector<std::string> tok;
        std::string t;
        while (ls >> t) {
            tok.push_back(t);
        }
        if (tok.empty()) {
            continue;
        }
        auto num = [&](const std::string& s) -> long {
            std::size_t pos = 0;
            long v = 0;
            try {
                v = std::stol(s, &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != s.size()) {
                throw ParseError("expected integer, got '" + s + "'", lineno, 1);
            }
            return v;
        };
        if (tok[0] == "node") {
            if (tok.size() < 3) {
                throw ParseError("node line too short", lineno, 1);
            }
            const long id = num(tok[1]);
            if (ids.count(id) != 0) {
                throw ParseError("duplicate node id " + tok[1], lineno, 1);
            }
            const std::string& kind = tok[2];
            int vid = -1;
            std::size_t next = 3;
            if (kind == "in" || kind == "out") {
                if (tok.size() < 4) {
                    throw ParseError("boundary node needs an index", lineno, 1);
                }
                vid = d.add_vertex(kind == "in" ? ZxKind::Input : ZxKind::Output, 0,
                                   static_cast<int>(num(tok[3])));
                next = 4;
            } else if (kind == "Z" || kind == "X" || kind == "H") {
                int phase = 0;
                if (next + 1 < tok.size() && tok[next] == "phase") {
                    phase = static_cast<int>(((num(tok[next + 1]) % 4) + 4) % 4);
                    next += 2;
                }
                const ZxKind zk = kind == "Z"   ? ZxKind::ZSpider
                                  : kind == "X" ? ZxKind::XSpider
                                                : ZxKind::HBox;
                vid = d.add_vertex(zk, phase);
            } else {
                throw ParseError("unknown node kind '" + kind + "'", lineno, 1);
            }
            if (next != tok.size()) {
                throw ParseError("trailing tokens on node line", lineno, 1);
            }
            ids[id] = vid;
            continue;
        }
        if (tok[0] == "edge") {
            if (tok.size() != 3) {
                throw ParseError("edge line needs two node ids", lineno, 1);
            }
            const auto a = ids.find(num(tok[1]));
            const auto b = ids.find(num(tok[2]));
            if (a == ids.end() || b == ids.end()) {
                throw ParseError("edge references unknown node", lineno, 1);
            }
            d.add_edge(a->second, b->second);
            continue;
        }
        throw ParseError("unknown line '" + tok[0] + "'", lineno, 1);
    }
    return d;
}

std::string print_zx(const ZxDiagram& diagram) {
    const ZxDiagram d = diagram.compacted();
    std::ostringstream os;
    for (int v : d.alive_vertices()) {
        const auto& vx = d.vertex(v);
        os << "node " << v << " ";
        switch (vx.kind) {
        case ZxKind::Input: os << "in " << vx.boundary; break;
        case ZxKind::Output: os << "out " << vx.boundary; break;
        case ZxKind::ZSpider: os << "Z"; break;
        case ZxKind::XSpider: os << "X"; break;
        case ZxKind::HBox: os << "H"; break;
        }
        if ((vx.kind == ZxKind::ZSpider || vx.kind == ZxKind::XSpider) && vx.phase != 0) {
            os << " phase " << vx.phase;
        }
        os << "\n";
    }
    for (int e : d.alive_edges()) {
        os << "edge " << d.edge(e).u << " " << d.edge(e).v << "\n";
    }
    return os.str();
}

namespace {

void check_boundaries(const ZxDiagram& d) {
    std::vector<int> in_seen;
    std::vector<int> out_seen;
    for (int v : d.alive_vertices()) {
        const auto& vx = d.vertex(v);
        if (vx.kind == ZxKind::Input || vx.kind == ZxKind::Output) {
            if (d.degree(v) != 1) {
                throw Error("boundary vertex has degree != 1");
            }
            (vx.kind == ZxKind::Input ? in_seen : out_seen).push_back(vx.boundary);
        }
        if (vx.kind == ZxKind::HBox && d.degree(v) != 2) {
            throw Error("H box has degree != 2");
        }
    }
    auto contiguous = [](std::vector<int> idx) {
        std::sort(idx.begin(), idx.end());
        for (int i = 0; i < static_cast<int>(idx.size()); ++i) {
            if (idx[i] != i) {
                return false;
            }
        }
        return true;
    };
    if (!contiguous(in_seen) || !contiguous(out_seen)) {
        throw Error("boundary indices must be contiguous from 0");
    }
}

} // namespace

ZxDiagram zx_normalize(const ZxDiagram& d) {
    ZxDiagram r = d;
    check_boundaries(r);
    for (int e : r.alive_edges()) {
        const auto& ed = r.edge(e);
        if (ed.u == ed.v) {
            const auto k = r.vertex(ed.u).kind;
            if (k == ZxKind::ZSpider || k == ZxKind::XSpider) {
                r.remove_edge(e);
            }
        }
    }
    return r;
}

ZxDiagram circuit_to_zx(const Circuit& c) {
    ZxDiagram d;
    std::unordered_map<std::string, int> open; // wire -> vertex awaiting the next edge
    for (int i = 0; i < c.num_inputs(); ++i) {
        open[c.inputs()[i]] = d.add_vertex(ZxKind::Input, 0, i);
    }
    for (const auto& g : c.gates()) {
        switch (g.kind) {
        case GateKind::RotZ:
        case GateKind::RotX:
        case GateKind::H: {
            const ZxKind k = g.kind == GateKind::RotZ   ? ZxKind::ZSpider
                             : g.kind == GateKind::RotX ? ZxKind::XSpider
                                                        : ZxKind::HBox;
            const int v = d.add_vertex(k, g.kind == GateKind::H ? 0 : g.phase);
            d.add_edge(open.at(g.wires[0]), v);
            open[g.wires[0]] = v;
            break;
        }
        case GateKind::Cnot: {
            const int vc = d.add_vertex(ZxKind::ZSpider, 0);
            const int vt = d.add_vertex(ZxKind::XSpider, 0);
            d.add_edge(open.at(g.wires[0]), vc);
            d.add_edge(open.at(g.wires[1]), vt);
            d.add_edge(vc, vt);
            open[g.wires[0]] = vc;
            open[g.wires[1]] = vt;
            break;
        }
        case GateKind::Swap:
            std::swap(open.at(g.wires[0]), open.at(g.wires[1]));
            break;
        case GateKind::Prep0:
            open[g.wires[0]] = d.add_vertex(ZxKind::XSpider, 0);
            break;
        case GateKind::PrepPlus:
            open[g.wires[0]] = d.add_vertex(ZxKind::ZSpider, 0);
            break;
        case GateKind::Post0:
        case GateKind::PostPlus: {
            const int v =
                d.add_vertex(g.kind == GateKind::Post0 ? ZxKind::XSpider : ZxKind::ZSpider, 0);
            d.add_edge(open.at(g.wires[0]), v);
            open.erase(g.wires[0]);
            break;
        }
        }
    }
    for (int i = 0; i < c.num_outputs(); ++i) {
        const int b = d.add_vertex(ZxKind::Output, 0, i);
        d.add_edge(open.at(c.outputs()[i]), b);
    }
    return d;
}

namespace {

constexpr std::size_t kMaxTensorEntries = std::size_t{1} << 12;

struct Tensor {
    std::vector<int> idx; // index ids, all dimension 2
    std::vector<CliffordScalar> data;

    std::size_t size() const { return data.size(); }
};

// Trace out repeated index ids within one tensor (self-loops).
Tensor self_trace(Tensor t) {
    for (;;) {
        int dup_a = -1;
        int dup_b = -1;
        for (std::size_t i = 0; i < t.idx.size() && dup_a < 0; ++i) {
            for (std::size_t j = i + 1; j < t.idx.size(); ++j) {
                if (t.idx[i] == t.idx[j]) {
                    dup_a = static_cast<int>(i);
                    dup_b = static_cast<int>(j);
                    break;
                }
            }
        }
        if (dup_a < 0) {
            return t;
        }
        const int rank = static_cast<int>(t.idx.size());
        Tensor r;
        for (int i = 0; i < rank; ++i) {
            if (i != dup_a && i != dup_b) {
                r.idx.push_back(t.idx[i]);
            }
        }
        const std::size_t rsize = std::size_t{1} << r.idx.size();
        r.data.assign(rsize, CliffordScalar::zero());
        for (std::size_t full = 0; full < t.size(); ++full) {
            const auto bit = [&](int i) { return (full >> (rank - 1 - i)) & 1; };
            if (bit(dup_a) != bit(dup_b)) {
                continue;
            }
            std::size_t out = 0;
            for (int i = 0; i < rank; ++i) {
                if (i != dup_a && i != dup_b) {
                    out = (out << 1) | bit(i);
                }
            }
            r.data[out] = r.data[out] + t.data[full];
        }
        t = std::move(r);
    }
}

Tensor contract(const Tensor& a, const Tensor& b) {
    std::vector<int> shared;
    for (int ia : a.idx) {
        if (std::find(b.idx.begin(), b.idx.end(), ia) != b.idx.end()) {
            shared.push_back(ia);
        }
    }
    Tensor r;
    std::vector<int> a_keep;
    std::vector<int> b_keep;
    for (std::size_t i = 0; i < a.idx.size(); ++i) {
        if (std::find(shared.begin(), shared.end(), a.idx[i]) == shared.end()) {
            r.idx.push_back(a.idx[i]);
            a_keep.push_back(static_cast<int>(i));
        }
    }
    for (std::size_t i = 0; i < b.idx.size(); ++i) {
        if (std::find(shared.begin(), shared.end(), b.idx[i]) == shared.end()) {
            r.idx.push_back(b.idx[i]);
            b_keep.push_back(static_cast<int>(i));
        }
    }
    const std::size_t rsize = std::size_t{1} << r.idx.size();
    if (rsize > kMaxTensorEntries) {
        throw Error("zx_to_matrix: contraction intermediate exceeds 2^12 entries");
    }
    r.data.assign(rsize, CliffordScalar::zero());

    std::vector<int> a_shared_pos;
    std::vector<int> b_shared_pos;
    for (int s : shared) {
        a_shared_pos.push_back(static_cast<int>(
            std::find(a.idx.begin(), a.idx.end(), s) - a.idx.begin()));
        b_shared_pos.push_back(static_cast<int>(
            std::find(b.idx.begin(), b.idx.end(), s) - b.idx.begin()));
    }
    const int ra = static_cast<int>(a.idx.size());
    const int rb = static_cast<int>(b.idx.size());
    const std::size_t n_keep_a = a_keep.size();
    const std::size_t n_keep_b = b_keep.size();
    const std::size_t n_shared = shared.size();
    for (std::size_t out = 0; out < rsize; ++out) {
        CliffordScalar acc = CliffordScalar::zero();
        for (std::size_t sh = 0; sh < (std::size_t{1} << n_shared); ++sh) {
            std::size_t ai = 0;
            for (std::size_t i = 0; i < n_keep_a; ++i) {
                if ((out >> (r.idx.size() - 1 - i)) & 1) {
                    ai |= std::size_t{1} << (ra - 1 - a_keep[i]);
                }
            }
            std::size_t bi = 0;
            for (std::size_t i = 0; i < n_keep_b; ++i) {
                if ((out >> (r.idx.size() - 1 - (n_keep_a + i))) & 1) {
                    bi |= std::size_t{1} << (rb - 1 - b_keep[i]);
                }
            }
            for (std::size_t i = 0; i < n_shared; ++i) {
                if ((sh >> i) & 1) {
                    ai |= std::size_t{1} << (ra - 1 - a_shared_pos[i]);
                    bi |= std::size_t{1} << (rb - 1 - b_shared_pos[i]);
                }
            }
            const auto& va = a.data[ai];
            if (va.is_zero()) {
                continue;
            }
            const auto& vb = b.data[bi];
            if (!vb.is_zero()) {
                acc = acc + va * vb;
            }
        }
        r.data[out] = acc;
    }
    return r;
}

Tensor spider_tensor(const ZxDiagram& d, int vid, const std::vector<int>& edge_ids) {
    const auto& vx = d.vertex(vid);
    Tensor t;
    t.idx = edge_ids;
    const int deg = static_cast<int>(edge_ids.size());
    if (static_cast<std::size_t>(deg) > 12) {
        throw Error("zx_to_matrix: spider degree exceeds 12");
    }
    const std::size_t size = std::size_t{1} << deg;
    t.data.assign(size, CliffordScalar::zero());
    if (vx.kind == ZxKind::HBox) {
        t.data = {CliffordScalar::one(), CliffordScalar::one(), CliffordScalar::one(),
                  CliffordScalar::integer(-1)};
        return self_trace(std::move(t));
    }
    t.data[0] = CliffordScalar::one();
    // i^phase at the all-one index; for a degree-0 spider both contributions
    // land in the same slot and add up
    t.data[size - 1] = t.data[size - 1] + CliffordScalar::omega_pow(2 * vx.phase);
    if (vx.kind == ZxKind::XSpider) {
        // Conjugate every leg by H, normalized so that tracing a self-loop is
        // exactly the identity on the spider tensor (and the degree-1 X state
        // comes out as sqrt2*(1,0)^T).
        for (int axis = 0; axis < deg; ++axis) {
            const std::size_t m = std::size_t{1} << (deg - 1 - axis);
            for (std::size_t i = 0; i < size; ++i) {
                if ((i & m) != 0) {
                    continue;
                }
                const CliffordScalar lo = t.data[i];
                const CliffordScalar hi = t.data[i | m];
                t.data[i] = lo + hi;
                t.data[i | m] = lo - hi;
            }
        }
        const CliffordScalar scale(1, 0, 0, 0, deg);
        for (auto& v : t.data) {
            v = v * scale;
        }
    }
    return self_trace(std::move(t));
}

} // namespace

ExactMatrix zx_to_matrix(const ZxDiagram& diagram, ContractionOrder order) {
    const ZxDiagram d = diagram.compacted();

    // Open indices: edges incident to a boundary keep that boundary as label.
    std::vector<Tensor> tensors;
    std::vector<std::pair<int, int>> open_in;  // (index id, input position)
    std::vector<std::pair<int, int>> open_out;
    for (int v : d.alive_vertices()) {
        const auto& vx = d.vertex(v);
        const auto inc = d.incident_edges(v);
        if (vx.kind == ZxKind::Input || vx.kind == ZxKind::Output) {
            if (inc.size() != 1) {
                throw Error("boundary vertex has degree != 1");
            }
            (vx.kind == ZxKind::Input ? open_in : open_out).push_back({inc[0], vx.boundary});
            continue;
        }
        tensors.push_back(spider_tensor(d, v, inc));
    }
    // A bare input-output edge contributes an identity wire tensor.
    for (int e : d.alive_edges()) {
        const auto& ed = d.edge(e);
        const auto bk = [&](int v) {
            return d.vertex(v).kind == ZxKind::Input || d.vertex(v).kind == ZxKind::Output;
        };
        if (bk(ed.u) && bk(ed.v)) {
            if (ed.u == ed.v) {
                throw Error("boundary self-loop");
            }
            Tensor t;
            // Both endpoints see this edge as their open index; to connect the
            // two boundary positions we rename one side to a fresh index.
            t.idx = {e, e + static_cast<int>(d.edges().size())};
            t.data = {CliffordScalar::one(), CliffordScalar::zero(), CliffordScalar::zero(),
                      CliffordScalar::one()};
            // Rewire the second boundary to the fresh index id.
            bool done = false;
            for (auto& [idx, pos] : open_out) {
                if (idx == e && !done) {
                    idx = t.idx[1];
                    done = true;
                }
            }
            if (!done) {
                int count = 0;
                for (auto& [idx, pos] : open_in) {
                    if (idx == e && count++ == 1) {
                        idx = t.idx[1];
                        done = true;
                        break;
                    }
                }
            }
            if (!done) {
                throw Error("internal: dangling boundary edge");
            }
            tensors.push_back(std::move(t));
        }
    }
    if (tensors.empty()) {
        Tensor unit;
        unit.data = {CliffordScalar::one()};
        tensors.push_back(std::move(unit));
    }

    while (tensors.size() > 1) {
        std::size_t best_a = 0;
        std::size_t best_b = 1;
        std::size_t best_cost = SIZE_MAX;
        bool found_shared = false;
        if (order == ContractionOrder::Greedy) {
            for (std::size_t i = 0; i < tensors.size(); ++i) {
                for (std::size_t j = i + 1; j < tensors.size(); ++j) {
                    std::size_t shared = 0;
                    for (int ia : tensors[i].idx) {
                        if (std::find(tensors[j].idx.begin(), tensors[j].idx.end(), ia) !=
                            tensors[j].idx.end()) {
                            ++shared;
                        }
                    }
                    if (shared == 0) {
                        continue;
                    }
                    const std::size_t cost =
                        tensors[i].idx.size() + tensors[j].idx.size() - 2 * shared;
                    if (cost < best_cost) {
                        best_cost = cost;
                        best_a = i;
                        best_b = j;
                        found_shared = true;
                    }
                }
            }
        } else {
            for (std::size_t i = 0; i < tensors.size() && !found_shared; ++i) {
                for (std::size_t j = i + 1; j < tensors.size(); ++j) {
                    for (int ia : tensors[i].idx) {
                        if (std::find(tensors[j].idx.begin(), tensors[j].idx.end(), ia) !=
                            tensors[j].idx.end()) {
                            best_a = i;
                            best_b = j;
                            found_shared = true;
                            break;
                        }
                    }
                    if (found_shared) {
                        break;
                    }
                }
            }
        }
        if (!found_shared) {
            best_a = 0;
            best_b = 1; // disconnected components: plain tensor product
        }
        Tensor merged = contract(tensors[best_a], tensors[best_b]);
        tensors.erase(tensors.begin() + static_cast<std::ptrdiff_t>(best_b));
        tensors.erase(tensors.begin() + static_cast<std::ptrdiff_t>(best_a));
        tensors.push_back(std::move(merged));
    }

    Tensor& t = tensors.front();
    const std::size_t n_out = open_out.size();
    const std::size_t n_in = open_in.size();
    if (t.idx.size() != n_out + n_in) {
        throw Error("internal: leftover contraction indices");
    }
    auto by_pos = [](const std::pair<int, int>& a, const std::pair<int, int>& b) {
        return a.second < b.second;
    };
    std::sort(open_out.begin(), open_out.end(), by_pos);
    std::sort(open_in.begin(), open_in.end(), by_pos);

    ExactMatrix m(static_cast<int>(n_out), static_cast<int>(n_in));
    std::vector<std::size_t> masks;
    for (const auto& [idx, pos] : open_out) {
        (void)pos;
        const auto it = std::find(t.idx.begin(), t.idx.end(), idx);
        masks.push_back(std::size_t{1} << (t.idx.size() - 1 -
                                           static_cast<std::size_t>(it - t.idx.begin())));
    }
    for (const auto& [idx, pos] : open_in) {
        (void)pos;
        const auto it = std::find(t.idx.begin(), t.idx.end(), idx);
        masks.push_back(std::size_t{1} << (t.idx.size() - 1 -
                                           static_cast<std::size_t>(it - t.idx.begin())));
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            std::size_t src = 0;
            for (std::size_t i = 0; i < n_out; ++i) {
                if ((r >> (n_out - 1 - i)) & 1) {
                    src |= masks[i];
                }
            }
            for (std::size_t i = 0; i < n_in; ++i) {
                if ((c >> (n_in - 1 - i)) & 1) {
                    src |= masks[n_out + i];
                }
            }
            m.at(r, c) = t.data[src];
        }
    }
    return m;
}

namespace {

std::tuple<int, int, int> vertex_class(const ZxDiagram& d, int v) {
    const auto& vx = d.vertex(v);
    const int kind = static_cast<int>(vx.kind);
    const int phase = (vx.kind == ZxKind::ZSpider || vx.kind == ZxKind::XSpider) ? vx.phase : vx.boundary;
    return {kind, phase, d.degree(v)};
}

bool extend(const ZxDiagram& a, const ZxDiagram& b, const std::vector<int>& va,
            std::vector<int>& map, std::vector<bool>& used, std::size_t i,
            const std::vector<std::vector<int>>& adj_a, const std::vector<std::vector<int>>& adj_b) {
    if (i == va.size()) {
        return true;
    }
    const int u = va[i];
    for (int w = 0; w < static_cast<int>(b.vertices().size()); ++w) {
        if (!b.vertex(w).alive || used[w]) {
            continue;
        }
        if (vertex_class(a, u) != vertex_class(b, w)) {
            continue;
        }
        // Edge multiplicities to already-mapped vertices must agree.
        bool ok = true;
        for (std::size_t j = 0; j < i && ok; ++j) {
            const int mult_a = adj_a[u][va[j]];
            const int mult_b = adj_b[w][map[va[j]]];
            if (mult_a != mult_b) {
                ok = false;
            }
        }
        if (adj_a[u][u] != adj_b[w][w]) {
            ok = false;
        }
        if (!ok) {
            continue;
        }
        map[u] = w;
        used[w] = true;
        if (extend(a, b, va, map, used, i + 1, adj_a, adj_b)) {
            return true;
        }
        used[w] = false;
        map[u] = -1;
    }
    return false;
}

std::vector<std::vector<int>> adjacency(const ZxDiagram& d) {
    const int n = static_cast<int>(d.vertices().size());
    std::vector<std::vector<int>> adj(n, std::vector<int>(n, 0));
    for (int e : d.alive_edges()) {
        const auto& ed = d.edge(e);
        if (ed.u == ed.v) {
            adj[ed.u][ed.u] += 1;
        } else {
            adj[ed.u][ed.v] += 1;
            adj[ed.v][ed.u] += 1;
        }
    }
    return adj;
}

} // namespace

bool zx_iso(const ZxDiagram& d1, const ZxDiagram& d2) {
    const ZxDiagram a = d1.compacted();
    const ZxDiagram b = d2.compacted();
    const auto va = a.alive_vertices();
    const auto vb = b.alive_vertices();
    if (va.size() != vb.size() || a.alive_edges().size() != b.alive_edges().size()) {
        return false;
    }
    std::map<std::tuple<int, int, int>, int> classes_a;
    std::map<std::tuple<int, int, int>, int> classes_b;
    for (int v : va) {
        ++classes_a[vertex_class(a, v)];
    }
    for (int v : vb) {
        ++classes_b[vertex_class(b, v)];
    }
    if (classes_a != classes_b) {
        return false;
    }
    std::vector<int> order = va;
    // Boundaries first (forced by index), then rare classes.
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        const bool bx = a.vertex(x).kind == ZxKind::Input || a.vertex(x).kind == ZxKind::Output;
        const bool by = a.vertex(y).kind == ZxKind::Input || a.vertex(y).kind == ZxKind::Output;
        if (bx != by) {
            return bx;
        }
        return classes_a[vertex_class(a, x)] < classes_a[vertex_class(a, y)];
    });
    std::vector<int> map(a.vertices().size(), -1);
    std::vector<bool> used(b.vertices().size(), false);
    const auto adj_a = adjacency(a);
    const auto adj_b = adjacency(b);
    return extend(a, b, order, map, used, 0, adj_a, adj_b);
}

} // namespace stabrw
