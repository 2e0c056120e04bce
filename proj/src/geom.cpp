#include "boolperc/geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "boolperc/errors.hpp"
#include "boolperc/union_find.hpp"

namespace boolperc {

namespace {

double norm2(const double* x, int d) {
    double s = 0.0;
    for (int j = 0; j < d; ++j) s += x[j] * x[j];
    return s;
}

double dist2(const double* x, const double* y, int d) {
    double s = 0.0;
    for (int j = 0; j < d; ++j) {
        const double diff = x[j] - y[j];
        s += diff * diff;
    }
    return s;
}

// Uniform grid over the point cloud; cells hold point indices in index order.
class SpatialGrid {
public:
    SpatialGrid(const Configuration& c, double cell) : dim_(c.dim()), cell_(cell) {
        const std::size_t n = c.size();
        if (n == 0) return;
        lo_.assign(dim_, std::numeric_limits<double>::infinity());
        std::vector<double> hi(dim_, -std::numeric_limits<double>::infinity());
        for (std::size_t i = 0; i < n; ++i) {
            const double* p = c.position(i);
            for (int j = 0; j < dim_; ++j) {
                lo_[j] = std::min(lo_[j], p[j]);
                hi[j] = std::max(hi[j], p[j]);
            }
        }
        dims_.assign(dim_, 1);
        std::int64_t cells = 1;
        for (int j = 0; j < dim_; ++j) {
            dims_[j] = std::max<std::int64_t>(1, static_cast<std::int64_t>((hi[j] - lo_[j]) / cell_) + 1);
            cells *= dims_[j];
        }
        cell_start_.assign(cells + 1, 0);
        std::vector<std::int64_t> cid(n);
        for (std::size_t i = 0; i < n; ++i) {
            cid[i] = cell_of(c.position(i));
            ++cell_start_[cid[i] + 1];
        }
        for (std::int64_t k = 0; k < cells; ++k) cell_start_[k + 1] += cell_start_[k];
        items_.resize(n);
        std::vector<std::int32_t> fill(cell_start_.begin(), cell_start_.end() - 1);
        for (std::size_t i = 0; i < n; ++i) items_[fill[cid[i]]++] = static_cast<std::int32_t>(i);
    }

    bool empty() const { return items_.empty(); }

    // Visits every point whose center can lie within `reach` of x.
    template <class Fn>
    void for_candidates(const double* x, double reach, Fn&& fn) const {
        if (empty()) return;
        const int span = std::max(1, static_cast<int>(std::ceil(reach / cell_)));
        std::vector<std::int64_t> base(dim_), idx(dim_);
        for (int j = 0; j < dim_; ++j) base[j] = axis_cell(x[j], j);
        idx.assign(dim_, -span);
        for (;;) {
            std::int64_t cellid = 0;
            bool ok = true;
            for (int j = 0; j < dim_; ++j) {
                const std::int64_t cj = base[j] + idx[j];
                if (cj < 0 || cj >= dims_[j]) {
                    ok = false;
                    break;
                }
                cellid = cellid * dims_[j] + cj;
            }
            if (ok)
                for (std::int32_t k = cell_start_[cellid]; k < cell_start_[cellid + 1]; ++k)
                    fn(items_[k]);
            int j = dim_ - 1;
            while (j >= 0 && idx[j] == span) idx[j--] = -span;
            if (j < 0) break;
            ++idx[j];
        }
    }

private:
    std::int64_t axis_cell(double v, int j) const {
        auto k = static_cast<std::int64_t>(std::floor((v - lo_[j]) / cell_));
        return std::clamp<std::int64_t>(k, 0, dims_[j] - 1);
    }
    std::int64_t cell_of(const double* p) const {
        std::int64_t id = 0;
        for (int j = 0; j < dim_; ++j) id = id * dims_[j] + axis_cell(p[j], j);
        return id;
    }

    int dim_;
    double cell_;
    std::vector<double> lo_;
    std::vector<std::int64_t> dims_;
    std::vector<std::int32_t> cell_start_;
    std::vector<std::int32_t> items_;
};

double effective_bound(const Configuration& c) { return std::max(c.margin, c.max_radius()); }

struct Adjacency {
    std::vector<std::int32_t> adj;
    std::vector<std::int32_t> start;
};

Adjacency build_adjacency(const Configuration& c, const SpatialGrid& grid, double reach) {
    const std::size_t n = c.size();
    const int d = c.dim();
    std::vector<std::pair<std::int32_t, std::int32_t>> edges;
    for (std::size_t i = 0; i < n; ++i) {
        const double* xi = c.position(i);
        const double ri = c.radii[i];
        grid.for_candidates(xi, reach, [&](std::int32_t j) {
            if (j >= static_cast<std::int32_t>(i)) return;
            const double rr = ri + c.radii[j];
            if (dist2(xi, c.position(j), d) <= rr * rr)
                edges.emplace_back(j, static_cast<std::int32_t>(i));
        });
    }
    Adjacency a;
    a.start.assign(n + 1, 0);
    for (const auto& [u, v] : edges) {
        ++a.start[u + 1];
        ++a.start[v + 1];
    }
    for (std::size_t i = 0; i < n; ++i) a.start[i + 1] += a.start[i];
    a.adj.resize(2 * edges.size());
    std::vector<std::int32_t> fill(a.start.begin(), a.start.end() - 1);
    for (const auto& [u, v] : edges) {
        a.adj[fill[u]++] = v;
        a.adj[fill[v]++] = u;
    }
    for (std::size_t i = 0; i < n; ++i)
        std::sort(a.adj.begin() + a.start[i], a.adj.begin() + a.start[i + 1]);
    return a;
}

void check_target(const TargetSet& L, const Configuration& c, double box_radius, double b) {
    if (L.dim() != c.dim()) throw ConfigError("target dimension mismatch");
    if (L.max_norm() > box_radius - 2.0 * b)
        throw TargetTooLarge("target set does not fit inside B_{n-2b}");
}

} // namespace

// ---------------------------------------------------------------------------
// TargetSet

TargetSet TargetSet::point(std::vector<double> center) {
    TargetSet t;
    t.kind_ = Kind::point;
    t.dim_ = static_cast<int>(center.size());
    t.centers_.push_back(std::move(center));
    t.rhos_.push_back(0.0);
    return t;
}

TargetSet TargetSet::ball(std::vector<double> center, double rho) {
    if (!(rho > 0.0)) throw ConfigError("ball target needs a positive radius");
    TargetSet t;
    t.kind_ = Kind::ball;
    t.dim_ = static_cast<int>(center.size());
    t.centers_.push_back(std::move(center));
    t.rhos_.push_back(rho);
    return t;
}

TargetSet TargetSet::box(std::vector<double> lo, std::vector<double> hi) {
    if (lo.size() != hi.size() || lo.empty()) throw ConfigError("box target bounds mismatch");
    for (std::size_t j = 0; j < lo.size(); ++j)
        if (lo[j] > hi[j]) throw ConfigError("box target has lo > hi");
    TargetSet t;
    t.kind_ = Kind::box;
    t.dim_ = static_cast<int>(lo.size());
    t.box_lo_ = std::move(lo);
    t.box_hi_ = std::move(hi);
    return t;
}

TargetSet TargetSet::union_of_balls(std::vector<std::vector<double>> centers,
                                    std::vector<double> rhos) {
    if (centers.empty() || centers.size() != rhos.size())
        throw ConfigError("union-of-balls target needs matching centers and radii");
    TargetSet t;
    t.kind_ = Kind::union_of_balls;
    t.dim_ = static_cast<int>(centers.front().size());
    for (const auto& c : centers)
        if (static_cast<int>(c.size()) != t.dim_) throw ConfigError("ball centers dimension mismatch");
    t.centers_ = std::move(centers);
    t.rhos_ = std::move(rhos);
    return t;
}

double TargetSet::distance(const double* x) const {
    if (kind_ == Kind::box) {
        double s = 0.0;
        for (int j = 0; j < dim_; ++j) {
            const double e = std::max({box_lo_[j] - x[j], x[j] - box_hi_[j], 0.0});
            s += e * e;
        }
        return std::sqrt(s);
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < centers_.size(); ++i) {
        const double d = std::sqrt(dist2(x, centers_[i].data(), dim_)) - rhos_[i];
        best = std::min(best, std::max(d, 0.0));
    }
    return best;
}

double TargetSet::max_norm() const {
    if (kind_ == Kind::box) {
        double s = 0.0;
        for (int j = 0; j < dim_; ++j)
            s += std::max(box_lo_[j] * box_lo_[j], box_hi_[j] * box_hi_[j]);
        return std::sqrt(s);
    }
    double best = 0.0;
    for (std::size_t i = 0; i < centers_.size(); ++i)
        best = std::max(best, std::sqrt(norm2(centers_[i].data(), dim_)) + rhos_[i]);
    return best;
}

void TargetSet::bounding_box(std::vector<double>& lo, std::vector<double>& hi) const {
    if (kind_ == Kind::box) {
        lo = box_lo_;
        hi = box_hi_;
        return;
    }
    lo.assign(dim_, std::numeric_limits<double>::infinity());
    hi.assign(dim_, -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < centers_.size(); ++i)
        for (int j = 0; j < dim_; ++j) {
            lo[j] = std::min(lo[j], centers_[i][j] - rhos_[i]);
            hi[j] = std::max(hi[j], centers_[i][j] + rhos_[i]);
        }
}

// ---------------------------------------------------------------------------
// Graph construction and connectivity

IntersectionGraph build_graph(const Configuration& c, const TargetSet& L, double box_radius) {
    const double b = effective_bound(c);
    check_target(L, c, box_radius, b);

    IntersectionGraph g;
    g.n_grains = c.size();
    g.box_radius = box_radius;
    g.target_touches_outside = false;

    const SpatialGrid grid(c, 2.0 * b);
    Adjacency a = build_adjacency(c, grid, 2.0 * b);
    g.adj = std::move(a.adj);
    g.adj_start = std::move(a.start);

    for (std::size_t i = 0; i < c.size(); ++i) {
        if (L.distance(c.position(i)) <= c.radii[i])
            g.target_links.push_back(static_cast<std::int32_t>(i));
        if (std::sqrt(norm2(c.position(i), c.dim())) + c.radii[i] > box_radius)
            g.outside_links.push_back(static_cast<std::int32_t>(i));
    }
    return g;
}

bool connects_J(const IntersectionGraph& g) {
    std::vector<char> outside(g.n_grains, 0);
    for (std::int32_t i : g.outside_links) outside[i] = 1;
    std::vector<char> seen(g.n_grains, 0);
    std::vector<std::int32_t> stack;
    for (std::int32_t i : g.target_links) {
        if (outside[i]) return true;
        if (!seen[i]) {
            seen[i] = 1;
            stack.push_back(i);
        }
    }
    while (!stack.empty()) {
        const std::int32_t v = stack.back();
        stack.pop_back();
        for (std::int32_t w : g.neighbors(v)) {
            if (seen[w]) continue;
            if (outside[w]) return true;
            seen[w] = 1;
            stack.push_back(w);
        }
    }
    return false;
}

ClusterIndex label_clusters(const Configuration& c) {
    const double b = effective_bound(c);
    const SpatialGrid grid(c, 2.0 * std::max(b, 1e-300));
    Adjacency a = build_adjacency(c, grid, 2.0 * b);
    UnionFind uf(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::int32_t k = a.start[i]; k < a.start[i + 1]; ++k)
            uf.merge(static_cast<std::int32_t>(i), a.adj[k]);
    ClusterIndex ci;
    ci.label.assign(c.size(), -1);
    std::vector<std::int32_t> remap(c.size(), -1);
    for (std::size_t i = 0; i < c.size(); ++i) {
        const std::int32_t r = uf.find(static_cast<std::int32_t>(i));
        if (remap[r] < 0) remap[r] = ci.component_count++;
        ci.label[i] = remap[r];
    }
    return ci;
}

std::vector<std::int32_t> cluster_of_target(const Configuration& c, const TargetSet& L) {
    if (c.size() == 0) return {};
    const ClusterIndex ci = label_clusters(c);
    std::vector<char> hit(ci.component_count, 0);
    for (std::size_t i = 0; i < c.size(); ++i)
        if (L.distance(c.position(i)) <= c.radii[i]) hit[ci.label[i]] = 1;
    std::vector<std::int32_t> out;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (hit[ci.label[i]]) out.push_back(static_cast<std::int32_t>(i));
    return out;
}

// ---------------------------------------------------------------------------
// Stabilization radius

StabilizationRadius stabilization_radius(const Configuration& c, const TargetSet& K, double b) {
    if (c.window.kind != WindowKind::box)
        throw ConfigError("stabilization radius needs a box window");
    if (!(b > 0.0) || c.margin < b)
        throw ConfigError("stabilization radius needs margin >= b > 0");

    StabilizationRadius result;
    const double r_out = c.window.sampling_inball_radius(c.margin);

    std::vector<double> lo, hi;
    c.window.sampling_bounds(c.margin, lo, hi);

    double extent = K.max_norm();
    bool censored = false;

    // An unseen grain could seed a fresh cluster meeting K if K itself comes
    // within b of the sampling boundary.
    {
        std::vector<double> k_lo, k_hi;
        K.bounding_box(k_lo, k_hi);
        for (int j = 0; j < c.dim(); ++j)
            if (hi[j] - k_hi[j] <= b || k_lo[j] - lo[j] <= b) censored = true;
    }

    if (c.size() > 0) {
        const ClusterIndex ci = label_clusters(c);
        std::vector<char> meets_k(ci.component_count, 0), reaches_out(ci.component_count, 0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            const double* x = c.position(i);
            const double reach = std::sqrt(norm2(x, c.dim())) + c.radii[i];
            if (K.distance(x) <= c.radii[i]) meets_k[ci.label[i]] = 1;
            if (reach > r_out) reaches_out[ci.label[i]] = 1;
        }
        for (std::int32_t comp = 0; comp < ci.component_count; ++comp)
            if (meets_k[comp] && reaches_out[comp]) ++result.excluded_components;

        for (std::size_t i = 0; i < c.size(); ++i) {
            const std::int32_t comp = ci.label[i];
            if (!meets_k[comp] || reaches_out[comp]) continue;
            const double* x = c.position(i);
            extent = std::max(extent, std::sqrt(norm2(x, c.dim())) + c.radii[i]);
            // A retained grain within r+b of the sampling boundary could be
            // touched by an unseen grain; containment is then uncertifiable.
            double boundary_gap = std::numeric_limits<double>::infinity();
            for (int j = 0; j < c.dim(); ++j)
                boundary_gap = std::min({boundary_gap, hi[j] - x[j], x[j] - lo[j]});
            if (boundary_gap <= c.radii[i] + b) censored = true;
        }
    }

    if (censored) return result;
    // Smallest n >= 1 with (n-1) b >= extent.
    auto q = static_cast<std::int64_t>(std::ceil(extent / b));
    if (static_cast<double>(q) * b < extent) ++q;
    result.value = static_cast<double>(q + 1) * b;
    return result;
}

// ---------------------------------------------------------------------------
// Pivotal grains via block-cut decomposition

namespace {

struct CombinedGraph {
    std::vector<std::int32_t> adj;
    std::vector<std::int32_t> start;
    std::int32_t target, outside;
    std::span<const std::int32_t> neighbors(std::int32_t v) const {
        return {adj.data() + start[v], adj.data() + start[v + 1]};
    }
};

CombinedGraph combine_with_terminals(const IntersectionGraph& g) {
    const auto n = static_cast<std::int32_t>(g.n_grains);
    CombinedGraph cg;
    cg.target = n;
    cg.outside = n + 1;
    cg.start.assign(n + 3, 0);
    for (std::int32_t v = 0; v < n; ++v)
        cg.start[v + 1] = g.adj_start[v + 1] - g.adj_start[v];
    for (std::int32_t i : g.target_links) ++cg.start[i + 1];
    for (std::int32_t i : g.outside_links) ++cg.start[i + 1];
    cg.start[cg.target + 1] = static_cast<std::int32_t>(g.target_links.size());
    cg.start[cg.outside + 1] = static_cast<std::int32_t>(g.outside_links.size());
    for (std::size_t v = 0; v + 1 < cg.start.size(); ++v) cg.start[v + 1] += cg.start[v];
    cg.adj.resize(cg.start.back());
    std::vector<std::int32_t> fill(cg.start.begin(), cg.start.end() - 1);
    for (std::int32_t v = 0; v < n; ++v)
        for (std::int32_t w : g.neighbors(v)) cg.adj[fill[v]++] = w;
    for (std::int32_t i : g.target_links) {
        cg.adj[fill[i]++] = cg.target;
        cg.adj[fill[cg.target]++] = i;
    }
    for (std::int32_t i : g.outside_links) {
        cg.adj[fill[i]++] = cg.outside;
        cg.adj[fill[cg.outside]++] = i;
    }
    return cg;
}

struct BlockCut {
    std::vector<std::vector<std::int32_t>> blocks;
    std::vector<char> is_cut;
    bool reached_outside = false;
};

// Iterative articulation-point DFS with an edge stack, rooted at TARGET;
// only the component containing TARGET is explored.
BlockCut block_cut_decomposition(const CombinedGraph& cg) {
    const auto nv = static_cast<std::int32_t>(cg.start.size() - 1);
    BlockCut bc;
    bc.is_cut.assign(nv, 0);
    std::vector<std::int32_t> disc(nv, -1), low(nv, 0), parent(nv, -1), next(nv, 0);
    std::vector<std::pair<std::int32_t, std::int32_t>> estack;
    std::vector<std::int32_t> frames;
    std::int32_t timer = 0;
    std::int32_t root_children = 0;
    const std::int32_t root = cg.target;

    disc[root] = low[root] = timer++;
    frames.push_back(root);
    while (!frames.empty()) {
        const std::int32_t v = frames.back();
        const auto nbrs = cg.neighbors(v);
        if (next[v] < static_cast<std::int32_t>(nbrs.size())) {
            const std::int32_t w = nbrs[next[v]++];
            if (disc[w] == -1) {
                parent[w] = v;
                estack.emplace_back(v, w);
                disc[w] = low[w] = timer++;
                frames.push_back(w);
            } else if (w != parent[v] && disc[w] < disc[v]) {
                estack.emplace_back(v, w);
                low[v] = std::min(low[v], disc[w]);
            }
        } else {
            frames.pop_back();
            if (frames.empty()) break;
            const std::int32_t u = frames.back();
            low[u] = std::min(low[u], low[v]);
            if (u == root) ++root_children;
            if (low[v] >= disc[u]) {
                if (u != root) bc.is_cut[u] = 1;
                std::vector<std::int32_t> verts;
                for (;;) {
                    const auto [a, b] = estack.back();
                    estack.pop_back();
                    verts.push_back(a);
                    verts.push_back(b);
                    if (a == u && b == v) break;
                }
                std::sort(verts.begin(), verts.end());
                verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
                bc.blocks.push_back(std::move(verts));
            }
        }
    }
    bc.is_cut[root] = root_children >= 2;
    bc.reached_outside = disc[cg.outside] != -1;
    return bc;
}

} // namespace

PivotalReport pivotal_report(const IntersectionGraph& g) {
    PivotalReport report;
    const CombinedGraph cg = combine_with_terminals(g);
    const BlockCut bc = block_cut_decomposition(cg);
    report.connected = bc.reached_outside;
    if (!report.connected) return report;

    // Block-cut tree: one node per block, one per cut vertex.
    const auto nb = static_cast<std::int32_t>(bc.blocks.size());
    const auto nv = static_cast<std::int32_t>(bc.is_cut.size());
    std::vector<std::int32_t> cut_node(nv, -1), home_block(nv, -1);
    std::int32_t nodes = nb;
    for (std::int32_t v = 0; v < nv; ++v)
        if (bc.is_cut[v]) cut_node[v] = nodes++;
    std::vector<std::vector<std::int32_t>> tree(nodes);
    for (std::int32_t bidx = 0; bidx < nb; ++bidx)
        for (std::int32_t v : bc.blocks[bidx]) {
            if (bc.is_cut[v]) {
                tree[bidx].push_back(cut_node[v]);
                tree[cut_node[v]].push_back(bidx);
            } else {
                home_block[v] = bidx;
            }
        }

    auto node_of = [&](std::int32_t v) {
        return bc.is_cut[v] ? cut_node[v] : home_block[v];
    };
    const std::int32_t src = node_of(cg.target);
    const std::int32_t dst = node_of(cg.outside);

    std::vector<std::int32_t> prev(nodes, -2);
    std::vector<std::int32_t> queue{src};
    prev[src] = -1;
    for (std::size_t qi = 0; qi < queue.size() && prev[dst] == -2; ++qi)
        for (std::int32_t w : tree[queue[qi]])
            if (prev[w] == -2) {
                prev[w] = queue[qi];
                queue.push_back(w);
            }

    std::vector<std::int32_t> path;
    for (std::int32_t node = dst; node != -1; node = prev[node]) path.push_back(node);
    std::reverse(path.begin(), path.end());

    // Cut vertices along the tree path, terminals excluded, are the pivotal
    // grains in the order every TARGET-OUTSIDE path visits them.
    std::vector<std::int32_t> inv_cut(nodes, -1);
    for (std::int32_t v = 0; v < nv; ++v)
        if (cut_node[v] >= 0) inv_cut[cut_node[v]] = v;
    for (std::int32_t node : path) {
        const std::int32_t v = node < nb ? -1 : inv_cut[node];
        if (v >= 0 && v != cg.target && v != cg.outside) report.pivotal.push_back(v);
    }
    if (!report.pivotal.empty()) report.last_pivotal = report.pivotal.back();
    report.two_disjoint_paths = report.pivotal.empty();
    return report;
}

// ---------------------------------------------------------------------------
// Bridge probes

struct BridgeContext::Impl {
    const Configuration* c;
    TargetSet target;
    double box_radius;
    double b;
    SpatialGrid grid;
    std::vector<std::int32_t> label;
    std::vector<char> comp_target, comp_outside;
    bool connected = false;
    std::vector<double> cluster_lo, cluster_hi;

    Impl(const Configuration& cfg, const TargetSet& L, double n)
        : c(&cfg), target(L), box_radius(n), b(effective_bound(cfg)), grid(cfg, 2.0 * std::max(b, 1e-300)) {
        check_target(L, cfg, n, b);
        const ClusterIndex ci = label_clusters(cfg);
        label = ci.label;
        comp_target.assign(ci.component_count, 0);
        comp_outside.assign(ci.component_count, 0);
        for (std::size_t i = 0; i < cfg.size(); ++i) {
            const double* x = cfg.position(i);
            if (L.distance(x) <= cfg.radii[i]) comp_target[label[i]] = 1;
            if (std::sqrt(norm2(x, cfg.dim())) + cfg.radii[i] > n) comp_outside[label[i]] = 1;
        }
        for (std::int32_t k = 0; k < ci.component_count; ++k)
            if (comp_target[k] && comp_outside[k]) connected = true;

        L.bounding_box(cluster_lo, cluster_hi);
        for (std::size_t i = 0; i < cfg.size(); ++i) {
            if (!comp_target[label[i]]) continue;
            const double* x = cfg.position(i);
            for (int j = 0; j < cfg.dim(); ++j) {
                cluster_lo[j] = std::min(cluster_lo[j], x[j] - cfg.radii[i]);
                cluster_hi[j] = std::max(cluster_hi[j], x[j] + cfg.radii[i]);
            }
        }
    }

    bool bridges(const double* x, double r) const {
        if (connected) return false;
        bool t_side = target.distance(x) <= r;
        bool o_side = std::sqrt(norm2(x, c->dim())) + r > box_radius;
        if (t_side && o_side) return true;
        bool done = false;
        grid.for_candidates(x, r + b, [&](std::int32_t j) {
            if (done) return;
            const double rr = r + c->radii[j];
            if (dist2(x, c->position(j), c->dim()) > rr * rr) return;
            if (comp_target[label[j]]) t_side = true;
            if (comp_outside[label[j]]) o_side = true;
            done = t_side && o_side;
        });
        return t_side && o_side;
    }
};

BridgeContext::BridgeContext(const Configuration& c, const TargetSet& L, double box_radius)
    : impl_(std::make_unique<Impl>(c, L, box_radius)) {}
BridgeContext::~BridgeContext() = default;
BridgeContext::BridgeContext(BridgeContext&&) noexcept = default;

bool BridgeContext::already_connected() const { return impl_->connected; }
bool BridgeContext::bridges(const double* x, double r) const { return impl_->bridges(x, r); }
void BridgeContext::target_cluster_bounds(std::vector<double>& lo, std::vector<double>& hi) const {
    lo = impl_->cluster_lo;
    hi = impl_->cluster_hi;
}

bool bridge_test(const Configuration& c, const TargetSet& L, double box_radius,
                 std::span<const double> x, double r) {
    const BridgeContext ctx(c, L, box_radius);
    return ctx.bridges(x.data(), r);
}

// ---------------------------------------------------------------------------
// Coverage

bool ball_covered(const Configuration& c, std::span<const double> center, double rho,
                  double delta) {
    if (!(delta > 0.0)) throw ConfigError("coverage resolution must be positive");
    const int d = c.dim();
    const double b = effective_bound(c);
    const SpatialGrid grid(c, 2.0 * std::max(b, 1e-300));

    const auto span = static_cast<std::int64_t>(std::floor(rho / delta));
    std::vector<std::int64_t> k(d, -span);
    std::vector<double> p(d);
    for (;;) {
        double s2 = 0.0;
        for (int j = 0; j < d; ++j) s2 += static_cast<double>(k[j]) * k[j];
        if (s2 * delta * delta <= rho * rho) {
            for (int j = 0; j < d; ++j) p[j] = center[j] + delta * static_cast<double>(k[j]);
            bool covered = false;
            grid.for_candidates(p.data(), b, [&](std::int32_t i) {
                if (covered) return;
                covered = dist2(p.data(), c.position(i), d) <= c.radii[i] * c.radii[i];
            });
            if (!covered) return false;
        }
        int j = d - 1;
        while (j >= 0 && k[j] == span) k[j--] = -span;
        if (j < 0) break;
        ++k[j];
    }
    return true;
}

void write_edge_list(std::ostream& os, const IntersectionGraph& g) {
    for (std::size_t i = 0; i < g.n_grains; ++i)
        for (std::int32_t j : g.neighbors(i))
            if (j > static_cast<std::int32_t>(i)) os << i << ' ' << j << '\n';
    for (std::int32_t i : g.target_links) os << "T " << i << '\n';
    for (std::int32_t i : g.outside_links) os << "O " << i << '\n';
}

} // namespace boolperc
