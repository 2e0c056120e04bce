#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "boolperc/pointproc.hpp"

namespace boolperc {

// Compact target set L with closed-form point-to-set distance.
class TargetSet {
public:
    enum class Kind { point, ball, box, union_of_balls };

    static TargetSet point(std::vector<double> center);
    static TargetSet ball(std::vector<double> center, double rho);
    static TargetSet box(std::vector<double> lo, std::vector<double> hi);
    static TargetSet union_of_balls(std::vector<std::vector<double>> centers,
                                    std::vector<double> rhos);

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }
    double distance(const double* x) const;
    // sup over points of L of the Euclidean norm.
    double max_norm() const;
    // Tight axis-aligned bounding box.
    void bounding_box(std::vector<double>& lo, std::vector<double>& hi) const;

    const std::vector<std::vector<double>>& centers() const { return centers_; }
    const std::vector<double>& rhos() const { return rhos_; }
    const std::vector<double>& box_lo() const { return box_lo_; }
    const std::vector<double>& box_hi() const { return box_hi_; }

private:
    Kind kind_ = Kind::point;
    int dim_ = 0;
    std::vector<std::vector<double>> centers_; // point/ball/union-of-balls
    std::vector<double> rhos_;
    std::vector<double> box_lo_, box_hi_;
};

// Grain adjacency (closed-ball contact: |x_i - x_j| <= r_i + r_j) plus links
// to the two virtual terminals: TARGET (grains meeting L) and OUTSIDE (grains
// not contained in the ball B_n).
struct IntersectionGraph {
    std::size_t n_grains = 0;
    std::vector<std::int32_t> adj;       // CSR neighbor lists, each sorted
    std::vector<std::int32_t> adj_start; // size n_grains + 1
    std::vector<std::int32_t> target_links;
    std::vector<std::int32_t> outside_links;
    double box_radius = 0;
    bool target_touches_outside = false;

    std::span<const std::int32_t> neighbors(std::size_t i) const {
        return {adj.data() + adj_start[i], adj.data() + adj_start[i + 1]};
    }
};

// Requires L inside B_{n-2b}; built on a uniform grid of cell width 2b so the
// expected cost is linear in the number of grains.
IntersectionGraph build_graph(const Configuration& c, const TargetSet& L, double box_radius);

// Event "L is joined to the complement of B_n through grains".
bool connects_J(const IntersectionGraph& g);

// Indices (sorted) of all grains in components whose union of balls meets L.
std::vector<std::int32_t> cluster_of_target(const Configuration& c, const TargetSet& L);

// Per-grain component labels over grain adjacency only (terminals excluded).
struct ClusterIndex {
    std::vector<std::int32_t> label;
    std::int32_t component_count = 0;
};
ClusterIndex label_clusters(const Configuration& c);

struct PivotalReport {
    bool connected = false;
    std::vector<std::int32_t> pivotal; // in path order from TARGET
    std::optional<std::int32_t> last_pivotal;
    bool two_disjoint_paths = false;
};

// Cut vertices separating TARGET from OUTSIDE, ordered along every
// TARGET-OUTSIDE path; computed from the block-cut tree of the graph.
PivotalReport pivotal_report(const IntersectionGraph& g);

struct StabilizationRadius {
    // Smallest nb with K and its retained cluster inside B_{(n-1)b};
    // empty when the retained cluster cannot be certified complete
    // (a censored observation).
    std::optional<double> value;
    // Components meeting K that reach past the sampling inball and are
    // therefore treated as the unbounded-cluster surrogate and excluded.
    int excluded_components = 0;
};

// Requires a box window sampled with margin >= b.
StabilizationRadius stabilization_radius(const Configuration& c, const TargetSet& K, double b);

// True when the grain B_r(x) turns a non-connecting configuration into a
// connecting one. Precomputes component labels; see BridgeContext for the
// amortized form.
bool bridge_test(const Configuration& c, const TargetSet& L, double box_radius,
                 std::span<const double> x, double r);

// Amortizes the per-configuration work of bridge_test over many probes.
class BridgeContext {
public:
    BridgeContext(const Configuration& c, const TargetSet& L, double box_radius);
    ~BridgeContext();
    BridgeContext(BridgeContext&&) noexcept;

    bool already_connected() const;
    bool bridges(const double* x, double r) const;
    // Bounding box of L together with the grains of its cluster; the bridge
    // integrand vanishes outside this box dilated by 2b.
    void target_cluster_bounds(std::vector<double>& lo, std::vector<double>& hi) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Grid test of {B_rho(center) fully covered by grains} at resolution delta.
bool ball_covered(const Configuration& c, std::span<const double> center, double rho,
                  double delta);

// Debug export: one "i j" line per edge, terminals as T / O.
void write_edge_list(std::ostream& os, const IntersectionGraph& g);

} // namespace boolperc
