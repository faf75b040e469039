#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include <Eigen/SparseCore>

#include "gwip/color.hpp"
#include "gwip/image.hpp"

namespace gwip {

enum class DistanceMode { EuclideanRgb, DeltaE2000 };

// One 5-D point per pixel: spatial coordinates plus a color triple, which is
// (r,g,b) in EuclideanRgb mode and (L*,a*,b*) in DeltaE2000 mode.
struct PixelFeature {
    int x = 0;
    int y = 0;
    std::array<double, 3> color{};
};

struct FeatureSet {
    int width = 0;
    int height = 0;
    DistanceMode mode = DistanceMode::EuclideanRgb;
    std::vector<PixelFeature> points;

    int n_vertices() const { return int(points.size()); }
};

struct GraphParams {
    int k = 8;                 // nearest-neighbor count
    double sigma = 10.0;       // Gaussian weight width, > 0
    int geodesic_budget = 32;  // retained geodesic neighbors per vertex, >= k
    DistanceMode mode = DistanceMode::EuclideanRgb;
    int threads = 0;           // 0 = hardware count

    void validate() const;
};

struct GraphEdge {
    int u = 0; // u < v
    int v = 0;
    double w = 0.0; // strictly positive
};

// Loopless undirected graph with strictly positive symmetric weights.
// Edges are stored once with u < v, sorted lexicographically.
struct WeightedGraph {
    int n_vertices = 0;
    std::vector<GraphEdge> edges;
};

// Symmetric adjacency list carrying 5-D distances (not weights); the
// substrate the geodesic searches run on.
struct KnnGraph {
    int n_vertices = 0;
    // adj[v] sorted by neighbor index; lengths are knn_distance values.
    std::vector<std::vector<std::pair<int, double>>> adj;
};

// One feature per pixel, vertex n = y*width + x; colors converted to CIELab
// when mode is DeltaE2000. Throws std::invalid_argument on an empty image.
FeatureSet pixel_features(const Image& img, DistanceMode mode);

// sqrt(spatial^2 + color^2) with the color term chosen by mode.
double knn_distance(const PixelFeature& m, const PixelFeature& n, DistanceMode mode);
double knn_distance(const FeatureSet& fs, int m, int n);

// k nearest neighbors per vertex under knn_distance, symmetrized by union.
// Ties break toward the lower vertex index. Requires 1 <= k < n_vertices.
KnnGraph build_knn(const FeatureSet& fs, int k, int threads = 0);

// The `budget` nearest vertices by shortest-path distance from `source`,
// via Dijkstra truncated after `budget` settled vertices (source excluded).
// Returns (vertex, distance) in settle order; fewer entries if the
// component is exhausted first.
std::vector<std::pair<int, double>> geodesic_neighborhood(const KnnGraph& g,
                                                          int source,
                                                          int budget);

// Full construction: k-NN, per-vertex truncated geodesics, then
// w = exp(-rho^2 / sigma^2). A pair reached from both endpoints keeps the
// larger weight (the shorter path).
WeightedGraph build_weighted_graph(const FeatureSet& fs, const GraphParams& params);

Eigen::SparseMatrix<double> adjacency(const WeightedGraph& g);
Eigen::SparseMatrix<double> laplacian(const WeightedGraph& g);

// Graph for images with missing pixels: the known region is wired by
// build_weighted_graph over known pixels only; every missing pixel gets
// spatial-distance edges to its 8-connected neighbors regardless of their
// mask state. `known` is per-pixel, nonzero = known.
// Throws std::invalid_argument if every pixel is missing.
WeightedGraph build_inpainting_topology(const FeatureSet& fs,
                                        const std::vector<std::uint8_t>& known,
                                        const GraphParams& params);

// Edge-list dump, one "u v w" line per edge with u < v.
void write_edge_list(const WeightedGraph& g, std::ostream& out);

} // namespace gwip
