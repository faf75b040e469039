#include "gwip/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <unordered_map>

#include "gwip/parallel.hpp"

namespace gwip {

void GraphParams::validate() const {
    if (k < 1) throw std::invalid_argument("graph: k must be >= 1");
    if (sigma <= 0.0) throw std::invalid_argument("graph: sigma must be > 0");
    if (geodesic_budget < k)
        throw std::invalid_argument("graph: geodesic budget must be >= k");
}

FeatureSet pixel_features(const Image& img, DistanceMode mode) {
    if (img.empty()) throw std::invalid_argument("pixel_features: empty image");
    FeatureSet fs;
    fs.width = img.width;
    fs.height = img.height;
    fs.mode = mode;
    fs.points.reserve(img.n_pixels());
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            const RgbColor c = img.rgb_at(x, y);
            PixelFeature f;
            f.x = x;
            f.y = y;
            if (mode == DistanceMode::DeltaE2000) {
                const LabColor lab = srgb_to_lab(c);
                f.color = {lab.L, lab.a, lab.b};
            } else {
                f.color = {double(c.r), double(c.g), double(c.b)};
            }
            fs.points.push_back(f);
        }
    return fs;
}

namespace {

inline double color_distance(const PixelFeature& m, const PixelFeature& n,
                             DistanceMode mode) {
    if (mode == DistanceMode::DeltaE2000) {
        return delta_e2000({m.color[0], m.color[1], m.color[2]},
                           {n.color[0], n.color[1], n.color[2]});
    }
    const double d0 = m.color[0] - n.color[0];
    const double d1 = m.color[1] - n.color[1];
    const double d2 = m.color[2] - n.color[2];
    return std::sqrt(d0 * d0 + d1 * d1 + d2 * d2);
}

inline std::int64_t edge_key(int u, int v) {
    return (std::int64_t(u) << 32) | std::uint32_t(v);
}

} // namespace

double knn_distance(const PixelFeature& m, const PixelFeature& n,
                    DistanceMode mode) {
    const double dx = double(m.x) - double(n.x);
    const double dy = double(m.y) - double(n.y);
    const double dc = color_distance(m, n, mode);
    return std::sqrt(dx * dx + dy * dy + dc * dc);
}

double knn_distance(const FeatureSet& fs, int m, int n) {
    return knn_distance(fs.points[m], fs.points[n], fs.mode);
}

KnnGraph build_knn(const FeatureSet& fs, int k, int threads) {
    const int n = fs.n_vertices();
    if (k < 1) throw std::invalid_argument("build_knn: k must be >= 1");
    if (k >= n) throw std::invalid_argument("build_knn: k must be < n_vertices");

    const int w = fs.width;
    const int h = fs.height;
    using Cand = std::pair<double, int>; // (distance, vertex), lexicographic

    // Per-source k best, found by scanning square rings of growing Chebyshev
    // radius. Pixels beyond radius q have spatial (hence total) distance
    // >= q+1, so the scan stops once the k-th best cannot be displaced.
    std::vector<std::vector<Cand>> best(n);
    parallel_for(std::size_t(n), threads, [&](std::size_t src) {
        const PixelFeature& s = fs.points[src];
        std::priority_queue<Cand> heap; // top = current worst
        auto offer = [&](int x, int y) {
            const int idx = y * w + x;
            if (idx == int(src)) return;
            const Cand c{knn_distance(s, fs.points[idx], fs.mode), idx};
            if (int(heap.size()) < k) {
                heap.push(c);
            } else if (c < heap.top()) {
                heap.pop();
                heap.push(c);
            }
        };
        const int qmax = std::max({s.x, w - 1 - s.x, s.y, h - 1 - s.y});
        for (int q = 1; q <= qmax; ++q) {
            const int x0 = s.x - q, x1 = s.x + q;
            const int y0 = s.y - q, y1 = s.y + q;
            for (int x = std::max(x0, 0); x <= std::min(x1, w - 1); ++x) {
                if (y0 >= 0) offer(x, y0);
                if (y1 < h) offer(x, y1);
            }
            for (int y = std::max(y0 + 1, 0); y <= std::min(y1 - 1, h - 1); ++y) {
                if (x0 >= 0) offer(x0, y);
                if (x1 < w) offer(x1, y);
            }
            if (int(heap.size()) == k && heap.top().first < double(q + 1)) break;
        }
        std::vector<Cand>& out = best[src];
        out.resize(heap.size());
        for (auto it = out.rbegin(); it != out.rend(); ++it) {
            *it = heap.top();
            heap.pop();
        }
    });

    // Union symmetrization.
    KnnGraph g;
    g.n_vertices = n;
    g.adj.resize(n);
    for (int src = 0; src < n; ++src)
        for (const auto& [d, nbr] : best[src]) {
            g.adj[src].emplace_back(nbr, d);
            g.adj[nbr].emplace_back(src, d);
        }
    for (auto& lst : g.adj) {
        std::sort(lst.begin(), lst.end());
        lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
    }
    return g;
}

std::vector<std::pair<int, double>> geodesic_neighborhood(const KnnGraph& g,
                                                          int source,
                                                          int budget) {
    if (source < 0 || source >= g.n_vertices)
        throw std::invalid_argument("geodesic_neighborhood: source out of range");
    if (budget < 1)
        throw std::invalid_argument("geodesic_neighborhood: budget must be >= 1");

    std::vector<std::pair<int, double>> settled;
    settled.reserve(budget);
    std::vector<double> dist(g.n_vertices, std::numeric_limits<double>::infinity());
    std::vector<char> done(g.n_vertices, 0);
    using Item = std::pair<double, int>; // min-heap; ties pop the lower index
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    dist[source] = 0.0;
    pq.push({0.0, source});

    while (!pq.empty() && int(settled.size()) < budget) {
        const auto [d, v] = pq.top();
        pq.pop();
        if (done[v]) continue;
        done[v] = 1;
        if (v != source) settled.emplace_back(v, d);
        for (const auto& [nbr, len] : g.adj[v]) {
            const double nd = d + len;
            if (nd < dist[nbr]) {
                dist[nbr] = nd;
                pq.push({nd, nbr});
            }
        }
    }
    return settled;
}

namespace {

WeightedGraph weights_from_geodesics(const KnnGraph& knn, double sigma,
                                     int budget, int threads) {
    const int n = knn.n_vertices;
    std::vector<std::vector<std::pair<int, double>>> nbhd(n);
    parallel_for(std::size_t(n), threads, [&](std::size_t src) {
        nbhd[src] = geodesic_neighborhood(knn, int(src), budget);
    });

    // Merge; a pair reached from both sides keeps the larger weight.
    std::unordered_map<std::int64_t, double> acc;
    acc.reserve(std::size_t(n) * budget);
    const double inv_s2 = 1.0 / (sigma * sigma);
    for (int src = 0; src < n; ++src)
        for (const auto& [nbr, rho] : nbhd[src]) {
            const double w = std::exp(-rho * rho * inv_s2);
            if (w <= 0.0) continue; // underflow past representable weights
            const int u = std::min(src, nbr);
            const int v = std::max(src, nbr);
            auto [it, fresh] = acc.try_emplace(edge_key(u, v), w);
            if (!fresh && w > it->second) it->second = w;
        }

    WeightedGraph g;
    g.n_vertices = n;
    g.edges.reserve(acc.size());
    for (const auto& [key, w] : acc)
        g.edges.push_back({int(key >> 32), int(key & 0xffffffff), w});
    std::sort(g.edges.begin(), g.edges.end(), [](const GraphEdge& a, const GraphEdge& b) {
        return std::pair{a.u, a.v} < std::pair{b.u, b.v};
    });
    return g;
}

} // namespace

WeightedGraph build_weighted_graph(const FeatureSet& fs, const GraphParams& params) {
    params.validate();
    const KnnGraph knn = build_knn(fs, params.k, params.threads);
    return weights_from_geodesics(knn, params.sigma, params.geodesic_budget,
                                  params.threads);
}

Eigen::SparseMatrix<double> adjacency(const WeightedGraph& g) {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(2 * g.edges.size());
    for (const GraphEdge& e : g.edges) {
        trip.emplace_back(e.u, e.v, e.w);
        trip.emplace_back(e.v, e.u, e.w);
    }
    Eigen::SparseMatrix<double> a(g.n_vertices, g.n_vertices);
    a.setFromTriplets(trip.begin(), trip.end());
    return a;
}

Eigen::SparseMatrix<double> laplacian(const WeightedGraph& g) {
    std::vector<double> degree(g.n_vertices, 0.0);
    for (const GraphEdge& e : g.edges) {
        degree[e.u] += e.w;
        degree[e.v] += e.w;
    }
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(2 * g.edges.size() + g.n_vertices);
    for (const GraphEdge& e : g.edges) {
        trip.emplace_back(e.u, e.v, -e.w);
        trip.emplace_back(e.v, e.u, -e.w);
    }
    for (int v = 0; v < g.n_vertices; ++v)
        if (degree[v] != 0.0) trip.emplace_back(v, v, degree[v]);
    Eigen::SparseMatrix<double> l(g.n_vertices, g.n_vertices);
    l.setFromTriplets(trip.begin(), trip.end());
    return l;
}

WeightedGraph build_inpainting_topology(const FeatureSet& fs,
                                        const std::vector<std::uint8_t>& known,
                                        const GraphParams& params) {
    params.validate();
    const int n = fs.n_vertices();
    if (int(known.size()) != n)
        throw std::invalid_argument("build_inpainting_topology: mask size mismatch");

    std::vector<int> known_idx;
    for (int i = 0; i < n; ++i)
        if (known[i]) known_idx.push_back(i);
    if (known_idx.empty())
        throw std::invalid_argument(
            "build_inpainting_topology: mask leaves no known pixels");

    // Content edges among known pixels, built on the restricted feature set
    // and mapped back to full-image vertex indices.
    std::unordered_map<std::int64_t, double> acc;
    if (known_idx.size() >= 2) {
        FeatureSet sub;
        sub.width = fs.width;
        sub.height = fs.height;
        sub.mode = fs.mode;
        sub.points.reserve(known_idx.size());
        for (int i : known_idx) sub.points.push_back(fs.points[i]);

        GraphParams sub_params = params;
        // The known region can be smaller than the requested k.
        sub_params.k = std::min(params.k, int(known_idx.size()) - 1);
        sub_params.geodesic_budget = std::max(sub_params.geodesic_budget, sub_params.k);

        // The restricted set is not a full raster, so ring pruning inside
        // build_knn does not apply; brute-force selection over known pixels.
        const int m = int(sub.points.size());
        const int kk = sub_params.k;
        KnnGraph knn;
        knn.n_vertices = m;
        knn.adj.resize(m);
        std::vector<std::vector<std::pair<double, int>>> best(m);
        parallel_for(std::size_t(m), params.threads, [&](std::size_t src) {
            std::priority_queue<std::pair<double, int>> heap;
            for (int j = 0; j < m; ++j) {
                if (j == int(src)) continue;
                const std::pair<double, int> c{knn_distance(sub, int(src), j), j};
                if (int(heap.size()) < kk) {
                    heap.push(c);
                } else if (c < heap.top()) {
                    heap.pop();
                    heap.push(c);
                }
            }
            auto& out = best[src];
            out.resize(heap.size());
            for (auto it = out.rbegin(); it != out.rend(); ++it) {
                *it = heap.top();
                heap.pop();
            }
        });
        for (int src = 0; src < m; ++src)
            for (const auto& [d, nbr] : best[src]) {
                knn.adj[src].emplace_back(nbr, d);
                knn.adj[nbr].emplace_back(src, d);
            }
        for (auto& lst : knn.adj) {
            std::sort(lst.begin(), lst.end());
            lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
        }

        const WeightedGraph sub_graph = weights_from_geodesics(
            knn, params.sigma, sub_params.geodesic_budget, params.threads);
        for (const GraphEdge& e : sub_graph.edges) {
            const int u = known_idx[e.u];
            const int v = known_idx[e.v];
            acc[edge_key(std::min(u, v), std::max(u, v))] = e.w;
        }
    }

    // Regular 8-connected mesh around every missing pixel, weighted by
    // spatial distance only (color is unknown there).
    const double inv_s2 = 1.0 / (params.sigma * params.sigma);
    const double w1 = std::exp(-1.0 * inv_s2); // axis neighbor, distance 1
    const double w2 = std::exp(-2.0 * inv_s2); // diagonal, distance sqrt(2)
    for (int y = 0; y < fs.height; ++y)
        for (int x = 0; x < fs.width; ++x) {
            const int idx = y * fs.width + x;
            if (known[idx]) continue;
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    const int nx = x + dx, ny = y + dy;
                    if (nx < 0 || nx >= fs.width || ny < 0 || ny >= fs.height)
                        continue;
                    const int nidx = ny * fs.width + nx;
                    const double w = (dx != 0 && dy != 0) ? w2 : w1;
                    const auto key =
                        edge_key(std::min(idx, nidx), std::max(idx, nidx));
                    auto [it, fresh] = acc.try_emplace(key, w);
                    if (!fresh && w > it->second) it->second = w;
                }
        }

    WeightedGraph g;
    g.n_vertices = n;
    g.edges.reserve(acc.size());
    for (const auto& [key, w] : acc)
        g.edges.push_back({int(key >> 32), int(key & 0xffffffff), w});
    std::sort(g.edges.begin(), g.edges.end(), [](const GraphEdge& a, const GraphEdge& b) {
        return std::pair{a.u, a.v} < std::pair{b.u, b.v};
    });
    return g;
}

void write_edge_list(const WeightedGraph& g, std::ostream& out) {
    char buf[80];
    for (const GraphEdge& e : g.edges) {
        std::snprintf(buf, sizeof buf, "%d %d %.17g\n", e.u, e.v, e.w);
        out << buf;
    }
}

} // namespace gwip
