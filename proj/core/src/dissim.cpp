#include "ldps/dissim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

#include "ldps/parallel.hpp"

namespace ldps {

namespace {

double euclidean(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

// Union-find over point indices, used for connectivity repair.
struct DisjointSet {
    std::vector<std::size_t> parent;

    explicit DisjointSet(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), std::size_t{0});
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }
};

} // namespace

void NeighborGraph::validate() const {
    for (std::size_t i = 0; i < adjacency.size(); ++i) {
        for (const auto& [j, w] : adjacency[i]) {
            require(j < adjacency.size(), errc::invalid_argument, "neighbor index out of range");
            require(std::isfinite(w) && w > 0.0, errc::invalid_argument,
                    "edge weight must be positive and finite");
            const auto& back = adjacency[j];
            const bool mirrored = std::any_of(back.begin(), back.end(), [&](const auto& e) {
                return e.first == i && e.second == w;
            });
            require(mirrored, errc::invalid_argument,
                    "edge " + std::to_string(i) + "-" + std::to_string(j) + " is not symmetric");
        }
    }
}

DataMatrix min_max_normalize(const DataMatrix& data) {
    data.validate();
    const std::size_t m = data.rows();
    const std::size_t p = data.cols();
    DataMatrix out(m, p);
    for (std::size_t a = 0; a < p; ++a) {
        double lo = data(0, a);
        double hi = data(0, a);
        for (std::size_t i = 1; i < m; ++i) {
            lo = std::min(lo, data(i, a));
            hi = std::max(hi, data(i, a));
        }
        const double range = hi - lo;
        if (range == 0.0) continue;  // constant attribute, mapped to 0
        for (std::size_t i = 0; i < m; ++i) out(i, a) = (data(i, a) - lo) / range;
    }
    return out;
}

DissimilarityMatrix squared_euclidean(const DataMatrix& data, unsigned threads) {
    data.validate();
    const std::size_t m = data.rows();
    std::vector<double> entries(m * m, 0.0);
    parallel_for(m, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto xi = data.row(i);
            for (std::size_t j = 0; j < m; ++j) {
                if (j == i) continue;
                const auto xj = data.row(j);
                double sum = 0.0;
                for (std::size_t a = 0; a < xi.size(); ++a) {
                    const double diff = xi[a] - xj[a];
                    sum += diff * diff;
                }
                entries[i * m + j] = sum;
            }
        }
    });
    // Rounding in `xi[a] - xj[a]` is order-independent, so the i->j and j->i
    // passes land on the same double and symmetry holds exactly.
    return DissimilarityMatrix(m, Measure::squared_euclidean, std::move(entries));
}

NeighborGraph build_tnn_graph(const DataMatrix& data, std::size_t t) {
    data.validate();
    const std::size_t m = data.rows();
    require(t >= 1 && t < m, errc::invalid_neighbor_count,
            "neighbor count must satisfy 1 <= t < m");

    NeighborGraph graph;
    graph.t = t;
    graph.adjacency.resize(m);

    std::vector<std::vector<bool>> linked(m);
    for (auto& row : linked) row.assign(m, false);

    std::vector<std::pair<double, std::size_t>> candidates;
    for (std::size_t i = 0; i < m; ++i) {
        candidates.clear();
        for (std::size_t j = 0; j < m; ++j) {
            if (j != i) candidates.emplace_back(euclidean(data.row(i), data.row(j)), j);
        }
        std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(t),
                          candidates.end());
        for (std::size_t n = 0; n < t; ++n) {
            const auto [w, j] = candidates[n];
            linked[std::min(i, j)][std::max(i, j)] = true;
        }
    }

    DisjointSet components(m);
    auto add_edge = [&](std::size_t i, std::size_t j) {
        const double w = euclidean(data.row(i), data.row(j));
        graph.adjacency[i].emplace_back(static_cast<std::uint32_t>(j), w);
        graph.adjacency[j].emplace_back(static_cast<std::uint32_t>(i), w);
        components.unite(i, j);
    };
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            if (linked[i][j]) add_edge(i, j);
        }
    }

    // Repair: bridge components with the shortest available edge until one
    // component remains, keeping every graph distance finite.
    std::size_t component_count = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (components.find(i) == i) ++component_count;
    }
    while (component_count > 1) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i + 1; j < m; ++j) {
                if (components.find(i) == components.find(j)) continue;
                const double w = euclidean(data.row(i), data.row(j));
                if (w < best) {
                    best = w;
                    bi = i;
                    bj = j;
                }
            }
        }
        add_edge(bi, bj);
        --component_count;
    }

    for (auto& neighbors : graph.adjacency) {
        std::sort(neighbors.begin(), neighbors.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    }
    return graph;
}

DissimilarityMatrix manifold_distance(const NeighborGraph& graph, unsigned threads) {
    const std::size_t m = graph.size();
    require(m >= 1, errc::empty_input, "graph has no vertices");
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> entries(m * m, kInf);

    parallel_for(m, threads, [&](std::size_t begin, std::size_t end) {
        using Item = std::pair<double, std::uint32_t>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> frontier;
        for (std::size_t source = begin; source < end; ++source) {
            double* dist = entries.data() + source * m;
            dist[source] = 0.0;
            frontier.emplace(0.0, static_cast<std::uint32_t>(source));
            while (!frontier.empty()) {
                const auto [d, u] = frontier.top();
                frontier.pop();
                if (d > dist[u]) continue;
                for (const auto& [v, w] : graph.adjacency[u]) {
                    const double candidate = d + w;
                    if (candidate < dist[v]) {
                        dist[v] = candidate;
                        frontier.emplace(candidate, v);
                    }
                }
            }
        }
    });

    for (const double v : entries) {
        require(std::isfinite(v), errc::disconnected_graph,
                "graph is disconnected; manifold distances are undefined");
    }
    // Path sums from the two endpoints can round differently; taking the
    // smaller-index source as authoritative keeps the matrix exactly
    // symmetric.
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) entries[j * m + i] = entries[i * m + j];
    }
    return DissimilarityMatrix(m, Measure::manifold_graph, std::move(entries), graph.t);
}

} // namespace ldps
