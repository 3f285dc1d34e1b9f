#include "asaw/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "asaw/rng.hpp"

namespace asaw {

Graph::Graph(int vertex_count, const std::vector<std::pair<int, int>>& edges) {
    if (vertex_count < 1) throw std::invalid_argument("graph: vertex_count must be positive");
    adjacency_.assign(vertex_count, {});
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count)
            throw std::invalid_argument("graph: edge endpoint out of range");
        if (u == v) throw std::invalid_argument("graph: self-loop");
        std::pair<int, int> key = std::minmax(u, v);
        if (!seen.insert(key).second) throw std::invalid_argument("graph: parallel edge");
        adjacency_[u].push_back(v);
        adjacency_[v].push_back(u);
    }
    edge_count_ = static_cast<int>(seen.size());
    for (auto& nbrs : adjacency_) {
        std::sort(nbrs.begin(), nbrs.end());
        degree_bound_ = std::max(degree_bound_, static_cast<int>(nbrs.size()));
    }
    // connectivity
    std::vector<char> visited(vertex_count, 0);
    std::deque<int> queue{0};
    visited[0] = 1;
    int reached = 1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : adjacency_[v]) {
            if (!visited[w]) {
                visited[w] = 1;
                ++reached;
                queue.push_back(w);
            }
        }
    }
    if (reached != vertex_count) throw std::invalid_argument("graph: not connected");
}

bool Graph::adjacent(int v, int w) const {
    const auto& nbrs = adjacency_[v];
    return std::binary_search(nbrs.begin(), nbrs.end(), w);
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edge_count_);
    for (int v = 0; v < vertex_count(); ++v)
        for (int w : adjacency_[v])
            if (v < w) out.emplace_back(v, w);
    return out;
}

Graph build_path(int n) {
    if (n < 3) throw std::invalid_argument("path: n must be >= 3");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Graph(n, edges);
}

Graph build_cycle(int n) {
    if (n < 3) throw std::invalid_argument("cycle: n must be >= 3");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return Graph(n, edges);
}

Graph build_grid2d(int side) {
    if (side < 2) throw std::invalid_argument("grid2d: side must be >= 2");
    std::vector<std::pair<int, int>> edges;
    auto id = [side](int r, int c) { return r * side + c; };
    for (int r = 0; r < side; ++r) {
        for (int c = 0; c < side; ++c) {
            if (c + 1 < side) edges.emplace_back(id(r, c), id(r, c + 1));
            if (r + 1 < side) edges.emplace_back(id(r, c), id(r + 1, c));
        }
    }
    return Graph(side * side, edges);
}

Graph build_regular_tree(int branching, int depth) {
    if (branching < 2) throw std::invalid_argument("regular_tree: branching must be >= 2");
    if (depth < 1) throw std::invalid_argument("regular_tree: depth must be >= 1");
    std::vector<std::pair<int, int>> edges;
    // breadth-first ids: root 0, then level by level
    std::vector<int> frontier{0};
    int next_id = 1;
    for (int level = 0; level < depth; ++level) {
        std::vector<int> next_frontier;
        for (int parent : frontier) {
            for (int k = 0; k < branching; ++k) {
                edges.emplace_back(parent, next_id);
                next_frontier.push_back(next_id);
                ++next_id;
            }
        }
        frontier = std::move(next_frontier);
    }
    return Graph(next_id, edges);
}

Graph build_cycle_shortcut(int n, int shortcuts, std::uint64_t seed) {
    if (n < 4) throw std::invalid_argument("cycle_shortcut: n must be >= 4");
    if (shortcuts < 0) throw std::invalid_argument("cycle_shortcut: shortcut count must be >= 0");
    long long feasible = static_cast<long long>(n) * (n - 3) / 2;
    if (shortcuts > feasible)
        throw std::invalid_argument(
            "cycle_shortcut: infeasible, more shortcuts than non-adjacent pairs");
    std::vector<std::pair<int, int>> edges;
    std::set<std::pair<int, int>> present;
    for (int i = 0; i < n; ++i) {
        std::pair<int, int> key = std::minmax(i, (i + 1) % n);
        edges.emplace_back(key.first, key.second);
        present.insert(key);
    }
    std::uint64_t attempt = 0;
    int added = 0;
    while (added < shortcuts) {
        int u = static_cast<int>(rng::uniform_index(seed, rng::kStreamShortcut, attempt, 0, n));
        int v = static_cast<int>(rng::uniform_index(seed, rng::kStreamShortcut, attempt, 1, n));
        ++attempt;
        if (u == v) continue;
        std::pair<int, int> key = std::minmax(u, v);
        if (present.count(key)) continue;
        present.insert(key);
        edges.emplace_back(key.first, key.second);
        ++added;
    }
    return Graph(n, edges);
}

Graph build_family(GraphFamily family, const std::vector<long long>& params,
                   std::uint64_t seed) {
    auto need = [&](std::size_t k) {
        if (params.size() != k) throw std::invalid_argument("build_family: wrong parameter count");
    };
    switch (family) {
        case GraphFamily::path: need(1); return build_path(static_cast<int>(params[0]));
        case GraphFamily::cycle: need(1); return build_cycle(static_cast<int>(params[0]));
        case GraphFamily::grid2d: need(1); return build_grid2d(static_cast<int>(params[0]));
        case GraphFamily::regular_tree:
            need(2);
            return build_regular_tree(static_cast<int>(params[0]), static_cast<int>(params[1]));
        case GraphFamily::cycle_shortcut:
            need(2);
            return build_cycle_shortcut(static_cast<int>(params[0]),
                                        static_cast<int>(params[1]), seed);
    }
    throw std::invalid_argument("build_family: unknown family");
}

Graph parse_graph_spec(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("graph spec: expected family:params[@seed]");
    std::string family = spec.substr(0, colon);
    std::string rest = spec.substr(colon + 1);
    std::uint64_t seed = 0;
    if (auto at = rest.find('@'); at != std::string::npos) {
        seed = std::stoull(rest.substr(at + 1));
        rest = rest.substr(0, at);
    }
    std::vector<long long> params;
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw std::invalid_argument("graph spec: empty parameter");
        params.push_back(std::stoll(item));
    }
    if (params.empty()) throw std::invalid_argument("graph spec: missing parameters");
    GraphFamily f;
    if (family == "path") f = GraphFamily::path;
    else if (family == "cycle") f = GraphFamily::cycle;
    else if (family == "grid2d") f = GraphFamily::grid2d;
    else if (family == "regular_tree") f = GraphFamily::regular_tree;
    else if (family == "cycle_shortcut") f = GraphFamily::cycle_shortcut;
    else throw std::invalid_argument("graph spec: unknown family '" + family + "'");
    return build_family(f, params, seed);
}

std::vector<int> bfs_distances(const Graph& g, int source) {
    if (source < 0 || source >= g.vertex_count())
        throw std::invalid_argument("bfs: source out of range");
    std::vector<int> dist(g.vertex_count(), -1);
    std::deque<int> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : g.neighbors(v)) {
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

int distance(const Graph& g, int v, int w) {
    if (w < 0 || w >= g.vertex_count())
        throw std::invalid_argument("distance: vertex out of range");
    return bfs_distances(g, v)[w];
}

std::vector<int> sphere(const Graph& g, int v, int d) {
    if (d < 0) throw std::invalid_argument("sphere: radius must be nonnegative");
    auto dist = bfs_distances(g, v);
    std::vector<int> out;
    for (int w = 0; w < g.vertex_count(); ++w)
        if (dist[w] == d) out.push_back(w);
    return out;
}

SphereTable sphere_table(const Graph& g, int origin) {
    auto dist = bfs_distances(g, origin);
    int ecc = *std::max_element(dist.begin(), dist.end());
    SphereTable table;
    table.origin = origin;
    table.sizes.assign(ecc + 1, 0);
    for (int w = 0; w < g.vertex_count(); ++w) table.sizes[dist[w]]++;
    table.ball_sizes.resize(ecc + 1);
    int acc = 0;
    for (int d = 0; d <= ecc; ++d) {
        acc += table.sizes[d];
        table.ball_sizes[d] = acc;
    }
    return table;
}

int max_sphere_size(const Graph& g, int d) {
    if (d < 0) throw std::invalid_argument("max_sphere_size: radius must be nonnegative");
    if (d == 0) return 1;
    int best = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
        auto dist = bfs_distances(g, v);
        int count = 0;
        for (int x : dist)
            if (x == d) ++count;
        best = std::max(best, count);
    }
    return best;
}

double sup_log_sphere_growth(const Graph& g) {
    double best = 0.0;
    for (int v = 0; v < g.vertex_count(); ++v) {
        auto table = sphere_table(g, v);
        for (int d = 1; d < static_cast<int>(table.sizes.size()); ++d) {
            if (table.sizes[d] >= 1)
                best = std::max(best, std::log(static_cast<double>(table.sizes[d])) / d);
        }
    }
    return best;
}

int eccentricity(const Graph& g, int v) {
    auto dist = bfs_distances(g, v);
    return *std::max_element(dist.begin(), dist.end());
}

int diameter(const Graph& g) {
    int best = 0;
    for (int v = 0; v < g.vertex_count(); ++v) best = std::max(best, eccentricity(g, v));
    return best;
}

void write_edge_list(const Graph& g, std::ostream& out) {
    out << "n " << g.vertex_count() << "\n";
    for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
}

Graph read_edge_list(std::istream& in) {
    std::string tag;
    int n = 0;
    if (!(in >> tag >> n) || tag != "n")
        throw std::runtime_error("edge list: expected header 'n <vertex_count>'");
    std::vector<std::pair<int, int>> edges;
    int u, v;
    while (in >> u >> v) {
        if (u >= v) throw std::runtime_error("edge list: edges must satisfy u < v");
        edges.emplace_back(u, v);
    }
    return Graph(n, edges); // constructor revalidates simplicity and connectivity
}

void save_edge_list(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_edge_list(g, out);
}

Graph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    return read_edge_list(in);
}

} // namespace asaw
