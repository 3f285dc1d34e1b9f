#include "asaw/saw.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace asaw {

namespace {

// DFS over walk extensions in sorted-neighbor order. emit() receives the
// complete walk; the mask at that moment covers v0..v_{L-1}.
template <typename Emit>
void walk_dfs(const Graph& g, std::vector<int>& walk, DepletionMask& mask,
              std::vector<char>& on_walk, int remaining, long long& budget,
              const Emit& emit) {
    if (remaining == 0) {
        emit(walk);
        if (--budget < 0)
            throw std::runtime_error("walk enumeration exceeded max_walks guard");
        return;
    }
    int tail = walk.back();
    mask.push(tail);
    // The step edge (tail, next) must survive the removal of edges incident to
    // v0..v_{k-1}. tail itself is never in that set, so after pushing tail the
    // check reduces to: next not depleted.
    for (int next : g.neighbors(tail)) {
        if (on_walk[next]) continue;
        if (mask.vertex_depleted(next)) continue;
        walk.push_back(next);
        on_walk[next] = 1;
        walk_dfs(g, walk, mask, on_walk, remaining - 1, budget, emit);
        on_walk[next] = 0;
        walk.pop_back();
    }
    mask.pop();
}

template <typename Emit>
void for_each_saw(const Graph& g, int source, int length, long long max_walks,
                  const Emit& emit) {
    if (source < 0 || source >= g.vertex_count())
        throw std::invalid_argument("enumerate_saws: source out of range");
    if (length < 0) throw std::invalid_argument("enumerate_saws: negative length");
    std::vector<int> walk{source};
    std::vector<char> on_walk(g.vertex_count(), 0);
    on_walk[source] = 1;
    DepletionMask mask(g);
    long long budget = max_walks;
    walk_dfs(g, walk, mask, on_walk, length, budget, emit);
}

// Component of `start` in the graph with all edges incident to a prefix vertex
// removed. Early exit once `target` is reached (when target >= 0).
bool depleted_reachable(const Graph& g, const std::vector<char>& prefix,
                        int start, int target, std::vector<int>& scratch,
                        std::vector<char>& visited) {
    scratch.clear();
    scratch.push_back(start);
    visited[start] = 1;
    bool found = (start == target);
    std::size_t head = 0;
    while (head < scratch.size() && !found) {
        int v = scratch[head++];
        if (prefix[v]) continue; // all its edges are gone
        for (int w : g.neighbors(v)) {
            if (visited[w] || prefix[w]) continue;
            visited[w] = 1;
            scratch.push_back(w);
            if (w == target) {
                found = true;
                break;
            }
        }
    }
    for (int v : scratch) visited[v] = 0;
    return found;
}

} // namespace

std::vector<SawWalk> enumerate_saws(const Graph& g, int source, int length,
                                    long long max_walks) {
    std::vector<SawWalk> walks;
    for_each_saw(g, source, length, max_walks,
                 [&](const std::vector<int>& w) { walks.push_back({w}); });
    return walks;
}

WalkClassCounts classify_walks(const Graph& g, int source, int target,
                               long long max_walks) {
    if (target < 0 || target >= g.vertex_count())
        throw std::invalid_argument("classify_walks: target out of range");
    if (source == target)
        throw std::domain_error("classify_walks: source and target must differ");
    WalkClassCounts counts;
    counts.source = source;
    counts.target = target;
    counts.dist = distance(g, source, target);
    std::vector<char> prefix(g.vertex_count(), 0);
    std::vector<char> visited(g.vertex_count(), 0);
    std::vector<int> scratch;
    for_each_saw(g, source, counts.dist, max_walks, [&](const std::vector<int>& w) {
        int endpoint = w.back();
        if (endpoint == target) {
            counts.y_count++;
            return;
        }
        // deplete edges incident to v0..v_{d-1}
        for (std::size_t i = 0; i + 1 < w.size(); ++i) prefix[w[i]] = 1;
        bool connected = depleted_reachable(g, prefix, endpoint, target, scratch, visited);
        for (std::size_t i = 0; i + 1 < w.size(); ++i) prefix[w[i]] = 0;
        if (connected)
            counts.x_count++;
        else
            counts.xbar_count++;
    });
    return counts;
}

long long max_walk_count(const Graph& g, int d, long long max_walks) {
    if (d < 1) throw std::invalid_argument("max_walk_count: d must be >= 1");
    long long best = 0;
    int n = g.vertex_count();
    std::vector<char> prefix(n, 0);
    std::vector<char> visited(n, 0);
    std::vector<int> scratch;
    std::vector<long long> w_prime(n, 0);
    for (int v = 0; v < n; ++v) {
        auto dist = bfs_distances(g, v);
        bool any = false;
        for (int w = 0; w < n; ++w) any = any || (dist[w] == d);
        if (!any) continue;
        // amortized over all targets at distance d: enumerate walks from v once
        // and mark each endpoint's depleted component
        std::fill(w_prime.begin(), w_prime.end(), 0);
        for_each_saw(g, v, d, max_walks, [&](const std::vector<int>& walk) {
            int endpoint = walk.back();
            for (std::size_t i = 0; i + 1 < walk.size(); ++i) prefix[walk[i]] = 1;
            scratch.clear();
            scratch.push_back(endpoint);
            visited[endpoint] = 1;
            std::size_t head = 0;
            while (head < scratch.size()) {
                int a = scratch[head++];
                if (prefix[a]) continue;
                for (int b : g.neighbors(a)) {
                    if (visited[b] || prefix[b]) continue;
                    visited[b] = 1;
                    scratch.push_back(b);
                }
            }
            for (int u : scratch)
                if (dist[u] == d) w_prime[u]++;
            for (int u : scratch) visited[u] = 0;
            for (std::size_t i = 0; i + 1 < walk.size(); ++i) prefix[walk[i]] = 0;
        });
        for (int w = 0; w < n; ++w)
            if (dist[w] == d) best = std::max(best, w_prime[w]);
    }
    return best;
}

WalkCensus build_census(const Graph& g, int max_depth, long long max_walks) {
    int diam = diameter(g);
    int depth = max_depth < 0 ? diam : std::min(max_depth, diam);
    WalkCensus census;
    census.degree_bound = g.degree_bound();
    census.complete = depth >= diam;
    census.rows.reserve(depth + 1);
    census.rows.push_back({0, 1, 1}); // the zero-step walk [v] reaches v itself
    for (int d = 1; d <= depth; ++d)
        census.rows.push_back({d, max_walk_count(g, d, max_walks),
                               static_cast<long long>(max_sphere_size(g, d))});
    return census;
}

void write_census_csv(const WalkCensus& census, std::ostream& out) {
    out << "d,script_W,script_S\n";
    for (const auto& row : census.rows)
        out << row.d << "," << row.script_w << "," << row.script_s << "\n";
}

WalkCensus read_census_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "d,script_W,script_S")
        throw std::runtime_error("census csv: bad header");
    WalkCensus census;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        CensusRow r;
        if (!(row >> r.d >> r.script_w >> r.script_s))
            throw std::runtime_error("census csv: bad row '" + line + "'");
        if (r.d != static_cast<int>(census.rows.size()))
            throw std::runtime_error("census csv: rows must cover d = 0,1,2,...");
        census.rows.push_back(r);
    }
    if (census.rows.empty()) throw std::runtime_error("census csv: no rows");
    // degree bound and completeness are not represented in the CSV; callers
    // loading a census must supply tail assumptions explicitly.
    census.complete = true;
    return census;
}

WalkCensus load_census_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    return read_census_csv(in);
}

} // namespace asaw
