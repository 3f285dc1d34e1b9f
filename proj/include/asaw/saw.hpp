#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "asaw/graph.hpp"

namespace asaw {

/// A self-avoiding walk: distinct vertices, consecutive ones adjacent, and
/// every step taken over an edge that survives depletion of the earlier
/// prefix (on a simple graph the last condition is implied, but the mask is
/// kept literal because the resolvent expansion sums over exactly these walks).
struct SawWalk {
    std::vector<int> vertices;
    int length() const { return static_cast<int>(vertices.size()) - 1; }
};

/// Incremental record of edges removed while a walk is extended: after the
/// prefix [v0..vi], every edge incident to v0..v_{i-1} is gone. Stored as a
/// depleted-vertex flag per vertex, which represents the same edge set.
class DepletionMask {
public:
    explicit DepletionMask(const Graph& g) : depleted_(g.vertex_count(), 0) {}

    void push(int v) { depleted_[v] = 1; order_.push_back(v); }
    void pop() { depleted_[order_.back()] = 0; order_.pop_back(); }

    bool vertex_depleted(int v) const { return depleted_[v] != 0; }
    bool edge_removed(int u, int v) const { return depleted_[u] || depleted_[v]; }
    const std::vector<int>& depleted_order() const { return order_; }

private:
    std::vector<char> depleted_;
    std::vector<int> order_;
};

/// Guard against runaway enumeration on large or dense inputs.
inline constexpr long long kDefaultWalkGuard = 10'000'000;

/// All depletion-consistent SAWs of the given length from source, walks in
/// lexicographic order of vertex sequences. length 0 yields [[source]].
std::vector<SawWalk> enumerate_saws(const Graph& g, int source, int length,
                                    long long max_walks = kDefaultWalkGuard);

/// Per-pair walk-class tallies at walk length d = distance(source, target).
struct WalkClassCounts {
    long long y_count = 0;    // walks ending at target
    long long x_count = 0;    // endpoint still connected to target after depletion
    long long xbar_count = 0; // endpoint cut off from target (contributes zero)
    int source = 0;
    int target = 0;
    int dist = 0;
    long long w_prime_count() const { return y_count + x_count; }
    long long total() const { return y_count + x_count + xbar_count; }
};

WalkClassCounts classify_walks(const Graph& g, int source, int target,
                               long long max_walks = kDefaultWalkGuard);

/// Largest |W'(v,w)| over ordered pairs at distance d; 0 when no pair exists.
/// Scans pairs with a per-source amortized connectivity pass, which doubles as
/// an independent route against per-pair classify_walks.
long long max_walk_count(const Graph& g, int d,
                         long long max_walks = kDefaultWalkGuard);

/// Walk census per distance, the input table of the localization criterion.
struct CensusRow {
    int d = 0;
    long long script_w = 0; // max walk count at distance d
    long long script_s = 0; // max sphere size at radius d
};

struct WalkCensus {
    std::vector<CensusRow> rows; // rows[k].d == k
    int degree_bound = 0;
    bool complete = false; // true when rows reach the graph diameter
};

/// Census for d = 0..max_depth (default: up to the diameter, complete).
WalkCensus build_census(const Graph& g, int max_depth = -1,
                        long long max_walks = kDefaultWalkGuard);

// CSV schema: header "d,script_W,script_S", one row per distance.
void write_census_csv(const WalkCensus& census, std::ostream& out);
WalkCensus read_census_csv(std::istream& in);
WalkCensus load_census_csv(const std::string& path);

} // namespace asaw
