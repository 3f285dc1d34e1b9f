#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace asaw {

/// Finite simple connected undirected graph with a uniform degree bound.
///
/// Vertices are dense 0-indexed integers. Adjacency lists are kept sorted so
/// that every traversal (BFS, walk enumeration) is deterministic. The graph is
/// immutable after construction and safe to share across threads.
class Graph {
public:
    /// Builds from an edge list and validates: no self-loops, no parallel
    /// edges, connected. Throws std::invalid_argument on violation.
    /// A single-vertex graph (no edges) is accepted as a degenerate case for
    /// internal testing; no family builder produces it.
    Graph(int vertex_count, const std::vector<std::pair<int, int>>& edges);

    int vertex_count() const { return static_cast<int>(adjacency_.size()); }
    int edge_count() const { return edge_count_; }
    /// The uniform degree bound N (equals the maximum vertex degree).
    int degree_bound() const { return degree_bound_; }
    int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }

    std::span<const int> neighbors(int v) const {
        return {adjacency_[v].data(), adjacency_[v].size()};
    }
    bool adjacent(int v, int w) const;

    /// Edges as (u, v) pairs with u < v, sorted.
    std::vector<std::pair<int, int>> edges() const;

private:
    std::vector<std::vector<int>> adjacency_;
    int degree_bound_ = 0;
    int edge_count_ = 0;
};

enum class GraphFamily { path, cycle, grid2d, regular_tree, cycle_shortcut };

Graph build_path(int n);               // n >= 3
Graph build_cycle(int n);              // n >= 3
Graph build_grid2d(int side);          // side >= 2, id = row*side + col
// Depth-truncated rooted tree: root has b children, internal vertices b+1
// neighbors, leaves at the given depth. A finite Bethe-lattice fragment.
Graph build_regular_tree(int branching, int depth); // b >= 2, depth >= 1
// Cycle plus m shortcut chords drawn uniformly over non-adjacent pairs,
// without replacement, deterministically from seed.
Graph build_cycle_shortcut(int n, int shortcuts, std::uint64_t seed);

Graph build_family(GraphFamily family, const std::vector<long long>& params,
                   std::uint64_t seed = 0);

/// Parses the inline graph grammar "family:p1,p2[@seed]",
/// e.g. "cycle_shortcut:500,50@7". Throws std::invalid_argument on bad input.
Graph parse_graph_spec(const std::string& spec);

/// BFS distances from source to every vertex.
std::vector<int> bfs_distances(const Graph& g, int source);

int distance(const Graph& g, int v, int w);

/// Vertices at exactly distance d from v, ascending. Empty beyond eccentricity.
std::vector<int> sphere(const Graph& g, int v, int d);

/// Sphere and ball sizes around one origin, up to its eccentricity.
struct SphereTable {
    int origin = 0;
    std::vector<int> sizes;      // sizes[d] = |S(origin, d)|
    std::vector<int> ball_sizes; // ball_sizes[d] = |B(origin, d)|
};
SphereTable sphere_table(const Graph& g, int origin);

/// Largest sphere of radius d over all origins; 0 when d exceeds the diameter.
int max_sphere_size(const Graph& g, int d);

/// sup over vertices x and radii d >= 1 (with nonempty sphere) of ln|S(x,d)|/d.
double sup_log_sphere_growth(const Graph& g);

int eccentricity(const Graph& g, int v);
int diameter(const Graph& g);

// Edge-list text format: header "n <vertex_count>", then one "u v" line per
// edge with u < v. The reader revalidates all graph invariants.
void write_edge_list(const Graph& g, std::ostream& out);
Graph read_edge_list(std::istream& in);
void save_edge_list(const Graph& g, const std::string& path);
Graph load_edge_list(const std::string& path);

} // namespace asaw
