#include "asaw/anderson.hpp"

#include <set>
#include <stdexcept>

#include "asaw/rng.hpp"

namespace asaw {

DisorderModel DisorderModel::uniform_unit(double lambda) {
    if (lambda <= 0.0) throw std::invalid_argument("disorder model: lambda must be positive");
    return DisorderModel{DensityKind::uniform_unit, 1.0, 1.0, lambda};
}

DisorderRealization sample_disorder(const DisorderModel& model, const Graph& g,
                                    std::uint64_t seed, std::uint64_t draw_index) {
    (void)model; // uniform_unit is the only density
    DisorderRealization r;
    r.seed = seed;
    r.draw_index = draw_index;
    r.omega.resize(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v)
        r.omega[v] = rng::u01(seed, rng::kStreamDisorder, draw_index, static_cast<std::uint64_t>(v));
    return r;
}

ComplexEnergy::ComplexEnergy(double e, double eta) : real(e), imag(eta) {
    if (eta == 0.0) throw std::domain_error("complex energy: eta must be nonzero");
}

AndersonOperator::AndersonOperator(const Graph& g, DisorderRealization disorder,
                                   double lambda)
    : graph_(&g), disorder_(std::move(disorder)), lambda_(lambda) {
    if (lambda <= 0.0) throw std::invalid_argument("anderson operator: lambda must be positive");
    if (static_cast<int>(disorder_.omega.size()) != g.vertex_count())
        throw std::invalid_argument("anderson operator: disorder size mismatch");
}

AndersonOperator AndersonOperator::depleted(const std::vector<int>& prefix) const {
    std::set<int> unique(prefix.begin(), prefix.end());
    if (unique.size() != prefix.size())
        throw std::domain_error("depleted: prefix vertices must be distinct");
    for (int v : prefix)
        if (v < 0 || v >= graph_->vertex_count())
            throw std::invalid_argument("depleted: prefix vertex out of range");
    AndersonOperator out = *this;
    out.prefix_ = prefix;
    return out;
}

Eigen::MatrixXd AndersonOperator::matrix() const {
    int n = graph_->vertex_count();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    std::vector<char> depleted(n, 0);
    for (int v : prefix_) depleted[v] = 1;
    for (int v = 0; v < n; ++v) {
        h(v, v) = lambda_ * disorder_.omega[v];
        if (depleted[v]) continue;
        for (int w : graph_->neighbors(v))
            if (!depleted[w]) h(v, w) = -1.0;
    }
    return h;
}

namespace {

Eigen::MatrixXcd shifted(const Eigen::MatrixXd& h, std::complex<double> z) {
    Eigen::MatrixXcd m = h.cast<std::complex<double>>();
    m.diagonal().array() -= z;
    return m;
}

} // namespace

std::complex<double> greens_function(const AndersonOperator& op, int x, int y,
                                     ComplexEnergy z) {
    int n = op.graph().vertex_count();
    if (x < 0 || x >= n || y < 0 || y >= n)
        throw std::invalid_argument("greens_function: vertex out of range");
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted(op.matrix(), z.value()));
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
    rhs(y) = 1.0;
    Eigen::VectorXcd u = lu.solve(rhs);
    std::complex<double> g = u(x);
    if (!std::isfinite(g.real()) || !std::isfinite(g.imag()))
        throw std::runtime_error("greens_function: solve produced non-finite value");
    return g;
}

Resolvent::Resolvent(const AndersonOperator& op, ComplexEnergy z)
    : lu_(shifted(op.matrix(), z.value())),
      n_(op.graph().vertex_count()) {
    columns_.resize(n_);
    have_column_.assign(n_, 0);
}

std::complex<double> Resolvent::entry(int x, int y) {
    if (x < 0 || x >= n_ || y < 0 || y >= n_)
        throw std::invalid_argument("resolvent: vertex out of range");
    if (!have_column_[y]) {
        Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n_);
        rhs(y) = 1.0;
        columns_[y] = lu_.solve(rhs);
        have_column_[y] = 1;
    }
    return columns_[y](x);
}

namespace {

// Walk-sum recursion. At each walk prefix [v0..vk] one factorization of
// (H_[v0..vk] - z) serves every extension: diagonal entries for interior
// steps, or the whole column of y when the next step completes the walk.
// Walks move only over edges surviving in the operator's own (possibly
// pre-depleted) hopping term, so the identity also holds for depleted inputs.
struct SawSumContext {
    const Graph* g;
    Eigen::MatrixXcd work; // mutated in place by depletion push/pop
    int target;
    int final_length;
    std::complex<double> total{0.0, 0.0};
    std::vector<char> on_walk;
    std::vector<char> pre_depleted; // the operator's own prefix

    bool step_allowed(int from, int to) const {
        return !on_walk[to] && !pre_depleted[from] && !pre_depleted[to];
    }

    // Zeroes the hopping entries incident to v against non-depleted vertices,
    // returning the undo list.
    std::vector<std::pair<int, double>> push_depletion(int v) {
        std::vector<std::pair<int, double>> undo;
        for (int w : g->neighbors(v)) {
            if (work(v, w) != std::complex<double>(0.0, 0.0)) {
                undo.emplace_back(w, work(v, w).real());
                work(v, w) = 0.0;
                work(w, v) = 0.0;
            }
        }
        return undo;
    }

    void pop_depletion(int v, const std::vector<std::pair<int, double>>& undo) {
        for (auto [w, val] : undo) {
            work(v, w) = val;
            work(w, v) = val;
        }
    }

    void recurse(int tail, int steps_taken, std::complex<double> partial) {
        // partial already contains the diagonal terms for v0..v_{steps_taken};
        // deplete tail and factor H_[v0..v_k] - z for the children.
        auto undo = push_depletion(tail);
        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(work);
        if (steps_taken + 1 == final_length) {
            // next step completes the walk: one solve for the target column
            Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(work.rows());
            rhs(target) = 1.0;
            Eigen::VectorXcd column = lu.solve(rhs);
            for (int next : g->neighbors(tail)) {
                if (!step_allowed(tail, next)) continue;
                total += partial * column(next);
            }
        } else {
            for (int next : g->neighbors(tail)) {
                if (!step_allowed(tail, next)) continue;
                Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(work.rows());
                rhs(next) = 1.0;
                std::complex<double> diag = lu.solve(rhs)(next);
                on_walk[next] = 1;
                recurse(next, steps_taken + 1, partial * diag);
                on_walk[next] = 0;
            }
        }
        pop_depletion(tail, undo);
    }
};

// BFS distance in the hopping graph with all edges at prefix vertices removed;
// -1 when unreachable.
int depleted_distance(const Graph& g, const std::vector<char>& depleted, int x, int y) {
    std::vector<int> dist(g.vertex_count(), -1);
    std::vector<int> queue{x};
    dist[x] = 0;
    std::size_t head = 0;
    while (head < queue.size()) {
        int v = queue[head++];
        if (v == y) return dist[v];
        if (depleted[v]) continue;
        for (int w : g.neighbors(v)) {
            if (dist[w] >= 0 || depleted[w]) continue;
            dist[w] = dist[v] + 1;
            queue.push_back(w);
        }
    }
    return dist[y];
}

} // namespace

std::complex<double> saw_representation(const AndersonOperator& op, int x, int y,
                                        ComplexEnergy z) {
    int n = op.graph().vertex_count();
    if (x < 0 || x >= n || y < 0 || y >= n)
        throw std::invalid_argument("saw_representation: vertex out of range");
    if (x == y)
        throw std::domain_error("saw_representation: stated for distinct vertices");

    SawSumContext ctx;
    ctx.g = &op.graph();
    ctx.pre_depleted.assign(n, 0);
    for (int v : op.depleted_prefix()) ctx.pre_depleted[v] = 1;
    int d = depleted_distance(op.graph(), ctx.pre_depleted, x, y);
    if (d < 0) return {0.0, 0.0}; // x and y sit in different blocks

    ctx.work = shifted(op.matrix(), z.value());
    ctx.target = y;
    ctx.final_length = d;
    ctx.on_walk.assign(n, 0);
    ctx.on_walk[x] = 1;

    // first diagonal term uses the input operator itself
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(ctx.work);
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
    rhs(x) = 1.0;
    std::complex<double> first = lu.solve(rhs)(x);

    ctx.recurse(x, 0, first);
    return ctx.total;
}

} // namespace asaw
