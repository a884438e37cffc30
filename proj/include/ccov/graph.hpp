#pragma once

// Causal diagrams: directed acyclic graphs over named nodes, with path
// enumeration, collider tests, d-separation, and backdoor-blocking queries.
// Graphs are immutable once constructed; all queries are pure functions and
// safe to run concurrently.

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ccov {

class CausalDag {
  public:
    CausalDag(std::set<std::string> nodes, std::set<std::pair<std::string, std::string>> edges) {
        for (const auto& [tail, head] : edges) {
            nodes.insert(tail);
            nodes.insert(head);
            if (tail == head)
                throw std::invalid_argument("CausalDag: self-edge on node '" + tail + "'");
        }
        names_.assign(nodes.begin(), nodes.end());
        for (int i = 0; i < static_cast<int>(names_.size()); ++i) index_[names_[i]] = i;
        parents_.resize(names_.size());
        children_.resize(names_.size());
        for (const auto& [tail, head] : edges) {
            const int t = index_.at(tail), h = index_.at(head);
            children_[t].push_back(h);
            parents_[h].push_back(t);
            edges_.emplace_back(t, h);
        }
        for (auto& v : parents_) std::sort(v.begin(), v.end());
        for (auto& v : children_) std::sort(v.begin(), v.end());
        std::sort(edges_.begin(), edges_.end());
        verify_acyclic();
    }

    std::size_t node_count() const { return names_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    const std::vector<std::string>& nodes() const { return names_; }

    std::set<std::pair<std::string, std::string>> edges() const {
        std::set<std::pair<std::string, std::string>> out;
        for (const auto& [t, h] : edges_) out.emplace(names_[t], names_[h]);
        return out;
    }

    bool has_node(const std::string& name) const { return index_.count(name) != 0; }

    bool has_edge(const std::string& tail, const std::string& head) const {
        if (!has_node(tail) || !has_node(head)) return false;
        return std::binary_search(edges_.begin(), edges_.end(),
                                  std::make_pair(index_.at(tail), index_.at(head)));
    }

    int index_of(const std::string& name) const {
        const auto it = index_.find(name);
        if (it == index_.end())
            throw std::invalid_argument("CausalDag: unknown node '" + name + "'");
        return it->second;
    }

    const std::string& name_of(int i) const { return names_.at(i); }
    const std::vector<int>& parents_of(int i) const { return parents_.at(i); }
    const std::vector<int>& children_of(int i) const { return children_.at(i); }

    std::vector<int> topological_order() const {
        std::vector<int> indegree(names_.size());
        for (std::size_t i = 0; i < names_.size(); ++i)
            indegree[i] = static_cast<int>(parents_[i].size());
        std::deque<int> ready;
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (indegree[i] == 0) ready.push_back(static_cast<int>(i));
        std::vector<int> order;
        while (!ready.empty()) {
            const int v = ready.front();
            ready.pop_front();
            order.push_back(v);
            for (int c : children_[v])
                if (--indegree[c] == 0) ready.push_back(c);
        }
        return order;
    }

  private:
    void verify_acyclic() const {
        if (topological_order().size() != names_.size())
            throw std::invalid_argument("CausalDag: graph contains a directed cycle");
    }

    std::vector<std::string> names_;  // sorted
    std::map<std::string, int> index_;
    std::vector<std::vector<int>> parents_, children_;
    std::vector<std::pair<int, int>> edges_;
};

// One traversal step along a path. `forward` means the graph edge points
// from -> to; `backward` means the edge is to -> from.
struct PathStep {
    std::string from, to;
    enum class Orientation { forward, backward } orientation;

    bool operator==(const PathStep&) const = default;
};

struct Path {
    std::vector<PathStep> steps;

    bool operator==(const Path&) const = default;

    std::vector<std::string> node_sequence() const {
        std::vector<std::string> seq;
        if (steps.empty()) return seq;
        seq.push_back(steps.front().from);
        for (const auto& s : steps) seq.push_back(s.to);
        return seq;
    }

    Path reversed() const {
        Path r;
        for (auto it = steps.rbegin(); it != steps.rend(); ++it)
            r.steps.push_back({it->to, it->from,
                               it->orientation == PathStep::Orientation::forward
                                   ? PathStep::Orientation::backward
                                   : PathStep::Orientation::forward});
        return r;
    }

    // Arrow-diagram rendering, e.g. "X <- Z -> Y".
    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < steps.size(); ++i) {
            if (i == 0) out += steps[i].from;
            out += steps[i].orientation == PathStep::Orientation::forward ? " -> " : " <- ";
            out += steps[i].to;
        }
        return out;
    }
};

inline constexpr std::size_t kMaxEnumeratedPaths = 100000;

// All simple paths between a and b, traversing edges in either direction.
// Ordered lexicographically by node-name sequence.
inline std::vector<Path> enumerate_paths(const CausalDag& g, const std::string& a,
                                         const std::string& b) {
    const int start = g.index_of(a);
    const int goal = g.index_of(b);
    if (start == goal) throw std::invalid_argument("enumerate_paths: endpoints must differ");

    // Neighbor lists merged from parents and children, sorted by node name.
    // Node indices are assigned in name order, so index order is name order.
    const std::size_t n = g.node_count();
    std::vector<std::vector<std::pair<int, bool>>> nbrs(n);  // (node, edge-is-outgoing)
    for (std::size_t v = 0; v < n; ++v) {
        for (int c : g.children_of(static_cast<int>(v))) nbrs[v].emplace_back(c, true);
        for (int p : g.parents_of(static_cast<int>(v))) nbrs[v].emplace_back(p, false);
        std::sort(nbrs[v].begin(), nbrs[v].end());
    }

    std::vector<Path> out;
    std::vector<char> on_path(n, 0);
    Path current;
    on_path[start] = 1;

    // Iterative DFS so deep graphs cannot overflow the stack.
    struct Frame {
        int node;
        std::size_t next = 0;
    };
    std::vector<Frame> stack{{start}};
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.node == goal) {
            if (out.size() >= kMaxEnumeratedPaths)
                throw std::runtime_error("enumerate_paths: more than " +
                                         std::to_string(kMaxEnumeratedPaths) + " paths");
            out.push_back(current);
            on_path[f.node] = 0;
            stack.pop_back();
            if (!current.steps.empty()) current.steps.pop_back();
            continue;
        }
        if (f.next < nbrs[f.node].size()) {
            const auto [nxt, outgoing] = nbrs[f.node][f.next++];
            if (on_path[nxt]) continue;
            current.steps.push_back({g.name_of(f.node), g.name_of(nxt),
                                     outgoing ? PathStep::Orientation::forward
                                              : PathStep::Orientation::backward});
            on_path[nxt] = 1;
            stack.push_back({nxt});
        } else {
            on_path[f.node] = 0;
            stack.pop_back();
            if (!current.steps.empty()) current.steps.pop_back();
        }
    }
    std::sort(out.begin(), out.end(), [](const Path& p, const Path& q) {
        return p.node_sequence() < q.node_sequence();
    });
    return out;
}

// True iff both steps adjacent to n point into n.
inline bool is_collider(const Path& p, const std::string& n) {
    for (std::size_t i = 0; i + 1 < p.steps.size(); ++i) {
        if (p.steps[i].to == n) {
            return p.steps[i].orientation == PathStep::Orientation::forward &&
                   p.steps[i + 1].orientation == PathStep::Orientation::backward;
        }
    }
    throw std::invalid_argument("is_collider: '" + n + "' is not an interior node of the path");
}

// Backdoor paths from x to y: collider-free paths whose first step enters x.
inline std::vector<Path> backdoor_paths(const CausalDag& g, const std::string& x,
                                        const std::string& y) {
    std::vector<Path> out;
    for (auto& p : enumerate_paths(g, x, y)) {
        if (p.steps.front().orientation != PathStep::Orientation::backward) continue;
        bool collider_free = true;
        for (std::size_t i = 0; i + 1 < p.steps.size() && collider_free; ++i)
            if (p.steps[i].orientation == PathStep::Orientation::forward &&
                p.steps[i + 1].orientation == PathStep::Orientation::backward)
                collider_free = false;
        if (collider_free) out.push_back(std::move(p));
    }
    return out;
}

namespace detail {

// Reachability over (node, approach-direction) states. Blocking uses the
// standard conditional semantics: a non-collider blocks when it is in cond,
// a collider passes only when it or one of its descendants is in cond.
inline bool dsep_reachable(const CausalDag& g, const std::vector<int>& sources,
                           const std::vector<char>& is_target, const std::vector<char>& in_cond) {
    const std::size_t n = g.node_count();

    // cond together with its ancestors
    std::vector<char> anc_of_cond(n, 0);
    {
        std::deque<int> queue;
        for (std::size_t v = 0; v < n; ++v)
            if (in_cond[v]) {
                anc_of_cond[v] = 1;
                queue.push_back(static_cast<int>(v));
            }
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop_front();
            for (int p : g.parents_of(v))
                if (!anc_of_cond[p]) {
                    anc_of_cond[p] = 1;
                    queue.push_back(p);
                }
        }
    }

    enum : int { kUp = 0, kDown = 1 };  // up: arrived from a child; down: from a parent
    std::vector<std::array<char, 2>> visited(n, {0, 0});
    std::deque<std::pair<int, int>> queue;
    for (int s : sources) {
        if (is_target[s]) return true;
        if (!visited[s][kUp]) {
            visited[s][kUp] = 1;
            queue.emplace_back(s, kUp);
        }
    }
    auto visit = [&](int v, int dir) {
        if (visited[v][dir]) return false;
        visited[v][dir] = 1;
        queue.emplace_back(v, dir);
        return is_target[v] != 0;
    };
    while (!queue.empty()) {
        const auto [v, dir] = queue.front();
        queue.pop_front();
        if (dir == kUp) {
            if (in_cond[v]) continue;
            for (int p : g.parents_of(v))
                if (visit(p, kUp)) return true;
            for (int c : g.children_of(v))
                if (visit(c, kDown)) return true;
        } else {
            if (!in_cond[v])
                for (int c : g.children_of(v))
                    if (visit(c, kDown)) return true;
            if (anc_of_cond[v])
                for (int p : g.parents_of(v))
                    if (visit(p, kUp)) return true;
        }
    }
    return false;
}

inline std::vector<int> to_indices(const CausalDag& g, const std::set<std::string>& names) {
    std::vector<int> out;
    out.reserve(names.size());
    for (const auto& name : names) out.push_back(g.index_of(name));
    return out;
}

}  // namespace detail

// True iff every path between a and b is blocked by cond.
inline bool d_separated(const CausalDag& g, const std::set<std::string>& a,
                        const std::set<std::string>& b, const std::set<std::string>& cond) {
    for (const auto& v : a)
        if (b.count(v) || cond.count(v))
            throw std::invalid_argument("d_separated: node sets overlap at '" + v + "'");
    for (const auto& v : b)
        if (cond.count(v))
            throw std::invalid_argument("d_separated: node sets overlap at '" + v + "'");

    const std::vector<int> sources = detail::to_indices(g, a);
    std::vector<char> is_target(g.node_count(), 0), in_cond(g.node_count(), 0);
    for (int i : detail::to_indices(g, b)) is_target[i] = 1;
    for (int i : detail::to_indices(g, cond)) in_cond[i] = 1;
    return !detail::dsep_reachable(g, sources, is_target, in_cond);
}

// True iff cond blocks every backdoor path from x to y. Implemented by
// removing x's outgoing edges (every remaining x-y path starts with an
// arrow into x) and testing d-separation in the surgered graph.
inline bool backdoor_blocked(const CausalDag& g, const std::string& x, const std::string& y,
                             const std::set<std::string>& cond) {
    if (cond.count(x) || cond.count(y))
        throw std::invalid_argument("backdoor_blocked: exposure/outcome may not be conditioned on");
    const int xi = g.index_of(x);
    (void)g.index_of(y);

    std::set<std::string> nodes(g.nodes().begin(), g.nodes().end());
    std::set<std::pair<std::string, std::string>> edges;
    for (const auto& e : g.edges())
        if (e.first != g.name_of(xi)) edges.insert(e);
    const CausalDag surgered(std::move(nodes), std::move(edges));
    return d_separated(surgered, {x}, {y}, cond);
}

// ---------------------------------------------------------------------------
// Text format: one `A -> B` per line, optional `node C` lines for isolated
// nodes, `#` comments, blank lines ignored.
// ---------------------------------------------------------------------------

inline CausalDag parse_graph(std::istream& in) {
    std::set<std::string> nodes;
    std::set<std::pair<std::string, std::string>> edges;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "node") {
            std::string name;
            if (!(ls >> name))
                throw std::invalid_argument("graph parse error at line " +
                                            std::to_string(line_no) + ": 'node' needs a name");
            nodes.insert(name);
            continue;
        }
        std::string arrow, head;
        if (!(ls >> arrow >> head) || arrow != "->")
            throw std::invalid_argument("graph parse error at line " + std::to_string(line_no) +
                                        ": expected 'TAIL -> HEAD'");
        std::string extra;
        if (ls >> extra)
            throw std::invalid_argument("graph parse error at line " + std::to_string(line_no) +
                                        ": trailing token '" + extra + "'");
        edges.emplace(first, head);
    }
    return CausalDag(std::move(nodes), std::move(edges));
}

inline CausalDag parse_graph_text(const std::string& text) {
    std::istringstream in(text);
    return parse_graph(in);
}

inline std::string format_graph(const CausalDag& g) {
    std::string out;
    std::set<std::string> isolated(g.nodes().begin(), g.nodes().end());
    for (const auto& [tail, head] : g.edges()) {
        out += tail + " -> " + head + "\n";
        isolated.erase(tail);
        isolated.erase(head);
    }
    for (const auto& name : isolated) out += "node " + name + "\n";
    return out;
}

}  // namespace ccov
