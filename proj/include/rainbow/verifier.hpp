#ifndef RAINBOW_VERIFIER_HPP
#define RAINBOW_VERIFIER_HPP

#include <rainbow/core.hpp>
#include <rainbow/vertex_set.hpp>

#include <algorithm>
#include <atomic>
#include <climits>
#include <optional>
#include <thread>

namespace rainbow {

enum class PackingMode { decision, maximize };

inline const char * to_string(PackingMode m) { return m == PackingMode::decision ? "decision" : "maximize"; }

/// One u-v question. In decision mode the search stops once `target`
/// disjoint paths are found; max_len = 0 means "num_colors" (longer rainbow
/// paths cannot exist).
struct PairQuery {
    Vertex u = 0;
    Vertex v = 0;
    PackingMode mode = PackingMode::maximize;
    int target = 0;
    int max_len = 0;
};

/// Every rainbow u-v path with at most max_len edges, each once, oriented
/// u -> v, in lexicographic vertex order.
inline std::vector<Path> enumerate_rainbow_paths(const Coloring & c, Vertex u, Vertex v, int max_len)
{
    const auto & spec = c.spec();
    spec.check(u);
    spec.check(v);
    if (u == v)
        throw std::invalid_argument("enumerate_rainbow_paths: endpoints coincide");

    std::vector<Path> out;
    max_len = std::min(max_len, c.num_colors());
    if (max_len < 1)
        return out;

    const int n = spec.num_vertices();
    std::vector<char> on_path(n, 0);
    Path path{u};
    on_path[u] = 1;

    // Neighbours are visited in increasing id order, and v only ever ends a
    // path, so emission order is lexicographic.
    auto extend = [&](auto && self, Vertex x, std::uint64_t used) -> void {
        const int depth = static_cast<int>(path.size()) - 1;
        const int px = spec.part(x);
        for (Vertex y = 0; y < n; ++y) {
            if (on_path[y] || spec.part(y) == px)
                continue;
            std::uint64_t bit = std::uint64_t{1} << (c.raw(x, y) - 1);
            if (used & bit)
                continue;
            if (y == v) {
                path.push_back(v);
                out.push_back(path);
                path.pop_back();
                continue;
            }
            // An interior vertex needs at least one more edge to reach v.
            if (depth + 2 > max_len)
                continue;
            on_path[y] = 1;
            path.push_back(y);
            self(self, y, used | bit);
            path.pop_back();
            on_path[y] = 0;
        }
    };
    extend(extend, u, 0);
    return out;
}

namespace detail {

    /// Exact maximum set packing of path interiors by branch and bound.
    /// Branches on the lowest-id interior vertex shared by two or more
    /// remaining candidates: either one of the paths through it is taken, or
    /// none is.
    class PathPacker {
      public:
        PathPacker(const std::vector<VertexSet> & interiors, const std::vector<int> & sizes, int capacity, int target)
            : interiors_(interiors), sizes_(sizes), capacity_(capacity), target_(target)
        {
        }

        std::vector<int> solve(std::vector<int> candidates)
        {
            seed_greedy(candidates);
            if (static_cast<int>(best_.size()) < target_)
                search(candidates);
            return best_;
        }

      private:
        void seed_greedy(const std::vector<int> & candidates)
        {
            std::vector<int> order = candidates;
            std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return sizes_[a] < sizes_[b]; });
            VertexSet taken(capacity_);
            for (int p : order) {
                if (interiors_[p].intersects(taken))
                    continue;
                taken |= interiors_[p];
                best_.push_back(p);
                if (static_cast<int>(best_.size()) >= target_)
                    break;
            }
        }

        bool done() const { return static_cast<int>(best_.size()) >= target_; }

        void record()
        {
            if (current_.size() > best_.size())
                best_ = current_;
        }

        void search(const std::vector<int> & cands)
        {
            record();
            if (done() || cands.empty())
                return;

            VertexSet all(capacity_);
            int min_size = INT_MAX;
            for (int p : cands) {
                all |= interiors_[p];
                min_size = std::min(min_size, sizes_[p]);
            }
            const int bound = std::min<int>(static_cast<int>(cands.size()), all.count() / min_size);
            if (static_cast<int>(current_.size()) + bound <= static_cast<int>(best_.size()))
                return;

            int pivot = -1;
            {
                VertexSet once(capacity_), twice(capacity_);
                for (int p : cands) {
                    VertexSet both = interiors_[p];
                    both &= once;
                    twice |= both;
                    once |= interiors_[p];
                }
                pivot = twice.first();
            }

            if (pivot < 0) {
                // Pairwise disjoint: take everything.
                auto saved = current_.size();
                current_.insert(current_.end(), cands.begin(), cands.end());
                record();
                current_.resize(saved);
                return;
            }

            std::vector<int> through, avoid;
            for (int p : cands)
                (interiors_[p].contains(pivot) ? through : avoid).push_back(p);

            for (int p : through) {
                std::vector<int> rest;
                for (int q : avoid)
                    if (!interiors_[q].intersects(interiors_[p]))
                        rest.push_back(q);
                current_.push_back(p);
                search(rest);
                current_.pop_back();
                if (done())
                    return;
            }
            search(avoid);
        }

        const std::vector<VertexSet> & interiors_;
        const std::vector<int> & sizes_;
        int capacity_;
        int target_;
        std::vector<int> best_;
        std::vector<int> current_;
    };

} // namespace detail

struct PackingResult {
    int count = 0;
    WitnessFamily family;
};

/// Maximum number of internally disjoint rainbow u-v paths (decision mode:
/// min(target, maximum)). The returned family attains `count`.
inline PackingResult max_disjoint_rainbow(const Coloring & c, const PairQuery & q)
{
    const int cap = q.max_len > 0 ? std::min(q.max_len, c.num_colors()) : c.num_colors();
    auto paths = enumerate_rainbow_paths(c, q.u, q.v, cap);

    PackingResult result;
    result.family.u = q.u;
    result.family.v = q.v;
    result.family.provenance = std::string("verifier:") + to_string(q.mode);

    const int target = q.mode == PackingMode::decision ? q.target : INT_MAX;
    if (target <= 0)
        return result;

    const int n = c.num_vertices();
    std::vector<VertexSet> interiors;
    std::vector<int> sizes;
    std::vector<int> candidates;
    interiors.reserve(paths.size());
    for (std::size_t i = 0; i < paths.size(); ++i) {
        const auto & p = paths[i];
        VertexSet s(n);
        for (std::size_t j = 1; j + 1 < p.size(); ++j)
            s.insert(p[j]);
        interiors.push_back(std::move(s));
        sizes.push_back(static_cast<int>(p.size()) - 2);
        if (p.size() == 2)
            result.family.paths.push_back(p); // the edge itself conflicts with nothing
        else
            candidates.push_back(static_cast<int>(i));
    }

    const int have = static_cast<int>(result.family.paths.size());
    if (have < target) {
        detail::PathPacker packer(interiors, sizes, n, target == INT_MAX ? INT_MAX : target - have);
        for (int i : packer.solve(std::move(candidates)))
            result.family.paths.push_back(paths[i]);
        std::sort(result.family.paths.begin(), result.family.paths.end());
    }
    result.count = std::min<int>(static_cast<int>(result.family.paths.size()), target);
    if (q.mode == PackingMode::decision)
        result.family.paths.resize(result.count);
    return result;
}

/// Vertex connectivity of a complete multipartite graph: n - max part size.
inline int structural_connectivity(const PartitionSpec & spec)
{
    return spec.num_vertices() - *std::max_element(spec.sizes().begin(), spec.sizes().end());
}

struct PairCount {
    Vertex u;
    Vertex v;
    int count;
};

struct VerificationReport {
    int k = 0;
    PackingMode mode = PackingMode::decision;
    bool pass = false;
    /// Counts are min(k, maximum) rather than true maxima.
    bool capped = true;
    std::vector<PairCount> pairs;
    /// On failure: first failing pair with its maximum family.
    std::optional<PackingResult> failure;
};

struct VerifyOptions {
    PackingMode mode = PackingMode::decision;
    int jobs = 1;
    /// Restrict to one pair instead of all unordered pairs.
    std::optional<std::pair<Vertex, Vertex>> only_pair;
};

/// Decides whether every unordered pair is joined by k internally disjoint
/// rainbow paths. Results do not depend on the number of worker threads.
inline VerificationReport verify_rainbow_k_connected(const Coloring & c, int k, const VerifyOptions & opt = {})
{
    if (k < 1)
        throw std::invalid_argument("verify_rainbow_k_connected: k must be >= 1");

    VerificationReport report;
    report.k = k;
    report.mode = opt.mode;
    report.capped = opt.mode == PackingMode::decision;

    std::vector<std::pair<Vertex, Vertex>> pairs;
    if (opt.only_pair) {
        auto [u, v] = *opt.only_pair;
        c.spec().check(u);
        c.spec().check(v);
        if (u == v)
            throw std::invalid_argument("verify_rainbow_k_connected: pair endpoints coincide");
        pairs.emplace_back(std::min(u, v), std::max(u, v));
    } else {
        for (Vertex u = 0; u < c.num_vertices(); ++u)
            for (Vertex v = u + 1; v < c.num_vertices(); ++v)
                pairs.emplace_back(u, v);
    }

    report.pairs.resize(pairs.size());
    auto work = [&](std::size_t i) {
        PairQuery q{pairs[i].first, pairs[i].second, opt.mode, k, 0};
        report.pairs[i] = {q.u, q.v, max_disjoint_rainbow(c, q).count};
    };

    const int jobs = std::max(1, std::min<int>(opt.jobs, static_cast<int>(pairs.size())));
    if (jobs == 1) {
        for (std::size_t i = 0; i < pairs.size(); ++i)
            work(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < jobs; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < pairs.size(); i = next++)
                    work(i);
            });
        for (auto & t : pool)
            t.join();
    }

    report.pass = true;
    for (const auto & pc : report.pairs) {
        if (pc.count >= k)
            continue;
        report.pass = false;
        report.failure = max_disjoint_rainbow(c, {pc.u, pc.v, PackingMode::maximize, 0, 0});
        break;
    }
    return report;
}

/// First pair with fewer than k disjoint rainbow paths, checking `hint`
/// first when given. Used by exhaustive searches.
inline std::optional<std::pair<Vertex, Vertex>>
find_failing_pair(const Coloring & c, int k, std::optional<std::pair<Vertex, Vertex>> hint = std::nullopt)
{
    auto fails = [&](Vertex u, Vertex v) {
        return max_disjoint_rainbow(c, {u, v, PackingMode::decision, k, 0}).count < k;
    };
    if (hint && fails(hint->first, hint->second))
        return hint;
    for (Vertex u = 0; u < c.num_vertices(); ++u)
        for (Vertex v = u + 1; v < c.num_vertices(); ++v)
            if (fails(u, v))
                return std::pair{u, v};
    return std::nullopt;
}

inline ordered_json to_json(const VerificationReport & r)
{
    ordered_json j;
    j["k"] = r.k;
    j["mode"] = to_string(r.mode);
    j["verdict"] = r.pass ? "pass" : "fail";
    j["capped"] = r.capped;
    auto pairs = ordered_json::array();
    for (const auto & p : r.pairs)
        pairs.push_back({p.u, p.v, p.count});
    j["pairs"] = std::move(pairs);
    if (r.failure) {
        ordered_json f;
        f["u"] = r.failure->family.u;
        f["v"] = r.failure->family.v;
        f["max_count"] = r.failure->count;
        f["family"] = to_json(r.failure->family);
        j["failing_pair"] = std::move(f);
    } else {
        j["failing_pair"] = nullptr;
    }
    return j;
}

} // namespace rainbow

#endif
