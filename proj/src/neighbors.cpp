#include "rnnclust/neighbors.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>

namespace rnnclust {

namespace {

struct Candidate {
    double dist;
    EntityId id;
    friend bool operator<(const Candidate& a, const Candidate& b) noexcept {
        return a.dist < b.dist || (a.dist == b.dist && a.id < b.id);
    }
};

void brute_nearest(const FeatureMatrix& data, EntityId query, std::size_t k,
                   std::vector<Candidate>& scratch, std::span<EntityId> ids, std::span<double> dist) {
    const std::size_t n = data.rows();
    const std::size_t m = data.cols();
    const double* q = data.row(query).data();
    scratch.clear();
    for (std::size_t j = 0; j < n; ++j) {
        if (j == query)
            continue;
        scratch.push_back({squared_euclidean_unchecked(q, data.row(j).data(), m), static_cast<EntityId>(j)});
    }
    std::partial_sort(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(k), scratch.end());
    for (std::size_t r = 0; r < k; ++r) {
        ids[r] = scratch[r].id;
        dist[r] = scratch[r].dist;
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// KdTree

KdTree::KdTree(const FeatureMatrix& data, std::size_t leaf_size)
    : data_(&data), leaf_size_(std::max<std::size_t>(1, leaf_size)), order_(data.rows()) {
    std::iota(order_.begin(), order_.end(), EntityId{0});
    nodes_.reserve(2 * data.rows() / leaf_size_ + 2);
    build(0, order_.size());
}

std::size_t KdTree::build(std::size_t begin, std::size_t end) {
    const std::size_t m = data_->cols();
    const std::size_t id = nodes_.size();
    nodes_.push_back({begin, end, 0, 0});
    box_lo_.resize((id + 1) * m, std::numeric_limits<double>::infinity());
    box_hi_.resize((id + 1) * m, -std::numeric_limits<double>::infinity());
    for (std::size_t p = begin; p < end; ++p) {
        const auto row = data_->row(order_[p]);
        for (std::size_t v = 0; v < m; ++v) {
            box_lo_[id * m + v] = std::min(box_lo_[id * m + v], row[v]);
            box_hi_[id * m + v] = std::max(box_hi_[id * m + v], row[v]);
        }
    }
    if (end - begin <= leaf_size_)
        return id;

    std::size_t axis = 0;
    double widest = -1.0;
    for (std::size_t v = 0; v < m; ++v) {
        const double w = box_hi_[id * m + v] - box_lo_[id * m + v];
        if (w > widest) {
            widest = w;
            axis = v;
        }
    }
    if (widest <= 0.0)
        return id;  // all points coincide

    const std::size_t mid = begin + (end - begin) / 2;
    std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(begin),
                     order_.begin() + static_cast<std::ptrdiff_t>(mid),
                     order_.begin() + static_cast<std::ptrdiff_t>(end),
                     [&](EntityId a, EntityId b) { return (*data_)(a, axis) < (*data_)(b, axis); });
    const std::size_t left = build(begin, mid);
    const std::size_t right = build(mid, end);
    nodes_[id].left = left;
    nodes_[id].right = right;
    return id;
}

// Lower bound on the squared distance from q to any point inside the node's box. Each
// term bounds the matching term of squared_euclidean from below and the summation order
// is the same, so rounding cannot push the bound past an actual distance.
double KdTree::box_distance(std::size_t node, const double* q) const {
    const std::size_t m = data_->cols();
    const double* lo = box_lo_.data() + node * m;
    const double* hi = box_hi_.data() + node * m;
    double sum = 0.0;
    for (std::size_t v = 0; v < m; ++v) {
        double gap = 0.0;
        if (q[v] < lo[v])
            gap = q[v] - lo[v];
        else if (q[v] > hi[v])
            gap = q[v] - hi[v];
        sum += gap * gap;
    }
    return sum;
}

void KdTree::nearest(EntityId query, std::size_t k, std::span<EntityId> out_ids,
                     std::span<double> out_dist) const {
    const std::size_t m = data_->cols();
    const double* q = data_->row(query).data();
    std::priority_queue<Candidate> best;  // max-heap: worst candidate on top

    auto visit = [&](auto&& self, std::size_t node) -> void {
        const Node& nd = nodes_[node];
        if (nd.left == 0) {
            for (std::size_t p = nd.begin; p < nd.end; ++p) {
                const EntityId j = order_[p];
                if (j == query)
                    continue;
                const Candidate c{squared_euclidean_unchecked(q, data_->row(j).data(), m), j};
                if (best.size() < k) {
                    best.push(c);
                } else if (c < best.top()) {
                    best.pop();
                    best.push(c);
                }
            }
            return;
        }
        const double dl = box_distance(nd.left, q);
        const double dr = box_distance(nd.right, q);
        const bool left_first = dl <= dr;
        const std::size_t first = left_first ? nd.left : nd.right;
        const std::size_t second = left_first ? nd.right : nd.left;
        const double d_first = left_first ? dl : dr;
        const double d_second = left_first ? dr : dl;
        // ties at the pruning bound may still win on index, so only strictly farther boxes are skipped
        if (best.size() < k || d_first <= best.top().dist)
            self(self, first);
        if (best.size() < k || d_second <= best.top().dist)
            self(self, second);
    };
    visit(visit, 0);

    for (std::size_t r = k; r-- > 0;) {
        out_ids[r] = best.top().id;
        out_dist[r] = best.top().dist;
        best.pop();
    }
}

void KdTree::within(EntityId query, double radius, std::vector<EntityId>& out) const {
    const std::size_t m = data_->cols();
    const double* q = data_->row(query).data();
    out.clear();
    std::vector<std::size_t> stack{0};
    while (!stack.empty()) {
        const std::size_t node = stack.back();
        stack.pop_back();
        if (box_distance(node, q) > radius)
            continue;
        const Node& nd = nodes_[node];
        if (nd.left == 0) {
            for (std::size_t p = nd.begin; p < nd.end; ++p) {
                const EntityId j = order_[p];
                if (squared_euclidean_unchecked(q, data_->row(j).data(), m) <= radius)
                    out.push_back(j);
            }
        } else {
            stack.push_back(nd.right);
            stack.push_back(nd.left);
        }
    }
}

// ---------------------------------------------------------------------------
// NeighborIndex

void NeighborIndex::check_k(std::size_t k) const {
    if (k > k_max_)
        throw std::out_of_range("k = " + std::to_string(k) + " exceeds index k_max = " + std::to_string(k_max_));
}

std::span<const EntityId> NeighborIndex::knn(EntityId i, std::size_t k) const {
    check_k(k);
    return {knn_.data() + static_cast<std::size_t>(i) * k_max_, k};
}

std::span<const double> NeighborIndex::knn_distances(EntityId i, std::size_t k) const {
    check_k(k);
    return {knn_dist_.data() + static_cast<std::size_t>(i) * k_max_, k};
}

std::span<const EntityId> NeighborIndex::rnn_view(EntityId i, std::size_t k) const {
    check_k(k);
    const std::size_t begin = rev_offset_[i];
    const std::size_t end = rev_offset_[i + 1];
    // entries are ordered by rank, so RNN_k is a prefix
    const auto* first = rev_rank_.data() + begin;
    const auto* last = rev_rank_.data() + end;
    const auto count = static_cast<std::size_t>(
        std::upper_bound(first, last, static_cast<std::uint32_t>(k)) - first);
    return {rev_source_.data() + begin, count};
}

NeighborIndex build_index(const FeatureMatrix& data, std::size_t k_max, NeighborBackend backend,
                          unsigned threads) {
    const std::size_t n = data.rows();
    if (k_max == 0)
        throw std::invalid_argument("k_max must be positive");
    if (k_max >= n)
        throw std::invalid_argument("k_max = " + std::to_string(k_max) + " requires more than " +
                                    std::to_string(k_max) + " entities, data has " + std::to_string(n));

    NeighborIndex index;
    index.n_ = n;
    index.k_max_ = k_max;
    index.knn_.resize(n * k_max);
    index.knn_dist_.resize(n * k_max);

    std::optional<KdTree> tree;
    if (backend == NeighborBackend::spatial)
        tree.emplace(data);

    auto work = [&](std::size_t begin, std::size_t end) {
        std::vector<Candidate> scratch;
        for (std::size_t i = begin; i < end; ++i) {
            std::span<EntityId> ids(index.knn_.data() + i * k_max, k_max);
            std::span<double> dist(index.knn_dist_.data() + i * k_max, k_max);
            if (tree)
                tree->nearest(static_cast<EntityId>(i), k_max, ids, dist);
            else
                brute_nearest(data, static_cast<EntityId>(i), k_max, scratch, ids, dist);
        }
    };
    const std::size_t workers = std::clamp<std::size_t>(threads, 1, n);
    if (workers == 1) {
        work(0, n);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(work, n * w / workers, n * (w + 1) / workers);
    }

    // Invert: appending by rank-major order yields reverse lists sorted by (rank, source).
    index.rev_offset_.assign(n + 1, 0);
    for (EntityId j : index.knn_)
        ++index.rev_offset_[j + 1];
    std::partial_sum(index.rev_offset_.begin(), index.rev_offset_.end(), index.rev_offset_.begin());
    index.rev_source_.resize(n * k_max);
    index.rev_rank_.resize(n * k_max);
    std::vector<std::size_t> cursor(index.rev_offset_.begin(), index.rev_offset_.end() - 1);
    for (std::size_t r = 0; r < k_max; ++r) {
        for (std::size_t i = 0; i < n; ++i) {
            const EntityId j = index.knn_[i * k_max + r];
            const std::size_t slot = cursor[j]++;
            index.rev_source_[slot] = static_cast<EntityId>(i);
            index.rev_rank_[slot] = static_cast<std::uint32_t>(r + 1);
        }
    }
    return index;
}

std::vector<EntityId> knn(const NeighborIndex& index, EntityId i, std::size_t k) {
    const auto view = index.knn(i, k);
    return {view.begin(), view.end()};
}

std::vector<EntityId> rnn(const NeighborIndex& index, EntityId i, std::size_t k) {
    const auto view = index.rnn_view(i, k);
    std::vector<EntityId> out(view.begin(), view.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<EntityId> influence_space(const NeighborIndex& index, EntityId i, std::size_t k) {
    std::vector<EntityId> out;
    for (EntityId j : index.knn(i, k)) {
        const auto back = index.knn(j, k);
        if (std::find(back.begin(), back.end(), i) != back.end())
            out.push_back(j);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace rnnclust
