#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vtag/errors.hpp"

namespace vtag {

struct SearchStats {
    std::uint64_t node_visits = 0;
};

// B+-tree over string keys with byte-order comparison. The fanout bounds both
// keys per leaf and children per internal node. Leaves are chained left to
// right; descents and chain hops each count one node visit.
template <typename V>
class BPlusTree {
    struct Node {
        bool is_leaf;
        std::vector<std::string> keys;
        std::vector<std::unique_ptr<Node>> children;  // internal nodes
        std::vector<V> values;                        // leaves
        Node* next = nullptr;

        explicit Node(bool leaf) : is_leaf(leaf) {}
    };

public:
    static constexpr std::size_t kMinFanout = 3;

    explicit BPlusTree(std::size_t fanout = 32) : fanout_(fanout) {
        if (fanout_ < kMinFanout) {
            throw ConfigError("fanout must be at least " + std::to_string(kMinFanout));
        }
        root_ = std::make_unique<Node>(true);
    }

    class Cursor {
    public:
        bool at_end() const { return leaf_ == nullptr; }
        const std::string& key() const { return leaf_->keys[index_]; }
        const V& value() const { return leaf_->values[index_]; }

    private:
        friend class BPlusTree;
        const Node* leaf_ = nullptr;
        std::size_t index_ = 0;
    };

    // Returns false and leaves the tree unchanged when the key already exists.
    bool insert(const std::string& key, V value) {
        bool inserted = false;
        auto split = insert_rec(*root_, key, value, inserted);
        if (split) {
            auto new_root = std::make_unique<Node>(false);
            new_root->keys.push_back(std::move(split->key));
            new_root->children.push_back(std::move(root_));
            new_root->children.push_back(std::move(split->right));
            root_ = std::move(new_root);
            ++height_;
        }
        if (inserted) ++size_;
        return inserted;
    }

    V* find_mutable(const std::string& key) {
        Node* n = root_.get();
        while (!n->is_leaf) {
            n = n->children[child_index(*n, key)].get();
        }
        auto it = std::lower_bound(n->keys.begin(), n->keys.end(), key);
        if (it == n->keys.end() || *it != key) return nullptr;
        return &n->values[static_cast<std::size_t>(it - n->keys.begin())];
    }

    const V* find_exact(const std::string& key, SearchStats* stats = nullptr) const {
        Cursor c = descend(key, stats);
        if (c.at_end() || c.key() != key) return nullptr;
        return &c.value();
    }

    // First entry with key >= the argument, or an end cursor.
    Cursor lower_bound(const std::string& key, SearchStats* stats = nullptr) const {
        return descend(key, stats);
    }

    void advance(Cursor& c, SearchStats* stats = nullptr) const {
        if (c.at_end()) return;
        ++c.index_;
        if (c.index_ >= c.leaf_->keys.size()) hop(c, stats);
    }

    template <typename Fn>
    void for_each(Fn&& fn) const {
        const Node* n = root_.get();
        while (!n->is_leaf) n = n->children.front().get();
        for (; n; n = n->next) {
            for (std::size_t i = 0; i < n->keys.size(); ++i) {
                fn(n->keys[i], n->values[i]);
            }
        }
    }

    std::size_t size() const { return size_; }
    std::size_t height() const { return height_; }
    std::size_t fanout() const { return fanout_; }

    // FNV-1a over the keys in leaf-chain order.
    std::uint64_t fingerprint() const {
        std::uint64_t h = 1469598103934665603ULL;
        for_each([&](const std::string& key, const V&) {
            for (unsigned char c : key) {
                h ^= c;
                h *= 1099511628211ULL;
            }
            h ^= 0xFFu;
            h *= 1099511628211ULL;
        });
        return h;
    }

    // Throws std::logic_error when a structural invariant is broken.
    void validate() const {
        std::vector<const Node*> chain;
        Extent root_extent = validate_rec(*root_, true, chain);
        (void)root_extent;

        const Node* n = root_.get();
        while (!n->is_leaf) n = n->children.front().get();
        std::size_t i = 0;
        const std::string* prev = nullptr;
        for (; n; n = n->next, ++i) {
            if (i >= chain.size() || chain[i] != n) {
                throw std::logic_error("leaf chain does not match tree order");
            }
            for (const std::string& k : n->keys) {
                if (prev && !(*prev < k)) {
                    throw std::logic_error("keys not strictly increasing");
                }
                prev = &k;
            }
        }
        if (i != chain.size()) {
            throw std::logic_error("leaf chain shorter than tree");
        }
    }

private:
    struct Split {
        std::string key;
        std::unique_ptr<Node> right;
    };

    struct Extent {
        std::size_t depth;
        const std::string* min;
        const std::string* max;
    };

    std::size_t child_index(const Node& n, const std::string& key) const {
        return static_cast<std::size_t>(
            std::upper_bound(n.keys.begin(), n.keys.end(), key) - n.keys.begin());
    }

    std::optional<Split> insert_rec(Node& n, const std::string& key, V& value,
                                    bool& inserted) {
        if (n.is_leaf) {
            auto it = std::lower_bound(n.keys.begin(), n.keys.end(), key);
            std::size_t pos = static_cast<std::size_t>(it - n.keys.begin());
            if (it != n.keys.end() && *it == key) {
                inserted = false;
                return std::nullopt;
            }
            n.keys.insert(it, key);
            n.values.insert(n.values.begin() + static_cast<std::ptrdiff_t>(pos),
                            std::move(value));
            inserted = true;
            if (n.keys.size() <= fanout_) return std::nullopt;
            return split_leaf(n);
        }
        std::size_t ci = child_index(n, key);
        auto split = insert_rec(*n.children[ci], key, value, inserted);
        if (!split) return std::nullopt;
        n.keys.insert(n.keys.begin() + static_cast<std::ptrdiff_t>(ci),
                      std::move(split->key));
        n.children.insert(n.children.begin() + static_cast<std::ptrdiff_t>(ci + 1),
                          std::move(split->right));
        if (n.children.size() <= fanout_) return std::nullopt;
        return split_internal(n);
    }

    // Called with fanout+1 keys; the left half keeps ceil((fanout+1)/2).
    Split split_leaf(Node& n) {
        std::size_t left = (n.keys.size() + 1) / 2;
        auto right = std::make_unique<Node>(true);
        right->keys.assign(std::make_move_iterator(n.keys.begin() + static_cast<std::ptrdiff_t>(left)),
                           std::make_move_iterator(n.keys.end()));
        right->values.assign(std::make_move_iterator(n.values.begin() + static_cast<std::ptrdiff_t>(left)),
                             std::make_move_iterator(n.values.end()));
        n.keys.erase(n.keys.begin() + static_cast<std::ptrdiff_t>(left), n.keys.end());
        n.values.erase(n.values.begin() + static_cast<std::ptrdiff_t>(left), n.values.end());
        right->next = n.next;
        n.next = right.get();
        return {right->keys.front(), std::move(right)};
    }

    // Called with fanout+1 children; the key at fanout/2 moves up.
    Split split_internal(Node& n) {
        std::size_t mid = fanout_ / 2;
        auto right = std::make_unique<Node>(false);
        std::string up = std::move(n.keys[mid]);
        right->keys.assign(std::make_move_iterator(n.keys.begin() + static_cast<std::ptrdiff_t>(mid + 1)),
                           std::make_move_iterator(n.keys.end()));
        right->children.assign(
            std::make_move_iterator(n.children.begin() + static_cast<std::ptrdiff_t>(mid + 1)),
            std::make_move_iterator(n.children.end()));
        n.keys.erase(n.keys.begin() + static_cast<std::ptrdiff_t>(mid), n.keys.end());
        n.children.erase(n.children.begin() + static_cast<std::ptrdiff_t>(mid + 1),
                         n.children.end());
        return {std::move(up), std::move(right)};
    }

    Cursor descend(const std::string& key, SearchStats* stats) const {
        const Node* n = root_.get();
        while (true) {
            if (stats) ++stats->node_visits;
            if (n->is_leaf) break;
            n = n->children[child_index(*n, key)].get();
        }
        auto it = std::lower_bound(n->keys.begin(), n->keys.end(), key);
        Cursor c;
        c.leaf_ = n;
        c.index_ = static_cast<std::size_t>(it - n->keys.begin());
        if (c.index_ >= n->keys.size()) hop(c, stats);
        return c;
    }

    void hop(Cursor& c, SearchStats* stats) const {
        c.leaf_ = c.leaf_->next;
        c.index_ = 0;
        if (c.leaf_ && stats) ++stats->node_visits;
    }

    Extent validate_rec(const Node& n, bool is_root, std::vector<const Node*>& chain) const {
        std::size_t min_fill = (fanout_ + 1) / 2;
        if (n.is_leaf) {
            if (n.keys.size() != n.values.size()) {
                throw std::logic_error("leaf key and value counts differ");
            }
            if (n.keys.size() > fanout_) throw std::logic_error("leaf overfull");
            if (!is_root && n.keys.size() < min_fill) throw std::logic_error("leaf underfull");
            if (!n.children.empty()) throw std::logic_error("leaf with children");
            chain.push_back(&n);
            if (n.keys.empty()) return {1, nullptr, nullptr};
            return {1, &n.keys.front(), &n.keys.back()};
        }
        if (n.children.size() != n.keys.size() + 1) {
            throw std::logic_error("internal key and child counts differ");
        }
        if (n.children.size() > fanout_) throw std::logic_error("internal overfull");
        if (n.children.size() < (is_root ? 2 : min_fill)) {
            throw std::logic_error("internal underfull");
        }
        if (!n.values.empty()) throw std::logic_error("internal node with values");

        Extent acc{0, nullptr, nullptr};
        for (std::size_t i = 0; i < n.children.size(); ++i) {
            Extent e = validate_rec(*n.children[i], false, chain);
            if (!e.min || !e.max) throw std::logic_error("empty subtree below root");
            if (i == 0) {
                acc = e;
            } else {
                if (acc.depth != e.depth) throw std::logic_error("uneven leaf depth");
                if (!(*acc.max < n.keys[i - 1])) {
                    throw std::logic_error("separator not above left subtree");
                }
                if (*e.min < n.keys[i - 1]) {
                    throw std::logic_error("separator above right subtree");
                }
                acc.max = e.max;
            }
        }
        return {acc.depth + 1, acc.min, acc.max};
    }

    std::unique_ptr<Node> root_;
    std::size_t fanout_;
    std::size_t size_ = 0;
    std::size_t height_ = 1;
};

}  // namespace vtag
