#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

#include "qlgt/gray.hpp"

namespace qlgt {

/// Ordered control words driving a conditionally-controlled decomposition.
/// `dims` gives the alphabet size per word position (mixed dimensions are
/// allowed); words must be distinct and sorted by increasing integer value.
struct ControlSequence {
    std::vector<Word> words;
    std::vector<int> dims;

    std::size_t size() const { return words.size(); }
    std::size_t width() const { return dims.size(); }

    static ControlSequence full_product(std::vector<int> dims) {
        ControlSequence c;
        c.dims = std::move(dims);
        std::int64_t n = 1;
        for (int d : c.dims) n *= d;
        c.words.reserve(static_cast<std::size_t>(n));
        for (std::int64_t v = 0; v < n; ++v) c.words.push_back(int_to_word(v, c.dims));
        return c;
    }

    bool is_full_product() const {
        std::int64_t n = 1;
        for (int d : dims) n *= d;
        return static_cast<std::int64_t>(words.size()) == n;
    }
};

/// Output of the d-ary and Gray sequencers.
///
/// `g` lists the Gray-tree words in traversal order (one per rotation, in
/// circuit order); `b` lists the d-ary-tree words for the same leaves but
/// indexed by the sorted position of the original control word, which is the
/// row order of the angle-transform matrix. `g_to_sorted[j]` maps traversal
/// position j back to the sorted index of the control word at that leaf.
struct SequencerResult {
    std::vector<Word> b;
    std::vector<Word> g;
    std::vector<int> g_to_sorted;
};

namespace detail {

struct SeqNode {
    int digit_b = -1;
    int digit_g = -1;
    int leaf_index = -1;
    std::map<int, std::unique_ptr<SeqNode>> kids; // keyed by original digit, ascending
    std::vector<SeqNode*> traversal;              // set during the Gray pass
};

} // namespace detail

/// Builds the d-ary and Gray trees for a control sequence (App.-style
/// construction): the Gray pass is a breadth-first traversal that reflects
/// the branches of every second multi-child parent within each layer, and a
/// single-child parent adopts the label of the nearest branch on its left
/// while the d-ary tree relabels that branch to 0.
inline SequencerResult sequencers(const ControlSequence& c) {
    if (c.words.empty()) throw std::invalid_argument("sequencers: empty control sequence");
    const std::size_t k = c.width();
    for (std::size_t i = 0; i < c.words.size(); ++i) {
        if (c.words[i].size() != k) throw std::invalid_argument("sequencers: ragged word");
        if (i > 0 && !(word_to_int(c.words[i - 1], c.dims) < word_to_int(c.words[i], c.dims)))
            throw std::invalid_argument("sequencers: words must be sorted and distinct");
    }

    detail::SeqNode root;
    for (std::size_t i = 0; i < c.words.size(); ++i) {
        detail::SeqNode* n = &root;
        for (int digit : c.words[i]) {
            auto& slot = n->kids[digit];
            if (!slot) {
                slot = std::make_unique<detail::SeqNode>();
                slot->digit_b = digit;
                slot->digit_g = digit;
            }
            n = slot.get();
        }
        n->leaf_index = static_cast<int>(i);
    }

    std::vector<detail::SeqNode*> layer{&root};
    for (std::size_t depth = 0; depth < k; ++depth) {
        std::vector<detail::SeqNode*> next;
        int multi_count = 0;
        bool have_left = false;
        int left_label = 0;
        for (detail::SeqNode* parent : layer) {
            std::vector<detail::SeqNode*> kids;
            kids.reserve(parent->kids.size());
            for (auto& [digit, child] : parent->kids) kids.push_back(child.get());
            if (kids.size() > 1) {
                ++multi_count;
                if (multi_count % 2 == 0) std::reverse(kids.begin(), kids.end());
            } else if (kids.size() == 1 && have_left) {
                kids[0]->digit_g = left_label;
                kids[0]->digit_b = 0;
            }
            for (detail::SeqNode* kid : kids) {
                left_label = kid->digit_g;
                have_left = true;
                next.push_back(kid);
            }
            parent->traversal = std::move(kids);
        }
        layer = std::move(next);
    }

    SequencerResult out;
    out.b.resize(c.words.size());
    out.g.reserve(c.words.size());
    out.g_to_sorted.reserve(c.words.size());
    bool normalize = false;

    // Depth-first walk along the traversal order collects both label paths.
    struct Frame {
        detail::SeqNode* node;
        std::size_t next_kid;
    };
    Word path_g, path_b;
    std::vector<Frame> stack{{&root, 0}};
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.node->leaf_index >= 0 && f.node != &root && f.node->traversal.empty()) {
            out.g.push_back(path_g);
            out.g_to_sorted.push_back(f.node->leaf_index);
            out.b[static_cast<std::size_t>(f.node->leaf_index)] = path_b;
        }
        if (f.next_kid < f.node->traversal.size()) {
            detail::SeqNode* kid = f.node->traversal[f.next_kid++];
            path_g.push_back(kid->digit_g);
            path_b.push_back(kid->digit_b);
            stack.push_back({kid, 0});
        } else {
            stack.pop_back();
            if (!path_g.empty()) {
                path_g.pop_back();
                path_b.pop_back();
            }
        }
    }

    // Sequence normalizer: rewrite the first Gray word to all zeros by a
    // per-wire value transposition, adjusting the subsequent words in both
    // sequences. This only removes the control gates that would otherwise
    // precede the first rotation.
    for (std::size_t w = 0; w < k; ++w)
        if (out.g[0][w] != 0) normalize = true;
    if (normalize) {
        const Word first = out.g[0];
        const auto swap_digit = [&](int& digit, std::size_t w) {
            if (digit == first[w]) digit = 0;
            else if (digit == 0) digit = first[w];
        };
        for (auto& word : out.g)
            for (std::size_t w = 0; w < k; ++w)
                if (first[w] != 0) swap_digit(word[w], w);
        for (auto& word : out.b)
            for (std::size_t w = 0; w < k; ++w)
                if (first[w] != 0) swap_digit(word[w], w);
    }
    return out;
}

} // namespace qlgt
