#ifndef UMBRAL_COMBINATORICS_HPP
#define UMBRAL_COMBINATORICS_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace umbral {

// Bell(12) is about 4.2 million; larger ground sets need an explicit override.
inline constexpr int kDefaultGroundSizeCap = 12;

/// A partition of {1..ground_size} into non-empty blocks.
///
/// Blocks are ordered by their smallest element and elements within a block
/// ascend, so two partitions are equal iff their block lists are equal.
class SetPartition {
public:
    SetPartition() = default;

    SetPartition(std::vector<std::vector<int>> blocks, int ground_size)
        : blocks_(std::move(blocks)), ground_size_(ground_size) {
        validate();
    }

    // Builds the partition encoded by a restricted growth string (labels are 0-based block ids).
    static SetPartition from_rgs(std::span<const int> labels) {
        int block_count = 0;
        for (int label : labels)
            block_count = std::max(block_count, label + 1);
        std::vector<std::vector<int>> blocks(static_cast<std::size_t>(block_count));
        for (std::size_t pos = 0; pos < labels.size(); ++pos)
            blocks[static_cast<std::size_t>(labels[pos])].push_back(static_cast<int>(pos) + 1);
        return SetPartition(std::move(blocks), static_cast<int>(labels.size()));
    }

    const std::vector<std::vector<int>>& blocks() const noexcept { return blocks_; }
    int ground_size() const noexcept { return ground_size_; }
    std::size_t block_count() const noexcept { return blocks_.size(); }

    bool operator==(const SetPartition&) const = default;

    std::string to_string() const {
        std::string out;
        for (const auto& block : blocks_) {
            out += '{';
            for (std::size_t j = 0; j < block.size(); ++j) {
                if (j)
                    out += ',';
                out += std::to_string(block[j]);
            }
            out += '}';
        }
        return out;
    }

private:
    void validate() const {
        if (ground_size_ < 1)
            throw DomainError("set partition: ground size must be positive");
        std::vector<bool> seen(static_cast<std::size_t>(ground_size_) + 1, false);
        int previous_min = 0;
        int covered = 0;
        for (const auto& block : blocks_) {
            if (block.empty())
                throw DomainError("set partition: empty block");
            if (block.front() <= previous_min)
                throw DomainError("set partition: blocks not ordered by minimum");
            previous_min = block.front();
            for (std::size_t j = 0; j < block.size(); ++j) {
                const int e = block[j];
                if (e < 1 || e > ground_size_ || seen[static_cast<std::size_t>(e)])
                    throw DomainError("set partition: blocks overlap or leave the ground set");
                if (j && block[j - 1] >= e)
                    throw DomainError("set partition: block elements not ascending");
                seen[static_cast<std::size_t>(e)] = true;
                ++covered;
            }
        }
        if (covered != ground_size_)
            throw DomainError("set partition: blocks do not cover the ground set");
    }

    std::vector<std::vector<int>> blocks_;
    int ground_size_ = 0;
};

namespace detail {

inline void check_partition_args(int i, int k, int cap) {
    if (i < 1)
        throw DomainError("set partitions: ground size must be at least 1");
    if (k < 1 || k > i)
        throw DomainError("set partitions: need 1 <= k <= i, got k=" + std::to_string(k) +
                          ", i=" + std::to_string(i));
    if (i > cap)
        throw ResourceError("set partitions: ground size " + std::to_string(i) +
                            " exceeds cap " + std::to_string(cap));
}

template <class Visitor>
void rgs_fill(std::vector<int>& labels, std::size_t pos, int opened, int k, Visitor& visit) {
    const int n = static_cast<int>(labels.size());
    if (static_cast<int>(pos) == n) {
        visit(std::span<const int>(labels), k);
        return;
    }
    const int remaining = n - static_cast<int>(pos);
    // Reuse an existing block only if enough positions are left to open the rest.
    if (k - opened < remaining) {
        for (int label = 0; label < opened; ++label) {
            labels[pos] = label;
            rgs_fill(labels, pos + 1, opened, k, visit);
        }
    }
    if (opened < k) {
        labels[pos] = opened;
        rgs_fill(labels, pos + 1, opened + 1, k, visit);
    }
}

} // namespace detail

/// Streams the restricted growth strings of Π_{i,k} in lexicographic order.
/// The visitor receives (labels, k); labels[t] is the 0-based block of element t+1.
template <class Visitor>
void for_each_rgs(int i, int k, Visitor&& visit, int cap = kDefaultGroundSizeCap) {
    detail::check_partition_args(i, k, cap);
    std::vector<int> labels(static_cast<std::size_t>(i), 0);
    labels[0] = 0;
    detail::rgs_fill(labels, 1, 1, k, visit);
}

// Every partition of {1..i}, grouped by block count k = 1..i.
template <class Visitor>
void for_each_rgs(int i, Visitor&& visit, int cap = kDefaultGroundSizeCap) {
    if (i < 1)
        throw DomainError("set partitions: ground size must be at least 1");
    for (int k = 1; k <= i; ++k)
        for_each_rgs(i, k, visit, cap);
}

template <class Visitor>
void for_each_set_partition(int i, int k, Visitor&& visit, int cap = kDefaultGroundSizeCap) {
    for_each_rgs(
        i, k, [&](std::span<const int> labels, int) { visit(SetPartition::from_rgs(labels)); }, cap);
}

inline std::vector<SetPartition> set_partitions(int i, int k, int cap = kDefaultGroundSizeCap) {
    std::vector<SetPartition> out;
    for_each_set_partition(i, k, [&](SetPartition p) { out.push_back(std::move(p)); }, cap);
    return out;
}

inline std::vector<SetPartition> all_set_partitions(int i, int cap = kDefaultGroundSizeCap) {
    if (i < 1)
        throw DomainError("set partitions: ground size must be at least 1");
    std::vector<SetPartition> out;
    for (int k = 1; k <= i; ++k)
        for_each_set_partition(i, k, [&](SetPartition p) { out.push_back(std::move(p)); }, cap);
    return out;
}

/// Block sizes in decreasing order; the memoization key for expansions
/// whose coefficients depend only on block sizes.
inline std::vector<int> block_size_signature(const SetPartition& p) {
    std::vector<int> sizes;
    sizes.reserve(p.block_count());
    for (const auto& block : p.blocks())
        sizes.push_back(static_cast<int>(block.size()));
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    return sizes;
}

/// A partition λ of an integer m: weakly decreasing parts plus the multiplicity r_j of each part value.
class IntPartition {
public:
    IntPartition() = default;

    explicit IntPartition(std::vector<int> parts) : parts_(std::move(parts)) {
        if (parts_.empty())
            throw DomainError("integer partition: empty partition");
        for (int part : parts_)
            if (part < 1)
                throw DomainError("integer partition: parts must be positive");
        std::sort(parts_.begin(), parts_.end(), std::greater<>());
        for (int part : parts_)
            ++multiplicities_[part];
    }

    const std::vector<int>& parts() const noexcept { return parts_; }
    const std::map<int, int>& multiplicities() const noexcept { return multiplicities_; }
    std::size_t length() const noexcept { return parts_.size(); }

    int weight() const noexcept {
        int total = 0;
        for (int part : parts_)
            total += part;
        return total;
    }

    bool operator==(const IntPartition& other) const { return parts_ == other.parts_; }

    std::string to_string() const {
        std::string out = "(";
        for (std::size_t j = 0; j < parts_.size(); ++j) {
            if (j)
                out += ',';
            out += std::to_string(parts_[j]);
        }
        return out + ")";
    }

private:
    std::vector<int> parts_;
    std::map<int, int> multiplicities_;
};

// All partitions of m in reverse-lexicographic order: (m), (m-1,1), ..., (1,...,1).
inline std::vector<IntPartition> integer_partitions(int m) {
    if (m < 1)
        throw DomainError("integer partitions: m must be at least 1");
    std::vector<IntPartition> out;
    std::vector<int> current;
    std::function<void(int, int)> fill = [&](int remaining, int largest) {
        if (remaining == 0) {
            out.emplace_back(current);
            return;
        }
        for (int part = std::min(remaining, largest); part >= 1; --part) {
            current.push_back(part);
            fill(remaining - part, part);
            current.pop_back();
        }
    };
    fill(m, m);
    return out;
}

} // namespace umbral

#endif
