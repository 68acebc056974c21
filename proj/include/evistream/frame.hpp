#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "evistream/errors.hpp"

namespace evistream {

class Proposition;

/// Ordered set of mutually exclusive singleton hypotheses. The label order is
/// fixed at construction and defines the bit layout of every Proposition over
/// this frame. Immutable after construction.
class FrameOfDiscernment {
public:
    /// Hard cap on frame cardinality; keeps dense 2^n tables exact and small.
    static constexpr int kMaxSize = 20;

    /// Placeholder state (zero labels) so aggregates can hold a frame before
    /// one is assigned. create() never produces this.
    FrameOfDiscernment() = default;

    static FrameOfDiscernment create(std::vector<std::string> labels);

    int size() const { return static_cast<int>(labels_.size()); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int i) const { return labels_.at(static_cast<std::size_t>(i)); }
    std::optional<int> index_of(const std::string& label) const;

    /// Number of subsets of the frame, 2^n.
    std::uint32_t subset_count() const { return std::uint32_t{1} << size(); }

    bool operator==(const FrameOfDiscernment& other) const { return labels_ == other.labels_; }
    bool operator!=(const FrameOfDiscernment& other) const { return !(*this == other); }

    Proposition empty_proposition() const;
    Proposition full_proposition() const;
    Proposition singleton(int i) const;
    /// Builds a proposition from member labels. Rejects unknown labels and
    /// duplicates within the list.
    Proposition proposition(const std::vector<std::string>& members) const;

private:
    explicit FrameOfDiscernment(std::vector<std::string> labels);

    std::vector<std::string> labels_;
    std::unordered_map<std::string, int> index_;
};

/// A subset of the frame, one bit per singleton (bit i <-> label i). The bit
/// pattern doubles as the dense-table index of the proposition. Width is the
/// cardinality of the owning frame; set algebra across widths is rejected.
class Proposition {
public:
    /// Empty proposition over the placeholder frame.
    Proposition() = default;

    Proposition(std::uint32_t bits, int width);

    std::uint32_t bits() const { return bits_; }
    int width() const { return width_; }

    bool is_empty() const { return bits_ == 0; }
    int cardinality() const;
    bool contains(int singleton) const { return (bits_ >> singleton) & 1u; }

    bool is_subset_of(const Proposition& other) const;
    bool intersects(const Proposition& other) const;

    Proposition complement() const;
    Proposition set_union(const Proposition& other) const;
    Proposition set_intersection(const Proposition& other) const;
    Proposition set_difference(const Proposition& other) const;

    /// Member labels in frame order.
    std::vector<std::string> member_labels(const FrameOfDiscernment& frame) const;

    bool operator==(const Proposition& other) const
    {
        return bits_ == other.bits_ && width_ == other.width_;
    }
    bool operator!=(const Proposition& other) const { return !(*this == other); }
    /// Orders by bit pattern; matches dense-table index order.
    bool operator<(const Proposition& other) const { return bits_ < other.bits_; }

private:
    void require_same_width(const Proposition& other) const;

    std::uint32_t bits_ = 0;
    int width_ = 0;
};

} // namespace evistream
