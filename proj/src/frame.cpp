#include "evistream/frame.hpp"

#include <bit>

namespace evistream {

FrameOfDiscernment::FrameOfDiscernment(std::vector<std::string> labels)
    : labels_(std::move(labels))
{
    index_.reserve(labels_.size());
    for (int i = 0; i < static_cast<int>(labels_.size()); ++i) {
        index_.emplace(labels_[static_cast<std::size_t>(i)], i);
    }
}

FrameOfDiscernment FrameOfDiscernment::create(std::vector<std::string> labels)
{
    if (labels.empty()) {
        throw EmptyFrame("frame needs at least one singleton label");
    }
    if (labels.size() > static_cast<std::size_t>(kMaxSize)) {
        throw FrameTooLarge("frame has " + std::to_string(labels.size()) +
                            " labels; the cap is " + std::to_string(kMaxSize));
    }
    std::unordered_map<std::string, int> seen;
    for (const auto& label : labels) {
        if (label.empty()) {
            throw InvalidLabel("empty singleton label");
        }
        if (label.find(',') != std::string::npos) {
            throw InvalidLabel("label '" + label + "' contains a comma; commas delimit labels in CLI/CSV surfaces");
        }
        if (!seen.emplace(label, 0).second) {
            throw DuplicateLabel("label '" + label + "' appears more than once");
        }
    }
    return FrameOfDiscernment(std::move(labels));
}

std::optional<int> FrameOfDiscernment::index_of(const std::string& label) const
{
    auto it = index_.find(label);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

Proposition FrameOfDiscernment::empty_proposition() const
{
    return Proposition(0, size());
}

Proposition FrameOfDiscernment::full_proposition() const
{
    return Proposition((std::uint32_t{1} << size()) - 1, size());
}

Proposition FrameOfDiscernment::singleton(int i) const
{
    if (i < 0 || i >= size()) {
        throw FrameMismatch("singleton index " + std::to_string(i) + " out of range");
    }
    return Proposition(std::uint32_t{1} << i, size());
}

Proposition FrameOfDiscernment::proposition(const std::vector<std::string>& members) const
{
    std::uint32_t bits = 0;
    for (const auto& label : members) {
        auto idx = index_of(label);
        if (!idx) {
            throw UnknownLabel("label '" + label + "' is not in the frame");
        }
        std::uint32_t bit = std::uint32_t{1} << *idx;
        if (bits & bit) {
            throw DuplicateLabel("label '" + label + "' repeated within a set");
        }
        bits |= bit;
    }
    return Proposition(bits, size());
}

Proposition::Proposition(std::uint32_t bits, int width)
    : bits_(bits), width_(width)
{
    if (width < 1 || width > FrameOfDiscernment::kMaxSize) {
        throw FrameMismatch("proposition width " + std::to_string(width) + " out of range");
    }
    if (bits >> width) {
        throw FrameMismatch("bit pattern has members beyond the frame");
    }
}

int Proposition::cardinality() const
{
    return std::popcount(bits_);
}

void Proposition::require_same_width(const Proposition& other) const
{
    if (width_ != other.width_) {
        throw FrameMismatch("propositions belong to frames of different cardinality");
    }
}

bool Proposition::is_subset_of(const Proposition& other) const
{
    require_same_width(other);
    return (bits_ & ~other.bits_) == 0;
}

bool Proposition::intersects(const Proposition& other) const
{
    require_same_width(other);
    return (bits_ & other.bits_) != 0;
}

Proposition Proposition::complement() const
{
    std::uint32_t mask = (std::uint32_t{1} << width_) - 1;
    return Proposition(~bits_ & mask, width_);
}

Proposition Proposition::set_union(const Proposition& other) const
{
    require_same_width(other);
    return Proposition(bits_ | other.bits_, width_);
}

Proposition Proposition::set_intersection(const Proposition& other) const
{
    require_same_width(other);
    return Proposition(bits_ & other.bits_, width_);
}

Proposition Proposition::set_difference(const Proposition& other) const
{
    require_same_width(other);
    return Proposition(bits_ & ~other.bits_, width_);
}

std::vector<std::string> Proposition::member_labels(const FrameOfDiscernment& frame) const
{
    if (frame.size() != width_) {
        throw FrameMismatch("proposition width does not match the frame");
    }
    std::vector<std::string> out;
    out.reserve(static_cast<std::size_t>(cardinality()));
    for (int i = 0; i < width_; ++i) {
        if (contains(i)) {
            out.push_back(frame.label(i));
        }
    }
    return out;
}

} // namespace evistream
