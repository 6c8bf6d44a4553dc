#pragma once

#include "moviedesc/semantic/frames.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace moviedesc::semantic {

enum class LabelMode { text, sense };
enum class SrSlot { subject, verb, object, location };

std::string_view to_string(LabelMode mode);
std::string_view to_string(SrSlot slot);
LabelMode parse_label_mode(std::string_view text);
SrSlot parse_sr_slot(std::string_view text);

/// Slot a frame role is grouped into; nullopt for roles that are dropped.
std::optional<SrSlot> role_slot(std::string_view role);

struct SRTuple {
    std::optional<std::string> subject;
    std::string verb;
    std::optional<std::string> object;
    std::optional<std::string> location;
    LabelMode mode = LabelMode::sense;

    const std::optional<std::string> &get(SrSlot slot) const;
    std::string str() const; ///< "<subject, verb, object, location>", '-' for empty slots

    friend bool operator==(const SRTuple &, const SRTuple &) = default;
};

/// Groups roles into slots; when two roles land in one slot the first in
/// pattern order wins. Throws if the assignment has no Action binding.
SRTuple to_sr(const RoleAssignment &assignment, LabelMode mode);

/// Bindings whose role maps to no slot.
std::size_t dropped_roles(const RoleAssignment &assignment);

/// The two attribute cut-offs used for visual label vocabularies.
inline constexpr std::size_t kMinCountFine = 30;
inline constexpr std::size_t kMinCountCoarse = 100;

struct LabelVocab {
    SrSlot slot = SrSlot::verb;
    std::map<std::string, std::size_t> counts; ///< retained labels only
    std::size_t min_count = 1;

    bool contains(const std::string &label) const { return counts.contains(label); }
    std::vector<std::string> labels() const;
};

/// Counts labels in `slot` and keeps those seen at least `min_count` times.
/// Throws if the tuples mix label modes.
LabelVocab extract_label_vocab(const std::vector<SRTuple> &tuples, SrSlot slot, std::size_t min_count);

} // namespace moviedesc::semantic
