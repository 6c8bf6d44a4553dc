#include "moviedesc/semantic/sr.hpp"

#include "moviedesc/error.hpp"

namespace moviedesc::semantic {

std::string_view to_string(LabelMode mode) { return mode == LabelMode::text ? "text" : "sense"; }

std::string_view to_string(SrSlot slot) {
    switch (slot) {
    case SrSlot::subject:
        return "subject";
    case SrSlot::verb:
        return "verb";
    case SrSlot::object:
        return "object";
    case SrSlot::location:
        return "location";
    }
    return "verb";
}

LabelMode parse_label_mode(std::string_view text) {
    if (text == "text")
        return LabelMode::text;
    if (text == "sense")
        return LabelMode::sense;
    throw Error("unknown label mode '" + std::string(text) + "' (expected text or sense)");
}

SrSlot parse_sr_slot(std::string_view text) {
    for (const auto s : {SrSlot::subject, SrSlot::verb, SrSlot::object, SrSlot::location})
        if (to_string(s) == text)
            return s;
    throw Error("unknown slot '" + std::string(text) + "' (expected subject, verb, object or location)");
}

std::optional<SrSlot> role_slot(std::string_view role) {
    if (role == "Agent" || role == "Experiencer")
        return SrSlot::subject;
    if (role == "Action")
        return SrSlot::verb;
    if (role == "Patient" || role == "Theme" || role == "Stimulus")
        return SrSlot::object;
    if (role == "Location" || role == "Destination" || role == "Source")
        return SrSlot::location;
    return std::nullopt;
}

const std::optional<std::string> &SRTuple::get(SrSlot slot) const {
    static const std::optional<std::string> none;
    switch (slot) {
    case SrSlot::subject:
        return subject;
    case SrSlot::object:
        return object;
    case SrSlot::location:
        return location;
    case SrSlot::verb:
        break;
    }
    return none;
}

std::string SRTuple::str() const {
    const auto show = [](const std::optional<std::string> &s) { return s ? *s : std::string("-"); };
    return "<" + show(subject) + ", " + verb + ", " + show(object) + ", " + show(location) + ">";
}

SRTuple to_sr(const RoleAssignment &assignment, LabelMode mode) {
    SRTuple t;
    t.mode = mode;
    bool has_verb = false;
    for (const auto &b : assignment.bindings) {
        const auto slot = role_slot(b.role);
        if (!slot)
            continue;
        const std::string &label = mode == LabelMode::sense ? b.sense_label : b.text_label;
        switch (*slot) {
        case SrSlot::verb:
            if (!has_verb) {
                t.verb = label;
                has_verb = true;
            }
            break;
        case SrSlot::subject:
            if (!t.subject)
                t.subject = label;
            break;
        case SrSlot::object:
            if (!t.object)
                t.object = label;
            break;
        case SrSlot::location:
            if (!t.location)
                t.location = label;
            break;
        }
    }
    if (!has_verb)
        throw Error("role assignment " + assignment.frame_id + " has no Action binding");
    return t;
}

std::size_t dropped_roles(const RoleAssignment &assignment) {
    std::size_t n = 0;
    for (const auto &b : assignment.bindings)
        n += role_slot(b.role) ? 0 : 1;
    return n;
}

std::vector<std::string> LabelVocab::labels() const {
    std::vector<std::string> out;
    out.reserve(counts.size());
    for (const auto &[label, _] : counts)
        out.push_back(label);
    return out;
}

LabelVocab extract_label_vocab(const std::vector<SRTuple> &tuples, SrSlot slot, std::size_t min_count) {
    LabelVocab vocab;
    vocab.slot = slot;
    vocab.min_count = min_count;
    std::map<std::string, std::size_t> all;
    for (const auto &t : tuples) {
        if (t.mode != tuples.front().mode)
            throw Error("label vocabulary over mixed text and sense tuples");
        if (slot == SrSlot::verb)
            ++all[t.verb];
        else if (const auto &label = t.get(slot))
            ++all[*label];
    }
    for (auto &[label, count] : all)
        if (count >= min_count)
            vocab.counts.emplace(label, count);
    return vocab;
}

} // namespace moviedesc::semantic
