#pragma once

#include <algorithm>

namespace moviedesc {

/// Half-open span [start_s, end_s) in seconds.
struct TimeInterval {
    double start_s = 0.0;
    double end_s = 0.0;

    double duration() const { return end_s - start_s; }
    bool valid() const { return start_s >= 0.0 && start_s < end_s; }
    bool contains(double t) const { return t >= start_s && t < end_s; }

    friend bool operator==(const TimeInterval &, const TimeInterval &) = default;
};

/// Length of the intersection; 0 for disjoint intervals.
inline double overlap(const TimeInterval &a, const TimeInterval &b) {
    return std::max(0.0, std::min(a.end_s, b.end_s) - std::max(a.start_s, b.start_s));
}

/// Intersection over union; 0 for disjoint intervals.
inline double iou(const TimeInterval &a, const TimeInterval &b) {
    const double inter = overlap(a, b);
    if (inter <= 0.0)
        return 0.0;
    const double uni = a.duration() + b.duration() - inter;
    return uni > 0.0 ? inter / uni : 0.0;
}

} // namespace moviedesc
