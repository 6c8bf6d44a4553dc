#pragma once

#include "moviedesc/corpus/curation.hpp"

namespace httplib {
class Server;
}

namespace moviedesc::cli {

inline constexpr std::size_t kDefaultCurvePoints = 2000;

/// Routes of the curation API on `server`; `service` must outlive it.
///   GET   /project
///   GET   /movies/:id/snippets
///   PATCH /snippets/:id
///   GET   /movies/:id/difference_curve?points=N
///   GET   /pairs?movie=ID&min_iou=0.75
void mount_curation_routes(httplib::Server &server, corpus::CurationService &service);

} // namespace moviedesc::cli
