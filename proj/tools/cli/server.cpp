#include "server.hpp"

#include "common.hpp"
#include "moviedesc/corpus/pairing.hpp"

#include <httplib.h>

#include <charconv>

namespace moviedesc::cli {
namespace {

void reply(httplib::Response &res, const corpus::ApiResponse &api) {
    res.status = api.status;
    res.set_content(api.body, "application/json");
}

void bad_request(httplib::Response &res, const std::string &message) {
    reply(res, {400, Json{{"error", message}}.dump()});
}

template <class T> bool parse_number(const std::string &text, T &out) {
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc() && ptr == text.data() + text.size();
}

} // namespace

void mount_curation_routes(httplib::Server &server, corpus::CurationService &service) {
    // The UI may be served from another origin.
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Methods", "GET, PATCH, OPTIONS"},
                                {"Access-Control-Allow-Headers", "Content-Type"}});
    server.Options(R"(.*)", [](const httplib::Request &, httplib::Response &res) { res.status = 204; });

    server.Get("/project", [&service](const httplib::Request &, httplib::Response &res) {
        reply(res, service.get_project());
    });
    server.Get("/movies/:id/snippets", [&service](const httplib::Request &req, httplib::Response &res) {
        reply(res, service.get_movie_snippets(req.path_params.at("id")));
    });
    server.Patch("/snippets/:id", [&service](const httplib::Request &req, httplib::Response &res) {
        reply(res, service.patch_snippet(req.path_params.at("id"), req.body));
    });
    server.Get("/movies/:id/difference_curve", [&service](const httplib::Request &req, httplib::Response &res) {
        std::size_t points = kDefaultCurvePoints;
        if (req.has_param("points") && (!parse_number(req.get_param_value("points"), points) || points == 0))
            return bad_request(res, "points must be a positive integer");
        reply(res, service.get_difference_curve(req.path_params.at("id"), points));
    });
    server.Get("/pairs", [&service](const httplib::Request &req, httplib::Response &res) {
        if (!req.has_param("movie"))
            return bad_request(res, "movie is required");
        double min_iou = corpus::kDefaultMinIou;
        if (req.has_param("min_iou") && !parse_number(req.get_param_value("min_iou"), min_iou))
            return bad_request(res, "min_iou must be a number");
        reply(res, service.get_pairs(req.get_param_value("movie"), min_iou));
    });
}

} // namespace moviedesc::cli
