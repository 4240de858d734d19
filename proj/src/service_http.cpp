#include <httplib.h>

#include "mbd/service.hpp"

namespace mbd {

namespace {

void send(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  try {
    return json::parse(req.body);
  } catch (const json::parse_error& e) {
    throw ServiceError(400, "bad_request", std::string("body is not JSON: ") + e.what());
  }
}

template <typename F>
httplib::Server::Handler guarded(F f) {
  return [f](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const ServiceError& e) {
      send(res, e.status(), e.body());
    } catch (const std::exception& e) {
      send(res, 500, {{"code", "internal"}, {"reason", e.what()}});
    }
  };
}

}  // namespace

void install_routes(httplib::Server& server, Service& service) {
  const std::string origin = service.config().cors_origin;
  server.set_default_headers({{"Access-Control-Allow-Origin", origin},
                              {"Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});
  server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  server.Post("/sessions", guarded([&service](const httplib::Request& req, httplib::Response& res) {
                send(res, 201, service.create_session(parse_body(req)));
              }));
  server.Get(R"(/sessions/([0-9a-f]+))", guarded([&service](const httplib::Request& req, httplib::Response& res) {
               send(res, 200, service.get_session(req.matches[1]));
             }));
  server.Post(R"(/sessions/([0-9a-f]+)/moves)",
              guarded([&service](const httplib::Request& req, httplib::Response& res) {
                send(res, 200, service.post_move(req.matches[1], parse_body(req)));
              }));
  server.Get(R"(/sessions/([0-9a-f]+)/eval)", guarded([&service](const httplib::Request& req, httplib::Response& res) {
               send(res, 200, service.eval(req.matches[1]));
             }));
  server.Delete(R"(/sessions/([0-9a-f]+))", guarded([&service](const httplib::Request& req, httplib::Response& res) {
                  service.delete_session(req.matches[1]);
                  res.status = 204;
                }));
  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) send(res, res.status, {{"code", "not_found"}, {"reason", "no such route"}});
  });
}

bool serve(Service& service, const std::string& host, int port) {
  httplib::Server server;
  install_routes(server, service);
  return server.listen(host, port);
}

}  // namespace mbd
