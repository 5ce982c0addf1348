#include "ccv/service/http.hpp"

#include <filesystem>

#include <httplib.h>

namespace ccv::service {
namespace {

void send(httplib::Response& res, const Response& r) {
  res.status = r.status;
  if (!r.text.empty()) {
    res.set_content(r.text, "text/turtle; charset=utf-8");
    if (r.body.contains("version")) res.set_header("X-Graph-Version", std::to_string(r.body["version"].get<std::uint64_t>()));
  } else {
    res.set_content(r.body.dump(2) + "\n", "application/json");
  }
}

}  // namespace

void install_routes(httplib::Server& server, CcvService& service, const std::string& ui_dir) {
  server.Get("/graphs", [&](const httplib::Request&, httplib::Response& res) { send(res, service.list_graphs()); });

  server.Get(R"(/graphs/([^/]+))", [&](const httplib::Request& req, httplib::Response& res) {
    send(res, service.get_graph(req.matches[1]));
  });

  server.Put(R"(/graphs/([^/]+))", [&](const httplib::Request& req, httplib::Response& res) {
    send(res, service.put_graph(req.matches[1], req.body));
  });

  server.Get(R"(/graphs/([^/]+)/validation)", [&](const httplib::Request& req, httplib::Response& res) {
    send(res, service.validation(req.matches[1]));
  });

  server.Get(R"(/graphs/([^/]+)/repairs)", [&](const httplib::Request& req, httplib::Response& res) {
    bool use = !(req.has_param("strategies") && req.get_param_value("strategies") == "off");
    send(res, service.repairs(req.matches[1], use));
  });

  server.Post(R"(/graphs/([^/]+)/repairs/([0-9a-f]+)/apply)", [&](const httplib::Request& req, httplib::Response& res) {
    json body = json::parse(req.body, nullptr, false);
    if (body.is_discarded()) {
      send(res, {400, json{{"error", "bad-request"}, {"message", "request body is not JSON"}}, {}});
      return;
    }
    send(res, service.apply(req.matches[1], req.matches[2], body));
  });

  server.Get(R"(/graphs/([^/]+)/audit)", [&](const httplib::Request& req, httplib::Response& res) {
    send(res, service.audit(req.matches[1]));
  });

  server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    std::string message = "internal error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      message = e.what();
    } catch (...) {
    }
    send(res, {500, json{{"error", "internal"}, {"message", message}}, {}});
  });

  if (!ui_dir.empty() && std::filesystem::is_directory(ui_dir)) server.set_mount_point("/", ui_dir);
}

}  // namespace ccv::service
