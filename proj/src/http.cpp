#include <httplib.h>

#include "guidex/service.hpp"

namespace guidex {

struct HttpFrontend::Impl {
  explicit Impl(Service& s) : service(s) {}
  Service& service;
  httplib::Server server;
};

namespace {

void forward(Service& service, const httplib::Request& in, httplib::Response& out) {
  Request request;
  request.method = in.method;
  request.path = in.path;
  request.body = in.body;
  for (const auto& [k, v] : in.params) request.query.emplace(k, v);
  Response response = service.handle(request);
  out.status = response.status;
  for (const auto& [k, v] : response.headers) out.set_header(k, v);
  out.set_content(response.body, response.content_type);
}

}  // namespace

HttpFrontend::HttpFrontend(Service& service) : impl_(std::make_unique<Impl>(service)) {
  auto handler = [this](const httplib::Request& in, httplib::Response& out) { forward(impl_->service, in, out); };
  impl_->server.Get(".*", handler);
  impl_->server.Post(".*", handler);
  impl_->server.Put(".*", handler);
  impl_->server.Delete(".*", handler);
  impl_->server.Options(".*", [](const httplib::Request&, httplib::Response& out) {
    out.set_header("Access-Control-Allow-Origin", "*");
    out.set_header("Access-Control-Allow-Methods", "GET, POST, PUT, DELETE, OPTIONS");
    out.set_header("Access-Control-Allow-Headers", "Content-Type");
    out.status = 204;
  });
}

HttpFrontend::~HttpFrontend() { stop(); }

int HttpFrontend::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  if (!impl_->server.bind_to_port(host, port)) throw Error("cannot bind " + host + ":" + std::to_string(port));
  return port;
}

void HttpFrontend::listen() { impl_->server.listen_after_bind(); }

void HttpFrontend::stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace guidex
