// Copyright 2026 The claimkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "claimkit/http.h"

#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "claimkit/error.h"

namespace claimkit {

HttpResponse JsonError(int status, std::string_view code, std::string_view message) {
  return {status, nlohmann::json{{"error", code}, {"message", message}}.dump()};
}

struct HttpServer::Impl {
  httplib::Server server;
  std::thread thread;
};

HttpServer::HttpServer(HttpHandler handler,
                       std::optional<std::filesystem::path> static_dir)
    : impl_(std::make_unique<Impl>()) {
  if (static_dir) impl_->server.set_mount_point("/ui", static_dir->string());
  auto route = [handler](const httplib::Request &req, httplib::Response &res) {
    HttpRequest request;
    request.method = req.method;
    request.path = req.path;
    for (const auto &[key, value] : req.params) request.query.emplace(key, value);
    request.body = req.body;
    HttpResponse response;
    try {
      response = handler(request);
    } catch (const std::exception &e) {
      response = JsonError(500, "Internal", e.what());
    }
    res.status = response.status;
    res.set_content(response.body, response.content_type);
  };
  impl_->server.Get(".*", route);
  impl_->server.Post(".*", route);
}

HttpServer::~HttpServer() { Stop(); }

int HttpServer::Start(const std::string &host, int port) {
  int bound = port == 0 ? impl_->server.bind_to_any_port(host)
                        : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound <= 0) {
    throw Error(ErrorCode::kIo, "cannot bind " + host + ":" + std::to_string(port));
  }
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return bound;
}

void HttpServer::Wait() {
  if (impl_->thread.joinable()) impl_->thread.join();
}

void HttpServer::Stop() {
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace claimkit
