#pragma once

#include <cstdint>
#include <functional>
#include <list>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "guidex/graph.hpp"
#include "guidex/guideline.hpp"
#include "guidex/mappings.hpp"
#include "guidex/registry.hpp"

namespace guidex {

struct SessionGraph {
  std::string id;
  Graph graph;
  GraphMetrics metrics;
  std::string description;
};

/// "3 clusters, 50 nodes and 156 edges, directed" style summary.
std::string describe_graph(const Graph& graph, const GraphMetrics& metrics);

/// In-memory session graphs with least-recently-used eviction.
class SessionStore {
 public:
  explicit SessionStore(std::size_t capacity = 64);

  /// Computes metrics; throws DegenerateGraph for graphs with fewer than two
  /// nodes.
  std::shared_ptr<const SessionGraph> put(Graph graph);
  /// Throws NotFound; a hit refreshes the entry.
  std::shared_ptr<const SessionGraph> get(const std::string& id);
  std::size_t size() const;
  std::size_t capacity() const noexcept { return capacity_; }

 private:
  mutable std::mutex mutex_;
  std::size_t capacity_;
  std::uint64_t next_ = 1;
  std::list<std::string> order_;
  std::unordered_map<std::string,
                     std::pair<std::shared_ptr<const SessionGraph>, std::list<std::string>::iterator>>
      entries_;
};

struct Request {
  std::string method;
  std::string path;
  std::multimap<std::string, std::string> query;
  std::string body;

  std::optional<std::string> param(const std::string& name) const;
};

struct Response {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
  std::map<std::string, std::string> headers;
};

/// HTTP status for a library error; 500 for anything else.
int status_for(const std::exception& e);

/// Thumbnail of one guideline's mapping on a small fixed graph.
std::string guideline_preview_svg(const GuidelineRecord& record, const MappingSpec& mapping);

/// Transport-independent request handling. Every error status comes from an
/// engine exception; the handler adds no scoring or validation of its own.
class Service {
 public:
  explicit Service(Registry& registry, std::size_t session_capacity = 64);

  Response handle(const Request& request);
  SessionStore& sessions() noexcept { return sessions_; }

 private:
  Response dispatch(const Request& request);
  Response graph_created(const SessionGraph& session);
  Response render_graph(const SessionGraph& session, const Request& request);
  Response plan_for_graph(const SessionGraph& session, const Request& request);

  Registry& registry_;
  SessionStore sessions_;
};

/// HTTP transport for a Service.
class HttpFrontend {
 public:
  explicit HttpFrontend(Service& service);
  ~HttpFrontend();
  HttpFrontend(const HttpFrontend&) = delete;
  HttpFrontend& operator=(const HttpFrontend&) = delete;

  /// Binds the socket; port 0 picks a free port. Returns the bound port.
  int bind(const std::string& host, int port);
  /// Blocks until stop() is called.
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace guidex
