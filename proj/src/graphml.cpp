#include "guidex/graphml.hpp"

#include <expat.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <tuple>

namespace guidex {
namespace {

constexpr char kNsSeparator = '\x01';
constexpr const char* kGraphmlNs = "http://graphml.graphdrawing.org/xmlns";

struct KeyDecl {
  std::string id;
  std::string domain;  // node | edge | graph | all
  std::string name;
  std::optional<std::string> default_value;
};

struct DataItem {
  std::string key;
  std::string value;
};

struct RawNode {
  std::string id;
  std::vector<DataItem> data;
};

struct RawEdge {
  std::string source;
  std::string target;
  std::optional<bool> directed;
  std::vector<DataItem> data;
  long line = 0;
};

struct RawDocument {
  std::vector<KeyDecl> keys;
  std::optional<std::string> edgedefault;
  bool saw_graph = false;
  std::vector<DataItem> graph_data;
  std::vector<RawNode> nodes;
  std::vector<RawEdge> edges;
};

enum class Scope { none, graphml, key, key_default, graph, node, edge, data, other };

std::string_view local_name(const XML_Char* qualified) {
  std::string_view name(qualified);
  auto pos = name.rfind(kNsSeparator);
  return pos == std::string_view::npos ? name : name.substr(pos + 1);
}

std::string_view namespace_of(const XML_Char* qualified) {
  std::string_view name(qualified);
  auto pos = name.rfind(kNsSeparator);
  return pos == std::string_view::npos ? std::string_view{} : name.substr(0, pos);
}

std::optional<std::string> attribute(const XML_Char** attrs, std::string_view wanted) {
  for (int i = 0; attrs[i] != nullptr; i += 2) {
    if (local_name(attrs[i]) == wanted) return std::string(attrs[i + 1]);
  }
  return std::nullopt;
}

/// SAX state. Handlers run inside expat's C frames and must not throw, so
/// the first failure is captured and parsing is stopped.
class Reader {
 public:
  explicit Reader(XML_Parser parser) : parser_(parser) {}

  RawDocument document;
  std::exception_ptr failure;

  static void XMLCALL on_start(void* self, const XML_Char* name, const XML_Char** attrs) {
    auto* r = static_cast<Reader*>(self);
    if (r->failure) return;
    try {
      r->start(name, attrs);
    } catch (...) {
      r->fail(std::current_exception());
    }
  }

  static void XMLCALL on_end(void* self, const XML_Char* name) {
    auto* r = static_cast<Reader*>(self);
    // Expat still reports the end of an empty element after a stop.
    if (r->failure || r->stack_.empty()) return;
    try {
      r->end(name);
    } catch (...) {
      r->fail(std::current_exception());
    }
  }

  static void XMLCALL on_text(void* self, const XML_Char* text, int len) {
    auto* r = static_cast<Reader*>(self);
    if (r->failure) return;
    if (!r->stack_.empty() && (r->stack_.back() == Scope::data || r->stack_.back() == Scope::key_default)) {
      r->text_.append(text, static_cast<std::size_t>(len));
    }
  }

  static void XMLCALL on_entity_decl(void* self, const XML_Char* name, int, const XML_Char*, int,
                                     const XML_Char*, const XML_Char*, const XML_Char*,
                                     const XML_Char*) {
    auto* r = static_cast<Reader*>(self);
    r->fail(std::make_exception_ptr(
        UnsupportedFeature("entity declarations are not supported ('" + std::string(name) + "')")));
  }

 private:
  void fail(std::exception_ptr e) {
    if (!failure) failure = std::move(e);
    XML_StopParser(parser_, XML_FALSE);
  }

  long line() const { return static_cast<long>(XML_GetCurrentLineNumber(parser_)); }

  Scope parent() const { return stack_.empty() ? Scope::none : stack_.back(); }

  void start(const XML_Char* qualified, const XML_Char** attrs) {
    const std::string_view name = local_name(qualified);
    const std::string_view ns = namespace_of(qualified);
    const Scope up = parent();

    if (up == Scope::none) {
      if (name != "graphml") throw SchemaError("root element must be <graphml>, found <" + std::string(name) + ">");
      if (!ns.empty() && ns != kGraphmlNs) {
        throw SchemaError("unexpected namespace on <graphml>: " + std::string(ns));
      }
      stack_.push_back(Scope::graphml);
      return;
    }
    if (name == "port" || name == "hyperedge" || name == "endpoint") {
      throw UnsupportedFeature("<" + std::string(name) + "> is not supported");
    }
    if (name == "graph") {
      if (up == Scope::node || up == Scope::edge) throw UnsupportedFeature("nested graphs are not supported");
      if (up != Scope::graphml) throw SchemaError("<graph> must be a child of <graphml>");
      if (document.saw_graph) throw SchemaError("exactly one <graph> element is supported");
      document.saw_graph = true;
      document.edgedefault = attribute(attrs, "edgedefault");
      stack_.push_back(Scope::graph);
      return;
    }
    if (up == Scope::graphml && name == "key") {
      auto id = attribute(attrs, "id");
      if (!id) throw SchemaError("<key> without id");
      KeyDecl key{*id, attribute(attrs, "for").value_or("all"), attribute(attrs, "attr.name").value_or(*id), {}};
      document.keys.push_back(std::move(key));
      stack_.push_back(Scope::key);
      return;
    }
    if (up == Scope::key && name == "default") {
      text_.clear();
      stack_.push_back(Scope::key_default);
      return;
    }
    if (up == Scope::graph && name == "node") {
      auto id = attribute(attrs, "id");
      if (!id || id->empty()) throw SchemaError("<node> without id");
      document.nodes.push_back(RawNode{*id, {}});
      stack_.push_back(Scope::node);
      return;
    }
    if (up == Scope::graph && name == "edge") {
      auto source = attribute(attrs, "source");
      auto target = attribute(attrs, "target");
      if (!source || !target) throw SchemaError("<edge> needs source and target");
      RawEdge edge{*source, *target, {}, {}, line()};
      if (auto d = attribute(attrs, "directed")) {
        if (*d == "true") {
          edge.directed = true;
        } else if (*d == "false") {
          edge.directed = false;
        } else {
          throw SchemaError("edge directed attribute must be true or false");
        }
      }
      document.edges.push_back(std::move(edge));
      stack_.push_back(Scope::edge);
      return;
    }
    if (name == "data" && (up == Scope::graph || up == Scope::node || up == Scope::edge)) {
      auto key = attribute(attrs, "key");
      if (!key) throw SchemaError("<data> without key");
      pending_key_ = *key;
      text_.clear();
      stack_.push_back(Scope::data);
      return;
    }
    stack_.push_back(Scope::other);
  }

  void end(const XML_Char*) {
    const Scope done = stack_.back();
    stack_.pop_back();
    if (done == Scope::key_default) {
      document.keys.back().default_value = text_;
    } else if (done == Scope::data) {
      DataItem item{pending_key_, text_};
      switch (parent()) {
        case Scope::graph: document.graph_data.push_back(std::move(item)); break;
        case Scope::node: document.nodes.back().data.push_back(std::move(item)); break;
        case Scope::edge: document.edges.back().data.push_back(std::move(item)); break;
        default: break;
      }
    }
  }

  XML_Parser parser_;
  std::vector<Scope> stack_;
  std::string text_;
  std::string pending_key_;
};

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

double to_double(std::string_view text, const std::string& what) {
  text = trim(text);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw SchemaError("invalid number '" + std::string(text) + "' for " + what);
  }
  return value;
}

int to_int(std::string_view text, const std::string& what) {
  text = trim(text);
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw SchemaError("invalid integer '" + std::string(text) + "' for " + what);
  }
  return value;
}

std::vector<std::string_view> split_ws(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

class KeyTable {
 public:
  explicit KeyTable(const std::vector<KeyDecl>& keys) {
    for (const KeyDecl& k : keys) by_id_[k.id] = &k;
  }

  std::string name_of(const std::string& key_id) const {
    auto it = by_id_.find(key_id);
    return it == by_id_.end() ? key_id : it->second->name;
  }

  /// Data values for one element, with key defaults filled in.
  std::map<std::string, std::string> resolve(const std::vector<DataItem>& data,
                                             std::string_view domain) const {
    std::map<std::string, std::string> out;
    for (const auto& [id, key] : by_id_) {
      if (key->default_value && (key->domain == domain || key->domain == "all")) {
        out[key->name] = *key->default_value;
      }
    }
    for (const DataItem& item : data) out[name_of(item.key)] = item.value;
    return out;
  }

 private:
  std::map<std::string, const KeyDecl*> by_id_;
};

void warn_unknown(const std::map<std::string, std::string>& values, std::initializer_list<std::string_view> known,
                  std::string_view domain, std::set<std::string>& reported,
                  std::vector<std::string>& warnings) {
  for (const auto& [name, value] : values) {
    if (std::find(known.begin(), known.end(), name) != known.end()) continue;
    const std::string tag = std::string(domain) + ":" + name;
    if (reported.insert(tag).second) {
      warnings.push_back("ignoring unrecognized " + std::string(domain) + " data key '" + name + "'");
    }
  }
}

Graph build_graph(const RawDocument& doc, std::vector<std::string>& warnings) {
  if (!doc.saw_graph) throw SchemaError("document has no <graph> element");
  if (!doc.edgedefault) throw SchemaError("<graph> is missing the edgedefault attribute");
  bool directed = false;
  if (*doc.edgedefault == "directed") {
    directed = true;
  } else if (*doc.edgedefault != "undirected") {
    throw SchemaError("edgedefault must be 'directed' or 'undirected'");
  }

  KeyTable keys(doc.keys);
  std::set<std::string> reported;

  auto graph_values = keys.resolve(doc.graph_data, "graph");
  warn_unknown(graph_values, {"timestep_count", "graph_type"}, "graph", reported, warnings);

  // Edge timesteps decide the slice count unless the document states it.
  std::vector<std::map<std::string, std::string>> edge_values;
  edge_values.reserve(doc.edges.size());
  int max_timestep = -1;
  for (const RawEdge& e : doc.edges) {
    auto values = keys.resolve(e.data, "edge");
    if (auto it = values.find("timestep"); it != values.end()) {
      const int t = to_int(it->second, "edge timestep");
      if (t < 0) throw SchemaError("edge timestep must be >= 0");
      max_timestep = std::max(max_timestep, t);
    }
    edge_values.push_back(std::move(values));
  }
  int timesteps = max_timestep + 1;
  if (auto it = graph_values.find("timestep_count"); it != graph_values.end()) {
    timesteps = to_int(it->second, "timestep_count");
    if (timesteps < 1) throw SchemaError("timestep_count must be >= 1");
    if (max_timestep >= timesteps) throw SchemaError("edge timestep exceeds timestep_count");
  }
  Graph g(directed, std::max(timesteps, 1));

  if (auto it = graph_values.find("graph_type"); it != graph_values.end()) {
    for (std::string_view tag : split_ws(it->second)) {
      GraphTypeTag parsed{};
      try {
        parsed = graph_type_from_string(tag);
      } catch (const ValidationError& e) {
        throw SchemaError(e.what());
      }
      if (parsed != GraphTypeTag::flow_graph && parsed != GraphTypeTag::trajectory) {
        throw SchemaError("graph_type may only declare flow_graph or trajectory");
      }
      g.declare_type(parsed);
    }
  }

  for (const RawNode& raw : doc.nodes) {
    auto values = keys.resolve(raw.data, "node");
    warn_unknown(values, {"x", "y", "cluster", "label"}, "node", reported, warnings);
    Node node{raw.id, {}, {}, {}};
    if (auto it = values.find("label"); it != values.end()) node.label = it->second;
    auto x = values.find("x");
    auto y = values.find("y");
    if ((x == values.end()) != (y == values.end())) {
      throw SchemaError("node '" + raw.id + "' has only one of x and y");
    }
    if (x != values.end()) {
      node.position = Point{to_double(x->second, "x"), to_double(y->second, "y")};
    }
    if (auto it = values.find("cluster"); it != values.end()) {
      const int c = to_int(it->second, "cluster");
      if (c < 0) throw SchemaError("cluster must be >= 0");
      node.cluster = c;
    }
    if (g.find_node(node.id)) throw SchemaError("duplicate node id '" + node.id + "'");
    g.add_node(std::move(node));
  }

  for (std::size_t i = 0; i < doc.edges.size(); ++i) {
    const RawEdge& raw = doc.edges[i];
    auto& values = edge_values[i];
    warn_unknown(values, {"weight", "timestep", "attributes"}, "edge", reported, warnings);
    auto s = g.find_node(raw.source);
    if (!s) throw ReferenceError(raw.source);
    auto t = g.find_node(raw.target);
    if (!t) throw ReferenceError(raw.target);
    if (*s == *t) throw UnsupportedFeature("self-loop on node '" + raw.source + "'");
    Edge edge{*s, *t, {}, {}, {}, raw.directed};
    if (auto it = values.find("weight"); it != values.end()) edge.weight = to_double(it->second, "weight");
    if (auto it = values.find("timestep"); it != values.end()) edge.timestep = to_int(it->second, "timestep");
    if (auto it = values.find("attributes"); it != values.end()) {
      for (std::string_view token : split_ws(it->second)) edge.attributes.push_back(to_double(token, "attributes"));
    }
    g.add_edge(std::move(edge));
  }
  return g;
}

struct ParserDeleter {
  void operator()(XML_ParserStruct* p) const { XML_ParserFree(p); }
};

}  // namespace

GraphmlReadResult parse_graphml(std::string_view document) {
  std::unique_ptr<XML_ParserStruct, ParserDeleter> parser(XML_ParserCreateNS(nullptr, kNsSeparator));
  if (!parser) throw Error("could not allocate XML parser");
  Reader reader(parser.get());
  XML_SetUserData(parser.get(), &reader);
  XML_SetElementHandler(parser.get(), &Reader::on_start, &Reader::on_end);
  XML_SetCharacterDataHandler(parser.get(), &Reader::on_text);
  XML_SetEntityDeclHandler(parser.get(), &Reader::on_entity_decl);

  // Feed in chunks so documents larger than INT_MAX are still handled.
  constexpr std::size_t kChunk = 1 << 20;
  std::size_t offset = 0;
  XML_Status status = XML_STATUS_OK;
  do {
    const std::size_t len = std::min(kChunk, document.size() - offset);
    const bool last = offset + len == document.size();
    status = XML_Parse(parser.get(), document.data() + offset, static_cast<int>(len), last ? XML_TRUE : XML_FALSE);
    offset += len;
  } while (status == XML_STATUS_OK && offset < document.size());

  if (reader.failure) std::rethrow_exception(reader.failure);
  if (status != XML_STATUS_OK) {
    throw ParseError(XML_ErrorString(XML_GetErrorCode(parser.get())),
                     static_cast<long>(XML_GetCurrentLineNumber(parser.get())),
                     static_cast<long>(XML_GetCurrentColumnNumber(parser.get())) + 1);
  }

  GraphmlReadResult result{Graph{}, {}};
  result.graph = build_graph(reader.document, result.warnings);
  return result;
}

namespace {

std::string escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      case '\r': out += "&#13;"; break;
      case '\t': out += "&#9;"; break;
      case '\n': out += "&#10;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

std::string write_graphml(const Graph& graph) {
  bool any_label = false, any_pos = false, any_cluster = false;
  for (const Node& n : graph.nodes()) {
    any_label |= n.label.has_value();
    any_pos |= n.position.has_value();
    any_cluster |= n.cluster.has_value();
  }
  bool any_weight = false, any_timestep = false, any_attrs = false;
  for (const Edge& e : graph.edges()) {
    any_weight |= e.weight.has_value();
    any_timestep |= e.timestep.has_value();
    any_attrs |= !e.attributes.empty();
  }

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<graphml xmlns=\"" << kGraphmlNs << "\">\n";
  auto key = [&](const char* name, const char* domain, const char* type) {
    out << "  <key id=\"" << name << "\" for=\"" << domain << "\" attr.name=\"" << name
        << "\" attr.type=\"" << type << "\"/>\n";
  };
  if (graph.timestep_count() > 1) key("timestep_count", "graph", "int");
  if (!graph.declared_types().empty()) key("graph_type", "graph", "string");
  if (any_label) key("label", "node", "string");
  if (any_pos) {
    key("x", "node", "double");
    key("y", "node", "double");
  }
  if (any_cluster) key("cluster", "node", "int");
  if (any_weight) key("weight", "edge", "double");
  if (any_timestep) key("timestep", "edge", "int");
  if (any_attrs) key("attributes", "edge", "string");

  out << "  <graph id=\"G\" edgedefault=\"" << (graph.directed() ? "directed" : "undirected") << "\">\n";
  if (graph.timestep_count() > 1) {
    out << "    <data key=\"timestep_count\">" << graph.timestep_count() << "</data>\n";
  }
  if (!graph.declared_types().empty()) {
    out << "    <data key=\"graph_type\">";
    bool first = true;
    for (GraphTypeTag tag : graph.declared_types()) {
      out << (first ? "" : " ") << to_string(tag);
      first = false;
    }
    out << "</data>\n";
  }

  std::vector<std::size_t> node_order(graph.node_count());
  for (std::size_t i = 0; i < node_order.size(); ++i) node_order[i] = i;
  std::sort(node_order.begin(), node_order.end(),
            [&](std::size_t a, std::size_t b) { return graph.node(a).id < graph.node(b).id; });
  for (std::size_t i : node_order) {
    const Node& n = graph.node(i);
    out << "    <node id=\"" << escape(n.id) << "\"";
    if (!n.label && !n.position && !n.cluster) {
      out << "/>\n";
      continue;
    }
    out << ">";
    if (n.label) out << "<data key=\"label\">" << escape(*n.label) << "</data>";
    if (n.position) {
      out << "<data key=\"x\">" << format_double(n.position->x) << "</data>";
      out << "<data key=\"y\">" << format_double(n.position->y) << "</data>";
    }
    if (n.cluster) out << "<data key=\"cluster\">" << *n.cluster << "</data>";
    out << "</node>\n";
  }

  std::vector<std::size_t> edge_order(graph.edge_count());
  for (std::size_t i = 0; i < edge_order.size(); ++i) edge_order[i] = i;
  auto edge_key = [&](std::size_t i) {
    const Edge& e = graph.edges()[i];
    return std::make_tuple(std::cref(graph.node(e.source).id), std::cref(graph.node(e.target).id),
                           e.timestep.value_or(-1));
  };
  std::sort(edge_order.begin(), edge_order.end(),
            [&](std::size_t a, std::size_t b) { return edge_key(a) < edge_key(b); });
  for (std::size_t i : edge_order) {
    const Edge& e = graph.edges()[i];
    out << "    <edge source=\"" << escape(graph.node(e.source).id) << "\" target=\""
        << escape(graph.node(e.target).id) << "\"";
    if (e.directed) out << " directed=\"" << (*e.directed ? "true" : "false") << "\"";
    if (!e.weight && !e.timestep && e.attributes.empty()) {
      out << "/>\n";
      continue;
    }
    out << ">";
    if (e.weight) out << "<data key=\"weight\">" << format_double(*e.weight) << "</data>";
    if (e.timestep) out << "<data key=\"timestep\">" << *e.timestep << "</data>";
    if (!e.attributes.empty()) {
      out << "<data key=\"attributes\">";
      for (std::size_t k = 0; k < e.attributes.size(); ++k) {
        out << (k ? " " : "") << format_double(e.attributes[k]);
      }
      out << "</data>";
    }
    out << "</edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace guidex
