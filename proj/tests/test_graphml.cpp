#include <gtest/gtest.h>

#include "guidex/generate.hpp"
#include "guidex/graphml.hpp"
#include "support.hpp"

namespace guidex {
namespace {

constexpr const char* kMinimal = R"(<?xml version="1.0"?>
<graphml xmlns="http://graphml.graphdrawing.org/xmlns">
  <graph edgedefault="directed">
    <node id="a"/><node id="b"/><node id="c"/>
    <edge source="a" target="b"/><edge source="b" target="c"/>
  </graph>
</graphml>
)";

std::string with_body(const std::string& graph_attrs, const std::string& body, const std::string& keys = "") {
  return "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">" + keys + "<graph " + graph_attrs + ">" + body +
         "</graph></graphml>";
}

TEST(GraphmlRead, MinimalDocument) {
  const auto result = parse_graphml(kMinimal);
  EXPECT_TRUE(result.warnings.empty());
  const Graph& g = result.graph;
  EXPECT_TRUE(g.directed());
  EXPECT_EQ(g.node_count(), 3u);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_TRUE(g.has_edge(*g.find_node("a"), *g.find_node("b")));
}

TEST(GraphmlRead, NamespaceIsOptional) {
  const auto g = parse_graphml(R"(<graphml><graph edgedefault="undirected"><node id="x"/><node id="y"/>
      <edge source="x" target="y"/></graph></graphml>)")
                     .graph;
  EXPECT_FALSE(g.directed());
  EXPECT_EQ(g.edge_count(), 1u);
}

TEST(GraphmlRead, PrefixedNamespaceIsAccepted) {
  const auto g = parse_graphml(R"(<g:graphml xmlns:g="http://graphml.graphdrawing.org/xmlns">
      <g:graph edgedefault="directed"><g:node id="x"/><g:node id="y"/><g:edge source="x" target="y"/></g:graph>
      </g:graphml>)")
                     .graph;
  EXPECT_EQ(g.edge_count(), 1u);
}

TEST(GraphmlRead, MalformedXmlReportsLineAndColumn) {
  try {
    parse_graphml("<graphml>\n  <graph edgedefault=\"directed\">\n    <node id=\"a\">\n</graphml>");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4);
    EXPECT_GE(e.column(), 1);
  }
}

TEST(GraphmlRead, MissingEdgedefaultIsASchemaError) {
  EXPECT_THROW(parse_graphml(with_body("", "<node id=\"a\"/>")), SchemaError);
  EXPECT_THROW(parse_graphml(with_body("edgedefault=\"sideways\"", "")), SchemaError);
  EXPECT_THROW(parse_graphml("<notgraphml/>"), SchemaError);
  EXPECT_THROW(parse_graphml("<graphml/>"), SchemaError);
}

TEST(GraphmlRead, DanglingEndpointNamesTheMissingNode) {
  try {
    parse_graphml(with_body("edgedefault=\"directed\"", "<node id=\"a\"/><edge source=\"a\" target=\"b\"/>"));
    FAIL() << "expected ReferenceError";
  } catch (const ReferenceError& e) {
    EXPECT_EQ(e.missing_node(), "b");
  }
}

TEST(GraphmlRead, UnsupportedConstructs) {
  EXPECT_THROW(parse_graphml(with_body("edgedefault=\"directed\"", "<node id=\"a\"/><edge source=\"a\" target=\"a\"/>")),
               UnsupportedFeature);
  EXPECT_THROW(parse_graphml(with_body("edgedefault=\"directed\"",
                                       "<node id=\"a\"><graph edgedefault=\"directed\"/></node>")),
               UnsupportedFeature);
  EXPECT_THROW(parse_graphml(with_body("edgedefault=\"directed\"", "<node id=\"a\"><port name=\"p\"/></node>")),
               UnsupportedFeature);
  EXPECT_THROW(parse_graphml("<!DOCTYPE g [<!ENTITY e \"x\">]><graphml/>"), UnsupportedFeature);
}

TEST(GraphmlRead, BadValuesAreSchemaErrors) {
  const std::string keys = "<key id=\"x\" for=\"node\" attr.name=\"x\"/><key id=\"y\" for=\"node\" attr.name=\"y\"/>";
  EXPECT_THROW(parse_graphml(with_body("edgedefault=\"directed\"", "<node id=\"a\"><data key=\"x\">1</data></node>", keys)),
               SchemaError);
  EXPECT_THROW(parse_graphml(with_body("edgedefault=\"directed\"",
                                       "<node id=\"a\"><data key=\"x\">one</data><data key=\"y\">2</data></node>", keys)),
               SchemaError);
  EXPECT_THROW(parse_graphml(with_body("edgedefault=\"directed\"", "<node id=\"a\"/><node id=\"a\"/>")), SchemaError);
}

TEST(GraphmlRead, UnknownKeysProduceOneWarningEach) {
  const auto result = parse_graphml(with_body(
      "edgedefault=\"undirected\"",
      "<node id=\"a\"><data key=\"d0\">red</data></node><node id=\"b\"><data key=\"d0\">blue</data></node>",
      "<key id=\"d0\" for=\"node\" attr.name=\"color\"/>"));
  ASSERT_EQ(result.warnings.size(), 1u);
  EXPECT_NE(result.warnings[0].find("color"), std::string::npos);
}

TEST(GraphmlRead, KeyDefaultsAndAttrNamesAreHonoured) {
  const auto g = parse_graphml(with_body("edgedefault=\"directed\"",
                                         "<node id=\"a\"/><node id=\"b\"><data key=\"k1\">3</data></node>",
                                         "<key id=\"k1\" for=\"node\" attr.name=\"cluster\"><default>1</default></key>"))
                     .graph;
  EXPECT_EQ(g.node(*g.find_node("a")).cluster, 1);
  EXPECT_EQ(g.node(*g.find_node("b")).cluster, 3);
}

TEST(GraphmlRead, EdgeTimestepsSetTheSliceCount) {
  const auto g = parse_graphml(with_body("edgedefault=\"directed\"",
                                         "<node id=\"a\"/><node id=\"b\"/><edge source=\"a\" target=\"b\">"
                                         "<data key=\"t\">2</data></edge>",
                                         "<key id=\"t\" for=\"edge\" attr.name=\"timestep\"/>"))
                     .graph;
  EXPECT_EQ(g.timestep_count(), 3);
}

TEST(GraphmlWrite, GeneratedClusterGraphRoundTrips) {
  GenerationSpec spec;
  spec.node_count = 12;
  spec.cluster_count = 3;
  spec.seed = 7;
  const Graph g = generate_graph(spec);
  const std::string doc = write_graphml(g);
  EXPECT_NE(doc.find("attr.name=\"cluster\""), std::string::npos);
  const auto back = parse_graphml(doc);
  EXPECT_EQ(back.graph.node_count(), 12u);
  EXPECT_TRUE(back.graph == g);
  EXPECT_TRUE(back.warnings.empty());
}

TEST(GraphmlWrite, RandomGraphsRoundTripAndWriteDeterministically) {
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = testing::random_rich_graph(rng, 20);
    const std::string doc = write_graphml(g);
    const Graph back = parse_graphml(doc).graph;
    ASSERT_TRUE(back == g) << doc;
    EXPECT_EQ(write_graphml(back), doc);
  }
}

TEST(GraphmlWrite, DynamicGeneratedGraphsRoundTrip) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = generate_graph(testing::random_spec(rng, 30, 4));
    EXPECT_TRUE(parse_graphml(write_graphml(g)).graph == g);
  }
}

TEST(GraphmlRead, MutatedDocumentsNeverEscapeAsForeignExceptions) {
  Rng rng(1234);
  const std::string base = write_graphml(testing::random_rich_graph(rng, 8));
  for (int trial = 0; trial < 2000; ++trial) {
    std::string doc = base;
    const auto edits = 1 + rng.below(4);
    for (std::uint64_t k = 0; k < edits && !doc.empty(); ++k) {
      const auto pos = rng.below(doc.size());
      switch (rng.below(4)) {
        case 0: doc[pos] = static_cast<char>(rng.below(256)); break;
        case 1: doc.erase(pos, 1 + rng.below(8)); break;
        case 2: doc.insert(pos, "<edge source=\"zz\" target=\"v\"/>"); break;
        default: doc.resize(pos); break;
      }
    }
    try {
      parse_graphml(doc);
    } catch (const Error&) {
    }
  }
  SUCCEED();
}

}  // namespace
}  // namespace guidex
