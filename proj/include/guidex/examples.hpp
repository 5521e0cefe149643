#pragma once

#include <string>

#include "guidex/graph.hpp"

namespace guidex {

/// Hand-authored example graph whose detected or declared types include
/// `kind`. Flow graphs carry edge weights; trajectories carry positions and
/// form one simple path.
Graph example_graph(GraphTypeTag kind);

/// One-line description used by the example gallery.
std::string example_description(GraphTypeTag kind);

enum class UseCase { sparse, dense };

inline constexpr int kUseCaseNodes = 50;
inline constexpr int kUseCaseSparseEdges = 156;  // density 0.0637
inline constexpr int kUseCaseDenseEdges = 248;   // density 0.1012

/// The 50-node directed graphs of the tapered/partially-drawn walkthrough.
/// Weakly connected, deterministic, shipped as data/use_case_*.graphml.
Graph use_case_graph(UseCase which);

/// Fixed six-node graph used for guideline preview thumbnails.
Graph preview_graph(bool directed);

}  // namespace guidex
