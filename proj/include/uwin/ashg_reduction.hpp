#pragma once

#include "uwin/ashg.hpp"
#include "uwin/problems.hpp"

namespace uwin {

/// Hedonic game to weighted-graph dice. Off-diagonal weights copy the
/// valuations; the self-loop of vertex i becomes (i+1) * (U + L + 1), where
/// U and L are the total positive and total absolute negative valuation
/// mass. The self-loops push different vertices' face values into disjoint
/// ascending ranges, so cross-vertex comparisons contribute a fixed zero-sum
/// pattern and only the per-agent preference order (which the shift
/// preserves) decides each match. Games holding the -infinity sentinel are
/// rejected: its magnitude would swamp the range separation.
inline GraphDiceInstance ashg_to_graph_dice(const Ashg& g) {
    g.validate();
    if (g.has_neg_inf())
        throw ValidationError("ashg_to_graph_dice: -infinity valuations are not reducible");
    std::int64_t pos = 0, neg = 0;
    for (int i = 0; i < g.agent_count; ++i)
        for (int j = 0; j < g.agent_count; ++j) {
            if (i == j) continue;
            if (g.value(i, j) > 0) pos += g.value(i, j);
            else neg += -g.value(i, j);
        }
    const std::int64_t spread = pos + neg + 1;

    GraphDiceInstance out;
    out.vertex_count = g.agent_count;
    out.weights.assign(static_cast<size_t>(g.agent_count),
                       std::vector<std::int64_t>(static_cast<size_t>(g.agent_count), 0));
    for (int i = 0; i < g.agent_count; ++i)
        for (int j = 0; j < g.agent_count; ++j)
            out.weights[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                i == j ? static_cast<std::int64_t>(i + 1) * spread : g.value(i, j);
    out.validate();
    return out;
}

} // namespace uwin
