#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "uwin/ashg.hpp"
#include "uwin/normalize.hpp"
#include "uwin/problems.hpp"
#include "uwin/rng.hpp"

namespace uwin {

// ---------------------------------------------------------------------------
// Gadget bookkeeping for the Condorcet-to-hedonic construction. For each
// input bit there is an assignment gadget (two complementary A-agents and an
// alternative agent, each with m one-way replicas); for each gate of each
// circuit a gate gadget (true/false G-agents and an alternative, one replica
// each, plus W/Z helper pairs on And-gates); one voter agent per circuit; and
// a block of X-agents big enough to outnumber everyone else combined.

enum class AgentRole { X, A1, A0, LA, G1, G0, LG, W, Z, V };

inline const char* role_name(AgentRole r) {
    switch (r) {
    case AgentRole::X: return "X";
    case AgentRole::A1: return "A1";
    case AgentRole::A0: return "A0";
    case AgentRole::LA: return "LA";
    case AgentRole::G1: return "G1";
    case AgentRole::G0: return "G0";
    case AgentRole::LG: return "LG";
    case AgentRole::W: return "W";
    case AgentRole::Z: return "Z";
    case AgentRole::V: return "V";
    }
    return "?";
}

struct GadgetMap {
    int n = 0; // input bits
    int m = 0; // circuits
    int agent_count = 0;
    std::vector<int> x_agents; // first n entries are the bit agents x_1..x_n

    struct BitGadget {
        std::vector<int> t, f, l; // core agent first, then its m replicas
    };
    std::vector<BitGadget> bits;

    struct GateGadget {
        GateKind kind = GateKind::Input; // Input means Copy here
        int in_bit = -1;                 // Copy: which input bit
        int in1 = -1, in2 = -1;          // Not/And: source gate indices
        std::vector<int> t, f, l;        // core + one replica each
        std::vector<int> w, z;           // And only: core + one replica
        bool is_and() const { return kind == GateKind::And; }
    };
    std::vector<std::vector<GateGadget>> gates; // [circuit][gate]

    std::vector<int> voters;            // one per circuit
    std::vector<AgentRole> role;        // per agent
    std::vector<std::string> gadget_id; // per agent, sidecar annotation
    std::vector<int> replica_origin;    // -1 for origin agents
};

struct GadgetGame {
    Ashg game;
    GadgetMap map;
    std::vector<Circuit> circuits; // normalized, distinct output gates
};

namespace gadget_detail {

/// Set-once core valuation matrix; identical reassignments are idempotent,
/// conflicting ones are construction errors.
class CoreVals {
public:
    explicit CoreVals(int count)
        : count_(count), state_(static_cast<size_t>(count) * count, 0),
          vals_(static_cast<size_t>(count) * count, 0) {}

    void set(int i, int j, std::int64_t v) {
        size_t idx = static_cast<size_t>(i) * count_ + j;
        if (state_[idx] == 2 || (state_[idx] == 1 && vals_[idx] != v))
            throw Error("gadget: conflicting valuation assignment");
        state_[idx] = 1;
        vals_[idx] = v;
    }
    void set_neg(int i, int j) {
        size_t idx = static_cast<size_t>(i) * count_ + j;
        if (state_[idx] == 1) throw Error("gadget: conflicting valuation assignment");
        state_[idx] = 2;
    }
    bool is_set(int i, int j) const {
        return state_[static_cast<size_t>(i) * count_ + j] != 0;
    }
    bool is_neg(int i, int j) const {
        return state_[static_cast<size_t>(i) * count_ + j] == 2;
    }
    std::int64_t value(int i, int j) const {
        return vals_[static_cast<size_t>(i) * count_ + j];
    }

private:
    int count_;
    std::vector<std::int8_t> state_;
    std::vector<std::int64_t> vals_;
};

/// Make the output gate list duplicate-free by appending double-Not chains.
inline Circuit distinct_outputs(Circuit c) {
    std::set<std::int32_t> seen;
    for (auto& o : c.outputs) {
        while (seen.count(o)) {
            c.gates.push_back(Gate::not_of(o));
            c.gates.push_back(Gate::not_of(static_cast<std::int32_t>(c.gates.size() - 1)));
            o = static_cast<std::int32_t>(c.gates.size() - 1);
        }
        seen.insert(o);
    }
    return c;
}

} // namespace gadget_detail

/// Build the hedonic game of a Condorcet instance. Circuits must be square
/// (n outputs over n inputs); they are normalized here, so And/Not form with
/// leading Copy-gates is established internally.
inline GadgetGame build_ashg_from_condorcet(const CondorcetInstance& inst) {
    inst.validate();
    const int n = inst.candidate_bits();
    const int m = static_cast<int>(inst.circuits.size());
    if (inst.value_bits() != n)
        throw ValidationError("gadget: circuits must have n outputs over n inputs");

    GadgetGame gg;
    gg.map.n = n;
    gg.map.m = m;
    for (const Circuit& c : inst.circuits) {
        Circuit nc = gadget_detail::distinct_outputs(normalize_and_not(c));
        if (!is_normalized(nc)) throw ValidationError("gadget: normalization failed");
        gg.circuits.push_back(std::move(nc));
    }

    // ---- agent layout
    GadgetMap& gm = gg.map;
    long x_count = 1 + 9L * m * n + 3L * n;
    for (const Circuit& c : gg.circuits) x_count += 10L * c.gate_count() + 1;

    int next = 0;
    auto add_agent = [&](AgentRole r, const std::string& gid, int origin) {
        gm.role.push_back(r);
        gm.gadget_id.push_back(gid);
        gm.replica_origin.push_back(origin);
        return next++;
    };

    for (long i = 0; i < x_count; ++i)
        gm.x_agents.push_back(add_agent(AgentRole::X, i < n ? "x" + std::to_string(i) : "-", -1));

    for (int i = 0; i < n; ++i) {
        GadgetMap::BitGadget bg;
        std::string gid = "bit" + std::to_string(i);
        auto family = [&](AgentRole r, std::vector<int>& out) {
            int core = add_agent(r, gid, -1);
            out.push_back(core);
            for (int rcopy = 0; rcopy < m; ++rcopy) out.push_back(add_agent(r, gid, core));
        };
        family(AgentRole::A1, bg.t);
        family(AgentRole::A0, bg.f);
        family(AgentRole::LA, bg.l);
        gm.bits.push_back(std::move(bg));
    }

    gm.gates.resize(static_cast<size_t>(m));
    for (int j = 0; j < m; ++j) {
        const Circuit& c = gg.circuits[static_cast<size_t>(j)];
        for (int g = 0; g < c.gate_count(); ++g) {
            GadgetMap::GateGadget gd;
            const Gate& gate = c.gates[static_cast<size_t>(g)];
            std::string gid = "c" + std::to_string(j) + ".g" + std::to_string(g);
            gd.kind = gate.kind;
            if (gate.kind == GateKind::Input) gd.in_bit = gate.a;
            else if (gate.kind == GateKind::Not) gd.in1 = gate.a;
            else {
                gd.in1 = gate.a;
                gd.in2 = gate.b;
            }
            auto family = [&](AgentRole r, std::vector<int>& out) {
                int core = add_agent(r, gid, -1);
                out.push_back(core);
                out.push_back(add_agent(r, gid, core));
            };
            family(AgentRole::G1, gd.t);
            family(AgentRole::G0, gd.f);
            family(AgentRole::LG, gd.l);
            if (gd.is_and()) {
                family(AgentRole::W, gd.w);
                family(AgentRole::Z, gd.z);
            }
            gm.gates[static_cast<size_t>(j)].push_back(std::move(gd));
        }
        gm.voters.push_back(add_agent(AgentRole::V, "c" + std::to_string(j), -1));
    }
    gm.agent_count = next;
    if (2 * x_count <= gm.agent_count)
        throw Error("gadget: X-agents fail to form a majority");

    // ---- core valuations (replicas expanded afterwards)
    gadget_detail::CoreVals core(gm.agent_count);
    auto is_core = [&](int a) { return gm.replica_origin[static_cast<size_t>(a)] < 0; };

    // X-agents value each other 1
    for (int a : gm.x_agents)
        for (int b : gm.x_agents)
            if (a != b) core.set(a, b, 1);

    for (int i = 0; i < n; ++i) {
        const auto& bg = gm.bits[static_cast<size_t>(i)];
        int a1 = bg.t[0], a0 = bg.f[0], la = bg.l[0], xi = gm.x_agents[static_cast<size_t>(i)];
        core.set_neg(a1, a0);
        core.set_neg(a0, a1);
        core.set(a1, xi, 1);
        core.set(a0, xi, 1);
        core.set(a1, la, 1);
        core.set(a0, la, 1);
        core.set(la, a1, 1);
        core.set(la, a0, 1);
    }

    for (int j = 0; j < m; ++j) {
        for (const auto& gd : gm.gates[static_cast<size_t>(j)]) {
            int g1 = gd.t[0], g0 = gd.f[0], lg = gd.l[0];
            core.set_neg(g1, g0);
            core.set_neg(g0, g1);
            core.set(lg, g1, 1);
            core.set(lg, g0, 1);

            if (gd.kind == GateKind::Input) {
                const auto& bg = gm.bits[static_cast<size_t>(gd.in_bit)];
                int a1 = bg.t[0], a0 = bg.f[0];
                core.set(g1, a1, 1);
                core.set(g1, lg, 1);
                core.set_neg(g1, a0);
                core.set(g0, a0, 1);
                core.set(g0, lg, 1);
                core.set_neg(g0, a1);
                core.set_neg(a1, g0);
                core.set_neg(a0, g1);
            } else if (gd.kind == GateKind::Not) {
                const auto& src = gm.gates[static_cast<size_t>(j)][static_cast<size_t>(gd.in1)];
                int u1 = src.t[0], u0 = src.f[0];
                core.set(g1, u0, 1);
                core.set(g1, lg, 1);
                core.set_neg(g1, u1);
                core.set(g0, u1, 1);
                core.set(g0, lg, 1);
                core.set_neg(g0, u0);
                core.set_neg(u1, g1);
                core.set_neg(u0, g0);
            } else {
                const auto& lsrc = gm.gates[static_cast<size_t>(j)][static_cast<size_t>(gd.in1)];
                const auto& rsrc = gm.gates[static_cast<size_t>(j)][static_cast<size_t>(gd.in2)];
                int j1 = lsrc.t[0], j0 = lsrc.f[0];
                int k1 = rsrc.t[0], k0 = rsrc.f[0];
                int w = gd.w[0], z = gd.z[0];
                core.set(g1, j1, 1);
                core.set(g1, k1, 1);
                core.set(g1, lg, 2);
                core.set_neg(g1, j0);
                core.set_neg(g1, k0);
                core.set_neg(g1, w);
                core.set_neg(g1, z);
                core.set(g0, j0, 1);
                core.set(g0, w, 1);
                core.set(g0, k0, 2);
                core.set(g0, z, 2);
                core.set(g0, lg, 3);
                core.set_neg(w, g1);
                core.set_neg(w, k1);
                core.set_neg(w, j0);
                core.set_neg(w, z);
                core.set_neg(z, g1);
                core.set_neg(z, j1);
                core.set_neg(z, k0);
                core.set_neg(z, w);
                core.set_neg(j1, z);
                core.set_neg(k1, w);
                core.set_neg(j0, g1);
                core.set_neg(j0, w);
                core.set_neg(k0, g1);
                core.set_neg(k0, z);
            }
        }

        // voter: other voters and x_1 at 2^{n+1}; true-agent of output
        // position p (1 = least significant) at 2^p
        int vj = gm.voters[static_cast<size_t>(j)];
        for (int jp = 0; jp < m; ++jp)
            if (jp != j) core.set(vj, gm.voters[static_cast<size_t>(jp)], std::int64_t{1} << (n + 1));
        core.set(vj, gm.x_agents[0], std::int64_t{1} << (n + 1));
        const Circuit& c = gg.circuits[static_cast<size_t>(j)];
        for (int t = 0; t < n; ++t) {
            int gate = c.outputs[static_cast<size_t>(t)]; // t = 0 is the MSB
            int power = n - t;
            core.set(vj, gm.gates[static_cast<size_t>(j)][static_cast<size_t>(gate)].t[0],
                     std::int64_t{1} << power);
        }
    }

    // Known boundary: helper agents of distinct And-gates assign 0 to each
    // other, so a rival that merges two parked helper pair-coalitions is
    // utility-neutral for everyone and ties the designated partition
    // (phi = 0). Static repulsion cannot repair it, because mixed-input
    // gates park one helper pair inside the main coalition, where any two
    // same-role helpers may legitimately coexist. neutral_helper_merges()
    // below enumerates exactly these rivals.

    // alternative agents repel everything not explicitly tied to them
    for (int a = 0; a < gm.agent_count; ++a) {
        if (!is_core(a)) continue;
        if (gm.role[static_cast<size_t>(a)] != AgentRole::LA &&
            gm.role[static_cast<size_t>(a)] != AgentRole::LG)
            continue;
        for (int b = 0; b < gm.agent_count; ++b) {
            if (b == a || !is_core(b)) continue;
            if (!core.is_set(a, b)) core.set_neg(a, b);
            if (!core.is_set(b, a)) core.set_neg(b, a);
        }
    }

    // ---- expand to the full game, replicas included
    Ashg game = Ashg::empty(gm.agent_count);
    game.replica_root = gm.replica_origin;
    auto origin_of = [&](int a) {
        int o = gm.replica_origin[static_cast<size_t>(a)];
        return o < 0 ? a : o;
    };
    for (int p = 0; p < gm.agent_count; ++p) {
        for (int q = 0; q < gm.agent_count; ++q) {
            if (p == q) continue;
            int op = origin_of(p), oq = origin_of(q);
            if (op == oq) {
                game.set_value(p, q, 10); // one family: origin and replicas
                continue;
            }
            if (!core.is_set(op, oq)) continue;
            if (core.is_neg(op, oq)) {
                game.set_neg_inf(p, q); // negative opinions transfer to replicas
            } else if (q == oq) {
                game.set_value(p, q, core.value(op, oq));
            } // nonnegative opinions of replicas stay at zero
        }
    }
    game.finalize();
    game.validate();
    gg.game = std::move(game);
    return gg;
}

// ---------------------------------------------------------------------------
// The designated partition of a candidate string, and its inverse.

/// Gate values of circuit j on input x (full wire vector).
inline std::vector<std::uint8_t> gate_values(const GadgetGame& gg, int j, const BitString& x) {
    std::vector<std::uint8_t> wires;
    gg.circuits[static_cast<size_t>(j)].eval_gates(x.bits(), wires);
    return wires;
}

/// The main-coalition partition of string x: all X- and V-agents plus every
/// gadget's winning side together, each losing side with its alternative
/// agent, W/Z placed by the And-input case split.
inline Partition build_pi_star(const GadgetGame& gg, const BitString& x) {
    const GadgetMap& gm = gg.map;
    if (x.width() != gm.n) throw ValidationError("build_pi_star: width mismatch");
    std::vector<int> labels(static_cast<size_t>(gm.agent_count), -1);
    int next_block = 1; // block 0 is the main coalition
    auto assign = [&](const std::vector<int>& agents, int block) {
        for (int a : agents) labels[static_cast<size_t>(a)] = block;
    };

    assign(gm.x_agents, 0);
    for (int v : gm.voters) labels[static_cast<size_t>(v)] = 0;

    for (int i = 0; i < gm.n; ++i) {
        const auto& bg = gm.bits[static_cast<size_t>(i)];
        int side_block = next_block++;
        if (x.bit(i)) {
            assign(bg.t, 0);
            assign(bg.f, side_block);
            assign(bg.l, side_block);
        } else {
            assign(bg.f, 0);
            assign(bg.t, side_block);
            assign(bg.l, side_block);
        }
    }

    for (int j = 0; j < gm.m; ++j) {
        std::vector<std::uint8_t> wires = gate_values(gg, j, x);
        for (size_t g = 0; g < gm.gates[static_cast<size_t>(j)].size(); ++g) {
            const auto& gd = gm.gates[static_cast<size_t>(j)][g];
            int side_block = next_block++;
            if (wires[g]) {
                assign(gd.t, 0);
                assign(gd.f, side_block);
                assign(gd.l, side_block);
            } else {
                assign(gd.f, 0);
                assign(gd.t, side_block);
                assign(gd.l, side_block);
            }
            if (gd.is_and()) {
                int vj = wires[static_cast<size_t>(gd.in1)], vk = wires[static_cast<size_t>(gd.in2)];
                if (vj == vk) {
                    assign(gd.w, next_block++);
                    assign(gd.z, next_block++);
                } else if (vj == 0) { // (0,1): Z joins the main coalition
                    assign(gd.z, 0);
                    assign(gd.w, next_block++);
                } else { // (1,0): W joins the main coalition
                    assign(gd.w, 0);
                    assign(gd.z, next_block++);
                }
            }
        }
    }
    return Partition::from_labels(labels);
}

/// Inverse of build_pi_star on the assignment gadgets: read the bit string
/// a partition corresponds to, if each A-gadget is split validly.
inline std::optional<BitString> extract_string(const GadgetGame& gg, const Partition& pi) {
    const GadgetMap& gm = gg.map;
    std::vector<int> labels = pi.labels();
    int mc = labels[static_cast<size_t>(gm.x_agents[0])];
    std::vector<std::uint8_t> bits(static_cast<size_t>(gm.n));
    for (int i = 0; i < gm.n; ++i) {
        const auto& bg = gm.bits[static_cast<size_t>(i)];
        bool a1_in = labels[static_cast<size_t>(bg.t[0])] == mc;
        bool a0_in = labels[static_cast<size_t>(bg.f[0])] == mc;
        bool a1_with_l = labels[static_cast<size_t>(bg.t[0])] ==
                         labels[static_cast<size_t>(bg.l[0])];
        bool a0_with_l = labels[static_cast<size_t>(bg.f[0])] ==
                         labels[static_cast<size_t>(bg.l[0])];
        if (a1_in && a0_with_l) bits[static_cast<size_t>(i)] = 1;
        else if (a0_in && a1_with_l) bits[static_cast<size_t>(i)] = 0;
        else return std::nullopt;
    }
    return BitString(std::move(bits));
}

// ---------------------------------------------------------------------------
// Utility caps of the designated partition, per agent role.

struct CapReport {
    bool ok = true;
    struct Entry {
        int agent;
        std::int64_t utility;
        std::int64_t cap;
        bool within;
    };
    std::vector<Entry> entries;
};

/// Per-role utility ceilings in the designated partition: X-agents reach
/// |X| - 1; assignment-gadget members 10m + 1; alternative and Copy/Not gate
/// agents 11; And-gate true side 12, false side 13; W/Z exactly their
/// replica bond of 10.
inline CapReport check_caps(const GadgetGame& gg, const Partition& pi) {
    const GadgetMap& gm = gg.map;
    std::vector<int> labels = pi.labels();
    CapReport report;
    std::int64_t x_cap = static_cast<std::int64_t>(gm.x_agents.size()) - 1;

    auto cap_for = [&](int agent) -> std::optional<std::int64_t> {
        switch (gm.role[static_cast<size_t>(agent)]) {
        case AgentRole::X: return x_cap;
        case AgentRole::A1:
        case AgentRole::A0:
        case AgentRole::LA: return 10 * gm.m + 1;
        case AgentRole::LG: return 11;
        case AgentRole::W:
        case AgentRole::Z: return 10;
        case AgentRole::V: return std::nullopt; // voters carry the vote, no cap
        default: break;
        }
        // G1/G0: depends on the owning gate's kind
        for (const auto& per_circuit : gm.gates)
            for (const auto& gd : per_circuit) {
                auto member = [&](const std::vector<int>& v) {
                    return std::find(v.begin(), v.end(), agent) != v.end();
                };
                if (member(gd.t)) return gd.is_and() ? 12 : 11;
                if (member(gd.f)) return gd.is_and() ? 13 : 11;
            }
        return std::nullopt;
    };

    for (int a = 0; a < gm.agent_count; ++a) {
        auto cap = cap_for(a);
        if (!cap) continue;
        std::int64_t u = utility(gg.game, labels, a);
        bool within = u <= *cap;
        if (!within) report.ok = false;
        report.entries.push_back({a, u, *cap, within});
    }
    return report;
}

/// Do all gate gadgets comply with string x in partition pi (true-side agent
/// in the main coalition exactly for gates evaluating to 1, false side with
/// the alternative, and conversely)?
inline bool complies_with(const GadgetGame& gg, const Partition& pi, const BitString& x) {
    const GadgetMap& gm = gg.map;
    std::vector<int> labels = pi.labels();
    int mc = labels[static_cast<size_t>(gm.x_agents[0])];
    for (int j = 0; j < gm.m; ++j) {
        std::vector<std::uint8_t> wires = gate_values(gg, j, x);
        for (size_t g = 0; g < gm.gates[static_cast<size_t>(j)].size(); ++g) {
            const auto& gd = gm.gates[static_cast<size_t>(j)][g];
            int lt = labels[static_cast<size_t>(gd.t[0])];
            int lf = labels[static_cast<size_t>(gd.f[0])];
            int ll = labels[static_cast<size_t>(gd.l[0])];
            bool corresponds_one = lt == mc && lf == ll;
            bool corresponds_zero = lf == mc && lt == ll;
            if (wires[g] ? !corresponds_one : !corresponds_zero) return false;
        }
    }
    return true;
}

/// The characterized tie class: partitions equal to the designated one
/// except that two parked helper pair-coalitions of distinct And-gadgets
/// are merged. Every agent is indifferent (cross-valuations among helpers
/// of different gates are zero), so these rivals have popularity margin
/// exactly 0 against the designated partition; no other rival class does.
inline std::vector<Partition> neutral_helper_merges(const GadgetGame& gg,
                                                    const Partition& pi_star) {
    const GadgetMap& gm = gg.map;
    std::vector<int> base = pi_star.labels();
    int mc = base[static_cast<size_t>(gm.x_agents[0])];
    // parked helper blocks: W/Z pairs not inside the main coalition,
    // tagged by their owning gadget (same-gate pairs repel, so only
    // cross-gadget merges are neutral)
    std::vector<std::pair<int, int>> parked; // (block, gadget tag)
    int tag = 0;
    for (const auto& per_circuit : gm.gates)
        for (const auto& gd : per_circuit) {
            ++tag;
            if (!gd.is_and()) continue;
            for (const auto* pair : {&gd.w, &gd.z}) {
                int block = base[static_cast<size_t>((*pair)[0])];
                if (block != mc) parked.push_back({block, tag});
            }
        }
    std::vector<Partition> out;
    for (size_t a = 0; a < parked.size(); ++a)
        for (size_t b = a + 1; b < parked.size(); ++b) {
            if (parked[a].second == parked[b].second) continue;
            if (parked[a].first == parked[b].first) continue;
            std::vector<int> labels = base;
            for (auto& l : labels)
                if (l == parked[b].first) l = parked[a].first;
            Partition p = Partition::from_labels(labels);
            if (p != pi_star) out.push_back(std::move(p));
        }
    return out;
}

// ---------------------------------------------------------------------------
// Adversarial deviations: structured rivals mirroring the case analysis the
// strong-popularity argument walks through, plus seeded random noise.

inline std::vector<Partition> deviation_suite(const GadgetGame& gg, const Partition& pi_star,
                                              std::uint64_t seed, int random_count = 32) {
    const GadgetMap& gm = gg.map;
    std::vector<int> base = pi_star.labels();
    int block_count = 0;
    for (int l : base) block_count = std::max(block_count, l + 1);
    std::set<Partition> out;

    auto push = [&](const std::vector<int>& labels) {
        Partition p = Partition::from_labels(labels);
        if (p != pi_star) out.insert(std::move(p));
    };

    // gadget flips: swap which side sits in the main coalition
    auto flip = [&](const std::vector<int>& t, const std::vector<int>& f,
                    const std::vector<int>& l) {
        std::vector<int> labels = base;
        int mc = base[static_cast<size_t>(gm.x_agents[0])];
        int in_block = base[static_cast<size_t>(t[0])] == mc
                           ? base[static_cast<size_t>(f[0])]
                           : base[static_cast<size_t>(t[0])];
        const auto& into_mc = base[static_cast<size_t>(t[0])] == mc ? f : t;
        const auto& out_of_mc = base[static_cast<size_t>(t[0])] == mc ? t : f;
        for (int a : into_mc) labels[static_cast<size_t>(a)] = mc;
        for (int a : out_of_mc) labels[static_cast<size_t>(a)] = in_block;
        (void)l;
        push(labels);
    };
    for (const auto& bg : gm.bits) flip(bg.t, bg.f, bg.l);
    for (const auto& per_circuit : gm.gates)
        for (const auto& gd : per_circuit) flip(gd.t, gd.f, gd.l);

    // merge the alternative coalitions of neighboring gadgets
    std::vector<int> l_agents;
    for (const auto& bg : gm.bits) l_agents.push_back(bg.l[0]);
    for (const auto& per_circuit : gm.gates)
        for (const auto& gd : per_circuit) l_agents.push_back(gd.l[0]);
    for (size_t i = 0; i + 1 < l_agents.size(); ++i) {
        std::vector<int> labels = base;
        int from = labels[static_cast<size_t>(l_agents[i + 1])];
        int to = labels[static_cast<size_t>(l_agents[i])];
        for (auto& l : labels)
            if (l == from) l = to;
        push(labels);
    }

    // replica detachment: strand one replica in a singleton
    for (int a = 0; a < gm.agent_count; ++a) {
        if (gm.replica_origin[static_cast<size_t>(a)] < 0) continue;
        if (gm.role[static_cast<size_t>(a)] == AgentRole::LA ||
            gm.role[static_cast<size_t>(a)] == AgentRole::G1 ||
            gm.role[static_cast<size_t>(a)] == AgentRole::W) {
            std::vector<int> labels = base;
            labels[static_cast<size_t>(a)] = block_count;
            push(labels);
        }
    }

    // W/Z moves: into the main coalition, swapped, or merged together
    int mc = base[static_cast<size_t>(gm.x_agents[0])];
    for (const auto& per_circuit : gm.gates)
        for (const auto& gd : per_circuit) {
            if (!gd.is_and()) continue;
            std::vector<int> labels = base;
            for (int a : gd.w) labels[static_cast<size_t>(a)] = mc;
            push(labels);
            labels = base;
            for (int a : gd.z) labels[static_cast<size_t>(a)] = mc;
            push(labels);
            labels = base;
            for (size_t t = 0; t < gd.w.size(); ++t)
                std::swap(labels[static_cast<size_t>(gd.w[t])],
                          labels[static_cast<size_t>(gd.z[t])]);
            push(labels);
            labels = base;
            for (int a : gd.z) labels[static_cast<size_t>(a)] = labels[static_cast<size_t>(gd.w[0])];
            push(labels);
        }

    // cross-gadget merges of parked helper pairs (the margin-0 tie class;
    // adversarial suites must contain the known worst case)
    {
        GadgetGame shallow; // only the map is needed by the enumerator
        shallow.map = gm;
        for (Partition& p : neutral_helper_merges(shallow, pi_star)) out.insert(std::move(p));
    }

    // gadget dissolution: the off-main coalition breaks into singletons
    auto dissolve = [&](int member) {
        std::vector<int> labels = base;
        int doomed = base[static_cast<size_t>(member)];
        int fresh = block_count;
        for (int a = 0; a < gm.agent_count; ++a)
            if (labels[static_cast<size_t>(a)] == doomed) labels[static_cast<size_t>(a)] = fresh++;
        push(labels);
    };
    for (const auto& bg : gm.bits) dissolve(bg.l[0]);
    for (const auto& per_circuit : gm.gates)
        for (const auto& gd : per_circuit) dissolve(gd.l[0]);

    // seeded random coarsenings, refinements, and single moves
    Rng rng(seed ^ 0xdeafULL);
    for (int r = 0; r < random_count; ++r) {
        std::vector<int> labels = base;
        switch (rng.below(3)) {
        case 0: { // move one agent
            int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(gm.agent_count)));
            labels[static_cast<size_t>(a)] =
                static_cast<int>(rng.below(static_cast<std::uint64_t>(block_count) + 1));
            break;
        }
        case 1: { // merge two blocks
            int b1 = static_cast<int>(rng.below(static_cast<std::uint64_t>(block_count)));
            int b2 = static_cast<int>(rng.below(static_cast<std::uint64_t>(block_count)));
            for (auto& l : labels)
                if (l == b1) l = b2;
            break;
        }
        default: { // split a block randomly
            int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(block_count)));
            for (auto& l : labels)
                if (l == b && rng.coin()) l = block_count;
            break;
        }
        }
        push(labels);
    }

    return std::vector<Partition>(out.begin(), out.end());
}

/// Sidecar format: `role <agent> <ROLE> <gadget-id> [origin]` per agent.
inline void serialize_gadget_map(const GadgetMap& gm, std::ostream& os) {
    for (int a = 0; a < gm.agent_count; ++a) {
        os << "role " << a << " " << role_name(gm.role[static_cast<size_t>(a)]) << " "
           << gm.gadget_id[static_cast<size_t>(a)];
        if (gm.replica_origin[static_cast<size_t>(a)] >= 0)
            os << " " << gm.replica_origin[static_cast<size_t>(a)];
        os << "\n";
    }
}

} // namespace uwin
