#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "uwin/circuit.hpp"
#include "uwin/error.hpp"

namespace uwin {

// Line-oriented circuit format:
//   circuit <name>
//   inputs <n>
//   g<j> = INPUT <i> | CONST <0|1> | NOT g<k> | AND g<k> g<l> | OR g<k> g<l>
//   outputs g<a> g<b> ...
//   end
// Gate numbers are strictly increasing from 0 and sources must be earlier
// gates; outputs are most significant first.

inline void serialize_circuit(const Circuit& c, std::ostream& os) {
    os << "circuit " << (c.name.empty() ? "c" : c.name) << "\n";
    os << "inputs " << c.input_count << "\n";
    for (size_t j = 0; j < c.gates.size(); ++j) {
        const Gate& g = c.gates[j];
        os << "g" << j << " = ";
        switch (g.kind) {
        case GateKind::Input: os << "INPUT " << g.a; break;
        case GateKind::Const: os << "CONST " << g.a; break;
        case GateKind::Not: os << "NOT g" << g.a; break;
        case GateKind::And: os << "AND g" << g.a << " g" << g.b; break;
        case GateKind::Or: os << "OR g" << g.a << " g" << g.b; break;
        }
        os << "\n";
    }
    os << "outputs";
    for (std::int32_t o : c.outputs) os << " g" << o;
    os << "\nend\n";
}

inline std::string serialize_circuit(const Circuit& c) {
    std::ostringstream os;
    serialize_circuit(c, os);
    return os.str();
}

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

inline int parse_gate_ref(const std::string& tok, size_t defined, int line_no) {
    if (tok.size() < 2 || tok[0] != 'g') throw ParseError(line_no, "expected gate name, got '" + tok + "'");
    for (size_t i = 1; i < tok.size(); ++i)
        if (!isdigit(static_cast<unsigned char>(tok[i])))
            throw ParseError(line_no, "unknown gate name '" + tok + "'");
    long v = std::stol(tok.substr(1));
    if (v < 0 || static_cast<size_t>(v) >= defined)
        throw ParseError(line_no, "non-topological source '" + tok + "'");
    return static_cast<int>(v);
}

inline long parse_int(const std::string& tok, int line_no) {
    try {
        size_t pos = 0;
        long v = std::stol(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ParseError(line_no, "expected integer, got '" + tok + "'");
    }
}

} // namespace detail

/// Parse one circuit block starting at the current stream position.
/// `line_no` tracks position for error reporting across embedded blocks.
inline Circuit parse_circuit(std::istream& is, int& line_no) {
    using detail::parse_gate_ref;
    using detail::parse_int;
    using detail::split_ws;

    Circuit c;
    std::string line;
    enum { WantHeader, WantInputs, WantGates, Done } state = WantHeader;
    bool saw_outputs = false;

    while (state != Done && std::getline(is, line)) {
        ++line_no;
        std::vector<std::string> t = split_ws(line);
        if (t.empty() || t[0][0] == '#') continue;
        switch (state) {
        case WantHeader:
            if (t[0] != "circuit" || t.size() != 2)
                throw ParseError(line_no, "expected 'circuit <name>'");
            c.name = t[1];
            state = WantInputs;
            break;
        case WantInputs: {
            if (t[0] != "inputs" || t.size() != 2)
                throw ParseError(line_no, "expected 'inputs <n>'");
            long n = parse_int(t[1], line_no);
            if (n < 1) throw ParseError(line_no, "inputs must be >= 1");
            c.input_count = static_cast<int>(n);
            state = WantGates;
            break;
        }
        case WantGates: {
            if (t[0] == "outputs") {
                if (t.size() == 1) throw ParseError(line_no, "circuit must declare outputs");
                for (size_t i = 1; i < t.size(); ++i)
                    c.outputs.push_back(parse_gate_ref(t[i], c.gates.size(), line_no));
                saw_outputs = true;
                break;
            }
            if (t[0] == "end") {
                if (!saw_outputs) throw ParseError(line_no, "circuit must declare outputs");
                state = Done;
                break;
            }
            if (saw_outputs) throw ParseError(line_no, "expected 'end' after outputs");
            // g<j> = OP args
            if (t.size() < 3 || t[1] != "=")
                throw ParseError(line_no, "expected 'g<j> = <OP> ...'");
            int j = parse_gate_ref(t[0], c.gates.size() + 1, line_no);
            if (j != static_cast<int>(c.gates.size()))
                throw ParseError(line_no, "gate numbers must increase from 0");
            const std::string& op = t[2];
            if (op == "INPUT" && t.size() == 4) {
                long i = parse_int(t[3], line_no);
                if (i < 0 || i >= c.input_count)
                    throw ParseError(line_no, "input index out of range");
                c.gates.push_back(Gate::input(static_cast<int>(i)));
            } else if (op == "CONST" && t.size() == 4) {
                long v = parse_int(t[3], line_no);
                if (v != 0 && v != 1) throw ParseError(line_no, "CONST takes 0 or 1");
                c.gates.push_back(Gate::constant(static_cast<int>(v)));
            } else if (op == "NOT" && t.size() == 4) {
                c.gates.push_back(Gate::not_of(parse_gate_ref(t[3], c.gates.size(), line_no)));
            } else if ((op == "AND" || op == "OR") && t.size() == 5) {
                int a = parse_gate_ref(t[3], c.gates.size(), line_no);
                int b = parse_gate_ref(t[4], c.gates.size(), line_no);
                c.gates.push_back(op == "AND" ? Gate::and_of(a, b) : Gate::or_of(a, b));
            } else {
                throw ParseError(line_no, "unknown gate name or arity in '" + line + "'");
            }
            break;
        }
        case Done: break;
        }
    }
    if (state != Done) throw ParseError(line_no, "unexpected end of input inside circuit block");
    c.validate();
    return c;
}

inline Circuit parse_circuit(const std::string& text) {
    std::istringstream is(text);
    int line_no = 0;
    return parse_circuit(is, line_no);
}

} // namespace uwin
