#pragma once

#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "uwin/bitstring.hpp"
#include "uwin/error.hpp"

namespace uwin {

/// Clause set in DIMACS conventions (1-based variables, sign = polarity).
/// `input_vars` maps circuit input positions to variables so satisfying
/// models project back to witness inputs.
struct CnfFormula {
    int variable_count = 0;
    std::vector<std::vector<int>> clauses;
    std::vector<int> input_vars;

    int new_var() { return ++variable_count; }

    void add_clause(std::vector<int> lits) {
        if (lits.empty()) throw ValidationError("cnf: empty clause at construction");
        for (int l : lits) {
            int v = l < 0 ? -l : l;
            if (v == 0 || v > variable_count)
                throw ValidationError("cnf: literal references unallocated variable");
        }
        clauses.push_back(std::move(lits));
    }

    /// Project a model (indexed by variable, model[v-1]) onto the inputs.
    BitString project_input(const std::vector<bool>& model) const {
        std::vector<std::uint8_t> bits(input_vars.size());
        for (size_t i = 0; i < input_vars.size(); ++i)
            bits[i] = model[static_cast<size_t>(input_vars[i] - 1)] ? 1 : 0;
        return BitString(std::move(bits));
    }
};

inline void write_dimacs(const CnfFormula& f, std::ostream& os) {
    os << "p cnf " << f.variable_count << " " << f.clauses.size() << "\n";
    for (const auto& cl : f.clauses) {
        for (int l : cl) os << l << " ";
        os << "0\n";
    }
}

inline std::string write_dimacs(const CnfFormula& f) {
    std::ostringstream os;
    write_dimacs(f, os);
    return os.str();
}

} // namespace uwin
