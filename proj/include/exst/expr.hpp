#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "exst/model.hpp"
#include "exst/sparse.hpp"

namespace exst {

/// Free-group word over the operators, kept verbatim (no free reduction).
/// Letters are in written order; the rightmost letter acts first, matching
/// θ(g1·g2, a) = θ(g2, a) + θ(g1, a + ∂g2).
struct ProcessWord {
    std::vector<std::pair<int, int>> letters;  // (operator id, exponent ±1)

    int length() const { return static_cast<int>(letters.size()); }

    ProcessWord inverse() const {
        ProcessWord w;
        for (auto it = letters.rbegin(); it != letters.rend(); ++it)
            w.letters.push_back({it->first, -it->second});
        return w;
    }

    ProcessWord& operator*=(const ProcessWord& rhs) {
        letters.insert(letters.end(), rhs.letters.begin(), rhs.letters.end());
        return *this;
    }

    bool operator==(const ProcessWord&) const = default;
};

std::string process_text(const ExcitationModel& m, const ProcessWord& w);

/// Grammar:  process := term {('*'|ws) term}
///           term    := atom ['^' signed-int]
///           atom    := label | '(' process ')' | '[' process ',' process ']'
/// where [a,b] desugars to a^-1 b^-1 a b. A '[' directly attached to label
/// characters belongs to the label (e.g. "U[0,2]u").
ProcessWord parse_process(const ExcitationModel& m, const std::string& text);

/// Element of E = Z^(S×A).
struct Expression {
    std::map<std::pair<int, int>, BigInt> coeffs;  // (operator, configuration)

    void add(int s, int a, const BigInt& c) {
        if (c == 0) return;
        auto [it, fresh] = coeffs.try_emplace({s, a}, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) coeffs.erase(it);
        }
    }

    Expression& operator+=(const Expression& o) {
        for (const auto& [k, c] : o.coeffs) add(k.first, k.second, c);
        return *this;
    }
    Expression& operator-=(const Expression& o) {
        for (const auto& [k, c] : o.coeffs) add(k.first, k.second, -c);
        return *this;
    }
    friend Expression operator+(Expression a, const Expression& b) { return a += b; }
    friend Expression operator-(Expression a, const Expression& b) { return a -= b; }

    bool is_zero() const { return coeffs.empty(); }
    bool operator==(const Expression&) const = default;
};

/// Sum of absolute values of all coefficients.
BigInt norm1(const Expression& e);

/// Dense index of θ(s,a) inside Z^(S×A): s * |A| + a.
inline int theta_index(const ExcitationModel& m, int s, int a) {
    return s * m.config_count() + a;
}
SparseVec to_vector(const ExcitationModel& m, const Expression& e);
Expression from_vector(const ExcitationModel& m, const SparseVec& v);

/// θ(g, a) expanded into E, plus the final configuration a + ∂g.
struct ThetaExpansion {
    Expression expression;
    int final_config = 0;
};
ThetaExpansion expand_theta(const ExcitationModel& m, const ProcessWord& g, int a);

/// Boundary 1-chain → 0-chain on the configuration graph: coefficient c on
/// (s,a) contributes +c at a+∂s and −c at a. Zero iff the expression is
/// closed.
std::map<int, BigInt> boundary_0chain(const ExcitationModel& m, const Expression& e);

/// q_{V*}(e) in a precomputed quotient model: drop operators outside V, push
/// configurations through the partition.
Expression restrict_expression(const MappedModel& quotient, const Expression& e);
/// Convenience form building quotient_model(m, v) on the fly.
Expression restrict_expression(const ExcitationModel& m, const Expression& e,
                               const std::vector<int>& v);

/// δ_b: θ(s,a) ↦ θ(s,a+b).
Expression translate(const ExcitationModel& m, const Expression& e, int b);

/// Configuration as a flat residue list over the ambient chain group,
/// "[r1,r2,...]"; grouped forms "[(..),(..)]" are accepted on input.
std::string config_text(const ExcitationModel& m, int cfg);
int parse_config_text(const ExcitationModel& m, const std::string& text);

/// One term per line: `<coeff> <operator-label> @ <configuration>`;
/// '#' starts a comment.
void write_expression(const ExcitationModel& m, const Expression& e, std::ostream& out);
Expression read_expression(const ExcitationModel& m, std::istream& in);

}  // namespace exst
