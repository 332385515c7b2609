#include "exst/expr.hpp"

#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>

namespace exst {

namespace {

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class ProcessParser {
  public:
    ProcessParser(const ExcitationModel& m, const std::string& text) : m_(m), text_(text) {}

    ProcessWord parse() {
        ProcessWord w = process();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return w;
    }

  private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("process parse error at position " + std::to_string(pos_) + ": " +
                         what);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    ProcessWord process() {
        ProcessWord w;
        bool any = false;
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '*') {
                ++pos_;
                continue;
            }
            if (c == '\0' || c == ')' || c == ']' || c == ',') break;
            w *= term();
            any = true;
        }
        if (!any) fail("empty process");
        return w;
    }

    ProcessWord term() {
        ProcessWord a = atom();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            long long e = integer();
            ProcessWord base = e < 0 ? a.inverse() : a;
            ProcessWord out;
            for (long long i = 0; i < (e < 0 ? -e : e); ++i) out *= base;
            return out;
        }
        return a;
    }

    ProcessWord atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            ProcessWord w = process();
            skip_ws();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return w;
        }
        if (c == '[') {  // commutator: [a,b] = a^-1 b^-1 a b
            ++pos_;
            ProcessWord a = process();
            skip_ws();
            if (peek() != ',') fail("expected ',' in commutator");
            ++pos_;
            ProcessWord b = process();
            skip_ws();
            if (peek() != ']') fail("expected ']' to close commutator");
            ++pos_;
            ProcessWord w = a.inverse();
            w *= b.inverse();
            w *= a;
            w *= b;
            return w;
        }
        if (ident_char(c) && !std::isdigit(static_cast<unsigned char>(c))) {
            std::string label = label_token();
            ProcessWord w;
            w.letters.push_back({lookup(label), +1});
            return w;
        }
        fail("expected operator label, '(' or '['");
    }

    // label: ident chars with embedded balanced '[...]' groups,
    // e.g. U1, U[0,1;0], U[0,2]u
    std::string label_token() {
        std::size_t start = pos_;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (ident_char(c)) {
                ++pos_;
            } else if (c == '[' && pos_ > start) {
                int depth = 0;
                do {
                    if (text_[pos_] == '[') ++depth;
                    if (text_[pos_] == ']') --depth;
                    ++pos_;
                } while (pos_ < text_.size() && depth > 0);
                if (depth > 0) fail("unterminated '[' in operator label");
            } else {
                break;
            }
        }
        return text_.substr(start, pos_ - start);
    }

    int lookup(const std::string& label) const {
        if (!m_.has_label(label))
            throw ParseError("unknown operator label '" + label + "' at position " +
                             std::to_string(pos_ - label.size()));
        return m_.op_by_label(label);
    }

    long long integer() {
        std::size_t start = pos_;
        if (peek() == '+' || peek() == '-') ++pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (pos_ == start || (pos_ == start + 1 && !std::isdigit(static_cast<unsigned char>(
                                                        text_[start]))))
            fail("expected integer exponent");
        return std::stoll(text_.substr(start, pos_ - start));
    }

    const ExcitationModel& m_;
    const std::string& text_;
    std::size_t pos_ = 0;
};

}  // namespace

ProcessWord parse_process(const ExcitationModel& m, const std::string& text) {
    return ProcessParser(m, text).parse();
}

std::string process_text(const ExcitationModel& m, const ProcessWord& w) {
    std::string out;
    for (const auto& [s, e] : w.letters) {
        if (!out.empty()) out += ' ';
        out += m.op(s).label;
        if (e < 0) out += "^-1";
    }
    return out;
}

BigInt norm1(const Expression& e) {
    BigInt n = 0;
    for (const auto& [k, c] : e.coeffs) n += abs(c);
    return n;
}

SparseVec to_vector(const ExcitationModel& m, const Expression& e) {
    SparseVec v;
    for (const auto& [k, c] : e.coeffs) v.set(theta_index(m, k.first, k.second), c);
    return v;
}

Expression from_vector(const ExcitationModel& m, const SparseVec& v) {
    Expression e;
    for (const auto& [idx, c] : v.entries())
        e.add(idx / m.config_count(), idx % m.config_count(), c);
    return e;
}

ThetaExpansion expand_theta(const ExcitationModel& m, const ProcessWord& g, int a) {
    ThetaExpansion out;
    int cur = a;
    for (auto it = g.letters.rbegin(); it != g.letters.rend(); ++it) {
        auto [s, sign] = *it;
        if (sign > 0) {
            out.expression.add(s, cur, 1);  // θ(s, cur)
            cur = m.config_apply(cur, s, +1);
        } else {
            cur = m.config_apply(cur, s, -1);
            out.expression.add(s, cur, -1);  // θ(s^-1, a) = −θ(s, a−∂s)
        }
    }
    out.final_config = cur;
    return out;
}

std::map<int, BigInt> boundary_0chain(const ExcitationModel& m, const Expression& e) {
    std::map<int, BigInt> b;
    auto bump = [&](int cfg, const BigInt& c) {
        auto [it, fresh] = b.try_emplace(cfg, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) b.erase(it);
        }
    };
    for (const auto& [k, c] : e.coeffs) {
        bump(m.config_apply(k.second, k.first, +1), c);
        bump(k.second, -c);
    }
    return b;
}

Expression restrict_expression(const MappedModel& quotient, const Expression& e) {
    Expression out;
    for (const auto& [k, c] : e.coeffs) {
        int s = quotient.op_map[k.first];
        if (s < 0) continue;
        out.add(s, quotient.config_map[k.second], c);
    }
    return out;
}

Expression restrict_expression(const ExcitationModel& m, const Expression& e,
                               const std::vector<int>& v) {
    return restrict_expression(quotient_model(m, v), e);
}

Expression translate(const ExcitationModel& m, const Expression& e, int b) {
    const GroupElement& delta = m.config_rep(b);
    Expression out;
    for (const auto& [k, c] : e.coeffs) out.add(k.first, m.config_add(k.second, delta), c);
    return out;
}

std::string config_text(const ExcitationModel& m, int cfg) {
    const GroupElement& rep = m.config_rep(cfg);
    std::string s = "[";
    for (std::size_t i = 0; i < rep.residues.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(rep.residues[i]);
    }
    return s + "]";
}

int parse_config_text(const ExcitationModel& m, const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.size() < 2 || t.front() != '[' || t.back() != ']')
        throw ParseError("bad configuration '" + text + "' (expected [r1,r2,...])");
    std::vector<int> residues;
    std::string body = t.substr(1, t.size() - 2);
    std::size_t i = 0;
    while (i < body.size()) {
        if (body[i] == ',') {
            ++i;
            continue;
        }
        std::size_t end = i;
        if (body[i] == '(') {
            while (end < body.size() && body[end] != ')') ++end;
            if (end == body.size()) throw ParseError("bad configuration '" + text + "'");
            ++end;
            // flatten a grouped element
            std::string inner = body.substr(i + 1, end - i - 2);
            std::stringstream ss(inner);
            std::string item;
            while (std::getline(ss, item, ',')) {
                try {
                    residues.push_back(std::stoi(item));
                } catch (const std::exception&) {
                    throw ParseError("bad configuration '" + text + "'");
                }
            }
        } else {
            while (end < body.size() && body[end] != ',') ++end;
            try {
                residues.push_back(std::stoi(body.substr(i, end - i)));
            } catch (const std::exception&) {
                throw ParseError("bad configuration '" + text + "'");
            }
        }
        i = end;
    }
    if (static_cast<int>(residues.size()) != m.ambient().rank())
        throw ParseError("configuration '" + text + "' has wrong length for this model");
    GroupElement e = m.ambient().reduce(residues);
    if (!m.elements().contains(e))
        throw ParseError("configuration '" + text + "' is not a reachable configuration");
    return m.config_of_element(e);
}

void write_expression(const ExcitationModel& m, const Expression& e, std::ostream& out) {
    for (const auto& [k, c] : e.coeffs)
        out << c << ' ' << m.op(k.first).label << " @ " << config_text(m, k.second) << '\n';
}

Expression read_expression(const ExcitationModel& m, std::istream& in) {
    Expression e;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        std::size_t i = 0;
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i == line.size()) continue;
        std::istringstream ss(line);
        std::string coeff_s, label, at, cfg_s;
        if (!(ss >> coeff_s >> label >> at) || at != "@" || !(ss >> cfg_s))
            throw ParseError("expression line " + std::to_string(lineno) +
                             ": expected '<coeff> <label> @ <configuration>'");
        std::string rest;
        if (ss >> rest) throw ParseError("expression line " + std::to_string(lineno) +
                                         ": trailing input '" + rest + "'");
        BigInt c;
        try {
            c = BigInt(coeff_s);
        } catch (const std::exception&) {
            throw ParseError("expression line " + std::to_string(lineno) + ": bad coefficient '" +
                             coeff_s + "'");
        }
        int s;
        try {
            s = m.op_by_label(label);
        } catch (const ParseError&) {
            throw ParseError("expression line " + std::to_string(lineno) +
                             ": unknown operator label '" + label + "'");
        }
        e.add(s, parse_config_text(m, cfg_s), c);
    }
    return e;
}

}  // namespace exst
