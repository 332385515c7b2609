#include "exst/modelfile.hpp"

#include <fstream>
#include <istream>
#include <optional>
#include <sstream>

namespace exst {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

int to_int(const std::string& s, int lineno, const std::string& what) {
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("model file line " + std::to_string(lineno) + ": bad " + what +
                         " '" + s + "'");
    }
}

std::vector<int> int_list(const std::string& s, char sep, int lineno,
                          const std::string& what) {
    std::vector<int> out;
    for (const std::string& item : split(s, sep))
        if (!item.empty()) out.push_back(to_int(item, lineno, what));
    return out;
}

}  // namespace

ExcitationModel parse_model_file(std::istream& in, const ResourceLimits& limits) {
    std::optional<FiniteAbelianGroup> group;
    std::optional<int> vertices;
    std::vector<std::vector<int>> maximal;
    std::optional<int> p;
    std::optional<std::vector<std::vector<int>>> gen_residues;  // nullopt = standard
    bool have_excitation = false, have_complex = false;
    std::vector<ExcitationModel::ExplicitOp> abstract_ops;
    bool have_abstract = false;

    std::string section, line;
    int lineno = 0;
    auto fail = [&](const std::string& what) -> void {
        throw ParseError("model file line " + std::to_string(lineno) + ": " + what);
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        std::string t = trim(line);
        if (t.empty()) continue;
        if (t.front() == '[') {
            auto close = t.find(']');
            if (close == std::string::npos) fail("unterminated section header");
            section = trim(t.substr(1, close - 1));
            if (section != "group" && section != "complex" && section != "excitation" &&
                section != "abstract")
                fail("unknown section '" + section + "'");
            if (section == "complex") have_complex = true;
            if (section == "excitation") have_excitation = true;
            if (section == "abstract") have_abstract = true;
            t = trim(t.substr(close + 1));
            if (t.empty()) continue;
        }
        if (section.empty()) fail("content before the first section header");

        if (section == "abstract") {
            std::vector<std::string> parts = split(t, ';');
            if (parts.size() != 3)
                fail("expected 'label ; boundary-residues ; support-point-ids'");
            if (!group) fail("[abstract] operators need a preceding [group] section");
            ExcitationModel::ExplicitOp op;
            op.label = parts[0];
            if (op.label.empty()) fail("empty operator label");
            op.boundary = group->reduce(int_list(parts[1], ',', lineno, "residue"));
            std::stringstream ss(parts[2]);
            int v;
            while (ss >> v) op.support.push_back(v);
            abstract_ops.push_back(std::move(op));
            continue;
        }

        auto eq = t.find('=');
        if (eq == std::string::npos) fail("expected 'key = value'");
        std::string key = trim(t.substr(0, eq)), value = trim(t.substr(eq + 1));
        if (value.empty()) fail("empty value for '" + key + "'");

        if (section == "group") {
            if (key == "invariants")
                group = FiniteAbelianGroup(int_list(value, ',', lineno, "invariant order"));
            else if (key == "literal")
                group = parse_group_literal(value);
            else
                fail("unknown [group] key '" + key + "'");
        } else if (section == "complex") {
            if (key == "vertices")
                vertices = to_int(value, lineno, "vertex count");
            else if (key == "maximal") {
                for (const std::string& simp : split(value, '|')) {
                    std::vector<int> vs;
                    std::stringstream ss(simp);
                    int v;
                    while (ss >> v) vs.push_back(v);
                    if (vs.empty()) fail("empty maximal simplex");
                    maximal.push_back(std::move(vs));
                }
            } else
                fail("unknown [complex] key '" + key + "'");
        } else if (section == "excitation") {
            if (key == "p")
                p = to_int(value, lineno, "excitation dimension");
            else if (key == "generators") {
                if (value == "standard")
                    gen_residues.reset();
                else {
                    gen_residues.emplace();
                    for (const std::string& g : split(value, '|'))
                        gen_residues->push_back(int_list(g, ',', lineno, "residue"));
                }
            } else
                fail("unknown [excitation] key '" + key + "'");
        }
    }

    if (!group) throw ParseError("model file: missing [group] section");
    if (have_abstract) {
        if (have_complex || have_excitation)
            throw ParseError("model file: [abstract] excludes [complex]/[excitation]");
        if (abstract_ops.empty()) throw ParseError("model file: [abstract] lists no operators");
        int points = 0;
        for (const auto& op : abstract_ops)
            for (int v : op.support) points = std::max(points, v + 1);
        return ExcitationModel::from_explicit(*group, abstract_ops, points, limits);
    }
    if (!have_complex || !vertices || maximal.empty())
        throw ParseError("model file: missing [complex] vertices/maximal");
    if (!have_excitation || !p) throw ParseError("model file: missing [excitation] p");

    SimplicialComplex c = SimplicialComplex::from_maximal(*vertices, maximal);
    std::optional<std::vector<GroupElement>> gens;
    if (gen_residues) {
        gens.emplace();
        for (const auto& raw : *gen_residues) gens->push_back(group->reduce(raw));
    }
    return ExcitationModel::from_simplicial(c, *p, *group, gens, limits);
}

ExcitationModel load_model_file(const std::string& path, const ResourceLimits& limits) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open model file '" + path + "'");
    return parse_model_file(in, limits);
}

}  // namespace exst
