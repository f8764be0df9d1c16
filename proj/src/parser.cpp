#include <algorithm>
#include <cctype>
#include <charconv>
#include <unordered_map>

#include "csolve/model.hpp"

namespace csp {

namespace {

struct Token {
    std::string text;
    int column;  // 1-based
};

// whitespace-split; '#' starts a comment; ':' is always its own token
std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        if (line[i] == '#') break;
        if (line[i] == ':') {
            out.push_back({":", static_cast<int>(i) + 1});
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) &&
               line[j] != '#' && line[j] != ':')
            ++j;
        out.push_back({std::string(line.substr(i, j - i)), static_cast<int>(i) + 1});
        i = j;
    }
    return out;
}

long parse_int(const Token& t, int line) {
    long v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size())
        throw ParseError(line, t.column, "expected integer, got '" + t.text + "'");
    return v;
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            parts.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return parts;
}

}  // namespace

ParseResult parse_instance(std::string_view text, std::string_view name) {
    ParseResult result;
    Problem& p = result.problem;
    p.name = std::string(name);

    std::unordered_map<std::string, VarId> var_ids;
    std::unordered_map<std::string, int> con_names;
    bool header_seen = false;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        ++line_no;
        pos = eol + 1;

        auto tokens = tokenize(line);
        if (tokens.empty()) {
            if (pos > text.size()) break;
            continue;
        }

        if (!header_seen) {
            if (tokens.size() != 2 || tokens[0].text != "cspi" || tokens[1].text != "1")
                throw ParseError(line_no, tokens[0].column, "expected header 'cspi 1'");
            header_seen = true;
            continue;
        }

        const Token& head = tokens[0];
        if (head.text == "var") {
            if (tokens.size() < 3)
                throw ParseError(line_no, head.column, "var needs a name and a domain");
            const std::string& vname = tokens[1].text;
            if (var_ids.count(vname))
                throw ParseError(line_no, tokens[1].column, "duplicate variable name " + vname);
            VariableDecl v;
            v.id = static_cast<VarId>(p.variables.size());
            v.name = vname;
            if (tokens[2].text == "range") {
                if (tokens.size() != 5)
                    throw ParseError(line_no, tokens[2].column, "range needs <lo> <hi>");
                long lo = parse_int(tokens[3], line_no);
                long hi = parse_int(tokens[4], line_no);
                if (lo > hi)
                    throw ParseError(line_no, tokens[3].column,
                                     "empty domain for variable " + vname);
                for (long x = lo; x <= hi; ++x) v.initial_domain.push_back(static_cast<Value>(x));
            } else {
                for (std::size_t i = 2; i < tokens.size(); ++i) {
                    Value x = static_cast<Value>(parse_int(tokens[i], line_no));
                    if (std::find(v.initial_domain.begin(), v.initial_domain.end(), x) !=
                        v.initial_domain.end())
                        throw ParseError(line_no, tokens[i].column,
                                         "duplicate domain value for variable " + vname);
                    v.initial_domain.push_back(x);
                }
            }
            var_ids[vname] = v.id;
            p.variables.push_back(std::move(v));
        } else if (head.text == "con") {
            if (tokens.size() < 3)
                throw ParseError(line_no, head.column, "con needs a name and a kind");
            Constraint c;
            c.id = static_cast<ConId>(p.constraints.size());
            c.name = tokens[1].text;
            con_names[c.name]++;
            const std::string& kw = tokens[2].text;
            auto var_at = [&](std::size_t i) -> VarId {
                if (i >= tokens.size())
                    throw ParseError(line_no, head.column, "missing variable in scope");
                auto it = var_ids.find(tokens[i].text);
                if (it == var_ids.end())
                    throw ParseError(line_no, tokens[i].column,
                                     "unknown variable " + tokens[i].text);
                return it->second;
            };
            if (kw == "eq" || kw == "neq") {
                c.kind = kw == "eq" ? ConstraintKind::Eq : ConstraintKind::Neq;
                if (tokens.size() != 5)
                    throw ParseError(line_no, tokens[2].column, kw + " needs exactly 2 variables");
                c.scope = {var_at(3), var_at(4)};
            } else if (kw == "absdiffne" || kw == "absdiffgt") {
                c.kind = kw == "absdiffne" ? ConstraintKind::AbsDiffNe : ConstraintKind::AbsDiffGt;
                if (tokens.size() != 6)
                    throw ParseError(line_no, tokens[2].column, kw + " needs 2 variables and a constant");
                c.scope = {var_at(3), var_at(4)};
                c.param = static_cast<Value>(parse_int(tokens[5], line_no));
            } else if (kw == "allow" || kw == "forbid") {
                c.kind = kw == "allow" ? ConstraintKind::TableAllow : ConstraintKind::TableForbid;
                std::size_t i = 3;
                while (i < tokens.size() && tokens[i].text != ":") c.scope.push_back(var_at(i)), ++i;
                if (c.scope.empty())
                    throw ParseError(line_no, tokens[2].column, kw + " needs at least 1 variable");
                if (i == tokens.size())
                    throw ParseError(line_no, head.column, "missing ':' before tuple list");
                // everything after ':' is the tuple list; whitespace is free-form there
                std::string rest;
                for (++i; i < tokens.size(); ++i) {
                    if (!rest.empty()) rest += " ";
                    rest += tokens[i].text;
                }
                if (!trim(rest).empty()) {
                    for (const std::string& tup : split(rest, ';')) {
                        if (trim(tup).empty())
                            throw ParseError(line_no, head.column, "empty tuple in list");
                        std::vector<Value> row;
                        for (const std::string& cell : split(tup, ',')) {
                            std::string cs = trim(cell);
                            if (cs.empty())
                                throw ParseError(line_no, head.column, "empty value in tuple");
                            row.push_back(
                                static_cast<Value>(parse_int({cs, head.column}, line_no)));
                        }
                        if (row.size() != c.scope.size())
                            throw ParseError(line_no, head.column,
                                             "arity mismatch: tuple of width " +
                                                 std::to_string(row.size()) + " for scope of " +
                                                 std::to_string(c.scope.size()));
                        bool in_domain = true;
                        for (std::size_t k = 0; k < row.size(); ++k) {
                            const auto& dom = p.variables[c.scope[k]].initial_domain;
                            if (std::find(dom.begin(), dom.end(), row[k]) == dom.end()) {
                                in_domain = false;
                                break;
                            }
                        }
                        if (!in_domain) {
                            result.warnings.push_back(
                                "line " + std::to_string(line_no) + ": constraint " + c.name +
                                ": dropped tuple with value outside initial domain");
                            continue;
                        }
                        c.tuples.push_back(std::move(row));
                    }
                }
            } else {
                throw ParseError(line_no, tokens[2].column, "unknown constraint kind " + kw);
            }
            p.constraints.push_back(std::move(c));
        } else {
            throw ParseError(line_no, head.column, "expected 'var' or 'con', got '" + head.text + "'");
        }
    }
    if (!header_seen) throw ParseError(1, 1, "expected header 'cspi 1'");

    try {
        p.finalize();
    } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, 1, e.what());
    }
    return result;
}

}  // namespace csp
