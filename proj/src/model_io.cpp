#include "symve/model_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace symve {

namespace {

// Line-oriented tokenizer that strips '#' comments and tracks the
// current source line for diagnostics.
class TokenReader {
public:
    explicit TokenReader(std::istream& in) : in_(in) {}

    int line() const { return line_; }

    // Next token, or nullopt at end of input.
    std::optional<std::string> next() {
        if (pushed_) {
            auto tok = std::move(*pushed_);
            pushed_.reset();
            return tok;
        }
        while (cursor_ >= tokens_.size()) {
            std::string raw;
            if (!std::getline(in_, raw)) return std::nullopt;
            ++line_;
            if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
            tokens_.clear();
            cursor_ = 0;
            std::istringstream split(raw);
            std::string tok;
            while (split >> tok) tokens_.push_back(tok);
        }
        return tokens_[cursor_++];
    }

    void push_back(std::string tok) { pushed_ = std::move(tok); }

    std::string expect(const char* what) {
        auto tok = next();
        if (!tok) throw ParseError(line_, std::string("unexpected end of input, expected ") + what);
        return *tok;
    }

    long long expect_int(const char* what) {
        const std::string tok = expect(what);
        long long value = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (ec != std::errc{} || ptr != tok.data() + tok.size())
            throw ParseError(line_, "expected integer " + std::string(what) + ", got '" + tok + "'");
        return value;
    }

    double expect_double(const char* what) {
        const std::string tok = expect(what);
        double value = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (ec != std::errc{} || ptr != tok.data() + tok.size())
            throw ParseError(line_, "expected number " + std::string(what) + ", got '" + tok + "'");
        return value;
    }

private:
    std::istream& in_;
    std::vector<std::string> tokens_;
    std::size_t cursor_ = 0;
    int line_ = 0;
    std::optional<std::string> pushed_;
};

struct PendingFactor {
    std::vector<VarId> scope_ids;  // as declared
    std::vector<std::vector<VarId>> sym_groups;
    bool has_sym = false;
    std::vector<double> values;
    bool compact = false;
    int declared_line = 0;
};

std::vector<double> read_values(TokenReader& reader, std::uint64_t count, const char* what) {
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(count));
    for (std::uint64_t i = 0; i < count; ++i) values.push_back(reader.expect_double(what));
    return values;
}

void finish_factor(FactorGraph& graph, const PendingFactor& pf, std::size_t index,
                   bool validate_symmetry) {
    auto fail = [&](const std::string& reason) {
        throw ValidationError("factor " + std::to_string(index) + ": " + reason);
    };
    std::vector<Variable> scope;
    for (VarId id : pf.scope_ids) {
        if (!graph.has_variable(id)) fail("scope references unknown variable " + std::to_string(id));
        scope.push_back(graph.variable(id));
    }
    try {
        if (pf.compact) {
            FactorShape shape(scope, SymmetryPartition(pf.sym_groups));
            graph.add_factor(GraphFactor(CompactFactor(shape, pf.values)));
        } else {
            DenseFactor f = DenseFactor::from_unsorted(scope, pf.values);
            SymmetryPartition sym(pf.sym_groups);
            graph.add_factor(GraphFactor(std::move(f), std::move(sym), validate_symmetry));
        }
    } catch (const NotSymmetricError& e) {
        fail(e.what());
    } catch (const ValidationError& e) {
        fail(e.what());
    }
}

}  // namespace

ModelFile parse_model(std::istream& in, bool validate_symmetry) {
    TokenReader reader(in);

    if (reader.expect("FGSYM header") != "FGSYM")
        throw ParseError(reader.line(), "missing FGSYM header");
    if (reader.expect_int("format version") != 1)
        throw ParseError(reader.line(), "unsupported FGSYM version");

    if (reader.expect("vars") != "vars") throw ParseError(reader.line(), "expected 'vars'");
    const long long n = reader.expect_int("variable count");
    if (n < 0) throw ParseError(reader.line(), "variable count must be >= 0");

    ModelFile model;
    if (n > 0) {
        if (reader.expect("card") != "card") throw ParseError(reader.line(), "expected 'card'");
        for (long long i = 0; i < n; ++i) {
            const long long card = reader.expect_int("cardinality");
            if (card < 1) throw ParseError(reader.line(), "cardinality must be >= 1");
            model.graph.add_variable(Variable(static_cast<VarId>(i), static_cast<int>(card)));
        }
    }

    std::optional<PendingFactor> pending;
    std::size_t factor_index = 0;

    for (;;) {
        auto tok = reader.next();
        if (!tok) break;
        if (*tok == "factor") {
            if (pending) throw ParseError(reader.line(), "previous factor block has no table/ctable");
            pending.emplace();
            pending->declared_line = reader.line();
            const long long k = reader.expect_int("scope size");
            if (k < 0) throw ParseError(reader.line(), "scope size must be >= 0");
            for (long long i = 0; i < k; ++i) {
                const long long id = reader.expect_int("scope variable id");
                if (id < 0 || id >= n)
                    throw ParseError(reader.line(),
                                     "scope variable id " + std::to_string(id) + " out of range");
                pending->scope_ids.push_back(static_cast<VarId>(id));
            }
        } else if (*tok == "sym") {
            if (!pending) throw ParseError(reader.line(), "'sym' outside a factor block");
            if (pending->has_sym) throw ParseError(reader.line(), "duplicate 'sym' line");
            pending->has_sym = true;
            for (;;) {
                auto brace = reader.next();
                if (!brace) throw ParseError(reader.line(), "unterminated 'sym' line");
                if (*brace != "{") {
                    // Token belongs to the next directive.
                    reader.push_back(*brace);
                    break;
                }
                std::vector<VarId> group;
                for (;;) {
                    const std::string part = reader.expect("group member or '}'");
                    if (part == "}") break;
                    long long id = 0;
                    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), id);
                    if (ec != std::errc{} || ptr != part.data() + part.size())
                        throw ParseError(reader.line(), "expected variable id in group, got '" +
                                                            part + "'");
                    group.push_back(static_cast<VarId>(id));
                }
                pending->sym_groups.push_back(std::move(group));
            }
        } else if (*tok == "table" || *tok == "ctable") {
            if (!pending) throw ParseError(reader.line(), "'" + *tok + "' outside a factor block");
            pending->compact = (*tok == "ctable");
            if (pending->compact && !pending->has_sym)
                throw ParseError(reader.line(), "'ctable' requires a preceding 'sym' line");

            std::vector<Variable> scope;
            for (VarId id : pending->scope_ids) {
                if (!model.graph.has_variable(id))
                    throw ParseError(reader.line(),
                                     "scope variable " + std::to_string(id) + " unknown");
                scope.push_back(model.graph.variable(id));
            }
            std::uint64_t count = 0;
            try {
                if (pending->compact) {
                    FactorShape shape(scope, SymmetryPartition(pending->sym_groups));
                    count = shape.compact_size();
                } else {
                    count = checked_domain_size(scope);
                }
            } catch (const Error& e) {
                throw ValidationError("factor " + std::to_string(factor_index) + ": " + e.what());
            }
            pending->values = read_values(reader, count, "potential");
            finish_factor(model.graph, *pending, factor_index++, validate_symmetry);
            pending.reset();
        } else {
            throw ParseError(reader.line(), "unknown directive '" + *tok + "'");
        }
    }
    if (pending) throw ParseError(reader.line(), "factor block at end of input has no table/ctable");
    return model;
}

ModelFile parse_model_text(const std::string& text, bool validate_symmetry) {
    std::istringstream in(text);
    return parse_model(in, validate_symmetry);
}

ModelFile load_model(const std::string& path, bool validate_symmetry) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    return parse_model(in, validate_symmetry);
}

namespace {

std::string double_text(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

void print_values(std::ostream& out, const char* keyword, const std::vector<double>& values) {
    out << keyword;
    // Wrap long tables for readability; continuation lines are plain
    // value tokens, which the reader accepts.
    constexpr std::size_t per_line = 16;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0 && i % per_line == 0) out << '\n' << " ";
        out << ' ' << double_text(values[i]);
    }
    out << '\n';
}

void print_sym(std::ostream& out, const SymmetryPartition& sym) {
    out << "sym";
    for (const auto& g : sym.groups()) {
        out << " {";
        for (VarId id : g) out << ' ' << id;
        out << " }";
    }
    out << '\n';
}

}  // namespace

void print_model(const ModelFile& m, std::ostream& out) {
    const auto& vars = m.graph.variables();
    out << "FGSYM 1\n";
    out << "vars " << vars.size() << '\n';
    if (!vars.empty()) {
        out << "card";
        for (const auto& v : vars) out << ' ' << v.cardinality;
        out << '\n';
    }
    for (const auto& f : m.graph.factors()) {
        const auto& scope = f.shape().scope;
        out << "factor " << scope.size();
        for (const auto& v : scope) out << ' ' << v.id;
        out << '\n';
        if (f.is_compact()) {
            print_sym(out, f.shape().partition);
            print_values(out, "ctable", f.compact().table());
        } else if (f.is_dense()) {
            if (!f.shape().partition.empty()) print_sym(out, f.shape().partition);
            print_values(out, "table", f.dense().table());
        } else {
            throw ValidationError("cannot serialize a shape-only factor");
        }
    }
}

std::string model_to_text(const ModelFile& m) {
    std::ostringstream out;
    print_model(m, out);
    return out.str();
}

void save_model(const ModelFile& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    print_model(m, out);
    if (!out) throw IoError("failed writing " + path);
}

ModelFile parse_uai(std::istream& in) {
    TokenReader reader(in);
    const std::string kind = reader.expect("network type");
    if (kind != "MARKOV" && kind != "BAYES")
        throw ParseError(reader.line(), "expected MARKOV or BAYES, got '" + kind + "'");

    const long long n = reader.expect_int("variable count");
    if (n < 0) throw ParseError(reader.line(), "variable count must be >= 0");
    ModelFile model;
    for (long long i = 0; i < n; ++i) {
        const long long card = reader.expect_int("cardinality");
        if (card < 1) throw ParseError(reader.line(), "cardinality must be >= 1");
        model.graph.add_variable(Variable(static_cast<VarId>(i), static_cast<int>(card)));
    }

    const long long k = reader.expect_int("factor count");
    if (k < 0) throw ParseError(reader.line(), "factor count must be >= 0");
    std::vector<std::vector<VarId>> scopes;
    for (long long fi = 0; fi < k; ++fi) {
        const long long arity = reader.expect_int("factor arity");
        if (arity < 0) throw ParseError(reader.line(), "factor arity must be >= 0");
        std::vector<VarId> scope;
        for (long long i = 0; i < arity; ++i) {
            const long long id = reader.expect_int("scope variable id");
            if (id < 0 || id >= n)
                throw ParseError(reader.line(), "scope variable id out of range");
            scope.push_back(static_cast<VarId>(id));
        }
        scopes.push_back(std::move(scope));
    }

    for (long long fi = 0; fi < k; ++fi) {
        const long long count = reader.expect_int("table size");
        std::vector<Variable> scope;
        for (VarId id : scopes[static_cast<std::size_t>(fi)])
            scope.push_back(model.graph.variable(id));
        const std::uint64_t expected = checked_domain_size(scope);
        if (count < 0 || static_cast<std::uint64_t>(count) != expected)
            throw ValidationError("factor " + std::to_string(fi) + ": table size " +
                                  std::to_string(count) + " does not match scope (expected " +
                                  std::to_string(expected) + ")");
        std::vector<double> values = read_values(reader, expected, "potential");
        model.graph.add_factor(GraphFactor(DenseFactor::from_unsorted(scope, values)));
    }
    return model;
}

ModelFile load_uai(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    return parse_uai(in);
}

}  // namespace symve
