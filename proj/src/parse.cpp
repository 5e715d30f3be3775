#include "heis/parse.hpp"

#include <cctype>

namespace heis {

namespace {

struct Token {
    enum Kind { Int, Var, Plus, Minus, Star, Caret, LParen, RParen, End } kind;
    std::string text;
    size_t pos;
};

std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace((unsigned char)c)) {
            ++i;
            continue;
        }
        if (std::isdigit((unsigned char)c)) {
            size_t j = i;
            while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
            out.push_back({Token::Int, s.substr(i, j - i), i});
            i = j;
            continue;
        }
        if (std::isalpha((unsigned char)c)) {
            size_t j = i;
            while (j < s.size() && (std::isalnum((unsigned char)s[j]) || s[j] == '_')) ++j;
            out.push_back({Token::Var, s.substr(i, j - i), i});
            i = j;
            continue;
        }
        switch (c) {
            case '+': out.push_back({Token::Plus, "+", i}); break;
            case '-': out.push_back({Token::Minus, "-", i}); break;
            case '*': out.push_back({Token::Star, "*", i}); break;
            case '^': out.push_back({Token::Caret, "^", i}); break;
            case '(': out.push_back({Token::LParen, "(", i}); break;
            case ')': out.push_back({Token::RParen, ")", i}); break;
            default: throw parse_error(std::string("unexpected character '") + c + "'", i);
        }
        ++i;
    }
    out.push_back({Token::End, "", s.size()});
    return out;
}

// Generic recursive-descent evaluator. Ring must provide: from_int(int128),
// from_var(name, pos), add, sub, neg, mul, pow_int(value, exp, pos).
template <class Ring>
class Parser {
public:
    Parser(const std::string& text, Ring ring) : toks_(tokenize(text)), ring_(ring) {}

    typename Ring::Value run() {
        auto v = expr();
        expect(Token::End, "end of input");
        return v;
    }

private:
    using Value = typename Ring::Value;

    const Token& cur() const { return toks_[idx_]; }
    void advance() { ++idx_; }
    void expect(Token::Kind k, const char* what) {
        if (cur().kind != k) throw parse_error(std::string("expected ") + what, cur().pos);
        if (k != Token::End) advance();
    }

    Value expr() {
        Value v = term();
        while (cur().kind == Token::Plus || cur().kind == Token::Minus) {
            bool plus = cur().kind == Token::Plus;
            advance();
            Value t = term();
            v = plus ? ring_.add(v, t) : ring_.sub(v, t);
        }
        return v;
    }

    Value term() {
        Value v = factor();
        while (cur().kind == Token::Star) {
            advance();
            v = ring_.mul(v, factor());
        }
        return v;
    }

    Value factor() {
        if (cur().kind == Token::Minus) {
            advance();
            return ring_.neg(factor());
        }
        return primary();
    }

    int64_t exponent() {
        // '^' already consumed
        bool neg = false;
        if (cur().kind == Token::Minus) {
            neg = true;
            advance();
        }
        if (cur().kind != Token::Int) throw parse_error("expected integer exponent", cur().pos);
        int64_t e = 0;
        for (char c : cur().text) {
            e = checked_mul64(e, 10);
            e = checked_add64(e, c - '0');
        }
        advance();
        return neg ? -e : e;
    }

    Value primary() {
        Value v;
        size_t pos = cur().pos;
        if (cur().kind == Token::Int) {
            v = ring_.from_int(parse_int128(cur().text));
            advance();
        } else if (cur().kind == Token::Var) {
            v = ring_.from_var(cur().text, cur().pos);
            advance();
        } else if (cur().kind == Token::LParen) {
            advance();
            v = expr();
            expect(Token::RParen, "')'");
        } else {
            throw parse_error("expected a number, variable or '('", cur().pos);
        }
        if (cur().kind == Token::Caret) {
            advance();
            v = ring_.pow_int(v, exponent(), pos);
        }
        return v;
    }

    std::vector<Token> toks_;
    size_t idx_ = 0;
    Ring ring_;
};

struct GroupRingOps {
    using Value = GroupRingElement;
    Value from_int(int128 c) const { return GroupRingElement(c); }
    Value from_var(const std::string& name, size_t pos) const {
        if (name == "x") return GroupRingElement::x();
        if (name == "y") return GroupRingElement::y();
        if (name == "z") return GroupRingElement::z();
        throw parse_error("unknown variable '" + name + "' (expected x, y or z)", pos);
    }
    Value add(const Value& a, const Value& b) const { return heis::add(a, b); }
    Value sub(const Value& a, const Value& b) const { return heis::sub(a, b); }
    Value neg(const Value& a) const { return heis::neg(a); }
    Value mul(const Value& a, const Value& b) const { return heis::mul(a, b); }
    Value pow_int(const Value& v, int64_t e, size_t pos) const {
        if (e >= 0) return heis::pow(v, e);
        // negative powers exist only for units +-(monomial)
        if (v.size() != 1 || abs128(v.terms().begin()->second) != 1)
            throw parse_error("negative power of a non-unit", pos);
        Monomial inv = inverse(v.terms().begin()->first);
        int sign = v.terms().begin()->second < 0 ? -1 : 1;
        Value base(inv, sign);
        return heis::pow(base, -e);
    }
};

struct CommutativeOps {
    using Value = std::map<std::array<int64_t, 3>, int128>;
    std::vector<std::string> vars;

    static void add_term(Value& v, const std::array<int64_t, 3>& e, int128 c) {
        if (c == 0) return;
        auto [it, ins] = v.emplace(e, c);
        if (!ins) {
            it->second = checked_add(it->second, c);
            if (it->second == 0) v.erase(it);
        }
    }
    Value from_int(int128 c) const {
        Value v;
        add_term(v, {0, 0, 0}, c);
        return v;
    }
    Value from_var(const std::string& name, size_t pos) const {
        for (size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == name) {
                Value v;
                std::array<int64_t, 3> e{0, 0, 0};
                e[i] = 1;
                add_term(v, e, 1);
                return v;
            }
        std::string expected;
        for (auto& n : vars) expected += (expected.empty() ? "" : ", ") + n;
        throw parse_error("unknown variable '" + name + "' (expected " + expected + ")", pos);
    }
    Value add(const Value& a, const Value& b) const {
        Value r = a;
        for (auto& [e, c] : b) add_term(r, e, c);
        return r;
    }
    Value sub(const Value& a, const Value& b) const {
        Value r = a;
        for (auto& [e, c] : b) add_term(r, e, -c);
        return r;
    }
    Value neg(const Value& a) const {
        Value r;
        for (auto& [e, c] : a) r.emplace(e, -c);
        return r;
    }
    Value mul(const Value& a, const Value& b) const {
        Value r;
        for (auto& [ea, ca] : a)
            for (auto& [eb, cb] : b) {
                std::array<int64_t, 3> e{checked_add64(ea[0], eb[0]), checked_add64(ea[1], eb[1]),
                                         checked_add64(ea[2], eb[2])};
                add_term(r, e, checked_mul(ca, cb));
            }
        return r;
    }
    Value pow_int(const Value& v, int64_t e, size_t pos) const {
        if (e < 0) {
            if (v.size() != 1 || abs128(v.begin()->second) != 1)
                throw parse_error("negative power of a non-unit", pos);
            std::array<int64_t, 3> ex = v.begin()->first;
            Value base;
            add_term(base, {-ex[0], -ex[1], -ex[2]}, v.begin()->second);
            return pow_int(base, -e, pos);
        }
        Value acc = from_int(1);
        Value b = v;
        while (e > 0) {
            if (e & 1) acc = mul(acc, b);
            e >>= 1;
            if (e > 0) b = mul(b, b);
        }
        return acc;
    }
};

}  // namespace

GroupRingElement parse_group_ring(const std::string& text) {
    Parser<GroupRingOps> p(text, GroupRingOps{});
    return p.run();
}

LaurentPoly1 parse_laurent1(const std::string& text, const std::string& var) {
    Parser<CommutativeOps> p(text, CommutativeOps{{var}});
    auto v = p.run();
    std::map<int64_t, int128> mono;
    for (auto& [e, c] : v) mono[e[0]] = c;
    if (mono.empty()) return LaurentPoly1();
    int64_t low = mono.begin()->first, high = mono.rbegin()->first;
    std::vector<int128> cs(size_t(high - low + 1), 0);
    for (auto& [e, c] : mono) cs[size_t(e - low)] = c;
    return LaurentPoly1(low, std::move(cs));
}

LaurentPoly2 parse_laurent2_vars(const std::string& text, const std::vector<std::string>& vars) {
    Parser<CommutativeOps> p(text, CommutativeOps{vars});
    auto v = p.run();
    LaurentPoly2 out;
    for (auto& [e, c] : v) out.add_term(e[0], e[1], c);
    return out;
}

LaurentPoly2 parse_laurent2(const std::string& text, const std::string& v1,
                            const std::string& v2) {
    return parse_laurent2_vars(text, {v1, v2});
}

}  // namespace heis
