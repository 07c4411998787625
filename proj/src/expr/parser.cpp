#include "expr/parser.hpp"

#include "common/error.hpp"

#include <cctype>
#include <optional>

namespace corank {

namespace {

constexpr std::string_view kPartial = "\xE2\x88\x82";  // ∂
constexpr std::string_view kWedge = "\xE2\x88\xA7";    // ∧

enum class Tok { End, Number, Name, Plus, Minus, Star, Slash, Caret, LParen, RParen, Partial };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t pos = 0;
};

bool name_byte(unsigned char c)
{
    return std::isalnum(c) || c == '_' || c >= 0x80;
}

class Lexer {
public:
    explicit Lexer(std::string_view s) : s_(s) {}

    std::vector<Token> run()
    {
        std::vector<Token> out;
        while (true) {
            skip_space();
            const std::size_t start = i_;
            if (i_ >= s_.size()) {
                out.push_back({Tok::End, "", start});
                return out;
            }
            if (s_.substr(i_, kPartial.size()) == kPartial) {
                i_ += kPartial.size();
                out.push_back({Tok::Partial, "", start});
                continue;
            }
            if (s_.substr(i_, kWedge.size()) == kWedge) {
                i_ += kWedge.size();
                out.push_back({Tok::Caret, "^", start});
                continue;
            }
            const auto c = static_cast<unsigned char>(s_[i_]);
            if (std::isdigit(c) || (c == '.' && i_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_ + 1])))) {
                out.push_back({Tok::Number, number(), start});
                continue;
            }
            if (std::isalpha(c) || c == '_' || c >= 0x80) {
                std::size_t j = i_;
                while (j < s_.size() && name_byte(static_cast<unsigned char>(s_[j])) &&
                       s_.substr(j, kPartial.size()) != kPartial && s_.substr(j, kWedge.size()) != kWedge) {
                    ++j;
                }
                out.push_back({Tok::Name, std::string(s_.substr(i_, j - i_)), start});
                i_ = j;
                continue;
            }
            ++i_;
            switch (c) {
            case '+': out.push_back({Tok::Plus, "+", start}); break;
            case '-': out.push_back({Tok::Minus, "-", start}); break;
            case '*': out.push_back({Tok::Star, "*", start}); break;
            case '/': out.push_back({Tok::Slash, "/", start}); break;
            case '^': out.push_back({Tok::Caret, "^", start}); break;
            case '(': out.push_back({Tok::LParen, "(", start}); break;
            case ')': out.push_back({Tok::RParen, ")", start}); break;
            case '@': out.push_back({Tok::Partial, "", start}); break;
            default: throw ParseError(start, std::string("unexpected character '") + static_cast<char>(c) + "'");
            }
        }
    }

private:
    void skip_space()
    {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }

    std::string number()
    {
        const std::size_t start = i_;
        auto digits = [&] {
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        };
        digits();
        if (i_ < s_.size() && s_[i_] == '.') {
            ++i_;
            digits();
        }
        if (i_ < s_.size() && (s_[i_] == 'e' || s_[i_] == 'E')) {
            std::size_t j = i_ + 1;
            if (j < s_.size() && (s_[j] == '+' || s_[j] == '-')) ++j;
            if (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) {
                i_ = j;
                digits();
            }
        }
        return std::string(s_.substr(start, i_ - start));
    }

    std::string_view s_;
    std::size_t i_ = 0;
};

Rational exact_decimal(const std::string& text)
{
    std::string mantissa = text;
    long exponent = 0;
    if (auto e = mantissa.find_first_of("eE"); e != std::string::npos) {
        exponent = std::stol(mantissa.substr(e + 1));
        mantissa = mantissa.substr(0, e);
    }
    if (auto dot = mantissa.find('.'); dot != std::string::npos) {
        exponent -= static_cast<long>(mantissa.size() - dot - 1);
        mantissa.erase(dot, 1);
    }
    if (mantissa.empty()) mantissa = "0";
    Rational value(mpz_class(mantissa, 10));
    if (exponent > 400 || exponent < -400) throw Error(ErrorCode::Syntax, "number exponent out of range: " + text);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    if (exponent >= 0) {
        value *= scale;
    } else {
        value /= scale;
    }
    value.canonicalize();
    return value;
}

std::optional<KernelKind> function_kind(const std::string& name)
{
    if (name == "exp") return KernelKind::Exp;
    if (name == "log") return KernelKind::Log;
    if (name == "sin") return KernelKind::Sin;
    if (name == "cos") return KernelKind::Cos;
    return std::nullopt;
}

class Parser {
public:
    Parser(std::string_view text, const Chart& chart, std::optional<BasisKind> basis)
        : tokens_(Lexer(text).run()), chart_(chart), basis_(basis) {}

    Expr scalar()
    {
        Expr e = expr();
        expect_end();
        return e;
    }

    std::vector<GradedTerm> graded()
    {
        std::vector<GradedTerm> out;
        bool first = true;
        while (true) {
            bool negative = false;
            if (!first || at(Tok::Plus) || at(Tok::Minus)) {
                if (at(Tok::Plus)) {
                    advance();
                } else if (at(Tok::Minus)) {
                    advance();
                    negative = true;
                } else if (!first) {
                    break;
                }
            }
            first = false;
            GradedTerm t;
            t.coefficient = at_basis() ? Expr(1) : term();
            if (at_basis()) {
                t.basis.push_back(basis_element());
                while (at(Tok::Caret)) {
                    advance();
                    if (!at_basis()) throw ParseError(peek().pos, "expected a basis element after '^'");
                    t.basis.push_back(basis_element());
                }
            }
            if (negative) t.coefficient = -t.coefficient;
            out.push_back(std::move(t));
        }
        expect_end();
        return out;
    }

private:
    const Token& peek(std::size_t ahead = 0) const
    {
        return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
    }
    bool at(Tok k) const { return peek().kind == k; }
    const Token& advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

    void expect_end()
    {
        if (!at(Tok::End)) throw ParseError(peek().pos, "unexpected '" + peek().text + "'");
    }

    bool at_basis() const
    {
        if (!basis_) return false;
        if (*basis_ == BasisKind::Partial) return at(Tok::Partial);
        if (!at(Tok::Name)) return false;
        const std::string& t = peek().text;
        return t.size() > 1 && t[0] == 'd' && !chart_.knows(t) && chart_.index_of(std::string_view(t).substr(1));
    }

    std::size_t basis_element()
    {
        if (*basis_ == BasisKind::Partial) {
            const std::size_t at_pos = advance().pos;
            if (!at(Tok::Name)) throw ParseError(at_pos, "expected a coordinate after the partial sign");
            const Token& name = advance();
            auto i = chart_.index_of(name.text);
            if (!i) throw Error(ErrorCode::UnknownIdentifier, "unknown coordinate '" + name.text + "' at position " + std::to_string(name.pos));
            return *i;
        }
        return *chart_.index_of(std::string_view(advance().text).substr(1));
    }

    Expr expr()
    {
        Expr e = term();
        while (at(Tok::Plus) || at(Tok::Minus)) {
            const bool minus = advance().kind == Tok::Minus;
            Expr rhs = term();
            e = minus ? e - rhs : e + rhs;
        }
        return e;
    }

    Expr term()
    {
        Expr e = unary();
        while (at(Tok::Star) || at(Tok::Slash)) {
            const Token& op = advance();
            Expr rhs = unary();
            if (op.kind == Tok::Star) {
                e = e * rhs;
            } else {
                if (rhs.is_zero()) throw ParseError(op.pos, "division by zero");
                e = e / rhs;
            }
        }
        return e;
    }

    Expr unary()
    {
        if (at(Tok::Minus)) {
            advance();
            return -unary();
        }
        if (at(Tok::Plus)) {
            advance();
            return unary();
        }
        return power();
    }

    Expr power()
    {
        Expr base = primary();
        if (!at(Tok::Caret) || at_basis_after_caret()) return base;
        const std::size_t caret = advance().pos;
        Expr exponent = unary();
        auto q = exponent.as_rational();
        if (!q || q->get_den() != 1 || !q->get_num().fits_sint_p()) {
            throw ParseError(caret, "exponent must be an integer constant");
        }
        const long n = q->get_num().get_si();
        if (n < -10000 || n > 10000) throw ParseError(caret, "exponent out of range");
        if (n < 0 && base.is_zero()) throw ParseError(caret, "division by zero");
        return base.pow(static_cast<int>(n));
    }

    bool at_basis_after_caret()
    {
        if (!basis_) return false;
        ++pos_;
        const bool b = at_basis();
        --pos_;
        return b;
    }

    Expr primary()
    {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::Number: advance(); return Expr(exact_decimal(t.text));
        case Tok::LParen: {
            advance();
            Expr e = expr();
            if (!at(Tok::RParen)) throw ParseError(peek().pos, "expected ')'");
            advance();
            return e;
        }
        case Tok::Name: {
            const Token name = advance();
            if (auto kind = function_kind(name.text)) {
                if (!at(Tok::LParen)) throw ParseError(peek().pos, "expected '(' after " + name.text);
                advance();
                const bool trig = *kind == KernelKind::Sin || *kind == KernelKind::Cos;
                if (trig) ++trig_depth_;
                Expr arg = expr();
                if (trig) --trig_depth_;
                if (!at(Tok::RParen)) throw ParseError(peek().pos, "expected ')'");
                advance();
                if (*kind == KernelKind::Log && arg.is_zero()) throw ParseError(name.pos, "log of zero");
                return Expr::apply(*kind, arg);
            }
            if (auto i = chart_.index_of(name.text)) {
                if (chart_.torus_strict() && chart_.coordinates()[*i].periodic && trig_depth_ == 0) {
                    throw ParseError(name.pos, "angle coordinate '" + name.text + "' may only appear inside sin or cos");
                }
                return Expr::variable(name.text);
            }
            if (chart_.has_parameter(name.text)) return Expr::variable(name.text);
            throw Error(ErrorCode::UnknownIdentifier,
                        "unknown identifier '" + name.text + "' at position " + std::to_string(name.pos));
        }
        case Tok::End: throw ParseError(t.pos, "unexpected end of input");
        default: throw ParseError(t.pos, "unexpected '" + t.text + "'");
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    const Chart& chart_;
    std::optional<BasisKind> basis_;
    int trig_depth_ = 0;
};

}  // namespace

Expr parse_scalar(std::string_view text, const Chart& chart)
{
    return Parser(text, chart, std::nullopt).scalar();
}

std::vector<GradedTerm> parse_graded(std::string_view text, const Chart& chart, BasisKind kind)
{
    return Parser(text, chart, kind).graded();
}

}  // namespace corank
