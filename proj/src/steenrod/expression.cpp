#include "fglkit/steenrod/expression.hpp"

#include <cctype>
#include <charconv>

#include <fmt/format.h>

#include "fglkit/ring/errors.hpp"

namespace fglkit::steenrod {

namespace {

class ExprParser
{
public:
    explicit ExprParser(std::string_view text) : text_(text) {}

    ExprPtr parse()
    {
        auto e = expr();
        skip_ws();
        if (pos_ != text_.size())
            fail(fmt::format("unexpected character '{}'", text_[pos_]), {"'+'", "'-'", "'*'", "end of input"});
        return e;
    }

private:
    using Kind = Expr::Kind;

    [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected) const
    {
        throw ParseError(fmt::format("{} at offset {}", msg, pos_ + 1), pos_ + 1, std::move(expected));
    }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool at(char c)
    {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    static ExprPtr node(Kind kind, std::size_t offset, long value, std::vector<ExprPtr> children = {})
    {
        return std::make_shared<const Expr>(Expr{kind, offset, value, std::move(children)});
    }

    ExprPtr expr()
    {
        auto left = term();
        for (;;) {
            skip_ws();
            if (at('+') || at('-')) {
                std::size_t offset = pos_ + 1;
                Kind kind = text_[pos_] == '+' ? Kind::sum : Kind::difference;
                ++pos_;
                left = node(kind, offset, 0, {left, term()});
            } else {
                return left;
            }
        }
    }

    ExprPtr term()
    {
        auto left = unary();
        while (at('*')) {
            std::size_t offset = pos_ + 1;
            ++pos_;
            left = node(Kind::product, offset, 0, {left, unary()});
        }
        return left;
    }

    ExprPtr unary()
    {
        if (at('-')) {
            std::size_t offset = pos_ + 1;
            ++pos_;
            return node(Kind::negate, offset, 0, {unary()});
        }
        auto base = primary();
        if (at('^')) {
            std::size_t offset = pos_ + 1;
            ++pos_;
            skip_ws();
            long e = integer("exponent");
            return node(Kind::power, offset, e, {base});
        }
        return base;
    }

    long integer(const char* what)
    {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (start == pos_)
            fail(fmt::format("expected {}", what), {"integer"});
        long v = 0;
        auto [p, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
        if (ec != std::errc() || v > 1'000'000) {
            pos_ = start;
            fail(fmt::format("{} out of range", what), {"integer"});
        }
        return v;
    }

    ExprPtr primary()
    {
        skip_ws();
        const std::vector<std::string> starts = {"integer", "u<k>", "v<k>", "beta", "P<i>", "q<i>", "Q<i>", "'('"};
        if (pos_ == text_.size())
            fail("unexpected end of input", starts);
        std::size_t offset = pos_ + 1;
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)))
            return node(Kind::integer, offset, integer("integer"));
        if (c == '(') {
            ++pos_;
            auto inner = expr();
            close();
            return inner;
        }
        if (!std::isalpha(static_cast<unsigned char>(c)))
            fail(fmt::format("unexpected character '{}'", c), starts);

        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        std::string_view word = text_.substr(start, pos_ - start);
        if (word == "beta")
            return node(Kind::beta, offset, 0, {argument()});
        bool digits = pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
        if (digits && (word == "u" || word == "v"))
            return node(word == "u" ? Kind::u : Kind::v, offset, integer("generator index"));
        if (digits && (word == "P" || word == "q" || word == "Q")) {
            long i = integer("operation index");
            Kind kind = word == "P" ? Kind::steenrod_power : word == "q" ? Kind::q : Kind::milnor;
            return node(kind, offset, i, {argument()});
        }
        pos_ = start;
        fail(fmt::format("unknown identifier '{}'", word), starts);
    }

    ExprPtr argument()
    {
        if (!at('('))
            fail("expected '('", {"'('"});
        ++pos_;
        auto inner = expr();
        close();
        return inner;
    }

    void close()
    {
        if (!at(')'))
            fail(pos_ == text_.size() ? "unexpected end of input" : fmt::format("unexpected character '{}'", text_[pos_]),
                 {"')'"});
        ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

ExprPtr parse_expression(std::string_view text)
{
    return ExprParser(text).parse();
}

std::string to_string(const Expr& e)
{
    using Kind = Expr::Kind;
    auto child = [&](std::size_t i) { return to_string(*e.children[i]); };
    switch (e.kind) {
    case Kind::integer:
        return std::to_string(e.value);
    case Kind::u:
        return fmt::format("u{}", e.value);
    case Kind::v:
        return fmt::format("v{}", e.value);
    case Kind::sum:
        return fmt::format("add({},{})", child(0), child(1));
    case Kind::difference:
        return fmt::format("sub({},{})", child(0), child(1));
    case Kind::negate:
        return fmt::format("neg({})", child(0));
    case Kind::product:
        return fmt::format("mul({},{})", child(0), child(1));
    case Kind::power:
        return fmt::format("pow({},{})", child(0), e.value);
    case Kind::beta:
        return fmt::format("beta({})", child(0));
    case Kind::steenrod_power:
        return fmt::format("P{}({})", e.value, child(0));
    case Kind::q:
        return fmt::format("q{}({})", e.value, child(0));
    case Kind::milnor:
        return fmt::format("Q{}({})", e.value, child(0));
    }
    return {};
}

MotClass evaluate(const Expr& e, const MotRingPtr& ring)
{
    using Kind = Expr::Kind;
    auto child = [&](std::size_t i) { return evaluate(*e.children[i], ring); };
    switch (e.kind) {
    case Kind::integer:
        return MotClass::scalar(ring, e.value);
    case Kind::u:
    case Kind::v:
        if (e.value < 1 || e.value > ring->generators())
            throw ExpressionError(fmt::format("generator {0}{1} outside u1..u{2}, v1..v{2}", e.kind == Kind::u ? 'u' : 'v',
                                              e.value, ring->generators()),
                                  e.offset);
        return e.kind == Kind::u ? MotClass::u(ring, static_cast<int>(e.value))
                                 : MotClass::v(ring, static_cast<int>(e.value));
    case Kind::sum:
        return child(0) + child(1);
    case Kind::difference:
        return child(0) - child(1);
    case Kind::negate:
        return -child(0);
    case Kind::product:
        return child(0) * child(1);
    case Kind::power:
        return MotClass(ring, ring::power(child(0).value(), static_cast<unsigned>(e.value), ring->truncation()));
    case Kind::beta:
        return bockstein(child(0));
    case Kind::steenrod_power:
        return power_op(static_cast<int>(e.value), child(0));
    case Kind::q:
    case Kind::milnor:
        if (e.value < 1)
            throw ExpressionError(fmt::format("{}{} is not defined; the index starts at 1",
                                              e.kind == Kind::q ? 'q' : 'Q', e.value),
                                  e.offset);
        return e.kind == Kind::q ? q_composite(static_cast<int>(e.value), child(0))
                                 : milnor_q(static_cast<int>(e.value), child(0));
    }
    throw ExpressionError("unknown expression node", e.offset);
}

} // namespace fglkit::steenrod
