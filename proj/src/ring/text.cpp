#include "fglkit/ring/text.hpp"

#include <cctype>

#include <fmt/format.h>

#include "fglkit/ring/errors.hpp"

namespace fglkit::ring {

std::string to_string(const GradedPoly& p)
{
    if (p.is_zero())
        return "0";
    const auto& table = p.table();
    std::string out;
    bool first = true;
    for (const auto& term : p.terms()) {
        Integer c = term.coefficient;
        bool negative = c < 0;
        if (negative)
            c = -c;
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;

        std::string factors;
        for (std::size_t i = 0; i < table.size(); ++i) {
            unsigned e = term.monomial[i];
            if (e == 0)
                continue;
            if (!factors.empty())
                factors += '*';
            factors += table[i].name;
            if (e > 1)
                factors += fmt::format("^{}", e);
        }
        if (factors.empty()) {
            out += c.get_str();
        } else {
            if (c != 1)
                out += c.get_str() + "*";
            out += factors;
        }
    }
    return out;
}

namespace {

class PolyParser
{
public:
    PolyParser(const TablePtr& table, std::string_view text) : table_(table), text_(text) {}

    GradedPoly parse()
    {
        skip_ws();
        if (pos_ == text_.size())
            fail("empty polynomial", {"integer", "generator", "'-'"});
        GradedPoly result(table_);
        bool negate = false;
        if (peek() == '-' || peek() == '+') {
            negate = peek() == '-';
            ++pos_;
        }
        GradedPoly t = term();
        result += negate ? -t : t;
        for (;;) {
            skip_ws();
            if (pos_ == text_.size())
                break;
            char c = peek();
            if (c != '+' && c != '-')
                fail(fmt::format("unexpected character '{}'", c), {"'+'", "'-'", "'*'", "end of input"});
            ++pos_;
            t = term();
            result += c == '-' ? -t : t;
        }
        return result;
    }

private:
    GradedPoly term()
    {
        GradedPoly acc = factor();
        for (;;) {
            skip_ws();
            if (pos_ < text_.size() && peek() == '*') {
                ++pos_;
                acc = acc * factor();
            } else {
                return acc;
            }
        }
    }

    GradedPoly factor()
    {
        skip_ws();
        if (pos_ == text_.size())
            fail("unexpected end of input", {"integer", "generator"});
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c)))
            return GradedPoly::constant(table_, Integer(digits()));
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
                ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            auto idx = table_->find(name);
            if (!idx) {
                pos_ = start;
                fail(fmt::format("unknown generator '{}'", name), {"generator"});
            }
            unsigned e = 1;
            skip_ws();
            if (pos_ < text_.size() && peek() == '^') {
                ++pos_;
                skip_ws();
                if (pos_ == text_.size() || !std::isdigit(static_cast<unsigned char>(peek())))
                    fail("expected exponent", {"integer"});
                std::string d = digits();
                if (d.size() > 5 || std::stoul(d) > UINT16_MAX)
                    fail("exponent too large", {"integer"});
                e = static_cast<unsigned>(std::stoul(d));
            }
            if (e == 0)
                return GradedPoly::constant(table_, 1);
            return GradedPoly::generator(table_, name, e);
        }
        fail(fmt::format("unexpected character '{}'", c), {"integer", "generator"});
    }

    std::string digits()
    {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(peek())))
            ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    char peek() const { return text_[pos_]; }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    [[noreturn]] void fail(const std::string& what, std::vector<std::string> expected)
    {
        throw ParseError(fmt::format("{} at offset {}", what, pos_ + 1), pos_ + 1, std::move(expected));
    }

    const TablePtr& table_;
    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

GradedPoly parse_poly(const TablePtr& table, std::string_view text)
{
    return PolyParser(table, text).parse();
}

} // namespace fglkit::ring
