#include "fscheme/rational.hpp"

#include <cctype>
#include <vector>

#include "fscheme/errors.hpp"

namespace fscheme {

std::string to_fraction_string(const Rational& value)
{
    Rational reduced = value;
    reduced.canonicalize();
    return reduced.get_num().get_str() + "/" + reduced.get_den().get_str();
}

namespace {

BigInt parse_integer(std::string_view text)
{
    std::size_t start = (!text.empty() && (text[0] == '-' || text[0] == '+')) ? 1 : 0;
    if (start == text.size()) throw ParseError("empty integer in rational '" + std::string(text) + "'");
    for (std::size_t i = start; i < text.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            throw ParseError("bad rational '" + std::string(text) + "'");
    std::string digits(text.substr(text[0] == '+' ? 1 : 0));
    return BigInt(digits, 10);
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text));
    const BigInt num = parse_integer(text.substr(0, slash));
    const BigInt den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return make_ratio(num, den);
}

std::string to_decimal(const Rational& value, int significant_digits)
{
    mpf_class f(value, 512);
    std::vector<char> buf(64 + significant_digits);
    gmp_snprintf(buf.data(), buf.size(), "%.*Fg", significant_digits, f.get_mpf_t());
    return std::string(buf.data());
}

Rational make_ratio(const BigInt& numerator, const BigInt& denominator)
{
    Rational q(numerator, denominator);
    q.canonicalize();
    return q;
}

}  // namespace fscheme
