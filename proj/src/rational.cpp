#include "arrstab/rational.hpp"

#include <stdexcept>

namespace arrstab {

std::string to_string(const Rational& x)
{
    const Integer num = boost::multiprecision::numerator(x);
    const Integer den = boost::multiprecision::denominator(x);
    if (den == 1)
        return num.str();
    return num.str() + "/" + den.str();
}

namespace {

Integer parse_integer(std::string_view text, std::string_view whole)
{
    std::size_t start = 0;
    if (!text.empty() && (text[0] == '-' || text[0] == '+'))
        start = 1;
    if (start == text.size())
        throw std::invalid_argument("not a rational: '" + std::string(whole) + "'");
    for (std::size_t i = start; i < text.size(); ++i)
    {
        if (text[i] < '0' || text[i] > '9')
            throw std::invalid_argument("not a rational: '" + std::string(whole) + "'");
    }
    std::string digits(text.substr(text[0] == '+' ? 1 : 0));
    return Integer(digits);
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    const auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_integer(text, text));
    const Integer num = parse_integer(text.substr(0, slash), text);
    const Integer den = parse_integer(text.substr(slash + 1), text);
    if (den == 0)
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

}  // namespace arrstab
