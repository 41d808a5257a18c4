#include "vtwin/numfmt.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace vtwin
{

std::string fmt_num(double v)
{
    if (v == 0.0)
    {
        return "0"; // also folds -0
    }
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 12);
    return std::string(buf.data(), res.ptr);
}

std::string fmt_exact(double v)
{
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

double round12(double v)
{
    double out = 0.0;
    const std::string s = fmt_num(v);
    std::from_chars(s.data(), s.data() + s.size(), out);
    return out;
}

bool parse_double(std::string_view s, double &out)
{
    const std::string t = trim(s);
    if (t.empty())
    {
        return false;
    }
    const char *first = t.data();
    if (*first == '+')
    {
        ++first;
    }
    const auto res = std::from_chars(first, t.data() + t.size(), out);
    return res.ec == std::errc{} && res.ptr == t.data() + t.size();
}

bool parse_int(std::string_view s, long long &out)
{
    const std::string t = trim(s);
    if (t.empty())
    {
        return false;
    }
    const auto res = std::from_chars(t.data(), t.data() + t.size(), out);
    return res.ec == std::errc{} && res.ptr == t.data() + t.size();
}

std::string trim(std::string_view s)
{
    const auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && ws(s[b]))
    {
        ++b;
    }
    while (e > b && ws(s[e - 1]))
    {
        --e;
    }
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i)
    {
        if (i == s.size() || s[i] == sep)
        {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

} // namespace vtwin
