#pragma once

// Locale-independent number formatting and parsing for the text formats.

#include <string>
#include <string_view>
#include <vector>

namespace vtwin
{

/// 12 significant digits, shortest form ("0.5", "1.23456789012e-05").
std::string fmt_num(double v);

/// Shortest representation that round-trips bit-exactly.
std::string fmt_exact(double v);

/// Rounds v to 12 significant digits (the value fmt_num would print).
double round12(double v);

bool parse_double(std::string_view s, double &out);
bool parse_int(std::string_view s, long long &out);

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

} // namespace vtwin
