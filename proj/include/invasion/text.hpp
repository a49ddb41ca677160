#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace invasion::text {

/// Shortest of %.15g, %.16g, %.17g that reads back as x.
std::string g17(double x);
/// Scientific notation with 17 significant digits (%.16e).
std::string e17(double x);

std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

/// Whole-string strict conversion; returns false on trailing garbage.
bool parse_double(std::string_view s, double& out);
bool parse_int(std::string_view s, long long& out);

}  // namespace invasion::text
