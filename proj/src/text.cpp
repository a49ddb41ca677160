#include "invasion/text.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace invasion::text {

std::string g17(double x) {
  char buf[40];
  for (int digits = 15; digits <= 17; ++digits) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    if (digits == 17 || std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

std::string e17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.emplace_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

bool parse_double(std::string_view s, double& out) {
  const std::string str(trim(s));
  if (str.empty()) return false;
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(str.c_str(), &end);
  // ERANGE on underflow still yields the correctly rounded subnormal.
  if (end != str.c_str() + str.size() || (errno == ERANGE && std::isinf(v))) return false;
  out = v;
  return true;
}

bool parse_int(std::string_view s, long long& out) {
  const std::string str(trim(s));
  if (str.empty()) return false;
  char* end = nullptr;
  errno = 0;
  const long long v = std::strtoll(str.c_str(), &end, 10);
  if (end != str.c_str() + str.size() || errno == ERANGE) return false;
  out = v;
  return true;
}

}  // namespace invasion::text
