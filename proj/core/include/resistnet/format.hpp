#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace resistnet {

/// Report precision. Trajectories use full 17 digits instead.
inline constexpr int kReportDigits = 12;

/// Rounds to `digits` significant decimal digits; non-finite values pass through.
inline double round_significant(double value, int digits = kReportDigits) {
  if (!std::isfinite(value) || value == 0.0) return value;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return std::strtod(buf, nullptr);
}

/// "%.12g", with "inf" / "-inf" / "nan" spelled out.
inline std::string format_number(double value, int digits = kReportDigits) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

}  // namespace resistnet
