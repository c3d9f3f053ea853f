#include <cmath>
#include <ostream>

#include "qsmooth/cli.hpp"

namespace qsmooth::cli {

using geom::StepStatus;
using nlohmann::json;

int exit_code(const geom::Report& report) {
  if (report.has_error()) return kInternalError;
  return report.passed() ? kOk : kVerificationFailed;
}

namespace {

std::string verdict(int code) {
  switch (code) {
    case kOk:
      return "pass";
    case kVerificationFailed:
      return "fail";
    default:
      return "error";
  }
}

std::string abbreviate(std::string s, std::size_t width) {
  if (s.size() > width) s = s.substr(0, width - 3) + "...";
  return s;
}

}  // namespace

void write_machine_report(std::ostream& os, const geom::Report& report) {
  os << json{{"record", "manifest"}, {"name", report.name}, {"claims", report.claims}}.dump() << '\n';
  for (std::size_t i = 0; i < report.steps.size(); ++i) {
    const auto& s = report.steps[i];
    json rec{{"record", "step"},
             {"index", i},
             {"step", s.step},
             {"status", geom::to_string(s.status)},
             {"certificate", s.certificate},
             {"wall_ms", std::round(s.wall_ms * 1000) / 1000}};
    os << rec.dump() << '\n';
  }
  const int code = exit_code(report);
  os << json{{"record", "verdict"}, {"name", report.name}, {"verdict", verdict(code)}, {"exit_code", code}}.dump()
     << '\n';
}

void write_human_report(std::ostream& os, const geom::Report& report) {
  os << "== " << report.name << '\n';
  if (!report.claims.is_null()) os << "   claims: " << abbreviate(report.claims.dump(), 100) << '\n';
  for (const auto& s : report.steps) {
    std::string tag = geom::to_string(s.status);
    for (auto& c : tag) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    char ms[32];
    std::snprintf(ms, sizeof ms, "%.1f ms", s.wall_ms);
    os << "[" << tag << "] " << s.step << " (" << ms << ")\n";
    if (s.certificate.is_object())
      for (const auto& [k, v] : s.certificate.items())
        os << "      " << k << ": " << abbreviate(v.is_string() ? v.get<std::string>() : v.dump(), 100) << '\n';
  }
  os << "verdict: " << verdict(exit_code(report)) << "\n\n";
}

}  // namespace qsmooth::cli
