#pragma once

#include <string>
#include <vector>

#include "weakgibbs/thermo.hpp"

namespace weakgibbs {

inline constexpr const char* kVersion = "1.0.0";

struct Report {
    std::string command;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<ReportRow> rows;
};

std::string render_json(const Report& r);
std::string render_csv(const Report& r);
std::string render_text(const Report& r);
std::string render(const Report& r, const std::string& format);

// "[lo,hi]" with 17 significant digits
std::string fmt_interval(const RealInterval& x);
std::string fmt_interval(const DyadicInterval& x);  // exact dyadic endpoints
std::string fmt_double(double x);

}  // namespace weakgibbs
