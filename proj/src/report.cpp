#include "weakgibbs/report.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace weakgibbs {

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt_interval(const RealInterval& x) {
    return "[" + fmt_double(x.lo) + "," + fmt_double(x.hi) + "]";
}

std::string fmt_interval(const DyadicInterval& x) {
    return "[" + x.lo.str() + "," + x.hi.str() + "]";
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string render_json(const Report& r) {
    nlohmann::json j;
    j["meta"]["version"] = kVersion;
    j["meta"]["seed"] = r.seed;
    j["meta"]["command"] = r.command;
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    j["meta"]["params"] = params;
    j["rows"] = nlohmann::json::array();
    for (const ReportRow& row : r.rows) {
        nlohmann::json jr;
        jr["id"] = row.id;
        jr["instances"] = row.instances;
        jr["worst_margin"] = row.worst_margin;
        jr["pass"] = row.pass;
        nlohmann::json extra = nlohmann::json::object();
        for (const auto& [k, v] : row.extra) extra[k] = v;
        jr["extra"] = extra;
        j["rows"].push_back(jr);
    }
    return j.dump(2) + "\n";
}

std::string render_csv(const Report& r) {
    std::ostringstream os;
    os << "id,instances,worst_margin,pass,extra\n";
    for (const ReportRow& row : r.rows) {
        std::string extra;
        for (const auto& [k, v] : row.extra) {
            if (!extra.empty()) extra += ';';
            extra += k + "=" + v;
        }
        os << csv_escape(row.id) << ',' << row.instances << ','
           << fmt_double(row.worst_margin) << ','
           << (row.pass ? "true" : "false") << ',' << csv_escape(extra) << '\n';
    }
    return os.str();
}

std::string render_text(const Report& r) {
    std::ostringstream os;
    os << r.command << " (seed " << r.seed << ")\n";
    for (const auto& [k, v] : r.params) os << "  " << k << " = " << v << "\n";
    for (const ReportRow& row : r.rows) {
        os << (row.pass ? "PASS " : "FAIL ") << row.id
           << "  instances=" << row.instances
           << "  worst_margin=" << fmt_double(row.worst_margin);
        for (const auto& [k, v] : row.extra) os << "  " << k << "=" << v;
        os << "\n";
    }
    return os.str();
}

std::string render(const Report& r, const std::string& format) {
    if (format == "json") return render_json(r);
    if (format == "csv") return render_csv(r);
    if (format == "text") return render_text(r);
    throw std::invalid_argument("render: unknown format " + format);
}

}  // namespace weakgibbs
