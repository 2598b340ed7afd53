#pragma once

/**
 * @file report.hpp
 * @brief Command reports: a structured JSON form and a deterministic text form.
 */

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fpell/error.hpp"

namespace fpell {

using Json = nlohmann::ordered_json;

/// 64-bit FNV-1a, printed as 16 hex digits.
inline std::string fnv1a_hex(std::string_view data) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

struct ReportInput {
    std::string kind;  ///< "file" or "name"
    std::string name;
    std::string digest;  ///< FNV-1a of the bytes read, or of the name
    friend bool operator==(const ReportInput&, const ReportInput&) = default;
};

inline ReportInput file_input(const std::string& path, std::string_view bytes) { return {"file", path, fnv1a_hex(bytes)}; }
inline ReportInput name_input(const std::string& name) { return {"name", name, fnv1a_hex(name)}; }

enum class ReportStatus { Ok, UnknownData, Error };

inline const char* to_string(ReportStatus s) {
    switch (s) {
        case ReportStatus::Ok: return "ok";
        case ReportStatus::UnknownData: return "unknown-data";
        default: return "error";
    }
}

inline int exit_code(ReportStatus s) { return static_cast<int>(s); }

struct Report {
    std::string command;
    std::vector<std::string> arguments;  ///< echoed command line after the subcommand
    std::vector<ReportInput> inputs;
    ReportStatus status = ReportStatus::Ok;
    Json results = Json::object();
    std::vector<std::string> text;  ///< human-readable body, one entry per line
    friend bool operator==(const Report&, const Report&) = default;
};

inline constexpr const char* kReportFormat = "fpell-report/1";

inline Json to_json(const Report& r) {
    Json j;
    j["format"] = kReportFormat;
    j["command"] = r.command;
    j["arguments"] = r.arguments;
    j["inputs"] = Json::array();
    for (const auto& in : r.inputs) j["inputs"].push_back({{"kind", in.kind}, {"name", in.name}, {"digest", in.digest}});
    j["status"] = to_string(r.status);
    j["exit_code"] = exit_code(r.status);
    j["results"] = r.results;
    j["text"] = r.text;
    return j;
}

inline Report report_from_json(const Json& j) {
    try {
        if (j.at("format").get<std::string>() != kReportFormat) throw InvalidInput("unsupported report format");
        Report r;
        r.command = j.at("command").get<std::string>();
        r.arguments = j.at("arguments").get<std::vector<std::string>>();
        for (const auto& in : j.at("inputs"))
            r.inputs.push_back({in.at("kind").get<std::string>(), in.at("name").get<std::string>(), in.at("digest").get<std::string>()});
        const std::string st = j.at("status").get<std::string>();
        if (st == "ok") r.status = ReportStatus::Ok;
        else if (st == "unknown-data") r.status = ReportStatus::UnknownData;
        else if (st == "error") r.status = ReportStatus::Error;
        else throw InvalidInput("unknown report status '" + st + "'");
        if (j.at("exit_code").get<int>() != exit_code(r.status)) throw InvalidInput("exit code does not match status");
        r.results = j.at("results");
        r.text = j.at("text").get<std::vector<std::string>>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("malformed report: ") + e.what());
    }
}

inline Report parse_report(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidInput(std::string("report is not JSON: ") + e.what());
    }
    return report_from_json(j);
}

inline std::string emit_json(const Report& r) { return to_json(r).dump(2) + "\n"; }

inline std::string emit_text(const Report& r) {
    std::string out = "fpell " + r.command;
    for (const auto& a : r.arguments) out += " " + a;
    out += "\n";
    for (const auto& in : r.inputs) out += "input " + in.kind + " " + in.name + " fnv1a:" + in.digest + "\n";
    for (const auto& l : r.text) out += l + "\n";
    out += "status: " + std::string(to_string(r.status)) + "\n";
    return out;
}

}  // namespace fpell
