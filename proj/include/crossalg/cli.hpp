// Batch front end: one JSON job in, one JSON document out.
#pragma once

#include "json.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace crossalg {

struct JobSpec {
    std::string command;
    nlohmann::json input;           // parsed input document (commands with positional arguments fill it in)
    std::string out_path;           // empty: stdout
    int cap_group_order = 96;
    std::size_t cap_enum = 4096;
    std::uint64_t seed = 0;
};

struct JobResult {
    int status = 0;  // 0 ok, 1 schema, 2 budget, 3 validation
    nlohmann::json document;
};

inline constexpr const char* kVersion = "0.1.0";

const std::vector<std::string>& cli_commands();
JobResult run(const JobSpec& job);
// canonical text of a result (sorted keys, 2-space indent, trailing newline)
std::string render(const nlohmann::json& doc);

}  // namespace crossalg
