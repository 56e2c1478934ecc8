#pragma once

#include "excat/gorenstein.hpp"

#include <json.hpp>

namespace excat {

/// Full run configuration; serialized into every report header so a report
/// is reproducible from its own bytes. No timestamps, no randomness.
struct RunConfig {
    std::string preset;     // "xquot:p,n" | "xy:p" (empty when spec_path set)
    std::string spec_path;  // algebra + seeds JSON file
    std::size_t bound = 2;
    std::uint64_t cap = 1u << 16;
    std::string structure = "abelian";  // split|abelian|induced:<path>|file:<path>
    std::string n_select = "inj";       // inj|proj|zero|file:<path>
    std::string kind = "thick";         // thick|complete
    std::string side = "ambient";       // ambient|stable
    std::string emit = "json";          // json|dot|md
    std::size_t ext_bound = 2;
    std::string out_dir;
    bool deterministic = true;  // always on; recorded for provenance
};

nlohmann::ordered_json config_json(const RunConfig& c);
nlohmann::ordered_json check_report_json(const CheckReport& r);

/// Report envelope: tool/version, command, config, items, notes, verdict.
nlohmann::ordered_json report_json(const RunConfig& c, const std::string& command,
                                   const CheckReport& r);
/// Human-readable summary table of the same content.
std::string report_markdown(const RunConfig& c, const std::string& command,
                            const CheckReport& r);

nlohmann::ordered_json lattice_json(const SubcatContext& ctx, const Lattice& l);

/// 0 = all pass, 1 = some check failed, 3 = inconclusive cells present.
int exit_code_for(const CheckReport& r);

} // namespace excat
