#include "excat/report.hpp"

#include <sstream>

namespace excat {

using nlohmann::ordered_json;

ordered_json config_json(const RunConfig& c) {
    ordered_json j;
    if (!c.preset.empty()) j["preset"] = c.preset;
    if (!c.spec_path.empty()) j["spec"] = c.spec_path;
    j["bound"] = c.bound;
    j["cap"] = c.cap;
    j["structure"] = c.structure;
    j["N"] = c.n_select;
    j["kind"] = c.kind;
    j["side"] = c.side;
    j["emit"] = c.emit;
    j["ext_bound"] = c.ext_bound;
    j["deterministic"] = c.deterministic;
    return j;
}

ordered_json check_report_json(const CheckReport& r) {
    ordered_json items = ordered_json::array();
    for (auto& it : r.items) {
        ordered_json j;
        j["name"] = it.name;
        j["status"] = it.status;
        if (!it.detail.empty()) j["detail"] = it.detail;
        items.push_back(std::move(j));
    }
    ordered_json out;
    out["items"] = std::move(items);
    out["notes"] = r.notes;
    out["verdict"] =
        r.any_fail() ? "fail" : (r.any_inconclusive() ? "inconclusive" : "pass");
    return out;
}

ordered_json report_json(const RunConfig& c, const std::string& command,
                         const CheckReport& r) {
    ordered_json j;
    j["tool"] = "excat";
    j["command"] = command;
    j["config"] = config_json(c);
    auto body = check_report_json(r);
    for (auto& [k, v] : body.items()) j[k] = v;
    return j;
}

std::string report_markdown(const RunConfig& c, const std::string& command,
                            const CheckReport& r) {
    std::ostringstream out;
    out << "# excat " << command << "\n\n";
    out << "config: `" << config_json(c).dump() << "`\n\n";
    out << "| check | status | detail |\n|---|---|---|\n";
    for (auto& it : r.items)
        out << "| " << it.name << " | " << it.status << " | " << it.detail << " |\n";
    if (!r.notes.empty()) {
        out << "\nnotes:\n";
        for (auto& n : r.notes) out << "- " << n << "\n";
    }
    out << "\nverdict: **"
        << (r.any_fail() ? "fail" : (r.any_inconclusive() ? "inconclusive" : "pass"))
        << "**\n";
    return out.str();
}

ordered_json lattice_json(const SubcatContext& ctx, const Lattice& l) {
    const Universe& u = *ctx.universe();
    ordered_json j;
    j["kind"] = l.kind == SubcatKind::thick ? "thick" : "complete";
    j["side"] = l.side == Side::ambient ? "ambient" : "stable";
    ordered_json sets = ordered_json::array();
    for (auto& s : l.sets) {
        ordered_json e;
        e["members"] = s.members;
        ordered_json labels = ordered_json::array();
        for (auto m : s.members) labels.push_back(u.object(m).label);
        e["labels"] = std::move(labels);
        e["complete"] = s.complete;
        e["thick"] = s.thick;
        e["contains_n"] = s.contains_n;
        sets.push_back(std::move(e));
    }
    j["sets"] = std::move(sets);
    ordered_json hasse = ordered_json::array();
    for (auto& [a, b] : l.hasse) hasse.push_back(ordered_json::array({a, b}));
    j["hasse"] = std::move(hasse);
    j["truncated"] = l.truncated;
    j["inconclusive"] = l.inconclusive;
    return j;
}

int exit_code_for(const CheckReport& r) {
    if (r.any_fail()) return 1;
    if (r.any_inconclusive()) return 3;
    return 0;
}

} // namespace excat
