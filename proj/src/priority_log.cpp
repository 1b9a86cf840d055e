#include <sstream>
#include <stdexcept>

#include "ceerwb/priority.hpp"
#include "json.hpp"

namespace ceerwb {

namespace {

using json = nlohmann::ordered_json;

json naturals(const std::vector<Natural>& xs) {
    json a = json::array();
    for (const auto& x : xs) a.push_back(to_string(x));
    return a;
}

json optional_natural(const std::optional<Natural>& x) { return x ? json(to_string(*x)) : json(nullptr); }

json evidence(const std::optional<Evidence>& m) {
    if (!m) return nullptr;
    return json::array({to_string(m->v), m->k});
}

Natural natural_field(const json& j) {
    if (!j.is_string()) throw std::invalid_argument("expected a decimal string");
    return parse_natural(j.get<std::string>());
}

std::optional<Natural> optional_natural_field(const json& j) {
    if (j.is_null()) return std::nullopt;
    return natural_field(j);
}

std::optional<Evidence> evidence_field(const json& j) {
    if (j.is_null()) return std::nullopt;
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("M must be [v, k]");
    return Evidence{natural_field(j[0]), j[1].get<unsigned>()};
}

}  // namespace

std::string log_to_jsonl(const PriorityRun& run) {
    std::ostringstream out;
    json cfg;
    cfg["record"] = "priority-config";
    cfg["schema"] = 1;
    cfg["family"] = to_string(run.config.family);
    cfg["v"] = to_string(run.config.v_program);
    cfg["candidates"] = naturals(run.config.candidates);
    cfg["family_count"] = run.config.family_count;
    cfg["stages"] = run.config.stages;
    out << cfg.dump() << "\n";
    for (const auto& rec : run.log) {
        json r;
        r["record"] = "stage";
        r["stage"] = rec.stage;
        r["actor"] = rec.actor;
        r["action"] = to_string(rec.action);
        r["collapsed"] = rec.collapsed ? naturals({rec.collapsed->first, rec.collapsed->second}) : json::array();
        r["picks"] = naturals(rec.picks);
        r["initialized"] = rec.initialized;
        r["restraint"] = optional_natural(rec.restraint);
        r["M"] = evidence(rec.m_param);
        out << r.dump() << "\n";
    }
    json summary;
    summary["record"] = "priority-summary";
    summary["stages"] = run.log.size();
    json reqs = json::array();
    for (const auto& [id, st] : run.final_states) {
        json q;
        q["name"] = id.name();
        q["initialized"] = st.initialized;
        q["permanent"] = st.permanent;
        q["restraint"] = optional_natural(st.restraint);
        q["M"] = evidence(st.m_param);
        q["picks"] = naturals(st.picks);
        reqs.push_back(q);
    }
    summary["requirements"] = reqs;
    out << summary.dump() << "\n";
    return out.str();
}

ParsedLog parse_log(const std::string& text) {
    ParsedLog parsed;
    bool have_config = false;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            json j = json::parse(line);
            const std::string kind = j.at("record").get<std::string>();
            if (kind == "priority-config") {
                PriorityConfig& c = parsed.config;
                c.family = natural_field(j.at("family"));
                c.v_program = natural_field(j.at("v"));
                c.candidates.clear();
                for (const auto& x : j.at("candidates")) c.candidates.push_back(natural_field(x));
                c.family_count = j.at("family_count").get<std::uint64_t>();
                c.stages = j.at("stages").get<std::uint64_t>();
                have_config = true;
            } else if (kind == "stage") {
                StageRecord r;
                r.stage = j.at("stage").get<Stage>();
                r.actor = j.at("actor").get<std::string>();
                auto action = parse_action(j.at("action").get<std::string>());
                if (!action) throw std::invalid_argument("unknown action");
                r.action = *action;
                const json& col = j.at("collapsed");
                if (col.size() == 2) r.collapsed = std::make_pair(natural_field(col[0]), natural_field(col[1]));
                else if (!col.empty()) throw std::invalid_argument("collapsed must be [] or [lo, hi]");
                for (const auto& x : j.at("picks")) r.picks.push_back(natural_field(x));
                r.initialized = j.at("initialized").get<std::vector<std::string>>();
                r.restraint = optional_natural_field(j.at("restraint"));
                r.m_param = evidence_field(j.at("M"));
                parsed.log.push_back(std::move(r));
            } else if (kind != "priority-summary") {
                throw std::invalid_argument("unknown record kind '" + kind + "'");
            }
        } catch (const std::exception& ex) {
            throw std::invalid_argument("log line " + std::to_string(lineno) + ": " + ex.what());
        }
    }
    if (!have_config) throw std::invalid_argument("log has no priority-config record");
    return parsed;
}

}  // namespace ceerwb
