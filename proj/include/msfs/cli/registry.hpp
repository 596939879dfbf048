#pragma once

#include <string>
#include <vector>

#include "msfs/decision/model.hpp"
#include "msfs/robotic/model.hpp"
#include "msfs/task/hierarchy.hpp"

namespace msfs::cli {

struct CaseStudy {
    std::string id;
    std::vector<std::string> strategies;
    std::vector<std::string> experiments;  // first one is the default
};

inline const std::vector<std::string>& ho_systems() {
    static const std::vector<std::string> v{"two_scale", "three_scale"};
    return v;
}

// Stable order; `list` prints exactly this.
inline const std::vector<CaseStudy>& registry() {
    static const std::vector<CaseStudy> r = [] {
        std::vector<CaseStudy> v;
        v.push_back({"hierarchical-oscillators", ho_systems(), {"run", "calibrate"}});

        CaseStudy rc{"robotic-collective", {}, {"run"}};
        for (auto s : robotic::all_rc_strategies()) rc.strategies.push_back(robotic::to_string(s));
        v.push_back(rc);

        CaseStudy cd{"collective-decision", {}, {"grid"}};
        for (auto s : decision::all_cd_strategies()) cd.strategies.push_back(decision::to_string(s));
        v.push_back(cd);

        CaseStudy td{"task-distribution", {}, {"ex_all", "ex_scenario"}};
        for (auto s : task::all_strategies()) td.strategies.push_back(task::to_string(s));
        v.push_back(td);
        return v;
    }();
    return r;
}

inline const CaseStudy* find_case_study(const std::string& id) {
    for (const auto& c : registry())
        if (c.id == id) return &c;
    return nullptr;
}

}  // namespace msfs::cli
