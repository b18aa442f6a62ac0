#ifndef FINPROJ_SCENARIO_HPP
#define FINPROJ_SCENARIO_HPP

#include <map>
#include <string>

#include "finproj/setproc.hpp"

namespace finproj {

/// Scenario document: a finite filtered space plus named objects. All
/// numerics are serialized exactly ("p/q", "+inf", "-inf"); load(save(s))
/// reproduces s bit for bit.
struct Scenario {
    FilteredSpace space;
    std::map<std::string, ScalarProcess> processes;
    std::map<std::string, StoppingTime> stopping_times;
    std::map<std::string, GridIntegrand> grid_integrands;
    std::map<std::string, ConvexIntegrand> convex_integrands;
    std::map<std::string, IntervalProcess> interval_processes;

    static Scenario parse(const std::string& text);
    static Scenario load(const std::string& path);
    std::string serialize() const;
    void save(const std::string& path) const;
};

// Textual forms of the fiber-level objects, shared by the scenario schema
// and the CLI output.
std::string plconvex_to_text(const PLConvex& f);
std::string interval_to_text(const IntervalSet& s);
std::string stopping_value_to_text(int v);
int stopping_value_from_text(const std::string& s, int horizon);

} // namespace finproj

#endif
