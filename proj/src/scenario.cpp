#include "finproj/scenario.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "finproj/errors.hpp"

namespace finproj {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw SchemaError(path + ": " + what);
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t");
    size_t e = s.find_last_not_of(" \t");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

ExtReal ext_from(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected an extended-real string");
    try {
        return ExtReal::parse(j.get<std::string>());
    } catch (const std::exception& e) {
        fail(path, e.what());
    }
}

Rational rat_from(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a rational string");
    try {
        return Rational::parse(j.get<std::string>());
    } catch (const std::exception& e) {
        fail(path, e.what());
    }
}

std::pair<Rational, Rational> breakpoint_from(const std::string& s, const std::string& path) {
    std::string t = trim(s);
    if (t.size() < 2 || t.front() != '(' || t.back() != ')')
        fail(path, "breakpoint must look like \"(x, v)\"");
    t = t.substr(1, t.size() - 2);
    size_t comma = t.find(',');
    if (comma == std::string::npos) fail(path, "breakpoint must look like \"(x, v)\"");
    return {Rational::parse(trim(t.substr(0, comma))), Rational::parse(trim(t.substr(comma + 1)))};
}

PLConvex plconvex_from(const json& j, const std::string& path) {
    if (j.is_string()) {
        if (j.get<std::string>() == "empty") return PLConvex::empty();
        fail(path, "unknown fiber literal '" + j.get<std::string>() + "'");
    }
    if (!j.is_object()) fail(path, "expected \"empty\" or a fiber object");
    if (!j.contains("breakpoints") || !j["breakpoints"].is_array())
        fail(path, "fiber needs a breakpoints array");
    std::vector<std::pair<Rational, Rational>> pts;
    for (const auto& bp : j["breakpoints"]) {
        if (!bp.is_string()) fail(path + ".breakpoints", "expected \"(x, v)\" strings");
        pts.push_back(breakpoint_from(bp.get<std::string>(), path + ".breakpoints"));
    }
    ExtReal left = ext_from(j.value("left_slope", json("-inf")), path + ".left_slope");
    ExtReal right = ext_from(j.value("right_slope", json("+inf")), path + ".right_slope");
    try {
        return PLConvex::from_breakpoints(std::move(pts), left, right);
    } catch (const std::exception& e) {
        fail(path, e.what());
    }
}

json plconvex_to(const PLConvex& f) {
    if (f.is_empty()) return json("empty");
    json j;
    json bps = json::array();
    for (int i = 0; i < f.breakpoint_count(); ++i)
        bps.push_back("(" + f.xs()[i].str() + ", " + f.vs()[i].str() + ")");
    j["breakpoints"] = std::move(bps);
    j["left_slope"] = f.left_slope().str();
    j["right_slope"] = f.right_slope().str();
    return j;
}

IntervalSet interval_from(const json& j, const std::string& path) {
    if (j.is_string()) {
        if (j.get<std::string>() == "empty") return IntervalSet::empty();
        fail(path, "unknown interval literal '" + j.get<std::string>() + "'");
    }
    if (!j.is_array() || j.size() != 2) fail(path, "expected [lo, hi] or \"empty\"");
    try {
        return IntervalSet(ext_from(j[0], path + "[0]"), ext_from(j[1], path + "[1]"));
    } catch (const std::exception& e) {
        fail(path, e.what());
    }
}

json interval_to(const IntervalSet& s) {
    if (s.is_empty()) return json("empty");
    return json::array({s.lo().str(), s.hi().str()});
}

} // namespace

std::string plconvex_to_text(const PLConvex& f) { return f.str(); }
std::string interval_to_text(const IntervalSet& s) { return s.str(); }

std::string stopping_value_to_text(int v) {
    return v == StoppingTime::kInf ? "inf" : std::to_string(v);
}

int stopping_value_from_text(const std::string& s, int horizon) {
    if (s == "inf" || s == "+inf") return StoppingTime::kInf;
    try {
        size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size() || v < 0 || v > horizon) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw SchemaError("bad stopping-time value '" + s + "'");
    }
}

Scenario Scenario::parse(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw SchemaError(std::string("scenario is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("space")) fail("scenario", "missing space");

    const json& sp = j["space"];
    if (!sp.contains("atoms") || !sp["atoms"].is_array()) fail("space.atoms", "expected an array");
    std::vector<std::string> atoms;
    for (const auto& a : sp["atoms"]) {
        if (!a.is_string()) fail("space.atoms", "atom ids must be strings");
        atoms.push_back(a.get<std::string>());
    }
    if (!sp.contains("prob") || !sp["prob"].is_array() || sp["prob"].size() != atoms.size())
        fail("space.prob", "expected one rational per atom");
    std::vector<Rational> prob;
    for (size_t i = 0; i < sp["prob"].size(); ++i)
        prob.push_back(rat_from(sp["prob"][i], "space.prob[" + std::to_string(i) + "]"));
    if (!sp.contains("horizon") || !sp["horizon"].is_number_integer())
        fail("space.horizon", "expected an integer");
    int horizon = sp["horizon"].get<int>();
    if (!sp.contains("partitions") || !sp["partitions"].is_array())
        fail("space.partitions", "expected an array of partitions");

    auto atom_index = [&](const std::string& id, const std::string& path) {
        for (size_t i = 0; i < atoms.size(); ++i)
            if (atoms[i] == id) return static_cast<int>(i);
        fail(path, "unknown atom '" + id + "'");
    };

    std::vector<std::vector<std::vector<int>>> partitions;
    for (size_t t = 0; t < sp["partitions"].size(); ++t) {
        std::string tp = "space.partitions[" + std::to_string(t) + "]";
        if (!sp["partitions"][t].is_array()) fail(tp, "expected a list of cells");
        std::vector<std::vector<int>> cells;
        for (const auto& cj : sp["partitions"][t]) {
            if (!cj.is_array()) fail(tp, "each cell must be a list of atom ids");
            std::vector<int> cell;
            for (const auto& aj : cj) {
                if (!aj.is_string()) fail(tp, "atom ids must be strings");
                cell.push_back(atom_index(aj.get<std::string>(), tp));
            }
            cells.push_back(std::move(cell));
        }
        partitions.push_back(std::move(cells));
    }

    Scenario s;
    try {
        s.space = FilteredSpace::create(atoms, prob, horizon, partitions);
    } catch (const std::exception& e) {
        fail("space", e.what());
    }
    int T = s.space.horizon();
    int n = s.space.atom_count();

    auto check_table = [&](const json& tab, const std::string& path) {
        if (!tab.is_array() || tab.size() != static_cast<size_t>(T) + 1)
            fail(path, "expected horizon+1 rows");
        for (const auto& row : tab)
            if (!row.is_array() || row.size() != static_cast<size_t>(n))
                fail(path, "each row needs one entry per atom");
    };

    for (const auto& [name, tab] : j.value("processes", json::object()).items()) {
        std::string path = "processes." + name;
        check_table(tab, path);
        ScalarProcess w(T + 1, n);
        for (int t = 0; t <= T; ++t)
            for (int a = 0; a < n; ++a)
                w.at(t, a) = ext_from(tab[t][a], path + "[" + std::to_string(t) + "][" +
                                                     std::to_string(a) + "]");
        s.processes.emplace(name, std::move(w));
    }

    for (const auto& [name, arr] : j.value("stopping_times", json::object()).items()) {
        std::string path = "stopping_times." + name;
        if (!arr.is_array() || arr.size() != static_cast<size_t>(n))
            fail(path, "expected one value per atom");
        std::vector<int> v;
        for (const auto& e : arr) {
            if (!e.is_string()) fail(path, "values must be strings (\"0\"..\"T\" or \"inf\")");
            v.push_back(stopping_value_from_text(e.get<std::string>(), T));
        }
        s.stopping_times.emplace(name, StoppingTime(std::move(v)));
    }

    for (const auto& [name, gj] : j.value("grid_integrands", json::object()).items()) {
        std::string path = "grid_integrands." + name;
        if (!gj.is_object() || !gj.contains("grid") || !gj.contains("values"))
            fail(path, "expected {grid, values}");
        GridIntegrand g;
        for (size_t i = 0; i < gj["grid"].size(); ++i)
            g.xgrid.push_back(rat_from(gj["grid"][i], path + ".grid[" + std::to_string(i) + "]"));
        const json& vals = gj["values"];
        if (!vals.is_array() || vals.size() != static_cast<size_t>(T) + 1)
            fail(path + ".values", "expected horizon+1 time slices");
        g.values.resize(T + 1);
        for (int t = 0; t <= T; ++t) {
            if (!vals[t].is_array() || vals[t].size() != static_cast<size_t>(n))
                fail(path + ".values", "each slice needs one row per atom");
            g.values[t].resize(n);
            for (int a = 0; a < n; ++a) {
                const json& row = vals[t][a];
                if (!row.is_array() || row.size() != g.xgrid.size())
                    fail(path + ".values", "rows must match the grid size");
                for (const auto& e : row)
                    g.values[t][a].push_back(ext_from(e, path + ".values"));
            }
        }
        try {
            g.validate(s.space);
        } catch (const std::exception& e) {
            fail(path, e.what());
        }
        s.grid_integrands.emplace(name, std::move(g));
    }

    for (const auto& [name, cj] : j.value("convex_integrands", json::object()).items()) {
        std::string path = "convex_integrands." + name;
        if (!cj.is_object() || !cj.contains("fibers")) fail(path, "expected {fibers}");
        const json& fib = cj["fibers"];
        check_table(fib, path + ".fibers");
        ConvexIntegrand h;
        h.fibers.assign(T + 1, std::vector<PLConvex>(n, PLConvex::empty()));
        for (int t = 0; t <= T; ++t)
            for (int a = 0; a < n; ++a)
                h.fibers[t][a] = plconvex_from(fib[t][a], path + ".fibers[" + std::to_string(t) +
                                                              "][" + std::to_string(a) + "]");
        s.convex_integrands.emplace(name, std::move(h));
    }

    for (const auto& [name, tab] : j.value("interval_processes", json::object()).items()) {
        std::string path = "interval_processes." + name;
        check_table(tab, path);
        IntervalProcess g(T + 1, n);
        for (int t = 0; t <= T; ++t)
            for (int a = 0; a < n; ++a)
                g.at(t, a) = interval_from(tab[t][a], path + "[" + std::to_string(t) + "][" +
                                                          std::to_string(a) + "]");
        s.interval_processes.emplace(name, std::move(g));
    }
    return s;
}

std::string Scenario::serialize() const {
    json j;
    json sp;
    sp["atoms"] = space.atoms();
    json probs = json::array();
    for (int a = 0; a < space.atom_count(); ++a) probs.push_back(space.prob(a).str());
    sp["prob"] = std::move(probs);
    sp["horizon"] = space.horizon();
    json parts = json::array();
    for (int t = 0; t <= space.horizon(); ++t) {
        json cells = json::array();
        for (const auto& cell : space.partition_at(t).cells()) {
            json cj = json::array();
            for (int a : cell) cj.push_back(space.atom_name(a));
            cells.push_back(std::move(cj));
        }
        parts.push_back(std::move(cells));
    }
    sp["partitions"] = std::move(parts);
    j["space"] = std::move(sp);

    if (!processes.empty()) {
        json out = json::object();
        for (const auto& [name, w] : processes) {
            json tab = json::array();
            for (int t = 0; t < w.times(); ++t) {
                json row = json::array();
                for (int a = 0; a < w.atoms(); ++a) row.push_back(w.at(t, a).str());
                tab.push_back(std::move(row));
            }
            out[name] = std::move(tab);
        }
        j["processes"] = std::move(out);
    }
    if (!stopping_times.empty()) {
        json out = json::object();
        for (const auto& [name, tau] : stopping_times) {
            json arr = json::array();
            for (int v : tau.value) arr.push_back(stopping_value_to_text(v));
            out[name] = std::move(arr);
        }
        j["stopping_times"] = std::move(out);
    }
    if (!grid_integrands.empty()) {
        json out = json::object();
        for (const auto& [name, g] : grid_integrands) {
            json gj;
            json grid = json::array();
            for (const auto& x : g.xgrid) grid.push_back(x.str());
            gj["grid"] = std::move(grid);
            json vals = json::array();
            for (int t = 0; t < g.times(); ++t) {
                json slice = json::array();
                for (int a = 0; a < g.atoms(); ++a) {
                    json row = json::array();
                    for (int gi = 0; gi < g.grid_size(); ++gi) row.push_back(g.at(t, a, gi).str());
                    slice.push_back(std::move(row));
                }
                vals.push_back(std::move(slice));
            }
            gj["values"] = std::move(vals);
            out[name] = std::move(gj);
        }
        j["grid_integrands"] = std::move(out);
    }
    if (!convex_integrands.empty()) {
        json out = json::object();
        for (const auto& [name, h] : convex_integrands) {
            json fib = json::array();
            for (int t = 0; t < h.times(); ++t) {
                json row = json::array();
                for (int a = 0; a < h.atoms(); ++a) row.push_back(plconvex_to(h.at(t, a)));
                fib.push_back(std::move(row));
            }
            out[name] = json{{"fibers", std::move(fib)}};
        }
        j["convex_integrands"] = std::move(out);
    }
    if (!interval_processes.empty()) {
        json out = json::object();
        for (const auto& [name, g] : interval_processes) {
            json tab = json::array();
            for (int t = 0; t < g.times(); ++t) {
                json row = json::array();
                for (int a = 0; a < g.atoms(); ++a) row.push_back(interval_to(g.at(t, a)));
                tab.push_back(std::move(row));
            }
            out[name] = std::move(tab);
        }
        j["interval_processes"] = std::move(out);
    }
    return j.dump(2) + "\n";
}

Scenario Scenario::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open scenario file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

void Scenario::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw SchemaError("cannot write scenario file '" + path + "'");
    out << serialize();
}

} // namespace finproj
