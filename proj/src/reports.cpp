#include "sparselab/reports.hpp"

#include <stdexcept>

namespace sparselab::report {

json to_json(const DyadicCube& q) {
    return {{"shift", q.shift}, {"level", q.level}, {"index", q.index}};
}

json to_json(const CharacteristicReport& c) {
    return {{"characteristic", c.characteristic}, {"p", c.p}, {"r", c.r},
            {"argmax_cube", to_json(c.argmax)}, {"value", c.value}};
}

json to_json(const SparseCollection& s) {
    json arr = json::array();
    for (const auto& e : s.entries) {
        json ranges = json::array();
        for (const auto& part : e.major_set) ranges.push_back({part.lo, part.hi});
        arr.push_back({{"shift", e.cube.shift}, {"level", e.cube.level}, {"index", e.cube.index},
                       {"major_set", ranges}});
    }
    return arr;
}

SparseCollection collection_from_json(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("sparse collection: expected a JSON array");
    SparseCollection s;
    for (const auto& item : j) {
        SparseEntry e{DyadicCube(item.at("shift").get<int>(), item.at("level").get<int>(),
                                 item.at("index").get<std::int64_t>()),
                      {}};
        for (const auto& r : item.at("major_set")) {
            e.major_set.push_back({r.at(0).get<std::int64_t>(), r.at(1).get<std::int64_t>()});
        }
        s.entries.push_back(std::move(e));
    }
    return s;
}

json to_json(const SparsityReport& s) { return {{"ok", s.ok}, {"violations", s.violations}}; }

json to_json(const DominationResult& d) {
    return {{"pairing", d.pairing}, {"form", d.form}, {"ratio", d.ratio}, {"c0", d.c0}, {"cubes", d.cubes}};
}

json to_json(const WWReport& w) {
    return {{"alpha", w.alpha},
            {"p", w.p},
            {"r", w.r},
            {"threshold", w.threshold},
            {"lifted_ap", to_json(w.lifted_ap)},
            {"low_ap", to_json(w.low_ap)},
            {"ap", to_json(w.ap)},
            {"rh_w", to_json(w.rh_w)},
            {"rh_sigma", to_json(w.rh_sigma)},
            {"hypotheses_hold", w.hypotheses_hold},
            {"consequences_hold", w.consequences_hold}};
}

json to_json(const ScaleBoundReport& s) {
    return {{"k", s.k},           {"p", s.p},
            {"r", s.r},           {"lhs", s.lhs},
            {"rhs", s.rhs},       {"ratio", s.ratio},
            {"lhs_cube", s.lhs_cube}, {"ratio_cube", s.ratio_cube},
            {"rhs_literal", s.rhs_literal}, {"ratio_literal", s.ratio_literal}};
}

json to_json(const ScaleBilinearReport& s) {
    return {{"k", s.k},
            {"alpha", s.alpha},
            {"eps", s.eps},
            {"lhs", s.lhs},
            {"opnorm", s.opnorm},
            {"first_bound", s.first_bound},
            {"scaled_bound", s.scaled_bound},
            {"second_bound", s.second_bound},
            {"first_constant", s.first_constant},
            {"scaled_constant", s.scaled_constant},
            {"second_constant", s.second_constant}};
}

json to_json(const BadSetReport& b) {
    return {{"eps", b.eps}, {"threshold", b.threshold}, {"measure", b.measure},
            {"allowance", b.allowance}, {"ratio", b.ratio}};
}

json to_json(const NormReport& n) {
    return {{"norm", n.norm}, {"iterations", n.iterations}, {"converged", n.converged}};
}

json to_json(const RieszThorinReport& r) {
    return {{"r", r.r},         {"theta", r.theta}, {"c_one", r.c_one},      {"c_two", r.c_two},
            {"bound", r.bound}, {"measured", r.measured}, {"trials", r.trials}};
}

json to_json(const SplitReport& s) {
    return {{"numerical_sup", s.numerical_sup},
            {"analytic_sup", s.analytic_sup},
            {"coefficient_bound", s.coefficient_bound},
            {"pointwise_ratio", s.pointwise_ratio},
            {"lattice_sup", s.lattice_sup}};
}

json to_json(const CriticalIndex& c) { return {{"theta0", c.theta0}, {"r0", c.r0}}; }

json to_json(const WeightedExponents& w) {
    json j = {{"p", w.p}, {"sparse", w.sparse}, {"sparse_bound", w.sparse_bound}};
    if (w.has_composite) {
        j["composite"] = w.composite;
        j["composite_bound"] = w.composite_bound;
    }
    return j;
}

json to_json(const FittedGain& g) {
    json rows = json::array();
    for (const auto& r : g.rows) {
        rows.push_back({{"k", r.k}, {"c1", r.c1}, {"c2", r.c2}, {"log_constant", r.log_constant}});
    }
    return {{"alpha", g.alpha}, {"r", g.r}, {"theta", g.theta}, {"eta", g.eta},
            {"fitted", g.fitted}, {"relative_error", g.relative_error}, {"rows", rows}};
}

}  // namespace sparselab::report
