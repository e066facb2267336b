#include "hyperq/report.hpp"

#include <iomanip>
#include <limits>
#include <sstream>

namespace hyperq {

Json to_json(const SpinState& x) { return Json(x.to_vector()); }

Json to_json(const RunReport& r) {
    Json energies = Json::array();
    for (const auto& p : r.trajectory) energies.push_back(p.energy);
    return Json{{"mode", to_string(r.mode)},
                {"termination", to_string(r.termination)},
                {"sweeps_used", r.sweeps_used},
                {"flips", r.flips},
                {"initial_state", to_json(r.initial_state())},
                {"final_state", to_json(r.final_state())},
                {"energy_trace", std::move(energies)}};
}

Json to_json(const EigenPair<double>& e) {
    Json j{{"value", e.value},
           {"vector", std::vector<double>(e.vector.data(), e.vector.data() + e.vector.size())},
           {"residual", e.residual},
           {"iterations", e.iterations}};
    j["gap_to_next"] = e.gap_to_next ? Json(*e.gap_to_next) : Json(nullptr);
    return j;
}

Json to_json(const SpectralSolveReport<double>& r) {
    return Json{{"eigenpair", to_json(r.eigenpair)},
                {"init_corner", to_json(r.init_corner)},
                {"shortcut_used", to_string(r.shortcut_used)},
                {"degenerate_top", r.degenerate_top},
                {"run", to_json(r.run)},
                {"final_state", to_json(r.final_state)},
                {"final_energy", r.final_energy}};
}

namespace {

Json state_list(const CornerCensus& c, const std::vector<std::uint64_t>& masks) {
    Json arr = Json::array();
    for (auto m : masks) arr.push_back(to_json(c.state(m)));
    return arr;
}

}  // namespace

Json to_json(const CornerCensus& c) {
    return Json{{"n", c.n},
                {"corners_evaluated", c.corners_evaluated},
                {"global_max", {{"energy", c.global_max}, {"states", state_list(c, c.argmax)}}},
                {"global_min", {{"energy", c.global_min}, {"states", state_list(c, c.argmin)}}},
                {"stable_count", c.stable.size()},
                {"antistable_count", c.antistable.size()},
                {"stable", state_list(c, c.stable)},
                {"antistable", state_list(c, c.antistable)}};
}

Json to_json(const CutResult& c) {
    return Json{{"side", to_json(c.side)}, {"cut_weight", c.cut_weight}, {"energy", c.energy}};
}

Json to_json(const AuditReport& a) {
    return Json{{"class_label", a.class_label},
                {"n", a.n},
                {"seed", a.seed},
                {"instances", a.instances},
                {"successes", a.successes},
                {"success_rate", a.success_rate},
                {"gap_mean", a.gap_mean},
                {"gap_max", a.gap_max},
                {"perron_shortcuts", a.perron_shortcuts},
                {"eigencorner_shortcuts", a.eigencorner_shortcuts},
                {"degenerate_top", a.degenerate_top},
                {"budget_exhausted", a.budget_exhausted}};
}

std::string audit_csv_header() {
    return "class_label,n,seed,instances,successes,success_rate,gap_mean,gap_max,"
           "perron_shortcuts,eigencorner_shortcuts,degenerate_top,budget_exhausted";
}

std::string audit_csv_row(const AuditReport& a) {
    std::ostringstream s;
    s << std::setprecision(std::numeric_limits<double>::max_digits10);
    s << a.class_label << ',' << a.n << ',' << a.seed << ',' << a.instances << ',' << a.successes << ','
      << a.success_rate << ',' << a.gap_mean << ',' << a.gap_max << ',' << a.perron_shortcuts << ','
      << a.eigencorner_shortcuts << ',' << a.degenerate_top << ',' << a.budget_exhausted;
    return s.str();
}

}  // namespace hyperq
