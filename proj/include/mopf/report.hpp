#pragma once

// Machine-readable run reports for the CLI. Voltages are reported in per
// unit with angles in degrees (reference angle exactly zero); injections in
// MW / MVAr; costs in $/hr.

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "mopf/moment.hpp"

namespace mopf::report {

/// FNV-1a 64-bit digest of a file's bytes, hex-encoded.
inline std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    uint64_t h = 1469598103934665603ull;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << "fnv1a64:" << std::hex << h;
    return os.str();
}

inline nlohmann::json result_to_json(const moment::MomentProblem& mp,
                                     const moment::RelaxationResult& r, double elapsed_s) {
    nlohmann::json j;
    j["order"] = mp.order;
    j["status"] = conic::to_string(r.status);
    j["penalized"] = r.penalized;
    if (r.status == conic::SolveStatus::optimal) {
        j[r.penalized ? "objective_usd_per_hr" : "lower_bound_usd_per_hr"] = r.objective;
        j["rank_ratio"] = r.rank_ratio;
        j["rank_condition"] = r.rank1;
        nlohmann::json gens = nlohmann::json::array();
        for (size_t g = 0; g < mp.gen_bus_ids.size(); ++g)
            gens.push_back({{"bus", mp.gen_bus_ids[g]},
                            {"p_mw", r.gen_p_mw[g]},
                            {"q_mvar", r.gen_q_mvar[g]}});
        j["generators"] = gens;
        if (r.extracted) {
            nlohmann::json volts = nlohmann::json::array();
            for (size_t b = 0; b < r.extracted->v.size(); ++b) {
                const auto& v = r.extracted->v[b];
                double ang = std::arg(v) * 180.0 / std::numbers::pi;
                if (static_cast<int>(b) == mp.layout.ref_index) ang = 0.0;
                volts.push_back({{"bus", mp.net_pu.buses[b].id},
                                 {"vm_pu", std::abs(v)},
                                 {"va_deg", ang}});
            }
            j["voltages"] = volts;
        }
    }
    j["solver"] = {{"iterations", r.conic.iterations},
                   {"duality_gap", r.conic.duality_gap},
                   {"equality_residual", r.conic.equality_residual},
                   {"message", r.conic.message}};
    j["time_s"] = elapsed_s;
    return j;
}

inline void print_result_text(std::ostream& os, const moment::MomentProblem& mp,
                              const moment::RelaxationResult& r, double elapsed_s) {
    os << "order " << mp.order << " relaxation: " << conic::to_string(r.status) << "\n";
    if (r.status != conic::SolveStatus::optimal) return;
    os << (r.penalized ? "  objective (penalized, not a bound): "
                       : "  lower bound: ")
       << r.objective << " $/hr\n";
    os << "  rank condition: " << (r.rank1 ? "satisfied" : "not satisfied")
       << "  (lambda2/lambda1 = " << r.rank_ratio << ")\n";
    for (size_t g = 0; g < mp.gen_bus_ids.size(); ++g)
        os << "  gen @ bus " << mp.gen_bus_ids[g] << ": P = " << r.gen_p_mw[g]
           << " MW, Q = " << r.gen_q_mvar[g] << " MVAr\n";
    if (r.extracted) {
        for (size_t b = 0; b < r.extracted->v.size(); ++b) {
            const auto& v = r.extracted->v[b];
            double ang = std::arg(v) * 180.0 / std::numbers::pi;
            if (static_cast<int>(b) == mp.layout.ref_index) ang = 0.0;
            os << "  bus " << mp.net_pu.buses[b].id << ": |V| = " << std::abs(v)
               << " pu, angle = " << ang << " deg\n";
        }
    }
    os << "  solver: " << r.conic.iterations << " iterations, gap "
       << r.conic.duality_gap << ", " << elapsed_s << " s\n";
}

}  // namespace mopf::report
