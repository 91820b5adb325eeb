#include "knotsurf/report.hpp"

#include <sstream>

#include "json.hpp"

namespace knotsurf {

using nlohmann::json;

namespace {

json rational_json(const Rational& r) {
    if (r.is_integer()) return json(r.num());
    return json(r.str());
}

}  // namespace

std::string records_to_json(const std::vector<VerificationRecord>& records, int n,
                            const Rational& tau_sigma0) {
    json out;
    out["n"] = n;
    out["tau_sigma0"] = rational_json(tau_sigma0);
    out["records"] = json::array();
    for (auto& r : records) {
        json j;
        j["k_vector"] = r.state.sigma;
        j["h"] = r.h;
        j["tau"] = rational_json(r.tau);
        j["slope"] = rational_json(r.slope);
        j["verdict"] = r.verdict;
        j["route"] = r.route == SurfaceRoute::StateSurface ? "state-surface" : "normal";
        j["surface_kinds"] = r.surface_kinds;
        j["normal_ok"] = r.normal_ok;
        if (r.h_path) j["h_path"] = *r.h_path;
        if (!r.quads.empty()) j["quads"] = r.quads;
        out["records"].push_back(std::move(j));
    }
    return out.dump(2);
}

std::string records_to_table(const std::vector<VerificationRecord>& records) {
    std::ostringstream os;
    os << "k-vector            h        tau      slope    verdict  route\n";
    for (auto& r : records) {
        std::string ks = "(";
        for (size_t i = 0; i < r.state.sigma.size(); ++i) {
            if (i) ks += ",";
            ks += std::to_string(r.state.sigma[i]);
        }
        ks += ")";
        os << ks;
        for (size_t i = ks.size(); i < 20; ++i) os << ' ';
        std::string h = std::to_string(r.h);
        os << h;
        for (size_t i = h.size(); i < 9; ++i) os << ' ';
        std::string tau = r.tau.str();
        os << tau;
        for (size_t i = tau.size(); i < 9; ++i) os << ' ';
        std::string sl = r.slope.str();
        os << sl;
        for (size_t i = sl.size(); i < 9; ++i) os << ' ';
        os << (r.verdict ? "ok     " : "FAIL   ") << "  "
           << (r.route == SurfaceRoute::StateSurface ? "state-surface" : "normal") << "\n";
    }
    return os.str();
}

std::string khovanov_to_json(const KhovanovResult& kh) {
    json out;
    out["ranks"] = json::array();
    for (auto& [ij, rk] : kh.ranks)
        out["ranks"].push_back({{"i", ij.first}, {"j", ij.second}, {"rank", rk}});
    out["torsion"] = json::array();
    for (auto& [ij, tc] : kh.torsion)
        out["torsion"].push_back({{"i", ij.first}, {"j", ij.second}, {"count", tc}});
    out["euler"] = kh.euler.str();
    return out.dump(2);
}

std::string qvector_to_json(const QVector& v) {
    return json(v).dump();
}

}  // namespace knotsurf
