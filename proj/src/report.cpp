#include "exst/report.hpp"

#include <sstream>

namespace exst {

std::string factors_text(const std::vector<BigInt>& factors) {
    if (factors.empty()) return "0";
    std::string out;
    for (const BigInt& f : factors) {
        if (!out.empty()) out += 'x';
        out += 'Z' + f.get_str();
    }
    return out;
}

std::string statistics_report(const std::string& model_description,
                              const StatisticsResult& r) {
    std::ostringstream out;
    out << "exstat-report v1\n";
    out << "model: " << model_description << '\n';
    out << "dim_E: " << r.dim_e << '\n';
    out << "identity_generators: " << r.identity_generator_count << '\n';
    out << "dim_Einv: " << r.dim_einv << '\n';
    out << "free_factors: " << r.free_factor_count << '\n';
    out << "T_f: " << factors_text(r.t_f_factors) << '\n';
    out << "T: " << factors_text(r.invariant_factors) << '\n';
    out << "T = " << factors_text(r.invariant_factors) << '\n';
    return out.str();
}

}  // namespace exst
