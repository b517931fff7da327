#include "qdrive/cost.hpp"

#include <algorithm>
#include <cmath>

namespace qdrive {

double fidelity(const QubitState& a, const QubitState& b) {
    return std::norm(overlap(a, b));
}

double bures_angle(const QubitState& a, const QubitState& b) {
    const double ov = std::clamp(std::abs(overlap(a, b)), 0.0, 1.0);
    return std::acos(ov);
}

double fidelity_susceptibility_cap(double delta_f) {
    return 2.0 * std::log(1e16) / delta_f;
}

double fidelity_susceptibility(double f, double delta_f) {
    if (delta_f <= 0.0) {
        throw Error("fidelity_susceptibility: delta_f must be positive");
    }
    if (f < 0.0 || f > 1.0 + 1e-12) {
        throw Error("fidelity_susceptibility: fidelity outside [0, 1]");
    }
    if (f < 1e-16) {
        return fidelity_susceptibility_cap(delta_f);
    }
    return -2.0 * std::log(std::min(f, 1.0)) / delta_f;
}

double classical_fidelity(const CountsHistogram& counts,
                          const std::vector<double>& target_probs) {
    double total = 0.0;
    for (double q : target_probs) {
        total += q;
    }
    if (std::abs(total - 1.0) > 1e-8) {
        throw Error("classical_fidelity: target probabilities must sum to 1");
    }
    const double shots = static_cast<double>(counts.shots);
    double bc = 0.0;
    for (const auto& [index, count] : counts.counts) {
        if (index >= target_probs.size()) {
            throw DimensionMismatchError("classical_fidelity: outcome outside target support");
        }
        const double p_hat = static_cast<double>(count) / shots;
        bc += std::sqrt(p_hat * target_probs[index]);
    }
    return bc * bc;
}

double CostKind::value(double f) const {
    switch (tag) {
        case Tag::Infidelity:
            return 1.0 - f;
        case Tag::BuresAngle:
            return std::acos(std::clamp(std::sqrt(std::max(f, 0.0)), 0.0, 1.0));
        case Tag::FidelitySusceptibility:
            return qdrive::fidelity_susceptibility(std::clamp(f, 0.0, 1.0), delta_f);
    }
    return 0.0;
}

double CostKind::dvalue_df(double f) const {
    switch (tag) {
        case Tag::Infidelity:
            return -1.0;
        case Tag::BuresAngle: {
            const double fc = std::clamp(f, 1e-12, 1.0 - 1e-12);
            return -0.5 / std::sqrt(fc * (1.0 - fc));
        }
        case Tag::FidelitySusceptibility: {
            const double fc = std::max(f, 1e-16);
            return -2.0 / (fc * delta_f);
        }
    }
    return 0.0;
}

std::string CostKind::label() const {
    switch (tag) {
        case Tag::Infidelity:
            return "IF";
        case Tag::BuresAngle:
            return "BA";
        case Tag::FidelitySusceptibility:
            return "FS";
    }
    return "?";
}

}  // namespace qdrive
