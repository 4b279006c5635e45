#include "dacs/regressor.hpp"

#include "dacs/errors.hpp"

#include <string>

namespace dacs {

double ipow(double v, int k) {
    double out = 1.0;
    for (int i = 0; i < k; ++i) out *= v;
    return out;
}

Eigen::RowVectorXd eval_zeta(const RegressorSpec& reg, double v) {
    Eigen::RowVectorXd z(reg.m());
    for (int j = 0; j < reg.m(); ++j) z(j) = ipow(v, reg.exponents[j]);
    return z;
}

Eigen::VectorXd eval_rho(const RegressorSpec& reg, double v) {
    Eigen::VectorXd rho(reg.m());
    for (int j = 0; j < reg.m(); ++j) {
        const int k = reg.exponents[j];
        rho(j) = -reg.lambda * ipow(v, k + 1) / static_cast<double>(k + 1);
    }
    return rho;
}

void validate_regressor(const RegressorSpec& reg) {
    if (!(reg.lambda > 0.0))
        throw SchemaError("regressor lambda must be positive, got " + std::to_string(reg.lambda));
    for (int k : reg.exponents)
        if (k < 0 || k > 12)
            throw SchemaError("regressor exponent " + std::to_string(k) + " outside 0..12");
}

} // namespace dacs
