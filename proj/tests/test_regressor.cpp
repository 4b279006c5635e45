#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "common.hpp"

using namespace dacs;

TEST_CASE("eval_zeta: monomials in declared order") {
    RegressorSpec cubic{{3}, 5.0};
    Eigen::RowVectorXd z = eval_zeta(cubic, 2.0);
    REQUIRE(z.size() == 1);
    CHECK(z(0) == 8.0);

    RegressorSpec constant{{0}, 1.0};
    CHECK(eval_zeta(constant, -7.5)(0) == 1.0);
    CHECK(eval_zeta(constant, 0.0)(0) == 1.0);

    RegressorSpec mixed{{3, 0, 1}, 5.0};
    Eigen::RowVectorXd z0 = eval_zeta(mixed, 0.0);
    REQUIRE(z0.size() == 3);
    CHECK(z0(0) == 0.0);
    CHECK(z0(1) == 1.0);
    CHECK(z0(2) == 0.0);

    Eigen::RowVectorXd z2 = eval_zeta(mixed, -2.0);
    CHECK(z2(0) == -8.0);
    CHECK(z2(1) == 1.0);
    CHECK(z2(2) == -2.0);

    RegressorSpec empty{{}, 2.0};
    CHECK(eval_zeta(empty, 3.0).size() == 0);
}

TEST_CASE("eval_rho: termwise antiderivative of -lambda zeta^T") {
    RegressorSpec cubic{{3}, 5.0};
    CHECK(eval_rho(cubic, 1.0)(0) == doctest::Approx(-1.25).epsilon(1e-15));

    RegressorSpec constant{{0}, 5.0};
    CHECK(eval_rho(constant, 2.0)(0) == doctest::Approx(-10.0).epsilon(1e-15));

    RegressorSpec mixed{{3, 0, 1}, 5.0};
    Eigen::VectorXd r = eval_rho(mixed, 1.0);
    REQUIRE(r.size() == 3);
    CHECK(r(0) == doctest::Approx(-1.25).epsilon(1e-15));
    CHECK(r(1) == doctest::Approx(-5.0).epsilon(1e-15));
    CHECK(r(2) == doctest::Approx(-2.5).epsilon(1e-15));
}

TEST_CASE("eval_rho vanishes at the origin for random regressors") {
    SeededRng rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        RegressorSpec reg = tt::random_regressor(rng);
        Eigen::VectorXd r = eval_rho(reg, 0.0);
        REQUIRE(r.size() == reg.m());
        CHECK(r.cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("finite-difference check: d rho / dv == -lambda zeta^T") {
    SeededRng rng(29);
    const double h = 1e-5;
    int checked = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        RegressorSpec reg = tt::random_regressor(rng);
        const double v = rng.uniform(-2.0, 2.0);
        const Eigen::VectorXd num =
            (eval_rho(reg, v + h) - eval_rho(reg, v - h)) / (2.0 * h);
        const Eigen::VectorXd ana = -reg.lambda * eval_zeta(reg, v).transpose();
        const double tol = 1e-6 * (1.0 + ana.norm());
        CHECK((num - ana).cwiseAbs().maxCoeff() <= tol);
        ++checked;
    }
    CHECK(checked == 1000);
}

TEST_CASE("validate_regressor rejects bad lambda and exponents") {
    RegressorSpec ok{{0, 3, 12}, 1.0};
    CHECK_NOTHROW(validate_regressor(ok));

    RegressorSpec zero_lambda{{0}, 0.0};
    CHECK_THROWS_AS(validate_regressor(zero_lambda), SchemaError);
    RegressorSpec neg_lambda{{0}, -2.0};
    CHECK_THROWS_AS(validate_regressor(neg_lambda), SchemaError);

    RegressorSpec neg_exp{{-1}, 1.0};
    CHECK_THROWS_AS(validate_regressor(neg_exp), SchemaError);
    RegressorSpec big_exp{{13}, 1.0};
    CHECK_THROWS_AS(validate_regressor(big_exp), SchemaError);
}

TEST_CASE("ipow matches repeated multiplication") {
    CHECK(ipow(2.0, 10) == 1024.0);
    CHECK(ipow(-3.0, 3) == -27.0);
    CHECK(ipow(0.0, 0) == 1.0);
    CHECK(ipow(1.7, 0) == 1.0);
    CHECK(ipow(-2.0, 4) == 16.0);
    SeededRng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const double v = rng.uniform(-3.0, 3.0);
        const int k = static_cast<int>(rng.integer(0, 12));
        double want = 1.0;
        for (int j = 0; j < k; ++j) want *= v;
        CHECK(ipow(v, k) == want);
    }
}
