#include "doctest.h"
#include "miop/ka.hpp"
#include "miop/state_adding.hpp"
#include "miop/structural.hpp"

using namespace miop;

namespace {

bool eigen_ok(const QSystem& s, long n) {
    auto H = s.matrix();
    auto v = s.q_vector(n);
    auto hv = H.apply(v);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (hv[i] != energy(s.params(), n) * v[i]) return false;
    return true;
}

bool orthonormal(const QSystem& s) {
    for (long n : s.levels())
        for (long m : s.levels()) {
            Scalar o = s.orthogonality_sum(n, m);
            if (m == n ? o * s.norm_sq(n) != 1 : !o.is_zero()) return false;
        }
    return true;
}

}  // namespace

TEST_CASE("added-state system on a sweep") {
    for (auto f : all_families())
        for (long N = 3; N <= 4; ++N)
            for (auto m : {std::vector<long>{0}, {1}, {2}, {0, 1}, {0, 3}, {1, 2}}) {
                std::vector<long> labels;
                for (long x : m) labels.push_back(N + 1 + x);
                auto ps = default_parameters(f, N);
                QSystem s(ps, IndexSet(labels));
                CAPTURE(ps.describe());
                CAPTURE(s.D().str());
                if (ps.info().positivity_class == 'a' && parity_condition(s.D(), N) && in_range_M(ps, s.M()))
                    CHECK(s.regular());
                if (!s.regular()) continue;
                CHECK(s.xi(s.lo()) == 1);
                auto H = s.matrix();
                CHECK(H.size() == static_cast<std::size_t>(N + s.M() + 1));
                CHECK(s.potential_B(N) == 0);
                CHECK(s.potential_D(-s.M()) == 0);
                CHECK(H.outer_lower() == 0);
                CHECK(H.outer_upper() == 0);
                Matrix basis;
                for (long n : s.levels()) {
                    CAPTURE(n);
                    const auto& fit = s.q_fit(n);
                    CHECK(fit.consistent);
                    CHECK(fit.poly.degree() == s.Dprime().ell() + n);
                    CHECK(fit.poly.leading() == 1);
                    CHECK(s.q(n, s.lo()) == 1);
                    CHECK(eigen_ok(s, n));
                    basis.push_back(s.q_vector(n));
                }
                CHECK(rank(basis) == basis.size());
                CHECK(orthonormal(s));
                // vanishing beyond the spectrum
                for (long n = N + 1; n <= N + 4; ++n) {
                    if (s.D().contains(n)) continue;
                    for (long x = s.lo(); x <= s.hi(); ++x) CHECK(s.q_monic(n, x) == 0);
                }
            }
}

TEST_CASE("consecutive labels reduce to the shifted original polynomials") {
    for (auto f : all_families())
        for (int M = 1; M <= 2; ++M) {
            const long N = 3;
            auto ps = default_parameters(f, N);
            std::vector<long> labels;
            for (int j = 1; j <= M; ++j) labels.push_back(N + j);
            QSystem s(ps, IndexSet(labels));
            CAPTURE(ps.describe());
            for (long x = s.lo() - 1; x <= s.hi() + 1; ++x) {
                CHECK(s.xi_monic(x) == 1);
                CHECK(s.xi_shift_monic(x) == 1);
            }
            auto low = ps.shifted(0, -M);
            for (long x = s.lo(); x <= s.hi(); ++x) {
                CHECK(s.potential_B(x) == potential_B(low, x + M));
                CHECK(s.potential_D(x) == potential_D(low, x + M));
            }
            for (long n = 0; n <= N + M; ++n)
                for (long x = s.lo(); x <= s.hi(); ++x)
                    CHECK(s.q_monic(n, x) ==
                          ps.rho().pow(-n * M) * poly_monic(low, static_cast<int>(n), x + M));
        }
}

TEST_CASE("third term of the limit column is invisible on the grid") {
    for (auto f : all_families()) {
        const long N = 3;
        auto ps = default_parameters(f, N);
        IndexSet D({N + 2, N + 3});
        CAPTURE(ps.describe());
        bool differs = false;
        for (std::size_t i = 0; i < 2; ++i) {
            long n = D[i];
            auto coord = ps.shifted(2, 0);
            int deg = static_cast<int>(D.primed(N).ell() + n + N + 3);
            auto with = fit_in_eta(coord, [&](long x) { return q_monic_raw(ps, D, n, x); }, deg,
                                   outward_candidates(-2, N, 3 * deg + 16));
            auto without = fit_in_eta(
                coord, [&](long x) { return q_monic_raw(ps, D, n, x, Fault::none, nullptr, false); }, deg,
                outward_candidates(-2, N, 3 * deg + 16));
            CHECK(with.consistent);
            CHECK(without.consistent);
            for (long x = -2; x <= N; ++x) CHECK(with.poly(eta(coord, x)) == without.poly(eta(coord, x)));
            for (long x = N + 5; x <= N + 7; ++x)
                differs = differs || with.poly(eta(coord, x)) != without.poly(eta(coord, x));
        }
        CHECK(differs);
    }
}

TEST_CASE("divisibility and factorization of deleted-state objects with large labels") {
    for (auto f : all_families()) {
        const long N = 3;
        auto ps = default_parameters(f, N);
        CAPTURE(ps.describe());
        for (auto labels : {std::vector<long>{5}, {4, 6}}) {
            IndexSet D(labels);
            auto dx = ka_xi_division(ps, D);
            CHECK(dx.consistent);
            CHECK(dx.divisible);
            for (long n : {0L, 2L}) {
                auto dp = ka_p_division(ps, D, n);
                CHECK(dp.consistent);
                CHECK(dp.divisible);
            }
            Scalar k = ka_xi_factor_constant(ps, D);
            auto Dp = D.primed(N);
            for (long x = -3; x <= N + 3; ++x) {
                Scalar rhs;
                try {
                    rhs = k * lambda_product(ps, D.M(), x) * ka_xi_monic(ps.reflected(), Dp, x - N - 1);
                } catch (const std::domain_error&) {
                    continue;
                }
                CHECK(ka_xi_monic(ps, D, x) == rhs);
            }
        }
        for (int m = 0; m <= 3; ++m)
            for (long x = -3; x <= N + 3; ++x)
                CHECK(poly_monic(ps, static_cast<int>(N + 1 + m), x) ==
                      lambda_fn(ps, x) * ps.rho().pow((N + 1) * m) * poly_monic(ps.reflected(), m, x - N - 1));
    }
}

TEST_CASE("added-state examples") {
    // M = 1, D' = {1}: degree one, monic in eta(x; lambda)
    auto ps = default_parameters(FamilyId::H, 3);
    QSystem s(ps, IndexSet({5}));
    CHECK(s.Dprime() == IndexSet({1}));
    auto fit = fit_in_eta(ps, [&](long x) { return s.xi_monic(x); }, 1, outward_candidates(-1, 3, 10));
    CHECK(fit.consistent);
    CHECK(fit.poly.degree() == 1);
    CHECK(fit.poly.leading() == 1);
    CHECK_THROWS_AS(QSystem(ps, IndexSet({3})), std::invalid_argument);
    CHECK_THROWS_AS(QSystem(ps, IndexSet({4, 5, 6, 7})), std::invalid_argument);
    auto e = limit_expansion(ps, IndexSet({5}), 0, 0);
    CHECK(e.X.size() == 2);
    CHECK(e.X[1] == 0);
    CHECK(e.B_const == 0);
    for (std::size_t j = 0; j < 2; ++j) {
        Scalar lam = lambda_fn(ps, static_cast<long>(j) + 7);
        CHECK(x_coeff(ps, 1, static_cast<int>(j) + 1, 7) * lam == y_coeff(ps, 1, static_cast<int>(j) + 1, 7));
    }
    CHECK(ptilde2_shift_const(FamilyId::dqK, 2) == -2);
    CHECK(ptilde2_shift_const(FamilyId::qR, 2) == -4);
}

TEST_CASE("added-state faults are detected") {
    auto ps = default_parameters(FamilyId::qH, 3);
    IndexSet D({4, 6});
    for (Fault fault : {Fault::drop_rho_binom, Fault::drop_rho_minus_n, Fault::perturb_norm, Fault::drop_ptilde1,
                        Fault::drop_y_term}) {
        CAPTURE(fault_name(fault));
        QSystem s(ps, D, fault);
        bool ok = orthonormal(s);
        for (long n : s.levels()) {
            const auto& fit = s.q_fit(n);
            ok = ok && fit.consistent && fit.poly.leading() == 1 && eigen_ok(s, n);
        }
        CHECK_FALSE(ok);
    }
}
