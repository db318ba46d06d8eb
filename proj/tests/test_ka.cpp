#include "doctest.h"
#include "miop/eta_poly.hpp"
#include "miop/ka.hpp"
#include "miop/structural.hpp"

using namespace miop;

namespace {

ParameterSet H11(long N) { return ParameterSet(FamilyId::H, N, {{"a", Scalar(1)}, {"b", Scalar(1)}}); }

void check_system(const KASystem& sys) {
    const auto& ps = sys.params();
    CAPTURE(ps.describe());
    CAPTURE(sys.D().str());
    CHECK(sys.xi(0) == 1);
    auto H = sys.matrix();
    CHECK(H.size() == static_cast<std::size_t>(ps.N() - sys.M() + 1));
    CHECK(H.outer_lower() == 0);
    CHECK(H.outer_upper() == 0);
    CHECK(sys.potential_B(sys.hi()) == 0);
    CHECK(sys.potential_D(0) == 0);
    for (long n : sys.levels()) {
        CAPTURE(n);
        CHECK(sys.p(n, 0) == 1);
        auto v = sys.p_vector(n);
        auto hv = H.apply(v);
        for (std::size_t i = 0; i < v.size(); ++i) CHECK(hv[i] == energy(ps, n) * v[i]);
        for (long m : sys.levels()) {
            Scalar s = sys.orthogonality_sum(n, m);
            if (m == n)
                CHECK(s * sys.norm_sq(n) == 1);
            else
                CHECK(s == 0);
        }
    }
}

}  // namespace

TEST_CASE("deleted-state constants") {
    auto H = H11(3);
    CHECK(ka_C(H, IndexSet()) == 1);
    CHECK(ka_C(H, IndexSet({2})) == 1);
    // direct product for D = {1,2}: (-1) (E_2 - E_1) / B(0)
    Scalar direct = -(energy(H, 2) - energy(H, 1)) / potential_B(H, 0);
    CHECK(ka_C(H, IndexSet({1, 2})) == direct);
    CHECK(ka_C_n(H, IndexSet({1}), 3) == ka_C(H, IndexSet({1, 3})));
    CHECK(ka_C_n(H, IndexSet({1, 2}), 0) == ka_C(H, IndexSet({1, 2, 0})));
}

TEST_CASE("deleted-state examples") {
    KASystem s(H11(3), IndexSet({3}));
    check_system(s);
    for (long x = 0; x <= 2; ++x) CHECK(s.p(3, x) == 0);
    KASystem ident(H11(4), IndexSet({0, 1}));
    for (long x = -1; x <= 4; ++x) CHECK(ident.xi(x) == 1);
    check_system(ident);
    CHECK(IndexSet({0, 1}).mu() == 2);
    KASystem none(H11(3), IndexSet());
    auto H = none.matrix();
    for (long x = 0; x <= 3; ++x) {
        CHECK(H.diag[x] == potential_B(H11(3), x) + potential_D(H11(3), x));
        CHECK(none.potential_B(x) == potential_B(H11(3), x));
    }
    CHECK_THROWS_AS(KASystem(H11(3), IndexSet({4})), std::invalid_argument);
}

TEST_CASE("orthogonality holds for a non-admissible set") {
    KASystem s(H11(4), IndexSet({0, 3}));
    CHECK_FALSE(s.admissible());
    REQUIRE(s.regular());
    check_system(s);
    KASystem z(H11(4), IndexSet({1, 3}));
    CHECK_FALSE(z.regular());
}

TEST_CASE("forward shift") {
    auto ps = ParameterSet(FamilyId::H, 4, {{"a", Scalar(1)}, {"b", Scalar(2)}});
    IndexSet D({2, 3});
    for (long x = 0; x <= 2; ++x)
        CHECK(ka_p(ps, D, 0, x) == ka_xi(ps.shifted(1, 0), D.shifted(-1), x));
    for (auto f : all_families()) {
        auto q = default_parameters(f, 4);
        for (int n = 1; n <= 4; ++n)
            for (long x = 0; x <= 3; ++x)
                CHECK(potential_B(q, 0) / varphi(q, x) * (poly(q, n, x) - poly(q, n, x + 1)) ==
                      energy(q, n) * poly(q.shifted(1, 0), n - 1, x));
    }
}

TEST_CASE("deleted-state sweep") {
    for (auto f : all_families())
        for (long N = 3; N <= 5; ++N)
            for (auto labels : {std::vector<long>{0}, {1}, {N}, {0, 1}, {1, 2}, {N - 1, N}, {0, 3}}) {
                auto ps = default_parameters(f, N);
                IndexSet D(labels);
                KASystem sys(ps, D);
                if (sys.admissible()) CHECK(sys.regular());
                if (sys.regular()) check_system(sys);
                if (D.M() == 0) continue;
                // degrees
                auto cands = outward_candidates(0, -1, 60);
                auto fx = fit_in_eta(ps.shifted(D.M() - 1, 0),
                                     [&](long x) { return ka_xi(ps, D, x); }, static_cast<int>(D.ell()), cands);
                CHECK(fx.consistent);
                CHECK(fx.poly.degree() == D.ell());
                long n = sys.levels().front();
                auto fp = fit_in_eta(ps.shifted(D.M(), 0), [&](long x) { return ka_p(ps, D, n, x); },
                                     static_cast<int>(D.ell_ka() + n), cands);
                CHECK(fp.consistent);
                CHECK(fp.poly.degree() == D.ell_ka() + n);
                // monic bridge
                Scalar cd(1);
                for (long d : labels) cd *= leading_coeff(ps, static_cast<int>(d));
                for (long x = 0; x <= N - D.M(); ++x) {
                    CHECK(c_eta(ps, labels) * ka_xi_monic(ps, D, x) == sys.C() * sys.xi(x) / cd);
                    CHECK(c_eta_n(ps, labels, n) * ka_p_monic(ps, D, n, x) ==
                          sys.C_n(n) * sys.p(n, x) / (cd * leading_coeff(ps, static_cast<int>(n))));
                }
                bool shiftable = true;
                for (long d : labels) shiftable = shiftable && d >= 1;
                if (shiftable)
                    for (long x = 0; x <= N - D.M(); ++x)
                        CHECK(sys.p(0, x) == ka_xi(ps.shifted(1, 0), D.shifted(-1), x));
                if (sys.admissible() && in_range(ps))
                    for (long x = 0; x <= N - D.M(); ++x) CHECK((sys.xi(x) * sys.xi(x + 1)).sign() > 0);
            }
}

TEST_CASE("dropping kappa^M is detected") {
    auto ps = default_parameters(FamilyId::qH, 4);
    KASystem sys(ps, IndexSet({1, 2}), Fault::drop_kappa_M);
    auto H = sys.matrix();
    auto v = sys.p_vector(3);
    auto hv = H.apply(v);
    bool all = true;
    for (std::size_t i = 0; i < v.size(); ++i) all = all && hv[i] == energy(ps, 3) * v[i];
    CHECK_FALSE(all);
}
