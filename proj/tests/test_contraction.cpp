#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fc/contraction.hpp"

#include "helpers.hpp"

using namespace fc;
using namespace fc::testing;

namespace {

void require_all(const std::vector<CheckResult>& checks) {
    for (const auto& c : checks) {
        INFO(c.name << ": " << c.counterexample);
        CHECK(c.pass);
    }
}

}  // namespace

TEST_CASE("single-field maps on named scenes") {
    SceneContext contact(contact3());
    CanonicalFrame fr(contact);
    ContractionData cd(fr);

    // projection of the frame generators
    Tensor pz = cd.phi_vf(fr.generator(0));
    CHECK(pz.terms.size() == 1);
    CHECK(pz.terms.begin()->first == Word{0});

    // vertical and lifted generators project to zero
    CHECK(cd.phi_vf(fr.generator(fr.b)).is_zero());
    CHECK(cd.phi_vf(fr.generator(fr.b + fr.f)).is_zero());

    // h on the lifted frame gives the vertical frame; h twice is zero
    DGVectorField hv = cd.h_vf(fr.generator(fr.b));
    CHECK(hv == fr.generator(fr.b + fr.f));
    CHECK(cd.h_vf(hv).is_zero());
    // h kills the Z-lifts
    CHECK(cd.h_vf(fr.generator(0)).is_zero());
}

TEST_CASE("psi coframe action on shear2 and contact3") {
    SceneContext shear(shear2());
    CanonicalFrame frs(shear);
    // psi(Z)(xi) = xi on shear2
    CHECK(frs.generator(0).a[0] == shear.xi(0));

    SceneContext contact(contact3());
    CanonicalFrame frc(contact);
    // psi(Z2)(xi) = 0 since [jZ2, V] = 0
    CHECK(frc.generator(1).a[0].is_zero());
}

TEST_CASE("gaussian-rational chart: coframe action picks up i") {
    // [V, jZ] = [d/dzb, d/dz + i zb d/dzb] = i V, so psi(Z)(xi) = i xi
    SceneContext ctx(cplx1());
    CanonicalFrame fr(ctx);
    FormElement want = Scalar::i() * ctx.xi(0);
    CHECK(fr.generator(0).a[0] == want);
}

TEST_CASE("flat2: psi(Z) is the plain lift") {
    SceneContext ctx(flat2());
    CanonicalFrame fr(ctx);
    CHECK(fr.generator(0).a[0].is_zero());
    CHECK(fr.generator(0).s_b[0] == ctx.scalar_form(ctx.one_poly()));
}

TEST_CASE("contraction identities, all bundled scenes, signatures up to 3") {
    for (const auto& spec : bundled_scenes()) {
        SceneContext ctx(spec);
        CanonicalFrame fr(ctx);
        ContractionData cd(fr);
        for (int m = 0; m <= 2; ++m)
            for (int n = 0; m + n <= 3 && m + n >= 1 && n <= 2; ++n) {
                INFO(spec.name << " m=" << m << " n=" << n);
                require_all(contraction_checks(cd, m, n, 3, 1234));
            }
    }
}

TEST_CASE("negative control: corrupted structure functions break closure") {
    SceneSpec bad = nonab4();
    bad.structure[0][1][0] = P(bad, "2");  // wrong coefficient
    bad.structure[1][0][0] = P(bad, "-2");
    Diagnostics d = SceneContext::validate(bad);
    CHECK_FALSE(d.ok);
    CHECK(d.failure_kind == "NotIntegrable");
}

TEST_CASE("splitting homotopies on scenes with bundled theta") {
    for (const auto& spec : {shear2(), tilt3(), nonab4()}) {
        SceneContext ctx(spec);
        CanonicalFrame fr(ctx);
        ContractionData cd(fr);
        INFO(spec.name);
        REQUIRE(cd.has_theta());
        require_all(splitting_checks(cd, 1, 1, 4, 99));
    }
}

TEST_CASE("single-field splitting comparison on shear2 generators") {
    // psi_hat(Z) - psi(Z) = Theta(d_B Z) + [Q, Theta(Z)], checked as an
    // equality of derivations, i.e. on every chart coordinate and coframe
    // generator at once.
    SceneContext ctx(shear2());
    CanonicalFrame fr(ctx);
    ContractionData cd(fr);
    Tensor z = tensor_zero(true, {false});
    z.add_term({0}, ctx.scalar_form(ctx.one_poly()));

    DGVectorField lhs = cd.psi_hat_vf(z) - cd.psi_vf(z);
    DGVectorField rhs =
        cd.theta_vf(tensor_db(fr, z)) + vf_bracket(ctx, fr.q_field(), cd.theta_vf(z));
    CHECK(lhs == rhs);

    // the shifted lift is the plain coordinate lift d/dx here
    DGVectorField hat = cd.psi_hat_vf(z);
    CHECK(hat.s_b[0] == ctx.scalar_form(ctx.one_poly()));
    CHECK(hat.s_f[0] == ctx.scalar_form(P(ctx.spec(), "-y")));
    CHECK(hat.a[0].is_zero());
}

TEST_CASE("zero theta gives a trivial homotopy") {
    SceneSpec s = shear2();
    s.theta = {{P(s, "0")}};
    SceneContext ctx(s);
    CanonicalFrame fr(ctx);
    ContractionData cd(fr);
    Random rng(5);
    Tensor sigma = rng.tensor(fr, true, {false});
    CHECK(cd.big_theta(sigma).is_zero());
    CHECK(cd.big_psi_hat(sigma) == cd.big_psi(sigma));
}

TEST_CASE("covariant differential on named tilt3 generators") {
    SceneContext ctx(tilt3());
    CanonicalFrame fr(ctx);
    FormElement one = ctx.scalar_form(ctx.one_poly());

    // d_B(Z1) = -xi (x) Z2
    Tensor z1 = tensor_zero(true, {false});
    z1.add_term({0}, one);
    Tensor want = tensor_zero(true, {false});
    want.add_term({1}, -ctx.xi(0));
    CHECK(tensor_db(fr, z1) == want);

    // dual action: d_B(zeta^2) = xi (x) zeta^1
    Tensor zeta2 = tensor_zero(true, {true});
    zeta2.add_term({1}, one);
    Tensor want2 = tensor_zero(true, {true});
    want2.add_term({0}, ctx.xi(0));
    CHECK(tensor_db(fr, zeta2) == want2);

    SceneContext flat(flat2());
    CanonicalFrame frf(flat);
    Tensor z = tensor_zero(true, {false});
    z.add_term({0}, flat.scalar_form(flat.one_poly()));
    CHECK(tensor_db(frf, z).is_zero());
}

TEST_CASE("retraction identity at signature (2,2)") {
    for (const auto& spec : {tilt3(), cplx1()}) {
        SceneContext ctx(spec);
        CanonicalFrame fr(ctx);
        ContractionData cd(fr);
        Random rng(77);
        auto sig = ContractionData::signature(2, 2);
        for (int t = 0; t < 4; ++t) {
            Tensor s = rng.tensor(fr, true, sig);
            CHECK(cd.big_phi(cd.big_psi(s)) == s);
            Tensor x = rng.tensor(fr, false, sig);
            Tensor lhs = tensor_sub(x, cd.big_psi(cd.big_phi(x)));
            CHECK(lhs == cd.lq_h_commutator(x));
        }
    }
}

TEST_CASE("foundation batteries") {
    for (const auto& spec : bundled_scenes()) {
        SceneContext ctx(spec);
        CanonicalFrame fr(ctx);
        ContractionData cd(fr);
        INFO(spec.name);
        require_all(foundation_checks(cd, 16, 4321));
    }
}
