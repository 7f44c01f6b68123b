#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fc/contraction.hpp"
#include "fc/dgvec.hpp"

#include "helpers.hpp"

using namespace fc;
using namespace fc::testing;

TEST_CASE("vf_apply basics on flat2") {
    SceneContext ctx(flat2());
    // X with S = d/dy, no coframe action, applied to y*xi -> xi
    DGVectorField x = dg_zero(ctx, 0);
    x.s_f[0] = ctx.scalar_form(ctx.one_poly());  // V = d/dy
    FormElement w = wedge(ctx.scalar_form(P(ctx.spec(), "y")), ctx.xi(0));
    CHECK(vf_apply(ctx, x, w) == ctx.xi(0));
}

TEST_CASE("homological field acts as the CE differential") {
    for (const auto& spec : bundled_scenes()) {
        SceneContext ctx(spec);
        DGVectorField q = homological_field(ctx);
        std::uint64_t st = 11;
        for (int k = 0; k < 12; ++k) {
            st = st * 2862933555777941757ull + 3037000493ull;
            Exponents e(ctx.dim(), 0);
            e[st % ctx.dim()] = static_cast<std::uint8_t>(1 + (st >> 7) % 2);
            Poly f = Poly::monomial(ctx.dim(), e, Scalar(static_cast<std::int64_t>(st % 5) - 2));
            CHECK(dg_on_poly(ctx, q, f) == ctx.d_f(f));
        }
        for (int i = 0; i < ctx.rank_f(); ++i) CHECK(q.a[i] == ctx.d_f_xi(i));
        CHECK(vf_bracket(ctx, q, q).is_zero());
    }
}

TEST_CASE("flat2: Q(y) = xi, Q(xi) = 0; contact3: Q(z) = xi, Q(x) = 0") {
    SceneContext flat(flat2());
    DGVectorField qf = homological_field(flat);
    CHECK(dg_on_poly(flat, qf, P(flat.spec(), "y")) == flat.xi(0));
    CHECK(qf.a[0].is_zero());

    SceneContext contact(contact3());
    DGVectorField qc = homological_field(contact);
    CHECK(dg_on_poly(contact, qc, P(contact.spec(), "z")) == contact.xi(0));
    CHECK(dg_on_poly(contact, qc, P(contact.spec(), "x")).is_zero());
}

TEST_CASE("cartan relation: [iota_V, Q] is the lifted frame field") {
    for (const auto& spec : bundled_scenes()) {
        SceneContext ctx(spec);
        CanonicalFrame fr(ctx);
        for (int i = 0; i < ctx.rank_f(); ++i) {
            DGVectorField lhs =
                vf_bracket(ctx, fr.generator(fr.b + ctx.rank_f() + i), fr.q_field());
            CHECK(lhs == fr.generator(fr.b + i));
        }
    }
}

TEST_CASE("frame coordinates round trip") {
    for (const auto& spec : bundled_scenes()) {
        SceneContext ctx(spec);
        CanonicalFrame fr(ctx);
        Random rng(23);
        for (int t = 0; t < 10; ++t) {
            int deg = rng.below(3) - 1;
            DGVectorField x = rng.dgvf(fr, deg);
            std::vector<FormElement> co = fr.coords(x);
            CHECK(fr.assemble(co, deg) == x);
        }
    }
}

TEST_CASE("pi_* recoverability: coordinate actions reproduce the S part") {
    for (const auto& spec : bundled_scenes()) {
        SceneContext ctx(spec);
        CanonicalFrame fr(ctx);
        Random rng(29);
        for (int t = 0; t < 8; ++t) {
            DGVectorField x = rng.dgvf(fr, rng.below(2));
            DGVectorField y = dg_zero(ctx, x.degree);
            for (int mu = 0; mu < ctx.dim(); ++mu) {
                FormElement act = dg_on_poly(ctx, x, Poly::variable(ctx.dim(), mu));
                FrameDecomposition dec =
                    ctx.decompose(PolyVectorField::coordinate(ctx.dim(), mu));
                for (int i = 0; i < ctx.rank_f(); ++i) y.s_f[i] += dec.along_f[i] * act;
                for (int a = 0; a < ctx.rank_b(); ++a) y.s_b[a] += dec.along_b[a] * act;
            }
            CHECK(y.s_f == x.s_f);
            CHECK(y.s_b == x.s_b);
        }
    }
}

TEST_CASE("lifted-frame bracket reproduces structure functions") {
    SceneContext ctx(nonab4());
    CanonicalFrame fr(ctx);
    // [V1^, V2^] = V1^ since [V1, V2] = V1
    DGVectorField br = vf_bracket(ctx, fr.generator(fr.b + 0), fr.generator(fr.b + 1));
    CHECK(br == fr.generator(fr.b + 0));
}

TEST_CASE("L_Q on tensors squares to zero across signatures") {
    for (const auto& spec : {flat2(), contact3(), cplx1()}) {
        SceneContext ctx(spec);
        CanonicalFrame fr(ctx);
        Random rng(31);
        for (int m = 0; m <= 1; ++m)
            for (int n = 0; m + n <= 3 && n <= 2; ++n) {
                if (m + n == 0) continue;
                auto sig = ContractionData::signature(m, n);
                for (int t = 0; t < 4; ++t) {
                    Tensor x = rng.tensor(fr, false, sig);
                    CHECK(tensor_lq(fr, tensor_lq(fr, x)).is_zero());
                }
            }
    }
}

TEST_CASE("tensor rendering round trip") {
    for (const auto& spec : {tilt3(), cplx1()}) {
        SceneContext ctx(spec);
        CanonicalFrame fr(ctx);
        Random rng(41);
        for (int t = 0; t < 6; ++t) {
            auto sig = ContractionData::signature(rng.below(2), 1 + rng.below(2));
            Tensor dg = rng.tensor(fr, false, sig);
            if (!dg.is_zero())
                CHECK(tensor_from_string(fr, false, tensor_to_string(fr, dg)) == dg);
            Tensor pr = rng.tensor(fr, true, sig);
            if (!pr.is_zero())
                CHECK(tensor_from_string(fr, true, tensor_to_string(fr, pr)) == pr);
        }
    }
}

TEST_CASE("tensor product compatibility of the quotient map") {
    for (const auto& spec : {tilt3(), nonab4()}) {
        SceneContext ctx(spec);
        CanonicalFrame fr(ctx);
        ContractionData cd(fr);
        Random rng(37);
        for (int t = 0; t < 6; ++t) {
            Tensor t1 = rng.tensor(fr, false, ContractionData::signature(1, 1));
            Tensor t2 = rng.tensor(fr, false, ContractionData::signature(1, 0));
            Tensor prod = tensor_product(fr, t1, t2);
            // reorder (d v | d) -> (d d v) canonical
            Tensor canon = tensor_reorder(fr, prod, {0, 2, 1});
            Tensor lhs = cd.big_phi(canon);
            Tensor rhs = tensor_reorder(
                fr, tensor_product(fr, cd.big_phi(t1), cd.big_phi(t2)), {0, 2, 1});
            CHECK(lhs == rhs);
        }
    }
}
