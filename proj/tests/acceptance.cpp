// Acceptance suite: one line per criterion, exact (zero-residual) checks.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fc/classes.hpp"
#include "fc/runner.hpp"
#include "fc/scene_io.hpp"
#include "fc/transfer.hpp"

#include "helpers.hpp"
#include "oracle.hpp"

using namespace fc;
using namespace fc::testing;

namespace {

int failures = 0;

double now_s() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

void report(int criterion, const std::string& what, const std::string& err, double secs) {
    if (err.empty()) {
        std::printf("PASS criterion-%d: %s (%.1fs)\n", criterion, what.c_str(), secs);
    } else {
        std::printf("FAIL criterion-%d: %s — %s\n", criterion, what.c_str(), err.c_str());
        ++failures;
    }
    std::fflush(stdout);
}

std::string collect(const std::vector<CheckResult>& checks) {
    for (const auto& c : checks)
        if (!c.pass) return c.name + ": " + c.counterexample;
    return "";
}

struct SceneBundle {
    SceneSpec spec;
    SceneContext ctx;
    CanonicalFrame frame;
    ContractionData cd;
    explicit SceneBundle(const SceneSpec& s) : spec(s), ctx(s), frame(ctx), cd(frame) {}
};

}  // namespace

int main() {
    std::vector<SceneSpec> corpus = bundled_scenes();
    std::vector<std::unique_ptr<SceneBundle>> bundles;
    for (const auto& s : corpus) bundles.push_back(std::make_unique<SceneBundle>(s));

    // 1. contraction suite, all scenes, signatures m+n <= 3, generators plus
    //    >= 100 seeded random elements per scene, under 60 s
    {
        double t0 = now_s();
        std::string err;
        for (auto& b : bundles) {
            int randoms_per_sig = 12;  // 9 signatures -> 108 random elements
            for (int m = 0; m <= 3 && err.empty(); ++m)
                for (int n = 0; m + n <= 3 && err.empty(); ++n) {
                    if (m + n == 0) continue;
                    auto checks = contraction_checks(b->cd, m, n, randoms_per_sig, 7);
                    std::string e = collect(checks);
                    if (!e.empty()) err = b->spec.name + ": " + e;
                }
        }
        double secs = now_s() - t0;
        if (err.empty() && secs >= 60.0)
            err = "runtime " + std::to_string(secs) + "s exceeds 60s";
        report(1, "contraction identities and chain maps, all scenes, m+n <= 3", err, secs);
    }

    // 2. splitting homotopy on shear2 and tilt3 with bundled theta
    {
        double t0 = now_s();
        std::string err;
        for (auto& b : bundles) {
            if (b->spec.name != "shear2" && b->spec.name != "tilt3") continue;
            auto checks = splitting_checks(b->cd, 1, 1, 8, 11);
            std::string e = collect(checks);
            if (!e.empty() && err.empty()) err = b->spec.name + ": " + e;
        }
        report(2, "splitting homotopies, single and tensor versions, (m,n) <= (1,1)", err,
               now_s() - t0);
    }

    // 3. transfer tables
    {
        double t0 = now_s();
        std::string err;
        for (auto& b : bundles) {
            int higher = b->spec.dim() >= 4 ? 4 : 6;
            BracketTables tables = transfer_tables(b->frame, higher);
            std::string e = collect(tables.checks);
            if (!e.empty() && err.empty()) err = b->spec.name + ": " + e;
        }
        if (err.empty()) {
            // pinned values
            SceneBundle& contact = *bundles[3];
            Transfer trc(contact.frame);
            PairPoly v = trc.lambda_k({pp_generator_z(contact.ctx, 0),
                                       pp_generator_z(contact.ctx, 1),
                                       pp_from_form(contact.ctx, contact.ctx.xi(0))});
            if (!(v == pp_scalar(contact.ctx, contact.ctx.one_poly())))
                err = "contact3 lambda3(Z1,Z2,xi) != 1";
            SceneBundle& tilt = *bundles[2];
            Transfer trt(tilt.frame);
            if (!trt.lambda_k({pp_generator_z(tilt.ctx, 0), pp_generator_z(tilt.ctx, 1),
                               pp_from_form(tilt.ctx, tilt.ctx.xi(0))})
                     .is_zero())
                err = "tilt3 lambda3(Z1,Z2,xi) != 0";
        }
        report(3, "transferred brackets: lambda2 closed forms, lambda3 values, lambda4-6 vanish",
               err, now_s() - t0);
    }

    // 4. Atiyah correspondence, frame-flat plus >= 20 random connections per
    //    scene, and the pinned tilt3 component
    {
        double t0 = now_s();
        std::string err;
        for (auto& b : bundles) {
            Random rng(13);
            auto one = [&](const DGConnection& conn, const std::string& tag) -> std::string {
                AtiyahDg at = atiyah_dg(b->frame, conn);
                if (!tensor_lq(b->frame, at.tensor21).is_zero())
                    return b->spec.name + " " + tag + ": cocycle not closed";
                PairConnection pc = induced_connection(b->frame, b->cd, conn);
                Tensor r = atiyah_pair(b->frame, pc);
                if (!(b->cd.big_phi(at.tensor21) == r))
                    return b->spec.name + " " + tag + ": phi(alpha) != R";
                if (!tensor_db(b->frame, r).is_zero())
                    return b->spec.name + " " + tag + ": R not closed";
                return "";
            };
            std::string e = one(DGConnection::frame_flat(), "flat");
            for (int t = 0; t < 20 && e.empty(); ++t) {
                DGConnection conn;
                const SceneContext& ctx = b->ctx;
                for (int k = 0; k < 5; ++k) {
                    int alpha = rng.below(b->frame.size());
                    int beta = rng.below(b->frame.size());
                    int g = rng.below(b->frame.size());
                    int want = b->frame.vec_degree(g) - b->frame.vec_degree(alpha) -
                               b->frame.vec_degree(beta);
                    if (want < 0 || want > ctx.rank_f()) continue;
                    FormElement val = rng.form(ctx, want, 1);
                    if (val.is_zero()) continue;
                    auto it = conn.gamma.find({alpha, beta, g});
                    if (it == conn.gamma.end())
                        conn.gamma.emplace(std::array<int, 3>{alpha, beta, g}, val);
                    else
                        it->second += val;
                }
                e = one(conn, "random#" + std::to_string(t));
            }
            if (!e.empty() && err.empty()) err = e;
        }
        if (err.empty()) {
            SceneBundle& tilt = *bundles[2];
            DGConnection conn = DGConnection::from_scene(tilt.frame);
            Tensor r = atiyah_pair(tilt.frame, induced_connection(tilt.frame, tilt.cd, conn));
            FormElement want1 =
                FormElement::term(tilt.ctx.rank_f(), 1, P(tilt.spec, "x"));
            FormElement want2 =
                FormElement::term(tilt.ctx.rank_f(), 1, P(tilt.spec, "-z"));
            if (!(r.terms.count({0, 0, 0}) && r.terms.at({0, 0, 0}) == want1 &&
                  r.terms.count({0, 0, 1}) && r.terms.at({0, 0, 1}) == want2))
                err = "tilt3 z-christoffel: R(V,Z1)Z1 != x Z1 - z Z2";
        }
        report(4, "Atiyah correspondence phi(alpha) = R, flat + 20 random connections per scene",
               err, now_s() - t0);
    }

    // 5. scalar classes: supertrace/trace homotopy certificate for alpha^k
    {
        double t0 = now_s();
        std::string err;
        for (auto& b : bundles) {
            int s = std::min(b->ctx.rank_f(), b->ctx.rank_b());
            DGConnection conn = DGConnection::from_scene(b->frame);
            AtiyahDg at = atiyah_dg(b->frame, conn);
            Tensor alpha_end = end_from_tensor21(b->frame, at.tensor21);
            Tensor phi_alpha = end_big_phi(b->cd, alpha_end);
            for (int k = 1; k <= s && err.empty(); ++k) {
                Tensor ak = end_power(b->frame, alpha_end, k);
                Tensor lhs = tensor_sub(
                    b->cd.big_phi(end_str(b->frame, ak)),
                    end_tr(b->frame, end_power(b->frame, phi_alpha, k)));
                Tensor rhs = tensor_add(
                    tensor_db(b->frame,
                              b->cd.big_phi(end_str(b->frame, end_big_h(b->cd, ak)))),
                    b->cd.big_phi(end_str(
                        b->frame, end_big_h(b->cd, tensor_lq(b->frame, ak)))));
                if (!(lhs == rhs))
                    err = b->spec.name + ": homotopy certificate failed at k=" +
                          std::to_string(k);
            }
        }
        report(5, "scalar classes: phi(str(alpha^k)) - tr(phi(alpha)^k) equals the homotopy term",
               err, now_s() - t0);
    }

    // 6. Todd: two-route agreement, frozen m-sequence values and the
    //    independent oracle, structural weight cap
    {
        double t0 = now_s();
        std::string err;
        SeriesSpec todd2 = todd_series(2);
        std::vector<PowerSumPoly> k = m_sequence(todd2, 2);
        PowerSumPoly k1_expected{{{1, 0}, Scalar::rational(1, 2)}};
        PowerSumPoly k2_expected{{{2, 0}, Scalar::rational(1, 8)},
                                 {{0, 1}, Scalar::rational(-1, 24)}};
        if (!(k[0] == k1_expected)) err = "K1 != p1/2";
        if (err.empty() && !(k[1] == k2_expected)) err = "K2 != p1^2/8 - p2/24";
        if (err.empty() && !(oracle_m_sequence(todd2, 1) == m_sequence(todd2, 1)[0]))
            err = "K1 disagrees with the series-expansion oracle";
        if (err.empty() && !(oracle_m_sequence(todd2, 2) == k[1]))
            err = "K2 disagrees with the series-expansion oracle";
        for (auto& b : bundles) {
            if (!err.empty()) break;
            int s = std::min(b->ctx.rank_f(), b->ctx.rank_b());
            DGConnection conn = DGConnection::from_scene(b->frame);
            AtiyahDg at = atiyah_dg(b->frame, conn);
            Tensor alpha_end = end_from_tensor21(b->frame, at.tensor21);
            Tensor phi_alpha = end_big_phi(b->cd, alpha_end);
            std::string mm;
            SeriesSpec todd = todd_series(std::max(s, 1));
            auto dg = berezinian_series_dg(b->frame, alpha_end, todd, s, &mm);
            auto pair = berezinian_series_pair(b->frame, phi_alpha, todd, s, &mm);
            if (!mm.empty()) err = b->spec.name + ": " + mm;
            if (err.empty() &&
                (static_cast<int>(dg.size()) != s || static_cast<int>(pair.size()) != s))
                err = b->spec.name + ": weight cap not enforced";
            // random nilpotent inputs
            Random rng(17);
            for (int t = 0; t < 3 && err.empty(); ++t) {
                std::vector<bool> dual{true, false, true};
                Tensor w = tensor_zero(false, dual);
                for (int j = 0; j < 3; ++j) {
                    Word word;
                    for (int s2 = 0; s2 < 3; ++s2)
                        word.push_back(static_cast<std::uint8_t>(rng.below(b->frame.size())));
                    int slot_deg = 0;
                    for (int s2 = 0; s2 < 3; ++s2)
                        slot_deg += symbol_degree(b->frame, false, dual[s2], word[s2]);
                    int cdeg = 1 - slot_deg;
                    if (cdeg < 0 || cdeg > b->ctx.rank_f()) continue;
                    w.add_term(word, rng.form(b->ctx, cdeg, 1));
                }
                std::string mm2;
                berezinian_series_dg(b->frame, w, todd, s, &mm2);
                if (!mm2.empty())
                    err = b->spec.name + " random nilpotent input: " + mm2;
            }
        }
        report(6, "Todd: two-route berezinian agreement, K-values vs oracle, weight cap", err,
               now_s() - t0);
    }

    // 7. connection independence: R difference is d_B-exact with the
    //    Christoffel-difference primitive, >= 20 random pairs per scene
    {
        double t0 = now_s();
        std::string err;
        for (auto& b : bundles) {
            Random rng(19);
            const SceneContext& ctx = b->ctx;
            auto random_pconn = [&]() {
                PairConnection p = PairConnection::zero(ctx);
                for (int a = 0; a < ctx.rank_b(); ++a)
                    for (int b2 = 0; b2 < ctx.rank_b(); ++b2)
                        for (int c = 0; c < ctx.rank_b(); ++c)
                            if (rng.below(2) == 0) p.gamma[a][b2][c] = rng.poly(ctx, 2, 1);
                return p;
            };
            for (int t = 0; t < 20 && err.empty(); ++t) {
                PairConnection p1 = random_pconn(), p2 = random_pconn();
                Tensor r1 = atiyah_pair(b->frame, p1);
                Tensor r2 = atiyah_pair(b->frame, p2);
                Tensor tdiff = tensor_zero(true, {true, true, false});
                for (int a = 0; a < ctx.rank_b(); ++a)
                    for (int b2 = 0; b2 < ctx.rank_b(); ++b2)
                        for (int c = 0; c < ctx.rank_b(); ++c) {
                            Poly dgm = p1.gamma[a][b2][c] - p2.gamma[a][b2][c];
                            if (dgm.is_zero()) continue;
                            Word w{static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b2),
                                   static_cast<std::uint8_t>(c)};
                            tdiff.add_term(w, ctx.scalar_form(dgm));
                        }
                if (!(tensor_db(b->frame, tdiff) == tensor_sub(r1, r2)))
                    err = b->spec.name + ": pair " + std::to_string(t);
            }
        }
        report(7, "connection independence: R - R' = d_B(t), 20 random pairs per scene", err,
               now_s() - t0);
    }

    // 8. foundations under 60 s
    {
        double t0 = now_s();
        std::string err;
        for (auto& b : bundles) {
            auto checks = foundation_checks(b->cd, 40, 23);
            std::string e = collect(checks);
            if (e.empty()) e = collect(transfer_checks(b->frame, 8, 29));
            if (!e.empty() && err.empty()) err = b->spec.name + ": " + e;
        }
        double secs = now_s() - t0;
        if (err.empty() && secs >= 60.0)
            err = "runtime " + std::to_string(secs) + "s exceeds 60s";
        report(8, "foundations: d_F^2, d_B^2, L_Q^2, Jacobi, Gerstenhaber laws", err, secs);
    }

    // 9. negative controls through the command-line surface
    {
        double t0 = now_s();
        std::string err;
        const char* bin = std::getenv("FC_BIN");
        const char* dir = std::getenv("FC_SCENE_DIR");
        if (!bin || !dir) {
            err = "FC_BIN / FC_SCENE_DIR not set";
        } else {
            auto code = [&](const std::string& scene) {
                std::string cmd = std::string(bin) + " validate " + dir + "/" + scene +
                                  " > /tmp/fc_acc_neg.json 2>/dev/null";
                return WEXITSTATUS(std::system(cmd.c_str()));
            };
            if (code("flat2.json") != 0) err = "valid scene did not exit 0";
            if (err.empty() && code("neg_notintegrable.json") != 3)
                err = "non-integrable scene did not exit 3";
            if (err.empty() && code("neg_badframe.json") != 3)
                err = "non-unimodular frame did not exit 3";
            if (err.empty() && code("neg_malformed.json") != 2)
                err = "malformed file did not exit 2";
            if (err.empty()) {
                std::string cmd = std::string(bin) + " validate " + dir +
                                  "/neg_notintegrable.json --out /tmp/fc_acc_neg.json 2>/dev/null";
                if (WEXITSTATUS(std::system(cmd.c_str())) != 3) err = "rerun did not exit 3";
                std::ifstream in("/tmp/fc_acc_neg.json");
                std::stringstream ss;
                ss << in.rdbuf();
                if (ss.str().find("V1") == std::string::npos ||
                    ss.str().find("V2") == std::string::npos)
                    err = "diagnostics do not name the offending generator pair";
            }
            std::remove("/tmp/fc_acc_neg.json");
        }
        report(9, "negative controls fail with documented exit codes and diagnostics", err,
               now_s() - t0);
    }

    // 10. determinism: identical seeds produce byte-identical reports
    {
        double t0 = now_s();
        std::string err;
        const char* bin = std::getenv("FC_BIN");
        const char* dir = std::getenv("FC_SCENE_DIR");
        if (!bin || !dir) {
            err = "FC_BIN / FC_SCENE_DIR not set";
        } else {
            std::string base = std::string(bin) + " transfer " + dir + "/contact3.json " + dir +
                               "/shear2.json --seed 42 --rand-count 24 --out ";
            if (WEXITSTATUS(std::system((base + "/tmp/fc_acc_r1.json > /dev/null").c_str())) != 0)
                err = "first run failed";
            if (WEXITSTATUS(std::system((base + "/tmp/fc_acc_r2.json > /dev/null").c_str())) != 0)
                err = "second run failed";
            std::ifstream f1("/tmp/fc_acc_r1.json", std::ios::binary);
            std::ifstream f2("/tmp/fc_acc_r2.json", std::ios::binary);
            std::stringstream s1, s2;
            s1 << f1.rdbuf();
            s2 << f2.rdbuf();
            if (s1.str().empty() || s1.str() != s2.str())
                err = "reports differ across runs with the same seed";
            std::remove("/tmp/fc_acc_r1.json");
            std::remove("/tmp/fc_acc_r2.json");
        }
        report(10, "determinism: byte-identical reports for identical seeds", err, now_s() - t0);
    }

    if (failures == 0) {
        std::printf("acceptance: all criteria pass\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", failures);
    return 1;
}
