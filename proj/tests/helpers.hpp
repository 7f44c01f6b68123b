#pragma once

#include <cstdlib>
#include <string>

#include "fc/scene.hpp"

namespace fc::testing {

inline Poly P(const SceneSpec& s, const std::string& text) {
    return Poly::parse(text, s.coords);
}

inline PolyVectorField VF(const SceneSpec& s, const std::vector<std::string>& comps) {
    PolyVectorField v;
    for (const auto& c : comps) v.comps.push_back(P(s, c));
    return v;
}

inline void zero_structure(SceneSpec& s) {
    int f = s.rank_f();
    s.structure.assign(
        f, std::vector<std::vector<Poly>>(f, std::vector<Poly>(f, Poly(s.dim()))));
}

// d=2 coordinate foliation: V = d/dy, jZ = d/dx.
inline SceneSpec flat2() {
    SceneSpec s;
    s.name = "flat2";
    s.coords = {"x", "y"};
    s.f_frame = {VF(s, {"0", "1"})};
    s.b_frame = {VF(s, {"1", "0"})};
    zero_structure(s);
    return s;
}

// d=2, V = d/dy, jZ = d/dx + y d/dy; bundled alternate splitting jZ_hat = d/dx.
inline SceneSpec shear2() {
    SceneSpec s;
    s.name = "shear2";
    s.coords = {"x", "y"};
    s.f_frame = {VF(s, {"0", "1"})};
    s.b_frame = {VF(s, {"1", "y"})};
    zero_structure(s);
    s.theta = {{P(s, "-y")}};
    return s;
}

// d=3, V = d/dy + x d/dz, jZ1 = d/dx, jZ2 = d/dz; z-Christoffel bundled.
inline SceneSpec tilt3() {
    SceneSpec s;
    s.name = "tilt3";
    s.coords = {"x", "y", "z"};
    s.f_frame = {VF(s, {"0", "1", "x"})};
    s.b_frame = {VF(s, {"1", "0", "0"}), VF(s, {"0", "0", "1"})};
    zero_structure(s);
    s.theta = {{P(s, "-x")}, {P(s, "0")}};
    s.dg_connection = {{"Z1", "Z1", "Z1", "(z)"}};
    return s;
}

// d=3, V = d/dz, jZ1 = d/dx, jZ2 = d/dy + x d/dz.
inline SceneSpec contact3() {
    SceneSpec s;
    s.name = "contact3";
    s.coords = {"x", "y", "z"};
    s.f_frame = {VF(s, {"0", "0", "1"})};
    s.b_frame = {VF(s, {"1", "0", "0"}), VF(s, {"0", "1", "x"})};
    zero_structure(s);
    return s;
}

// complex chart over Q(i): V = d/dzb, jZ = d/dz + i*zb d/dzb.
inline SceneSpec cplx1() {
    SceneSpec s;
    s.name = "cplx1";
    s.field = FieldKind::GaussianRational;
    s.coords = {"z", "zb"};
    s.f_frame = {VF(s, {"0", "1"})};
    s.b_frame = {VF(s, {"1", "i*zb"})};
    zero_structure(s);
    return s;
}

// d=4, nonabelian F of rank 2: [V1,V2] = V1.
inline SceneSpec nonab4() {
    SceneSpec s;
    s.name = "nonab4";
    s.coords = {"x1", "x2", "y1", "y2"};
    s.f_frame = {VF(s, {"0", "0", "1", "0"}), VF(s, {"0", "0", "y1", "1"})};
    s.b_frame = {VF(s, {"1", "0", "x2", "0"}), VF(s, {"0", "1", "0", "0"})};
    zero_structure(s);
    s.structure[0][1][0] = P(s, "1");
    s.structure[1][0][0] = P(s, "-1");
    s.theta = {{P(s, "0"), P(s, "x1")}, {P(s, "0"), P(s, "0")}};
    s.dg_connection = {{"Z1", "Z1", "Z1", "(y2)"}, {"Z2", "Z1", "Z2", "(x1)"}};
    return s;
}

inline std::vector<SceneSpec> bundled_scenes() {
    return {flat2(), shear2(), tilt3(), contact3(), cplx1(), nonab4()};
}

}  // namespace fc::testing
