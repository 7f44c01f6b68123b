#include "fc/scene_io.hpp"

#include <fstream>
#include <sstream>

#include "fc/errors.hpp"
#include "json.hpp"

namespace fc {

using nlohmann::ordered_json;

SceneSpec parse_scene_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("scene json: ") + e.what());
    }
    SceneSpec s;
    try {
        s.name = j.at("name").get<std::string>();
        std::string field = j.at("field").get<std::string>();
        if (field == "Q")
            s.field = FieldKind::Rational;
        else if (field == "Qi")
            s.field = FieldKind::GaussianRational;
        else
            throw ParseError("scene field must be Q or Qi");
        s.coords = j.at("coords").get<std::vector<std::string>>();
        auto parse_frame = [&](const ordered_json& arr) {
            std::vector<PolyVectorField> frame;
            for (const auto& row : arr) {
                PolyVectorField v;
                for (const auto& comp : row)
                    v.comps.push_back(Poly::parse(comp.get<std::string>(), s.coords));
                if (v.nvars() != s.dim()) throw ParseError("frame row length mismatch");
                frame.push_back(v);
            }
            return frame;
        };
        s.f_frame = parse_frame(j.at("f_frame"));
        s.b_frame = parse_frame(j.at("b_frame"));
        const auto& st = j.at("structure");
        for (const auto& plane : st) {
            std::vector<std::vector<Poly>> p2;
            for (const auto& row : plane) {
                std::vector<Poly> p1;
                for (const auto& cell : row)
                    p1.push_back(Poly::parse(cell.get<std::string>(), s.coords));
                p2.push_back(p1);
            }
            s.structure.push_back(p2);
        }
        if (j.contains("theta")) {
            std::vector<std::vector<Poly>> th;
            for (const auto& row : j.at("theta")) {
                std::vector<Poly> r1;
                for (const auto& cell : row)
                    r1.push_back(Poly::parse(cell.get<std::string>(), s.coords));
                th.push_back(r1);
            }
            s.theta = th;
        }
        if (j.contains("connection")) {
            for (const auto& e : j.at("connection")) {
                DgChristoffelEntry entry;
                entry.on = e.at("on").get<std::string>();
                entry.of = e.at("of").get<std::string>();
                entry.out = e.at("out").get<std::string>();
                entry.value = e.at("value").get<std::string>();
                s.dg_connection.push_back(entry);
            }
        }
        if (j.contains("max_degree")) s.max_degree = j.at("max_degree").get<int>();
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(std::string("scene json: ") + e.what());
    }
    return s;
}

SceneSpec load_scene_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open scene file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scene_json(ss.str());
}

std::string render_scene_json(const SceneSpec& spec) {
    ordered_json j;
    j["name"] = spec.name;
    j["field"] = spec.field == FieldKind::Rational ? "Q" : "Qi";
    j["coords"] = spec.coords;
    auto frame_json = [&](const std::vector<PolyVectorField>& frame) {
        ordered_json arr = ordered_json::array();
        for (const auto& v : frame) {
            ordered_json row = ordered_json::array();
            for (const auto& c : v.comps) row.push_back(c.to_string(spec.coords));
            arr.push_back(row);
        }
        return arr;
    };
    j["f_frame"] = frame_json(spec.f_frame);
    j["b_frame"] = frame_json(spec.b_frame);
    ordered_json st = ordered_json::array();
    for (const auto& plane : spec.structure) {
        ordered_json p2 = ordered_json::array();
        for (const auto& row : plane) {
            ordered_json p1 = ordered_json::array();
            for (const auto& cell : row) p1.push_back(cell.to_string(spec.coords));
            p2.push_back(p1);
        }
        st.push_back(p2);
    }
    j["structure"] = st;
    if (spec.theta) {
        ordered_json th = ordered_json::array();
        for (const auto& row : *spec.theta) {
            ordered_json r1 = ordered_json::array();
            for (const auto& cell : row) r1.push_back(cell.to_string(spec.coords));
            th.push_back(r1);
        }
        j["theta"] = th;
    }
    if (!spec.dg_connection.empty()) {
        ordered_json conn = ordered_json::array();
        for (const auto& e : spec.dg_connection) {
            ordered_json o;
            o["on"] = e.on;
            o["of"] = e.of;
            o["out"] = e.out;
            o["value"] = e.value;
            conn.push_back(o);
        }
        j["connection"] = conn;
    }
    j["max_degree"] = spec.max_degree;
    return j.dump(2) + "\n";
}

}  // namespace fc
