#pragma once

#include <string>

#include "fc/scene.hpp"

namespace fc {

// Scene file schema: keys name, field ("Q"|"Qi"), coords, f_frame, b_frame,
// structure, theta (optional), connection (optional), max_degree.
// parse(render(s)) == s, byte-exact on the rendered form.
SceneSpec parse_scene_json(const std::string& text);
SceneSpec load_scene_file(const std::string& path);
std::string render_scene_json(const SceneSpec& spec);

}  // namespace fc
