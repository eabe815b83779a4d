// Copyright 2026 The lanegraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lanegraph/harness/config.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "lanegraph/error.hpp"
#include "lanegraph/geometry/vp_estimator.hpp"

namespace lanegraph::harness {
namespace {

namespace pt = boost::property_tree;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

// Collects conversion failures instead of stopping at the first one.
class Reader {
 public:
  explicit Reader(std::vector<std::string>& errors) : errors_(errors) {}

  void number(const std::string& where, const std::string& text, double& out) {
    const std::string t = trim(text);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || end != t.data() + t.size() || t.empty()) {
      errors_.push_back(where + ": expected a number, got '" + t + "'");
      return;
    }
    out = value;
  }

  void number(const std::string& where, const std::string& text, std::optional<double>& out) {
    double value = 0.0;
    const auto before = errors_.size();
    number(where, text, value);
    if (errors_.size() == before) out = value;
  }

  template <typename Int>
  void integer(const std::string& where, const std::string& text, Int& out) {
    const std::string t = trim(text);
    Int value{};
    const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || end != t.data() + t.size() || t.empty()) {
      errors_.push_back(where + ": expected an integer, got '" + t + "'");
      return;
    }
    out = value;
  }

  void boolean(const std::string& where, const std::string& text, bool& out) {
    const std::string t = trim(text);
    if (t == "true" || t == "1" || t == "yes" || t == "on") {
      out = true;
    } else if (t == "false" || t == "0" || t == "no" || t == "off") {
      out = false;
    } else {
      errors_.push_back(where + ": expected a boolean, got '" + t + "'");
    }
  }

  void sizes(const std::string& where, const std::string& text,
             std::vector<std::pair<int, int>>& out) {
    std::vector<std::pair<int, int>> parsed;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      const auto x = item.find('x');
      int u = 0;
      int v = 0;
      const auto before = errors_.size();
      if (x == std::string::npos) {
        errors_.push_back(where + ": size '" + item + "' is not of the form UxV");
        continue;
      }
      integer(where, item.substr(0, x), u);
      integer(where, item.substr(x + 1), v);
      if (errors_.size() == before) parsed.emplace_back(u, v);
    }
    out = std::move(parsed);
  }

 private:
  std::vector<std::string>& errors_;
};

using Handler = std::function<void(const std::string& where, const std::string& value)>;
using Section = std::map<std::string, Handler>;

void dispatch(const pt::ptree& tree, const std::map<std::string, Section>& sections,
              std::vector<std::string>& errors) {
  for (const auto& [name, body] : tree) {
    const auto section = sections.find(name);
    if (section == sections.end()) {
      errors.push_back("unknown section [" + name + "]");
      continue;
    }
    for (const auto& [key, value] : body) {
      const std::string where = "[" + name + "] " + key;
      const auto handler = section->second.find(key);
      if (handler == section->second.end()) {
        errors.push_back(where + ": unknown key");
        continue;
      }
      handler->second(where, value.data());
    }
  }
}

Section camera_section(Reader& r, CameraConfig& c) {
  return {
      {"fx", [&](auto& w, auto& v) { r.number(w, v, c.intrinsics.fx); }},
      {"fy", [&](auto& w, auto& v) { r.number(w, v, c.intrinsics.fy); }},
      {"cu", [&](auto& w, auto& v) { r.number(w, v, c.intrinsics.cu); }},
      {"cv", [&](auto& w, auto& v) { r.number(w, v, c.intrinsics.cv); }},
      {"image_width", [&](auto& w, auto& v) { r.integer(w, v, c.image_width); }},
      {"image_height", [&](auto& w, auto& v) { r.integer(w, v, c.image_height); }},
      {"height_m", [&](auto& w, auto& v) { r.number(w, v, c.height_m); }},
      {"vp_u", [&](auto& w, auto& v) { r.number(w, v, c.vp_u); }},
      {"vp_v", [&](auto& w, auto& v) { r.number(w, v, c.vp_v); }},
      {"pitch_rad", [&](auto& w, auto& v) { r.number(w, v, c.pitch_rad); }},
      {"yaw_rad", [&](auto& w, auto& v) { r.number(w, v, c.yaw_rad); }},
  };
}

pt::ptree read_tree(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorCode::kParse, std::string("config: ") + e.message() + " at line " +
                                       std::to_string(e.line()));
  }
  return tree;
}

void throw_if_any(const std::vector<std::string>& errors, const std::string& what) {
  if (errors.empty()) return;
  std::string message = what + ": " + std::to_string(errors.size()) + " problem(s)";
  for (const auto& e : errors) message += "\n  " + e;
  throw Error(ErrorCode::kInvalidConfig, message);
}

// Shortest text that parses back to the same double.
std::string fmt(double x) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ec == std::errc() ? end : buf);
}

void write_camera_keys(std::ostream& out, const CameraConfig& c) {
  out << "fx = " << fmt(c.intrinsics.fx) << "\n"
      << "fy = " << fmt(c.intrinsics.fy) << "\n"
      << "cu = " << fmt(c.intrinsics.cu) << "\n"
      << "cv = " << fmt(c.intrinsics.cv) << "\n"
      << "image_width = " << c.image_width << "\n"
      << "image_height = " << c.image_height << "\n"
      << "height_m = " << fmt(c.height_m) << "\n";
  if (c.vp_u) out << "vp_u = " << fmt(*c.vp_u) << "\n";
  if (c.vp_v) out << "vp_v = " << fmt(*c.vp_v) << "\n";
  if (c.pitch_rad) out << "pitch_rad = " << fmt(*c.pitch_rad) << "\n";
  if (c.yaw_rad) out << "yaw_rad = " << fmt(*c.yaw_rad) << "\n";
}

template <typename F>
void collect(std::vector<std::string>& errors, F&& check) {
  try {
    check();
  } catch (const Error& e) {
    std::stringstream ss(e.what());
    std::string line;
    while (std::getline(ss, line)) {
      line = trim(line);
      if (!line.empty()) errors.push_back(line);
    }
  }
}

}  // namespace

void CameraConfig::collect_errors(std::vector<std::string>& errors) const {
  const auto positive = [&](double x, const char* name) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      errors.push_back(std::string("camera ") + name + " must be positive");
    }
  };
  positive(intrinsics.fx, "fx");
  positive(intrinsics.fy, "fy");
  positive(height_m, "height_m");
  if (image_width <= 0) errors.push_back("camera image_width must be positive");
  if (image_height <= 0) errors.push_back("camera image_height must be positive");
  if (vp_u.has_value() != vp_v.has_value()) {
    errors.push_back("camera vp_u and vp_v must be given together");
  }
  if (pitch_rad.has_value() != yaw_rad.has_value()) {
    errors.push_back("camera pitch_rad and yaw_rad must be given together");
  }
}

void RunConfig::validate() const {
  std::vector<std::string> errors;
  if (camera) {
    camera->collect_errors(errors);
  } else if (!paths.camera.empty() && !std::filesystem::exists(paths.camera)) {
    errors.push_back("camera file does not exist: " + paths.camera);
  }
  if (!paths.input.empty() && !std::filesystem::exists(paths.input)) {
    errors.push_back("input does not exist: " + paths.input);
  }
  collect(errors, [&] { pipeline.grid.validate(); });
  collect(errors, [&] { pipeline.weights.validate(); });
  collect(errors, [&] { pipeline.canny.validate(); });
  collect(errors, [&] { pipeline.extraction.validate(); });
  if (bench.sizes.empty()) errors.push_back("bench sizes must not be empty");
  for (const auto& [u, v] : bench.sizes) {
    if (u < 1 || v < 2) {
      errors.push_back("bench size " + std::to_string(u) + "x" + std::to_string(v) +
                       " is below 1x2");
    }
  }
  if (bench.radius < 0) errors.push_back("bench k must be non-negative");
  if (bench.repetitions < 1) errors.push_back("bench repetitions must be at least 1");
  if (!(bench.lambda >= 0.0)) errors.push_back("bench lambda must be non-negative");
  throw_if_any(errors, "invalid run config");
}

RunConfig parse_run_config(std::istream& in) {
  const pt::ptree tree = read_tree(in);
  RunConfig c;
  std::vector<std::string> errors;
  Reader r(errors);
  CameraConfig camera;
  bool camera_inline = false;
  auto& grid = c.pipeline.grid;
  auto& weights = c.pipeline.weights;
  auto& canny = c.pipeline.canny;
  auto& ex = c.pipeline.extraction;
  auto& bench = c.bench;

  Section cam = camera_section(r, camera);
  for (auto& [key, handler] : cam) {
    handler = [&, inner = handler](auto& w, auto& v) {
      camera_inline = true;
      inner(w, v);
    };
  }
  cam["file"] = [&](auto&, auto& v) { c.paths.camera = trim(v); };

  const std::map<std::string, Section> sections{
      {"paths",
       {
           {"input", [&](auto&, auto& v) { c.paths.input = trim(v); }},
           {"camera", [&](auto&, auto& v) { c.paths.camera = trim(v); }},
           {"out", [&](auto&, auto& v) { c.paths.out = trim(v); }},
       }},
      {"camera", cam},
      {"ipm",
       {
           {"x_range_m", [&](auto& w, auto& v) { r.number(w, v, grid.x_range_m); }},
           {"y_range_m", [&](auto& w, auto& v) { r.number(w, v, grid.y_range_m); }},
           {"y_start_m", [&](auto& w, auto& v) { r.number(w, v, grid.y_start_m); }},
           {"out_width", [&](auto& w, auto& v) { r.integer(w, v, grid.out_width); }},
           {"out_height", [&](auto& w, auto& v) { r.integer(w, v, grid.out_height); }},
       }},
      {"features",
       {
           {"w_e", [&](auto& w, auto& v) { r.number(w, v, weights.edge); }},
           {"w_g", [&](auto& w, auto& v) { r.number(w, v, weights.gray); }},
           {"canny_low", [&](auto& w, auto& v) { r.number(w, v, canny.low); }},
           {"canny_high", [&](auto& w, auto& v) { r.number(w, v, canny.high); }},
           {"canny_sigma", [&](auto& w, auto& v) { r.number(w, v, canny.sigma); }},
           {"canny_kernel", [&](auto& w, auto& v) { r.integer(w, v, canny.kernel_size); }},
       }},
      {"extraction",
       {
           {"lambda", [&](auto& w, auto& v) { r.number(w, v, ex.lambda); }},
           {"k", [&](auto& w, auto& v) { r.integer(w, v, ex.radius); }},
           {"t_r", [&](auto& w, auto& v) { r.number(w, v, ex.residual_threshold); }},
           {"epsilon", [&](auto& w, auto& v) { r.number(w, v, ex.epsilon); }},
           {"epsilon_per_step", [&](auto& w, auto& v) { r.number(w, v, ex.stop_cost_per_step); }},
           {"max_lanes", [&](auto& w, auto& v) { r.integer(w, v, ex.max_lanes); }},
           {"suppression_half_width",
            [&](auto& w, auto& v) { r.integer(w, v, ex.suppression_half_width); }},
           {"min_inlier_ratio", [&](auto& w, auto& v) { r.number(w, v, ex.min_inlier_ratio); }},
           {"max_overlap", [&](auto& w, auto& v) { r.number(w, v, ex.max_overlap); }},
           {"ransac_iterations", [&](auto& w, auto& v) { r.integer(w, v, ex.ransac_iterations); }},
           {"seed", [&](auto& w, auto& v) { r.integer(w, v, ex.seed); }},
       }},
      {"bench",
       {
           {"sizes", [&](auto& w, auto& v) { r.sizes(w, v, bench.sizes); }},
           {"k", [&](auto& w, auto& v) { r.integer(w, v, bench.radius); }},
           {"lambda", [&](auto& w, auto& v) { r.number(w, v, bench.lambda); }},
           {"repetitions", [&](auto& w, auto& v) { r.integer(w, v, bench.repetitions); }},
           {"fw_max_nodes",
            [&](auto& w, auto& v) { r.integer(w, v, bench.floyd_warshall_max_nodes); }},
       }},
      {"run",
       {
           {"debug_dumps", [&](auto& w, auto& v) { r.boolean(w, v, c.debug_dumps); }},
       }},
  };
  dispatch(tree, sections, errors);
  throw_if_any(errors, "invalid run config");
  if (camera_inline) c.camera = camera;
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config file: " + path);
  return parse_run_config(in);
}

void write_run_config(std::ostream& out, const RunConfig& c) {
  const auto& grid = c.pipeline.grid;
  const auto& weights = c.pipeline.weights;
  const auto& canny = c.pipeline.canny;
  const auto& ex = c.pipeline.extraction;
  out << "[paths]\n"
      << "input = " << c.paths.input << "\n"
      << "camera = " << c.paths.camera << "\n"
      << "out = " << c.paths.out << "\n\n";
  if (c.camera) {
    out << "[camera]\n";
    write_camera_keys(out, *c.camera);
    out << "\n";
  }
  out << "[ipm]\n"
      << "x_range_m = " << fmt(grid.x_range_m) << "\n"
      << "y_range_m = " << fmt(grid.y_range_m) << "\n"
      << "y_start_m = " << fmt(grid.y_start_m) << "\n"
      << "out_width = " << grid.out_width << "\n"
      << "out_height = " << grid.out_height << "\n\n"
      << "[features]\n"
      << "w_e = " << fmt(weights.edge) << "\n"
      << "w_g = " << fmt(weights.gray) << "\n"
      << "canny_low = " << fmt(canny.low) << "\n"
      << "canny_high = " << fmt(canny.high) << "\n"
      << "canny_sigma = " << fmt(canny.sigma) << "\n"
      << "canny_kernel = " << canny.kernel_size << "\n\n"
      << "[extraction]\n"
      << "lambda = " << fmt(ex.lambda) << "\n"
      << "k = " << ex.radius << "\n"
      << "t_r = " << fmt(ex.residual_threshold) << "\n";
  if (ex.epsilon) out << "epsilon = " << fmt(*ex.epsilon) << "\n";
  out << "epsilon_per_step = " << fmt(ex.stop_cost_per_step) << "\n"
      << "max_lanes = " << ex.max_lanes << "\n"
      << "suppression_half_width = " << ex.suppression_half_width << "\n"
      << "min_inlier_ratio = " << fmt(ex.min_inlier_ratio) << "\n"
      << "max_overlap = " << fmt(ex.max_overlap) << "\n"
      << "ransac_iterations = " << ex.ransac_iterations << "\n"
      << "seed = " << ex.seed << "\n\n"
      << "[bench]\n"
      << "sizes = ";
  for (std::size_t i = 0; i < c.bench.sizes.size(); ++i) {
    out << (i ? "," : "") << c.bench.sizes[i].first << "x" << c.bench.sizes[i].second;
  }
  out << "\n"
      << "k = " << c.bench.radius << "\n"
      << "lambda = " << fmt(c.bench.lambda) << "\n"
      << "repetitions = " << c.bench.repetitions << "\n"
      << "fw_max_nodes = " << c.bench.floyd_warshall_max_nodes << "\n\n"
      << "[run]\n"
      << "debug_dumps = " << (c.debug_dumps ? "true" : "false") << "\n";
}

CameraConfig parse_camera_config(std::istream& in) {
  // A bare key=value file is read as if it were the body of [camera].
  std::stringstream wrapped;
  wrapped << "[camera]\n" << in.rdbuf();
  const pt::ptree tree = read_tree(wrapped);
  CameraConfig c;
  std::vector<std::string> errors;
  Reader r(errors);
  dispatch(tree, {{"camera", camera_section(r, c)}}, errors);
  c.collect_errors(errors);
  throw_if_any(errors, "invalid camera config");
  return c;
}

CameraConfig load_camera_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open camera config: " + path);
  return parse_camera_config(in);
}

void write_camera_config(std::ostream& out, const CameraConfig& camera) {
  write_camera_keys(out, camera);
}

CameraConfig resolve_camera(const RunConfig& config) {
  if (config.camera) return *config.camera;
  if (config.paths.camera.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "no camera given: set [camera] keys or a camera file");
  }
  if (!std::filesystem::exists(config.paths.camera)) {
    throw Error(ErrorCode::kIo, "camera config not found: " + config.paths.camera);
  }
  return load_camera_config(config.paths.camera);
}

geometry::CameraModel make_camera(const CameraConfig& camera, const cv::Mat* gray) {
  std::vector<std::string> errors;
  camera.collect_errors(errors);
  throw_if_any(errors, "invalid camera config");
  const geometry::CameraModel level(camera.intrinsics, camera.image_width, camera.image_height,
                                    camera.height_m, {});
  if (camera.pitch_rad && camera.yaw_rad) {
    return level.with_attitude({*camera.pitch_rad, *camera.yaw_rad});
  }
  std::optional<geometry::VanishingPoint> vp;
  if (camera.vp_u && camera.vp_v) {
    vp = geometry::VanishingPoint{*camera.vp_u, *camera.vp_v};
  } else if (gray && !gray->empty()) {
    vp = geometry::estimate_vanishing_point(*gray);
  }
  if (!vp) return level;
  return level.with_attitude(geometry::angles_from_vp(level, *vp));
}

}  // namespace lanegraph::harness
