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

#include "lanegraph/harness/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include <Eigen/Dense>
#include <opencv2/imgproc.hpp>

#include "json.hpp"
#include "lanegraph/error.hpp"
#include "lanegraph/harness/records.hpp"

namespace lanegraph::harness {
namespace {

using nlohmann::json;

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Lattice value in [-1, 1].
double lattice(std::int64_t ix, std::int64_t iy, std::uint64_t seed) {
  const std::uint64_t h = splitmix(seed ^ (static_cast<std::uint64_t>(ix) * 0x9e3779b97f4a7c15ULL) ^
                                   (static_cast<std::uint64_t>(iy) * 0xc2b2ae3d27d4eb4fULL));
  return static_cast<double>(h >> 11) * (2.0 / 9007199254740992.0) - 1.0;
}

double value_noise(double x, double y, double cell, std::uint64_t seed) {
  const double gx = x / cell;
  const double gy = y / cell;
  const double fx = std::floor(gx);
  const double fy = std::floor(gy);
  const auto ix = static_cast<std::int64_t>(fx);
  const auto iy = static_cast<std::int64_t>(fy);
  const double tx = gx - fx;
  const double ty = gy - fy;
  const double a = lattice(ix, iy, seed) * (1 - tx) + lattice(ix + 1, iy, seed) * tx;
  const double b = lattice(ix, iy + 1, seed) * (1 - tx) + lattice(ix + 1, iy + 1, seed) * tx;
  return a * (1 - ty) + b * ty;
}

double smoothstep(double e0, double e1, double x) {
  const double t = std::clamp((x - e0) / (e1 - e0), 0.0, 1.0);
  return t * t * (3.0 - 2.0 * t);
}

constexpr double kFarLimitM = 300.0;
constexpr double kShadowSoftnessM = 0.08;

class Shader {
 public:
  explicit Shader(const SceneSpec& spec) : spec_(spec) {}

  double texture(double x, double y) const {
    return spec_.texture_amplitude * (0.7 * value_noise(x, y, 0.35, spec_.seed) +
                                      0.3 * value_noise(x, y, 0.09, spec_.seed + 1));
  }

  cv::Vec3d ground(double x, double y, double tex) const {
    const double base = spec_.asphalt + tex;
    cv::Vec3d color(base, base, base);
    for (const auto& lane : spec_.lanes) {
      const double centre = lane.ground(y);
      const double slope = lane.ground.slope(y);
      const double d = std::abs(x - centre) / std::sqrt(1.0 + slope * slope);
      if (d > 0.5 * lane.width_m || !dash_on(lane, y)) continue;
      const double m = spec_.marking + 0.5 * tex;
      color = lane.yellow ? cv::Vec3d(0.3 * m, 0.9 * m, m) : cv::Vec3d(m, m, m);
    }
    for (const auto& band : spec_.shadows) {
      const double dist = std::abs(-std::sin(band.angle_rad) * x +
                                   std::cos(band.angle_rad) * (y - band.y_center_m));
      const double inside = 1.0 - smoothstep(0.5 * band.width_m - kShadowSoftnessM,
                                             0.5 * band.width_m + kShadowSoftnessM, dist);
      color *= 1.0 - inside * (1.0 - band.darkness);
    }
    return color;
  }

  static cv::Vec3d sky(double elevation) {
    const double t = std::clamp(elevation * 3.0, 0.0, 1.0);
    return cv::Vec3d(225, 205, 185) * (1.0 - t) + cv::Vec3d(240, 190, 150) * t;
  }

 private:
  static bool dash_on(const PlantedLane& lane, double y) {
    if (lane.dash_m <= 0.0) return true;
    const double period = lane.dash_m + lane.gap_m;
    double phase = std::fmod(y + lane.dash_phase_m, period);
    if (phase < 0) phase += period;
    return phase < lane.dash_m;
  }

  const SceneSpec& spec_;
};

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where,
                std::vector<std::string>& errors) {
  if (!j.is_object()) {
    errors.push_back(where + " must be an object");
    return;
  }
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) errors.push_back(where + ": unknown key '" + key + "'");
  }
}

json parabola_json(const geometry::Parabola& p) { return json::array({p.c2, p.c1, p.c0}); }

geometry::Parabola parabola_of(const json& j) {
  if (!j.is_array() || j.size() != 3) throw json::type_error::create(302, "expected [c2, c1, c0]", &j);
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

void throw_spec_errors(const std::vector<std::string>& errors) {
  if (errors.empty()) return;
  std::string message = "invalid scene spec: " + std::to_string(errors.size()) + " problem(s)";
  for (const auto& e : errors) message += "\n  " + e;
  throw Error(ErrorCode::kInvalidSpec, message);
}

cv::Mat truth_mask(const geometry::CameraModel& camera, const geometry::IpmGrid& grid) {
  const cv::Mat coverage = geometry::ipm_coverage(camera, grid);
  cv::Mat inner;
  const int side = 2 * kTruthMargin + 1;
  cv::erode(coverage != 0, inner, cv::getStructuringElement(cv::MORPH_RECT, {side, side}),
            {-1, -1}, 1, cv::BORDER_CONSTANT, cv::Scalar(255));
  return inner;
}

TruthLane truth_lane_with_mask(const geometry::Parabola& ground, const cv::Mat& mask,
                               const geometry::IpmGrid& grid, int radius) {
  TruthLane lane;
  lane.ground = ground;
  lane.ipm = geometry::ground_to_graph(grid, ground);
  const auto visible = [&](int v) {
    const double u = lane.ipm(v);
    if (!(u >= 1.0 && u <= grid.out_width)) return false;
    const int col = std::clamp(static_cast<int>(std::lround(u)) - 1, 0, grid.out_width - 1);
    return mask.at<std::uint8_t>(grid.out_height - v, col) != 0;
  };
  int run_start = 0;
  for (int v = 1; v <= grid.out_height + 1; ++v) {
    const bool on = v <= grid.out_height && visible(v);
    if (on && !run_start) run_start = v;
    if (!on && run_start) {
      lane.valid_rows.emplace_back(run_start, v - 1);
      run_start = 0;
    }
  }
  for (const auto& [first, last] : lane.valid_rows) {
    for (int v = first; v < last; ++v) {
      lane.max_step_px = std::max(lane.max_step_px, std::abs(lane.ipm(v + 1) - lane.ipm(v)));
    }
  }
  lane.expected_failure = lane.max_step_px > radius;
  return lane;
}

class SuiteRng {
 public:
  SuiteRng(std::uint64_t seed, int index)
      : engine_(splitmix(seed ^ splitmix(static_cast<std::uint64_t>(index) + 0x51ed2705ULL))) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  double sign() { return integer(0, 1) ? 1.0 : -1.0; }
  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

CameraConfig suite_camera(SuiteRng& rng) {
  CameraConfig c;
  c.intrinsics = {960.0, 960.0, 640.0, 480.0};
  c.image_width = 1280;
  c.image_height = 960;
  c.height_m = rng.uniform(1.5, 1.8);
  c.pitch_rad = rng.uniform(0.02, 0.06);
  c.yaw_rad = rng.uniform(-0.02, 0.02);
  return c;
}

void add_stressors(SceneSpec& s, SuiteRng& rng, int variant) {
  if (variant == 1 || variant == 3) {
    const int bands = rng.integer(1, 2);
    for (int b = 0; b < bands; ++b) {
      s.shadows.push_back({rng.uniform(8.0, 30.0), rng.uniform(-0.6, 0.6), rng.uniform(1.0, 3.0),
                           rng.uniform(0.55, 0.75)});
    }
  }
  if (variant == 2 || variant == 3) {
    const int blobs = rng.integer(1, 2);
    for (int b = 0; b < blobs; ++b) {
      s.occluders.push_back({rng.uniform(200.0, 1080.0), rng.uniform(680.0, 940.0),
                             rng.uniform(16.0, 36.0), rng.uniform(12.0, 28.0),
                             rng.uniform(30.0, 90.0)});
    }
  }
}

void add_photometry(SceneSpec& s, SuiteRng& rng) {
  s.asphalt = rng.uniform(80.0, 110.0);
  s.marking = rng.uniform(190.0, 225.0);
  s.exposure_gain = rng.uniform(0.9, 1.25);
  s.noise_sigma = rng.uniform(1.0, 3.0);
  s.seed = rng.bits();
}

std::string scene_name(const char* prefix, int index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s_%03d", prefix, index);
  return buf;
}

SceneSpec standard_scene(std::uint64_t seed, int i) {
  SuiteRng rng(seed, i);
  SceneSpec s;
  s.name = scene_name("std", i);
  s.camera = suite_camera(rng);
  const bool curved = i % 2 == 1;
  const double c2 = curved ? rng.sign() * rng.uniform(0.001, 0.0025) : 0.0;
  // Lanes leave the camera parallel to world +Y, the direction whose
  // vanishing point goes into the camera file.
  const double c1 = 0.0;
  const double width = rng.uniform(3.3, 3.7);
  const double offset = rng.uniform(-0.3, 0.3);
  PlantedLane left{{c2, c1, -0.5 * width + offset}, rng.uniform(0.10, 0.15)};
  left.yellow = i % 5 == 0;
  PlantedLane right{{c2, c1, 0.5 * width + offset}, rng.uniform(0.10, 0.15)};
  if (i % 2 == 0) {
    right.dash_m = 4.0;
    right.gap_m = 2.0;
    right.dash_phase_m = rng.uniform(0.0, 6.0);
  }
  s.lanes = {left, right};
  if (i % 3 == 0) {
    const double side = rng.sign();
    PlantedLane outer{{c2, c1, side * 1.5 * width + offset}, rng.uniform(0.10, 0.15), 4.0, 2.0,
                      rng.uniform(0.0, 6.0)};
    s.lanes.push_back(outer);
  }
  add_stressors(s, rng, i % 4);
  add_photometry(s, rng);
  return s;
}

SceneSpec empty_scene(std::uint64_t seed, int i) {
  SuiteRng rng(seed, i);
  SceneSpec s;
  s.name = scene_name("empty", i);
  s.camera = suite_camera(rng);
  add_stressors(s, rng, i % 4);
  add_photometry(s, rng);
  return s;
}

SceneSpec curvature_scene(std::uint64_t seed, int i, int count) {
  SuiteRng rng(seed, i);
  SceneSpec s;
  s.name = scene_name("curve", i);
  s.camera = suite_camera(rng);
  // Log sweep of the ground curvature a in X = a (Y - Y0)^2 + X0.
  const double t = count > 1 ? static_cast<double>(i) / (count - 1) : 1.0;
  const double a = rng.sign() * 0.2 * std::pow(10.0, t);
  const double y0 = rng.uniform(12.0, 24.0);
  const double x0 = rng.uniform(-1.0, 1.0);
  const double width = rng.uniform(3.3, 3.7);
  for (const double side : {-0.5, 0.5}) {
    s.lanes.push_back(
        {{a, -2.0 * a * y0, a * y0 * y0 + x0 + side * width}, rng.uniform(0.10, 0.15)});
  }
  add_photometry(s, rng);
  return s;
}

}  // namespace

void SceneSpec::validate() const {
  std::vector<std::string> errors;
  camera.collect_errors(errors);
  if (name.empty() || name.find_first_of("/\\") != std::string::npos) {
    errors.push_back("name must be a non-empty file stem");
  }
  for (std::size_t i = 0; i < lanes.size(); ++i) {
    const auto& l = lanes[i];
    const std::string where = "lane " + std::to_string(i);
    if (!(l.width_m > 0.0)) errors.push_back(where + ": width_m must be positive");
    if (!(l.dash_m >= 0.0) || !(l.gap_m >= 0.0)) {
      errors.push_back(where + ": dash_m and gap_m must be non-negative");
    }
    if (!std::isfinite(l.ground.c2) || !std::isfinite(l.ground.c1) || !std::isfinite(l.ground.c0)) {
      errors.push_back(where + ": coefficients must be finite");
    }
  }
  for (std::size_t i = 0; i < shadows.size(); ++i) {
    const auto& b = shadows[i];
    const std::string where = "shadow " + std::to_string(i);
    if (!(b.width_m > 0.0)) errors.push_back(where + ": width_m must be positive");
    if (!(b.darkness > 0.0 && b.darkness <= 1.0)) errors.push_back(where + ": darkness must be in (0, 1]");
  }
  for (std::size_t i = 0; i < occluders.size(); ++i) {
    const auto& o = occluders[i];
    const std::string where = "occluder " + std::to_string(i);
    if (!(o.radius_u > 0.0 && o.radius_v > 0.0)) errors.push_back(where + ": radii must be positive");
    if (!(o.gray >= 0.0 && o.gray <= 255.0)) errors.push_back(where + ": gray must be in [0, 255]");
  }
  if (!(asphalt >= 0.0 && asphalt <= 255.0)) errors.push_back("asphalt must be in [0, 255]");
  if (!(marking >= 0.0 && marking <= 255.0)) errors.push_back("marking must be in [0, 255]");
  if (!(texture_amplitude >= 0.0)) errors.push_back("texture_amplitude must be non-negative");
  if (!(exposure_gain > 0.0)) errors.push_back("exposure_gain must be positive");
  if (!(noise_sigma >= 0.0)) errors.push_back("noise_sigma must be non-negative");
  if (supersample < 1 || supersample > 8) errors.push_back("supersample must be in [1, 8]");
  throw_spec_errors(errors);
}

std::size_t TruthLane::valid_row_count() const {
  std::size_t n = 0;
  for (const auto& [first, last] : valid_rows) n += static_cast<std::size_t>(last - first + 1);
  return n;
}

bool TruthLane::valid(int v) const {
  return std::any_of(valid_rows.begin(), valid_rows.end(),
                     [v](const auto& r) { return v >= r.first && v <= r.second; });
}

geometry::CameraModel scene_camera(const SceneSpec& spec) {
  const auto& c = spec.camera;
  return geometry::CameraModel(c.intrinsics, c.image_width, c.image_height, c.height_m,
                               {c.pitch_rad.value_or(0.0), c.yaw_rad.value_or(0.0)});
}

CameraConfig scene_camera_config(const SceneSpec& spec) {
  CameraConfig c = spec.camera;
  const auto vp =
      geometry::vanishing_point_of_world_direction(scene_camera(spec), Eigen::Vector3d::UnitY());
  c.vp_u = vp.u;
  c.vp_v = vp.v;
  c.pitch_rad.reset();
  c.yaw_rad.reset();
  return c;
}

TruthLane make_truth_lane(const geometry::Parabola& ground, const geometry::CameraModel& camera,
                          const geometry::IpmGrid& grid, int radius) {
  return truth_lane_with_mask(ground, truth_mask(camera, grid), grid, radius);
}

GroundTruth make_ground_truth(const std::string& name, const std::vector<geometry::Parabola>& ground,
                              const geometry::CameraModel& camera, const geometry::IpmGrid& grid,
                              int radius) {
  GroundTruth truth{name, grid, radius, {}};
  const cv::Mat mask = truth_mask(camera, grid);
  for (const auto& g : ground) truth.lanes.push_back(truth_lane_with_mask(g, mask, grid, radius));
  return truth;
}

cv::Mat render_scene(const SceneSpec& spec) {
  spec.validate();
  const geometry::CameraModel camera = scene_camera(spec);
  const Eigen::Matrix3d back = camera.rotation().transpose() * camera.K().inverse();
  const double h = camera.height();
  const Shader shader(spec);
  const int w = camera.image_width();
  const int ht = camera.image_height();
  const int s = spec.supersample;

  cv::Mat radiance(ht, w, CV_64FC3);
  cv::parallel_for_(cv::Range(0, ht), [&](const cv::Range& rows) {
  for (int row = rows.start; row < rows.end; ++row) {
    auto* dst = radiance.ptr<cv::Vec3d>(row);
    for (int col = 0; col < w; ++col) {
      cv::Vec3d acc(0, 0, 0);
      // Texture is smooth at pixel scale and is sampled once per pixel.
      std::optional<double> tex;
      const Eigen::Vector3d centre = back * Eigen::Vector3d(col, row, 1.0);
      if (centre.z() < 0.0) {
        const double t = h / -centre.z();
        tex = shader.texture(t * centre.x(), t * centre.y());
      }
      const bool sky_only =
          (back * Eigen::Vector3d(col - 0.5, row + 0.5, 1.0)).z() > 0.0 &&
          (back * Eigen::Vector3d(col + 0.5, row + 0.5, 1.0)).z() > 0.0 &&
          (back * Eigen::Vector3d(col - 0.5, row - 0.5, 1.0)).z() > 0.0 &&
          (back * Eigen::Vector3d(col + 0.5, row - 0.5, 1.0)).z() > 0.0 &&
          std::none_of(spec.occluders.begin(), spec.occluders.end(), [&](const Occluder& o) {
            return std::abs(row - o.v) <= o.radius_v + 1.0 && std::abs(col - o.u) <= o.radius_u + 1.0;
          });
      if (sky_only) {
        dst[col] = Shader::sky(std::atan2(centre.z(), std::hypot(centre.x(), centre.y())));
        continue;
      }
      for (int sy = 0; sy < s; ++sy) {
        for (int sx = 0; sx < s; ++sx) {
          const double x = col + (sx + 0.5) / s - 0.5;
          const double y = row + (sy + 0.5) / s - 0.5;
          const Eigen::Vector3d d = back * Eigen::Vector3d(x, y, 1.0);
          const Occluder* hit = nullptr;
          for (const auto& o : spec.occluders) {
            const double du = (x - o.u) / o.radius_u;
            const double dv = (y - o.v) / o.radius_v;
            if (du * du + dv * dv <= 1.0) hit = &o;
          }
          if (hit) {
            acc += cv::Vec3d(hit->gray, hit->gray, hit->gray);
          } else if (d.z() < 0.0 && h / -d.z() * std::hypot(d.x(), d.y()) < kFarLimitM) {
            const double t = h / -d.z();
            const double gx = t * d.x();
            const double gy = t * d.y();
            acc += shader.ground(gx, gy, tex ? *tex : shader.texture(gx, gy));
          } else if (d.z() < 0.0) {
            acc += cv::Vec3d(140, 140, 140);
          } else {
            acc += Shader::sky(std::atan2(d.z(), std::hypot(d.x(), d.y())));
          }
        }
      }
      dst[col] = acc * (1.0 / (s * s));
    }
  }
  });

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> noise(0.0, spec.noise_sigma);
  cv::Mat out(ht, w, CV_8UC3);
  for (int row = 0; row < ht; ++row) {
    const auto* src = radiance.ptr<cv::Vec3d>(row);
    auto* dst = out.ptr<cv::Vec3b>(row);
    for (int col = 0; col < w; ++col) {
      const double n = spec.noise_sigma > 0.0 ? noise(rng) : 0.0;
      for (int ch = 0; ch < 3; ++ch) {
        dst[col][ch] = cv::saturate_cast<std::uint8_t>(src[col][ch] * spec.exposure_gain + n);
      }
    }
  }
  return out;
}

std::string scene_to_json(const SceneSpec& spec) {
  const auto& c = spec.camera;
  json cam = {{"fx", c.intrinsics.fx},   {"fy", c.intrinsics.fy},
              {"cu", c.intrinsics.cu},   {"cv", c.intrinsics.cv},
              {"image_width", c.image_width}, {"image_height", c.image_height},
              {"height_m", c.height_m}};
  if (c.pitch_rad) cam["pitch_rad"] = *c.pitch_rad;
  if (c.yaw_rad) cam["yaw_rad"] = *c.yaw_rad;
  json lanes = json::array();
  for (const auto& l : spec.lanes) {
    lanes.push_back({{"ground", parabola_json(l.ground)},
                     {"width_m", l.width_m},
                     {"dash_m", l.dash_m},
                     {"gap_m", l.gap_m},
                     {"dash_phase_m", l.dash_phase_m},
                     {"yellow", l.yellow}});
  }
  json shadows = json::array();
  for (const auto& b : spec.shadows) {
    shadows.push_back({{"y_center_m", b.y_center_m},
                       {"angle_rad", b.angle_rad},
                       {"width_m", b.width_m},
                       {"darkness", b.darkness}});
  }
  json occluders = json::array();
  for (const auto& o : spec.occluders) {
    occluders.push_back({{"u", o.u}, {"v", o.v}, {"radius_u", o.radius_u},
                         {"radius_v", o.radius_v}, {"gray", o.gray}});
  }
  const json j = {{"name", spec.name},
                  {"camera", cam},
                  {"lanes", lanes},
                  {"asphalt", spec.asphalt},
                  {"marking", spec.marking},
                  {"texture_amplitude", spec.texture_amplitude},
                  {"exposure_gain", spec.exposure_gain},
                  {"noise_sigma", spec.noise_sigma},
                  {"shadows", shadows},
                  {"occluders", occluders},
                  {"supersample", spec.supersample},
                  {"seed", spec.seed}};
  return j.dump(2) + "\n";
}

SceneSpec scene_from_json(const std::string& text) {
  SceneSpec s;
  std::vector<std::string> errors;
  try {
    const json j = json::parse(text);
    check_keys(j,
               {"name", "camera", "lanes", "asphalt", "marking", "texture_amplitude",
                "exposure_gain", "noise_sigma", "shadows", "occluders", "supersample", "seed"},
               "scene", errors);
    s.name = j.value("name", s.name);
    if (j.contains("camera")) {
      const json& c = j["camera"];
      check_keys(c, {"fx", "fy", "cu", "cv", "image_width", "image_height", "height_m",
                     "pitch_rad", "yaw_rad"},
                 "camera", errors);
      s.camera.intrinsics = {c.value("fx", 0.0), c.value("fy", 0.0), c.value("cu", 0.0),
                             c.value("cv", 0.0)};
      s.camera.image_width = c.value("image_width", 0);
      s.camera.image_height = c.value("image_height", 0);
      s.camera.height_m = c.value("height_m", 0.0);
      if (c.contains("pitch_rad")) s.camera.pitch_rad = c["pitch_rad"].get<double>();
      if (c.contains("yaw_rad")) s.camera.yaw_rad = c["yaw_rad"].get<double>();
    } else {
      errors.push_back("camera is required");
    }
    for (const auto& l : j.value("lanes", json::array())) {
      check_keys(l, {"ground", "width_m", "dash_m", "gap_m", "dash_phase_m", "yellow"}, "lane",
                 errors);
      PlantedLane lane;
      if (!l.contains("ground")) {
        errors.push_back("lane: ground coefficients are required");
        continue;
      }
      lane.ground = parabola_of(l["ground"]);
      lane.width_m = l.value("width_m", lane.width_m);
      lane.dash_m = l.value("dash_m", lane.dash_m);
      lane.gap_m = l.value("gap_m", lane.gap_m);
      lane.dash_phase_m = l.value("dash_phase_m", lane.dash_phase_m);
      lane.yellow = l.value("yellow", lane.yellow);
      s.lanes.push_back(lane);
    }
    for (const auto& b : j.value("shadows", json::array())) {
      check_keys(b, {"y_center_m", "angle_rad", "width_m", "darkness"}, "shadow", errors);
      ShadowBand band;
      band.y_center_m = b.value("y_center_m", band.y_center_m);
      band.angle_rad = b.value("angle_rad", band.angle_rad);
      band.width_m = b.value("width_m", band.width_m);
      band.darkness = b.value("darkness", band.darkness);
      s.shadows.push_back(band);
    }
    for (const auto& o : j.value("occluders", json::array())) {
      check_keys(o, {"u", "v", "radius_u", "radius_v", "gray"}, "occluder", errors);
      Occluder occ;
      occ.u = o.value("u", occ.u);
      occ.v = o.value("v", occ.v);
      occ.radius_u = o.value("radius_u", occ.radius_u);
      occ.radius_v = o.value("radius_v", occ.radius_v);
      occ.gray = o.value("gray", occ.gray);
      s.occluders.push_back(occ);
    }
    s.asphalt = j.value("asphalt", s.asphalt);
    s.marking = j.value("marking", s.marking);
    s.texture_amplitude = j.value("texture_amplitude", s.texture_amplitude);
    s.exposure_gain = j.value("exposure_gain", s.exposure_gain);
    s.noise_sigma = j.value("noise_sigma", s.noise_sigma);
    s.supersample = j.value("supersample", s.supersample);
    s.seed = j.value("seed", s.seed);
  } catch (const json::exception& e) {
    errors.push_back(e.what());
  }
  throw_spec_errors(errors);
  s.validate();
  return s;
}

std::string truth_to_json(const GroundTruth& truth) {
  json lanes = json::array();
  for (const auto& l : truth.lanes) {
    json rows = json::array();
    for (const auto& [first, last] : l.valid_rows) rows.push_back({first, last});
    lanes.push_back({{"ground", parabola_json(l.ground)},
                     {"ipm", parabola_json(l.ipm)},
                     {"valid_rows", rows},
                     {"max_step_px", l.max_step_px},
                     {"expected_failure", l.expected_failure}});
  }
  const auto& g = truth.grid;
  const json j = {{"name", truth.name},
                  {"grid",
                   {{"x_range_m", g.x_range_m},
                    {"y_range_m", g.y_range_m},
                    {"y_start_m", g.y_start_m},
                    {"out_width", g.out_width},
                    {"out_height", g.out_height}}},
                  {"k", truth.radius},
                  {"lanes", lanes}};
  return j.dump(2) + "\n";
}

GroundTruth truth_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    GroundTruth t;
    t.name = j.at("name").get<std::string>();
    const json& g = j.at("grid");
    t.grid = {g.at("x_range_m").get<double>(), g.at("y_range_m").get<double>(),
              g.at("y_start_m").get<double>(), g.at("out_width").get<int>(),
              g.at("out_height").get<int>()};
    t.radius = j.at("k").get<int>();
    for (const auto& l : j.at("lanes")) {
      TruthLane lane;
      lane.ground = parabola_of(l.at("ground"));
      lane.ipm = parabola_of(l.at("ipm"));
      for (const auto& r : l.at("valid_rows")) {
        lane.valid_rows.emplace_back(r.at(0).get<int>(), r.at(1).get<int>());
      }
      lane.max_step_px = l.at("max_step_px").get<double>();
      lane.expected_failure = l.at("expected_failure").get<bool>();
      t.lanes.push_back(std::move(lane));
    }
    return t;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("ground truth: ") + e.what());
  }
}

SuiteKind parse_suite_kind(const std::string& name) {
  if (name == "standard") return SuiteKind::kStandard;
  if (name == "empty") return SuiteKind::kEmpty;
  if (name == "curvature" || name == "high-curvature") return SuiteKind::kHighCurvature;
  throw Error(ErrorCode::kInvalidConfig,
              "unknown suite '" + name + "' (expected standard, empty or curvature)");
}

std::vector<SceneSpec> generate_suite(SuiteKind kind, int count, std::uint64_t seed) {
  if (count < 0) throw Error(ErrorCode::kInvalidConfig, "suite count must be non-negative");
  std::vector<SceneSpec> suite;
  suite.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    switch (kind) {
      case SuiteKind::kStandard: suite.push_back(standard_scene(seed, i)); break;
      case SuiteKind::kEmpty: suite.push_back(empty_scene(seed, i)); break;
      case SuiteKind::kHighCurvature: suite.push_back(curvature_scene(seed, i, count)); break;
    }
  }
  return suite;
}

void write_scene(const std::filesystem::path& dir, const SceneSpec& spec,
                 const geometry::IpmGrid& grid, int radius) {
  const cv::Mat image = render_scene(spec);
  std::vector<geometry::Parabola> ground;
  for (const auto& l : spec.lanes) ground.push_back(l.ground);
  const GroundTruth truth = make_ground_truth(spec.name, ground, scene_camera(spec), grid, radius);
  std::ostringstream camera;
  write_camera_config(camera, scene_camera_config(spec));

  std::filesystem::create_directories(dir);
  write_image_atomic(dir / (spec.name + ".png"), image);
  write_file_atomic(dir / (spec.name + ".camera.ini"), camera.str());
  write_file_atomic(dir / (spec.name + ".truth.json"), truth_to_json(truth));
  write_file_atomic(dir / (spec.name + ".scene.json"), scene_to_json(spec));
}

}  // namespace lanegraph::harness
