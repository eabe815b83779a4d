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

#include "lanegraph/harness/records.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include "lanegraph/error.hpp"
#include "lanegraph/graph/grid_io.hpp"

namespace lanegraph::harness {
namespace {

std::string fmt(double x) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ec == std::errc() ? end : buf);
}

double parse_double(const std::string& s) {
  double value = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || end != s.data() + s.size()) {
    throw Error(ErrorCode::kParse, "not a number: '" + s + "'");
  }
  return value;
}

cv::Mat unit_to_u8(const cv::Mat& unit) {
  cv::Mat out;
  unit.convertTo(out, CV_8U, 255.0);
  return out;
}

}  // namespace

void write_lane_records(std::ostream& out, const std::vector<lanes::LaneModel>& lanes) {
  out << kLaneRecordHeader << "\n";
  for (std::size_t i = 0; i < lanes.size(); ++i) {
    const auto& lane = lanes[i];
    out << i << "," << fmt(lane.coefficients.c2) << "," << fmt(lane.coefficients.c1) << ","
        << fmt(lane.coefficients.c0) << "," << fmt(lane.inlier_ratio) << ","
        << fmt(lane.path_cost) << "\n";
  }
}

std::vector<LaneRecord> read_lane_records(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kLaneRecordHeader) {
    throw Error(ErrorCode::kParse, "lane records: missing header");
  }
  std::vector<LaneRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 6) throw Error(ErrorCode::kParse, "lane records: bad row '" + line + "'");
    LaneRecord r;
    r.lane_id = static_cast<int>(parse_double(fields[0]));
    r.coefficients = {parse_double(fields[1]), parse_double(fields[2]), parse_double(fields[3])};
    r.inlier_ratio = parse_double(fields[4]);
    r.path_cost = parse_double(fields[5]);
    records.push_back(r);
  }
  return records;
}

void write_polylines(std::ostream& out, const std::string& frame_id,
                     const std::vector<std::vector<cv::Point2d>>& polylines) {
  out << kPolylineHeader << "\n";
  for (std::size_t lane = 0; lane < polylines.size(); ++lane) {
    for (const auto& p : polylines[lane]) {
      out << frame_id << "," << lane << "," << fmt(p.x) << "," << fmt(p.y) << "\n";
    }
  }
}

cv::Mat render_overlay(const cv::Mat& image,
                       const std::vector<std::vector<cv::Point2d>>& polylines) {
  cv::Mat canvas;
  if (image.channels() == 1) {
    cv::cvtColor(image, canvas, cv::COLOR_GRAY2BGR);
  } else if (image.channels() == 4) {
    cv::cvtColor(image, canvas, cv::COLOR_BGRA2BGR);
  } else {
    canvas = image.clone();
  }
  for (const auto& line : polylines) {
    if (line.size() < 2) continue;
    std::vector<cv::Point> pts;
    pts.reserve(line.size());
    for (const auto& p : line) pts.emplace_back(cvRound(p.x), cvRound(p.y));
    cv::polylines(canvas, pts, false, cv::Scalar(0, 0, 255), 2, cv::LINE_8);
  }
  return canvas;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::kIo, "write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot rename onto " + path.string() + ": " + ec.message());
}

void write_image_atomic(const std::filesystem::path& path, const cv::Mat& image) {
  std::vector<uchar> buf;
  const std::string ext = path.extension().string();
  bool ok = false;
  try {
    ok = cv::imencode(ext, image, buf);
  } catch (const cv::Exception& e) {
    throw Error(ErrorCode::kIo, "cannot encode " + path.string() + ": " + e.what());
  }
  if (!ok) throw Error(ErrorCode::kIo, "cannot encode " + path.string());
  write_file_atomic(path, std::string(buf.begin(), buf.end()));
}

void write_debug_dumps(const std::filesystem::path& dir, const std::string& stem,
                       const lanes::PipelineArtifacts& artifacts, int radius) {
  write_image_atomic(dir / (stem + ".ipm.pgm"), artifacts.ipm);
  write_image_atomic(dir / (stem + ".edge.pgm"), artifacts.features.edge * 255);
  write_image_atomic(dir / (stem + ".gray.pgm"), unit_to_u8(artifacts.features.gray));
  write_image_atomic(dir / (stem + ".fused.pgm"), unit_to_u8(artifacts.features.fused));
  std::ostringstream cost;
  graph::write_fixture(cost, {artifacts.cost, radius});
  write_file_atomic(dir / (stem + ".cost.txt"), cost.str());
}

}  // namespace lanegraph::harness
