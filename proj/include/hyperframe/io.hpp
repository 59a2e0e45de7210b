#pragma once

#include "hyperframe/focal.hpp"
#include "hyperframe/framedcurve.hpp"
#include "hyperframe/tolerances.hpp"

#include <array>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hyperframe {

struct ThetaWindow {
  double min = -3.0;
  double max = 3.0;
  std::size_t samples = 13;
};

struct CurveSpec {
  std::string name;
  std::array<std::string, 4> curvature;  // m, n, a, b
  Domain domain;
  ThetaWindow theta;
  std::optional<FrameSample> initial_frame;
  Tolerances tolerances;
  std::vector<std::string> outputs;
  // Canonical serialization, hashed into the report.
  std::string canonical;
};

// Known product names for CurveSpec::outputs.
const std::vector<std::string>& known_outputs();

CurveSpec parse_spec(std::string_view text);
CurveSpec load_spec(const std::filesystem::path& path);
std::string spec_digest(const CurveSpec& spec);

std::array<double, 3> project_poincare(const MinkVec& x);
std::array<double, 3> project_hollow_ball(const MinkVec& x);

enum class Projection { Poincare, HollowBall };

Projection projection_for(SurfaceKind kind);

// Shortest round-trip decimal; -0 prints as 0.
std::string format_number(double v);

// Each grid is a separate run: faces never connect two runs.
std::string obj_text(std::span<const SurfaceGrid> runs, Projection projection, const std::string& title);
void export_obj(const SurfaceGrid& grid, Projection projection, const std::filesystem::path& path);
void export_obj(std::span<const SurfaceGrid> runs, Projection projection, const std::filesystem::path& path,
                const std::string& title);

std::string csv_field(const std::string& s);
std::string loci_csv_text(std::vector<SingularPointRecord> records);
void export_loci_csv(const std::vector<SingularPointRecord>& records, const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace hyperframe
