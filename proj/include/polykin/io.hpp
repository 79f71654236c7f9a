#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "polykin/field.hpp"
#include "polykin/moments.hpp"
#include "polykin/stepper.hpp"

namespace polykin {

/// Binary field snapshot, all integers and reals little-endian:
///
///   offset  size  content
///        0     8  magic "POLYKIN1"
///        8     4  uint32 format version (1)
///       12     4  uint32 n_x
///       16     4  uint32 n_v (per axis)
///       20     4  uint32 n_i
///       24     8  float64 v_max
///       32     8  float64 i_max
///       40     8  float64 delta
///       48     8  float64 q
///       56     8  float64 time
///       64   8 N  float64 values, N = n_x n_v^3 n_i, order (i, j1, j2, j3, k)
struct SnapshotFile {
  DistField field;
  double q = 0.0;
  double time = 0.0;
};

inline constexpr char kSnapshotMagic[8] = {'P', 'O', 'L', 'Y', 'K', 'I', 'N', '1'};
inline constexpr std::uint32_t kSnapshotVersion = 1;

void write_snapshot(std::ostream& os, const DistField& field, double q, double time);
void write_snapshot(const std::filesystem::path& path, const DistField& field, double q,
                    double time);
SnapshotFile read_snapshot(std::istream& is);
SnapshotFile read_snapshot(const std::filesystem::path& path);

/// Header of the macroscopic CSV.
inline constexpr const char* kMacroCsvHeader = "time,x,rho,u1,u2,u3,t_tr,t_int,t_delta,t_theta";
/// One row per spatial node.
void write_macro_rows(std::ostream& os, double time, const PhaseGrid& grid,
                      const MacroFields& macro);

/// Header of the step-report CSV. The momentum defect column is the
/// Euclidean norm of the momentum change.
inline constexpr const char* kStepCsvHeader =
    "time,mass,momentum1,momentum2,momentum3,energy,defect_mass,defect_momentum,defect_energy,"
    "entropy,norm_q";
void write_step_row(std::ostream& os, const StepReport& report);

} // namespace polykin
