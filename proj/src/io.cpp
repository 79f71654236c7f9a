#include "polykin/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "io_format.hpp"
#include "polykin/errors.hpp"

namespace polykin {

namespace {

template <class T>
void put(std::ostream& os, T value) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big)
    for (std::size_t n = 0; n < sizeof(T) / 2; ++n) std::swap(bytes[n], bytes[sizeof(T) - 1 - n]);
  os.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <class T>
T get(std::istream& is) {
  unsigned char bytes[sizeof(T)];
  if (!is.read(reinterpret_cast<char*>(bytes), sizeof(T)))
    throw InvalidConfig("snapshot is truncated");
  if constexpr (std::endian::native == std::endian::big)
    for (std::size_t n = 0; n < sizeof(T) / 2; ++n) std::swap(bytes[n], bytes[sizeof(T) - 1 - n]);
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

} // namespace

void write_snapshot(std::ostream& os, const DistField& field, double q, double time) {
  const PhaseGrid& g = field.grid();
  os.write(kSnapshotMagic, sizeof(kSnapshotMagic));
  put<std::uint32_t>(os, kSnapshotVersion);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(g.n_x()));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(g.n_v()));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(g.n_i()));
  put<double>(os, g.v_max());
  put<double>(os, g.i_max());
  put<double>(os, g.delta());
  put<double>(os, q);
  put<double>(os, time);
  if constexpr (std::endian::native == std::endian::little) {
    const auto v = field.values();
    os.write(reinterpret_cast<const char*>(v.data()),
             static_cast<std::streamsize>(v.size() * sizeof(double)));
  } else {
    for (double x : field.values()) put<double>(os, x);
  }
  if (!os) throw InvalidConfig("failed to write snapshot");
}

void write_snapshot(const std::filesystem::path& path, const DistField& field, double q,
                    double time) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InvalidConfig("cannot open " + path.string() + " for writing");
  write_snapshot(os, field, q, time);
}

SnapshotFile read_snapshot(std::istream& is) {
  char magic[sizeof(kSnapshotMagic)];
  if (!is.read(magic, sizeof(magic)) || std::memcmp(magic, kSnapshotMagic, sizeof(magic)) != 0)
    throw InvalidConfig("not a polykin snapshot");
  if (get<std::uint32_t>(is) != kSnapshotVersion)
    throw InvalidConfig("unsupported snapshot version");
  GridConfig config;
  config.n_x = get<std::uint32_t>(is);
  config.n_v = get<std::uint32_t>(is);
  config.n_i = get<std::uint32_t>(is);
  config.v_max = get<double>(is);
  config.i_max = get<double>(is);
  config.delta = get<double>(is);
  SnapshotFile out;
  out.q = get<double>(is);
  out.time = get<double>(is);
  out.field = DistField(build_grid(config));
  auto values = out.field.values();
  if constexpr (std::endian::native == std::endian::little) {
    if (!is.read(reinterpret_cast<char*>(values.data()),
                 static_cast<std::streamsize>(values.size() * sizeof(double))))
      throw InvalidConfig("snapshot is truncated");
  } else {
    for (double& x : values) x = get<double>(is);
  }
  return out;
}

SnapshotFile read_snapshot(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InvalidConfig("cannot open " + path.string());
  return read_snapshot(is);
}

void write_macro_rows(std::ostream& os, double time, const PhaseGrid& grid,
                      const MacroFields& macro) {
  using detail::format_double;
  for (std::size_t i = 0; i < macro.size(); ++i) {
    const MacroCell& c = macro[i];
    os << format_double(time) << ',' << format_double(grid.x(i)) << ',' << format_double(c.rho)
       << ',' << format_double(c.u[0]) << ',' << format_double(c.u[1]) << ','
       << format_double(c.u[2]) << ',' << format_double(c.t_tr) << ','
       << format_double(c.t_int) << ',' << format_double(c.t_delta) << ','
       << format_double(c.t_theta) << '\n';
  }
}

void write_step_row(std::ostream& os, const StepReport& r) {
  using detail::format_double;
  os << format_double(r.time) << ',' << format_double(r.conserved.mass) << ','
     << format_double(r.conserved.momentum[0]) << ',' << format_double(r.conserved.momentum[1])
     << ',' << format_double(r.conserved.momentum[2]) << ',' << format_double(r.conserved.energy)
     << ',' << format_double(r.defect.mass) << ',' << format_double(r.defect.momentum.norm())
     << ',' << format_double(r.defect.energy) << ',' << format_double(r.entropy) << ','
     << format_double(r.norm_q) << '\n';
}

} // namespace polykin
