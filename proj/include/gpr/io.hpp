#ifndef GPR_IO_HPP
#define GPR_IO_HPP

#include "gpr/grid.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

namespace gpr::io {

/// Shortest decimal representation that round-trips exactly.
std::string format_double(double v);

/// Grid CSV: L_y rows of L_x comma-separated values. `name` is used in
/// ParseError messages.
GridField read_grid_csv(std::istream& in, const std::string& name);
GridField read_grid_csv(const std::filesystem::path& path);
void write_grid_csv(std::ostream& out, const GridField& field);
void write_grid_csv(const std::filesystem::path& path, const GridField& field);

/// Same layout with values in {0, 1}; 1 = observed.
ObservationMask read_mask_csv(std::istream& in, const std::string& name);
ObservationMask read_mask_csv(const std::filesystem::path& path);
void write_mask_csv(std::ostream& out, const ObservationMask& mask);
void write_mask_csv(const std::filesystem::path& path, const ObservationMask& mask);

/// Header `x,y,value` then one row per missing site in site order.
void write_predictions_csv(const std::filesystem::path& path, const GridField& predicted,
                           const ObservationMask& mask);

/// Header `sweep,specific_energy`, sweeps numbered from 1.
void write_energy_trace_csv(const std::filesystem::path& path, std::span<const double> trace);

/// Whole file as a string; throws gpr::Error when unreadable.
std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

} // namespace gpr::io

#endif // GPR_IO_HPP
