#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "criccati/field.hpp"

namespace criccati {

// Grid CSV: a header line `nx,ny,x_min,x_max,y_min,y_max`, then ny lines of
// nx comma-separated values, y increasing per line. Complex fields use two
// files, PREFIX_re.csv and PREFIX_im.csv.

/// The base point defaults to the lower-left corner.
ScalarField read_grid_csv(std::istream& in, std::optional<Point> base = std::nullopt);
ScalarField read_grid_csv(const std::filesystem::path& path,
                          std::optional<Point> base = std::nullopt);
ComplexField read_complex_grid_csv(const std::filesystem::path& prefix,
                                   std::optional<Point> base = std::nullopt);

/// Expression-backed fields are sampled at their domain nodes first.
void write_grid_csv(std::ostream& out, const ScalarField& field);
void write_grid_csv(const std::filesystem::path& path, const ScalarField& field);
void write_complex_grid_csv(const std::filesystem::path& prefix, const ComplexField& field);

}  // namespace criccati
