#pragma once

// Portable text formats.
//
// Near-field data file:
//   # k R M delta seed shape n_boundary
//   # <k> <R> <M> <delta> <seed> <shape> <n_boundary>
//   i j Re(U) Im(U) Re(L) Im(L)      (M^2 records, i = receiver, j = source)
// Reals are written with 17 significant digits so files round-trip exactly.

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "bhfm/imaging.hpp"

namespace bhfm::io {

void write_near_field(std::ostream& os, const NearFieldSet& data);
NearFieldSet read_near_field(std::istream& is);

void save_near_field(const std::string& path, const NearFieldSet& data);
NearFieldSet load_near_field(const std::string& path);

// CSV with header "x,y,value", rows ordered by y then x.
void write_grid_csv(std::ostream& os, const IndicatorGrid& grid);
void save_grid_csv(const std::string& path, const IndicatorGrid& grid);

// Binary 8-bit PGM; value 1 maps to white, top row is ymax.
void write_grid_pgm(std::ostream& os, const IndicatorGrid& grid);
void save_grid_pgm(const std::string& path, const IndicatorGrid& grid);

// Flat key/value record serialized as a JSON object.
using Metadata = nlohmann::ordered_json;
void save_metadata(const std::string& path, const Metadata& meta);
Metadata load_metadata(const std::string& path);

std::string format_real(double value);

}  // namespace bhfm::io
