// Flat binary container for lattice fields ("DKGF"): fixed 34-byte header,
// then little-endian f64 (re, im) pairs in (t, x1, x2)-row-major node order,
// components fastest.
#pragma once

#include "dkg/field.hpp"

#include <iosfwd>
#include <string>
#include <variant>

namespace dkg {

enum class FieldKind : std::uint8_t { scalar = 0, spinor = 1, spacetime = 2 };

using AnyField = std::variant<ScalarField, SpinorField, SpaceTimeField>;

void write_field(std::ostream& os, const ScalarField& f);
void write_field(std::ostream& os, const SpinorField& f);
void write_field(std::ostream& os, const SpaceTimeField& f);
void write_field_file(const std::string& path, const AnyField& f);

AnyField read_field(std::istream& is);
AnyField read_field_file(const std::string& path);

} // namespace dkg
