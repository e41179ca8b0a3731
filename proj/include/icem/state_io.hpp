#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "icem/state.hpp"

namespace icem {

/// Malformed state file. what() names the source, and the line/column or the
/// offending field. A well-formed file whose state breaks an invariant (for
/// example an unnormalized vector) raises DomainError instead.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Contents of a state file:
///   {"kind": "pure",     "dims": [3, 3], "amplitudes": [[re, im], ...]}
///   {"kind": "density",  "dims": [2, 2], "matrix": [[[re, im], ...], ...]}
///   {"kind": "spectrum", "values": [0.5, 0.4, 0.1]}
using StateFile = std::variant<PureState, DensityMatrix, SchmidtSpectrum>;

StateFile parse_state(std::string_view text, std::string_view source = "<input>",
                      const NumericConfig& cfg = {});
StateFile read_state_file(const std::filesystem::path& path,
                          const NumericConfig& cfg = {});

std::string serialize_state(const StateFile& state);
void write_state_file(const std::filesystem::path& path, const StateFile& state);

}  // namespace icem
